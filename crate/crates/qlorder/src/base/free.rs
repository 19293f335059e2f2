//! Free base groups `F_k` with the positive cone of positive words.
//!
//! Elements are freely reduced words stored as signed letters: `+i` is the
//! `i`-th generator, `-i` its inverse (1-based, displayed `a`, `b`, ...).
//! For positive words the order is prefix order, so two positive words have
//! a (then larger) least upper bound exactly when one is a prefix of the
//! other.

use crate::base::int_lattice::parse_letter_power;
use crate::error::QlError;
use crate::order::{JoinResult, QloGroup};

pub type Letter = i8;

const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

/// `(F_k, F_k⁺)` for `k = rank` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self, QlError> {
        if rank == 0 || rank > 25 {
            return Err(QlError::InvalidPresentation(
                "free rank must be between 1 and 25 (letters a..y, t is reserved)".into(),
            ));
        }
        Ok(FreeGroup { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The reduced word for a sequence of signed letters.
    pub fn word(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            debug_assert!(l != 0 && (l.unsigned_abs() as usize) <= self.rank);
            if out.last().is_some_and(|&last| last == -l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }

    /// Generator power `g^exp` for generator index `idx` (0-based).
    pub fn power(&self, idx: usize, exp: i64) -> Vec<Letter> {
        assert!(idx < self.rank);
        let letter = (idx + 1) as Letter;
        let l = if exp >= 0 { letter } else { -letter };
        vec![l; exp.unsigned_abs() as usize]
    }
}

impl QloGroup for FreeGroup {
    type Elem = Vec<Letter>;

    fn identity(&self) -> Vec<Letter> {
        Vec::new()
    }

    fn multiply(&self, a: &Vec<Letter>, b: &Vec<Letter>) -> Vec<Letter> {
        let mut out = a.clone();
        for &l in b {
            if out.last().is_some_and(|&last| last == -l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }

    fn invert(&self, a: &Vec<Letter>) -> Vec<Letter> {
        a.iter().rev().map(|&l| -l).collect()
    }

    fn is_positive(&self, a: &Vec<Letter>) -> bool {
        a.iter().all(|&l| l > 0)
    }

    fn join(&self, p: &Vec<Letter>, q: &Vec<Letter>) -> JoinResult<Vec<Letter>> {
        debug_assert!(self.is_positive(p) && self.is_positive(q));
        if p.len() <= q.len() && q[..p.len()] == p[..] {
            JoinResult::Finite(q.clone())
        } else if q.len() < p.len() && p[..q.len()] == q[..] {
            JoinResult::Finite(p.clone())
        } else {
            JoinResult::Infinity
        }
    }

    fn join_with_identity(&self, x: &Vec<Letter>) -> JoinResult<Vec<Letter>> {
        // x has a positive upper bound iff its reduced word is a positive
        // prefix followed by a negative suffix; the least bound is the
        // positive prefix.
        let split = x.iter().position(|&l| l < 0).unwrap_or(x.len());
        if x[split..].iter().all(|&l| l < 0) {
            JoinResult::Finite(x[..split].to_vec())
        } else {
            JoinResult::Infinity
        }
    }

    fn size(&self, e: &Vec<Letter>) -> usize {
        e.len()
    }

    fn enumerate_positive(&self, bound: usize) -> Vec<Vec<Letter>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..bound {
            let mut next = Vec::with_capacity(layer.len() * self.rank);
            for w in &layer {
                for l in 1..=self.rank as Letter {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn format_elem(&self, e: &Vec<Letter>) -> String {
        if e.is_empty() {
            return "e".into();
        }
        let mut chunks: Vec<String> = Vec::new();
        let mut i = 0;
        while i < e.len() {
            let l = e[i];
            let mut run = 1;
            while i + run < e.len() && e[i + run] == l {
                run += 1;
            }
            let name = LETTERS[(l.unsigned_abs() as usize) - 1] as char;
            let exp = if l > 0 { run as i64 } else { -(run as i64) };
            chunks.push(match exp {
                1 => name.to_string(),
                k => format!("{name}^{k}"),
            });
            i += run;
        }
        chunks.join(" ")
    }

    fn parse_token(&self, token: &str) -> Result<Vec<Letter>, QlError> {
        if token == "e" {
            return Ok(Vec::new());
        }
        let first = token
            .chars()
            .next()
            .ok_or_else(|| QlError::Parse("empty token".into()))?;
        let idx = LETTERS
            .iter()
            .position(|&c| c as char == first)
            .filter(|&i| i < self.rank)
            .ok_or_else(|| QlError::Parse(format!("unknown generator: {token}")))?;
        let exp = parse_letter_power(token, first)?;
        Ok(self.power(idx, exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{min_pair_base, JoinResult, QloGroup};

    fn f2() -> FreeGroup {
        FreeGroup::new(2).unwrap()
    }

    #[test]
    fn reduction_and_inverse() {
        let g = f2();
        let w = g.multiply(&g.word(&[1, 2]), &g.word(&[-2, -1, 1]));
        assert_eq!(w, vec![1]);
        let v = g.word(&[1, 2, -2, 1]);
        assert_eq!(g.multiply(&v, &g.invert(&v)), g.identity());
    }

    #[test]
    fn positive_join_is_prefix_order() {
        let g = f2();
        let ab = g.word(&[1, 2]);
        let abb = g.word(&[1, 2, 2]);
        assert_eq!(g.join(&ab, &abb), JoinResult::Finite(abb.clone()));
        assert_eq!(g.join(&g.word(&[1]), &g.word(&[2])), JoinResult::Infinity);
    }

    #[test]
    fn join_with_identity_splits_at_the_sign_change() {
        let g = f2();
        // a b b⁻¹-free words: a·b⁻¹ has least positive bound a
        let x = g.word(&[1, -2]);
        assert_eq!(g.join_with_identity(&x), JoinResult::Finite(vec![1]));
        // b⁻¹·a admits no positive upper bound
        let y = g.word(&[-2, 1]);
        assert_eq!(g.join_with_identity(&y), JoinResult::Infinity);
    }

    /// Exhaustive minimal-pair check against all short factorizations.
    #[test]
    fn min_pair_divides_every_short_factorization() {
        let g = f2();
        let words = g.enumerate_positive(4);
        let p = g.word(&[1, 2]);
        let q = g.word(&[2]);
        let mp = min_pair_base(&g, &p, &q);
        assert_eq!((mp.mu.clone(), mp.nu.clone()), (vec![1], vec![]));
        let x = g.multiply(&p, &g.invert(&q));
        for gamma in &words {
            for delta in &words {
                if g.multiply(gamma, &g.invert(delta)) == x {
                    assert!(g.leq(&mp.mu, gamma), "mu must divide {gamma:?}");
                    assert!(g.leq(&mp.nu, delta), "nu must divide {delta:?}");
                }
            }
        }
    }

    #[test]
    fn display_and_parse() {
        let g = f2();
        let w = g.word(&[1, 1, 2, -1]);
        assert_eq!(g.format_elem(&w), "a^2 b a^-1");
        assert_eq!(g.parse_token("b^3").unwrap(), vec![2, 2, 2]);
        assert_eq!(g.parse_token("a^-2").unwrap(), vec![-1, -1]);
        assert!(g.parse_token("c").is_err());
    }

    #[test]
    fn enumeration_counts_all_positive_words() {
        let g = f2();
        // 1 + 2 + 4 + 8 words of length ≤ 3
        assert_eq!(g.enumerate_positive(3).len(), 15);
    }
}
