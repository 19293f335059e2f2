//! Free abelian base groups `ℤⁿ` with positive cone `ℕⁿ`.
//!
//! Elements are coordinate vectors.  Joins are componentwise maxima and
//! always exist, so `(ℤⁿ, ℕⁿ)` is lattice ordered — the simplest family of
//! quasi-lattice orders and the base of the Baumslag–Solitar style
//! extensions shipped with the crate.

use crate::error::QlError;
use crate::order::{JoinResult, QloGroup};

/// `(ℤⁿ, ℕⁿ)`.  Rank-1 elements display as powers of a letter `x`; higher
/// ranks display as coordinate tuples `(m,n,...)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    rank: usize,
}

impl IntLattice {
    pub fn new(rank: usize) -> Result<Self, QlError> {
        if rank == 0 {
            return Err(QlError::InvalidPresentation(
                "lattice rank must be at least 1".into(),
            ));
        }
        Ok(IntLattice { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elem(&self, coords: &[i64]) -> Vec<i64> {
        assert_eq!(coords.len(), self.rank, "coordinate count must match rank");
        coords.to_vec()
    }
}

impl QloGroup for IntLattice {
    type Elem = Vec<i64>;

    fn identity(&self) -> Vec<i64> {
        vec![0; self.rank]
    }

    fn multiply(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn invert(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }

    fn is_positive(&self, a: &Vec<i64>) -> bool {
        a.iter().all(|&x| x >= 0)
    }

    fn join(&self, p: &Vec<i64>, q: &Vec<i64>) -> JoinResult<Vec<i64>> {
        debug_assert!(self.is_positive(p) && self.is_positive(q));
        JoinResult::Finite(p.iter().zip(q).map(|(x, y)| (*x).max(*y)).collect())
    }

    fn join_with_identity(&self, x: &Vec<i64>) -> JoinResult<Vec<i64>> {
        JoinResult::Finite(x.iter().map(|&c| c.max(0)).collect())
    }

    fn size(&self, e: &Vec<i64>) -> usize {
        e.iter().map(|&c| c.unsigned_abs() as usize).sum()
    }

    fn enumerate_positive(&self, bound: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for total in 0..=bound {
            push_with_sum(self.rank, total as i64, &mut Vec::new(), &mut out);
        }
        out
    }

    fn format_elem(&self, e: &Vec<i64>) -> String {
        if self.rank == 1 {
            match e[0] {
                0 => "e".into(),
                1 => "x".into(),
                k => format!("x^{k}"),
            }
        } else if e.iter().all(|&c| c == 0) {
            "e".into()
        } else {
            let coords: Vec<String> = e.iter().map(|c| c.to_string()).collect();
            format!("({})", coords.join(","))
        }
    }

    fn parse_token(&self, token: &str) -> Result<Vec<i64>, QlError> {
        if token == "e" {
            return Ok(self.identity());
        }
        if self.rank == 1 {
            let exp = parse_letter_power(token, 'x')?;
            return Ok(vec![exp]);
        }
        let inner = token
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| QlError::Parse(format!("expected (c1,...,c{}): {token}", self.rank)))?;
        let coords: Result<Vec<i64>, _> = inner.split(',').map(|c| c.trim().parse()).collect();
        let coords = coords.map_err(|e| QlError::Parse(format!("bad coordinate in {token}: {e}")))?;
        if coords.len() != self.rank {
            return Err(QlError::Parse(format!(
                "expected {} coordinates, got {} in {token}",
                self.rank,
                coords.len()
            )));
        }
        Ok(coords)
    }
}

/// Parse `x`, `x^3`, `x^-2` for a given letter.
pub(crate) fn parse_letter_power(token: &str, letter: char) -> Result<i64, QlError> {
    let mut chars = token.chars();
    if chars.next() != Some(letter) {
        return Err(QlError::Parse(format!("expected power of '{letter}': {token}")));
    }
    let rest = chars.as_str();
    if rest.is_empty() {
        return Ok(1);
    }
    let exp = rest
        .strip_prefix('^')
        .ok_or_else(|| QlError::Parse(format!("expected '^' in {token}")))?;
    exp.parse()
        .map_err(|e| QlError::Parse(format!("bad exponent in {token}: {e}")))
}

fn push_with_sum(rank: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if rank == 1 {
        let mut v = prefix.clone();
        v.push(total);
        out.push(v);
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        push_with_sum(rank - 1, total - first, prefix, out);
        prefix.pop();
    }
}

/// A finite-index sublattice of `ℤ²` given by two generating vectors, used
/// for subgroup data that is not a product of coordinate axes.  Membership
/// is decided with the adjugate of the generator matrix and coset
/// representatives are canonical minima over a fundamental window.
#[derive(Debug, Clone)]
pub struct Sublattice2 {
    gens: [[i64; 2]; 2],
    det: i64,
}

impl Sublattice2 {
    pub fn new(gens: [[i64; 2]; 2]) -> Result<Self, QlError> {
        let det = gens[0][0] * gens[1][1] - gens[0][1] * gens[1][0];
        if det == 0 {
            return Err(QlError::InvalidPresentation(
                "sublattice generators must be linearly independent".into(),
            ));
        }
        Ok(Sublattice2 { gens, det })
    }

    pub fn contains(&self, w: &[i64]) -> bool {
        // w ∈ span(u, v) iff adj([u v])·w ≡ 0 mod det.
        let (u, v) = (self.gens[0], self.gens[1]);
        let a = v[1] * w[0] - v[0] * w[1];
        let b = -u[1] * w[0] + u[0] * w[1];
        a.rem_euclid(self.det.abs()) == 0 && b.rem_euclid(self.det.abs()) == 0
    }

    /// Canonical representative of `w + L`: the length-lex least member of
    /// the coset inside the window `[0, |det|)²` (nonempty because
    /// `|det|·ℤ²` is contained in the sublattice).
    pub fn coset_rep(&self, w: &[i64]) -> Vec<i64> {
        let m = self.det.abs();
        let base = [w[0].rem_euclid(m), w[1].rem_euclid(m)];
        let mut best: Option<[i64; 2]> = None;
        for i in 0..m {
            for j in 0..m {
                let cand = [i, j];
                let diff = [cand[0] - base[0], cand[1] - base[1]];
                if self.contains(&diff) {
                    let better = match best {
                        None => true,
                        Some(b) => {
                            let (cs, bs) = (cand[0] + cand[1], b[0] + b[1]);
                            cs < bs || (cs == bs && cand < b)
                        }
                    };
                    if better {
                        best = Some(cand);
                    }
                }
            }
        }
        best.expect("window always contains a coset member").to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{min_pair_base, JoinResult, MinimalPair, QloGroup};

    #[test]
    fn joins_are_componentwise_maxima() {
        let g = IntLattice::new(2).unwrap();
        assert_eq!(
            g.join(&vec![3, 1], &vec![0, 4]),
            JoinResult::Finite(vec![3, 4])
        );
        assert_eq!(g.join_general(&vec![-2, 5], &vec![1, -1]), JoinResult::Finite(vec![1, 5]));
    }

    /// Brute-force minimal pair over all positive factorizations in a window.
    fn oracle_min_pair(x: i64, window: i64) -> (i64, i64) {
        let mut pairs = Vec::new();
        for mu in 0..=window {
            for nu in 0..=window {
                if mu - nu == x {
                    pairs.push((mu, nu));
                }
            }
        }
        let &least = pairs
            .iter()
            .find(|(m, n)| pairs.iter().all(|(gm, gn)| m <= gm && n <= gn))
            .expect("a dividing pair exists in the window");
        least
    }

    #[test]
    fn min_pair_in_z_matches_enumeration() {
        let g = IntLattice::new(1).unwrap();
        let got = min_pair_base(&g, &vec![2], &vec![5]);
        assert_eq!(oracle_min_pair(2 - 5, 8), (0, 3));
        assert_eq!(got, MinimalPair { mu: vec![0], nu: vec![3] });
        for p in 0..=6i64 {
            for q in 0..=6i64 {
                let mp = min_pair_base(&g, &vec![p], &vec![q]);
                assert_eq!((mp.mu[0], mp.nu[0]), oracle_min_pair(p - q, 12));
            }
        }
    }

    #[test]
    fn enumeration_is_length_lex_and_complete() {
        let g = IntLattice::new(2).unwrap();
        let all = g.enumerate_positive(3);
        assert_eq!(all.len(), 10); // triangular numbers 1+2+3+4
        assert_eq!(all[0], vec![0, 0]);
        // sizes weakly increase and ties are lexicographic
        for w in all.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let (sa, sb) = (g.size(a), g.size(b));
            assert!(sa < sb || (sa == sb && a < b));
        }
    }

    #[test]
    fn tokens_round_trip() {
        let g1 = IntLattice::new(1).unwrap();
        assert_eq!(g1.parse_token("x^3").unwrap(), vec![3]);
        assert_eq!(g1.parse_token("x^-2").unwrap(), vec![-2]);
        assert_eq!(g1.format_elem(&vec![1]), "x");
        let g2 = IntLattice::new(2).unwrap();
        assert_eq!(g2.parse_token("(1,-2)").unwrap(), vec![1, -2]);
        assert_eq!(g2.format_elem(&vec![1, -2]), "(1,-2)");
        assert!(g2.parse_token("(1,2,3)").is_err());
    }

    #[test]
    fn sublattice_span_membership_and_reps() {
        let sub = Sublattice2::new([[1, 2], [2, 1]]).unwrap();
        assert!(sub.contains(&[1, 2]));
        assert!(sub.contains(&[2, 1]));
        assert!(sub.contains(&[3, 0]));
        assert!(!sub.contains(&[1, 0]));
        // (1,0) and (0,1) lie in the same coset; the canonical rep is (0,1).
        assert_eq!(sub.coset_rep(&[1, 0]), sub.coset_rep(&[0, 1]));
        assert_eq!(sub.coset_rep(&[1, 0]), vec![0, 1]);
        assert_eq!(sub.coset_rep(&[5, 4]), vec![0, 0]);
    }
}
