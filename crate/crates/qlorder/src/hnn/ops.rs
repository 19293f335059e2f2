//! Normal forms and order computations in the extension.
//!
//! Positive elements `P*` of the extension are generated by the base cone
//! `P` and the stable letter `t`.  Every algorithm here works on positive
//! normal forms and reduces along the defining relation `a t = t φ(a)`:
//!
//! * [`nf`] — left-to-right normalization of a positive token word;
//! * [`multiply`], [`divide_star`] — monoid structure of `P*`;
//! * [`min_pair`] — minimal positive factorization of `α·β⁻¹`;
//! * [`leq_star`], [`join_star`] — the left-invariant order of `P*`;
//! * [`sigma_elements`] — the minimal elements of each height level.

use crate::base::HnnPresentation;
use crate::error::QlError;
use crate::hnn::britton::{group_nf, to_normal_form};
use crate::hnn::word::{token_length, GenToken, NormalFormWord, PosToken, StemWord};
use crate::order::{min_pair_base, JoinResult, MinimalPair, QloGroup};

/// Normalize a positive token word by sweeping base mass across each `t`:
/// the carry left of a `t` is factored through its least coset
/// representative, which becomes the syllable, and the subgroup part moves
/// right as its `φ`-image.
pub fn nf<G: QloGroup>(
    pres: &HnnPresentation<G>,
    tokens: &[PosToken<G::Elem>],
) -> Result<NormalFormWord<G::Elem>, QlError> {
    let g = pres.base();
    let mut carry = QloGroup::identity(g);
    let mut syllables = Vec::new();
    for token in tokens {
        match token {
            PosToken::Elem(p) => {
                if !g.is_positive(p) {
                    return Err(QlError::NotPositive(format!("{:?}", p)));
                }
                carry = g.multiply(&carry, p);
            }
            PosToken::T => {
                let rep = pres.coset_rep_a(&carry);
                let a = g.multiply(&g.invert(&rep), &carry);
                debug_assert!(pres.in_a(&a) && g.is_positive(&a));
                syllables.push(rep);
                carry = pres.phi(&a);
            }
        }
    }
    Ok(NormalFormWord {
        syllables,
        tail: carry,
    })
}

/// Product in `P*`: concatenate and renormalize.  Heights add.
pub fn multiply<G: QloGroup>(
    pres: &HnnPresentation<G>,
    x: &NormalFormWord<G::Elem>,
    y: &NormalFormWord<G::Elem>,
) -> NormalFormWord<G::Elem> {
    let mut tokens = x.tokens();
    tokens.extend(y.tokens());
    nf(pres, &tokens).expect("normal-form factors are positive")
}

/// Tokens of the group inverse of a positive word, for feeding reducers.
pub fn inverse_tokens<G: QloGroup>(
    pres: &HnnPresentation<G>,
    w: &NormalFormWord<G::Elem>,
) -> Vec<GenToken<G::Elem>> {
    let g = pres.base();
    let mut out = vec![GenToken::Elem(g.invert(&w.tail))];
    for s in w.syllables.iter().rev() {
        out.push(GenToken::TInv);
        out.push(GenToken::Elem(g.invert(s)));
    }
    out
}

/// Normal form of `x⁻¹·y` when `x ≤ y`, i.e. the unique `w ∈ P*` with
/// `x·w = y`.
pub fn divide_star<G: QloGroup>(
    pres: &HnnPresentation<G>,
    x: &NormalFormWord<G::Elem>,
    y: &NormalFormWord<G::Elem>,
) -> Result<Option<NormalFormWord<G::Elem>>, QlError> {
    if !leq_star(pres, x, y)? {
        return Ok(None);
    }
    let mut tokens = inverse_tokens(pres, x);
    tokens.extend(y.gen_tokens());
    let reduced = group_nf(pres, &tokens);
    let w = to_normal_form(pres, &reduced).expect("x ≤ y makes the quotient positive");
    Ok(Some(w))
}

fn strip_first<E: Clone>(w: &NormalFormWord<E>) -> NormalFormWord<E> {
    NormalFormWord {
        syllables: w.syllables[1..].to_vec(),
        tail: w.tail.clone(),
    }
}

fn with_prefix<E>(first: E, w: NormalFormWord<E>) -> NormalFormWord<E> {
    let mut syllables = Vec::with_capacity(w.syllables.len() + 1);
    syllables.push(first);
    syllables.extend(w.syllables);
    NormalFormWord {
        syllables,
        tail: w.tail,
    }
}

/// `x ≤ y` in the left-invariant order of `P*`.
///
/// Recursion on heights.  When both words cross a stable letter their first
/// syllables must agree and the remainders compare.  When only `y` does,
/// `x` must fit below some positive `A`-multiple of `y`'s first syllable;
/// the least one is `q₀ · a_ceiling(q₀⁻¹(x ∨ q₀))`, and its `φ`-image
/// continues the comparison past the letter.  Errors only when the base
/// never provided the ceiling capability.
pub fn leq_star<G: QloGroup>(
    pres: &HnnPresentation<G>,
    x: &NormalFormWord<G::Elem>,
    y: &NormalFormWord<G::Elem>,
) -> Result<bool, QlError> {
    let g = pres.base();
    if x.height() > y.height() {
        return Ok(false);
    }
    if x.height() >= 1 {
        if x.syllables[0] != y.syllables[0] {
            return Ok(false);
        }
        return leq_star(pres, &strip_first(x), &strip_first(y));
    }
    if y.height() == 0 {
        return Ok(g.leq(&x.tail, &y.tail));
    }
    let q0 = &y.syllables[0];
    let c = match g.join(&x.tail, q0) {
        JoinResult::Finite(c) => c,
        JoinResult::Infinity => return Ok(false),
    };
    let cbar = g.multiply(&g.invert(q0), &c);
    let Some(a_min) = pres.a_ceiling(&cbar)? else {
        return Ok(false);
    };
    leq_star(
        pres,
        &NormalFormWord::from_base(pres.phi(&a_min)),
        &strip_first(y),
    )
}

/// Least upper bound in `P*`.
///
/// Same recursion as [`leq_star`]; diverging first syllables mean no common
/// upper bound at all, and in the mixed-height case the first syllable of
/// the higher word prefixes the join of the carried `φ`-image with the
/// remainder.  The height of a finite join is the maximum of the heights.
pub fn join_star<G: QloGroup>(
    pres: &HnnPresentation<G>,
    x: &NormalFormWord<G::Elem>,
    y: &NormalFormWord<G::Elem>,
) -> Result<JoinResult<NormalFormWord<G::Elem>>, QlError> {
    let g = pres.base();
    if x.height() >= 1 && y.height() >= 1 {
        if x.syllables[0] != y.syllables[0] {
            return Ok(JoinResult::Infinity);
        }
        let rec = join_star(pres, &strip_first(x), &strip_first(y))?;
        return Ok(rec.map(|w| with_prefix(x.syllables[0].clone(), w)));
    }
    if x.height() == 0 && y.height() == 0 {
        return Ok(g.join(&x.tail, &y.tail).map(NormalFormWord::from_base));
    }
    let (lo, hi) = if x.height() == 0 { (x, y) } else { (y, x) };
    let q0 = hi.syllables[0].clone();
    let c = match g.join(&lo.tail, &q0) {
        JoinResult::Finite(c) => c,
        JoinResult::Infinity => return Ok(JoinResult::Infinity),
    };
    let cbar = g.multiply(&g.invert(&q0), &c);
    let Some(a_min) = pres.a_ceiling(&cbar)? else {
        return Ok(JoinResult::Infinity);
    };
    let rec = join_star(
        pres,
        &NormalFormWord::from_base(pres.phi(&a_min)),
        &strip_first(hi),
    )?;
    Ok(rec.map(|w| with_prefix(q0, w)))
}

/// Minimal pair of `α·β⁻¹` over `P*`: the unique `(μ, ν)` in `P* × P*` with
/// `μ·ν⁻¹ = α·β⁻¹` dividing every positive factorization.
///
/// First the middle of `α·β⁻¹` is cancelled: while both words end in a
/// stable letter and the base fraction `r·s⁻¹` of the tails lies in `B`
/// (tested via its base minimal pair, whose parts lie in `B ∩ P` exactly
/// when the fraction is in `B`), the inner `t r s⁻¹ t⁻¹` collapses to
/// `φ⁻¹`-images absorbed by the previous syllables.  Once blocked, the base
/// minimal pair of the remaining tails finishes all four shapes: no stable
/// letters anywhere, letters on one side only (the one-sided cases mirror
/// each other under inversion), or letters on both sides.
pub fn min_pair<G: QloGroup>(
    pres: &HnnPresentation<G>,
    alpha: &NormalFormWord<G::Elem>,
    beta: &NormalFormWord<G::Elem>,
) -> MinimalPair<NormalFormWord<G::Elem>> {
    let g = pres.base();
    let mut left_syll = alpha.syllables.clone();
    let mut r = alpha.tail.clone();
    let mut right_syll = beta.syllables.clone();
    let mut s = beta.tail.clone();

    while !left_syll.is_empty() && !right_syll.is_empty() {
        let MinimalPair { mu: b1, nu: b2 } = min_pair_base(g, &r, &s);
        if !(pres.in_b(&b1) && pres.in_b(&b2)) {
            break;
        }
        let pa = left_syll.pop().expect("checked nonempty");
        let pb = right_syll.pop().expect("checked nonempty");
        r = g.multiply(&pa, &pres.phi_inv(&b1));
        s = g.multiply(&pb, &pres.phi_inv(&b2));
    }

    let MinimalPair { mu: sigma, nu: tau } = min_pair_base(g, &r, &s);
    let (mu, nu) = match (left_syll.is_empty(), right_syll.is_empty()) {
        (true, true) => (
            NormalFormWord::from_base(sigma),
            NormalFormWord::from_base(tau),
        ),
        (false, true) => (
            NormalFormWord {
                syllables: left_syll,
                tail: sigma,
            },
            NormalFormWord::from_base(tau),
        ),
        (true, false) => (
            NormalFormWord::from_base(sigma),
            NormalFormWord {
                syllables: right_syll,
                tail: tau,
            },
        ),
        (false, false) => (
            NormalFormWord {
                syllables: left_syll,
                tail: sigma,
            },
            NormalFormWord {
                syllables: right_syll,
                tail: tau,
            },
        ),
    };
    MinimalPair { mu, nu }
}

/// Base elements that are least representatives of their own `A`-coset,
/// up to an encoding-size bound, in enumeration order.
pub fn l_a_elements<G: QloGroup>(pres: &HnnPresentation<G>, bound: usize) -> Vec<G::Elem> {
    pres.base()
        .enumerate_positive(bound)
        .into_iter()
        .filter(|p| pres.coset_rep_a(p) == *p)
        .collect()
}

/// All stems of height `k` whose syllables each have encoding size at most
/// `bound`: the minimal elements of height level `k`.
pub fn sigma_elements<G: QloGroup>(
    pres: &HnnPresentation<G>,
    k: usize,
    bound: usize,
) -> Vec<StemWord<G::Elem>> {
    let las = l_a_elements(pres, bound);
    let e = QloGroup::identity(pres.base());
    let mut out = Vec::new();
    let mut current: Vec<G::Elem> = Vec::with_capacity(k);
    build_stems(&las, k, &e, &mut current, &mut out);
    out
}

fn build_stems<E: Clone>(
    las: &[E],
    remaining: usize,
    identity: &E,
    current: &mut Vec<E>,
    out: &mut Vec<StemWord<E>>,
) {
    if remaining == 0 {
        out.push(StemWord(NormalFormWord {
            syllables: current.clone(),
            tail: identity.clone(),
        }));
        return;
    }
    for s in las {
        current.push(s.clone());
        build_stems(las, remaining - 1, identity, current, out);
        current.pop();
    }
}

/// Every element of `P*` with token length at most `bound`, sorted
/// length-lexicographically on the rendered token string.  Distinct
/// syllable/tail combinations are distinct elements, so the list is
/// duplicate-free by construction.
pub fn enumerate_words<G: QloGroup>(
    pres: &HnnPresentation<G>,
    bound: usize,
) -> Vec<NormalFormWord<G::Elem>> {
    let g = pres.base();
    let las = l_a_elements(pres, bound);
    let mut out = Vec::new();
    let mut syllables: Vec<G::Elem> = Vec::new();
    extend_words(pres, &las, bound, &mut syllables, &mut out);
    out.sort_by_cached_key(|w| (token_length(g, w), crate::hnn::word::format_word(g, w)));
    out
}

fn extend_words<G: QloGroup>(
    pres: &HnnPresentation<G>,
    las: &[G::Elem],
    budget: usize,
    syllables: &mut Vec<G::Elem>,
    out: &mut Vec<NormalFormWord<G::Elem>>,
) {
    let g = pres.base();
    for tail in g.enumerate_positive(budget) {
        out.push(NormalFormWord {
            syllables: syllables.clone(),
            tail,
        });
    }
    for s in las {
        let cost = g.size(s) + 1;
        if cost <= budget {
            syllables.push(s.clone());
            extend_words(pres, las, budget - cost, syllables, out);
            syllables.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{make_bs, make_free_hnn, make_int_lattice_hnn};
    use crate::hnn::word::{format_word, parse_pos_word};

    fn bs23() -> crate::base::HnnPresentation<crate::base::IntLattice> {
        make_bs(2, 3).unwrap()
    }

    fn word(
        pres: &crate::base::HnnPresentation<crate::base::IntLattice>,
        text: &str,
    ) -> NormalFormWord<Vec<i64>> {
        nf(pres, &parse_pos_word(pres.base(), text).unwrap()).unwrap()
    }

    #[test]
    fn nf_sweeps_subgroup_mass_across_t() {
        let p = bs23();
        let w = word(&p, "x^3 t");
        assert_eq!(w.syllables(), &[vec![0]]);
        assert_eq!(w.tail(), &vec![2]);
        assert_eq!(format_word(p.base(), &w), "t . x^2");

        let w = word(&p, "x^4 t");
        assert_eq!(w.syllables(), &[vec![1]]);
        assert_eq!(w.tail(), &vec![2]);
        assert_eq!(format_word(p.base(), &w), "x . t . x^2");
    }

    #[test]
    fn multiply_concatenates_and_renormalizes() {
        let p = bs23();
        let t = word(&p, "t");
        let x3t = word(&p, "x^3 t");
        let prod = multiply(&p, &t, &x3t);
        assert_eq!(prod.syllables(), &[vec![0], vec![0]]);
        assert_eq!(prod.tail(), &vec![2]);
        assert_eq!(prod.height(), 2);
        // heights add under multiplication
        let a = word(&p, "x t x t");
        let b = word(&p, "x^2 t");
        assert_eq!(multiply(&p, &a, &b).height(), 3);
    }

    #[test]
    fn minimal_pair_after_full_cancellation() {
        let p = bs23();
        let alpha = word(&p, "x^3 t");
        let beta = word(&p, "t");
        let mp = min_pair(&p, &alpha, &beta);
        assert_eq!(format_word(p.base(), &mp.mu), "x^3");
        assert_eq!(format_word(p.base(), &mp.nu), "e");
    }

    #[test]
    fn minimal_pair_with_blocked_middle() {
        let p = bs23();
        let mp = min_pair(&p, &word(&p, "t"), &word(&p, "x"));
        assert_eq!(format_word(p.base(), &mp.mu), "t");
        assert_eq!(format_word(p.base(), &mp.nu), "x");
        // mirror case
        let mp = min_pair(&p, &word(&p, "x"), &word(&p, "t"));
        assert_eq!(format_word(p.base(), &mp.mu), "x");
        assert_eq!(format_word(p.base(), &mp.nu), "t");
    }

    #[test]
    fn minimal_pair_of_equal_words_is_trivial() {
        let p = bs23();
        let w = word(&p, "x t x^2 t x");
        let mp = min_pair(&p, &w, &w);
        assert_eq!(format_word(p.base(), &mp.mu), "e");
        assert_eq!(format_word(p.base(), &mp.nu), "e");
    }

    #[test]
    fn order_examples() {
        let p = bs23();
        let x = word(&p, "x");
        let t = word(&p, "t");
        let tx2 = word(&p, "t x^2");
        assert!(leq_star(&p, &x, &tx2).unwrap());
        assert!(!leq_star(&p, &x, &t).unwrap());
        assert!(leq_star(&p, &t, &tx2).unwrap());
        assert_eq!(
            join_star(&p, &x, &t).unwrap(),
            JoinResult::Finite(tx2.clone())
        );
        // quotient: x · (x² t) = t x²
        let q = divide_star(&p, &x, &tx2).unwrap().unwrap();
        assert_eq!(format_word(p.base(), &q), "x^2 . t");
        assert_eq!(multiply(&p, &x, &q), tx2);
    }

    #[test]
    fn join_in_free_extension() {
        // relation a t = t b
        let p = make_free_hnn(2, 1, 1, 1).unwrap();
        let g = p.base().clone();
        let a = NormalFormWord::from_base(g.word(&[1]));
        let t = NormalFormWord {
            syllables: vec![g.identity()],
            tail: g.identity(),
        };
        let j = join_star(&p, &a, &t).unwrap();
        let expected = NormalFormWord {
            syllables: vec![g.identity()],
            tail: g.word(&[2]),
        };
        assert_eq!(j, JoinResult::Finite(expected));
        // diverging first syllables have no common bound
        let at = nf(&p, &parse_pos_word(&g, "a t").unwrap()).unwrap();
        let bt = nf(&p, &parse_pos_word(&g, "b t").unwrap()).unwrap();
        assert_eq!(join_star(&p, &at, &bt).unwrap(), JoinResult::Infinity);
    }

    #[test]
    fn stems_at_height_one() {
        let p = bs23();
        let stems = sigma_elements(&p, 1, 3);
        let rendered: Vec<String> = stems
            .iter()
            .map(|s| format_word(p.base(), s.word()))
            .collect();
        assert_eq!(rendered, vec!["t", "x . t", "x^2 . t"]);
        assert_eq!(sigma_elements(&p, 0, 3).len(), 1);
        assert_eq!(sigma_elements(&p, 2, 3).len(), 9);
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        let p = bs23();
        let words = enumerate_words(&p, 4);
        let mut seen = std::collections::HashSet::new();
        for w in &words {
            assert!(token_length(p.base(), w) <= 4);
            assert!(seen.insert(w.clone()), "duplicate {w:?}");
        }
        // contains e, x.., t, and the mixed words
        assert!(words.iter().any(|w| w.height() == 0));
        assert!(words.iter().any(|w| w.height() == 4));
        for pair in words.windows(2) {
            let g = p.base();
            let ka = (token_length(g, &pair[0]), format_word(g, &pair[0]));
            let kb = (token_length(g, &pair[1]), format_word(g, &pair[1]));
            assert!(ka < kb);
        }
    }

    #[test]
    fn ceiling_free_presentations_report_unsupported() {
        let p = crate::base::make_int_lattice_span([[1, 2], [2, 1]]).unwrap();
        let x = NormalFormWord::from_base(vec![1, 0]);
        let t = NormalFormWord {
            syllables: vec![vec![0, 0]],
            tail: vec![0, 0],
        };
        assert!(matches!(
            leq_star(&p, &x, &t),
            Err(QlError::CeilingUnsupported)
        ));
        // comparisons that never cross a stable letter still work
        let y = NormalFormWord::from_base(vec![2, 1]);
        assert!(leq_star(&p, &x, &y).unwrap());
    }

    #[test]
    fn int_lattice_extension_orders() {
        let p = make_int_lattice_hnn(2, 3, 3, 2).unwrap();
        let g = p.base().clone();
        let v = NormalFormWord::from_base(vec![1, 1]);
        let t = NormalFormWord {
            syllables: vec![g.identity()],
            tail: g.identity(),
        };
        // (1,1) ∨ t: ceiling of (1,1) in 2ℤ×3ℤ is (2,3), φ(2,3) = (3,2)
        let j = join_star(&p, &v, &t).unwrap();
        let expected = NormalFormWord {
            syllables: vec![vec![0, 0]],
            tail: vec![3, 2],
        };
        assert_eq!(j, JoinResult::Finite(expected));
    }
}
