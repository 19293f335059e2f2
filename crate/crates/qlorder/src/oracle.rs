//! Brute-force cross-checks for the order algorithms.
//!
//! Every function here recomputes an answer by a second, independent route —
//! random rewriting along the defining relation, group-level reduction, or
//! exhaustive search over bounded balls — and compares it against the
//! structured algorithms.  The CLI `verify` command and the acceptance tests
//! are built from these suites.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base::HnnPresentation;
use crate::error::QlError;
use crate::hnn::{
    divide_star, enumerate_words, format_word, group_nf, inverse_tokens, join_star, leq_star,
    min_pair, multiply, nf, to_normal_form, GeneralWord, NormalFormWord, PosToken,
};
use crate::order::{JoinResult, QloGroup};
use crate::report::CheckReport;

/// Normalize a positive token word by applying the defining relation
/// `a t = t φ(a)` at randomly chosen positions until no position carries
/// subgroup mass, instead of sweeping left to right.  Confluence of the
/// rewriting system makes the endpoint independent of the order; comparing
/// endpoints across many random orders (and against [`nf`]) is the
/// normal-form oracle.
pub fn rewrite_nf<G: QloGroup, R: Rng>(
    pres: &HnnPresentation<G>,
    tokens: &[PosToken<G::Elem>],
    rng: &mut R,
) -> Result<NormalFormWord<G::Elem>, QlError> {
    let g = pres.base();
    let mut segs: Vec<G::Elem> = vec![QloGroup::identity(g)];
    for token in tokens {
        match token {
            PosToken::Elem(p) => {
                if !g.is_positive(p) {
                    return Err(QlError::NotPositive(format!("{:?}", p)));
                }
                let last = segs.last_mut().expect("segs starts nonempty");
                *last = g.multiply(last, p);
            }
            PosToken::T => segs.push(QloGroup::identity(g)),
        }
    }
    let n = segs.len() - 1;
    // Each move strictly shrinks the segment it fires on, and a segment only
    // regrows when its left neighbour fires, so (n+1)(n+2) moves always
    // suffice; exceeding the cap means the subgroup data is inconsistent.
    let mut budget = (n + 1) * (n + 2) + 16;
    loop {
        let movable: Vec<usize> = (0..n)
            .filter(|&i| pres.coset_rep_a(&segs[i]) != segs[i])
            .collect();
        if movable.is_empty() {
            break;
        }
        let i = movable[rng.gen_range(0..movable.len())];
        let rep = pres.coset_rep_a(&segs[i]);
        let a = g.multiply(&g.invert(&rep), &segs[i]);
        segs[i] = rep;
        segs[i + 1] = g.multiply(&pres.phi(&a), &segs[i + 1]);
        budget -= 1;
        if budget == 0 {
            return Err(QlError::InvalidPresentation(
                "random rewriting did not terminate; coset representatives are inconsistent"
                    .into(),
            ));
        }
    }
    let tail = segs.pop().expect("segs nonempty");
    Ok(NormalFormWord {
        syllables: segs,
        tail,
    })
}

/// Group-level order oracle: `x ≤ y` iff the full group reduction of
/// `x⁻¹·y` has positive shape.  Independent of [`leq_star`]'s recursion —
/// no joins, no ceilings, only the reduction rules of the extension.
pub fn oracle_leq<G: QloGroup>(
    pres: &HnnPresentation<G>,
    x: &NormalFormWord<G::Elem>,
    y: &NormalFormWord<G::Elem>,
) -> bool {
    let mut tokens = inverse_tokens(pres, x);
    tokens.extend(y.gen_tokens());
    to_normal_form(pres, &group_nf(pres, &tokens)).is_some()
}

/// Group reduction of the fraction `x·y⁻¹`.
fn fraction_nf<G: QloGroup>(
    pres: &HnnPresentation<G>,
    x: &NormalFormWord<G::Elem>,
    y: &NormalFormWord<G::Elem>,
) -> GeneralWord<G::Elem> {
    let mut tokens = x.gen_tokens();
    tokens.extend(inverse_tokens(pres, y));
    group_nf(pres, &tokens)
}

/// Rewrite every positive token word of length at most `max_len` (over the
/// alphabet of base generators and the stable letter) under `orders`
/// random rewrite orders each, and require all endpoints to coincide with
/// the left-to-right sweep of [`nf`].
pub fn confluence_check<G: QloGroup>(
    pres: &HnnPresentation<G>,
    max_len: usize,
    orders: usize,
    seed: u64,
) -> Result<CheckReport, QlError> {
    let g = pres.base();
    let mut letters: Vec<PosToken<G::Elem>> = g
        .enumerate_positive(1)
        .into_iter()
        .filter(|p| g.size(p) == 1)
        .map(PosToken::Elem)
        .collect();
    letters.push(PosToken::T);
    let k = letters.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = vec![
        format!("max_len={max_len}"),
        format!("orders={orders}"),
        format!("seed={seed}"),
    ];
    let mut cases = 0usize;
    let mut word: Vec<PosToken<G::Elem>> = Vec::with_capacity(max_len);
    for len in 0..=max_len {
        let mut digits = vec![0usize; len];
        loop {
            word.clear();
            word.extend(digits.iter().map(|&d| letters[d].clone()));
            let expected = nf(pres, &word)?;
            for _ in 0..orders {
                cases += 1;
                let got = rewrite_nf(pres, &word, &mut rng)?;
                if got != expected {
                    let witness = format!(
                        "token word #{cases}: random order gave {}, sweep gave {}",
                        format_word(g, &got),
                        format_word(g, &expected)
                    );
                    return Ok(CheckReport::fail("nf-confluence", params, cases, witness));
                }
            }
            // odometer over the alphabet
            let mut pos = 0;
            loop {
                if pos == len {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < k {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == len {
                break;
            }
        }
    }
    Ok(CheckReport::pass("nf-confluence", params, cases))
}

fn cone_row<G: QloGroup>(
    pres: &HnnPresentation<G>,
    x: &NormalFormWord<G::Elem>,
    space: &[NormalFormWord<G::Elem>],
) -> Vec<u64> {
    let blocks = space.len().div_ceil(64);
    let mut row = vec![0u64; blocks];
    for (j, w) in space.iter().enumerate() {
        if oracle_leq(pres, x, w) {
            row[j / 64] |= 1 << (j % 64);
        }
    }
    row
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn set_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(blk, &bits)| {
        (0..64)
            .filter(move |b| bits & (1 << b) != 0)
            .map(move |b| blk * 64 + b)
    })
}

/// Compare [`leq_star`], [`divide_star`], and [`join_star`] against the
/// group-level oracle and exhaustive bounded search.
///
/// * every order claim of `leq_star` over `ball(word_bound) ×
///   ball(search_bound)` must match [`oracle_leq`], and positive claims must
///   produce a multiplicative witness through [`divide_star`];
/// * normal forms must be fixed points of the group reducer;
/// * `join_star` over `ball(word_bound)²` must be symmetric, an upper bound,
///   below every upper bound found in `ball(search_bound)`, of height
///   `max(θx, θy)`, and may return no-bound only when the search finds none;
/// * base positives that share an upper bound in the extension must already
///   have a finite join in the base.
pub fn order_agreement_suite<G: QloGroup>(
    pres: &HnnPresentation<G>,
    word_bound: usize,
    search_bound: usize,
) -> Result<Vec<CheckReport>, QlError> {
    let g = pres.base();
    let ball = enumerate_words(pres, word_bound);
    let space = enumerate_words(pres, search_bound);
    let params = vec![
        format!("word_bound={word_bound}"),
        format!("search_bound={search_bound}"),
    ];

    // leq agreement + cone bitmasks + division witnesses + reducer fixpoints
    let mut cones: Vec<Vec<u64>> = Vec::with_capacity(ball.len());
    let mut leq_cases = 0usize;
    let mut leq_fail: Option<String> = None;
    let mut witness_cases = 0usize;
    let mut witness_fail: Option<String> = None;
    for x in &ball {
        let blocks = space.len().div_ceil(64);
        let mut row = vec![0u64; blocks];
        for (j, w) in space.iter().enumerate() {
            leq_cases += 1;
            let by_oracle = oracle_leq(pres, x, w);
            let by_algorithm = leq_star(pres, x, w)?;
            if by_oracle != by_algorithm && leq_fail.is_none() {
                leq_fail = Some(format!(
                    "leq_star({}, {}) = {by_algorithm} but the division oracle says {by_oracle}",
                    format_word(g, x),
                    format_word(g, w)
                ));
            }
            if by_oracle {
                row[j / 64] |= 1 << (j % 64);
            }
            if by_algorithm {
                witness_cases += 1;
                let q = divide_star(pres, x, w)?.expect("leq_star was true");
                if multiply(pres, x, &q) != *w && witness_fail.is_none() {
                    witness_fail = Some(format!(
                        "divide_star({}, {}) returned {} which does not multiply back",
                        format_word(g, x),
                        format_word(g, w),
                        format_word(g, &q)
                    ));
                }
            }
        }
        cones.push(row);
    }

    let mut fixpoint_fail: Option<String> = None;
    for w in &space {
        let reduced = to_normal_form(pres, &group_nf(pres, &w.gen_tokens()));
        if reduced.as_ref() != Some(w) && fixpoint_fail.is_none() {
            fixpoint_fail = Some(format!(
                "{} is not a fixed point of the group reducer",
                format_word(g, w)
            ));
        }
    }

    // join agreement over ball², with on-demand cone rows for joins that
    // land outside the ball
    let ball_index: HashMap<&NormalFormWord<G::Elem>, usize> =
        ball.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut extra_rows: HashMap<NormalFormWord<G::Elem>, Vec<u64>> = HashMap::new();
    let mut join_cases = 0usize;
    let mut join_fail: Option<String> = None;
    let mut height_fail: Option<String> = None;
    for i in 0..ball.len() {
        for j in i..ball.len() {
            let (x, y) = (&ball[i], &ball[j]);
            join_cases += 1;
            let joined = join_star(pres, x, y)?;
            if joined != join_star(pres, y, x)? && join_fail.is_none() {
                join_fail = Some(format!(
                    "join_star is not symmetric on ({}, {})",
                    format_word(g, x),
                    format_word(g, y)
                ));
                continue;
            }
            let bounded_ubs = intersect(&cones[i], &cones[j]);
            match &joined {
                JoinResult::Finite(z) => {
                    if !(oracle_leq(pres, x, z) && oracle_leq(pres, y, z)) && join_fail.is_none() {
                        join_fail = Some(format!(
                            "join_star({}, {}) = {} is not an upper bound",
                            format_word(g, x),
                            format_word(g, y),
                            format_word(g, z)
                        ));
                    }
                    if z.height() != x.height().max(y.height()) && height_fail.is_none() {
                        height_fail = Some(format!(
                            "height of {} ∨ {} is {} instead of {}",
                            format_word(g, x),
                            format_word(g, y),
                            z.height(),
                            x.height().max(y.height())
                        ));
                    }
                    let z_row = match ball_index.get(z) {
                        Some(&zi) => &cones[zi],
                        None => extra_rows
                            .entry(z.clone())
                            .or_insert_with(|| cone_row(pres, z, &space)),
                    };
                    if bounded_ubs != *z_row && join_fail.is_none() {
                        // every bounded upper bound must lie above the join
                        let bad = set_bits(&bounded_ubs)
                            .find(|&w| z_row[w / 64] & (1 << (w % 64)) == 0);
                        if let Some(w) = bad {
                            join_fail = Some(format!(
                                "{} is an upper bound of ({}, {}) not above join_star = {}",
                                format_word(g, &space[w]),
                                format_word(g, x),
                                format_word(g, y),
                                format_word(g, z)
                            ));
                        }
                    }
                }
                JoinResult::Infinity => {
                    if let Some(w) = set_bits(&bounded_ubs).next() {
                        if join_fail.is_none() {
                            join_fail = Some(format!(
                                "join_star({}, {}) found no bound but {} bounds both",
                                format_word(g, x),
                                format_word(g, y),
                                format_word(g, &space[w])
                            ));
                        }
                    }
                }
            }
        }
    }

    let verdictify = |name: &str, cases: usize, fail: Option<String>| match fail {
        None => CheckReport::pass(name, params.clone(), cases),
        Some(w) => CheckReport::fail(name, params.clone(), cases, w),
    };
    Ok(vec![
        verdictify("leq-matches-division-oracle", leq_cases, leq_fail),
        verdictify("division-witnesses-multiply-back", witness_cases, witness_fail),
        verdictify("reducer-fixes-normal-forms", space.len(), fixpoint_fail),
        verdictify("join-agrees-with-bounded-search", join_cases, join_fail),
        verdictify("join-height-is-max", join_cases, height_fail),
    ])
}

/// Base positives that share an upper bound *in the extension* must already
/// have a finite join *in the base*: search `ball(search_bound)` of the
/// extension for common bounds of embedded base pairs of encoding size at
/// most `elem_bound` and require base-level joins whenever one is found.
pub fn base_pair_bound_check<G: QloGroup>(
    pres: &HnnPresentation<G>,
    elem_bound: usize,
    search_bound: usize,
) -> Result<CheckReport, QlError> {
    let g = pres.base();
    let name = "base-pairs-bounded-above-join-in-base";
    let params = vec![
        format!("elem_bound={elem_bound}"),
        format!("search_bound={search_bound}"),
    ];
    let base_ball = g.enumerate_positive(elem_bound);
    let space = enumerate_words(pres, search_bound);
    let cones: Vec<Vec<u64>> = base_ball
        .iter()
        .map(|p| cone_row(pres, &NormalFormWord::from_base(p.clone()), &space))
        .collect();
    let mut cases = 0usize;
    for (i, p) in base_ball.iter().enumerate() {
        for (j, q) in base_ball.iter().enumerate() {
            cases += 1;
            let shares_bound = set_bits(&intersect(&cones[i], &cones[j])).next().is_some();
            if shares_bound && !g.join(p, q).is_finite() {
                return Ok(CheckReport::fail(
                    name,
                    params,
                    cases,
                    format!(
                        "{} and {} share a bound in the extension but have none in the base",
                        g.format_elem(p),
                        g.format_elem(q)
                    ),
                ));
            }
        }
    }
    Ok(CheckReport::pass(name, params, cases))
}

/// Check [`min_pair`] against every positive factorization found by
/// exhaustive search: for all `α, β` in `ball(pair_bound)`, the pair
/// `(μ, ν)` must satisfy `μ·ν⁻¹ = α·β⁻¹` in the group and divide every
/// `(γ, δ)` from `ball(factor_bound)²` with `γ·δ⁻¹ = α·β⁻¹`.
pub fn min_pair_agreement<G: QloGroup>(
    pres: &HnnPresentation<G>,
    pair_bound: usize,
    factor_bound: usize,
) -> Result<Vec<CheckReport>, QlError> {
    let g = pres.base();
    let pairs = enumerate_words(pres, pair_bound);
    let factors = enumerate_words(pres, factor_bound);
    let params = vec![
        format!("pair_bound={pair_bound}"),
        format!("factor_bound={factor_bound}"),
    ];

    let mut classes: HashMap<GeneralWord<G::Elem>, Vec<(usize, usize)>> = HashMap::new();
    for (i, gamma) in factors.iter().enumerate() {
        for (j, delta) in factors.iter().enumerate() {
            classes
                .entry(fraction_nf(pres, gamma, delta))
                .or_default()
                .push((i, j));
        }
    }

    let mut exact_cases = 0usize;
    let mut exact_fail: Option<String> = None;
    let mut div_cases = 0usize;
    let mut div_fail: Option<String> = None;
    for alpha in &pairs {
        for beta in &pairs {
            let mp = min_pair(pres, alpha, beta);
            exact_cases += 1;
            let key = fraction_nf(pres, alpha, beta);
            if fraction_nf(pres, &mp.mu, &mp.nu) != key && exact_fail.is_none() {
                exact_fail = Some(format!(
                    "min_pair({}, {}) = ({}, {}) represents a different fraction",
                    format_word(g, alpha),
                    format_word(g, beta),
                    format_word(g, &mp.mu),
                    format_word(g, &mp.nu)
                ));
            }
            if let Some(members) = classes.get(&key) {
                for &(i, j) in members {
                    div_cases += 1;
                    let divides = leq_star(pres, &mp.mu, &factors[i])?
                        && leq_star(pres, &mp.nu, &factors[j])?;
                    if !divides && div_fail.is_none() {
                        div_fail = Some(format!(
                            "min_pair({}, {}) = ({}, {}) does not divide ({}, {})",
                            format_word(g, alpha),
                            format_word(g, beta),
                            format_word(g, &mp.mu),
                            format_word(g, &mp.nu),
                            format_word(g, &factors[i]),
                            format_word(g, &factors[j])
                        ));
                    }
                }
            }
        }
    }

    let verdictify = |name: &str, cases: usize, fail: Option<String>| match fail {
        None => CheckReport::pass(name, params.clone(), cases),
        Some(w) => CheckReport::fail(name, params.clone(), cases, w),
    };
    Ok(vec![
        verdictify("min-pair-reproduces-fraction", exact_cases, exact_fail),
        verdictify("min-pair-divides-factorizations", div_cases, div_fail),
    ])
}
