//! Verification of controlled order maps between quasi-lattice ordered
//! structures.
//!
//! A positive map `f : S → T` is *controlled* when
//!
//! 1. it preserves finite least upper bounds,
//! 2. every level set `f⁻¹(k) ∩ P` has a known family of minimal elements,
//!    one of which sits below each of its members, and
//! 3. distinct minimal elements of the same level share no upper bound.
//!
//! The height map of an extension — count the stable letters — is the
//! canonical example; [`height_map`] packages it with the stems of each
//! height as the level minima, and [`kernel_checks`] verifies that its
//! zero level is an order-isomorphic copy of the base cone.  All checks
//! are exhaustive over bounded enumerations and report through
//! [`CheckReport`].

use std::collections::HashSet;

use crate::base::{HnnPresentation, IntLattice};
use crate::error::QlError;
use crate::hnn::{
    enumerate_words, format_word, join_star, leq_star, multiply, sigma_elements, NormalFormWord,
};
use crate::order::{JoinResult, QloGroup, QuasiLattice};
use crate::report::CheckReport;

/// The positive monoid of an extension, viewed as a quasi-lattice ordered
/// structure so that maps in and out of it can be checked generically.
pub struct Extension<'p, G: QloGroup> {
    pres: &'p HnnPresentation<G>,
}

impl<'p, G: QloGroup> Extension<'p, G> {
    pub fn new(pres: &'p HnnPresentation<G>) -> Self {
        Extension { pres }
    }

    pub fn presentation(&self) -> &'p HnnPresentation<G> {
        self.pres
    }
}

impl<'p, G: QloGroup> QuasiLattice for Extension<'p, G> {
    type Elem = NormalFormWord<G::Elem>;

    fn identity(&self) -> Self::Elem {
        NormalFormWord::from_base(QloGroup::identity(self.pres.base()))
    }

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        multiply(self.pres, a, b)
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> Result<bool, QlError> {
        leq_star(self.pres, x, y)
    }

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Result<JoinResult<Self::Elem>, QlError> {
        join_star(self.pres, x, y)
    }

    fn enumerate_positive(&self, bound: usize) -> Vec<Self::Elem> {
        enumerate_words(self.pres, bound)
    }

    fn format_elem(&self, e: &Self::Elem) -> String {
        format_word(self.pres.base(), e)
    }
}

/// A candidate controlled map, bundled with the family of level minima it
/// claims for each level.
pub struct ControlledMapCandidate<'a, S: QuasiLattice, T: QuasiLattice> {
    source: &'a S,
    target: &'a T,
    map: Box<dyn Fn(&S::Elem) -> T::Elem + 'a>,
    level_minima: Box<dyn Fn(&T::Elem, usize) -> Vec<S::Elem> + 'a>,
}

impl<'a, S: QuasiLattice, T: QuasiLattice> ControlledMapCandidate<'a, S, T> {
    pub fn new(
        source: &'a S,
        target: &'a T,
        map: impl Fn(&S::Elem) -> T::Elem + 'a,
        level_minima: impl Fn(&T::Elem, usize) -> Vec<S::Elem> + 'a,
    ) -> Self {
        ControlledMapCandidate {
            source,
            target,
            map: Box::new(map),
            level_minima: Box::new(level_minima),
        }
    }

    pub fn map(&self, x: &S::Elem) -> T::Elem {
        (self.map)(x)
    }

    pub fn level_minima(&self, level: &T::Elem, bound: usize) -> Vec<S::Elem> {
        (self.level_minima)(level, bound)
    }

    /// Condition 1: `f(x ∨ y) = f(x) ∨ f(y)` for every pair in the bounded
    /// ball whose join is finite.
    pub fn check_join_preservation(&self, bound: usize) -> Result<CheckReport, QlError> {
        let name = "map-preserves-finite-joins";
        let params = vec![format!("bound={bound}")];
        let ball = self.source.enumerate_positive(bound);
        let mut cases = 0usize;
        for x in &ball {
            for y in &ball {
                let JoinResult::Finite(z) = self.source.join(x, y)? else {
                    continue;
                };
                cases += 1;
                let lhs = (self.map)(&z);
                let rhs = self.target.join(&(self.map)(x), &(self.map)(y))?;
                if rhs != JoinResult::Finite(lhs.clone()) {
                    let rendered_rhs = match &rhs {
                        JoinResult::Finite(v) => self.target.format_elem(v),
                        JoinResult::Infinity => "no bound".into(),
                    };
                    return Ok(CheckReport::fail(
                        name,
                        params,
                        cases,
                        format!(
                            "f({} ∨ {}) = {} but f(x) ∨ f(y) = {}",
                            self.source.format_elem(x),
                            self.source.format_elem(y),
                            self.target.format_elem(&lhs),
                            rendered_rhs
                        ),
                    ));
                }
            }
        }
        Ok(CheckReport::pass(name, params, cases))
    }

    /// Condition 2: every bounded positive of the given level lies above one
    /// of the claimed level minima (which must themselves have that level).
    pub fn check_level_cover(&self, level: &T::Elem, bound: usize) -> Result<CheckReport, QlError> {
        let name = "level-minima-cover-level";
        let params = vec![
            format!("level={}", self.target.format_elem(level)),
            format!("bound={bound}"),
        ];
        let minima = (self.level_minima)(level, bound);
        let mut cases = 0usize;
        for m in &minima {
            if (self.map)(m) != *level {
                return Ok(CheckReport::fail(
                    name,
                    params,
                    cases,
                    format!(
                        "claimed minimum {} is not on level {}",
                        self.source.format_elem(m),
                        self.target.format_elem(level)
                    ),
                ));
            }
        }
        for x in self.source.enumerate_positive(bound) {
            if (self.map)(&x) != *level {
                continue;
            }
            cases += 1;
            let mut covered = false;
            for m in &minima {
                if self.source.leq(m, &x)? {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return Ok(CheckReport::fail(
                    name,
                    params,
                    cases,
                    format!(
                        "{} is on the level but above none of the {} claimed minima",
                        self.source.format_elem(&x),
                        minima.len()
                    ),
                ));
            }
        }
        Ok(CheckReport::pass(name, params, cases))
    }

    /// Condition 3: distinct minima of a level share no upper bound — the
    /// structured join must say so, and an exhaustive search over
    /// `ball(search_bound)` must agree.
    pub fn check_level_separation(
        &self,
        level: &T::Elem,
        minima_bound: usize,
        search_bound: usize,
    ) -> Result<CheckReport, QlError> {
        let name = "level-minima-pairwise-unbounded";
        let params = vec![
            format!("level={}", self.target.format_elem(level)),
            format!("minima_bound={minima_bound}"),
            format!("search_bound={search_bound}"),
        ];
        let minima = (self.level_minima)(level, minima_bound);
        let space = self.source.enumerate_positive(search_bound);
        // upper cone of each minimum over the search space, as bitmasks, so
        // the pair sweep is an intersection test instead of a rescan
        let blocks = space.len().div_ceil(64);
        let mut cones: Vec<Vec<u64>> = Vec::with_capacity(minima.len());
        for m in &minima {
            let mut row = vec![0u64; blocks];
            for (j, w) in space.iter().enumerate() {
                if self.source.leq(m, w)? {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            cones.push(row);
        }
        let mut cases = 0usize;
        for (i, a) in minima.iter().enumerate() {
            for (jj, b) in minima.iter().enumerate().skip(i + 1) {
                cases += 1;
                if let JoinResult::Finite(z) = self.source.join(a, b)? {
                    return Ok(CheckReport::fail(
                        name,
                        params,
                        cases,
                        format!(
                            "minima {} and {} have join {}",
                            self.source.format_elem(a),
                            self.source.format_elem(b),
                            self.source.format_elem(&z)
                        ),
                    ));
                }
                let shared = cones[i]
                    .iter()
                    .zip(&cones[jj])
                    .position(|(x, y)| x & y != 0);
                if let Some(blk) = shared {
                    let bit = (cones[i][blk] & cones[jj][blk]).trailing_zeros() as usize;
                    let w = &space[blk * 64 + bit];
                    return Ok(CheckReport::fail(
                        name,
                        params,
                        cases,
                        format!(
                            "minima {} and {} are both below {}",
                            self.source.format_elem(a),
                            self.source.format_elem(b),
                            self.source.format_elem(w)
                        ),
                    ));
                }
            }
        }
        Ok(CheckReport::pass(name, params, cases))
    }
}

/// Check that `embed` is an order isomorphism from the bounded positive
/// cone of `kernel` onto the elements of `source` singled out by
/// `in_level_zero`: order and joins transport along it, its image lies in
/// the level, and every bounded element of the level is hit.
pub fn kernel_embedding_check<K: QuasiLattice, S: QuasiLattice>(
    kernel: &K,
    source: &S,
    embed: impl Fn(&K::Elem) -> S::Elem,
    in_level_zero: impl Fn(&S::Elem) -> bool,
    bound: usize,
) -> Result<Vec<CheckReport>, QlError> {
    let params = vec![format!("bound={bound}")];
    let kball = kernel.enumerate_positive(bound);

    let mut image_fail: Option<String> = None;
    let mut order_cases = 0usize;
    let mut order_fail: Option<String> = None;
    let mut join_cases = 0usize;
    let mut join_fail: Option<String> = None;
    let mut image: HashSet<S::Elem> = HashSet::new();
    for k in &kball {
        let ek = embed(k);
        if !in_level_zero(&ek) && image_fail.is_none() {
            image_fail = Some(format!(
                "embedded {} is not on level zero",
                kernel.format_elem(k)
            ));
        }
        image.insert(ek);
    }
    for k1 in &kball {
        for k2 in &kball {
            order_cases += 1;
            let below_kernel = kernel.leq(k1, k2)?;
            let below_source = source.leq(&embed(k1), &embed(k2))?;
            if below_kernel != below_source && order_fail.is_none() {
                order_fail = Some(format!(
                    "order of ({}, {}) changes under embedding: {below_kernel} vs {below_source}",
                    kernel.format_elem(k1),
                    kernel.format_elem(k2)
                ));
            }
            join_cases += 1;
            let jk = kernel.join(k1, k2)?.map(|z| embed(&z));
            let js = source.join(&embed(k1), &embed(k2))?;
            if jk != js && join_fail.is_none() {
                join_fail = Some(format!(
                    "join of ({}, {}) changes under embedding",
                    kernel.format_elem(k1),
                    kernel.format_elem(k2)
                ));
            }
        }
    }
    let mut onto_cases = 0usize;
    let mut onto_fail: Option<String> = None;
    for x in source.enumerate_positive(bound) {
        if !in_level_zero(&x) {
            continue;
        }
        onto_cases += 1;
        if !image.contains(&x) && onto_fail.is_none() {
            onto_fail = Some(format!(
                "level-zero element {} is not in the embedded image",
                source.format_elem(&x)
            ));
        }
    }

    let verdictify = |name: &str, cases: usize, fail: Option<String>| match fail {
        None => CheckReport::pass(name, params.clone(), cases),
        Some(w) => CheckReport::fail(name, params.clone(), cases, w),
    };
    Ok(vec![
        verdictify("kernel-image-has-level-zero", kball.len(), image_fail),
        verdictify("kernel-embedding-preserves-order", order_cases, order_fail),
        verdictify("kernel-embedding-preserves-joins", join_cases, join_fail),
        verdictify("level-zero-is-embedded-base", onto_cases, onto_fail),
    ])
}

/// The height map of an extension as a candidate controlled map into the
/// integers, with the stems of each height as level minima.
pub fn height_map<'a, G: QloGroup>(
    ext: &'a Extension<'a, G>,
    integers: &'a IntLattice,
) -> ControlledMapCandidate<'a, Extension<'a, G>, IntLattice> {
    debug_assert_eq!(integers.rank(), 1);
    ControlledMapCandidate::new(
        ext,
        integers,
        |w| vec![w.height() as i64],
        |level, bound| {
            if level[0] < 0 {
                return Vec::new();
            }
            sigma_elements(ext.presentation(), level[0] as usize, bound)
                .into_iter()
                .map(|s| s.into_word())
                .collect()
        },
    )
}

/// Verify that the zero level of the height map is an order-isomorphic copy
/// of the base cone.
pub fn kernel_checks<G: QloGroup>(
    pres: &HnnPresentation<G>,
    bound: usize,
) -> Result<Vec<CheckReport>, QlError> {
    let ext = Extension::new(pres);
    kernel_embedding_check(
        pres.base(),
        &ext,
        |p| NormalFormWord::from_base(p.clone()),
        |w| w.height() == 0,
        bound,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::make_bs;
    use crate::hnn::token_length;

    #[test]
    fn height_map_is_controlled_at_small_bounds() {
        let pres = make_bs(2, 3).unwrap();
        let ext = Extension::new(&pres);
        let ints = IntLattice::new(1).unwrap();
        let cand = height_map(&ext, &ints);
        assert!(cand
            .check_join_preservation(4)
            .unwrap()
            .verdict
            .passed());
        for k in 0..=2 {
            let level = vec![k];
            assert!(cand.check_level_cover(&level, 3).unwrap().verdict.passed());
            assert!(cand
                .check_level_separation(&level, 3, 4)
                .unwrap()
                .verdict
                .passed());
        }
    }

    #[test]
    fn token_length_is_not_a_controlled_map() {
        let pres = make_bs(2, 3).unwrap();
        let ext = Extension::new(&pres);
        let ints = IntLattice::new(1).unwrap();
        let cand = ControlledMapCandidate::new(
            &ext,
            &ints,
            |w: &NormalFormWord<Vec<i64>>| vec![token_length(pres.base(), w) as i64],
            |_, _| Vec::new(),
        );
        // x ∨ t = t·x² has token length 3, but 1 ∨ 1 = 1
        let report = cand.check_join_preservation(3).unwrap();
        assert!(!report.verdict.passed());
    }

    #[test]
    fn undersized_minima_fail_the_cover() {
        let pres = make_bs(2, 3).unwrap();
        let ext = Extension::new(&pres);
        let ints = IntLattice::new(1).unwrap();
        let e = QloGroup::identity(pres.base());
        let cand = ControlledMapCandidate::new(
            &ext,
            &ints,
            |w: &NormalFormWord<Vec<i64>>| vec![w.height() as i64],
            // claims the bare stable letter is the only height-1 minimum
            move |level: &Vec<i64>, _| {
                if level[0] == 1 {
                    vec![NormalFormWord {
                        syllables: vec![e.clone()],
                        tail: e.clone(),
                    }]
                } else {
                    Vec::new()
                }
            },
        );
        let report = cand.check_level_cover(&vec![1], 3).unwrap();
        assert!(!report.verdict.passed());
        // x·t sits on height 1 but is not above t
        match &report.verdict {
            crate::report::Verdict::Fail { witness } => {
                assert!(witness.contains("x . t"), "unexpected witness {witness}");
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn constant_map_has_no_kernel_isomorphism() {
        let pres = make_bs(2, 3).unwrap();
        let ext = Extension::new(&pres);
        // treating the whole cone as level zero cannot be onto from the base
        let checks = kernel_embedding_check(
            pres.base(),
            &ext,
            |p| NormalFormWord::from_base(p.clone()),
            |_| true,
            3,
        )
        .unwrap();
        let onto = checks
            .iter()
            .find(|c| c.name == "level-zero-is-embedded-base")
            .unwrap();
        assert!(!onto.verdict.passed());
        // while the genuine height kernel is an isomorphic copy
        for check in kernel_checks(&pres, 4).unwrap() {
            assert!(check.verdict.passed(), "{}", check.line());
        }
    }
}
