//! Subgroup data for an HNN extension and its hypothesis validator.
//!
//! An extension `G* = ⟨G, t | t⁻¹at = φ(a), a ∈ A⟩` inherits a workable
//! order theory from `(G, P)` when three hypotheses hold:
//!
//! 1. `φ(A ∩ P) = B ∩ P` — the isomorphism matches the positive parts;
//! 2. every coset `gA` that meets `P` has a least positive representative,
//!    and `coset_rep_a` designates it;
//! 3. `B` is closed under finite joins taken in `G`.
//!
//! [`validate_hypotheses`] refutes each hypothesis by exhaustive search up
//! to an enumeration bound and reports witnesses.  Checked constructors run
//! it before handing out a presentation; [`HnnPresentation::unvalidated`]
//! skips it and records that fact, which is how deliberately broken
//! presentations are built for demonstration.

use crate::base::free::FreeGroup;
use crate::base::int_lattice::{IntLattice, Sublattice2};
use crate::error::QlError;
use crate::order::{JoinResult, QloGroup};
use crate::report::{CheckReport, Verdict};
use serde::Serialize;
use std::collections::HashMap;

pub type ElemPred<G> = Box<dyn Fn(&<G as QloGroup>::Elem) -> bool + Send + Sync>;
pub type ElemMap<G> = Box<dyn Fn(&<G as QloGroup>::Elem) -> <G as QloGroup>::Elem + Send + Sync>;
pub type CeilingMap<G> =
    Box<dyn Fn(&<G as QloGroup>::Elem) -> Option<<G as QloGroup>::Elem> + Send + Sync>;

/// Default enumeration bound for checked construction.
pub const DEFAULT_VALIDATION_BOUND: usize = 12;

/// The subgroups `A ≅ B` of the base group together with the isomorphism
/// `φ: A → B`, coset representative choices, and (optionally) the ceiling
/// map that order queries across the stable letter require.
pub struct SubgroupData<G: QloGroup> {
    pub in_a: ElemPred<G>,
    pub in_b: ElemPred<G>,
    pub phi: ElemMap<G>,
    pub phi_inv: ElemMap<G>,
    pub coset_rep_a: ElemMap<G>,
    pub coset_rep_b: ElemMap<G>,
    /// For positive `c`, the least element of `A ∩ P` above `c`, or `None`
    /// when no such element exists.  Bases may omit the whole capability and
    /// forfeit `leq`/`join` across the stable letter; factorization into
    /// minimal pairs keeps working without it.
    pub a_ceiling: Option<CeilingMap<G>>,
}

/// Validation outcome for the three extension hypotheses.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub bound: usize,
    pub phi_positive_bijection: Verdict,
    pub minimal_coset_reps: Verdict,
    pub joins_stay_in_b: Verdict,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.phi_positive_bijection.passed()
            && self.minimal_coset_reps.passed()
            && self.joins_stay_in_b.passed()
    }

    pub fn checks(&self) -> Vec<CheckReport> {
        let p = vec![format!("bound={}", self.bound)];
        let report = |name: &str, v: &Verdict| CheckReport {
            name: name.into(),
            params: p.clone(),
            cases: 0,
            verdict: v.clone(),
        };
        vec![
            report("phi-positive-bijection", &self.phi_positive_bijection),
            report("minimal-coset-reps", &self.minimal_coset_reps),
            report("joins-stay-in-b", &self.joins_stay_in_b),
        ]
    }

    fn summary(&self) -> String {
        self.checks()
            .iter()
            .map(|c| c.line())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Whether a presentation was constructed through the validator.
#[derive(Debug, Clone, Serialize)]
pub enum ValidationState {
    Validated(ValidationReport),
    /// Construction deliberately skipped validation.
    Unvalidated,
}

/// An HNN extension of a quasi-lattice ordered base group, the carrier for
/// every word and order computation in [`crate::hnn`].
pub struct HnnPresentation<G: QloGroup> {
    base: G,
    sub: SubgroupData<G>,
    name: String,
    validation: ValidationState,
}

impl<G: QloGroup> HnnPresentation<G> {
    /// Construct only if the hypotheses survive refutation at `bound`.
    pub fn validated(
        base: G,
        sub: SubgroupData<G>,
        name: impl Into<String>,
        bound: usize,
    ) -> Result<Self, QlError> {
        let report = validate_hypotheses(&base, &sub, bound);
        if !report.passed() {
            return Err(QlError::HypothesesFailed(report.summary()));
        }
        Ok(HnnPresentation {
            base,
            sub,
            name: name.into(),
            validation: ValidationState::Validated(report),
        })
    }

    /// Construct without validation; the skip is recorded and shows up in
    /// reports.
    pub fn unvalidated(base: G, sub: SubgroupData<G>, name: impl Into<String>) -> Self {
        HnnPresentation {
            base,
            sub,
            name: name.into(),
            validation: ValidationState::Unvalidated,
        }
    }

    pub fn base(&self) -> &G {
        &self.base
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn validation(&self) -> &ValidationState {
        &self.validation
    }

    /// Re-run the hypothesis validator at a chosen bound.
    pub fn validate(&self, bound: usize) -> ValidationReport {
        validate_hypotheses(&self.base, &self.sub, bound)
    }

    pub fn in_a(&self, e: &G::Elem) -> bool {
        (self.sub.in_a)(e)
    }

    pub fn in_b(&self, e: &G::Elem) -> bool {
        (self.sub.in_b)(e)
    }

    pub fn phi(&self, a: &G::Elem) -> G::Elem {
        debug_assert!(self.in_a(a));
        (self.sub.phi)(a)
    }

    pub fn phi_inv(&self, b: &G::Elem) -> G::Elem {
        debug_assert!(self.in_b(b));
        (self.sub.phi_inv)(b)
    }

    pub fn coset_rep_a(&self, e: &G::Elem) -> G::Elem {
        (self.sub.coset_rep_a)(e)
    }

    pub fn coset_rep_b(&self, e: &G::Elem) -> G::Elem {
        (self.sub.coset_rep_b)(e)
    }

    /// Least element of `A ∩ P` above positive `c`, `Ok(None)` when there is
    /// none, or an error when the base never provided the capability.
    pub fn a_ceiling(&self, c: &G::Elem) -> Result<Option<G::Elem>, QlError> {
        match &self.sub.a_ceiling {
            Some(f) => Ok(f(c)),
            None => Err(QlError::CeilingUnsupported),
        }
    }

    pub fn has_ceiling(&self) -> bool {
        self.sub.a_ceiling.is_some()
    }
}

/// Refute the three extension hypotheses by exhaustive search over all
/// positive elements of encoding size at most `bound` (and, for the join
/// closure of `B`, over differences of half-bound positives).
pub fn validate_hypotheses<G: QloGroup>(
    base: &G,
    sub: &SubgroupData<G>,
    bound: usize,
) -> ValidationReport {
    let positives = base.enumerate_positive(bound);

    // Hypothesis 1: φ restricts to a bijection A ∩ P → B ∩ P.  Both
    // inclusions are checked through the given inverse, so the bound on one
    // side never has to anticipate how much φ stretches encodings.
    let mut phi_verdict = Verdict::Pass;
    'hyp1: {
        for p in &positives {
            if (sub.in_a)(p) {
                let image = (sub.phi)(p);
                if !(sub.in_b)(&image) || !base.is_positive(&image) {
                    phi_verdict = Verdict::Fail {
                        witness: format!(
                            "phi({}) = {} is not in B ∩ P",
                            base.format_elem(p),
                            base.format_elem(&image)
                        ),
                    };
                    break 'hyp1;
                }
                if (sub.phi_inv)(&image) != *p {
                    phi_verdict = Verdict::Fail {
                        witness: format!("phi_inv(phi({0})) ≠ {0}", base.format_elem(p)),
                    };
                    break 'hyp1;
                }
            }
            if (sub.in_b)(p) {
                let pre = (sub.phi_inv)(p);
                if !(sub.in_a)(&pre) || !base.is_positive(&pre) {
                    phi_verdict = Verdict::Fail {
                        witness: format!(
                            "phi_inv({}) = {} is not in A ∩ P",
                            base.format_elem(p),
                            base.format_elem(&pre)
                        ),
                    };
                    break 'hyp1;
                }
                if (sub.phi)(&pre) != *p {
                    phi_verdict = Verdict::Fail {
                        witness: format!("phi(phi_inv({0})) ≠ {0}", base.format_elem(p)),
                    };
                    break 'hyp1;
                }
            }
        }
    }

    // Hypothesis 2: the designated representative of each coset meeting P
    // is positive, lies in the coset, and divides every positive member.
    let mut rep_verdict = Verdict::Pass;
    'hyp2: {
        let mut cosets: HashMap<G::Elem, Vec<&G::Elem>> = HashMap::new();
        for p in &positives {
            let rep = (sub.coset_rep_a)(p);
            if !base.is_positive(&rep) {
                rep_verdict = Verdict::Fail {
                    witness: format!(
                        "coset rep {} of {} is not positive",
                        base.format_elem(&rep),
                        base.format_elem(p)
                    ),
                };
                break 'hyp2;
            }
            if !(sub.in_a)(&base.multiply(&base.invert(&rep), p)) {
                rep_verdict = Verdict::Fail {
                    witness: format!(
                        "coset rep {} of {} is in a different coset",
                        base.format_elem(&rep),
                        base.format_elem(p)
                    ),
                };
                break 'hyp2;
            }
            cosets.entry(rep).or_default().push(p);
        }
        let mut reps: Vec<&G::Elem> = cosets.keys().collect();
        reps.sort_by_key(|r| (base.size(r), base.format_elem(r)));
        for rep in reps {
            for q in &cosets[rep] {
                if !base.leq(rep, q) {
                    rep_verdict = Verdict::Fail {
                        witness: format!(
                            "coset {}+A: rep does not divide member {}",
                            base.format_elem(rep),
                            base.format_elem(q)
                        ),
                    };
                    break 'hyp2;
                }
            }
        }
    }

    // Hypothesis 3: joins of elements of B stay in B.  Only elements with a
    // positive upper bound matter, and those are exactly differences of
    // positives, so the window γ·δ⁻¹ over half-bound positives is the right
    // enumeration of B.
    let mut join_verdict = Verdict::Pass;
    'hyp3: {
        let half = base.enumerate_positive(bound / 2);
        let mut window: Vec<G::Elem> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for g in &half {
            for d in &half {
                let x = base.multiply(g, &base.invert(d));
                if (sub.in_b)(&x) && seen.insert(x.clone()) {
                    window.push(x);
                }
            }
        }
        window.sort_by_key(|x| (base.size(x), base.format_elem(x)));
        for x in &window {
            for y in &window {
                if let JoinResult::Finite(z) = base.join_general(x, y) {
                    if !(sub.in_b)(&z) {
                        join_verdict = Verdict::Fail {
                            witness: format!(
                                "{} ∨ {} = {} is outside B",
                                base.format_elem(x),
                                base.format_elem(y),
                                base.format_elem(&z)
                            ),
                        };
                        break 'hyp3;
                    }
                }
            }
        }
    }

    ValidationReport {
        bound,
        phi_positive_bijection: phi_verdict,
        minimal_coset_reps: rep_verdict,
        joins_stay_in_b: join_verdict,
    }
}

fn positive(v: i64, what: &str) -> Result<i64, QlError> {
    if v <= 0 {
        Err(QlError::InvalidPresentation(format!(
            "{what} must be positive, got {v}"
        )))
    } else {
        Ok(v)
    }
}

/// `⟨x, t | t⁻¹ x^d t = x^c⟩` over the base `(ℤ, ℕ)`: `A = dℤ`, `B = cℤ`,
/// `φ(dn) = cn`.
pub fn make_bs(c: i64, d: i64) -> Result<HnnPresentation<IntLattice>, QlError> {
    let c = positive(c, "c")?;
    let d = positive(d, "d")?;
    let base = IntLattice::new(1)?;
    let sub = SubgroupData::<IntLattice> {
        in_a: Box::new(move |w| w[0] % d == 0),
        in_b: Box::new(move |w| w[0] % c == 0),
        phi: Box::new(move |w| vec![w[0] / d * c]),
        phi_inv: Box::new(move |w| vec![w[0] / c * d]),
        coset_rep_a: Box::new(move |w| vec![w[0].rem_euclid(d)]),
        coset_rep_b: Box::new(move |w| vec![w[0].rem_euclid(c)]),
        a_ceiling: Some(Box::new(move |w| Some(vec![w[0].div_euclid(d) * d + if w[0].rem_euclid(d) == 0 { 0 } else { d }]))),
    };
    HnnPresentation::validated(base, sub, format!("bs(c={c},d={d})"), DEFAULT_VALIDATION_BOUND)
}

/// `ℤⁿ` base with `A = Π aᵢℤ`, `B = Π bᵢℤ` and the componentwise rescaling
/// isomorphism.
pub fn make_int_lattice(
    a_moduli: &[i64],
    b_moduli: &[i64],
) -> Result<HnnPresentation<IntLattice>, QlError> {
    if a_moduli.len() != b_moduli.len() || a_moduli.is_empty() {
        return Err(QlError::InvalidPresentation(
            "moduli lists must be nonempty and of equal length".into(),
        ));
    }
    for &m in a_moduli.iter().chain(b_moduli) {
        positive(m, "modulus")?;
    }
    let base = IntLattice::new(a_moduli.len())?;
    let am: Vec<i64> = a_moduli.to_vec();
    let bm: Vec<i64> = b_moduli.to_vec();
    let name = format!(
        "int_lattice(a={:?},b={:?})",
        a_moduli.to_vec(),
        b_moduli.to_vec()
    );
    let (am1, am2, am3, am4, am5) = (am.clone(), am.clone(), am.clone(), am.clone(), am);
    let (bm1, bm2, bm3, bm4) = (bm.clone(), bm.clone(), bm.clone(), bm);
    let sub = SubgroupData::<IntLattice> {
        in_a: Box::new(move |w| w.iter().zip(&am1).all(|(x, m)| x % m == 0)),
        in_b: Box::new(move |w| w.iter().zip(&bm1).all(|(x, m)| x % m == 0)),
        phi: Box::new(move |w| w.iter().zip(am2.iter().zip(&bm2)).map(|(x, (a, b))| x / a * b).collect()),
        phi_inv: Box::new(move |w| w.iter().zip(am3.iter().zip(&bm3)).map(|(x, (a, b))| x / b * a).collect()),
        coset_rep_a: Box::new(move |w| w.iter().zip(&am4).map(|(x, m)| x.rem_euclid(*m)).collect()),
        coset_rep_b: Box::new(move |w| w.iter().zip(&bm4).map(|(x, m)| x.rem_euclid(*m)).collect()),
        a_ceiling: Some(Box::new(move |w| {
            Some(
                w.iter()
                    .zip(&am5)
                    .map(|(x, m)| x.div_euclid(*m) * m + if x.rem_euclid(*m) == 0 { 0 } else { *m })
                    .collect(),
            )
        })),
    };
    HnnPresentation::validated(base, sub, name, DEFAULT_VALIDATION_BOUND)
}

/// Rank-2 convenience form of [`make_int_lattice`]: `A = aℤ × bℤ`,
/// `B = cℤ × dℤ`.
pub fn make_int_lattice_hnn(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
) -> Result<HnnPresentation<IntLattice>, QlError> {
    make_int_lattice(&[a, b], &[c, d])
}

/// Free base `F_k` with `A = ⟨a^s⟩` and `B = ⟨g^u⟩` for a chosen target
/// generator `g` (index `target`), realizing the relation `a^s t = t g^u`.
pub fn make_free_hnn(
    rank: usize,
    s: i64,
    u: i64,
    target: usize,
) -> Result<HnnPresentation<FreeGroup>, QlError> {
    let s = positive(s, "s")?;
    let u = positive(u, "u")?;
    if rank < 2 {
        return Err(QlError::InvalidPresentation(
            "free base needs rank at least 2".into(),
        ));
    }
    if target >= rank {
        return Err(QlError::InvalidPresentation(format!(
            "target generator index {target} out of range for rank {rank}"
        )));
    }
    let base = FreeGroup::new(rank)?;
    let name = format!(
        "free(rank={rank},s={s},u={u},target={})",
        (b'a' + target as u8) as char
    );

    // Exponent of w when w is a power of generator `gen` (1-based letter).
    fn as_power(w: &[i8], gen: i8) -> Option<i64> {
        if w.iter().all(|&l| l == gen) {
            Some(w.len() as i64)
        } else if w.iter().all(|&l| l == -gen) {
            Some(-(w.len() as i64))
        } else {
            None
        }
    }
    // Split off the maximal trailing power of `gen`: w = y · gen^n with y
    // not ending in gen or its inverse.
    fn split_trailing(w: &[i8], gen: i8) -> (Vec<i8>, i64) {
        let mut i = w.len();
        while i > 0 && (w[i - 1] == gen || w[i - 1] == -gen) {
            i -= 1;
        }
        let tail = &w[i..];
        let n = if tail.first().is_some_and(|&l| l == gen) {
            tail.len() as i64
        } else {
            -(tail.len() as i64)
        };
        (w[..i].to_vec(), if tail.is_empty() { 0 } else { n })
    }
    fn rep(w: &[i8], gen: i8, modulus: i64) -> Vec<i8> {
        let (mut y, n) = split_trailing(w, gen);
        let r = n.rem_euclid(modulus);
        y.extend(std::iter::repeat(gen).take(r as usize));
        y
    }

    let tg = (target + 1) as i8;
    let (su, us) = (s, u);
    let sub = SubgroupData::<FreeGroup> {
        in_a: Box::new(move |w| as_power(w, 1).is_some_and(|j| j % s == 0)),
        in_b: Box::new(move |w| as_power(w, tg).is_some_and(|j| j % u == 0)),
        phi: Box::new(move |w| {
            let m = as_power(w, 1).expect("phi applied outside A") / su;
            let exp = m * us;
            let l = if exp >= 0 { tg } else { -tg };
            vec![l; exp.unsigned_abs() as usize]
        }),
        phi_inv: Box::new(move |w| {
            let m = as_power(w, tg).expect("phi_inv applied outside B") / u;
            let exp = m * s;
            let l = if exp >= 0 { 1 } else { -1 };
            vec![l; exp.unsigned_abs() as usize]
        }),
        coset_rep_a: Box::new(move |w| rep(w, 1, s)),
        coset_rep_b: Box::new(move |w| rep(w, tg, u)),
        a_ceiling: Some(Box::new(move |c| {
            if c.is_empty() {
                return Some(Vec::new());
            }
            let r = as_power(c, 1).filter(|&j| j > 0)?;
            let m = (r + s - 1) / s;
            Some(vec![1; (m * s) as usize])
        })),
    };
    HnnPresentation::validated(base, sub, name, DEFAULT_VALIDATION_BOUND)
}

/// `ℤ²` with `A = B` the sublattice spanned by two generators and `φ` the
/// identity.  Such spans generally break the minimal-representative
/// hypothesis — e.g. generators `(1,2)`, `(2,1)` — so construction is
/// unvalidated; run [`HnnPresentation::validate`] to see the refutation.
pub fn make_int_lattice_span(gens: [[i64; 2]; 2]) -> Result<HnnPresentation<IntLattice>, QlError> {
    let base = IntLattice::new(2)?;
    let span = Sublattice2::new(gens)?;
    let name = format!(
        "int_lattice_span(gens=({},{})/({},{}))",
        gens[0][0], gens[0][1], gens[1][0], gens[1][1]
    );
    let (sa, sb, ra, rb) = (span.clone(), span.clone(), span.clone(), span);
    let sub = SubgroupData::<IntLattice> {
        in_a: Box::new(move |w| sa.contains(w)),
        in_b: Box::new(move |w| sb.contains(w)),
        phi: Box::new(|w| w.clone()),
        phi_inv: Box::new(|w| w.clone()),
        coset_rep_a: Box::new(move |w| ra.coset_rep(w)),
        coset_rep_b: Box::new(move |w| rb.coset_rep(w)),
        a_ceiling: None,
    };
    Ok(HnnPresentation::unvalidated(base, sub, name))
}
