//! Exact identities of the truncated representation, verified on safe
//! columns.

use crate::base::HnnPresentation;
use crate::error::QlError;
use crate::hnn::{format_word, join_star, sigma_elements, token_length, NormalFormWord};
use crate::order::{JoinResult, QloGroup};
use crate::report::CheckReport;
use crate::toeplitz::basis::TruncatedBasis;
use crate::toeplitz::operator::{toeplitz_adjoint, toeplitz_op, SparseOperator};

fn render_column<G: QloGroup>(
    g: &G,
    basis: &TruncatedBasis<G::Elem>,
    col: usize,
) -> String {
    format_word(g, basis.element(col))
}

/// `T_p* T_p = 1`: the truncation of an isometry composes with its adjoint
/// to the identity on every safe column.
pub fn check_isometry<G: QloGroup>(
    pres: &HnnPresentation<G>,
    basis: &TruncatedBasis<G::Elem>,
    p: &NormalFormWord<G::Elem>,
) -> Result<CheckReport, QlError> {
    let g = pres.base();
    let name = "toeplitz-isometry";
    let params = vec![
        format!("p={}", format_word(g, p)),
        format!("truncation={}", basis.truncation()),
    ];
    let product = toeplitz_adjoint(pres, basis, p).compose(&toeplitz_op(pres, basis, p));
    let (mutual, bad) = product.agree_on_safe(&SparseOperator::identity(basis.len()));
    if mutual == 0 {
        return Err(QlError::InsufficientTruncation);
    }
    Ok(match bad {
        None => CheckReport::pass(name, params, mutual),
        Some(col) => CheckReport::fail(
            name,
            params,
            mutual,
            format!(
                "column ε_{} of T_p*T_p is not the identity column",
                render_column(g, basis, col)
            ),
        ),
    })
}

/// The covariance identity: `T_p T_p* T_q T_q*` equals `T_z T_z*` for the
/// least upper bound `z = p ∨ q` when it exists, and the zero operator
/// otherwise, exactly on mutually safe columns.
pub fn check_covariance<G: QloGroup>(
    pres: &HnnPresentation<G>,
    basis: &TruncatedBasis<G::Elem>,
    p: &NormalFormWord<G::Elem>,
    q: &NormalFormWord<G::Elem>,
) -> Result<CheckReport, QlError> {
    let g = pres.base();
    let name = "toeplitz-covariance";
    let params = vec![
        format!("p={}", format_word(g, p)),
        format!("q={}", format_word(g, q)),
        format!("truncation={}", basis.truncation()),
    ];
    let range_projection = |w: &NormalFormWord<G::Elem>| {
        toeplitz_op(pres, basis, w).compose(&toeplitz_adjoint(pres, basis, w))
    };
    let lhs = range_projection(p).compose(&range_projection(q));
    let (rhs, rhs_desc) = match join_star(pres, p, q)? {
        JoinResult::Finite(z) => {
            let desc = format!("T_z T_z* for z = {}", format_word(g, &z));
            (range_projection(&z), desc)
        }
        JoinResult::Infinity => (SparseOperator::zero(basis.len()), "the zero operator".into()),
    };
    let (mutual, bad) = lhs.agree_on_safe(&rhs);
    if mutual == 0 {
        return Err(QlError::InsufficientTruncation);
    }
    Ok(match bad {
        None => CheckReport::pass(name, params, mutual),
        Some(col) => CheckReport::fail(
            name,
            params,
            mutual,
            format!(
                "T_pT_p*T_qT_q* differs from {rhs_desc} at column ε_{}",
                render_column(g, basis, col)
            ),
        ),
    })
}

/// Orthogonality of the height-`k` stems: `T_σ* T_τ` is zero for distinct
/// stems and the identity for `σ = τ`, on safe columns.  Stems beyond the
/// truncation cannot act on it at all and are skipped; if none remain the
/// truncation is insufficient.
pub fn check_matrix_units<G: QloGroup>(
    pres: &HnnPresentation<G>,
    basis: &TruncatedBasis<G::Elem>,
    k: usize,
    bound: usize,
) -> Result<CheckReport, QlError> {
    let g = pres.base();
    let name = "toeplitz-matrix-units";
    let params = vec![
        format!("height={k}"),
        format!("stem_bound={bound}"),
        format!("truncation={}", basis.truncation()),
    ];
    let stems: Vec<NormalFormWord<G::Elem>> = sigma_elements(pres, k, bound)
        .into_iter()
        .map(|s| s.into_word())
        .filter(|w| token_length(g, w) <= basis.truncation())
        .collect();
    if stems.is_empty() {
        return Err(QlError::InsufficientTruncation);
    }
    let identity = SparseOperator::identity(basis.len());
    let zero = SparseOperator::zero(basis.len());
    let mut cases = 0usize;
    for sigma in &stems {
        let adj = toeplitz_adjoint(pres, basis, sigma);
        for tau in &stems {
            let product = adj.compose(&toeplitz_op(pres, basis, tau));
            let expected = if sigma == tau { &identity } else { &zero };
            let (mutual, bad) = product.agree_on_safe(expected);
            if mutual == 0 {
                return Err(QlError::InsufficientTruncation);
            }
            cases += mutual;
            if let Some(col) = bad {
                let law = if sigma == tau { "identity" } else { "zero" };
                return Ok(CheckReport::fail(
                    name,
                    params,
                    cases,
                    format!(
                        "T_σ*T_τ for σ = {}, τ = {} is not {law} at column ε_{}",
                        format_word(g, sigma),
                        format_word(g, tau),
                        render_column(g, basis, col)
                    ),
                ));
            }
        }
    }
    Ok(CheckReport::pass(name, params, cases))
}

/// Invariance of the height-`k` level: sample operators
/// `T_σ T_x T_y* T_τ*` with stems `σ, τ` of height `k` and height-0 `x, y`
/// must map safe height-`k` basis vectors to height-`k` basis vectors or to
/// zero.
pub fn check_hk_invariance<G: QloGroup>(
    pres: &HnnPresentation<G>,
    basis: &TruncatedBasis<G::Elem>,
    k: usize,
    stem_bound: usize,
    elem_bound: usize,
) -> Result<CheckReport, QlError> {
    let g = pres.base();
    let name = "toeplitz-level-invariance";
    let params = vec![
        format!("height={k}"),
        format!("stem_bound={stem_bound}"),
        format!("elem_bound={elem_bound}"),
        format!("truncation={}", basis.truncation()),
    ];
    let stems: Vec<NormalFormWord<G::Elem>> = sigma_elements(pres, k, stem_bound)
        .into_iter()
        .map(|s| s.into_word())
        .filter(|w| token_length(g, w) <= basis.truncation())
        .collect();
    if stems.is_empty() {
        return Err(QlError::InsufficientTruncation);
    }
    let base_elems: Vec<NormalFormWord<G::Elem>> = g
        .enumerate_positive(elem_bound)
        .into_iter()
        .map(NormalFormWord::from_base)
        .collect();
    let level: Vec<usize> = (0..basis.len()).filter(|&i| basis.height(i) == k).collect();
    let mut cases = 0usize;
    for sigma in &stems {
        let fwd_sigma = toeplitz_op(pres, basis, sigma);
        for tau in &stems {
            let adj_tau = toeplitz_adjoint(pres, basis, tau);
            for x in &base_elems {
                let fwd = fwd_sigma.compose(&toeplitz_op(pres, basis, x));
                for y in &base_elems {
                    let op = fwd
                        .compose(&toeplitz_adjoint(pres, basis, y))
                        .compose(&adj_tau);
                    for &col in &level {
                        if !op.is_safe(col) {
                            continue;
                        }
                        cases += 1;
                        if let Some(row) = op.target(col) {
                            if basis.height(row) != k {
                                return Ok(CheckReport::fail(
                                    name,
                                    params,
                                    cases,
                                    format!(
                                        "T_σT_xT_y*T_τ* with σ={}, x={}, y={}, τ={} maps \
                                         height-{k} vector ε_{} to height-{} vector ε_{}",
                                        format_word(g, sigma),
                                        format_word(g, x),
                                        format_word(g, y),
                                        format_word(g, tau),
                                        render_column(g, basis, col),
                                        basis.height(row),
                                        render_column(g, basis, row)
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    if cases == 0 {
        return Err(QlError::InsufficientTruncation);
    }
    Ok(CheckReport::pass(name, params, cases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{make_bs, make_free_hnn};
    use crate::hnn::{nf, parse_pos_word};
    use crate::toeplitz::basis::build_basis;

    fn bs_word(
        p: &HnnPresentation<crate::base::IntLattice>,
        text: &str,
    ) -> NormalFormWord<Vec<i64>> {
        nf(p, &parse_pos_word(p.base(), text).unwrap()).unwrap()
    }

    #[test]
    fn isometry_at_small_truncation() {
        let p = make_bs(2, 3).unwrap();
        let basis = build_basis(&p, 4);
        for text in ["e", "x", "t", "x t", "t x^2"] {
            let report = check_isometry(&p, &basis, &bs_word(&p, text)).unwrap();
            assert!(report.verdict.passed(), "{}", report.line());
        }
        // an element longer than the whole truncation leaves nothing safe
        let long = bs_word(&p, "x^5");
        let basis2 = build_basis(&p, 2);
        assert!(matches!(
            check_isometry(&p, &basis2, &long),
            Err(QlError::InsufficientTruncation)
        ));
    }

    #[test]
    fn covariance_with_finite_and_absent_joins() {
        let p = make_bs(2, 3).unwrap();
        let basis = build_basis(&p, 6);
        // x ∨ t = t·x²
        let report =
            check_covariance(&p, &basis, &bs_word(&p, "x"), &bs_word(&p, "t")).unwrap();
        assert!(report.verdict.passed(), "{}", report.line());
        // p = q degenerates to a single projection
        let report =
            check_covariance(&p, &basis, &bs_word(&p, "x t"), &bs_word(&p, "x t")).unwrap();
        assert!(report.verdict.passed(), "{}", report.line());

        // in the free extension a ∨ b does not exist: product must vanish
        let f = make_free_hnn(2, 1, 1, 1).unwrap();
        let fb = build_basis(&f, 4);
        let a = NormalFormWord::from_base(f.base().word(&[1]));
        let b = NormalFormWord::from_base(f.base().word(&[2]));
        let report = check_covariance(&f, &fb, &a, &b).unwrap();
        assert!(report.verdict.passed(), "{}", report.line());
    }

    #[test]
    fn stems_act_as_matrix_units() {
        let p = make_bs(2, 3).unwrap();
        let basis = build_basis(&p, 5);
        let report = check_matrix_units(&p, &basis, 1, 3).unwrap();
        assert!(report.verdict.passed(), "{}", report.line());
        // height 0: single stem, the identity law
        let report = check_matrix_units(&p, &basis, 0, 3).unwrap();
        assert!(report.verdict.passed(), "{}", report.line());
        // a truncation too small to hold any stem refuses to answer
        let tiny = build_basis(&p, 0);
        assert!(matches!(
            check_matrix_units(&p, &tiny, 1, 3),
            Err(QlError::InsufficientTruncation)
        ));
    }

    #[test]
    fn height_level_is_invariant() {
        let p = make_bs(2, 3).unwrap();
        let basis = build_basis(&p, 5);
        for k in 0..=1 {
            let report = check_hk_invariance(&p, &basis, k, 2, 2).unwrap();
            assert!(report.verdict.passed(), "{}", report.line());
        }
    }
}
