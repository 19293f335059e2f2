//! Sparse 0/1 truncations of the isometries `T_p` and their adjoints.
//!
//! A truncated operator is a partial injection on basis indices — at most
//! one entry per column, every entry 1 — together with a per-column safety
//! mask.  A column is *safe* when the truncation provably computes the same
//! vector as the untruncated operator: the true image is either zero or a
//! basis element of the truncation.  Columns whose true image escapes the
//! truncation are masked rather than padded, and compositions intersect
//! masks, so a claim verified on safe columns is a claim about the exact
//! operators.

use crate::base::HnnPresentation;
use crate::hnn::{group_nf, inverse_tokens, multiply, to_normal_form, NormalFormWord};
use crate::order::QloGroup;
use crate::toeplitz::basis::TruncatedBasis;

/// Partial injection on basis indices with a safety mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseOperator {
    dim: usize,
    /// `targets[col] = Some(row)` for an entry, `None` for a zero column.
    targets: Vec<Option<usize>>,
    /// Whether the column faithfully represents the untruncated operator.
    safe: Vec<bool>,
}

impl SparseOperator {
    pub(crate) fn from_parts(dim: usize, targets: Vec<Option<usize>>, safe: Vec<bool>) -> Self {
        assert_eq!(targets.len(), dim);
        assert_eq!(safe.len(), dim);
        SparseOperator { dim, targets, safe }
    }

    /// The zero operator; exact everywhere.
    pub fn zero(dim: usize) -> Self {
        SparseOperator {
            dim,
            targets: vec![None; dim],
            safe: vec![true; dim],
        }
    }

    /// The identity; exact everywhere.
    pub fn identity(dim: usize) -> Self {
        SparseOperator {
            dim,
            targets: (0..dim).map(Some).collect(),
            safe: vec![true; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn target(&self, col: usize) -> Option<usize> {
        self.targets[col]
    }

    pub fn is_safe(&self, col: usize) -> bool {
        self.safe[col]
    }

    pub fn safe_count(&self) -> usize {
        self.safe.iter().filter(|s| **s).count()
    }

    /// `self ∘ rhs`: apply `rhs` first.  A column stays safe only when the
    /// `rhs` column is safe and the column of `self` it lands in (if any)
    /// is safe too.
    pub fn compose(&self, rhs: &SparseOperator) -> SparseOperator {
        assert_eq!(self.dim, rhs.dim, "operator dimensions must match");
        let mut targets = Vec::with_capacity(self.dim);
        let mut safe = Vec::with_capacity(self.dim);
        for col in 0..self.dim {
            match rhs.targets[col] {
                None => {
                    targets.push(None);
                    safe.push(rhs.safe[col]);
                }
                Some(mid) => {
                    targets.push(self.targets[mid]);
                    safe.push(rhs.safe[col] && self.safe[mid]);
                }
            }
        }
        SparseOperator {
            dim: self.dim,
            targets,
            safe,
        }
    }

    /// Number of columns safe in both operators, and the first such column
    /// where the entries differ, if any.
    pub fn agree_on_safe(&self, other: &SparseOperator) -> (usize, Option<usize>) {
        assert_eq!(self.dim, other.dim, "operator dimensions must match");
        let mut mutual = 0usize;
        let mut bad = None;
        for col in 0..self.dim {
            if self.safe[col] && other.safe[col] {
                mutual += 1;
                if self.targets[col] != other.targets[col] && bad.is_none() {
                    bad = Some(col);
                }
            }
        }
        (mutual, bad)
    }

    /// `(row, col)` positions of the 1-entries, in column order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.targets
            .iter()
            .enumerate()
            .filter_map(|(col, row)| row.map(|r| (r, col)))
    }

    /// Sparse triplet text: a `dim N` header, then one `row col 1` line per
    /// entry in column order.
    pub fn export_triplets(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for (row, col) in self.entries() {
            out.push_str(&format!("{row} {col} 1\n"));
        }
        out
    }
}

/// Group quotient `p⁻¹·y` as a positive word, when `y ∈ p·P*`.  Computed by
/// full group reduction, so it needs no join or ceiling capability.
pub(crate) fn exact_quotient<G: QloGroup>(
    pres: &HnnPresentation<G>,
    p: &NormalFormWord<G::Elem>,
    y: &NormalFormWord<G::Elem>,
) -> Option<NormalFormWord<G::Elem>> {
    let mut tokens = inverse_tokens(pres, p);
    tokens.extend(y.gen_tokens());
    to_normal_form(pres, &group_nf(pres, &tokens))
}

/// Truncation of `T_p`: column `w` maps to `p·w`.  Columns whose image
/// leaves the truncation are masked unsafe — `T_p` never sends a basis
/// vector to zero, so an escaped image is unrepresentable.
pub fn toeplitz_op<G: QloGroup>(
    pres: &HnnPresentation<G>,
    basis: &TruncatedBasis<G::Elem>,
    p: &NormalFormWord<G::Elem>,
) -> SparseOperator {
    let mut targets = Vec::with_capacity(basis.len());
    let mut safe = Vec::with_capacity(basis.len());
    for w in basis.elements() {
        let image = multiply(pres, p, w);
        let row = basis.index_of(&image);
        targets.push(row);
        safe.push(row.is_some());
    }
    SparseOperator::from_parts(basis.len(), targets, safe)
}

/// Truncation of `T_p*`: column `y` maps to `p⁻¹·y` when `p ≤ y` and to
/// zero otherwise.  Zero columns are exact.  A quotient can be *longer*
/// than `y` in token length — normalization can trade one long base factor
/// for many short syllables — so columns whose quotient escapes the
/// truncation are masked unsafe, exactly like the forward direction.
pub fn toeplitz_adjoint<G: QloGroup>(
    pres: &HnnPresentation<G>,
    basis: &TruncatedBasis<G::Elem>,
    p: &NormalFormWord<G::Elem>,
) -> SparseOperator {
    let mut targets = Vec::with_capacity(basis.len());
    let mut safe = Vec::with_capacity(basis.len());
    for y in basis.elements() {
        match exact_quotient(pres, p, y) {
            None => {
                targets.push(None);
                safe.push(true);
            }
            Some(q) => {
                let row = basis.index_of(&q);
                targets.push(row);
                safe.push(row.is_some());
            }
        }
    }
    SparseOperator::from_parts(basis.len(), targets, safe)
}
