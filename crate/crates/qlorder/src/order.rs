//! The quasi-lattice order contract.
//!
//! A group `G` with a submonoid `P` satisfying `P ∩ P⁻¹ = {e}` carries the
//! left-invariant partial order `x ≤ y ⇔ x⁻¹y ∈ P`.  The pair `(G, P)` is
//! *quasi-lattice ordered* when every pair of elements with a common upper
//! bound in `P` has a least one.  This module fixes the capability set an
//! encoding must provide ([`QloGroup`]), the result type for least upper
//! bounds ([`JoinResult`]), and the two order primitives every downstream
//! algorithm builds on: [`leq`] and [`min_pair_base`].

use crate::error::QlError;
use std::fmt::Debug;
use std::hash::Hash;

/// Least upper bound of a pair: either a witness in `P` or no common upper
/// bound at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum JoinResult<E> {
    Finite(E),
    Infinity,
}

impl<E> JoinResult<E> {
    pub fn is_finite(&self) -> bool {
        matches!(self, JoinResult::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&E> {
        match self {
            JoinResult::Finite(e) => Some(e),
            JoinResult::Infinity => None,
        }
    }

    pub fn map<F, T>(self, f: F) -> JoinResult<T>
    where
        F: FnOnce(E) -> T,
    {
        match self {
            JoinResult::Finite(e) => JoinResult::Finite(f(e)),
            JoinResult::Infinity => JoinResult::Infinity,
        }
    }
}

/// The unique pair `(mu, nu)` in `P × P` with `x = mu·nu⁻¹` that divides
/// every positive factorization of `x`: whenever `x = γ·δ⁻¹` with `γ, δ ∈ P`,
/// also `mu ≤ γ` and `nu ≤ δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinimalPair<E> {
    pub mu: E,
    pub nu: E,
}

/// Capability set of a concretely encoded group with a distinguished
/// positive cone.
///
/// Elements are canonical on construction (reduced words, plain integer
/// vectors), so structural equality via `Eq` is group equality.  Everything
/// downstream — normal forms in an HNN extension, order queries, operator
/// truncations — is written against this trait and never against a concrete
/// encoding.
pub trait QloGroup {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn invert(&self, a: &Self::Elem) -> Self::Elem;

    /// Membership in the positive cone `P`.
    fn is_positive(&self, a: &Self::Elem) -> bool;

    /// Least upper bound of two *positive* elements.
    fn join(&self, p: &Self::Elem, q: &Self::Elem) -> JoinResult<Self::Elem>;

    /// Least upper bound of an *arbitrary* element with the identity, i.e.
    /// the least positive element above `x`.  Finite exactly when `x` has
    /// any upper bound in `P` (equivalently `x ∈ P·P⁻¹`).
    fn join_with_identity(&self, x: &Self::Elem) -> JoinResult<Self::Elem>;

    /// Encoding size (letter count of a reduced word, coordinate mass of an
    /// integer vector).  Drives enumeration order and truncation bounds.
    fn size(&self, e: &Self::Elem) -> usize;

    /// All positive elements of encoding size at most `bound`, in
    /// length-lexicographic order.  This is the enumeration every brute-force
    /// check in the crate runs over, so the order must be deterministic.
    fn enumerate_positive(&self, bound: usize) -> Vec<Self::Elem>;

    /// Canonical display form of one element ("x^3", "(1,-2)", "a b^2").
    fn format_elem(&self, e: &Self::Elem) -> String;

    /// Parse a single whitespace-free token as produced by `format_elem`
    /// (multi-letter free-group elements are written as several tokens and
    /// multiplied by the word-level parser).
    fn parse_token(&self, token: &str) -> Result<Self::Elem, QlError>;

    /// `x ≤ y` in the left-invariant order: `x⁻¹y ∈ P`.
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.is_positive(&self.multiply(&self.invert(x), y))
    }

    /// Least upper bound of two arbitrary elements, derived from the two
    /// join capabilities: the upper bounds of `x` in `P` are exactly the
    /// upper bounds of `x ∨ e`, so `x ∨ y = (x ∨ e) ∨ (y ∨ e)`.
    fn join_general(&self, x: &Self::Elem, y: &Self::Elem) -> JoinResult<Self::Elem> {
        match (self.join_with_identity(x), self.join_with_identity(y)) {
            (JoinResult::Finite(p), JoinResult::Finite(q)) => self.join(&p, &q),
            _ => JoinResult::Infinity,
        }
    }
}

/// `x ≤ y` for the left-invariant order of `g`.
pub fn leq<G: QloGroup>(g: &G, x: &G::Elem, y: &G::Elem) -> bool {
    g.leq(x, y)
}

/// Minimal positive factorization pair of `p·q⁻¹` for positive `p`, `q`.
///
/// Writes `x = p·q⁻¹` and returns `mu = x ∨ e`, `nu = x⁻¹·(x ∨ e)`.  Both
/// are positive, `mu·nu⁻¹ = x`, and the pair divides every positive
/// factorization of `x`.  The join with identity always exists here because
/// `p` itself is a positive upper bound of `x`.
pub fn min_pair_base<G: QloGroup>(g: &G, p: &G::Elem, q: &G::Elem) -> MinimalPair<G::Elem> {
    debug_assert!(g.is_positive(p) && g.is_positive(q));
    let x = g.multiply(p, &g.invert(q));
    let mu = match g.join_with_identity(&x) {
        JoinResult::Finite(m) => m,
        JoinResult::Infinity => unreachable!("p is a positive upper bound of p·q⁻¹"),
    };
    let nu = g.multiply(&g.invert(&x), &mu);
    debug_assert!(g.is_positive(&nu));
    MinimalPair { mu, nu }
}

/// Shared interface of everything in this crate that behaves as a
/// quasi-lattice ordered structure at enumeration scale: the base groups and
/// the extension built on top of them.  Order maps between two such
/// structures are checked through this trait.
pub trait QuasiLattice {
    type Elem: Clone + Eq + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> Result<bool, QlError>;
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Result<JoinResult<Self::Elem>, QlError>;
    fn enumerate_positive(&self, bound: usize) -> Vec<Self::Elem>;
    fn format_elem(&self, e: &Self::Elem) -> String;
}

impl<G: QloGroup> QuasiLattice for G {
    type Elem = G::Elem;

    fn identity(&self) -> Self::Elem {
        QloGroup::identity(self)
    }

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        QloGroup::multiply(self, a, b)
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> Result<bool, QlError> {
        Ok(QloGroup::leq(self, x, y))
    }

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Result<JoinResult<Self::Elem>, QlError> {
        Ok(QloGroup::join(self, x, y))
    }

    fn enumerate_positive(&self, bound: usize) -> Vec<Self::Elem> {
        QloGroup::enumerate_positive(self, bound)
    }

    fn format_elem(&self, e: &Self::Elem) -> String {
        QloGroup::format_elem(self, e)
    }
}
