//! Finite truncation of the point-mass basis of `ℓ²(P*)`.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use crate::base::HnnPresentation;
use crate::hnn::{enumerate_words, NormalFormWord};
use crate::order::QloGroup;

/// The basis vectors `ε_w` for all `w ∈ P*` of token length at most the
/// truncation, in length-lexicographic order of the rendered word.
///
/// The sub-list of indices with height `k` spans the height-`k` level: every
/// height-`k` word factors as its stem (a height-`k` minimal element) times
/// a height-0 element.
#[derive(Debug, Clone)]
pub struct TruncatedBasis<E> {
    elements: Vec<NormalFormWord<E>>,
    index: HashMap<NormalFormWord<E>, usize>,
    heights: Vec<usize>,
    truncation: usize,
}

impl<E: Clone + Eq + Hash + Debug> TruncatedBasis<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn elements(&self) -> &[NormalFormWord<E>] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &NormalFormWord<E> {
        &self.elements[i]
    }

    pub fn height(&self, i: usize) -> usize {
        self.heights[i]
    }

    pub fn index_of(&self, w: &NormalFormWord<E>) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Enumerate the basis of the truncation at token length `l`.
pub fn build_basis<G: QloGroup>(
    pres: &HnnPresentation<G>,
    l: usize,
) -> TruncatedBasis<G::Elem> {
    let elements = enumerate_words(pres, l);
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let heights = elements.iter().map(|w| w.height()).collect();
    TruncatedBasis {
        elements,
        index,
        heights,
        truncation: l,
    }
}
