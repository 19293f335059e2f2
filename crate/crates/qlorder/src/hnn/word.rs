//! Word types over an HNN extension and their token syntax.
//!
//! A word is entered as whitespace-separated tokens: base-group tokens
//! (`x^3`, `(1,-2)`, `a`, `b^2`), the stable letter `t`, and its inverse
//! `t^-1`.  Positive elements of the extension have a unique *positive
//! normal form* `p₀ t p₁ t … p_{n-1} t p_n` in which every syllable `p_i`
//! (`i < n`) is the least representative of its `A`-coset and the tail
//! `p_n` is any positive base element.  Words print in that shape with
//! parts joined by `" . "` and identity parts elided.

use crate::error::QlError;
use crate::order::QloGroup;

/// Token of a positive word: a base element or the stable letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosToken<E> {
    Elem(E),
    T,
}

/// Token of an arbitrary word in the extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenToken<E> {
    Elem(E),
    T,
    TInv,
}

/// Positive normal form `p₀ t p₁ t … p_{n-1} t p_n`.
///
/// `syllables` holds `p₀ … p_{n-1}` (each a least coset representative) and
/// `tail` holds `p_n`; the height (number of `t` letters) is the syllable
/// count.  Instances are produced by the normalization and order algorithms
/// in [`crate::hnn`], which maintain the invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalFormWord<E> {
    pub(crate) syllables: Vec<E>,
    pub(crate) tail: E,
}

impl<E: Clone> NormalFormWord<E> {
    /// Height-0 word for a positive base element.
    pub fn from_base(elem: E) -> Self {
        NormalFormWord {
            syllables: Vec::new(),
            tail: elem,
        }
    }

    pub fn height(&self) -> usize {
        self.syllables.len()
    }

    pub fn syllables(&self) -> &[E] {
        &self.syllables
    }

    pub fn tail(&self) -> &E {
        &self.tail
    }

    /// The stem `p₀ t … p_{n-1} t` (everything up to and including the last
    /// `t`), as a word with identity tail.
    pub fn stem(&self, identity: E) -> StemWord<E> {
        StemWord(NormalFormWord {
            syllables: self.syllables.clone(),
            tail: identity,
        })
    }

    /// Token sequence spelling this word.
    pub fn tokens(&self) -> Vec<PosToken<E>> {
        let mut out = Vec::with_capacity(2 * self.syllables.len() + 1);
        for s in &self.syllables {
            out.push(PosToken::Elem(s.clone()));
            out.push(PosToken::T);
        }
        out.push(PosToken::Elem(self.tail.clone()));
        out
    }

    pub fn gen_tokens(&self) -> Vec<GenToken<E>> {
        self.tokens()
            .into_iter()
            .map(|t| match t {
                PosToken::Elem(e) => GenToken::Elem(e),
                PosToken::T => GenToken::T,
            })
            .collect()
    }
}

/// A normal-form word whose tail is the identity: the shape of the minimal
/// height-`k` elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StemWord<E>(pub(crate) NormalFormWord<E>);

impl<E: Clone> StemWord<E> {
    pub fn word(&self) -> &NormalFormWord<E> {
        &self.0
    }

    pub fn into_word(self) -> NormalFormWord<E> {
        self.0
    }

    pub fn height(&self) -> usize {
        self.0.height()
    }
}

/// Token length of a normal form: base letters plus `t` letters.
pub fn token_length<G: QloGroup>(g: &G, w: &NormalFormWord<G::Elem>) -> usize {
    w.syllables.iter().map(|s| g.size(s)).sum::<usize>() + w.height() + g.size(&w.tail)
}

/// Render a normal-form word, eliding identity parts: `t . x^2`,
/// `x . t . x^2`, `e`.
pub fn format_word<G: QloGroup>(g: &G, w: &NormalFormWord<G::Elem>) -> String {
    let e = QloGroup::identity(g);
    let mut parts: Vec<String> = Vec::new();
    for s in &w.syllables {
        if *s != e {
            parts.push(g.format_elem(s));
        }
        parts.push("t".into());
    }
    if w.tail != e {
        parts.push(g.format_elem(&w.tail));
    }
    if parts.is_empty() {
        "e".into()
    } else {
        parts.join(" . ")
    }
}

/// Parse a positive word: base tokens (which must parse to positive
/// elements) and `t`.
pub fn parse_pos_word<G: QloGroup>(g: &G, text: &str) -> Result<Vec<PosToken<G::Elem>>, QlError> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        match token {
            "t" => out.push(PosToken::T),
            "t^-1" => {
                return Err(QlError::NotPositive(format!(
                    "t^-1 is not allowed in a positive word: {text}"
                )))
            }
            _ => {
                let e = g.parse_token(token)?;
                if !g.is_positive(&e) {
                    return Err(QlError::NotPositive(format!(
                        "token {token} is not a positive element"
                    )));
                }
                out.push(PosToken::Elem(e));
            }
        }
    }
    Ok(out)
}

/// Parse an arbitrary word over base tokens, `t`, and `t^-1`.
pub fn parse_gen_word<G: QloGroup>(g: &G, text: &str) -> Result<Vec<GenToken<G::Elem>>, QlError> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        match token {
            "t" => out.push(GenToken::T),
            "t^-1" => out.push(GenToken::TInv),
            _ => out.push(GenToken::Elem(g.parse_token(token)?)),
        }
    }
    Ok(out)
}
