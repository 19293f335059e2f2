//! Strict JSON configuration for the command-line front end.
//!
//! A config file names one presentation and the bounds every bounded search
//! should use.  Parsing is strict: unknown keys are rejected, the `version`
//! field is mandatory, and each presentation kind has a fixed set of required
//! parameters.  Example:
//!
//! ```json
//! {
//!   "version": 1,
//!   "presentation": { "kind": "baumslag_solitar", "c": 2, "d": 3 },
//!   "bounds": { "validate_bound": 12, "enum_bound": 5, "truncation": 6 }
//! }
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::base::{
    make_bs, make_free_hnn, make_int_lattice, make_int_lattice_span, FreeGroup, HnnPresentation,
    IntLattice,
};
use crate::error::QlError;

/// Schema version this build understands.
pub const CONFIG_VERSION: u32 = 1;

/// Search bounds shared by the CLI commands.  Every field has a default so a
/// config may pin only the ones it cares about.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    /// Element-size bound for hypothesis validation.
    #[serde(default = "default_validate_bound")]
    pub validate_bound: usize,
    /// Token-length bound for word enumeration in oracle suites.
    #[serde(default = "default_enum_bound")]
    pub enum_bound: usize,
    /// Basis token-length cutoff for finite-dimensional operator checks.
    #[serde(default = "default_truncation")]
    pub truncation: usize,
}

fn default_validate_bound() -> usize {
    12
}

fn default_enum_bound() -> usize {
    5
}

fn default_truncation() -> usize {
    6
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            validate_bound: default_validate_bound(),
            enum_bound: default_enum_bound(),
            truncation: default_truncation(),
        }
    }
}

/// Raw presentation table: one `kind` tag plus the union of all per-kind
/// parameters.  Which fields are required (and which are forbidden) depends
/// on the kind; [`ConfigFile::build`] enforces that.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationTable {
    pub kind: String,
    /// `baumslag_solitar`: modulus of the image subgroup `B = cZ`.
    pub c: Option<i64>,
    /// `baumslag_solitar`: modulus of the domain subgroup `A = dZ`.
    pub d: Option<i64>,
    /// `int_lattice`: lattice rank; must match the moduli list lengths.
    pub n: Option<usize>,
    /// `int_lattice`: per-coordinate moduli of `A`.
    pub a_moduli: Option<Vec<i64>>,
    /// `int_lattice`: per-coordinate moduli of `B`.
    pub b_moduli: Option<Vec<i64>>,
    /// `int_lattice_span`: two spanning vectors for a non-rectangular
    /// sublattice of `Z^2` (ships unvalidated; the verifier refutes it).
    pub gens: Option<[[i64; 2]; 2]>,
    /// `free`: number of free generators.
    pub rank: Option<usize>,
    /// `free`: exponent for `A = <a^s>`.
    pub s: Option<i64>,
    /// `free`: exponent for `B = <g^u>`.
    pub u: Option<i64>,
    /// `free`: zero-based index of the generator `g` carrying `B`.
    pub target: Option<usize>,
}

/// Parsed top-level config document.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub version: u32,
    pub presentation: PresentationTable,
    #[serde(default)]
    pub bounds: Bounds,
}

/// A presentation over either supported base-group family, ready for the
/// generic command bodies.
pub enum AnyPresentation {
    Lattice(HnnPresentation<IntLattice>),
    Free(HnnPresentation<FreeGroup>),
}

impl AnyPresentation {
    pub fn name(&self) -> &str {
        match self {
            AnyPresentation::Lattice(p) => p.name(),
            AnyPresentation::Free(p) => p.name(),
        }
    }
}

impl ConfigFile {
    /// Parse a JSON string, rejecting unknown keys and version mismatches.
    pub fn from_json(text: &str) -> Result<Self, QlError> {
        let cfg: ConfigFile =
            serde_json::from_str(text).map_err(|e| QlError::Parse(format!("config: {e}")))?;
        if cfg.version != CONFIG_VERSION {
            return Err(QlError::Parse(format!(
                "config: unsupported version {} (expected {})",
                cfg.version, CONFIG_VERSION
            )));
        }
        Ok(cfg)
    }

    /// Read and parse a config file from disk.
    pub fn from_path(path: &Path) -> Result<Self, QlError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            QlError::Io(std::io::Error::new(
                e.kind(),
                format!("{}: {e}", path.display()),
            ))
        })?;
        Self::from_json(&text)
    }

    /// Instantiate the presentation the table describes.
    pub fn build(&self) -> Result<AnyPresentation, QlError> {
        let t = &self.presentation;
        match t.kind.as_str() {
            "baumslag_solitar" => {
                forbid(t, &["n", "a_moduli", "b_moduli", "gens", "rank", "s", "u", "target"])?;
                let c = require(t.c, "c", &t.kind)?;
                let d = require(t.d, "d", &t.kind)?;
                Ok(AnyPresentation::Lattice(make_bs(c, d)?))
            }
            "int_lattice" => {
                forbid(t, &["c", "d", "gens", "rank", "s", "u", "target"])?;
                let n = require(t.n, "n", &t.kind)?;
                let a = require_ref(&t.a_moduli, "a_moduli", &t.kind)?;
                let b = require_ref(&t.b_moduli, "b_moduli", &t.kind)?;
                if a.len() != n || b.len() != n {
                    return Err(QlError::Parse(format!(
                        "config: moduli lists must have length n={n} (got {} and {})",
                        a.len(),
                        b.len()
                    )));
                }
                Ok(AnyPresentation::Lattice(make_int_lattice(a, b)?))
            }
            "int_lattice_span" => {
                forbid(
                    t,
                    &["c", "d", "n", "a_moduli", "b_moduli", "rank", "s", "u", "target"],
                )?;
                let gens = require(t.gens, "gens", &t.kind)?;
                Ok(AnyPresentation::Lattice(make_int_lattice_span(gens)?))
            }
            "free" => {
                forbid(t, &["c", "d", "n", "a_moduli", "b_moduli", "gens"])?;
                let rank = require(t.rank, "rank", &t.kind)?;
                let s = require(t.s, "s", &t.kind)?;
                let u = require(t.u, "u", &t.kind)?;
                let target = require(t.target, "target", &t.kind)?;
                Ok(AnyPresentation::Free(make_free_hnn(rank, s, u, target)?))
            }
            other => Err(QlError::Parse(format!(
                "config: unknown presentation kind {other:?} \
                 (expected baumslag_solitar, int_lattice, int_lattice_span, or free)"
            ))),
        }
    }
}

fn require<T: Copy>(field: Option<T>, name: &str, kind: &str) -> Result<T, QlError> {
    field.ok_or_else(|| QlError::Parse(format!("config: kind {kind:?} requires field {name:?}")))
}

fn require_ref<'a, T>(field: &'a Option<T>, name: &str, kind: &str) -> Result<&'a T, QlError> {
    field
        .as_ref()
        .ok_or_else(|| QlError::Parse(format!("config: kind {kind:?} requires field {name:?}")))
}

/// Reject fields that don't belong to the chosen kind so a typo'd config
/// fails loudly instead of being silently ignored.
fn forbid(t: &PresentationTable, names: &[&str]) -> Result<(), QlError> {
    for &name in names {
        let present = match name {
            "c" => t.c.is_some(),
            "d" => t.d.is_some(),
            "n" => t.n.is_some(),
            "a_moduli" => t.a_moduli.is_some(),
            "b_moduli" => t.b_moduli.is_some(),
            "gens" => t.gens.is_some(),
            "rank" => t.rank.is_some(),
            "s" => t.s.is_some(),
            "u" => t.u.is_some(),
            "target" => t.target.is_some(),
            _ => unreachable!("unknown forbid field {name}"),
        };
        if present {
            return Err(QlError::Parse(format!(
                "config: field {name:?} does not apply to kind {:?}",
                t.kind
            )));
        }
    }
    Ok(())
}
