//! Exact order computations in quasi-lattice ordered groups and their HNN
//! extensions.
//!
//! A *quasi-lattice ordered group* is a group `G` with a distinguished
//! positive cone `P` in which any two elements with a common upper bound
//! have a least one.  This crate implements, with exact integer and word
//! arithmetic throughout:
//!
//! - concrete base groups: `ℤⁿ` lattices and free groups, with their
//!   positive cones ([`base`]);
//! - HNN extensions `⟨G, t | t⁻¹at = φ(a)⟩` over a subgroup isomorphism
//!   `φ: A → B`, presented through validated subgroup data ([`base`]);
//! - positive normal forms and fully reduced general words ([`hnn`]);
//! - order queries in the extension: comparison, least upper bounds,
//!   minimal pairs, and stem enumeration ([`hnn`]);
//! - independent brute-force oracles that re-derive every answer by
//!   exhaustive search, for refutation-style testing ([`oracle`]);
//! - height maps and their controlled-map verification ([`controlled`]);
//! - finite truncations of the isometric representation on the positive
//!   cone, with per-column safety masks that keep every reported entry
//!   exact ([`toeplitz`]);
//! - a command-line front end over strict JSON configs ([`cli`],
//!   [`config`]).
//!
//! Everything downstream of a presentation is deterministic: enumeration
//! orders are fixed, reports serialize to byte-identical JSON across runs,
//! and randomized checks take explicit seeds.
//!
//! ```
//! use qlorder::base::make_bs;
//! use qlorder::hnn::{format_word, join_star, parse_pos_word, nf};
//! use qlorder::order::JoinResult;
//!
//! let pres = make_bs(2, 3).unwrap();
//! let g = pres.base();
//! let x = nf(&pres, &parse_pos_word(g, "x").unwrap()).unwrap();
//! let t = nf(&pres, &parse_pos_word(g, "t").unwrap()).unwrap();
//! match join_star(&pres, &x, &t).unwrap() {
//!     JoinResult::Finite(z) => assert_eq!(format_word(g, &z), "t . x^2"),
//!     JoinResult::Infinity => unreachable!("x and t share the upper bound t·x²"),
//! }
//! ```

pub mod base;
pub mod cli;
pub mod config;
pub mod controlled;
pub mod error;
pub mod hnn;
pub mod oracle;
pub mod order;
pub mod report;
pub mod toeplitz;

pub use error::QlError;
pub use order::{JoinResult, MinimalPair, QloGroup, QuasiLattice};

#[cfg(doctest)]
mod booktest {
    macro_rules! booktest {
        ($name:ident, $path:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $path))]
            mod $name {}
        };
    }

    #[doc = include_str!("../../../README.md")]
    mod readme {}

    booktest!(introduction, "introduction.md");
    booktest!(ordered_groups, "ordered-groups.md");
    booktest!(base_groups, "base-groups.md");
    booktest!(normal_forms, "normal-forms.md");
    booktest!(order_queries, "order-queries.md");
    booktest!(verification, "verification.md");
    booktest!(truncations, "truncations.md");
    booktest!(cli_guide, "cli.md");
}
