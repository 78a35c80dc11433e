//! Exact verification of finite quantum symmetries.
//!
//! - [`finalg`]: exact scalars, finite-dimensional *-algebras, traces,
//!   tensor products and the Wedderburn block decomposition.
//! - [`hopf`]: Kac algebras, group and function algebras, duality pairings
//!   and Haar functionals.
//! - [`double`]: Drinfeld doubles, their product trace and irreducibles.
//! - [`fusion_zero`]: two-sector fusion data, zero-level algebras and the
//!   depth-two dimension law.
//! - [`temperley_lieb`]: Temperley–Lieb diagrams, the Markov trace and
//!   Jones-projection words.
//! - [`cli`]: the `qsk` command-line tool.
//!
//! Every check returns a [`report::Report`] of named checks with witnesses.
//!
//! ```
//! use qsk::hopf::{check_hopf_axioms, function_algebra, GroupTable};
//!
//! let h = function_algebra(&GroupTable::dihedral(4));
//! assert!(check_hopf_axioms(&h).is_ok());
//! ```

// Structure-constant code indexes several arrays by the same basis index.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod double;
pub mod finalg;
pub mod fusion_zero;
pub mod hopf;
pub mod report;
pub mod temperley_lieb;

/// The guide in `book/` is compiled as doctests so its snippets stay in sync.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/hopf.md")]
    mod hopf {}
    #[doc = include_str!("../../../book/src/double.md")]
    mod double {}
    #[doc = include_str!("../../../book/src/fusion.md")]
    mod fusion {}
    #[doc = include_str!("../../../book/src/temperley-lieb.md")]
    mod temperley_lieb {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
