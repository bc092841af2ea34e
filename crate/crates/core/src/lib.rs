//! Homological mirror symmetry for cycles of projective lines, computed
//! exactly over the rationals.
//!
//! The crate builds the dg category of line bundles on the cycle `X_n` of
//! `n` projective lines, the mirror category of global sections of the
//! constructible-plus-microlocal sheaf on the skeleton of the `n`-punctured
//! torus, and the comparison functor between them. Spherical twists act on
//! twisted complexes over either side, and [`mcg_action`] checks the
//! relations of the mapping class group action on batteries of objects.

pub mod cpm_mirror;
pub mod dgtwist;
pub mod homlin;
pub mod kronquiver;
pub mod mcg_action;
pub mod nodalcurve;

mod error;

pub use error::Error;

// The guide's chapters, compiled as doctests so the examples can't rot.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/curve.md")]
    mod curve {}
    #[doc = include_str!("../../../book/src/twists.md")]
    mod twists {}
    #[doc = include_str!("../../../book/src/mirror.md")]
    mod mirror {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
