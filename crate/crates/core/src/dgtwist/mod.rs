//! Twisted complexes over a dg category given by a finite presentation.
//!
//! Objects are one-sided twisted complexes of shifted generators; see
//! [`TwistedComplex`] for the sign conventions. Spherical twists are built
//! from cohomology representatives and then shrunk by Gaussian elimination,
//! and isomorphisms are decided by certificates that can be re-checked.

mod certify;
mod presentation;
mod reduce;
mod twist;
mod twisted;

#[cfg(test)]
mod testcat;

pub use certify::{
    certify_iso, hom_dims, is_quasi_iso, is_spherical, is_zero_object, IsoCertificate, Mismatch, Verdict, COEFF_BOUND,
    DEFAULT_SEED, RANDOM_TRIES,
};
pub use presentation::{DgCategory, DgPresentation, HomElem};
pub use reduce::{invert_endo, reduce};
pub use twist::{inverse_twist, inverse_twist_raw, spherical_twist, spherical_twist_full, spherical_twist_raw};
pub use twisted::{cone_tw, rhom_tw, Entry, RHomTw, TwMorphism, TwistedComplex};
