//! Exact linear algebra over the rationals: scalars, dense matrices and
//! bounded cochain complexes.
//!
//! Shift convention used throughout the crate: `(C[n])^k = C^{k+n}` with
//! differential `(-1)^n d`. Mapping cones of closed degree-zero maps are
//! `target ⊕ source[1]` with differential `[[d_t, φ], [0, -d_s]]`, and hom
//! complexes carry `d(φ) = d_b ∘ φ - (-1)^{|φ|} φ ∘ d_a`.

mod cochain;
mod matrix;
mod scalar;

pub use cochain::{hom_complex, Cochain, CochainMap, Cohomology, HomComplex};
pub use matrix::{Echelon, Matrix};
pub use scalar::Scalar;

/// Rank of a matrix over the rationals.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Cohomology dimensions of a complex.
pub fn cohomology(c: &Cochain) -> Cohomology {
    c.cohomology()
}

/// Mapping cone of a closed degree-zero map.
pub fn cone(phi: &CochainMap) -> Result<Cochain, crate::Error> {
    phi.cone()
}
