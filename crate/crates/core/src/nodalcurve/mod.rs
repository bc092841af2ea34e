//! Perfect complexes on a cycle `X_n` of projective lines, presented by line
//! bundles.
//!
//! A line bundle is a degree on each component plus a scalar at each node
//! comparing the two fibres. Morphisms `L -> L'` are computed on the
//! normalization and corrected at the nodes: a degree-`k` element is a
//! pair `(f, H)` of sections of `L' ⊗ L^{-1}` on the components and
//! scalars at the nodes, with `D(f, H) = (df, λ ev_τ(f) - λ' ev_σ(f))`.

mod beilinson;
mod bundle;
mod category;
mod formal;
mod geometry;
mod rgamma;

pub use bundle::{tensor_line, LineBundleData};
pub use beilinson::{beilinson, beilinson_sky, fiber_counit, fiber_unit, pole_ray};
pub use category::{box_window, glued_line, nodal_gluing, presentation, standard_window, NodalCurve};
pub use formal::{rhom_line, FormalNodalCurve};
pub use geometry::{CycleGeometry, NodePreimage, Pole};
pub use rgamma::{h0_dim, h1_dim, multiply, rgamma_p1, Monomial, RGammaModel};

/// The skyscraper `κ(x_i)`.
pub fn skyscraper(g: &CycleGeometry, i: usize) -> Result<crate::dgtwist::TwistedComplex<LineBundleData>, crate::Error> {
    NodalCurve::new(*g).skyscraper(i)
}
