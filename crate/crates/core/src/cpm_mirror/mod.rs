//! Global sections of the constructible-plus-microlocal sheaf of categories
//! on the skeleton `Γ_n` of the `n`-punctured torus, and the comparison
//! functor from line bundles on the cycle `X_n`.
//!
//! `CPM(Γ_n)` is the homotopy equalizer of `Res⁺, Res⁻` from `n` copies of
//! `Rep(• ⇉ •)` to `n` copies of `Vect`: an object is a Kronecker complex per
//! wheel plus glue `Res⁺ M_j ≃ Res⁻ M_{j+1}`.
//!
//! The mirror functor sends `L(d, λ)` to `β(O(d_i))` on each wheel. The
//! identification `ρ` of rays with node fibers is monomial reversal
//! `x0 ↔ x1`: it swaps the two arrows of the Kronecker quiver, hence `Res⁺`
//! with `Res⁻`, and carries the nodal gluing onto the Čech gluing of `Γ_n`.
//! On hom complexes it is an isomorphism of complexes, so full faithfulness
//! reduces to the nodal model; the tests also compare against the
//! independent [`rhom_line`](crate::nodalcurve::rhom_line) formula.
//!
//! ```
//! use nodal_mirror::cpm_mirror::{cpm_hom, mirror_functor};
//! use nodal_mirror::nodalcurve::{CycleGeometry, LineBundleData};
//!
//! let g = CycleGeometry::new(2).unwrap();
//! let o = mirror_functor(&g, &LineBundleData::trivial(&g)).unwrap();
//! let h = cpm_hom(&o, &o).unwrap().cohomology();
//! assert_eq!(h, [(0, 1), (1, 1)].into());
//! ```

mod category;
mod equalizer;
mod mirror;
mod object;
mod ribbon;

pub use crate::nodalcurve::{beilinson, beilinson_sky};
pub use category::{mirror_table, mirror_twisted, CpmCategory, MirrorRow};
pub use equalizer::{homotopy_equalizer, HomotopyEqualizer};
pub use mirror::{involution, involution_morphism, mirror_functor, mirror_morphism, mirror_on_hom, reversal};
pub use object::{cpm_gluing, cpm_hom, cpm_hom_basis, CpmObject, EqMorphism};
pub use ribbon::{build_gamma, HalfEdge, RibbonGraph};
