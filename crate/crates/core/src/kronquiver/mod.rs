//! Complexes of Kronecker-quiver representations `V1 ⇉ V2`, their derived
//! hom complexes, and the restriction functors to the rays of the wheel.
//!
//! A representation is written `(V1 ⇉ V2; f, g)`. A degree-`k` morphism
//! `M -> N` is a tuple `(φ1, φ2, ψ_f, ψ_g)` with `φ_i ∈ Hom^k(V_i, W_i)`
//! and `ψ_f, ψ_g ∈ Hom^{k-1}(V1, W2)` homotopies witnessing the commutation
//! with `f` and `g`:
//!
//! `D(φ, ψ) = (dφ1, dφ2, φ2 f - f' φ1 - dψ_f, φ2 g - g' φ1 - dψ_g)`.
//!
//! `res_plus(M)` is `cone(f)` and `res_minus(M)` is `cone(g)`.

mod complex;
mod glue;
mod restrict;

pub use complex::{kr_hom, KrComplex, KrHom, KrMorphism};
pub use glue::{compose as glued_compose, glued_hom, GluedHom, GluedMorphism, GluedObject, Gluing, Seam};
pub use restrict::{res_minus, res_plus, res_ray, res_ray_morphism, restrict, restrict_morphism, stalk_at_p, stalk_circle, A3Rep, Ray};
