use super::object::{cpm_hom_basis, CpmObject, EqMorphism};
use crate::homlin::{Cochain, CochainMap, Matrix, Scalar};
use crate::kronquiver::{res_ray_morphism, GluedMorphism, KrComplex, KrMorphism, Ray};
use crate::nodalcurve::{beilinson, glued_line, h0_dim, h1_dim, CycleGeometry, LineBundleData, NodalCurve};
use crate::Error;

/// `(V1 ⇉ V2; f, g) ↦ (V1 ⇉ V2; g, f)`, which exchanges `Res⁺` and `Res⁻`.
pub fn involution(m: &KrComplex) -> KrComplex {
    KrComplex {
        v1: m.v1.clone(),
        v2: m.v2.clone(),
        f: m.g.clone(),
        g: m.f.clone(),
    }
}

pub fn involution_morphism(phi: &KrMorphism) -> KrMorphism {
    KrMorphism {
        degree: phi.degree,
        phi1: phi.phi1.clone(),
        phi2: phi.phi2.clone(),
        psi_f: phi.psi_g.clone(),
        psi_g: phi.psi_f.clone(),
    }
}

/// `x0^a x1^b ↦ x0^b x1^a` on `RΓ(O(m))`.
fn reversal_matrix(m: i64) -> Matrix {
    let n = if m >= 0 { h0_dim(m) } else { h1_dim(m) };
    let mut p = Matrix::zeros(n, n);
    for i in 0..n {
        // H^0: index a -> m - a. H^1: index i (a = -1 - i) -> -m - 2 - i.
        let j = if m >= 0 { m as usize - i } else { (-m - 2) as usize - i };
        p.set(j, i, Scalar::one());
    }
    p
}

fn on(c: &Cochain, p: Matrix) -> CochainMap {
    let comps = c.degrees().filter(|&k| c.dim(k) > 0).map(|k| (k, p.clone())).collect();
    CochainMap::new(c.clone(), c.clone(), 0, comps).expect("reversal on a one-degree space")
}

/// The monomial reversal `ι β(O(d)) -> β(O(d))`, a strict isomorphism since
/// reversal turns multiplication by `x1` into multiplication by `x0`. It is
/// its own inverse as a linear map, so it also gives `β(O(d)) -> ι β(O(d))`.
pub fn reversal(d: i64) -> KrMorphism {
    let b = beilinson(d);
    KrMorphism::strict(on(&b.v1, reversal_matrix(d - 1)), on(&b.v2, reversal_matrix(d)))
}

/// Mirror of a line bundle: the glued nodal model of `L` pushed through the
/// involution and transported back to `β(O(d_i))` by monomial reversal.
///
/// The glue comes out as `u_j = ε λ_j q_∞ p_0`, where `p_0` reads the fiber
/// of `Res⁺ β(O(d_j)) = cone(x0)` at `0` and `q_∞` includes the fiber of
/// `Res⁻ β(O(d_{j+1}))` at `∞`, both in monomial bases. The sign `ε` is
/// `-1` exactly when one of `d_j`, `d_{j+1}` is negative; this is the
/// choice of `ρ`.
pub fn mirror_functor(g: &CycleGeometry, l: &LineBundleData) -> Result<CpmObject, Error> {
    let nodal = glued_line(g, l)?;
    let n = g.n;
    let locals: Vec<KrComplex> = l.deg.iter().map(|&d| beilinson(d)).collect();
    let glue = (0..n)
        .map(|j| {
            let k = (j + 1) % n;
            let into = res_ray_morphism(&locals[j], &involution(&locals[j]), &reversal(l.deg[j]), Ray::Plus);
            let back = res_ray_morphism(&involution(&locals[k]), &locals[k], &reversal(l.deg[k]), Ray::Minus);
            back.compose(&nodal.glue[j]).compose(&into)
        })
        .collect();
    CpmObject::new(locals, glue)
}

/// The mirror functor on a morphism of the nodal model, `L -> L'`.
pub fn mirror_morphism(g: &CycleGeometry, l: &LineBundleData, lp: &LineBundleData, phi: &GluedMorphism) -> EqMorphism {
    let n = g.n;
    let f = (0..n)
        .map(|i| reversal(lp.deg[i]).compose(&involution_morphism(&phi.f[i])).compose(&reversal(l.deg[i])))
        .collect();
    let h = (0..n)
        .map(|j| {
            let k = (j + 1) % n;
            let (b, bp) = (beilinson(l.deg[j]), beilinson(lp.deg[k]));
            let into = res_ray_morphism(&b, &involution(&b), &reversal(l.deg[j]), Ray::Plus);
            let back = res_ray_morphism(&involution(&bp), &bp, &reversal(lp.deg[k]), Ray::Minus);
            back.compose(&phi.h[j]).compose(&into)
        })
        .collect();
    GluedMorphism { degree: phi.degree, f, h }
}

/// Matrix of the mirror functor `hom^k(L, L') -> cpm_hom^k(φL, φL')` in the
/// two hom bases.
pub fn mirror_on_hom(curve: &NodalCurve, l: &LineBundleData, lp: &LineBundleData, k: i32) -> Result<Matrix, Error> {
    let g = curve.geometry;
    let src = curve.glued_hom(l, lp);
    let tgt = cpm_hom_basis(&mirror_functor(&g, l)?, &mirror_functor(&g, lp)?)?;
    let n = src.dim(k);
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            tgt.to_vector(&mirror_morphism(&g, l, lp, &src.to_morphism(k, &e)))
        })
        .collect();
    Ok(Matrix::from_columns(tgt.dim(k), &cols))
}
