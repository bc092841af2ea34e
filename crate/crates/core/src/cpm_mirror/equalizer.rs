use crate::homlin::{Cochain, CochainMap};
use crate::kronquiver::{glued_compose, res_ray, GluedHom, GluedMorphism, GluedObject, Gluing, KrComplex, KrMorphism};
use crate::Error;

/// The homotopy equalizer of the two product restriction functors
/// `Π Res_from, Π Res_to: Π Rep(• ⇉ •) ⇉ Π Vect` described by a [`Gluing`].
///
/// Objects are pairs `(M, u)` with `u_j: Res_from M -> Res_to M` closed of
/// degree zero and invertible up to homotopy. A degree-`k` morphism is
/// `(f, H)` with `H_j` of degree `k - 1`, and
/// `D(f, H) = (Df, -dH - (u' F(f) - G(f) u))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyEqualizer {
    pub gluing: Gluing,
}

pub fn homotopy_equalizer(gluing: Gluing) -> HomotopyEqualizer {
    HomotopyEqualizer { gluing }
}

impl HomotopyEqualizer {
    pub fn object(&self, locals: Vec<KrComplex>, glue: Vec<CochainMap>) -> Result<GluedObject, Error> {
        GluedObject::new(&self.gluing, locals, glue)
    }

    /// `(M, id)`, available when every seam restricts along the same ray on
    /// both sides.
    pub fn diagonal(&self, locals: Vec<KrComplex>) -> Result<GluedObject, Error> {
        let glue = self
            .gluing
            .seams
            .iter()
            .map(|s| {
                if s.from != s.to {
                    return Err(Error::Shape("identity glue needs F = G".into()));
                }
                let m = locals.get(s.from.0).ok_or_else(|| Error::Shape("seam outside the locals".into()))?;
                Ok(CochainMap::identity(&res_ray(m, s.from.1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.object(locals, glue)
    }

    pub fn hom(&self, a: &GluedObject, b: &GluedObject) -> GluedHom {
        GluedHom::new(&self.gluing, a, b)
    }

    pub fn compose(&self, a: &GluedObject, b: &GluedObject, c: &GluedObject, g: &GluedMorphism, f: &GluedMorphism) -> GluedMorphism {
        glued_compose(&self.gluing, a, b, c, g, f)
    }

    pub fn unit(&self, a: &GluedObject) -> GluedMorphism {
        GluedMorphism::identity(&self.gluing, a)
    }

    /// The forgetful functor to the product of Kronecker categories.
    pub fn forget(&self, a: &GluedObject) -> Vec<KrComplex> {
        a.locals.clone()
    }

    pub fn forget_morphism(&self, f: &GluedMorphism) -> Vec<KrMorphism> {
        f.f.clone()
    }

    pub fn hom_complex(&self, a: &GluedObject, b: &GluedObject) -> Cochain {
        self.hom(a, b).complex
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homlin::{Cohomology, Scalar};
    use crate::kronquiver::{kr_hom, Ray, Seam};
    use crate::nodalcurve::{beilinson, beilinson_sky};

    fn merge(a: &Cohomology, b: &Cohomology, shift: i32) -> Cohomology {
        let mut out = a.clone();
        for (k, v) in b {
            *out.entry(k + shift).or_insert(0) += v;
        }
        out.retain(|_, v| *v > 0);
        out
    }

    #[test]
    fn empty_target_is_the_source() {
        let eq = homotopy_equalizer(Gluing { locals: 2, seams: vec![] });
        let ms = [beilinson(1), beilinson(-1)];
        let ns = [beilinson(2), beilinson_sky(&Scalar::one(), &Scalar::int(3))];
        let a = eq.object(ms.to_vec(), vec![]).unwrap();
        let b = eq.object(ns.to_vec(), vec![]).unwrap();
        let mut want = Cohomology::new();
        for (m, n) in ms.iter().zip(&ns) {
            want = merge(&want, &kr_hom(m, n).cohomology(), 0);
        }
        assert_eq!(eq.hom_complex(&a, &b).cohomology(), want);
        assert_eq!(eq.forget(&a), ms.to_vec());
    }

    #[test]
    fn equal_functors_with_identity_glue() {
        // With F = G and u = id the correction term vanishes, leaving
        // hom(M, N) ⊕ hom(F M, F N)[-1].
        let eq = homotopy_equalizer(Gluing {
            locals: 1,
            seams: vec![Seam { from: (0, Ray::Plus), to: (0, Ray::Plus) }],
        });
        for (m, n) in [(beilinson(0), beilinson(1)), (beilinson(2), beilinson(-1))] {
            let a = eq.diagonal(vec![m.clone()]).unwrap();
            let b = eq.diagonal(vec![n.clone()]).unwrap();
            let fm = crate::homlin::hom_complex(&res_ray(&m, Ray::Plus), &res_ray(&n, Ray::Plus));
            let want = merge(&kr_hom(&m, &n).cohomology(), &fm.cohomology(), 1);
            assert_eq!(eq.hom_complex(&a, &b).cohomology(), want);
        }
        let cross = homotopy_equalizer(Gluing::cycle(1, Ray::Plus, Ray::Minus));
        assert!(cross.diagonal(vec![beilinson(0)]).is_err());
    }

    #[test]
    fn one_wheel_structure_sheaf() {
        let eq = homotopy_equalizer(Gluing::cycle(1, Ray::Plus, Ray::Minus));
        let m = beilinson(0);
        let u = CochainMap::identity(&res_ray(&m, Ray::Plus));
        let o = eq.object(vec![m], vec![u]).unwrap();
        assert_eq!(eq.hom_complex(&o, &o).cohomology(), Cohomology::from([(0, 1), (1, 1)]));
        let id = eq.unit(&o);
        assert_eq!(eq.compose(&o, &o, &o, &id, &id), id);
    }

    #[test]
    fn non_invertible_glue_is_rejected() {
        let eq = homotopy_equalizer(Gluing::cycle(1, Ray::Plus, Ray::Minus));
        let m = beilinson(0);
        let z = CochainMap::zero(&res_ray(&m, Ray::Plus), &res_ray(&m, Ray::Minus), 0);
        assert!(eq.object(vec![m], vec![z]).is_err());
    }
}
