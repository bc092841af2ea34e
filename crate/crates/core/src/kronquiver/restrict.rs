use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{KrComplex, KrMorphism};
use crate::homlin::{Cochain, CochainMap, Matrix, Scalar};

/// The two rays of the wheel at a vertex: `Plus` restricts along `f`,
/// `Minus` along `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ray {
    Plus,
    Minus,
}

impl Ray {
    /// Coefficients `(α, β)` of the arrow `α f + β g` whose cone is the
    /// restriction.
    pub fn arrow(self) -> (Scalar, Scalar) {
        match self {
            Ray::Plus => (Scalar::one(), Scalar::zero()),
            Ray::Minus => (Scalar::zero(), Scalar::one()),
        }
    }

    pub fn opposite(self) -> Ray {
        match self {
            Ray::Plus => Ray::Minus,
            Ray::Minus => Ray::Plus,
        }
    }
}

fn combine(m: &KrComplex, a: &Scalar, b: &Scalar) -> CochainMap {
    m.f.scale(a).add(&m.g.scale(b))
}

/// `cone(α f + β g)`, laid out in degree `j` as `V2^j ⊕ V1^{j+1}`.
pub fn restrict(m: &KrComplex, a: &Scalar, b: &Scalar) -> Cochain {
    combine(m, a, b).cone().expect("arrows are closed of degree zero")
}

/// The restriction functor on a morphism of degree `k`:
/// `[[φ2, (-1)^k ψ], [0, (-1)^k φ1]]` with `ψ = α ψ_f + β ψ_g`.
pub fn restrict_morphism(m: &KrComplex, n: &KrComplex, phi: &KrMorphism, a: &Scalar, b: &Scalar) -> CochainMap {
    let src = restrict(m, a, b);
    let tgt = restrict(n, a, b);
    let k = phi.degree;
    let s = Scalar::sign(k);
    let psi = phi.psi_f.scale(a).add(&phi.psi_g.scale(b));
    let mut comps = BTreeMap::new();
    for j in src.degrees() {
        let (c2, c1) = (m.v2.dim(j), m.v1.dim(j + 1));
        let (t2, t1) = (n.v2.dim(j + k), n.v1.dim(j + k + 1));
        let mut mat = Matrix::zeros(t2 + t1, c2 + c1);
        mat.set_block(0, 0, &phi.phi2.component(j));
        mat.set_block(0, c2, &psi.component(j + 1).scale(&s));
        mat.set_block(t2, c2, &phi.phi1.component(j + 1).scale(&s));
        comps.insert(j, mat);
    }
    CochainMap::new(src, tgt, k, comps).expect("restricted morphism shape")
}

pub fn res_plus(m: &KrComplex) -> Cochain {
    let (a, b) = Ray::Plus.arrow();
    restrict(m, &a, &b)
}

pub fn res_minus(m: &KrComplex) -> Cochain {
    let (a, b) = Ray::Minus.arrow();
    restrict(m, &a, &b)
}

pub fn res_ray(m: &KrComplex, ray: Ray) -> Cochain {
    let (a, b) = ray.arrow();
    restrict(m, &a, &b)
}

pub fn res_ray_morphism(m: &KrComplex, n: &KrComplex, phi: &KrMorphism, ray: Ray) -> CochainMap {
    let (a, b) = ray.arrow();
    restrict_morphism(m, n, phi, &a, &b)
}

/// Restriction to the circle away from the rays.
pub fn stalk_circle(m: &KrComplex) -> Cochain {
    m.v2.clone()
}

/// Representation `W_left <- W_mid -> W_right` of the `A3` quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A3Rep {
    pub left: Cochain,
    pub mid: Cochain,
    pub right: Cochain,
    pub l: CochainMap,
    pub r: CochainMap,
}

/// The stalk at the vertex: `V2 <-f- V1 -g-> V2`.
pub fn stalk_at_p(m: &KrComplex) -> A3Rep {
    A3Rep {
        left: m.v2.clone(),
        mid: m.v1.clone(),
        right: m.v2.clone(),
        l: m.f.clone(),
        r: m.g.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::KrHom;
    use super::*;
    use crate::homlin::Cohomology;

    fn rep(f: &[&[i64]], g: &[&[i64]]) -> KrComplex {
        KrComplex::concentrated(0, Matrix::from_ints(f), Matrix::from_ints(g)).unwrap()
    }

    fn point() -> KrComplex {
        KrComplex::concentrated(0, Matrix::zeros(1, 0), Matrix::zeros(1, 0)).unwrap()
    }

    #[test]
    fn restriction_examples() {
        assert!(res_plus(&rep(&[&[1]], &[&[0]])).is_acyclic());
        assert_eq!(res_plus(&point()).cohomology(), Cohomology::from([(0, 1)]));
        let o1 = rep(&[&[1], &[0]], &[&[0], &[1]]);
        assert_eq!(res_plus(&o1).cohomology(), Cohomology::from([(0, 1)]));
        assert!(res_minus(&rep(&[&[0]], &[&[1]])).is_acyclic());
        assert_eq!(res_minus(&point()).cohomology(), Cohomology::from([(0, 1)]));
        assert!(res_minus(&rep(&[&[1]], &[&[1]])).is_acyclic());
    }

    #[test]
    fn stalks() {
        let o1 = rep(&[&[1], &[0]], &[&[0], &[1]]);
        assert_eq!(stalk_circle(&o1).total_dim(), 2);
        assert_eq!(stalk_circle(&point()).total_dim(), 1);
        assert_eq!(stalk_circle(&KrComplex::zero()).total_dim(), 0);
        let a = stalk_at_p(&o1);
        assert_eq!((a.left.total_dim(), a.mid.total_dim(), a.right.total_dim()), (2, 1, 2));
        assert_eq!(a.l, o1.f);
    }

    fn basis(h: &KrHom) -> Vec<KrMorphism> {
        h.complex
            .degrees()
            .flat_map(|k| {
                (0..h.complex.dim(k))
                    .map(|i| {
                        let mut e = vec![Scalar::zero(); h.complex.dim(k)];
                        e[i] = Scalar::one();
                        h.to_morphism(k, &e)
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    #[test]
    fn restriction_is_a_dg_functor() {
        let reps = [point(), rep(&[&[1], &[0]], &[&[0], &[1]]), rep(&[&[1]], &[&[1]]), rep(&[&[1]], &[&[0]]).shift(-1)];
        let coeffs = [(1, 0), (0, 1), (1, -1), (2, 3)];
        for (a, b) in coeffs {
            let (a, b) = (Scalar::int(a), Scalar::int(b));
            for m in &reps {
                for n in &reps {
                    let h = KrHom::new(m, n);
                    for phi in basis(&h) {
                        let r = restrict_morphism(m, n, &phi, &a, &b);
                        assert_eq!(r.differential(), restrict_morphism(m, n, &h.differential(&phi), &a, &b));
                        for p in &reps {
                            for psi in basis(&KrHom::new(n, p)) {
                                let lhs = restrict_morphism(m, p, &psi.compose(&phi), &a, &b);
                                let rhs = restrict_morphism(n, p, &psi, &a, &b).compose(&r);
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                    let id = restrict_morphism(m, m, &KrMorphism::identity(m), &a, &b);
                    assert_eq!(id, CochainMap::identity(&restrict(m, &a, &b)));
                }
            }
        }
    }

    #[test]
    fn restriction_is_exact() {
        // res(cone(φ)) has the cohomology of cone(res(φ)).
        let m = rep(&[&[1], &[0]], &[&[0], &[1]]);
        let n = rep(&[&[1], &[0], &[0]], &[&[0], &[1], &[0]]);
        let phi = KrMorphism::strict(
            CochainMap::identity(&m.v1),
            CochainMap::new(m.v2.clone(), n.v2.clone(), 0, [(0, Matrix::from_ints(&[&[1, 0], &[0, 1], &[0, 0]]))].into()).unwrap(),
        );
        assert!(KrHom::new(&m, &n).differential(&phi).is_zero());
        let c = cone_kr(&phi, &m, &n);
        for ray in [Ray::Plus, Ray::Minus] {
            let lhs = res_ray(&c, ray).cohomology();
            let rhs = res_ray_morphism(&m, &n, &phi, ray).cone().unwrap().cohomology();
            assert_eq!(lhs, rhs);
        }
    }

    fn cone_kr(phi: &KrMorphism, m: &KrComplex, n: &KrComplex) -> KrComplex {
        let c1 = phi.phi1.cone().unwrap();
        let c2 = phi.phi2.cone().unwrap();
        let mut fc = BTreeMap::new();
        let mut gc = BTreeMap::new();
        for j in c1.degrees() {
            let mut a = Matrix::zeros(c2.dim(j), c1.dim(j));
            a.set_block(0, 0, &n.f.component(j));
            a.set_block(n.v2.dim(j), n.v1.dim(j), &m.f.component(j + 1));
            fc.insert(j, a);
            let mut b = Matrix::zeros(c2.dim(j), c1.dim(j));
            b.set_block(0, 0, &n.g.component(j));
            b.set_block(n.v2.dim(j), n.v1.dim(j), &m.g.component(j + 1));
            gc.insert(j, b);
        }
        let f = CochainMap::new(c1.clone(), c2.clone(), 0, fc).unwrap();
        let g = CochainMap::new(c1.clone(), c2.clone(), 0, gc).unwrap();
        KrComplex::new(c1, c2, f, g).unwrap()
    }
}
