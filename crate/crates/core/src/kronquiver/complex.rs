use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::homlin::{Cochain, CochainMap, HomComplex, Matrix, Scalar};
use crate::Error;

/// A complex of Kronecker representations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawKr", into = "RawKr")]
pub struct KrComplex {
    pub v1: Cochain,
    pub v2: Cochain,
    pub f: CochainMap,
    pub g: CochainMap,
}

#[derive(Serialize, Deserialize)]
struct RawKr {
    v1: Cochain,
    v2: Cochain,
    f: BTreeMap<i32, Matrix>,
    g: BTreeMap<i32, Matrix>,
}

impl From<KrComplex> for RawKr {
    fn from(m: KrComplex) -> RawKr {
        let comps = |phi: &CochainMap| m.v1.degrees().map(|k| (k, phi.component(k))).collect();
        RawKr {
            f: comps(&m.f),
            g: comps(&m.g),
            v1: m.v1,
            v2: m.v2,
        }
    }
}

impl TryFrom<RawKr> for KrComplex {
    type Error = Error;
    fn try_from(r: RawKr) -> Result<KrComplex, Error> {
        let f = CochainMap::new(r.v1.clone(), r.v2.clone(), 0, r.f)?;
        let g = CochainMap::new(r.v1.clone(), r.v2.clone(), 0, r.g)?;
        KrComplex::new(r.v1, r.v2, f, g)
    }
}

impl KrComplex {
    pub fn new(v1: Cochain, v2: Cochain, f: CochainMap, g: CochainMap) -> Result<KrComplex, Error> {
        for phi in [&f, &g] {
            if phi.source != v1 || phi.target != v2 {
                return Err(Error::Shape("arrow does not run V1 -> V2".into()));
            }
            if phi.degree != 0 || !phi.is_closed() {
                return Err(Error::NotClosed);
            }
        }
        Ok(KrComplex { v1, v2, f, g })
    }

    /// A representation concentrated in degree `k`, arrows given as
    /// `dim V2 × dim V1` matrices.
    pub fn concentrated(k: i32, f: Matrix, g: Matrix) -> Result<KrComplex, Error> {
        if f.shape() != g.shape() {
            return Err(Error::Shape("arrows of different shapes".into()));
        }
        let (r, c) = f.shape();
        let v1 = Cochain::concentrated(k, c);
        let v2 = Cochain::concentrated(k, r);
        let f = CochainMap::new(v1.clone(), v2.clone(), 0, [(k, f)].into())?;
        let g = CochainMap::new(v1.clone(), v2.clone(), 0, [(k, g)].into())?;
        KrComplex::new(v1, v2, f, g)
    }

    pub fn zero() -> KrComplex {
        let z = Cochain::zero();
        let m = CochainMap::zero(&z, &z, 0);
        KrComplex {
            v1: z.clone(),
            v2: z,
            f: m.clone(),
            g: m,
        }
    }

    pub fn shift(&self, n: i32) -> KrComplex {
        let (v1, v2) = (self.v1.shift(n), self.v2.shift(n));
        let sh = |phi: &CochainMap| {
            let comps = self.v1.degrees().map(|k| (k - n, phi.component(k))).collect();
            CochainMap::new(v1.clone(), v2.clone(), 0, comps).expect("shifted arrow")
        };
        KrComplex {
            f: sh(&self.f),
            g: sh(&self.g),
            v1,
            v2,
        }
    }
}

/// A graded morphism of Kronecker complexes; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrMorphism {
    pub degree: i32,
    pub phi1: CochainMap,
    pub phi2: CochainMap,
    pub psi_f: CochainMap,
    pub psi_g: CochainMap,
}

impl KrMorphism {
    pub fn zero(m: &KrComplex, n: &KrComplex, degree: i32) -> KrMorphism {
        KrMorphism {
            degree,
            phi1: CochainMap::zero(&m.v1, &n.v1, degree),
            phi2: CochainMap::zero(&m.v2, &n.v2, degree),
            psi_f: CochainMap::zero(&m.v1, &n.v2, degree - 1),
            psi_g: CochainMap::zero(&m.v1, &n.v2, degree - 1),
        }
    }

    pub fn identity(m: &KrComplex) -> KrMorphism {
        KrMorphism {
            degree: 0,
            phi1: CochainMap::identity(&m.v1),
            phi2: CochainMap::identity(&m.v2),
            psi_f: CochainMap::zero(&m.v1, &m.v2, -1),
            psi_g: CochainMap::zero(&m.v1, &m.v2, -1),
        }
    }

    /// A strict map of representations: `φ2 f = f' φ1` and `φ2 g = g' φ1`.
    pub fn strict(phi1: CochainMap, phi2: CochainMap) -> KrMorphism {
        let degree = phi1.degree;
        let psi = CochainMap::zero(&phi1.source, &phi2.target, degree - 1);
        KrMorphism {
            degree,
            phi1,
            phi2,
            psi_f: psi.clone(),
            psi_g: psi,
        }
    }

    pub fn add(&self, other: &KrMorphism) -> KrMorphism {
        KrMorphism {
            degree: self.degree,
            phi1: self.phi1.add(&other.phi1),
            phi2: self.phi2.add(&other.phi2),
            psi_f: self.psi_f.add(&other.psi_f),
            psi_g: self.psi_g.add(&other.psi_g),
        }
    }

    pub fn scale(&self, s: &Scalar) -> KrMorphism {
        KrMorphism {
            degree: self.degree,
            phi1: self.phi1.scale(s),
            phi2: self.phi2.scale(s),
            psi_f: self.psi_f.scale(s),
            psi_g: self.psi_g.scale(s),
        }
    }

    /// `self ∘ first` = `(φ'1 φ1, φ'2 φ2, ψ' φ1 + (-1)^{|φ'|} φ'2 ψ)`.
    pub fn compose(&self, first: &KrMorphism) -> KrMorphism {
        let s = Scalar::sign(self.degree);
        let psi = |a: &CochainMap, b: &CochainMap| a.compose(&first.phi1).add(&self.phi2.compose(b).scale(&s));
        KrMorphism {
            degree: self.degree + first.degree,
            phi1: self.phi1.compose(&first.phi1),
            phi2: self.phi2.compose(&first.phi2),
            psi_f: psi(&self.psi_f, &first.psi_f),
            psi_g: psi(&self.psi_g, &first.psi_g),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.phi1.is_zero() && self.phi2.is_zero() && self.psi_f.is_zero() && self.psi_g.is_zero()
    }
}

/// The derived hom complex between two Kronecker complexes, with the layout
/// translating coordinates into morphisms.
#[derive(Clone, Debug)]
pub struct KrHom {
    pub source: KrComplex,
    pub target: KrComplex,
    pub complex: Cochain,
    h11: HomComplex,
    h22: HomComplex,
    h12: HomComplex,
}

impl KrHom {
    pub fn new(m: &KrComplex, n: &KrComplex) -> KrHom {
        let h11 = HomComplex::new(&m.v1, &n.v1);
        let h22 = HomComplex::new(&m.v2, &n.v2);
        let h12 = HomComplex::new(&m.v1, &n.v2);
        let mut out = KrHom {
            source: m.clone(),
            target: n.clone(),
            complex: Cochain::zero(),
            h11,
            h22,
            h12,
        };
        let supports: Vec<(i32, i32)> = [
            out.h11.complex.support(),
            out.h22.complex.support(),
            out.h12.complex.support().map(|(a, b)| (a + 1, b + 1)),
        ]
        .into_iter()
        .flatten()
        .collect();
        let Some(lo) = supports.iter().map(|s| s.0).min() else {
            return out;
        };
        let hi = supports.iter().map(|s| s.1).max().unwrap();
        let dims: Vec<usize> = (lo..=hi).map(|k| out.dim(k)).collect();
        let diffs = (lo..=hi)
            .map(|k| {
                let cols: Vec<Vec<Scalar>> = (0..out.dim(k))
                    .map(|i| {
                        let mut e = vec![Scalar::zero(); out.dim(k)];
                        e[i] = Scalar::one();
                        out.to_vector(&out.differential(&out.to_morphism(k, &e)))
                    })
                    .collect();
                Matrix::from_columns(out.dim(k + 1), &cols)
            })
            .collect();
        out.complex = Cochain::new(lo, dims, diffs).expect("Kronecker hom squares to zero");
        out
    }

    pub fn dim(&self, k: i32) -> usize {
        self.h11.complex.dim(k) + self.h22.complex.dim(k) + 2 * self.h12.complex.dim(k - 1)
    }

    pub fn to_morphism(&self, k: i32, v: &[Scalar]) -> KrMorphism {
        let a = self.h11.complex.dim(k);
        let b = self.h22.complex.dim(k);
        let c = self.h12.complex.dim(k - 1);
        let map = |h: &HomComplex, deg: i32, s: &[Scalar]| {
            if s.is_empty() {
                CochainMap::zero(&h.source, &h.target, deg)
            } else {
                h.to_map(deg, s)
            }
        };
        KrMorphism {
            degree: k,
            phi1: map(&self.h11, k, &v[..a]),
            phi2: map(&self.h22, k, &v[a..a + b]),
            psi_f: map(&self.h12, k - 1, &v[a + b..a + b + c]),
            psi_g: map(&self.h12, k - 1, &v[a + b + c..a + b + 2 * c]),
        }
    }

    pub fn to_vector(&self, phi: &KrMorphism) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.dim(phi.degree));
        let part = |h: &HomComplex, x: &CochainMap, deg: i32| {
            if h.complex.dim(deg) == 0 {
                Vec::new()
            } else {
                h.from_map(x)
            }
        };
        v.extend(part(&self.h11, &phi.phi1, phi.degree));
        v.extend(part(&self.h22, &phi.phi2, phi.degree));
        v.extend(part(&self.h12, &phi.psi_f, phi.degree - 1));
        v.extend(part(&self.h12, &phi.psi_g, phi.degree - 1));
        v
    }

    pub fn differential(&self, phi: &KrMorphism) -> KrMorphism {
        let (m, n) = (&self.source, &self.target);
        let corr = |a: &CochainMap, b: &CochainMap, psi: &CochainMap| {
            phi.phi2.compose(a).add(&b.compose(&phi.phi1).scale(&Scalar::int(-1))).add(&psi.differential().scale(&Scalar::int(-1)))
        };
        KrMorphism {
            degree: phi.degree + 1,
            phi1: phi.phi1.differential(),
            phi2: phi.phi2.differential(),
            psi_f: corr(&m.f, &n.f, &phi.psi_f),
            psi_g: corr(&m.g, &n.g, &phi.psi_g),
        }
    }
}

/// Derived hom complex `Hom(V1,W1) ⊕ Hom(V2,W2) -> Hom(V1,W2)^2`.
pub fn kr_hom(m: &KrComplex, n: &KrComplex) -> Cochain {
    KrHom::new(m, n).complex
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homlin::Cohomology;

    fn rep(f: &[&[i64]], g: &[&[i64]]) -> KrComplex {
        KrComplex::concentrated(0, Matrix::from_ints(f), Matrix::from_ints(g)).unwrap()
    }

    fn point() -> KrComplex {
        KrComplex::concentrated(0, Matrix::zeros(1, 0), Matrix::zeros(1, 0)).unwrap()
    }

    #[test]
    fn hom_examples() {
        let p = point();
        assert_eq!(kr_hom(&p, &p).cohomology(), Cohomology::from([(0, 1)]));
        let o1 = rep(&[&[1], &[0]], &[&[0], &[1]]);
        assert_eq!(kr_hom(&p, &o1).cohomology(), Cohomology::from([(0, 2)]));
        let k = rep(&[&[1]], &[&[1]]);
        assert_eq!(kr_hom(&k, &k).cohomology(), Cohomology::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn euler_form() {
        let reps = [point(), rep(&[&[1], &[0]], &[&[0], &[1]]), rep(&[&[1]], &[&[1]]), rep(&[&[2]], &[&[3]]).shift(1)];
        for m in &reps {
            for n in &reps {
                let e = |a: &Cochain| a.euler_characteristic();
                let chi = e(&m.v1) * e(&n.v1) + e(&m.v2) * e(&n.v2) - 2 * e(&m.v1) * e(&n.v2);
                assert_eq!(kr_hom(m, n).euler_characteristic(), chi);
            }
        }
    }

    #[test]
    fn composition_is_leibniz_and_associative() {
        let reps = [point(), rep(&[&[1], &[0]], &[&[0], &[1]]), rep(&[&[1]], &[&[1]]), rep(&[&[1]], &[&[0]]).shift(-1)];
        let basis = |h: &KrHom| -> Vec<KrMorphism> {
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
        };
        for a in &reps {
            for b in &reps {
                for c in &reps {
                    let hab = KrHom::new(a, b);
                    let hbc = KrHom::new(b, c);
                    let hac = KrHom::new(a, c);
                    for f in basis(&hab) {
                        for g in basis(&hbc) {
                            let lhs = hac.differential(&g.compose(&f));
                            let rhs = hbc
                                .differential(&g)
                                .compose(&f)
                                .add(&g.compose(&hab.differential(&f)).scale(&Scalar::sign(g.degree)));
                            assert_eq!(hac.to_vector(&lhs), hac.to_vector(&rhs));
                            for d in &reps {
                                let hcd = KrHom::new(c, d);
                                for h in basis(&hcd) {
                                    assert_eq!(h.compose(&g).compose(&f), h.compose(&g.compose(&f)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn serde_roundtrip() {
        let m = rep(&[&[1], &[0]], &[&[0], &[1]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<KrComplex>(&s).unwrap(), m);
    }
}
