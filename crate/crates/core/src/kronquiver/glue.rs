use serde::{Deserialize, Serialize};

use super::restrict::{res_ray, res_ray_morphism, Ray};
use super::{KrComplex, KrHom, KrMorphism};
use crate::homlin::{Cochain, CochainMap, HomComplex, Matrix, Scalar};
use crate::Error;

/// A gluing condition: the restriction of local `from.0` along the ray
/// `from.1` is identified with the restriction of local `to.0` along `to.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seam {
    pub from: (usize, Ray),
    pub to: (usize, Ray),
}

/// Shape of a gluing: how many local Kronecker complexes and which
/// restrictions are identified. Objects of the glued category are homotopy
/// equalizer data `(M, u)` for the functors `F = Π res_from`,
/// `G = Π res_to`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gluing {
    pub locals: usize,
    pub seams: Vec<Seam>,
}

impl Gluing {
    /// `n` locals in a cycle, seam `j` running from `(j, from)` to
    /// `(j + 1, to)`.
    pub fn cycle(n: usize, from: Ray, to: Ray) -> Gluing {
        Gluing {
            locals: n,
            seams: (0..n)
                .map(|j| Seam {
                    from: (j, from),
                    to: ((j + 1) % n, to),
                })
                .collect(),
        }
    }
}

/// An object `(M, u)`: local complexes and, per seam, a closed degree-zero
/// map `u_j: F_j M -> G_j M` with contractible cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedObject {
    pub locals: Vec<KrComplex>,
    pub glue: Vec<CochainMap>,
}

impl GluedObject {
    /// Checks shapes against `gluing` and that every glue map is a closed
    /// quasi-isomorphism.
    pub fn new(gluing: &Gluing, locals: Vec<KrComplex>, glue: Vec<CochainMap>) -> Result<GluedObject, Error> {
        if locals.len() != gluing.locals || glue.len() != gluing.seams.len() {
            return Err(Error::Shape(format!(
                "expected {} locals and {} glue maps, got {} and {}",
                gluing.locals,
                gluing.seams.len(),
                locals.len(),
                glue.len()
            )));
        }
        for (j, (s, u)) in gluing.seams.iter().zip(&glue).enumerate() {
            let src = res_ray(&locals[s.from.0], s.from.1);
            let tgt = res_ray(&locals[s.to.0], s.to.1);
            if u.source != src || u.target != tgt {
                return Err(Error::Shape(format!("glue map {j} has the wrong source or target")));
            }
            if u.degree != 0 || !u.is_closed() {
                return Err(Error::NotClosed);
            }
            if !u.cone()?.is_acyclic() {
                return Err(Error::Shape(format!("glue map {j} is not a quasi-isomorphism")));
            }
        }
        Ok(GluedObject { locals, glue })
    }

    /// Rebuilds glue maps from raw matrices once the gluing is known.
    pub fn from_matrices(gluing: &Gluing, locals: Vec<KrComplex>, glue: Vec<Vec<(i32, Matrix)>>) -> Result<GluedObject, Error> {
        if glue.len() != gluing.seams.len() || locals.len() != gluing.locals {
            return Err(Error::Shape("glue data does not match the gluing".into()));
        }
        let maps = gluing
            .seams
            .iter()
            .zip(glue)
            .map(|(s, comps)| {
                let src = res_ray(&locals[s.from.0], s.from.1);
                let tgt = res_ray(&locals[s.to.0], s.to.1);
                CochainMap::new(src, tgt, 0, comps.into_iter().collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        GluedObject::new(gluing, locals, maps)
    }

    pub fn glue_matrices(&self) -> Vec<Vec<(i32, Matrix)>> {
        self.glue.iter().map(|u| u.source.degrees().map(|k| (k, u.component(k))).collect()).collect()
    }
}

/// A morphism `(f, H)`: local Kronecker morphisms of degree `k` and, per
/// seam, a map `H_j: F_j A -> G_j B` of degree `k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedMorphism {
    pub degree: i32,
    pub f: Vec<KrMorphism>,
    pub h: Vec<CochainMap>,
}

impl GluedMorphism {
    pub fn add(&self, other: &GluedMorphism) -> GluedMorphism {
        GluedMorphism {
            degree: self.degree,
            f: self.f.iter().zip(&other.f).map(|(a, b)| a.add(b)).collect(),
            h: self.h.iter().zip(&other.h).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> GluedMorphism {
        GluedMorphism {
            degree: self.degree,
            f: self.f.iter().map(|a| a.scale(s)).collect(),
            h: self.h.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn identity(gluing: &Gluing, a: &GluedObject) -> GluedMorphism {
        GluedMorphism {
            degree: 0,
            f: a.locals.iter().map(KrMorphism::identity).collect(),
            h: gluing
                .seams
                .iter()
                .map(|s| {
                    let src = res_ray(&a.locals[s.from.0], s.from.1);
                    let tgt = res_ray(&a.locals[s.to.0], s.to.1);
                    CochainMap::zero(&src, &tgt, -1)
                })
                .collect(),
        }
    }
}

/// `F(f)` for seam `s`.
fn along_from(s: &Seam, a: &GluedObject, b: &GluedObject, phi: &GluedMorphism) -> CochainMap {
    let i = s.from.0;
    res_ray_morphism(&a.locals[i], &b.locals[i], &phi.f[i], s.from.1)
}

/// `G(f)` for seam `s`.
fn along_to(s: &Seam, a: &GluedObject, b: &GluedObject, phi: &GluedMorphism) -> CochainMap {
    let i = s.to.0;
    res_ray_morphism(&a.locals[i], &b.locals[i], &phi.f[i], s.to.1)
}

/// `(g, K) ∘ (f, H) = (g f, K F(f) + (-1)^{|g|} G(g) H)`.
pub fn compose(gluing: &Gluing, a: &GluedObject, b: &GluedObject, c: &GluedObject, g: &GluedMorphism, f: &GluedMorphism) -> GluedMorphism {
    let sign = Scalar::sign(g.degree);
    GluedMorphism {
        degree: g.degree + f.degree,
        f: g.f.iter().zip(&f.f).map(|(y, x)| y.compose(x)).collect(),
        h: gluing
            .seams
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let left = g.h[j].compose(&along_from(s, a, b, f));
                let right = along_to(s, b, c, g).compose(&f.h[j]).scale(&sign);
                left.add(&right)
            })
            .collect(),
    }
}

/// The hom complex between two glued objects:
/// `D(f, H) = (Df, -dH - (v F(f) - G(f) u))`.
#[derive(Clone, Debug)]
pub struct GluedHom {
    pub gluing: Gluing,
    pub source: GluedObject,
    pub target: GluedObject,
    pub complex: Cochain,
    locals: Vec<KrHom>,
    seams: Vec<HomComplex>,
}

impl GluedHom {
    pub fn new(gluing: &Gluing, a: &GluedObject, b: &GluedObject) -> GluedHom {
        let locals: Vec<KrHom> = a.locals.iter().zip(&b.locals).map(|(x, y)| KrHom::new(x, y)).collect();
        let seams: Vec<HomComplex> = gluing
            .seams
            .iter()
            .map(|s| HomComplex::new(&res_ray(&a.locals[s.from.0], s.from.1), &res_ray(&b.locals[s.to.0], s.to.1)))
            .collect();
        let mut out = GluedHom {
            gluing: gluing.clone(),
            source: a.clone(),
            target: b.clone(),
            complex: Cochain::zero(),
            locals,
            seams,
        };
        let supports: Vec<(i32, i32)> = out
            .locals
            .iter()
            .filter_map(|h| h.complex.support())
            .chain(out.seams.iter().filter_map(|h| h.complex.support().map(|(x, y)| (x + 1, y + 1))))
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
        out.complex = Cochain::new(lo, dims, diffs).expect("glued hom squares to zero");
        out
    }

    pub fn dim(&self, k: i32) -> usize {
        self.locals.iter().map(|h| h.dim(k)).sum::<usize>() + self.seams.iter().map(|h| h.complex.dim(k - 1)).sum::<usize>()
    }

    pub fn to_morphism(&self, k: i32, v: &[Scalar]) -> GluedMorphism {
        let mut off = 0;
        let mut f = Vec::with_capacity(self.locals.len());
        for h in &self.locals {
            let n = h.dim(k);
            f.push(h.to_morphism(k, &v[off..off + n]));
            off += n;
        }
        let mut hs = Vec::with_capacity(self.seams.len());
        for h in &self.seams {
            let n = h.complex.dim(k - 1);
            hs.push(if n == 0 {
                CochainMap::zero(&h.source, &h.target, k - 1)
            } else {
                h.to_map(k - 1, &v[off..off + n])
            });
            off += n;
        }
        GluedMorphism { degree: k, f, h: hs }
    }

    pub fn to_vector(&self, phi: &GluedMorphism) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.dim(phi.degree));
        for (h, x) in self.locals.iter().zip(&phi.f) {
            v.extend(h.to_vector(x));
        }
        for (h, x) in self.seams.iter().zip(&phi.h) {
            if h.complex.dim(phi.degree - 1) > 0 {
                v.extend(h.from_map(x));
            }
        }
        v
    }

    pub fn differential(&self, phi: &GluedMorphism) -> GluedMorphism {
        let (a, b) = (&self.source, &self.target);
        let minus = Scalar::int(-1);
        GluedMorphism {
            degree: phi.degree + 1,
            f: self.locals.iter().zip(&phi.f).map(|(h, x)| h.differential(x)).collect(),
            h: self
                .gluing
                .seams
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    let vf = b.glue[j].compose(&along_from(s, a, b, phi));
                    let gu = along_to(s, a, b, phi).compose(&a.glue[j]);
                    phi.h[j].differential().add(&vf).add(&gu.scale(&minus)).scale(&minus)
                })
                .collect(),
        }
    }
}

/// Hom complex between glued objects.
pub fn glued_hom(gluing: &Gluing, a: &GluedObject, b: &GluedObject) -> Cochain {
    GluedHom::new(gluing, a, b).complex
}
