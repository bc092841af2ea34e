use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::homlin::{Cochain, Scalar};
use crate::Error;

/// A homogeneous element of a hom complex, in the complex's own basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomElem {
    pub degree: i32,
    pub coords: Vec<Scalar>,
}

impl HomElem {
    pub fn zero(degree: i32, dim: usize) -> HomElem {
        HomElem {
            degree,
            coords: vec![Scalar::zero(); dim],
        }
    }

    pub fn basis(degree: i32, dim: usize, i: usize) -> HomElem {
        let mut e = HomElem::zero(degree, dim);
        e.coords[i] = Scalar::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> HomElem {
        HomElem {
            degree: self.degree,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_assign(&mut self, other: &HomElem) {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
    }

    pub fn add_scaled(&mut self, other: &HomElem, s: &Scalar) {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a += &(b * s);
            }
        }
    }

    pub fn neg(&self) -> HomElem {
        self.scale(&Scalar::int(-1))
    }
}

/// A dg category given by generators, hom complexes with explicit bases,
/// and a bilinear composition on those bases.
pub trait DgCategory: Sync {
    type Gen: Clone + Eq + Ord + Hash + Debug + Display + Send + Sync + Serialize + DeserializeOwned;

    /// Whether `g` is a generator of this category.
    fn accepts(&self, g: &Self::Gen) -> bool;

    fn hom(&self, src: &Self::Gen, tgt: &Self::Gen) -> Arc<Cochain>;

    /// `g ∘ f` for `f ∈ hom(a, b)` and `g ∈ hom(b, c)`.
    fn compose(&self, a: &Self::Gen, b: &Self::Gen, c: &Self::Gen, g: &HomElem, f: &HomElem) -> HomElem;

    fn unit(&self, a: &Self::Gen) -> HomElem;

    /// Differential of a homogeneous element.
    fn d(&self, src: &Self::Gen, tgt: &Self::Gen, f: &HomElem) -> HomElem {
        let h = self.hom(src, tgt);
        HomElem {
            degree: f.degree + 1,
            coords: h.apply_d(f.degree, &f.coords),
        }
    }
}

type Sparse = Vec<(usize, Scalar)>;

/// `out += Σ_l c_l row(l)`, recording newly touched positions.
fn accumulate<'t>(out: &mut [Scalar], touched: &mut Vec<usize>, coeffs: &Sparse, row: impl Fn(usize) -> &'t Sparse) {
    for (l, c) in coeffs {
        for (k, v) in row(*l) {
            if out[*k].is_zero() {
                touched.push(*k);
            }
            out[*k] += &(c * v);
        }
    }
}

/// A finite window of generators of a dg category whose axioms have been
/// machine-checked on all basis elements.
#[derive(Debug)]
pub struct DgPresentation<C: DgCategory> {
    pub category: C,
    pub objects: Vec<C::Gen>,
}

impl<C: DgCategory> DgPresentation<C> {
    /// Checks units, associativity and the Leibniz rule on every basis
    /// element of every hom complex between objects of the window.
    pub fn new(category: C, objects: Vec<C::Gen>) -> Result<DgPresentation<C>, Error> {
        for g in &objects {
            if !category.accepts(g) {
                return Err(Error::Presentation(format!("generator {g} not accepted")));
            }
        }
        let p = DgPresentation { category, objects };
        p.check_units()?;
        p.check_leibniz()?;
        p.check_associativity()?;
        Ok(p)
    }

    fn basis(&self, a: &C::Gen, b: &C::Gen) -> Vec<HomElem> {
        let h = self.category.hom(a, b);
        h.degrees()
            .flat_map(|k| {
                let n = h.dim(k);
                (0..n).map(move |i| HomElem::basis(k, n, i))
            })
            .collect()
    }

    fn check_units(&self) -> Result<(), Error> {
        let cat = &self.category;
        for a in &self.objects {
            let u = cat.unit(a);
            if u.degree != 0 || !cat.d(a, a, &u).is_zero() {
                return Err(Error::Presentation(format!("unit of {a} is not a degree-0 cycle")));
            }
            for b in &self.objects {
                for f in self.basis(a, b) {
                    let ub = cat.unit(b);
                    if cat.compose(a, b, b, &ub, &f) != f || cat.compose(a, a, b, &f, &u) != f {
                        return Err(Error::Presentation(format!("unit law fails on hom({a}, {b})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_leibniz(&self) -> Result<(), Error> {
        let cat = &self.category;
        for a in &self.objects {
            for b in &self.objects {
                let fs = self.basis(a, b);
                for c in &self.objects {
                    let gs = self.basis(b, c);
                    for f in &fs {
                        for g in &gs {
                            let lhs = cat.d(a, c, &cat.compose(a, b, c, g, f));
                            let mut rhs = cat.compose(a, b, c, &cat.d(b, c, g), f);
                            let t = cat.compose(a, b, c, g, &cat.d(a, b, f));
                            rhs.add_scaled(&t, &Scalar::sign(g.degree));
                            if lhs != rhs {
                                return Err(Error::Presentation(format!(
                                    "Leibniz rule fails on hom({a}, {b}) x hom({b}, {c})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Associativity on all basis triples. Products of basis pairs are
    /// tabulated once per triple of objects, so the check itself only
    /// combines sparse vectors.
    fn check_associativity(&self) -> Result<(), Error> {
        let cat = &self.category;
        let objs = &self.objects;
        let bases: Vec<Vec<Vec<HomElem>>> = objs.iter().map(|a| objs.iter().map(|b| self.basis(a, b)).collect()).collect();
        // Offset of degree k in the flattened basis of hom(a, b).
        let offset = |x: usize, y: usize, k: i32| bases[x][y].iter().position(|e| e.degree == k).unwrap_or(0);
        let mut tables: Vec<Vec<Vec<Vec<Vec<Sparse>>>>> = Vec::with_capacity(objs.len());
        for (x, a) in objs.iter().enumerate() {
            let mut tx = Vec::with_capacity(objs.len());
            for (y, b) in objs.iter().enumerate() {
                let mut ty = Vec::with_capacity(objs.len());
                for (z, c) in objs.iter().enumerate() {
                    let t: Vec<Vec<Sparse>> = bases[y][z]
                        .iter()
                        .map(|g| {
                            bases[x][y]
                                .iter()
                                .map(|f| {
                                    let p = cat.compose(a, b, c, g, f);
                                    let off = offset(x, z, p.degree);
                                    p.coords.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (off + i, v)).collect()
                                })
                                .collect()
                        })
                        .collect();
                    ty.push(t);
                }
                tx.push(ty);
            }
            tables.push(tx);
        }
        let n = objs.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let dim = bases[x][w].len();
                        let (mut left, mut right) = (vec![Scalar::zero(); dim], vec![Scalar::zero(); dim]);
                        let (mut tl, mut tr) = (Vec::new(), Vec::new());
                        for i in 0..bases[x][y].len() {
                            for j in 0..bases[y][z].len() {
                                let gf = &tables[x][y][z][j][i];
                                for k in 0..bases[z][w].len() {
                                    let hg = &tables[y][z][w][k][j];
                                    accumulate(&mut left, &mut tl, gf, |l| &tables[x][z][w][k][l]);
                                    accumulate(&mut right, &mut tr, hg, |m| &tables[x][y][w][m][i]);
                                    if left != right {
                                        let (a, b, c, d) = (&objs[x], &objs[y], &objs[z], &objs[w]);
                                        return Err(Error::Presentation(format!(
                                            "composition not associative on {a} -> {b} -> {c} -> {d}"
                                        )));
                                    }
                                    for t in tl.drain(..) {
                                        left[t] = Scalar::zero();
                                    }
                                    for t in tr.drain(..) {
                                        right[t] = Scalar::zero();
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
