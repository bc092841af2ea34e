use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::beilinson::{beilinson, fiber_counit, fiber_unit};
use super::{CycleGeometry, LineBundleData, Pole};
use crate::dgtwist::{cone_tw, DgCategory, DgPresentation, HomElem, TwMorphism, TwistedComplex};
use crate::homlin::{Cochain, Scalar};
use crate::kronquiver::{glued_compose, GluedHom, GluedMorphism, GluedObject, Gluing, Ray};
use crate::Error;

/// Node `j` identifies `∞` on component `j` with `0` on component `j + 1`.
pub fn nodal_gluing(n: usize) -> Gluing {
    Gluing::cycle(n, Ray::Minus, Ray::Plus)
}

/// `L(d, λ)` as glued Kronecker data: `β(O(d_i))` on each component and
/// `u_j = q_0 λ_j p_∞` at node `j`, where `p_∞` reads the fiber at `∞` of
/// component `j` and `q_0` includes the fiber at `0` of component `j + 1`.
pub fn glued_line(g: &CycleGeometry, l: &LineBundleData) -> Result<GluedObject, Error> {
    l.validate(g.n)?;
    let n = g.n;
    let locals = l.deg.iter().map(|&d| beilinson(d)).collect();
    let glue = (0..n)
        .map(|j| {
            let p = fiber_counit(l.deg[j], Pole::Infinity);
            let q = fiber_unit(l.deg[(j + 1) % n], Pole::Zero);
            q.compose(&p).scale(&l.glue[j])
        })
        .collect();
    GluedObject::new(&nodal_gluing(n), locals, glue)
}

type HomCache = HashMap<(LineBundleData, LineBundleData), (Arc<GluedHom>, Arc<Cochain>)>;

/// Sparse products of basis elements: `table[j][i]` is `e_j ∘ e_i`.
type Products = Vec<Vec<Vec<(usize, Scalar)>>>;
type ProductKey = (LineBundleData, LineBundleData, LineBundleData, i32, i32);

/// The dg category of line bundles on `X_n`.
///
/// Each line bundle is modelled on the normalization by its Beilinson
/// complexes and glued at the nodes through a homotopy equalizer, so hom
/// complexes carry the full `A∞` information of `P^1` rather than only its
/// cohomology. Hom complexes are built on demand and cached.
pub struct NodalCurve {
    pub geometry: CycleGeometry,
    objects: Mutex<HashMap<LineBundleData, Arc<GluedObject>>>,
    homs: Mutex<HomCache>,
    products: Mutex<HashMap<ProductKey, Arc<Products>>>,
}

impl std::fmt::Debug for NodalCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NodalCurve").field("n", &self.geometry.n).finish()
    }
}

impl Clone for NodalCurve {
    fn clone(&self) -> NodalCurve {
        NodalCurve::new(self.geometry)
    }
}

impl NodalCurve {
    pub fn new(geometry: CycleGeometry) -> NodalCurve {
        NodalCurve {
            geometry,
            objects: Mutex::new(HashMap::new()),
            homs: Mutex::new(HashMap::new()),
            products: Mutex::new(HashMap::new()),
        }
    }

    pub fn cycle(n: usize) -> Result<NodalCurve, Error> {
        Ok(NodalCurve::new(CycleGeometry::new(n)?))
    }

    pub fn n(&self) -> usize {
        self.geometry.n
    }

    pub fn gluing(&self) -> Gluing {
        nodal_gluing(self.n())
    }

    /// Glued model of a line bundle. Panics on bundles of the wrong shape;
    /// use [`glued_line`] to get an error instead.
    pub fn object(&self, l: &LineBundleData) -> Arc<GluedObject> {
        if let Some(o) = self.objects.lock().expect("object cache poisoned").get(l) {
            return o.clone();
        }
        let o = Arc::new(glued_line(&self.geometry, l).expect("line bundle on this curve"));
        self.objects.lock().expect("object cache poisoned").insert(l.clone(), o.clone());
        o
    }

    /// Hom complex with its basis, for converting coordinates to morphisms.
    pub fn glued_hom(&self, a: &LineBundleData, b: &LineBundleData) -> Arc<GluedHom> {
        self.entry(a, b).0
    }

    fn entry(&self, a: &LineBundleData, b: &LineBundleData) -> (Arc<GluedHom>, Arc<Cochain>) {
        let key = (a.clone(), b.clone());
        if let Some(h) = self.homs.lock().expect("hom cache poisoned").get(&key) {
            return h.clone();
        }
        let h = GluedHom::new(&self.gluing(), &self.object(a), &self.object(b));
        let c = Arc::new(h.complex.clone());
        let out = (Arc::new(h), c);
        self.homs.lock().expect("hom cache poisoned").insert(key, out.clone());
        out
    }

    /// Coordinates of a glued morphism in the basis of `hom(a, b)`.
    pub fn elem(&self, a: &LineBundleData, b: &LineBundleData, phi: &GluedMorphism) -> HomElem {
        HomElem {
            degree: phi.degree,
            coords: self.glued_hom(a, b).to_vector(phi),
        }
    }

    pub fn morphism(&self, a: &LineBundleData, b: &LineBundleData, f: &HomElem) -> GluedMorphism {
        self.glued_hom(a, b).to_morphism(f.degree, &f.coords)
    }

    /// `g ∘ f` computed directly from the glued morphisms.
    pub fn compose_direct(&self, a: &LineBundleData, b: &LineBundleData, c: &LineBundleData, g: &HomElem, f: &HomElem) -> HomElem {
        let (oa, ob, oc) = (self.object(a), self.object(b), self.object(c));
        let gf = glued_compose(&self.gluing(), &oa, &ob, &oc, &self.morphism(b, c, g), &self.morphism(a, b, f));
        self.elem(a, c, &gf)
    }

    fn products(&self, a: &LineBundleData, b: &LineBundleData, c: &LineBundleData, kg: i32, kf: i32) -> Arc<Products> {
        let key = (a.clone(), b.clone(), c.clone(), kg, kf);
        if let Some(t) = self.products.lock().expect("product cache poisoned").get(&key) {
            return t.clone();
        }
        let (nf, ng) = (self.hom(a, b).dim(kf), self.hom(b, c).dim(kg));
        let table: Products = (0..ng)
            .map(|j| {
                (0..nf)
                    .map(|i| {
                        let p = self.compose_direct(a, b, c, &HomElem::basis(kg, ng, j), &HomElem::basis(kf, nf, i));
                        p.coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
                    })
                    .collect()
            })
            .collect();
        let t = Arc::new(table);
        self.products.lock().expect("product cache poisoned").insert(key, t.clone());
        t
    }

    pub fn structure_sheaf(&self) -> TwistedComplex<LineBundleData> {
        TwistedComplex::generator(LineBundleData::trivial(&self.geometry))
    }

    pub fn line(&self, l: LineBundleData) -> TwistedComplex<LineBundleData> {
        TwistedComplex::generator(l)
    }

    /// The section of `O(x_i)`, as the generator of the one-dimensional
    /// `H^0(hom(O(-x_i), O))`. It vanishes exactly at `x_i = [1:1]` on
    /// component `i`.
    pub fn canonical_section(&self, i: usize) -> HomElem {
        let g = &self.geometry;
        let (src, tgt) = (LineBundleData::minus_point(g, i), LineBundleData::trivial(g));
        let h = self.hom(&src, &tgt);
        let reps = h.cohomology_reps(0);
        debug_assert_eq!(reps.len(), 1);
        HomElem {
            degree: 0,
            coords: reps.into_iter().next().expect("O(x_i) has a section"),
        }
    }

    /// The skyscraper `κ(x_i)` as the cone of the canonical section
    /// `O(-x_i) -> O`.
    pub fn skyscraper(&self, i: usize) -> Result<TwistedComplex<LineBundleData>, Error> {
        if i >= self.n() {
            return Err(Error::Shape(format!("component {i} out of range for n = {}", self.n())));
        }
        let g = &self.geometry;
        let phi = TwMorphism {
            source: TwistedComplex::generator(LineBundleData::minus_point(g, i)),
            target: self.structure_sheaf(),
            degree: 0,
            components: [((0, 0), self.canonical_section(i))].into(),
        };
        cone_tw(self, &phi)
    }

    /// Checks the dg axioms on a finite set of line bundles, which must
    /// include `O`.
    pub fn presentation(self, window: Vec<LineBundleData>) -> Result<DgPresentation<NodalCurve>, Error> {
        if !window.contains(&LineBundleData::trivial(&self.geometry)) {
            return Err(Error::Presentation("window must contain the structure sheaf".into()));
        }
        DgPresentation::new(self, window)
    }
}

/// `O`, `O(±x_i)` and the generic bundle.
pub fn standard_window(g: &CycleGeometry) -> Vec<LineBundleData> {
    let mut w = vec![LineBundleData::trivial(g)];
    for i in 0..g.n {
        w.push(LineBundleData::point(g, i));
        w.push(LineBundleData::minus_point(g, i));
    }
    w.push(LineBundleData::generic(g));
    w
}

/// Products `⊗ O(x_i)^{k_i}` with every `k_i` in `lo..=hi`.
pub fn box_window(g: &CycleGeometry, lo: i64, hi: i64) -> Vec<LineBundleData> {
    let mut out = vec![LineBundleData::trivial(g)];
    for i in 0..g.n {
        let p = LineBundleData::point(g, i);
        out = out
            .iter()
            .flat_map(|l| (lo..=hi).map(|k| super::tensor_line(l, &p.power(k))).collect::<Vec<_>>())
            .collect();
    }
    out
}

/// The dg presentation on `window`, checked at construction.
pub fn presentation(g: &CycleGeometry, window: Vec<LineBundleData>) -> Result<DgPresentation<NodalCurve>, Error> {
    NodalCurve::new(*g).presentation(window)
}

impl DgCategory for NodalCurve {
    type Gen = LineBundleData;

    fn accepts(&self, l: &LineBundleData) -> bool {
        l.validate(self.geometry.n).is_ok()
    }

    fn hom(&self, a: &LineBundleData, b: &LineBundleData) -> Arc<Cochain> {
        self.entry(a, b).1
    }

    fn compose(&self, a: &LineBundleData, b: &LineBundleData, c: &LineBundleData, g: &HomElem, f: &HomElem) -> HomElem {
        let degree = g.degree + f.degree;
        let mut coords = vec![Scalar::zero(); self.hom(a, c).dim(degree)];
        if coords.is_empty() || g.is_zero() || f.is_zero() {
            return HomElem { degree, coords };
        }
        let table = self.products(a, b, c, g.degree, f.degree);
        for (j, x) in g.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (i, y) in f.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (k, v) in &table[j][i] {
                    coords[*k] += &(&xy * v);
                }
            }
        }
        HomElem { degree, coords }
    }

    fn unit(&self, a: &LineBundleData) -> HomElem {
        let id = GluedMorphism::identity(&self.gluing(), &self.object(a));
        self.elem(a, a, &id)
    }
}

#[cfg(test)]
mod tests {
    use super::super::rhom_line;
    use super::*;
    use crate::homlin::Scalar;
    use crate::kronquiver::{restrict, restrict_morphism};

    fn l(deg: &[i64], glue: &[i64]) -> LineBundleData {
        LineBundleData::new(deg.to_vec(), glue.iter().map(|&x| Scalar::int(x)).collect()).unwrap()
    }

    fn battery(g: &CycleGeometry) -> Vec<LineBundleData> {
        let mut out = standard_window(g);
        let n = g.n;
        out.push(l(&vec![-2; n], &vec![3; n]));
        out.push(l(&(0..n as i64).map(|i| 2 - 2 * i).collect::<Vec<_>>(), &vec![-1; n]));
        out.push(l(&vec![0; n], &vec![2; n]));
        out
    }

    #[test]
    fn cohomology_matches_formula() {
        for n in 1..4 {
            let g = CycleGeometry::new(n).unwrap();
            let c = NodalCurve::new(g);
            let bat = battery(&g);
            for a in &bat {
                for b in &bat {
                    let want = rhom_line(&g, a, b).unwrap().cohomology();
                    assert_eq!(c.hom(a, b).cohomology(), want, "{a} -> {b}");
                }
            }
        }
    }

    /// Whether a closed map induces zero on `H^0`.
    fn zero_on_h0(map: &crate::homlin::CochainMap) -> bool {
        let d = map.target.d(-1);
        map.source.cohomology_reps(0).iter().all(|v| {
            let w = map.component(0).apply(v);
            d.solve(&w).is_some()
        })
    }

    /// Points among a few rational ones where a section of `hom(a, b)` on
    /// component `i` vanishes.
    fn zeros(c: &NodalCurve, a: &LineBundleData, b: &LineBundleData, s: &HomElem, i: usize) -> Vec<(i64, i64)> {
        let phi = c.morphism(a, b, s);
        let (oa, ob) = (c.object(a), c.object(b));
        [(1, 1), (1, -1), (1, 2), (2, 1), (1, 0), (0, 1)]
            .into_iter()
            .filter(|&(x, y)| {
                // fiber at [x:y] is cone(y f - x g)
                let (p, q) = (Scalar::int(y), Scalar::int(-x));
                assert!(!restrict(&ob.locals[i], &p, &q).is_acyclic());
                zero_on_h0(&restrict_morphism(&oa.locals[i], &ob.locals[i], &phi.f[i], &p, &q))
            })
            .collect()
    }

    #[test]
    fn section_vanishes_at_marked_point() {
        for n in 1..4 {
            let c = NodalCurve::cycle(n).unwrap();
            let g = c.geometry;
            for i in 0..n {
                let src = LineBundleData::minus_point(&g, i);
                let o = LineBundleData::trivial(&g);
                assert_eq!(zeros(&c, &src, &o, &c.canonical_section(i), i), vec![(1, 1)], "component {i} of n = {n}");
            }
        }
    }

    #[test]
    fn sections_of_point_bundle_vanish_at_point_in_every_degree() {
        for n in 1..3 {
            let c = NodalCurve::cycle(n).unwrap();
            let g = c.geometry;
            for i in 0..n {
                let p = LineBundleData::point(&g, i);
                for d in -4..=2 {
                    let (a, b) = (p.power(d - 1), p.power(d));
                    let reps = c.hom(&a, &b).cohomology_reps(0);
                    assert_eq!(reps.len(), 1);
                    let s = HomElem { degree: 0, coords: reps[0].clone() };
                    assert_eq!(zeros(&c, &a, &b, &s, i), vec![(1, 1)], "degree {d}, component {i} of n = {n}");
                }
            }
        }
    }
}
