use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::mirror::{mirror_functor, mirror_on_hom};
use super::object::{cpm_gluing, cpm_hom_basis, CpmObject};
use rayon::prelude::*;

use crate::dgtwist::{hom_dims, DgCategory, HomElem, TwistedComplex};
use crate::homlin::{Cochain, Cohomology, Matrix, Scalar};
use crate::kronquiver::{glued_compose, GluedHom, GluedMorphism, Gluing};
use crate::nodalcurve::{rhom_line, CycleGeometry, LineBundleData, NodalCurve};
use crate::Error;

type Products = Vec<Vec<Vec<(usize, Scalar)>>>;

/// The full subcategory of the plumbing model on the images `φ(L)` of line
/// bundles, labelled by `L`. Twisted complexes over it model the image of
/// `Perf(X_n)`.
pub struct CpmCategory {
    pub geometry: CycleGeometry,
    objects: Mutex<HashMap<LineBundleData, Arc<CpmObject>>>,
    homs: Mutex<HashMap<(LineBundleData, LineBundleData), (Arc<GluedHom>, Arc<Cochain>)>>,
    products: Mutex<HashMap<(LineBundleData, LineBundleData, LineBundleData, i32, i32), Arc<Products>>>,
}

impl std::fmt::Debug for CpmCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CpmCategory").field("n", &self.geometry.n).finish()
    }
}

impl CpmCategory {
    pub fn new(geometry: CycleGeometry) -> CpmCategory {
        CpmCategory {
            geometry,
            objects: Mutex::new(HashMap::new()),
            homs: Mutex::new(HashMap::new()),
            products: Mutex::new(HashMap::new()),
        }
    }

    pub fn gluing(&self) -> Gluing {
        cpm_gluing(self.geometry.n)
    }

    pub fn object(&self, l: &LineBundleData) -> Arc<CpmObject> {
        if let Some(o) = self.objects.lock().expect("object cache poisoned").get(l) {
            return o.clone();
        }
        let o = Arc::new(mirror_functor(&self.geometry, l).expect("line bundle on this curve"));
        self.objects.lock().expect("object cache poisoned").insert(l.clone(), o.clone());
        o
    }

    fn entry(&self, a: &LineBundleData, b: &LineBundleData) -> (Arc<GluedHom>, Arc<Cochain>) {
        let key = (a.clone(), b.clone());
        if let Some(h) = self.homs.lock().expect("hom cache poisoned").get(&key) {
            return h.clone();
        }
        let h = cpm_hom_basis(&self.object(a), &self.object(b)).expect("objects over the same graph");
        let c = Arc::new(h.complex.clone());
        let out = (Arc::new(h), c);
        self.homs.lock().expect("hom cache poisoned").insert(key, out.clone());
        out
    }

    pub fn hom_basis(&self, a: &LineBundleData, b: &LineBundleData) -> Arc<GluedHom> {
        self.entry(a, b).0
    }

    fn compose_direct(&self, a: &LineBundleData, b: &LineBundleData, c: &LineBundleData, g: &HomElem, f: &HomElem) -> HomElem {
        let (oa, ob, oc) = (self.object(a), self.object(b), self.object(c));
        let (hf, hg) = (self.hom_basis(a, b), self.hom_basis(b, c));
        let gf: GluedMorphism = glued_compose(
            &self.gluing(),
            oa.glued(),
            ob.glued(),
            oc.glued(),
            &hg.to_morphism(g.degree, &g.coords),
            &hf.to_morphism(f.degree, &f.coords),
        );
        HomElem {
            degree: gf.degree,
            coords: self.hom_basis(a, c).to_vector(&gf),
        }
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
}

impl DgCategory for CpmCategory {
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
        let o = self.object(a);
        let id = GluedMorphism::identity(&self.gluing(), o.glued());
        HomElem {
            degree: 0,
            coords: self.hom_basis(a, a).to_vector(&id),
        }
    }
}

/// `φ` applied to a twisted complex of line bundles: the same entries, with
/// every component pushed through [`mirror_on_hom`].
pub fn mirror_twisted(
    curve: &NodalCurve,
    cpm: &CpmCategory,
    t: &TwistedComplex<LineBundleData>,
) -> Result<TwistedComplex<LineBundleData>, Error> {
    let entries = t.entries();
    let mut cache: HashMap<(usize, usize, i32), Matrix> = HashMap::new();
    let mut mc = std::collections::BTreeMap::new();
    for (&(a, b), x) in t.mc() {
        let m = match cache.get(&(a, b, x.degree)) {
            Some(m) => m.clone(),
            None => {
                let m = mirror_on_hom(curve, &entries[b].gen, &entries[a].gen, x.degree)?;
                cache.insert((a, b, x.degree), m.clone());
                m
            }
        };
        mc.insert(
            (a, b),
            HomElem {
                degree: x.degree,
                coords: m.apply(&x.coords),
            },
        );
    }
    TwistedComplex::new(cpm, entries.to_vec(), mc)
}

/// One entry of a mirror comparison table.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MirrorRow {
    pub source: String,
    pub target: String,
    /// `H^•` on the curve: [`rhom_line`] between line bundles, the hom of
    /// twisted complexes otherwise.
    pub curve: Cohomology,
    pub mirror: Cohomology,
    pub matches: bool,
}

/// Compares `hom(a, b)` for every ordered pair of `objects` with
/// `hom(sources[a], targets[b])` on the plumbing side. The images are
/// normally the same list; they are separate so that a negative control
/// can tamper with one side of the pairing.
pub fn mirror_table(
    curve: &NodalCurve,
    cpm: &CpmCategory,
    objects: &[(String, TwistedComplex<LineBundleData>)],
    sources: &[TwistedComplex<LineBundleData>],
    targets: &[TwistedComplex<LineBundleData>],
) -> Result<Vec<MirrorRow>, Error> {
    let pairs: Vec<(usize, usize)> = (0..objects.len()).flat_map(|i| (0..objects.len()).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let ((la, a), (lb, b)) = (&objects[i], &objects[j]);
            let on_curve = match (single(a), single(b)) {
                (Some(x), Some(y)) => rhom_line(&curve.geometry, x, y)?.cohomology(),
                _ => hom_dims(curve, a, b)?,
            };
            let mirror = hom_dims(cpm, &sources[i], &targets[j])?;
            Ok(MirrorRow {
                source: la.clone(),
                target: lb.clone(),
                matches: on_curve == mirror,
                curve: on_curve,
                mirror,
            })
        })
        .collect()
}

/// The line bundle of an unshifted one-term complex.
fn single(t: &TwistedComplex<LineBundleData>) -> Option<&LineBundleData> {
    match t.entries() {
        [e] if e.shift == 0 => Some(&e.gen),
        _ => None,
    }
}
