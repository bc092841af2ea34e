use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DgCategory, HomElem};
use crate::homlin::{Cochain, Matrix, Scalar};
use crate::Error;

/// One entry `e[shift]` of a twisted complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Entry<G> {
    pub gen: G,
    pub shift: i32,
}

/// A one-sided twisted complex `(⊕ e_a[k_a], δ)`.
///
/// `mc[(a, b)]` is the component `e_b[k_b] -> e_a[k_a]`, stored through its
/// underlying element of `hom(e_b, e_a)` of degree `1 + k_a - k_b`. Maps only
/// run from later entries to earlier ones (`a < b`), so the cone of
/// `φ: A -> B` lists the entries of `B` before those of `A[1]`.
///
/// On underlying elements composition is plain composition, while the
/// differential of a component landing in `e_a[k_a]` picks up `(-1)^{k_a}`.
/// The Maurer–Cartan equation reads
/// `(-1)^{k_a} d(δ_ab) + Σ_c δ_ac δ_cb = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "G: Serialize", deserialize = "G: Deserialize<'de>"))]
pub struct TwistedComplex<G> {
    entries: Vec<Entry<G>>,
    #[serde(with = "mc_serde")]
    mc: BTreeMap<(usize, usize), HomElem>,
}

mod mc_serde {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Component {
        to: usize,
        from: usize,
        #[serde(flatten)]
        elem: HomElem,
    }

    pub fn serialize<S: serde::Serializer>(mc: &BTreeMap<(usize, usize), HomElem>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Component> = mc
            .iter()
            .map(|(&(to, from), e)| Component {
                to,
                from,
                elem: e.clone(),
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, usize), HomElem>, D::Error> {
        let v: Vec<Component> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|c| ((c.to, c.from), c.elem)).collect())
    }
}

impl<G: fmt::Debug> fmt::Debug for TwistedComplex<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tw[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}[{}]", e.gen, e.shift)?;
        }
        write!(f, "; {} mc components]", self.mc.len())
    }
}

impl<G: Clone + Eq + fmt::Display> TwistedComplex<G> {
    /// Builds a twisted complex, checking degrees, triangularity and the
    /// Maurer–Cartan equation.
    pub fn new<C>(cat: &C, entries: Vec<Entry<G>>, mc: BTreeMap<(usize, usize), HomElem>) -> Result<TwistedComplex<G>, Error>
    where
        C: DgCategory<Gen = G>,
    {
        for e in &entries {
            if !cat.accepts(&e.gen) {
                return Err(Error::PresentationMismatch(e.gen.to_string()));
            }
        }
        let mc: BTreeMap<_, _> = mc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        for (&(a, b), v) in &mc {
            if a >= b || b >= entries.len() {
                return Err(Error::Twisted(format!("component ({a}, {b}) is not strictly triangular")));
            }
            let want = 1 + entries[a].shift - entries[b].shift;
            let dim = cat.hom(&entries[b].gen, &entries[a].gen).dim(want);
            if v.degree != want || v.coords.len() != dim {
                return Err(Error::Twisted(format!("component ({a}, {b}) has wrong degree or size")));
            }
        }
        let t = TwistedComplex { entries, mc };
        t.check_maurer_cartan(cat)?;
        Ok(t)
    }

    pub(crate) fn new_unchecked(entries: Vec<Entry<G>>, mc: BTreeMap<(usize, usize), HomElem>) -> TwistedComplex<G> {
        let mc = mc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        TwistedComplex { entries, mc }
    }

    /// A single generator in degree zero.
    pub fn generator(g: G) -> TwistedComplex<G> {
        TwistedComplex {
            entries: vec![Entry { gen: g, shift: 0 }],
            mc: BTreeMap::new(),
        }
    }

    pub fn zero() -> TwistedComplex<G> {
        TwistedComplex {
            entries: Vec::new(),
            mc: BTreeMap::new(),
        }
    }

    pub fn entries(&self) -> &[Entry<G>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mc(&self) -> &BTreeMap<(usize, usize), HomElem> {
        &self.mc
    }

    fn check_maurer_cartan<C: DgCategory<Gen = G>>(&self, cat: &C) -> Result<(), Error> {
        let n = self.entries.len();
        for a in 0..n {
            for b in a + 1..n {
                let ea = &self.entries[a];
                let eb = &self.entries[b];
                let deg = 2 + ea.shift - eb.shift;
                let dim = cat.hom(&eb.gen, &ea.gen).dim(deg);
                let mut acc = HomElem::zero(deg, dim);
                if let Some(v) = self.mc.get(&(a, b)) {
                    acc.add_scaled(&cat.d(&eb.gen, &ea.gen, v), &Scalar::sign(ea.shift));
                }
                for c in a + 1..b {
                    if let (Some(x), Some(y)) = (self.mc.get(&(a, c)), self.mc.get(&(c, b))) {
                        let ec = &self.entries[c];
                        acc.add_assign(&cat.compose(&eb.gen, &ec.gen, &ea.gen, x, y));
                    }
                }
                if !acc.is_zero() {
                    return Err(Error::MaurerCartan(a, b));
                }
            }
        }
        Ok(())
    }

    /// `A[m]`: shifts every entry and multiplies δ by `(-1)^m`.
    pub fn shift(&self, m: i32) -> TwistedComplex<G> {
        let s = Scalar::sign(m);
        TwistedComplex {
            entries: self
                .entries
                .iter()
                .map(|e| Entry {
                    gen: e.gen.clone(),
                    shift: e.shift + m,
                })
                .collect(),
            mc: self.mc.iter().map(|(&k, v)| (k, v.scale(&s))).collect(),
        }
    }

    pub fn direct_sum(&self, other: &TwistedComplex<G>) -> TwistedComplex<G> {
        let off = self.entries.len();
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        let mut mc = self.mc.clone();
        for (&(a, b), v) in &other.mc {
            mc.insert((a + off, b + off), v.clone());
        }
        TwistedComplex { entries, mc }
    }
}

/// A graded morphism between twisted complexes. Component `(a, b)` maps
/// source entry `b` to target entry `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "G: Serialize", deserialize = "G: Deserialize<'de>"))]
pub struct TwMorphism<G> {
    pub source: TwistedComplex<G>,
    pub target: TwistedComplex<G>,
    pub degree: i32,
    #[serde(with = "mc_serde")]
    pub components: BTreeMap<(usize, usize), HomElem>,
}

impl<G: Clone + Eq + fmt::Display> TwMorphism<G> {
    pub fn identity<C: DgCategory<Gen = G>>(cat: &C, a: &TwistedComplex<G>) -> TwMorphism<G> {
        let components = a
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| ((i, i), cat.unit(&e.gen)))
            .collect();
        TwMorphism {
            source: a.clone(),
            target: a.clone(),
            degree: 0,
            components,
        }
    }

    pub fn zero(source: &TwistedComplex<G>, target: &TwistedComplex<G>, degree: i32) -> TwMorphism<G> {
        TwMorphism {
            source: source.clone(),
            target: target.clone(),
            degree,
            components: BTreeMap::new(),
        }
    }

    /// `self ∘ first`.
    pub fn compose<C: DgCategory<Gen = G>>(&self, cat: &C, first: &TwMorphism<G>) -> TwMorphism<G> {
        let src = &first.source.entries;
        let mid = &first.target.entries;
        let tgt = &self.target.entries;
        let mut components: BTreeMap<(usize, usize), HomElem> = BTreeMap::new();
        for (&(c, b), f) in &first.components {
            for (&(a, c2), g) in &self.components {
                if c2 != c {
                    continue;
                }
                let prod = cat.compose(&src[b].gen, &mid[c].gen, &tgt[a].gen, g, f);
                match components.get_mut(&(a, b)) {
                    Some(acc) => acc.add_assign(&prod),
                    None => {
                        components.insert((a, b), prod);
                    }
                }
            }
        }
        components.retain(|_, v| !v.is_zero());
        TwMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            degree: self.degree + first.degree,
            components,
        }
    }

    pub fn scale(&self, s: &Scalar) -> TwMorphism<G> {
        TwMorphism {
            components: self.components.iter().map(|(&k, v)| (k, v.scale(s))).collect(),
            ..self.clone()
        }
    }
}

/// Block of the total hom complex: hom(source entry `b`, target entry `a`)
/// in underlying degree `hom_degree`.
#[derive(Clone, Debug)]
struct Block {
    a: usize,
    b: usize,
    hom_degree: i32,
    offset: usize,
    len: usize,
}

/// The hom complex between two twisted complexes together with the layout
/// translating coordinates into morphism components.
#[derive(Clone, Debug)]
pub struct RHomTw<G> {
    pub source: TwistedComplex<G>,
    pub target: TwistedComplex<G>,
    pub complex: Cochain,
    layout: BTreeMap<i32, Vec<Block>>,
    dims: BTreeMap<i32, usize>,
}

impl<G: Clone + Eq + fmt::Display> RHomTw<G> {
    pub fn new<C: DgCategory<Gen = G>>(cat: &C, a: &TwistedComplex<G>, b: &TwistedComplex<G>) -> Result<RHomTw<G>, Error> {
        for e in a.entries.iter().chain(&b.entries) {
            if !cat.accepts(&e.gen) {
                return Err(Error::PresentationMismatch(e.gen.to_string()));
            }
        }
        let homs: Vec<Vec<_>> = b
            .entries
            .iter()
            .map(|t| a.entries.iter().map(|s| cat.hom(&s.gen, &t.gen)).collect())
            .collect();
        let mut degrees: Option<(i32, i32)> = None;
        for (ai, t) in b.entries.iter().enumerate() {
            for (bi, s) in a.entries.iter().enumerate() {
                if let Some((lo, hi)) = homs[ai][bi].support() {
                    let off = t.shift - s.shift;
                    let (l, h) = (lo - off, hi - off);
                    degrees = Some(match degrees {
                        None => (l, h),
                        Some((x, y)) => (x.min(l), y.max(h)),
                    });
                }
            }
        }
        let mut layout = BTreeMap::new();
        let mut dims = BTreeMap::new();
        if let Some((lo, hi)) = degrees {
            for n in lo..=hi + 1 {
                let mut blocks = Vec::new();
                let mut off = 0;
                for (ai, t) in b.entries.iter().enumerate() {
                    for (bi, s) in a.entries.iter().enumerate() {
                        let hd = n + t.shift - s.shift;
                        let len = homs[ai][bi].dim(hd);
                        if len > 0 {
                            blocks.push(Block {
                                a: ai,
                                b: bi,
                                hom_degree: hd,
                                offset: off,
                                len,
                            });
                            off += len;
                        }
                    }
                }
                dims.insert(n, off);
                layout.insert(n, blocks);
            }
        }
        let mut out = RHomTw {
            source: a.clone(),
            target: b.clone(),
            complex: Cochain::zero(),
            layout,
            dims,
        };
        let Some((lo, hi)) = degrees else {
            return Ok(out);
        };
        let mut diffs = Vec::new();
        for n in lo..=hi {
            let cols: Vec<Vec<Scalar>> = (0..out.dim(n))
                .map(|i| {
                    let mut e = vec![Scalar::zero(); out.dim(n)];
                    e[i] = Scalar::one();
                    let phi = out.to_morphism(n, &e);
                    out.to_vector(&out.differential(cat, &phi))
                })
                .collect();
            diffs.push(Matrix::from_columns(out.dim(n + 1), &cols));
        }
        let dims: Vec<usize> = (lo..=hi).map(|n| out.dim(n)).collect();
        out.complex = Cochain::new(lo, dims, diffs).map_err(|e| match e {
            Error::NotAComplex(k) => Error::Twisted(format!("twisted differential does not square to zero at {k}")),
            other => other,
        })?;
        Ok(out)
    }

    fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn to_morphism(&self, n: i32, v: &[Scalar]) -> TwMorphism<G> {
        let mut components = BTreeMap::new();
        if let Some(blocks) = self.layout.get(&n) {
            for bl in blocks {
                let coords = v[bl.offset..bl.offset + bl.len].to_vec();
                let e = HomElem {
                    degree: bl.hom_degree,
                    coords,
                };
                if !e.is_zero() {
                    components.insert((bl.a, bl.b), e);
                }
            }
        }
        TwMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: n,
            components,
        }
    }

    pub fn to_vector(&self, phi: &TwMorphism<G>) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim(phi.degree)];
        if let Some(blocks) = self.layout.get(&phi.degree) {
            for bl in blocks {
                if let Some(e) = phi.components.get(&(bl.a, bl.b)) {
                    v[bl.offset..bl.offset + bl.len].clone_from_slice(&e.coords);
                }
            }
        }
        v
    }

    /// `Dφ = d(φ) + δ_B φ - (-1)^{|φ|} φ δ_A`.
    pub fn differential<C: DgCategory<Gen = G>>(&self, cat: &C, phi: &TwMorphism<G>) -> TwMorphism<G> {
        let src = &self.source.entries;
        let tgt = &self.target.entries;
        let n = phi.degree;
        let mut out: BTreeMap<(usize, usize), HomElem> = BTreeMap::new();
        let mut add = |key: (usize, usize), e: HomElem, s: &Scalar| match out.get_mut(&key) {
            Some(acc) => acc.add_scaled(&e, s),
            None => {
                out.insert(key, e.scale(s));
            }
        };
        for (&(a, b), f) in &phi.components {
            let (ea, eb) = (&tgt[a], &src[b]);
            add((a, b), cat.d(&eb.gen, &ea.gen, f), &Scalar::sign(ea.shift));
            for (&(c, a2), m) in &self.target.mc {
                if a2 == a {
                    add((c, b), cat.compose(&eb.gen, &ea.gen, &tgt[c].gen, m, f), &Scalar::one());
                }
            }
            for (&(b2, c), m) in self.source.mc.range((b, 0)..(b + 1, 0)) {
                debug_assert_eq!(b2, b);
                add((a, c), cat.compose(&src[c].gen, &eb.gen, &ea.gen, f, m), &-Scalar::sign(n));
            }
        }
        out.retain(|_, v| !v.is_zero());
        TwMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: n + 1,
            components: out,
        }
    }

    pub fn is_closed<C: DgCategory<Gen = G>>(&self, cat: &C, phi: &TwMorphism<G>) -> bool {
        self.differential(cat, phi).components.is_empty()
    }

    /// Closed morphisms of degree `n` representing a basis of `H^n`.
    pub fn cohomology_reps(&self, n: i32) -> Vec<TwMorphism<G>> {
        self.complex
            .cohomology_reps(n)
            .iter()
            .map(|v| self.to_morphism(n, v))
            .collect()
    }
}

/// Total hom complex between two twisted complexes.
pub fn rhom_tw<C: DgCategory>(cat: &C, a: &TwistedComplex<C::Gen>, b: &TwistedComplex<C::Gen>) -> Result<Cochain, Error> {
    Ok(RHomTw::new(cat, a, b)?.complex)
}

/// Cone `B ⊕ A[1]` of a closed degree-zero morphism `φ: A -> B`.
pub fn cone_tw<C: DgCategory>(cat: &C, phi: &TwMorphism<C::Gen>) -> Result<TwistedComplex<C::Gen>, Error> {
    if phi.degree != 0 {
        return Err(Error::NotClosed);
    }
    let rh = RHomTw::new(cat, &phi.source, &phi.target)?;
    if !rh.is_closed(cat, phi) {
        return Err(Error::NotClosed);
    }
    Ok(cone_unchecked(phi))
}

pub(crate) fn cone_unchecked<G: Clone + Eq + fmt::Display>(phi: &TwMorphism<G>) -> TwistedComplex<G> {
    let b = &phi.target;
    let a1 = phi.source.shift(1);
    let off = b.len();
    let mut t = b.direct_sum(&a1);
    for (&(x, y), v) in &phi.components {
        t.mc.insert((x, y + off), v.clone());
    }
    t
}

#[cfg(test)]
mod tests {
    use super::super::testcat::Line;
    use super::*;

    fn q() -> TwistedComplex<u8> {
        TwistedComplex::generator(0)
    }

    #[test]
    fn single_generator_hom_is_generator_hom() {
        let c = Line;
        let h = rhom_tw(&c, &q(), &q()).unwrap();
        assert_eq!(h, *c.hom(&0, &0));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = Line;
        let id = TwMorphism::identity(&c, &q());
        let k = cone_tw(&c, &id).unwrap();
        assert!(rhom_tw(&c, &k, &k).unwrap().is_acyclic());
        assert!(rhom_tw(&c, &q(), &k).unwrap().is_acyclic());
    }

    #[test]
    fn cone_of_zero_is_block_diagonal() {
        let c = Line;
        let a = q();
        let b = q().shift(2);
        let z = TwMorphism::zero(&a, &b, 0);
        let k = cone_tw(&c, &z).unwrap();
        assert_eq!(k, b.direct_sum(&a.shift(1)));
        assert!(k.mc().is_empty());
    }

    #[test]
    fn rejects_open_morphism() {
        let c = Line;
        let z = TwMorphism::zero(&q(), &q(), 1);
        assert!(matches!(cone_tw(&c, &z), Err(Error::NotClosed)));
    }

    #[test]
    fn rejects_mismatched_generators() {
        let c = Line;
        let bad = TwistedComplex::generator(7u8);
        assert!(matches!(rhom_tw(&c, &bad, &q()), Err(Error::PresentationMismatch(_))));
    }

    #[test]
    fn maurer_cartan_is_checked() {
        let c = Line;
        let entries = vec![Entry { gen: 0u8, shift: 0 }, Entry { gen: 0, shift: 0 }];
        let mc = [((0, 1), HomElem::basis(1, 1, 0))].into();
        assert!(TwistedComplex::new(&c, entries.clone(), mc).is_ok());
        let lower = [((1, 0), HomElem::basis(1, 1, 0))].into();
        assert!(TwistedComplex::new(&c, entries, lower).is_err());
    }
}
