use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Matrix, Scalar};
use crate::Error;

/// Cohomology dimensions by degree. Degrees with zero cohomology are absent.
pub type Cohomology = BTreeMap<i32, usize>;

/// A bounded cochain complex of finite-dimensional rational vector spaces.
///
/// Degree `k` has dimension `dim(k)` and differential `d(k): C^k -> C^{k+1}`,
/// a `dim(k+1) x dim(k)` matrix. Degrees outside the stored window are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
}

impl Cochain {
    /// Builds a complex supported in degrees `lo .. lo + dims.len()`.
    /// `diffs[i]` is the differential leaving degree `lo + i`; missing
    /// trailing entries are zero.
    pub fn new(lo: i32, dims: Vec<usize>, mut diffs: Vec<Matrix>) -> Result<Cochain, Error> {
        if diffs.len() > dims.len() {
            return Err(Error::Shape("more differentials than degrees".into()));
        }
        for i in diffs.len()..dims.len() {
            let next = dims.get(i + 1).copied().unwrap_or(0);
            diffs.push(Matrix::zeros(next, dims[i]));
        }
        for (i, d) in diffs.iter().enumerate() {
            let next = dims.get(i + 1).copied().unwrap_or(0);
            if d.shape() != (next, dims[i]) {
                return Err(Error::Shape(format!(
                    "d({}) has shape {:?}, expected {:?}",
                    lo + i as i32,
                    d.shape(),
                    (next, dims[i])
                )));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].mul(&diffs[i - 1]).is_zero() {
                return Err(Error::NotAComplex(lo + i as i32 - 1));
            }
        }
        Ok(Cochain { lo, dims, diffs }.trimmed())
    }

    pub fn zero() -> Cochain {
        Cochain {
            lo: 0,
            dims: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `Q^dim` placed in a single degree.
    pub fn concentrated(degree: i32, dim: usize) -> Cochain {
        Cochain::new(degree, vec![dim], vec![]).expect("single degree complex")
    }

    /// Length-two complex `Q^rows <- Q^cols` given by `m`, starting in `degree`.
    pub fn two_term(degree: i32, m: Matrix) -> Cochain {
        Cochain::new(degree, vec![m.cols(), m.rows()], vec![m]).expect("two-term complex")
    }

    fn trimmed(mut self) -> Cochain {
        while self.dims.last() == Some(&0) {
            self.dims.pop();
            self.diffs.pop();
        }
        while self.dims.first() == Some(&0) {
            self.dims.remove(0);
            self.diffs.remove(0);
            self.lo += 1;
        }
        if let Some(last) = self.diffs.last_mut() {
            *last = Matrix::zeros(0, *self.dims.last().unwrap());
        }
        if self.dims.is_empty() {
            self.lo = 0;
        }
        self
    }

    /// Lowest and highest degree with nonzero dimension, if any.
    pub fn support(&self) -> Option<(i32, i32)> {
        if self.dims.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.dims.len() as i32 - 1))
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        let len = self.dims.len() as i32;
        self.lo..self.lo + len
    }

    pub fn dim(&self, k: i32) -> usize {
        let i = k - self.lo;
        if i < 0 {
            0
        } else {
            self.dims.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn d(&self, k: i32) -> Matrix {
        let i = k - self.lo;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            Matrix::zeros(self.dim(k + 1), self.dim(k))
        }
    }

    fn d_ref(&self, k: i32) -> Option<&Matrix> {
        let i = k - self.lo;
        if i >= 0 {
            self.diffs.get(i as usize)
        } else {
            None
        }
    }

    pub fn apply_d(&self, k: i32, v: &[Scalar]) -> Vec<Scalar> {
        match self.d_ref(k) {
            Some(m) => m.apply(v),
            None => vec![Scalar::zero(); self.dim(k + 1)],
        }
    }

    fn rank_d(&self, k: i32) -> usize {
        self.d_ref(k).map_or(0, Matrix::rank)
    }

    pub fn cohomology(&self) -> Cohomology {
        let mut out = Cohomology::new();
        for k in self.degrees() {
            let h = self.dim(k) - self.rank_d(k) - self.rank_d(k - 1);
            if h > 0 {
                out.insert(k, h);
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.cohomology().is_empty()
    }

    /// Cycles whose classes form a basis of `H^k`.
    pub fn cohomology_reps(&self, k: i32) -> Vec<Vec<Scalar>> {
        let n = self.dim(k);
        if n == 0 {
            return Vec::new();
        }
        let cycles = self.d(k).kernel();
        let boundaries = self.d(k - 1).image();
        Matrix::complement(n, &boundaries, &cycles)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(k) as i64)
            .sum()
    }

    /// `(C[n])^k = C^{k+n}` with differential `(-1)^n d`.
    pub fn shift(&self, n: i32) -> Cochain {
        let s = Scalar::sign(n);
        Cochain {
            lo: self.lo - n,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&s)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Cochain) -> Cochain {
        let (lo, hi) = match (self.support(), other.support()) {
            (None, _) => return other.clone(),
            (_, None) => return self.clone(),
            (Some((a, b)), Some((c, d))) => (a.min(c), b.max(d)),
        };
        let dims: Vec<usize> = (lo..=hi).map(|k| self.dim(k) + other.dim(k)).collect();
        let diffs = (lo..=hi)
            .map(|k| {
                let mut m = Matrix::zeros(self.dim(k + 1) + other.dim(k + 1), self.dim(k) + other.dim(k));
                m.set_block(0, 0, &self.d(k));
                m.set_block(self.dim(k + 1), self.dim(k), &other.d(k));
                m
            })
            .collect();
        Cochain::new(lo, dims, diffs).expect("direct sum of complexes")
    }
}

/// A graded linear map between cochain complexes, of fixed degree.
/// `components[k]` maps `source^k -> target^{k+degree}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainMap {
    pub source: Cochain,
    pub target: Cochain,
    pub degree: i32,
    components: BTreeMap<i32, Matrix>,
}

impl CochainMap {
    pub fn new(source: Cochain, target: Cochain, degree: i32, components: BTreeMap<i32, Matrix>) -> Result<CochainMap, Error> {
        for (&k, m) in &components {
            let want = (target.dim(k + degree), source.dim(k));
            if m.shape() != want {
                return Err(Error::Shape(format!(
                    "component at degree {k} has shape {:?}, expected {want:?}",
                    m.shape()
                )));
            }
        }
        let components = components.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        Ok(CochainMap {
            source,
            target,
            degree,
            components,
        })
    }

    pub fn zero(source: &Cochain, target: &Cochain, degree: i32) -> CochainMap {
        CochainMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            components: BTreeMap::new(),
        }
    }

    pub fn identity(c: &Cochain) -> CochainMap {
        let components = c.degrees().map(|k| (k, Matrix::identity(c.dim(k)))).collect();
        CochainMap::new(c.clone(), c.clone(), 0, components).expect("identity")
    }

    pub fn component(&self, k: i32) -> Matrix {
        self.components
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(k + self.degree), self.source.dim(k)))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> CochainMap {
        let components = self.components.iter().map(|(&k, m)| (k, m.scale(s))).collect();
        CochainMap::new(self.source.clone(), self.target.clone(), self.degree, components).unwrap()
    }

    pub fn add(&self, other: &CochainMap) -> CochainMap {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut components = self.components.clone();
        for (&k, m) in &other.components {
            let sum = match components.get(&k) {
                Some(a) => a.add(m),
                None => m.clone(),
            };
            components.insert(k, sum);
        }
        CochainMap::new(self.source.clone(), self.target.clone(), self.degree, components).unwrap()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CochainMap) -> CochainMap {
        let mut components = BTreeMap::new();
        for (&k, m) in &first.components {
            let mid = k + first.degree;
            if let Some(n) = self.components.get(&mid) {
                components.insert(k, n.mul(m));
            }
        }
        CochainMap::new(first.source.clone(), self.target.clone(), self.degree + first.degree, components).unwrap()
    }

    /// The hom-complex differential `d_t ∘ φ - (-1)^{|φ|} φ ∘ d_s`.
    pub fn differential(&self) -> CochainMap {
        let s = Scalar::sign(self.degree);
        let mut components = BTreeMap::new();
        for k in self.source.degrees().chain(self.source.support().map(|(lo, _)| lo - 1)) {
            let left = self.target.d(k + self.degree).mul(&self.component(k));
            let right = self.component(k + 1).mul(&self.source.d(k)).scale(&s);
            let m = left.sub(&right);
            if !m.is_zero() {
                components.insert(k, m);
            }
        }
        let mut out = CochainMap::new(self.source.clone(), self.target.clone(), self.degree + 1, components).unwrap();
        out.components.retain(|_, m| !m.is_zero());
        out
    }

    pub fn is_closed(&self) -> bool {
        self.differential().is_zero()
    }

    /// Mapping cone `target ⊕ source[1]` of a closed degree-zero map, with
    /// differential `[[d_t, φ], [0, -d_s]]`.
    pub fn cone(&self) -> Result<Cochain, Error> {
        if self.degree != 0 || !self.is_closed() {
            return Err(Error::NotClosed);
        }
        let (a, b) = (&self.source, &self.target);
        let lo = [b.support().map(|s| s.0), a.support().map(|s| s.0 - 1)]
            .into_iter()
            .flatten()
            .min();
        let hi = [b.support().map(|s| s.1), a.support().map(|s| s.1 - 1)]
            .into_iter()
            .flatten()
            .max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Ok(Cochain::zero());
        };
        let dims: Vec<usize> = (lo..=hi).map(|k| b.dim(k) + a.dim(k + 1)).collect();
        let diffs = (lo..=hi)
            .map(|k| {
                let mut m = Matrix::zeros(b.dim(k + 1) + a.dim(k + 2), b.dim(k) + a.dim(k + 1));
                m.set_block(0, 0, &b.d(k));
                m.set_block(0, b.dim(k), &self.component(k + 1));
                m.set_block(b.dim(k + 1), b.dim(k), &a.d(k + 1).scale(&Scalar::int(-1)));
                m
            })
            .collect();
        Cochain::new(lo, dims, diffs)
    }
}

/// `Hom(a, b)` as a cochain complex, with the layout needed to move between
/// coordinate vectors and graded maps.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: Cochain,
    pub target: Cochain,
    pub complex: Cochain,
}

impl HomComplex {
    /// Degree-`k` part is `⊕_j Hom(a^j, b^{j+k})`, blocks ordered by `j` and
    /// flattened row-major; `d(φ) = d_b φ - (-1)^k φ d_a`.
    pub fn new(a: &Cochain, b: &Cochain) -> HomComplex {
        let (Some((alo, ahi)), Some((blo, bhi))) = (a.support(), b.support()) else {
            return HomComplex {
                source: a.clone(),
                target: b.clone(),
                complex: Cochain::zero(),
            };
        };
        let lo = blo - ahi;
        let hi = bhi - alo;
        let mut proto = HomComplex {
            source: a.clone(),
            target: b.clone(),
            complex: Cochain::zero(),
        };
        let dims: Vec<usize> = (lo..=hi).map(|k| proto.layout_dim(k)).collect();
        let diffs = (lo..=hi)
            .map(|k| {
                let n = proto.layout_dim(k);
                let cols: Vec<Vec<Scalar>> = (0..n)
                    .map(|i| {
                        let mut e = vec![Scalar::zero(); n];
                        e[i] = Scalar::one();
                        let phi = proto.to_map_raw(k, &e);
                        proto.from_map_raw(&phi.differential())
                    })
                    .collect();
                Matrix::from_columns(proto.layout_dim(k + 1), &cols)
            })
            .collect();
        proto.complex = Cochain::new(lo, dims, diffs).expect("hom complex squares to zero");
        proto
    }

    fn layout_dim(&self, k: i32) -> usize {
        self.source
            .degrees()
            .map(|j| self.source.dim(j) * self.target.dim(j + k))
            .sum()
    }

    fn to_map_raw(&self, k: i32, v: &[Scalar]) -> CochainMap {
        let mut comps = BTreeMap::new();
        let mut off = 0;
        for j in self.source.degrees() {
            let (r, c) = (self.target.dim(j + k), self.source.dim(j));
            let mut m = Matrix::zeros(r, c);
            for i in 0..r {
                for l in 0..c {
                    m.set(i, l, v[off + i * c + l].clone());
                }
            }
            off += r * c;
            comps.insert(j, m);
        }
        CochainMap::new(self.source.clone(), self.target.clone(), k, comps).unwrap()
    }

    fn from_map_raw(&self, phi: &CochainMap) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.layout_dim(phi.degree));
        for j in self.source.degrees() {
            let m = phi.component(j);
            for i in 0..m.rows() {
                for l in 0..m.cols() {
                    out.push(m.get(i, l).clone());
                }
            }
        }
        out
    }

    pub fn to_map(&self, k: i32, v: &[Scalar]) -> CochainMap {
        assert_eq!(v.len(), self.complex.dim(k));
        self.to_map_raw(k, v)
    }

    pub fn from_map(&self, phi: &CochainMap) -> Vec<Scalar> {
        self.from_map_raw(phi)
    }

    pub fn basis_map(&self, k: i32, i: usize) -> CochainMap {
        let mut e = vec![Scalar::zero(); self.complex.dim(k)];
        e[i] = Scalar::one();
        self.to_map(k, &e)
    }
}

pub fn hom_complex(a: &Cochain, b: &Cochain) -> Cochain {
    HomComplex::new(a, b).complex
}

/// Serialized form `{degree: {dim, differential}}`.
#[derive(Serialize, Deserialize)]
struct CochainDegree {
    dim: usize,
    differential: Matrix,
}

impl Serialize for Cochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, CochainDegree> = self
            .degrees()
            .map(|k| {
                (
                    k.to_string(),
                    CochainDegree {
                        dim: self.dim(k),
                        differential: self.d(k),
                    },
                )
            })
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cochain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Cochain, D::Error> {
        use serde::de::Error as _;
        let map: BTreeMap<String, CochainDegree> = BTreeMap::deserialize(d)?;
        let mut by_deg = BTreeMap::new();
        for (k, v) in map {
            let k: i32 = k.parse().map_err(D::Error::custom)?;
            by_deg.insert(k, v);
        }
        let Some((&lo, _)) = by_deg.iter().next() else {
            return Ok(Cochain::zero());
        };
        let hi = *by_deg.keys().last().unwrap();
        let dims: Vec<usize> = (lo..=hi).map(|k| by_deg.get(&k).map_or(0, |v| v.dim)).collect();
        let diffs = (lo..=hi)
            .map(|k| match by_deg.get(&k) {
                Some(v) if v.differential.rows() > 0 || v.differential.cols() > 0 => v.differential.clone(),
                _ => Matrix::zeros(by_deg.get(&(k + 1)).map_or(0, |v| v.dim), by_deg.get(&k).map_or(0, |v| v.dim)),
            })
            .collect();
        Cochain::new(lo, dims, diffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(c: &Cochain) -> Vec<(i32, usize)> {
        c.cohomology().into_iter().collect()
    }

    #[test]
    fn zero_complex() {
        assert!(Cochain::zero().cohomology().is_empty());
    }

    #[test]
    fn isomorphism_differential_is_acyclic() {
        let c = Cochain::two_term(0, Matrix::from_ints(&[&[1]]));
        assert_eq!(h(&c), vec![]);
    }

    #[test]
    fn zero_differential_keeps_both() {
        let c = Cochain::two_term(0, Matrix::from_ints(&[&[0]]));
        assert_eq!(h(&c), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn rejects_non_complex() {
        let d = Matrix::from_ints(&[&[1]]);
        let err = Cochain::new(0, vec![1, 1, 1], vec![d.clone(), d]).unwrap_err();
        assert!(matches!(err, Error::NotAComplex(0)));
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(Cochain::new(0, vec![1, 2], vec![Matrix::zeros(1, 1)]).is_err());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = Cochain::new(0, vec![2, 1], vec![Matrix::from_ints(&[&[1, 1]])]).unwrap();
        let cone = CochainMap::identity(&c).cone().unwrap();
        assert!(cone.is_acyclic());
    }

    #[test]
    fn cone_of_zero_is_sum() {
        let a = Cochain::concentrated(0, 1);
        let b = Cochain::concentrated(0, 2);
        let cone = CochainMap::zero(&a, &b, 0).cone().unwrap();
        assert_eq!(cone, b.direct_sum(&a.shift(1)));
    }

    #[test]
    fn cone_of_scalar_iso() {
        let q = Cochain::concentrated(0, 1);
        let f = CochainMap::new(q.clone(), q.clone(), 0, [(0, Matrix::identity(1))].into()).unwrap();
        assert!(f.cone().unwrap().is_acyclic());
    }

    #[test]
    fn cone_rejects_open_map() {
        let a = Cochain::two_term(0, Matrix::from_ints(&[&[1]]));
        let f = CochainMap::new(a.clone(), a.clone(), 0, [(0, Matrix::identity(1))].into()).unwrap();
        assert!(matches!(f.cone(), Err(Error::NotClosed)));
        let g = CochainMap::new(a.clone(), a, 1, BTreeMap::new()).unwrap();
        assert!(matches!(g.cone(), Err(Error::NotClosed)));
    }

    #[test]
    fn hom_of_points() {
        let q0 = Cochain::concentrated(0, 1);
        assert_eq!(h(&hom_complex(&q0, &q0)), vec![(0, 1)]);
        let q1 = q0.shift(1);
        assert_eq!(q1.dim(-1), 1);
        assert_eq!(h(&hom_complex(&q0, &q1)), vec![(-1, 1)]);
    }

    #[test]
    fn hom_of_two_term_complexes() {
        let a = Cochain::new(0, vec![1, 1], vec![Matrix::zeros(1, 1)]).unwrap();
        let hom = hom_complex(&a, &a);
        let dims: Vec<_> = hom.degrees().map(|k| (k, hom.dim(k))).collect();
        assert_eq!(dims, vec![(-1, 1), (0, 2), (1, 1)]);
    }

    #[test]
    fn shift_convention() {
        let c = Cochain::new(0, vec![1, 1], vec![Matrix::from_ints(&[&[2]])]).unwrap();
        let s = c.shift(1);
        assert_eq!(s.dim(-1), 1);
        assert_eq!(s.d(-1), Matrix::from_ints(&[&[-2]]));
    }

    #[test]
    fn reps_span_cohomology() {
        let c = Cochain::new(0, vec![2, 2], vec![Matrix::from_ints(&[&[1, 1], &[1, 1]])]).unwrap();
        assert_eq!(c.cohomology_reps(0).len(), 1);
        assert_eq!(c.cohomology_reps(1).len(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let c = Cochain::new(-1, vec![1, 2], vec![Matrix::from_ints(&[&[1], &[0]])]).unwrap();
        let j = serde_json::to_string(&c).unwrap();
        let back: Cochain = serde_json::from_str(&j).unwrap();
        assert_eq!(back, c);
    }
}
