use std::sync::Arc;

use super::rgamma::{h0_dim, h1_dim, multiply};
use super::{CycleGeometry, LineBundleData};
use crate::dgtwist::{cone_tw, DgCategory, HomElem, TwMorphism, TwistedComplex};
use crate::homlin::{Cochain, Matrix, Scalar};
use crate::Error;

/// Basis layout of `hom(L, L')`. Degree 0 is `⊕_i H^0(O(m_i))`; degree 1 is
/// `⊕_i H^1(O(m_i))` followed by one coordinate per node, `m = d' - d`.
#[derive(Clone, Debug)]
struct Layout {
    m: Vec<i64>,
    off0: Vec<usize>,
    off1: Vec<usize>,
    dim0: usize,
    node0: usize,
}

impl Layout {
    fn new(m: Vec<i64>) -> Layout {
        let mut off0 = Vec::with_capacity(m.len());
        let mut off1 = Vec::with_capacity(m.len());
        let (mut a, mut b) = (0, 0);
        for &mi in &m {
            off0.push(a);
            off1.push(b);
            a += h0_dim(mi);
            b += h1_dim(mi);
        }
        Layout {
            m,
            off0,
            off1,
            dim0: a,
            node0: b,
        }
    }

    fn n(&self) -> usize {
        self.m.len()
    }

    fn dim1(&self) -> usize {
        self.node0 + self.n()
    }

    fn dim(&self, k: i32) -> usize {
        match k {
            0 => self.dim0,
            1 => self.dim1(),
            _ => 0,
        }
    }

    /// Section part on component `i` of an element of degree `k`.
    fn section<'a>(&self, k: i32, v: &'a [Scalar], i: usize) -> &'a [Scalar] {
        match k {
            0 => &v[self.off0[i]..self.off0[i] + h0_dim(self.m[i])],
            _ => &v[self.off1[i]..self.off1[i] + h1_dim(self.m[i])],
        }
    }

    /// Value at `∞` on component `j`: the `x0^m` coefficient.
    fn ev_sigma(&self, v: &[Scalar], j: usize) -> Scalar {
        let m = self.m[j];
        if m < 0 {
            return Scalar::zero();
        }
        v[self.off0[j] + m as usize].clone()
    }

    /// Value at `0` on component `j + 1`: the `x1^m` coefficient.
    fn ev_tau(&self, v: &[Scalar], j: usize) -> Scalar {
        let c = (j + 1) % self.n();
        if self.m[c] < 0 {
            return Scalar::zero();
        }
        v[self.off0[c]].clone()
    }
}

/// Differential of `hom(L, L')`: node `j` receives
/// `λ_j ev_τ(f) - λ'_j ev_σ(f)`.
fn hom_complex(l: &LineBundleData, lp: &LineBundleData) -> Cochain {
    let lay = Layout::new(lp.deg.iter().zip(&l.deg).map(|(a, b)| a - b).collect());
    let n = lay.n();
    let mut d = Matrix::zeros(lay.dim1(), lay.dim0);
    for j in 0..n {
        let c = (j + 1) % n;
        if lay.m[c] >= 0 {
            d.add_at(lay.node0 + j, lay.off0[c], &l.glue[j]);
        }
        if lay.m[j] >= 0 {
            d.add_at(lay.node0 + j, lay.off0[j] + lay.m[j] as usize, &-&lp.glue[j]);
        }
    }
    Cochain::new(0, vec![lay.dim0, lay.dim1()], vec![d]).expect("two-term complex")
}

/// Derived morphisms `RHom(L, L')` on the cycle: sections on the
/// normalization followed by the node comparison.
pub fn rhom_line(g: &CycleGeometry, l: &LineBundleData, lp: &LineBundleData) -> Result<Cochain, Error> {
    l.validate(g.n)?;
    lp.validate(g.n)?;
    Ok(hom_complex(l, lp))
}

/// The formal model: hom complexes are [`rhom_line`] and composition
/// multiplies cohomology classes. It satisfies the dg axioms but forgets the
/// Massey products of the normalization, so its twisted complexes are not
/// those of `Perf(X_n)`. Kept as a comparison point for [`super::NodalCurve`].
#[derive(Clone, Copy, Debug)]
pub struct FormalNodalCurve {
    pub geometry: CycleGeometry,
}

impl FormalNodalCurve {
    pub fn new(geometry: CycleGeometry) -> FormalNodalCurve {
        FormalNodalCurve { geometry }
    }

    fn n(&self) -> usize {
        self.geometry.n
    }

    fn layout(&self, a: &LineBundleData, b: &LineBundleData) -> Layout {
        Layout::new(b.deg.iter().zip(&a.deg).map(|(x, y)| x - y).collect())
    }

    /// `x0 - x1` on component `i`, `1` elsewhere, in `hom(O(-x_i), O)`.
    pub fn canonical_section(&self, i: usize) -> HomElem {
        let g = &self.geometry;
        let o = LineBundleData::trivial(g);
        let src = LineBundleData::minus_point(g, i);
        let lay = self.layout(&src, &o);
        let mut coords = vec![Scalar::zero(); lay.dim0];
        for c in 0..g.n {
            if c == i {
                coords[lay.off0[c]] = Scalar::int(-1);
                coords[lay.off0[c] + 1] = Scalar::one();
            } else {
                coords[lay.off0[c]] = Scalar::one();
            }
        }
        HomElem { degree: 0, coords }
    }

    pub fn skyscraper(&self, i: usize) -> Result<TwistedComplex<LineBundleData>, Error> {
        let g = &self.geometry;
        let phi = TwMorphism {
            source: TwistedComplex::generator(LineBundleData::minus_point(g, i)),
            target: TwistedComplex::generator(LineBundleData::trivial(g)),
            degree: 0,
            components: [((0, 0), self.canonical_section(i))].into(),
        };
        cone_tw(self, &phi)
    }
}

impl DgCategory for FormalNodalCurve {
    type Gen = LineBundleData;

    fn accepts(&self, l: &LineBundleData) -> bool {
        l.validate(self.geometry.n).is_ok()
    }

    fn hom(&self, a: &LineBundleData, b: &LineBundleData) -> Arc<Cochain> {
        Arc::new(hom_complex(a, b))
    }

    /// `(g, K) ∘ (f, H) = (g f, K ev_σ(f) + (-1)^{|g|} ev_τ(g) H)`.
    fn compose(&self, a: &LineBundleData, b: &LineBundleData, c: &LineBundleData, g: &HomElem, f: &HomElem) -> HomElem {
        let degree = g.degree + f.degree;
        let lf = self.layout(a, b);
        let lg = self.layout(b, c);
        let lo = self.layout(a, c);
        let mut coords = vec![Scalar::zero(); lo.dim(degree)];
        if coords.is_empty() {
            return HomElem { degree, coords };
        }
        for i in 0..self.n() {
            let prod = multiply(lg.m[i], g.degree, lg.section(g.degree, &g.coords, i), lf.m[i], f.degree, lf.section(f.degree, &f.coords, i));
            let off = if degree == 0 { lo.off0[i] } else { lo.off1[i] };
            for (k, v) in prod.into_iter().enumerate() {
                coords[off + k] = v;
            }
        }
        if degree == 1 {
            for j in 0..self.n() {
                let mut v = Scalar::zero();
                if g.degree == 1 {
                    v += &(&g.coords[lg.node0 + j] * &lf.ev_sigma(&f.coords, j));
                }
                if f.degree == 1 {
                    v += &(&lg.ev_tau(&g.coords, j) * &f.coords[lf.node0 + j] * Scalar::sign(g.degree));
                }
                coords[lo.node0 + j] = v;
            }
        }
        HomElem { degree, coords }
    }

    fn unit(&self, a: &LineBundleData) -> HomElem {
        let lay = self.layout(a, a);
        let mut coords = vec![Scalar::zero(); lay.dim0];
        for i in 0..self.n() {
            coords[lay.off0[i]] = Scalar::one();
        }
        HomElem { degree: 0, coords }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgtwist::{hom_dims, rhom_tw, spherical_twist, DgPresentation, RHomTw};

    #[test]
    fn formal_model_is_a_dg_category() {
        let g = CycleGeometry::new(2).unwrap();
        let w = super::super::box_window(&g, -1, 1);
        assert!(DgPresentation::new(FormalNodalCurve::new(g), w).is_ok());
    }

    /// `T_O(O(x))` and `κ(x)` share every hom dimension in the formal model,
    /// yet `H^0` between them is one-dimensional and its generator is not a
    /// quasi-isomorphism. The missing Massey product `<s, h, s>` on `P^1`
    /// is exactly what the glued model restores.
    #[test]
    fn formal_model_loses_twist_of_point_bundle() {
        let g = CycleGeometry::new(1).unwrap();
        let c = FormalNodalCurve::new(g);
        let o = TwistedComplex::generator(LineBundleData::trivial(&g));
        let ox = TwistedComplex::generator(LineBundleData::point(&g, 0));
        let k = c.skyscraper(0).unwrap();
        let t = spherical_twist(&c, &o, &ox).unwrap();
        assert_eq!(hom_dims(&c, &t, &t).unwrap(), hom_dims(&c, &k, &k).unwrap());
        assert_eq!(hom_dims(&c, &t, &k).unwrap(), hom_dims(&c, &k, &k).unwrap());
        let rh = RHomTw::new(&c, &t, &k).unwrap();
        let reps = rh.cohomology_reps(0);
        assert_eq!(reps.len(), 1);
        let cone = cone_tw(&c, &reps[0]).unwrap();
        assert!(!rhom_tw(&c, &cone, &cone).unwrap().is_acyclic());
    }
}
