use std::fmt;

use serde::{Deserialize, Serialize};

use super::CycleGeometry;
use crate::homlin::Scalar;
use crate::Error;

/// A line bundle on the cycle: a degree on each component and, for each
/// node, the scalar identifying the fibre over `σ(j)` with the fibre over
/// `τ(j)` in the monomial trivializations `x0^d` at `∞` and `x1^d` at `0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LineBundleData {
    pub deg: Vec<i64>,
    pub glue: Vec<Scalar>,
}

impl LineBundleData {
    pub fn new(deg: Vec<i64>, glue: Vec<Scalar>) -> Result<LineBundleData, Error> {
        let l = LineBundleData { deg, glue };
        l.validate(l.deg.len())?;
        Ok(l)
    }

    /// Checks lengths against `n` and that every glue scalar is nonzero.
    pub fn validate(&self, n: usize) -> Result<(), Error> {
        if self.deg.len() != n || self.glue.len() != n {
            return Err(Error::Shape(format!(
                "line bundle data has {} degrees and {} glue scalars, expected {n}",
                self.deg.len(),
                self.glue.len()
            )));
        }
        if self.glue.iter().any(Scalar::is_zero) {
            return Err(Error::Shape("glue scalars must be nonzero".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.deg.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.deg.iter().sum()
    }

    pub fn trivial(g: &CycleGeometry) -> LineBundleData {
        LineBundleData {
            deg: vec![0; g.n],
            glue: vec![Scalar::one(); g.n],
        }
    }

    /// `O(x_i)`. The canonical section of `O(x_i)` restricts to `x0 - x1` on
    /// component `i` and to `1` elsewhere, which forces the glue `-1` at the
    /// node `i - 1` where that section is read off at `0`.
    pub fn point(g: &CycleGeometry, i: usize) -> LineBundleData {
        let mut l = LineBundleData::trivial(g);
        l.deg[i] = 1;
        l.glue[(i + g.n - 1) % g.n] = Scalar::int(-1);
        l
    }

    /// `O(-x_i)`.
    pub fn minus_point(g: &CycleGeometry, i: usize) -> LineBundleData {
        LineBundleData::point(g, i).dual()
    }

    /// Degree one on every component with the `j`-th prime as glue at node `j`.
    pub fn generic(g: &CycleGeometry) -> LineBundleData {
        LineBundleData {
            deg: vec![1; g.n],
            glue: primes(g.n).into_iter().map(Scalar::int).collect(),
        }
    }

    pub fn dual(&self) -> LineBundleData {
        LineBundleData {
            deg: self.deg.iter().map(|d| -d).collect(),
            glue: self.glue.iter().map(Scalar::inv).collect(),
        }
    }

    pub fn power(&self, k: i64) -> LineBundleData {
        let base = if k < 0 { self.dual() } else { self.clone() };
        let mut out = LineBundleData {
            deg: vec![0; self.n()],
            glue: vec![Scalar::one(); self.n()],
        };
        for _ in 0..k.unsigned_abs() {
            out = tensor_line(&out, &base);
        }
        out
    }
}

impl fmt::Display for LineBundleData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L(")?;
        for (i, d) in self.deg.iter().enumerate() {
            write!(f, "{}{d}", if i > 0 { "," } else { "" })?;
        }
        write!(f, ";")?;
        for (i, u) in self.glue.iter().enumerate() {
            write!(f, "{}{u}", if i > 0 { "," } else { "" })?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LineBundleData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Componentwise sum of degrees and product of glue scalars.
pub fn tensor_line(a: &LineBundleData, b: &LineBundleData) -> LineBundleData {
    assert_eq!(a.n(), b.n(), "tensoring bundles on different cycles");
    LineBundleData {
        deg: a.deg.iter().zip(&b.deg).map(|(x, y)| x + y).collect(),
        glue: a.glue.iter().zip(&b.glue).map(|(x, y)| x * y).collect(),
    }
}

fn primes(k: usize) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(k);
    let mut c = 2;
    while out.len() < k {
        if out.iter().take_while(|&&p| p * p <= c).all(|p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> CycleGeometry {
        CycleGeometry::new(n).unwrap()
    }

    #[test]
    fn serializes_with_string_scalars() {
        let l = LineBundleData::new(vec![1, -2], vec![Scalar::new(3, 2), Scalar::int(-1)]).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"deg":[1,-2],"glue":["3/2","-1/1"]}"#);
        assert_eq!(serde_json::from_str::<LineBundleData>(&s).unwrap(), l);
    }

    #[test]
    fn rejects_zero_glue() {
        assert!(LineBundleData::new(vec![0], vec![Scalar::zero()]).is_err());
        assert!(LineBundleData::new(vec![0, 1], vec![Scalar::one()]).is_err());
    }

    #[test]
    fn point_bundles_cancel() {
        for n in 1..4 {
            let g = g(n);
            for i in 0..n {
                let t = tensor_line(&LineBundleData::point(&g, i), &LineBundleData::minus_point(&g, i));
                assert_eq!(t, LineBundleData::trivial(&g));
            }
        }
    }

    #[test]
    fn tensor_with_trivial_is_identity() {
        let g = g(3);
        let l = LineBundleData::generic(&g);
        assert_eq!(tensor_line(&l, &LineBundleData::trivial(&g)), l);
        assert_eq!(l.glue, vec![Scalar::int(2), Scalar::int(3), Scalar::int(5)]);
    }

    #[test]
    fn powers() {
        let g = g(2);
        let l = LineBundleData::point(&g, 0);
        assert_eq!(l.power(2).deg, vec![2, 0]);
        assert_eq!(l.power(-1), l.dual());
        assert_eq!(l.power(0), LineBundleData::trivial(&g));
    }
}
