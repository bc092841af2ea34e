use crate::homlin::{Cochain, Matrix, Scalar};

/// A Laurent monomial `x0^a x1^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: i64,
    pub b: i64,
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x0^{} x1^{}", self.a, self.b)
    }
}

/// Derived global sections of `O(m)` on a projective line, with monomial
/// bases: `H^0` spanned by `x0^a x1^b` with `a, b >= 0` and `H^1` by the
/// Čech classes `x0^a x1^b` with `a, b <= -1`, both with `a + b = m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RGammaModel {
    pub m: i64,
    pub complex: Cochain,
}

/// Number of `H^0` monomials of `O(m)`.
pub fn h0_dim(m: i64) -> usize {
    (m + 1).max(0) as usize
}

/// Number of `H^1` monomials of `O(m)`.
pub fn h1_dim(m: i64) -> usize {
    (-m - 1).max(0) as usize
}

/// The `i`-th `H^0` monomial; `i` is the exponent of `x0`.
pub fn h0_monomial(m: i64, i: usize) -> Monomial {
    let a = i as i64;
    Monomial { a, b: m - a }
}

/// The `i`-th `H^1` monomial, starting from `x0^-1 x1^(m+1)`.
pub fn h1_monomial(m: i64, i: usize) -> Monomial {
    let a = -1 - i as i64;
    Monomial { a, b: m - a }
}

/// Position of `mono` in the basis of `H^degree(O(a + b))`, if it is a
/// basis monomial there.
pub fn index_of(degree: i32, mono: Monomial) -> Option<usize> {
    match degree {
        0 if mono.a >= 0 && mono.b >= 0 => Some(mono.a as usize),
        1 if mono.a <= -1 && mono.b <= -1 => Some((-1 - mono.a) as usize),
        _ => None,
    }
}

pub fn rgamma_p1(m: i64) -> RGammaModel {
    let complex = Cochain::new(0, vec![h0_dim(m), h1_dim(m)], vec![Matrix::zeros(h1_dim(m), h0_dim(m))])
        .expect("zero differential");
    RGammaModel { m, complex }
}

/// Product of an element of `H^p(O(m))` and one of `H^q(O(m'))`, landing in
/// `H^{p+q}(O(m + m'))`. Monomials that fall outside the target basis are
/// discarded, which is how `H^0` acts on Čech `H^1`.
pub fn multiply(m: i64, p: i32, x: &[Scalar], m2: i64, q: i32, y: &[Scalar]) -> Vec<Scalar> {
    let deg = p + q;
    let target = m + m2;
    let len = match deg {
        0 => h0_dim(target),
        1 => h1_dim(target),
        _ => 0,
    };
    let mut out = vec![Scalar::zero(); len];
    if len == 0 {
        return out;
    }
    let mono = |d: i32, mm: i64, i: usize| if d == 0 { h0_monomial(mm, i) } else { h1_monomial(mm, i) };
    for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let u = mono(p, m, i);
        for (j, e) in y.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
            let v = mono(q, m2, j);
            if let Some(k) = index_of(deg, Monomial { a: u.a + v.a, b: u.b + v.b }) {
                out[k] += &(c * e);
            }
        }
    }
    out
}

impl RGammaModel {
    pub fn h0_basis(&self) -> Vec<Monomial> {
        (0..h0_dim(self.m)).map(|i| h0_monomial(self.m, i)).collect()
    }

    pub fn h1_basis(&self) -> Vec<Monomial> {
        (0..h1_dim(self.m)).map(|i| h1_monomial(self.m, i)).collect()
    }

    /// Action of a section `s ∈ H^0(O(a))` on this model, landing in the
    /// model of `O(m + a)`.
    pub fn act(&self, a: i64, s: &[Scalar], degree: i32, v: &[Scalar]) -> Vec<Scalar> {
        multiply(a, 0, s, self.m, degree, v)
    }
}
