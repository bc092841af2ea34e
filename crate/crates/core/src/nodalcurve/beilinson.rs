use super::geometry::Pole;
use super::rgamma::{h0_dim, h1_dim, index_of, multiply, Monomial};
use crate::homlin::{Cochain, CochainMap, Matrix, Scalar};
use crate::kronquiver::{res_ray, KrComplex, Ray};

/// Degree in which `RΓ(O(m))` lives when it is nonzero.
fn rgamma_degree(m: i64) -> i32 {
    if m >= 0 {
        0
    } else {
        1
    }
}

fn rgamma_dim(m: i64) -> usize {
    if m >= 0 {
        h0_dim(m)
    } else {
        h1_dim(m)
    }
}

/// Multiplication by a linear form `RΓ(O(m)) -> RΓ(O(m + 1))`, with
/// `x0` at index 1 and `x1` at index 0 of `H^0(O(1))`.
fn times(m: i64, form: usize) -> Matrix {
    let mut lin = vec![Scalar::zero(); 2];
    lin[form] = Scalar::one();
    let k = rgamma_degree(m);
    let (src, tgt) = (rgamma_dim(m), rgamma_dim(m + 1));
    let cols: Vec<Vec<Scalar>> = (0..src)
        .map(|i| {
            let mut e = vec![Scalar::zero(); src];
            e[i] = Scalar::one();
            if rgamma_degree(m + 1) != k {
                return vec![Scalar::zero(); tgt];
            }
            multiply(1, 0, &lin, m, k, &e)
        })
        .collect();
    Matrix::from_columns(tgt, &cols)
}

/// The Beilinson image `β(O(d)) = (RΓ(O(d-1)) ⇉ RΓ(O(d)); x0, x1)`.
///
/// Bases are the monomial bases of `rgamma_p1`, ordered by the exponent of
/// `x0`. For `d ≤ -1` both spaces sit in degree 1.
pub fn beilinson(d: i64) -> KrComplex {
    let k = if d >= 0 { 0 } else { 1 };
    let f = times(d - 1, 1);
    let g = times(d - 1, 0);
    let (r, c) = (rgamma_dim(d), rgamma_dim(d - 1));
    // Shapes must reflect the spaces even when one of them is zero.
    let f = if d == 0 { Matrix::zeros(r, 0) } else { f };
    let g = if d == 0 { Matrix::zeros(r, 0) } else { g };
    if d == 0 {
        let v1 = Cochain::zero();
        let v2 = Cochain::concentrated(0, 1);
        let z = CochainMap::zero(&v1, &v2, 0);
        return KrComplex::new(v1, v2, z.clone(), z).expect("β(O)");
    }
    debug_assert_eq!(f.shape(), (r, c));
    KrComplex::concentrated(k, f, g).expect("β(O(d))")
}

/// `β(κ([a:b])) = (ℚ ⇉ ℚ; a, b)`.
pub fn beilinson_sky(a: &Scalar, b: &Scalar) -> KrComplex {
    KrComplex::concentrated(0, Matrix::from_rows(vec![vec![a.clone()]]), Matrix::from_rows(vec![vec![b.clone()]])).expect("β(κ)")
}

/// Ray whose restriction of `β(O(d))` is the fiber at a pole: `∞ = [1:0]` is
/// `cone(x1)`, `0 = [0:1]` is `cone(x0)`.
pub fn pole_ray(p: Pole) -> Ray {
    match p {
        Pole::Infinity => Ray::Minus,
        Pole::Zero => Ray::Plus,
    }
}

/// Position of the fiber generator in degree 0 of the restriction of
/// `β(O(d))` at a pole.
///
/// For `d ≥ 0` it is `x0^d` (at `∞`) or `x1^d` (at `0`) in `V2`. For negative
/// `d` it lies in the shifted copy of `V1 = H^1(O(d-1))`: `x0^d x1^{-1}` at
/// `∞` and `x0^{-1} x1^d` at `0`.
fn fiber_index(d: i64, p: Pole) -> usize {
    if d >= 0 {
        let mono = match p {
            Pole::Infinity => Monomial { a: d, b: 0 },
            Pole::Zero => Monomial { a: 0, b: d },
        };
        index_of(0, mono).expect("H^0 monomial")
    } else {
        let mono = match p {
            Pole::Infinity => Monomial { a: d, b: -1 },
            Pole::Zero => Monomial { a: -1, b: d },
        };
        // V2 contributes nothing in degree 0 here.
        index_of(1, mono).expect("H^1 monomial")
    }
}

/// Sign of the fiber generator. At `0` the generator in negative degree is
/// `-x0^{-1} x1^d`. Without it the section `O(-x) -> O`, which lives in the
/// homotopy part of the Kronecker morphism, vanishes at `[1:-1]` while every
/// other section `O((d-1)x) -> O(dx)` vanishes at `[1:1]`.
fn fiber_sign(d: i64, p: Pole) -> Scalar {
    if d < 0 && p == Pole::Zero {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

fn point() -> Cochain {
    Cochain::concentrated(0, 1)
}

/// `p: Res_p β(O(d)) -> ℚ`, the coefficient of the fiber generator.
pub fn fiber_counit(d: i64, p: Pole) -> CochainMap {
    let src = res_ray(&beilinson(d), pole_ray(p));
    let mut row = Matrix::zeros(1, src.dim(0));
    row.set(0, fiber_index(d, p), fiber_sign(d, p));
    CochainMap::new(src, point(), 0, [(0, row)].into()).expect("fiber counit")
}

/// `q: ℚ -> Res_p β(O(d))`, the inclusion of the fiber generator.
pub fn fiber_unit(d: i64, p: Pole) -> CochainMap {
    let tgt = res_ray(&beilinson(d), pole_ray(p));
    let mut col = Matrix::zeros(tgt.dim(0), 1);
    col.set(fiber_index(d, p), 0, fiber_sign(d, p));
    CochainMap::new(point(), tgt, 0, [(0, col)].into()).expect("fiber unit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homlin::Cohomology;
    use crate::kronquiver::kr_hom;
    use crate::nodalcurve::rgamma_p1;

    #[test]
    fn small_degrees() {
        let b0 = beilinson(0);
        assert_eq!((b0.v1.total_dim(), b0.v2.dim(0)), (0, 1));
        let b1 = beilinson(1);
        assert_eq!((b1.v1.dim(0), b1.v2.dim(0)), (1, 2));
        // x0 and x1 hit the two distinct monomials of H^0(O(1)).
        let (f, g) = (b1.f.component(0), b1.g.component(0));
        let mut cols = vec![f.column(0), g.column(0)];
        cols.sort();
        assert_eq!(cols, vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::one(), Scalar::zero()]]);
        let bm = beilinson(-1);
        assert_eq!((bm.v1.dim(1), bm.v2.total_dim()), (1, 0));
    }

    #[test]
    fn faithful_on_line_bundles() {
        for a in -3..=3 {
            for b in -3..=3 {
                let h = kr_hom(&beilinson(a), &beilinson(b)).cohomology();
                let want: Cohomology = rgamma_p1(b - a).complex.cohomology();
                assert_eq!(h, want, "β(O({a})) -> β(O({b}))");
            }
        }
    }

    #[test]
    fn fibers_are_points() {
        for d in -4..=4 {
            for p in [Pole::Zero, Pole::Infinity] {
                let c = fiber_counit(d, p);
                let u = fiber_unit(d, p);
                assert!(c.is_closed() && u.is_closed());
                assert!(c.cone().unwrap().is_acyclic(), "counit d={d} {p:?}");
                assert!(u.cone().unwrap().is_acyclic(), "unit d={d} {p:?}");
                assert_eq!(c.compose(&u), CochainMap::identity(&point()));
            }
        }
    }

    #[test]
    fn skyscraper_fibers() {
        let s = beilinson_sky(&Scalar::one(), &Scalar::int(-1));
        assert_eq!(crate::kronquiver::restrict(&s, &Scalar::one(), &Scalar::one()).cohomology(), Cohomology::from([(-1, 1), (0, 1)]));
        assert!(res_ray(&s, Ray::Plus).is_acyclic());
    }
}
