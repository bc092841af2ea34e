use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::homlin::{Cochain, CochainMap, Matrix};
use crate::kronquiver::{res_minus, res_plus, GluedHom, GluedMorphism, GluedObject, Gluing, KrComplex, Ray};
use crate::Error;

/// The Čech gluing of `Γ_n`: overlap `j` identifies `R⁺_j` with `R⁻_{j+1}`.
pub fn cpm_gluing(n: usize) -> Gluing {
    Gluing::cycle(n, Ray::Plus, Ray::Minus)
}

/// A global section of `CPM(Γ_n)`: one Kronecker complex per wheel and glue
/// `u_j: Res⁺ M_j -> Res⁻ M_{j+1}` invertible up to homotopy.
///
/// Serialized as `{"locals": [...], "glue": [...]}` with each `u_j` written as
/// one block-diagonal matrix on the total space, degrees in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCpm", into = "RawCpm")]
pub struct CpmObject {
    inner: GluedObject,
}

/// A morphism of the equalizer category.
pub type EqMorphism = GluedMorphism;

#[derive(Serialize, Deserialize)]
struct RawCpm {
    locals: Vec<KrComplex>,
    glue: Vec<Matrix>,
}

/// Degree ranges covered by either complex.
fn span(a: &Cochain, b: &Cochain) -> Vec<i32> {
    let s: Vec<(i32, i32)> = [a.support(), b.support()].into_iter().flatten().collect();
    match (s.iter().map(|x| x.0).min(), s.iter().map(|x| x.1).max()) {
        (Some(lo), Some(hi)) => (lo..=hi).collect(),
        _ => vec![],
    }
}

fn total_matrix(u: &CochainMap) -> Matrix {
    let (src, tgt) = (&u.source, &u.target);
    let mut m = Matrix::zeros(tgt.total_dim(), src.total_dim());
    let (mut r, mut c) = (0, 0);
    for k in span(src, tgt) {
        m.set_block(r, c, &u.component(k));
        r += tgt.dim(k);
        c += src.dim(k);
    }
    m
}

fn from_total(src: Cochain, tgt: Cochain, m: &Matrix) -> Result<CochainMap, Error> {
    if m.shape() != (tgt.total_dim(), src.total_dim()) {
        return Err(Error::Shape(format!("glue matrix has shape {:?}", m.shape())));
    }
    let mut comps = BTreeMap::new();
    let (mut r, mut c) = (0, 0);
    let mut covered = Matrix::zeros(m.rows(), m.cols());
    for k in span(&src, &tgt) {
        let (h, w) = (tgt.dim(k), src.dim(k));
        let b = m.block(r, c, h, w);
        covered.set_block(r, c, &b);
        comps.insert(k, b);
        r += h;
        c += w;
    }
    if covered != *m {
        return Err(Error::Shape("glue matrix mixes degrees".into()));
    }
    CochainMap::new(src, tgt, 0, comps)
}

impl From<CpmObject> for RawCpm {
    fn from(o: CpmObject) -> RawCpm {
        RawCpm {
            glue: o.inner.glue.iter().map(total_matrix).collect(),
            locals: o.inner.locals,
        }
    }
}

impl TryFrom<RawCpm> for CpmObject {
    type Error = Error;
    fn try_from(r: RawCpm) -> Result<CpmObject, Error> {
        let n = r.locals.len();
        if r.glue.len() != n {
            return Err(Error::Shape(format!("{n} wheels but {} glue maps", r.glue.len())));
        }
        let glue = (0..n)
            .map(|j| from_total(res_plus(&r.locals[j]), res_minus(&r.locals[(j + 1) % n]), &r.glue[j]))
            .collect::<Result<Vec<_>, _>>()?;
        CpmObject::new(r.locals, glue)
    }
}

impl CpmObject {
    /// Checks shapes and that every glue map has acyclic cone.
    pub fn new(locals: Vec<KrComplex>, glue: Vec<CochainMap>) -> Result<CpmObject, Error> {
        let n = locals.len();
        if n == 0 {
            return Err(Error::Shape("Γ_n needs at least one wheel".into()));
        }
        Ok(CpmObject {
            inner: GluedObject::new(&cpm_gluing(n), locals, glue)?,
        })
    }

    pub fn n(&self) -> usize {
        self.inner.locals.len()
    }

    pub fn locals(&self) -> &[KrComplex] {
        &self.inner.locals
    }

    pub fn glue(&self) -> &[CochainMap] {
        &self.inner.glue
    }

    pub fn glued(&self) -> &GluedObject {
        &self.inner
    }
}

/// Hom complex with its basis.
pub fn cpm_hom_basis(a: &CpmObject, b: &CpmObject) -> Result<GluedHom, Error> {
    if a.n() != b.n() {
        return Err(Error::Shape(format!("objects over Γ_{} and Γ_{}", a.n(), b.n())));
    }
    Ok(GluedHom::new(&cpm_gluing(a.n()), a.glued(), b.glued()))
}

/// Morphisms in `CPM(Γ_n)`.
pub fn cpm_hom(a: &CpmObject, b: &CpmObject) -> Result<Cochain, Error> {
    Ok(cpm_hom_basis(a, b)?.complex)
}
