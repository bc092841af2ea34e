use std::collections::BTreeMap;
use std::fmt::Display;

use super::reduce::reduce;
use super::twisted::{cone_unchecked, RHomTw, TwMorphism, TwistedComplex};
use super::{DgCategory, HomElem};
use crate::homlin::Scalar;
use crate::Error;

/// Stacks `parts` as a block-diagonal direct sum and records where each
/// part starts.
fn stack<G: Clone + Eq + Display>(parts: &[TwistedComplex<G>]) -> (TwistedComplex<G>, Vec<usize>) {
    let mut total = TwistedComplex::zero();
    let mut offsets = Vec::with_capacity(parts.len());
    for p in parts {
        offsets.push(total.len());
        total = total.direct_sum(p);
    }
    (total, offsets)
}

/// Unreduced `T_E(F) = cone(H(E, F) ⊗ E -> F)`, built from cohomology
/// representatives of `rhom_tw(E, F)`.
pub fn spherical_twist_raw<C: DgCategory>(
    cat: &C,
    e: &TwistedComplex<C::Gen>,
    f: &TwistedComplex<C::Gen>,
) -> Result<TwistedComplex<C::Gen>, Error> {
    let rh = RHomTw::new(cat, e, f)?;
    let mut reps: Vec<TwMorphism<C::Gen>> = Vec::new();
    for n in rh.complex.degrees().collect::<Vec<_>>().into_iter().rev() {
        reps.extend(rh.cohomology_reps(n));
    }
    let parts: Vec<_> = reps.iter().map(|v| e.shift(-v.degree)).collect();
    let (source, offsets) = stack(&parts);
    let mut components = BTreeMap::new();
    for (v, off) in reps.iter().zip(offsets) {
        for (&(a, b), x) in &v.components {
            components.insert((a, b + off), x.clone());
        }
    }
    let ev = TwMorphism {
        source,
        target: f.clone(),
        degree: 0,
        components,
    };
    Ok(cone_unchecked(&ev))
}

/// `T_E(F)` reduced by Gaussian elimination.
pub fn spherical_twist<C: DgCategory>(
    cat: &C,
    e: &TwistedComplex<C::Gen>,
    f: &TwistedComplex<C::Gen>,
) -> Result<TwistedComplex<C::Gen>, Error> {
    Ok(reduce(cat, &spherical_twist_raw(cat, e, f)?).0)
}

/// `T_E(F)` built from the whole complex `rhom_tw(E, F) ⊗ E` rather than
/// its cohomology. Agrees with [`spherical_twist`] up to homotopy; much
/// larger, so mainly useful as a cross-check.
pub fn spherical_twist_full<C: DgCategory>(
    cat: &C,
    e: &TwistedComplex<C::Gen>,
    f: &TwistedComplex<C::Gen>,
) -> Result<TwistedComplex<C::Gen>, Error> {
    let rh = RHomTw::new(cat, e, f)?;
    let degrees: Vec<i32> = rh.complex.degrees().collect::<Vec<_>>().into_iter().rev().collect();
    // Basis vector (n, i) sits in block number `index[(n, i)]`.
    let mut index = BTreeMap::new();
    let mut parts = Vec::new();
    let mut ev_parts = Vec::new();
    for &n in &degrees {
        for i in 0..rh.complex.dim(n) {
            index.insert((n, i), parts.len());
            parts.push(e.shift(-n));
            let mut v = vec![Scalar::zero(); rh.complex.dim(n)];
            v[i] = Scalar::one();
            ev_parts.push(rh.to_morphism(n, &v));
        }
    }
    let (mut source, offsets) = stack(&parts);
    let mut extra = BTreeMap::new();
    for &n in &degrees {
        let d = rh.complex.d(n);
        for i in 0..rh.complex.dim(n) {
            for j in 0..rh.complex.dim(n + 1) {
                let c = d.get(j, i);
                if c.is_zero() {
                    continue;
                }
                let (from, to) = (offsets[index[&(n, i)]], offsets[index[&(n + 1, j)]]);
                for (k, ent) in e.entries().iter().enumerate() {
                    extra.insert((to + k, from + k), cat.unit(&ent.gen).scale(c));
                }
            }
        }
    }
    let mut mc = source.mc().clone();
    mc.extend(extra);
    source = TwistedComplex::new_unchecked(source.entries().to_vec(), mc);
    let mut components = BTreeMap::new();
    for (v, off) in ev_parts.iter().zip(offsets) {
        for (&(a, b), x) in &v.components {
            components.insert((a, b + off), x.clone());
        }
    }
    let ev = TwMorphism {
        source,
        target: f.clone(),
        degree: 0,
        components,
    };
    Ok(cone_unchecked(&ev))
}

/// Unreduced `T'_E(F) = cone(F -> H(F, E)^∨ ⊗ E)[-1]`.
pub fn inverse_twist_raw<C: DgCategory>(
    cat: &C,
    e: &TwistedComplex<C::Gen>,
    f: &TwistedComplex<C::Gen>,
) -> Result<TwistedComplex<C::Gen>, Error> {
    let rh = RHomTw::new(cat, f, e)?;
    let mut reps: Vec<TwMorphism<C::Gen>> = Vec::new();
    for n in rh.complex.degrees() {
        reps.extend(rh.cohomology_reps(n));
    }
    let parts: Vec<_> = reps.iter().map(|w| e.shift(w.degree)).collect();
    let (target, offsets) = stack(&parts);
    let mut components: BTreeMap<(usize, usize), HomElem> = BTreeMap::new();
    for (w, off) in reps.iter().zip(offsets) {
        for (&(a, b), x) in &w.components {
            components.insert((a + off, b), x.clone());
        }
    }
    let coev = TwMorphism {
        source: f.clone(),
        target,
        degree: 0,
        components,
    };
    Ok(cone_unchecked(&coev).shift(-1))
}

/// `T'_E(F)` reduced by Gaussian elimination.
pub fn inverse_twist<C: DgCategory>(
    cat: &C,
    e: &TwistedComplex<C::Gen>,
    f: &TwistedComplex<C::Gen>,
) -> Result<TwistedComplex<C::Gen>, Error> {
    Ok(reduce(cat, &inverse_twist_raw(cat, e, f)?).0)
}
