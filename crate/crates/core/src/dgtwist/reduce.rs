use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;

use super::certify::{IsoCertificate, Verdict};
use super::twisted::{TwMorphism, TwistedComplex};
use super::{DgCategory, HomElem};
use crate::homlin::{Matrix, Scalar};

/// Two-sided inverse of a degree-zero endomorphism of a generator, if any.
pub fn invert_endo<C: DgCategory>(cat: &C, e: &C::Gen, f: &HomElem) -> Option<HomElem> {
    if f.degree != 0 {
        return None;
    }
    let h = cat.hom(e, e);
    let n = h.dim(0);
    if n == 0 {
        return None;
    }
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|i| cat.compose(e, e, e, f, &HomElem::basis(0, n, i)).coords)
        .collect();
    let left = Matrix::from_columns(n, &cols);
    let unit = cat.unit(e);
    let x = HomElem {
        degree: 0,
        coords: left.solve(&unit.coords)?,
    };
    (cat.compose(e, e, e, &x, f) == unit).then_some(x)
}

/// Order of the entries in `keep` compatible with the components `mc`
/// (targets before sources), preferring the original order. `None` when
/// the components contain a cycle.
fn triangular_order(keep: &[usize], mc: &BTreeMap<(usize, usize), HomElem>) -> Option<Vec<usize>> {
    let mut deps: BTreeMap<usize, BTreeSet<usize>> = keep.iter().map(|&k| (k, BTreeSet::new())).collect();
    for &(t, s) in mc.keys() {
        if t == s {
            return None;
        }
        deps.get_mut(&s).unwrap().insert(t);
    }
    let mut placed = BTreeSet::new();
    let mut order = Vec::with_capacity(keep.len());
    while order.len() < keep.len() {
        let next = keep
            .iter()
            .copied()
            .find(|k| !placed.contains(k) && deps[k].iter().all(|d| placed.contains(d)))?;
        placed.insert(next);
        order.push(next);
    }
    Some(order)
}

/// Cancels the pair `(a, b)` whose component is the invertible `delta_ab`
/// with inverse `inv`. Returns the reduced complex and the projection onto
/// it, or `None` if the result cannot be ordered triangularly.
fn eliminate<C: DgCategory>(
    cat: &C,
    t: &TwistedComplex<C::Gen>,
    a: usize,
    b: usize,
    inv: &HomElem,
) -> Option<(TwistedComplex<C::Gen>, TwMorphism<C::Gen>)> {
    let entries = t.entries();
    let mc = t.mc();
    let keep: Vec<usize> = (0..entries.len()).filter(|&i| i != a && i != b).collect();
    let gen = |i: usize| &entries[i].gen;

    // Components into b's partner and out of a's partner.
    let into_a: Vec<(usize, &HomElem)> = mc.iter().filter(|(&(x, s), _)| x == a && s != b).map(|(&(_, s), v)| (s, v)).collect();
    let from_b: Vec<(usize, &HomElem)> = mc.iter().filter(|(&(x, s), _)| s == b && x != a).map(|(&(x, _), v)| (x, v)).collect();

    // y_{c'} = δ_{c'b} ∘ inv : e_a -> e_{c'}
    let ys: Vec<(usize, HomElem)> = from_b
        .iter()
        .map(|&(cp, v)| (cp, cat.compose(gen(a), gen(b), gen(cp), v, inv)))
        .collect();

    let mut new_mc: BTreeMap<(usize, usize), HomElem> = mc
        .iter()
        .filter(|(&(x, s), _)| x != a && x != b && s != a && s != b)
        .map(|(&k, v)| (k, v.clone()))
        .collect();
    for (cp, y) in &ys {
        for &(c, v) in &into_a {
            let corr = cat.compose(gen(c), gen(a), gen(*cp), y, v);
            if corr.is_zero() {
                continue;
            }
            match new_mc.get_mut(&(*cp, c)) {
                Some(acc) => acc.add_scaled(&corr, &Scalar::int(-1)),
                None => {
                    new_mc.insert((*cp, c), corr.neg());
                }
            }
        }
    }
    new_mc.retain(|_, v| !v.is_zero());

    let order = triangular_order(&keep, &new_mc)?;
    let mut pos = vec![usize::MAX; entries.len()];
    for (i, &o) in order.iter().enumerate() {
        pos[o] = i;
    }
    let reduced_entries = order.iter().map(|&o| entries[o].clone()).collect();
    let reduced_mc = new_mc.into_iter().map(|((x, s), v)| ((pos[x], pos[s]), v)).collect();
    let reduced = TwistedComplex::new(cat, reduced_entries, reduced_mc).ok()?;

    let mut components = BTreeMap::new();
    for &c in &keep {
        components.insert((pos[c], c), cat.unit(gen(c)));
    }
    for (cp, y) in ys {
        components.insert((pos[cp], a), y.neg());
    }
    let projection = TwMorphism {
        source: t.clone(),
        target: reduced.clone(),
        degree: 0,
        components,
    };
    Some((reduced, projection))
}

fn find_cancellation<C: DgCategory>(cat: &C, t: &TwistedComplex<C::Gen>) -> Option<(TwistedComplex<C::Gen>, TwMorphism<C::Gen>)> {
    let entries = t.entries();
    for (&(a, b), v) in t.mc() {
        if entries[a].gen != entries[b].gen || entries[b].shift != entries[a].shift + 1 {
            continue;
        }
        if !cat.d(&entries[b].gen, &entries[a].gen, v).is_zero() {
            continue;
        }
        let Some(inv) = invert_endo(cat, &entries[a].gen, v) else {
            continue;
        };
        if let Some(out) = eliminate(cat, t, a, b, &inv) {
            return Some(out);
        }
    }
    None
}

/// Gaussian elimination of invertible same-generator components in adjacent
/// shifts. Returns the reduced complex with a certificate whose witness is
/// the composite projection `A -> reduce(A)`.
pub fn reduce<C: DgCategory>(cat: &C, a: &TwistedComplex<C::Gen>) -> (TwistedComplex<C::Gen>, IsoCertificate<C::Gen>)
where
    C::Gen: Display,
{
    let mut current = a.clone();
    let mut witness = TwMorphism::identity(cat, a);
    while let Some((next, proj)) = find_cancellation(cat, &current) {
        witness = proj.compose(cat, &witness);
        current = next;
    }
    let cert = IsoCertificate {
        verdict: Verdict::Iso,
        witness: Some(witness),
        mismatch: None,
    };
    (current, cert)
}
