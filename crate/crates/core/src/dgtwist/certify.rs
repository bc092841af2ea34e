use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::twisted::{cone_unchecked, RHomTw, TwMorphism, TwistedComplex};
use super::DgCategory;
use crate::homlin::{Cohomology, Scalar};
use crate::Error;

/// Seed used when a caller does not provide one.
pub const DEFAULT_SEED: u64 = 0x5eed_2013;

/// Number of random combinations tried after the basis of `H^0`.
pub const RANDOM_TRIES: usize = 64;

/// Coefficients of random combinations are drawn from `-BOUND..=BOUND`.
pub const COEFF_BOUND: i64 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Iso,
    NonIso,
    Undetermined,
}

/// A named invariant on which two objects differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub invariant: String,
    pub left: Cohomology,
    pub right: Cohomology,
}

/// Outcome of an isomorphism test, carrying enough data to re-check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "G: Serialize", deserialize = "G: Deserialize<'de>"))]
pub struct IsoCertificate<G> {
    pub verdict: Verdict,
    pub witness: Option<TwMorphism<G>>,
    pub mismatch: Option<Mismatch>,
}

/// Cohomology dimensions of `rhom_tw(a, b)`.
pub fn hom_dims<C: DgCategory>(cat: &C, a: &TwistedComplex<C::Gen>, b: &TwistedComplex<C::Gen>) -> Result<Cohomology, Error> {
    Ok(RHomTw::new(cat, a, b)?.complex.cohomology())
}

/// Whether a twisted complex is zero in the homotopy category, i.e. its
/// identity is null-homotopic.
pub fn is_zero_object<C: DgCategory>(cat: &C, a: &TwistedComplex<C::Gen>) -> Result<bool, Error> {
    Ok(RHomTw::new(cat, a, a)?.complex.is_acyclic())
}

/// Calabi–Yau-1 sphericality: `End(E)` has cohomology `(1, 1)` in degrees
/// 0 and 1 and nothing else.
pub fn is_spherical<C: DgCategory>(cat: &C, e: &TwistedComplex<C::Gen>) -> Result<bool, Error> {
    let h = hom_dims(cat, e, e)?;
    Ok(h == Cohomology::from([(0, 1), (1, 1)]))
}

fn fingerprint<C: DgCategory>(
    cat: &C,
    a: &TwistedComplex<C::Gen>,
    b: &TwistedComplex<C::Gen>,
) -> Result<Vec<(&'static str, Cohomology)>, Error> {
    Ok(vec![
        ("rhom(A,A)", hom_dims(cat, a, a)?),
        ("rhom(B,B)", hom_dims(cat, b, b)?),
        ("rhom(A,B)", hom_dims(cat, a, b)?),
        ("rhom(B,A)", hom_dims(cat, b, a)?),
    ])
}

fn first_mismatch(fp: &[(&'static str, Cohomology)]) -> Option<Mismatch> {
    let (_, base) = &fp[0];
    fp[1..].iter().find(|(_, h)| h != base).map(|(name, h)| Mismatch {
        invariant: format!("{name} vs rhom(A,A)"),
        left: h.clone(),
        right: base.clone(),
    })
}

/// Whether `phi` is a closed degree-zero map whose cone is contractible.
pub fn is_quasi_iso<C: DgCategory>(cat: &C, phi: &TwMorphism<C::Gen>) -> Result<bool, Error> {
    if phi.degree != 0 {
        return Ok(false);
    }
    let rh = RHomTw::new(cat, &phi.source, &phi.target)?;
    if !rh.is_closed(cat, phi) {
        return Ok(false);
    }
    is_zero_object(cat, &cone_unchecked(phi))
}

/// Certificate-based isomorphism test in the homotopy category.
///
/// Objects with different hom fingerprints are reported non-isomorphic.
/// Otherwise a basis of `H^0(rhom(A, B))` is tried, then
/// [`RANDOM_TRIES`] random integer combinations; the first map with a
/// contractible cone is returned as the witness.
pub fn certify_iso<C: DgCategory>(
    cat: &C,
    a: &TwistedComplex<C::Gen>,
    b: &TwistedComplex<C::Gen>,
    seed: u64,
) -> Result<IsoCertificate<C::Gen>, Error>
where
    C::Gen: Display,
{
    if a == b {
        return Ok(IsoCertificate {
            verdict: Verdict::Iso,
            witness: Some(TwMorphism::identity(cat, a)),
            mismatch: None,
        });
    }
    let fp = fingerprint(cat, a, b)?;
    if let Some(m) = first_mismatch(&fp) {
        return Ok(IsoCertificate {
            verdict: Verdict::NonIso,
            witness: None,
            mismatch: Some(m),
        });
    }
    let rh = RHomTw::new(cat, a, b)?;
    let reps = rh.complex.cohomology_reps(0);
    let found = |v: &[Scalar]| -> Result<Option<TwMorphism<C::Gen>>, Error> {
        let phi = rh.to_morphism(0, v);
        Ok(is_zero_object(cat, &cone_unchecked(&phi))?.then_some(phi))
    };
    for r in &reps {
        if let Some(phi) = found(r)? {
            return Ok(iso(phi));
        }
    }
    if reps.len() > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = rh.complex.dim(0);
        for _ in 0..RANDOM_TRIES {
            let coeffs: Vec<i64> = (0..reps.len()).map(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)).collect();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let mut v = vec![Scalar::zero(); len];
            for (r, &c) in reps.iter().zip(&coeffs) {
                let c = Scalar::int(c);
                for (x, y) in v.iter_mut().zip(r) {
                    *x += &(y * &c);
                }
            }
            if let Some(phi) = found(&v)? {
                return Ok(iso(phi));
            }
        }
    }
    Ok(IsoCertificate {
        verdict: Verdict::Undetermined,
        witness: None,
        mismatch: None,
    })
}

fn iso<G>(phi: TwMorphism<G>) -> IsoCertificate<G> {
    IsoCertificate {
        verdict: Verdict::Iso,
        witness: Some(phi),
        mismatch: None,
    }
}

impl<G: Clone + Eq + Display> IsoCertificate<G> {
    /// Re-checks the certificate for the pair `(a, b)` without searching.
    pub fn verify<C: DgCategory<Gen = G>>(&self, cat: &C, a: &TwistedComplex<G>, b: &TwistedComplex<G>) -> Result<bool, Error> {
        match self.verdict {
            Verdict::Iso => {
                let Some(w) = &self.witness else {
                    return Ok(false);
                };
                if &w.source != a || &w.target != b {
                    return Ok(false);
                }
                is_quasi_iso(cat, w)
            }
            Verdict::NonIso => {
                let Some(m) = &self.mismatch else {
                    return Ok(false);
                };
                let fp = fingerprint(cat, a, b)?;
                Ok(first_mismatch(&fp).as_ref() == Some(m))
            }
            Verdict::Undetermined => Ok(self.witness.is_none()),
        }
    }
}
