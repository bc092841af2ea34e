use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::word::{Generator, McgWord};
use crate::dgtwist::{certify_iso, inverse_twist, spherical_twist, IsoCertificate, TwistedComplex, Verdict};
use crate::nodalcurve::{LineBundleData, NodalCurve};
use crate::Error;

pub type Object = TwistedComplex<LineBundleData>;

/// A named object of a test battery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryItem {
    pub label: String,
    pub object: Object,
}

impl BatteryItem {
    pub fn new(label: impl Into<String>, object: Object) -> BatteryItem {
        BatteryItem {
            label: label.into(),
            object,
        }
    }
}

/// `O`, every `κ(x_i)`, every `O(±x_i)`, and the generic bundle of
/// multidegree `(1, …, 1)`.
pub fn default_battery(curve: &NodalCurve) -> Result<Vec<BatteryItem>, Error> {
    let g = &curve.geometry;
    let mut out = vec![BatteryItem::new("O", curve.structure_sheaf())];
    for i in 0..curve.n() {
        out.push(BatteryItem::new(format!("k(x{})", i + 1), curve.skyscraper(i)?));
    }
    for i in 0..curve.n() {
        out.push(BatteryItem::new(format!("O(x{})", i + 1), curve.line(LineBundleData::point(g, i))));
    }
    for i in 0..curve.n() {
        out.push(BatteryItem::new(format!("O(-x{})", i + 1), curve.line(LineBundleData::minus_point(g, i))));
    }
    out.push(BatteryItem::new("L(1..1)", curve.line(LineBundleData::generic(g))));
    Ok(out)
}

/// Applies `w` to `f` letter by letter from the right. Twists are reduced
/// after every step.
pub fn evaluate_word(curve: &NodalCurve, w: &McgWord, f: &Object) -> Result<Object, Error> {
    w.check_range(curve.n())?;
    let mut cur = f.clone();
    for l in w.letters.iter().rev() {
        let sphere = match l.gen {
            Generator::T => {
                cur = cur.shift(if l.inverse { -1 } else { 1 });
                continue;
            }
            Generator::A => curve.structure_sheaf(),
            Generator::B(i) => curve.skyscraper(i - 1)?,
        };
        cur = if l.inverse {
            inverse_twist(curve, &sphere, &cur)?
        } else {
            spherical_twist(curve, &sphere, &cur)?
        };
    }
    Ok(cur)
}

/// Overall outcome of a relation battery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Undetermined,
}

impl Outcome {
    fn of<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> Outcome {
        let mut out = Outcome::Pass;
        for v in verdicts {
            match v {
                Verdict::Iso => {}
                Verdict::NonIso => return Outcome::Fail,
                Verdict::Undetermined => out = Outcome::Undetermined,
            }
        }
        out
    }
}

/// One object-wise instance of an identity, with both sides and the
/// certificate comparing them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub identity: String,
    pub object: String,
    pub lhs: Object,
    pub rhs: Object,
    pub certificate: IsoCertificate<LineBundleData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relation: String,
    pub n: usize,
    pub scope: String,
    pub checks: Vec<RelationCheck>,
    pub outcome: Outcome,
    /// Auxiliary identities, reported but not part of `outcome`.
    pub intermediates: Vec<RelationCheck>,
}

const SCOPE: &str = "object-wise on a finite battery; not a proof of natural equivalence";

impl RelationReport {
    fn new(relation: &str, n: usize, checks: Vec<RelationCheck>) -> RelationReport {
        let outcome = Outcome::of(checks.iter().map(|c| &c.certificate.verdict));
        RelationReport {
            relation: relation.into(),
            n,
            scope: SCOPE.into(),
            checks,
            outcome,
            intermediates: Vec::new(),
        }
    }

    /// Re-checks every stored certificate against its stored objects,
    /// without searching.
    pub fn verify(&self, curve: &NodalCurve) -> Result<bool, Error> {
        if self.outcome != Outcome::of(self.checks.iter().map(|c| &c.certificate.verdict)) {
            return Ok(false);
        }
        for c in self.checks.iter().chain(&self.intermediates) {
            if !c.certificate.verify(curve, &c.lhs, &c.rhs)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A pending comparison: the identity's name, the object's label, and
/// a way of producing both sides.
struct Job<'a> {
    identity: String,
    item: &'a BatteryItem,
    sides: Box<dyn Fn(&Object) -> Result<(Object, Object), Error> + Sync + 'a>,
}

fn run(curve: &NodalCurve, jobs: Vec<Job<'_>>, seed: u64) -> Result<Vec<RelationCheck>, Error> {
    jobs.par_iter()
        .map(|j| {
            let (lhs, rhs) = (j.sides)(&j.item.object)?;
            let certificate = certify_iso(curve, &lhs, &rhs, seed)?;
            Ok(RelationCheck {
                identity: j.identity.clone(),
                object: j.item.label.clone(),
                lhs,
                rhs,
                certificate,
            })
        })
        .collect()
}

fn words<'a>(curve: &'a NodalCurve, lhs: McgWord, rhs: McgWord) -> Box<dyn Fn(&Object) -> Result<(Object, Object), Error> + Sync + 'a> {
    Box::new(move |f| Ok((evaluate_word(curve, &lhs, f)?, evaluate_word(curve, &rhs, f)?)))
}

fn parse(s: &str) -> McgWord {
    s.parse().expect("built-in word")
}

/// `b_i b_j = b_j b_i` for `i < j` and `b_i a b_i = a b_i a` for every `i`,
/// on every battery object.
pub fn check_braid(curve: &NodalCurve, battery: &[BatteryItem], seed: u64) -> Result<RelationReport, Error> {
    let n = curve.n();
    let mut ids = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            ids.push((format!("b{i} b{j}"), format!("b{j} b{i}")));
        }
    }
    for i in 1..=n {
        ids.push((format!("b{i} a b{i}"), format!("a b{i} a")));
    }
    let mut jobs = Vec::new();
    for (l, r) in &ids {
        for item in battery {
            jobs.push(Job {
                identity: format!("{l} = {r}"),
                item,
                sides: words(curve, parse(l), parse(r)),
            });
        }
    }
    Ok(RelationReport::new("braid", n, run(curve, jobs, seed)?))
}

/// `(b1 a b2)^4 = t^2` on every battery object of `X_2`.
///
/// The half-word identities from the classical argument are checked as
/// well and stored in `intermediates`. They do not enter the outcome: the
/// one for `O` fails, and `(b1 a b2)^2 O` is `O(x1 - x2)[1]` instead.
pub fn check_g_relation(curve: &NodalCurve, battery: &[BatteryItem], seed: u64) -> Result<RelationReport, Error> {
    if curve.n() != 2 {
        return Err(Error::Precondition(format!("the G-relation is defined for n = 2, not {}", curve.n())));
    }
    let g = &curve.geometry;
    let half = parse("b1 a b2").pow(2);
    let o = BatteryItem::new("O", curve.structure_sheaf());
    let k1 = BatteryItem::new("k(x1)", curve.skyscraper(0)?);
    let k2 = BatteryItem::new("k(x2)", curve.skyscraper(1)?);
    let twisted = curve.line(crate::nodalcurve::tensor_line(&LineBundleData::point(g, 0), &LineBundleData::minus_point(g, 1)));
    let mut mid = Vec::new();
    for (name, item, target) in [
        ("(b1 a b2)^2 = O[1]", &o, o.object.shift(1)),
        ("(b1 a b2)^2 = O(x1-x2)[1]", &o, twisted.shift(1)),
        ("(b1 a b2)^2 = k(x2)[1]", &k1, k2.object.shift(1)),
        ("(b1 a b2)^2 = k(x1)[1]", &k2, k1.object.shift(1)),
    ] {
        let half = half.clone();
        mid.push(Job {
            identity: name.into(),
            item,
            sides: Box::new(move |f| Ok((evaluate_word(curve, &half, f)?, target.clone()))),
        });
    }
    let mut jobs = Vec::new();
    for item in battery {
        let half = half.clone();
        jobs.push(Job {
            identity: "(b1 a b2)^4 = t^2".into(),
            item,
            sides: Box::new(move |f| {
                let h = evaluate_word(curve, &half, f)?;
                Ok((evaluate_word(curve, &half, &h)?, f.shift(2)))
            }),
        });
    }
    let mut report = RelationReport::new("g-tilde", 2, run(curve, jobs, seed)?);
    report.intermediates = run(curve, mid, seed)?;
    Ok(report)
}

/// `w · w'` against `w` after `w'`, and `ℓ ℓ^{-1}` against the identity,
/// on every battery object.
pub fn check_pipeline_laws(
    curve: &NodalCurve,
    battery: &[BatteryItem],
    w: &McgWord,
    wp: &McgWord,
    seed: u64,
) -> Result<RelationReport, Error> {
    let mut jobs = Vec::new();
    for item in battery {
        let (w, wp) = (w.clone(), wp.clone());
        jobs.push(Job {
            identity: format!("({w}) ({wp}) = ({w}) after ({wp})"),
            item,
            sides: Box::new(move |f| {
                let whole = evaluate_word(curve, &w.then(&wp), f)?;
                let stepwise = evaluate_word(curve, &w, &evaluate_word(curve, &wp, f)?)?;
                Ok((whole, stepwise))
            }),
        });
    }
    let mut letters: Vec<McgWord> = vec![parse("a"), parse("t")];
    letters.extend((1..=curve.n()).map(|i| parse(&format!("b{i}"))));
    for l in letters {
        for word in [l.then(&l.inverse()), l.inverse().then(&l)] {
            for item in battery {
                let word = word.clone();
                jobs.push(Job {
                    identity: format!("{word} = 1"),
                    item,
                    sides: Box::new(move |f: &Object| Ok((evaluate_word(curve, &word, f)?, f.clone()))),
                });
            }
        }
    }
    Ok(RelationReport::new("pipeline", curve.n(), run(curve, jobs, seed)?))
}

/// Which of `O` and the `κ(x_i)` a pipeline fixes up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub word: McgWord,
    pub fixed: Vec<(String, Verdict)>,
    /// Every test object is fixed, so the pipeline behaves like a pullback
    /// along an automorphism of the curve.
    pub pullback_like: bool,
}

pub fn fixed_point_diagnostics(curve: &NodalCurve, w: &McgWord, seed: u64) -> Result<FixedPointReport, Error> {
    let mut items = vec![BatteryItem::new("O", curve.structure_sheaf())];
    for i in 0..curve.n() {
        items.push(BatteryItem::new(format!("k(x{})", i + 1), curve.skyscraper(i)?));
    }
    let fixed: Vec<(String, Verdict)> = items
        .par_iter()
        .map(|it| {
            let img = evaluate_word(curve, w, &it.object)?;
            Ok((it.label.clone(), certify_iso(curve, &img, &it.object, seed)?.verdict))
        })
        .collect::<Result<_, Error>>()?;
    let pullback_like = fixed.iter().all(|(_, v)| *v == Verdict::Iso);
    Ok(FixedPointReport {
        word: w.clone(),
        fixed,
        pullback_like,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgtwist::DEFAULT_SEED;
    use crate::nodalcurve::tensor_line;

    fn iso(c: &NodalCurve, a: &Object, b: &Object) -> bool {
        certify_iso(c, a, b, DEFAULT_SEED).unwrap().verdict == Verdict::Iso
    }

    fn w(s: &str) -> McgWord {
        s.parse().unwrap()
    }

    #[test]
    fn single_letters() {
        let c = NodalCurve::cycle(2).unwrap();
        let g = c.geometry;
        let o = c.structure_sheaf();
        assert_eq!(evaluate_word(&c, &w("t"), &o).unwrap(), o.shift(1));
        assert_eq!(evaluate_word(&c, &McgWord::identity(), &o).unwrap(), o);
        let b1 = evaluate_word(&c, &w("b1"), &o).unwrap();
        assert!(iso(&c, &b1, &c.line(LineBundleData::point(&g, 0))));
        assert!(evaluate_word(&c, &w("b3"), &o).is_err());
    }

    #[test]
    fn commuting_twists_on_structure_sheaf() {
        let c = NodalCurve::cycle(2).unwrap();
        let g = c.geometry;
        let o = c.structure_sheaf();
        let both = c.line(tensor_line(&LineBundleData::point(&g, 0), &LineBundleData::point(&g, 1)));
        for s in ["b1 b2", "b2 b1"] {
            assert!(iso(&c, &evaluate_word(&c, &w(s), &o).unwrap(), &both), "{s}");
        }
    }

    #[test]
    fn fixed_points() {
        let c = NodalCurve::cycle(2).unwrap();
        let id = fixed_point_diagnostics(&c, &McgWord::identity(), DEFAULT_SEED).unwrap();
        assert!(id.pullback_like);
        let t = fixed_point_diagnostics(&c, &w("t"), DEFAULT_SEED).unwrap();
        assert!(t.fixed.iter().all(|(_, v)| *v == Verdict::NonIso));
        let g = fixed_point_diagnostics(&c, &w("b1 a b2").pow(4).then(&w("t^-1 t^-1")), DEFAULT_SEED).unwrap();
        assert!(g.pullback_like, "{g:?}");
    }

    #[test]
    fn g_relation_needs_two_components() {
        let c = NodalCurve::cycle(3).unwrap();
        assert!(matches!(check_g_relation(&c, &[], DEFAULT_SEED), Err(Error::Precondition(_))));
    }

    #[test]
    fn report_round_trips_and_reverifies() {
        let c = NodalCurve::cycle(2).unwrap();
        let bat = &default_battery(&c).unwrap()[..2];
        let r = check_braid(&c, bat, DEFAULT_SEED).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        assert_eq!(r.checks.len(), 3 * bat.len());
        let back: RelationReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(back.verify(&c).unwrap());
        let mut forged = back.clone();
        forged.checks[0].rhs = forged.checks[0].rhs.shift(1);
        assert!(!forged.verify(&c).unwrap());
    }
}
