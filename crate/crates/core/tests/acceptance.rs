//! Acceptance run: one PASS/FAIL line per criterion, with timings.
//!
//! A criterion listed in `KNOWN_RED` still prints FAIL but does not fail
//! the run; if it starts passing the run fails, so the list cannot go stale.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nodal_mirror::cpm_mirror::{build_gamma, mirror_table, mirror_twisted, CpmCategory};
use nodal_mirror::dgtwist::{certify_iso, DgCategory, is_spherical, hom_dims, IsoCertificate, TwistedComplex, Verdict, DEFAULT_SEED};
use nodal_mirror::homlin::{Cohomology, Scalar};
use nodal_mirror::kronquiver::kr_hom;
use nodal_mirror::mcg_action::{check_braid, check_g_relation, default_battery, Outcome};
use nodal_mirror::nodalcurve::{beilinson, rgamma_p1, rhom_line, tensor_line, CycleGeometry, LineBundleData, NodalCurve};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria whose failure is understood and recorded, with the reason.
const KNOWN_RED: &[(u32, &str)] = &[(
    7,
    "the half word sends O to O(x1 - x2)[1], not O[1]; it already follows from T_k(x)(L) = L(x) and T_O(k(x)) = O(-x)[1]",
)];

const RR_SAMPLES: usize = 50;
const RR_MAX_DEGREE: i64 = 3;

type Obj = TwistedComplex<LineBundleData>;

struct Check {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Check {
    Check { pass, detail: detail.into() }
}

fn h(pairs: &[(i32, usize)]) -> Cohomology {
    pairs.iter().copied().filter(|&(_, d)| d > 0).collect()
}

/// Ext on P^1 from the dimension formula, independent of any complex.
fn ext_p1(m: i64) -> Cohomology {
    h(&[(0, (m + 1).max(0) as usize), (1, (-m - 1).max(0) as usize)])
}

fn c1() -> Check {
    let mut bad = Vec::new();
    for n in 1..=4 {
        let g = CycleGeometry::new(n).unwrap();
        let o = LineBundleData::trivial(&g);
        let want = h(&[(0, 1), (1, 1)]);
        let got = rhom_line(&g, &o, &o).unwrap().cohomology();
        let glued = NodalCurve::new(g).hom(&o, &o).cohomology();
        if got != want || glued != want {
            bad.push(n);
        }
    }
    ok(bad.is_empty(), format!("h(O) = (1,1) for n = 1..4; failures {bad:?}"))
}

fn c2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut bad = 0;
    for _ in 0..RR_SAMPLES {
        let n = rng.gen_range(1..=3);
        let g = CycleGeometry::new(n).unwrap();
        let deg: Vec<i64> = (0..n).map(|_| rng.gen_range(-RR_MAX_DEGREE..=RR_MAX_DEGREE)).collect();
        let glue: Vec<Scalar> = (0..n)
            .map(|_| {
                let (p, q) = (rng.gen_range(1..=5i64) * if rng.gen() { 1 } else { -1 }, rng.gen_range(1..=5i64));
                Scalar::new(p, q)
            })
            .collect();
        let l = LineBundleData::new(deg.clone(), glue).unwrap();
        let c = rhom_line(&g, &LineBundleData::trivial(&g), &l).unwrap().cohomology();
        let chi = c.get(&0).copied().unwrap_or(0) as i64 - c.get(&1).copied().unwrap_or(0) as i64;
        if chi != deg.iter().sum::<i64>() {
            bad += 1;
        }
    }
    ok(bad == 0, format!("{RR_SAMPLES} random bundles, {bad} with chi != total degree"))
}

fn c3() -> Check {
    let mut bad = Vec::new();
    for a in -3..=3 {
        for b in -3..=3 {
            let got = kr_hom(&beilinson(a), &beilinson(b)).cohomology();
            if got != rgamma_p1(b - a).complex.cohomology() || got != ext_p1(b - a) {
                bad.push((a, b));
            }
        }
    }
    ok(bad.is_empty(), format!("49 pairs; mismatches {bad:?}"))
}

fn iso(c: &NodalCurve, a: &Obj, b: &Obj) -> (bool, IsoCertificate<LineBundleData>) {
    let cert = certify_iso(c, a, b, DEFAULT_SEED).unwrap();
    let good = cert.verdict == Verdict::Iso && cert.verify(c, a, b).unwrap();
    (good, cert)
}

fn c4(log: &mut Vec<String>) -> Check {
    use nodal_mirror::dgtwist::spherical_twist;
    let c = NodalCurve::cycle(2).unwrap();
    let g = c.geometry;
    let o = c.structure_sheaf();
    let mut lines = vec![LineBundleData::trivial(&g), LineBundleData::generic(&g)];
    for i in 0..2 {
        lines.push(LineBundleData::point(&g, i));
        lines.push(LineBundleData::minus_point(&g, i));
    }
    let mut failures = Vec::new();
    let mut count = 0;
    let mut check = |name: String, a: Obj, b: Obj| {
        let (good, cert) = iso(&c, &a, &b);
        log.push(serde_json::to_string(&cert).unwrap());
        count += 1;
        if !good {
            failures.push(name);
        }
    };
    for i in 0..2 {
        let k = c.skyscraper(i).unwrap();
        for l in &lines {
            let t = spherical_twist(&c, &k, &c.line(l.clone())).unwrap();
            check(format!("T_k{i}({l})"), t, c.line(tensor_line(l, &LineBundleData::point(&g, i))));
        }
        check(format!("T_O(k{i})"), spherical_twist(&c, &o, &k).unwrap(), c.line(LineBundleData::minus_point(&g, i)).shift(1));
        check(format!("T_O(O(x{i}))"), spherical_twist(&c, &o, &c.line(LineBundleData::point(&g, i))).unwrap(), k.clone());
    }
    check("T_O(O)".into(), spherical_twist(&c, &o, &o).unwrap(), o.clone());
    ok(failures.is_empty(), format!("{count} certificates on X_2; failures {failures:?}"))
}

fn c5() -> Check {
    let mut bad = Vec::new();
    for n in 1..=3 {
        let c = NodalCurve::cycle(n).unwrap();
        let mut objs = vec![("O".to_string(), c.structure_sheaf())];
        objs.extend((0..n).map(|i| (format!("k(x{})", i + 1), c.skyscraper(i).unwrap())));
        for (name, e) in objs {
            if !is_spherical(&c, &e).unwrap() || hom_dims(&c, &e, &e).unwrap() != h(&[(0, 1), (1, 1)]) {
                bad.push(format!("{name} on X_{n}"));
            }
        }
    }
    ok(bad.is_empty(), format!("O and k(x_i), n = 1..3; failures {bad:?}"))
}

fn c6(log: &mut Vec<String>) -> Check {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in 2..=3 {
        let c = NodalCurve::cycle(n).unwrap();
        let r = check_braid(&c, &default_battery(&c).unwrap(), DEFAULT_SEED).unwrap();
        pass &= r.outcome == Outcome::Pass && r.verify(&c).unwrap();
        parts.push(format!("n = {n}: {} checks {:?}", r.checks.len(), r.outcome));
        log.push(serde_json::to_string(&r).unwrap());
    }
    ok(pass, parts.join(", "))
}

fn c7(log: &mut Vec<String>) -> Check {
    let c = NodalCurve::cycle(2).unwrap();
    let r = check_g_relation(&c, &default_battery(&c).unwrap(), DEFAULT_SEED).unwrap();
    log.push(serde_json::to_string(&r).unwrap());
    let verified = r.verify(&c).unwrap();
    let mut detail = format!("(b1 a b2)^4 = [2] on {} objects: {:?}", r.checks.len(), r.outcome);
    let mut pass = r.outcome == Outcome::Pass && verified;
    for m in &r.intermediates {
        detail += &format!("; {} on {}: {:?}", m.identity, m.object, m.certificate.verdict);
    }
    // The classical half-word identities; the O(x1 - x2) line is diagnostic only.
    for want in ["(b1 a b2)^2 = O[1]", "(b1 a b2)^2 = k(x2)[1]", "(b1 a b2)^2 = k(x1)[1]"] {
        let m = r.intermediates.iter().find(|m| m.identity == want).unwrap();
        pass &= m.certificate.verdict == Verdict::Iso;
    }
    ok(pass, detail)
}

fn c8(log: &mut Vec<String>) -> Check {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in 1..=3 {
        let c = NodalCurve::cycle(n).unwrap();
        let m = CpmCategory::new(c.geometry);
        let objs: Vec<(String, Obj)> = default_battery(&c).unwrap().into_iter().map(|b| (b.label, b.object)).collect();
        let images: Vec<Obj> = objs.iter().map(|(_, o)| mirror_twisted(&c, &m, o).unwrap()).collect();
        let rows = mirror_table(&c, &m, &objs, &images, &images).unwrap();
        let bad = rows.iter().filter(|r| !r.matches).count();
        pass &= bad == 0;
        parts.push(format!("n = {n}: {} pairs, {bad} mismatches", rows.len()));
        log.push(serde_json::to_string(&rows).unwrap());
    }
    ok(pass, parts.join(", "))
}

fn c9() -> Check {
    let bad: Vec<usize> = (1..=6).filter(|&n| build_gamma(n).unwrap().euler_characteristic() != -(n as i64)).collect();
    ok(bad.is_empty(), format!("chi(Gamma_n) = -n for n = 1..6; failures {bad:?}"))
}

fn timed(f: impl FnOnce() -> Check) -> (Check, Duration) {
    let t = Instant::now();
    let o = f();
    (o, t.elapsed())
}

/// Criteria 4-8 on fresh curves, with the serialized certificates and
/// tables they produced.
fn reports() -> (Vec<String>, [(Check, Duration); 5]) {
    let mut log = Vec::new();
    let a = timed(|| c4(&mut log));
    let b = timed(c5);
    let c = timed(|| c6(&mut log));
    let d = timed(|| c7(&mut log));
    let e = timed(|| c8(&mut log));
    (log, [a, b, c, d, e])
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    let mut report = |k: u32, name: &str, limit: Duration, run: &mut dyn FnMut() -> (Check, Duration)| {
        let (o, dt) = run();
        let pass = o.pass && dt <= limit;
        let known = KNOWN_RED.iter().find(|(c, _)| *c == k);
        let tag = match (pass, known) {
            (true, None) => "PASS",
            (false, Some(_)) => "FAIL (known)",
            (true, Some(_)) => {
                unexpected += 1;
                "PASS (was known red; update KNOWN_RED)"
            }
            (false, None) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("{tag} criterion {k}: {name} [{:.2?} of {:?}] {}", dt, limit, o.detail);
        if let (false, Some((_, why))) = (pass, known) {
            println!("    known: {why}");
        }
    };
    let s = Duration::from_secs;
    report(1, "cohomology of O", s(1), &mut || timed(c1));
    report(2, "Riemann-Roch sweep", s(10), &mut || timed(c2));
    report(3, "Beilinson faithfulness", s(5), &mut || timed(c3));
    let (first, outs) = reports();
    let names = [
        (4, "twist identities on X_2", s(60)),
        (5, "sphericality", s(60)),
        (6, "braid relations", s(300)),
        (7, "lifted G-relation with intermediates", s(600)),
        (8, "mirror comparison", s(120)),
    ];
    for ((k, name, limit), o) in names.into_iter().zip(outs) {
        let mut o = Some(o);
        report(k, name, limit, &mut || o.take().unwrap());
    }
    report(9, "ribbon graph Euler characteristic", s(1), &mut || timed(c9));
    report(10, "determinism of criteria 4-8", s(900), &mut || {
        timed(|| {
            let (second, _) = reports();
            let same = first == second;
            ok(same, format!("{} reports, byte-identical: {same}", first.len()))
        })
    });
    if unexpected > 0 {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
