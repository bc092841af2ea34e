use nodal_mirror::dgtwist::{certify_iso, reduce, spherical_twist, inverse_twist, spherical_twist_full, Verdict, TwMorphism, cone_tw};
use nodal_mirror::nodalcurve::{LineBundleData, NodalCurve};

fn iso(c: &NodalCurve, a: &nodal_mirror::dgtwist::TwistedComplex<LineBundleData>, b: &nodal_mirror::dgtwist::TwistedComplex<LineBundleData>) -> bool {
    let cert = certify_iso(c, a, b, 7).unwrap();
    assert!(cert.verify(c, a, b).unwrap());
    cert.verdict == Verdict::Iso
}

#[test]
fn twists_along_structure_sheaf() {
    for n in 1..4 {
        let c = NodalCurve::cycle(n).unwrap();
        let g = c.geometry;
        let o = c.structure_sheaf();
        assert!(iso(&c, &spherical_twist(&c, &o, &o).unwrap(), &o), "T_O(O), n = {n}");
        for i in 0..n {
            let k = c.skyscraper(i).unwrap();
            let ox = c.line(LineBundleData::point(&g, i));
            let omx = c.line(LineBundleData::minus_point(&g, i));
            assert!(iso(&c, &spherical_twist(&c, &o, &k).unwrap(), &omx.shift(1)), "T_O(k), n = {n}");
            let t = spherical_twist(&c, &o, &ox).unwrap();
            assert!(iso(&c, &t, &k), "T_O(O(x)), n = {n}");
            assert!(t.len() <= k.len());
            assert!(iso(&c, &spherical_twist(&c, &k, &o).unwrap(), &ox), "T_k(O), n = {n}");
        }
    }
}

#[test]
fn inverse_twists_undo_twists() {
    let c = NodalCurve::cycle(2).unwrap();
    let g = c.geometry;
    let o = c.structure_sheaf();
    let k = c.skyscraper(0).unwrap();
    let objs = [o.clone(), k.clone(), c.line(LineBundleData::generic(&g)), c.line(LineBundleData::minus_point(&g, 1))];
    for e in [&o, &k] {
        for f in &objs {
            let t = spherical_twist(&c, e, f).unwrap();
            assert!(iso(&c, &inverse_twist(&c, e, &t).unwrap(), f));
            let t2 = inverse_twist(&c, e, f).unwrap();
            assert!(iso(&c, &spherical_twist(&c, e, &t2).unwrap(), f));
        }
    }
}

#[test]
fn full_twist_agrees_with_minimal() {
    let c = NodalCurve::cycle(2).unwrap();
    let g = c.geometry;
    let o = c.structure_sheaf();
    let k = c.skyscraper(1).unwrap();
    for f in [o.clone(), k.clone(), c.line(LineBundleData::point(&g, 0))] {
        for e in [&o, &k] {
            let full = spherical_twist_full(&c, e, &f).unwrap();
            let (red, cert) = reduce(&c, &full);
            assert!(cert.verify(&c, &full, &red).unwrap());
            assert!(iso(&c, &red, &spherical_twist(&c, e, &f).unwrap()));
        }
    }
}

#[test]
fn cone_of_identity_reduces_to_zero() {
    let c = NodalCurve::cycle(2).unwrap();
    let o = c.structure_sheaf();
    let z = cone_tw(&c, &TwMorphism::identity(&c, &o)).unwrap();
    let (r, _) = reduce(&c, &z);
    assert!(r.is_empty());
    let k = c.skyscraper(0).unwrap();
    assert_eq!(reduce(&c, &k).0, k);
}

#[test]
fn shifts_are_distinguished() {
    let c = NodalCurve::cycle(2).unwrap();
    let o = c.structure_sheaf();
    let cert = certify_iso(&c, &o, &o.shift(1), 0).unwrap();
    assert_eq!(cert.verdict, Verdict::NonIso);
    assert!(cert.mismatch.is_some());
}
