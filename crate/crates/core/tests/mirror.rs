use nodal_mirror::cpm_mirror::{mirror_table, mirror_twisted, CpmCategory};
use nodal_mirror::dgtwist::TwistedComplex;
use nodal_mirror::homlin::Scalar;
use nodal_mirror::mcg_action::default_battery;
use nodal_mirror::nodalcurve::{LineBundleData, NodalCurve};

fn battery(c: &NodalCurve) -> Vec<(String, TwistedComplex<LineBundleData>)> {
    default_battery(c).unwrap().into_iter().map(|b| (b.label, b.object)).collect()
}

#[test]
fn default_battery_matches() {
    for n in 1..4 {
        let c = NodalCurve::cycle(n).unwrap();
        let m = CpmCategory::new(c.geometry);
        let objs = battery(&c);
        let images: Vec<_> = objs.iter().map(|(_, o)| mirror_twisted(&c, &m, o).unwrap()).collect();
        let rows = mirror_table(&c, &m, &objs, &images, &images).unwrap();
        assert_eq!(rows.len(), objs.len() * objs.len());
        for r in &rows {
            assert!(r.matches, "n = {n}: {r:?}");
        }
    }
}

#[test]
fn corrupted_glue_is_caught() {
    let c = NodalCurve::cycle(2).unwrap();
    let m = CpmCategory::new(c.geometry);
    let objs = battery(&c);
    let images: Vec<_> = objs.iter().map(|(_, o)| mirror_twisted(&c, &m, o).unwrap()).collect();
    let mut bad = LineBundleData::trivial(&c.geometry);
    bad.glue[0] = Scalar::int(2);
    let mut sources = images.clone();
    sources[0] = TwistedComplex::generator(bad);
    let rows = mirror_table(&c, &m, &objs, &sources, &images).unwrap();
    let wrong: Vec<_> = rows.iter().filter(|r| !r.matches).map(|r| (r.source.as_str(), r.target.as_str())).collect();
    assert_eq!(wrong, [("O", "O")]);
}
