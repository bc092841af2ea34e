//! `nodal-mirror`: cohomology, twists, relation batteries and mirror
//! comparisons from the command line. All output is JSON; `--pretty`
//! renders the same data for people.

mod error;
mod objects;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nodal_mirror::cpm_mirror::{mirror_table, mirror_twisted, CpmCategory, MirrorRow};
use nodal_mirror::dgtwist::{hom_dims, TwistedComplex, DEFAULT_SEED};
use nodal_mirror::homlin::{Cohomology, Scalar};
use nodal_mirror::mcg_action::{
    check_braid, check_g_relation, default_battery, evaluate_word, BatteryItem, McgWord, Object, Outcome, RelationReport,
};
use nodal_mirror::nodalcurve::{rhom_line, LineBundleData, NodalCurve};
use serde::Serialize;
use serde_json::{json, Value};

use error::CliError;
use objects::{line, parse_object};

#[derive(Parser)]
#[command(name = "nodal-mirror", version, about = "Exact computations on cycles of projective lines and their mirrors")]
struct Cli {
    /// Seed for randomized certificate searches.
    #[arg(long, global = true, env = "NODAL_MIRROR_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Human-readable rendering of the same data.
    #[arg(long, global = true)]
    pretty: bool,
    /// Also write the JSON output to this file.
    #[arg(long, global = true)]
    save: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology of a line bundle, `{"h": [h0, h1]}`.
    Cohomology {
        #[arg(long)]
        n: usize,
        /// Multidegree, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        deg: String,
        /// Gluing scalars, comma separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        glue: String,
    },
    /// Cohomology of the hom complex between two objects.
    Hom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Applies a word in `a`, `b1..bn`, `t` (with `^-1`) to an object.
    Twist {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "O", conflicts_with = "load")]
        object: String,
        /// Read the object from a file written by `--save`.
        #[arg(long)]
        load: Option<PathBuf>,
    },
    /// Verifies a relation of the mapping class group object-wise.
    Relations {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        relation: Relation,
        /// Battery objects; the default battery when omitted.
        #[arg(long = "object")]
        objects: Vec<String>,
    },
    /// Compares hom dimensions on the curve and the plumbing side.
    Mirror {
        #[arg(long)]
        n: usize,
        #[arg(long = "object")]
        objects: Vec<String>,
        /// Test hook: tamper with the glue of `O` in source position.
        #[arg(long, hide = true)]
        corrupt_glue: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Relation {
    Braid,
    GTilde,
}

/// JSON value plus the exit code it implies.
struct Output {
    value: Value,
    pretty: Option<String>,
    code: u8,
}

impl Output {
    fn ok(value: Value) -> Output {
        Output { value, pretty: None, code: 0 }
    }
}

fn h_vector(h: &Cohomology) -> Vec<usize> {
    (0..2).map(|k| h.get(&k).copied().unwrap_or(0)).collect()
}

fn curve(n: usize) -> Result<NodalCurve, CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    Ok(NodalCurve::cycle(n)?)
}

fn battery(c: &NodalCurve, names: &[String]) -> Result<Vec<BatteryItem>, CliError> {
    if names.is_empty() {
        return Ok(default_battery(c)?);
    }
    names.iter().map(|s| Ok(BatteryItem::new(s.clone(), parse_object(c, s)?))).collect()
}

/// Hom dimensions between an object and the test objects `O`, `κ(x_i)`,
/// which determine it among the objects this tool produces.
fn fingerprint(c: &NodalCurve, f: &Object) -> Result<BTreeMap<String, Cohomology>, CliError> {
    let mut out = BTreeMap::new();
    out.insert("end".into(), hom_dims(c, f, f)?);
    let o = c.structure_sheaf();
    out.insert("from O".into(), hom_dims(c, &o, f)?);
    out.insert("to O".into(), hom_dims(c, f, &o)?);
    for i in 0..c.n() {
        let k = c.skyscraper(i)?;
        out.insert(format!("from k(x{})", i + 1), hom_dims(c, &k, f)?);
        out.insert(format!("to k(x{})", i + 1), hom_dims(c, f, &k)?);
    }
    Ok(out)
}

fn relations_table(r: &RelationReport) -> String {
    let mut s = format!("{} on X_{}: {:?}\n({})\n", r.relation, r.n, r.outcome, r.scope);
    for (title, rows) in [("checks", &r.checks), ("intermediates", &r.intermediates)] {
        if rows.is_empty() {
            continue;
        }
        s += &format!("{title}:\n");
        for c in rows {
            s += &format!("  {:<28} {:<10} {:?}\n", c.identity, c.object, c.certificate.verdict);
        }
    }
    s
}

fn show(h: &Cohomology) -> String {
    serde_json::to_string(h).expect("cohomology serializes")
}

fn mirror_pretty(rows: &[MirrorRow]) -> String {
    let mut s = format!("{:<10} {:<10} {:<16} {:<16} match\n", "source", "target", "curve", "mirror");
    for r in rows {
        s += &format!("{:<10} {:<10} {:<16} {:<16} {}\n", r.source, r.target, show(&r.curve), show(&r.mirror), r.matches);
    }
    s
}

fn load_object(path: &PathBuf) -> Result<Object, CliError> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let v = v.get("object").cloned().unwrap_or(v);
    Ok(serde_json::from_value(v)?)
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Cohomology { n, deg, glue } => {
            let c = curve(*n)?;
            let l = line(*n, deg, glue)?;
            let h = rhom_line(&c.geometry, &LineBundleData::trivial(&c.geometry), &l)?.cohomology();
            Ok(Output::ok(json!({ "h": h_vector(&h) })))
        }
        Command::Hom { n, source, target } => {
            let c = curve(*n)?;
            let (a, b) = (parse_object(&c, source)?, parse_object(&c, target)?);
            Ok(Output::ok(json!({ "h": hom_dims(&c, &a, &b)? })))
        }
        Command::Twist { n, word, object, load } => {
            let c = curve(*n)?;
            let w: McgWord = word.parse()?;
            let f = match load {
                // loaded objects are untrusted: re-check the Maurer–Cartan equation
                Some(p) => {
                    let raw = load_object(p)?;
                    TwistedComplex::new(&c, raw.entries().to_vec(), raw.mc().clone())
                        .map_err(|e| CliError::Usage(format!("loaded object is invalid: {e}")))?
                }
                None => parse_object(&c, object)?,
            };
            let img = evaluate_word(&c, &w, &f)?;
            Ok(Output::ok(json!({
                "n": n,
                "word": w,
                "fingerprint": fingerprint(&c, &img)?,
                "object": img,
            })))
        }
        Command::Relations { n, relation, objects } => {
            let c = curve(*n)?;
            if matches!(relation, Relation::GTilde) && *n != 2 {
                return Err(CliError::Usage(format!("the g-tilde relation needs n = 2, got {n}")));
            }
            let bat = battery(&c, objects)?;
            let report = match relation {
                Relation::Braid => check_braid(&c, &bat, cli.seed)?,
                Relation::GTilde => check_g_relation(&c, &bat, cli.seed)?,
            };
            let code = match report.outcome {
                Outcome::Pass => 0,
                Outcome::Fail => 1,
                Outcome::Undetermined => 3,
            };
            Ok(Output {
                pretty: Some(relations_table(&report)),
                value: serde_json::to_value(&report)?,
                code,
            })
        }
        Command::Mirror { n, objects, corrupt_glue } => {
            let c = curve(*n)?;
            let m = CpmCategory::new(c.geometry);
            let items: Vec<(String, Object)> = battery(&c, objects)?.into_iter().map(|b| (b.label, b.object)).collect();
            let images = items.iter().map(|(_, o)| mirror_twisted(&c, &m, o)).collect::<Result<Vec<_>, _>>()?;
            let mut sources = images.clone();
            if *corrupt_glue {
                let o = c.structure_sheaf();
                let mut bad = LineBundleData::trivial(&c.geometry);
                bad.glue[0] = Scalar::int(2);
                for (s, (_, obj)) in sources.iter_mut().zip(&items) {
                    if *obj == o {
                        *s = TwistedComplex::generator(bad.clone());
                    }
                }
            }
            let rows = mirror_table(&c, &m, &items, &sources, &images)?;
            let all = rows.iter().all(|r| r.matches);
            Ok(Output {
                pretty: Some(mirror_pretty(&rows)),
                value: json!({ "n": n, "rows": rows, "all_match": all }),
                code: if all { 0 } else { 1 },
            })
        }
    }
}

fn emit<T: Serialize>(v: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("output serializes")
    } else {
        serde_json::to_string(v).expect("output serializes")
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn say(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            say(&json!({ "error": { "kind": "usage", "message": e.to_string() } }).to_string());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = emit(&out.value, false);
            if let Some(p) = &cli.save {
                if let Err(e) = std::fs::write(p, &text) {
                    say(&json!({ "error": { "kind": "io", "message": e.to_string() } }).to_string());
                    return ExitCode::from(2);
                }
            }
            match (cli.pretty, out.pretty) {
                (true, Some(p)) => say(p.trim_end()),
                (true, None) => say(&emit(&out.value, true)),
                (false, _) => say(&text),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            say(&json!({ "error": { "kind": e.kind(), "message": e.to_string() } }).to_string());
            ExitCode::from(e.exit_code())
        }
    }
}
