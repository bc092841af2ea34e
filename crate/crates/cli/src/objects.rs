//! Textual object names: `O`, `k(x1)`, `O(x2)`, `O(-x1)`, `L(1,1;1,2)`,
//! each optionally followed by a shift such as `[1]`.

use nodal_mirror::mcg_action::Object;
use nodal_mirror::nodalcurve::{LineBundleData, NodalCurve};

use crate::error::CliError;

fn point(s: &str, n: usize) -> Result<usize, CliError> {
    let i: usize = s
        .strip_prefix('x')
        .unwrap_or(s)
        .parse()
        .map_err(|_| CliError::Usage(format!("bad point '{s}'")))?;
    if i == 0 || i > n {
        return Err(CliError::Usage(format!("point x{i} out of range for n = {n}")));
    }
    Ok(i - 1)
}

pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad {what} entry '{x}'"))))
        .collect()
}

pub fn line(n: usize, deg: &str, glue: &str) -> Result<LineBundleData, CliError> {
    let l = LineBundleData::new(parse_list(deg, "degree")?, parse_list(glue, "glue")?)?;
    l.validate(n)?;
    Ok(l)
}

pub fn parse_object(curve: &NodalCurve, s: &str) -> Result<Object, CliError> {
    let s = s.trim();
    let (body, shift) = match s.strip_suffix(']').and_then(|t| t.rsplit_once('[')) {
        Some((b, k)) => (b, k.parse::<i32>().map_err(|_| CliError::Usage(format!("bad shift in '{s}'")))?),
        None => (s, 0),
    };
    let n = curve.n();
    let g = &curve.geometry;
    let obj = if body == "O" {
        curve.structure_sheaf()
    } else if let Some(p) = body.strip_prefix("k(").and_then(|t| t.strip_suffix(')')) {
        curve.skyscraper(point(p, n)?)?
    } else if let Some(p) = body.strip_prefix("O(-").and_then(|t| t.strip_suffix(')')) {
        curve.line(LineBundleData::minus_point(g, point(p, n)?))
    } else if let Some(p) = body.strip_prefix("O(").and_then(|t| t.strip_suffix(')')) {
        curve.line(LineBundleData::point(g, point(p, n)?))
    } else if let Some((deg, glue)) = body.strip_prefix("L(").and_then(|t| t.strip_suffix(')')).and_then(|t| t.split_once(';')) {
        curve.line(line(n, deg, glue)?)
    } else {
        return Err(CliError::Usage(format!("unknown object '{s}'")));
    };
    Ok(obj.shift(shift))
}
