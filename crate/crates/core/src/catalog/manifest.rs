//! Text manifests for models.
//!
//! ```text
//! schema = cproj-model/1
//! name = type2
//! n = 2
//!
//! [chart]
//! complex = 2
//!
//! [gamma]
//! 3,1,1 = x1
//!
//! [expected]
//! symmetry_dim = 8 @published
//! curvature = (1,1) @published
//!
//! [ansatz]
//! degree = 3
//!
//! [symmetries]
//! field = 0; 0; 1; 0 @published
//! ```
//!
//! Indices are 1-based. Lists of polynomials are separated by `;`, index
//! tuples by `,`. Every `[expected]` and `[symmetries]` entry needs a
//! provenance tag.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{
    AnsatzPlan, ChartSpec, ConnectionSource, Expectations, FrameSpec, ModelSpec, Provenance, RawModel, Tagged,
};
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, VarKind};
use crate::tensorcalc::{AlmostComplex, Chart, PolyTensor, Substitution, VectorField};

pub const SCHEMA: &str = "cproj-model/1";

const SECTIONS: [&str; 8] = ["chart", "J", "gamma", "metric", "frame", "expected", "ansatz", "symmetries"];

#[derive(Clone, Debug)]
struct Line {
    no: usize,
    key: String,
    value: String,
    /// 1-based column where `value` starts.
    col: usize,
}

impl Line {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.no,
            column: self.col,
            message: message.into(),
        }
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.no,
            column: self.col + offset,
            message: message.into(),
        }
    }

    /// Splits off a trailing provenance tag.
    fn tagged(&self) -> Result<(String, Provenance)> {
        let Some((body, tag)) = self.value.rsplit_once('@') else {
            return Err(Error::Untagged(self.key.clone()));
        };
        let tag = format!("@{}", tag.trim());
        let p = Provenance::from_tag(&tag)
            .ok_or_else(|| self.error_at(body.len(), format!("unknown provenance tag `{tag}`")))?;
        Ok((body.trim_end().to_string(), p))
    }
}

/// Trimmed pieces of `s` split at `sep`, with their byte offsets.
fn pieces(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in s.split(sep) {
        let lead = part.len() - part.trim_start().len();
        out.push((start + lead, part.trim()));
        start += part.len() + sep.len_utf8();
    }
    out
}

fn poly(chart: &Chart, line: &Line, offset: usize, text: &str) -> Result<LaurentPoly> {
    chart.parse(text).map_err(|e| match e {
        Error::Parse { column, message, .. } => line.error_at(offset + column - 1, message),
        other => line.error_at(offset, other.to_string()),
    })
}

fn indices(line: &Line, text: &str, count: usize, dim: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(line.error(format!("expected {count} indices")));
    }
    parts
        .iter()
        .map(|p| match p.parse::<usize>() {
            Ok(i) if (1..=dim).contains(&i) => Ok(i - 1),
            _ => Err(line.error(format!("index `{p}` is not in 1..={dim}"))),
        })
        .collect()
}

fn number<T: std::str::FromStr>(line: &Line, text: &str) -> Result<T> {
    text.trim()
        .parse::<T>()
        .map_err(|_| line.error(format!("`{}` is not a valid number", text.trim())))
}

fn boolean(line: &Line, text: &str) -> Result<bool> {
    match text {
        "true" => Ok(true),
        "false" => Ok(false),
        "zero" => Ok(true),
        "nonzero" => Ok(false),
        other => Err(line.error(format!("expected true or false, got `{other}`"))),
    }
}

fn word_list(text: &str) -> Vec<String> {
    if text == "none" {
        Vec::new()
    } else {
        text.split_whitespace().map(String::from).collect()
    }
}

fn split_lines(text: &str) -> Result<BTreeMap<String, Vec<Line>>> {
    let mut sections: BTreeMap<String, Vec<Line>> = BTreeMap::new();
    let mut current = String::new();
    sections.insert(current.clone(), Vec::new());
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            if !SECTIONS.contains(&name) {
                return Err(Error::Parse {
                    line: no,
                    column: 1,
                    message: format!("unknown section `[{name}]`"),
                });
            }
            if sections.contains_key(name) {
                return Err(Error::Parse {
                    line: no,
                    column: 1,
                    message: format!("section `[{name}]` appears twice"),
                });
            }
            current = name.to_string();
            sections.insert(current.clone(), Vec::new());
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(Error::Parse {
                line: no,
                column: 1,
                message: "expected `key = value`".into(),
            });
        };
        let after = &content[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        sections.get_mut(&current).expect("current section exists").push(Line {
            no,
            key: content[..eq].trim().to_string(),
            value: after.trim().to_string(),
            col: eq + 2 + lead,
        });
    }
    Ok(sections)
}

fn missing(what: &str) -> Error {
    Error::Parse {
        line: 0,
        column: 0,
        message: format!("missing {what}"),
    }
}

fn parse_chart(lines: &[Line]) -> Result<ChartSpec> {
    let mut complex = None;
    let mut coordinates = None;
    let mut denominators = Vec::new();
    let mut substitution = None;
    for l in lines {
        match l.key.as_str() {
            "complex" => complex = Some(number::<usize>(l, &l.value)?),
            "coordinates" => {
                let mut coords = Vec::new();
                for (_, c) in pieces(&l.value, ',') {
                    let (name, kind) = match c.split_once(':') {
                        Some((n, "laurent")) => (n.trim(), VarKind::Laurent),
                        Some((_, k)) => return Err(l.error(format!("unknown variable kind `{k}`"))),
                        None => (c, VarKind::Ordinary),
                    };
                    coords.push((name.to_string(), kind));
                }
                coordinates = Some(coords);
            }
            "denominators" => {
                denominators = pieces(&l.value, ',').into_iter().map(|(_, d)| d.to_string()).collect();
            }
            "substitution" => {
                let (original, image) = l
                    .value
                    .split_once('=')
                    .ok_or_else(|| l.error("expected `original = replacement^power`"))?;
                let (replacement, power) = image.split_once('^').unwrap_or((image, "1"));
                substitution = Some(Substitution {
                    original: original.trim().to_string(),
                    replacement: replacement.trim().to_string(),
                    power: number(l, power)?,
                });
            }
            other => return Err(l.error(format!("unknown chart key `{other}`"))),
        }
    }
    match (complex, coordinates) {
        (Some(n), None) if substitution.is_none() => Ok(ChartSpec::Complex { n, denominators }),
        (None, Some(coordinates)) => Ok(ChartSpec::Real {
            coordinates,
            denominators,
            substitution,
        }),
        _ => Err(missing("chart: give either `complex = n` or `coordinates`")),
    }
}

fn parse_entries(chart: &Chart, lines: &[Line], upper: usize, lower: usize) -> Result<PolyTensor> {
    let dim = chart.dim();
    let mut t = PolyTensor::zeros(chart.ring(), dim, upper, lower);
    for l in lines {
        let idx = indices(l, &l.key, upper + lower, dim)?;
        t.set(&idx, poly(chart, l, 0, &l.value)?);
    }
    Ok(t)
}

fn parse_frame(lines: &[Line], dim: usize) -> Result<FrameSpec> {
    let mut vectors = Vec::new();
    let mut j = Vec::new();
    let mut omega = Vec::new();
    let mut complete = Vec::new();
    for l in lines {
        if let Some(idx) = l.key.strip_prefix("omega") {
            let idx = indices(l, idx, 3, dim)?;
            omega.push((idx[0], idx[1], idx[2], l.value.clone()));
            continue;
        }
        match l.key.as_str() {
            "vector" => vectors.push(pieces(&l.value, ';').into_iter().map(|(_, s)| s.to_string()).collect()),
            "j" => j.push(
                pieces(&l.value, ',')
                    .into_iter()
                    .map(|(_, s)| number::<i64>(l, s))
                    .collect::<Result<Vec<_>>>()?,
            ),
            "complete" => complete = indices(l, &l.value, pieces(&l.value, ',').len(), dim)?,
            other => return Err(l.error(format!("unknown frame key `{other}`"))),
        }
    }
    Ok(FrameSpec {
        vectors,
        j,
        omega,
        complete,
    })
}

fn parse_expected(lines: &[Line]) -> Result<Expectations> {
    let mut e = Expectations::default();
    for l in lines {
        let (body, p) = l.tagged()?;
        let dim = || number::<usize>(l, &body).map(|v| Some(Tagged::new(v, p)));
        let flag = || boolean(l, &body).map(|v| Some(Tagged::new(v, p)));
        let list = || Some(Tagged::new(word_list(&body), p));
        match l.key.as_str() {
            "symmetry_dim" => e.symmetry_dim = dim()?,
            "curvature" => e.curvature = list(),
            "nijenhuis" => e.nijenhuis_zero = flag()?,
            "torsion" => e.torsion_zero = flag()?,
            "minimal" => e.minimal = flag()?,
            "kappa4" => e.kappa4_zero = flag()?,
            "torsion_parts" => e.torsion_parts = list(),
            "all_affine" => e.all_affine = flag()?,
            "mobility_dim" => e.mobility_dim = dim()?,
            "isometry_dim" => e.isometry_dim = dim()?,
            "homothety_dim" => e.homothety_dim = dim()?,
            "kahler" => e.kahler = flag()?,
            "definite" => e.definite = flag()?,
            "same_connection_as" => e.same_connection_as = Some(Tagged::new(body.clone(), p)),
            other => return Err(l.error(format!("unknown expectation `{other}`"))),
        }
    }
    Ok(e)
}

fn parse_ansatz(lines: &[Line]) -> Result<AnsatzPlan> {
    let mut plan = AnsatzPlan::new(0);
    let mut degree = None;
    for l in lines {
        match l.key.as_str() {
            "degree" => degree = Some(number(l, &l.value)?),
            "mobility_degree" => plan.mobility_degree = Some(number(l, &l.value)?),
            "range" => {
                let p = pieces(&l.value, ',');
                let [(_, var), (_, lo), (_, hi)] = p.as_slice() else {
                    return Err(l.error("expected `range = variable, low, high`"));
                };
                plan.ranges.push((var.to_string(), number(l, lo)?, number(l, hi)?));
            }
            other => return Err(l.error(format!("unknown ansatz key `{other}`"))),
        }
    }
    plan.degree = degree.ok_or_else(|| missing("ansatz degree"))?;
    Ok(plan)
}

fn parse_symmetries(chart: &Chart, lines: &[Line]) -> Result<Vec<Tagged<VectorField>>> {
    let mut out = Vec::new();
    for l in lines {
        if l.key != "field" {
            return Err(l.error(format!("unknown symmetry key `{}`", l.key)));
        }
        let (body, p) = l.tagged()?;
        let comps = pieces(&body, ';')
            .into_iter()
            .map(|(off, s)| poly(chart, l, off, s))
            .collect::<Result<Vec<_>>>()?;
        if comps.len() != chart.dim() {
            return Err(l.error(format!("field has {} components, chart has {}", comps.len(), chart.dim())));
        }
        out.push(Tagged::new(VectorField(comps), p));
    }
    Ok(out)
}

pub fn parse_manifest(text: &str) -> Result<ModelSpec> {
    let sections = split_lines(text)?;
    let header = &sections[""];
    let mut schema = None;
    let mut name = None;
    let mut n = None;
    for l in header {
        match l.key.as_str() {
            "schema" => schema = Some(l.value.clone()),
            "name" => name = Some(l.value.clone()),
            "n" => n = Some(number::<usize>(l, &l.value)?),
            other => return Err(l.error(format!("unknown header key `{other}`"))),
        }
    }
    match schema.as_deref() {
        Some(SCHEMA) => {}
        Some(other) => return Err(Error::InvalidModel(format!("unsupported schema `{other}`"))),
        None => return Err(missing("schema")),
    }
    let name = name.ok_or_else(|| missing("name"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let chart_spec = parse_chart(sections.get("chart").ok_or_else(|| missing("[chart]"))?)?;
    let chart = chart_spec.build()?;
    if chart.n() != n {
        return Err(Error::InvalidModel(format!("chart has complex dimension {}, header says {n}", chart.n())));
    }
    let j = sections
        .get("J")
        .map(|l| parse_entries(&chart, l, 1, 1).and_then(AlmostComplex::new))
        .transpose()?;
    let gamma = sections.get("gamma").map(|l| parse_entries(&chart, l, 1, 2)).transpose()?;
    let metric = sections.get("metric").map(|l| parse_entries(&chart, l, 0, 2)).transpose()?;
    let frame = sections.get("frame").map(|l| parse_frame(l, chart.dim())).transpose()?;
    let expected = parse_expected(sections.get("expected").map(Vec::as_slice).unwrap_or(&[]))?;
    let ansatz = parse_ansatz(sections.get("ansatz").ok_or_else(|| missing("[ansatz]"))?)?;
    let symmetries = parse_symmetries(&chart, sections.get("symmetries").map(Vec::as_slice).unwrap_or(&[]))?;
    RawModel {
        name,
        n,
        chart_spec,
        chart,
        j,
        gamma,
        metric,
        frame,
        expected,
        ansatz,
        symmetries,
    }
    .resolve()
}

fn print_tensor(out: &mut String, t: &PolyTensor) {
    for (idx, v) in t.iter() {
        let idx: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(out, "{} = {v}", idx.join(","));
    }
}

fn print_tagged<T>(out: &mut String, key: &str, t: &Option<Tagged<T>>, show: impl Fn(&T) -> String) {
    if let Some(t) = t {
        let _ = writeln!(out, "{key} = {} {}", show(&t.value), t.provenance);
    }
}

fn show_list(v: &[String]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(" ")
    }
}

pub fn print_manifest(m: &ModelSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "schema = {SCHEMA}\nname = {}\nn = {}\n", m.name, m.n);
    out.push_str("[chart]\n");
    match &m.chart_spec {
        ChartSpec::Complex { n, denominators } => {
            let _ = writeln!(out, "complex = {n}");
            if !denominators.is_empty() {
                let _ = writeln!(out, "denominators = {}", denominators.join(", "));
            }
        }
        ChartSpec::Real {
            coordinates,
            denominators,
            substitution,
        } => {
            let coords: Vec<String> = coordinates
                .iter()
                .map(|(c, k)| match k {
                    VarKind::Laurent => format!("{c}:laurent"),
                    VarKind::Ordinary => c.clone(),
                })
                .collect();
            let _ = writeln!(out, "coordinates = {}", coords.join(", "));
            if !denominators.is_empty() {
                let _ = writeln!(out, "denominators = {}", denominators.join(", "));
            }
            if let Some(s) = substitution {
                let _ = writeln!(out, "substitution = {} = {}^{}", s.original, s.replacement, s.power);
            }
        }
    }
    match &m.source {
        ConnectionSource::Frame(f) => {
            out.push_str("\n[frame]\n");
            for v in &f.vectors {
                let _ = writeln!(out, "vector = {}", v.join("; "));
            }
            for row in &f.j {
                let r: Vec<String> = row.iter().map(i64::to_string).collect();
                let _ = writeln!(out, "j = {}", r.join(", "));
            }
            for (a, b, c, v) in &f.omega {
                let _ = writeln!(out, "omega {},{},{} = {v}", a + 1, b + 1, c + 1);
            }
            if !f.complete.is_empty() {
                let c: Vec<String> = f.complete.iter().map(|i| (i + 1).to_string()).collect();
                let _ = writeln!(out, "complete = {}", c.join(", "));
            }
        }
        source => {
            out.push_str("\n[J]\n");
            print_tensor(&mut out, m.j.tensor());
            if *source == ConnectionSource::Symbols {
                out.push_str("\n[gamma]\n");
                print_tensor(&mut out, m.connection.symbols());
            }
        }
    }
    if let Some(g) = &m.metric {
        out.push_str("\n[metric]\n");
        print_tensor(&mut out, g);
    }
    let e = &m.expected;
    out.push_str("\n[expected]\n");
    let num = |v: &usize| v.to_string();
    let zero = |v: &bool| if *v { "zero".into() } else { "nonzero".into() };
    let flag = |v: &bool| v.to_string();
    print_tagged(&mut out, "symmetry_dim", &e.symmetry_dim, num);
    print_tagged(&mut out, "curvature", &e.curvature, |v| show_list(v));
    print_tagged(&mut out, "nijenhuis", &e.nijenhuis_zero, zero);
    print_tagged(&mut out, "torsion", &e.torsion_zero, zero);
    print_tagged(&mut out, "minimal", &e.minimal, flag);
    print_tagged(&mut out, "kappa4", &e.kappa4_zero, zero);
    print_tagged(&mut out, "torsion_parts", &e.torsion_parts, |v| show_list(v));
    print_tagged(&mut out, "all_affine", &e.all_affine, flag);
    print_tagged(&mut out, "mobility_dim", &e.mobility_dim, num);
    print_tagged(&mut out, "isometry_dim", &e.isometry_dim, num);
    print_tagged(&mut out, "homothety_dim", &e.homothety_dim, num);
    print_tagged(&mut out, "kahler", &e.kahler, flag);
    print_tagged(&mut out, "definite", &e.definite, flag);
    print_tagged(&mut out, "same_connection_as", &e.same_connection_as, String::clone);
    out.push_str("\n[ansatz]\n");
    let _ = writeln!(out, "degree = {}", m.ansatz.degree);
    for (v, lo, hi) in &m.ansatz.ranges {
        let _ = writeln!(out, "range = {v}, {lo}, {hi}");
    }
    if let Some(d) = m.ansatz.mobility_degree {
        let _ = writeln!(out, "mobility_degree = {d}");
    }
    if !m.symmetries.is_empty() {
        out.push_str("\n[symmetries]\n");
        for f in &m.symmetries {
            let comps: Vec<String> = f.value.0.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "field = {} {}", comps.join("; "), f.provenance);
        }
    }
    out
}
