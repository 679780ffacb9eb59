//! Text form of structure constants.
//!
//! ```text
//! algebra = s
//! labels = e1, e2, e3
//! params = lambda
//! grading = 0, 1, -1
//! parity = +, -, -
//! bracket [e1,e2] = 2*e2
//! ```

use std::collections::BTreeMap;

use super::{Parity, StructAlgebra};
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Ring, Terms};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: 1,
        message: message.into(),
    }
}

fn list(value: &str) -> Vec<&str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

pub fn parse_algebra(text: &str) -> Result<StructAlgebra> {
    let mut name = String::from("algebra");
    let mut labels: Vec<String> = Vec::new();
    let mut params: Vec<String> = Vec::new();
    let mut grading = None;
    let mut parity = None;
    let mut brackets = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("bracket") {
            brackets.push((line_no, rest.trim().to_string()));
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_error(line_no, "expected `key = value`"))?;
        let value = value.trim();
        match key.trim() {
            "algebra" => name = value.to_string(),
            "labels" => labels = list(value).into_iter().map(String::from).collect(),
            "params" => params = list(value).into_iter().map(String::from).collect(),
            "grading" => {
                let g: std::result::Result<Vec<i32>, _> = list(value).iter().map(|s| s.parse::<i32>()).collect();
                grading = Some(g.map_err(|_| parse_error(line_no, "grading entries must be integers"))?);
            }
            "parity" => {
                let mut p = Vec::new();
                for s in list(value) {
                    p.push(match s {
                        "+" => Parity::Even,
                        "-" => Parity::Odd,
                        _ => return Err(parse_error(line_no, "parity entries are `+` or `-`")),
                    });
                }
                parity = Some(p);
            }
            other => return Err(parse_error(line_no, format!("unknown key `{other}`"))),
        }
    }
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let param_refs: Vec<&str> = params.iter().map(String::as_str).collect();
    if let Some(p) = params.iter().find(|p| labels.contains(p)) {
        return Err(Error::InvalidModel(format!("`{p}` is both a label and a parameter")));
    }
    let mut a = StructAlgebra::with_params(&name, &label_refs, &param_refs);
    let mut all: Vec<&str> = param_refs.clone();
    all.extend(&label_refs);
    let joint = Ring::polynomial(&all);
    let np = params.len();
    for (line_no, rel) in brackets {
        let (lhs, rhs) = rel
            .split_once('=')
            .ok_or_else(|| parse_error(line_no, "expected `[x,y] = value`"))?;
        let inner = lhs
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| parse_error(line_no, "expected `[x,y]`"))?;
        let (x, y) = inner.split_once(',').ok_or_else(|| parse_error(line_no, "expected `[x,y]`"))?;
        let i = a.index(x.trim())?;
        let j = a.index(y.trim())?;
        let value = LaurentPoly::parse(&joint, rhs).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::Parse {
                line: line_no,
                column,
                message,
            },
            other => other,
        })?;
        let mut by_label: BTreeMap<usize, Terms> = BTreeMap::new();
        for (exps, c) in value.terms() {
            let label_exps = &exps[np..];
            let deg: i32 = label_exps.iter().sum();
            let k = label_exps.iter().position(|&e| e == 1);
            match (deg, k) {
                (1, Some(k)) => {
                    by_label
                        .entry(k)
                        .or_default()
                        .insert(exps[..np].iter().copied().collect(), c.clone());
                }
                _ => return Err(parse_error(line_no, "bracket value must be linear in the basis labels")),
            }
        }
        let v = by_label
            .into_iter()
            .map(|(k, t)| (k, LaurentPoly::from_terms(a.params(), t)))
            .collect();
        a.set_bracket(i, j, v)?;
    }
    if let Some(g) = grading {
        a.set_grading(g)?;
    }
    if let Some(p) = parity {
        a.set_parity(p)?;
    }
    Ok(a)
}

pub fn print_algebra(a: &StructAlgebra) -> String {
    let mut out = format!("algebra = {}\nlabels = {}\n", a.name(), a.labels().join(", "));
    if !a.params().is_empty() {
        out.push_str(&format!("params = {}\n", a.params().names().join(", ")));
    }
    if let Some(g) = a.grading() {
        let g: Vec<String> = g.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("grading = {}\n", g.join(", ")));
    }
    if let Some(p) = a.parity() {
        let p: Vec<&str> = p
            .iter()
            .map(|x| match x {
                Parity::Even => "+",
                Parity::Odd => "-",
            })
            .collect();
        out.push_str(&format!("parity = {}\n", p.join(", ")));
    }
    for (&(i, j), v) in a.structure_constants() {
        out.push_str(&format!(
            "bracket [{},{}] = {}\n",
            a.labels()[i],
            a.labels()[j],
            a.describe_vector(v)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structlie::{builtin, builtin_names};

    #[test]
    fn builtins_round_trip() {
        for name in builtin_names() {
            let a = builtin(name).unwrap();
            let text = print_algebra(&a);
            let b = parse_algebra(&text).unwrap();
            assert!(a.same_structure(&b), "{name}:\n{text}");
            assert_eq!(a.grading(), b.grading());
            assert_eq!(a.parity(), b.parity());
        }
    }

    #[test]
    fn rejects_nonlinear_values() {
        let text = "labels = x, y\nbracket [x,y] = x*y\n";
        assert!(matches!(parse_algebra(text), Err(Error::Parse { line: 2, .. })));
    }
}
