use super::{AnsatzPlan, ChartSpec, Expectations, FrameSpec, ModelSpec, Provenance, RawModel, Tagged};
use crate::error::{Error, Result};
use crate::exact::VarKind;
use crate::tensorcalc::complex::{complex_field, expand, hermitian_metric, CIndex, ComplexTerm};
use crate::tensorcalc::{AlmostComplex, Chart, PolyTensor, Substitution, VectorField};

use Provenance::{Derived, Elementary, Published};

pub const MODEL_NAMES: [&str; 9] = [
    "flat",
    "type1",
    "type1-n2",
    "type2",
    "type3",
    "type3-n2",
    "nonminimal",
    "submax-metric",
    "cp1xc",
];

fn z(k: usize) -> CIndex {
    CIndex::z(k - 1)
}

fn zb(k: usize) -> CIndex {
    CIndex::zb(k - 1)
}

fn tag<T>(value: T, p: Provenance) -> Option<Tagged<T>> {
    Some(Tagged::new(value, p))
}

fn types(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn incompatible(name: &str, n: usize) -> Error {
    Error::IncompatibleModel { name: name.into(), n }
}

fn complex_chart(n: usize, denominators: &[&str]) -> Result<(ChartSpec, Chart)> {
    let spec = ChartSpec::Complex {
        n,
        denominators: denominators.iter().map(|s| s.to_string()).collect(),
    };
    let chart = spec.build()?;
    Ok((spec, chart))
}

/// Collects real and imaginary parts of complex fields `Σ f_A ∂_{Z^A}`.
struct FieldList<'a> {
    chart: &'a Chart,
    out: Vec<VectorField>,
}

impl<'a> FieldList<'a> {
    fn new(chart: &'a Chart) -> Self {
        FieldList { chart, out: Vec::new() }
    }

    fn parts(&self, parts: &[(CIndex, &str)]) -> Result<(VectorField, VectorField)> {
        let parsed = parts
            .iter()
            .map(|(c, s)| Ok((*c, self.chart.parse(s)?)))
            .collect::<Result<Vec<_>>>()?;
        complex_field(self.chart, &parsed)
    }

    fn both(&mut self, parts: &[(CIndex, &str)]) -> Result<()> {
        let (re, im) = self.parts(parts)?;
        self.out.push(re);
        self.out.push(im);
        Ok(())
    }

    fn real(&mut self, parts: &[(CIndex, &str)]) -> Result<()> {
        let (re, _) = self.parts(parts)?;
        self.out.push(re);
        Ok(())
    }

    /// A real field from components against the chart's original coordinates.
    fn original(&mut self, comps: &[&str]) -> Result<()> {
        let parsed = comps.iter().map(|s| self.chart.parse(s)).collect::<Result<Vec<_>>>()?;
        self.out.push(self.chart.vector_from_original(parsed)?);
        Ok(())
    }
}

/// `Γ^i_{jk}` from complex symbols, symmetrized in the lower pair, plus conjugates.
fn symmetric_symbols(chart: &Chart, entries: &[(&str, CIndex, CIndex, CIndex)]) -> Result<PolyTensor> {
    let mut terms = Vec::new();
    for (c, i, j, k) in entries {
        let coeff = chart.parse(c)?;
        terms.push(ComplexTerm::new(coeff.clone(), vec![*i], vec![*j, *k]));
        if j != k {
            terms.push(ComplexTerm::new(coeff, vec![*i], vec![*k, *j]));
        }
    }
    expand(chart, &terms, true)
}

fn hermitian(chart: &Chart, entries: &[(usize, usize, &str)]) -> Result<PolyTensor> {
    let parsed = entries
        .iter()
        .map(|(k, l, s)| Ok((*k, *l, chart.parse(s)?)))
        .collect::<Result<Vec<_>>>()?;
    hermitian_metric(chart, &parsed)
}

fn raw(name: &str, n: usize, spec: ChartSpec, chart: Chart, ansatz: AnsatzPlan) -> RawModel {
    RawModel {
        name: name.into(),
        n,
        chart_spec: spec,
        chart,
        j: None,
        gamma: None,
        metric: None,
        frame: None,
        expected: Expectations::default(),
        ansatz,
        symmetries: Vec::new(),
    }
}

fn integrable_torsion_free(e: &mut Expectations) {
    e.nijenhuis_zero = tag(true, Elementary);
    e.torsion_zero = tag(true, Elementary);
    e.minimal = tag(true, Elementary);
    e.kappa4_zero = tag(true, Elementary);
    e.torsion_parts = tag(Vec::new(), Elementary);
}

fn attach(model: &mut RawModel, fields: Vec<VectorField>, p: Provenance) {
    model.symmetries = fields.into_iter().map(|v| Tagged::new(v, p)).collect();
}

/// Built-in model `name` in complex dimension `n`.
pub fn builtin(name: &str, n: usize) -> Result<ModelSpec> {
    match name {
        "submax-metric" => submax_metric(n, &vec![1; n.saturating_sub(2)]),
        _ => {
            let mut model = skeleton(name, n)?;
            let (fields, p) = fields_for(name, n, &model.chart)?;
            attach(&mut model, fields, p);
            model.resolve()
        }
    }
}

/// The pseudo-Kähler metric `|z1|² dz1 dz̄1 + dz1 dz̄2 + dz̄1 dz2 + Σ ε_k dz_k dz̄_k`.
pub fn submax_metric(n: usize, signs: &[i64]) -> Result<ModelSpec> {
    if n < 2 {
        return Err(incompatible("submax-metric", n));
    }
    if signs.len() != n - 2 || signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::InvalidModel(format!("need {} signs of ±1", n - 2)));
    }
    let (spec, chart) = complex_chart(n, &[])?;
    let mut ansatz = AnsatzPlan::new(3);
    ansatz.mobility_degree = Some(2);
    let mut model = raw("submax-metric", n, spec, chart, ansatz);
    let mut entries: Vec<(usize, usize, String)> = vec![(0, 0, "z1*zb1".into()), (0, 1, "1".into()), (1, 0, "1".into())];
    entries.extend(signs.iter().enumerate().map(|(i, s)| (i + 2, i + 2, s.to_string())));
    let refs: Vec<(usize, usize, &str)> = entries.iter().map(|(k, l, s)| (*k, *l, s.as_str())).collect();
    model.metric = Some(hermitian(&model.chart, &refs)?);
    let e = &mut model.expected;
    e.symmetry_dim = tag(2 * (n * n - n + 2), Published);
    e.curvature = tag(types(&["(1,1)"]), Published);
    integrable_torsion_free(e);
    e.mobility_dim = tag((n - 1) * (n - 1) + 1, Published);
    if n == 2 {
        e.isometry_dim = tag(6, Published);
        e.homothety_dim = tag(7, Derived);
    }
    e.kahler = tag(true, Published);
    e.definite = tag(false, Published);
    e.same_connection_as = tag("type2".to_string(), Published);
    let fields = type2_fields(&model.chart, n)?;
    attach(&mut model, fields, Published);
    model.resolve()
}

fn skeleton(name: &str, n: usize) -> Result<RawModel> {
    match name {
        "flat" => {
            if n < 2 {
                return Err(incompatible(name, n));
            }
            let (spec, chart) = complex_chart(n, &[])?;
            let mut ansatz = AnsatzPlan::new(3);
            ansatz.mobility_degree = Some(2);
            let mut m = raw(name, n, spec, chart, ansatz);
            let entries: Vec<(usize, usize, &str)> = (0..n).map(|k| (k, k, "1")).collect();
            m.metric = Some(hermitian(&m.chart, &entries)?);
            let e = &mut m.expected;
            e.symmetry_dim = tag(2 * n * n + 4 * n, Published);
            e.curvature = tag(Vec::new(), Elementary);
            integrable_torsion_free(e);
            e.mobility_dim = tag((n + 1) * (n + 1), Published);
            e.kahler = tag(true, Elementary);
            e.definite = tag(true, Elementary);
            Ok(m)
        }
        "type1" => {
            if n < 3 {
                return Err(incompatible(name, n));
            }
            let (spec, chart) = complex_chart(n, &[])?;
            let mut m = raw(name, n, spec, chart, AnsatzPlan::new(4));
            m.gamma = Some(symmetric_symbols(&m.chart, &[("z2", z(1), z(2), z(3))])?);
            let e = &mut m.expected;
            e.symmetry_dim = tag(2 * (n * n - 2 * n + 5), Published);
            e.curvature = tag(types(&["(2,0)"]), Published);
            integrable_torsion_free(e);
            Ok(m)
        }
        "type1-n2" => {
            if n != 2 {
                return Err(incompatible(name, n));
            }
            let (spec, chart) = complex_chart(2, &["x1^2 + y1^2"])?;
            let mut m = raw(name, n, spec, chart, AnsatzPlan::new(3));
            let half_inverse = "zb1/(2*(x1^2 + y1^2))";
            let minus = "-zb1/(2*(x1^2 + y1^2))";
            m.gamma = Some(symmetric_symbols(&m.chart, &[(half_inverse, z(1), z(2), z(2)), (minus, z(1), z(1), z(1))])?);
            let e = &mut m.expected;
            e.symmetry_dim = tag(6, Published);
            e.curvature = tag(types(&["(2,0)"]), Published);
            integrable_torsion_free(e);
            Ok(m)
        }
        "type2" => {
            if n < 2 {
                return Err(incompatible(name, n));
            }
            let (spec, chart) = complex_chart(n, &[])?;
            let mut m = raw(name, n, spec, chart, AnsatzPlan::new(3));
            m.gamma = Some(symmetric_symbols(&m.chart, &[("zb1", z(2), z(1), z(1))])?);
            let e = &mut m.expected;
            e.symmetry_dim = tag(2 * (n * n - n + 2), Published);
            e.curvature = tag(types(&["(1,1)"]), Published);
            integrable_torsion_free(e);
            Ok(m)
        }
        "type3" => {
            if n < 3 {
                return Err(incompatible(name, n));
            }
            let (spec, chart) = complex_chart(n, &[])?;
            let mut m = raw(name, n, spec, chart, AnsatzPlan::new(3));
            let i = m.chart.parse("I")?;
            let mut jt: Vec<ComplexTerm> = (1..=n).map(|k| ComplexTerm::new(i.clone(), vec![z(k)], vec![z(k)])).collect();
            jt.push(ComplexTerm::new(m.chart.parse("z2")?, vec![zb(3)], vec![z(1)]));
            m.j = Some(AlmostComplex::new(expand(&m.chart, &jt, true)?)?);
            let gamma = ComplexTerm::new(m.chart.parse("I/2")?, vec![zb(3)], vec![z(2), z(1)]);
            m.gamma = Some(expand(&m.chart, &[gamma], true)?);
            let e = &mut m.expected;
            e.symmetry_dim = tag(2 * (n * n - 2 * n + 6), Published);
            e.curvature = tag(Vec::new(), Published);
            e.nijenhuis_zero = tag(false, Published);
            e.torsion_zero = tag(false, Elementary);
            e.minimal = tag(true, Published);
            e.kappa4_zero = tag(true, Published);
            Ok(m)
        }
        "type3-n2" => {
            if n != 2 {
                return Err(incompatible(name, n));
            }
            let spec = ChartSpec::Real {
                coordinates: vec![
                    ("x".into(), VarKind::Ordinary),
                    ("y".into(), VarKind::Ordinary),
                    ("s".into(), VarKind::Laurent),
                    ("q".into(), VarKind::Ordinary),
                ],
                denominators: Vec::new(),
                substitution: Some(Substitution {
                    original: "p".into(),
                    replacement: "s".into(),
                    power: 2,
                }),
            };
            let chart = spec.build()?;
            let mut ansatz = AnsatzPlan::new(3);
            ansatz.ranges.push(("s".into(), -4, 5));
            let mut m = raw(name, n, spec, chart, ansatz);
            m.frame = Some(type3_n2_frame());
            let e = &mut m.expected;
            e.symmetry_dim = tag(8, Published);
            e.curvature = tag(types(&["(1,1)"]), Published);
            e.nijenhuis_zero = tag(false, Published);
            e.torsion_zero = tag(false, Published);
            e.all_affine = tag(true, Published);
            Ok(m)
        }
        "nonminimal" => {
            if n < 2 {
                return Err(incompatible(name, n));
            }
            let (spec, chart) = complex_chart(n, &[])?;
            let mut m = raw(name, n, spec, chart, AnsatzPlan::new(2));
            let term = ComplexTerm::new(m.chart.parse("1")?, vec![z(2)], vec![zb(1), z(1)]);
            m.gamma = Some(expand(&m.chart, &[term], true)?);
            let e = &mut m.expected;
            e.symmetry_dim = tag(2 * (n * n - n + 2), Published);
            e.curvature = tag(Vec::new(), Published);
            e.nijenhuis_zero = tag(true, Elementary);
            e.torsion_zero = tag(false, Published);
            e.minimal = tag(false, Published);
            e.kappa4_zero = tag(false, Published);
            e.torsion_parts = tag(types(&["pi4"]), Published);
            Ok(m)
        }
        "cp1xc" => {
            if n < 2 {
                return Err(incompatible(name, n));
            }
            let (spec, chart) = complex_chart(n, &["1 + x1^2 + y1^2"])?;
            let mut m = raw(name, n, spec, chart, AnsatzPlan::new(3));
            let mut entries = vec![(0, 0, "1/(1 + x1^2 + y1^2)^2")];
            entries.extend((1..n).map(|k| (k, k, "1")));
            m.metric = Some(hermitian(&m.chart, &entries)?);
            let e = &mut m.expected;
            e.symmetry_dim = tag(2 * n * n - 2 * n + 3, Published);
            e.curvature = tag(types(&["(1,1)"]), Elementary);
            integrable_torsion_free(e);
            e.kahler = tag(true, Elementary);
            e.definite = tag(true, Elementary);
            Ok(m)
        }
        "submax-metric" => Err(Error::InvalidModel("use submax_metric for the metric model".into())),
        other => Err(Error::UnknownModel(other.into())),
    }
}

/// Frame `(∂x, ∂y, ∂p, ∂q - (3y/2p)∂x - (5x/2p)∂y)` with `J e1 = e2`,
/// `J e3 = e4` and the connection 1-forms of the model.
fn type3_n2_frame() -> FrameSpec {
    let s = |v: [&str; 4]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let omega = [
        (2, 1, 4, "1/(2*p)"),
        (1, 3, 1, "-1/p"),
        (2, 3, 2, "1/p"),
        (3, 3, 3, "-1/p"),
        (4, 3, 4, "-1/p"),
        (1, 3, 3, "-3*x/(4*p^2)"),
        (1, 3, 4, "-3*y/(4*p^2)"),
        (2, 3, 3, "-3*y/(4*p^2)"),
        (2, 3, 4, "-13*x/(4*p^2)"),
    ];
    FrameSpec {
        vectors: vec![
            s(["1", "0", "0", "0"]),
            s(["0", "1", "0", "0"]),
            s(["0", "0", "1", "0"]),
            s(["-3*y/(2*p)", "-5*x/(2*p)", "0", "1"]),
        ],
        j: vec![vec![0, -1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, -1], vec![0, 0, 1, 0]],
        omega: omega.iter().map(|(a, b, c, v)| (a - 1, b - 1, c - 1, v.to_string())).collect(),
        complete: vec![0, 2],
    }
}

/// Expected symmetry generators of a built-in model, as real fields.
pub fn expected_symmetries(name: &str, n: usize) -> Result<Vec<VectorField>> {
    Ok(builtin(name, n)?.symmetry_fields())
}

fn fields_for(name: &str, n: usize, chart: &Chart) -> Result<(Vec<VectorField>, Provenance)> {
    Ok(match name {
        "flat" => (flat_fields(chart, n)?, Elementary),
        "type1" => (type1_fields(chart, n)?, Published),
        "type1-n2" => (type1_n2_fields(chart)?, Published),
        "type2" => (type2_fields(chart, n)?, Published),
        "type3" => (type3_fields(chart, n)?, Published),
        "type3-n2" => (type3_n2_fields(chart)?, Published),
        "nonminimal" => (nonminimal_fields(chart, n)?, Published),
        "cp1xc" => (cp1xc_fields(chart, n)?, Elementary),
        other => return Err(Error::UnknownModel(other.into())),
    })
}

fn var(k: usize) -> String {
    format!("z{k}")
}

/// Translations, `GL(n, C)` and the projective fields `z_i E`.
fn flat_fields(chart: &Chart, n: usize) -> Result<Vec<VectorField>> {
    let mut f = FieldList::new(chart);
    for i in 1..=n {
        f.both(&[(z(i), "1")])?;
    }
    for i in 1..=n {
        for j in 1..=n {
            f.both(&[(z(j), &var(i))])?;
        }
    }
    for i in 1..=n {
        let coeffs: Vec<String> = (1..=n).map(|k| format!("z{i}*z{k}")).collect();
        let parts: Vec<(CIndex, &str)> = (1..=n).map(|k| (z(k), coeffs[k - 1].as_str())).collect();
        f.both(&parts)?;
    }
    Ok(f.out)
}

fn type1_fields(chart: &Chart, n: usize) -> Result<Vec<VectorField>> {
    let mut f = FieldList::new(chart);
    f.both(&[(z(1), "1")])?;
    for k in 3..=n {
        f.both(&[(z(k), "1")])?;
    }
    for i in 2..=n {
        for j in (1..=n).filter(|j| *j != 2 && *j != 3) {
            f.both(&[(z(j), &var(i))])?;
        }
    }
    f.both(&[(z(1), "2*z1"), (z(2), "z2")])?;
    f.both(&[(z(1), "z1"), (z(3), "z3")])?;
    f.both(&[(z(1), "z2*z3"), (z(2), "-1")])?;
    f.both(&[(z(1), "z2^3"), (z(3), "-3*z2")])?;
    Ok(f.out)
}

fn type1_n2_fields(chart: &Chart) -> Result<Vec<VectorField>> {
    let mut f = FieldList::new(chart);
    f.both(&[(z(2), "1")])?;
    f.both(&[(z(1), "z1"), (z(2), "z2")])?;
    f.both(&[(z(1), "z1*z2"), (z(2), "z2^2/2")])?;
    Ok(f.out)
}

fn type2_fields(chart: &Chart, n: usize) -> Result<Vec<VectorField>> {
    let mut f = FieldList::new(chart);
    for k in 2..=n {
        f.both(&[(z(k), "1")])?;
    }
    for i in (1..=n).filter(|i| *i != 2) {
        for j in 2..=n {
            f.both(&[(z(j), &var(i))])?;
        }
    }
    f.both(&[(z(1), "z1"), (z(2), "2*z2"), (zb(2), "zb2")])?;
    f.both(&[(z(1), "1"), (zb(2), "-zb1^2/2")])?;
    Ok(f.out)
}

fn type3_fields(chart: &Chart, n: usize) -> Result<Vec<VectorField>> {
    let mut f = FieldList::new(chart);
    f.both(&[(z(1), "1")])?;
    for k in 3..=n {
        f.both(&[(z(k), "1")])?;
    }
    for i in (1..=n).filter(|i| *i != 3) {
        for j in 3..=n {
            f.both(&[(z(j), &var(i))])?;
        }
    }
    f.both(&[(z(1), "z1"), (zb(3), "zb3")])?;
    f.both(&[(z(2), "z2"), (zb(3), "zb3")])?;
    f.both(&[(z(2), "1"), (z(3), "-I*z1/2"), (zb(3), "-I*z1/2")])?;
    f.both(&[(z(2), "z1"), (zb(3), "-I*z1^2/4")])?;
    f.both(&[(z(1), "z2"), (zb(3), "-I*z2^2/4")])?;
    Ok(f.out)
}

/// Components against `(∂x, ∂y, ∂p, ∂q)` with `p^(1/2) = s`.
fn type3_n2_fields(chart: &Chart) -> Result<Vec<VectorField>> {
    let mut f = FieldList::new(chart);
    f.original(&["x", "y", "0", "0"])?;
    f.original(&["0", "s^-3", "0", "0"])?;
    f.original(&["0", "0", "p", "q"])?;
    f.original(&["0", "0", "0", "1"])?;
    f.original(&["p*y", "-p*x", "-2*p*q", "p^2 - q^2"])?;
    f.original(&["(p^2 + q^2)*s^-1", "-(p^2 + q^2)*q*s^-3", "0", "0"])?;
    f.original(&["-q*s^-1", "(p^2 + q^2)*s^-3/2 + q^2*s^-3", "0", "0"])?;
    f.original(&["-s^-1/3", "q*s^-3", "0", "0"])?;
    Ok(f.out)
}

fn nonminimal_fields(chart: &Chart, n: usize) -> Result<Vec<VectorField>> {
    let mut f = FieldList::new(chart);
    for k in 1..=n {
        f.both(&[(z(k), "1")])?;
    }
    for i in (1..=n).filter(|i| *i != 2) {
        for j in 2..=n {
            f.both(&[(z(j), &var(i))])?;
        }
    }
    f.both(&[(z(1), "z1"), (z(2), "z2"), (zb(2), "zb2")])?;
    Ok(f.out)
}

/// Rotations of the sphere factor and the affine fields of the flat factor.
fn cp1xc_fields(chart: &Chart, n: usize) -> Result<Vec<VectorField>> {
    let mut f = FieldList::new(chart);
    f.real(&[(z(1), "1 + z1^2")])?;
    f.real(&[(z(1), "I*(1 - z1^2)")])?;
    f.real(&[(z(1), "I*z1")])?;
    for k in 2..=n {
        f.both(&[(z(k), "1")])?;
    }
    for i in 2..=n {
        for j in 2..=n {
            f.both(&[(z(j), &var(i))])?;
        }
    }
    Ok(f.out)
}
