use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{bail, Context};
use cproj_core::battery::{verify_model, ModelChecks, VerifyOptions};
use cproj_core::catalog::{self, parse_manifest, submax_metric, ModelSpec, Provenance, MODEL_NAMES};
use cproj_core::metric::{
    gram_at, is_metric_connection, kahler_check, levi_civita, mobility_dimension, parallel_forms, phi_quotient_rank,
    signature,
};
use cproj_core::prolong::{
    annihilator, annihilator_closed_form, deformation, lowest_weight_vector, overall_submaximal, submaximal_closed_form,
    tanaka_prolongation, theorem_row, CurvType,
};
use cproj_core::report::{CheckRecord, Report};
use cproj_core::slpair::SlPair;
use cproj_core::structlie::{self, parse_algebra, StructAlgebra};
use cproj_core::symsolve::{homothety_system, killing_system};
use cproj_core::{Error, Scalar};

use Provenance::{Elementary, Published};

fn zero_word(zero: bool) -> &'static str {
    if zero {
        "zero"
    } else {
        "nonzero"
    }
}

fn series(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn table(n_min: usize, n_max: usize) -> anyhow::Result<Report> {
    if n_min < 2 || n_max > 8 || n_min > n_max {
        bail!("need 2 <= n-min <= n-max <= 8, got {n_min}..{n_max}");
    }
    let mut report = Report::new(&format!("table --n-min {n_min} --n-max {n_max}"));
    for n in n_min..=n_max {
        let row = theorem_row(n)?;
        let anchor = format!("dimension table, n = {n}");
        for (k, kind) in CurvType::ALL.iter().enumerate() {
            report.push(CheckRecord::compare(
                &format!("upper bound, type {kind}"),
                &anchor,
                2 * n + annihilator_closed_form(*kind, n),
                row.bounds[k],
                Published,
            ));
        }
        for (k, kind) in CurvType::HARMONIC.iter().enumerate() {
            report.push(CheckRecord::compare(
                &format!("submaximal dimension, type {kind}"),
                &anchor,
                submaximal_closed_form(*kind, n),
                row.submaximal[k],
                Published,
            ));
        }
        report.push(CheckRecord::compare("overall submaximal dimension", &anchor, overall_submaximal(n), row.overall, Published));
        report.push(CheckRecord::holds("first prolongation vanishes for every type", &anchor, row.rigid, Published));
        for a in row.advisories {
            report.note(format!("n = {n}: {a}"));
        }
    }
    Ok(report)
}

pub fn prolong(kind: CurvType, n: usize) -> anyhow::Result<Report> {
    let mut report = Report::new(&format!("prolong --type {kind} --n {n}"));
    let g = SlPair::build(n)?;
    let lw = lowest_weight_vector(kind, n)?;
    let ann = annihilator(&g, &lw.real)?;
    let pro = tanaka_prolongation(&g, &lw.real)?;
    let anchor = format!("lowest weight vector of type {kind}, n = {n}");
    report.push(CheckRecord::compare("annihilator dimension", &anchor, annihilator_closed_form(kind, n), ann.dim, Published));
    report.push(CheckRecord::compare("first prolongation dimension", &anchor, 0, pro.dim_a1, Published));
    report.push(CheckRecord::compare("algebraic upper bound", &anchor, 2 * n + ann.dim, pro.total, Elementary));
    report.note(format!("{} conditions on the grade-zero part:", ann.conditions.len()));
    for c in &ann.conditions {
        report.note(c.clone());
    }
    Ok(report)
}

pub fn deform(kind: CurvType, n: usize) -> anyhow::Result<Report> {
    let mut report = Report::new(&format!("algebra deform --type {kind} --n {n}"));
    let d = deformation(kind, n)?;
    let anchor = format!("graded algebra of type {kind}, n = {n}, deformed by its cochain");
    let computed = zero_word(d.is_lie());
    match (kind, n) {
        (CurvType::II, _) => report.push(CheckRecord::compare("Jacobi residual", &anchor, "zero", computed, Published)),
        (CurvType::III, 2) => report.push(CheckRecord::compare("Jacobi residual", &anchor, "nonzero", computed, Published)),
        _ => report.note(format!("Jacobi residual: {computed}")),
    }
    report.push(CheckRecord::holds(
        "residual on the cochain domain equals the cyclic sum of the cochain",
        &anchor,
        d.matches_formula,
        Elementary,
    ));
    report.note(format!("{} nonzero Jacobi sums", d.residual.len()));
    for t in d.residual.iter().take(10) {
        let l = d.algebra.labels();
        report.note(format!(
            "Jac({}, {}, {}) = {}",
            l[t.triple.0],
            l[t.triple.1],
            l[t.triple.2],
            d.algebra.describe_vector(&t.value)
        ));
    }
    Ok(report)
}

/// Published derived series of the built-in algebras.
fn expected_series(name: &str) -> Option<&'static str> {
    match name {
        "s" => Some("8 5 3 0"),
        "s-prime" => Some("6 5 3 0"),
        _ => None,
    }
}

pub fn algebra(name: Option<&str>, manifest: Option<&Path>, lambda: &str) -> anyhow::Result<Report> {
    let (alg, command, builtin) = match (name, manifest) {
        (Some(name), None) => (structlie::builtin(name)?, format!("algebra {name}"), true),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let alg = parse_algebra(&text).with_context(|| format!("parsing {}", path.display()))?;
            (alg, format!("algebra --manifest {}", path.display()), false)
        }
        _ => bail!("give an algebra name or --manifest (built-in names: {})", structlie::builtin_names().join(", ")),
    };
    let mut report = Report::new(&format!("{command} --lambda {lambda}"));
    let alg = specialize(alg, lambda)?;
    let anchor = format!("structure constants of {}", alg.name());
    let provenance = if builtin { Published } else { Elementary };
    report.push(CheckRecord::holds("Jacobi identity", &anchor, alg.is_lie(), provenance));
    for t in alg.jacobi_residual().iter().take(10) {
        let l = alg.labels();
        report.note(format!("Jac({}, {}, {}) = {}", l[t.triple.0], l[t.triple.1], l[t.triple.2], alg.describe_vector(&t.value)));
    }
    match alg.derived_series() {
        Ok(s) => match expected_series(alg.name()).filter(|_| builtin) {
            Some(e) => report.push(CheckRecord::compare("derived series", &anchor, e, series(&s), Published)),
            None => report.note(format!("derived series: {}", series(&s))),
        },
        Err(Error::Symbolic) => report.note("derived series not computed for a symbolic parameter"),
        Err(e) => return Err(e.into()),
    }
    if alg.grading().is_some() {
        let f = alg.check_filtration()?;
        report.push(CheckRecord::holds("bracket respects the declared filtration", &anchor, f.passed(), provenance));
        let graded = alg.check_integer_grading()?.passed();
        report.note(format!("bracket is {}graded", if graded { "" } else { "filtered but not " }));
    }
    if alg.parity().is_some() {
        report.push(CheckRecord::holds("Z2-grading respected", &anchor, alg.check_parity()?.passed(), provenance));
    }
    Ok(report)
}

fn specialize(alg: StructAlgebra, lambda: &str) -> anyhow::Result<StructAlgebra> {
    if lambda == "symbolic" || alg.params().names().is_empty() {
        return Ok(alg);
    }
    let value = Scalar::parse(lambda).with_context(|| format!("parameter value `{lambda}`"))?;
    let names: Vec<String> = alg.params().names().to_vec();
    let values: Vec<(&str, Scalar)> = names.iter().map(|n| (n.as_str(), value.clone())).collect();
    Ok(alg.specialize(&values)?)
}

/// Smallest complex dimension at which the catalog builds `name`.
fn smallest_n(name: &str) -> anyhow::Result<usize> {
    (2..=3)
        .find(|&n| catalog::builtin(name, n).is_ok())
        .with_context(|| format!("no admissible dimension for `{name}`"))
}

pub fn collect_models(names: &[String], n: usize, manifests: &[PathBuf], all: bool) -> anyhow::Result<Vec<ModelSpec>> {
    let mut out = Vec::new();
    if all {
        for name in MODEL_NAMES {
            out.push(catalog::load(name, smallest_n(name)?)?);
        }
    }
    for name in names {
        out.push(catalog::load(name, n).with_context(|| format!("loading `{name}` at n = {n}"))?);
    }
    for path in manifests {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        out.push(parse_manifest(&text).with_context(|| format!("parsing {}", path.display()))?);
    }
    Ok(out)
}

pub fn verify(models: Vec<ModelSpec>, opts: &VerifyOptions, jobs: usize) -> anyhow::Result<Report> {
    let labels: Vec<String> = models.iter().map(|m| format!("{}/{}", m.name, m.n)).collect();
    let mut report = Report::new(&format!("verify {}", labels.join(" ")));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<cproj_core::Result<ModelChecks>>>> = Mutex::new(models.iter().map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, models.len().max(1)) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(m) = models.get(k) else { break };
                let r = verify_model(m, opts);
                results.lock().expect("no panics while holding the lock")[k] = Some(r);
            });
        }
    });
    let results = results.into_inner().expect("workers finished");
    for (label, r) in labels.iter().zip(results) {
        let checks = r.expect("every model visited").with_context(|| format!("verifying {label}"))?;
        if let Some(d) = checks.symmetry_dim {
            report.note(format!("{label}: symmetry dimension {d}"));
        }
        report.extend(checks.records);
        for n in checks.notes {
            report.note(n);
        }
    }
    Ok(report)
}

pub fn metric(name: &str, n: usize, signs: &[i64]) -> anyhow::Result<Report> {
    let model = if name == "submax-metric" && !signs.is_empty() {
        submax_metric(n, signs)?
    } else {
        if !signs.is_empty() {
            bail!("--signs applies to submax-metric only");
        }
        catalog::load(name, n)?
    };
    let Some(md) = model.metric_data() else {
        bail!("model `{name}` has no metric");
    };
    let md = md?;
    let mut report = Report::new(&format!("metric --model {name} --n {n}"));
    let anchor = format!("{name} metric, n = {n}");
    let a = anchor.as_str();
    let e = &model.expected;
    let flags = kahler_check(&md);
    report.push(CheckRecord::holds("J-invariant", a, flags.hermitian, Elementary));
    report.push(CheckRecord::holds("Kähler form closed", a, flags.closed_form, Elementary));
    report.push(CheckRecord::holds("J parallel", a, flags.parallel_j, Elementary));
    report.push(CheckRecord::holds("J integrable", a, flags.integrable, Elementary));
    for w in &flags.witnesses {
        report.note(w.clone());
    }
    let lc = levi_civita(&md);
    report.push(CheckRecord::holds("Levi-Civita connection is metric and torsion-free", a, is_metric_connection(&md, &lc), Elementary));
    if let Some(x) = &e.same_connection_as {
        let other = catalog::builtin(&x.value, n)?;
        report.push(CheckRecord::compare(
            "Levi-Civita connection",
            a,
            format!("equal to {}", x.value),
            if other.connection.symbols() == lc.symbols() {
                format!("equal to {}", x.value)
            } else {
                format!("differs from {}", x.value)
            },
            x.provenance,
        ));
    }
    let point: Vec<Scalar> = (0..model.chart.dim()).map(|i| Scalar::from_int(i as i64 + 2)).collect();
    let sig = signature(&gram_at(md.metric(), &point)?);
    report.note(format!("signature at (2, 3, ...): {} positive, {} negative", sig.positive, sig.negative));
    if let Some(x) = &e.definite {
        report.push(CheckRecord::tagged("definite", a, x, sig.is_definite()));
    }
    let degree = model.ansatz.mobility_degree.unwrap_or(2);
    let ranges = model.ansatz.ranges();
    let mob = mobility_dimension(&md, degree, &ranges)?;
    match &e.mobility_dim {
        Some(x) => report.push(CheckRecord::tagged("degree of mobility", a, x, mob.dim)),
        None => report.note(format!("degree of mobility: {}", mob.dim)),
    }
    report.push(CheckRecord::holds("mobility solutions stable under widening", a, mob.stabilized == Some(true), Elementary));
    report.push(CheckRecord::holds("metric solves the mobility equation", a, mob.contains_metric, Elementary));
    report.note(format!("mobility solutions without the J-invariance rows: {}", mob.unconstrained_dim));
    let forms = parallel_forms(&lc, 1, &ranges)?;
    report.note(format!("parallel 1-forms of degree <= 1: {}", forms.dim));
    let names = model.chart.coordinate_names();
    for f in &forms.basis {
        let terms: Vec<String> = f
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, x)| format!("({c}) d{x}"))
            .collect();
        report.note(format!("  {}", terms.join(" + ")));
    }
    let space = model.ansatz.space(&model.chart, None)?;
    let iso = killing_system(md.metric(), &model.j, &space)?;
    match &e.isometry_dim {
        Some(x) => report.push(CheckRecord::tagged("holomorphic isometries", a, x, iso.dim)),
        None => report.note(format!("holomorphic isometries: {}", iso.dim)),
    }
    let hom = homothety_system(md.metric(), &model.j, &space)?;
    match &e.homothety_dim {
        Some(x) => report.push(CheckRecord::tagged("holomorphic homotheties", a, x, hom.dim)),
        None => report.note(format!("holomorphic homotheties: {}", hom.dim)),
    }
    if !model.symmetries.is_empty() {
        let fields = model.symmetry_fields();
        let phi = phi_quotient_rank(&md, &fields, &mob)?;
        report.push(CheckRecord::holds("every symmetry maps to a mobility solution", a, phi.all_in_solution_space, Elementary));
        report.note(format!("kernel of the symmetry-to-mobility map modulo the metric: {}", phi.kernel_dim));
        report.push(CheckRecord::holds(
            &format!("{} symmetries <= {} + {} - 1", fields.len(), phi.kernel_dim, mob.dim),
            a,
            fields.len() < phi.kernel_dim + mob.dim,
            Elementary,
        ));
    }
    Ok(report)
}
