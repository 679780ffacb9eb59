//! The check battery run on one model.

use crate::catalog::{builtin, ModelSpec, Provenance, Tagged};
use crate::error::Result;
use crate::exact::Scalar;
use crate::metric::{gram_at, is_metric_connection, kahler_check, levi_civita, mobility_dimension, signature};
use crate::report::CheckRecord;
use crate::symsolve::{self, affine_system, cproj_system, homothety_system, killing_system, Equations};
use crate::tensorcalc::{
    curvature, curvature_bidegree, is_minimal, kappa4, nabla_j, nijenhuis, torsion, torsion_parts, torsion_projections,
    PolyTensor,
};

use Provenance::Elementary;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Overrides the catalog ansatz degree for the symmetry solver.
    pub degree: Option<u32>,
    pub metric: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { degree: None, metric: true }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ModelChecks {
    pub records: Vec<CheckRecord>,
    pub notes: Vec<String>,
    pub symmetry_dim: Option<usize>,
}

fn zero_word(zero: bool) -> &'static str {
    if zero {
        "zero"
    } else {
        "nonzero"
    }
}

fn tagged_zero(t: &Tagged<bool>) -> Tagged<&'static str> {
    Tagged::new(zero_word(t.value), t.provenance)
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(" ")
    }
}

/// A point with nonzero rational coordinates `2, 3, 4, …`.
fn sample_point(dim: usize) -> Vec<Scalar> {
    (0..dim).map(|i| Scalar::from_int(i as i64 + 2)).collect()
}

pub fn verify_model(m: &ModelSpec, opts: &VerifyOptions) -> Result<ModelChecks> {
    let mut out = ModelChecks::default();
    let anchor = format!("{} model, n = {}", m.name, m.n);
    let a = anchor.as_str();
    let e = &m.expected;
    let recs = &mut out.records;
    let dim = m.chart.dim();
    let j = &m.j;
    let conn = &m.connection;

    let mut minus_id = PolyTensor::zeros(m.chart.ring(), dim, 1, 1);
    for i in 0..dim {
        minus_id.set(&[i, i], m.chart.constant(Scalar::from_int(-1)));
    }
    recs.push(CheckRecord::holds("J squared is minus identity", a, j.compose_up(j.tensor()) == minus_id, Elementary));
    recs.push(CheckRecord::holds("J is parallel", a, nabla_j(conn, j).is_zero(), Elementary));

    let t = torsion(conn);
    let [pp, pm, mp, mm] = torsion_projections(&t, j);
    let sum = [&pm, &mp, &mm].iter().try_fold(pp.clone(), |acc, x| acc.try_add(x))?;
    recs.push(CheckRecord::holds("torsion projections sum to torsion", a, sum == t, Elementary));
    let parts = torsion_parts(&t, j);
    recs.push(CheckRecord::holds("torsion parts sum to torsion", a, parts.sum() == t, Elementary));
    if let Some(x) = &e.nijenhuis_zero {
        recs.push(CheckRecord::tagged("Nijenhuis tensor", a, &tagged_zero(x), zero_word(nijenhuis(j).is_zero())));
    }
    if let Some(x) = &e.torsion_zero {
        recs.push(CheckRecord::tagged("torsion", a, &tagged_zero(x), zero_word(t.is_zero())));
    }
    if let Some(x) = &e.minimal {
        recs.push(CheckRecord::tagged("minimal connection", a, x, is_minimal(&t, j)));
    }
    if let Some(x) = &e.kappa4_zero {
        let (_, k4) = kappa4(&t, j);
        recs.push(CheckRecord::tagged("kappa4", a, &tagged_zero(x), zero_word(k4.is_zero())));
    }
    if let Some(x) = &e.torsion_parts {
        let names: Vec<String> = parts
            .all()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, _)| format!("pi{}", k + 1))
            .collect();
        recs.push(CheckRecord::compare("nonzero torsion parts", a, list(&x.value), list(&names), x.provenance));
    }
    let r = curvature(conn);
    let bideg = curvature_bidegree(&r, j);
    recs.push(CheckRecord::holds("curvature bidegree parts sum to curvature", a, bideg.sum() == r, Elementary));
    if let Some(x) = &e.curvature {
        let computed: Vec<String> = bideg.types().into_iter().map(String::from).collect();
        recs.push(CheckRecord::compare("curvature bidegree", a, list(&x.value), list(&computed), x.provenance));
    }
    if !t.is_zero() && !r.is_zero() {
        out.notes.push(format!(
            "{}: curvature and torsion are both nonzero; the harmonic type II component of the normal curvature is not verifiable here (out of scope)",
            m.name
        ));
    }
    if let Some(x) = &e.same_connection_as {
        let reference = builtin(&x.value, m.n)?;
        recs.push(CheckRecord::compare(
            "Christoffel symbols",
            a,
            format!("equal to {}", x.value),
            if reference.connection.symbols() == conn.symbols() {
                format!("equal to {}", x.value)
            } else {
                format!("differ from {}", x.value)
            },
            x.provenance,
        ));
    }

    let space = m.ansatz.space(&m.chart, opts.degree)?;
    let res = cproj_system(conn, j, &space)?;
    out.symmetry_dim = Some(res.dim);
    if let Some(x) = &e.symmetry_dim {
        recs.push(CheckRecord::tagged("symmetry dimension", a, x, res.dim));
    }
    recs.push(CheckRecord::compare(
        "symmetry dimension stable under widening the ansatz",
        &format!("{a}, {}", res.ansatz),
        true,
        res.stabilized == Some(true),
        Elementary,
    ));
    recs.push(CheckRecord::holds("kernel basis satisfies the equations", a, res.verified, Elementary));
    if let Some(b) = &res.brackets {
        recs.push(CheckRecord::holds("kernel closes under the Lie bracket", a, b.closed, Elementary));
    }

    if !m.symmetries.is_empty() {
        let eqs = Equations::cproj(conn, j);
        let fields = m.symmetry_fields();
        let provenance = m.symmetries[0].provenance;
        let satisfied = fields.iter().filter(|v| symsolve::verify(&eqs, v).is_ok()).count();
        recs.push(CheckRecord::compare("listed fields are symmetries", a, fields.len(), satisfied, provenance));
        let span = res.span_check(&fields);
        recs.push(CheckRecord::compare("listed fields are independent", a, span.count, span.rank, provenance));
        recs.push(CheckRecord::holds("listed fields span the kernel", a, span.contained && span.spans, provenance));
    }
    if let Some(x) = &e.all_affine {
        let aff = affine_system(conn, j, &space)?;
        recs.push(CheckRecord::tagged("every symmetry is affine", a, x, aff.dim == res.dim));
    }

    if let (true, Some(md)) = (opts.metric, m.metric_data()) {
        let md = md?;
        let flags = kahler_check(&md);
        if let Some(x) = &e.kahler {
            recs.push(CheckRecord::tagged("pseudo-Kähler", a, x, flags.all()));
        }
        recs.push(CheckRecord::holds("Levi-Civita connection is metric and torsion-free", a, is_metric_connection(&md, &levi_civita(&md)), Elementary));
        if let Some(x) = &e.definite {
            let g = gram_at(md.metric(), &sample_point(dim))?;
            recs.push(CheckRecord::tagged("metric is definite at a sample point", a, x, signature(&g).is_definite()));
        }
        if let Some(x) = &e.mobility_dim {
            let degree = m.ansatz.mobility_degree.unwrap_or(2);
            let mob = mobility_dimension(&md, degree, &m.ansatz.ranges())?;
            recs.push(CheckRecord::tagged("degree of mobility", a, x, mob.dim));
            recs.push(CheckRecord::holds("mobility solutions stable under widening", a, mob.stabilized == Some(true), Elementary));
            recs.push(CheckRecord::holds("metric solves the mobility equation", a, mob.contains_metric, Elementary));
            out.notes.push(format!(
                "{}: mobility solutions without the J-invariance rows: {}",
                m.name, mob.unconstrained_dim
            ));
        }
        if let Some(x) = &e.isometry_dim {
            let iso = killing_system(md.metric(), j, &space)?;
            recs.push(CheckRecord::tagged("holomorphic isometries", a, x, iso.dim));
        }
        if let Some(x) = &e.homothety_dim {
            let hom = homothety_system(md.metric(), j, &space)?;
            recs.push(CheckRecord::tagged("holomorphic homotheties", a, x, hom.dim));
        }
    }
    Ok(out)
}
