//! Built-in models with their expected results, and the text manifest that
//! serializes them.
//!
//! Every expectation carries a provenance tag: `@published` for values stated
//! in the literature, `@derived` for values obtained by an independent
//! computation, `@elementary` for facts that follow directly from the
//! definitions. Manifests without a tag on an expectation are rejected.

mod builtins;
mod manifest;

use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exact::{Scalar, VarKind};
use crate::metric::{levi_civita, MetricData};
use crate::symsolve::AnsatzSpace;
use crate::tensorcalc::frame::{frame_to_coordinates, FrameData};
use crate::tensorcalc::{AlmostComplex, Chart, Connection, PolyTensor, Substitution, VectorField};

pub use builtins::{builtin, expected_symmetries, submax_metric, MODEL_NAMES};
pub use manifest::{parse_manifest, print_manifest, SCHEMA};

/// Environment variable naming a directory of `<name>-n<N>.model` files that
/// take precedence over the built-in models.
pub const CATALOG_ENV: &str = "CPROJ_CATALOG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Published,
    Derived,
    Elementary,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Published => "@published",
            Provenance::Derived => "@derived",
            Provenance::Elementary => "@elementary",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "@published" => Some(Provenance::Published),
            "@derived" => Some(Provenance::Derived),
            "@elementary" => Some(Provenance::Elementary),
            _ => None,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

impl<T> Tagged<T> {
    pub fn new(value: T, provenance: Provenance) -> Self {
        Tagged { value, provenance }
    }
}

/// Expected results. Absent entries are not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    pub symmetry_dim: Option<Tagged<usize>>,
    /// Curvature bidegrees, e.g. `["(2,0)"]`; empty for a flat connection.
    pub curvature: Option<Tagged<Vec<String>>>,
    pub nijenhuis_zero: Option<Tagged<bool>>,
    pub torsion_zero: Option<Tagged<bool>>,
    pub minimal: Option<Tagged<bool>>,
    pub kappa4_zero: Option<Tagged<bool>>,
    /// Names of the nonzero torsion parts among `pi1..pi5`.
    pub torsion_parts: Option<Tagged<Vec<String>>>,
    /// Every symmetry preserves the connection itself.
    pub all_affine: Option<Tagged<bool>>,
    pub mobility_dim: Option<Tagged<usize>>,
    pub isometry_dim: Option<Tagged<usize>>,
    pub homothety_dim: Option<Tagged<usize>>,
    pub kahler: Option<Tagged<bool>>,
    pub definite: Option<Tagged<bool>>,
    /// Name of a built-in model at the same `n` with identical Christoffel symbols.
    pub same_connection_as: Option<Tagged<String>>,
}

/// Polynomial ansatz used for the symmetry and mobility solvers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzPlan {
    pub degree: u32,
    pub ranges: Vec<(String, i32, i32)>,
    pub mobility_degree: Option<u32>,
}

impl AnsatzPlan {
    pub fn new(degree: u32) -> Self {
        AnsatzPlan {
            degree,
            ranges: Vec::new(),
            mobility_degree: None,
        }
    }

    pub fn ranges(&self) -> Vec<(&str, i32, i32)> {
        self.ranges.iter().map(|(s, a, b)| (s.as_str(), *a, *b)).collect()
    }

    /// Vector-field ansatz on `chart`, with the degree optionally overridden.
    pub fn space(&self, chart: &Chart, degree: Option<u32>) -> Result<AnsatzSpace> {
        AnsatzSpace::new(chart.ring(), chart.dim(), degree.unwrap_or(self.degree), &self.ranges())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartSpec {
    /// `C^n` with coordinates `x1, y1, …`.
    Complex { n: usize, denominators: Vec<String> },
    Real {
        coordinates: Vec<(String, VarKind)>,
        denominators: Vec<String>,
        substitution: Option<Substitution>,
    },
}

impl ChartSpec {
    pub fn build(&self) -> Result<Chart> {
        match self {
            ChartSpec::Complex { n, denominators } => {
                let d: Vec<&str> = denominators.iter().map(String::as_str).collect();
                Chart::complex(*n, &d)
            }
            ChartSpec::Real {
                coordinates,
                denominators,
                substitution,
            } => {
                let c: Vec<(&str, VarKind)> = coordinates.iter().map(|(s, k)| (s.as_str(), *k)).collect();
                let d: Vec<&str> = denominators.iter().map(String::as_str).collect();
                match substitution {
                    Some(sub) => Chart::with_substitution(&c, &d, sub.clone()),
                    None => Chart::new(&c, &d),
                }
            }
        }
    }
}

/// A connection given by a vector frame, constant `J` in that frame and
/// connection 1-forms, all written in the chart's original coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameSpec {
    pub vectors: Vec<Vec<String>>,
    /// `J e_b = Σ_a j[a][b] e_a`.
    pub j: Vec<Vec<i64>>,
    /// `(a, b, c, value)` for `∇_{e_c} e_b = ω^a_{bc} e_a`, 0-based.
    pub omega: Vec<(usize, usize, usize, String)>,
    /// Frame vectors `b` whose partners `J e_b` get `∇(J e_b) = J ∇e_b`.
    pub complete: Vec<usize>,
}

impl FrameSpec {
    fn expand(&self, chart: &Chart) -> Result<(AlmostComplex, Connection)> {
        let m = chart.dim();
        if self.vectors.len() != m || self.j.len() != m || self.j.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("frame size differs from chart dimension".into()));
        }
        let mut vectors = Vec::with_capacity(m);
        for v in &self.vectors {
            let comps = v.iter().map(|s| chart.parse(s)).collect::<Result<Vec<_>>>()?;
            vectors.push(chart.vector_from_original(comps)?);
        }
        let j = self.j.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        let mut omega = PolyTensor::zeros(chart.ring(), m, 1, 2);
        for (a, b, c, s) in &self.omega {
            if *a >= m || *b >= m || *c >= m {
                return Err(Error::Dimension("frame connection index out of range".into()));
            }
            omega.set(&[*a, *b, *c], chart.parse(s)?);
        }
        let mut data = FrameData { vectors, j, omega };
        data.complete_with_j(&self.complete)?;
        let out = frame_to_coordinates(chart, &data)?;
        if !out.round_trip {
            return Err(Error::InvalidModel("frame connection does not reproduce its 1-forms".into()));
        }
        Ok((out.j, out.connection))
    }
}

/// Where the connection of a model comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectionSource {
    Symbols,
    LeviCivita,
    Frame(FrameSpec),
}

/// A fully expanded model in real coordinates.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub name: String,
    pub n: usize,
    pub chart_spec: ChartSpec,
    pub chart: Chart,
    pub j: AlmostComplex,
    pub connection: Connection,
    pub source: ConnectionSource,
    pub metric: Option<PolyTensor>,
    pub expected: Expectations,
    pub ansatz: AnsatzPlan,
    pub symmetries: Vec<Tagged<VectorField>>,
}

/// Parts of a model before the connection is resolved.
pub(crate) struct RawModel {
    pub name: String,
    pub n: usize,
    pub chart_spec: ChartSpec,
    pub chart: Chart,
    pub j: Option<AlmostComplex>,
    pub gamma: Option<PolyTensor>,
    pub metric: Option<PolyTensor>,
    pub frame: Option<FrameSpec>,
    pub expected: Expectations,
    pub ansatz: AnsatzPlan,
    pub symmetries: Vec<Tagged<VectorField>>,
}

impl RawModel {
    pub fn resolve(self) -> Result<ModelSpec> {
        let dim = self.chart.dim();
        let (j, connection, source) = match (&self.frame, self.gamma, &self.metric) {
            (Some(frame), None, _) => {
                if self.j.is_some() {
                    return Err(Error::InvalidModel("a frame model takes J from the frame".into()));
                }
                let (j, conn) = frame.expand(&self.chart)?;
                (j, conn, ConnectionSource::Frame(frame.clone()))
            }
            (Some(_), Some(_), _) => return Err(Error::InvalidModel("give either symbols or a frame".into())),
            (None, gamma, metric) => {
                let j = self.j.unwrap_or_else(|| AlmostComplex::standard(self.chart.ring(), dim));
                match (gamma, metric) {
                    (Some(g), _) => (j, Connection::new(g)?, ConnectionSource::Symbols),
                    (None, Some(m)) => {
                        let md = MetricData::new(m.clone(), j.clone())?;
                        (j, levi_civita(&md), ConnectionSource::LeviCivita)
                    }
                    (None, None) => (j.clone(), Connection::flat(self.chart.ring(), dim), ConnectionSource::Symbols),
                }
            }
        };
        if j.dim() != dim || connection.dim() != dim {
            return Err(Error::Dimension("model tensors differ from chart dimension".into()));
        }
        if let Some(v) = self.symmetries.iter().find(|v| v.value.dim() != dim) {
            return Err(Error::Dimension(format!("symmetry field with {} components", v.value.dim())));
        }
        Ok(ModelSpec {
            name: self.name,
            n: self.n,
            chart_spec: self.chart_spec,
            chart: self.chart,
            j,
            connection,
            source,
            metric: self.metric,
            expected: self.expected,
            ansatz: self.ansatz,
            symmetries: self.symmetries,
        })
    }
}

impl ModelSpec {
    pub fn metric_data(&self) -> Option<Result<MetricData>> {
        self.metric.as_ref().map(|g| MetricData::new(g.clone(), self.j.clone()))
    }

    pub fn symmetry_fields(&self) -> Vec<VectorField> {
        self.symmetries.iter().map(|t| t.value.clone()).collect()
    }

    pub fn to_manifest(&self) -> String {
        print_manifest(self)
    }

    pub fn file_name(name: &str, n: usize) -> String {
        format!("{name}-n{n}.model")
    }
}

/// Loads `name` at `n`, preferring a manifest in `$CPROJ_CATALOG`.
pub fn load(name: &str, n: usize) -> Result<ModelSpec> {
    match std::env::var_os(CATALOG_ENV) {
        Some(dir) => load_from(Path::new(&dir), name, n),
        None => builtin(name, n),
    }
}

/// Loads `<dir>/<name>-n<N>.model` if it exists, else the built-in model.
pub fn load_from(dir: &Path, name: &str, n: usize) -> Result<ModelSpec> {
    let path = dir.join(ModelSpec::file_name(name, n));
    if path.is_file() {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::InvalidModel(format!("cannot read {}: {e}", path.display())))?;
        let model = parse_manifest(&text)?;
        if model.name != name || model.n != n {
            return Err(Error::InvalidModel(format!(
                "{} declares {} at n = {}",
                path.display(),
                model.name,
                model.n
            )));
        }
        Ok(model)
    } else {
        builtin(name, n)
    }
}
