//! Infinitesimal symmetries as exact kernels of coefficient-matching systems.
//!
//! A vector field is sought in a finite ansatz: each real component is a
//! combination of fixed monomials with unknown rational coefficients. The
//! defining tensor equations are linear in the field, so applying them to
//! every unit field and matching coefficients monomial by monomial gives a
//! sparse linear system over `Q`. Declared chart denominators are cleared
//! per equation component before matching.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::Exponents;
use crate::exact::{ExactMatrix, LaurentPoly, Rational, Ring, Scalar, SparseEchelon, VarKind};
use crate::structlie::StructAlgebra;
use crate::tensorcalc::{
    cproj_operator, lie_derivative_connection, lie_derivative_form, lie_derivative_j, AlmostComplex, Connection,
    PolyTensor, VectorField,
};

/// Monomials allowed in each component of an unknown vector field.
#[derive(Clone, Debug)]
pub struct AnsatzSpace {
    ring: Arc<Ring>,
    components: usize,
    degree: u32,
    ranges: BTreeMap<usize, (i32, i32)>,
    monomials: Vec<Exponents>,
    index: BTreeMap<Exponents, usize>,
}

impl AnsatzSpace {
    /// Total degree at most `degree` in the variables without an explicit
    /// range; every Laurent variable needs a range `(var, min, max)`.
    pub fn new(ring: &Arc<Ring>, components: usize, degree: u32, ranges: &[(&str, i32, i32)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(name, lo, hi) in ranges {
            let i = ring.index_of(name)?;
            if lo > hi {
                return Err(Error::InvalidAnsatz(format!("empty range for `{name}`")));
            }
            if lo < 0 && ring.kind(i) != VarKind::Laurent {
                return Err(Error::InvalidAnsatz(format!("`{name}` is not a Laurent variable")));
            }
            map.insert(i, (lo, hi));
        }
        for i in 0..ring.len() {
            if ring.kind(i) == VarKind::Laurent && !map.contains_key(&i) {
                return Err(Error::InvalidAnsatz(format!("Laurent variable `{}` needs a range", ring.names()[i])));
            }
        }
        Ok(Self::build(ring.clone(), components, degree, map))
    }

    fn build(ring: Arc<Ring>, components: usize, degree: u32, ranges: BTreeMap<usize, (i32, i32)>) -> Self {
        let mut set = BTreeSet::new();
        let mut cur: Exponents = std::iter::repeat_n(0, ring.len()).collect();
        enumerate(&ring, &ranges, 0, degree as i32, &mut cur, &mut set);
        let monomials: Vec<Exponents> = set.into_iter().collect();
        let index = monomials.iter().enumerate().map(|(k, e)| (e.clone(), k)).collect();
        AnsatzSpace {
            ring,
            components,
            degree,
            ranges,
            monomials,
            index,
        }
    }

    /// Every bound widened by one.
    pub fn enlarged(&self) -> Self {
        let ranges = self.ranges.iter().map(|(&i, &(lo, hi))| {
            let lo = if lo < 0 || self.ring.kind(i) == VarKind::Laurent { lo - 1 } else { lo };
            (i, (lo, hi + 1))
        });
        Self::build(self.ring.clone(), self.components, self.degree + 1, ranges.collect())
    }

    /// True when every monomial of `self` is also in `other`.
    pub fn is_within(&self, other: &AnsatzSpace) -> bool {
        self.components == other.components && self.monomials.iter().all(|e| other.index.contains_key(e))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn unknowns(&self) -> usize {
        self.monomials.len() * self.components
    }

    pub fn describe(&self) -> String {
        let mut s = format!("degree <= {}", self.degree);
        for (&i, &(lo, hi)) in &self.ranges {
            s.push_str(&format!(", {} in [{lo}, {hi}]", self.ring.names()[i]));
        }
        s
    }

    fn column(&self, comp: usize, exps: &Exponents) -> Option<usize> {
        self.index.get(exps).map(|k| comp * self.monomials.len() + k)
    }

    fn unit(&self, col: usize) -> VectorField {
        let m = self.monomials.len();
        let mono = LaurentPoly::monomial(&self.ring, &self.monomials[col % m], Scalar::one()).expect("ansatz monomial");
        VectorField::coordinate(&self.ring, self.components, col / m, mono)
    }

    /// The field with the given coefficients (one per unknown).
    pub fn field(&self, coeffs: &[Rational]) -> VectorField {
        let m = self.monomials.len();
        let mut v = VectorField::zero(&self.ring, self.components);
        for (comp, slot) in v.0.iter_mut().enumerate() {
            let mut terms = BTreeMap::new();
            for (k, e) in self.monomials.iter().enumerate() {
                let c = &coeffs[comp * m + k];
                if !c.is_zero() {
                    terms.insert(e.clone(), Scalar::real(c.clone()));
                }
            }
            *slot = LaurentPoly::from_terms(&self.ring, terms);
        }
        v
    }

    /// Coefficients of `v`, or `None` when it leaves the ansatz.
    pub fn coordinates(&self, v: &VectorField) -> Option<Vec<Rational>> {
        if v.dim() != self.components {
            return None;
        }
        let mut out = vec![Rational::zero(); self.unknowns()];
        for (comp, p) in v.0.iter().enumerate() {
            if p.has_denominator() {
                return None;
            }
            for (e, c) in p.terms() {
                if !c.is_real() {
                    return None;
                }
                out[self.column(comp, e)?] = c.re().clone();
            }
        }
        Some(out)
    }
}

fn enumerate(
    ring: &Ring,
    ranges: &BTreeMap<usize, (i32, i32)>,
    var: usize,
    budget: i32,
    cur: &mut Exponents,
    out: &mut BTreeSet<Exponents>,
) {
    if var == ring.len() {
        out.insert(cur.clone());
        return;
    }
    let (lo, hi, costs) = match ranges.get(&var) {
        Some(&(lo, hi)) => (lo, hi, false),
        None => (0, budget, true),
    };
    for e in lo..=hi {
        cur[var] = e;
        enumerate(ring, ranges, var + 1, if costs { budget - e } else { budget }, cur, out);
    }
    cur[var] = 0;
}

/// Which symmetry equations are imposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    /// `L_v J = 0` and the c-projective operator applied to `L_v Γ`.
    CProjective,
    /// `L_v Γ = 0`, `L_v J = 0`.
    Affine,
    /// `L_v g = 0`, `L_v J = 0`.
    Killing,
    /// `L_v g = c g` for a constant `c`, `L_v J = 0`.
    Homothety,
}

impl SystemKind {
    pub fn name(self) -> &'static str {
        match self {
            SystemKind::CProjective => "c-projective",
            SystemKind::Affine => "affine",
            SystemKind::Killing => "holomorphic isometry",
            SystemKind::Homothety => "holomorphic homothety",
        }
    }
}

/// A linear system in an unknown vector field plus constant unknowns.
#[derive(Clone, Debug)]
pub struct Equations {
    kind: SystemKind,
    j: AlmostComplex,
    connection: Option<Connection>,
    metric: Option<PolyTensor>,
}

impl Equations {
    pub fn cproj(connection: &Connection, j: &AlmostComplex) -> Self {
        Self::with(SystemKind::CProjective, j, Some(connection.clone()), None)
    }

    pub fn affine(connection: &Connection, j: &AlmostComplex) -> Self {
        Self::with(SystemKind::Affine, j, Some(connection.clone()), None)
    }

    pub fn killing(metric: &PolyTensor, j: &AlmostComplex) -> Self {
        Self::with(SystemKind::Killing, j, None, Some(metric.clone()))
    }

    pub fn homothety(metric: &PolyTensor, j: &AlmostComplex) -> Self {
        Self::with(SystemKind::Homothety, j, None, Some(metric.clone()))
    }

    fn with(kind: SystemKind, j: &AlmostComplex, connection: Option<Connection>, metric: Option<PolyTensor>) -> Self {
        Equations {
            kind,
            j: j.clone(),
            connection,
            metric,
        }
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    /// Number of constant unknowns besides the field.
    pub fn extra_count(&self) -> usize {
        usize::from(self.kind == SystemKind::Homothety)
    }

    /// Left-hand sides; `v` is a symmetry iff all vanish.
    pub fn residual(&self, v: &VectorField, extras: &[Rational]) -> Vec<PolyTensor> {
        let lj = lie_derivative_j(v, &self.j);
        match self.kind {
            SystemKind::CProjective | SystemKind::Affine => {
                let conn = self.connection.as_ref().expect("connection");
                let omega = lie_derivative_connection(v, conn);
                let first = if self.kind == SystemKind::Affine { omega } else { cproj_operator(&omega, &self.j) };
                vec![first, lj]
            }
            SystemKind::Killing | SystemKind::Homothety => {
                let g = self.metric.as_ref().expect("metric");
                let mut lg = lie_derivative_form(v, g);
                if let Some(c) = extras.first() {
                    if !c.is_zero() {
                        lg = lg.try_sub(&g.scale(&Scalar::real(c.clone()))).expect("same shape");
                    }
                }
                vec![lg, lj]
            }
        }
    }
}

/// Exact solution space of a symmetry system over one ansatz.
#[derive(Clone, Debug)]
pub struct SymmetryResult {
    pub kind: SystemKind,
    pub ansatz: String,
    pub unknowns: usize,
    pub rows: usize,
    pub dim: usize,
    pub basis: Vec<VectorField>,
    /// Values of the constant unknowns for each basis element.
    pub extras: Vec<Vec<Rational>>,
    /// Every basis element re-substituted into the equations gave zero.
    pub verified: bool,
    /// Dimension unchanged after widening every bound by one; `None` if not tried.
    pub stabilized: Option<bool>,
    pub brackets: Option<BracketClosure>,
    kernel: LinearKernel,
}

/// Columns where the basis restricted is invertible, with that inverse.
fn restriction_solver(coords: &[Vec<Rational>], cols: usize) -> Option<(Vec<usize>, ExactMatrix<Rational>)> {
    let d = coords.len();
    let mut ech = SparseEchelon::<Rational>::new(cols);
    for v in coords {
        ech.insert(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect());
    }
    let pivots = ech.pivot_columns();
    if pivots.len() != d {
        return None;
    }
    if d == 0 {
        return Some((pivots, ExactMatrix::zeros(0, 0)));
    }
    // square[r][k] = coords[k][pivots[r]]
    let mut square = ExactMatrix::<Rational>::zeros(d, d);
    for (r, &p) in pivots.iter().enumerate() {
        for (k, v) in coords.iter().enumerate() {
            square.set(r, k, v[p].clone());
        }
    }
    square.inverse().ok().map(|inv| (pivots, inv))
}

/// Lie brackets of the basis fields expressed in the basis.
#[derive(Clone, Debug)]
pub struct BracketClosure {
    pub closed: bool,
    /// Brackets that left the ansatz or the solution space.
    pub failures: Vec<(usize, usize)>,
    pub algebra: Option<StructAlgebra>,
}

/// How a list of fields relates to a solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanCheck {
    pub count: usize,
    pub rank: usize,
    pub contained: bool,
    pub spans: bool,
}

impl SpanCheck {
    pub fn independent(&self) -> bool {
        self.rank == self.count
    }
}

fn rank_of(rows: &[Vec<Rational>], cols: usize) -> usize {
    let mut ech = SparseEchelon::<Rational>::new(cols);
    for r in rows {
        ech.insert(r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect());
    }
    ech.rank()
}

impl SymmetryResult {
    pub fn space(&self) -> &AnsatzSpace {
        &self.kernel.space
    }

    pub fn kernel(&self) -> &LinearKernel {
        &self.kernel
    }

    /// Whether `v` is an exact combination of the basis fields.
    pub fn contains(&self, v: &VectorField) -> bool {
        self.kernel.decompose(&v.0).is_some()
    }

    /// Compares `fields` with the solution space.
    pub fn span_check(&self, fields: &[VectorField]) -> SpanCheck {
        let space = &self.kernel.space;
        let cols = space.unknowns();
        let coords: Vec<Option<Vec<Rational>>> = fields.iter().map(|f| space.coordinates(f)).collect();
        let inside: Vec<Vec<Rational>> = coords.iter().flatten().cloned().collect();
        let contained = inside.len() == fields.len() && inside.iter().all(|c| self.kernel.decompose_coords(c).is_some());
        let rank = if inside.len() == fields.len() {
            rank_of(&inside, cols)
        } else {
            // fields outside the ansatz: rank over a joint basis of their monomials
            rank_outside(fields)
        };
        SpanCheck {
            count: fields.len(),
            rank,
            contained,
            spans: contained && rank == self.dim,
        }
    }

    fn compute_brackets(&mut self) {
        let d = self.basis.len();
        let mut alg = StructAlgebra::new("symmetries", &labels(d).iter().map(String::as_str).collect::<Vec<_>>());
        let mut failures = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                let w = self.basis[a].bracket(&self.basis[b]);
                let sol = self.kernel.decompose(&w.0);
                match sol {
                    Some(coef) => {
                        let value = coef
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| (k, alg.constant(Scalar::real(c.clone()))))
                            .collect();
                        alg.set_bracket(a, b, value).expect("basis indices");
                    }
                    None => failures.push((a, b)),
                }
            }
        }
        self.brackets = Some(BracketClosure {
            closed: failures.is_empty(),
            algebra: failures.is_empty().then_some(alg),
            failures,
        });
    }

}

fn labels(d: usize) -> Vec<String> {
    (1..=d).map(|k| format!("v{k}")).collect()
}

fn rank_outside(fields: &[VectorField]) -> usize {
    let mut keys: BTreeMap<(usize, Exponents, Vec<u32>), usize> = BTreeMap::new();
    let mut rows = Vec::new();
    for f in fields {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        for (comp, p) in f.0.iter().enumerate() {
            for (e, c) in p.terms() {
                let n = keys.len();
                let col = *keys.entry((comp, e.clone(), p.den().to_vec())).or_insert(n);
                row.insert(2 * col, c.re().clone());
                row.insert(2 * col + 1, c.im().clone());
            }
        }
        rows.push(row);
    }
    let cols = 2 * keys.len();
    let dense: Vec<Vec<Rational>> = rows
        .into_iter()
        .map(|r| {
            let mut v = vec![Rational::zero(); cols];
            for (c, x) in r {
                v[c] = x;
            }
            v
        })
        .collect();
    rank_of(&dense, cols)
}

/// Kernel of a linear operator on ansatz-valued component tuples, with
/// optional constant unknowns appended after the ansatz coefficients.
#[derive(Clone, Debug)]
pub struct LinearKernel {
    space: AnsatzSpace,
    extra: usize,
    rows: usize,
    vectors: Vec<Vec<Rational>>,
    solver: Option<(Vec<usize>, ExactMatrix<Rational>)>,
}

type RowKey = (usize, Vec<usize>, Exponents, bool);

impl LinearKernel {
    /// Matches coefficients of `op` applied to every unit input. `op` gets the
    /// component tuple and the constant unknowns and must be linear in both.
    pub fn solve<F>(space: &AnsatzSpace, extra: usize, op: F) -> LinearKernel
    where
        F: Fn(&[LaurentPoly], &[Rational]) -> Vec<PolyTensor>,
    {
        let fields = space.unknowns();
        let total = fields + extra;
        let zeros = vec![Rational::zero(); extra];
        let outputs: Vec<Vec<PolyTensor>> = (0..total)
            .map(|col| {
                if col < fields {
                    op(&space.unit(col).0, &zeros)
                } else {
                    let mut ex = zeros.clone();
                    ex[col - fields] = Rational::one();
                    op(&VectorField::zero(space.ring(), space.components()).0, &ex)
                }
            })
            .collect();
        // common denominator per equation component
        let mut dens: BTreeMap<(usize, Vec<usize>), Vec<u32>> = BTreeMap::new();
        for out in &outputs {
            for (e, t) in out.iter().enumerate() {
                for (key, p) in t.iter() {
                    let slot = dens.entry((e, key.clone())).or_insert_with(|| vec![0; p.den().len()]);
                    for (s, &d) in slot.iter_mut().zip(p.den()) {
                        *s = (*s).max(d);
                    }
                }
            }
        }
        let mut rows: BTreeMap<RowKey, Vec<(usize, Rational)>> = BTreeMap::new();
        for (col, out) in outputs.iter().enumerate() {
            for (e, t) in out.iter().enumerate() {
                for (key, p) in t.iter() {
                    let den = &dens[&(e, key.clone())];
                    for (exps, c) in p.numerator_over(den) {
                        for (imag, part) in [(false, c.re()), (true, c.im())] {
                            if !part.is_zero() {
                                rows.entry((e, key.clone(), exps.clone(), imag)).or_default().push((col, part.clone()));
                            }
                        }
                    }
                }
            }
        }
        drop(outputs);
        let row_count = rows.len();
        let mut ech = SparseEchelon::<Rational>::new(total);
        ech.extend_sorted(rows.into_values().collect());
        let vectors = ech.kernel();
        let field_parts: Vec<Vec<Rational>> = vectors.iter().map(|k| k[..fields].to_vec()).collect();
        LinearKernel {
            space: space.clone(),
            extra,
            rows: row_count,
            solver: restriction_solver(&field_parts, fields),
            vectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn unknowns(&self) -> usize {
        self.space.unknowns() + self.extra
    }

    pub fn space(&self) -> &AnsatzSpace {
        &self.space
    }

    /// Component tuple of basis element `k`.
    pub fn components(&self, k: usize) -> Vec<LaurentPoly> {
        self.space.field(&self.vectors[k][..self.space.unknowns()]).0
    }

    /// Constant unknowns of basis element `k`.
    pub fn extras(&self, k: usize) -> &[Rational] {
        &self.vectors[k][self.space.unknowns()..]
    }

    /// Coefficients over the basis of a component tuple, checked exactly.
    pub fn decompose(&self, comps: &[LaurentPoly]) -> Option<Vec<Rational>> {
        let coords = self.space.coordinates(&VectorField(comps.to_vec()))?;
        self.decompose_coords(&coords)
    }

    fn decompose_coords(&self, coords: &[Rational]) -> Option<Vec<Rational>> {
        let (pivots, inv) = self.solver.as_ref()?;
        let rhs: Vec<Rational> = pivots.iter().map(|&p| coords[p].clone()).collect();
        let coef = if pivots.is_empty() { Vec::new() } else { inv.mul_vec(&rhs).ok()? };
        let mut acc = vec![Rational::zero(); coords.len()];
        for (c, v) in coef.iter().zip(&self.vectors) {
            if !c.is_zero() {
                for (a, x) in acc.iter_mut().zip(v) {
                    if !x.is_zero() {
                        *a += c * x;
                    }
                }
            }
        }
        (acc == coords).then_some(coef)
    }
}

/// Solves `eqs` over `space` without widening.
pub fn solve(eqs: &Equations, space: &AnsatzSpace) -> Result<SymmetryResult> {
    if space.components() != eqs.dim() {
        return Err(Error::InvalidAnsatz("component count differs from the manifold dimension".into()));
    }
    let ring = eqs.j.tensor().ring();
    if !Arc::ptr_eq(ring, space.ring()) && ring.names() != space.ring().names() {
        return Err(Error::InvalidAnsatz("ansatz ring differs from the model chart".into()));
    }
    let kernel = LinearKernel::solve(space, eqs.extra_count(), |c, ex| eqs.residual(&VectorField(c.to_vec()), ex));
    let mut basis = Vec::with_capacity(kernel.dim());
    let mut extras = Vec::with_capacity(kernel.dim());
    let mut verified = true;
    for k in 0..kernel.dim() {
        let v = VectorField(kernel.components(k));
        let ex = kernel.extras(k).to_vec();
        if eqs.residual(&v, &ex).iter().any(|t| !t.is_zero()) {
            verified = false;
        }
        basis.push(v);
        extras.push(ex);
    }
    Ok(SymmetryResult {
        kind: eqs.kind,
        ansatz: space.describe(),
        unknowns: kernel.unknowns(),
        rows: kernel.rows(),
        dim: kernel.dim(),
        basis,
        extras,
        verified,
        stabilized: None,
        brackets: None,
        kernel,
    })
}

/// Solves over `space` and over its widening, then checks bracket closure.
pub fn solve_stabilized(eqs: &Equations, space: &AnsatzSpace) -> Result<SymmetryResult> {
    let mut res = solve(eqs, space)?;
    let wide = solve(eqs, &space.enlarged())?;
    res.stabilized = Some(wide.dim == res.dim);
    res.compute_brackets();
    Ok(res)
}

pub fn cproj_system(connection: &Connection, j: &AlmostComplex, space: &AnsatzSpace) -> Result<SymmetryResult> {
    solve_stabilized(&Equations::cproj(connection, j), space)
}

pub fn affine_system(connection: &Connection, j: &AlmostComplex, space: &AnsatzSpace) -> Result<SymmetryResult> {
    solve_stabilized(&Equations::affine(connection, j), space)
}

pub fn killing_system(metric: &PolyTensor, j: &AlmostComplex, space: &AnsatzSpace) -> Result<SymmetryResult> {
    solve_stabilized(&Equations::killing(metric, j), space)
}

pub fn homothety_system(metric: &PolyTensor, j: &AlmostComplex, space: &AnsatzSpace) -> Result<SymmetryResult> {
    solve_stabilized(&Equations::homothety(metric, j), space)
}

/// Checks a single field against the equations.
pub fn verify(eqs: &Equations, v: &VectorField) -> Result<()> {
    let extras = vec![Rational::zero(); eqs.extra_count()];
    for (k, t) in eqs.residual(v, &extras).iter().enumerate() {
        if !t.is_zero() {
            let name = if k == 1 { "L_v J".to_string() } else { eqs.kind.name().to_string() };
            return Err(Error::NotASymmetry(format!("{name} residual has {} nonzero components", t.nonzero_count())));
        }
    }
    Ok(())
}
