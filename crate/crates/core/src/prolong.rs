//! Curvature-module vectors, their g₀-annihilators and Tanaka prolongations,
//! and the resulting symmetry-dimension bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, LaurentPoly, Rational, Scalar, SparseEchelon};
use crate::slpair::{DoubleElem, Sheet, SlPair, SqMatrix};
use crate::structlie::{Cochain2, Deformation, SparseVec, StructAlgebra};

/// Curvature types: the three harmonic types and the torsion obstruction κ_IV.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvType {
    I,
    II,
    III,
    IV,
}

impl CurvType {
    pub const ALL: [CurvType; 4] = [CurvType::I, CurvType::II, CurvType::III, CurvType::IV];
    pub const HARMONIC: [CurvType; 3] = [CurvType::I, CurvType::II, CurvType::III];

    pub fn name(self) -> &'static str {
        match self {
            CurvType::I => "I",
            CurvType::II => "II",
            CurvType::III => "III",
            CurvType::IV => "IV",
        }
    }
}

impl fmt::Display for CurvType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurvType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "1" => Ok(CurvType::I),
            "II" | "2" => Ok(CurvType::II),
            "III" | "3" => Ok(CurvType::III),
            "IV" | "4" => Ok(CurvType::IV),
            other => Err(Error::InvalidModel(format!("unknown curvature type `{other}`"))),
        }
    }
}

/// An element of Λ²(g₋)* ⊗ g_C, indexed by pairs `a < b` of the complex
/// g₋ basis `u_1..u_n, ū_1..ū_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvElement {
    n: usize,
    values: BTreeMap<(usize, usize), DoubleElem>,
}

/// Flat coordinate key: form pair, sheet, matrix row and column.
pub type CoordKey = (usize, usize, Sheet, usize, usize);

impl CurvElement {
    pub fn zero(n: usize) -> Self {
        CurvElement {
            n,
            values: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Adds `c · (a* ∧ b*) ⊗ value`.
    pub fn add_term(&mut self, a: usize, b: usize, value: &DoubleElem) {
        if a == b || value.is_zero() {
            return;
        }
        let (key, v) = if a < b {
            ((a, b), value.clone())
        } else {
            ((b, a), value.scale(&-Scalar::one()))
        };
        let new = match self.values.remove(&key) {
            Some(old) => old.add(&v),
            None => v,
        };
        if !new.is_zero() {
            self.values.insert(key, new);
        }
    }

    pub fn get(&self, a: usize, b: usize) -> DoubleElem {
        let size = self.n + 1;
        if a == b {
            return DoubleElem::zero(size);
        }
        match self.values.get(&(a.min(b), a.max(b))) {
            None => DoubleElem::zero(size),
            Some(v) if a < b => v.clone(),
            Some(v) => v.scale(&-Scalar::one()),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &DoubleElem)> {
        self.values.iter()
    }

    pub fn add(&self, other: &CurvElement) -> CurvElement {
        let mut out = self.clone();
        for (&(a, b), v) in &other.values {
            out.add_term(a, b, v);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> CurvElement {
        let mut out = CurvElement::zero(self.n);
        for (&(a, b), v) in &self.values {
            out.add_term(a, b, &v.scale(c));
        }
        out
    }

    /// Image under the real structure: `φ̄(x, y) = σ(φ(σx, σy))`.
    pub fn conjugate(&self) -> CurvElement {
        let n = self.n;
        let sigma = |k: usize| if k < n { k + n } else { k - n };
        let mut out = CurvElement::zero(n);
        for (&(a, b), v) in &self.values {
            out.add_term(sigma(a), sigma(b), &v.conjugate());
        }
        out
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// `φ + φ̄`.
    pub fn realified(&self) -> CurvElement {
        self.add(&self.conjugate())
    }

    /// Evaluates on two elements of g₋ given in complex coordinates.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> DoubleElem {
        let mut out = DoubleElem::zero(self.n + 1);
        for (&(a, b), v) in &self.values {
            let c = &(&x[a] * &y[b]) - &(&x[b] * &y[a]);
            if !c.is_zero() {
                out = out.add(&v.scale(&c));
            }
        }
        out
    }

    pub fn coordinates(&self) -> Vec<(CoordKey, Scalar)> {
        let mut out = Vec::new();
        for (&(a, b), v) in &self.values {
            for ((s, r, c), val) in v.coordinates() {
                out.push(((a, b, s, r, c), val.clone()));
            }
        }
        out
    }
}

/// φ₀ together with the real element φ₀ + φ̄₀.
#[derive(Clone, Debug)]
pub struct LowestWeight {
    pub kind: CurvType,
    pub phi0: CurvElement,
    pub real: CurvElement,
}

/// Form slot of a root vector in g₁: `E_{1,k+1}` is the dual of `E_{k+1,1}`.
fn form_slot(g: &SlPair, e: &DoubleElem) -> Result<usize> {
    let mut found = None;
    for ((sheet, r, c), _) in e.coordinates() {
        if r != 0 || c == 0 || found.is_some() {
            return Err(Error::NotARoot("form slot must be a single root vector in g1".into()));
        }
        let offset = if sheet == Sheet::Barred { g.n() } else { 0 };
        found = Some(offset + c - 1);
    }
    found.ok_or_else(|| Error::NotARoot("zero form slot".into()))
}

/// Lowest weight vector of the given type, as root-vector data.
pub fn lowest_weight_vector(kind: CurvType, n: usize) -> Result<LowestWeight> {
    let g = SlPair::build(n)?;
    let tail = |from: usize| -> String {
        (from..=n).map(|k| format!("a{k}")).collect::<Vec<_>>().join("-")
    };
    // (first slot, second slot, value), each as (root, sheet).
    let (a, b, v): ((String, Sheet), (String, Sheet), (String, Sheet)) = match kind {
        CurvType::I if n == 2 => (
            ("a1".into(), Sheet::Unbarred),
            ("a1+a2".into(), Sheet::Unbarred),
            ("a1".into(), Sheet::Unbarred),
        ),
        CurvType::I => (
            ("a1".into(), Sheet::Unbarred),
            ("a1+a2".into(), Sheet::Unbarred),
            (format!("-{}", tail(2)), Sheet::Unbarred),
        ),
        CurvType::II => (
            ("a1".into(), Sheet::Unbarred),
            ("a1".into(), Sheet::Barred),
            (format!("-{}", tail(2)), Sheet::Unbarred),
        ),
        CurvType::III => (
            ("a1".into(), Sheet::Barred),
            ("a1+a2".into(), Sheet::Barred),
            (format!("-{}", tail(1)), Sheet::Unbarred),
        ),
        CurvType::IV => (
            ("a1".into(), Sheet::Unbarred),
            ("a1".into(), Sheet::Barred),
            (format!("-{}", tail(1)), Sheet::Unbarred),
        ),
    };
    let sa = form_slot(&g, &g.root_vector(&a.0, a.1)?)?;
    let sb = form_slot(&g, &g.root_vector(&b.0, b.1)?)?;
    let value = g.root_vector(&v.0, v.1)?;
    let mut phi0 = CurvElement::zero(n);
    phi0.add_term(sa, sb, &value);
    let real = phi0.realified();
    Ok(LowestWeight { kind, phi0, real })
}

/// Matrix of `ad X` on the complex g₋ basis (column `a` holds `[X, e_a]`).
fn action_on_minus(g: &SlPair, x: &DoubleElem) -> Result<Vec<Vec<Scalar>>> {
    let basis = g.minus_basis();
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        cols.push(g.minus_coords(&x.bracket(b))?);
    }
    Ok(cols)
}

/// `(X·φ)(a,b) = [X, φ(a,b)] − φ([X,a], b) − φ(a, [X,b])` for X ∈ g₀ of the double.
pub fn g0_action(g: &SlPair, x: &DoubleElem, phi: &CurvElement) -> Result<CurvElement> {
    if !g.is_in_g0(&x.unbarred) || !g.is_in_g0(&x.barred) {
        return Err(Error::NotInG0);
    }
    let m = action_on_minus(g, x)?;
    let dim = 2 * g.n();
    let mut out = CurvElement::zero(g.n());
    for (&(a, b), v) in phi.terms() {
        out.add_term(a, b, &x.bracket(v));
        // φ([X,e_c], e_d) picks up φ(a,b) whenever [X,e_c] has an e_a component.
        for c in 0..dim {
            let ca = &m[c][a];
            if !ca.is_zero() {
                out.add_term(c, b, &v.scale(&-ca));
            }
            let cb = &m[c][b];
            if !cb.is_zero() {
                out.add_term(a, c, &v.scale(&-cb));
            }
        }
    }
    Ok(out)
}

/// Real g₀ basis elements of g, realified into the double.
fn real_basis(g: &SlPair, grade: i32) -> (Vec<usize>, Vec<DoubleElem>) {
    let idx = g.indices_of_grade(grade);
    let elems = idx.iter().map(|&i| DoubleElem::realify(&g.element(i))).collect();
    (idx, elems)
}

/// Real kernel of a family of complex-coordinate vectors indexed by unknowns.
/// Each unknown contributes a column; Re and Im parts give separate rows.
fn real_kernel<K: Ord + Clone>(columns: &[Vec<(K, Scalar)>]) -> (Vec<Vec<Rational>>, SparseEchelon<Rational>) {
    let mut rows: BTreeMap<(K, bool), Vec<(usize, Rational)>> = BTreeMap::new();
    for (col, entries) in columns.iter().enumerate() {
        for (key, v) in entries {
            if !num_traits::Zero::is_zero(v.re()) {
                rows.entry((key.clone(), false)).or_default().push((col, v.re().clone()));
            }
            if !num_traits::Zero::is_zero(v.im()) {
                rows.entry((key.clone(), true)).or_default().push((col, v.im().clone()));
            }
        }
    }
    let mut e = SparseEchelon::new(columns.len());
    e.extend_sorted(rows.into_values().collect());
    (e.kernel(), e)
}

/// Subspace of g₀ annihilating ψ.
#[derive(Clone, Debug)]
pub struct AnnihilatorResult {
    pub n: usize,
    /// Indices (in the real basis of g) of the g₀ coordinates.
    pub g0_indices: Vec<usize>,
    /// Kernel vectors in g₀ coordinates.
    pub basis: Vec<Vec<Rational>>,
    pub dim: usize,
    /// Reduced linear conditions on the g₀ coordinates.
    pub conditions: Vec<String>,
}

impl AnnihilatorResult {
    pub fn matrices(&self, g: &SlPair) -> Vec<SqMatrix> {
        self.basis
            .iter()
            .map(|v| {
                let mut full = vec![Rational::default(); g.dim()];
                for (k, &i) in self.g0_indices.iter().enumerate() {
                    full[i] = v[k].clone();
                }
                g.from_coords(&full)
            })
            .collect()
    }
}

fn describe_conditions(g: &SlPair, idx: &[usize], e: &SparseEchelon<Rational>) -> Vec<String> {
    e.reduced()
        .values()
        .map(|row| {
            let parts: Vec<String> = row
                .iter()
                .map(|(c, v)| {
                    let label = &g.basis()[idx[*c]].label;
                    if num_traits::One::is_one(v) {
                        label.clone()
                    } else {
                        format!("({v})*{label}")
                    }
                })
                .collect();
            format!("{} = 0", parts.join(" + "))
        })
        .collect()
}

pub fn annihilator(g: &SlPair, psi: &CurvElement) -> Result<AnnihilatorResult> {
    if psi.is_zero() {
        return Err(Error::InvalidModel("annihilator of the zero vector".into()));
    }
    let (idx, elems) = real_basis(g, 0);
    let mut columns = Vec::with_capacity(elems.len());
    for x in &elems {
        columns.push(g0_action(g, x, psi)?.coordinates());
    }
    let (basis, e) = real_kernel(&columns);
    let conditions = describe_conditions(g, &idx, &e);
    Ok(AnnihilatorResult {
        n: g.n(),
        dim: basis.len(),
        g0_indices: idx,
        basis,
        conditions,
    })
}

/// Graded pieces of the Tanaka prolongation of (g₋, 𝔞₀).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongationResult {
    pub dim_minus: usize,
    pub dim_a0: usize,
    pub dim_a1: usize,
    pub total: usize,
    pub rigid: bool,
}

/// 𝔞₁ = { X ∈ g₁ : [X, v]·ψ = 0 for all v ∈ g₋₁ } and the total dimension.
pub fn tanaka_prolongation(g: &SlPair, psi: &CurvElement) -> Result<ProlongationResult> {
    let ann = annihilator(g, psi)?;
    let (_, plus) = real_basis(g, 1);
    let (_, minus) = real_basis(g, -1);
    let mut columns = Vec::with_capacity(plus.len());
    for x in &plus {
        let mut col = Vec::new();
        for (j, v) in minus.iter().enumerate() {
            let y = x.bracket(v);
            for ((a, b, s, r, c), val) in g0_action(g, &y, psi)?.coordinates() {
                col.push(((j, a, b, s, r, c), val));
            }
        }
        columns.push(col);
    }
    let (kernel, _) = real_kernel(&columns);
    let dim_minus = 2 * g.n();
    let total = dim_minus + ann.dim + kernel.len();
    Ok(ProlongationResult {
        dim_minus,
        dim_a0: ann.dim,
        dim_a1: kernel.len(),
        total,
        rigid: kernel.is_empty(),
    })
}

/// Closed form for dim 𝔞₀ of each curvature type.
pub fn annihilator_closed_form(kind: CurvType, n: usize) -> usize {
    let n = n as i64;
    let v = match kind {
        CurvType::I | CurvType::III if n == 2 => 4,
        CurvType::I => 2 * (n * n - 3 * n + 5),
        CurvType::II => 2 * (n * n - 2 * n + 2),
        CurvType::III => 2 * (n * n - 3 * n + 6),
        CurvType::IV => 2 * (n - 1) * (n - 1) + 2,
    };
    v as usize
}

/// Closed-form submaximal dimension within a type (𝔖; the κ_IV row is its algebraic bound).
pub fn submaximal_closed_form(kind: CurvType, n: usize) -> usize {
    let n = n as i64;
    let v = match kind {
        CurvType::I if n == 2 => 6,
        CurvType::I => 2 * n * n - 4 * n + 10,
        CurvType::II => 2 * n * n - 2 * n + 4,
        CurvType::III if n == 2 => 8,
        CurvType::III => 2 * n * n - 4 * n + 12,
        CurvType::IV => 2 * n + 2 * (n - 1) * (n - 1) + 2,
    };
    v as usize
}

/// Overall submaximal dimension `2n² − 2n + 4 + 2δ_{3,n}`.
pub fn overall_submaximal(n: usize) -> usize {
    2 * n * n - 2 * n + 4 + if n == 3 { 2 } else { 0 }
}

/// Algebraic upper bound 𝔘 = 2n + dim 𝔞₀ for the lowest weight vector of the type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBound {
    pub kind: CurvType,
    pub n: usize,
    pub bound: usize,
    pub ann_dim: usize,
    pub rigid: bool,
    /// Set when the realizable maximum is known to be smaller.
    pub advisory: Option<String>,
}

pub fn upper_bound(kind: CurvType, n: usize) -> Result<UpperBound> {
    let g = SlPair::build(n)?;
    let lw = lowest_weight_vector(kind, n)?;
    let p = tanaka_prolongation(&g, &lw.real)?;
    let advisory = (kind == CurvType::I && n == 2).then(|| {
        format!(
            "algebraic bound {} is not realized; the type I maximum in complex dimension 2 is 6",
            p.total
        )
    });
    Ok(UpperBound {
        kind,
        n,
        bound: p.total,
        ann_dim: p.dim_a0,
        rigid: p.rigid,
        advisory,
    })
}

/// One row of the dimension table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    /// 𝔘 for types I, II, III, IV.
    pub bounds: [usize; 4],
    /// 𝔖 for types I, II, III (closed forms).
    pub submaximal: [usize; 3],
    /// max over the harmonic types.
    pub overall: usize,
    pub rigid: bool,
    pub advisories: Vec<String>,
}

pub fn theorem_row(n: usize) -> Result<TableRow> {
    if !(2..=8).contains(&n) {
        return Err(Error::InvalidN(n, "2 <= n <= 8"));
    }
    let mut bounds = [0; 4];
    let mut rigid = true;
    let mut advisories = Vec::new();
    for (k, kind) in CurvType::ALL.iter().enumerate() {
        let u = upper_bound(*kind, n)?;
        bounds[k] = u.bound;
        rigid &= u.rigid;
        if let Some(a) = u.advisory {
            advisories.push(a);
        }
    }
    // Realizable maxima: the bound itself except for the known type I exception.
    let realized = |k: usize| if k == 0 && n == 2 { 6 } else { bounds[k] };
    let submaximal = [realized(0), realized(1), realized(2)];
    let overall = *submaximal.iter().max().expect("three types");
    Ok(TableRow {
        n,
        bounds,
        submaximal,
        overall,
        rigid,
        advisories,
    })
}

pub fn theorem_table(ns: impl IntoIterator<Item = usize>) -> Result<Vec<TableRow>> {
    ns.into_iter().map(theorem_row).collect()
}

/// The Tanaka algebra 𝔞 = g₋ ⊕ 𝔞₀ with the cochain ψ, both on a real basis.
#[derive(Clone, Debug)]
pub struct TanakaAlgebra {
    pub algebra: StructAlgebra,
    pub psi: Cochain2,
}

/// Builds 𝔞 = g₋ ⊕ ann(ψ) and ψ restricted to g₋ as a cochain with values in 𝔞.
pub fn tanaka_algebra(kind: CurvType, n: usize) -> Result<TanakaAlgebra> {
    let g = SlPair::build(n)?;
    let lw = lowest_weight_vector(kind, n)?;
    let ann = annihilator(&g, &lw.real)?;
    let minus_idx = g.indices_of_grade(-1);
    let mut mats: Vec<SqMatrix> = minus_idx.iter().map(|&i| g.element(i)).collect();
    let mut labels: Vec<String> = minus_idx.iter().map(|&i| g.basis()[i].label.clone()).collect();
    for (k, m) in ann.matrices(&g).into_iter().enumerate() {
        mats.push(m);
        labels.push(format!("a{}", k + 1));
    }
    let dim = mats.len();
    // Coordinates of 𝔞 basis elements in the real basis of g, as matrix columns.
    let coords: Vec<Vec<Rational>> = mats.iter().map(|m| g.coords(m)).collect::<Result<_>>()?;
    let mut cols = ExactMatrix::<Rational>::zeros(g.dim(), dim);
    for (j, c) in coords.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            cols.set(i, j, v.clone());
        }
    }
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let mut alg = StructAlgebra::new(&format!("tanaka-{kind}-n{n}"), &label_refs);
    let express = |m: &SqMatrix| -> Result<SparseVec> {
        let target = g.coords(m)?;
        let x = cols
            .solve(&target)
            .ok_or_else(|| Error::OutsideAlgebra(format!("{m:?}")))?;
        Ok(x.into_iter()
            .enumerate()
            .filter(|(_, v)| !num_traits::Zero::is_zero(v))
            .map(|(k, v)| (k, LaurentPoly::constant(alg.params(), Scalar::real(v))))
            .collect())
    };
    let mut table = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            table.push((i, j, express(&mats[i].commutator(&mats[j]))?));
        }
    }
    let mut grades = vec![-1; minus_idx.len()];
    grades.extend(std::iter::repeat_n(0, ann.dim));
    let mut psi = Cochain2::new((0..minus_idx.len()).collect());
    for i in 0..minus_idx.len() {
        for j in i + 1..minus_idx.len() {
            let x = g.minus_coords(&DoubleElem::realify(&mats[i]))?;
            let y = g.minus_coords(&DoubleElem::realify(&mats[j]))?;
            let v = lw.real.eval(&x, &y);
            if !v.is_real() {
                return Err(Error::OutsideAlgebra("cochain value is not real".into()));
            }
            psi.set(i, j, express(&v.unbarred)?)?;
        }
    }
    for (i, j, v) in table {
        alg.set_bracket(i, j, v)?;
    }
    alg.set_grading(grades)?;
    Ok(TanakaAlgebra { algebra: alg, psi })
}

/// Deforms the Tanaka algebra by ψ.
pub fn deformation(kind: CurvType, n: usize) -> Result<Deformation> {
    let t = tanaka_algebra(kind, n)?;
    t.algebra.deform_by_cochain(&t.psi)
}
