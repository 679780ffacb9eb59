//! Finite-dimensional Lie algebras given by structure constants.
//!
//! Coefficients are polynomials in a (possibly empty) set of parameters, so a
//! family such as a λ-deformation is checked as a polynomial identity.

mod builtins;
mod cochain;
mod manifest;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, LaurentPoly, Ring, Scalar};

pub use builtins::{builtin, builtin_names, lambda_family, s_algebra, s_double_prime, s_prime, sl2};
pub use cochain::{Cochain2, Deformation};
pub use manifest::{parse_algebra, print_algebra};

/// A vector in basis coordinates, sparse and sorted by index.
pub type SparseVec = Vec<(usize, LaurentPoly)>;

/// Sign in a Z₂-grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn times(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// One nonzero Jacobi cyclic sum `[[a,b],c] + [[b,c],a] + [[c,a],b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiTerm {
    pub triple: (usize, usize, usize),
    pub value: SparseVec,
}

/// Outcome of a grading or filtration check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingCheck {
    Pass,
    Fail {
        left: String,
        right: String,
        component: String,
    },
}

impl GradingCheck {
    pub fn passed(&self) -> bool {
        matches!(self, GradingCheck::Pass)
    }
}

#[derive(Clone)]
pub struct StructAlgebra {
    name: String,
    labels: Vec<String>,
    params: Arc<Ring>,
    table: BTreeMap<(usize, usize), SparseVec>,
    grading: Option<Vec<i32>>,
    parity: Option<Vec<Parity>>,
}

fn add_into(acc: &mut BTreeMap<usize, LaurentPoly>, k: usize, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let entry = acc.remove(&k);
    let v = match entry {
        Some(old) => &old + c,
        None => c.clone(),
    };
    if !v.is_zero() {
        acc.insert(k, v);
    }
}

fn finish(acc: BTreeMap<usize, LaurentPoly>) -> SparseVec {
    acc.into_iter().collect()
}

impl StructAlgebra {
    /// Abelian algebra on the given labels with no parameters.
    pub fn new(name: &str, labels: &[&str]) -> Self {
        StructAlgebra::with_params(name, labels, &[])
    }

    pub fn with_params(name: &str, labels: &[&str], params: &[&str]) -> Self {
        StructAlgebra {
            name: name.to_string(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            params: Ring::polynomial(params),
            table: BTreeMap::new(),
            grading: None,
            parity: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn params(&self) -> &Arc<Ring> {
        &self.params
    }

    pub fn is_numeric(&self) -> bool {
        self.params.is_empty()
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVariable(label.to_string()))
    }

    pub fn grading(&self) -> Option<&[i32]> {
        self.grading.as_deref()
    }

    pub fn parity(&self) -> Option<&[Parity]> {
        self.parity.as_deref()
    }

    pub fn set_grading(&mut self, grades: Vec<i32>) -> Result<()> {
        if grades.len() != self.dim() {
            return Err(Error::Dimension("grading length".into()));
        }
        self.grading = Some(grades);
        Ok(())
    }

    pub fn set_parity(&mut self, parity: Vec<Parity>) -> Result<()> {
        if parity.len() != self.dim() {
            return Err(Error::Dimension("parity length".into()));
        }
        self.parity = Some(parity);
        Ok(())
    }

    /// Constant coefficient in the parameter ring.
    pub fn constant(&self, c: Scalar) -> LaurentPoly {
        LaurentPoly::constant(&self.params, c)
    }

    /// Sets `[e_i, e_j] = value`, storing the antisymmetric partner implicitly.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: SparseVec) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n || value.iter().any(|(k, _)| *k >= n) {
            return Err(Error::Dimension("bracket index out of range".into()));
        }
        if i == j {
            return if value.iter().all(|(_, c)| c.is_zero()) {
                Ok(())
            } else {
                Err(Error::InvalidModel("[x,x] must vanish".into()))
            };
        }
        let mut acc = BTreeMap::new();
        for (k, c) in &value {
            if c.ring().as_ref() != self.params.as_ref() {
                return Err(Error::RegistryMismatch {
                    left: self.params.describe(),
                    right: c.ring().describe(),
                });
            }
            if i < j {
                add_into(&mut acc, *k, c);
            } else {
                add_into(&mut acc, *k, &-c);
            }
        }
        let key = (i.min(j), i.max(j));
        if acc.is_empty() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, finish(acc));
        }
        Ok(())
    }

    /// Sets a bracket with integer coefficients, by label.
    pub fn set_int(&mut self, a: &str, b: &str, value: &[(i64, &str)]) -> Result<()> {
        let i = self.index(a)?;
        let j = self.index(b)?;
        let mut v = Vec::new();
        for (c, l) in value {
            v.push((self.index(l)?, self.constant(Scalar::from_int(*c))));
        }
        self.set_bracket(i, j, v)
    }

    /// `[e_i, e_j]` in sparse coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        if i == j {
            return Vec::new();
        }
        match self.table.get(&(i.min(j), i.max(j))) {
            None => Vec::new(),
            Some(v) if i < j => v.clone(),
            Some(v) => v.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    /// Bilinear extension of the bracket to sparse vectors.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                if i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(*i, *j) {
                    add_into(&mut acc, k, &(&ab * &c));
                }
            }
        }
        finish(acc)
    }

    pub fn basis_vector(&self, i: usize) -> SparseVec {
        vec![(i, LaurentPoly::one(&self.params))]
    }

    /// Nonzero structure constants as `((i, j), value)` with `i < j`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec)> {
        self.table.iter()
    }

    fn jacobi_at(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let (ei, ej, ek) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
        let mut acc = BTreeMap::new();
        for (a, b, c) in [(&ei, &ej, &ek), (&ej, &ek, &ei), (&ek, &ei, &ej)] {
            for (idx, v) in self.bracket(&self.bracket(a, b), c) {
                add_into(&mut acc, idx, &v);
            }
        }
        finish(acc)
    }

    /// All nonzero Jacobi cyclic sums over basis triples `i < j < k`.
    pub fn jacobi_residual(&self) -> Vec<JacobiTerm> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let value = self.jacobi_at(i, j, k);
                    if !value.is_empty() {
                        out.push(JacobiTerm { triple: (i, j, k), value });
                    }
                }
            }
        }
        out
    }

    pub fn is_lie(&self) -> bool {
        self.jacobi_residual().is_empty()
    }

    /// Substitutes numeric values for the named parameters.
    pub fn specialize(&self, values: &[(&str, Scalar)]) -> Result<StructAlgebra> {
        let mut point = Vec::new();
        for name in self.params.names() {
            let v = values
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            point.push(v.1.clone());
        }
        let numeric = Ring::polynomial(&[]);
        let mut out = StructAlgebra {
            name: self.name.clone(),
            labels: self.labels.clone(),
            params: numeric.clone(),
            table: BTreeMap::new(),
            grading: self.grading.clone(),
            parity: self.parity.clone(),
        };
        for (&(i, j), v) in &self.table {
            let mut w = Vec::new();
            for (k, c) in v {
                w.push((*k, LaurentPoly::constant(&numeric, c.evaluate(&point)?)));
            }
            out.set_bracket(i, j, w)?;
        }
        Ok(out)
    }

    fn numeric_value(&self, c: &LaurentPoly) -> Result<Scalar> {
        c.as_constant().ok_or(Error::Symbolic)
    }

    /// Dense scalar matrix whose columns are the given sparse vectors.
    fn span_rank(&self, vectors: &[Vec<Scalar>]) -> (usize, Vec<Vec<Scalar>>) {
        if vectors.is_empty() {
            return (0, Vec::new());
        }
        let m = ExactMatrix::from_rows(self.dim(), vectors.to_vec()).expect("consistent lengths");
        let e = m.rref();
        let basis: Vec<Vec<Scalar>> = (0..e.pivots.len()).map(|r| e.reduced.row(r).to_vec()).collect();
        (e.pivots.len(), basis)
    }

    /// Dimensions of `a ⊇ [a,a] ⊇ …` until the sequence stabilizes.
    pub fn derived_series(&self) -> Result<Vec<usize>> {
        if !self.is_numeric() {
            return Err(Error::Symbolic);
        }
        let n = self.dim();
        let mut current: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut v = vec![Scalar::zero(); n];
                v[i] = Scalar::one();
                v
            })
            .collect();
        let mut dims = vec![n];
        loop {
            let mut products = Vec::new();
            for a in 0..current.len() {
                for b in a + 1..current.len() {
                    let x = self.sparse_of(&current[a]);
                    let y = self.sparse_of(&current[b]);
                    let mut v = vec![Scalar::zero(); n];
                    for (k, c) in self.bracket(&x, &y) {
                        v[k] = self.numeric_value(&c)?;
                    }
                    if v.iter().any(|c| !c.is_zero()) {
                        products.push(v);
                    }
                }
            }
            let (dim, basis) = self.span_rank(&products);
            if dim == *dims.last().expect("nonempty") {
                break;
            }
            dims.push(dim);
            if dim == 0 {
                break;
            }
            current = basis;
        }
        Ok(dims)
    }

    fn sparse_of(&self, v: &[Scalar]) -> SparseVec {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, self.constant(c.clone())))
            .collect()
    }

    fn violation(&self, i: usize, j: usize, k: usize) -> GradingCheck {
        GradingCheck::Fail {
            left: self.labels[i].clone(),
            right: self.labels[j].clone(),
            component: self.labels[k].clone(),
        }
    }

    /// Checks `[g_i, g_j] ⊆ g_{i+j}` for the integer grading.
    pub fn check_integer_grading(&self) -> Result<GradingCheck> {
        let g = self.grading.as_ref().ok_or_else(|| Error::InvalidModel("no grading declared".into()))?;
        for (&(i, j), v) in &self.table {
            for (k, _) in v {
                if g[*k] != g[i] + g[j] {
                    return Ok(self.violation(i, j, *k));
                }
            }
        }
        Ok(GradingCheck::Pass)
    }

    /// Checks the filtration condition `[g_i, g_j] ⊆ ⊕_{k ≥ i+j} g_k`.
    pub fn check_filtration(&self) -> Result<GradingCheck> {
        let g = self.grading.as_ref().ok_or_else(|| Error::InvalidModel("no grading declared".into()))?;
        for (&(i, j), v) in &self.table {
            for (k, _) in v {
                if g[*k] < g[i] + g[j] {
                    return Ok(self.violation(i, j, *k));
                }
            }
        }
        Ok(GradingCheck::Pass)
    }

    /// Checks `[s_a, s_b] ⊆ s_{ab}` for the Z₂-grading.
    pub fn check_parity(&self) -> Result<GradingCheck> {
        let p = self.parity.as_ref().ok_or_else(|| Error::InvalidModel("no Z2-grading declared".into()))?;
        for (&(i, j), v) in &self.table {
            for (k, _) in v {
                if p[*k] != p[i].times(p[j]) {
                    return Ok(self.violation(i, j, *k));
                }
            }
        }
        Ok(GradingCheck::Pass)
    }

    /// Checks every declared grading (integer first, then Z₂).
    pub fn check_grading(&self) -> Result<GradingCheck> {
        if self.grading.is_none() && self.parity.is_none() {
            return Err(Error::InvalidModel("no grading declared".into()));
        }
        if self.grading.is_some() {
            let r = self.check_integer_grading()?;
            if !r.passed() {
                return Ok(r);
            }
        }
        if self.parity.is_some() {
            return self.check_parity();
        }
        Ok(GradingCheck::Pass)
    }

    /// Structure constants in the basis `f_i = Σ_k change[k][i] e_k`.
    pub fn transport(&self, change: &ExactMatrix) -> Result<StructAlgebra> {
        if !self.is_numeric() {
            return Err(Error::Symbolic);
        }
        let n = self.dim();
        if change.rows() != n || change.cols() != n {
            return Err(Error::Dimension("change of basis must be square".into()));
        }
        let inv = change.inverse()?;
        let column = |i: usize| -> SparseVec {
            (0..n)
                .filter(|&k| !change.get(k, i).is_zero())
                .map(|k| (k, self.constant(change.get(k, i).clone())))
                .collect()
        };
        let mut out = StructAlgebra {
            name: self.name.clone(),
            labels: self.labels.clone(),
            params: self.params.clone(),
            table: BTreeMap::new(),
            grading: self.grading.clone(),
            parity: self.parity.clone(),
        };
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket(&column(i), &column(j));
                let mut dense = vec![Scalar::zero(); n];
                for (k, c) in b {
                    dense[k] = self.numeric_value(&c)?;
                }
                let coords = inv.mul_vec(&dense)?;
                out.set_bracket(i, j, self.sparse_of(&coords))?;
            }
        }
        Ok(out)
    }

    /// Same labels and identical structure constants.
    pub fn same_structure(&self, other: &StructAlgebra) -> bool {
        self.labels == other.labels && self.params == other.params && self.table == other.table
    }

    pub fn describe_vector(&self, v: &SparseVec) -> String {
        if v.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = v
            .iter()
            .map(|(k, c)| match c.as_constant() {
                Some(s) if s == Scalar::one() => self.labels[*k].clone(),
                Some(s) if s == -Scalar::one() => format!("-{}", self.labels[*k]),
                _ if c.len() == 1 && !c.terms().values().next().is_some_and(|s| s.is_compound()) => {
                    format!("{c}*{}", self.labels[*k])
                }
                _ => format!("({c})*{}", self.labels[*k]),
            })
            .collect();
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Debug for StructAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_algebra(self))
    }
}
