//! The graded real Lie algebra sl(n+1, C) viewed over R, its parabolic
//! grading, root vectors, and the complexified double g ⊕ ḡ.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rational, Scalar};
use crate::structlie::StructAlgebra;

/// Sparse square matrix over Q(i).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SqMatrix {
    size: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SqMatrix {
    pub fn zero(size: usize) -> Self {
        SqMatrix {
            size,
            entries: BTreeMap::new(),
        }
    }

    /// Elementary matrix with a single entry (0-based indices).
    pub fn unit(size: usize, row: usize, col: usize, c: Scalar) -> Self {
        let mut m = SqMatrix::zero(size);
        m.add_entry(row, col, &c);
        m
    }

    pub fn diagonal(values: &[Scalar]) -> Self {
        let mut m = SqMatrix::zero(values.len());
        for (i, v) in values.iter().enumerate() {
            m.add_entry(i, i, v);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries.get(&(row, col)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn add_entry(&mut self, row: usize, col: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (row, col);
        let v = match self.entries.remove(&key) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.entries.insert(key, v);
        }
    }

    pub fn add(&self, other: &SqMatrix) -> SqMatrix {
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_entry(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &SqMatrix) -> SqMatrix {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> SqMatrix {
        if c.is_zero() {
            return SqMatrix::zero(self.size);
        }
        SqMatrix {
            size: self.size,
            entries: self.entries.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SqMatrix) -> SqMatrix {
        let mut out = SqMatrix::zero(self.size);
        for (&(i, k), a) in &self.entries {
            for (&(k2, j), b) in other.entries.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                out.add_entry(i, j, &(a * b));
            }
        }
        out
    }

    pub fn commutator(&self, other: &SqMatrix) -> SqMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn conj(&self) -> SqMatrix {
        SqMatrix {
            size: self.size,
            entries: self.entries.iter().map(|(k, v)| (*k, v.conj())).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for (&(r, c), v) in &self.entries {
            if r == c {
                t += v;
            }
        }
        t
    }
}

impl fmt::Debug for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(&(r, c), v)| format!("({v})E{}{}", r + 1, c + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Which copy of sl(n+1, C) inside the double.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sheet {
    Unbarred,
    Barred,
}

/// An element `(A, B)` of g_C = g ⊕ ḡ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DoubleElem {
    pub unbarred: SqMatrix,
    pub barred: SqMatrix,
}

impl DoubleElem {
    pub fn zero(size: usize) -> Self {
        DoubleElem {
            unbarred: SqMatrix::zero(size),
            barred: SqMatrix::zero(size),
        }
    }

    pub fn on_sheet(sheet: Sheet, m: SqMatrix) -> Self {
        let z = SqMatrix::zero(m.size());
        match sheet {
            Sheet::Unbarred => DoubleElem { unbarred: m, barred: z },
            Sheet::Barred => DoubleElem { unbarred: z, barred: m },
        }
    }

    /// Embedding of g: `A ↦ (A, Ā)`.
    pub fn realify(m: &SqMatrix) -> Self {
        DoubleElem {
            unbarred: m.clone(),
            barred: m.conj(),
        }
    }

    /// The real structure `(A, B) ↦ (B̄, Ā)`; its fixed points are the image of `realify`.
    pub fn conjugate(&self) -> Self {
        DoubleElem {
            unbarred: self.barred.conj(),
            barred: self.unbarred.conj(),
        }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    pub fn is_zero(&self) -> bool {
        self.unbarred.is_zero() && self.barred.is_zero()
    }

    pub fn sheet(&self, s: Sheet) -> &SqMatrix {
        match s {
            Sheet::Unbarred => &self.unbarred,
            Sheet::Barred => &self.barred,
        }
    }

    pub fn bracket(&self, other: &DoubleElem) -> DoubleElem {
        DoubleElem {
            unbarred: self.unbarred.commutator(&other.unbarred),
            barred: self.barred.commutator(&other.barred),
        }
    }

    pub fn add(&self, other: &DoubleElem) -> DoubleElem {
        DoubleElem {
            unbarred: self.unbarred.add(&other.unbarred),
            barred: self.barred.add(&other.barred),
        }
    }

    pub fn scale(&self, c: &Scalar) -> DoubleElem {
        DoubleElem {
            unbarred: self.unbarred.scale(c),
            barred: self.barred.scale(c),
        }
    }

    /// Flat coordinates `(sheet, row, col) → value`.
    pub fn coordinates(&self) -> impl Iterator<Item = ((Sheet, usize, usize), &Scalar)> {
        self.unbarred
            .entries()
            .map(|(&(r, c), v)| ((Sheet::Unbarred, r, c), v))
            .chain(self.barred.entries().map(|(&(r, c), v)| ((Sheet::Barred, r, c), v)))
    }
}

/// A root `±(α_first + … + α_last)` of sl(n+1), 1-based simple-root indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Root {
    pub positive: bool,
    pub first: usize,
    pub last: usize,
}

impl Root {
    /// Parses sums such as `a1+a2`, `-a2-a3-a4`; bars are chosen separately.
    pub fn parse(text: &str, n: usize) -> Result<Root> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let not_root = || Error::NotARoot(text.to_string());
        if compact.is_empty() {
            return Err(not_root());
        }
        let mut signs = Vec::new();
        let mut idx = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, r) = match rest.as_bytes()[0] {
                b'-' => (false, &rest[1..]),
                b'+' => (true, &rest[1..]),
                _ if signs.is_empty() => (true, rest),
                _ => return Err(not_root()),
            };
            let r = r.strip_prefix("alpha").or_else(|| r.strip_prefix('a')).ok_or_else(not_root)?;
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            let k: usize = r[..end].parse().map_err(|_| not_root())?;
            signs.push(sign);
            idx.push(k);
            rest = &r[end..];
        }
        let positive = signs[0];
        if signs.iter().any(|&s| s != positive) {
            return Err(not_root());
        }
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        let (first, last) = (sorted[0], *sorted.last().expect("nonempty"));
        let consecutive = sorted.windows(2).all(|w| w[1] == w[0] + 1);
        if !consecutive || first == 0 || last > n {
            return Err(not_root());
        }
        Ok(Root { positive, first, last })
    }

    /// Value of the root on a diagonal matrix `diag(h_1, …, h_{n+1})`.
    fn pair(&self, diag: &[Scalar]) -> Scalar {
        let v = &diag[self.first - 1] - &diag[self.last];
        if self.positive {
            v
        } else {
            -v
        }
    }
}

/// Real basis element of g: `E_jk`, `i·E_jk`, or a diagonal `E_jj - E_22`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElem {
    pub row: usize,
    pub col: usize,
    pub imaginary: bool,
    pub grade: i32,
    pub label: String,
}

/// sl(n+1, C)_R with its |1|-grading.
#[derive(Clone, Debug)]
pub struct SlPair {
    n: usize,
    basis: Vec<BasisElem>,
}

const DEPENDENT: usize = 1;

impl SlPair {
    /// Basis order: row-major on `(j, k)`, each position giving `E` then `iE`;
    /// the diagonal entry `(2,2)` is the dependent one.
    pub fn build(n: usize) -> Result<SlPair> {
        if n < 2 {
            return Err(Error::InvalidN(n, "n >= 2"));
        }
        let size = n + 1;
        let mut basis = Vec::new();
        for row in 0..size {
            for col in 0..size {
                if row == col && row == DEPENDENT {
                    continue;
                }
                let grade = match (row, col) {
                    (0, 0) => 0,
                    (0, _) => 1,
                    (_, 0) => -1,
                    _ => 0,
                };
                for imaginary in [false, true] {
                    let base = if row == col {
                        format!("E{}{}-E22", row + 1, col + 1)
                    } else {
                        format!("E{}{}", row + 1, col + 1)
                    };
                    let label = if imaginary { format!("i({base})") } else { base };
                    basis.push(BasisElem {
                        row,
                        col,
                        imaginary,
                        grade,
                        label,
                    });
                }
            }
        }
        Ok(SlPair { n, basis })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    /// `(dim g₋₁, dim g₀, dim g₁)` over R.
    pub fn part_dims(&self) -> (usize, usize, usize) {
        let count = |g| self.basis.iter().filter(|b| b.grade == g).count();
        (count(-1), count(0), count(1))
    }

    pub fn indices_of_grade(&self, grade: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].grade == grade).collect()
    }

    pub fn element(&self, i: usize) -> SqMatrix {
        let b = &self.basis[i];
        let c = if b.imaginary { Scalar::i() } else { Scalar::one() };
        let mut m = SqMatrix::unit(self.size(), b.row, b.col, c.clone());
        if b.row == b.col {
            m.add_entry(DEPENDENT, DEPENDENT, &-c);
        }
        m
    }

    /// Real coordinates of a traceless matrix in the basis.
    pub fn coords(&self, m: &SqMatrix) -> Result<Vec<Rational>> {
        if !m.trace().is_zero() {
            return Err(Error::Dimension("matrix is not traceless".into()));
        }
        Ok(self
            .basis
            .iter()
            .map(|b| {
                let v = m.get(b.row, b.col);
                if b.imaginary {
                    v.im().clone()
                } else {
                    v.re().clone()
                }
            })
            .collect())
    }

    pub fn from_coords(&self, coords: &[Rational]) -> SqMatrix {
        let mut m = SqMatrix::zero(self.size());
        for (i, c) in coords.iter().enumerate() {
            if !num_traits::Zero::is_zero(c) {
                m = m.add(&self.element(i).scale(&Scalar::real(c.clone())));
            }
        }
        m
    }

    /// `Z = diag(n/(n+1), -1/(n+1), …, -1/(n+1))`.
    pub fn grading_element(&self) -> SqMatrix {
        let n = self.n as i64;
        let mut d = vec![Scalar::ratio(-1, n + 1); self.size()];
        d[0] = Scalar::ratio(n, n + 1);
        SqMatrix::diagonal(&d)
    }

    /// Grade of a matrix supported in one graded piece, if any.
    pub fn grade_of(&self, m: &SqMatrix) -> Option<i32> {
        let mut grade = None;
        for (&(r, c), _) in m.entries() {
            let g = match (r, c) {
                (0, 0) => 0,
                (0, _) => 1,
                (_, 0) => -1,
                _ => 0,
            };
            match grade {
                None => grade = Some(g),
                Some(h) if h != g => return None,
                _ => {}
            }
        }
        grade
    }

    pub fn is_in_g0(&self, m: &SqMatrix) -> bool {
        m.is_zero() || self.grade_of(m) == Some(0)
    }

    /// Structure constants of g on the real basis, with the integer grading.
    pub fn to_struct_algebra(&self) -> Result<StructAlgebra> {
        let labels: Vec<&str> = self.basis.iter().map(|b| b.label.as_str()).collect();
        let mut a = StructAlgebra::new(&format!("sl({},C)_R", self.size()), &labels);
        let elems: Vec<SqMatrix> = (0..self.dim()).map(|i| self.element(i)).collect();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let c = self.coords(&elems[i].commutator(&elems[j]))?;
                let v = c
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !num_traits::Zero::is_zero(x))
                    .map(|(k, x)| (k, LaurentPoly::constant(a.params(), Scalar::real(x))))
                    .collect();
                a.set_bracket(i, j, v)?;
            }
        }
        a.set_grading(self.basis.iter().map(|b| b.grade).collect())?;
        Ok(a)
    }

    /// Root vector `e_β` as an elementary matrix on the chosen sheet.
    pub fn root_vector(&self, root: &str, sheet: Sheet) -> Result<DoubleElem> {
        let r = Root::parse(root, self.n)?;
        let (row, col) = if r.positive {
            (r.first - 1, r.last)
        } else {
            (r.last, r.first - 1)
        };
        let e = SqMatrix::unit(self.size(), row, col, Scalar::one());
        // Weight check against the Cartan elements H_k = E_kk - E_{k+1,k+1}.
        for k in 0..self.n {
            let mut d = vec![Scalar::zero(); self.size()];
            d[k] = Scalar::one();
            d[k + 1] = -Scalar::one();
            let h = SqMatrix::diagonal(&d);
            if h.commutator(&e) != e.scale(&r.pair(&d)) {
                return Err(Error::NotARoot(root.to_string()));
            }
        }
        Ok(DoubleElem::on_sheet(sheet, e))
    }

    /// Complex basis of g₋ ⊂ g_C: `u_k = (E_{k+1,1}, 0)` then `ū_k = (0, E_{k+1,1})`.
    pub fn minus_basis(&self) -> Vec<DoubleElem> {
        let mut out = Vec::new();
        for sheet in [Sheet::Unbarred, Sheet::Barred] {
            for k in 1..=self.n {
                out.push(DoubleElem::on_sheet(sheet, SqMatrix::unit(self.size(), k, 0, Scalar::one())));
            }
        }
        out
    }

    /// Coordinates of a g₋ element of the double in [`SlPair::minus_basis`].
    pub fn minus_coords(&self, x: &DoubleElem) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); 2 * self.n];
        for ((sheet, r, c), val) in x.coordinates() {
            if c != 0 || r == 0 {
                return Err(Error::Dimension("element is not in g-".into()));
            }
            let offset = if sheet == Sheet::Barred { self.n } else { 0 };
            v[offset + r - 1] = val.clone();
        }
        Ok(v)
    }

    /// Position of a complex g₋ basis vector under the real structure.
    pub fn conjugate_index(&self, k: usize) -> usize {
        if k < self.n {
            k + self.n
        } else {
            k - self.n
        }
    }
}
