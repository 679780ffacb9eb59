//! Tensor calculus in a real coordinate chart.
//!
//! Index conventions:
//! * `J^i_j` is stored at `[i, j]`, so `J(∂_j) = J^i_j ∂_i`.
//! * Christoffel symbols `Γ^i_{jk}` are stored at `[i, j, k]` with `∇_{∂_j} ∂_k = Γ^i_{jk} ∂_i`.
//! * Torsion `T^i_{jk} = Γ^i_{jk} - Γ^i_{kj}`.
//! * Curvature `R^i_{jkl}` at `[i, j, k, l]` is the `∂_i` component of `R(∂_k, ∂_l) ∂_j`.

pub mod complex;
pub mod frame;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Ring, Scalar, VarKind};

pub use complex::{CIndex, ComplexTerm};
pub use frame::{frame_to_coordinates, FrameData, FrameResult};

/// `original = replacement^power`, e.g. `p = s^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub original: String,
    pub replacement: String,
    pub power: u32,
}

/// A real coordinate chart: the coordinate ring plus input aliases.
///
/// Aliases are names accepted by [`Chart::parse`] that expand to chart
/// expressions: `z1 = x1 + I*y1`, `zb1 = x1 - I*y1` on complex charts, or the
/// original variable of a substitution.
#[derive(Clone, Debug)]
pub struct Chart {
    ring: Arc<Ring>,
    parse_ring: Arc<Ring>,
    images: Vec<LaurentPoly>,
    substitution: Option<Substitution>,
    complex: bool,
}

impl Chart {
    pub fn new(coords: &[(&str, VarKind)], denominators: &[&str]) -> Result<Chart> {
        if coords.is_empty() || !coords.len().is_multiple_of(2) {
            return Err(Error::InvalidModel(format!("chart needs an even number of coordinates, got {}", coords.len())));
        }
        let ring = Ring::with_denominators(coords, denominators)?;
        Ok(Chart::assemble(ring, Vec::new(), None, false))
    }

    /// `C^n` with real coordinates `x1, y1, …, xn, yn` and aliases `zk`, `zbk`.
    pub fn complex(n: usize, denominators: &[&str]) -> Result<Chart> {
        let names: Vec<String> = (1..=n).flat_map(|k| [format!("x{k}"), format!("y{k}")]).collect();
        let coords: Vec<(&str, VarKind)> = names.iter().map(|s| (s.as_str(), VarKind::Ordinary)).collect();
        let ring = Ring::with_denominators(&coords, denominators)?;
        let mut aliases = Vec::new();
        for k in 0..n {
            let x = LaurentPoly::var_index(&ring, 2 * k);
            let y = LaurentPoly::var_index(&ring, 2 * k + 1).scale(&Scalar::i());
            aliases.push((format!("z{}", k + 1), &x + &y, VarKind::Ordinary));
            aliases.push((format!("zb{}", k + 1), &x - &y, VarKind::Ordinary));
        }
        Ok(Chart::assemble(ring, aliases, None, true))
    }

    /// A chart whose inputs are written in coordinates where `sub.original`
    /// replaces the chart coordinate `sub.replacement`.
    pub fn with_substitution(coords: &[(&str, VarKind)], denominators: &[&str], sub: Substitution) -> Result<Chart> {
        let ring = Ring::with_denominators(coords, denominators)?;
        if !coords.len().is_multiple_of(2) {
            return Err(Error::InvalidModel("chart needs an even number of coordinates".into()));
        }
        if sub.power == 0 {
            return Err(Error::InvalidModel("substitution power must be positive".into()));
        }
        let image = LaurentPoly::var(&ring, &sub.replacement)?.pow(sub.power);
        Ok(Chart::assemble(ring, vec![(sub.original.clone(), image, VarKind::Laurent)], Some(sub), false))
    }

    fn assemble(ring: Arc<Ring>, aliases: Vec<(String, LaurentPoly, VarKind)>, substitution: Option<Substitution>, complex: bool) -> Chart {
        let extra: Vec<(&str, VarKind)> = aliases.iter().map(|(n, _, k)| (n.as_str(), *k)).collect();
        let parse_ring = ring.extended(&extra);
        let mut images: Vec<LaurentPoly> = (0..ring.len()).map(|i| LaurentPoly::var_index(&ring, i)).collect();
        images.extend(aliases.into_iter().map(|(_, p, _)| p));
        Chart {
            ring,
            parse_ring,
            images,
            substitution,
            complex,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.ring.len()
    }

    /// Complex dimension.
    pub fn n(&self) -> usize {
        self.ring.len() / 2
    }

    pub fn is_complex(&self) -> bool {
        self.complex
    }

    pub fn substitution(&self) -> Option<&Substitution> {
        self.substitution.as_ref()
    }

    pub fn coordinate_names(&self) -> &[String] {
        self.ring.names()
    }

    /// Parses an expression that may use aliases.
    pub fn parse(&self, text: &str) -> Result<LaurentPoly> {
        let raw = LaurentPoly::parse(&self.parse_ring, text)?;
        raw.substitute(&self.ring, &self.images)
    }

    pub fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(&self.ring)
    }

    pub fn constant(&self, c: Scalar) -> LaurentPoly {
        LaurentPoly::constant(&self.ring, c)
    }

    fn substitution_factor(&self) -> Result<Option<(usize, LaurentPoly)>> {
        let Some(sub) = &self.substitution else { return Ok(None) };
        let idx = self.ring.index_of(&sub.replacement)?;
        // d(original) = power * r^(power-1) d(r)
        let f = LaurentPoly::var_index(&self.ring, idx)
            .pow(sub.power - 1)
            .scale(&Scalar::from_int(sub.power as i64));
        Ok(Some((idx, f)))
    }

    /// Converts components written against `∂_original` into chart components.
    pub fn vector_from_original(&self, comps: Vec<LaurentPoly>) -> Result<VectorField> {
        let mut comps = comps;
        if comps.len() != self.dim() {
            return Err(Error::Dimension(format!("{} components in a {}-dimensional chart", comps.len(), self.dim())));
        }
        if let Some((idx, f)) = self.substitution_factor()? {
            comps[idx] = comps[idx].try_div(&f)?;
        }
        Ok(VectorField(comps))
    }

    /// Converts components written against `d(original)` into chart components.
    pub fn covector_from_original(&self, comps: Vec<LaurentPoly>) -> Result<Vec<LaurentPoly>> {
        let mut comps = comps;
        if comps.len() != self.dim() {
            return Err(Error::Dimension(format!("{} components in a {}-dimensional chart", comps.len(), self.dim())));
        }
        if let Some((idx, f)) = self.substitution_factor()? {
            comps[idx] = comps[idx].try_mul(&f)?;
        }
        Ok(comps)
    }
}

/// A vector field given by its coordinate components.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField(pub Vec<LaurentPoly>);

impl VectorField {
    pub fn zero(ring: &Arc<Ring>, dim: usize) -> Self {
        VectorField(vec![LaurentPoly::zero(ring); dim])
    }

    /// `c ∂_i`.
    pub fn coordinate(ring: &Arc<Ring>, dim: usize, i: usize, c: LaurentPoly) -> Self {
        let mut v = VectorField::zero(ring, dim);
        v.0[i] = c;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[LaurentPoly] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> VectorField {
        VectorField(self.0.iter().map(|a| a.scale(c)).collect())
    }

    /// Lie bracket `[self, other]`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let m = self.dim();
        let comps = (0..m)
            .map(|i| {
                let mut acc = LaurentPoly::zero(self.0[0].ring());
                for a in 0..m {
                    if !self.0[a].is_zero() {
                        acc = &acc + &(&self.0[a] * &other.0[i].derivative_idx(a));
                    }
                    if !other.0[a].is_zero() {
                        acc = &acc - &(&other.0[a] * &self.0[i].derivative_idx(a));
                    }
                }
                acc
            })
            .collect();
        VectorField(comps)
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A tensor field of valence (upper, lower). Index order is uppers then lowers.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyTensor {
    ring: Arc<Ring>,
    dim: usize,
    upper: usize,
    lower: usize,
    comps: BTreeMap<Vec<usize>, LaurentPoly>,
}

impl PolyTensor {
    pub fn zeros(ring: &Arc<Ring>, dim: usize, upper: usize, lower: usize) -> Self {
        PolyTensor {
            ring: ring.clone(),
            dim,
            upper,
            lower,
            comps: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.upper, self.lower)
    }

    pub fn rank(&self) -> usize {
        self.upper + self.lower
    }

    pub fn get(&self, idx: &[usize]) -> LaurentPoly {
        self.comps.get(idx).cloned().unwrap_or_else(|| LaurentPoly::zero(&self.ring))
    }

    pub fn entry(&self, idx: &[usize]) -> Option<&LaurentPoly> {
        self.comps.get(idx)
    }

    pub fn set(&mut self, idx: &[usize], v: LaurentPoly) {
        debug_assert_eq!(idx.len(), self.rank());
        if v.is_zero() {
            self.comps.remove(idx);
        } else {
            self.comps.insert(idx.to_vec(), v);
        }
    }

    pub fn add_at(&mut self, idx: &[usize], v: &LaurentPoly) {
        if v.is_zero() {
            return;
        }
        match self.comps.get_mut(idx) {
            Some(cur) => {
                *cur = &*cur + v;
                if cur.is_zero() {
                    self.comps.remove(idx);
                }
            }
            None => {
                self.comps.insert(idx.to_vec(), v.clone());
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &LaurentPoly)> {
        self.comps.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn nonzero_count(&self) -> usize {
        self.comps.len()
    }

    fn same_shape(&self, other: &PolyTensor) -> Result<()> {
        if self.dim != other.dim || self.upper != other.upper || self.lower != other.lower {
            return Err(Error::Dimension(format!(
                "tensor shapes ({},{};{}) and ({},{};{})",
                self.upper, self.lower, self.dim, other.upper, other.lower, other.dim
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PolyTensor) -> Result<PolyTensor> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (k, v) in &other.comps {
            out.add_at(k, v);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &PolyTensor) -> Result<PolyTensor> {
        self.try_add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> PolyTensor {
        let mut out = PolyTensor::zeros(&self.ring, self.dim, self.upper, self.lower);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.comps {
            out.comps.insert(k.clone(), v.scale(c));
        }
        out
    }

    pub fn mul_poly(&self, f: &LaurentPoly) -> PolyTensor {
        let mut out = PolyTensor::zeros(&self.ring, self.dim, self.upper, self.lower);
        for (k, v) in &self.comps {
            out.set(k, v * f);
        }
        out
    }

    /// Exchanges two lower slots (0-based among the lower indices).
    pub fn swap_lower(&self, a: usize, b: usize) -> PolyTensor {
        let mut out = PolyTensor::zeros(&self.ring, self.dim, self.upper, self.lower);
        for (k, v) in &self.comps {
            let mut k2 = k.clone();
            k2.swap(self.upper + a, self.upper + b);
            out.comps.insert(k2, v.clone());
        }
        out
    }

    /// True when antisymmetric in the two given lower slots.
    pub fn is_antisymmetric(&self, a: usize, b: usize) -> bool {
        self.try_add(&self.swap_lower(a, b)).map(|s| s.is_zero()).unwrap_or(false)
    }

    /// Canonical sparse text: one `name^i_jk = value` line per nonzero
    /// component, sorted by multi-index, 1-based indices.
    pub fn to_text(&self, name: &str) -> String {
        let mut out = String::new();
        for (k, v) in &self.comps {
            let up: Vec<String> = k[..self.upper].iter().map(|i| (i + 1).to_string()).collect();
            let lo: Vec<String> = k[self.upper..].iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(name);
            if !up.is_empty() {
                out.push('^');
                out.push_str(&up.join(","));
            }
            if !lo.is_empty() {
                out.push('_');
                out.push_str(&lo.join(","));
            }
            out.push_str(" = ");
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for PolyTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("T"))
    }
}

/// An almost complex structure `J` with `J∘J = -Id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostComplex {
    j: PolyTensor,
    columns: Vec<Vec<(usize, LaurentPoly)>>,
    rows: Vec<Vec<(usize, LaurentPoly)>>,
}

impl AlmostComplex {
    pub fn new(j: PolyTensor) -> Result<Self> {
        if j.valence() != (1, 1) {
            return Err(Error::Dimension("J must be a (1,1) tensor".into()));
        }
        let m = j.dim();
        let mut columns = vec![Vec::new(); m];
        let mut rows = vec![Vec::new(); m];
        for (k, v) in j.iter() {
            columns[k[1]].push((k[0], v.clone()));
            rows[k[0]].push((k[1], v.clone()));
        }
        let out = AlmostComplex { j, columns, rows };
        let sq = out.compose_up(&out.j);
        let mut expected = PolyTensor::zeros(out.j.ring(), m, 1, 1);
        for i in 0..m {
            expected.set(&[i, i], LaurentPoly::int(out.j.ring(), -1));
        }
        if sq != expected {
            return Err(Error::InvalidModel("J∘J is not -Id".into()));
        }
        Ok(out)
    }

    /// `J ∂_{x_k} = ∂_{y_k}` on a chart ordered `x1, y1, x2, y2, …`.
    pub fn standard(ring: &Arc<Ring>, dim: usize) -> Self {
        let mut j = PolyTensor::zeros(ring, dim, 1, 1);
        for k in 0..dim / 2 {
            j.set(&[2 * k + 1, 2 * k], LaurentPoly::one(ring));
            j.set(&[2 * k, 2 * k + 1], LaurentPoly::int(ring, -1));
        }
        AlmostComplex::new(j).expect("standard J squares to -Id")
    }

    pub fn tensor(&self) -> &PolyTensor {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> LaurentPoly {
        self.j.get(&[i, j])
    }

    /// `(J T)^i… = J^i_a T^a…` on the first upper index.
    pub fn compose_up(&self, t: &PolyTensor) -> PolyTensor {
        let mut out = PolyTensor::zeros(t.ring(), t.dim(), t.upper, t.lower);
        for (k, v) in t.iter() {
            for (i, jv) in &self.columns[k[0]] {
                let mut k2 = k.clone();
                k2[0] = *i;
                out.add_at(&k2, &(jv * v));
            }
        }
        out
    }

    /// Precomposes lower slot `slot` with `J`: `T'(…, X, …) = T(…, JX, …)`.
    pub fn compose_slot(&self, t: &PolyTensor, slot: usize) -> PolyTensor {
        let pos = t.upper + slot;
        let mut out = PolyTensor::zeros(t.ring(), t.dim(), t.upper, t.lower);
        for (k, v) in t.iter() {
            for (j, jv) in &self.rows[k[pos]] {
                let mut k2 = k.clone();
                k2[pos] = *j;
                out.add_at(&k2, &(v * jv));
            }
        }
        out
    }

    /// `α ∘ J` for a 1-form.
    pub fn compose_form(&self, alpha: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let m = self.dim();
        let ring = self.j.ring();
        (0..m)
            .map(|k| {
                let mut acc = LaurentPoly::zero(ring);
                for (a, jv) in &self.columns[k] {
                    acc = &acc + &(jv * &alpha[*a]);
                }
                acc
            })
            .collect()
    }

    /// `J v`.
    pub fn apply(&self, v: &VectorField) -> VectorField {
        let m = self.dim();
        let ring = self.j.ring();
        let comps = (0..m)
            .map(|i| {
                let mut acc = LaurentPoly::zero(ring);
                for (a, jv) in &self.rows[i] {
                    acc = &acc + &(jv * &v.0[*a]);
                }
                acc
            })
            .collect();
        VectorField(comps)
    }
}

/// Christoffel symbols of a linear connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    gamma: PolyTensor,
}

impl Connection {
    pub fn new(gamma: PolyTensor) -> Result<Self> {
        if gamma.valence() != (1, 2) {
            return Err(Error::Dimension("Christoffel symbols must have valence (1,2)".into()));
        }
        Ok(Connection { gamma })
    }

    pub fn flat(ring: &Arc<Ring>, dim: usize) -> Self {
        Connection {
            gamma: PolyTensor::zeros(ring, dim, 1, 2),
        }
    }

    pub fn symbols(&self) -> &PolyTensor {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> LaurentPoly {
        self.gamma.get(&[i, j, k])
    }

    pub fn is_symmetric(&self) -> bool {
        self.gamma.swap_lower(0, 1) == self.gamma
    }
}

/// Sign of an (anti)linearity projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

pub fn nijenhuis(j: &AlmostComplex) -> PolyTensor {
    let m = j.dim();
    let ring = j.tensor().ring().clone();
    // dj[a][i][k] = ∂_a J^i_k
    let mut dj: Vec<PolyTensor> = Vec::with_capacity(m);
    for a in 0..m {
        let mut t = PolyTensor::zeros(&ring, m, 1, 1);
        for (k, v) in j.tensor().iter() {
            t.set(k, v.derivative_idx(a));
        }
        dj.push(t);
    }
    let mut n = PolyTensor::zeros(&ring, m, 1, 2);
    for i in 0..m {
        for jj in 0..m {
            for k in 0..m {
                let mut acc = LaurentPoly::zero(&ring);
                for a in 0..m {
                    let ja_j = j.get(a, jj);
                    if !ja_j.is_zero() {
                        acc = &acc + &(&ja_j * &dj[a].get(&[i, k]));
                    }
                    let ja_k = j.get(a, k);
                    if !ja_k.is_zero() {
                        acc = &acc - &(&ja_k * &dj[a].get(&[i, jj]));
                    }
                    let ji_a = j.get(i, a);
                    if !ji_a.is_zero() {
                        acc = &acc + &(&ji_a * &(&dj[k].get(&[a, jj]) - &dj[jj].get(&[a, k])));
                    }
                }
                n.set(&[i, jj, k], acc);
            }
        }
    }
    n
}

pub fn torsion(conn: &Connection) -> PolyTensor {
    conn.gamma.try_sub(&conn.gamma.swap_lower(0, 1)).expect("same shape")
}

pub fn curvature(conn: &Connection) -> PolyTensor {
    let g = &conn.gamma;
    let m = g.dim();
    let ring = g.ring().clone();
    let mut r = PolyTensor::zeros(&ring, m, 1, 3);
    for (key, v) in g.iter() {
        // ∂_k Γ^i_{lj} contributes to R^i_{jkl}; -∂_l Γ^i_{kj} to R^i_{jkl}
        let (i, l, jj) = (key[0], key[1], key[2]);
        for k in 0..m {
            let d = v.derivative_idx(k);
            if d.is_zero() {
                continue;
            }
            r.add_at(&[i, jj, k, l], &d);
            r.add_at(&[i, jj, l, k], &-&d);
        }
    }
    // Γ^i_{ka} Γ^a_{lj} - Γ^i_{la} Γ^a_{kj}
    let mut by_upper: Vec<Vec<(usize, usize, &LaurentPoly)>> = vec![Vec::new(); m];
    for (key, v) in g.iter() {
        by_upper[key[0]].push((key[1], key[2], v));
    }
    for (key, v) in g.iter() {
        let (i, k, a) = (key[0], key[1], key[2]);
        for &(l, jj, w) in &by_upper[a] {
            let p = v * w;
            r.add_at(&[i, jj, k, l], &p);
            r.add_at(&[i, jj, l, k], &-&p);
        }
    }
    r
}

/// `¼[T(X,Y) - ε₁ J T(JX,Y) - ε₂ J T(X,JY) - ε₁ε₂ T(JX,JY)]` with `X`, `Y`
/// in the given lower slots and `J` acting on the upper index.
pub fn form_projection(t: &PolyTensor, j: &AlmostComplex, slots: (usize, usize), e1: Sign, e2: Sign) -> PolyTensor {
    let a = j.compose_up(&j.compose_slot(t, slots.0));
    let b = j.compose_up(&j.compose_slot(t, slots.1));
    let c = j.compose_slot(&j.compose_slot(t, slots.0), slots.1);
    let s1 = Scalar::from_int(-e1.value());
    let s2 = Scalar::from_int(-e2.value());
    let s12 = Scalar::from_int(-e1.value() * e2.value());
    let sum = t
        .try_add(&a.scale(&s1))
        .and_then(|x| x.try_add(&b.scale(&s2)))
        .and_then(|x| x.try_add(&c.scale(&s12)))
        .expect("same shape");
    sum.scale(&Scalar::ratio(1, 4))
}

/// The `(ε₁, ε₂)` part of a (1,2) torsion-like tensor.
pub fn torsion_projection(t: &PolyTensor, j: &AlmostComplex, e1: Sign, e2: Sign) -> PolyTensor {
    form_projection(t, j, (0, 1), e1, e2)
}

/// All four projections in the order `++, +-, -+, --`.
pub fn torsion_projections(t: &PolyTensor, j: &AlmostComplex) -> [PolyTensor; 4] {
    [
        torsion_projection(t, j, Sign::Plus, Sign::Plus),
        torsion_projection(t, j, Sign::Plus, Sign::Minus),
        torsion_projection(t, j, Sign::Minus, Sign::Plus),
        torsion_projection(t, j, Sign::Minus, Sign::Minus),
    ]
}

fn trace_last(t: &PolyTensor) -> Vec<LaurentPoly> {
    // Σ_b T^b_{kb}
    let mut out = vec![LaurentPoly::zero(t.ring()); t.dim()];
    for (k, v) in t.iter() {
        if k[0] == k[2] {
            out[k[1]] = &out[k[1]] + v;
        }
    }
    out
}

/// `ς(X) = ½ tr(T(X,·) + J T(JX,·))`.
pub fn torsion_trace(t: &PolyTensor, j: &AlmostComplex) -> Vec<LaurentPoly> {
    let a = trace_last(t);
    let b = trace_last(&j.compose_up(&j.compose_slot(t, 0)));
    let half = Scalar::ratio(1, 2);
    a.iter().zip(&b).map(|(x, y)| (x + y).scale(&half)).collect()
}

/// `A(X,Y) = φ(X) Y + φ(JX) JY`.
pub fn trace_tensor(phi: &[LaurentPoly], j: &AlmostComplex) -> PolyTensor {
    let m = j.dim();
    let ring = j.tensor().ring().clone();
    let phi_j = j.compose_form(phi);
    let mut out = PolyTensor::zeros(&ring, m, 1, 2);
    for k in 0..m {
        if !phi[k].is_zero() {
            for i in 0..m {
                out.add_at(&[i, k, i], &phi[k]);
            }
        }
        if !phi_j[k].is_zero() {
            for (key, v) in j.tensor().iter() {
                out.add_at(&[key[0], k, key[1]], &(&phi_j[k] * v));
            }
        }
    }
    out
}

/// Trace 1-form `ς` and the traceless antilinear-linear part `κ_IV`.
pub fn kappa4(t: &PolyTensor, j: &AlmostComplex) -> (Vec<LaurentPoly>, PolyTensor) {
    let n = (j.dim() / 2) as i64;
    let sigma = torsion_trace(t, j);
    let tmp = torsion_projection(t, j, Sign::Minus, Sign::Plus);
    let trace_part = trace_tensor(&sigma, j).scale(&Scalar::ratio(1, 2 * n));
    (sigma, tmp.try_sub(&trace_part).expect("same shape"))
}

/// The five invariant torsion components; they sum to `T`.
#[derive(Clone, Debug)]
pub struct TorsionParts {
    /// Trace part of `T^{++}`.
    pub pi1: PolyTensor,
    /// Traceless part of `T^{++}`.
    pub pi2: PolyTensor,
    /// `T^{--}`.
    pub pi3: PolyTensor,
    /// Antisymmetrized `κ_IV`.
    pub pi4: PolyTensor,
    /// Antisymmetrized trace part of `T^{-+}`.
    pub pi5: PolyTensor,
}

impl TorsionParts {
    pub fn all(&self) -> [&PolyTensor; 5] {
        [&self.pi1, &self.pi2, &self.pi3, &self.pi4, &self.pi5]
    }

    pub fn sum(&self) -> PolyTensor {
        let mut acc = self.pi1.clone();
        for p in &self.all()[1..] {
            acc = acc.try_add(p).expect("same shape");
        }
        acc
    }
}

fn antisymmetrize(t: &PolyTensor) -> PolyTensor {
    t.try_sub(&t.swap_lower(0, 1)).expect("same shape")
}

pub fn torsion_parts(t: &PolyTensor, j: &AlmostComplex) -> TorsionParts {
    let m = j.dim();
    let n = (m / 2) as i64;
    let ring = t.ring().clone();
    let tpp = torsion_projection(t, j, Sign::Plus, Sign::Plus);
    let tmm = torsion_projection(t, j, Sign::Minus, Sign::Minus);
    // complex trace of Y ↦ T^{++}(X, Y) is a(X) + i b(X)
    let half = Scalar::ratio(1, 2);
    let a: Vec<LaurentPoly> = trace_last(&tpp).iter().map(|v| v.scale(&half)).collect();
    let b: Vec<LaurentPoly> = trace_last(&j.compose_up(&tpp)).iter().map(|v| v.scale(&-&half)).collect();
    let mut pi1 = PolyTensor::zeros(&ring, m, 1, 2);
    if n > 1 {
        let inv = Scalar::ratio(1, n - 1);
        for k in 0..m {
            for i in 0..m {
                pi1.add_at(&[i, k, i], &a[k].scale(&inv));
                pi1.add_at(&[i, i, k], &a[k].scale(&-&inv));
            }
            for (key, v) in j.tensor().iter() {
                pi1.add_at(&[key[0], k, key[1]], &(&b[k] * v).scale(&inv));
                pi1.add_at(&[key[0], key[1], k], &(&b[k] * v).scale(&-&inv));
            }
        }
    }
    let pi2 = tpp.try_sub(&pi1).expect("same shape");
    let (sigma, kappa) = kappa4(t, j);
    let trace_part = trace_tensor(&sigma, j).scale(&Scalar::ratio(1, 2 * n));
    TorsionParts {
        pi1,
        pi2,
        pi3: tmm,
        pi4: antisymmetrize(&kappa),
        pi5: antisymmetrize(&trace_part),
    }
}

/// Minimal means `T = T^{--}`.
pub fn is_minimal(t: &PolyTensor, j: &AlmostComplex) -> bool {
    torsion_projection(t, j, Sign::Minus, Sign::Minus) == *t
}

/// Bidegree parts of a curvature tensor in its two form slots.
#[derive(Clone, Debug)]
pub struct CurvatureBidegree {
    pub two_zero: PolyTensor,
    pub one_one: PolyTensor,
    pub zero_two: PolyTensor,
}

impl CurvatureBidegree {
    /// Labels of the nonzero parts, e.g. `["(1,1)"]`.
    pub fn types(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.two_zero.is_zero() {
            out.push("(2,0)");
        }
        if !self.one_one.is_zero() {
            out.push("(1,1)");
        }
        if !self.zero_two.is_zero() {
            out.push("(0,2)");
        }
        out
    }

    pub fn sum(&self) -> PolyTensor {
        self.two_zero
            .try_add(&self.one_one)
            .and_then(|s| s.try_add(&self.zero_two))
            .expect("same shape")
    }
}

pub fn curvature_bidegree(r: &PolyTensor, j: &AlmostComplex) -> CurvatureBidegree {
    let slots = (1, 2);
    let pm = form_projection(r, j, slots, Sign::Plus, Sign::Minus);
    let mp = form_projection(r, j, slots, Sign::Minus, Sign::Plus);
    CurvatureBidegree {
        two_zero: form_projection(r, j, slots, Sign::Plus, Sign::Plus),
        one_one: pm.try_add(&mp).expect("same shape"),
        zero_two: form_projection(r, j, slots, Sign::Minus, Sign::Minus),
    }
}

/// `Ω = L_v Γ`.
pub fn lie_derivative_connection(v: &VectorField, conn: &Connection) -> PolyTensor {
    let m = conn.dim();
    let ring = conn.gamma.ring().clone();
    let mut out = PolyTensor::zeros(&ring, m, 1, 2);
    let dv: Vec<Vec<LaurentPoly>> = v.0.iter().map(|c| (0..m).map(|a| c.derivative_idx(a)).collect()).collect();
    for i in 0..m {
        if v.0[i].is_zero() {
            continue;
        }
        for jj in 0..m {
            if dv[i][jj].is_zero() {
                continue;
            }
            for k in 0..m {
                out.add_at(&[i, jj, k], &dv[i][jj].derivative_idx(k));
            }
        }
    }
    for (key, g) in conn.gamma.iter() {
        let (p, jj, k) = (key[0], key[1], key[2]);
        for a in 0..m {
            if !v.0[a].is_zero() {
                out.add_at(key, &(&v.0[a] * &g.derivative_idx(a)));
            }
        }
        for x in 0..m {
            // -Γ^p_{jk} ∂_p v^x
            if !dv[x][p].is_zero() {
                out.add_at(&[x, jj, k], &-&(g * &dv[x][p]));
            }
            // Γ^p_{jj,k} ∂_x v^jj lands on [p, x, k]
            if !dv[jj][x].is_zero() {
                out.add_at(&[p, x, k], &(g * &dv[jj][x]));
            }
            // Γ^p_{jj,k} ∂_x v^k lands on [p, jj, x]
            if !dv[k][x].is_zero() {
                out.add_at(&[p, jj, x], &(g * &dv[k][x]));
            }
        }
    }
    out
}

/// `L_v J`.
pub fn lie_derivative_j(v: &VectorField, j: &AlmostComplex) -> PolyTensor {
    let m = j.dim();
    let ring = j.tensor().ring().clone();
    let mut out = PolyTensor::zeros(&ring, m, 1, 1);
    for (key, jv) in j.tensor().iter() {
        let (p, q) = (key[0], key[1]);
        for x in 0..m {
            if !v.0[x].is_zero() {
                out.add_at(key, &(&v.0[x] * &jv.derivative_idx(x)));
            }
            // -J^p_q ∂_p v^x lands on [x, q]
            let d = v.0[x].derivative_idx(p);
            if !d.is_zero() {
                out.add_at(&[x, q], &-&(jv * &d));
            }
            // J^p_q ∂_x v^q lands on [p, x]
            let d2 = v.0[q].derivative_idx(x);
            if !d2.is_zero() {
                out.add_at(&[p, x], &(jv * &d2));
            }
        }
    }
    out
}

/// `(L_v g)_{ij} = v^a ∂_a g_{ij} + g_{aj} ∂_i v^a + g_{ia} ∂_j v^a` for a (0,2) tensor.
pub fn lie_derivative_form(v: &VectorField, g: &PolyTensor) -> PolyTensor {
    let m = g.dim();
    let mut out = PolyTensor::zeros(g.ring(), m, 0, 2);
    for (key, gv) in g.iter() {
        let (p, q) = (key[0], key[1]);
        for x in 0..m {
            if !v.0[x].is_zero() {
                out.add_at(key, &(&v.0[x] * &gv.derivative_idx(x)));
            }
            // g_{pq} ∂_x v^p lands on [x, q]
            let d = v.0[p].derivative_idx(x);
            if !d.is_zero() {
                out.add_at(&[x, q], &(gv * &d));
            }
            let d2 = v.0[q].derivative_idx(x);
            if !d2.is_zero() {
                out.add_at(&[p, x], &(gv * &d2));
            }
        }
    }
    out
}

/// `(∇_k J)^i_j` stored at `[i, k, j]`.
pub fn nabla_j(conn: &Connection, j: &AlmostComplex) -> PolyTensor {
    let m = j.dim();
    let ring = j.tensor().ring().clone();
    let mut out = PolyTensor::zeros(&ring, m, 1, 2);
    for (key, jv) in j.tensor().iter() {
        let (i, jj) = (key[0], key[1]);
        for k in 0..m {
            out.add_at(&[i, k, jj], &jv.derivative_idx(k));
        }
    }
    for (key, g) in conn.gamma.iter() {
        let (x, k, a) = (key[0], key[1], key[2]);
        // Γ^i_{ka} J^a_j with i = x
        for jj in 0..m {
            let ja = j.get(a, jj);
            if !ja.is_zero() {
                out.add_at(&[x, k, jj], &(g * &ja));
            }
        }
        // -Γ^a_{kj} J^i_a with a = x, j = key[2]
        for i in 0..m {
            let ji = j.get(i, x);
            if !ji.is_zero() {
                out.add_at(&[i, k, a], &-&(g * &ji));
            }
        }
    }
    out
}

/// The c-projective symmetry operator applied to `Ω`:
/// `Ω^i_{jk} - φ_j δ^i_k - φ_k δ^i_j + φ_a J^a_j J^i_k + φ_a J^a_k J^i_j`
/// with `φ_j = Ω^a_{ja} / (2(n+1))`.
pub fn cproj_operator(omega: &PolyTensor, j: &AlmostComplex) -> PolyTensor {
    let m = j.dim();
    let n = (m / 2) as i64;
    let phi: Vec<LaurentPoly> = trace_last(omega).iter().map(|v| v.scale(&Scalar::ratio(1, 2 * (n + 1)))).collect();
    let phi_j = j.compose_form(&phi);
    let mut out = omega.clone();
    for a in 0..m {
        if !phi[a].is_zero() {
            let neg = -&phi[a];
            for i in 0..m {
                out.add_at(&[i, a, i], &neg);
                out.add_at(&[i, i, a], &neg);
            }
        }
        if !phi_j[a].is_zero() {
            for (key, jv) in j.tensor().iter() {
                let p = &phi_j[a] * jv;
                out.add_at(&[key[0], a, key[1]], &p);
                out.add_at(&[key[0], key[1], a], &p);
            }
        }
    }
    out
}

/// Both symmetry conditions for `v`: the c-projective operator on `L_v Γ` and `L_v J`.
pub fn cproj_residual(v: &VectorField, conn: &Connection, j: &AlmostComplex) -> (PolyTensor, PolyTensor) {
    let omega = lie_derivative_connection(v, conn);
    (cproj_operator(&omega, j), lie_derivative_j(v, j))
}

/// Determinant of a small polynomial matrix by expansion over column subsets.
pub fn determinant(rows: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let m = rows.len();
    if m == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    let ring = rows[0][0].ring().clone();
    // minors[S] = det of the first |S| rows restricted to column set S
    let mut minors: Vec<LaurentPoly> = vec![LaurentPoly::zero(&ring); 1 << m];
    minors[0] = LaurentPoly::one(&ring);
    for mask in 1usize..(1 << m) {
        let r = mask.count_ones() as usize - 1;
        let mut acc = LaurentPoly::zero(&ring);
        for c in 0..m {
            if mask & (1 << c) == 0 {
                continue;
            }
            let rest = mask & !(1 << c);
            let above = (mask & ((1 << c) - 1)).count_ones() as usize;
            if rows[r][c].is_zero() || minors[rest].is_zero() {
                continue;
            }
            // column c sits after `above` chosen columns; sign from moving it last
            let sign = if (r - above).is_multiple_of(2) { 1 } else { -1 };
            let term = &rows[r][c] * &minors[rest];
            acc = if sign == 1 { &acc + &term } else { &acc - &term };
        }
        minors[mask] = acc;
    }
    Ok(minors[(1 << m) - 1].clone())
}

/// Inverse through the adjugate; the determinant must be a unit of the ring.
pub fn invert(rows: &[Vec<LaurentPoly>]) -> Result<Vec<Vec<LaurentPoly>>> {
    let m = rows.len();
    let det = determinant(rows)?;
    if det.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let det_inv = det.unit_inverse()?;
    let ring = det.ring().clone();
    let mut out = vec![vec![LaurentPoly::zero(&ring); m]; m];
    if m == 1 {
        out[0][0] = det_inv;
        return Ok(out);
    }
    for i in 0..m {
        for jx in 0..m {
            let minor: Vec<Vec<LaurentPoly>> = (0..m)
                .filter(|&r| r != i)
                .map(|r| (0..m).filter(|&c| c != jx).map(|c| rows[r][c].clone()).collect())
                .collect();
            let d = determinant(&minor)?;
            let cof = if (i + jx) % 2 == 0 { d } else { -d };
            // adj[j][i] = cofactor[i][j]
            out[jx][i] = &cof * &det_inv;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
