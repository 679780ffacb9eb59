//! The dictionary between complex frames and real coordinates.
//!
//! On a complex chart `z_k = x_k + i y_k`, so
//! `∂_{z_k} = ½(∂_{x_k} - i ∂_{y_k})`, `∂_{z̄_k} = ½(∂_{x_k} + i ∂_{y_k})`,
//! `dz_k = dx_k + i dy_k` and `dz̄_k = dx_k - i dy_k`.

use super::{Chart, PolyTensor, VectorField};
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Scalar};

/// A complex index: `z_k` or its conjugate, `k` 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CIndex {
    pub k: usize,
    pub bar: bool,
}

impl CIndex {
    pub fn z(k: usize) -> Self {
        CIndex { k, bar: false }
    }

    pub fn zb(k: usize) -> Self {
        CIndex { k, bar: true }
    }

    pub fn conj(self) -> Self {
        CIndex { k: self.k, bar: !self.bar }
    }

    /// Real components of `∂_{z_k}` or `∂_{z̄_k}`.
    pub fn vector(self) -> [(usize, Scalar); 2] {
        let half = Scalar::ratio(1, 2);
        let ihalf = &Scalar::i() * &half;
        let y = if self.bar { ihalf } else { -ihalf };
        [(2 * self.k, half), (2 * self.k + 1, y)]
    }

    /// Real components of `dz_k` or `dz̄_k`.
    pub fn covector(self) -> [(usize, Scalar); 2] {
        let y = if self.bar { -Scalar::i() } else { Scalar::i() };
        [(2 * self.k, Scalar::one()), (2 * self.k + 1, y)]
    }
}

/// `coeff · ∂_{up…} ⊗ dZ^{low…}` on a complex chart.
#[derive(Clone, Debug)]
pub struct ComplexTerm {
    pub coeff: LaurentPoly,
    pub upper: Vec<CIndex>,
    pub lower: Vec<CIndex>,
}

impl ComplexTerm {
    pub fn new(coeff: LaurentPoly, upper: Vec<CIndex>, lower: Vec<CIndex>) -> Self {
        ComplexTerm { coeff, upper, lower }
    }

    pub fn conj(&self) -> Self {
        ComplexTerm {
            coeff: self.coeff.conj(),
            upper: self.upper.iter().map(|c| c.conj()).collect(),
            lower: self.lower.iter().map(|c| c.conj()).collect(),
        }
    }
}

/// Antisymmetrizes the first two lower slots: `a ∧ b = a⊗b - b⊗a`.
pub fn wedge(coeff: LaurentPoly, upper: Vec<CIndex>, a: CIndex, b: CIndex) -> [ComplexTerm; 2] {
    [
        ComplexTerm::new(coeff.clone(), upper.clone(), vec![a, b]),
        ComplexTerm::new(-&coeff, upper, vec![b, a]),
    ]
}

/// Real components of a sum of complex terms, optionally adding the complex
/// conjugate of every term. The result must be real.
pub fn expand(chart: &Chart, terms: &[ComplexTerm], add_conjugate: bool) -> Result<PolyTensor> {
    if !chart.is_complex() {
        return Err(Error::InvalidModel("complex terms need a complex chart".into()));
    }
    let Some(first) = terms.first() else {
        return Err(Error::InvalidModel("no terms to expand".into()));
    };
    let (up, low) = (first.upper.len(), first.lower.len());
    let mut out = PolyTensor::zeros(chart.ring(), chart.dim(), up, low);
    let mut all: Vec<ComplexTerm> = terms.to_vec();
    if add_conjugate {
        all.extend(terms.iter().map(ComplexTerm::conj));
    }
    for t in &all {
        if t.upper.len() != up || t.lower.len() != low {
            return Err(Error::Dimension("complex terms of mixed valence".into()));
        }
        if t.upper.iter().chain(&t.lower).any(|c| c.k >= chart.n()) {
            return Err(Error::Dimension("complex index out of range".into()));
        }
        let factors: Vec<[(usize, Scalar); 2]> = t
            .upper
            .iter()
            .map(|c| c.vector())
            .chain(t.lower.iter().map(|c| c.covector()))
            .collect();
        let rank = factors.len();
        for choice in 0..(1usize << rank) {
            let mut idx = Vec::with_capacity(rank);
            let mut c = Scalar::one();
            for (s, f) in factors.iter().enumerate() {
                let (i, v) = &f[(choice >> s) & 1];
                idx.push(*i);
                c = &c * v;
            }
            out.add_at(&idx, &t.coeff.scale(&c));
        }
    }
    if out.iter().any(|(_, v)| !v.is_real()) {
        return Err(Error::InvalidModel("complex terms do not expand to a real tensor".into()));
    }
    Ok(out)
}

/// Real and imaginary parts of `Σ f_A ∂_{Z^A}`.
pub fn complex_field(chart: &Chart, parts: &[(CIndex, LaurentPoly)]) -> Result<(VectorField, VectorField)> {
    let ring = chart.ring();
    let mut comps = vec![LaurentPoly::zero(ring); chart.dim()];
    for (c, f) in parts {
        if c.k >= chart.n() {
            return Err(Error::Dimension("complex index out of range".into()));
        }
        for (i, v) in c.vector() {
            comps[i] = &comps[i] + &f.scale(&v);
        }
    }
    let re = VectorField(comps.iter().map(LaurentPoly::re_part).collect());
    let im = VectorField(comps.iter().map(LaurentPoly::im_part).collect());
    Ok((re, im))
}

/// `Σ h_{kl} dz_k dz̄_l` with the symmetric product `ab = ½(a⊗b + b⊗a)`.
pub fn hermitian_metric(chart: &Chart, entries: &[(usize, usize, LaurentPoly)]) -> Result<PolyTensor> {
    let mut terms = Vec::new();
    let half = Scalar::ratio(1, 2);
    for (k, l, h) in entries {
        let c = h.scale(&half);
        terms.push(ComplexTerm::new(c.clone(), vec![], vec![CIndex::z(*k), CIndex::zb(*l)]));
        terms.push(ComplexTerm::new(c, vec![], vec![CIndex::zb(*l), CIndex::z(*k)]));
    }
    expand(chart, &terms, false)
}

/// `dz_k` as a real 1-form, and `dz̄_k`.
pub fn holomorphic_differential(chart: &Chart, c: CIndex) -> Vec<LaurentPoly> {
    let mut out = vec![chart.zero(); chart.dim()];
    for (i, v) in c.covector() {
        out[i] = chart.constant(v);
    }
    out
}
