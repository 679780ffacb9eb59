//! Sparse multivariate Laurent polynomials over Q(i), optionally divided by
//! powers of chart-declared denominator polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Whether a variable may carry negative exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Ordinary,
    Laurent,
}

pub type Exponents = SmallVec<[i32; 8]>;
pub type Terms = BTreeMap<Exponents, Scalar>;

/// Variable registry plus the declared denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    kinds: Vec<VarKind>,
    denominators: Vec<Terms>,
}

impl Ring {
    pub fn new(vars: &[(&str, VarKind)]) -> Arc<Ring> {
        Arc::new(Ring {
            names: vars.iter().map(|(n, _)| n.to_string()).collect(),
            kinds: vars.iter().map(|(_, k)| *k).collect(),
            denominators: Vec::new(),
        })
    }

    /// All-ordinary registry.
    pub fn polynomial(names: &[&str]) -> Arc<Ring> {
        let vars: Vec<(&str, VarKind)> = names.iter().map(|n| (*n, VarKind::Ordinary)).collect();
        Ring::new(&vars)
    }

    /// Registry with declared denominators, each given in the polynomial grammar.
    pub fn with_denominators(vars: &[(&str, VarKind)], denominators: &[&str]) -> Result<Arc<Ring>> {
        let base = Ring::new(vars);
        let mut dens = Vec::new();
        for text in denominators {
            let p = LaurentPoly::parse(&base, text)?;
            if !p.den.iter().all(|&m| m == 0) || p.terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
                return Err(Error::InvalidModel(format!("denominator `{text}` must be a polynomial")));
            }
            if p.as_constant().is_some() {
                return Err(Error::InvalidModel(format!("denominator `{text}` is constant")));
            }
            dens.push(p.terms);
        }
        Ok(Arc::new(Ring {
            names: base.names.clone(),
            kinds: base.kinds.clone(),
            denominators: dens,
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn denominators(&self) -> &[Terms] {
        &self.denominators
    }

    pub fn denominator(&self, k: usize) -> LaurentPoly {
        let ring = Arc::new(self.clone());
        LaurentPoly::from_terms(&ring, self.denominators[k].clone())
    }

    /// Short description used in error messages.
    pub fn describe(&self) -> String {
        let vars: Vec<String> = self
            .names
            .iter()
            .zip(&self.kinds)
            .map(|(n, k)| match k {
                VarKind::Ordinary => n.clone(),
                VarKind::Laurent => format!("{n}~"),
            })
            .collect();
        vars.join(",")
    }

    /// Appends variables; declared denominators are kept.
    pub fn extended(&self, extra: &[(&str, VarKind)]) -> Arc<Ring> {
        let pad = |t: &Terms| -> Terms {
            t.iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.extend(std::iter::repeat_n(0, extra.len()));
                    (e2, c.clone())
                })
                .collect()
        };
        let mut names = self.names.clone();
        let mut kinds = self.kinds.clone();
        for (n, k) in extra {
            names.push(n.to_string());
            kinds.push(*k);
        }
        Arc::new(Ring {
            names,
            kinds,
            denominators: self.denominators.iter().map(pad).collect(),
        })
    }

    fn zero_exps(&self) -> Exponents {
        SmallVec::from_elem(0, self.names.len())
    }
}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn mismatch(a: &Ring, b: &Ring) -> Error {
    Error::RegistryMismatch {
        left: a.describe(),
        right: b.describe(),
    }
}

pub(crate) fn terms_add_into(acc: &mut Terms, exps: &Exponents, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(exps) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                acc.remove(exps);
            }
        }
        None => {
            acc.insert(exps.clone(), c.clone());
        }
    }
}

pub(crate) fn terms_mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponents = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
            terms_add_into(&mut out, &e, &(ca * cb));
        }
    }
    out
}

fn terms_pow(base: &Terms, k: u32, nvars: usize) -> Terms {
    let mut out = Terms::new();
    out.insert(SmallVec::from_elem(0, nvars), Scalar::one());
    for _ in 0..k {
        out = terms_mul(&out, base);
    }
    out
}

/// Exact division of `num` by the polynomial `d` (lex order), if it divides.
fn terms_div_exact(num: &Terms, d: &Terms) -> Option<Terms> {
    if num.is_empty() {
        return Some(Terms::new());
    }
    let nvars = d.keys().next()?.len();
    // Shift so that all exponents are nonnegative.
    let mut shift = vec![0i32; nvars];
    for e in num.keys() {
        for (s, &x) in shift.iter_mut().zip(e.iter()) {
            *s = (*s).min(x);
        }
    }
    let shifted = |e: &Exponents, sign: i32| -> Exponents {
        e.iter().zip(&shift).map(|(x, s)| x - sign * s).collect()
    };
    let mut rem: Terms = num.iter().map(|(e, c)| (shifted(e, 1), c.clone())).collect();
    let (lead_d, lead_c) = d.iter().next_back()?;
    let lead_inv = lead_c.checked_inv().ok()?;
    let mut quot = Terms::new();
    while let Some((e, c)) = rem.iter().next_back() {
        let diff: Exponents = e.iter().zip(lead_d.iter()).map(|(a, b)| a - b).collect();
        if diff.iter().any(|&x| x < 0) {
            return None;
        }
        let q = c * &lead_inv;
        for (ed, cd) in d {
            let prod: Exponents = ed.iter().zip(diff.iter()).map(|(a, b)| a + b).collect();
            terms_add_into(&mut rem, &prod, &-(&q * cd));
        }
        terms_add_into(&mut quot, &diff, &q);
    }
    Some(quot.iter().map(|(e, c)| (shifted(e, -1), c.clone())).collect())
}

/// A Laurent polynomial numerator over `ring`, divided by
/// `prod_k ring.denominators[k]^den[k]`.
#[derive(Clone)]
pub struct LaurentPoly {
    ring: Arc<Ring>,
    terms: Terms,
    den: SmallVec<[u32; 2]>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms && self.den == other.den
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        LaurentPoly {
            ring: ring.clone(),
            terms: Terms::new(),
            den: SmallVec::from_elem(0, ring.denominators.len()),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        let mut p = LaurentPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(ring.zero_exps(), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        LaurentPoly::constant(ring, Scalar::one())
    }

    pub fn int(ring: &Arc<Ring>, v: i64) -> Self {
        LaurentPoly::constant(ring, Scalar::from_int(v))
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring.index_of(name)?;
        Ok(LaurentPoly::var_index(ring, i))
    }

    pub fn var_index(ring: &Arc<Ring>, i: usize) -> Self {
        let mut e = ring.zero_exps();
        e[i] = 1;
        LaurentPoly::monomial_unchecked(ring, e, Scalar::one())
    }

    /// `c · x^exps`, rejecting negative exponents on ordinary variables.
    pub fn monomial(ring: &Arc<Ring>, exps: &[i32], c: Scalar) -> Result<Self> {
        if exps.len() != ring.len() {
            return Err(Error::Dimension(format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                ring.len()
            )));
        }
        for (i, &x) in exps.iter().enumerate() {
            if x < 0 && ring.kinds[i] == VarKind::Ordinary {
                return Err(Error::NegativeExponent(ring.names[i].clone()));
            }
        }
        Ok(LaurentPoly::monomial_unchecked(ring, exps.iter().copied().collect(), c))
    }

    pub(crate) fn monomial_unchecked(ring: &Arc<Ring>, exps: Exponents, c: Scalar) -> Self {
        let mut p = LaurentPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds a value from raw terms (no denominator), dropping zero coefficients.
    pub fn from_terms(ring: &Arc<Ring>, terms: Terms) -> Self {
        let mut p = LaurentPoly::zero(ring);
        p.terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        p
    }

    /// Builds `terms / prod d_k^den_k` and cancels common denominator factors.
    pub fn with_denominator(ring: &Arc<Ring>, terms: Terms, den: &[u32]) -> Result<Self> {
        if den.len() != ring.denominators.len() {
            return Err(Error::Dimension("denominator tag length".into()));
        }
        let mut p = LaurentPoly::from_terms(ring, terms);
        p.den = den.iter().copied().collect();
        Ok(p.normalized())
    }

    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        super::parse::parse_poly(ring, text)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    /// Denominator multiplicities, one per declared denominator.
    pub fn den(&self) -> &[u32] {
        &self.den
    }

    pub fn has_denominator(&self) -> bool {
        self.den.iter().any(|&m| m > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.has_denominator() {
            return None;
        }
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    /// Conjugates coefficients (variables are real coordinates).
    pub fn conj(&self) -> Self {
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
            den: self.den.clone(),
        }
    }

    pub fn re_part(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), Scalar::real(c.re().clone()))).collect();
        let mut p = LaurentPoly::from_terms(&self.ring, terms);
        p.den = self.den.clone();
        p.normalized()
    }

    pub fn im_part(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), Scalar::real(c.im().clone()))).collect();
        let mut p = LaurentPoly::from_terms(&self.ring, terms);
        p.den = self.den.clone();
        p.normalized()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero(&self.ring);
        }
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
            den: self.den.clone(),
        }
    }

    /// Maximal total degree of the numerator (sum of exponents), `None` for zero.
    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Numerator expressed over the larger denominator `target` (elementwise ≥ own tag).
    pub fn numerator_over(&self, target: &[u32]) -> Terms {
        let mut t = self.terms.clone();
        for (k, (&mine, &want)) in self.den.iter().zip(target).enumerate() {
            debug_assert!(want >= mine);
            if want > mine {
                let pw = terms_pow(&self.ring.denominators[k], want - mine, self.ring.len());
                t = terms_mul(&t, &pw);
            }
        }
        t
    }

    fn normalized(mut self) -> Self {
        if self.terms.is_empty() {
            self.den.iter_mut().for_each(|m| *m = 0);
            return self;
        }
        for k in 0..self.den.len() {
            while self.den[k] > 0 {
                match terms_div_exact(&self.terms, &self.ring.denominators[k]) {
                    Some(q) => {
                        self.terms = q;
                        self.den[k] -= 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(mismatch(&self.ring, &other.ring))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        if self.den == other.den {
            let mut terms = self.terms.clone();
            for (e, c) in &other.terms {
                if negate {
                    terms_add_into(&mut terms, e, &-c);
                } else {
                    terms_add_into(&mut terms, e, c);
                }
            }
            let p = LaurentPoly {
                ring: self.ring.clone(),
                terms,
                den: self.den.clone(),
            };
            return if p.has_denominator() { p.normalized() } else { p };
        }
        let target: SmallVec<[u32; 2]> = self.den.iter().zip(&other.den).map(|(a, b)| *a.max(b)).collect();
        let mut terms = self.numerator_over(&target);
        for (e, c) in other.numerator_over(&target) {
            if negate {
                terms_add_into(&mut terms, &e, &-&c);
            } else {
                terms_add_into(&mut terms, &e, &c);
            }
        }
        LaurentPoly {
            ring: self.ring.clone(),
            terms,
            den: target,
        }
        .normalized()
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero(&self.ring);
        }
        let terms = terms_mul(&self.terms, &other.terms);
        let den: SmallVec<[u32; 2]> = self.den.iter().zip(&other.den).map(|(a, b)| a + b).collect();
        let p = LaurentPoly {
            ring: self.ring.clone(),
            terms,
            den,
        };
        if p.has_denominator() {
            p.normalized()
        } else {
            p
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentPoly::one(&self.ring);
        for _ in 0..k {
            out = out.mul_unchecked(self);
        }
        out
    }

    pub fn derivative(&self, name: &str) -> Result<Self> {
        let i = self.ring.index_of(name)?;
        Ok(self.derivative_idx(i))
    }

    /// Formal partial derivative in variable `i` (quotient rule on denominators).
    pub fn derivative_idx(&self, i: usize) -> Self {
        let mut num = Terms::new();
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                terms_add_into(&mut num, &e2, &(c * &Scalar::from_int(e[i] as i64)));
            }
        }
        let mut out = LaurentPoly {
            ring: self.ring.clone(),
            terms: num,
            den: self.den.clone(),
        };
        if !self.has_denominator() {
            return out;
        }
        for k in 0..self.den.len() {
            let m = self.den[k];
            if m == 0 {
                continue;
            }
            let d = LaurentPoly::from_terms(&self.ring, self.ring.denominators[k].clone());
            let dd = d.derivative_idx(i);
            if dd.is_zero() {
                continue;
            }
            let mut den = self.den.clone();
            den[k] += 1;
            let part = LaurentPoly {
                ring: self.ring.clone(),
                terms: terms_mul(&self.terms, &dd.terms),
                den,
            }
            .scale(&Scalar::from_int(-(m as i64)));
            out = out.add_unchecked(&part, false);
        }
        out.normalized()
    }

    /// Multiplies by `1/u` where `u` must be a unit: a nonzero constant times a
    /// Laurent monomial times a product of declared denominators.
    pub fn try_div(&self, u: &Self) -> Result<Self> {
        self.check(u)?;
        let inv = u.unit_inverse()?;
        Ok(self.mul_unchecked(&inv))
    }

    /// Inverse of a unit of the coefficient ring.
    pub fn unit_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Peel declared denominators off the numerator.
        let mut num = self.terms.clone();
        let mut peeled: SmallVec<[u32; 2]> = SmallVec::from_elem(0, self.den.len());
        for k in 0..self.den.len() {
            while num.len() > 1 {
                match terms_div_exact(&num, &self.ring.denominators[k]) {
                    Some(q) => {
                        num = q;
                        peeled[k] += 1;
                    }
                    None => break,
                }
            }
        }
        if num.len() != 1 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let (e, c) = num.iter().next().expect("one term");
        for (i, &x) in e.iter().enumerate() {
            if x > 0 && self.ring.kinds[i] == VarKind::Ordinary {
                return Err(Error::NotAUnit(self.to_string()));
            }
        }
        let inv_e: Exponents = e.iter().map(|x| -x).collect();
        let mut terms = Terms::new();
        terms.insert(inv_e, c.checked_inv()?);
        // 1/(c x^e D^peeled / D^den) = D^den / (c x^e D^peeled)
        let mut out = LaurentPoly {
            ring: self.ring.clone(),
            terms,
            den: peeled,
        };
        for k in 0..self.den.len() {
            if self.den[k] > 0 {
                let pw = terms_pow(&self.ring.denominators[k], self.den[k], self.ring.len());
                out.terms = terms_mul(&out.terms, &pw);
            }
        }
        Ok(out.normalized())
    }

    /// Re-expresses the value in another ring through a monomial map on exponents.
    pub fn map_exponents(&self, ring: &Arc<Ring>, f: impl Fn(&Exponents) -> Exponents) -> Result<Self> {
        if self.has_denominator() {
            return Err(Error::InvalidModel("cannot remap a value with denominators".into()));
        }
        let mut terms = Terms::new();
        for (e, c) in &self.terms {
            let e2 = f(e);
            for (i, &x) in e2.iter().enumerate() {
                if x < 0 && ring.kinds[i] == VarKind::Ordinary {
                    return Err(Error::NegativeExponent(ring.names[i].clone()));
                }
            }
            terms_add_into(&mut terms, &e2, c);
        }
        Ok(LaurentPoly::from_terms(ring, terms))
    }

    /// Replaces every variable by the matching entry of `images` (all over `target`).
    /// Negative powers and declared denominators must map to units of `target`.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[LaurentPoly]) -> Result<Self> {
        if images.len() != self.ring.len() {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), self.ring.len())));
        }
        let mut inverses: Vec<Option<LaurentPoly>> = vec![None; images.len()];
        let sub_terms = |terms: &Terms, inverses: &mut Vec<Option<LaurentPoly>>| -> Result<LaurentPoly> {
            let mut acc = LaurentPoly::zero(target);
            for (e, c) in terms {
                let mut t = LaurentPoly::constant(target, c.clone());
                for (i, &x) in e.iter().enumerate() {
                    if x > 0 {
                        t = t.try_mul(&images[i].pow(x as u32))?;
                    } else if x < 0 {
                        if inverses[i].is_none() {
                            inverses[i] = Some(images[i].unit_inverse()?);
                        }
                        let inv = inverses[i].as_ref().expect("cached inverse");
                        t = t.try_mul(&inv.pow(x.unsigned_abs()))?;
                    }
                }
                acc = acc.try_add(&t)?;
            }
            Ok(acc)
        };
        let mut out = sub_terms(&self.terms, &mut inverses)?;
        for (k, &m) in self.den.iter().enumerate() {
            if m > 0 {
                let d = sub_terms(&self.ring.denominators[k], &mut inverses)?;
                out = out.try_div(&d.pow(m))?;
            }
        }
        Ok(out)
    }

    /// Evaluates at the given point (one value per variable).
    pub fn evaluate(&self, values: &[Scalar]) -> Result<Scalar> {
        if values.len() != self.ring.len() {
            return Err(Error::Dimension(format!("{} values for {} variables", values.len(), self.ring.len())));
        }
        let eval_terms = |terms: &Terms| -> Result<Scalar> {
            let mut acc = Scalar::zero();
            for (e, c) in terms {
                let mut t = c.clone();
                for (x, v) in e.iter().zip(values) {
                    let base = if *x < 0 { v.checked_inv()? } else { v.clone() };
                    for _ in 0..x.unsigned_abs() {
                        t = &t * &base;
                    }
                }
                acc += &t;
            }
            Ok(acc)
        };
        let mut v = eval_terms(&self.terms)?;
        for (k, &m) in self.den.iter().enumerate() {
            let d = eval_terms(&self.ring.denominators[k])?;
            for _ in 0..m {
                v = v.checked_div(&d)?;
            }
        }
        Ok(v)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print_poly(self))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_add(o).expect("registry mismatch in polynomial addition")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_sub(o).expect("registry mismatch in polynomial subtraction")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        self.try_mul(o).expect("registry mismatch in polynomial product")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            den: self.den.clone(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: LaurentPoly) -> LaurentPoly {
        &self - &o
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: LaurentPoly) -> LaurentPoly {
        &self * &o
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xy() -> Arc<Ring> {
        Ring::polynomial(&["x", "y"])
    }

    fn p(ring: &Arc<Ring>, s: &str) -> LaurentPoly {
        LaurentPoly::parse(ring, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = xy();
        assert_eq!(&p(&r, "x + y") * &p(&r, "x - y"), p(&r, "x^2 - y^2"));
    }

    #[test]
    fn laurent_cancellation() {
        let r = Ring::new(&[("s", VarKind::Laurent)]);
        assert_eq!(&p(&r, "s^-1") * &p(&r, "s"), LaurentPoly::one(&r));
        assert_eq!(p(&r, "s^-2").derivative("s").unwrap(), p(&r, "-2*s^-3"));
    }

    #[test]
    fn gaussian_coefficients() {
        let r = xy();
        let a = p(&r, "1 + I");
        let b = p(&r, "1 - I");
        assert_eq!(&a * &b, LaurentPoly::int(&r, 2));
    }

    #[test]
    fn derivatives() {
        let r = xy();
        assert_eq!(p(&r, "x^2*y").derivative("x").unwrap(), p(&r, "2*x*y"));
        assert!(p(&r, "x^2").derivative("y").unwrap().is_zero());
        assert!(matches!(p(&r, "x").derivative("z"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn registry_mismatch_names_both() {
        let a = p(&xy(), "x");
        let b = p(&Ring::polynomial(&["u"]), "u");
        match a.try_add(&b) {
            Err(Error::RegistryMismatch { left, right }) => {
                assert_eq!(left, "x,y");
                assert_eq!(right, "u");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_exponent_on_ordinary_rejected() {
        let r = xy();
        assert!(LaurentPoly::parse(&r, "x^-1").is_err());
        assert!(LaurentPoly::monomial(&r, &[-1, 0], Scalar::one()).is_err());
    }

    #[test]
    fn denominators_cancel_and_differentiate() {
        let r = Ring::with_denominators(
            &[("x", VarKind::Ordinary), ("y", VarKind::Ordinary)],
            &["1 + x^2 + y^2"],
        )
        .unwrap();
        let d = r.denominator(0);
        let q = p(&r, "x/(1 + x^2 + y^2)");
        assert_eq!(q.den(), &[1]);
        assert_eq!(&q * &d, p(&r, "x"));
        // d/dx (1/D) = -2x/D^2
        let inv = p(&r, "1/(1+x^2+y^2)");
        assert_eq!(inv.derivative("x").unwrap(), p(&r, "-2*x/(1+x^2+y^2)^2"));
        assert_eq!(inv.unit_inverse().unwrap(), d);
    }

    #[test]
    fn exact_division() {
        let r = xy();
        let num = p(&r, "x^3 + x*y^2 + x");
        let d = p(&r, "1 + x^2 + y^2");
        assert_eq!(terms_div_exact(num.terms(), d.terms()).unwrap(), p(&r, "x").terms().clone());
        assert!(terms_div_exact(p(&r, "x^2").terms(), d.terms()).is_none());
    }

    #[test]
    fn substitution_into_laurent_target() {
        let src = Ring::with_denominators(&[("x", VarKind::Ordinary), ("u", VarKind::Laurent)], &["1 + x^2"]).unwrap();
        let dst = Ring::with_denominators(&[("x", VarKind::Ordinary), ("s", VarKind::Laurent)], &["1 + x^2"]).unwrap();
        let s2 = p(&dst, "s^2");
        let images = [p(&dst, "x"), s2];
        let f = p(&src, "x*u^-1 + u/(1 + x^2)");
        assert_eq!(f.substitute(&dst, &images).unwrap(), p(&dst, "x*s^-2 + s^2/(1 + x^2)"));
        let g = p(&src, "u^3 - 2");
        assert_eq!(g.substitute(&dst, &images).unwrap(), p(&dst, "s^6 - 2"));
        let bad = [p(&dst, "x"), p(&dst, "1 + s")];
        assert!(f.substitute(&dst, &bad).is_err());
    }

    fn small_poly() -> impl Strategy<Value = Vec<(i32, i32, i64, i64)>> {
        prop::collection::vec((0..3i32, -2..3i32, -3..4i64, 1..4i64), 0..4)
    }

    fn build(ring: &Arc<Ring>, spec: &[(i32, i32, i64, i64)]) -> LaurentPoly {
        let mut out = LaurentPoly::zero(ring);
        for &(a, b, n, d) in spec {
            out = &out + &LaurentPoly::monomial(ring, &[a, b], Scalar::ratio(n, d)).unwrap();
        }
        out
    }

    fn xs() -> Arc<Ring> {
        Ring::new(&[("x", VarKind::Ordinary), ("s", VarKind::Laurent)])
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            let r = xs();
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            for v in 0..2 {
                let lhs = (&a * &b).derivative_idx(v);
                let rhs = &(&a * &b.derivative_idx(v)) + &(&b * &a.derivative_idx(v));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn print_parse_round_trip(a in small_poly()) {
            let r = xs();
            let a = build(&r, &a);
            prop_assert_eq!(LaurentPoly::parse(&r, &a.to_string()).unwrap(), a);
        }
    }
}
