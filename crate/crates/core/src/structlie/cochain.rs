//! Antisymmetric 2-cochains on a subspace and the deformed bracket they define.

use std::collections::BTreeMap;

use super::{add_into, finish, JacobiTerm, SparseVec, StructAlgebra};
use crate::error::{Error, Result};
#[cfg(test)]
use crate::exact::LaurentPoly;

/// A bilinear antisymmetric map on the span of `domain` with values in the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain2 {
    domain: Vec<usize>,
    values: BTreeMap<(usize, usize), SparseVec>,
}

impl Cochain2 {
    pub fn new(domain: Vec<usize>) -> Self {
        Cochain2 {
            domain,
            values: BTreeMap::new(),
        }
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Sets `ψ(e_i, e_j) = value` (and implicitly `ψ(e_j, e_i) = -value`).
    pub fn set(&mut self, i: usize, j: usize, value: SparseVec) -> Result<()> {
        if !self.domain.contains(&i) || !self.domain.contains(&j) {
            return Err(Error::Dimension("cochain argument outside its domain".into()));
        }
        if i == j {
            return Ok(());
        }
        let value: SparseVec = if i < j {
            value
        } else {
            value.into_iter().map(|(k, c)| (k, -c)).collect()
        };
        let value: SparseVec = value.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let key = (i.min(j), i.max(j));
        if value.is_empty() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> SparseVec {
        if i == j {
            return Vec::new();
        }
        match self.values.get(&(i.min(j), i.max(j))) {
            None => Vec::new(),
            Some(v) if i < j => v.clone(),
            Some(v) => v.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn negated(&self) -> Cochain2 {
        Cochain2 {
            domain: self.domain.clone(),
            values: self
                .values
                .iter()
                .map(|(k, v)| (*k, v.iter().map(|(i, c)| (*i, -c)).collect()))
                .collect(),
        }
    }

    /// Evaluates on sparse vectors; components outside the domain are ignored.
    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let v = self.get(*i, *j);
                if v.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in v {
                    add_into(&mut acc, k, &(&ab * &c));
                }
            }
        }
        finish(acc)
    }
}

/// Result of deforming a bracket by a cochain.
#[derive(Clone, Debug)]
pub struct Deformation {
    pub algebra: StructAlgebra,
    /// All nonzero Jacobi sums of the deformed bracket.
    pub residual: Vec<JacobiTerm>,
    /// `Σ_cyc ψ(ψ(x,y),z)` on domain triples.
    pub cyclic_formula: Vec<JacobiTerm>,
    /// Whether the deformed Jacobi sums on domain triples equal the formula.
    pub matches_formula: bool,
}

impl Deformation {
    pub fn is_lie(&self) -> bool {
        self.residual.is_empty()
    }
}

impl StructAlgebra {
    /// The bracket `[x,y] - ψ(x,y)` and its Jacobi residual.
    pub fn deform_by_cochain(&self, psi: &Cochain2) -> Result<Deformation> {
        let n = self.dim();
        for (&(i, j), v) in &psi.values {
            if let Some((k, _)) = v.iter().find(|(k, _)| *k >= n) {
                return Err(Error::OutsideAlgebra(format!(
                    "psi({}, {}) has component {k} in a {n}-dimensional algebra",
                    self.labels[i], self.labels[j]
                )));
            }
            if let Some(c) = v.iter().find(|(_, c)| c.ring().as_ref() != self.params.as_ref()) {
                return Err(Error::RegistryMismatch {
                    left: self.params.describe(),
                    right: c.1.ring().describe(),
                });
            }
        }
        let mut out = self.clone();
        out.name = format!("{}-deformed", self.name);
        for &i in &psi.domain {
            for &j in &psi.domain {
                if i >= j {
                    continue;
                }
                let mut acc = BTreeMap::new();
                for (k, c) in self.bracket_basis(i, j) {
                    add_into(&mut acc, k, &c);
                }
                for (k, c) in psi.get(i, j) {
                    add_into(&mut acc, k, &-&c);
                }
                out.set_bracket(i, j, finish(acc))?;
            }
        }
        let residual = out.jacobi_residual();
        let mut cyclic_formula = Vec::new();
        let dom = &psi.domain;
        for (a, &i) in dom.iter().enumerate() {
            for (b, &j) in dom.iter().enumerate().skip(a + 1) {
                for &k in dom.iter().skip(b + 1) {
                    let (x, y, z) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let mut acc = BTreeMap::new();
                    for (p, q, r) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
                        for (idx, c) in psi.eval(&psi.eval(p, q), r) {
                            add_into(&mut acc, idx, &c);
                        }
                    }
                    let value = finish(acc);
                    if !value.is_empty() {
                        let t = sorted_triple(i, j, k);
                        cyclic_formula.push(JacobiTerm { triple: t, value });
                    }
                }
            }
        }
        cyclic_formula.sort_by_key(|t| t.triple);
        let in_domain = |t: &JacobiTerm| dom.contains(&t.triple.0) && dom.contains(&t.triple.1) && dom.contains(&t.triple.2);
        let restricted: Vec<&JacobiTerm> = residual.iter().filter(|t| in_domain(t)).collect();
        let matches_formula = restricted.len() == cyclic_formula.len()
            && restricted.iter().zip(&cyclic_formula).all(|(a, b)| {
                // Jacobi sums are alternating, so the sorted triple fixes the sign.
                a.triple == b.triple && a.value == b.value
            });
        Ok(Deformation {
            algebra: out,
            residual,
            cyclic_formula,
            matches_formula,
        })
    }
}

fn sorted_triple(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let mut v = [i, j, k];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

/// Convenience: a constant coefficient vector.
#[cfg(test)]
pub(crate) fn constant_vec(a: &StructAlgebra, entries: &[(usize, crate::exact::Scalar)]) -> SparseVec {
    entries
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (*k, LaurentPoly::constant(a.params(), c.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;
    use crate::structlie::{s_algebra, StructAlgebra};

    #[test]
    fn zero_cochain_is_identity() {
        let a = s_algebra();
        let d = a.deform_by_cochain(&Cochain2::new(vec![4, 5, 6, 7])).unwrap();
        assert!(d.algebra.same_structure(&a));
        assert!(d.is_lie());
        assert!(d.matches_formula);
    }

    #[test]
    fn deform_then_undo() {
        let a = s_algebra();
        let mut psi = Cochain2::new(vec![4, 5, 6, 7]);
        psi.set(4, 6, constant_vec(&a, &[(0, Scalar::ratio(3, 2)), (7, Scalar::i())])).unwrap();
        psi.set(7, 5, constant_vec(&a, &[(2, Scalar::from_int(-1))])).unwrap();
        let once = a.deform_by_cochain(&psi).unwrap().algebra;
        let back = once.deform_by_cochain(&psi.negated()).unwrap().algebra;
        assert!(back.same_structure(&a));
    }

    #[test]
    fn nilpotent_cochain_residual_matches_formula() {
        // Abelian x1..x3 deformed by ψ(x1,x2) = x3, ψ(x3,x1) = x2: the formula's
        // cyclic sum is nonzero and must equal the Jacobi residual.
        let a = StructAlgebra::new("r3", &["x1", "x2", "x3"]);
        let mut psi = Cochain2::new(vec![0, 1, 2]);
        psi.set(0, 1, constant_vec(&a, &[(2, Scalar::one())])).unwrap();
        psi.set(2, 0, constant_vec(&a, &[(1, Scalar::one())])).unwrap();
        let d = a.deform_by_cochain(&psi).unwrap();
        assert!(d.matches_formula);
        assert_eq!(d.residual.is_empty(), d.cyclic_formula.is_empty());
    }

    #[test]
    fn outside_values_rejected() {
        let a = StructAlgebra::new("r2", &["x1", "x2"]);
        let mut psi = Cochain2::new(vec![0, 1]);
        psi.set(0, 1, constant_vec(&a, &[(5, Scalar::one())])).unwrap();
        assert!(matches!(a.deform_by_cochain(&psi), Err(Error::OutsideAlgebra(_))));
    }
}
