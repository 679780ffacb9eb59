//! Pseudo-Kähler metrics: Levi-Civita connection, compatibility checks, the
//! mobility equation and parallel forms.
//!
//! Solutions of the mobility equation are handled as symmetric 2-tensors
//! `Â(X, Y) = g(AX, Y)` satisfying
//! `(∇_k Â)_{ij} = g_{ki} λ_j + g_{kj} λ_i - ω_{ki} (J*λ)_j - ω_{kj} (J*λ)_i`
//! with `λ = d(¼ tr A)`, `ω_{ki} = g(J∂_k, ∂_i)` and `(J*λ)_j = λ(J∂_j)`.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, LaurentPoly, Rational, Ring, Scalar};
use crate::symsolve::{self, AnsatzSpace, Equations, LinearKernel};
use crate::tensorcalc::{
    determinant, invert, lie_derivative_form, nabla_j, nijenhuis, torsion, AlmostComplex, Connection, PolyTensor,
    VectorField,
};

/// A metric with its inverse, complex structure and Kähler form.
#[derive(Clone, Debug)]
pub struct MetricData {
    g: PolyTensor,
    inverse: Vec<Vec<LaurentPoly>>,
    j: AlmostComplex,
    omega: PolyTensor,
}

impl MetricData {
    pub fn new(g: PolyTensor, j: AlmostComplex) -> Result<MetricData> {
        if g.valence() != (0, 2) || g.dim() != j.dim() {
            return Err(Error::Dimension("metric must be a (0,2) tensor on the chart".into()));
        }
        if g.swap_lower(0, 1) != g {
            return Err(Error::InvalidModel("metric is not symmetric".into()));
        }
        let m = g.dim();
        let rows: Vec<Vec<LaurentPoly>> = (0..m).map(|i| (0..m).map(|k| g.get(&[i, k])).collect()).collect();
        if determinant(&rows)?.is_zero() {
            return Err(Error::DegenerateMetric("determinant vanishes identically".into()));
        }
        let inverse = invert(&rows).map_err(|_| Error::SingularMetric)?;
        let mut omega = PolyTensor::zeros(g.ring(), m, 0, 2);
        for k in 0..m {
            for i in 0..m {
                let mut acc = LaurentPoly::zero(g.ring());
                for a in 0..m {
                    let ja = j.get(a, k);
                    if !ja.is_zero() {
                        acc = &acc + &(&ja * &g.get(&[a, i]));
                    }
                }
                omega.set(&[k, i], acc);
            }
        }
        Ok(MetricData { g, inverse, j, omega })
    }

    pub fn metric(&self) -> &PolyTensor {
        &self.g
    }

    pub fn j(&self) -> &AlmostComplex {
        &self.j
    }

    pub fn kahler_form(&self) -> &PolyTensor {
        &self.omega
    }

    pub fn inverse(&self) -> &[Vec<LaurentPoly>] {
        &self.inverse
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.g.ring()
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// Raises the index of a 1-form.
    pub fn sharp(&self, form: &[LaurentPoly]) -> VectorField {
        let m = self.dim();
        VectorField(
            (0..m)
                .map(|i| {
                    let mut acc = LaurentPoly::zero(self.ring());
                    for a in 0..m {
                        if !self.inverse[i][a].is_zero() && !form[a].is_zero() {
                            acc = &acc + &(&self.inverse[i][a] * &form[a]);
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    /// `g^{ij} B_{ij}`.
    pub fn trace(&self, b: &PolyTensor) -> LaurentPoly {
        let mut acc = LaurentPoly::zero(self.ring());
        for (key, v) in b.iter() {
            let gi = &self.inverse[key[0]][key[1]];
            if !gi.is_zero() {
                acc = &acc + &(gi * v);
            }
        }
        acc
    }

    /// `A^i_j = g^{ia} B_{aj}`.
    pub fn raise_first(&self, b: &PolyTensor) -> PolyTensor {
        let m = self.dim();
        let mut out = PolyTensor::zeros(self.ring(), m, 1, 1);
        for (key, v) in b.iter() {
            for i in 0..m {
                let gi = &self.inverse[i][key[0]];
                if !gi.is_zero() {
                    out.add_at(&[i, key[1]], &(gi * v));
                }
            }
        }
        out
    }

    /// `B_{ij} = g_{ia} A^a_j`.
    pub fn lower_first(&self, a: &PolyTensor) -> PolyTensor {
        let m = self.dim();
        let mut out = PolyTensor::zeros(self.ring(), m, 0, 2);
        for (key, v) in a.iter() {
            for i in 0..m {
                let gi = self.g.get(&[i, key[0]]);
                if !gi.is_zero() {
                    out.add_at(&[i, key[1]], &(&gi * v));
                }
            }
        }
        out
    }
}

/// `Γ^i_{jk} = ½ g^{ia} (∂_j g_{ak} + ∂_k g_{aj} - ∂_a g_{jk})`.
pub fn levi_civita(md: &MetricData) -> Connection {
    let m = md.dim();
    let ring = md.ring().clone();
    let dg: Vec<Vec<Vec<LaurentPoly>>> = (0..m)
        .map(|a| (0..m).map(|b| (0..m).map(|c| md.g.get(&[a, b]).derivative_idx(c)).collect()).collect())
        .collect();
    let half = Scalar::ratio(1, 2);
    let mut gamma = PolyTensor::zeros(&ring, m, 1, 2);
    for jj in 0..m {
        for k in jj..m {
            // lowered symbol Γ_{a,jk}
            let low: Vec<LaurentPoly> =
                (0..m).map(|a| &(&dg[a][k][jj] + &dg[a][jj][k]) - &dg[jj][k][a]).collect();
            for i in 0..m {
                let mut acc = LaurentPoly::zero(&ring);
                for (a, l) in low.iter().enumerate() {
                    if !l.is_zero() && !md.inverse[i][a].is_zero() {
                        acc = &acc + &(&md.inverse[i][a] * l);
                    }
                }
                let v = acc.scale(&half);
                gamma.set(&[i, jj, k], v.clone());
                gamma.set(&[i, k, jj], v);
            }
        }
    }
    Connection::new(gamma).expect("valence (1,2)")
}

/// `(∇_k B)_{ij}` for a (0,2) tensor, stored at `[k, i, j]`.
pub fn covariant_derivative_form(conn: &Connection, b: &PolyTensor) -> PolyTensor {
    let m = b.dim();
    let mut out = PolyTensor::zeros(b.ring(), m, 0, 3);
    for (key, v) in b.iter() {
        for k in 0..m {
            out.add_at(&[k, key[0], key[1]], &v.derivative_idx(k));
        }
    }
    for (key, g) in conn.symbols().iter() {
        // Γ^a_{k i} B_{a j}, key = [a, k, i]
        let (a, k, i) = (key[0], key[1], key[2]);
        for jj in 0..m {
            let baj = b.get(&[a, jj]);
            if !baj.is_zero() {
                out.add_at(&[k, i, jj], &-&(g * &baj));
            }
            let bja = b.get(&[jj, a]);
            if !bja.is_zero() {
                out.add_at(&[k, jj, i], &-&(g * &bja));
            }
        }
    }
    out
}

/// Outcome of the four compatibility tests, with a few failing components.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KahlerFlags {
    pub hermitian: bool,
    pub closed_form: bool,
    pub parallel_j: bool,
    pub integrable: bool,
    pub witnesses: Vec<String>,
}

impl KahlerFlags {
    pub fn all(&self) -> bool {
        self.hermitian && self.closed_form && self.parallel_j && self.integrable
    }
}

fn witness(name: &str, t: &PolyTensor, out: &mut Vec<String>) {
    for (key, v) in t.iter().take(3) {
        let idx: Vec<String> = key.iter().map(|i| (i + 1).to_string()).collect();
        out.push(format!("{name}[{}] = {v}", idx.join(",")));
    }
}

/// `J*g - g`.
pub fn hermitian_defect(md: &MetricData) -> PolyTensor {
    j_invariance_defect(&md.g, &md.j)
}

/// `B(J·, J·) - B` for a (0,2) tensor.
pub fn j_invariance_defect(b: &PolyTensor, j: &AlmostComplex) -> PolyTensor {
    let mut out = b.scale(&Scalar::from_int(-1));
    for (ka, ja) in j.tensor().iter() {
        for (kb, jb) in j.tensor().iter() {
            // J^a_i J^b_j B_{ab}
            let bab = b.get(&[ka[0], kb[0]]);
            if !bab.is_zero() {
                out.add_at(&[ka[1], kb[1]], &(&(ja * jb) * &bab));
            }
        }
    }
    out
}

/// `dω` as `[i, j, k] ↦ ∂_i ω_{jk} + ∂_j ω_{ki} + ∂_k ω_{ij}`.
pub fn exterior_derivative_2form(omega: &PolyTensor) -> PolyTensor {
    let m = omega.dim();
    let mut out = PolyTensor::zeros(omega.ring(), m, 0, 3);
    for i in 0..m {
        for jj in 0..m {
            for k in 0..m {
                let v = &(&omega.get(&[jj, k]).derivative_idx(i) + &omega.get(&[k, i]).derivative_idx(jj))
                    + &omega.get(&[i, jj]).derivative_idx(k);
                out.set(&[i, jj, k], v);
            }
        }
    }
    out
}

pub fn kahler_check(md: &MetricData) -> KahlerFlags {
    let mut flags = KahlerFlags::default();
    let herm = hermitian_defect(md);
    flags.hermitian = herm.is_zero();
    witness("J*g-g", &herm, &mut flags.witnesses);
    let d_omega = exterior_derivative_2form(&md.omega);
    flags.closed_form = d_omega.is_zero();
    witness("d omega", &d_omega, &mut flags.witnesses);
    let lc = levi_civita(md);
    let nj = nabla_j(&lc, &md.j);
    flags.parallel_j = nj.is_zero();
    witness("nabla J", &nj, &mut flags.witnesses);
    let n = nijenhuis(&md.j);
    flags.integrable = n.is_zero();
    witness("N_J", &n, &mut flags.witnesses);
    flags
}

/// Checks `∇g = 0` and vanishing torsion.
pub fn is_metric_connection(md: &MetricData, conn: &Connection) -> bool {
    torsion(conn).is_zero() && covariant_derivative_form(conn, &md.g).is_zero()
}

/// Index pairs `i ≤ j` used as unknown components of a symmetric tensor.
fn sym_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i..m).map(move |k| (i, k))).collect()
}

fn assemble_symmetric(ring: &Arc<Ring>, m: usize, comps: &[LaurentPoly]) -> PolyTensor {
    let mut b = PolyTensor::zeros(ring, m, 0, 2);
    for ((i, k), v) in sym_pairs(m).into_iter().zip(comps) {
        b.set(&[i, k], v.clone());
        if i != k {
            b.set(&[k, i], v.clone());
        }
    }
    b
}

/// `λ = d(¼ tr A)` for `Â`.
pub fn mobility_lambda(md: &MetricData, ahat: &PolyTensor) -> Vec<LaurentPoly> {
    let theta = md.trace(ahat).scale(&Scalar::ratio(1, 4));
    (0..md.dim()).map(|k| theta.derivative_idx(k)).collect()
}

/// Left side minus right side of the mobility equation, stored at `[k, i, j]`.
pub fn mobility_residual(md: &MetricData, conn: &Connection, ahat: &PolyTensor) -> PolyTensor {
    let m = md.dim();
    let lambda = mobility_lambda(md, ahat);
    let jl = md.j.compose_form(&lambda);
    let mut out = covariant_derivative_form(conn, ahat);
    for (key, g) in md.g.iter() {
        let (k, i) = (key[0], key[1]);
        for jj in 0..m {
            if !lambda[jj].is_zero() {
                let t = &-g * &lambda[jj];
                out.add_at(&[k, i, jj], &t);
                out.add_at(&[k, jj, i], &t);
            }
        }
    }
    for (key, w) in md.omega.iter() {
        let (k, i) = (key[0], key[1]);
        for jj in 0..m {
            if !jl[jj].is_zero() {
                let t = w * &jl[jj];
                out.add_at(&[k, i, jj], &t);
                out.add_at(&[k, jj, i], &t);
            }
        }
    }
    out
}

/// One solution of the mobility equation with its derived quantities.
#[derive(Clone, Debug)]
pub struct MobilitySolution {
    pub ahat: PolyTensor,
    /// `θ = ¼ tr A`.
    pub theta: LaurentPoly,
    pub lambda: Vec<LaurentPoly>,
    /// `grad_g θ`.
    pub gradient: VectorField,
}

#[derive(Clone, Debug)]
pub struct MobilityResult {
    /// Dimension with `Â` symmetric and `J`-invariant.
    pub dim: usize,
    /// Dimension with `Â` only symmetric.
    pub unconstrained_dim: usize,
    pub basis: Vec<MobilitySolution>,
    pub contains_metric: bool,
    pub verified: bool,
    pub stabilized: Option<bool>,
    pub ansatz: String,
    kernel: LinearKernel,
}

impl MobilityResult {
    /// Coefficients of `Â` over the basis, if it is a solution.
    pub fn decompose(&self, ahat: &PolyTensor) -> Option<Vec<Rational>> {
        let comps: Vec<LaurentPoly> = sym_pairs(ahat.dim()).into_iter().map(|(i, k)| ahat.get(&[i, k])).collect();
        self.kernel.decompose(&comps)
    }
}

fn mobility_kernel(md: &MetricData, conn: &Connection, degree: u32, ranges: &[(&str, i32, i32)], hermitian: bool) -> Result<LinearKernel> {
    let m = md.dim();
    let space = AnsatzSpace::new(md.ring(), m * (m + 1) / 2, degree, ranges)?;
    Ok(mobility_kernel_on(md, conn, &space, hermitian))
}

fn mobility_kernel_on(md: &MetricData, conn: &Connection, space: &AnsatzSpace, hermitian: bool) -> LinearKernel {
    let m = md.dim();
    let ring = md.ring().clone();
    LinearKernel::solve(space, 0, |comps, _| {
        let ahat = assemble_symmetric(&ring, m, comps);
        let mut eqs = vec![mobility_residual(md, conn, &ahat)];
        if hermitian {
            eqs.push(j_invariance_defect(&ahat, &md.j));
        }
        eqs
    })
}

/// Solution space of the mobility equation over polynomial `Â` of bounded degree.
pub fn mobility_dimension(md: &MetricData, degree: u32, ranges: &[(&str, i32, i32)]) -> Result<MobilityResult> {
    let conn = levi_civita(md);
    let m = md.dim();
    let kernel = mobility_kernel(md, &conn, degree, ranges, true)?;
    let wider = mobility_kernel_on(md, &conn, &kernel.space().enlarged(), true);
    let unconstrained = mobility_kernel(md, &conn, degree, ranges, false)?;
    let mut basis = Vec::new();
    let mut verified = true;
    for k in 0..kernel.dim() {
        let ahat = assemble_symmetric(md.ring(), m, &kernel.components(k));
        if !mobility_residual(md, &conn, &ahat).is_zero() || !j_invariance_defect(&ahat, &md.j).is_zero() {
            verified = false;
        }
        let theta = md.trace(&ahat).scale(&Scalar::ratio(1, 4));
        let lambda = mobility_lambda(md, &ahat);
        let gradient = md.sharp(&lambda);
        basis.push(MobilitySolution {
            ahat,
            theta,
            lambda,
            gradient,
        });
    }
    let mut res = MobilityResult {
        dim: kernel.dim(),
        unconstrained_dim: unconstrained.dim(),
        basis,
        contains_metric: false,
        verified,
        stabilized: Some(wider.dim() == kernel.dim()),
        ansatz: kernel.space().describe(),
        kernel,
    };
    res.contains_metric = res.decompose(md.metric()).is_some();
    Ok(res)
}

/// Parallel 1-forms `∂_j α_k - Γ^a_{jk} α_a = 0` over a polynomial ansatz.
#[derive(Clone, Debug)]
pub struct ParallelForms {
    pub dim: usize,
    pub basis: Vec<Vec<LaurentPoly>>,
    kernel: LinearKernel,
}

impl ParallelForms {
    /// Whether every form in `forms` is parallel and in the computed span,
    /// and whether together they span it.
    pub fn compare(&self, forms: &[Vec<LaurentPoly>]) -> (bool, bool) {
        let coords: Vec<Option<Vec<Rational>>> = forms.iter().map(|f| self.kernel.decompose(f)).collect();
        let contained = coords.iter().all(Option::is_some);
        let rows: Vec<Vec<Rational>> = coords.into_iter().flatten().collect();
        let rank = if rows.is_empty() {
            0
        } else {
            ExactMatrix::from_rows(rows[0].len(), rows).map(|m| m.rank()).unwrap_or(0)
        };
        (contained, contained && rank == self.dim)
    }
}

pub fn covariant_derivative_1form(conn: &Connection, alpha: &[LaurentPoly]) -> PolyTensor {
    let m = conn.dim();
    let ring = conn.symbols().ring().clone();
    let mut out = PolyTensor::zeros(&ring, m, 0, 2);
    for jj in 0..m {
        for k in 0..m {
            out.add_at(&[jj, k], &alpha[k].derivative_idx(jj));
        }
    }
    for (key, g) in conn.symbols().iter() {
        if !alpha[key[0]].is_zero() {
            out.add_at(&[key[1], key[2]], &-&(g * &alpha[key[0]]));
        }
    }
    out
}

pub fn parallel_forms(conn: &Connection, degree: u32, ranges: &[(&str, i32, i32)]) -> Result<ParallelForms> {
    let m = conn.dim();
    let ring = conn.symbols().ring().clone();
    let space = AnsatzSpace::new(&ring, m, degree, ranges)?;
    let kernel = LinearKernel::solve(&space, 0, |alpha, _| vec![covariant_derivative_1form(conn, alpha)]);
    let basis = (0..kernel.dim()).map(|k| kernel.components(k)).collect();
    Ok(ParallelForms {
        dim: kernel.dim(),
        basis,
        kernel,
    })
}

/// `A = g⁻¹ L_v g - tr(g⁻¹ L_v g)/(2(n+1)) Id` for a c-projective symmetry `v`.
pub fn phi_map(md: &MetricData, v: &VectorField) -> Result<PolyTensor> {
    let conn = levi_civita(md);
    symsolve::verify(&Equations::cproj(&conn, &md.j), v)?;
    let m = md.dim();
    let n = (m / 2) as i64;
    let lg = lie_derivative_form(v, &md.g);
    let mut a = md.raise_first(&lg);
    let tr = md.trace(&lg).scale(&Scalar::ratio(-1, 2 * (n + 1)));
    for i in 0..m {
        a.add_at(&[i, i], &tr);
    }
    Ok(a)
}

/// Rank of `v ↦ [φ(v)]` in `Sol / ⟨g⟩` over the given symmetries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiRank {
    pub fields: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    /// Every `φ(v)` lowered to `Â` solved the mobility equation.
    pub all_in_solution_space: bool,
    /// Fields with `φ(v) = 0`, which are exactly the isometries.
    pub zero_images: usize,
}

pub fn phi_quotient_rank(md: &MetricData, fields: &[VectorField], mobility: &MobilityResult) -> Result<PhiRank> {
    let g_coords = mobility.decompose(md.metric()).ok_or_else(|| Error::InvalidModel("metric is not a solution".into()))?;
    let mut rows = vec![g_coords];
    let mut all_in = true;
    let mut zero_images = 0;
    for v in fields {
        let a = phi_map(md, v)?;
        if a.is_zero() {
            zero_images += 1;
        }
        match mobility.decompose(&md.lower_first(&a)) {
            Some(c) => rows.push(c),
            None => all_in = false,
        }
    }
    let cols = rows[0].len();
    let full = ExactMatrix::from_rows(cols, rows.clone())?.rank();
    // the metric's own row contributes one to `full`
    let rank = full - 1;
    Ok(PhiRank {
        fields: fields.len(),
        rank,
        kernel_dim: fields.len() - rank,
        all_in_solution_space: all_in,
        zero_images,
    })
}

/// Inertia of a real symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_definite(&self) -> bool {
        self.zero == 0 && (self.positive == 0 || self.negative == 0)
    }
}

/// Characteristic polynomial `det(tI - M)` coefficients, constant term first.
pub fn characteristic_polynomial(m: &ExactMatrix<Rational>) -> Vec<Rational> {
    // Faddeev–LeVerrier
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::from_integer(1.into());
    let mut mk = ExactMatrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        // M_k = M (M_{k-1} + c_{n-k+1} I)
        let mut prev = mk.clone();
        for i in 0..n {
            let v = prev.get(i, i) + &coeffs[n - k + 1];
            prev.set(i, i, v);
        }
        mk = m.mul(&prev).expect("square");
        let tr: Rational = (0..n).map(|i| mk.get(i, i).clone()).sum();
        coeffs[n - k] = -tr / Rational::from_integer((k as i64).into());
    }
    coeffs
}

fn sign_changes(coeffs: &[Rational]) -> usize {
    let signs: Vec<bool> = coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Exact inertia from the characteristic polynomial, whose roots are all real.
pub fn signature(m: &ExactMatrix<Rational>) -> Signature {
    let p = characteristic_polynomial(m);
    let zero = p.iter().take_while(|c| c.is_zero()).count();
    let reduced = &p[zero..];
    let positive = sign_changes(reduced);
    let flipped: Vec<Rational> =
        reduced.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() }).collect();
    let negative = sign_changes(&flipped);
    Signature { positive, negative, zero }
}

/// Gram matrix of a (0,2) tensor at a point of the chart.
pub fn gram_at(g: &PolyTensor, point: &[Scalar]) -> Result<ExactMatrix<Rational>> {
    let m = g.dim();
    let mut out = ExactMatrix::<Rational>::zeros(m, m);
    for (key, v) in g.iter() {
        let val = v.evaluate(point)?;
        if !val.is_real() {
            return Err(Error::InvalidModel("metric is not real".into()));
        }
        out.set(key[0], key[1], val.re().clone());
    }
    Ok(out)
}

/// Compares the Levi-Civita connections of two metrics: the difference must
/// have the form `φ_j δ^i_k + φ_k δ^i_j - φ_a J^a_j J^i_k - φ_a J^a_k J^i_j`.
pub fn cproj_equivalent(first: &Connection, second: &Connection, j: &AlmostComplex) -> bool {
    let m = j.dim();
    let n = (m / 2) as i64;
    let Ok(diff) = second.symbols().try_sub(first.symbols()) else {
        return false;
    };
    let mut phi = vec![LaurentPoly::zero(diff.ring()); m];
    for (key, v) in diff.iter() {
        if key[0] == key[2] {
            phi[key[1]] = &phi[key[1]] + v;
        }
    }
    // the trace of the model form is 2(n+1) φ_j
    let phi: Vec<LaurentPoly> = phi.iter().map(|p| p.scale(&Scalar::ratio(1, 2 * (n + 1)))).collect();
    let phi_j = j.compose_form(&phi);
    let mut model = PolyTensor::zeros(diff.ring(), m, 1, 2);
    for a in 0..m {
        if !phi[a].is_zero() {
            for i in 0..m {
                model.add_at(&[i, a, i], &phi[a]);
                model.add_at(&[i, i, a], &phi[a]);
            }
        }
        if !phi_j[a].is_zero() {
            for (key, jv) in j.tensor().iter() {
                let p = &-&phi_j[a] * jv;
                model.add_at(&[key[0], a, key[1]], &p);
                model.add_at(&[key[0], key[1], a], &p);
            }
        }
    }
    model == diff
}

/// Member of a family of metrics tested against a reference metric.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub metric: MetricData,
    /// `det ĝ / det g` is constant.
    pub constant_determinant_ratio: bool,
    /// Levi-Civita connections are c-projectively equivalent.
    pub cproj_equivalent: bool,
    /// Same Levi-Civita connection.
    pub affinely_equivalent: bool,
    /// `Â = g(ĝ⁻¹g ·, ·)` solves the mobility equation of `g`; only decided
    /// when the determinant ratio is constant.
    pub solves_mobility: Option<bool>,
}

pub fn compare_metrics(reference: &MetricData, other: &MetricData) -> Result<FamilyMember> {
    let lc = levi_civita(reference);
    let lc_other = levi_civita(other);
    let m = reference.dim();
    let rows = |g: &PolyTensor| -> Vec<Vec<LaurentPoly>> { (0..m).map(|i| (0..m).map(|k| g.get(&[i, k])).collect()).collect() };
    let d0 = determinant(&rows(reference.metric()))?;
    let d1 = determinant(&rows(other.metric()))?;
    let ratio = d1.try_div(&d0).ok().or_else(|| d0.unit_inverse().ok().map(|inv| &d1 * &inv));
    let constant = ratio.as_ref().and_then(LaurentPoly::as_constant).is_some();
    let solves = if constant {
        // A = ĝ⁻¹ g up to a constant factor; Â_{ij} = g_{ia} A^a_j
        let mut a = PolyTensor::zeros(reference.ring(), m, 1, 1);
        for i in 0..m {
            for jj in 0..m {
                let mut acc = LaurentPoly::zero(reference.ring());
                for b in 0..m {
                    let inv = &other.inverse()[i][b];
                    if !inv.is_zero() {
                        acc = &acc + &(inv * &reference.metric().get(&[b, jj]));
                    }
                }
                a.set(&[i, jj], acc);
            }
        }
        let ahat = reference.lower_first(&a);
        Some(mobility_residual(reference, &lc, &ahat).is_zero())
    } else {
        None
    };
    Ok(FamilyMember {
        metric: other.clone(),
        constant_determinant_ratio: constant,
        cproj_equivalent: cproj_equivalent(&lc, &lc_other, reference.j()),
        affinely_equivalent: lc.symbols() == lc_other.symbols(),
        solves_mobility: solves,
    })
}

#[cfg(test)]
mod tests;
