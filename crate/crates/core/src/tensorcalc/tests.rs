use super::complex::{self, expand, wedge, CIndex, ComplexTerm};
use super::*;
use crate::exact::rat;
use proptest::prelude::*;

fn standard(chart: &Chart) -> AlmostComplex {
    AlmostComplex::standard(chart.ring(), chart.dim())
}

fn cterm(chart: &Chart, coeff: &str, up: &[CIndex], low: &[CIndex]) -> ComplexTerm {
    ComplexTerm::new(chart.parse(coeff).unwrap(), up.to_vec(), low.to_vec())
}

fn z(k: usize) -> CIndex {
    CIndex::z(k - 1)
}

fn zb(k: usize) -> CIndex {
    CIndex::zb(k - 1)
}

fn sym_gamma(chart: &Chart, entries: &[(&str, CIndex, CIndex, CIndex)]) -> Connection {
    let mut terms = Vec::new();
    for (c, i, j, k) in entries {
        terms.push(cterm(chart, c, &[*i], &[*j, *k]));
        if j != k {
            terms.push(cterm(chart, c, &[*i], &[*k, *j]));
        }
    }
    Connection::new(expand(chart, &terms, true).unwrap()).unwrap()
}

fn type3_j(n: usize) -> (Chart, AlmostComplex) {
    let chart = Chart::complex(n, &[]).unwrap();
    let mut terms: Vec<ComplexTerm> = (1..=n).map(|k| cterm(&chart, "I", &[z(k)], &[z(k)])).collect();
    terms.push(cterm(&chart, "z2", &[zb(3)], &[z(1)]));
    let j = AlmostComplex::new(expand(&chart, &terms, true).unwrap()).unwrap();
    (chart, j)
}

/// `∇ = ½(d - J d J)` has `Γ^i_{jk} = -½ J^i_a ∂_j J^a_k`.
fn averaged_connection(j: &AlmostComplex) -> Connection {
    let m = j.dim();
    let ring = j.tensor().ring().clone();
    let mut g = PolyTensor::zeros(&ring, m, 1, 2);
    for i in 0..m {
        for jj in 0..m {
            for k in 0..m {
                let mut acc = LaurentPoly::zero(&ring);
                for a in 0..m {
                    acc = &acc + &(&j.get(i, a) * &j.get(a, k).derivative_idx(jj));
                }
                g.set(&[i, jj, k], acc.scale(&Scalar::ratio(-1, 2)));
            }
        }
    }
    Connection::new(g).unwrap()
}

fn proportional(a: &PolyTensor, b: &PolyTensor) -> Option<Scalar> {
    let (k, v) = b.iter().next()?;
    let w = a.entry(k)?;
    let (e, c) = v.terms().iter().next()?;
    let ratio = w.terms().get(e)?.checked_div(c).ok()?;
    (*a == b.scale(&ratio)).then_some(ratio)
}

#[test]
fn standard_structure_is_integrable() {
    for n in 1..=3 {
        let chart = Chart::complex(n, &[]).unwrap();
        assert!(nijenhuis(&standard(&chart)).is_zero());
    }
}

#[test]
fn j_squared_is_checked() {
    let chart = Chart::complex(1, &[]).unwrap();
    let mut j = PolyTensor::zeros(chart.ring(), 2, 1, 1);
    j.set(&[1, 0], LaurentPoly::one(chart.ring()));
    j.set(&[0, 1], LaurentPoly::one(chart.ring()));
    assert!(AlmostComplex::new(j).is_err());
}

#[test]
fn flat_connection_has_no_torsion_or_curvature() {
    let chart = Chart::complex(2, &[]).unwrap();
    let conn = Connection::flat(chart.ring(), 4);
    assert!(torsion(&conn).is_zero());
    assert!(curvature(&conn).is_zero());
    for p in torsion_projections(&torsion(&conn), &standard(&chart)) {
        assert!(p.is_zero());
    }
}

#[test]
fn complex_dictionary_matches_real_expansion() {
    // J ∂x1 = ∂y1 + x2 ∂x3 - y2 ∂y3 and J ∂y1 = -∂x1 - y2 ∂x3 - x2 ∂y3
    let (chart, j) = type3_j(3);
    let p = |s: &str| chart.parse(s).unwrap();
    assert_eq!(j.get(1, 0), p("1"));
    assert_eq!(j.get(4, 0), p("x2"));
    assert_eq!(j.get(5, 0), p("-y2"));
    assert_eq!(j.get(0, 1), p("-1"));
    assert_eq!(j.get(4, 1), p("-y2"));
    assert_eq!(j.get(5, 1), p("-x2"));
    for k in 1..3 {
        assert_eq!(j.get(2 * k + 1, 2 * k), p("1"));
        assert_eq!(j.get(2 * k, 2 * k + 1), p("-1"));
    }
    assert_eq!(j.tensor().nonzero_count(), 6 + 4);
}

#[test]
fn egorov_symbols_in_real_coordinates() {
    let chart = Chart::complex(3, &[]).unwrap();
    let conn = sym_gamma(&chart, &[("z2", z(1), z(2), z(3))]);
    let p = |s: &str| chart.parse(s).unwrap();
    let g = |i: usize, j: usize, k: usize| conn.get(i - 1, j - 1, k - 1);
    assert_eq!(g(1, 3, 5), p("x2"));
    assert_eq!(g(2, 3, 6), p("x2"));
    assert_eq!(g(2, 4, 5), p("x2"));
    assert_eq!(g(1, 4, 6), p("-x2"));
    assert_eq!(g(2, 3, 5), p("y2"));
    assert_eq!(g(1, 3, 6), p("-y2"));
    assert_eq!(g(1, 4, 5), p("-y2"));
    assert_eq!(g(2, 4, 6), p("-y2"));
    assert!(conn.is_symmetric());
    assert!(nabla_j(&conn, &standard(&chart)).is_zero());
}

#[test]
fn egorov_curvature_is_holomorphic() {
    let chart = Chart::complex(3, &[]).unwrap();
    let j = standard(&chart);
    let conn = sym_gamma(&chart, &[("z2", z(1), z(2), z(3))]);
    let r = curvature(&conn);
    let bi = curvature_bidegree(&r, &j);
    assert_eq!(bi.types(), vec!["(2,0)"]);
    assert_eq!(bi.sum(), r);
    let one = chart.parse("1").unwrap();
    let expected = expand(&chart, &wedge_with_slot(&one, z(1), z(2), z(2), z(3)), true).unwrap();
    assert!(proportional(&r, &expected).is_some());
}

/// `c · dZ^a ∧ dZ^b` in the form slots, `dZ^s ⊗ ∂_up` in the remaining slots.
fn wedge_with_slot(c: &LaurentPoly, up: CIndex, s: CIndex, a: CIndex, b: CIndex) -> Vec<ComplexTerm> {
    wedge(c.clone(), vec![up], a, b)
        .into_iter()
        .map(|t| ComplexTerm::new(t.coeff, t.upper, vec![s, t.lower[0], t.lower[1]]))
        .collect()
}

#[test]
fn type2_curvature_is_of_type_one_one() {
    let chart = Chart::complex(2, &[]).unwrap();
    let j = standard(&chart);
    let conn = sym_gamma(&chart, &[("zb1", z(2), z(1), z(1))]);
    let r = curvature(&conn);
    let bi = curvature_bidegree(&r, &j);
    assert_eq!(bi.types(), vec!["(1,1)"]);
    let one = chart.parse("1").unwrap();
    let expected = expand(&chart, &wedge_with_slot(&one, z(2), z(1), z(1), zb(1)), true).unwrap();
    let ratio = proportional(&r, &expected).expect("proportional");
    assert!(ratio.is_real() && !ratio.is_zero());
    assert!(nijenhuis(&j).is_zero());
    assert!(torsion(&conn).is_zero());
}

#[test]
fn type3_nijenhuis_matches_closed_form() {
    let (chart, j) = type3_j(3);
    let n = nijenhuis(&j);
    let c = chart.parse("-2*I").unwrap();
    let expected = expand(&chart, &wedge(c, vec![zb(3)], z(1), z(2)), true).unwrap();
    assert_eq!(n, expected);
    assert!(n.is_antisymmetric(0, 1));
    // N(JX, Y) = -J N(X, Y)
    assert_eq!(j.compose_slot(&n, 0), j.compose_up(&n).scale(&Scalar::from_int(-1)));
}

#[test]
fn type3_averaged_connection() {
    let (chart, j) = type3_j(3);
    let conn = averaged_connection(&j);
    let g = |i: usize, jj: usize, k: usize| conn.get(i - 1, jj - 1, k - 1);
    let half = chart.parse("-1/2").unwrap();
    assert_eq!(g(6, 3, 1), half);
    assert_eq!(g(5, 3, 2), half);
    assert_eq!(g(5, 4, 1), half);
    assert_eq!(g(6, 4, 2), -&half);
    assert!(g(6, 1, 3).is_zero() && g(5, 2, 3).is_zero() && g(5, 1, 4).is_zero() && g(6, 2, 4).is_zero());
    assert!(nabla_j(&conn, &j).is_zero());
    assert!(curvature(&conn).is_zero());
    let t = torsion(&conn);
    assert!(!t.is_zero());
    assert!(is_minimal(&t, &j));
    // T = T^{--} = N/4
    assert_eq!(t, nijenhuis(&j).scale(&Scalar::ratio(1, 4)));
    let parts = torsion_parts(&t, &j);
    assert!(parts.pi1.is_zero() && parts.pi2.is_zero() && parts.pi4.is_zero() && parts.pi5.is_zero());
    assert_eq!(parts.pi3, t);
}

#[test]
fn nonminimal_torsion_is_traceless_antilinear_linear() {
    let chart = Chart::complex(2, &[]).unwrap();
    let j = standard(&chart);
    let terms = vec![cterm(&chart, "1", &[z(2)], &[zb(1), z(1)])];
    let conn = Connection::new(expand(&chart, &terms, true).unwrap()).unwrap();
    let t = torsion(&conn);
    let one = chart.parse("1").unwrap();
    let mut expected_terms = wedge(one.clone(), vec![zb(2)], z(1), zb(1)).to_vec();
    expected_terms.extend(wedge(-&one, vec![z(2)], z(1), zb(1)));
    assert_eq!(t, expand(&chart, &expected_terms, false).unwrap());
    let [pp, pm, mp, mm] = torsion_projections(&t, &j);
    assert!(pp.is_zero() && mm.is_zero());
    assert!(!pm.is_zero() && !mp.is_zero());
    let (sigma, kappa) = kappa4(&t, &j);
    assert!(!kappa.is_zero());
    assert!(sigma.iter().all(LaurentPoly::is_zero));
    let parts = torsion_parts(&t, &j);
    assert!(parts.pi1.is_zero() && parts.pi2.is_zero() && parts.pi3.is_zero() && parts.pi5.is_zero());
    assert_eq!(parts.pi4, t);
    assert!(!is_minimal(&t, &j));
    assert!(curvature(&conn).is_zero());
}

#[test]
fn pure_trace_torsion_has_no_kappa4() {
    let chart = Chart::complex(2, &[]).unwrap();
    let j = standard(&chart);
    let mut phi = vec![chart.zero(); 4];
    phi[0] = chart.parse("1").unwrap();
    let a = trace_tensor(&phi, &j);
    let t = a.try_sub(&a.swap_lower(0, 1)).unwrap();
    let (sigma, kappa) = kappa4(&t, &j);
    assert!(kappa.is_zero());
    assert!(!sigma.iter().all(LaurentPoly::is_zero));
    let parts = torsion_parts(&t, &j);
    assert_eq!(parts.pi5, t);
    assert_eq!(parts.sum(), t);
}

#[test]
fn kappa4_is_trace_free() {
    let chart = Chart::complex(3, &[]).unwrap();
    let j = standard(&chart);
    let mut t = PolyTensor::zeros(chart.ring(), 6, 1, 2);
    let vals = [(0, 1, 2, "x1"), (3, 0, 4, "1"), (5, 2, 3, "y3 - 2"), (1, 1, 0, "x2*y1")];
    for (i, a, b, v) in vals {
        let p = chart.parse(v).unwrap();
        t.add_at(&[i, a, b], &p);
        t.add_at(&[i, b, a], &-&p);
    }
    let (_, kappa) = kappa4(&t, &j);
    assert!(torsion_trace(&kappa, &j).iter().all(LaurentPoly::is_zero));
    assert_eq!(torsion_parts(&t, &j).sum(), t);
}

proptest! {
    #[test]
    fn projections_are_complete_and_orthogonal(
        seed in prop::collection::vec((0..4usize, 0..4usize, 0..4usize, -3..4i64), 1..8),
        twisted in any::<bool>(),
    ) {
        let chart = Chart::complex(2, &[]).unwrap();
        let j = if twisted {
            let mut terms: Vec<ComplexTerm> = (1..=2).map(|k| cterm(&chart, "I", &[z(k)], &[z(k)])).collect();
            terms.push(cterm(&chart, "x2", &[zb(2)], &[z(1)]));
            AlmostComplex::new(expand(&chart, &terms, true).unwrap()).unwrap()
        } else {
            standard(&chart)
        };
        let mut t = PolyTensor::zeros(chart.ring(), 4, 1, 2);
        for (i, a, b, v) in seed {
            if a != b {
                let p = LaurentPoly::int(chart.ring(), v);
                t.add_at(&[i, a, b], &p);
                t.add_at(&[i, b, a], &-&p);
            }
        }
        let parts = torsion_projections(&t, &j);
        let mut sum = PolyTensor::zeros(chart.ring(), 4, 1, 2);
        for p in &parts {
            sum = sum.try_add(p).unwrap();
        }
        prop_assert_eq!(&sum, &t);
        let signs = [(Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus), (Sign::Minus, Sign::Minus)];
        for (x, p) in parts.iter().enumerate() {
            for (y, (e1, e2)) in signs.iter().enumerate() {
                let q = torsion_projection(p, &j, *e1, *e2);
                if x == y {
                    prop_assert_eq!(&q, p);
                } else {
                    prop_assert!(q.is_zero());
                }
            }
        }
        prop_assert_eq!(torsion_parts(&t, &j).sum(), t);
    }
}

#[test]
fn lie_derivative_of_translations_and_linear_fields() {
    let chart = Chart::complex(2, &[]).unwrap();
    let ring = chart.ring().clone();
    let dx = VectorField::coordinate(&ring, 4, 0, chart.parse("1").unwrap());
    let conn = sym_gamma(&chart, &[("zb2", z(2), z(1), z(1))]);
    assert!(lie_derivative_connection(&dx, &conn).is_zero());
    let flat = Connection::flat(&ring, 4);
    let xdx = VectorField::coordinate(&ring, 4, 0, chart.parse("x1").unwrap());
    assert!(lie_derivative_connection(&xdx, &flat).is_zero());
    // flat: Ω is the Hessian of v
    let v = VectorField::coordinate(&ring, 4, 2, chart.parse("x1^2*y2").unwrap());
    let omega = lie_derivative_connection(&v, &flat);
    assert_eq!(omega.get(&[2, 0, 0]), chart.parse("2*y2").unwrap());
    assert_eq!(omega.get(&[2, 0, 3]), chart.parse("2*x1").unwrap());
    assert_eq!(omega.get(&[2, 3, 0]), chart.parse("2*x1").unwrap());
    assert_eq!(omega.nonzero_count(), 3);
}

/// Lie derivative of `∇` straight from its definition
/// `L_v(∇_X Y) - ∇_{[v,X]} Y - ∇_X [v,Y]` on coordinate fields.
fn lie_derivative_oracle(v: &VectorField, conn: &Connection) -> PolyTensor {
    let m = conn.dim();
    let ring = conn.symbols().ring().clone();
    let nabla = |x: &VectorField, y: &VectorField| -> VectorField {
        let comps = (0..m)
            .map(|i| {
                let mut acc = LaurentPoly::zero(&ring);
                for a in 0..m {
                    acc = &acc + &(&x.0[a] * &y.0[i].derivative_idx(a));
                    for b in 0..m {
                        acc = &acc + &(&(&x.0[a] * &y.0[b]) * &conn.get(i, a, b));
                    }
                }
                acc
            })
            .collect();
        VectorField(comps)
    };
    let mut out = PolyTensor::zeros(&ring, m, 1, 2);
    for jj in 0..m {
        for k in 0..m {
            let ej = VectorField::coordinate(&ring, m, jj, LaurentPoly::one(&ring));
            let ek = VectorField::coordinate(&ring, m, k, LaurentPoly::one(&ring));
            let a = v.bracket(&nabla(&ej, &ek));
            let b = nabla(&v.bracket(&ej), &ek);
            let c = nabla(&ej, &v.bracket(&ek));
            for i in 0..m {
                out.set(&[i, jj, k], &(&a.0[i] - &b.0[i]) - &c.0[i]);
            }
        }
    }
    out
}

#[test]
fn lie_derivative_agrees_with_definition() {
    let chart = Chart::complex(2, &[]).unwrap();
    let ring = chart.ring().clone();
    let terms = vec![
        cterm(&chart, "1", &[z(2)], &[zb(1), z(1)]),
        cterm(&chart, "zb1*x2", &[z(1)], &[z(2), z(1)]),
    ];
    let conn = Connection::new(expand(&chart, &terms, true).unwrap()).unwrap();
    let fields = ["x1*y2", "x2^2 - y1", "3", "x1*x2*y1"];
    for (i, f) in fields.iter().enumerate() {
        let mut v = VectorField::coordinate(&ring, 4, i, chart.parse(f).unwrap());
        v.0[(i + 1) % 4] = chart.parse("y1^2").unwrap();
        assert_eq!(lie_derivative_connection(&v, &conn), lie_derivative_oracle(&v, &conn));
    }
}

#[test]
fn lie_derivative_of_j_detects_holomorphic_fields() {
    let chart = Chart::complex(2, &[]).unwrap();
    let j = standard(&chart);
    let (re, im) = complex::complex_field(&chart, &[(z(1), chart.parse("z1^2*z2").unwrap())]).unwrap();
    assert!(lie_derivative_j(&re, &j).is_zero());
    assert!(lie_derivative_j(&im, &j).is_zero());
    let (re, _) = complex::complex_field(&chart, &[(z(1), chart.parse("zb1").unwrap())]).unwrap();
    assert!(!lie_derivative_j(&re, &j).is_zero());
}

#[test]
fn flat_affine_fields_satisfy_the_symmetry_operator() {
    let chart = Chart::complex(2, &[]).unwrap();
    let j = standard(&chart);
    let flat = Connection::flat(chart.ring(), 4);
    // z1^2 ∂_{z1} is a projective (not affine) holomorphic symmetry of flat space
    let (re, im) = complex::complex_field(
        &chart,
        &[(z(1), chart.parse("z1^2").unwrap()), (z(2), chart.parse("z1*z2").unwrap())],
    )
    .unwrap();
    for v in [re, im] {
        let (e, lj) = cproj_residual(&v, &flat, &j);
        assert!(e.is_zero(), "{e:?}");
        assert!(lj.is_zero());
        assert!(!lie_derivative_connection(&v, &flat).is_zero());
    }
    let (re, _) = complex::complex_field(&chart, &[(z(1), chart.parse("z1^3").unwrap())]).unwrap();
    assert!(!cproj_residual(&re, &flat, &j).0.is_zero());
}

#[test]
fn identity_frame_passes_through() {
    let chart = Chart::complex(2, &[]).unwrap();
    let ring = chart.ring().clone();
    let vectors: Vec<VectorField> = (0..4).map(|a| VectorField::coordinate(&ring, 4, a, LaurentPoly::one(&ring))).collect();
    let j = standard(&chart);
    let jf: Vec<Vec<Scalar>> = (0..4)
        .map(|a| (0..4).map(|b| j.get(a, b).as_constant().unwrap()).collect())
        .collect();
    let mut omega = PolyTensor::zeros(&ring, 4, 1, 2);
    omega.set(&[1, 0, 2], chart.parse("x1").unwrap());
    let mut data = FrameData { vectors, j: jf, omega };
    data.complete_with_j(&[0]).unwrap();
    let out = frame_to_coordinates(&chart, &data).unwrap();
    assert!(out.round_trip);
    assert_eq!(out.connection.symbols().get(&[1, 2, 0]), chart.parse("x1").unwrap());
    assert_eq!(out.j, j);
    assert!(nabla_j(&out.connection, &out.j).is_zero());
}

fn type3_n2_frame() -> (Chart, FrameData) {
    let chart = Chart::with_substitution(
        &[("x", VarKind::Ordinary), ("y", VarKind::Ordinary), ("s", VarKind::Laurent), ("q", VarKind::Ordinary)],
        &[],
        Substitution {
            original: "p".into(),
            replacement: "s".into(),
            power: 2,
        },
    )
    .unwrap();
    let p = |s: &str| chart.parse(s).unwrap();
    let vec4 = |c: [&str; 4]| chart.vector_from_original(c.iter().map(|s| p(s)).collect()).unwrap();
    let vectors = vec![
        vec4(["1", "0", "0", "0"]),
        vec4(["0", "1", "0", "0"]),
        vec4(["0", "0", "1", "0"]),
        vec4(["-3*y/(2*p)", "-5*x/(2*p)", "0", "1"]),
    ];
    let z = Scalar::zero;
    let o = Scalar::one;
    let m = || Scalar::from_int(-1);
    let j = vec![vec![z(), m(), z(), z()], vec![o(), z(), z(), z()], vec![z(), z(), z(), m()], vec![z(), z(), o(), z()]];
    let mut omega = PolyTensor::zeros(chart.ring(), 4, 1, 2);
    let set = |o: &mut PolyTensor, a: usize, b: usize, c: usize, v: &str| o.set(&[a - 1, b - 1, c - 1], p(v));
    set(&mut omega, 2, 1, 4, "1/(2*p)");
    set(&mut omega, 1, 3, 1, "-1/p");
    set(&mut omega, 2, 3, 2, "1/p");
    set(&mut omega, 3, 3, 3, "-1/p");
    set(&mut omega, 4, 3, 4, "-1/p");
    set(&mut omega, 1, 3, 3, "-3*x/(4*p^2)");
    set(&mut omega, 1, 3, 4, "-3*y/(4*p^2)");
    set(&mut omega, 2, 3, 3, "-3*y/(4*p^2)");
    set(&mut omega, 2, 3, 4, "-13*x/(4*p^2)");
    let mut data = FrameData { vectors, j, omega };
    data.complete_with_j(&[0, 2]).unwrap();
    (chart, data)
}

#[test]
fn frame_model_converts_exactly() {
    let (chart, data) = type3_n2_frame();
    let out = frame_to_coordinates(&chart, &data).unwrap();
    assert!(out.round_trip);
    assert!(nabla_j(&out.connection, &out.j).is_zero());
    let t = torsion(&out.connection);
    assert!(!t.is_zero());
    assert!(!nijenhuis(&out.j).is_zero());
    let r = curvature(&out.connection);
    assert_eq!(curvature_bidegree(&r, &out.j).types(), vec!["(1,1)"]);
    // the completed ∇e2 = J∇e1
    assert_eq!(data.omega.get(&[0, 1, 3]), chart.parse("-1/(2*p)").unwrap());
}

#[test]
fn coframe_is_dual_to_frame() {
    let (chart, data) = type3_n2_frame();
    let out = frame_to_coordinates(&chart, &data).unwrap();
    let p = |s: &str| chart.parse(s).unwrap();
    let cov = |c: [&str; 4]| chart.covector_from_original(c.iter().map(|s| p(s)).collect()).unwrap();
    let declared = vec![
        cov(["1", "0", "0", "3*y/(2*p)"]),
        cov(["0", "1", "0", "5*x/(2*p)"]),
        cov(["0", "0", "1", "0"]),
        cov(["0", "0", "0", "1"]),
    ];
    assert_eq!(declared, out.coframe);
    let pairing = frame::pairing(&declared, &data.vectors);
    for (a, row) in pairing.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            assert_eq!(v.as_constant(), Some(if a == b { Scalar::one() } else { Scalar::zero() }));
        }
    }
}

#[test]
fn singular_frame_is_rejected() {
    let chart = Chart::complex(1, &[]).unwrap();
    let ring = chart.ring().clone();
    let v = VectorField(vec![chart.parse("x1").unwrap(), chart.parse("1").unwrap()]);
    let w = VectorField(vec![chart.parse("1").unwrap(), chart.parse("y1").unwrap()]);
    let j = vec![vec![Scalar::zero(), Scalar::from_int(-1)], vec![Scalar::one(), Scalar::zero()]];
    let data = FrameData {
        vectors: vec![v, w],
        j,
        omega: PolyTensor::zeros(&ring, 2, 1, 2),
    };
    assert_eq!(frame_to_coordinates(&chart, &data).unwrap_err(), Error::SingularFrame);
}

#[test]
fn determinant_and_inverse() {
    let chart = Chart::complex(2, &[]).unwrap();
    let p = |s: &str| chart.parse(s).unwrap();
    let m = vec![
        vec![p("1"), p("x1"), p("0")],
        vec![p("0"), p("1"), p("y1")],
        vec![p("2"), p("0"), p("1")],
    ];
    // 1*(1 - 0) - x1*(0 - 2 y1) + 0
    assert_eq!(determinant(&m).unwrap(), p("1 + 2*x1*y1"));
    let u = vec![vec![p("1"), p("x1")], vec![p("0"), p("-1")]];
    let inv = invert(&u).unwrap();
    assert_eq!(inv, vec![vec![p("1"), p("x1")], vec![p("0"), p("-1")]]);
    assert!(matches!(invert(&m), Err(Error::NotAUnit(_))));
}

#[test]
fn canonical_text_is_sorted() {
    let chart = Chart::complex(1, &[]).unwrap();
    let mut t = PolyTensor::zeros(chart.ring(), 2, 1, 2);
    t.set(&[1, 0, 0], chart.parse("x1").unwrap());
    t.set(&[0, 1, 0], chart.parse("-2").unwrap());
    assert_eq!(t.to_text("T"), "T^1_2,1 = -2\nT^2_1,1 = x1\n");
}

#[test]
fn substitution_parses_original_variable() {
    let (chart, _) = type3_n2_frame();
    assert_eq!(chart.parse("p^2 + q/p").unwrap(), chart.parse("s^4 + q*s^-2").unwrap());
    assert_eq!(chart.parse("x").unwrap().ring().len(), 4);
    let _ = rat(1, 2);
}
