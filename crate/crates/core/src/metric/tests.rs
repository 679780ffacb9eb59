use super::*;
use crate::exact::rat;
use crate::symsolve::{homothety_system, killing_system};
use crate::tensorcalc::complex::{complex_field, expand, hermitian_metric, holomorphic_differential, CIndex, ComplexTerm};
use crate::tensorcalc::Chart;

fn submkh(n: usize, signs: &[i64]) -> (Chart, MetricData) {
    let chart = Chart::complex(n, &[]).unwrap();
    let p = |s: &str| chart.parse(s).unwrap();
    let mut entries = vec![(0, 0, p("z1*zb1")), (0, 1, p("1")), (1, 0, p("1"))];
    for (k, e) in (2..n).zip(signs) {
        entries.push((k, k, LaurentPoly::int(chart.ring(), *e)));
    }
    let g = hermitian_metric(&chart, &entries).unwrap();
    let j = AlmostComplex::standard(chart.ring(), 2 * n);
    let md = MetricData::new(g, j).unwrap();
    (chart, md)
}

fn flat(n: usize) -> (Chart, MetricData) {
    let chart = Chart::complex(n, &[]).unwrap();
    let entries: Vec<_> = (0..n).map(|k| (k, k, LaurentPoly::one(chart.ring()))).collect();
    let g = hermitian_metric(&chart, &entries).unwrap();
    let md = MetricData::new(g, AlmostComplex::standard(chart.ring(), 2 * n)).unwrap();
    (chart, md)
}

fn type2_connection(chart: &Chart) -> Connection {
    let t = ComplexTerm::new(chart.parse("zb1").unwrap(), vec![CIndex::z(1)], vec![CIndex::z(0), CIndex::z(0)]);
    Connection::new(expand(chart, &[t], true).unwrap()).unwrap()
}

#[test]
fn flat_metric_basics() {
    let (_, md) = flat(2);
    let lc = levi_civita(&md);
    assert!(lc.symbols().is_zero());
    assert!(kahler_check(&md).all());
    let forms = parallel_forms(&lc, 1, &[]).unwrap();
    assert_eq!(forms.dim, 4);
}

#[test]
fn flat_metric_mobility_is_maximal() {
    let (_, md) = flat(2);
    let res = mobility_dimension(&md, 2, &[]).unwrap();
    assert_eq!(res.dim, 9);
    assert!(res.unconstrained_dim >= res.dim);
    assert!(res.contains_metric);
    assert!(res.verified);
    assert_eq!(res.stabilized, Some(true));
}

#[test]
fn submaximal_metric_levi_civita_is_type2() {
    for (n, signs) in [(2, vec![]), (3, vec![1]), (3, vec![-1]), (4, vec![1, -1])] {
        let (chart, md) = submkh(n, &signs);
        let lc = levi_civita(&md);
        assert_eq!(lc, type2_connection(&chart), "n = {n}");
        assert!(is_metric_connection(&md, &lc));
        assert!(kahler_check(&md).all());
    }
}

#[test]
fn submaximal_metric_mobility() {
    let (_, md) = submkh(2, &[]);
    let res = mobility_dimension(&md, 2, &[]).unwrap();
    assert_eq!(res.dim, 2);
    assert!(res.contains_metric && res.verified);
    // θ and its gradient are recorded for every solution
    assert!(res.basis.iter().all(|s| s.lambda.len() == 4 && s.gradient.dim() == 4));
}

#[test]
fn parallel_forms_of_submaximal_metric() {
    let (chart, md) = submkh(3, &[1]);
    let lc = levi_civita(&md);
    let forms = parallel_forms(&lc, 1, &[]).unwrap();
    assert_eq!(forms.dim, 4);
    let real_parts = |k: usize| -> Vec<Vec<LaurentPoly>> {
        let dz = holomorphic_differential(&chart, CIndex::z(k));
        vec![dz.iter().map(LaurentPoly::re_part).collect(), dz.iter().map(LaurentPoly::im_part).collect()]
    };
    let mut expected = real_parts(0);
    expected.extend(real_parts(2));
    assert_eq!(forms.compare(&expected), (true, true));
    // dz2 is not parallel: (∇ dz2)(∂_{z1}, ∂_{z1}) = -Γ^2_{11}
    let dz2 = holomorphic_differential(&chart, CIndex::z(1));
    assert!(!covariant_derivative_1form(&lc, &dz2).is_zero());
    assert_eq!(forms.compare(&real_parts(1)), (false, false));
}

#[test]
fn perturbed_metric_is_not_hermitian() {
    let chart = Chart::complex(2, &[]).unwrap();
    let p = |s: &str| chart.parse(s).unwrap();
    // dz1 dz2 is complex bilinear, so its real part breaks J-invariance
    let mut terms = vec![
        ComplexTerm::new(p("1/2"), vec![], vec![CIndex::z(0), CIndex::z(1)]),
        ComplexTerm::new(p("1/2"), vec![], vec![CIndex::z(1), CIndex::z(0)]),
    ];
    terms.extend([
        ComplexTerm::new(p("1/2"), vec![], vec![CIndex::z(0), CIndex::zb(0)]),
        ComplexTerm::new(p("1/2"), vec![], vec![CIndex::zb(0), CIndex::z(0)]),
    ]);
    let g = expand(&chart, &terms, true).unwrap();
    let md = MetricData::new(g, AlmostComplex::standard(chart.ring(), 4)).unwrap();
    let flags = kahler_check(&md);
    assert!(!flags.hermitian);
    assert!(flags.witnesses.iter().any(|w| w.starts_with("J*g-g")));
}

#[test]
fn singular_and_degenerate_metrics() {
    let chart = Chart::complex(1, &[]).unwrap();
    let j = AlmostComplex::standard(chart.ring(), 2);
    let g = hermitian_metric(&chart, &[(0, 0, chart.parse("1 + x1^2").unwrap())]).unwrap();
    assert_eq!(MetricData::new(g, j.clone()).unwrap_err(), Error::SingularMetric);
    let zero = PolyTensor::zeros(chart.ring(), 2, 0, 2);
    assert!(matches!(MetricData::new(zero, j), Err(Error::DegenerateMetric(_))));
}

#[test]
fn round_metric_chart_connection() {
    let chart = Chart::complex(2, &["1 + x1^2 + y1^2"]).unwrap();
    let p = |s: &str| chart.parse(s).unwrap();
    let g = hermitian_metric(&chart, &[(0, 0, p("1/(1 + x1^2 + y1^2)^2")), (1, 1, p("1"))]).unwrap();
    let md = MetricData::new(g, AlmostComplex::standard(chart.ring(), 4)).unwrap();
    let lc = levi_civita(&md);
    assert!(is_metric_connection(&md, &lc));
    assert!(kahler_check(&md).all());
    assert!(lc.symbols().iter().any(|(_, v)| v.has_denominator()));
}

#[test]
fn phi_of_isometries_vanishes() {
    let (chart, md) = submkh(2, &[]);
    let p = |s: &str| chart.parse(s).unwrap();
    let space = AnsatzSpace::new(md.ring(), 4, 2, &[]).unwrap();
    let iso = killing_system(md.metric(), md.j(), &space).unwrap();
    assert_eq!(iso.dim, 6);
    for v in &iso.basis {
        assert!(phi_map(&md, v).unwrap().is_zero());
    }
    let (euler, _) =
        complex_field(&chart, &[(CIndex::z(0), p("z1")), (CIndex::z(1), p("2*z2")), (CIndex::zb(1), p("zb2"))]).unwrap();
    let mobility = mobility_dimension(&md, 2, &[]).unwrap();
    let a = phi_map(&md, &euler).unwrap();
    assert!(!a.is_zero());
    assert!(mobility.decompose(&md.lower_first(&a)).is_some());
    let (rotation, _) = complex_field(&chart, &[(CIndex::z(0), p("zb1"))]).unwrap();
    assert!(matches!(phi_map(&md, &rotation), Err(Error::NotASymmetry(_))));
    let homo = homothety_system(md.metric(), md.j(), &space).unwrap();
    assert_eq!(homo.dim, 7);
    let rank = phi_quotient_rank(&md, &homo.basis, &mobility).unwrap();
    assert!(rank.all_in_solution_space);
    assert_eq!(rank.rank, 0);
    assert_eq!(rank.kernel_dim, 7);
}

#[test]
fn phi_of_homothety_is_multiple_of_identity() {
    let (chart, md) = flat(2);
    let (euler, _) = complex_field(&chart, &[(CIndex::z(0), chart.parse("z1").unwrap()), (CIndex::z(1), chart.parse("z2").unwrap())]).unwrap();
    let a = phi_map(&md, &euler).unwrap();
    // the real part of z^k ∂_{z^k} is half the radial field: L_v g = g, A = Id - (4/6) Id
    let mut expected = PolyTensor::zeros(chart.ring(), 4, 1, 1);
    for i in 0..4 {
        expected.set(&[i, i], chart.parse("1/3").unwrap());
    }
    assert_eq!(a, expected);
}

#[test]
fn characteristic_polynomial_and_inertia() {
    let m = ExactMatrix::from_rows(2, vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(2, 1)]]).unwrap();
    assert_eq!(characteristic_polynomial(&m), vec![rat(3, 1), rat(-4, 1), rat(1, 1)]);
    assert_eq!(signature(&m), Signature { positive: 2, negative: 0, zero: 0 });
    let d = ExactMatrix::from_rows(
        3,
        vec![vec![rat(1, 1), rat(0, 1), rat(0, 1)], vec![rat(0, 1), rat(-3, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1), rat(0, 1)]],
    )
    .unwrap();
    let s = signature(&d);
    assert_eq!(s, Signature { positive: 1, negative: 1, zero: 1 });
    assert!(!s.is_definite());
}

#[test]
fn submaximal_metric_is_never_definite() {
    let (_, md) = submkh(3, &[1]);
    let origin = vec![Scalar::zero(); 6];
    let s = signature(&gram_at(md.metric(), &origin).unwrap());
    assert!(!s.is_definite());
    assert_eq!(s.zero, 0);
}

#[test]
fn scaled_metric_is_equivalent() {
    let (_, md) = submkh(2, &[]);
    let twice = MetricData::new(md.metric().scale(&Scalar::from_int(2)), md.j().clone()).unwrap();
    let cmp = compare_metrics(&md, &twice).unwrap();
    assert!(cmp.affinely_equivalent && cmp.cproj_equivalent && cmp.constant_determinant_ratio);
    assert_eq!(cmp.solves_mobility, Some(true));
}
