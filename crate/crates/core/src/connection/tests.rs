use super::*;
use crate::calculus::{fn_bracket, lie_derivative, schouten};
use crate::fields::random_field;

fn t(chart: &Chart, form: &[usize], sym: &[usize], coeff: &str) -> MixedField {
    MixedField::term(chart, form, sym, Polynomial::parse(chart, coeff).unwrap()).unwrap()
}

fn scalar(chart: &Chart, s: &str) -> MixedField {
    MixedField::scalar(Polynomial::parse(chart, s).unwrap())
}

const SHEAR: &str = "
# a unimodular metric on the plane
chart x y
g(1,1) = 1 + y^2
g(1,2) = y
g(2,2) = 1
ginv(1,1) = 1
ginv(1,2) = -y
ginv(2,2) = 1 + y^2
";

#[test]
fn validate_examples() {
    let c = Chart::euclidean(2);
    let flat = ConnectionData::flat(&c);
    assert!(validate(&MetricData::euclidean(&c), &flat).unwrap().is_valid());

    let mut gamma = vec![zero_matrix(&c); 2];
    gamma[0][0][1] = Polynomial::one(&c);
    let twisted = ConnectionData::new(&c, gamma, None).unwrap();
    let report = validate(&MetricData::euclidean(&c), &twisted).unwrap();
    assert!(report.violations.contains(&Violation::Torsion { k: 1, i: 1, j: 2 }));

    let mut ginv = MetricData::euclidean(&c).ginv.clone();
    ginv[1][1] = Polynomial::integer(&c, 2);
    let wrong = MetricData::new(&c, MetricData::euclidean(&c).g.clone(), ginv).unwrap();
    let report = validate(&wrong, &flat).unwrap();
    assert!(report.violations.contains(&Violation::NotInverse { i: 2, k: 2 }));
}

#[test]
fn levi_civita_is_valid_for_random_metrics() {
    for dim in 1..=3 {
        let c = Chart::euclidean(dim);
        for seed in 0..4 {
            let conn = random_metric(&c, 1, seed);
            let report = validate(conn.metric().unwrap(), &conn).unwrap();
            assert!(report.is_valid(), "dim {dim} seed {seed}: {report}");
        }
    }
}

#[test]
fn metric_document_roundtrip() {
    let conn = parse_metric_document(SHEAR).unwrap();
    let c = conn.chart().clone();
    assert_eq!(c.names(), ["x", "y"]);
    assert_eq!(conn.metric().unwrap().ginv(1, 1), &Polynomial::parse(&c, "1 + y^2").unwrap());
    assert!(!conn.gamma(0, 0, 1).is_zero());
    let broken = SHEAR.replace("ginv(1,1) = 1", "ginv(1,1) = 2");
    assert!(matches!(parse_metric_document(&broken), Err(Error::InvalidMetric(_))));
    assert!(parse_metric_document("g(1,1) = 1").is_err());
    assert!(parse_metric_document("chart x\ng(1,2) = 1").is_err());
    let explicit = "chart x\ng(1,1) = 1\nginv(1,1) = 1\ngamma(1;1,1) = 0\n";
    assert!(parse_metric_document(explicit).is_ok());
    let incompatible = "chart x\ng(1,1) = 1\nginv(1,1) = 1\ngamma(1;1,1) = x\n";
    assert!(parse_metric_document(incompatible).is_err());
    let printed = metric_document(&conn).unwrap();
    assert_eq!(parse_metric_document(&printed).unwrap(), conn);
    let random = random_metric(&Chart::euclidean(3), 1, 9);
    assert_eq!(parse_metric_document(&metric_document(&random).unwrap()).unwrap(), random);
    assert!(metric_document(&ConnectionData::new(&c, vec![zero_matrix(&c); 2], None).unwrap()).is_none());
}

#[test]
fn cov_exterior_diff_examples() {
    let c = Chart::euclidean(2);
    let flat = ConnectionData::flat(&c);
    let f = scalar(&c, "x1^2 * x2");
    assert_eq!(cov_exterior_diff(&flat, &f).unwrap(), crate::calculus::exterior_d(&f).unwrap());
    assert_eq!(
        cov_exterior_diff(&flat, &t(&c, &[], &[0], "x1 * x2")).unwrap(),
        &t(&c, &[0], &[0], "x2") + &t(&c, &[1], &[0], "x1")
    );
    assert!(cov_exterior_diff(&flat, &t(&c, &[0], &[0], "1")).unwrap().is_zero());
}

#[test]
fn cov_exterior_diff_leibniz() {
    let c = Chart::euclidean(2);
    let conn = random_metric(&c, 1, 3);
    for seed in 0..6 {
        let k = (seed % 2) as usize;
        let a = random_field(&c, k, 1, 1, seed).unwrap();
        let b = random_field(&c, 1, 1, 1, 30 + seed).unwrap();
        let lhs = cov_exterior_diff(&conn, &a.product(&b).unwrap()).unwrap();
        let r1 = cov_exterior_diff(&conn, &a).unwrap().product(&b).unwrap();
        let r2 = a.product(&cov_exterior_diff(&conn, &b).unwrap()).unwrap();
        let rhs = if k % 2 == 1 { &r1 - &r2 } else { &r1 + &r2 };
        assert_eq!(lhs, rhs, "seed {seed}");
    }
}

#[test]
fn delta_examples() {
    let c = Chart::euclidean(2);
    let e = MetricData::euclidean(&c);
    assert_eq!(delta_g(&e, &MixedField::vector(&c, 0)).unwrap(), MixedField::differential(&c, 0));
    assert!(delta_g(&e, &MixedField::differential(&c, 0)).unwrap().is_zero());
    assert_eq!(
        delta_g(&e, &t(&c, &[], &[0, 1], "1")).unwrap(),
        &t(&c, &[0], &[1], "1") + &t(&c, &[1], &[0], "1")
    );
    assert!(delta_g_prime(&e, &MixedField::vector(&c, 0)).unwrap().is_zero());
    assert_eq!(delta_g_prime(&e, &MixedField::differential(&c, 0)).unwrap(), MixedField::vector(&c, 0));
    assert_eq!(
        delta_g_prime(&e, &t(&c, &[0, 1], &[], "1")).unwrap(),
        &t(&c, &[1], &[0], "1") - &t(&c, &[0], &[1], "1")
    );
}

#[test]
fn delta_identities_on_random_metrics() {
    let c = Chart::euclidean(3);
    for seed in 0..6 {
        let conn = random_metric(&c, 1, seed);
        let g = conn.metric().unwrap();
        let (k, l) = ((seed % 3) as usize, ((seed + 1) % 3) as usize);
        let a = random_field(&c, k, l, 1, 100 + seed).unwrap();
        let dd = |x: &MixedField| delta_g(g, &delta_g(g, x).unwrap()).unwrap();
        let dpdp = |x: &MixedField| delta_g_prime(g, &delta_g_prime(g, x).unwrap()).unwrap();
        assert!(dd(&a).is_zero());
        assert!(dpdp(&a).is_zero());
        let anti = &delta_g(g, &delta_g_prime(g, &a).unwrap()).unwrap()
            + &delta_g_prime(g, &delta_g(g, &a).unwrap()).unwrap();
        assert_eq!(anti, a.scale(&rat((k + l) as i64, 1)), "seed {seed}");
        let nd = &cov_exterior_diff(&conn, &delta_g(g, &a).unwrap()).unwrap()
            + &delta_g(g, &cov_exterior_diff(&conn, &a).unwrap()).unwrap();
        assert!(nd.is_zero(), "seed {seed}");
    }
}

#[test]
fn killing_defect_examples() {
    let c = Chart::euclidean(1);
    let flat = ConnectionData::flat(&c);
    let s = t(&c, &[], &[0], "x1^3");
    assert_eq!(schouten_with_metric_defect(&flat, &s).unwrap(), t(&c, &[], &[0, 0], "3 * x1^2"));
    assert!(schouten_with_metric_defect(&flat, &MixedField::vector(&c, 0)).unwrap().is_zero());
    assert_eq!(
        schouten_with_metric_defect(&flat, &scalar(&c, "x1^2")).unwrap(),
        t(&c, &[], &[0], "2 * x1")
    );
    let bare = ConnectionData::new(&c, vec![zero_matrix(&c)], None).unwrap();
    assert!(schouten_with_metric_defect(&bare, &s).is_err());
}

#[test]
fn killing_defect_is_half_schouten_with_metric() {
    for dim in 1..=3 {
        let c = Chart::euclidean(dim);
        for seed in 0..4 {
            let conn = random_metric(&c, 1, seed);
            let gbar = conn.metric().unwrap().contravariant_field();
            let s = random_field(&c, 0, (seed % 3) as usize, 1, 50 + seed).unwrap();
            let lhs = schouten_with_metric_defect(&conn, &s).unwrap();
            let rhs = schouten(&gbar, &s).unwrap().scale(&rat(1, 2));
            assert_eq!(lhs, rhs, "dim {dim} seed {seed}");
        }
    }
}

#[test]
fn euclidean_killing_fields() {
    let c = Chart::euclidean(2);
    let flat = ConnectionData::flat(&c);
    // rotation generator
    let rot = &t(&c, &[], &[0], "-x2") + &t(&c, &[], &[1], "x1");
    assert!(schouten_with_metric_defect(&flat, &rot).unwrap().is_zero());
    let dilation = &t(&c, &[], &[0], "x1") + &t(&c, &[], &[1], "x2");
    assert!(!schouten_with_metric_defect(&flat, &dilation).unwrap().is_zero());
}

#[test]
fn nabla_lie_examples() {
    let c = Chart::euclidean(2);
    let conn = random_metric(&c, 1, 7);
    let x = &t(&c, &[], &[0], "x2") + &t(&c, &[], &[1], "x1^2");
    let f = scalar(&c, "x1 * x2");
    assert_eq!(nabla_lie(&conn, &x, &f).unwrap(), lie_derivative(&x, &f).unwrap());
    let flat = ConnectionData::flat(&c);
    let w = t(&c, &[1], &[], "x1");
    assert_eq!(
        nabla_lie(&flat, &MixedField::vector(&c, 0), &w).unwrap(),
        MixedField::differential(&c, 1)
    );
    // i_A dx2 = dx1 ⊗ ∂1, and i_A ∇dx2 = 0
    let a = t(&c, &[0], &[0, 1], "1");
    let expect = -cov_exterior_diff(&flat, &t(&c, &[0], &[0], "1")).unwrap();
    assert_eq!(nabla_lie(&flat, &a, &MixedField::differential(&c, 1)).unwrap(), expect);
    assert!(nabla_lie(&flat, &f, &w).is_err());
}

#[test]
fn nabla_lie_matches_lie_for_vector_valued() {
    let c = Chart::euclidean(2);
    for seed in 0..6 {
        let conn = random_metric(&c, 1, seed);
        let k = random_field(&c, (seed % 3) as usize, 1, 1, 10 + seed).unwrap();
        let w = random_field(&c, 1, 0, 2, 20 + seed).unwrap();
        assert_eq!(nabla_lie(&conn, &k, &w).unwrap(), lie_derivative(&k, &w).unwrap(), "seed {seed}");
    }
}

#[test]
fn nabla_bracket_restrictions() {
    let c = Chart::euclidean(2);
    for seed in 0..6 {
        let conn = random_metric(&c, 1, seed);
        let k = random_field(&c, (seed % 2) as usize, 1, 1, 10 + seed).unwrap();
        let l = random_field(&c, ((seed / 2) % 2) as usize, 1, 1, 20 + seed).unwrap();
        assert_eq!(nabla_bracket(&conn, &k, &l).unwrap(), fn_bracket(&k, &l).unwrap(), "seed {seed}");
        let u = random_field(&c, 0, (seed % 3) as usize, 2, 30 + seed).unwrap();
        let v = random_field(&c, 0, 1 + (seed % 2) as usize, 2, 40 + seed).unwrap();
        assert_eq!(nabla_bracket(&conn, &u, &v).unwrap(), schouten(&u, &v).unwrap(), "seed {seed}");
    }
}

#[test]
fn nabla_bracket_is_graded_antisymmetric() {
    let c = Chart::euclidean(2);
    let conn = random_metric(&c, 1, 11);
    for seed in 0..6 {
        let (ka, kb) = ((seed % 2) as usize, ((seed / 2) % 2) as usize);
        let a = random_field(&c, ka, 2, 1, seed).unwrap();
        let b = random_field(&c, kb, 1 + (seed % 2) as usize, 1, 60 + seed).unwrap();
        let ab = nabla_bracket(&conn, &a, &b).unwrap();
        let ba = nabla_bracket(&conn, &b, &a).unwrap();
        let expect = if (ka * kb) % 2 == 1 { ba } else { -ba };
        assert_eq!(ab, expect, "seed {seed}");
    }
}

#[test]
fn nabla_bracket_ignores_where_coefficients_sit() {
    // the defining formula with coefficients moved into F and G, where the
    // Schouten term α∧β⊗[F,G] no longer vanishes
    let c = Chart::euclidean(2);
    let conn = random_metric(&c, 1, 2);
    for seed in 0..6u64 {
        let a = random_field(&c, (seed % 2) as usize, 1 + (seed % 2) as usize, 1, seed).unwrap();
        let b = random_field(&c, ((seed / 2) % 2) as usize, 1, 1, 20 + seed).unwrap();
        let (ka, kb) = (a.form_degree(), b.form_degree());
        let mut expect = MixedField::zero(&c, ka + kb, a.sym_degree() + b.sym_degree() - 1);
        for (ba, ca) in a.terms() {
            let alpha = MixedField::basis_term(&c, ba.form.clone(), SymIndex::empty(), Polynomial::one(&c));
            let f = MixedField::basis_term(&c, Default::default(), ba.sym.clone(), ca.clone());
            for (bb, cb) in b.terms() {
                let beta = MixedField::basis_term(&c, bb.form.clone(), SymIndex::empty(), Polynomial::one(&c));
                let g = MixedField::basis_term(&c, Default::default(), bb.sym.clone(), cb.clone());
                let af = alpha.product(&f).unwrap();
                let bg = beta.product(&g).unwrap();
                let t1 = nabla_lie(&conn, &af, &beta).unwrap().product(&g).unwrap();
                let t2 = nabla_lie(&conn, &bg, &alpha).unwrap().product(&f).unwrap();
                let t3 = alpha.product(&beta).unwrap().product(&schouten(&f, &g).unwrap()).unwrap();
                let t2 = if (ka * kb) % 2 == 1 { -t2 } else { t2 };
                expect = &(&(&expect + &t1) - &t2) + &t3;
            }
        }
        assert_eq!(nabla_bracket(&conn, &a, &b).unwrap(), expect, "seed {seed}");
    }
}

#[test]
fn nabla_bracket_derivation_for_form_degree_zero() {
    let c = Chart::euclidean(2);
    let conn = random_metric(&c, 1, 5);
    for seed in 0..8u64 {
        let a = random_field(&c, 0, 1 + (seed % 2) as usize, 1, seed).unwrap();
        let b = random_field(&c, ((seed / 2) % 2) as usize, (seed % 3) as usize, 1, 100 + seed).unwrap();
        let cc = random_field(&c, ((seed / 3) % 2) as usize, ((seed / 2) % 3) as usize, 1, 200 + seed).unwrap();
        let lhs = nabla_bracket(&conn, &a, &b.product(&cc).unwrap()).unwrap();
        let r1 = nabla_bracket(&conn, &a, &b).unwrap().product(&cc).unwrap();
        let r2 = b.product(&nabla_bracket(&conn, &a, &cc).unwrap()).unwrap();
        assert_eq!(lhs, &r1 + &r2, "seed {seed}");
    }
}

#[test]
fn fn_bracket_is_not_a_derivation_over_functions() {
    let c = Chart::euclidean(2);
    let flat = ConnectionData::flat(&c);
    let k = t(&c, &[0], &[0], "1");
    let x2k = t(&c, &[0], &[0], "x2");
    // [K, x2 K] picks up -(dx2 ∧ i_K K) = dx1 ∧ dx2 ⊗ ∂1 beyond the Leibniz terms
    let lhs = nabla_bracket(&flat, &k, &x2k).unwrap();
    assert_eq!(lhs, fn_bracket(&k, &x2k).unwrap());
    assert_eq!(lhs, t(&c, &[0, 1], &[0], "1"));
}
