use super::*;
use crate::calculus::{exterior_d, fn_bracket, lie_derivative};
use crate::fields::random_field;
use crate::polyring::rat;

fn t(chart: &Chart, form: &[usize], sym: &[usize], coeff: &str) -> MixedField {
    MixedField::term(chart, form, sym, Polynomial::parse(chart, coeff).unwrap()).unwrap()
}

fn poly(chart: &Chart, s: &str) -> Polynomial {
    Polynomial::parse(chart, s).unwrap()
}

fn scalar(chart: &Chart, s: &str) -> MixedField {
    MixedField::scalar(poly(chart, s))
}

fn charts(m: usize) -> (Chart, Chart) {
    let base = Chart::euclidean(m);
    let cot = Chart::cotangent(&base);
    (base, cot)
}

#[test]
fn canonical_data_m1() {
    let (base, cot) = charts(1);
    let cd = canonical_structures(&cot).unwrap();
    assert_eq!(cd.liouville, t(&cot, &[0], &[], "p1"));
    assert_eq!(cd.symplectic, t(&cot, &[0, 1], &[], "1"));
    assert_eq!(cd.symplectic, -exterior_d(&cd.liouville).unwrap());
    assert_eq!(cd.rho.rho_extend(&MixedField::differential(&cot, 1)).unwrap(), MixedField::vector(&cot, 0));
    assert!(matches!(canonical_structures(&base), Err(Error::NotCotangent(_))));
}

#[test]
fn rho_inverts_omega_on_covectors() {
    let (_, cot) = charts(2);
    let cd = canonical_structures(&cot).unwrap();
    for a in 0..4 {
        let v = cd.rho.rho_extend(&MixedField::differential(&cot, a)).unwrap();
        assert_eq!(insert(&v, &cd.symplectic).unwrap(), MixedField::differential(&cot, a));
    }
}

#[test]
fn rho_extend_examples() {
    let (_, cot) = charts(1);
    assert!(rho_extend(&scalar(&cot, "q1 * p1")).unwrap().is_zero());
    let w = t(&cot, &[0, 1], &[], "1");
    let expect = &(-t(&cot, &[1], &[1], "1")) - &t(&cot, &[0], &[0], "1");
    assert_eq!(rho_extend(&w).unwrap(), expect);
}

#[test]
fn hamiltonian_examples() {
    let (_, cot) = charts(2);
    assert_eq!(hamiltonian(&scalar(&cot, "q1")).unwrap(), -MixedField::vector(&cot, 2));
    assert!(hamiltonian(&MixedField::differential(&cot, 0)).unwrap().is_zero());
    let expect = &t(&cot, &[], &[0], "p2") + &t(&cot, &[], &[1], "p1");
    assert_eq!(hamiltonian(&scalar(&cot, "p1 * p2")).unwrap(), expect);
}

#[test]
fn poisson_examples() {
    let (_, cot) = charts(1);
    let q = poly(&cot, "q1");
    let p = poly(&cot, "p1");
    assert_eq!(poisson_fn(&q, &p).unwrap(), Polynomial::integer(&cot, -1));
    let f = poly(&cot, "q1^2 * p1 + 3 * p1");
    assert!(poisson_fn(&f, &f).unwrap().is_zero());
    assert_eq!(poisson_fn(&p, &poly(&cot, "q1 * p1")).unwrap(), p);
    let other = Chart::cotangent(&Chart::euclidean(2));
    assert!(poisson_fn(&q, &poly(&other, "q1")).is_err());
}

#[test]
fn poisson_jacobi_and_hamiltonian_homomorphism() {
    let (_, cot) = charts(2);
    for seed in 0..6 {
        let f = random_field(&cot, 0, 0, 2, seed).unwrap().as_polynomial().unwrap();
        let g = random_field(&cot, 0, 0, 2, 10 + seed).unwrap().as_polynomial().unwrap();
        let k = random_field(&cot, 0, 0, 2, 20 + seed).unwrap().as_polynomial().unwrap();
        let pb = |a: &Polynomial, b: &Polynomial| poisson_fn(a, b).unwrap();
        let jac = &(&pb(&f, &pb(&g, &k)) + &pb(&g, &pb(&k, &f))) + &pb(&k, &pb(&f, &g));
        assert!(jac.is_zero());
        let hf = hamiltonian(&MixedField::scalar(f.clone())).unwrap();
        let hg = hamiltonian(&MixedField::scalar(g.clone())).unwrap();
        let hfg = hamiltonian(&MixedField::scalar(pb(&f, &g))).unwrap();
        assert_eq!(fn_bracket(&hf, &hg).unwrap(), hfg);
    }
}

#[test]
fn poisson_bivector_validation() {
    let c = Chart::euclidean(3);
    let z = Polynomial::zero(&c);
    let x = |i| Polynomial::var(&c, i);
    // so(3) Lie-Poisson structure
    let lp = vec![
        vec![z.clone(), x(2), -x(1)],
        vec![-x(2), z.clone(), x(0)],
        vec![x(1), -x(0), z.clone()],
    ];
    assert!(PoissonBivector::new(&c, lp).is_ok());
    let bad = vec![
        vec![z.clone(), x(2), z.clone()],
        vec![-x(2), z.clone(), x(1)],
        vec![z.clone(), -x(1), z.clone()],
    ];
    assert!(matches!(PoissonBivector::new(&c, bad), Err(Error::InvalidPoisson(_))));
    let not_skew = vec![vec![z.clone(), x(0), z.clone()], vec![x(0), z.clone(), z.clone()], vec![z.clone(); 3]];
    assert!(PoissonBivector::new(&c, not_skew).is_err());
    let (_, cot) = charts(2);
    let canon = PoissonBivector::canonical(&cot).unwrap();
    let rebuilt: Vec<Vec<Polynomial>> = (0..4)
        .map(|a| (0..4).map(|b| canon.component(a, b).clone()).collect())
        .collect();
    assert_eq!(PoissonBivector::new(&cot, rebuilt).unwrap(), canon);
}

#[test]
fn pullback_examples() {
    let (base, cot) = charts(2);
    assert_eq!(pullback(&cot, &scalar(&base, "x1^2 + x2")).unwrap(), scalar(&cot, "q1^2 + q2"));
    assert_eq!(pullback(&cot, &t(&base, &[0], &[1], "1")).unwrap(), t(&cot, &[0], &[], "p2"));
    assert_eq!(pullback(&cot, &t(&base, &[], &[0, 1], "1")).unwrap(), scalar(&cot, "p1 * p2"));
    let (other, _) = charts(3);
    assert!(matches!(
        pullback(&cot, &MixedField::one(&other)),
        Err(Error::ChartMismatch { .. })
    ));
}

#[test]
fn pullback_is_multiplicative_and_invertible() {
    let (base, cot) = charts(2);
    for seed in 0..12 {
        let (ka, la) = ((seed % 2) as usize, (seed % 3) as usize);
        let a = random_field(&base, ka, la, 2, seed).unwrap();
        let b = random_field(&base, 1, 1, 1, 100 + seed).unwrap();
        let pa = pullback(&cot, &a).unwrap();
        let pab = pullback(&cot, &a.product(&b).unwrap()).unwrap();
        assert_eq!(pab, pa.product(&pullback(&cot, &b).unwrap()).unwrap());
        assert_eq!(pullback_inverse(&pa, la).unwrap(), a);
        let euler = vertical_euler(&cot).unwrap();
        assert_eq!(lie_derivative(&euler, &pa).unwrap(), pa.scale(&rat(la as i64, 1)));
    }
}

#[test]
fn vertical_euler_examples() {
    let (base, cot) = charts(2);
    let expect = &t(&cot, &[], &[2], "p1") + &t(&cot, &[], &[3], "p2");
    let euler = vertical_euler(&cot).unwrap();
    assert_eq!(euler, expect);
    assert!(lie_derivative(&euler, &MixedField::differential(&cot, 0)).unwrap().is_zero());
    assert!(matches!(vertical_euler(&base), Err(Error::NotCotangent(_))));
}

#[test]
fn pullback_inverse_examples() {
    let (base, cot) = charts(2);
    assert_eq!(
        pullback_inverse(&t(&cot, &[0], &[], "p1 * p2"), 2).unwrap(),
        t(&base, &[0], &[0, 1], "1")
    );
    assert!(matches!(
        pullback_inverse(&t(&cot, &[2], &[], "p1"), 1),
        Err(Error::NotHorizontal(_))
    ));
    assert_eq!(pullback_inverse(&scalar(&cot, "q1"), 0).unwrap(), scalar(&base, "x1"));
    assert!(matches!(
        pullback_inverse(&scalar(&cot, "p1 + p1 * p2"), 1),
        Err(Error::NotHomogeneous { degree: 1, .. })
    ));
}

#[test]
fn h_map_examples() {
    let (base, cot) = charts(2);
    assert_eq!(h_map(&cot, &MixedField::vector(&base, 0)).unwrap(), MixedField::vector(&cot, 0));
    let expect = &t(&cot, &[], &[0], "q1") - &t(&cot, &[], &[2], "p1");
    assert_eq!(h_map(&cot, &t(&base, &[], &[0], "x1")).unwrap(), expect);
    let expect = &t(&cot, &[], &[0], "p2") + &t(&cot, &[], &[1], "p1");
    assert_eq!(h_map(&cot, &t(&base, &[], &[0, 1], "1")).unwrap(), expect);
    assert!(h_map(&cot, &scalar(&base, "7")).unwrap().is_zero());
    assert!(!h_map(&cot, &scalar(&base, "x2")).unwrap().is_zero());
}

#[test]
fn h_of_vector_field_matches_local_formula() {
    let (base, cot) = charts(2);
    for seed in 0..6 {
        let x = random_field(&base, 0, 1, 2, seed).unwrap();
        let comps = x.vector_components().unwrap();
        // hX = -Σ ∂X^i/∂q^m p_i ∂/∂p_m + Σ X^i ∂/∂q^i
        let mut expect = MixedField::zero(&cot, 0, 1);
        for (i, xi) in comps.iter().enumerate() {
            let xi = pullback(&cot, xi).unwrap().as_polynomial().unwrap();
            expect = &expect + &MixedField::vector(&cot, i).mul_poly(&xi);
            for m in 0..2 {
                let c = &xi.partial(m) * &Polynomial::var(&cot, 2 + i);
                expect = &expect - &MixedField::vector(&cot, 2 + m).mul_poly(&c);
            }
        }
        assert_eq!(h_map(&cot, &x).unwrap(), expect);
    }
}

#[test]
fn h_image_preserves_symplectic_form() {
    let (base, cot) = charts(2);
    let omega = canonical_structures(&cot).unwrap().symplectic;
    for seed in 0..8 {
        let a = random_field(&base, (seed % 3) as usize, 1 + (seed % 2) as usize, 2, seed).unwrap();
        let ha = h_map(&cot, &a).unwrap();
        assert!(lie_derivative(&ha, &omega).unwrap().is_zero(), "seed {seed}");
    }
}

#[test]
fn graded_poisson_examples() {
    let (_, cot) = charts(2);
    let phi = t(&cot, &[0], &[], "p1");
    let psi = scalar(&cot, "p1 * p2");
    let br = graded_poisson_1(&phi, &psi).unwrap();
    assert_eq!(br, t(&cot, &[2], &[], "p2"));
    assert_eq!(exterior_d(&br).unwrap(), -t(&cot, &[2, 3], &[], "1"));
    let f = poly(&cot, "q1 * p2 + p1^2");
    let g = poly(&cot, "q2^2 * p1");
    let (fs, gs) = (MixedField::scalar(f.clone()), MixedField::scalar(g.clone()));
    assert_eq!(graded_poisson_1(&fs, &gs).unwrap().as_polynomial().unwrap(), poisson_fn(&f, &g).unwrap());
    assert_eq!(graded_poisson_2(&fs, &gs).unwrap(), graded_poisson_1(&fs, &gs).unwrap());
    assert_eq!(graded_poisson_2(&phi, &scalar(&cot, "p1")).unwrap(), MixedField::differential(&cot, 2));
}

#[test]
fn graded_poisson_properties() {
    let (_, cot) = charts(2);
    for seed in 0..8 {
        let (p, q) = ((seed % 3) as usize, ((seed / 3) % 3) as usize);
        let phi = random_field(&cot, p, 0, 2, seed).unwrap();
        let psi = random_field(&cot, q, 0, 2, 40 + seed).unwrap();
        let g1 = graded_poisson_1(&phi, &psi).unwrap();
        // H is a homomorphism onto the FN bracket
        let lhs = fn_bracket(&hamiltonian(&phi).unwrap(), &hamiltonian(&psi).unwrap()).unwrap();
        assert_eq!(lhs, hamiltonian(&g1).unwrap(), "seed {seed}");
        // {φ,ψ}¹ = -(-1)^{pq} {ψ,φ}¹
        let g1r = graded_poisson_1(&psi, &phi).unwrap();
        let expect = if (p * q) % 2 == 0 { -g1r } else { g1r };
        assert_eq!(g1, expect, "seed {seed}");
        // the brackets differ by an exact form
        let diff = &g1 - &graded_poisson_2(&phi, &psi).unwrap();
        assert!(exterior_d(&diff).unwrap().is_zero());
        if diff.form_degree() > 0 {
            assert_eq!(exterior_d(&poincare_primitive(&diff).unwrap()).unwrap(), diff);
        }
    }
}

#[test]
fn poincare_primitive_examples() {
    let (_, cot) = charts(2);
    let w = t(&cot, &[0, 2], &[], "1");
    let expect = (&t(&cot, &[2], &[], "q1") - &t(&cot, &[0], &[], "p1")).scale(&rat(1, 2));
    assert_eq!(poincare_primitive(&w).unwrap(), expect);
    assert_eq!(poincare_primitive(&MixedField::differential(&cot, 0)).unwrap(), scalar(&cot, "q1"));
    assert!(matches!(poincare_primitive(&t(&cot, &[1], &[], "q1")), Err(Error::NotClosed)));
    assert!(matches!(poincare_primitive(&scalar(&cot, "2")), Err(Error::ConstantHasNoPrimitive)));
    for seed in 0..6 {
        let w = exterior_d(&random_field(&cot, (seed % 3) as usize, 0, 3, seed).unwrap()).unwrap();
        if w.is_zero() {
            continue;
        }
        assert_eq!(exterior_d(&poincare_primitive(&w).unwrap()).unwrap(), w);
    }
}

#[test]
fn horizontal_representative_examples() {
    let (base, cot) = charts(2);
    let chi = t(&cot, &[2], &[], "p2");
    let Membership::Obstructed(obs) = horizontal_representative(&chi, 2).unwrap() else {
        panic!("p2 dp1 must be obstructed");
    };
    assert_eq!(obs.kind, ObstructionKind::NotHorizontal);
    let expect = (&t(&cot, &[2], &[], "p2") - &t(&cot, &[3], &[], "p1")).scale(&rat(1, 2));
    assert_eq!(obs.candidate, expect);

    let a = t(&base, &[0], &[0, 1], "1");
    let pa = pullback(&cot, &a).unwrap();
    assert_eq!(horizontal_representative(&pa, 2).unwrap(), Membership::Image(a.clone()));
    let shifted = &pa + &exterior_d(&scalar(&cot, "q1 * p1 * p2")).unwrap();
    assert_eq!(horizontal_representative(&shifted, 2).unwrap().representative(), Some(&a));
    assert!(horizontal_representative(&pa, 0).is_err());
}

#[test]
fn bracket_in_image_counterexample() {
    let (base, cot) = charts(2);
    // π*(dx1 ⊗ ∂1) = p1 dq1, π*(∂1 ∨ ∂2) = p1 p2
    let a = t(&base, &[0], &[0], "1");
    let b = t(&base, &[], &[0, 1], "1");
    assert!(matches!(bracket_in_image(&cot, &a, &b).unwrap(), Membership::Obstructed(_)));
    // vector fields stay in the image
    let x = t(&base, &[], &[0], "x2");
    let y = t(&base, &[], &[1], "x1^2");
    let Membership::Image(z) = bracket_in_image(&cot, &x, &y).unwrap() else {
        panic!("vector fields bracket inside the image");
    };
    assert_eq!(z, fn_bracket(&x, &y).unwrap());
}
