//! Analytic identities checked numerically: adjointness of the Darboux
//! operators on the contour, contour/real-axis bridging for exceptional
//! weights, and the degree of L_n^{α;F}.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xlag::analysis::{
    contour_integral, contour_prefactor, default_contour_spec, integrate_half_line,
    sturm_nonneg_roots, DdPoly,
};
use xlag::darboux::build_step;
use xlag::exactnum::{horner_complex, int, rat, to_f64};
use xlag::{BigRational, Component, ExceptionalFamily, PairF, RationalPolynomial};

fn pair(f1: &[u32], f2: &[u32]) -> PairF {
    PairF::new(f1.to_vec(), f2.to_vec()).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> RationalPolynomial {
    let mut c: Vec<BigRational> = (0..=deg)
        .map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
        .collect();
    c[deg] = rat(rng.gen_range(1..=6), rng.gen_range(1..=4));
    RationalPolynomial::new(c)
}

#[test]
fn darboux_operators_are_adjoint_on_the_contour() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let cases = [
        (pair(&[1], &[]), Component::First),
        (pair(&[], &[1]), Component::Second),
        (pair(&[1], &[2]), Component::First),
        (pair(&[1], &[2]), Component::Second),
        (pair(&[2, 3], &[]), Component::First),
        (pair(&[], &[1, 3]), Component::Second),
    ];
    for alpha in [rat(1, 2), rat(1, 3), rat(7, 4)] {
        for (p, comp) in &cases {
            let step = build_step(p, *comp, &alpha).unwrap();
            let om_f = step.full_family().omega().unwrap().to_f64_coeffs();
            let om_r = step.reduced_family().omega().unwrap().to_f64_coeffs();
            let beta_f = to_f64(&alpha) + p.k() as f64;
            for _ in 0..3 {
                let (dp, dq) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
                let pp = random_poly(&mut rng, dp);
                let qq = random_poly(&mut rng, dq);
                let aq = step.a_op.apply(&qq);
                let bp = step.b_op.apply(&pp);
                let (spec, _) = default_contour_spec(p, &alpha, 8).unwrap();
                let pc = pp.to_f64_coeffs();
                let qc = qq.to_f64_coeffs();
                let lhs = contour_integral(
                    |z: Complex64| {
                        horner_complex(&pc, z) * aq.eval_complex(z)
                            / horner_complex(&om_f, z).powi(2)
                    },
                    beta_f,
                    &spec,
                )
                .unwrap();
                let rhs = -contour_integral(
                    |z: Complex64| {
                        bp.eval_complex(z) * horner_complex(&qc, z)
                            / horner_complex(&om_r, z).powi(2)
                    },
                    beta_f - 1.0,
                    &spec,
                )
                .unwrap();
                let rel = (lhs - rhs).norm() / lhs.norm().max(rhs.norm());
                assert!(
                    rel < 1e-6,
                    "F = {p}, {comp:?}, alpha = {alpha}: {lhs} vs {rhs} ({rel:e})"
                );
            }
        }
    }
}

#[test]
fn contour_matches_real_axis_for_exceptional_weights() {
    for (p, alpha) in [
        (pair(&[], &[1]), rat(1, 2)),
        (pair(&[], &[2, 3]), rat(1, 3)),
        (pair(&[2, 3], &[]), rat(3, 4)),
        (pair(&[], &[1, 3]), rat(-1, 2)),
    ] {
        let fam = ExceptionalFamily::new(&p, &alpha).unwrap();
        let beta = to_f64(&(&alpha + int(p.k() as i64)));
        let om = fam.omega().unwrap();
        assert_eq!(
            sturm_nonneg_roots(om).unwrap(),
            0,
            "F = {p}, alpha = {alpha}"
        );
        let om_dd = DdPoly::new(om);
        let om_c = om.to_f64_coeffs();
        let (spec, _) = default_contour_spec(&p, &alpha, 6).unwrap();
        for j in 0..4 {
            let real = integrate_half_line(
                |x| x.powi(j) / om_dd.eval(x).powi(2),
                beta,
                1e-12,
                0.0,
                j as f64,
            )
            .unwrap();
            let contour = contour_integral(
                |z| z.powi(j) / horner_complex(&om_c, z).powi(2),
                beta,
                &spec,
            )
            .unwrap();
            let want = contour_prefactor(beta) * real.value;
            let rel = (contour - want).norm() / want.norm();
            assert!(rel < 1e-6, "F = {p}, alpha = {alpha}, j = {j}: {rel:e}");
        }
    }
}

/// Every family in a small exact corpus has `deg L_n^{α;F} = n` on `σ_F`.
#[test]
fn degree_equals_index() {
    let alphas: Vec<BigRational> = vec![
        rat(1, 2),
        rat(1, 3),
        rat(-1, 2),
        rat(7, 2),
        rat(-21, 4),
        int(0),
        int(2),
    ];
    let sets: Vec<Vec<u32>> = vec![
        vec![],
        vec![1],
        vec![2],
        vec![1, 2],
        vec![2, 3],
        vec![1, 3, 4],
    ];
    let mut checked = 0;
    for f1 in &sets {
        for f2 in &sets {
            let p = pair(f1, f2);
            for a in &alphas {
                let fam = match ExceptionalFamily::new(&p, a) {
                    Ok(f) => f,
                    Err(_) => continue,
                };
                for n in fam.sigma().prefix(5) {
                    let l = fam.poly(n).unwrap();
                    assert_eq!(l.degree(), Some(n), "F = {p}, alpha = {a}, n = {n}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}
