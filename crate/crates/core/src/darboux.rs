//! First-order factorizations of the exceptional operator: removing the
//! largest element of one component of `F` gives operators `A`, `B` with
//! `D_reduced = B A + λ_reduced` and `D_F = A B + λ_full`, and `A` maps the
//! reduced family onto the full one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{int, BigRational, RationalFunction, RationalPolynomial};
use crate::exceptional::{Component, ExceptionalFamily, PairF};
use crate::laguerre::{laguerre_poly, LaguerreParams};
use crate::operator::LinearDiffOperator;

/// One Darboux transformation between `pair` and `reduced`.
#[derive(Debug, Clone)]
pub struct DarbouxStep {
    pub pair: PairF,
    pub component: Component,
    pub reduced: PairF,
    /// The element removed from `pair` to get `reduced`.
    pub removed: u32,
    pub a_op: LinearDiffOperator,
    pub b_op: LinearDiffOperator,
    /// `λ` in `D_F = A B + λ Id`.
    pub eigen_shift_full: BigRational,
    /// `λ` in `D_reduced = B A + λ Id`.
    pub eigen_shift_reduced: BigRational,
    full_family: ExceptionalFamily,
    reduced_family: ExceptionalFamily,
}

fn rf(num: RationalPolynomial, den: &RationalPolynomial) -> RationalFunction {
    RationalFunction::new(num, den.clone()).expect("nonzero denominator")
}

pub fn build_step(pair: &PairF, component: Component, alpha: &BigRational) -> Result<DarbouxStep> {
    let reduced = pair.reduce(component)?;
    let removed = *pair.component(component).last().unwrap();
    let full_family = ExceptionalFamily::new(pair, alpha)?;
    let reduced_family = ExceptionalFamily::new(&reduced, alpha)?;
    let om_f = full_family.omega()?.clone();
    let om_r = reduced_family.omega()?.clone();
    let x = RationalPolynomial::x();
    let a_k = alpha + int(pair.k() as i64);
    let f = int(removed as i64);
    let u_f = int(full_family.uf() as i64);
    let u_r = int(reduced_family.uf() as i64);

    let a1 = rf(-&om_f, &om_r);
    let b1 = rf(-&(&x * &om_r), &om_f);
    let x_dr = &x * &om_r.derivative(1);
    let (a0, b0, shift_full, shift_reduced) = match component {
        Component::First => {
            // x Ω_R' + (x - α - k) Ω_R
            let lin = RationalPolynomial::new(vec![-a_k.clone(), int(1)]);
            (
                rf(om_f.derivative(1), &om_r),
                rf(&x_dr + &(&lin * &om_r), &om_f),
                -(&f + &u_f),
                -(&f + &u_r),
            )
        }
        Component::Second => (
            rf(&om_f.derivative(1) + &om_f, &om_r),
            rf(&x_dr - &om_r.scale(&a_k), &om_f),
            alpha + &f - &u_f + int(1),
            alpha + &f - &u_r + int(1),
        ),
    };
    Ok(DarbouxStep {
        pair: pair.clone(),
        component,
        reduced,
        removed,
        a_op: LinearDiffOperator::new(vec![a0, a1]),
        b_op: LinearDiffOperator::new(vec![b0, b1]),
        eigen_shift_full: shift_full,
        eigen_shift_reduced: shift_reduced,
        full_family,
        reduced_family,
    })
}

impl DarbouxStep {
    pub fn full_family(&self) -> &ExceptionalFamily {
        &self.full_family
    }

    pub fn reduced_family(&self) -> &ExceptionalFamily {
        &self.reduced_family
    }

    pub fn alpha(&self) -> &BigRational {
        self.full_family.alpha()
    }

    /// Constant `μ` with `B(L^{F}_{n+u_F}) = μ L^{reduced}_{n+u_reduced}`.
    pub fn lowering_factor(&self, n: usize) -> BigRational {
        let n = int(n as i64);
        let f = int(self.removed as i64);
        match self.component {
            Component::First => -(n - f),
            Component::Second => -(self.alpha() + n + f + int(1)),
        }
    }
}

/// Residuals of the two operator identities; both zero iff they hold.
#[derive(Debug, Clone, Serialize)]
pub struct FactorizationCertificate {
    pub reduced_identity: bool,
    pub full_identity: bool,
    pub probes_agree: bool,
    pub reduced_residual: String,
    pub full_residual: String,
}

impl FactorizationCertificate {
    pub fn holds(&self) -> bool {
        self.reduced_identity && self.full_identity && self.probes_agree
    }
}

/// Checks `D_reduced = B A + λ_reduced Id` and `D_F = A B + λ_full Id`
/// coefficient-wise, then again by applying both sides in sequence to
/// `1, x, ..., x^probe_degree`.
pub fn verify_factorization(
    step: &DarbouxStep,
    probe_degree: usize,
) -> Result<FactorizationCertificate> {
    let d_reduced = step.reduced_family.operator()?;
    let d_full = step.full_family.operator()?;
    let ba = step
        .b_op
        .compose(&step.a_op)
        .plus_identity(&step.eigen_shift_reduced);
    let ab = step
        .a_op
        .compose(&step.b_op)
        .plus_identity(&step.eigen_shift_full);
    let reduced_residual = d_reduced.sub(&ba);
    let full_residual = d_full.sub(&ab);

    let mut probes_agree = true;
    for j in 0..=probe_degree {
        let probe = RationalPolynomial::monomial(int(1), j);
        let probe_rf = RationalFunction::from_poly(probe.clone());
        let lhs = d_reduced.apply(&probe);
        let rhs = &step.b_op.apply_rational(&step.a_op.apply(&probe))
            + &probe_rf.scale(&step.eigen_shift_reduced);
        let lhs_full = d_full.apply(&probe);
        let rhs_full = &step.a_op.apply_rational(&step.b_op.apply(&probe))
            + &probe_rf.scale(&step.eigen_shift_full);
        if lhs != rhs || lhs_full != rhs_full {
            probes_agree = false;
            break;
        }
    }

    Ok(FactorizationCertificate {
        reduced_identity: reduced_residual.is_zero(),
        full_identity: full_residual.is_zero(),
        probes_agree,
        reduced_residual: reduced_residual.to_string(),
        full_residual: full_residual.to_string(),
    })
}

/// Residuals of `A(q_n) = p_n` and `B(p_n) = μ q_n` with
/// `p_n = L^{α;F}_{n+u_F}` and `q_n = L^{α;reduced}_{n+u_reduced}`.
#[derive(Debug, Clone, Serialize)]
pub struct LadderCertificate {
    pub n: usize,
    pub raising_holds: bool,
    pub lowering_holds: bool,
    /// `false` when `A(q_n)` or `B(p_n)` is not a polynomial.
    pub images_polynomial: bool,
    pub raising_residual: String,
    pub lowering_residual: String,
}

impl LadderCertificate {
    pub fn holds(&self) -> bool {
        self.raising_holds && self.lowering_holds
    }
}

pub fn verify_ladder_step(step: &DarbouxStep, n: usize) -> Result<LadderCertificate> {
    if step.pair.f1().contains(&(n as u32)) {
        return Err(Error::Index(format!(
            "n = {n} belongs to F1 of {}",
            step.pair
        )));
    }
    let p = step.full_family.poly(n + step.full_family.uf())?;
    let q = step.reduced_family.poly(n + step.reduced_family.uf())?;
    let raised = step.a_op.apply(&q);
    let lowered = step.b_op.apply(&p);
    let images_polynomial = raised.as_polynomial().is_some() && lowered.as_polynomial().is_some();
    let raising_residual = &raised - &RationalFunction::from_poly(p);
    let lowering_residual =
        &lowered - &RationalFunction::from_poly(q.scale(&step.lowering_factor(n)));
    Ok(LadderCertificate {
        n,
        raising_holds: raising_residual.is_zero(),
        lowering_holds: lowering_residual.is_zero(),
        images_polynomial,
        raising_residual: raising_residual.to_string(),
        lowering_residual: lowering_residual.to_string(),
    })
}

pub fn verify_ladder(
    pair: &PairF,
    component: Component,
    alpha: &BigRational,
    n: usize,
) -> Result<LadderCertificate> {
    if pair.f1().contains(&(n as u32)) {
        return Err(Error::Index(format!("n = {n} belongs to F1 of {pair}")));
    }
    verify_ladder_step(&build_step(pair, component, alpha)?, n)
}

/// The `k` steps taking `F` down to `(∅, ∅)`: the elements of `F1` are
/// removed largest first, then those of `F2`.
pub fn full_chain(pair: &PairF, alpha: &BigRational) -> Result<Vec<DarbouxStep>> {
    let mut steps = Vec::with_capacity(pair.k());
    let mut current = pair.clone();
    for component in [Component::First, Component::Second] {
        while !current.component(component).is_empty() {
            let step = build_step(&current, component, alpha)?;
            current = step.reduced.clone();
            steps.push(step);
        }
    }
    Ok(steps)
}

/// Applies the chain's `A` operators, innermost first, to `L_n^alpha`.
/// The result should be `L^{alpha;F}_{n+u_F}`.
pub fn chain_raise(
    chain: &[DarbouxStep],
    alpha: &BigRational,
    n: usize,
) -> Result<RationalPolynomial> {
    let mut p = laguerre_poly(&LaguerreParams::new(n, alpha.clone())?)?;
    for step in chain.iter().rev() {
        let image = step.a_op.apply(&p);
        p = image.as_polynomial().cloned().ok_or_else(|| {
            Error::Certificate(format!(
                "A operator of step {} -> {} produced a non-polynomial image: {image}",
                step.reduced, step.pair
            ))
        })?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::exceptional::exceptional_poly;
    use crate::laguerre::classical_operator;

    fn pair(a: &[u32], b: &[u32]) -> PairF {
        PairF::new(a.to_vec(), b.to_vec()).unwrap()
    }

    fn poly(cs: Vec<BigRational>) -> RationalPolynomial {
        RationalPolynomial::new(cs)
    }

    #[test]
    fn step_operators_for_single_elements() {
        let a = rat(1, 2);
        let s = build_step(&pair(&[1], &[]), Component::First, &a).unwrap();
        // A = -(α+1-x) ∂ + (-1)
        assert_eq!(
            s.a_op.coeff(1),
            RationalFunction::from_poly(poly(vec![-(&a + int(1)), int(1)]))
        );
        assert_eq!(s.a_op.coeff(0), RationalFunction::constant(int(-1)));
        assert_eq!(s.eigen_shift_reduced, int(-1));

        let s = build_step(&pair(&[], &[1]), Component::Second, &a).unwrap();
        // A = -(α+1+x) ∂ + (1 + α+1+x)
        assert_eq!(
            s.a_op.coeff(1),
            RationalFunction::from_poly(poly(vec![-(&a + int(1)), int(-1)]))
        );
        assert_eq!(
            s.a_op.coeff(0),
            RationalFunction::from_poly(poly(vec![&a + int(2), int(1)]))
        );
        assert_eq!(s.eigen_shift_full, &a + int(1));
    }

    #[test]
    fn empty_pair_cannot_be_reduced() {
        let a = rat(1, 2);
        for c in [Component::First, Component::Second] {
            assert!(matches!(
                build_step(&PairF::empty(), c, &a),
                Err(Error::Reduction(_))
            ));
        }
    }

    #[test]
    fn factorization_examples() {
        let a = rat(1, 2);
        let s = build_step(&pair(&[1], &[]), Component::First, &a).unwrap();
        // B A - (1 + 0) Id is the classical operator
        let ba = s.b_op.compose(&s.a_op).plus_identity(&int(-1));
        assert_eq!(ba, classical_operator(&a));
        assert!(verify_factorization(&s, 0).unwrap().holds());
        assert!(verify_factorization(&s, 6).unwrap().holds());

        let s = build_step(&pair(&[], &[1]), Component::Second, &a).unwrap();
        assert_eq!(s.eigen_shift_full, &a + int(1) - int(1) + int(1));
        assert!(verify_factorization(&s, 6).unwrap().holds());
    }

    #[test]
    fn ladder_examples() {
        let a = rat(1, 2);
        let cert = verify_ladder(&pair(&[1], &[]), Component::First, &a, 0).unwrap();
        assert!(cert.holds() && cert.images_polynomial, "{cert:?}");
        let s = build_step(&pair(&[1], &[]), Component::First, &a).unwrap();
        assert_eq!(
            s.a_op.apply(&RationalPolynomial::one()),
            RationalFunction::from_poly(exceptional_poly(0, &pair(&[1], &[]), &a).unwrap())
        );

        // B_2 (L_1^{α;F}) = -(α + 0 + 1 + 1) L_0^α = -5/2
        let s = build_step(&pair(&[], &[1]), Component::Second, &a).unwrap();
        let p = exceptional_poly(1, &pair(&[], &[1]), &a).unwrap();
        assert_eq!(s.b_op.apply(&p), RationalFunction::constant(rat(-5, 2)));
        assert!(verify_ladder(&pair(&[], &[1]), Component::Second, &a, 0)
            .unwrap()
            .holds());

        assert!(matches!(
            verify_ladder(&pair(&[1, 3], &[2]), Component::Second, &a, 3),
            Err(Error::Index(_))
        ));
    }

    #[test]
    fn chain_order() {
        let a = rat(1, 3);
        assert!(full_chain(&PairF::empty(), &a).unwrap().is_empty());
        let c = full_chain(&pair(&[1, 2], &[]), &a).unwrap();
        assert_eq!(c.iter().map(|s| s.removed).collect::<Vec<_>>(), vec![2, 1]);
        let c = full_chain(&pair(&[1], &[3]), &a).unwrap();
        assert_eq!(
            c.iter()
                .map(|s| (s.component, s.removed))
                .collect::<Vec<_>>(),
            vec![(Component::First, 1), (Component::Second, 3)]
        );
        assert_eq!(c[1].reduced, PairF::empty());
    }

    #[test]
    fn chain_reproduces_exceptional_family() {
        let a = rat(3, 4);
        for f in [
            pair(&[1, 2], &[3]),
            pair(&[2], &[1, 4]),
            pair(&[1, 2, 4], &[]),
        ] {
            let chain = full_chain(&f, &a).unwrap();
            let fam = ExceptionalFamily::new(&f, &a).unwrap();
            let op = fam.operator().unwrap();
            for n in (0..=8usize).filter(|n| !f.f1().contains(&(*n as u32))) {
                let raised = chain_raise(&chain, &a, n).unwrap();
                let idx = n + fam.uf();
                assert_eq!(raised, fam.poly(idx).unwrap(), "F={f}, n={n}");
                assert_eq!(
                    op.apply(&raised),
                    RationalFunction::from_poly(raised.scale(&int(-(idx as i64))))
                );
            }
            for step in &chain {
                assert!(verify_factorization(step, 4).unwrap().holds(), "F={f}");
            }
        }
    }
}
