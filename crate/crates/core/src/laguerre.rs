//! Classical Laguerre polynomials from the explicit hypergeometric sum.

use std::collections::HashMap;

use num_traits::One;

use crate::error::{param, Result};
use crate::exactnum::{
    format_rational, gen_binomial, int, is_negative_integer, BigRational, RationalFunction,
    RationalPolynomial,
};
use crate::operator::LinearDiffOperator;

/// Degree and parameter of `L_n^alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaguerreParams {
    pub n: usize,
    pub alpha: BigRational,
}

impl LaguerreParams {
    pub fn new(n: usize, alpha: BigRational) -> Result<Self> {
        check_alpha(&alpha)?;
        Ok(Self { n, alpha })
    }
}

/// Rejects `alpha in {-1, -2, ...}`.
pub fn check_alpha(alpha: &BigRational) -> Result<()> {
    if is_negative_integer(alpha) {
        return Err(param(
            "alpha",
            format!("{} is a negative integer", format_rational(alpha)),
        ));
    }
    Ok(())
}

/// `L_n^alpha(x) = sum_j (-x)^j / j! * binom(n + alpha, n - j)`.
pub fn laguerre_poly(p: &LaguerreParams) -> Result<RationalPolynomial> {
    check_alpha(&p.alpha)?;
    let top = int(p.n as i64) + &p.alpha;
    let mut coeffs = Vec::with_capacity(p.n + 1);
    let mut inv_fact = BigRational::one();
    for j in 0..=p.n {
        if j > 0 {
            inv_fact /= int(j as i64);
        }
        let mut c = gen_binomial(&top, p.n - j) * &inv_fact;
        if j % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    Ok(RationalPolynomial::new(coeffs))
}

/// `x -> L_f^{alpha + shift}(-x)`.
pub fn laguerre_reflected(
    f: usize,
    alpha: &BigRational,
    shift: usize,
) -> Result<RationalPolynomial> {
    let a = alpha + int(shift as i64);
    Ok(laguerre_poly(&LaguerreParams::new(f, a)?)?.reflect())
}

/// `D_alpha = x ∂^2 + (alpha + 1 - x) ∂`.
pub fn classical_operator(alpha: &BigRational) -> LinearDiffOperator {
    let one = BigRational::one();
    LinearDiffOperator::new(vec![
        RationalFunction::zero(),
        RationalFunction::from_poly(RationalPolynomial::new(vec![alpha + &one, -one.clone()])),
        RationalFunction::from_poly(RationalPolynomial::x()),
    ])
}

/// Per-computation memo of `(n, alpha) -> L_n^alpha`. Not shared between
/// threads; each construction owns one.
#[derive(Debug, Default)]
pub struct LaguerreCache {
    table: HashMap<(usize, BigRational), RationalPolynomial>,
}

impl LaguerreCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, n: usize, alpha: &BigRational) -> Result<&RationalPolynomial> {
        let key = (n, alpha.clone());
        if !self.table.contains_key(&key) {
            let p = laguerre_poly(&LaguerreParams::new(n, alpha.clone())?)?;
            self.table.insert(key.clone(), p);
        }
        Ok(&self.table[&key])
    }

    pub fn reflected(
        &mut self,
        f: usize,
        alpha: &BigRational,
        shift: usize,
    ) -> Result<RationalPolynomial> {
        Ok(self.get(f, &(alpha + int(shift as i64)))?.reflect())
    }
}

/// `L_n^alpha(0)` read off the defining sum.
pub fn value_at_zero(n: usize, alpha: &BigRational) -> BigRational {
    gen_binomial(&(int(n as i64) + alpha), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn lag(n: usize, a: BigRational) -> RationalPolynomial {
        laguerre_poly(&LaguerreParams::new(n, a).unwrap()).unwrap()
    }

    fn sum_oracle(n: usize, a: &BigRational) -> RationalPolynomial {
        // term-by-term: (-1)^j / j! * binom(n+a, n-j), factorials built separately
        let mut coeffs = Vec::new();
        for j in 0..=n {
            let fact: i64 = (1..=j as i64).product();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            coeffs.push(gen_binomial(&(int(n as i64) + a), n - j) * rat(sign, fact));
        }
        RationalPolynomial::new(coeffs)
    }

    #[test]
    fn low_degree_examples() {
        assert_eq!(lag(0, rat(7, 3)), RationalPolynomial::one());
        let a = rat(2, 5);
        assert_eq!(
            lag(1, a.clone()),
            RationalPolynomial::new(vec![&a + int(1), int(-1)])
        );
        assert_eq!(
            lag(2, int(0)),
            RationalPolynomial::new(vec![int(1), int(-2), rat(1, 2)])
        );
        for n in 0..8 {
            assert_eq!(lag(n, rat(-3, 4)), sum_oracle(n, &rat(-3, 4)));
        }
    }

    #[test]
    fn reflected_examples() {
        let a = rat(1, 2);
        assert_eq!(
            laguerre_reflected(0, &a, 3).unwrap(),
            RationalPolynomial::one()
        );
        assert_eq!(
            laguerre_reflected(1, &a, 0).unwrap(),
            RationalPolynomial::new(vec![rat(3, 2), int(1)])
        );
        assert_eq!(
            laguerre_reflected(1, &a, 1).unwrap(),
            RationalPolynomial::new(vec![rat(5, 2), int(1)])
        );
    }

    #[test]
    fn negative_integer_alpha_rejected() {
        assert!(LaguerreParams::new(2, int(-1)).is_err());
        assert!(laguerre_reflected(1, &int(-3), 1).is_err());
        assert!(laguerre_reflected(1, &int(-3), 3).is_ok());
        assert!(LaguerreParams::new(2, rat(-3, 2)).is_ok());
    }

    #[test]
    fn classical_eigen_identity() {
        let alphas = [
            int(0),
            rat(1, 3),
            rat(1, 2),
            rat(-1, 2),
            rat(7, 2),
            rat(-17, 4),
            int(3),
        ];
        for a in &alphas {
            let op = classical_operator(a);
            for n in 0..=25 {
                let l = lag(n, a.clone());
                let lhs = op.apply(&l);
                let rhs = RationalFunction::from_poly(l.scale(&int(-(n as i64))));
                assert_eq!(lhs, rhs, "n={n}, alpha={a}");
            }
        }
        let op = classical_operator(&rat(1, 3));
        assert_eq!(
            op.coeff(1).num(),
            &RationalPolynomial::new(vec![rat(4, 3), int(-1)])
        );
    }

    #[test]
    fn degree_leading_coefficient_and_constant_term() {
        for a in [rat(1, 2), rat(-5, 3), int(4)] {
            let mut fact = int(1);
            for n in 0..=20usize {
                if n > 0 {
                    fact *= int(n as i64);
                }
                let l = lag(n, a.clone());
                assert_eq!(l.degree(), Some(n));
                let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                assert_eq!(l.leading().unwrap(), &(sign / &fact));
                assert_eq!(l.eval(&int(0)), value_at_zero(n, &a));
            }
        }
    }

    #[test]
    fn cache_returns_same_polynomials() {
        let mut cache = LaguerreCache::new();
        let a = rat(1, 3);
        let first = cache.get(4, &a).unwrap().clone();
        assert_eq!(&first, cache.get(4, &a).unwrap());
        assert_eq!(
            cache.reflected(2, &a, 1).unwrap(),
            laguerre_reflected(2, &a, 1).unwrap()
        );
    }
}
