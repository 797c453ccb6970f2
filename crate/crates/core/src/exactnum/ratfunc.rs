use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{BigRational, RationalPolynomial};

/// Quotient of two polynomials kept in lowest terms with a monic
/// denominator, so structural equality coincides with equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: RationalPolynomial,
    den: RationalPolynomial,
}

impl RationalFunction {
    /// `None` when `den` is the zero polynomial.
    pub fn new(num: RationalPolynomial, den: RationalPolynomial) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduce(num, den))
    }

    /// Wraps `num / den` without the gcd pass. Callers guarantee coprimality.
    fn coprime(num: RationalPolynomial, den: RationalPolynomial) -> Self {
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            return Self { num, den };
        }
        let inv = lc.recip();
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    fn reduce(num: RationalPolynomial, den: RationalPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = RationalPolynomial::gcd(&num, &den);
        if g.is_constant() {
            Self::coprime(num, den)
        } else {
            Self::coprime(num.exact_div(&g), den.exact_div(&g))
        }
    }

    pub fn zero() -> Self {
        Self {
            num: RationalPolynomial::zero(),
            den: RationalPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(RationalPolynomial::one())
    }

    pub fn from_poly(p: RationalPolynomial) -> Self {
        Self {
            num: p,
            den: RationalPolynomial::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(RationalPolynomial::constant(c))
    }

    pub fn num(&self) -> &RationalPolynomial {
        &self.num
    }

    pub fn den(&self) -> &RationalPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if the denominator is constant.
    pub fn as_polynomial(&self) -> Option<&RationalPolynomial> {
        self.den.is_constant().then_some(&self.num)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &RationalPolynomial) -> Self {
        self * &Self::from_poly(p.clone())
    }

    /// `None` on division by zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let inv = Self::reduce(rhs.den.clone(), rhs.num.clone());
        Some(self * &inv)
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_constant() {
            return Self::from_poly(self.num.derivative(1));
        }
        let n = &(&self.num.derivative(1) * &self.den) - &(&self.num * &self.den.derivative(1));
        Self::reduce(n, &self.den * &self.den)
    }

    /// Equality of the underlying functions by cross-multiplication.
    pub fn same_function(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.num.eval_complex(z) / self.den.eval_complex(z)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = RationalPolynomial::gcd(&self.den, &rhs.den);
        if g.is_constant() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return RationalFunction::zero();
            }
            return RationalFunction::coprime(num, &self.den * &rhs.den);
        }
        let b = self.den.exact_div(&g);
        let d = rhs.den.exact_div(&g);
        let t = &(&self.num * &d) + &(&rhs.num * &b);
        if t.is_zero() {
            return RationalFunction::zero();
        }
        let h = RationalPolynomial::gcd(&t, &g);
        let den = &(&b * &d) * &g.exact_div(&h);
        RationalFunction::coprime(t.exact_div(&h), den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: Self) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let g1 = RationalPolynomial::gcd(&self.num, &rhs.den);
        let g2 = RationalPolynomial::gcd(&rhs.num, &self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RationalFunction::coprime(num, den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: Self) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<RationalPolynomial> for RationalFunction {
    fn from(p: RationalPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(cs: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(cs)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn canonical_form() {
        // (x^2 - 1) / (2x - 2) = (x + 1) / 2
        let f = rf(&[-1, 0, 1], &[-2, 2]);
        assert_eq!(f.den(), &RationalPolynomial::one());
        assert_eq!(
            f.num(),
            &RationalPolynomial::new(vec![rat(1, 2), rat(1, 2)])
        );
        assert!(RationalFunction::new(p(&[1]), RationalPolynomial::zero()).is_none());
        assert_eq!(rf(&[], &[3, 1]), RationalFunction::zero());
    }

    #[test]
    fn field_operations() {
        let a = rf(&[1], &[1, 1]); // 1/(1+x)
        let b = rf(&[1], &[-1, 1]); // 1/(x-1)
                                    // 1/(1+x) + 1/(x-1) = 2x/(x^2-1)
        assert_eq!(&a + &b, rf(&[0, 2], &[-1, 0, 1]));
        assert_eq!(&a * &b, rf(&[1], &[-1, 0, 1]));
        assert_eq!(&a - &a, RationalFunction::zero());
        let c = rf(&[0, 1], &[1, 1]); // x/(1+x)
        assert_eq!(&c + &a, RationalFunction::one());
        assert_eq!(a.checked_div(&a).unwrap(), RationalFunction::one());
        assert!(a.checked_div(&RationalFunction::zero()).is_none());
        // shared denominator factor: 1/(x(x+1)) + 1/(x(x-1)) = 2/((x+1)(x-1))
        let d = rf(&[1], &[0, 1, 1]);
        let e = rf(&[1], &[0, -1, 1]);
        assert_eq!(&d + &e, rf(&[2], &[-1, 0, 1]));
    }

    #[test]
    fn derivative_quotient_rule() {
        // (1/x)' = -1/x^2
        assert_eq!(rf(&[1], &[0, 1]).derivative(), rf(&[-1], &[0, 0, 1]));
        let q = rf(&[1, 2, 3], &[4]);
        assert_eq!(
            q.derivative(),
            RationalFunction::from_poly(p(&[2, 6]).scale(&rat(1, 4)))
        );
        assert_eq!(
            RationalFunction::constant(int(5)).derivative(),
            RationalFunction::zero()
        );
    }

    #[test]
    fn cross_multiplied_equality() {
        let a = rf(&[1, 1], &[2, 3]);
        let b = a.scale(&int(1));
        assert!(a.same_function(&b));
        assert!(!a.same_function(&rf(&[1], &[2, 3])));
    }
}
