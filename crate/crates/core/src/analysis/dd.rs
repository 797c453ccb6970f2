//! Polynomial evaluation in double-double arithmetic. Exceptional
//! polynomials have large alternating coefficients, and plain Horner in
//! `f64` loses most of its digits inside the oscillatory region.

use num_traits::FromPrimitive;

use crate::exactnum::{to_f64, BigRational, RationalPolynomial};

#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd(f64, f64);

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd(s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd(s, b - (s - a))
}

impl Dd {
    fn mul_f64(self, x: f64) -> Dd {
        let p = self.0 * x;
        let e = self.0.mul_add(x, -p) + self.1 * x;
        quick_two_sum(p, e)
    }

    fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.0, o.0);
        quick_two_sum(s.0, s.1 + self.1 + o.1)
    }
}

/// A polynomial with each rational coefficient stored as an unevaluated
/// sum of two doubles.
#[derive(Debug, Clone)]
pub struct DdPoly {
    coeffs: Vec<Dd>,
}

impl DdPoly {
    pub fn new(p: &RationalPolynomial) -> Self {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| {
                let hi = to_f64(c);
                let lo = BigRational::from_f64(hi).map_or(0.0, |h| to_f64(&(c - h)));
                Dd(hi, lo)
            })
            .collect();
        Self { coeffs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = Dd(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_f64(x).add(c);
        }
        acc.0 + acc.1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use crate::laguerre::{laguerre_poly, LaguerreParams};

    #[test]
    fn matches_exact_evaluation_where_f64_fails() {
        let l = laguerre_poly(&LaguerreParams::new(30, rat(1, 3)).unwrap()).unwrap();
        let dd = DdPoly::new(&l);
        for x in [0.5, 7.25, 31.0, 60.5, 95.0] {
            let exact = to_f64(&l.eval(&BigRational::from_f64(x).unwrap()));
            assert!((dd.eval(x) - exact).abs() <= 1e-13 * exact.abs(), "x = {x}");
        }
    }

    #[test]
    fn small_polynomial() {
        let p = RationalPolynomial::new(vec![rat(1, 3), int(-2), rat(1, 7)]);
        let x = 1.5;
        let v = 1.0 / 3.0 - 3.0 + 2.25 / 7.0;
        assert!((DdPoly::new(&p).eval(x) - v).abs() < 1e-15);
    }
}
