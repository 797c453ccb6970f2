//! Linear differential operators `sum_j c_j(x) d^j/dx^j` with
//! rational-function coefficients.

use std::fmt;

use crate::exactnum::{gen_binomial, int, BigRational, RationalFunction, RationalPolynomial};

#[derive(Clone, PartialEq, Eq)]
pub struct LinearDiffOperator {
    coeffs: Vec<RationalFunction>,
}

impl LinearDiffOperator {
    /// Coefficients indexed by derivative order; trailing zero coefficients
    /// are dropped.
    pub fn new(mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().is_some_and(RationalFunction::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn identity() -> Self {
        Self::new(vec![RationalFunction::one()])
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn coeff(&self, order: usize) -> RationalFunction {
        self.coeffs
            .get(order)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn apply(&self, p: &RationalPolynomial) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        let mut d = p.clone();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                d = d.derivative(1);
            }
            if d.is_zero() {
                break;
            }
            if !c.is_zero() {
                acc = &acc + &c.mul_poly(&d);
            }
        }
        acc
    }

    /// Applies the operator to a rational function.
    pub fn apply_rational(&self, f: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        let mut d = f.clone();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                d = d.derivative();
            }
            acc = &acc + &(c * &d);
        }
        acc
    }

    /// The composition `self ∘ inner` (apply `inner` first), computed
    /// symbolically with the Leibniz rule.
    pub fn compose(&self, inner: &LinearDiffOperator) -> LinearDiffOperator {
        let mut out: Vec<RationalFunction> = Vec::new();
        let mut push = |idx: usize, term: RationalFunction| {
            if out.len() <= idx {
                out.resize(idx + 1, RationalFunction::zero());
            }
            out[idx] = &out[idx] + &term;
        };
        for (j, b) in inner.coeffs.iter().enumerate() {
            // derivatives b, b', b'', ... up to the outer order
            let mut derivs = vec![b.clone()];
            for _ in 1..self.coeffs.len() {
                let next = derivs.last().unwrap().derivative();
                derivs.push(next);
            }
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for l in 0..=i {
                    let db = &derivs[i - l];
                    if db.is_zero() {
                        continue;
                    }
                    let c = gen_binomial(&int(i as i64), l);
                    push(j + l, (a * db).scale(&c));
                }
            }
        }
        Self::new(out)
    }

    pub fn plus_identity(&self, lambda: &BigRational) -> LinearDiffOperator {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(RationalFunction::zero());
        }
        coeffs[0] = &coeffs[0] + &RationalFunction::constant(lambda.clone());
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &LinearDiffOperator) -> LinearDiffOperator {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }
}

impl fmt::Display for LinearDiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format!("[{c}]"),
                1 => format!("[{c}]∂"),
                _ => format!("[{c}]∂^{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LinearDiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearDiffOperator({self})")
    }
}
