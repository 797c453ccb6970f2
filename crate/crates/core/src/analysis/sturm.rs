use num_traits::{Signed, Zero};

use crate::error::{param, Result};
use crate::exactnum::{BigRational, RationalPolynomial};

/// `p, p', -rem(p, p'), ...`, each term rescaled by a positive constant to
/// keep coefficients small. Stops before the first zero remainder.
pub fn sturm_chain(p: &RationalPolynomial) -> Vec<RationalPolynomial> {
    let mut chain = vec![p.primitive_part()];
    let d = p.derivative(1);
    if d.is_zero() {
        return chain;
    }
    chain.push(d.primitive_part());
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push((-r).primitive_part());
    }
}

fn variations<'a>(signs: impl Iterator<Item = &'a BigRational>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for s in signs.filter(|s| !s.is_zero()) {
        let pos = s.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Number of distinct real roots of `p` in `[0, ∞)`, exactly.
pub fn sturm_nonneg_roots(p: &RationalPolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(param("p", "the zero polynomial has no finite root count"));
    }
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let q = RationalPolynomial::new(p.coeffs()[zeros..].to_vec());
    let at_zero = usize::from(zeros > 0);
    if q.is_constant() {
        return Ok(at_zero);
    }
    let chain = sturm_chain(&q);
    let v0 = variations(chain.iter().map(|s| &s.coeffs()[0]));
    let vinf = variations(chain.iter().map(|s| s.leading().unwrap()));
    Ok(at_zero + v0 - vinf)
}
