//! Arithmetic modulo a Mersenne prime, used only to detect coprime
//! polynomial pairs without running the rational Euclidean algorithm.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{BigRational, RationalPolynomial};

const P: u64 = (1u64 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn reduce_int(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P)).to_u64().unwrap()
}

fn reduce(q: &BigRational) -> Option<u64> {
    let d = reduce_int(q.denom());
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(q.numer()), inv(d)))
}

/// Image of `p` mod the prime; `None` if a denominator vanishes or the
/// leading coefficient reduces to zero (an unlucky prime).
fn image(p: &RationalPolynomial) -> Option<Vec<u64>> {
    let v = p.coeffs().iter().map(reduce).collect::<Option<Vec<_>>>()?;
    if v.last().copied() == Some(0) {
        return None;
    }
    Some(v)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let lb = inv(*b.last().unwrap());
    while a.len() >= b.len() {
        let f = mul(*a.last().unwrap(), lb);
        let shift = a.len() - b.len();
        for (i, &bc) in b.iter().enumerate() {
            a[shift + i] = sub(a[shift + i], mul(f, bc));
        }
        a.pop();
        trim(&mut a);
    }
    a
}

/// `Some(true)` proves the two polynomials coprime over the rationals.
/// `Some(false)` or `None` is inconclusive.
pub(crate) fn coprime(a: &RationalPolynomial, b: &RationalPolynomial) -> Option<bool> {
    let mut x = image(a)?;
    let mut y = image(b)?;
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = rem(x, &y);
        x = y;
        y = r;
    }
    Some(x.len() == 1)
}
