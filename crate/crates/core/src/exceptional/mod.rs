//! Exceptional Laguerre polynomials built from Wronskian-type determinants,
//! their second-order operator and weight.

mod pair;

pub use pair::{pair_uf, reduce_pair, sigma_prefix, Component, PairF, SigmaF};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    determinant, int, BigRational, PolyMatrix, RationalFunction, RationalPolynomial,
};
use crate::laguerre::{check_alpha, LaguerreCache};
use crate::operator::LinearDiffOperator;

/// The rows contributed by `F`, truncated to `cols` columns: derivatives of
/// `L_f^alpha` for `f in F1`, then `L_f^{alpha+j}(-x)` for `f in F2`.
fn pair_rows(
    cache: &mut LaguerreCache,
    pair: &PairF,
    alpha: &BigRational,
    cols: usize,
) -> Result<Vec<Vec<RationalPolynomial>>> {
    let mut rows = Vec::with_capacity(pair.k());
    for &f in pair.f1() {
        let l = cache.get(f as usize, alpha)?.clone();
        rows.push((0..cols).map(|j| l.derivative(j)).collect());
    }
    for &f in pair.f2() {
        rows.push(
            (0..cols)
                .map(|j| cache.reflected(f as usize, alpha, j))
                .collect::<Result<_>>()?,
        );
    }
    Ok(rows)
}

/// Everything about `(F, alpha)` that does not depend on the degree index:
/// `u_F`, `Omega_F^alpha`, and the first-row cofactors of the
/// `(k+1) x (k+1)` determinant defining `L_n^{alpha;F}`.
#[derive(Debug, Clone)]
pub struct ExceptionalFamily {
    pair: PairF,
    alpha: BigRational,
    sigma: SigmaF,
    omega: RationalPolynomial,
    cofactors: Vec<RationalPolynomial>,
}

impl ExceptionalFamily {
    pub fn new(pair: &PairF, alpha: &BigRational) -> Result<Self> {
        check_alpha(alpha)?;
        let sigma = pair.sigma()?;
        let k = pair.k();
        let mut cache = LaguerreCache::new();

        let omega_rows = pair_rows(&mut cache, pair, alpha, k)?;
        let omega = determinant(&PolyMatrix::from_rows(omega_rows)?)?;

        // Laplace expansion of the (k+1)x(k+1) determinant along its first
        // row: the k x k minors depend only on F and alpha.
        let rows = PolyMatrix::new(
            k,
            k + 1,
            pair_rows(&mut cache, pair, alpha, k + 1)?
                .into_iter()
                .flatten()
                .collect(),
        )?;
        let cofactors = (0..=k)
            .map(|j| {
                let entries = (0..k)
                    .flat_map(|i| (0..=k).filter(move |&c| c != j).map(move |c| (i, c)))
                    .map(|(i, c)| rows.get(i, c).clone())
                    .collect();
                let det = determinant(&PolyMatrix::new(k, k, entries)?)?;
                Ok(if j % 2 == 0 { det } else { -det })
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(Self {
            pair: pair.clone(),
            alpha: alpha.clone(),
            sigma,
            omega,
            cofactors,
        })
    }

    pub fn pair(&self) -> &PairF {
        &self.pair
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn sigma(&self) -> &SigmaF {
        &self.sigma
    }

    pub fn uf(&self) -> usize {
        self.sigma.u
    }

    /// `Omega_F^alpha`, rejecting the identically-zero case.
    pub fn omega(&self) -> Result<&RationalPolynomial> {
        if self.omega.is_zero() {
            return Err(Error::Degeneracy(format!(
                "Omega vanishes identically for F = {}, alpha = {}",
                self.pair, self.alpha
            )));
        }
        Ok(&self.omega)
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if !self.sigma.contains(n) {
            return Err(Error::Index(format!(
                "{n} is not in sigma_F for F = {} (u_F = {})",
                self.pair, self.sigma.u
            )));
        }
        Ok(())
    }

    /// `L_n^{alpha;F}` for `n in sigma_F`.
    pub fn poly(&self, n: usize) -> Result<RationalPolynomial> {
        self.check_index(n)?;
        let base = crate::laguerre::laguerre_poly(&crate::laguerre::LaguerreParams::new(
            n - self.sigma.u,
            self.alpha.clone(),
        )?)?;
        let mut acc = RationalPolynomial::zero();
        let mut d = base;
        for (j, c) in self.cofactors.iter().enumerate() {
            if j > 0 {
                d = d.derivative(1);
            }
            if d.is_zero() {
                break;
            }
            acc = &acc + &(&d * c);
        }
        Ok(acc)
    }

    /// `D_F = x ∂^2 + h1 ∂ + h0`.
    pub fn operator(&self) -> Result<LinearDiffOperator> {
        let omega = self.omega()?;
        let (h1, h0) = self.cleared_coefficients(omega);
        Ok(LinearDiffOperator::new(vec![
            RationalFunction::new(h0, omega.clone()).unwrap(),
            RationalFunction::new(h1, omega.clone()).unwrap(),
            RationalFunction::from_poly(RationalPolynomial::x()),
        ]))
    }

    /// Numerators of `h1` and `h0` over the common denominator `Omega`.
    fn cleared_coefficients(
        &self,
        omega: &RationalPolynomial,
    ) -> (RationalPolynomial, RationalPolynomial) {
        let k = int(self.pair.k() as i64);
        let x = RationalPolynomial::x();
        let d1 = omega.derivative(1);
        let d2 = omega.derivative(2);
        let a_k = &self.alpha + &k;
        // (alpha + k + 1 - x) Omega - 2 x Omega'
        let lin1 = RationalPolynomial::new(vec![&a_k + int(1), int(-1)]);
        let h1 = &(&lin1 * omega) - &(&x * &d1).scale(&int(2));
        // -(k1 + u) Omega + (x - alpha - k) Omega' + x Omega''
        let lin0 = RationalPolynomial::new(vec![-a_k, int(1)]);
        let shift = int((self.pair.k1() + self.sigma.u) as i64);
        let h0 = &(&(-&omega.scale(&shift)) + &(&lin0 * &d1)) + &(&x * &d2);
        (h1, h0)
    }

    /// Residual of the cleared eigen identity
    /// `x Ω p'' + ((α+k+1-x)Ω - 2xΩ') p' + (-(k1+u)Ω + (x-α-k)Ω' + xΩ'') p + n Ω p`.
    pub fn verify_eigen(&self, n: usize) -> Result<EigenCertificate> {
        let omega = self.omega()?;
        let p = self.poly(n)?;
        let (h1, h0) = self.cleared_coefficients(omega);
        let x = RationalPolynomial::x();
        let residual = &(&(&(&x * omega) * &p.derivative(2)) + &(&h1 * &p.derivative(1)))
            + &(&(&h0 * &p) + &(omega * &p).scale(&int(n as i64)));
        Ok(EigenCertificate {
            n,
            holds: residual.is_zero(),
            residual,
        })
    }

    pub fn weight(&self) -> Result<ExceptionalWeight> {
        Ok(ExceptionalWeight {
            exponent: &self.alpha + int(self.pair.k() as i64),
            omega: self.omega()?.clone(),
        })
    }
}

/// Outcome of an exact eigen check; `residual` is the zero polynomial iff
/// the identity holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenCertificate {
    pub n: usize,
    pub holds: bool,
    pub residual: RationalPolynomial,
}

/// `x^exponent e^{-x} / omega(x)^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalWeight {
    pub exponent: BigRational,
    pub omega: RationalPolynomial,
}

/// `Omega_F^alpha`; the constant 1 when `F = (∅, ∅)`.
pub fn omega(pair: &PairF, alpha: &BigRational) -> Result<RationalPolynomial> {
    ExceptionalFamily::new(pair, alpha)?.omega().cloned()
}

/// `L_n^{alpha;F}` for `n in sigma_F`.
pub fn exceptional_poly(n: usize, pair: &PairF, alpha: &BigRational) -> Result<RationalPolynomial> {
    ExceptionalFamily::new(pair, alpha)?.poly(n)
}

pub fn exceptional_operator(pair: &PairF, alpha: &BigRational) -> Result<LinearDiffOperator> {
    ExceptionalFamily::new(pair, alpha)?.operator()
}

pub fn verify_eigen(n: usize, pair: &PairF, alpha: &BigRational) -> Result<EigenCertificate> {
    ExceptionalFamily::new(pair, alpha)?.verify_eigen(n)
}

pub fn weight(pair: &PairF, alpha: &BigRational) -> Result<ExceptionalWeight> {
    ExceptionalFamily::new(pair, alpha)?.weight()
}

/// The `(k+1) x (k+1)` matrix whose determinant is `L_n^{alpha;F}`, rows in
/// the order: first row, `F1` rows increasing, `F2` rows increasing.
pub fn exceptional_matrix(n: usize, pair: &PairF, alpha: &BigRational) -> Result<PolyMatrix> {
    check_alpha(alpha)?;
    let sigma = pair.sigma()?;
    if !sigma.contains(n) {
        return Err(Error::Index(format!(
            "{n} is not in sigma_F for F = {pair}"
        )));
    }
    let k = pair.k();
    let mut cache = LaguerreCache::new();
    let base = cache.get(n - sigma.u, alpha)?.clone();
    let mut rows = vec![(0..=k).map(|j| base.derivative(j)).collect::<Vec<_>>()];
    rows.extend(pair_rows(&mut cache, pair, alpha, k + 1)?);
    PolyMatrix::from_rows(rows)
}
