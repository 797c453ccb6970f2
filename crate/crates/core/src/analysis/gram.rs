use num_complex::Complex64;
use serde::Serialize;

use super::contour::{
    contour_integral, contour_prefactor, find_radius, path_min_modulus, truncation_radius,
    ContourSpec, RadiusChoice,
};
use super::dd::DdPoly;
use super::gamma::{gamma_signed, gamma_value};
use super::quadrature::{integrate_half_line_vec, QuadratureOutcome};
use super::sturm::sturm_nonneg_roots;
use crate::error::{param, Error, Result};
use crate::exactnum::{int, to_f64, BigRational, RationalPolynomial};
use crate::exceptional::{ExceptionalFamily, PairF};

/// `Γ(n+α+1) ∏_{F1}(n-f) ∏_{F2}(n+α+f+1) / n!`, the squared norm of
/// `L_{n+u_F}^{α;F}`.
pub fn closed_form_norm(n: usize, pair: &PairF, alpha: f64) -> Result<f64> {
    if pair.f1().contains(&(n as u32)) {
        return Err(Error::Index(format!(
            "n = {n} lies in F1 = {:?}",
            pair.f1()
        )));
    }
    let nf = n as f64;
    let mut v = gamma_signed(nf + alpha + 1.0)? / gamma_value(nf + 1.0)?;
    for &f in pair.f1() {
        v *= nf - f as f64;
    }
    for &f in pair.f2() {
        v *= nf + alpha + f as f64 + 1.0;
    }
    Ok(v)
}

/// A numerically computed Gram entry against its closed form. For
/// off-diagonal entries the closed form is zero and `floor_scale`, the
/// geometric mean of the two diagonal norms, normalizes the error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormResult<T> {
    pub n: usize,
    pub m: usize,
    pub numeric: T,
    pub closed_form: T,
    pub floor_scale: f64,
    pub rel_error: f64,
}

fn check_indices(fam: &ExceptionalFamily, n: usize, m: usize) -> Result<()> {
    for (name, v) in [("n", n), ("m", m)] {
        if !fam.sigma().contains(v) {
            return Err(Error::Index(format!(
                "{name} = {v} is not in sigma_F for F = {}",
                fam.pair()
            )));
        }
    }
    Ok(())
}

fn norms(fam: &ExceptionalFamily, n: usize, m: usize) -> Result<(f64, f64)> {
    let u = fam.uf();
    let a = to_f64(fam.alpha());
    Ok((
        closed_form_norm(n - u, fam.pair(), a)?,
        closed_form_norm(m - u, fam.pair(), a)?,
    ))
}

fn degree(p: &RationalPolynomial) -> f64 {
    p.degree().unwrap_or(0) as f64
}

/// `∫_0^∞ L_n^{α;F} L_m^{α;F} x^{α+k} e^{-x} / Ω² dx` for `n, m in σ_F`,
/// with `tol` the relative stopping tolerance of the quadrature.
pub fn real_axis_gram(
    n: usize,
    m: usize,
    pair: &PairF,
    alpha: &BigRational,
    tol: f64,
) -> Result<(NormResult<f64>, QuadratureOutcome)> {
    let fam = ExceptionalFamily::new(pair, alpha)?;
    Ok(real_axis_entries(&fam, &[(n, m)], tol)?.remove(0))
}

/// All requested entries integrated on shared nodes.
fn real_axis_entries(
    fam: &ExceptionalFamily,
    entries: &[(usize, usize)],
    tol: f64,
) -> Result<Vec<(NormResult<f64>, QuadratureOutcome)>> {
    for &(n, m) in entries {
        check_indices(fam, n, m)?;
    }
    let beta = fam.alpha() + int(fam.pair().k() as i64);
    if beta <= int(-1) {
        return Err(param("alpha", "the weight needs alpha + k > -1"));
    }
    let omega = fam.omega()?;
    let roots = sturm_nonneg_roots(omega)?;
    if roots > 0 {
        return Err(Error::Certificate(format!(
            "Omega has {roots} distinct root(s) in [0, inf) for F = {}",
            fam.pair()
        )));
    }

    let mut idx: Vec<usize> = entries.iter().flat_map(|&(n, m)| [n, m]).collect();
    idx.sort_unstable();
    idx.dedup();
    let slot = |n: usize| idx.binary_search(&n).unwrap();
    let mut polys = Vec::with_capacity(idx.len());
    let mut growth = 0f64;
    for &n in &idx {
        let p = fam.poly(n)?;
        growth = growth.max(2.0 * degree(&p));
        polys.push(DdPoly::new(&p));
    }
    let om = DdPoly::new(omega);
    let pairs: Vec<(usize, usize)> = entries.iter().map(|&(n, m)| (slot(n), slot(m))).collect();

    let mut expected = Vec::with_capacity(entries.len());
    let mut scales = Vec::with_capacity(entries.len());
    for &(n, m) in entries {
        let (nn, nm) = norms(fam, n, m)?;
        scales.push((nn * nm).abs().sqrt());
        expected.push(if n == m { nn } else { 0.0 });
    }

    let f = |x: f64, out: &mut [f64]| {
        let w = om.eval(x);
        let inv = 1.0 / (w * w);
        let vals: Vec<f64> = polys.iter().map(|p| p.eval(x)).collect();
        for (o, &(i, j)) in out.iter_mut().zip(&pairs) {
            *o = vals[i] * vals[j] * inv;
        }
    };
    let out = integrate_half_line_vec(f, entries.len(), to_f64(&beta), tol, &scales, growth)?;
    Ok(entries
        .iter()
        .enumerate()
        .map(|(i, &(n, m))| {
            let q = out.component(i);
            let closed_form = expected[i];
            let rel_error = (q.value - closed_form).abs() / closed_form.abs().max(scales[i]);
            (
                NormResult {
                    n,
                    m,
                    numeric: q.value,
                    closed_form,
                    floor_scale: scales[i],
                    rel_error,
                },
                q,
            )
        })
        .collect())
}

/// The Gram matrix over the first `count` elements of `σ_F`. All entries
/// share the quadrature nodes; the symmetric lower half is mirrored.
pub fn real_axis_gram_matrix(
    pair: &PairF,
    alpha: &BigRational,
    count: usize,
    tol: f64,
) -> Result<Vec<Vec<NormResult<f64>>>> {
    let fam = ExceptionalFamily::new(pair, alpha)?;
    let idx = fam.sigma().prefix(count);
    let upper: Vec<(usize, usize)> = idx
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| idx[i..].iter().map(move |&m| (n, m)))
        .collect();
    let results = real_axis_entries(&fam, &upper, tol)?;
    let lookup = |n: usize, m: usize| {
        let key = if n <= m { (n, m) } else { (m, n) };
        let pos = upper.iter().position(|&e| e == key).unwrap();
        let mut r = results[pos].0.clone();
        r.n = n;
        r.m = m;
        r
    };
    Ok(idx
        .iter()
        .map(|&n| idx.iter().map(|&m| lookup(n, m)).collect())
        .collect())
}

/// Radius from [`find_radius`], truncation from the degrees of the
/// integrand.
pub fn default_contour_spec(
    pair: &PairF,
    alpha: &BigRational,
    max_index: usize,
) -> Result<(ContourSpec, RadiusChoice)> {
    let choice = find_radius(pair, alpha)?;
    let beta = to_f64(alpha) + pair.k() as f64;
    let big = truncation_radius(2.0 * max_index as f64 + beta.max(0.0));
    Ok((ContourSpec::new(choice.r, big, choice.clearance)?, choice))
}

/// Smallest admissible normalized `|Ω|` on the sampled path.
const PATH_MODULUS_FLOOR: f64 = 1e-8;

/// `∫_{Λ_r} L_n^{α;F} L_m^{α;F} z^{α+k} e^{-z} / Ω² dz`, compared with
/// `(e^{2πiα} - 1)` times the closed-form norm.
pub fn contour_gram(
    n: usize,
    m: usize,
    pair: &PairF,
    alpha: &BigRational,
    spec: &ContourSpec,
) -> Result<NormResult<Complex64>> {
    let fam = ExceptionalFamily::new(pair, alpha)?;
    check_indices(&fam, n, m)?;
    let omega = fam.omega()?;
    let (rel, raw) = path_min_modulus(omega, spec)?;
    if rel < PATH_MODULUS_FLOOR {
        return Err(Error::PathThroughZero { min_modulus: raw });
    }
    let a = to_f64(alpha);
    let (nn, nm) = norms(&fam, n, m)?;
    let pre = contour_prefactor(a);
    let closed_form = if n == m {
        pre * nn
    } else {
        Complex64::new(0.0, 0.0)
    };
    let pre_scale = if pre.norm() > 1e-12 { pre.norm() } else { 1.0 };
    let floor_scale = (nn * nm).abs().sqrt() * pre_scale;

    let pn = fam.poly(n)?.to_f64_coeffs();
    let pm = fam.poly(m)?.to_f64_coeffs();
    let om = omega.to_f64_coeffs();
    use crate::exactnum::horner_complex as h;
    let f = |z: Complex64| {
        let w = h(&om, z);
        h(&pn, z) * h(&pm, z) / (w * w)
    };
    let numeric = contour_integral(f, a + fam.pair().k() as f64, spec)?;
    let rel_error = (numeric - closed_form).norm() / closed_form.norm().max(floor_scale);
    Ok(NormResult {
        n,
        m,
        numeric,
        closed_form,
        floor_scale,
        rel_error,
    })
}
