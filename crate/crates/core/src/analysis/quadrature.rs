use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use serde::Serialize;

use super::contour::truncation_radius;
use super::gamma::gamma_value;
use crate::error::{param, Result};

/// Nodes in increasing order with their weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Golub-Welsch: eigenvalues of the Jacobi matrix are the nodes, squared
/// first eigenvector components times the total mass are the weights.
fn golub_welsch(diag: &[f64], off: &[f64], mass: f64) -> GaussRule {
    let m = diag.len();
    let mut j = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        j[(i, i)] = diag[i];
        if i + 1 < m {
            j[(i, i + 1)] = off[i];
            j[(i + 1, i)] = off[i];
        }
    }
    let mut nodes: Vec<f64> = j.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));
    let weights = nodes
        .iter()
        .map(|&x| christoffel(diag, off, mass, x))
        .collect();
    GaussRule { nodes, weights }
}

// mass / Σ p_k(x)² over the orthonormal polynomials of the Jacobi matrix,
// rescaled as it goes so large nodes do not overflow.
fn christoffel(diag: &[f64], off: &[f64], mass: f64, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    let mut sum = 1.0;
    let mut log_scale = 0.0;
    for k in 0..diag.len() - 1 {
        let next = ((x - diag[k]) * cur - if k > 0 { off[k - 1] * prev } else { 0.0 }) / off[k];
        prev = cur;
        cur = next;
        sum += cur * cur;
        if sum > 1e200 {
            prev *= 1e-100;
            cur *= 1e-100;
            sum *= 1e-200;
            log_scale += 200.0 * std::f64::consts::LN_10;
        }
    }
    mass * (-(sum.ln() + log_scale)).exp()
}

type RuleCache = Mutex<HashMap<(usize, u64), Arc<GaussRule>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `m`-point rule for `∫_0^∞ f(x) x^β e^{-x} dx`.
pub fn gauss_laguerre_rule(m: usize, beta: f64) -> Result<Arc<GaussRule>> {
    if m == 0 {
        return Err(param("m", "rule size must be positive"));
    }
    if !(beta > -1.0) {
        return Err(param("beta", format!("need beta > -1, got {beta}")));
    }
    let key = (m, beta.to_bits());
    if let Some(rule) = cache().lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let diag: Vec<f64> = (0..m).map(|i| 2.0 * i as f64 + beta + 1.0).collect();
    let off: Vec<f64> = (1..m)
        .map(|i| (i as f64 * (i as f64 + beta)).sqrt())
        .collect();
    let rule = Arc::new(golub_welsch(&diag, &off, gamma_value(beta + 1.0)?));
    cache().lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// `m`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_rule(m: usize) -> Result<Arc<GaussRule>> {
    if m == 0 {
        return Err(param("m", "rule size must be positive"));
    }
    // beta = NaN never collides with a Laguerre key
    let key = (m, f64::NAN.to_bits());
    if let Some(rule) = cache().lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let diag = vec![0.0; m];
    let off: Vec<f64> = (1..m)
        .map(|i| {
            let i = i as f64;
            i / (4.0 * i * i - 1.0).sqrt()
        })
        .collect();
    let rule = Arc::new(golub_welsch(&diag, &off, 2.0));
    cache().lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureMethod {
    GaussLaguerre,
    TanhSinh,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureOutcome {
    pub value: f64,
    pub method: QuadratureMethod,
    /// Rule size (Gauss-Laguerre) or refinement level (tanh-sinh) accepted.
    pub size: usize,
    /// Difference between the last two refinements.
    pub last_change: f64,
    pub converged: bool,
}

/// Several integrals sharing one set of nodes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VecQuadratureOutcome {
    pub values: Vec<f64>,
    pub last_changes: Vec<f64>,
    pub method: QuadratureMethod,
    pub size: usize,
    pub converged: bool,
}

impl VecQuadratureOutcome {
    pub fn component(&self, i: usize) -> QuadratureOutcome {
        QuadratureOutcome {
            value: self.values[i],
            method: self.method,
            size: self.size,
            last_change: self.last_changes[i],
            converged: self.converged,
        }
    }

    fn worst_ratio(&self, scales: &[f64]) -> f64 {
        self.last_changes
            .iter()
            .zip(&self.values)
            .zip(scales)
            .map(|((d, v), s)| d / v.abs().max(*s))
            .fold(0.0, f64::max)
    }
}

const MIN_NODES: usize = 16;
const MAX_NODES: usize = 512;

fn settled(prev: &[f64], cur: &[f64], tol: f64, scales: &[f64]) -> (Vec<f64>, bool) {
    let changes: Vec<f64> = prev.iter().zip(cur).map(|(a, b)| (a - b).abs()).collect();
    let ok = changes
        .iter()
        .zip(cur)
        .zip(scales)
        .all(|((d, v), s)| *d <= tol * v.abs().max(*s));
    (changes, ok)
}

fn apply_vec(rule: &GaussRule, f: &impl Fn(f64, &mut [f64]), dim: usize) -> Vec<f64> {
    let mut acc = vec![0.0; dim];
    let mut buf = vec![0.0; dim];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        f(x, &mut buf);
        for (a, b) in acc.iter_mut().zip(&buf) {
            *a += w * b;
        }
    }
    acc
}

/// `∫_0^∞ f(x) x^β e^{-x} dx` by Gauss-Laguerre rules of doubling size,
/// accepting once two successive values differ by at most
/// `tol * max(|value|, scale)`. Falls back to tanh-sinh on `[0, R]` when
/// the rules do not settle; `growth` bounds the polynomial growth of `f`
/// and sets `R`.
pub fn integrate_half_line(
    f: impl Fn(f64) -> f64,
    beta: f64,
    tol: f64,
    scale: f64,
    growth: f64,
) -> Result<QuadratureOutcome> {
    let out = integrate_half_line_vec(
        |x, v: &mut [f64]| v[0] = f(x),
        1,
        beta,
        tol,
        &[scale],
        growth,
    )?;
    Ok(out.component(0))
}

/// [`integrate_half_line`] for `dim` integrands evaluated together; `f`
/// writes the integrand values at `x` into its slice. Every component must
/// settle before a refinement is accepted.
pub fn integrate_half_line_vec(
    f: impl Fn(f64, &mut [f64]),
    dim: usize,
    beta: f64,
    tol: f64,
    scales: &[f64],
    growth: f64,
) -> Result<VecQuadratureOutcome> {
    let mut m = MIN_NODES;
    let mut prev = apply_vec(&*gauss_laguerre_rule(m, beta)?, &f, dim);
    let mut last = None;
    while m < MAX_NODES {
        m *= 2;
        let values = apply_vec(&*gauss_laguerre_rule(m, beta)?, &f, dim);
        let (changes, ok) = settled(&prev, &values, tol, scales);
        let out = VecQuadratureOutcome {
            values: values.clone(),
            last_changes: changes,
            method: QuadratureMethod::GaussLaguerre,
            size: m,
            converged: ok,
        };
        if ok {
            return Ok(out);
        }
        last = Some(out);
        prev = values;
    }
    let last = last.expect("at least one refinement");
    let fallback = tanh_sinh_half_line_vec(&f, dim, beta, tol, scales, growth)?;
    if fallback.converged || fallback.worst_ratio(scales) < last.worst_ratio(scales) {
        Ok(fallback)
    } else {
        Ok(last)
    }
}

/// Tanh-sinh sum over `[a, b]` with step `h`, added into `acc`. The weight
/// `x^β e^{-x}` is applied here, with the distance to the nearer endpoint
/// computed without cancellation.
fn tanh_sinh_panel(
    g: &impl Fn(f64, &mut [f64]),
    beta: f64,
    a: f64,
    b: f64,
    h: f64,
    acc: &mut [f64],
    buf: &mut [f64],
) {
    let half = 0.5 * (b - a);
    let kmax = (6.5 / h) as i64;
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let w = h * half * FRAC_PI_2 * t.cosh() / (cu * cu);
        let e = (-2.0 * u.abs()).exp();
        let delta = 2.0 * e / (1.0 + e);
        let x = if t < 0.0 {
            a + half * delta
        } else {
            b - half * delta
        };
        if x <= 0.0 || w == 0.0 {
            continue;
        }
        let ww = w * (beta * x.ln() - x).exp();
        if ww == 0.0 {
            continue;
        }
        g(x, buf);
        for (s, v) in acc.iter_mut().zip(buf.iter()) {
            *s += ww * v;
        }
    }
}

/// `∫_0^R f(x) x^β e^{-x} dx` with tanh-sinh on unit panels, refining the
/// step until two levels agree to `tol * max(|value|, scale)`.
pub fn tanh_sinh_half_line(
    f: impl Fn(f64) -> f64,
    beta: f64,
    tol: f64,
    scale: f64,
    growth: f64,
) -> Result<QuadratureOutcome> {
    let out = tanh_sinh_half_line_vec(
        |x, v: &mut [f64]| v[0] = f(x),
        1,
        beta,
        tol,
        &[scale],
        growth,
    )?;
    Ok(out.component(0))
}

pub fn tanh_sinh_half_line_vec(
    f: impl Fn(f64, &mut [f64]),
    dim: usize,
    beta: f64,
    tol: f64,
    scales: &[f64],
    growth: f64,
) -> Result<VecQuadratureOutcome> {
    if !(beta > -1.0) {
        return Err(param("beta", format!("need beta > -1, got {beta}")));
    }
    let r = truncation_radius(growth + beta.max(0.0));
    let panels = r.ceil() as usize;
    let total = |h: f64| -> Vec<f64> {
        let mut acc = vec![0.0; dim];
        let mut buf = vec![0.0; dim];
        for j in 0..panels {
            tanh_sinh_panel(&f, beta, j as f64, (j + 1) as f64, h, &mut acc, &mut buf);
        }
        acc
    };
    let mut h = 0.5;
    let mut prev = total(h);
    let mut out = None;
    for level in 1..=7 {
        h *= 0.5;
        let values = total(h);
        let (changes, ok) = settled(&prev, &values, tol, scales);
        let o = VecQuadratureOutcome {
            values: values.clone(),
            last_changes: changes,
            method: QuadratureMethod::TanhSinh,
            size: level,
            converged: ok,
        };
        if ok {
            return Ok(o);
        }
        out = Some(o);
        prev = values;
    }
    Ok(out.expect("at least one level"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_and_two_point_rules() {
        let r = gauss_laguerre_rule(1, 0.0).unwrap();
        assert!((r.nodes[0] - 1.0).abs() < 1e-14 && (r.weights[0] - 1.0).abs() < 1e-14);
        let r = gauss_laguerre_rule(2, 0.0).unwrap();
        let s = 2f64.sqrt();
        assert!((r.nodes[0] - (2.0 - s)).abs() < 1e-14);
        assert!((r.nodes[1] - (2.0 + s)).abs() < 1e-14);
        assert!((r.weights[0] - (2.0 + s) / 4.0).abs() < 1e-14);
        assert!((r.weights[1] - (2.0 - s) / 4.0).abs() < 1e-14);
        assert!(gauss_laguerre_rule(3, -1.0).is_err());
        assert!(gauss_laguerre_rule(0, 0.0).is_err());
    }

    #[test]
    fn moments_exact_to_degree_2m_minus_1() {
        for &beta in &[0.0, -0.5, 1.0 / 3.0, 2.75] {
            for &m in &[3usize, 8, 16] {
                let r = gauss_laguerre_rule(m, beta).unwrap();
                assert!(r.weights.iter().all(|&w| w > 0.0));
                assert!(r.nodes.windows(2).all(|p| p[0] < p[1]) && r.nodes[0] > 0.0);
                for j in 0..2 * m as i32 {
                    let exact = gamma_value(beta + j as f64 + 1.0).unwrap();
                    let got = r.apply(|x| x.powi(j));
                    assert!(
                        (got - exact).abs() <= 1e-12 * exact,
                        "beta {beta} m {m} j {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre_rule(20).unwrap();
        for j in 0..40 {
            let exact = if j % 2 == 0 {
                2.0 / (j as f64 + 1.0)
            } else {
                0.0
            };
            assert!((r.apply(|x| x.powi(j)) - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn rational_integrand_converges() {
        // ∫ x^{1/2} e^{-x} / (1 + x)^2
        let f = |x: f64| 1.0 / ((1.0 + x) * (1.0 + x));
        let gl = integrate_half_line(f, 0.5, 1e-11, 0.0, 0.0).unwrap();
        let ts = tanh_sinh_half_line(f, 0.5, 1e-11, 0.0, 0.0).unwrap();
        assert!(ts.converged);
        assert!((gl.value - ts.value).abs() < 1e-10 * ts.value);
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularity() {
        // ∫ x^{-3/4} e^{-x} = Γ(1/4)
        let out = tanh_sinh_half_line(|_| 1.0, -0.75, 1e-12, 0.0, 0.0).unwrap();
        let exact = gamma_value(0.25).unwrap();
        assert!(out.converged);
        assert!((out.value - exact).abs() < 1e-11 * exact);
    }
}
