use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::quadrature::gauss_legendre_rule;
use crate::error::{param, Error, Result};
use crate::exactnum::{horner_complex, to_f64, BigRational, RationalPolynomial};
use crate::exceptional::{ExceptionalFamily, PairF};

/// Geometry and discretization of the truncated path `Λ_r`: the ray
/// `t + ir` from `truncation_r` in to `ir`, the left semicircle `|z| = r`
/// down to `-ir`, and the ray `t - ir` back out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourSpec {
    pub r: f64,
    pub truncation_r: f64,
    /// Gauss-Legendre panels on each ray.
    pub ray_steps: usize,
    /// Gauss-Legendre panels on the semicircle.
    pub arc_steps: usize,
}

const PANEL_POINTS: usize = 20;

impl ContourSpec {
    /// Panels no wider than `min(1, r, clearance)`.
    pub fn new(r: f64, truncation_r: f64, clearance: f64) -> Result<Self> {
        if !(r > 0.0) || !(truncation_r > r) {
            return Err(param(
                "r",
                format!("need 0 < r < truncation_R, got r = {r}, R = {truncation_r}"),
            ));
        }
        let width = 1f64.min(r).min(clearance.max(1e-3));
        Ok(Self {
            r,
            truncation_r,
            ray_steps: (truncation_r / width).ceil() as usize,
            arc_steps: 16.max((PI * r / width).ceil() as usize),
        })
    }
}

/// `exp(a (ln|z| + i arg z) - z)` with `arg z ∈ (0, 2π)`.
fn weight_factor(z: Complex64, a: f64) -> Complex64 {
    let mut arg = z.im.atan2(z.re);
    if arg < 0.0 {
        arg += 2.0 * PI;
    }
    (Complex64::new(z.norm().ln(), arg) * a - z).exp()
}

/// `z^a` on the plane cut along `[0, ∞)`, `log i = iπ/2`.
pub fn branch_pow(z: Complex64, a: f64) -> Complex64 {
    weight_factor(z, a) * z.exp()
}

/// `e^{2πiα} - 1`.
pub fn contour_prefactor(alpha: f64) -> Complex64 {
    Complex64::new(0.0, 2.0 * PI * alpha).exp() - 1.0
}

/// The points where the path is sampled: `(z, dz weight)` pairs of the
/// composite rule, in path order.
fn path_nodes(spec: &ContourSpec) -> Result<Vec<(Complex64, Complex64)>> {
    let rule = gauss_legendre_rule(PANEL_POINTS)?;
    let r = spec.r;
    let big = spec.truncation_r;
    let mut out = Vec::with_capacity(PANEL_POINTS * (2 * spec.ray_steps + spec.arc_steps));
    let h = big / spec.ray_steps as f64;
    // upper ray, traversed inward
    for j in (0..spec.ray_steps).rev() {
        let a = j as f64 * h;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights).rev() {
            let t = a + 0.5 * h * (x + 1.0);
            out.push((Complex64::new(t, r), Complex64::new(-0.5 * h * w, 0.0)));
        }
    }
    let dth = PI / spec.arc_steps as f64;
    for j in 0..spec.arc_steps {
        let a = FRAC_PI_2 + j as f64 * dth;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let th = a + 0.5 * dth * (x + 1.0);
            let z = Complex64::from_polar(r, th);
            out.push((z, Complex64::i() * z * (0.5 * dth * w)));
        }
    }
    for j in 0..spec.ray_steps {
        let a = j as f64 * h;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let t = a + 0.5 * h * (x + 1.0);
            out.push((Complex64::new(t, -r), Complex64::new(0.5 * h * w, 0.0)));
        }
    }
    Ok(out)
}

/// `∫_{Λ_r} f(z) z^a e^{-z} dz`, truncated at `Re z = spec.truncation_r`.
pub fn contour_integral(
    f: impl Fn(Complex64) -> Complex64,
    a: f64,
    spec: &ContourSpec,
) -> Result<Complex64> {
    Ok(path_nodes(spec)?
        .into_iter()
        .map(|(z, dz)| f(z) * weight_factor(z, a) * dz)
        .sum())
}

/// Panel endpoints of both rays and the semicircle.
fn panel_endpoints(spec: &ContourSpec) -> Vec<Complex64> {
    let h = spec.truncation_r / spec.ray_steps as f64;
    let dth = PI / spec.arc_steps as f64;
    let rays = (0..=spec.ray_steps).flat_map(|j| {
        let t = j as f64 * h;
        [Complex64::new(t, spec.r), Complex64::new(t, -spec.r)]
    });
    let arc =
        (0..=spec.arc_steps).map(|j| Complex64::from_polar(spec.r, FRAC_PI_2 + j as f64 * dth));
    rays.chain(arc).collect()
}

/// Smallest `|p(z)| / sum |c_j| |z|^j` over the quadrature nodes and panel
/// endpoints of the path, together with the raw modulus there.
pub fn path_min_modulus(p: &RationalPolynomial, spec: &ContourSpec) -> Result<(f64, f64)> {
    let c = p.to_f64_coeffs();
    let abs: Vec<f64> = c.iter().map(|x| x.abs()).collect();
    let mut best = (f64::INFINITY, f64::INFINITY);
    let samples = path_nodes(spec)?.into_iter().map(|n| n.0);
    for z in samples.chain(panel_endpoints(spec)) {
        let v = horner_complex(&c, z).norm();
        let rel = v / horner_complex(&abs, Complex64::new(z.norm(), 0.0)).re;
        if rel < best.0 {
            best = (rel, v);
        }
    }
    Ok(best)
}

/// Smallest `R >= max(50, 2d + 10)`, in steps of 10, with
/// `R^d e^{-R} < e^{-42}`.
pub fn truncation_radius(d: f64) -> f64 {
    let mut r = 50f64.max(2.0 * d + 10.0);
    while d * r.ln() - r > -42.0 {
        r += 10.0;
    }
    r
}

/// All complex roots, with multiplicity, from the companion matrix,
/// each polished by a few Newton steps.
pub fn polynomial_roots(p: &RationalPolynomial) -> Vec<Complex64> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let zeros = p
        .coeffs()
        .iter()
        .take_while(|c| num_traits::Zero::is_zero(*c))
        .count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let n = deg - zeros;
    if n == 0 {
        return roots;
    }
    let lead = p.leading().unwrap();
    let monic: Vec<f64> = p.coeffs()[zeros..]
        .iter()
        .map(|c| to_f64(&(c / lead)))
        .collect();
    let mut comp = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        comp[(i, n - 1)] = -monic[i];
    }
    let dmonic: Vec<f64> = (1..monic.len()).map(|j| j as f64 * monic[j]).collect();
    for z0 in comp.complex_eigenvalues().iter() {
        let mut z = *z0;
        let mut fz = horner_complex(&monic, z);
        for _ in 0..8 {
            let d = horner_complex(&dmonic, z);
            if d.norm() == 0.0 {
                break;
            }
            let cand = z - fz / d;
            let fc = horner_complex(&monic, cand);
            if fc.norm() >= fz.norm() {
                break;
            }
            z = cand;
            fz = fc;
        }
        roots.push(z);
    }
    roots
}

/// Distance from `z` to `Λ_r` (rays extended to infinity).
pub fn path_clearance(z: Complex64, r: f64) -> f64 {
    if z.re >= 0.0 {
        (z.im - r).abs().min((z.im + r).abs())
    } else {
        (z.norm() - r).abs()
    }
}

/// The chosen radius and the smallest distance from any root of any
/// `Ω_H` (`H` a subpair) to `Λ_r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusChoice {
    pub r: f64,
    pub clearance: f64,
}

const RADIUS_CAP: f64 = 0.5;
const RADIUS_CANDIDATES: usize = 64;

/// Scans `r = j/128`, `j = 1..64`. Each candidate is scored by its
/// clearance from the roots of `Ω_H^α` over every subpair `H` of `F`; the
/// largest `r` scoring at least half the best clearance wins.
pub fn find_radius(pair: &PairF, alpha: &BigRational) -> Result<RadiusChoice> {
    let mut roots = Vec::new();
    for h in pair.subpairs() {
        let fam = ExceptionalFamily::new(&h, alpha)?;
        roots.extend(polynomial_roots(fam.omega()?));
    }
    let score = |r: f64| {
        roots
            .iter()
            .map(|&z| path_clearance(z, r))
            .fold(f64::INFINITY, f64::min)
    };
    let candidates: Vec<(f64, f64)> = (1..=RADIUS_CANDIDATES)
        .map(|j| {
            let r = RADIUS_CAP * j as f64 / RADIUS_CANDIDATES as f64;
            (r, score(r))
        })
        .collect();
    let best = candidates.iter().map(|c| c.1).fold(0.0, f64::max);
    if best < 1e-6 {
        return Err(Error::Search(format!(
            "every radius in (0, {RADIUS_CAP}] passes within {best:e} of a root; roots: {:?}",
            roots.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>()
        )));
    }
    let (r, clearance) = candidates
        .into_iter()
        .rev()
        .find(|c| c.1 >= 0.5 * best)
        .unwrap();
    Ok(RadiusChoice { r, clearance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::gamma::gamma_value;
    use crate::exactnum::{int, rat};

    fn pair(a: &[u32], b: &[u32]) -> PairF {
        PairF::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn branch_conventions() {
        let i = Complex64::i();
        let s = branch_pow(i, 0.5);
        let expect = Complex64::from_polar(1.0, PI / 4.0);
        assert!((s - expect).norm() < 1e-15);
        // just below the cut the argument is close to 2π
        let below = branch_pow(Complex64::new(4.0, -1e-12), 0.5);
        assert!((below - Complex64::new(-2.0, 0.0)).norm() < 1e-9);
        assert!((contour_prefactor(0.5) - Complex64::new(-2.0, 0.0)).norm() < 1e-15);
        assert!(contour_prefactor(2.0).norm() < 1e-14);
    }

    #[test]
    fn classical_moment_on_the_contour() {
        // ∫_{Λ_r} z^{1/2} e^{-z} dz = (e^{iπ} - 1) Γ(3/2)
        let spec = ContourSpec::new(0.5, truncation_radius(0.5), 1.0).unwrap();
        let v = contour_integral(|_| Complex64::new(1.0, 0.0), 0.5, &spec).unwrap();
        let expect = -2.0 * gamma_value(1.5).unwrap();
        assert!((v - expect).norm() < 1e-10, "{v}");
    }

    #[test]
    fn entire_integrand_vanishes_for_integer_exponent() {
        let spec = ContourSpec::new(0.25, 60.0, 1.0).unwrap();
        let v = contour_integral(|z| z * z + 1.0, 3.0, &spec).unwrap();
        assert!(v.norm() < 1e-10);
    }

    #[test]
    fn roots_of_known_polynomials() {
        let p = RationalPolynomial::from_ints(&[2, -3, 1]);
        let mut r: Vec<f64> = polynomial_roots(&p).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] - 1.0).abs() < 1e-13 && (r[1] - 2.0).abs() < 1e-13);
        let q = RationalPolynomial::from_ints(&[0, 0, 1, 0, 1]);
        let r = polynomial_roots(&q);
        assert_eq!(r.len(), 4);
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r
            .iter()
            .filter(|z| z.norm() > 0.0)
            .all(|z| (z.im.abs() - 1.0).abs() < 1e-13));
        assert!(polynomial_roots(&RationalPolynomial::from_ints(&[3])).is_empty());
    }

    #[test]
    fn clearance_geometry() {
        assert!((path_clearance(Complex64::new(1.5, 0.0), 0.5) - 0.5).abs() < 1e-15);
        assert!((path_clearance(Complex64::new(-1.5, 0.0), 0.5) - 1.0).abs() < 1e-15);
        assert!((path_clearance(Complex64::new(3.0, 0.75), 0.5) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn radius_examples() {
        let half = rat(1, 2);
        assert_eq!(find_radius(&PairF::empty(), &half).unwrap().r, 0.5);
        let c = find_radius(&pair(&[1], &[]), &half).unwrap();
        assert!(c.r < 1.5 && c.clearance > 0.0);
        let c = find_radius(&pair(&[], &[1]), &half).unwrap();
        assert!(c.r < 1.5 && (1.5 - c.r - c.clearance).abs() < 1e-12);
        // deterministic
        assert_eq!(
            find_radius(&pair(&[1], &[1]), &half),
            find_radius(&pair(&[1], &[1]), &half)
        );
    }

    #[test]
    fn root_just_left_of_origin() {
        // Ω = x + α + 1 for F = (∅, {1}); the root sits at -1/1000
        let alpha = &int(-1) + rat(1, 1000);
        let c = find_radius(&pair(&[], &[1]), &alpha).unwrap();
        assert_eq!(c.r, 0.5);
        assert!((c.clearance - 0.499).abs() < 1e-9);
    }

    #[test]
    fn truncation_radius_grows_with_degree() {
        assert_eq!(truncation_radius(0.0), 50.0);
        assert!(truncation_radius(20.0) >= 50.0);
        let r = truncation_radius(40.0);
        assert!(40.0 * r.ln() - r <= -42.0);
    }
}
