//! Numerical and exact-analytic checks on the exceptional weight: Sturm
//! root counting, closed-form norms, Gauss-Laguerre quadrature on the real
//! axis and contour integration along the keyhole path `Λ_r`.

mod contour;
mod dd;
mod gamma;
mod gram;
mod quadrature;
mod sturm;

pub use contour::{
    branch_pow, contour_integral, contour_prefactor, find_radius, path_clearance, path_min_modulus,
    polynomial_roots, truncation_radius, ContourSpec, RadiusChoice,
};
pub use dd::DdPoly;
pub use gamma::{gamma_signed, gamma_value};
pub use gram::{
    closed_form_norm, contour_gram, default_contour_spec, real_axis_gram, real_axis_gram_matrix,
    NormResult,
};
pub use quadrature::{
    gauss_laguerre_rule, gauss_legendre_rule, integrate_half_line, integrate_half_line_vec,
    tanh_sinh_half_line, tanh_sinh_half_line_vec, GaussRule, QuadratureMethod, QuadratureOutcome,
    VecQuadratureOutcome,
};
pub use sturm::{sturm_chain, sturm_nonneg_roots};
