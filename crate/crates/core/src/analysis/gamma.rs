use crate::error::{param, Result};

/// `Γ(a)` for `a > 0`.
pub fn gamma_value(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(param("a", format!("gamma_value needs a > 0, got {a}")));
    }
    Ok(statrs::function::gamma::gamma(a))
}

/// `Γ(a)` for any real `a` that is not a pole, using the reflection formula
/// below zero.
pub fn gamma_signed(a: f64) -> Result<f64> {
    if a <= 0.0 && a == a.floor() {
        return Err(param("a", format!("{a} is a pole of the gamma function")));
    }
    Ok(statrs::function::gamma::gamma(a))
}
