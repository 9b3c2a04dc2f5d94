//! Explicit constants entering the kinetic-energy estimates.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::quad;
use crate::specfun::gamma_fn;

/// The Lieb–Thirring-type constant used throughout.
pub const LT_CONSTANT: f64 = 1.456;

fn check_p(op: &'static str, p: f64) -> Result<()> {
    if !(1.0..=2.0).contains(&p) {
        return Err(domain(op, format!("p must lie in [1, 2], got {p}")));
    }
    Ok(())
}

/// Sharp constant `C_p` of Lieb's inequality, from its Gamma-function closed form.
pub fn lieb_constant(p: f64) -> Result<f64> {
    check_p("lieb_constant", p)?;
    let sp = PI.sqrt();
    let x = 3.0 / p;
    let front = 0.75 * sp * (4.0 * PI).powf(-p / 3.0) / p.powf(1.0 + 0.5 * p);
    let kinetic = (15.0 * sp / 8.0 * gamma_fn(x)? / gamma_fn(3.5 + x)?).powf(0.5 * p);
    let moment = gamma_fn(x + 1.0)? / gamma_fn(x + 3.5)?;
    let mass = 0.25 * sp * gamma_fn(x + 1.0)? / gamma_fn(x + 2.5)?;
    Ok(front * kinetic * moment / mass.powf(1.0 + 5.0 * p / 6.0))
}

/// `C_p` assembled from the three radial integrals of the optimizer
/// `f_p(x) = (1 − |x|^p)^{3/2}` on the unit ball, evaluated by quadrature.
pub fn lieb_constant_integral(p: f64) -> Result<f64> {
    check_p("lieb_constant_integral", p)?;
    let tol = 1e-14;
    let mass = quad::adaptive(&|r: f64| r * r * (1.0 - r.powf(p)).powf(1.5), 0.0, 1.0, tol, 0.0)?;
    let moment = quad::adaptive(&|r: f64| r.powf(2.0 + p) * (1.0 - r.powf(p)).powf(1.5), 0.0, 1.0, tol, 0.0)?;
    let kinetic = quad::adaptive(&|r: f64| r * r * (1.0 - r.powf(p)).powf(2.5), 0.0, 1.0, tol, 0.0)?;
    Ok((4.0 * PI).powf(-p / 3.0) * kinetic.powf(0.5 * p) * moment / mass.powf(1.0 + 5.0 * p / 6.0))
}

/// `κ = √5 (2·1.456/(9π²))^{1/3}`.
pub fn kappa() -> f64 {
    5f64.sqrt() * (2.0 * LT_CONSTANT / (9.0 * PI * PI)).cbrt()
}

/// `K_3 = (3/5)(1.456/(6π²))^{−2/3}`.
pub fn kinetic_k3() -> f64 {
    0.6 * (LT_CONSTANT / (6.0 * PI * PI)).powf(-2.0 / 3.0)
}

/// Hydrogenic coefficient `½ u^{2/3} 3^{1/3}` for `u` spin states.
pub fn ground_state_coeff(u: u32) -> Result<f64> {
    if u < 1 {
        return Err(domain("ground_state_coeff", "u must be >= 1"));
    }
    Ok(0.5 * (u as f64).powf(2.0 / 3.0) * 3f64.cbrt())
}

/// `(s² − 1)/8 · C_{s−1}^{−1/(s−1)} · κ` for `s ∈ [2, 3]`.
pub fn kinetic_correction_coeff(s: f64) -> Result<f64> {
    if !(2.0..=3.0).contains(&s) {
        return Err(domain("kinetic_correction_coeff", format!("s must lie in [2, 3], got {s}")));
    }
    let p = s - 1.0;
    Ok((s * s - 1.0) / 8.0 * lieb_constant(p)?.powf(-1.0 / p) * kappa())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub p: f64,
    pub c_p: f64,
    /// `C_p^{−1/p}`.
    pub c_p_inv_root: f64,
    pub kappa: f64,
    pub k3: f64,
    pub u: u32,
    pub a_hyd: f64,
    /// `C_2^{−1/2} κ`.
    pub c_composite: f64,
    /// `(3/8) C_1^{−1} κ`.
    pub lambda_s2: f64,
}

pub fn constants_report(p: f64, u: u32) -> Result<ConstantsReport> {
    let c_p = lieb_constant(p)?;
    Ok(ConstantsReport {
        p,
        c_p,
        c_p_inv_root: c_p.powf(-1.0 / p),
        kappa: kappa(),
        k3: kinetic_k3(),
        u,
        a_hyd: ground_state_coeff(u)?,
        c_composite: kinetic_correction_coeff(3.0)?,
        lambda_s2: kinetic_correction_coeff(2.0)?,
    })
}
