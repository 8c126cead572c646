//! Momentum-space quadrature, used to check the closed forms.
//!
//! Nothing here calls into `greens` or the Q-function. The integrals only
//! depend on p⊥² and p_z², so they are taken over (p, cosθ) with the
//! azimuth factored out, and p = t/(1−t) maps the half line onto [0, 1).

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extension::normalization;
use crate::model::{Spin, SystemParams};
use crate::numeric::golden_max;
use crate::quadrature::{integrate, Limits};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

pub const MAX_OUTER_EVALUATIONS: usize = 60_000;
pub const MAX_INNER_EVALUATIONS: usize = 20_000;

/// Σ from the lower dispersion branch p² − √(α²p⊥² + β²) at p_z = 0.
pub fn sigma_numeric(params: &SystemParams) -> f64 {
    let (a, b) = (params.alpha(), params.beta());
    let branch = |p: f64| p * p - (a * a * p * p + b * b).sqrt();
    let mut best = branch(0.0);
    if a > 0.0 {
        let (_, v) = golden_max(&|p| -branch(p), 0.0, a, 1e-12);
        best = best.min(-v);
    }
    -best
}

/// (p² − z − sβ)/D − 1/(p² − z), written as (X − sβa)/(a(a² − X)) with
/// a = p² − z and X = α²p⊥² + β² so large momenta do not cancel.
pub fn gs_integrand(
    params: &SystemParams,
    s: Spin,
    z: Complex64,
    p_perp: f64,
    p_z: f64,
) -> Complex64 {
    let (al, be) = (params.alpha(), params.beta());
    let a = Complex64::new(p_perp * p_perp + p_z * p_z, 0.0) - z;
    let x = al * al * p_perp * p_perp + be * be;
    (x - s.sign() * be * a) / (a * (a * a - x))
}

/// |(p² − z − sβ)/D|² + α²p⊥²/|D|².
pub fn phi_integrand(params: &SystemParams, s: Spin, z: Complex64, p_perp: f64, p_z: f64) -> f64 {
    let (al, be) = (params.alpha(), params.beta());
    let a = Complex64::new(p_perp * p_perp + p_z * p_z, 0.0) - z;
    let d = a * a - (al * al * p_perp * p_perp + be * be);
    let d2 = d.norm_sqr();
    ((a - s.sign() * be).norm_sqr() + al * al * p_perp * p_perp) / d2
}

fn check_domain(params: &SystemParams, z: Complex64, tol: f64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite energy {z}")));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidParams(format!(
            "tolerance must be positive (got {tol})"
        )));
    }
    let sigma = sigma_numeric(params);
    if z.im == 0.0 && z.re >= -sigma {
        return Err(Error::Domain(format!(
            "z = {} lies on the continuous spectrum [{}, inf); the momentum integral is singular there",
            z.re, -sigma
        )));
    }
    Ok(())
}

// (2π)⁻³ ∫ f d³p = (2π²)⁻¹ ∫₀^∞ p² ∫₀¹ f(p√(1−u²), pu) du dp.
fn volume_integral<F>(f: F, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64, f64) -> Complex64,
{
    let evals = Cell::new(0usize);
    let inner_err = Cell::new(0.0f64);
    let inner_failed = Cell::new(false);
    let outer = |t: f64| {
        let om = 1.0 - t;
        let p = t / om;
        let weight = p * p / (om * om) / (2.0 * PI * PI);
        if weight == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let lim = Limits {
            abs_tol: 0.01 * tol / weight,
            rel_tol: 1e-13,
            max_evaluations: MAX_INNER_EVALUATIONS,
        };
        let e = integrate(|u| f(p * (1.0 - u * u).sqrt(), p * u), 0.0, 1.0, &lim);
        evals.set(evals.get() + e.evaluations);
        inner_err.set(inner_err.get().max(weight * e.error));
        if !e.converged {
            inner_failed.set(true);
        }
        e.value * weight
    };
    let lim = Limits {
        abs_tol: tol,
        rel_tol: tol,
        max_evaluations: MAX_OUTER_EVALUATIONS,
    };
    let e = integrate(outer, 0.0, 1.0, &lim);
    let error = e.error + inner_err.get();
    let requested = tol * (1.0 + e.value.norm());
    if !e.converged || inner_failed.get() || error > requested {
        return Err(Error::NotConverged {
            requested,
            estimate_re: e.value.re,
            estimate_im: e.value.im,
            error,
        });
    }
    Ok(QuadratureResult {
        value: e.value,
        abs_error_estimate: error,
        evaluations: evals.get(),
    })
}

/// Quadrature estimate of G_sʳᵉⁿ(0; z).
pub fn gs_ren_quadrature(
    params: &SystemParams,
    s: Spin,
    z: Complex64,
    tol: f64,
) -> Result<QuadratureResult> {
    check_domain(params, z, tol)?;
    if params.alpha() == 0.0 && params.beta() == 0.0 {
        return Ok(QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            evaluations: 0,
        });
    }
    volume_integral(|pp, pz| gs_integrand(params, s, z, pp, pz), tol)
}

/// (2π)⁻³ ∫ |Φ̂_s(p; z)|² d³p without the normalization factor.
pub fn phi_integral_quadrature(
    params: &SystemParams,
    s: Spin,
    z: Complex64,
    tol: f64,
) -> Result<QuadratureResult> {
    check_domain(params, z, tol)?;
    volume_integral(
        |pp, pz| Complex64::new(phi_integrand(params, s, z, pp, pz), 0.0),
        tol,
    )
}

/// ‖Φ_s(z)‖² by quadrature. Only the constant N_s is taken from the closed
/// form, since it is what the orthonormality check is about.
pub fn phi_norm_quadrature(
    params: &SystemParams,
    s: Spin,
    z: Complex64,
    tol: f64,
) -> Result<QuadratureResult> {
    let n2 = normalization(params)?.n(s).powi(2);
    let raw = phi_integral_quadrature(params, s, z, tol / n2)?;
    Ok(QuadratureResult {
        value: raw.value * n2,
        abs_error_estimate: raw.abs_error_estimate * n2,
        evaluations: raw.evaluations,
    })
}
