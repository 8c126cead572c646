use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Root E < −α²/4 of ω + √(−E) = (α/2)·artanh(α/(2√(−E))), the β → 0 limit
/// of the secular equation for a coupling proportional to the identity.
pub fn symmetric_small_beta_eigenvalue(alpha: f64, omega: f64) -> Result<f64> {
    if !(alpha >= 0.0) || !alpha.is_finite() || !omega.is_finite() {
        return Err(Error::InvalidParams(format!(
            "alpha must be finite and >= 0, omega finite (alpha={alpha}, omega={omega})"
        )));
    }
    if alpha == 0.0 {
        return if omega < 0.0 {
            Ok(-omega * omega)
        } else {
            Err(Error::NoSolution(format!(
                "alpha = 0 needs omega < 0 (omega = {omega})"
            )))
        };
    }
    // g(u) = ω + u − (α/2)artanh(α/(2u)) increases from −∞ at u = α/2⁺ to +∞
    let g = |u: f64| omega + u - 0.5 * alpha * (0.5 * alpha / u).atanh();
    let mut lo = 0.5 * alpha;
    let mut hi = lo.max(1.0) + omega.abs() + alpha;
    let mut guard = 0;
    while g(hi) <= 0.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 200 || !hi.is_finite() {
            return Err(Error::NoSolution(format!(
                "no root for alpha={alpha}, omega={omega}: g({hi}) = {}",
                g(hi)
            )));
        }
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = 0.5 * (lo + hi);
    Ok(-u * u)
}

/// (2√2 − arcosh 3)/(2√2 + π): the identity coupling Γ = v·I that makes
/// both effective couplings vanish at α = 2, β → 0. A scalar coupling
/// Γ = −1/c − r then tends to it as |c| → ∞ with r = −v.
pub fn r_map_constant() -> f64 {
    let s = 2.0 * 2f64.sqrt();
    (s - 3f64.acosh()) / (s + PI)
}
