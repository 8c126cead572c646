//! Closed-form values of the free Green function at the origin.
//!
//! Every square root and logarithm is principal. Inputs with a vanishing
//! imaginary part are canonicalized to `+0.0` first so that values on the
//! real axis never depend on how the caller produced a negative zero.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{threshold_sigma, Spin, SystemParams};

/// Relative guard band around `E = -Σ` inside which the artanh pole is reported.
pub const POLE_GUARD: f64 = 1e-10;

/// Replace a negative-zero imaginary part by `+0.0`.
#[inline]
pub fn canon(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Principal square root with `Re ≥ 0`; the negative real axis maps to `+i·√|x|`.
#[inline]
pub fn csqrt(z: Complex64) -> Complex64 {
    canon(z).sqrt()
}

/// Inverse hyperbolic tangent with the cut convention used throughout:
/// on `w > 1` the value is `r − iπ/2`, on `w < −1` it is `−r + iπ/2`.
pub fn artanh_branch(w: Complex64) -> Result<Complex64> {
    let w = canon(w);
    if w.im == 0.0 && w.re.abs() == 1.0 {
        return Err(Error::Domain(format!("artanh is singular at w = {}", w.re)));
    }
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::Domain(format!("artanh of non-finite argument {w}")));
    }
    if w.im == 0.0 && w.re.abs() > 1.0 {
        let x = w.re.abs();
        let r = 0.5 * ((x + 1.0) / (x - 1.0)).ln();
        let v = Complex64::new(r, -FRAC_PI_2);
        return Ok(if w.re > 0.0 { v } else { -v });
    }
    if w.norm() < 1e-3 {
        let w2 = w * w;
        let series = w * (1.0 + w2 * (1.0 / 3.0 + w2 * (1.0 / 5.0 + w2 * (1.0 / 7.0 + w2 / 9.0))));
        return Ok(series);
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(0.5 * ((one + w).ln() - (one - w).ln()))
}

/// Which part of the real axis a ξ value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiBranch {
    RealBelowMinusBeta,
    ComplexMidBand,
    PureImagAboveBeta,
    /// `z` off the real axis.
    OffAxis,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiValue {
    pub value: Complex64,
    pub branch_note: XiBranch,
}

// w = √(1 − (β/z)²), shared by ξ and the second root in G₂ʳᵉⁿ so both sit on
// the same side of every cut.
fn w_root(beta: f64, z: Complex64) -> Complex64 {
    let r = beta / z;
    csqrt(Complex64::new(1.0, 0.0) - r * r)
}

/// ξ(z) = (1/β)√((−z/2)(1−√(1−(β/z)²))), evaluated as √(−1/(2z(1+w))),
/// which is the same number without the cancellation in `1 − w`.
pub fn xi(params: &SystemParams, z: Complex64) -> Result<XiValue> {
    let z = canon(z);
    let beta = params.beta();
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("non-finite energy {z}")));
    }
    if z.im == 0.0 && z.re == 0.0 {
        if beta == 0.0 {
            return Err(Error::Domain("xi requires E < 0 when beta = 0".into()));
        }
        // limit from E → 0⁺
        let v = Complex64::new(1.0, 1.0) / (2.0 * beta.sqrt());
        return Ok(XiValue {
            value: v,
            branch_note: XiBranch::ComplexMidBand,
        });
    }
    if beta == 0.0 && z.im == 0.0 && z.re > 0.0 {
        return Err(Error::Domain(format!(
            "xi requires E < 0 when beta = 0 (E = {})",
            z.re
        )));
    }
    let w = w_root(beta, z);
    let value = csqrt(-1.0 / (2.0 * z * (1.0 + w)));
    let branch_note = if z.im != 0.0 {
        XiBranch::OffAxis
    } else if z.re < -beta {
        XiBranch::RealBelowMinusBeta
    } else if z.re < beta {
        XiBranch::ComplexMidBand
    } else {
        XiBranch::PureImagAboveBeta
    };
    Ok(XiValue {
        value: clean_real_axis(value, branch_note, z.re),
        branch_note,
    })
}

// Zero out parts that are structurally zero on each real sub-band.
fn clean_real_axis(v: Complex64, branch: XiBranch, e: f64) -> Complex64 {
    match branch {
        XiBranch::RealBelowMinusBeta => Complex64::new(v.re, 0.0),
        XiBranch::PureImagAboveBeta => Complex64::new(0.0, v.im.abs()),
        XiBranch::ComplexMidBand => {
            let t = if e < 0.0 { -v.im.abs() } else { v.im.abs() };
            Complex64::new(v.re.abs(), t)
        }
        XiBranch::OffAxis => v,
    }
}

/// T(E) with ξ(E) = i·T(E) for E ≥ β.
pub fn t_of_e(params: &SystemParams, e: f64) -> Result<f64> {
    let beta = params.beta();
    if beta <= 0.0 {
        return Err(Error::Domain("T(E) requires beta > 0".into()));
    }
    if !(e >= beta) || !e.is_finite() {
        return Err(Error::Domain(format!("T(E) requires E >= beta (E = {e})")));
    }
    // (1/(√2β))√(E − √(E²−β²)) rewritten as 1/√(2(E + √(E²−β²)))
    let s = ((e - beta) * (e + beta)).sqrt();
    Ok(1.0 / (2.0 * (e + s)).sqrt())
}

/// Reject energies inside the guard band around the artanh pole at `−Σ`.
/// The pole exists only when α² ≥ 2β with α > 0.
pub fn check_pole(params: &SystemParams, z: Complex64) -> Result<()> {
    let (a, b) = (params.alpha(), params.beta());
    if a > 0.0 && a * a >= 2.0 * b {
        let sigma = threshold_sigma(params);
        if (z + sigma).norm() < POLE_GUARD * sigma.max(1.0) {
            return Err(Error::Pole {
                threshold: -sigma,
                at: z.re,
            });
        }
    }
    Ok(())
}

// artanh(αξ)/α with the α → 0 limit ξ.
fn artanh_over_alpha(alpha: f64, xi: Complex64) -> Result<Complex64> {
    if alpha == 0.0 {
        Ok(xi)
    } else {
        Ok(artanh_branch(alpha * xi)? / alpha)
    }
}

/// G₁(0; z).
pub fn g1_origin(params: &SystemParams, z: Complex64) -> Result<Complex64> {
    check_pole(params, z)?;
    let x = xi(params, z)?.value;
    Ok(artanh_over_alpha(params.alpha(), x)? / (4.0 * PI))
}

/// G₂ʳᵉⁿ(0; z).
pub fn g2ren_origin(params: &SystemParams, z: Complex64) -> Result<Complex64> {
    Ok(green_values(params, z)?.g2ren_origin)
}

/// G_sʳᵉⁿ(0; z) = G₂ʳᵉⁿ(0; z) − sβ·G₁(0; z).
pub fn gs_ren_origin(params: &SystemParams, s: Spin, z: Complex64) -> Result<Complex64> {
    Ok(green_values(params, z)?.gs_ren(params, s))
}

/// Directional limit of ∇ⱼG₁(x; z) as x → 0 along `direction`.
pub fn grad_g1_limit(direction: [f64; 2]) -> Result<[f64; 2]> {
    let n = direction[0].hypot(direction[1]);
    if !((n - 1.0).abs() <= 1e-12) {
        return Err(Error::Domain(format!(
            "direction must be a unit vector (norm {n})"
        )));
    }
    let k = -1.0 / (8.0 * PI);
    Ok([k * direction[0], k * direction[1]])
}

/// Both origin values at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenValues {
    pub g1_origin: Complex64,
    pub g2ren_origin: Complex64,
}

impl GreenValues {
    pub fn gs_ren(&self, params: &SystemParams, s: Spin) -> Complex64 {
        self.g2ren_origin - s.sign() * params.beta() * self.g1_origin
    }
}

pub fn green_values(params: &SystemParams, z: Complex64) -> Result<GreenValues> {
    check_pole(params, z)?;
    let z = canon(z);
    let (a, b) = (params.alpha(), params.beta());
    let x = xi(params, z)?.value;
    let at = artanh_over_alpha(a, x)?;
    let g1 = at / (4.0 * PI);

    let root_free = csqrt(-z);
    let root_b = if b == 0.0 {
        root_free
    } else if z.im == 0.0 && z.re == 0.0 {
        // limit from E → 0⁺, consistent with ξ(0)
        1.0 / (2.0 * x)
    } else {
        let w = w_root(b, z);
        csqrt((-z / 2.0) * (1.0 + w))
    };
    let g2 = (root_free - root_b) / (4.0 * PI) + a * a * at / (8.0 * PI);
    Ok(GreenValues {
        g1_origin: g1,
        g2ren_origin: g2,
    })
}
