//! Embedded eigenvalues for strong spin-orbit coupling, α ≥ √(2β).
//!
//! With ν = α/√(2β) and x = αT(E), an energy E ≥ β is an eigenvalue iff
//! 2ω₋ = x²U_ν(x)(ω₊(ν²+1) + ω₋(ν²−1)) and γ = ω₊ω₋ + (β/2)V_ν(x),
//! where E = E_ν(x).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extension::EffectiveCouplings;
use crate::greens::{artanh_branch, check_pole, xi};
use crate::model::{classify_regime, Regime, Spin, SystemParams};

use super::{EmbeddedEigenvalue, Theorem};
use crate::numeric::golden_max;

/// Above this ν the large-coupling functions approach a delta-like limit.
pub const NU_WARN: f64 = 1e8;

fn check_x(nu: f64, x: f64) -> Result<()> {
    if !(nu >= 1.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("nu must be >= 1 (got {nu})")));
    }
    if !(x > 0.0 && x <= nu) {
        return Err(Error::Domain(format!(
            "x must lie in (0, nu] (x = {x}, nu = {nu})"
        )));
    }
    Ok(())
}

pub fn u_nu(nu: f64, x: f64) -> Result<f64> {
    check_x(nu, x)?;
    Ok(u_raw(nu, x))
}

fn u_raw(nu: f64, x: f64) -> f64 {
    let k = 1.0 + 1.0 / (nu * nu);
    (k * x.atan() - 1.0 / x) / x
}

pub fn v_nu(nu: f64, x: f64) -> Result<f64> {
    check_x(nu, x)?;
    Ok(v_raw(nu, x))
}

fn v_raw(nu: f64, x: f64) -> f64 {
    let n2 = nu * nu;
    let u = u_raw(nu, x);
    n2 / (n2 + 1.0) * u * (2.0 - (n2 - 1.0) * x * x * u)
}

pub fn e_nu(beta: f64, nu: f64, x: f64) -> Result<f64> {
    check_x(nu, x)?;
    Ok(e_raw(beta, nu, x))
}

fn e_raw(beta: f64, nu: f64, x: f64) -> f64 {
    // β(ν⁴+x⁴)/(2ν²x²) without forming ν⁴
    let r = nu / x;
    0.5 * beta * (r * r + 1.0 / (r * r))
}

// Solve x·arctan(x) = c on x > 0 (the left side is increasing).
fn inv_x_atan(c: f64) -> f64 {
    let mut lo = 0.0;
    let mut hi = (2.0f64).max(2.0 * c);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if mid * mid.atan() < c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LargeCouplingContext {
    pub nu: f64,
    pub x_nu_1: f64,
    pub x_nu_2: Option<f64>,
    pub e_nu_1: f64,
    pub e_nu_2: Option<f64>,
    pub warning: Option<String>,
}

impl LargeCouplingContext {
    /// The context for a bare ν; energies are scaled by `beta`.
    pub fn for_nu(nu: f64, beta: f64) -> Result<Self> {
        if !(nu >= 1.0) || !nu.is_finite() {
            return Err(Error::Regime(format!(
                "large-coupling analysis needs nu >= 1 (got {nu})"
            )));
        }
        let n2 = nu * nu;
        // U_ν(x) = 0  ⇔  x·arctan x = ν²/(ν²+1)
        let x1 = inv_x_atan(n2 / (n2 + 1.0));
        // U_ν(x) = 2/((ν²−1)x²)  ⇔  x·arctan x = ν²/(ν²−1)
        let x2 = if nu > 1.0 {
            let x = inv_x_atan(n2 / (n2 - 1.0));
            (x <= nu).then_some(x)
        } else {
            None
        };
        let warning = (nu > NU_WARN).then(|| {
            format!("nu = {nu:e} exceeds {NU_WARN:e}; V_nu approaches a delta-like limit")
        });
        Ok(Self {
            nu,
            x_nu_1: x1,
            x_nu_2: x2,
            e_nu_1: e_raw(beta, nu, x1),
            e_nu_2: x2.map(|x| e_raw(beta, nu, x)),
            warning,
        })
    }
}

pub fn large_coupling_context(params: &SystemParams) -> Result<LargeCouplingContext> {
    let info = classify_regime(params);
    if info.regime != Regime::CaseC {
        return Err(Error::Regime(format!(
            "large-coupling analysis needs alpha >= sqrt(2 beta) with beta > 0 (regime {})",
            info.regime.as_str()
        )));
    }
    LargeCouplingContext::for_nu(info.nu.unwrap_or(1.0).max(1.0), params.beta())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Result {
    pub accepted: Vec<EmbeddedEigenvalue>,
    /// Candidates solving the ω-constraint whose γ-condition failed.
    pub rejected: Vec<EmbeddedEigenvalue>,
    pub warning: Option<String>,
}

/// Embedded eigenvalues in `[β, E_{ν,1}]`.
///
/// The ω-constraint is solved for x first. Its left side x²U_ν(x) is
/// increasing, so there is at most one solution. The γ-condition is then a
/// residual test. When ω₊ = ω₋ = 0 the constraint is void and the γ-condition
/// alone is solved on a grid.
pub fn embedded_large_alpha(
    params: &SystemParams,
    eff: &EffectiveCouplings,
    tol: f64,
) -> Result<Theorem3Result> {
    let ctx = large_coupling_context(params)?;
    let (nu, beta) = (ctx.nu, params.beta());
    let n2 = nu * nu;
    let (wp, wm, g) = (eff.omega_plus, eff.omega_minus, eff.gamma);
    let gate = tol * (1.0 + g.abs());
    let residual = |x: f64| (g - wp * wm - 0.5 * beta * v_raw(nu, x)).abs();

    let mut candidates: Vec<f64> = Vec::new();
    let omega_scale = wp.abs().max(wm.abs());
    if omega_scale <= tol {
        candidates.push(ctx.x_nu_1);
        if let Some(x2) = ctx.x_nu_2 {
            candidates.push(x2);
        }
        candidates.extend(gamma_condition_roots(nu, beta, g - wp * wm, ctx.x_nu_1));
    } else {
        let kk = wp * (n2 + 1.0) + wm * (n2 - 1.0);
        if kk != 0.0 {
            // x²U_ν(x) = (1+1/ν²)·x·arctan x − 1 = 2ω₋/K
            let target = (1.0 + 2.0 * wm / kk) / (1.0 + 1.0 / n2);
            let lo = ctx.x_nu_1 * ctx.x_nu_1.atan();
            let hi = nu * nu.atan();
            if target >= lo - 1e-15 && target <= hi * (1.0 + 1e-15) {
                candidates.push(inv_x_atan(target).clamp(ctx.x_nu_1, nu));
            }
        }
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());

    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for x in candidates {
        let item = EmbeddedEigenvalue {
            energy: e_raw(beta, nu, x),
            condition_residual: residual(x),
            theorem: Theorem::T3,
        };
        if item.condition_residual <= gate {
            accepted.push(item);
        } else {
            rejected.push(item);
        }
    }
    accepted.sort_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap());
    Ok(Theorem3Result {
        accepted,
        rejected,
        warning: ctx.warning,
    })
}

// Sign changes of (β/2)V_ν(x) − target on [x₁, ν], geometric spacing near x₁.
fn gamma_condition_roots(nu: f64, beta: f64, target: f64, x1: f64) -> Vec<f64> {
    let h = |x: f64| 0.5 * beta * v_raw(nu, x) - target;
    let n = 4000;
    let span = nu - x1;
    if span <= 0.0 {
        return Vec::new();
    }
    let d_min = 1e-12 * x1.max(1.0);
    let nodes: Vec<f64> = (0..n)
        .map(|j| {
            if j == 0 {
                x1
            } else {
                x1 + d_min * (span / d_min).powf(j as f64 / (n - 1) as f64)
            }
        })
        .collect();
    let mut out = Vec::new();
    for w in nodes.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (h(a), h(b));
        if fa == 0.0 {
            out.push(a);
        } else if fa * fb < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                let fm = h(mid);
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
    }
    if h(nu) == 0.0 {
        out.push(nu);
    }
    out
}

/// Decomposition of the secular factors at one energy of the forbidden band.
///
/// Writing factor_s = ω_s + re_s + i·b_s, a real eigenvalue needs
/// (ω₊+re₊)b₋ + (ω₋+re₋)b₊ = 0, which forces
/// γ = −(b₋/b₊)((ω₊+re₊)² + b₊²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForbiddenBandPoint {
    pub energy: f64,
    pub re: [f64; 2],
    pub b: [f64; 2],
}

impl ForbiddenBandPoint {
    pub fn gamma_required(&self, omega_plus: f64) -> f64 {
        let a = omega_plus + self.re[0];
        -(self.b[1] / self.b[0]) * (a * a + self.b[0] * self.b[0])
    }
}

pub fn forbidden_band_point(params: &SystemParams, e: f64) -> Result<ForbiddenBandPoint> {
    let (a, b) = (params.alpha(), params.beta());
    let sigma = params.sigma();
    if !(e > -sigma && e < b) {
        return Err(Error::Domain(format!(
            "E = {e} is outside the band (-Sigma, beta)"
        )));
    }
    check_pole(params, Complex64::new(e, 0.0))?;
    let x = xi(params, Complex64::new(e, 0.0))?.value;
    let at = artanh_branch(a * x)?;
    let inv = 1.0 / (2.0 * x);
    let mut re = [0.0; 2];
    let mut im = [0.0; 2];
    for s in Spin::BOTH {
        let coef = 0.5 * a - s.sign() * b / a;
        re[s.index()] = inv.re - coef * at.re;
        im[s.index()] = inv.im - coef * at.im;
    }
    Ok(ForbiddenBandPoint {
        energy: e,
        re,
        b: im,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForbiddenBandReport {
    pub max_gamma_required: f64,
    pub argmax_energy: f64,
    pub band: (f64, f64),
    pub points: usize,
}

/// Largest γ that an eigenvalue in (−Σ, β) would require. A negative value
/// means no admissible γ ≥ 0 produces one.
pub fn forbidden_band_scan(
    params: &SystemParams,
    eff: &EffectiveCouplings,
    grid_size: usize,
) -> Result<ForbiddenBandReport> {
    let info = classify_regime(params);
    if info.regime != Regime::CaseC {
        return Err(Error::Regime(format!(
            "forbidden-band scan needs the large-coupling regime (got {})",
            info.regime.as_str()
        )));
    }
    let (lo, hi) = (-info.sigma, params.beta());
    let n = grid_size.max(3);
    let f = |e: f64| -> f64 {
        forbidden_band_point(params, e)
            .map(|p| p.gamma_required(eff.omega_plus))
            .unwrap_or(f64::NEG_INFINITY)
    };
    let step = (hi - lo) / (n + 1) as f64;
    let grid: Vec<f64> = (1..=n).map(|k| lo + step * k as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&e| f(e)).collect();
    let (mut k_best, mut v_best) = (0, f64::NEG_INFINITY);
    for (k, &v) in vals.iter().enumerate() {
        if v > v_best {
            k_best = k;
            v_best = v;
        }
    }
    let a = if k_best == 0 {
        lo + 1e-12 * (hi - lo)
    } else {
        grid[k_best - 1]
    };
    let b = if k_best + 1 == n {
        hi - 1e-12 * (hi - lo)
    } else {
        grid[k_best + 1]
    };
    let (e_ref, v_ref) = golden_max(&f, a, b, 1e-13 * (hi - lo).max(1.0));
    let (argmax, best) = if v_ref > v_best {
        (e_ref, v_ref)
    } else {
        (grid[k_best], v_best)
    };
    Ok(ForbiddenBandReport {
        max_gamma_required: best,
        argmax_energy: argmax,
        band: (lo, hi),
        points: n,
    })
}
