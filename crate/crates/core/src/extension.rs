//! Renormalization constants, the coupling algebra and the Krein Q-matrix.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::greens::{canon, csqrt, green_values};
use crate::hermitian::{Hermitian2, Mat2};
use crate::model::{threshold_sigma, Spin, SystemParams};

/// 1/(4√2π), the free value of Im G at z = i.
pub const K0: f64 = 1.0 / (4.0 * SQRT_2 * PI);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationData {
    pub n_plus: f64,
    pub n_minus: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub c_param: f64,
}

impl NormalizationData {
    pub fn n(&self, s: Spin) -> f64 {
        match s {
            Spin::Plus => self.n_plus,
            Spin::Minus => self.n_minus,
        }
    }

    pub fn lambda(&self, s: Spin) -> f64 {
        match s {
            Spin::Plus => self.lambda_plus,
            Spin::Minus => self.lambda_minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCouplings {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub gamma: f64,
}

impl EffectiveCouplings {
    pub fn new(omega_plus: f64, omega_minus: f64, gamma: f64) -> Result<Self> {
        if !(omega_plus.is_finite() && omega_minus.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidParams(
                "effective couplings must be finite".into(),
            ));
        }
        if gamma < 0.0 {
            return Err(Error::InvalidParams(format!(
                "gamma must be >= 0 (got {gamma})"
            )));
        }
        Ok(Self {
            omega_plus,
            omega_minus,
            gamma,
        })
    }

    pub fn omega(&self, s: Spin) -> f64 {
        match s {
            Spin::Plus => self.omega_plus,
            Spin::Minus => self.omega_minus,
        }
    }
}

/// Diagonal entries of Q(z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KreinQ {
    pub q_pp: Complex64,
    pub q_mm: Complex64,
}

impl KreinQ {
    pub fn get(&self, s: Spin) -> Complex64 {
        match s {
            Spin::Plus => self.q_pp,
            Spin::Minus => self.q_mm,
        }
    }
}

/// How the contact interaction is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    Gamma(Hermitian2),
    CAndR {
        c: Hermitian2,
        r: Hermitian2,
    },
    /// C ≡ 0: the unperturbed operator.
    Trivial,
    /// C⁻¹ = 0.
    Friedrichs,
}

impl Coupling {
    /// Γ, or `None` for the two extensions whose spectrum is purely continuous.
    pub fn gamma(&self) -> Result<Option<Hermitian2>> {
        match self {
            Coupling::Gamma(g) => Ok(Some(*g)),
            Coupling::CAndR { c, r } => gamma_from_cr(c, r).map(Some),
            Coupling::Trivial | Coupling::Friedrichs => Ok(None),
        }
    }
}

/// N_s⁻² from the Arg-difference formula.
pub fn normalization_inv_sq(params: &SystemParams, s: Spin) -> f64 {
    let (a, b) = (params.alpha(), params.beta());
    let root = (1.0 + (1.0 + b * b).sqrt()).sqrt();
    let c = a / (2.0 * root);
    // D(c) = Arg(1+c(1+i)) − Arg(1−c(1+i)) = atan2(2c, 1−2c²);
    // (α/2 − sβ/α)·D split so that α = 0 takes the limit D/α → 1/root.
    let d_over_alpha = if a == 0.0 {
        1.0 / root
    } else {
        (2.0 * c).atan2(1.0 - 2.0 * c * c) / a
    };
    let d = a * d_over_alpha;
    (root + 0.5 * a * d - s.sign() * b * d_over_alpha) / (8.0 * PI)
}

pub fn normalization(params: &SystemParams) -> Result<NormalizationData> {
    let i = Complex64::new(0.0, 1.0);
    let gv = green_values(params, i)?;
    let mut n = [0.0; 2];
    let mut l = [0.0; 2];
    for s in Spin::BOTH {
        let inv = normalization_inv_sq(params, s);
        if !(inv > 0.0) || !inv.is_finite() {
            return Err(Error::NonPositiveNormalization {
                spin: s.symbol(),
                value: inv,
            });
        }
        n[s.index()] = 1.0 / inv.sqrt();
        l[s.index()] = gv.gs_ren(params, s).re - K0;
    }
    let root = (1.0 + (1.0 + params.beta().powi(2)).sqrt()).sqrt();
    Ok(NormalizationData {
        n_plus: n[0],
        n_minus: n[1],
        lambda_plus: l[0],
        lambda_minus: l[1],
        c_param: params.alpha() / (2.0 * root),
    })
}

/// Γ = −C⁻¹ − R.
pub fn gamma_from_cr(c: &Hermitian2, r: &Hermitian2) -> Result<Hermitian2> {
    if *c == Hermitian2::zero() {
        return Err(Error::Singular(
            "C = 0 is the trivial extension; use the trivial coupling".into(),
        ));
    }
    let inv = c
        .inverse()
        .map_err(|_| Error::Singular(format!("det C = {:e}; C must be invertible", c.det())))?;
    Ok(inv.neg().sub(r))
}

pub fn effective_couplings(
    params: &SystemParams,
    gamma: &Hermitian2,
) -> Result<EffectiveCouplings> {
    let norm = normalization(params)?;
    Ok(effective_couplings_with(&norm, gamma))
}

pub fn effective_couplings_with(
    norm: &NormalizationData,
    gamma: &Hermitian2,
) -> EffectiveCouplings {
    let (np, nm) = (norm.n_plus, norm.n_minus);
    let op = 4.0 * PI * (gamma.pp / (np * np) + norm.lambda_plus);
    let om = 4.0 * PI * (gamma.mm / (nm * nm) + norm.lambda_minus);
    let g = (4.0 * PI * gamma.pm.norm() / (np * nm)).powi(2);
    EffectiveCouplings {
        omega_plus: op,
        omega_minus: om,
        gamma: g,
    }
}

/// A Γ realizing the given effective couplings, with real positive Γ₊₋.
pub fn gamma_from_effective(params: &SystemParams, eff: &EffectiveCouplings) -> Result<Hermitian2> {
    let norm = normalization(params)?;
    let (np, nm) = (norm.n_plus, norm.n_minus);
    let pp = np * np * (eff.omega_plus / (4.0 * PI) - norm.lambda_plus);
    let mm = nm * nm * (eff.omega_minus / (4.0 * PI) - norm.lambda_minus);
    let pm = np * nm * eff.gamma.sqrt() / (4.0 * PI);
    Ok(Hermitian2::new(pp, mm, Complex64::new(pm, 0.0)))
}

/// Q(z) for z off `[−Σ, ∞)`.
pub fn krein_q(params: &SystemParams, z: Complex64) -> Result<KreinQ> {
    let norm = normalization(params)?;
    krein_q_with(params, &norm, z, false)
}

/// Boundary value Q(E) on the real axis, including E ≥ −Σ.
pub fn krein_q_boundary(params: &SystemParams, e: f64) -> Result<KreinQ> {
    let norm = normalization(params)?;
    krein_q_with(params, &norm, Complex64::new(e, 0.0), true)
}

pub fn krein_q_with(
    params: &SystemParams,
    norm: &NormalizationData,
    z: Complex64,
    allow_boundary: bool,
) -> Result<KreinQ> {
    let z = canon(z);
    let sigma = threshold_sigma(params);
    if !allow_boundary && z.im == 0.0 && z.re >= -sigma {
        return Err(Error::Domain(format!(
            "z = {} lies on the continuous spectrum [{}, inf)",
            z.re, -sigma
        )));
    }
    let gv = green_values(params, z)?;
    let free = csqrt(-z) / (4.0 * PI);
    let q = |s: Spin| {
        let n = norm.n(s);
        n * n * (gv.gs_ren(params, s) - free - norm.lambda(s))
    };
    let mut out = KreinQ {
        q_pp: q(Spin::Plus),
        q_mm: q(Spin::Minus),
    };
    if z.im == 0.0 && z.re < -sigma {
        out.q_pp.im = 0.0;
        out.q_mm.im = 0.0;
    }
    Ok(out)
}

/// det(Γ − Q(z)).
pub fn secular_det(params: &SystemParams, gamma: &Hermitian2, z: Complex64) -> Result<Complex64> {
    let q = krein_q(params, z)?;
    Ok(det_with_q(gamma, &q))
}

pub fn det_with_q(gamma: &Hermitian2, q: &KreinQ) -> Complex64 {
    (gamma.pp - q.q_pp) * (gamma.mm - q.q_mm) - gamma.pm.norm_sqr()
}

/// (Γ − Q(z))⁻¹; a singular-matrix error signals that z is an eigenvalue.
pub fn resolvent_correction(
    params: &SystemParams,
    gamma: &Hermitian2,
    z: Complex64,
) -> Result<Mat2> {
    let q = krein_q(params, z)?;
    let mut m = gamma.to_mat2();
    m.0[0][0] -= q.q_pp;
    m.0[1][1] -= q.q_mm;
    m.inverse()
}

/// ‖Φ_s(z)‖².
pub fn phi_norm_sq(params: &SystemParams, s: Spin, z: Complex64) -> Result<f64> {
    let z = canon(z);
    let norm = normalization(params)?;
    let n2 = norm.n(s).powi(2);
    if z.im != 0.0 {
        let gv = green_values(params, z)?;
        let v = gv.gs_ren(params, s) - csqrt(-z) / (4.0 * PI);
        return Ok(n2 * v.im / z.im);
    }
    let sigma = threshold_sigma(params);
    let e = z.re;
    if !(e < -sigma) {
        return Err(Error::Domain(format!(
            "real z = {e} must lie below the threshold {}",
            -sigma
        )));
    }
    let (a, b) = (params.alpha(), params.beta());
    let sq = ((e - b) * (e + b)).sqrt();
    let up = -e + sq;
    // β(α²−2sβ)√(−z−sq)/(2β²+α²(z+sq)) with z+sq = −β²/up and √(−z−sq) = β/√up
    let term = (a * a - 2.0 * s.sign() * b) / ((2.0 - a * a / up) * up.sqrt());
    let denom_sq = if b == 0.0 { -e } else { sq };
    Ok(n2 / (8.0 * SQRT_2 * PI * denom_sq) * (up.sqrt() + term))
}
