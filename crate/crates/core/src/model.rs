//! Physical parameters, the continuum threshold and regime classification.
//!
//! The free Hamiltonian is `-Δ ⊗ I + iα(∇₁⊗σ₂ − ∇₂⊗σ₁) + β I⊗σ₃` with
//! α the spin-orbit strength and β the Zeeman field. Its spectrum is the
//! band `[-Σ, ∞)`; the closed-form Green values are guaranteed by the
//! underlying series only when one of three validity conditions holds.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of interior nodes used when scanning condition (c).
pub const COND_C_SCAN_POINTS: usize = 10_000;

/// Spin channel label `s = ±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Plus, Spin::Minus];

    /// `+1.0` or `-1.0`.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Spin::Plus => 1.0,
            Spin::Minus => -1.0,
        }
    }

    #[inline]
    pub fn flip(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }

    /// Row/column index in the 2×2 coupling matrices.
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Spin::Plus => 0,
            Spin::Minus => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Spin::Plus => '+',
            Spin::Minus => '-',
        }
    }
}

/// The physical pair (α, β).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    alpha: f64,
    beta: f64,
}

impl SystemParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must be finite (alpha={alpha}, beta={beta})"
            )));
        }
        if alpha < 0.0 || beta < 0.0 {
            return Err(Error::InvalidParams(format!(
                "alpha and beta must be nonnegative (alpha={alpha}, beta={beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// ν = α/√(2β); `None` when β = 0.
    pub fn nu(&self) -> Option<f64> {
        (self.beta > 0.0).then(|| self.alpha / (2.0 * self.beta).sqrt())
    }

    pub fn sigma(&self) -> f64 {
        threshold_sigma(self)
    }
}

/// Regime of the secular equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// α = 0.
    CaseA,
    /// 0 < α < √(2β).
    CaseB,
    /// √(2β) ≤ α with β > 0.
    CaseC,
    /// α > 0 with β = 0: ν is undefined.
    Unsupported,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::CaseA => "CaseA",
            Regime::CaseB => "CaseB",
            Regime::CaseC => "CaseC",
            Regime::Unsupported => "Unsupported",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeInfo {
    pub sigma: f64,
    pub regime: Regime,
    /// Populated in CaseC only.
    pub nu: Option<f64>,
    /// Whether the series validity conditions hold on the unit circle `|z| = 1`.
    /// For CaseC this is equivalent to `Σ ≤ 1`.
    pub series_valid_at_unit_circle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_c: bool,
    pub any: bool,
}

/// Infimum Σ of the continuous spectrum `[-Σ, ∞)`.
pub fn threshold_sigma(params: &SystemParams) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    if a == 0.0 || b > 0.5 * a * a {
        b
    } else {
        let r = b / a;
        r * r + 0.25 * a * a
    }
}

pub fn classify_regime(params: &SystemParams) -> RegimeInfo {
    let (a, b) = (params.alpha, params.beta);
    let sigma = threshold_sigma(params);
    let unit = series_validity(params, Complex64::new(0.0, 1.0)).any;
    let (regime, nu) = if a == 0.0 {
        (Regime::CaseA, None)
    } else if b == 0.0 {
        (Regime::Unsupported, None)
    } else if a * a < 2.0 * b {
        (Regime::CaseB, None)
    } else {
        (Regime::CaseC, params.nu())
    };
    RegimeInfo {
        sigma,
        regime,
        nu,
        series_valid_at_unit_circle: unit,
    }
}

/// Conditions (a)–(c) under which the free Green function admits its
/// series representation at energy `z`.
pub fn series_validity(params: &SystemParams, z: Complex64) -> ValidityReport {
    let (a, b) = (params.alpha, params.beta);
    let m = z.norm();
    let sigma = threshold_sigma(params);

    let cond_a = 2.0 * b > a * a && b <= m && (a == 0.0 || m < 2.0 * (b / a) * (b / a));
    let cond_b = m > sigma || (m == sigma && 2.0 * b < a * a);
    let cond_c = cond_c_scan(a, b, m);
    ValidityReport {
        cond_a,
        cond_b,
        cond_c,
        any: cond_a || cond_b || cond_c,
    }
}

// R = S(1 − S) parametrizes R + (S − 1/2)² = 1/4 with R, S > 0.
fn cond_c_scan(a: f64, b: f64, m: f64) -> bool {
    let n = COND_C_SCAN_POINTS;
    (1..=n).any(|k| {
        let s = k as f64 / (n + 1) as f64;
        let r = s * (1.0 - s);
        let bound = (b / (2.0 * r.sqrt())).max(a * a / (4.0 * s));
        m > bound
    })
}
