//! Small-α expansion of the eigenvalues below −β.
//!
//! For 0 < α < √(2β) every α = 0 eigenvalue E⁽⁰⁾ < −β moves to
//! E⁽⁰⁾ + α²E⁽²⁾ + O(α⁴); odd orders vanish.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::greens::xi;
use crate::hermitian::Hermitian2;
use crate::model::{classify_regime, Regime, Spin, SystemParams};
use crate::numeric::golden_max;
use crate::spectrum::{discrete_eigenvalues, embedded_alpha0, SearchOptions};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationCoefficients {
    pub beta: f64,
    pub n0: [f64; 2],
    pub n1: [f64; 2],
    pub l0: [f64; 2],
    pub l1: [f64; 2],
    /// η₊₊, η₋₋, η₊₋.
    pub eta: [f64; 3],
    pub omega0: [f64; 2],
    pub omega1: [f64; 2],
    pub gamma0: f64,
}

impl PerturbationCoefficients {
    pub fn eta_ss(&self, s: Spin) -> f64 {
        self.eta[s.index()]
    }

    pub fn eta_pm(&self) -> f64 {
        self.eta[2]
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::Domain(format!(
            "the expansion needs beta > 0 (got {beta})"
        )));
    }
    Ok(())
}

// N⁽⁰⁾, N⁽¹⁾, Λ⁽⁰⁾, Λ⁽¹⁾ with 1 − √(1+β²) = −β²/(1+√(1+β²)) so nothing cancels.
fn series_constants(beta: f64) -> ([f64; 2], [f64; 2], [f64; 2], [f64; 2]) {
    let r = (1.0 + beta * beta).sqrt();
    let q = beta / (1.0 + r).sqrt();
    let k = 2.0 * 2f64.powf(0.25) * PI.sqrt();
    let mut n0 = [0.0; 2];
    let mut n1 = [0.0; 2];
    let mut l0 = [0.0; 2];
    let mut l1 = [0.0; 2];
    for s in Spin::BOTH {
        let sg = s.sign();
        let i = s.index();
        let rs = r + sg * beta;
        n0[i] = k * rs.powf(0.25);
        n1[i] = PI.sqrt() / (6.0 * 2f64.powf(0.25)) * (3.0 - sg * beta / (1.0 + r)) * rs.powf(0.75)
            / (1.0 + r).sqrt();
        l0[i] = -((r + 1.0).sqrt() + sg * q) / (8.0 * PI);
        l1[i] = (3.0 + sg * beta / (1.0 + r)) / (48.0 * PI * (1.0 + r).sqrt());
    }
    (n0, n1, l0, l1)
}

pub fn expansion_coefficients(beta: f64, gamma: &Hermitian2) -> Result<PerturbationCoefficients> {
    check_beta(beta)?;
    let (n0, n1, l0, l1) = series_constants(beta);
    let ratio = [n1[0] / n0[0], n1[1] / n0[1]];
    let eta = [2.0 * ratio[0], 2.0 * ratio[1], ratio[0] + ratio[1]];
    let gt = |i: usize| gamma.diag_entry(i) / (n0[i] * n0[i]);
    let omega0 = [4.0 * PI * (gt(0) + l0[0]), 4.0 * PI * (gt(1) + l0[1])];
    let omega1 = [
        4.0 * PI * (eta[0] * gt(0) + l1[0]),
        4.0 * PI * (eta[1] * gt(1) + l1[1]),
    ];
    let gamma0 = (4.0 * PI * gamma.pm.norm() / (n0[0] * n0[1])).powi(2);
    Ok(PerturbationCoefficients {
        beta,
        n0,
        n1,
        l0,
        l1,
        eta,
        omega0,
        omega1,
        gamma0,
    })
}

/// q_s⁽⁰⁾ = ω_s⁽¹⁾ − ξ(E⁽⁰⁾)(1/2 − sβξ(E⁽⁰⁾)²/3).
pub fn q0(beta: f64, omega1_s: f64, s: Spin, e0: f64) -> Result<f64> {
    check_beta(beta)?;
    if !(e0 <= -beta) {
        return Err(Error::Domain(format!(
            "q0 needs E0 <= -beta for a real xi (E0 = {e0}, beta = {beta})"
        )));
    }
    let params = SystemParams::new(0.0, beta)?;
    let x = xi(&params, Complex64::new(e0, 0.0))?.value.re;
    Ok(omega1_s - x * (0.5 - s.sign() * beta * x * x / 3.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum E2Branch {
    GenericGamma,
    DiagonalPlus,
    DiagonalMinus,
    Twofold,
}

impl E2Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            E2Branch::GenericGamma => "GenericGamma",
            E2Branch::DiagonalPlus => "DiagonalPlus",
            E2Branch::DiagonalMinus => "DiagonalMinus",
            E2Branch::Twofold => "Twofold",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum E2Value {
    Single(f64),
    Twofold([f64; 2]),
}

impl E2Value {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            E2Value::Single(v) => vec![v],
            E2Value::Twofold([a, b]) => vec![a, b],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEigenvalue {
    pub e0: f64,
    pub e2: E2Value,
    pub branch: E2Branch,
}

impl AsymptoticEigenvalue {
    /// E⁽⁰⁾ + α²E⁽²⁾ for each value of E⁽²⁾.
    pub fn energies(&self, alpha: f64) -> Vec<f64> {
        self.e2
            .values()
            .into_iter()
            .map(|v| self.e0 + alpha * alpha * v)
            .collect()
    }
}

/// Tolerance on the α = 0 secular condition when accepting E⁽⁰⁾.
pub const E0_CHECK_TOL: f64 = 1e-8;

/// E⁽²⁾ for the α = 0 eigenvalue `e0` of Γ.
pub fn e2(beta: f64, gamma: &Hermitian2, e0: f64) -> Result<AsymptoticEigenvalue> {
    let c = expansion_coefficients(beta, gamma)?;
    e2_with(&c, e0)
}

fn e2_with(c: &PerturbationCoefficients, e0: f64) -> Result<AsymptoticEigenvalue> {
    let beta = c.beta;
    if !(e0 < -beta) {
        return Err(Error::Precondition(format!(
            "E0 = {e0} must lie below -beta = {}",
            -beta
        )));
    }
    if (e0 + beta).abs() < 1e-8 {
        return Err(Error::Precondition(format!(
            "E0 = {e0} is within 1e-8 of -beta; the threshold case is decided by the coupling condition instead"
        )));
    }
    let root = |s: Spin| (s.sign() * beta - e0).sqrt();
    let chan = |s: Spin| c.omega0[s.index()] + root(s);
    let prod = chan(Spin::Plus) * chan(Spin::Minus);
    let miss = (c.gamma0 - prod).abs();
    if miss > E0_CHECK_TOL * (1.0 + c.gamma0 + prod.abs()) {
        return Err(Error::Precondition(format!(
            "E0 = {e0} does not solve the alpha = 0 secular condition (residual {miss:e})"
        )));
    }
    let q = |s: Spin| q0(beta, c.omega1[s.index()], s, e0);

    if c.gamma0 == 0.0 {
        let scale = 1.0 + root(Spin::Minus);
        let hit = |s: Spin| chan(s).abs() <= E0_CHECK_TOL * scale;
        let diag = |s: Spin| -> Result<f64> { Ok(-2.0 * c.omega0[s.index()] * q(s)?) };
        return match (hit(Spin::Plus), hit(Spin::Minus)) {
            (true, true) => Ok(AsymptoticEigenvalue {
                e0,
                e2: E2Value::Twofold([diag(Spin::Plus)?, diag(Spin::Minus)?]),
                branch: E2Branch::Twofold,
            }),
            (true, false) => Ok(AsymptoticEigenvalue {
                e0,
                e2: E2Value::Single(diag(Spin::Plus)?),
                branch: E2Branch::DiagonalPlus,
            }),
            (false, true) => Ok(AsymptoticEigenvalue {
                e0,
                e2: E2Value::Single(diag(Spin::Minus)?),
                branch: E2Branch::DiagonalMinus,
            }),
            (false, false) => Err(Error::Precondition(format!(
                "E0 = {e0} solves neither diagonal channel"
            ))),
        };
    }

    let sq = ((e0 - beta) * (e0 + beta)).sqrt();
    let pref = (2.0 * SQRT_2 / beta) * (sq - e0) * sq * (-e0 - sq).sqrt();
    let mut num = -2.0 * c.eta_pm() * c.gamma0;
    let mut den = 0.0;
    for s in Spin::BOTH {
        num += q(s.flip())? * chan(s);
        den += root(s) * (root(s) + root(s.flip())) * chan(s);
    }
    if den.abs() < 1e-12 {
        return Err(Error::DegenerateDenominator { denominator: den });
    }
    Ok(AsymptoticEigenvalue {
        e0,
        e2: E2Value::Single(pref * num / den),
        branch: E2Branch::GenericGamma,
    })
}

/// The coefficients A, B, C of the linear condition AΓ₊₊ + BΓ₋₋ + C = 0.
pub fn gamma_circle_coefficients(beta: f64) -> Result<[f64; 3]> {
    check_beta(beta)?;
    let (n0, n1, l0, l1) = series_constants(beta);
    let epp = 2.0 * n1[0] / n0[0];
    let emm = 2.0 * n1[1] / n0[1];
    let shift = l0[0] + (2.0 * beta).sqrt() / (4.0 * PI);
    let (np2, nm2) = (n0[0] * n0[0], n0[1] * n0[1]);
    let a = nm2 * (l1[1] - emm * l0[1]);
    let b = np2 * (l1[0] - epp * shift);
    let c = np2 * nm2 * (l0[1] * l1[0] + shift * (l1[1] - (epp + emm) * l0[1]));
    Ok([a, b, c])
}

/// AΓ₊₊ + BΓ₋₋ + C.
pub fn gamma_circle_residual(beta: f64, gamma: &Hermitian2) -> Result<f64> {
    let [a, b, c] = gamma_circle_coefficients(beta)?;
    Ok(a * gamma.pp + b * gamma.mm + c)
}

/// 4π(Λ₊⁽¹⁾ − η₊₊Λ₊⁽⁰⁾) − 1/(3√(2β)) − η₊₊√(2β).
pub fn cnd0(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let (n0, n1, l0, l1) = series_constants(beta);
    let epp = 2.0 * n1[0] / n0[0];
    let rt = (2.0 * beta).sqrt();
    Ok(4.0 * PI * (l1[0] - epp * l0[0]) - 1.0 / (3.0 * rt) - epp * rt)
}

/// Location and value of the maximum of [`cnd0`] over β > 0.
pub fn cnd0_maximum() -> (f64, f64) {
    let f = |b: f64| cnd0(b).unwrap_or(f64::NEG_INFINITY);
    // coarse scan, then refine around the best node
    let nodes: Vec<f64> = (0..=400)
        .map(|k| 10f64.powf(-2.0 + 4.0 * k as f64 / 400.0))
        .collect();
    let k = (0..nodes.len())
        .max_by(|&i, &j| f(nodes[i]).partial_cmp(&f(nodes[j])).unwrap())
        .unwrap();
    let lo = nodes[k.saturating_sub(1)];
    let hi = nodes[(k + 1).min(nodes.len() - 1)];
    golden_max(&f, lo, hi, 1e-12)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub coefficients: PerturbationCoefficients,
    pub eigenvalues: Vec<AsymptoticEigenvalue>,
    pub gamma_circle_residual: f64,
    /// −β is an α = 0 eigenvalue and the linear condition holds.
    pub minus_beta_persists: bool,
}

/// Residual gate for the linear condition, relative to |A|,|B|,|C| and Γ.
pub const GAMMA_CIRCLE_TOL: f64 = 1e-10;

pub fn asymptotic_eigenvalues(
    params: &SystemParams,
    gamma: &Hermitian2,
) -> Result<AsymptoticReport> {
    let info = classify_regime(params);
    if !matches!(info.regime, Regime::CaseB | Regime::CaseA) {
        return Err(Error::Regime(format!(
            "the expansion needs 0 <= alpha < sqrt(2 beta) (regime {})",
            info.regime.as_str()
        )));
    }
    let beta = params.beta();
    let c = expansion_coefficients(beta, gamma)?;
    let base = SystemParams::new(0.0, beta)?;
    let roots = discrete_eigenvalues(&base, gamma, &SearchOptions::default())?;
    let mut eigenvalues = Vec::new();
    for r in roots {
        eigenvalues.push(e2_with(&c, r.energy)?);
    }
    let [a, b, cc] = gamma_circle_coefficients(beta)?;
    let residual = a * gamma.pp + b * gamma.mm + cc;
    let scale = a.abs() * gamma.pp.abs() + b.abs() * gamma.mm.abs() + cc.abs();
    let norm0 = crate::extension::normalization(&base)?;
    let eff0 = crate::extension::effective_couplings_with(&norm0, gamma);
    let minus_beta = embedded_alpha0(beta, &eff0, 1e-9)
        .iter()
        .any(|e| e.energy == -beta);
    Ok(AsymptoticReport {
        coefficients: c,
        eigenvalues,
        gamma_circle_residual: residual,
        minus_beta_persists: minus_beta && residual.abs() <= GAMMA_CIRCLE_TOL * scale.max(1.0),
    })
}
