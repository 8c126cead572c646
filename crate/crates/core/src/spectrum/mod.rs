//! Eigenvalues below the threshold and embedded eigenvalues inside the band.

mod alpha0;
mod large;
mod small_beta;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use alpha0::embedded_alpha0;
pub use large::{
    e_nu, embedded_large_alpha, forbidden_band_point, forbidden_band_scan, large_coupling_context,
    u_nu, v_nu, ForbiddenBandPoint, ForbiddenBandReport, LargeCouplingContext, Theorem3Result,
};
pub use small_beta::{r_map_constant, symmetric_small_beta_eigenvalue};

use crate::error::{Error, Result};
use crate::extension::{
    effective_couplings_with, krein_q_with, normalization, Coupling, EffectiveCouplings,
    NormalizationData,
};
use crate::greens::{artanh_branch, check_pole, xi};
use crate::hermitian::Hermitian2;
use crate::model::{classify_regime, Regime, RegimeInfo, Spin, SystemParams};

/// Default number of log-spaced bracketing nodes below the threshold.
pub const DEFAULT_GRID: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    /// Sign change of an eigenvalue branch of Γ − Q(E), refined by bisection.
    EigenBranch,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteEigenvalue {
    pub energy: f64,
    /// |det(Γ − Q(E))| at the returned energy.
    pub residual: f64,
    /// 2 when both eigenvalue branches of Γ − Q vanish at the same energy.
    pub multiplicity: u8,
    pub method: RootMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    T1,
    T3,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::T1 => "T1",
            Theorem::T3 => "T3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedEigenvalue {
    pub energy: f64,
    pub condition_residual: f64,
    pub theorem: Theorem,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub regime: RegimeInfo,
    /// −Σ.
    pub continuous_edge: f64,
    pub discrete: Vec<DiscreteEigenvalue>,
    pub embedded: Vec<EmbeddedEigenvalue>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Lower end of the search; `None` picks a bound from Σ and the couplings.
    pub e_min: Option<f64>,
    pub tol: f64,
    pub grid: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            e_min: None,
            tol: 1e-10,
            grid: DEFAULT_GRID,
        }
    }
}

/// The diagonal factor ω_s ± 1/(2ξ) − (α/2 − sβ/α)·artanh(αξ) of the
/// secular equation; upper sign for E < β, lower for E ≥ β.
pub fn secular_factor(params: &SystemParams, omega: f64, s: Spin, e: f64) -> Result<Complex64> {
    check_pole(params, Complex64::new(e, 0.0))?;
    let (a, b) = (params.alpha(), params.beta());
    let x = xi(params, Complex64::new(e, 0.0))?.value;
    let sign = if e < b { 1.0 } else { -1.0 };
    let tail = if a == 0.0 {
        -s.sign() * b * x
    } else {
        (0.5 * a - s.sign() * b / a) * artanh_branch(a * x)?
    };
    Ok(omega + sign / (2.0 * x) - tail)
}

/// γ − Π_s(ω_s ± 1/(2ξ(E)) − (α/2 − sβ/α)·artanh(αξ(E))).
pub fn secular_function(
    params: &SystemParams,
    eff: &EffectiveCouplings,
    e: f64,
) -> Result<Complex64> {
    let fp = secular_factor(params, eff.omega_plus, Spin::Plus, e)?;
    let fm = secular_factor(params, eff.omega_minus, Spin::Minus, e)?;
    Ok(eff.gamma - fp * fm)
}

/// Default lower end of the discrete search.
pub fn default_e_min(sigma: f64, eff: &EffectiveCouplings) -> f64 {
    let scale = eff
        .omega_plus
        .abs()
        .max(eff.omega_minus.abs())
        .max(eff.gamma.sqrt());
    -(100f64).max(10.0 * (1.0 + sigma + scale * scale))
}

struct BranchEval<'a> {
    params: &'a SystemParams,
    norm: &'a NormalizationData,
    gamma: &'a Hermitian2,
}

impl BranchEval<'_> {
    fn matrix(&self, e: f64) -> Result<Hermitian2> {
        let q = krein_q_with(self.params, self.norm, Complex64::new(e, 0.0), false)?;
        Ok(Hermitian2::new(
            self.gamma.pp - q.q_pp.re,
            self.gamma.mm - q.q_mm.re,
            self.gamma.pm,
        ))
    }

    fn branches(&self, e: f64) -> Result<[f64; 2]> {
        Ok(self.matrix(e)?.eigenvalues())
    }

    fn det(&self, e: f64) -> Result<f64> {
        Ok(self.matrix(e)?.det())
    }
}

/// All real zeros of det(Γ − Q(E)) below the threshold.
///
/// Both eigenvalues of the Hermitian matrix Γ − Q(E) decrease strictly in E
/// below −Σ, so each crosses zero at most once. Brackets come from a grid
/// log-spaced in the distance to −Σ and are refined by bisection on the
/// branch itself, which also resolves double roots.
pub fn discrete_eigenvalues(
    params: &SystemParams,
    gamma: &Hermitian2,
    opts: &SearchOptions,
) -> Result<Vec<DiscreteEigenvalue>> {
    let norm = normalization(params)?;
    let eff = effective_couplings_with(&norm, gamma);
    let sigma = params.sigma();
    let e_min = opts.e_min.unwrap_or_else(|| default_e_min(sigma, &eff));
    if !(e_min < -sigma) {
        return Err(Error::Precondition(format!(
            "e_min = {e_min} must lie below the threshold {}",
            -sigma
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Precondition(format!(
            "tol must be positive (got {})",
            opts.tol
        )));
    }
    let has_pole = params.alpha() > 0.0 && params.alpha().powi(2) >= 2.0 * params.beta();
    let scale = sigma.max(1.0);
    let d_min = if has_pole {
        2e-10 * scale
    } else {
        1e-12 * scale
    };
    let d_max = -sigma - e_min;
    if d_max <= d_min {
        return Ok(Vec::new());
    }
    let n = opts.grid.max(2);
    let ratio = (d_max / d_min).ln();
    // ascending energies: from e_min up to −Σ − d_min
    let energies: Vec<f64> = (0..n)
        .map(|j| -sigma - d_min * (ratio * (1.0 - j as f64 / (n - 1) as f64)).exp())
        .collect();
    let ev = BranchEval {
        params,
        norm: &norm,
        gamma,
    };
    let values: Vec<[f64; 2]> = energies
        .iter()
        .map(|&e| ev.branches(e))
        .collect::<Result<_>>()?;

    let mut roots: Vec<f64> = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for k in 0..2 {
        for j in 0..n - 1 {
            let (lo, hi) = (values[j][k], values[j + 1][k]);
            if lo == 0.0 {
                roots.push(energies[j]);
                break;
            }
            if lo > 0.0 && hi < 0.0 {
                roots.push(bisect_branch(
                    &ev,
                    k,
                    energies[j],
                    energies[j + 1],
                    opts.tol,
                )?);
                break;
            }
            if hi == 0.0 && j + 1 == n - 1 {
                roots.push(energies[j + 1]);
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut out: Vec<DiscreteEigenvalue> = Vec::new();
    for e in roots {
        if let Some(last) = out.last_mut() {
            if (last.energy - e).abs() <= 10.0 * opts.tol * e.abs().max(1.0) {
                last.multiplicity = 2;
                continue;
            }
        }
        out.push(DiscreteEigenvalue {
            energy: e,
            residual: ev.det(e)?.abs(),
            multiplicity: 1,
            method: RootMethod::EigenBranch,
        });
    }
    Ok(out)
}

fn bisect_branch(ev: &BranchEval, k: usize, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= tol * mid.abs().max(1.0) || mid == lo || mid == hi {
            return Ok(mid);
        }
        let v = ev.branches(mid)?[k];
        if v == 0.0 {
            return Ok(mid);
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Full classification for one coupling.
pub fn solve(
    params: &SystemParams,
    coupling: &Coupling,
    opts: &SearchOptions,
) -> Result<SpectrumReport> {
    let regime = classify_regime(params);
    let mut report = SpectrumReport {
        regime,
        continuous_edge: -regime.sigma,
        discrete: Vec::new(),
        embedded: Vec::new(),
        notes: Vec::new(),
    };
    if !regime.series_valid_at_unit_circle {
        report.notes.push(
            "series validity conditions fail on |z| = 1; closed forms are used pointwise".into(),
        );
    }
    let gamma = match coupling.gamma()? {
        Some(g) => g,
        None => {
            report
                .notes
                .push("trivial or Friedrichs coupling: purely continuous spectrum".into());
            return Ok(report);
        }
    };
    if !gamma.is_finite() {
        return Err(Error::InvalidParams(
            "coupling matrix must be finite".into(),
        ));
    }
    report.discrete = discrete_eigenvalues(params, &gamma, opts)?;

    let norm = normalization(params)?;
    let eff = effective_couplings_with(&norm, &gamma);
    match regime.regime {
        Regime::CaseA => {
            report.embedded = embedded_alpha0(params.beta(), &eff, opts.tol.max(1e-12));
        }
        Regime::CaseB => {
            report.notes.push(
                "small coupling: embedded eigenvalues are decided by the expansion (see expand)"
                    .into(),
            );
        }
        Regime::CaseC => {
            let t3 = embedded_large_alpha(params, &eff, opts.tol.max(1e-12))?;
            report.embedded = t3.accepted;
            if let Some(w) = t3.warning {
                report.notes.push(w);
            }
        }
        Regime::Unsupported => {
            report
                .notes
                .push("alpha > 0 with beta = 0: embedded eigenvalues are not classified".into());
        }
    }
    Ok(report)
}

/// det(Γ − Q) expressed through the secular function below −Σ:
/// det = −(N₊²N₋²/16π²)·secular_function.
pub fn det_from_secular(norm: &NormalizationData, secular: Complex64) -> Complex64 {
    let k = (norm.n_plus * norm.n_minus).powi(2) / (16.0 * PI * PI);
    -k * secular
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{gamma_from_effective, secular_det};
    use rand::{Rng, SeedableRng};

    fn p(a: f64, b: f64) -> SystemParams {
        SystemParams::new(a, b).unwrap()
    }

    #[test]
    fn secular_function_examples() {
        let eff = EffectiveCouplings::new(-1.0, -1.0, 0.0).unwrap();
        assert!(secular_function(&p(0.0, 0.0), &eff, -1.0).unwrap().norm() < 1e-15);

        let (b, e): (f64, f64) = (0.3, -1.0);
        let (op, om) = (0.2, -0.5);
        let g = (op + (b - e).sqrt()) * (om + (-b - e).sqrt());
        let eff = EffectiveCouplings::new(op, om, g).unwrap();
        assert!(secular_function(&p(0.0, b), &eff, e).unwrap().norm() < 1e-15);

        let eff = EffectiveCouplings::new(0.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            secular_function(&p(2.0, 0.5), &eff, -1.0625 + 1e-12),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn det_matches_secular_function_below_threshold() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let q = p(rng.gen_range(0.0..2.0), rng.gen_range(0.0..1.0));
            let g = Hermitian2::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                Complex64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)),
            );
            let norm = normalization(&q).unwrap();
            let eff = effective_couplings_with(&norm, &g);
            let e = -q.sigma() - rng.gen_range(0.01..5.0);
            let d = secular_det(&q, &g, Complex64::new(e, 0.0)).unwrap();
            let f = det_from_secular(&norm, secular_function(&q, &eff, e).unwrap());
            assert!((d - f).norm() < 1e-11 * (1.0 + d.norm()), "d={d} f={f}");
        }
    }

    #[test]
    fn free_symmetric_double_root() {
        // α = β = 0, Γ = g·I: ω = (g−1)/√2 and E = −ω² for ω < 0
        let g = 0.3;
        let omega = (g - 1.0) / 2f64.sqrt();
        let roots = discrete_eigenvalues(
            &p(0.0, 0.0),
            &Hermitian2::scalar(g),
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert!((roots[0].energy + omega * omega).abs() < 1e-9);
    }

    #[test]
    fn no_roots_for_repulsive_free_coupling() {
        let roots = discrete_eigenvalues(
            &p(0.0, 0.0),
            &Hermitian2::scalar(1.5),
            &SearchOptions::default(),
        )
        .unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn rejects_bad_e_min() {
        let opts = SearchOptions {
            e_min: Some(-0.1),
            ..Default::default()
        };
        assert!(discrete_eigenvalues(&p(0.0, 0.5), &Hermitian2::scalar(0.0), &opts).is_err());
    }

    #[test]
    fn trivial_and_friedrichs_are_empty() {
        for c in [Coupling::Trivial, Coupling::Friedrichs] {
            let r = solve(&p(2.0, 0.5), &c, &SearchOptions::default()).unwrap();
            assert!(r.discrete.is_empty() && r.embedded.is_empty());
            assert_eq!(r.continuous_edge, -1.0625);
        }
    }

    #[test]
    fn alpha0_closure() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut found = 0;
        for _ in 0..40 {
            let b = rng.gen_range(0.05..1.0);
            let q = p(0.0, b);
            let eff = EffectiveCouplings::new(
                rng.gen_range(-2.0..1.0),
                rng.gen_range(-2.0..1.0),
                rng.gen_range(0.0..0.5),
            )
            .unwrap();
            let g = gamma_from_effective(&q, &eff).unwrap();
            for r in discrete_eigenvalues(&q, &g, &SearchOptions::default()).unwrap() {
                let e = r.energy;
                let rhs: f64 = Spin::BOTH
                    .iter()
                    .map(|&s| eff.omega(s) + (s.sign() * b - e).sqrt())
                    .product();
                assert!(
                    (eff.gamma - rhs).abs() < 1e-9,
                    "gamma={} rhs={rhs}",
                    eff.gamma
                );
                found += 1;
            }
        }
        assert!(found > 10);
    }

    #[test]
    fn monotone_factors_below_threshold() {
        let q = p(0.6, 0.4);
        for s in Spin::BOTH {
            let mut prev = f64::INFINITY;
            for k in 0..200 {
                let e = -q.sigma() - 5.0 + k as f64 * 0.0249;
                let f = secular_factor(&q, 0.1, s, e).unwrap();
                assert!(f.im.abs() < 1e-14);
                // factor = ω + √(sβ−E) + … shrinks as E increases
                if k > 0 {
                    assert!(f.re < prev, "not decreasing in E at k={k}");
                }
                prev = f.re;
            }
        }
    }
}
