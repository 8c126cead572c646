use crate::extension::EffectiveCouplings;

use super::{EmbeddedEigenvalue, Theorem};

/// Embedded eigenvalues without spin-orbit coupling.
///
/// Each of the three candidate points `−β`, `β − ω₊²` and `β` is tested
/// against its condition with tolerance `tol·(1 + |γ|)`.
pub fn embedded_alpha0(beta: f64, eff: &EffectiveCouplings, tol: f64) -> Vec<EmbeddedEigenvalue> {
    if beta <= 0.0 {
        return Vec::new();
    }
    let EffectiveCouplings {
        omega_plus: wp,
        omega_minus: wm,
        gamma: g,
    } = *eff;
    let gate = tol * (1.0 + g.abs());
    let root = (2.0 * beta).sqrt();
    let mut out = Vec::new();

    let r = (g - (wp + root) * wm).abs();
    if r <= gate {
        out.push(EmbeddedEigenvalue {
            energy: -beta,
            condition_residual: r,
            theorem: Theorem::T1,
        });
    }
    if g.abs() <= gate && -root < wp && wp < 0.0 {
        out.push(EmbeddedEigenvalue {
            energy: beta - wp * wp,
            condition_residual: g.abs(),
            theorem: Theorem::T1,
        });
    }
    let r = g.abs().max(wm.abs());
    if r <= gate {
        out.push(EmbeddedEigenvalue {
            energy: beta,
            condition_residual: r,
            theorem: Theorem::T1,
        });
    }
    out.sort_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap());
    out
}
