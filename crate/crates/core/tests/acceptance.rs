//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rashba_spectrum::extension::{gamma_from_effective, krein_q, phi_norm_sq, EffectiveCouplings};
use rashba_spectrum::greens::gs_ren_origin;
use rashba_spectrum::model::{classify_regime, series_validity, threshold_sigma, Regime};
use rashba_spectrum::oracle::{gs_ren_quadrature, phi_norm_quadrature, sigma_numeric};
use rashba_spectrum::perturbation::{cnd0_maximum, e2, expansion_coefficients};
use rashba_spectrum::spectrum::{
    discrete_eigenvalues, e_nu, embedded_alpha0, embedded_large_alpha, forbidden_band_scan,
    r_map_constant, symmetric_small_beta_eigenvalue, LargeCouplingContext, SearchOptions,
};
use rashba_spectrum::{Hermitian2, Result, Spin, SystemParams};

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn p(a: f64, b: f64) -> SystemParams {
    SystemParams::new(a, b).unwrap()
}

fn q_normalization() -> Outcome {
    let mut pts = vec![(0.0, 0.0)];
    for i in 0..5 {
        for j in 0..5 {
            pts.push((0.25 * i as f64, 0.1 + 0.2 * j as f64));
        }
    }
    let mut dev: f64 = 0.0;
    let mut n = 0;
    for (a, b) in pts {
        let q = p(a, b);
        if threshold_sigma(&q) > 1.0 {
            continue;
        }
        n += 1;
        for z in [c(0.0, 1.0), c(0.0, -1.0)] {
            let k = krein_q(&q, z)?;
            dev = dev.max((k.q_pp - z).norm()).max((k.q_mm - z).norm());
        }
    }
    Ok((
        n == 26 && dev <= 1e-10,
        format!("{n} parameter points, max |Q(+-i) -+ i| = {dev:.2e}"),
    ))
}

fn classical_limit() -> Outcome {
    let q = p(0.0, 0.0);
    let mut zs: Vec<Complex64> = (0..20)
        .map(|k| c(-10.0 + k as f64 * (10.0 - 0.01) / 19.0, 0.0))
        .collect();
    zs.extend((0..10).map(|k| Complex64::from_polar(0.3 + 0.5 * k as f64, -2.8 + 0.6 * k as f64)));
    let mut dev: f64 = 0.0;
    for z in zs {
        let v = krein_q(&q, z)?;
        let e = c(1.0, 0.0) - (-2.0 * z).sqrt();
        dev = dev.max((v.q_pp - e).norm()).max((v.q_mm - e).norm());
    }
    Ok((
        dev <= 1e-10,
        format!("30 points, max deviation from 1 - sqrt(-2z) = {dev:.2e}"),
    ))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let params = [
        (0.0, 0.3),
        (0.0, 1.0),
        (0.3, 0.5),
        (0.5, 0.9),
        (1.0, 0.5),
        (2.0, 0.5),
        (1.5, 0.3),
        (0.9, 0.2),
    ];
    let zs = [
        c(-2.5, 0.0),
        c(0.0, 1.0),
        c(-0.6, -0.8),
        c(0.7, 0.5),
        c(-4.0, 0.0),
        c(-1.3, 2.0),
    ];
    let mut n = 0;
    let mut cases = [0usize; 3];
    let mut worst: f64 = 0.0;
    for (a, b) in params {
        let q = p(a, b);
        let slot = match classify_regime(&q).regime {
            Regime::CaseA => 0,
            Regime::CaseB => 1,
            Regime::CaseC => 2,
            Regime::Unsupported => continue,
        };
        for z in zs {
            if !series_validity(&q, z).any {
                continue;
            }
            n += 1;
            cases[slot] += 1;
            for s in Spin::BOTH {
                let v = gs_ren_origin(&q, s, z)?;
                let o = gs_ren_quadrature(&q, s, z, 1e-9)?;
                worst = worst.max((o.value - v).norm() / (1.0 + v.norm()));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = n >= 30 && cases.iter().all(|&k| k > 0) && worst <= 1e-6 && secs <= 120.0;
    Ok((
        ok,
        format!("{n} triples (A/B/C = {cases:?}), max relative deviation {worst:.2e}, {secs:.2} s"),
    ))
}

fn large_coupling_constants() -> Outcome {
    let x11 = LargeCouplingContext::for_nu(1.0, 1.0)?;
    let xinf = LargeCouplingContext::for_nu(1e6, 1.0)?;
    let t3 = embedded_large_alpha(
        &p(2.0, 1e-5),
        &EffectiveCouplings::new(0.0, 0.0, 0.0)?,
        1e-10,
    )?;
    let e = t3.accepted.first().map(|e| e.energy).unwrap_or(f64::NAN);
    let ok = (x11.x_nu_1 - 0.76538).abs() <= 5e-5
        && (x11.e_nu_1 - 1.14643).abs() <= 5e-5
        && (xinf.x_nu_1 - 1.16234).abs() <= 1e-4
        && (e - 0.74018).abs() <= 1e-3;
    Ok((
        ok,
        format!(
            "x_11 = {:.6}, E_11/beta = {:.6}, x at nu=1e6 = {:.6}, E(alpha=2, beta=1e-5) = {:.6}",
            x11.x_nu_1, x11.e_nu_1, xinf.x_nu_1, e
        ),
    ))
}

fn sweep_limit() -> Outcome {
    let e = symmetric_small_beta_eigenvalue(2.0, 0.0)?;
    let r = -r_map_constant();
    Ok((
        (e + 1.43923).abs() <= 1e-4 && (r + 0.17850).abs() <= 1e-5,
        format!("E = {e:.6}, r = {r:.6}"),
    ))
}

fn diagonal_pair() -> Outcome {
    let q = p(2.0, 0.5);
    let roots = discrete_eigenvalues(&q, &Hermitian2::scalar(0.17850), &SearchOptions::default())?;
    let e: Vec<f64> = roots.iter().map(|r| r.energy).collect();
    let set_ok = e.len() == 2 && (e[0] + 1.60313).abs() <= 1e-3 && (e[1] + 1.37956).abs() <= 1e-3;
    let sigma = threshold_sigma(&q);
    Ok((
        set_ok && sigma == 1.0625,
        format!("discrete {e:.6?}, Sigma = {sigma}"),
    ))
}

fn alpha0_conditions() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut roots = 0;
    for _ in 0..20 {
        let b = rng.gen_range(0.05..2.0);
        let wp = rng.gen_range(-2.0..1.0);
        let wm = rng.gen_range(-2.0..1.0);
        let g = rng.gen_range(0.0..1.5);
        let q = p(0.0, b);
        let gamma = gamma_from_effective(&q, &EffectiveCouplings::new(wp, wm, g)?)?;
        for r in discrete_eigenvalues(&q, &gamma, &SearchOptions::default())? {
            if r.energy >= -b {
                continue;
            }
            roots += 1;
            let prod = (wp + (b - r.energy).sqrt()) * (wm + (-b - r.energy).sqrt());
            worst = worst.max((g - prod).abs());
        }
    }
    let b: f64 = 0.5;
    let rt = (2.0 * b).sqrt();
    let en = |wp: f64, wm: f64, g: f64| -> Result<Vec<f64>> {
        Ok(
            embedded_alpha0(b, &EffectiveCouplings::new(wp, wm, g)?, 1e-10)
                .iter()
                .map(|e| e.energy)
                .collect(),
        )
    };
    let produce = en(0.2, 0.7, (0.2 + rt) * 0.7)? == vec![-b]
        && en(-0.6, 0.3, 0.0)? == vec![b - 0.36]
        && en(0.4, 0.0, 0.0)?.contains(&b);
    let withhold = en(-1.5, 0.3, 0.0)?.is_empty() && en(-0.5, 0.3, 0.01)?.is_empty();
    let beta0 = embedded_alpha0(0.0, &EffectiveCouplings::new(0.0, 0.0, 0.0)?, 1e-10).is_empty();
    Ok((
        roots > 0 && worst <= 1e-9 && produce && withhold && beta0,
        format!(
            "{roots} roots, max |gamma - product| = {worst:.2e}; produce {produce}, withhold {withhold}, beta=0 empty {beta0}"
        ),
    ))
}

fn perturbation_order() -> Outcome {
    let beta = 0.5;
    let co = expansion_coefficients(beta, &Hermitian2::zero())?;
    let g = Hermitian2::diag(
        co.n0[0].powi(2) * (1.0 / (4.0 * PI) - co.l0[0]),
        co.n0[1].powi(2) * (-0.4 / (4.0 * PI) - co.l0[1]),
    );
    let e0 = -beta - 0.16;
    let e2v = e2(beta, &g, e0)?.e2.values()[0];
    let opts = SearchOptions {
        tol: 1e-15,
        ..Default::default()
    };
    let root = |a: f64| -> Result<f64> {
        Ok(discrete_eigenvalues(&p(a, beta), &g, &opts)?
            .into_iter()
            .map(|d| d.energy)
            .min_by(|x, y| (x - e0).abs().partial_cmp(&(y - e0).abs()).unwrap())
            .unwrap_or(f64::NAN))
    };
    let scale = (2.0 * beta).sqrt();
    let mut errs = Vec::new();
    for k in [0.2, 0.1, 0.05] {
        let a = k * scale;
        errs.push((root(a)? - e0 - a * a * e2v).abs());
    }
    let r1 = errs[0] / errs[1];
    let r2 = errs[1] / errs[2];
    let alphas: Vec<f64> = (1..=16).map(|k| 0.02 * k as f64).collect();
    let powers = [1, 2, 3, 4, 6];
    let mut rhs = Vec::new();
    for &a in &alphas {
        rhs.push(root(a)? - e0);
    }
    let m = DMatrix::from_fn(alphas.len(), powers.len(), |i, j| alphas[i].powi(powers[j]));
    let coef = m
        .svd(true, true)
        .solve(&DVector::from_vec(rhs), 1e-14)
        .map_err(|e| rashba_spectrum::Error::NoSolution(e.to_string()))?;
    let (c1, c2, c3) = (coef[0], coef[1], coef[2]);
    let ok = r1 >= 12.0 && r2 >= 12.0 && c1.abs() <= 1e-3 * c2.abs() && c3.abs() <= 1e-3 * c2.abs();
    Ok((
        ok,
        format!("E2 = {e2v:.6}, ratios {r1:.2}, {r2:.2}; fit c1 = {c1:.2e}, c2 = {c2:.6}, c3 = {c3:.2e}"),
    ))
}

fn cnd0_landscape() -> Outcome {
    let (b, v) = cnd0_maximum();
    Ok((
        (v + 0.14874).abs() <= 1e-4 && (b - 1.00553).abs() <= 1e-3,
        format!("max {v:.6} at beta = {b:.6}"),
    ))
}

fn forbidden_band() -> Outcome {
    let q = p(2.0, 0.5);
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..10 {
        let eff = EffectiveCouplings::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), 0.0)?;
        let r = forbidden_band_scan(&q, &eff, 1000)?;
        worst = worst.max(r.max_gamma_required);
    }
    Ok((
        worst < 0.0,
        format!("largest required gamma over 10 pairs = {worst:.4e}"),
    ))
}

fn norm_identities() -> Outcome {
    let q = p(2.0, 0.5);
    let mut d_i: f64 = 0.0;
    for s in Spin::BOTH {
        d_i = d_i.max((phi_norm_sq(&q, s, c(0.0, 1.0))? - 1.0).abs());
    }
    let mut d_im: f64 = 0.0;
    for k in 0..10 {
        let z = c(-3.0 + 0.6 * k as f64, 0.2 + 0.15 * k as f64);
        let k = krein_q(&q, z)?;
        for s in Spin::BOTH {
            d_im = d_im.max((k.get(s).im / z.im - phi_norm_sq(&q, s, z)?).abs());
        }
    }
    let mut d_q: f64 = 0.0;
    for e in [-1.2, -1.5, -2.0, -3.0, -6.0] {
        for s in Spin::BOTH {
            let v = phi_norm_sq(&q, s, c(e, 0.0))?;
            let o = phi_norm_quadrature(&q, s, c(e, 0.0), 1e-9)?;
            d_q = d_q.max((o.value.re - v).abs());
        }
    }
    Ok((
        d_i <= 1e-8 && d_im <= 1e-8 && d_q <= 1e-5,
        format!("|norm(i) - 1| = {d_i:.2e}, Im Q/Im z gap = {d_im:.2e}, real-axis vs quadrature = {d_q:.2e}"),
    ))
}

fn threshold_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        for j in 0..10 {
            let q = p(0.3 * i as f64, 0.05 + 0.2 * j as f64);
            worst = worst.max((threshold_sigma(&q) - sigma_numeric(&q)).abs());
        }
    }
    let mut cc: f64 = 0.0;
    for (a, b) in [(2.0, 0.5), (1.0, 0.5), (3.0, 0.2), (1.5, 0.01)] {
        let q = p(a, b);
        let nu = q.nu().unwrap();
        cc = cc.max((e_nu(b, nu, 1.0)? - threshold_sigma(&q)).abs());
    }
    Ok((
        worst <= 1e-10 && cc <= 1e-12,
        format!("max |Sigma - numeric| = {worst:.2e}, max |E_nu(1) - Sigma| = {cc:.2e}"),
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Q-normalization", q_normalization),
        ("classical limit", classical_limit),
        ("oracle equivalence", oracle_equivalence),
        ("large-coupling constants", large_coupling_constants),
        ("large-c sweep limit", sweep_limit),
        ("diagonal coupling pair", diagonal_pair),
        ("alpha=0 conditions", alpha0_conditions),
        ("perturbation order", perturbation_order),
        ("-beta persistence landscape", cnd0_landscape),
        ("forbidden band", forbidden_band),
        ("norm identities", norm_identities),
        ("threshold identities", threshold_identities),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" },
            k + 1
        );
    }
    if failed > 0 {
        println!("{failed} of 12 criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
