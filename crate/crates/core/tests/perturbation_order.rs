use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rashba_spectrum::perturbation::{e2, expansion_coefficients, E2Branch};
use rashba_spectrum::spectrum::{discrete_eigenvalues, SearchOptions};
use rashba_spectrum::{Hermitian2, SystemParams};

const BETA: f64 = 0.5;

fn diag_gamma(wp: f64, wm: f64) -> Hermitian2 {
    let c = expansion_coefficients(BETA, &Hermitian2::zero()).unwrap();
    Hermitian2::diag(
        c.n0[0].powi(2) * (wp / (4.0 * PI) - c.l0[0]),
        c.n0[1].powi(2) * (wm / (4.0 * PI) - c.l0[1]),
    )
}

fn root_near(alpha: f64, g: &Hermitian2, target: f64) -> f64 {
    let p = SystemParams::new(alpha, BETA).unwrap();
    let opts = SearchOptions {
        tol: 1e-15,
        ..Default::default()
    };
    discrete_eigenvalues(&p, g, &opts)
        .unwrap()
        .into_iter()
        .map(|d| d.energy)
        .min_by(|a, b| (a - target).abs().partial_cmp(&(b - target).abs()).unwrap())
        .unwrap()
}

#[test]
fn remainder_is_fourth_order() {
    let g = diag_gamma(1.0, -0.4);
    let e0 = -BETA - 0.16;
    let r = e2(BETA, &g, e0).unwrap();
    assert_eq!(r.branch, E2Branch::DiagonalMinus);
    let e2v = r.e2.values()[0];
    let scale = (2.0 * BETA).sqrt();
    let errs: Vec<f64> = [0.2, 0.1, 0.05]
        .iter()
        .map(|k| {
            let a = k * scale;
            (root_near(a, &g, e0) - e0 - a * a * e2v).abs()
        })
        .collect();
    for w in errs.windows(2) {
        assert!(w[0] / w[1] >= 12.0, "ratios {errs:?}");
    }
}

#[test]
fn generic_coupling_remainder_is_fourth_order() {
    let g = Hermitian2::new(0.3, -0.1, num_complex::Complex64::new(0.05, 0.02));
    let base = discrete_eigenvalues(
        &SystemParams::new(0.0, BETA).unwrap(),
        &g,
        &SearchOptions {
            tol: 1e-15,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(base.len(), 1);
    let e0 = base[0].energy;
    let r = e2(BETA, &g, e0).unwrap();
    assert_eq!(r.branch, E2Branch::GenericGamma);
    let e2v = r.e2.values()[0];
    let errs: Vec<f64> = [0.2, 0.1, 0.05]
        .iter()
        .map(|&a| (root_near(a, &g, e0) - e0 - a * a * e2v).abs())
        .collect();
    for w in errs.windows(2) {
        assert!(w[0] / w[1] >= 12.0, "ratios {errs:?}");
    }
}

#[test]
fn odd_orders_vanish() {
    // least squares in α, α², α³ with α⁴ and α⁶ as nuisance terms
    let g = diag_gamma(1.0, -0.4);
    let e0 = -BETA - 0.16;
    let alphas: Vec<f64> = (1..=16).map(|k| 0.02 * k as f64).collect();
    let powers = [1, 2, 3, 4, 6];
    let a = DMatrix::from_fn(alphas.len(), powers.len(), |i, j| alphas[i].powi(powers[j]));
    let b = DVector::from_iterator(
        alphas.len(),
        alphas.iter().map(|&x| root_near(x, &g, e0) - e0),
    );
    let coef = a.svd(true, true).solve(&b, 1e-14).unwrap();
    let (c1, c2, c3) = (coef[0], coef[1], coef[2]);
    assert!(c1.abs() <= 1e-3 * c2.abs(), "c1 = {c1}, c2 = {c2}");
    assert!(c3.abs() <= 1e-3 * c2.abs(), "c3 = {c3}, c2 = {c2}");
    let e2v = e2(BETA, &g, e0).unwrap().e2.values()[0];
    assert!(
        (c2 - e2v).abs() < 1e-4 * e2v.abs().max(1.0),
        "{c2} vs {e2v}"
    );
}
