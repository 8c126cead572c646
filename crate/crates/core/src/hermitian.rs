//! 2×2 Hermitian and general complex matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `[[pp, pm], [conj(pm), mm]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "Hermitian2Json", into = "Hermitian2Json")]
pub struct Hermitian2 {
    pub pp: f64,
    pub mm: f64,
    pub pm: Complex64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Hermitian2Json {
    pp: f64,
    mm: f64,
    #[serde(default)]
    pm_re: f64,
    #[serde(default)]
    pm_im: f64,
}

impl From<Hermitian2Json> for Hermitian2 {
    fn from(j: Hermitian2Json) -> Self {
        Hermitian2::new(j.pp, j.mm, Complex64::new(j.pm_re, j.pm_im))
    }
}

impl From<Hermitian2> for Hermitian2Json {
    fn from(h: Hermitian2) -> Self {
        Hermitian2Json {
            pp: h.pp,
            mm: h.mm,
            pm_re: h.pm.re,
            pm_im: h.pm.im,
        }
    }
}

impl Hermitian2 {
    pub fn new(pp: f64, mm: f64, pm: Complex64) -> Self {
        Self { pp, mm, pm }
    }

    pub fn diag(pp: f64, mm: f64) -> Self {
        Self::new(pp, mm, Complex64::new(0.0, 0.0))
    }

    pub fn scalar(v: f64) -> Self {
        Self::diag(v, v)
    }

    pub fn zero() -> Self {
        Self::scalar(0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.pp.is_finite()
            && self.mm.is_finite()
            && self.pm.re.is_finite()
            && self.pm.im.is_finite()
    }

    pub fn det(&self) -> f64 {
        self.pp * self.mm - self.pm.norm_sqr()
    }

    pub fn trace(&self) -> f64 {
        self.pp + self.mm
    }

    /// Diagonal entry for index 0 (`+`) or 1 (`−`).
    pub fn diag_entry(&self, i: usize) -> f64 {
        if i == 0 {
            self.pp
        } else {
            self.mm
        }
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let half_tr = 0.5 * self.trace();
        let d = 0.5 * (self.pp - self.mm);
        let rad = d.hypot(self.pm.norm());
        [half_tr - rad, half_tr + rad]
    }

    pub fn inverse(&self) -> Result<Hermitian2> {
        let det = self.det();
        let scale = self.pp.abs().max(self.mm.abs()).max(self.pm.norm());
        if det == 0.0 || det.abs() <= 1e-14 * scale * scale || !det.is_finite() {
            return Err(Error::Singular(format!("det = {det:e}")));
        }
        Ok(Hermitian2::new(
            self.mm / det,
            self.pp / det,
            -self.pm / det,
        ))
    }

    pub fn neg(&self) -> Hermitian2 {
        Hermitian2::new(-self.pp, -self.mm, -self.pm)
    }

    pub fn sub(&self, o: &Hermitian2) -> Hermitian2 {
        Hermitian2::new(self.pp - o.pp, self.mm - o.mm, self.pm - o.pm)
    }

    pub fn to_mat2(&self) -> Mat2 {
        Mat2([
            [Complex64::new(self.pp, 0.0), self.pm],
            [self.pm.conj(), Complex64::new(self.mm, 0.0)],
        ])
    }
}

/// General complex 2×2 matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let d = self.det();
        let m = &self.0;
        let scale = m.iter().flatten().map(|v| v.norm()).fold(0.0f64, f64::max);
        if d.norm() <= 1e-14 * scale * scale || !d.re.is_finite() || !d.im.is_finite() {
            return Err(Error::Singular(format!("det = {:e}", d.norm())));
        }
        Ok(Mat2([
            [m[1][1] / d, -m[0][1] / d],
            [-m[1][0] / d, m[0][0] / d],
        ]))
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let h = Hermitian2::new(0.25, -1.5, Complex64::new(0.1, -0.3));
        let s = serde_json::to_string(&h).unwrap();
        let back: Hermitian2 = serde_json::from_str(&s).unwrap();
        assert_eq!(h, back);
        let d: Hermitian2 = serde_json::from_str(r#"{"pp": 1.0, "mm": 2.0}"#).unwrap();
        assert_eq!(d, Hermitian2::diag(1.0, 2.0));
        assert!(serde_json::from_str::<Hermitian2>(r#"{"pp": 1.0, "mm": 2.0, "x": 0}"#).is_err());
    }

    #[test]
    fn inverse_and_det() {
        let h = Hermitian2::new(2.0, 3.0, Complex64::new(1.0, 1.0));
        assert_eq!(h.det(), 4.0);
        let inv = h.inverse().unwrap();
        let prod = {
            let a = h.to_mat2().0;
            let b = inv.to_mat2().0;
            [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ]
        };
        assert!((prod[0][0] - 1.0).norm() < 1e-15 && prod[0][1].norm() < 1e-15);
        assert!((prod[1][1] - 1.0).norm() < 1e-15 && prod[1][0].norm() < 1e-15);
        assert!(Hermitian2::diag(1.0, 0.0).inverse().is_err());
    }

    #[test]
    fn eigenvalues_sorted() {
        let h = Hermitian2::new(1.0, -1.0, Complex64::new(0.0, 1.0));
        let [lo, hi] = h.eigenvalues();
        let r = 2f64.sqrt();
        assert!((lo + r).abs() < 1e-15 && (hi - r).abs() < 1e-15);
    }

    #[test]
    fn mat2_inverse() {
        let m = Mat2([
            [Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(4.0, 0.0)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.0[0][0], Complex64::new(0.5, 0.0));
        assert_eq!(inv.0[1][1], Complex64::new(0.25, 0.0));
    }
}
