//! Fractional powers of the centered DFT by spectral synthesis over the eigenbasis.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::dim::{DftDimension, GridVector};
use crate::eigenbasis::EigenBasis;
use crate::error::{Error, Result};

/// `F^alpha = sum_n e^{-i pi p(n) alpha / 2} phi_n phi_n^T`, stored densely.
#[derive(Debug, Clone)]
pub struct FrftOperator {
    dim: DftDimension,
    alpha: f64,
    /// row-major, rows `l` and columns `k` in `I_N` order
    matrix: Vec<Complex64>,
}

/// Orthogonal projectors onto `W, X, Y, Z`, row-major.
fn projectors(basis: &EigenBasis) -> [Vec<f64>; 4] {
    let n = basis.dim().size();
    let mut proj: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0; n * n]);
    for (idx, phi) in basis.vectors().iter().enumerate() {
        let p = &mut proj[basis.exponent(idx) as usize];
        let v = phi.values();
        for (row, &a) in v.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (dst, &b) in p[row * n..(row + 1) * n].iter_mut().zip(v) {
                *dst += a * b;
            }
        }
    }
    proj
}

/// Eigenvalue `e^{-i pi p alpha / 2}` of the order-`alpha` transform on exponent `p`.
pub fn fractional_eigenvalue(p: u8, alpha: f64) -> Complex64 {
    Complex64::from_polar(1.0, -FRAC_PI_2 * p as f64 * alpha)
}

impl FrftOperator {
    pub fn build(basis: &EigenBasis, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!(
                "transform order must be finite, got {alpha}"
            )));
        }
        let n = basis.dim().size();
        let proj = projectors(basis);
        let mut matrix = vec![Complex64::new(0.0, 0.0); n * n];
        for (p, pm) in proj.iter().enumerate() {
            let c = fractional_eigenvalue(p as u8, alpha);
            for (dst, &x) in matrix.iter_mut().zip(pm) {
                *dst += c * x;
            }
        }
        Ok(Self {
            dim: basis.dim(),
            alpha,
            matrix,
        })
    }

    pub fn dim(&self) -> DftDimension {
        self.dim
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    /// Entry at grid indices `(l, k)`.
    pub fn entry(&self, l: i64, k: i64) -> Complex64 {
        let n = self.dim.size();
        self.matrix[self.dim.position(l) * n + self.dim.position(k)]
    }

    pub fn apply(&self, a: &GridVector<Complex64>) -> Result<GridVector<Complex64>> {
        let n = self.dim.size();
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.len(),
            });
        }
        let x = a.values();
        let out = self
            .matrix
            .chunks_exact(n)
            .map(|row| row.iter().zip(x).map(|(m, v)| m * v).sum())
            .collect();
        GridVector::from_values(self.dim, out)
    }

    pub fn apply_real(&self, a: &GridVector<f64>) -> Result<GridVector<Complex64>> {
        self.apply(&a.map(|&x| Complex64::new(x, 0.0)))
    }

    pub fn conjugate_transpose(&self) -> Vec<Complex64> {
        let n = self.dim.size();
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                out[c * n + r] = self.matrix[r * n + c].conj();
            }
        }
        out
    }

    /// `max |(M M^H - I)_{ij}|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.dim.size();
        let m = &self.matrix;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += m[i * n + k] * m[j * n + k].conj();
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

/// Largest entrywise distance between two equally sized matrices.
pub fn max_entry_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "matrix sizes differ");
    a.iter()
        .zip(b)
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).norm()))
}
