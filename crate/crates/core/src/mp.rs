//! Multi-precision vectors over `I_N` (MPFR via `rug`).
//!
//! The seed families are exponentially ill-conditioned: the Gram-Schmidt
//! residuals of the eigenspace bases shrink to about `2^{-0.42 N}` of the
//! source norms, so orthogonalisation loses roughly `0.8 N` bits. Everything
//! upstream of the final `f64` eigenbasis therefore runs at
//! [`working_precision`] bits.

use rug::float::Constant;
use rug::ops::NegAssign;
use rug::Float;

use crate::dim::{DftDimension, GridVector};

/// Bits of working precision used for dimension `n`.
pub fn working_precision(n: usize) -> u32 {
    n as u32 + 128
}

/// `pi` at `prec` bits.
pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// `sin(pi * num / den)` at `prec` bits. Odd in `num` exactly.
pub fn sin_pi_ratio(prec: u32, num: i64, den: i64) -> Float {
    let x = pi(prec) * Float::with_val(prec, num.unsigned_abs()) / den;
    let s = x.sin();
    if num < 0 {
        -s
    } else {
        s
    }
}

/// `cos(pi * num / den)` at `prec` bits.
pub fn cos_pi_ratio(prec: u32, num: i64, den: i64) -> Float {
    let x = pi(prec) * Float::with_val(prec, num.unsigned_abs()) / den;
    x.cos()
}

/// Real vector over `I_N` with MPFR entries.
#[derive(Debug, Clone, PartialEq)]
pub struct MpVector {
    dim: DftDimension,
    prec: u32,
    values: Vec<Float>,
}

impl MpVector {
    pub fn zeros(dim: DftDimension, prec: u32) -> Self {
        Self {
            dim,
            prec,
            values: vec![Float::new(prec); dim.size()],
        }
    }

    pub fn from_fn(dim: DftDimension, prec: u32, f: impl FnMut(i64) -> Float) -> Self {
        Self {
            dim,
            prec,
            values: dim.indices().map(f).collect(),
        }
    }

    pub fn from_f64(v: &GridVector<f64>, prec: u32) -> Self {
        Self {
            dim: v.dim(),
            prec,
            values: v
                .values()
                .iter()
                .map(|&x| Float::with_val(prec, x))
                .collect(),
        }
    }

    pub fn dim(&self) -> DftDimension {
        self.dim
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn values(&self) -> &[Float] {
        &self.values
    }

    pub fn get(&self, k: i64) -> &Float {
        &self.values[self.dim.position(k)]
    }

    pub fn dot(&self, other: &Self) -> Float {
        let mut acc = Float::new(self.prec);
        for (a, b) in self.values.iter().zip(&other.values) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc += a * b;
        }
        acc
    }

    pub fn norm(&self) -> Float {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> Float {
        let mut m = Float::new(self.prec);
        for x in &self.values {
            let a = Float::with_val(self.prec, x.abs_ref());
            if a > m {
                m = a;
            }
        }
        m
    }

    pub fn scale(&mut self, c: &Float) {
        for x in &mut self.values {
            *x *= c;
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Float, other: &Self) {
        for (x, y) in self.values.iter_mut().zip(&other.values) {
            if y.is_zero() {
                continue;
            }
            *x += c * y;
        }
    }

    /// `sign * self + c * other` as a new vector.
    pub fn combine(&self, sign: f64, c: &Float, other: &Self) -> Self {
        let mut out = self.clone();
        if sign < 0.0 {
            for x in &mut out.values {
                x.neg_assign();
            }
        }
        out.axpy(c, other);
        out
    }

    /// Entries rounded to the nearest `f64`.
    pub fn to_f64(&self) -> GridVector<f64> {
        GridVector::from_values(self.dim, self.values.iter().map(Float::to_f64).collect())
            .expect("length preserved")
    }

    /// Entries multiplied by `2^shift` and rounded to `f64`.
    pub fn to_f64_scaled(&self, shift: i32) -> GridVector<f64> {
        GridVector::from_values(
            self.dim,
            self.values
                .iter()
                .map(|x| Float::with_val(self.prec, x << shift).to_f64())
                .collect(),
        )
        .expect("length preserved")
    }

    /// Indices with `|a(k)| > zero_tol * max|a|`, compared at full precision.
    pub fn support(&self, zero_tol: f64) -> Vec<i64> {
        let max = self.max_abs();
        if max.is_zero() {
            return Vec::new();
        }
        let cut = Float::with_val(self.prec, &max * zero_tol);
        self.dim
            .indices()
            .zip(&self.values)
            .filter(|(_, x)| Float::with_val(self.prec, x.abs_ref()) > cut)
            .map(|(k, _)| k)
            .collect()
    }
}

/// `S(0..=2N)` at `prec` bits, with `S(0) = 1` and `S(k) = 0` for `k >= N`.
#[derive(Debug, Clone)]
pub struct MpSineTable {
    n: usize,
    prec: u32,
    values: Vec<Float>,
}

impl MpSineTable {
    pub fn new(n: usize, prec: u32) -> Self {
        let mut values = Vec::with_capacity(2 * n + 1);
        values.push(Float::with_val(prec, 1));
        for k in 1..=2 * n {
            if k < n {
                let factor = sin_pi_ratio(prec, k as i64, n as i64) * 2u32;
                let next = Float::with_val(prec, &values[k - 1] * &factor);
                values.push(next);
            } else {
                values.push(Float::new(prec));
            }
        }
        Self { n, prec, values }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// `S(k)`. Negative arguments never occur in the seed formulas and panic.
    pub fn get(&self, k: i64) -> &Float {
        assert!(k >= 0, "S({k}) requested");
        let k = k as usize;
        assert!(k <= 2 * self.n, "S({k}) beyond table");
        &self.values[k]
    }
}

/// Centered DFT at multi-precision, returned as real and imaginary parts.
pub fn centered_dft_mp(a: &MpVector) -> (MpVector, MpVector) {
    let dim = a.dim();
    let n = dim.size();
    let prec = a.precision();
    let cos: Vec<Float> = (0..n)
        .map(|r| cos_pi_ratio(prec, 2 * r as i64, n as i64))
        .collect();
    let sin: Vec<Float> = (0..n)
        .map(|r| sin_pi_ratio(prec, 2 * r as i64, n as i64))
        .collect();
    let scale = Float::with_val(prec, n).sqrt().recip();
    let mut re = MpVector::zeros(dim, prec);
    let mut im = MpVector::zeros(dim, prec);
    for (pos, l) in dim.indices().enumerate() {
        let mut acc_re = Float::new(prec);
        let mut acc_im = Float::new(prec);
        for (k, x) in dim.indices().zip(a.values()) {
            if x.is_zero() {
                continue;
            }
            let r = crate::dft::phase_index(k, l, n);
            acc_re += &cos[r] * x;
            acc_im -= &sin[r] * x;
        }
        re.values[pos] = acc_re * &scale;
        im.values[pos] = acc_im * &scale;
    }
    (re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_table_reflection_holds_at_high_precision() {
        let n = 41;
        let t = MpSineTable::new(n, 256);
        for k in 0..n as i64 {
            let prod = Float::with_val(256, t.get(k) * t.get(n as i64 - k - 1));
            let err = (prod - n as u32).abs().to_f64();
            assert!(err < 1e-60, "k={k} err={err}");
        }
        assert!(t.get(n as i64).is_zero());
    }

    #[test]
    fn mp_dft_matches_f64_dft() {
        let dim = DftDimension::new(10).unwrap();
        let v = GridVector::from_fn(dim, |k| (k as f64 * 0.7).cos() + 0.1 * k as f64);
        let (re, im) = centered_dft_mp(&MpVector::from_f64(&v, 200));
        let b = crate::dft::centered_dft(&v);
        for l in dim.indices() {
            assert!((re.get(l).to_f64() - b[l].re).abs() < 1e-14);
            assert!((im.get(l).to_f64() - b[l].im).abs() < 1e-14);
        }
    }

    #[test]
    fn sin_is_exactly_odd() {
        let a = sin_pi_ratio(300, 7, 41);
        let b = sin_pi_ratio(300, -7, 41);
        assert_eq!(a, -b);
    }
}
