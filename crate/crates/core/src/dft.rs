//! The centered DFT and the support/length/sign-change analysis of grid vectors.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dim::{DftDimension, GridVector};
use crate::error::{Error, Result};

/// Default relative threshold below which an entry counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// `e^{-2 pi i r / N}` for `r = 0..N`. Phases are reduced modulo `N` in
/// integer arithmetic before the trig call.
pub(crate) fn twiddles(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|r| {
            let angle = -2.0 * PI * r as f64 / n as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .collect()
}

/// `(k * l) mod N` as a table position.
#[inline]
pub(crate) fn phase_index(k: i64, l: i64, n: usize) -> usize {
    (k * l).rem_euclid(n as i64) as usize
}

/// `b(l) = N^{-1/2} sum_{k in I_N} e^{-2 pi i k l / N} a(k)` by direct summation.
pub fn centered_dft<T>(a: &GridVector<T>) -> GridVector<Complex64>
where
    T: Copy + Into<Complex64>,
{
    let dim = a.dim();
    let n = dim.size();
    let tw = twiddles(n);
    let scale = 1.0 / (n as f64).sqrt();
    GridVector::from_fn(dim, |l| {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &x) in a.iter() {
            acc += tw[phase_index(k, l, n)] * x.into();
        }
        acc * scale
    })
}

/// Dense centered DFT matrix, row-major with rows `l` and columns `k` in `I_N` order.
pub fn dft_matrix(dim: DftDimension) -> Vec<Complex64> {
    let n = dim.size();
    let tw = twiddles(n);
    let scale = 1.0 / (n as f64).sqrt();
    let mut out = Vec::with_capacity(n * n);
    for l in dim.indices() {
        for k in dim.indices() {
            out.push(tw[phase_index(k, l, n)] * scale);
        }
    }
    out
}

/// Magnitude of an entry, for support and zero tests.
pub trait Magnitude {
    fn magnitude(&self) -> f64;
}

impl Magnitude for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Magnitude for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

/// Parity under `k -> -k (mod N)` with exact comparisons.
pub fn parity_of(a: &GridVector<f64>) -> Parity {
    parity_within(a, 0.0)
}

/// Parity where `a(k) = +-a(j)` is tested up to `tol * max|a|`.
pub fn parity_within(a: &GridVector<f64>, tol: f64) -> Parity {
    let dim = a.dim();
    let slack = tol * a.max_abs();
    let mut even = true;
    let mut odd = true;
    for (k, &x) in a.iter() {
        let y = a[dim.wrap(-k)];
        even &= (x - y).abs() <= slack;
        odd &= (x + y).abs() <= slack;
    }
    if even {
        Parity::Even
    } else if odd {
        Parity::Odd
    } else {
        Parity::Neither
    }
}

/// Indices `k` with `|a(k)| > zero_tol * max|a|`, ascending. Empty for the zero vector.
pub fn support<T: Magnitude>(a: &GridVector<T>, zero_tol: f64) -> Vec<i64> {
    let max = a.values().iter().fold(0.0_f64, |m, x| m.max(x.magnitude()));
    if max == 0.0 {
        return Vec::new();
    }
    let cut = zero_tol * max;
    a.iter()
        .filter(|(_, x)| x.magnitude() > cut)
        .map(|(k, _)| k)
        .collect()
}

/// `max supp - min supp + 1`.
pub fn signal_length<T: Magnitude>(a: &GridVector<T>, zero_tol: f64) -> Result<usize> {
    let supp = support(a, zero_tol);
    match (supp.first(), supp.last()) {
        (Some(lo), Some(hi)) => Ok((hi - lo + 1) as usize),
        _ => Err(Error::UndefinedLength),
    }
}

/// Number of sign changes between consecutive nonzero entries; entries with
/// `|a(k)| <= zero_tol * max|a|` are skipped as zeros.
pub fn zero_crossings(a: &GridVector<f64>, zero_tol: f64) -> usize {
    let cut = zero_tol * a.max_abs();
    let mut count = 0;
    let mut last_sign: Option<bool> = None;
    for &x in a.values() {
        if x.abs() <= cut || x == 0.0 {
            continue;
        }
        let positive = x > 0.0;
        if let Some(prev) = last_sign {
            if prev != positive {
                count += 1;
            }
        }
        last_sign = Some(positive);
    }
    count
}

/// Lengths entering the bound `l(a) + l(F a) >= N + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthSum {
    pub length: usize,
    pub transform_length: usize,
    pub n: usize,
}

impl LengthSum {
    pub fn sum(&self) -> usize {
        self.length + self.transform_length
    }

    pub fn holds(&self) -> bool {
        self.sum() > self.n
    }
}

pub fn length_sum_bound_check(a: &GridVector<f64>, zero_tol: f64) -> Result<LengthSum> {
    let length = signal_length(a, zero_tol)?;
    let transform_length = signal_length(&centered_dft(a), zero_tol)?;
    Ok(LengthSum {
        length,
        transform_length,
        n: a.dim().size(),
    })
}
