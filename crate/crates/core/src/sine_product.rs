//! The sine products `S(k) = prod_{j=1}^{k} 2 sin(pi j / N)`.
//!
//! `S(0) = 1` (empty product), which is what `S(k) S(N-k-1) = N` requires at
//! `k = 0`, and `S(k) = 0` exactly for `k >= N`.

use std::f64::consts::PI;

use rug::Float;

use crate::dim::DftDimension;
use crate::error::{Error, Result};
use crate::mp::{cos_pi_ratio, sin_pi_ratio, working_precision, MpSineTable};

#[derive(Debug, Clone)]
pub struct SineProductTable {
    dim: DftDimension,
    values: Vec<f64>,
    log_values: Vec<f64>,
}

impl SineProductTable {
    /// Builds `S(0..=2N)` and `ln S(k)` for `1 <= k <= N-1`.
    pub fn build(dim: DftDimension) -> Self {
        let n = dim.size();
        let (values, log_values) = raw_table(n);
        Self {
            dim,
            values,
            log_values,
        }
    }

    pub fn dim(&self) -> DftDimension {
        self.dim
    }

    /// `S(k)` for `0 <= k <= 2N`. Entries that overflow `f64` are `+inf`;
    /// use [`SineProductTable::log_s`] for those.
    pub fn value(&self, k: usize) -> f64 {
        self.values[k]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `ln S(k)` as a sum of logarithms, for `1 <= k <= N-1`.
    pub fn log_s(&self, k: usize) -> Result<f64> {
        let n = self.dim.size();
        if k == 0 || k >= n {
            return Err(Error::Domain(format!(
                "ln S({k}) needs 1 <= k <= {}",
                n - 1
            )));
        }
        Ok(self.log_values[k - 1])
    }
}

fn raw_table(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut values = Vec::with_capacity(2 * n + 1);
    let mut log_values = Vec::with_capacity(n.saturating_sub(1));
    values.push(1.0);
    let mut acc_log = 0.0;
    for k in 1..=2 * n {
        if k < n {
            let factor = 2.0 * (PI * k as f64 / n as f64).sin();
            acc_log += factor.ln();
            log_values.push(acc_log);
            values.push(values[k - 1] * factor);
        } else {
            values.push(0.0);
        }
    }
    (values, log_values)
}

/// Relative residual `|LHS - RHS| / (1 + |RHS|)` of the q-binomial identity
///
/// `sum_{k=0}^{N-1-n} S(n+k) S(N-k-1) e^{-(pi i / 2N)(2k+n+1-N)(2m-n)}
///     = S(n) S(N+m-n-1) S(N-m-1)`,
///
/// valid for every `N >= 1` and `0 <= m, n <= N-1`. Both sides are evaluated
/// in MPFR, so the residual measures the identity rather than cancellation.
pub fn qbinomial_identity_residual(n_dim: usize, m: usize, n: usize) -> Result<f64> {
    if n_dim == 0 || m >= n_dim || n >= n_dim {
        return Err(Error::Domain(format!(
            "q-binomial identity needs 0 <= m, n < N (got N={n_dim}, m={m}, n={n})"
        )));
    }
    let prec = working_precision(n_dim);
    let s = MpSineTable::new(n_dim, prec);
    let nn = n_dim as i64;
    let (mi, ni) = (m as i64, n as i64);
    let mut re = Float::new(prec);
    let mut im = Float::new(prec);
    for k in 0..=(nn - 1 - ni) {
        let weight = Float::with_val(prec, s.get(ni + k) * s.get(nn - k - 1));
        // phase exponent reduced mod 4N in integers
        let p = ((2 * k + ni + 1 - nn) * (2 * mi - ni)).rem_euclid(4 * nn);
        re += &weight * cos_pi_ratio(prec, p, 2 * nn);
        im -= weight * sin_pi_ratio(prec, p, 2 * nn);
    }
    let rhs = Float::with_val(prec, s.get(ni) * s.get(nn + mi - ni - 1)) * s.get(nn - mi - 1);
    let diff = (re - &rhs).hypot(&im);
    Ok((diff / (rhs.abs() + 1u32)).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize) -> SineProductTable {
        SineProductTable::build(DftDimension::new(n).unwrap())
    }

    #[test]
    fn n5_values_from_direct_product() {
        // oracle: direct product of 2 sin(pi j / 5)
        let direct = |k: usize| {
            (1..=k)
                .map(|j| 2.0 * (PI * j as f64 / 5.0).sin())
                .product::<f64>()
        };
        let t = table(5);
        assert!((t.value(1) - 1.175_570_504_584_946).abs() < 1e-12);
        assert!((t.value(1) - direct(1)).abs() < 1e-15);
        assert!((t.value(2) - 5f64.sqrt()).abs() < 1e-12);
        assert!((t.value(4) - 5.0).abs() < 1e-12);
        assert_eq!(t.value(0), 1.0);
    }

    #[test]
    fn zero_beyond_n() {
        for n in [3, 4, 5, 17, 64] {
            let t = table(n);
            for k in n..=2 * n {
                assert_eq!(t.value(k), 0.0);
            }
        }
    }

    #[test]
    fn middle_value_is_sqrt_n_for_residue_one() {
        for l in 1..30 {
            let n = 4 * l + 1;
            let t = table(n);
            let rel = (t.value(2 * l) - (n as f64).sqrt()).abs() / (n as f64).sqrt();
            assert!(rel < 1e-12, "N={n}: {rel}");
        }
    }

    #[test]
    fn log_s_examples() {
        let t = table(5);
        assert!((t.log_s(4).unwrap() - 5f64.ln()).abs() < 1e-14);
        assert!((t.log_s(2).unwrap() - 0.5 * 5f64.ln()).abs() < 1e-14);
        assert!(t.log_s(0).is_err());
        assert!(t.log_s(5).is_err());
    }

    #[test]
    fn log_s_large_n_against_mpfr_sum() {
        // independent high-precision summation of ln(2 sin(pi j / N))
        use rug::Float;
        let n = 401;
        let t = table(n);
        let prec = 200;
        let mut acc = Float::new(prec);
        for j in 1..=300i64 {
            let f = crate::mp::sin_pi_ratio(prec, j, n as i64) * 2u32;
            acc += f.ln();
        }
        let got = t.log_s(300).unwrap();
        assert!((got - acc.to_f64()).abs() / got.abs() < 1e-12);
        assert!((got - 61.368_379_223_389).abs() < 1e-9, "ln S(300) = {got}");
        let direct = t.value(300).ln();
        assert!((direct - got).abs() / got < 1e-12);
    }

    #[test]
    fn qbinomial_hand_case() {
        assert!(qbinomial_identity_residual(2, 0, 0).unwrap() < 1e-15);
    }

    #[test]
    fn qbinomial_n0_is_full_geometric_cancellation() {
        for n in 3..20 {
            for m in 1..n {
                assert!(qbinomial_identity_residual(n, m, 0).unwrap() < 1e-10);
            }
        }
    }

    #[test]
    fn qbinomial_domain() {
        assert!(qbinomial_identity_residual(5, 5, 0).is_err());
        assert!(qbinomial_identity_residual(0, 0, 0).is_err());
    }
}
