//! Continuous Hermite functions and diagnostics comparing them with the
//! discrete eigenbasis.

use std::f64::consts::PI;

use rug::Float;

use crate::dft::zero_crossings;
use crate::dim::{DftDimension, Residue};
use crate::eigenbasis::EigenBasis;
use crate::error::{Error, Result};
use crate::seeds::SeedFamily;

/// Catalan's constant.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932;

/// Orders below this use the explicit `H_n` recurrence; above it the
/// normalised recurrence with a running log scale.
const DIRECT_LIMIT: usize = 50;

/// `psi_n(x) = H_n(x) e^{-x^2/2} / sqrt(sqrt(pi) 2^n n!)`.
pub fn psi(n: usize, x: f64) -> f64 {
    if n < DIRECT_LIMIT {
        let (mut h_prev, mut h) = (0.0, 1.0);
        let mut norm_sq = PI.sqrt();
        for j in 0..n {
            let next = 2.0 * x * h - 2.0 * j as f64 * h_prev;
            h_prev = h;
            h = next;
            norm_sq *= 2.0 * (j + 1) as f64;
        }
        h * (-0.5 * x * x).exp() / norm_sq.sqrt()
    } else {
        *psi_upto(n, x).last().expect("n + 1 values")
    }
}

/// `psi_0(x), ..., psi_n(x)` from
/// `psi_{j+1} = sqrt(2/(j+1)) x psi_j - sqrt(j/(j+1)) psi_{j-1}`,
/// carrying a common factor `e^s` so large `|x|` neither overflows nor
/// underflows before the end.
pub fn psi_upto(n: usize, x: f64) -> Vec<f64> {
    const RESCALE: f64 = 1e150;
    let mut log_scale = -0.5 * x * x - 0.25 * PI.ln();
    let mut out = Vec::with_capacity(n + 1);
    let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
    out.push(log_scale.exp());
    for j in 0..n {
        let jf = j as f64;
        let next = (2.0 / (jf + 1.0)).sqrt() * x * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            prev /= RESCALE;
            cur /= RESCALE;
            log_scale += RESCALE.ln();
        }
        out.push(cur * log_scale.exp());
    }
    out
}

/// Hermite functions up to a fixed order, with their normalisation checked
/// by quadrature on construction.
#[derive(Debug, Clone)]
pub struct HermiteEvaluator {
    max_order: usize,
    norm_deviation: f64,
}

impl HermiteEvaluator {
    pub fn new(max_order: usize) -> Result<Self> {
        // trapezoid rule is spectrally accurate for these integrands
        let reach = (2.0 * max_order as f64 + 1.0).sqrt() + 12.0;
        let h = 0.02;
        let steps = (2.0 * reach / h).ceil() as usize;
        let mut sums = vec![0.0; max_order + 1];
        for i in 0..=steps {
            let x = -reach + i as f64 * h;
            for (s, p) in sums.iter_mut().zip(psi_upto(max_order, x)) {
                *s += p * p;
            }
        }
        let norm_deviation = sums.iter().fold(0.0_f64, |m, s| m.max((s * h - 1.0).abs()));
        if norm_deviation > 1e-8 {
            return Err(Error::Domain(format!(
                "Hermite normalisation check failed up to order {max_order}: {norm_deviation:e}"
            )));
        }
        Ok(Self {
            max_order,
            norm_deviation,
        })
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Largest `|int psi_n^2 - 1|` found by the construction check.
    pub fn norm_deviation(&self) -> f64 {
        self.norm_deviation
    }

    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        if n > self.max_order {
            return Err(Error::Domain(format!(
                "order {n} above evaluator limit {}",
                self.max_order
            )));
        }
        Ok(psi(n, x))
    }
}

fn asymptotic_domain(dim: DftDimension, k: i64) -> Result<()> {
    if dim.residue() != Residue::One {
        return Err(Error::Domain(format!(
            "Gaussian asymptotic of u_0 needs N = 1 mod 4, got N = {}",
            dim.size()
        )));
    }
    let n = dim.size() as f64;
    if (k.unsigned_abs() as f64) > n.powf(2.0 / 3.0) {
        return Err(Error::Domain(format!("|k| = {} exceeds N^(2/3)", k.abs())));
    }
    Ok(())
}

fn ln_u0_asymptotic(dim: DftDimension, k: i64) -> f64 {
    let n = dim.size() as f64;
    let k = k as f64;
    -0.25 * 2f64.ln() + n.ln() + n * CATALAN / PI - PI * k * k / n
}

/// `2^{-1/4} N exp(N G / pi - pi k^2 / N)`, the large-`N` shape of `u_0(k)`
/// for `N = 4L+1` and `|k| <= N^{2/3}`.
pub fn u0_asymptotic(dim: DftDimension, k: i64) -> Result<f64> {
    asymptotic_domain(dim, k)?;
    Ok(ln_u0_asymptotic(dim, k).exp())
}

/// `|u_0(k) / u0_asymptotic(k) - 1|`, evaluated through logarithms so it is
/// finite for every `N`.
pub fn u0_relative_deviation(family: &SeedFamily, k: i64) -> Result<f64> {
    let dim = family.dim();
    asymptotic_domain(dim, k)?;
    let u0 = family.u(0).expect("u_0 exists").exact().get(k);
    if u0.is_zero() {
        return Ok(1.0);
    }
    let ln_u0 = Float::with_val(family.precision(), u0.abs_ref())
        .ln()
        .to_f64();
    Ok((ln_u0 - ln_u0_asymptotic(dim, k)).exp_m1().abs())
}

/// `N^{1/3} max_{|k| <= N^{2/3}} |u_0(k) / u0_asymptotic(k) - 1|`.
pub fn u0_scaled_error(family: &SeedFamily) -> Result<f64> {
    let dim = family.dim();
    let n = dim.size() as f64;
    let reach = n.powf(2.0 / 3.0).floor() as i64;
    let mut worst = 0.0_f64;
    for k in (-reach..=reach).filter(|&k| dim.contains(k)) {
        worst = worst.max(u0_relative_deviation(family, k)?);
    }
    Ok(worst * n.cbrt())
}

/// Sup-distance between `eps^{-1/2} phi_n(k)` and `psi_n(eps k)` on `|k| <= 2L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub n_dim: usize,
    pub order: usize,
    pub epsilon: f64,
    pub sup_error: f64,
    pub argmax_k: i64,
    /// `-phi_n` matched `psi_n` better than `phi_n`.
    pub sign_flipped: bool,
}

pub fn convergence_report(
    basis: &EigenBasis,
    evaluator: &HermiteEvaluator,
    n: usize,
) -> Result<ConvergenceReport> {
    let dim = basis.dim();
    if n >= dim.size() {
        return Err(Error::Domain(format!(
            "order {n} needs n < N = {}",
            dim.size()
        )));
    }
    let eps = dim.epsilon();
    let scale = eps.powf(-0.5);
    let two_l = 2 * dim.quarter();
    let phi = basis.phi(n);
    let mut best: Option<(f64, i64, bool)> = None;
    for flipped in [false, true] {
        let sign = if flipped { -scale } else { scale };
        let mut worst = (0.0_f64, 0_i64);
        for k in (-two_l..=two_l).filter(|&k| dim.contains(k)) {
            let d = (sign * phi[k] - evaluator.eval(n, eps * k as f64)?).abs();
            if d > worst.0 {
                worst = (d, k);
            }
        }
        if best.is_none_or(|b| worst.0 < b.0) {
            best = Some((worst.0, worst.1, flipped));
        }
    }
    let (sup_error, argmax_k, sign_flipped) = best.expect("two candidates");
    Ok(ConvergenceReport {
        n_dim: dim.size(),
        order: n,
        epsilon: eps,
        sup_error,
        argmax_k,
        sign_flipped,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingCount {
    pub n: usize,
    pub crossings: usize,
}

impl CrossingCount {
    pub fn matches(&self) -> bool {
        self.crossings == self.n
    }
}

/// Sign changes of every `phi_n`; expected `crossings == n`.
pub fn crossing_check(basis: &EigenBasis, zero_tol: f64) -> Vec<CrossingCount> {
    basis
        .vectors()
        .iter()
        .enumerate()
        .map(|(n, phi)| CrossingCount {
            n,
            crossings: zero_crossings(phi, zero_tol),
        })
        .collect()
}

/// Fraction of entries of the basis that are exactly zero.
pub fn zero_share(basis: &EigenBasis) -> f64 {
    let total = basis.len() * basis.dim().size();
    let zeros = basis
        .vectors()
        .iter()
        .flat_map(|v| v.values())
        .filter(|&&x| x == 0.0)
        .count();
    zeros as f64 / total as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: usize) -> DftDimension {
        DftDimension::new(n).unwrap()
    }

    #[test]
    fn psi_values_at_origin() {
        let c = PI.powf(-0.25);
        assert!((psi(0, 0.0) - 0.751_125_544_464_942_5).abs() < 1e-15);
        assert_eq!(psi(1, 0.0), 0.0);
        assert!((psi(2, 0.0) + c / 2f64.sqrt()).abs() < 1e-15);
        assert!((psi(2, 0.0) + 0.531_125_9).abs() < 1e-7);
    }

    #[test]
    fn recurrence_matches_explicit_polynomials() {
        let hs: [fn(f64) -> f64; 5] = [
            |_| 1.0,
            |x| 2.0 * x,
            |x| 4.0 * x * x - 2.0,
            |x| 8.0 * x.powi(3) - 12.0 * x,
            |x| 16.0 * x.powi(4) - 48.0 * x * x + 12.0,
        ];
        let fact = [1.0, 1.0, 2.0, 6.0, 24.0];
        for (n, h) in hs.iter().enumerate() {
            for i in -3..=3 {
                let x = i as f64;
                let want = h(x) * (-x * x / 2.0).exp()
                    / (PI.sqrt() * 2f64.powi(n as i32) * fact[n]).sqrt();
                assert!((psi(n, x) - want).abs() < 1e-12, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn both_recurrences_agree_across_switch() {
        for n in [10, 30, 49] {
            for x in [-6.5, -1.25, 0.0, 0.3, 4.0, 9.0] {
                let direct = psi(n, x);
                let normalised = psi_upto(n, x)[n];
                assert!((direct - normalised).abs() < 1e-12, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn large_order_far_tail_is_finite() {
        let v = psi(300, 40.0);
        assert!(v.is_finite());
        assert!(psi(300, 100.0).abs() < 1e-300);
        assert!(psi(60, 0.5).abs() < 1.0);
    }

    #[test]
    fn evaluator_checks_normalisation() {
        let ev = HermiteEvaluator::new(80).unwrap();
        assert!(ev.norm_deviation() < 1e-10);
        assert!(ev.eval(81, 0.0).is_err());
    }

    #[test]
    fn sampled_hermite_orthonormality_at_401() {
        let d = dim(401);
        let eps = d.epsilon();
        for i in 0..=7 {
            for j in 0..=i {
                let s: f64 = d
                    .indices()
                    .map(|k| psi(i, eps * k as f64) * psi(j, eps * k as f64))
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((eps * s - want).abs() < eps, "({i},{j})");
            }
        }
    }

    #[test]
    fn u0_asymptotic_at_origin_against_sine_products() {
        // u_0(0) = S(3L)^2 computed by direct product, independent of the seed code
        let direct_u0 = |n: usize| {
            let l = n / 4;
            let s: f64 = (1..=3 * l)
                .map(|j| (2.0 * (PI * j as f64 / n as f64).sin()).ln())
                .sum();
            (2.0 * s).exp()
        };
        let e41 = (direct_u0(41) / u0_asymptotic(dim(41), 0).unwrap() - 1.0).abs();
        let e401 = (direct_u0(401) / u0_asymptotic(dim(401), 0).unwrap() - 1.0).abs();
        assert!(e41 < 6.0 * 41f64.cbrt().recip());
        assert!(e401 < e41);
        let fam = SeedFamily::build(dim(41));
        assert!((u0_relative_deviation(&fam, 0).unwrap() - e41).abs() < 1e-10);
    }

    #[test]
    fn u0_asymptotic_domain() {
        assert!(u0_asymptotic(dim(41), 41).is_err());
        assert!(u0_asymptotic(dim(41), 12).is_err());
        assert!(u0_asymptotic(dim(41), 11).is_ok());
        assert!(u0_asymptotic(dim(40), 0).is_err());
    }

    #[test]
    fn convergence_report_small_order() {
        let basis = EigenBasis::build(dim(41)).unwrap();
        let ev = HermiteEvaluator::new(40).unwrap();
        let r = convergence_report(&basis, &ev, 0).unwrap();
        assert!(r.sup_error >= 0.0 && r.sup_error < 0.05, "{r:?}");
        assert!(!r.sign_flipped);
        assert!((r.epsilon - (2.0 * PI / 41.0).sqrt()).abs() < 1e-15);
        assert!(convergence_report(&basis, &ev, 40).is_ok());
        assert!(convergence_report(&basis, &ev, 41).is_err());
    }

    #[test]
    fn phi0_has_no_crossings() {
        let basis = EigenBasis::build(dim(41)).unwrap();
        let counts = crossing_check(&basis, 0.0);
        assert_eq!(counts[0].crossings, 0);
        assert!(basis.phi(0).values().iter().all(|&x| x >= 0.0));
    }
}
