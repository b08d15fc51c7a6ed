//! Invariant checks over a dimension, collected into a JSON report.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rug::Float;
use serde::Serialize;

use crate::dft::{centered_dft, signal_length};
use crate::dim::{DftDimension, GridVector, Residue};
use crate::eigenbasis::{expected_dimensions, EigenBasis};
use crate::error::Result;
use crate::mp::MpSineTable;
use crate::seeds::{difference_identity_residual, product_form_u, SeedFamily};
use crate::sine_product::qbinomial_identity_residual;

/// q-binomial sweeps are exhaustive, so they only run for small `N`.
pub const QBINOMIAL_SWEEP_LIMIT: usize = 30;

/// `max_{i,j} |<phi_i, phi_j> - delta_ij|`.
pub fn gram_deviation(basis: &EigenBasis) -> f64 {
    let phi = basis.vectors();
    let mut worst = 0.0_f64;
    for i in 0..phi.len() {
        for j in 0..=i {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((phi[i].dot(&phi[j]) - target).abs());
        }
    }
    worst
}

/// `max_n ||F phi_n - (-i)^{p(n)} phi_n||_inf / ||phi_n||_inf`.
pub fn eigen_residual(basis: &EigenBasis) -> f64 {
    (0..basis.len())
        .map(|n| {
            let phi = basis.phi(n);
            let lambda = basis.label(n).eigenvalue();
            let f = centered_dft(phi);
            let worst = f
                .values()
                .iter()
                .zip(phi.values())
                .fold(0.0_f64, |m, (a, &b)| m.max((a - lambda * b).norm()));
            worst / phi.max_abs()
        })
        .fold(0.0, f64::max)
}

/// `max_k |S(k) S(N-k-1) / N - 1|` at working precision.
pub fn sine_reflection_residual(dim: DftDimension, prec: u32) -> f64 {
    let n = dim.size() as i64;
    let table = MpSineTable::new(dim.size(), prec);
    (0..n)
        .map(|k| {
            let prod = Float::with_val(prec, table.get(k) * table.get(n - k - 1)) / n;
            (prod - 1u32).abs().to_f64()
        })
        .fold(0.0, f64::max)
}

/// Largest relative residual of the seed DFT relations, measured on the
/// stored `f64` vectors: `||F u_n - c u_s||_inf / ||u_n||_inf` and
/// `||F v_n + i c v_s||_inf / ||v_n||_inf`.
pub fn seed_relation_residual(family: &SeedFamily) -> f64 {
    let mut worst = 0.0_f64;
    for n in family.u_range() {
        let (s, c) = family.dft_coeff_u(n).expect("in range");
        worst = worst.max(relation_residual(
            &family.u(n).expect("in range").values,
            &family.u(s).expect("partner").values,
            Complex64::new(c, 0.0),
        ));
    }
    for n in family.v_range() {
        let (s, c) = family.dft_coeff_v(n).expect("in range");
        worst = worst.max(relation_residual(
            &family.v(n).expect("in range").values,
            &family.v(s).expect("partner").values,
            Complex64::new(0.0, -c),
        ));
    }
    worst
}

fn relation_residual(a: &GridVector<f64>, partner: &GridVector<f64>, c: Complex64) -> f64 {
    let f = centered_dft(a);
    let worst = f
        .values()
        .iter()
        .zip(partner.values())
        .fold(0.0_f64, |m, (x, &y)| m.max((x - c * y).norm()));
    worst / a.max_abs()
}

/// `max_n max_k |product_form_u(n, k) - u_n(k)| / max|u_n|` over the seeds
/// that have a product form (all but the constant ones).
pub fn product_form_residual(family: &SeedFamily) -> Result<f64> {
    let dim = family.dim();
    let mut worst = 0.0_f64;
    for n in family.u_range() {
        if product_form_u(dim, n, 0).is_err() {
            continue;
        }
        let seed = family.u(n).expect("in range");
        let scale = 2f64.powi(-seed.log2_scale);
        let mut d = 0.0_f64;
        for k in dim.indices() {
            d = d.max((product_form_u(dim, n, k)? * scale - seed.values[k]).abs());
        }
        worst = worst.max(d / seed.values.max_abs());
    }
    Ok(worst)
}

/// Number of seeds whose exact support differs from `|k| <= L - n`
/// (with `k = 0` removed for the odd seeds). `None` unless `N = 4L+1`.
pub fn seed_support_mismatches(family: &SeedFamily) -> Option<usize> {
    let dim = family.dim();
    if dim.residue() != Residue::One {
        return None;
    }
    let l = dim.quarter();
    let mut bad = 0;
    for n in family.u_range() {
        let want: Vec<i64> = (-(l - n)..=(l - n)).collect();
        bad += usize::from(family.u(n).expect("in range").exact().support(0.0) != want);
    }
    for n in family.v_range() {
        let want: Vec<i64> = (-(l - n)..=(l - n)).filter(|&k| k != 0).collect();
        bad += usize::from(family.v(n).expect("in range").exact().support(0.0) != want);
    }
    Some(bad)
}

/// Indices `n` with `l(phi_n) != 2L + 2 ceil(n/4) + 1`, lengths taken over
/// exact zeros. `None` unless `N = 4L+1`.
pub fn length_formula_mismatches(basis: &EigenBasis) -> Option<Vec<usize>> {
    let dim = basis.dim();
    if dim.residue() != Residue::One {
        return None;
    }
    let l = dim.quarter() as usize;
    Some(
        (0..basis.len())
            .filter(|&n| {
                signal_length(basis.phi(n), 0.0).ok() != Some(2 * l + 2 * n.div_ceil(4) + 1)
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub pass: bool,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<[usize; 4]>,
}

impl CheckResult {
    fn residual(max_residual: f64, tol: f64) -> Self {
        Self {
            pass: max_residual < tol,
            max_residual,
            dims: None,
        }
    }

    fn count(mismatches: usize) -> Self {
        Self {
            pass: mismatches == 0,
            max_residual: mismatches as f64,
            dims: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VerifyReport {
    pub checks: BTreeMap<String, CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.get(name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Builds seeds and basis for `dim` and runs every applicable check.
pub fn run_verification(dim: DftDimension, tol: f64) -> Result<VerifyReport> {
    let family = SeedFamily::build(dim);
    let basis = EigenBasis::from_family(&family)?;
    verify_with(&family, &basis, tol)
}

pub fn verify_with(family: &SeedFamily, basis: &EigenBasis, tol: f64) -> Result<VerifyReport> {
    let dim = family.dim();
    let mut checks = BTreeMap::new();
    let mut put = |name: &str, r: CheckResult| {
        checks.insert(name.to_string(), r);
    };

    put(
        "orthonormality",
        CheckResult::residual(gram_deviation(basis), tol),
    );
    put(
        "eigen_relations",
        CheckResult::residual(eigen_residual(basis), tol),
    );
    put(
        "sine_reflection",
        CheckResult::residual(sine_reflection_residual(dim, family.precision()), tol),
    );
    put(
        "seed_dft_relations",
        CheckResult::residual(seed_relation_residual(family), tol),
    );
    put(
        "product_form",
        CheckResult::residual(product_form_residual(family)?, tol),
    );

    if dim.residue() == Residue::One {
        let l = dim.quarter();
        let mut worst = 0.0_f64;
        for n in (-l + 1)..=l {
            worst = worst.max(difference_identity_residual(family, n)?);
        }
        put("difference_identity", CheckResult::residual(worst, tol));
    }
    if let Some(bad) = seed_support_mismatches(family) {
        put("seed_supports", CheckResult::count(bad));
    }
    if dim.size() <= QBINOMIAL_SWEEP_LIMIT {
        let n = dim.size();
        let mut worst = 0.0_f64;
        for m in 0..n {
            for k in 0..n {
                worst = worst.max(qbinomial_identity_residual(n, m, k)?);
            }
        }
        put("qbinomial_identity", CheckResult::residual(worst, tol));
    }

    let dims = basis.dimensions();
    let expected = expected_dimensions(dim);
    put(
        "eigenspace_dims",
        CheckResult {
            pass: dims == expected,
            max_residual: dims
                .iter()
                .zip(&expected)
                .map(|(a, b)| a.abs_diff(*b))
                .sum::<usize>() as f64,
            dims: Some(dims),
        },
    );
    if let Some(bad) = length_formula_mismatches(basis) {
        put("length_formula", CheckResult::count(bad.len()));
    }
    Ok(VerifyReport { checks })
}
