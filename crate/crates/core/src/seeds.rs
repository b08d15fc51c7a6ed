//! Even and odd seed vectors `u_n`, `v_n` built from pairs of sine products.
//!
//! For every residue class of `N` mod 4 the family holds `N` linearly
//! independent vectors, each mapped by the DFT onto a multiple of a partner:
//! `F u_n = c_n u_{s(n)}` and `F v_n = -i c'_n v_{s'(n)}`.
//!
//! | N      | u range        | v range        | kernel `a`  | factors (u / v)          |
//! |--------|----------------|----------------|-------------|--------------------------|
//! | 4L     | -L..=L         | -L+1..=L-1     | 3L+n-1      | cos(pi k/N) / sin(pi k/N) |
//! | 4L+1   | -L..=L         | -L..=L-1       | 3L+n        | 1 / sin(2 pi k/N)        |
//! | 4L+2   | -L..=L+1       | -L+1..=L       | 3L+n        | cos(pi k/N) / sin(pi k/N) |
//! | 4L+3   | -L..=L+1       | -L..=L         | 3L+n+1      | 1 / sin(2 pi k/N)        |
//!
//! Entries are `factor(k) S(a+k) S(a-k)`, except `u_{-L}` for `N = 4L` and
//! `N = 4L+2`, which is the constant `2L` (resp. `2L+1`).

use std::ops::RangeInclusive;

use rug::Float;

use crate::dim::{DftDimension, GridVector, Residue};
use crate::error::{Error, Result};
use crate::mp::{cos_pi_ratio, sin_pi_ratio, working_precision, MpSineTable, MpVector};

/// Above this binary exponent a seed is rescaled before rounding to `f64`.
const F64_EXPONENT_LIMIT: i32 = 1000;

/// `F x_n = coefficient * x_partner` (times `-i` for odd seeds).
#[derive(Debug, Clone, PartialEq)]
pub struct DftRelation {
    pub partner: i64,
    pub coefficient: Float,
}

#[derive(Debug, Clone)]
pub struct SeedVector {
    pub index: i64,
    /// Stored values; the exact vector is `values * 2^log2_scale`.
    pub values: GridVector<f64>,
    pub log2_scale: i32,
    exact: MpVector,
}

impl SeedVector {
    fn new(index: i64, exact: MpVector) -> Self {
        let shift = match exact.max_abs().get_exp() {
            Some(e) if e > F64_EXPONENT_LIMIT => e,
            _ => 0,
        };
        Self {
            index,
            values: exact.to_f64_scaled(-shift),
            log2_scale: shift,
            exact,
        }
    }

    /// The vector at working precision, unscaled.
    pub fn exact(&self) -> &MpVector {
        &self.exact
    }
}

#[derive(Debug, Clone)]
pub struct SeedFamily {
    dim: DftDimension,
    prec: u32,
    table: MpSineTable,
    u_range: RangeInclusive<i64>,
    v_range: RangeInclusive<i64>,
    u: Vec<SeedVector>,
    v: Vec<SeedVector>,
    u_rel: Vec<DftRelation>,
    v_rel: Vec<DftRelation>,
}

impl SeedFamily {
    pub fn build(dim: DftDimension) -> Self {
        Self::with_precision(dim, working_precision(dim.size()))
    }

    pub fn with_precision(dim: DftDimension, prec: u32) -> Self {
        let n = dim.size() as i64;
        let l = dim.quarter();
        let table = MpSineTable::new(dim.size(), prec);
        let (u_range, v_range) = ranges(dim);
        let rt = Float::with_val(prec, n).sqrt();

        // factor tables over I_N
        let table_of = |f: &dyn Fn(i64) -> Float| -> Vec<Float> { dim.indices().map(f).collect() };
        let sin2 = table_of(&|k| sin_pi_ratio(prec, 2 * k, n));
        let sin1 = table_of(&|k| sin_pi_ratio(prec, k, n));
        let cos1 = table_of(&|k| cos_pi_ratio(prec, k, n));
        let kernel = |a: i64, factor: Option<&[Float]>| {
            MpVector::from_fn(dim, prec, |k| {
                let base = Float::with_val(prec, table.get(a + k) * table.get(a - k));
                match factor {
                    Some(f) => base * &f[dim.position(k)],
                    None => base,
                }
            })
        };
        let (sin2, sin1, cos1, one) = (Some(&sin2[..]), Some(&sin1[..]), Some(&cos1[..]), None);
        // S(m) / (2 sin(pi j / N) sqrt(N))
        let ratio = |m: i64, j: i64| {
            let den = sin_pi_ratio(prec, j, n) * 2u32 * &rt;
            Float::with_val(prec, table.get(m) / &den)
        };
        let plain = |m: i64| Float::with_val(prec, table.get(m) / &rt);
        let two_rt = Float::with_val(prec, &rt * 2u32);

        let mut u = Vec::new();
        let mut u_rel = Vec::new();
        let mut v = Vec::new();
        let mut v_rel = Vec::new();
        match dim.residue() {
            Residue::One => {
                for idx in u_range.clone() {
                    u.push(kernel(3 * l + idx, one));
                    u_rel.push(DftRelation {
                        partner: -idx,
                        coefficient: plain(2 * l + 2 * idx),
                    });
                }
                for idx in v_range.clone() {
                    v.push(kernel(3 * l + idx, sin2));
                    v_rel.push(DftRelation {
                        partner: -idx - 1,
                        coefficient: plain(2 * l + 2 * idx + 1),
                    });
                }
            }
            Residue::Zero => {
                for idx in u_range.clone() {
                    if idx == -l {
                        u.push(MpVector::from_fn(dim, prec, |_| {
                            Float::with_val(prec, 2 * l)
                        }));
                    } else {
                        u.push(kernel(3 * l + idx - 1, cos1));
                    }
                    let rel = if idx == l {
                        DftRelation {
                            partner: -l,
                            coefficient: two_rt.clone(),
                        }
                    } else {
                        DftRelation {
                            partner: -idx,
                            coefficient: ratio(2 * l + 2 * idx, 3 * l + idx),
                        }
                    };
                    u_rel.push(rel);
                }
                for idx in v_range.clone() {
                    v.push(kernel(3 * l + idx - 1, sin1));
                    v_rel.push(DftRelation {
                        partner: -idx,
                        coefficient: ratio(2 * l + 2 * idx, 3 * l - idx),
                    });
                }
            }
            Residue::Two => {
                for idx in u_range.clone() {
                    if idx == -l {
                        u.push(MpVector::from_fn(dim, prec, |_| {
                            Float::with_val(prec, 2 * l + 1)
                        }));
                    } else {
                        u.push(kernel(3 * l + idx, cos1));
                    }
                    let rel = if idx == l + 1 {
                        DftRelation {
                            partner: -l,
                            coefficient: two_rt.clone(),
                        }
                    } else {
                        DftRelation {
                            partner: 1 - idx,
                            coefficient: ratio(2 * l + 2 * idx, 3 * l + idx + 1),
                        }
                    };
                    u_rel.push(rel);
                }
                for idx in v_range.clone() {
                    v.push(kernel(3 * l + idx, sin1));
                    v_rel.push(DftRelation {
                        partner: 1 - idx,
                        coefficient: ratio(2 * l + 2 * idx, 3 * l - idx + 2),
                    });
                }
            }
            Residue::Three => {
                for idx in u_range.clone() {
                    u.push(kernel(3 * l + idx + 1, one));
                    u_rel.push(DftRelation {
                        partner: 1 - idx,
                        coefficient: plain(2 * l + 2 * idx),
                    });
                }
                for idx in v_range.clone() {
                    v.push(kernel(3 * l + idx + 1, sin2));
                    v_rel.push(DftRelation {
                        partner: -idx,
                        coefficient: plain(2 * l + 2 * idx + 1),
                    });
                }
            }
        }

        let u = u_range
            .clone()
            .zip(u)
            .map(|(i, x)| SeedVector::new(i, x))
            .collect();
        let v = v_range
            .clone()
            .zip(v)
            .map(|(i, x)| SeedVector::new(i, x))
            .collect();
        Self {
            dim,
            prec,
            table,
            u_range,
            v_range,
            u,
            v,
            u_rel,
            v_rel,
        }
    }

    pub fn dim(&self) -> DftDimension {
        self.dim
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn sine_table(&self) -> &MpSineTable {
        &self.table
    }

    pub fn u_range(&self) -> RangeInclusive<i64> {
        self.u_range.clone()
    }

    pub fn v_range(&self) -> RangeInclusive<i64> {
        self.v_range.clone()
    }

    pub fn u_all(&self) -> &[SeedVector] {
        &self.u
    }

    pub fn v_all(&self) -> &[SeedVector] {
        &self.v
    }

    pub fn u(&self, n: i64) -> Option<&SeedVector> {
        slot(&self.u_range, n).map(|i| &self.u[i])
    }

    pub fn v(&self, n: i64) -> Option<&SeedVector> {
        slot(&self.v_range, n).map(|i| &self.v[i])
    }

    /// Exact relation `F u_n = c u_{partner}`.
    pub fn u_relation(&self, n: i64) -> Option<&DftRelation> {
        slot(&self.u_range, n).map(|i| &self.u_rel[i])
    }

    /// Exact relation `F v_n = -i c v_{partner}`.
    pub fn v_relation(&self, n: i64) -> Option<&DftRelation> {
        slot(&self.v_range, n).map(|i| &self.v_rel[i])
    }

    /// `(partner, c)` such that `F values(u_n) = c values(u_partner)` for the
    /// stored (possibly rescaled) `f64` vectors.
    pub fn dft_coeff_u(&self, n: i64) -> Option<(i64, f64)> {
        let rel = self.u_relation(n)?;
        let shift = self.u(rel.partner)?.log2_scale - self.u(n)?.log2_scale;
        Some((
            rel.partner,
            Float::with_val(self.prec, &rel.coefficient << shift).to_f64(),
        ))
    }

    /// `(partner, c)` such that `F values(v_n) = -i c values(v_partner)`.
    pub fn dft_coeff_v(&self, n: i64) -> Option<(i64, f64)> {
        let rel = self.v_relation(n)?;
        let shift = self.v(rel.partner)?.log2_scale - self.v(n)?.log2_scale;
        Some((
            rel.partner,
            Float::with_val(self.prec, &rel.coefficient << shift).to_f64(),
        ))
    }

    /// Smallest Gram-Schmidt residual ratio `|r_j| / |x_j|` over all `N` seeds,
    /// computed at working precision. Positive (and far above the rounding
    /// level) iff the seeds are linearly independent.
    pub fn independence_margin(&self) -> f64 {
        let mut basis: Vec<MpVector> = Vec::with_capacity(self.dim.size());
        let mut margin = f64::INFINITY;
        for seed in self.u.iter().chain(&self.v) {
            let src = seed.exact();
            let src_norm = src.norm();
            let mut r = src.clone();
            r.scale(&Float::with_val(self.prec, src_norm.recip_ref()));
            for _ in 0..2 {
                for q in &basis {
                    let d = -q.dot(&r);
                    r.axpy(&d, q);
                }
            }
            let rn = r.norm();
            margin = margin.min(rn.to_f64());
            r.scale(&Float::with_val(self.prec, rn.recip_ref()));
            basis.push(r);
        }
        margin
    }
}

fn slot(range: &RangeInclusive<i64>, n: i64) -> Option<usize> {
    range.contains(&n).then(|| (n - range.start()) as usize)
}

/// Index ranges of `u_n` and `v_n` for the residue class of `N`.
pub fn ranges(dim: DftDimension) -> (RangeInclusive<i64>, RangeInclusive<i64>) {
    let l = dim.quarter();
    match dim.residue() {
        Residue::Zero => (-l..=l, (-l + 1)..=(l - 1)),
        Residue::One => (-l..=l, -l..=(l - 1)),
        Residue::Two => (-l..=(l + 1), (-l + 1)..=l),
        Residue::Three => (-l..=(l + 1), -l..=l),
    }
}

/// `u_n(k)` from the cosine-product form
/// `N 2^{L+n} [cos^2(pi k/N)] prod_j (cos(2 pi k/N) - cos(2 pi j/N))`,
/// evaluated directly in `f64`. Not defined for the constant seeds.
pub fn product_form_u(dim: DftDimension, n: i64, k: i64) -> Result<f64> {
    use std::f64::consts::PI;
    let nf = dim.size() as f64;
    let l = dim.quarter();
    let (lo_n, hi_n, j_lo, j_hi, squared) = match dim.residue() {
        Residue::One => (-l, l, l - n + 1, 2 * l, false),
        Residue::Zero => (-l + 1, l, l - n + 1, 2 * l - 1, true),
        Residue::Two => (-l + 1, l + 1, l - n + 2, 2 * l, true),
        Residue::Three => (-l, l + 1, l - n + 2, 2 * l + 1, false),
    };
    if n < lo_n || n > hi_n {
        return Err(Error::Domain(format!(
            "product form of u_{n} not defined for N={} (valid {lo_n}..={hi_n})",
            dim.size()
        )));
    }
    if !dim.contains(k) {
        return Err(Error::Domain(format!("k={k} outside I_N")));
    }
    let c = (2.0 * PI * k as f64 / nf).cos();
    let mut acc = nf * 2f64.powi((l + n) as i32);
    if squared {
        acc *= (PI * k as f64 / nf).cos().powi(2);
    }
    for j in j_lo..=j_hi {
        acc *= c - (2.0 * PI * j as f64 / nf).cos();
    }
    Ok(acc)
}

/// `max_k |u_n(k+1) - u_n(k-1) + 4 sin(pi(2L+2n)/N) v_{n-1}(k)| / max|u_n|`
/// over `-2L < k < 2L`, for `N = 4L+1` and `-L < n <= L`.
pub fn difference_identity_residual(family: &SeedFamily, n: i64) -> Result<f64> {
    let dim = family.dim();
    let l = dim.quarter();
    if dim.residue() != Residue::One {
        return Err(Error::Domain(format!(
            "difference identity is stated for N = 4L+1, got N={}",
            dim.size()
        )));
    }
    if n <= -l || n > l {
        return Err(Error::Domain(format!(
            "difference identity needs -L < n <= L (n={n}, L={l})"
        )));
    }
    let prec = family.precision();
    let u = family.u(n).expect("in range").exact();
    let v = family.v(n - 1).expect("in range").exact();
    let c = sin_pi_ratio(prec, 2 * l + 2 * n, dim.size() as i64) * 4u32;
    let mut worst = Float::new(prec);
    for k in (-2 * l + 1)..(2 * l) {
        let lhs = Float::with_val(prec, u.get(k + 1) - u.get(k - 1));
        let rhs = Float::with_val(prec, &c * v.get(k));
        let d = (lhs + rhs).abs();
        if d > worst {
            worst = d;
        }
    }
    Ok((worst / u.max_abs()).to_f64())
}

/// The explicit eigenvectors of Kong: for `N = 4L+1`
/// `prod_{j=L+1}^{2L} (cos(2 pi k/N) - cos(2 pi j/N))`, and for `N = 4L`
/// `sin(2 pi k/N) prod_{j=L+1}^{2L-1} (cos(2 pi k/N) - cos(2 pi j/N))`.
pub fn kong_vector(dim: DftDimension) -> Result<GridVector<f64>> {
    use std::f64::consts::PI;
    let nf = dim.size() as f64;
    let l = dim.quarter();
    let cosine = |k: i64| (2.0 * PI * k as f64 / nf).cos();
    let prod = |k: i64, hi: i64| ((l + 1)..=hi).fold(1.0, |acc, j| acc * (cosine(k) - cosine(j)));
    match dim.residue() {
        Residue::One => Ok(GridVector::from_fn(dim, |k| prod(k, 2 * l))),
        Residue::Zero => Ok(GridVector::from_fn(dim, |k| {
            (2.0 * PI * k as f64 / nf).sin() * prod(k, 2 * l - 1)
        })),
        _ => Err(Error::Domain(format!(
            "Kong's vectors need N = 4L or N = 4L+1, got N={}",
            dim.size()
        ))),
    }
}
