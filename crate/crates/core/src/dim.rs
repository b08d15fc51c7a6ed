//! Transform dimension and vectors indexed by the centered grid
//! `I_N = {-M+1, ..., N-M}` with `M = floor((N+1)/2)`.

use std::ops::{Index, IndexMut, RangeInclusive};

use crate::error::{Error, Result};

/// Residue class of `N` modulo 4. Most constructions dispatch on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Residue {
    /// `N = 4L`
    Zero,
    /// `N = 4L + 1`
    One,
    /// `N = 4L + 2`
    Two,
    /// `N = 4L + 3`
    Three,
}

/// The size `N` of the transform together with the derived quantities
/// `M = floor((N+1)/2)`, `L = floor(N/4)` and `N mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DftDimension {
    n: usize,
    m: i64,
    l: i64,
    residue: Residue,
}

impl DftDimension {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall(n));
        }
        let residue = match n % 4 {
            0 => Residue::Zero,
            1 => Residue::One,
            2 => Residue::Two,
            _ => Residue::Three,
        };
        Ok(Self {
            n,
            m: n.div_ceil(2) as i64,
            l: (n / 4) as i64,
            residue,
        })
    }

    /// `N`
    pub fn size(&self) -> usize {
        self.n
    }

    /// `M = floor((N+1)/2)`
    pub fn half(&self) -> i64 {
        self.m
    }

    /// `L = floor(N/4)`
    pub fn quarter(&self) -> i64 {
        self.l
    }

    pub fn residue(&self) -> Residue {
        self.residue
    }

    /// Smallest index of `I_N`.
    pub fn first(&self) -> i64 {
        1 - self.m
    }

    /// Largest index of `I_N`.
    pub fn last(&self) -> i64 {
        self.n as i64 - self.m
    }

    /// `I_N` in ascending order.
    pub fn indices(&self) -> RangeInclusive<i64> {
        self.first()..=self.last()
    }

    pub fn contains(&self, k: i64) -> bool {
        (self.first()..=self.last()).contains(&k)
    }

    /// Storage position of grid index `k`.
    pub fn position(&self, k: i64) -> usize {
        debug_assert!(self.contains(k), "index {k} outside I_N");
        (k - self.first()) as usize
    }

    /// Grid index stored at `pos`.
    pub fn index_at(&self, pos: usize) -> i64 {
        self.first() + pos as i64
    }

    /// The representative in `I_N` of `k mod N`.
    pub fn wrap(&self, k: i64) -> i64 {
        let n = self.n as i64;
        (k - self.first()).rem_euclid(n) + self.first()
    }

    /// `sqrt(2 pi / N)`, the grid spacing used when comparing with Hermite functions.
    pub fn epsilon(&self) -> f64 {
        (2.0 * std::f64::consts::PI / self.n as f64).sqrt()
    }
}

/// A vector whose entries are labelled by `I_N`, stored in ascending index order.
#[derive(Debug, Clone, PartialEq)]
pub struct GridVector<T = f64> {
    dim: DftDimension,
    values: Vec<T>,
}

impl<T> GridVector<T> {
    pub fn from_values(dim: DftDimension, values: Vec<T>) -> Result<Self> {
        if values.len() != dim.size() {
            return Err(Error::DimensionMismatch {
                expected: dim.size(),
                found: values.len(),
            });
        }
        Ok(Self { dim, values })
    }

    /// Builds a vector by evaluating `f` at every `k` in `I_N`.
    pub fn from_fn(dim: DftDimension, f: impl FnMut(i64) -> T) -> Self {
        let values = dim.indices().map(f).collect();
        Self { dim, values }
    }

    pub fn dim(&self) -> DftDimension {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// `(k, value)` pairs in ascending `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.dim.indices().zip(self.values.iter())
    }

    pub fn get(&self, k: i64) -> Option<&T> {
        if self.dim.contains(k) {
            Some(&self.values[self.dim.position(k)])
        } else {
            None
        }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> GridVector<U> {
        GridVector {
            dim: self.dim,
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Default> GridVector<T> {
    pub fn zeros(dim: DftDimension) -> Self {
        Self {
            dim,
            values: vec![T::default(); dim.size()],
        }
    }

    /// Indicator of the single index `k`.
    pub fn delta(dim: DftDimension, k: i64, one: T) -> Self {
        let mut v = Self::zeros(dim);
        v[k] = one;
        v
    }
}

impl<T> Index<i64> for GridVector<T> {
    type Output = T;

    fn index(&self, k: i64) -> &T {
        &self.values[self.dim.position(k)]
    }
}

impl<T> IndexMut<i64> for GridVector<T> {
    fn index_mut(&mut self, k: i64) -> &mut T {
        let pos = self.dim.position(k);
        &mut self.values[pos]
    }
}

impl GridVector<f64> {
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn to_complex(&self) -> GridVector<num_complex::Complex64> {
        self.map(|&x| num_complex::Complex64::new(x, 0.0))
    }
}

impl GridVector<num_complex::Complex64> {
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_set_contains_zero_and_has_n_elements() {
        for n in 3..200 {
            let d = DftDimension::new(n).unwrap();
            assert_eq!(d.indices().count(), n);
            assert!(d.contains(0));
            assert_eq!(d.first(), 1 - d.half());
        }
    }

    #[test]
    fn odd_and_even_grids() {
        let d5 = DftDimension::new(5).unwrap();
        assert_eq!((d5.first(), d5.last()), (-2, 2));
        assert_eq!(d5.quarter(), 1);
        assert_eq!(d5.residue(), Residue::One);
        let d6 = DftDimension::new(6).unwrap();
        assert_eq!((d6.first(), d6.last()), (-2, 3));
        assert_eq!(d6.half(), 3);
    }

    #[test]
    fn small_dimensions_rejected() {
        for n in 0..3 {
            assert_eq!(DftDimension::new(n), Err(Error::DimensionTooSmall(n)));
        }
    }

    #[test]
    fn wrap_is_periodic() {
        let d = DftDimension::new(8).unwrap();
        assert_eq!(d.wrap(4), 4);
        assert_eq!(d.wrap(5), -3);
        assert_eq!(d.wrap(-4), 4);
        assert_eq!(d.wrap(0), 0);
    }

    #[test]
    fn length_mismatch_rejected() {
        let d = DftDimension::new(5).unwrap();
        assert!(GridVector::from_values(d, vec![0.0; 4]).is_err());
    }
}
