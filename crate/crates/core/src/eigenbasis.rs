//! Eigenspace bases from the seeds, Gram-Schmidt per eigenspace, and the
//! interleaved orthonormal eigenbasis `phi_0..phi_{N-1}`.

use std::thread;

use num_complex::Complex64;
use rug::Float;

use crate::dim::{DftDimension, GridVector, Residue};
use crate::error::{Error, Result};
use crate::mp::MpVector;
use crate::seeds::SeedFamily;

/// The four eigenspaces of the DFT, labelled by eigenvalue `(-i)^p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eigenspace {
    /// eigenvalue `+1`
    W,
    /// eigenvalue `-i`
    X,
    /// eigenvalue `-1`
    Y,
    /// eigenvalue `+i`
    Z,
}

impl Eigenspace {
    pub const ALL: [Eigenspace; 4] = [Eigenspace::W, Eigenspace::X, Eigenspace::Y, Eigenspace::Z];

    /// `p` with eigenvalue `(-i)^p`.
    pub fn exponent(self) -> u8 {
        self as u8
    }

    pub fn from_exponent(p: u8) -> Self {
        Self::ALL[(p % 4) as usize]
    }

    pub fn eigenvalue(self) -> Complex64 {
        match self {
            Eigenspace::W => Complex64::new(1.0, 0.0),
            Eigenspace::X => Complex64::new(0.0, -1.0),
            Eigenspace::Y => Complex64::new(-1.0, 0.0),
            Eigenspace::Z => Complex64::new(0.0, 1.0),
        }
    }
}

/// Multiplicities of `(W, X, Y, Z)` for dimension `N`:
/// `(L+1, L, L, L-1)`, `(L+1, L, L, L)`, `(L+1, L, L+1, L)`, `(L+1, L+1, L+1, L)`
/// for `N = 4L, 4L+1, 4L+2, 4L+3`.
pub fn expected_dimensions(dim: DftDimension) -> [usize; 4] {
    let l = dim.quarter() as usize;
    match dim.residue() {
        Residue::Zero => [l + 1, l, l, l - 1],
        Residue::One => [l + 1, l, l, l],
        Residue::Two => [l + 1, l, l + 1, l],
        Residue::Three => [l + 1, l + 1, l + 1, l],
    }
}

/// An ordered basis of one eigenspace, held at working precision.
#[derive(Debug, Clone)]
pub struct EigenspaceBasis {
    label: Eigenspace,
    vectors: Vec<MpVector>,
}

impl EigenspaceBasis {
    pub fn new(label: Eigenspace, vectors: Vec<MpVector>) -> Self {
        Self { label, vectors }
    }

    pub fn from_f64(label: Eigenspace, vectors: &[GridVector<f64>], prec: u32) -> Self {
        Self {
            label,
            vectors: vectors
                .iter()
                .map(|v| MpVector::from_f64(v, prec))
                .collect(),
        }
    }

    pub fn label(&self) -> Eigenspace {
        self.label
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[MpVector] {
        &self.vectors
    }

    pub fn to_f64(&self) -> Vec<GridVector<f64>> {
        self.vectors.iter().map(MpVector::to_f64).collect()
    }
}

/// How one eigenspace draws on the seeds: vector `j` is
/// `sign * s_m + c_m s_{partner(m)}` for the `j`-th `m` of `sources`.
struct Recipe {
    label: Eigenspace,
    odd: bool,
    sign: f64,
    sources: std::ops::RangeInclusive<i64>,
}

fn recipes(dim: DftDimension) -> [Recipe; 4] {
    let l = dim.quarter();
    let (w, x, y, z) = match dim.residue() {
        Residue::One => (0..=l, 0..=(l - 1), 1..=l, 0..=(l - 1)),
        Residue::Zero => (0..=l, 0..=(l - 1), 1..=l, 1..=(l - 1)),
        Residue::Two => (1..=(l + 1), 1..=l, 1..=(l + 1), 1..=l),
        Residue::Three => (1..=(l + 1), 0..=l, 1..=(l + 1), 1..=l),
    };
    [
        Recipe {
            label: Eigenspace::W,
            odd: false,
            sign: 1.0,
            sources: w,
        },
        Recipe {
            label: Eigenspace::X,
            odd: true,
            sign: 1.0,
            sources: x,
        },
        Recipe {
            label: Eigenspace::Y,
            odd: false,
            sign: -1.0,
            sources: y,
        },
        Recipe {
            label: Eigenspace::Z,
            odd: true,
            sign: -1.0,
            sources: z,
        },
    ]
}

/// The non-orthogonal bases of `W, X, Y, Z`.
///
/// For an even seed with `F u = c u'`, `u + c u'` lies in `W` and `-u + c u'`
/// in `Y`; for an odd seed with `F v = -i c v'`, `v + c v'` lies in `X` and
/// `-v + c v'` in `Z`.
pub fn build_eigenspaces(family: &SeedFamily) -> [EigenspaceBasis; 4] {
    recipes(family.dim()).map(|r| {
        let vectors = r
            .sources
            .clone()
            .map(|m| {
                let (seed, rel, partner) = if r.odd {
                    let rel = family.v_relation(m).expect("source in v range");
                    (family.v(m), rel, family.v(rel.partner))
                } else {
                    let rel = family.u_relation(m).expect("source in u range");
                    (family.u(m), rel, family.u(rel.partner))
                };
                let seed = seed.expect("source seed").exact();
                let partner = partner.expect("partner seed").exact();
                seed.combine(r.sign, &rel.coefficient, partner)
            })
            .collect();
        EigenspaceBasis::new(r.label, vectors)
    })
}

/// Residual ratio below which a vector counts as dependent: `2^{-3p/4}` at `p` bits.
fn rank_threshold(prec: u32) -> Float {
    Float::with_val(prec, 1) >> (3 * prec / 4)
}

/// Modified Gram-Schmidt with one re-orthogonalisation pass, at the
/// precision of the input vectors. Output `j` has positive inner product
/// with input `j` and spans the same nested subspaces.
pub fn gram_schmidt(space: &EigenspaceBasis) -> Result<EigenspaceBasis> {
    let mut out: Vec<MpVector> = Vec::with_capacity(space.len());
    for (index, src) in space.vectors().iter().enumerate() {
        let prec = src.precision();
        let src_norm = src.norm();
        if src_norm.is_zero() {
            return Err(Error::RankDeficient { index, ratio: 0.0 });
        }
        let mut r = src.clone();
        r.scale(&Float::with_val(prec, src_norm.recip_ref()));
        for _ in 0..2 {
            for q in &out {
                let d = -q.dot(&r);
                r.axpy(&d, q);
            }
        }
        let ratio = r.norm();
        if ratio < rank_threshold(prec) {
            return Err(Error::RankDeficient {
                index,
                ratio: ratio.to_f64(),
            });
        }
        r.scale(&Float::with_val(prec, ratio.recip_ref()));
        out.push(r);
    }
    Ok(EigenspaceBasis::new(space.label(), out))
}

/// The orthonormal eigenbasis in `f64`, with eigenvalue exponents.
#[derive(Debug, Clone)]
pub struct EigenBasis {
    dim: DftDimension,
    phi: Vec<GridVector<f64>>,
    labels: Vec<Eigenspace>,
}

impl EigenBasis {
    /// Seeds, eigenspaces and Gram-Schmidt at the default working precision.
    pub fn build(dim: DftDimension) -> Result<Self> {
        Self::from_family(&SeedFamily::build(dim))
    }

    pub fn from_family(family: &SeedFamily) -> Result<Self> {
        let spaces = build_eigenspaces(family);
        // the four eigenspaces are independent
        let orthonormal: Vec<Result<EigenspaceBasis>> = thread::scope(|s| {
            let handles: Vec<_> = spaces
                .iter()
                .map(|sp| s.spawn(move || gram_schmidt(sp)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("gram-schmidt worker panicked"))
                .collect()
        });
        let orthonormal = orthonormal.into_iter().collect::<Result<Vec<_>>>()?;
        assemble(family.dim(), &orthonormal)
    }

    /// Builds from explicit parts; used when reading an exported basis.
    pub fn from_parts(
        dim: DftDimension,
        phi: Vec<GridVector<f64>>,
        exponents: &[u8],
    ) -> Result<Self> {
        if phi.len() != dim.size() || exponents.len() != dim.size() {
            return Err(Error::Assembly {
                expected: dim.size(),
                found: phi.len().min(exponents.len()),
            });
        }
        Ok(Self {
            dim,
            phi,
            labels: exponents
                .iter()
                .map(|&p| Eigenspace::from_exponent(p))
                .collect(),
        })
    }

    pub fn dim(&self) -> DftDimension {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn phi(&self, n: usize) -> &GridVector<f64> {
        &self.phi[n]
    }

    pub fn vectors(&self) -> &[GridVector<f64>] {
        &self.phi
    }

    pub fn label(&self, n: usize) -> Eigenspace {
        self.labels[n]
    }

    /// `p(n)` with `F phi_n = (-i)^{p(n)} phi_n`.
    pub fn exponent(&self, n: usize) -> u8 {
        self.labels[n].exponent()
    }

    pub fn exponents(&self) -> Vec<u8> {
        self.labels.iter().map(|l| l.exponent()).collect()
    }

    /// Number of basis vectors in each of `W, X, Y, Z`.
    pub fn dimensions(&self) -> [usize; 4] {
        let mut d = [0; 4];
        for l in &self.labels {
            d[l.exponent() as usize] += 1;
        }
        d
    }
}

/// Interleaves four orthonormal eigenspace bases as `W, X, Y, Z, W, X, ...`,
/// skipping exhausted lists, rounds to `f64` and fixes signs.
pub fn assemble(dim: DftDimension, spaces: &[EigenspaceBasis]) -> Result<EigenBasis> {
    let found: usize = spaces.iter().map(EigenspaceBasis::len).sum();
    if found != dim.size() || spaces.len() != 4 {
        return Err(Error::Assembly {
            expected: dim.size(),
            found,
        });
    }
    let mut ordered: Vec<&EigenspaceBasis> = spaces.iter().collect();
    ordered.sort_by_key(|s| s.label());
    let mut phi = Vec::with_capacity(found);
    let mut labels = Vec::with_capacity(found);
    let mut cursor = [0usize; 4];
    while phi.len() < found {
        for (slot, space) in ordered.iter().enumerate() {
            if let Some(v) = space.vectors().get(cursor[slot]) {
                let mut g = v.to_f64();
                canonical_sign(&mut g);
                phi.push(g);
                labels.push(space.label());
                cursor[slot] += 1;
            }
        }
    }
    Ok(EigenBasis { dim, phi, labels })
}

/// Flips `v` so that its largest-magnitude entry, taken at the smallest `|k|`
/// (positive `k` first on ties), is positive.
pub fn canonical_sign(v: &mut GridVector<f64>) {
    let max = v.max_abs();
    if max == 0.0 {
        return;
    }
    let dim = v.dim();
    let reach = dim.first().abs().max(dim.last());
    let pivot = (0..=reach)
        .flat_map(|m| [m, -m])
        .filter(|&k| dim.contains(k))
        .find(|&k| v[k].abs() == max)
        .expect("max attained somewhere");
    if v[pivot] < 0.0 {
        let dim = v.dim();
        *v = GridVector::from_values(dim, v.values().iter().map(|x| -x).collect())
            .expect("length preserved");
    }
}
