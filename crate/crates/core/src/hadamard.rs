//! Normalized Walsh-Hadamard transform and its randomized (Rademacher
//! preconditioned) form `x -> H D x`.
//!
//! The normalized matrix satisfies `H_1 = 1` and
//! `H_{2d} = [[H_d, H_d], [H_d, -H_d]] / sqrt(2)`, so it is symmetric and
//! orthogonal and the plain transform is its own inverse. The inverse of the
//! randomized transform is `D H y`; `D` is never stored, only its seed.

use num_traits::Float;

use crate::rng::{CounterStream, SIGN_STREAM};
use crate::{Error, Result};

fn check_len(d: usize) -> Result<()> {
    if d == 0 || !d.is_power_of_two() {
        return Err(Error::dim(format!("length {d} is not a power of two")));
    }
    Ok(())
}

/// In-place normalized fast Walsh-Hadamard transform, `O(d log d)`.
pub fn fwht_inplace<T: Float>(v: &mut [T]) -> Result<()> {
    check_len(v.len())?;
    fwht_unnormalized(v);
    let scale = T::from(v.len()).unwrap().sqrt().recip();
    if scale != T::one() {
        for x in v.iter_mut() {
            *x = *x * scale;
        }
    }
    Ok(())
}

#[inline]
fn fwht_unnormalized<T: Float>(v: &mut [T]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for chunk in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Diagonal of i.i.d. Rademacher signs regenerated from a seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RademacherDiagonal {
    pub seed: u64,
    pub signs: Vec<i8>,
}

impl RademacherDiagonal {
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Multiplies `v` by the diagonal in place.
    pub fn apply<T: Float>(&self, v: &mut [T]) {
        debug_assert_eq!(v.len(), self.signs.len());
        for (x, &s) in v.iter_mut().zip(&self.signs) {
            if s < 0 {
                *x = -*x;
            }
        }
    }
}

/// Regenerates the sign diagonal for `seed` and dimension `d`.
pub fn rademacher_diag(seed: u64, d: usize) -> Result<RademacherDiagonal> {
    check_len(d)?;
    let stream = CounterStream::new(seed, SIGN_STREAM);
    let signs = (0..d as u64).map(|i| stream.sign(i)).collect();
    Ok(RademacherDiagonal { seed, signs })
}

/// Output of [`randomized_transform`]; keeps the seed needed to invert it.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedVector<T> {
    pub values: Vec<T>,
    pub seed: u64,
}

/// `H D x` with `D` drawn from `seed`.
pub fn randomized_transform<T: Float>(x: &[T], seed: u64) -> Result<TransformedVector<T>> {
    let mut values = x.to_vec();
    randomized_transform_inplace(&mut values, seed)?;
    Ok(TransformedVector { values, seed })
}

/// `D H y`, the inverse of [`randomized_transform`].
pub fn inverse_randomized_transform<T: Float>(y: &TransformedVector<T>) -> Result<Vec<T>> {
    let mut values = y.values.clone();
    inverse_randomized_transform_inplace(&mut values, y.seed)?;
    Ok(values)
}

pub fn randomized_transform_inplace<T: Float>(v: &mut [T], seed: u64) -> Result<()> {
    let diag = rademacher_diag(seed, v.len())?;
    diag.apply(v);
    fwht_inplace(v)
}

pub fn inverse_randomized_transform_inplace<T: Float>(v: &mut [T], seed: u64) -> Result<()> {
    let diag = rademacher_diag(seed, v.len())?;
    fwht_inplace(v)?;
    diag.apply(v);
    Ok(())
}
