//! Lloyd-Max scalar quantizer for the standard normal source.
//!
//! Cell masses and conditional means have closed forms in terms of the
//! normal density and `erfc`, so each Lloyd step is exact up to `libm`'s
//! `erfc` accuracy. Tables are symmetric about zero; only the positive half
//! is iterated and mirrored.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt::Write as _;
use std::sync::OnceLock;

use super::tables::POSITIVE_CENTROIDS;
use crate::{Error, Result};

pub const MIN_BITS: u8 = 1;
pub const MAX_BITS: u8 = 8;

/// Stop when no centroid moves by more than this in one Lloyd step.
pub const CONVERGENCE_TOL: f64 = 1e-10;

const MAX_ITERATIONS: usize = 2_000_000;

/// Sorted Lloyd-Max centroids of `N(0, 1)` for `2^bits` levels.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidTable {
    bits: u8,
    centroids: Vec<f64>,
    boundaries: Vec<f64>,
}

pub(crate) fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `P(Z > x)` for `x >= 0`, accurate in the far tail.
pub(crate) fn upper_tail(x: f64) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

fn check_bits(bits: u8) -> Result<()> {
    if !(MIN_BITS..=MAX_BITS).contains(&bits) {
        return Err(Error::config(format!(
            "bit width {bits} outside {MIN_BITS}..={MAX_BITS}"
        )));
    }
    Ok(())
}

/// Positive-half quantile `x` with `P(Z > x) = q`, by bisection.
fn upper_quantile(q: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 40.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if upper_tail(mid) > q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn lloyd_step(centroids: &[f64], next: &mut [f64]) {
    let n = centroids.len();
    for j in 0..n {
        let a = if j == 0 {
            0.0
        } else {
            0.5 * (centroids[j - 1] + centroids[j])
        };
        let b = if j + 1 == n {
            f64::INFINITY
        } else {
            0.5 * (centroids[j] + centroids[j + 1])
        };
        let mass = upper_tail(a) - upper_tail(b);
        let pdf_b = if b.is_infinite() { 0.0 } else { normal_pdf(b) };
        next[j] = (normal_pdf(a) - pdf_b) / mass;
    }
}

/// Runs Lloyd's iteration to convergence and returns the positive half.
pub(crate) fn lloyd_positive_half(bits: u8) -> Vec<f64> {
    let levels = 1usize << bits;
    let n = levels / 2;
    // Equal-mass cells as the starting point.
    let mut c: Vec<f64> = (0..n)
        .map(|j| upper_quantile(0.5 - (j as f64 + 0.5) / levels as f64))
        .collect();
    let mut next = vec![0.0; n];
    for _ in 0..MAX_ITERATIONS {
        lloyd_step(&c, &mut next);
        let moved = c.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        std::mem::swap(&mut c, &mut next);
        if moved < CONVERGENCE_TOL {
            break;
        }
    }
    c
}

/// Computes the Lloyd-Max table for `bits` from scratch.
pub fn gaussian_lloyd_max(bits: u8) -> Result<CentroidTable> {
    check_bits(bits)?;
    Ok(CentroidTable::from_positive_half(bits, &lloyd_positive_half(bits)))
}

impl CentroidTable {
    fn from_positive_half(bits: u8, positive: &[f64]) -> Self {
        let centroids: Vec<f64> = positive
            .iter()
            .rev()
            .map(|c| -c)
            .chain(positive.iter().copied())
            .collect();
        let boundaries = centroids.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        Self {
            bits,
            centroids,
            boundaries,
        }
    }

    /// Precomputed table for `bits`, shared across threads.
    pub fn standard(bits: u8) -> Result<&'static CentroidTable> {
        static TABLES: OnceLock<Vec<CentroidTable>> = OnceLock::new();
        check_bits(bits)?;
        let tables = TABLES.get_or_init(|| {
            POSITIVE_CENTROIDS
                .iter()
                .enumerate()
                .map(|(k, half)| Self::from_positive_half(k as u8 + 1, half))
                .collect()
        });
        Ok(&tables[usize::from(bits) - 1])
    }

    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn levels(&self) -> usize {
        self.centroids.len()
    }

    pub fn centroids(&self) -> &[f64] {
        &self.centroids
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    #[inline]
    pub fn centroid(&self, index: u8) -> f64 {
        self.centroids[usize::from(index)]
    }

    /// Index of the nearest centroid. A value sitting exactly on a boundary
    /// goes to the lower index.
    #[inline]
    pub fn nearest(&self, y: f64) -> u8 {
        self.boundaries.partition_point(|&b| b < y) as u8
    }

    /// Gaussian mass of each cell.
    pub fn cell_masses(&self) -> Vec<f64> {
        let n = self.levels();
        (0..n)
            .map(|k| {
                let lo = if k == 0 {
                    f64::NEG_INFINITY
                } else {
                    self.boundaries[k - 1]
                };
                let hi = if k + 1 == n { f64::INFINITY } else { self.boundaries[k] };
                // P(lo < Z <= hi) = Q(lo) - Q(hi); Q(-x) = 1 - Q(x).
                let q = |x: f64| {
                    if x >= 0.0 {
                        upper_tail(x)
                    } else {
                        1.0 - upper_tail(-x)
                    }
                };
                q(lo) - q(hi)
            })
            .collect()
    }

    /// Expected squared error of the quantizer on `N(0, 1)`, `1 - sum p_k c_k^2`.
    pub fn gaussian_distortion(&self) -> f64 {
        let second: f64 = self
            .cell_masses()
            .iter()
            .zip(&self.centroids)
            .map(|(p, c)| p * c * c)
            .sum();
        1.0 - second
    }

    /// Plain-text export: one `bits index centroid` line per level, 17
    /// significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.centroids.iter().enumerate() {
            writeln!(out, "{} {} {:.16e}", self.bits, k, c).unwrap();
        }
        out
    }

    /// Parses the output of [`CentroidTable::to_text`] for a single bit width.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut bits = None;
        let mut centroids = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::format(format!("centroid table line {}: {line:?}", n + 1));
            if fields.len() != 3 {
                return Err(bad());
            }
            let b: u8 = fields[0].parse().map_err(|_| bad())?;
            let k: usize = fields[1].parse().map_err(|_| bad())?;
            let c: f64 = fields[2].parse().map_err(|_| bad())?;
            if *bits.get_or_insert(b) != b || k != centroids.len() {
                return Err(bad());
            }
            centroids.push(c);
        }
        let bits = bits.ok_or_else(|| Error::format("empty centroid table"))?;
        check_bits(bits)?;
        if centroids.len() != 1 << bits || centroids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::format("centroids must be 2^bits strictly increasing values"));
        }
        let boundaries = centroids.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        Ok(Self {
            bits,
            centroids,
            boundaries,
        })
    }
}
