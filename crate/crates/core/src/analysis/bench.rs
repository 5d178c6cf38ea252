use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, StudentT};
use rayon::prelude::*;

use crate::quantize::Scheme;
use crate::rng::{block_seed, mix64};
use crate::{Error, Result};

const TRIALS_PER_TASK: usize = 256;
const MIN_TRIALS: usize = 10;

/// Source of the blocks fed to the quantizer.
#[derive(Debug, Clone, PartialEq)]
pub enum InputDist {
    /// i.i.d. N(0, 1).
    Gaussian,
    /// i.i.d. U[-1, 1).
    Uniform,
    /// i.i.d. Student-t with `nu` degrees of freedom.
    StudentT { nu: f64 },
    /// Points of the `2^B`-level grid on [0, 1], with both endpoints present
    /// so that min-max scaling keeps the grid intact.
    Grid,
    /// The same block in every trial, for per-coordinate bias studies.
    Fixed(Vec<f32>),
}

impl InputDist {
    fn sample(&self, d: usize, bits: u8, rng: &mut ChaCha8Rng) -> Vec<f32> {
        match self {
            InputDist::Gaussian => (0..d).map(|_| StandardNormal.sample(rng)).collect(),
            InputDist::Uniform => (0..d).map(|_| rng.random_range(-1.0f32..1.0)).collect(),
            InputDist::StudentT { nu } => {
                let t = StudentT::new(*nu).expect("validated degrees of freedom");
                (0..d).map(|_| t.sample(rng) as f32).collect()
            }
            InputDist::Grid => {
                let top = (1u16 << bits) - 1;
                let mut x: Vec<f32> = (0..d)
                    .map(|_| f32::from(rng.random_range(0..=top)) / f32::from(top))
                    .collect();
                x[0] = 0.0;
                if d > 1 {
                    x[d - 1] = 1.0;
                }
                x
            }
            InputDist::Fixed(x) => x.clone(),
        }
    }

    fn validate(&self, d: usize) -> Result<()> {
        match self {
            InputDist::StudentT { nu } if !(*nu > 0.0 && nu.is_finite()) => Err(Error::config(format!(
                "Student-t degrees of freedom must be positive, got {nu}"
            ))),
            InputDist::Fixed(x) if x.len() != d => Err(Error::dim(format!(
                "fixed input has length {}, block length is {d}",
                x.len()
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for InputDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputDist::Gaussian => f.write_str("gaussian"),
            InputDist::Uniform => f.write_str("uniform"),
            InputDist::StudentT { nu } => write!(f, "student-t:{nu}"),
            InputDist::Grid => f.write_str("grid"),
            InputDist::Fixed(_) => f.write_str("fixed"),
        }
    }
}

/// Parses `gaussian`, `uniform`, `grid` or `student-t:NU`.
impl FromStr for InputDist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "gaussian" | "normal" => Ok(InputDist::Gaussian),
            "uniform" => Ok(InputDist::Uniform),
            "grid" => Ok(InputDist::Grid),
            _ => {
                let nu = lower
                    .strip_prefix("student-t:")
                    .or_else(|| lower.strip_prefix("t:"))
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| Error::config(format!("unsupported input distribution '{s}'")))?;
                let dist = InputDist::StudentT { nu };
                dist.validate(0)?;
                Ok(dist)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantBenchResult {
    pub scheme: Scheme,
    pub bits: u8,
    pub d: usize,
    /// Mean over runs of the per-run mean `||x - x_hat||^2 / d`.
    pub mse: f64,
    /// Standard deviation of the per-run MSE.
    pub std: f64,
    /// `||mean(x_hat - x)||` pooled over every trial.
    pub bias_norm: f64,
    /// Largest per-coordinate `|mean error| / standard error`.
    pub max_bias_z: f64,
    /// Sum over coordinates of squared bias z-scores, standardized as a
    /// chi-square with `d` degrees of freedom: `(chi2 - d) / sqrt(2 d)`.
    /// Near 0 for an unbiased scheme.
    pub bias_z: f64,
    pub trials: usize,
    pub runs: usize,
}

#[derive(Clone)]
struct Sums {
    sq: f64,
    err: Vec<f64>,
    err_sq: Vec<f64>,
}

impl Sums {
    fn new(d: usize) -> Self {
        Self {
            sq: 0.0,
            err: vec![0.0; d],
            err_sq: vec![0.0; d],
        }
    }

    fn add(&mut self, other: &Sums) {
        self.sq += other.sq;
        self.err.iter_mut().zip(&other.err).for_each(|(a, b)| *a += b);
        self.err_sq.iter_mut().zip(&other.err_sq).for_each(|(a, b)| *a += b);
    }
}

fn run_trials(scheme: Scheme, bits: u8, dist: &InputDist, d: usize, trials: usize, run_seed: u64) -> Result<Sums> {
    let tasks = trials.div_ceil(TRIALS_PER_TASK);
    let partial: Vec<Result<Sums>> = (0..tasks)
        .into_par_iter()
        .map(|task| {
            let mut sums = Sums::new(d);
            let end = ((task + 1) * TRIALS_PER_TASK).min(trials);
            for t in task * TRIALS_PER_TASK..end {
                let trial_seed = block_seed(run_seed, t as u64);
                let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
                let x = dist.sample(d, bits, &mut rng);
                let xh = scheme.roundtrip(&x, bits, mix64(trial_seed))?;
                for (i, (a, b)) in x.iter().zip(&xh).enumerate() {
                    let e = f64::from(*b) - f64::from(*a);
                    sums.sq += e * e;
                    sums.err[i] += e;
                    sums.err_sq[i] += e * e;
                }
            }
            Ok(sums)
        })
        .collect();
    let mut total = Sums::new(d);
    for p in partial {
        total.add(&p?);
    }
    Ok(total)
}

/// Monte-Carlo MSE and bias of `scheme` at `bits`, one run of `trials`
/// blocks per seed. Deterministic given the seed list.
pub fn quant_bench(
    scheme: Scheme,
    bits: u8,
    dist: &InputDist,
    d: usize,
    trials: usize,
    seeds: &[u64],
) -> Result<QuantBenchResult> {
    if trials < MIN_TRIALS {
        return Err(Error::config(format!(
            "need at least {MIN_TRIALS} trials, got {trials}"
        )));
    }
    if seeds.is_empty() {
        return Err(Error::config("need at least one seed"));
    }
    if d == 0 || (scheme.needs_power_of_two() && !d.is_power_of_two()) {
        return Err(Error::dim(format!("block length {d} is not valid for {scheme}")));
    }
    dist.validate(d)?;

    let mut run_mse = Vec::with_capacity(seeds.len());
    let mut pooled = Sums::new(d);
    for &seed in seeds {
        let sums = run_trials(scheme, bits, dist, d, trials, seed)?;
        run_mse.push(sums.sq / (trials * d) as f64);
        pooled.add(&sums);
    }

    let runs = seeds.len();
    let mse = run_mse.iter().sum::<f64>() / runs as f64;
    let std = if runs > 1 {
        (run_mse.iter().map(|m| (m - mse).powi(2)).sum::<f64>() / (runs - 1) as f64).sqrt()
    } else {
        0.0
    };
    let n = (trials * runs) as f64;
    let mut bias_sq = 0.0;
    let mut max_z: f64 = 0.0;
    let mut chi2 = 0.0;
    let mut dof = 0usize;
    for (s, s2) in pooled.err.iter().zip(&pooled.err_sq) {
        let mean = s / n;
        bias_sq += mean * mean;
        let var = ((s2 / n - mean * mean) * n / (n - 1.0)).max(0.0);
        let se = (var / n).sqrt();
        let z = if se > 0.0 {
            mean.abs() / se
        } else if mean == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        max_z = max_z.max(z);
        if se > 0.0 {
            chi2 += z * z;
            dof += 1;
        }
    }
    let bias_z = if dof > 0 {
        (chi2 - dof as f64) / (2.0 * dof as f64).sqrt()
    } else {
        0.0
    };
    Ok(QuantBenchResult {
        scheme,
        bits,
        d,
        mse,
        std,
        bias_norm: bias_sq.sqrt(),
        max_bias_z: max_z,
        bias_z,
        trials,
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drive_eight_bits_is_small() {
        let r = quant_bench(Scheme::Drive, 8, &InputDist::Gaussian, 128, 200, &[1, 2]).unwrap();
        assert!(r.mse < 1e-4, "{}", r.mse);
        assert!(r.std >= 0.0);
        assert_eq!((r.trials, r.runs), (200, 2));
    }

    #[test]
    fn dr_on_grid_is_exact() {
        for bits in 1..=6 {
            let r = quant_bench(Scheme::Dr, bits, &InputDist::Grid, 100, 50, &[7]).unwrap();
            assert_eq!(r.mse, 0.0);
            assert_eq!(r.bias_norm, 0.0);
        }
    }

    #[test]
    fn deterministic_given_seeds() {
        let a = quant_bench(Scheme::HSd, 3, &InputDist::Uniform, 64, 300, &[4, 5]).unwrap();
        let b = quant_bench(Scheme::HSd, 3, &InputDist::Uniform, 64, 300, &[4, 5]).unwrap();
        assert_eq!(a, b);
        let c = quant_bench(Scheme::HSd, 3, &InputDist::Uniform, 64, 300, &[4, 6]).unwrap();
        assert_ne!(a.mse, c.mse);
    }

    #[test]
    fn argument_errors() {
        let g = InputDist::Gaussian;
        assert!(quant_bench(Scheme::Drive, 4, &g, 128, 9, &[1]).is_err());
        assert!(quant_bench(Scheme::Drive, 4, &g, 128, 10, &[]).is_err());
        assert!(quant_bench(Scheme::Drive, 4, &g, 100, 10, &[1]).is_err());
        assert!(quant_bench(Scheme::Dr, 4, &g, 100, 10, &[1]).is_ok());
        assert!(quant_bench(Scheme::Sr, 4, &InputDist::Fixed(vec![1.0; 3]), 4, 10, &[1]).is_err());
    }

    #[test]
    fn distribution_names() {
        assert_eq!("Gaussian".parse::<InputDist>().unwrap(), InputDist::Gaussian);
        assert_eq!(
            "student-t:3".parse::<InputDist>().unwrap(),
            InputDist::StudentT { nu: 3.0 }
        );
        assert_eq!("t:2.5".parse::<InputDist>().unwrap(), InputDist::StudentT { nu: 2.5 });
        assert!("cauchy".parse::<InputDist>().is_err());
        assert!("student-t:-1".parse::<InputDist>().is_err());
        assert_eq!(InputDist::StudentT { nu: 3.0 }.to_string(), "student-t:3");
    }
}
