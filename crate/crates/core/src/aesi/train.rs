use std::io::Write;

use ndarray::{ArrayView2, Axis};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::network::loss_and_gradients_chunked;
use super::{AutoencoderParams, Gradients, Real, Variant};
use crate::{Error, Result};

/// Rows per parallel gradient chunk.
const GRADIENT_CHUNK_ROWS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub variant: Variant,
    pub h: usize,
    /// Intermediate width; defaults to `h`.
    pub i: usize,
    pub c: usize,
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    pub epochs: usize,
    pub batch_size: usize,
    /// Stop after this many optimizer steps even if epochs remain.
    pub max_steps: Option<usize>,
    pub bias: bool,
    pub seed: u64,
}

impl TrainConfig {
    pub fn new(variant: Variant, h: usize, c: usize) -> Self {
        Self {
            variant,
            h,
            i: h,
            c,
            lr: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            epochs: 1,
            batch_size: 256,
            max_steps: None,
            bias: false,
            seed: 0,
        }
    }
}

/// Adam state for one parameter set.
#[derive(Debug, Clone)]
pub struct Adam<T> {
    lr: f64,
    beta1: f64,
    beta2: f64,
    eps: f64,
    step: i32,
    m: Vec<T>,
    v: Vec<T>,
}

impl<T: Real> Adam<T> {
    pub fn new(num_params: usize, lr: f64, beta1: f64, beta2: f64, eps: f64) -> Self {
        Self {
            lr,
            beta1,
            beta2,
            eps,
            step: 0,
            m: vec![T::zero(); num_params],
            v: vec![T::zero(); num_params],
        }
    }

    pub fn update(&mut self, params: &mut AutoencoderParams<T>, grads: &Gradients<T>) {
        self.step += 1;
        let g = grads.flatten();
        debug_assert_eq!(g.len(), self.m.len());
        let f = |x: f64| T::from_f64(x).unwrap();
        let (b1, b2) = (f(self.beta1), f(self.beta2));
        let (one, eps) = (T::one(), f(self.eps));
        let step_size = f(self.lr / (1.0 - self.beta1.powi(self.step)));
        let v_corr = f(1.0 / (1.0 - self.beta2.powi(self.step)));
        let mut k = 0;
        let (m, v) = (&mut self.m, &mut self.v);
        params.for_each_mut(|p| {
            let gk = g[k];
            m[k] = b1 * m[k] + (one - b1) * gk;
            v[k] = b2 * v[k] + (one - b2) * gk * gk;
            *p = *p - step_size * m[k] / ((v[k] * v_corr).sqrt() + eps);
            k += 1;
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossRecord {
    pub step: usize,
    pub loss: f64,
}

#[derive(Debug, Clone)]
pub struct TrainOutcome<T> {
    pub params: AutoencoderParams<T>,
    pub history: Vec<LossRecord>,
}

/// Minibatch Adam on the reconstruction loss. Rows are reshuffled every
/// epoch from `config.seed`; the run is deterministic given the seed.
pub fn train<T: Real>(v: ArrayView2<'_, T>, u: ArrayView2<'_, T>, config: &TrainConfig) -> Result<TrainOutcome<T>> {
    let params = AutoencoderParams::init(config.variant, config.h, config.i, config.c, config.bias, config.seed)?;
    train_from(params, v, u, config)
}

/// Continues training from existing parameters.
pub fn train_from<T: Real>(
    mut params: AutoencoderParams<T>,
    v: ArrayView2<'_, T>,
    u: ArrayView2<'_, T>,
    config: &TrainConfig,
) -> Result<TrainOutcome<T>> {
    let n = v.nrows();
    if n == 0 {
        return Err(Error::input("training corpus is empty"));
    }
    if v.ncols() != config.h || u.ncols() != config.h || u.nrows() != n {
        return Err(Error::dim(format!(
            "training data must be two {n} x {} matrices",
            config.h
        )));
    }
    if config.batch_size == 0 {
        return Err(Error::config("batch size must be positive"));
    }
    let mut adam = Adam::new(params.num_params(), config.lr, config.beta1, config.beta2, config.eps);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5348_5546);
    let mut order: Vec<usize> = (0..n).collect();
    let mut history = Vec::new();
    let max_steps = config.max_steps.unwrap_or(usize::MAX);
    'epochs: for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        for idx in order.chunks(config.batch_size) {
            if history.len() >= max_steps {
                break 'epochs;
            }
            let bv = v.select(Axis(0), idx);
            let bu = u.select(Axis(0), idx);
            let (loss, grads) = loss_and_gradients_chunked(&params, bv.view(), bu.view(), GRADIENT_CHUNK_ROWS)?;
            let loss = loss.to_f64().unwrap();
            let step = history.len();
            if !loss.is_finite() {
                return Err(Error::Diverged { step, loss });
            }
            history.push(LossRecord { step, loss });
            adam.update(&mut params, &grads);
        }
    }
    Ok(TrainOutcome { params, history })
}

/// Writes `step,loss` rows with a header.
pub fn write_loss_csv(history: &[LossRecord], w: impl Write) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["step", "loss"]).map_err(csv_err)?;
    for r in history {
        out.write_record([r.step.to_string(), format!("{:.9e}", r.loss)])
            .map_err(csv_err)?;
    }
    out.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}
