use std::path::Path;

use ndarray::{Array1, Array2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Normal, Zipf};
use serde::{Deserialize, Serialize};

use super::{Corpus, Document};
use crate::{Error, Result};

/// Parameters of the synthetic corpus.
///
/// Static vectors `u` are i.i.d. `N(0, 1/h)` per coordinate. Token ids are
/// Zipf distributed, so id 0 is the most frequent. The contextual vector of
/// each token mixes its own `u` with the unit-normalized mean of its
/// neighbours' `u` inside `window` positions, plus Gaussian noise:
///
/// `v = (sqrt(1 - a^2) u + a ctx + sigma n) / sqrt(1 + sigma^2)`
///
/// `a` is `alpha`, or `function_alpha` for the `function_tokens` most
/// frequent ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub vocab: usize,
    pub h: usize,
    pub docs: usize,
    pub mean_len: f64,
    /// Gamma shape of the document length distribution.
    pub length_shape: f64,
    pub zipf_exponent: f64,
    pub alpha: f64,
    pub sigma: f64,
    pub window: usize,
    pub function_tokens: usize,
    pub function_alpha: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            vocab: 2000,
            h: 64,
            docs: 2000,
            mean_len: 76.9,
            length_shape: 4.0,
            zipf_exponent: 1.0,
            alpha: 0.5,
            sigma: 0.1,
            window: 3,
            function_tokens: 0,
            function_alpha: 0.5,
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::config(msg));
        if self.vocab == 0 || self.h == 0 {
            return bad("vocab and h must be positive".into());
        }
        if self.vocab > u32::MAX as usize {
            return bad(format!("vocab {} does not fit token ids", self.vocab));
        }
        if !(self.mean_len >= 1.0 && self.mean_len.is_finite()) {
            return bad(format!("mean_len must be at least 1, got {}", self.mean_len));
        }
        if !(self.length_shape > 0.0 && self.length_shape.is_finite()) {
            return bad(format!("length_shape must be positive, got {}", self.length_shape));
        }
        if !(self.zipf_exponent >= 0.0 && self.zipf_exponent.is_finite()) {
            return bad(format!(
                "zipf_exponent must be non-negative, got {}",
                self.zipf_exponent
            ));
        }
        for (name, a) in [("alpha", self.alpha), ("function_alpha", self.function_alpha)] {
            if !(0.0..=1.0).contains(&a) {
                return bad(format!("{name} must lie in [0, 1], got {a}"));
            }
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return bad(format!("sigma must be non-negative, got {}", self.sigma));
        }
        Ok(())
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("plain struct serializes")
    }

    fn alpha_for(&self, token: u32) -> f64 {
        if (token as usize) < self.function_tokens {
            self.function_alpha
        } else {
            self.alpha
        }
    }
}

/// Builds a corpus from `config`; identical configs give identical corpora.
pub fn gen_synth(config: &SynthConfig) -> Result<Corpus> {
    config.validate()?;
    let SynthConfig { vocab, h, .. } = *config;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let scale = 1.0 / (h as f64).sqrt();
    let coord = Normal::new(0.0, scale).expect("positive scale");
    let table = Array2::from_shape_simple_fn((vocab, h), || coord.sample(&mut rng));

    let lengths = Gamma::new(config.length_shape, config.mean_len / config.length_shape)
        .map_err(|e| Error::config(e.to_string()))?;
    let zipf = Zipf::new(vocab as f64, config.zipf_exponent).map_err(|e| Error::config(e.to_string()))?;
    let renorm = 1.0 / (1.0 + config.sigma * config.sigma).sqrt();

    let mut docs = Vec::with_capacity(config.docs);
    for _ in 0..config.docs {
        let m = (lengths.sample(&mut rng).round() as usize).max(1);
        let ids: Vec<u32> = (0..m)
            .map(|_| (zipf.sample(&mut rng) as u32 - 1).min(vocab as u32 - 1))
            .collect();
        let mut context = Array2::<f32>::zeros((m, h));
        for t in 0..m {
            let lo = t.saturating_sub(config.window);
            let hi = (t + config.window).min(m - 1);
            let mut ctx = Array1::<f64>::zeros(h);
            for j in (lo..=hi).filter(|&j| j != t) {
                ctx += &table.row(ids[j] as usize);
            }
            let norm = ctx.dot(&ctx).sqrt();
            if norm > 0.0 {
                ctx /= norm;
            }
            let a = config.alpha_for(ids[t]);
            let own = (1.0 - a * a).sqrt();
            let u = table.row(ids[t] as usize);
            for (k, out) in context.row_mut(t).iter_mut().enumerate() {
                let noise: f64 = if config.sigma > 0.0 {
                    coord.sample(&mut rng)
                } else {
                    0.0
                };
                *out = ((own * u[k] + a * ctx[k] + config.sigma * noise) * renorm) as f32;
            }
        }
        docs.push(Document { ids, context });
    }
    Corpus::new(table.mapv(|x| x as f32), docs)
}
