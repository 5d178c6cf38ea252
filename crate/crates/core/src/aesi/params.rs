use std::io::{Read, Write};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Real, Variant};
use crate::{Error, Result};

/// One dense map `y = W x (+ b)`, `W` stored `out x in`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense<T> {
    pub weight: Array2<T>,
    pub bias: Option<Array1<T>>,
}

impl<T: Real> Dense<T> {
    pub fn zeros(out: usize, inp: usize, bias: bool) -> Self {
        Self {
            weight: Array2::zeros((out, inp)),
            bias: bias.then(|| Array1::zeros(out)),
        }
    }

    pub fn out_dim(&self) -> usize {
        self.weight.nrows()
    }

    pub fn in_dim(&self) -> usize {
        self.weight.ncols()
    }

    fn num_params(&self) -> usize {
        self.weight.len() + self.bias.as_ref().map_or(0, |b| b.len())
    }
}

/// Weights of an autoencoder. Encoder layers are `[W^e_1, W^e_2]` (or a
/// single map for one-layer variants), decoder layers `[W^d_1, W^d_2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AutoencoderParams<T> {
    pub variant: Variant,
    pub h: usize,
    pub i: usize,
    pub c: usize,
    pub encoder: Vec<Dense<T>>,
    pub decoder: Vec<Dense<T>>,
}

/// Gradients share the parameter layout.
pub type Gradients<T> = AutoencoderParams<T>;

impl<T: Real> AutoencoderParams<T> {
    /// All-zero parameters with the shapes `variant` requires.
    pub fn zeros(variant: Variant, h: usize, i: usize, c: usize, bias: bool) -> Result<Self> {
        if h == 0 || c == 0 || (variant.two_layer() && i == 0) {
            return Err(Error::config(format!("bad autoencoder shape h={h} i={i} c={c}")));
        }
        let enc_in = if variant.encoder_side_info() { 2 * h } else { h };
        let dec_in = if variant.decoder_side_info() { c + h } else { c };
        let (encoder, decoder) = if variant.two_layer() {
            (
                vec![Dense::zeros(i, enc_in, bias), Dense::zeros(c, i, bias)],
                vec![Dense::zeros(i, dec_in, bias), Dense::zeros(h, i, bias)],
            )
        } else {
            (vec![Dense::zeros(c, enc_in, bias)], vec![Dense::zeros(h, dec_in, bias)])
        };
        Ok(Self {
            variant,
            h,
            i,
            c,
            encoder,
            decoder,
        })
    }

    /// Uniform `+-sqrt(6 / (fan_in + fan_out))` weights, zero biases.
    pub fn init(variant: Variant, h: usize, i: usize, c: usize, bias: bool, seed: u64) -> Result<Self> {
        let mut p = Self::zeros(variant, h, i, c, bias)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for layer in p.encoder.iter_mut().chain(p.decoder.iter_mut()) {
            let limit = (6.0 / (layer.in_dim() + layer.out_dim()) as f64).sqrt();
            layer
                .weight
                .mapv_inplace(|_| T::from_f64(rng.random_range(-limit..limit)).unwrap());
        }
        Ok(p)
    }

    pub fn has_bias(&self) -> bool {
        self.encoder[0].bias.is_some()
    }

    /// Layers in declaration order: encoder first, then decoder.
    pub fn layers(&self) -> impl Iterator<Item = &Dense<T>> {
        self.encoder.iter().chain(&self.decoder)
    }

    pub fn layers_mut(&mut self) -> impl Iterator<Item = &mut Dense<T>> {
        self.encoder.iter_mut().chain(self.decoder.iter_mut())
    }

    pub fn num_params(&self) -> usize {
        self.layers().map(Dense::num_params).sum()
    }

    /// Zeroed copy with identical shapes.
    pub fn zeros_like(&self) -> Self {
        let mut z = self.clone();
        z.layers_mut().for_each(|l| {
            l.weight.fill(T::zero());
            if let Some(b) = l.bias.as_mut() {
                b.fill(T::zero());
            }
        });
        z
    }

    /// Visits every scalar parameter in a fixed order.
    pub fn for_each_mut(&mut self, mut f: impl FnMut(&mut T)) {
        for l in self.layers_mut() {
            l.weight.iter_mut().for_each(&mut f);
            if let Some(b) = l.bias.as_mut() {
                b.iter_mut().for_each(&mut f);
            }
        }
    }

    pub fn flatten(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.num_params());
        for l in self.layers() {
            out.extend(l.weight.iter().copied());
            if let Some(b) = &l.bias {
                out.extend(b.iter().copied());
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.flatten().iter().all(|v| v.is_finite())
    }

    /// Casts every weight to another precision.
    pub fn cast<U: Real>(&self) -> AutoencoderParams<U> {
        let conv = |l: &Dense<T>| Dense {
            weight: l.weight.mapv(|v| U::from_f64(v.to_f64().unwrap()).unwrap()),
            bias: l
                .bias
                .as_ref()
                .map(|b| b.mapv(|v| U::from_f64(v.to_f64().unwrap()).unwrap())),
        };
        AutoencoderParams {
            variant: self.variant,
            h: self.h,
            i: self.i,
            c: self.c,
            encoder: self.encoder.iter().map(conv).collect(),
            decoder: self.decoder.iter().map(conv).collect(),
        }
    }
}

const CHECKPOINT_MAGIC: &[u8; 4] = b"AESI";
const CHECKPOINT_VERSION: u16 = 1;

/// Checkpoint layout: `b"AESI"` | version u16 | variant id u8 | flags u8
/// (bit 0: biases present) | h, i, c as u32 | for each layer in declaration
/// order, the row-major f32 weight matrix followed by its bias vector when
/// present. Little-endian throughout.
pub fn write_checkpoint<T: Real>(params: &AutoencoderParams<T>, mut w: impl Write) -> Result<()> {
    w.write_all(CHECKPOINT_MAGIC)?;
    w.write_u16::<LittleEndian>(CHECKPOINT_VERSION)?;
    w.write_u8(params.variant.id())?;
    w.write_u8(u8::from(params.has_bias()))?;
    for d in [params.h, params.i, params.c] {
        w.write_u32::<LittleEndian>(d as u32)?;
    }
    for v in params.flatten() {
        w.write_f32::<LittleEndian>(v.to_f32().unwrap())?;
    }
    Ok(())
}

pub fn read_checkpoint<T: Real>(mut r: impl Read) -> Result<AutoencoderParams<T>> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != CHECKPOINT_MAGIC {
        return Err(Error::format("bad checkpoint magic"));
    }
    let version = r.read_u16::<LittleEndian>()?;
    if version != CHECKPOINT_VERSION {
        return Err(Error::format(format!("unsupported checkpoint version {version}")));
    }
    let variant = Variant::from_id(r.read_u8()?)?;
    let flags = r.read_u8()?;
    if flags > 1 {
        return Err(Error::format(format!("unknown checkpoint flags {flags:#x}")));
    }
    let h = r.read_u32::<LittleEndian>()? as usize;
    let i = r.read_u32::<LittleEndian>()? as usize;
    let c = r.read_u32::<LittleEndian>()? as usize;
    let mut p =
        AutoencoderParams::<T>::zeros(variant, h, i, c, flags & 1 == 1).map_err(|e| Error::format(e.to_string()))?;
    let mut err = None;
    p.for_each_mut(|v| {
        if err.is_none() {
            match r.read_f32::<LittleEndian>() {
                Ok(x) => *v = T::from_f32(x).unwrap(),
                Err(e) => err = Some(e),
            }
        }
    });
    if let Some(e) = err {
        return Err(Error::format(format!("truncated checkpoint: {e}")));
    }
    let mut rest = Vec::new();
    r.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(Error::format("trailing bytes after checkpoint weights"));
    }
    if !p.is_finite() {
        return Err(Error::format("checkpoint contains non-finite weights"));
    }
    Ok(p)
}
