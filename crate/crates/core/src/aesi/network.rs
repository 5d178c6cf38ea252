//! Forward and backward passes.
//!
//! Encoder: `e = W^e_2 gelu(W^e_1 (v; u))`, decoder:
//! `v' = W^d_2 gelu(W^d_1 (e; u))`; `(a; b)` is concatenation and the `u`
//! part is dropped where the variant has no side information. One-layer
//! variants are a single linear map per side. Batches are row-major, one
//! token per row.

use ndarray::{concatenate, s, Array1, Array2, ArrayView2, Axis};
use rayon::prelude::*;

use super::gelu::{gelu, gelu_grad};
use super::{AutoencoderParams, Dense, Gradients, Real};
use crate::{Error, Result};

/// A contextual vector `v` and the static embedding `u` of the same token.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenPair<T> {
    pub v: Vec<T>,
    pub u: Vec<T>,
}

impl<T: Real> TokenPair<T> {
    pub fn new(v: Vec<T>, u: Vec<T>) -> Result<Self> {
        if v.len() != u.len() {
            return Err(Error::dim(format!(
                "contextual length {} != static length {}",
                v.len(),
                u.len()
            )));
        }
        Ok(Self { v, u })
    }
}

struct StackCache<T> {
    input: Array2<T>,
    pre: Option<Array2<T>>,
    hidden: Option<Array2<T>>,
}

fn act<T: Real>(x: T) -> T {
    T::from_f64(gelu(x.to_f64().unwrap())).unwrap()
}

fn act_grad<T: Real>(x: T) -> T {
    T::from_f64(gelu_grad(x.to_f64().unwrap())).unwrap()
}

fn dense_forward<T: Real>(layer: &Dense<T>, x: ArrayView2<'_, T>) -> Array2<T> {
    let mut y = x.dot(&layer.weight.t());
    if let Some(b) = &layer.bias {
        for mut row in y.rows_mut() {
            row.zip_mut_with(b, |a, &c| *a = *a + c);
        }
    }
    y
}

fn stack_forward<T: Real>(layers: &[Dense<T>], input: Array2<T>) -> (Array2<T>, StackCache<T>) {
    match layers {
        [only] => {
            let out = dense_forward(only, input.view());
            (
                out,
                StackCache {
                    input,
                    pre: None,
                    hidden: None,
                },
            )
        }
        [first, second] => {
            let pre = dense_forward(first, input.view());
            let hidden = pre.mapv(act);
            let out = dense_forward(second, hidden.view());
            (
                out,
                StackCache {
                    input,
                    pre: Some(pre),
                    hidden: Some(hidden),
                },
            )
        }
        _ => unreachable!("stacks have one or two layers"),
    }
}

fn dense_backward<T: Real>(grad: &mut Dense<T>, dout: ArrayView2<'_, T>, input: ArrayView2<'_, T>) {
    grad.weight = dout.t().dot(&input);
    if let Some(b) = grad.bias.as_mut() {
        *b = dout.sum_axis(Axis(0));
    }
}

/// Fills `grads` and returns the gradient with respect to the stack input.
fn stack_backward<T: Real>(
    layers: &[Dense<T>],
    cache: &StackCache<T>,
    dout: ArrayView2<'_, T>,
    grads: &mut [Dense<T>],
) -> Array2<T> {
    match (layers, &cache.pre, &cache.hidden) {
        ([only], _, _) => {
            dense_backward(&mut grads[0], dout, cache.input.view());
            dout.dot(&only.weight)
        }
        ([first, second], Some(pre), Some(hidden)) => {
            dense_backward(&mut grads[1], dout, hidden.view());
            let mut dpre = dout.dot(&second.weight);
            dpre.zip_mut_with(pre, |d, &p| *d = *d * act_grad(p));
            dense_backward(&mut grads[0], dpre.view(), cache.input.view());
            dpre.dot(&first.weight)
        }
        _ => unreachable!("stack cache does not match layers"),
    }
}

fn check_rows<T: Real>(
    params: &AutoencoderParams<T>,
    main: ArrayView2<'_, T>,
    main_width: usize,
    u: ArrayView2<'_, T>,
) -> Result<()> {
    if main.ncols() != main_width {
        return Err(Error::dim(format!(
            "expected {main_width} columns, got {}",
            main.ncols()
        )));
    }
    if u.ncols() != params.h {
        return Err(Error::dim(format!(
            "static embeddings have {} columns, expected {}",
            u.ncols(),
            params.h
        )));
    }
    if u.nrows() != main.nrows() {
        return Err(Error::dim(format!(
            "{} rows of input but {} rows of static embeddings",
            main.nrows(),
            u.nrows()
        )));
    }
    Ok(())
}

fn encoder_input<T: Real>(params: &AutoencoderParams<T>, v: ArrayView2<'_, T>, u: ArrayView2<'_, T>) -> Array2<T> {
    if params.variant.encoder_side_info() {
        concatenate![Axis(1), v, u]
    } else {
        v.to_owned()
    }
}

fn decoder_input<T: Real>(params: &AutoencoderParams<T>, e: ArrayView2<'_, T>, u: ArrayView2<'_, T>) -> Array2<T> {
    if params.variant.decoder_side_info() {
        concatenate![Axis(1), e, u]
    } else {
        e.to_owned()
    }
}

/// Encodes a batch of `n x h` contextual vectors into `n x c`.
pub fn encode_batch<T: Real>(
    params: &AutoencoderParams<T>,
    v: ArrayView2<'_, T>,
    u: ArrayView2<'_, T>,
) -> Result<Array2<T>> {
    check_rows(params, v, params.h, u)?;
    Ok(stack_forward(&params.encoder, encoder_input(params, v, u)).0)
}

/// Decodes a batch of `n x c` codes back to `n x h`.
pub fn decode_batch<T: Real>(
    params: &AutoencoderParams<T>,
    e: ArrayView2<'_, T>,
    u: ArrayView2<'_, T>,
) -> Result<Array2<T>> {
    check_rows(params, e, params.c, u)?;
    Ok(stack_forward(&params.decoder, decoder_input(params, e, u)).0)
}

pub fn encode<T: Real>(pair: &TokenPair<T>, params: &AutoencoderParams<T>) -> Result<Vec<T>> {
    let v = ArrayView2::from_shape((1, pair.v.len()), &pair.v).map_err(|e| Error::dim(e.to_string()))?;
    let u = ArrayView2::from_shape((1, pair.u.len()), &pair.u).map_err(|e| Error::dim(e.to_string()))?;
    Ok(encode_batch(params, v, u)?.into_raw_vec_and_offset().0)
}

pub fn decode<T: Real>(e: &[T], u: &[T], params: &AutoencoderParams<T>) -> Result<Vec<T>> {
    let ev = ArrayView2::from_shape((1, e.len()), e).map_err(|err| Error::dim(err.to_string()))?;
    let uv = ArrayView2::from_shape((1, u.len()), u).map_err(|err| Error::dim(err.to_string()))?;
    Ok(decode_batch(params, ev, uv)?.into_raw_vec_and_offset().0)
}

pub fn reconstruct_batch<T: Real>(
    params: &AutoencoderParams<T>,
    v: ArrayView2<'_, T>,
    u: ArrayView2<'_, T>,
) -> Result<Array2<T>> {
    let e = encode_batch(params, v, u)?;
    decode_batch(params, e.view(), u)
}

/// Mean squared error of each row's reconstruction.
pub fn per_token_mse<T: Real>(
    params: &AutoencoderParams<T>,
    v: ArrayView2<'_, T>,
    u: ArrayView2<'_, T>,
) -> Result<Array1<T>> {
    let r = reconstruct_batch(params, v, u)?;
    let h = T::from_usize(params.h).unwrap();
    Ok((&r - &v).mapv(|d| d * d).sum_axis(Axis(1)).mapv(|s| s / h))
}

/// Mean over rows and coordinates of `(v - v')^2`.
pub fn reconstruction_loss<T: Real>(
    params: &AutoencoderParams<T>,
    v: ArrayView2<'_, T>,
    u: ArrayView2<'_, T>,
) -> Result<T> {
    if v.nrows() == 0 {
        return Err(Error::input("empty batch"));
    }
    let r = reconstruct_batch(params, v, u)?;
    let n = T::from_usize(v.len()).unwrap();
    Ok((&r - &v).mapv(|d| d * d).sum() / n)
}

/// Loss and its exact gradient with respect to every parameter.
pub fn loss_and_gradients<T: Real>(
    params: &AutoencoderParams<T>,
    v: ArrayView2<'_, T>,
    u: ArrayView2<'_, T>,
) -> Result<(T, Gradients<T>)> {
    if v.nrows() == 0 {
        return Err(Error::input("empty batch"));
    }
    check_rows(params, v, params.h, u)?;
    let (e, enc_cache) = stack_forward(&params.encoder, encoder_input(params, v, u));
    let (out, dec_cache) = stack_forward(&params.decoder, decoder_input(params, e.view(), u));

    let n = T::from_usize(v.len()).unwrap();
    let diff = &out - &v;
    let loss = diff.mapv(|d| d * d).sum() / n;
    let two = T::from_f64(2.0).unwrap();
    let dout = diff.mapv(|d| two * d / n);

    let mut grads = params.zeros_like();
    let ddec_in = stack_backward(&params.decoder, &dec_cache, dout.view(), &mut grads.decoder);
    let de = ddec_in.slice(s![.., ..params.c]);
    stack_backward(&params.encoder, &enc_cache, de, &mut grads.encoder);
    Ok((loss, grads))
}

pub fn gradients<T: Real>(
    params: &AutoencoderParams<T>,
    v: ArrayView2<'_, T>,
    u: ArrayView2<'_, T>,
) -> Result<Gradients<T>> {
    Ok(loss_and_gradients(params, v, u)?.1)
}

/// [`loss_and_gradients`] evaluated on fixed row chunks in parallel and
/// combined in chunk order, so the result does not depend on scheduling.
pub fn loss_and_gradients_chunked<T: Real>(
    params: &AutoencoderParams<T>,
    v: ArrayView2<'_, T>,
    u: ArrayView2<'_, T>,
    chunk_rows: usize,
) -> Result<(T, Gradients<T>)> {
    let n = v.nrows();
    if n <= chunk_rows || chunk_rows == 0 {
        return loss_and_gradients(params, v, u);
    }
    let starts: Vec<usize> = (0..n).step_by(chunk_rows).collect();
    let parts: Vec<(usize, T, Gradients<T>)> = starts
        .par_iter()
        .map(|&s0| {
            let s1 = (s0 + chunk_rows).min(n);
            let (l, g) = loss_and_gradients(params, v.slice(s![s0..s1, ..]), u.slice(s![s0..s1, ..]))?;
            Ok((s1 - s0, l, g))
        })
        .collect::<Result<_>>()?;
    let total = T::from_usize(n).unwrap();
    let mut loss = T::zero();
    let mut acc = params.zeros_like();
    for (rows, l, g) in parts {
        let w = T::from_usize(rows).unwrap() / total;
        loss = loss + l * w;
        for (a, b) in acc.layers_mut().zip(g.layers()) {
            a.weight.scaled_add(w, &b.weight);
            if let (Some(ab), Some(bb)) = (a.bias.as_mut(), b.bias.as_ref()) {
                ab.scaled_add(w, bb);
            }
        }
    }
    Ok((loss, acc))
}
