//! Layer forward/backward primitives.
//!
//! Convolution uses the cross-correlation convention (no kernel flip) with
//! valid padding and stride 1. Max pooling drops trailing rows/columns that
//! do not fill a window (floor semantics) and breaks ties toward the
//! smallest flat index. Dropout is inverted: survivors are scaled by
//! 1/(1−p) during training so inference is an identity map.

use super::tensor::{axpy, dot, Tensor};
use super::NeuralError;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activation {
    Linear,
    Tanh,
    Relu,
}

impl Activation {
    pub fn apply(&self, x: f64) -> f64 {
        match self {
            Activation::Linear => x,
            Activation::Tanh => x.tanh(),
            Activation::Relu => x.max(0.0),
        }
    }

    /// Derivative expressed through the activation's output.
    pub fn derivative_from_output(&self, y: f64) -> f64 {
        match self {
            Activation::Linear => 1.0,
            Activation::Tanh => 1.0 - y * y,
            Activation::Relu => {
                if y > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Activation::Linear => "linear",
            Activation::Tanh => "tanh",
            Activation::Relu => "relu",
        }
    }

    pub fn parse(s: &str) -> Option<Activation> {
        match s {
            "linear" => Some(Activation::Linear),
            "tanh" => Some(Activation::Tanh),
            "relu" => Some(Activation::Relu),
            _ => None,
        }
    }
}

fn expect_3d(t: &Tensor) -> Result<(usize, usize, usize), NeuralError> {
    match t.shape() {
        [h, w, c] => Ok((*h, *w, *c)),
        s => Err(NeuralError::ShapeMismatch(format!("expected H×W×C, got {s:?}"))),
    }
}

/// Valid-padding stride-1 cross-correlation.
///
/// `input` is H×W×C, `weights` F×KH×KW×C, `bias` F; the output is
/// (H−KH+1)×(W−KW+1)×F, with the activation applied elementwise.
pub fn conv2d_forward(
    input: &Tensor,
    weights: &Tensor,
    bias: &Tensor,
    activation: Activation,
) -> Result<Tensor, NeuralError> {
    let (h, w, c) = expect_3d(input)?;
    let &[f, kh, kw, wc] = weights.shape() else {
        return Err(NeuralError::ShapeMismatch(format!(
            "conv weights must be F×KH×KW×C, got {:?}",
            weights.shape()
        )));
    };
    if wc != c || bias.shape() != [f] {
        return Err(NeuralError::ShapeMismatch(format!(
            "conv weights {:?} / bias {:?} do not match input {:?}",
            weights.shape(),
            bias.shape(),
            input.shape()
        )));
    }
    if kh > h || kw > w {
        return Err(NeuralError::ShapeMismatch(format!(
            "kernel {kh}×{kw} larger than input {h}×{w}"
        )));
    }
    let (oh, ow) = (h - kh + 1, w - kw + 1);
    let mut out = Tensor::zeros(&[oh, ow, f]);
    let id = input.data();
    let wd = weights.data();
    let bd = bias.data();
    let od = out.data_mut();
    let krow = kw * c;
    for oy in 0..oh {
        for ox in 0..ow {
            let obase = (oy * ow + ox) * f;
            for fi in 0..f {
                let mut acc = bd[fi];
                let wbase = fi * kh * krow;
                for ky in 0..kh {
                    let ibase = ((oy + ky) * w + ox) * c;
                    acc += dot(&id[ibase..ibase + krow], &wd[wbase + ky * krow..wbase + (ky + 1) * krow]);
                }
                od[obase + fi] = activation.apply(acc);
            }
        }
    }
    Ok(out)
}

/// Gradients of the convolution. `output` is the forward result (used for
/// the activation derivative); returns (grad_input, grad_weights, grad_bias).
pub fn conv2d_backward(
    input: &Tensor,
    weights: &Tensor,
    output: &Tensor,
    grad_out: &Tensor,
    activation: Activation,
) -> Result<(Tensor, Tensor, Tensor), NeuralError> {
    let (h, w, c) = expect_3d(input)?;
    let &[f, kh, kw, _] = weights.shape() else {
        return Err(NeuralError::ShapeMismatch("bad conv weights".into()));
    };
    let (oh, ow) = (h - kh + 1, w - kw + 1);
    if grad_out.shape() != [oh, ow, f] {
        return Err(NeuralError::ShapeMismatch(format!(
            "grad_out {:?} does not match conv output {:?}",
            grad_out.shape(),
            [oh, ow, f]
        )));
    }
    let mut grad_in = Tensor::zeros(&[h, w, c]);
    let mut grad_w = Tensor::zeros(weights.shape());
    let mut grad_b = Tensor::zeros(&[f]);
    let id = input.data();
    let wd = weights.data();
    let odata = output.data();
    let god = grad_out.data();
    let gid = grad_in.data_mut();
    let gwd = grad_w.data_mut();
    let gbd = grad_b.data_mut();
    let krow = kw * c;
    for oy in 0..oh {
        for ox in 0..ow {
            let obase = (oy * ow + ox) * f;
            for fi in 0..f {
                let g = god[obase + fi] * activation.derivative_from_output(odata[obase + fi]);
                if g == 0.0 {
                    continue;
                }
                gbd[fi] += g;
                let wbase = fi * kh * krow;
                for ky in 0..kh {
                    let ibase = ((oy + ky) * w + ox) * c;
                    axpy(&mut gwd[wbase + ky * krow..wbase + (ky + 1) * krow], g, &id[ibase..ibase + krow]);
                    axpy(&mut gid[ibase..ibase + krow], g, &wd[wbase + ky * krow..wbase + (ky + 1) * krow]);
                }
            }
        }
    }
    Ok((grad_in, grad_w, grad_b))
}

/// Max pooling with floor semantics. Returns the pooled tensor and the flat
/// input index of each window maximum (ties go to the smallest index).
pub fn maxpool_forward(
    input: &Tensor,
    pool: usize,
    stride: usize,
) -> Result<(Tensor, Vec<u32>), NeuralError> {
    let (h, w, c) = expect_3d(input)?;
    if pool == 0 || stride == 0 || h < pool || w < pool {
        return Err(NeuralError::ShapeMismatch(format!(
            "pool {pool}/stride {stride} does not fit input {h}×{w}"
        )));
    }
    let oh = (h - pool) / stride + 1;
    let ow = (w - pool) / stride + 1;
    let mut out = Tensor::zeros(&[oh, ow, c]);
    let mut argmax = vec![0u32; oh * ow * c];
    let id = input.data();
    let od = out.data_mut();
    for oy in 0..oh {
        for ox in 0..ow {
            for ch in 0..c {
                let mut best = f64::NEG_INFINITY;
                let mut best_idx = 0u32;
                for ky in 0..pool {
                    for kx in 0..pool {
                        let idx = ((oy * stride + ky) * w + ox * stride + kx) * c + ch;
                        // strict > keeps the first (smallest flat index) maximum
                        if id[idx] > best {
                            best = id[idx];
                            best_idx = idx as u32;
                        }
                    }
                }
                let o = (oy * ow + ox) * c + ch;
                od[o] = best;
                argmax[o] = best_idx;
            }
        }
    }
    Ok((out, argmax))
}

/// Route each output gradient to its stored argmax position.
pub fn maxpool_backward(input_shape: &[usize], argmax: &[u32], grad_out: &Tensor) -> Tensor {
    let mut grad_in = Tensor::zeros(input_shape);
    let gid = grad_in.data_mut();
    for (g, &idx) in grad_out.data().iter().zip(argmax) {
        gid[idx as usize] += g;
    }
    grad_in
}

/// Fully connected layer: activation(W·x + b), with W stored row-major
/// (out × in).
pub fn dense_forward(
    input: &Tensor,
    weights: &Tensor,
    bias: &Tensor,
    activation: Activation,
) -> Result<Tensor, NeuralError> {
    let &[out_dim, in_dim] = weights.shape() else {
        return Err(NeuralError::ShapeMismatch("dense weights must be out×in".into()));
    };
    if input.len() != in_dim || bias.shape() != [out_dim] {
        return Err(NeuralError::ShapeMismatch(format!(
            "dense {}×{} does not match input {} / bias {:?}",
            out_dim,
            in_dim,
            input.len(),
            bias.shape()
        )));
    }
    let mut out = Tensor::zeros(&[out_dim]);
    let od = out.data_mut();
    let wd = weights.data();
    let xd = input.data();
    for o in 0..out_dim {
        od[o] = activation.apply(dot(&wd[o * in_dim..(o + 1) * in_dim], xd) + bias.data()[o]);
    }
    Ok(out)
}

/// Gradients of the dense layer; returns (grad_input, grad_weights, grad_bias).
pub fn dense_backward(
    input: &Tensor,
    weights: &Tensor,
    output: &Tensor,
    grad_out: &Tensor,
    activation: Activation,
) -> Result<(Tensor, Tensor, Tensor), NeuralError> {
    let &[out_dim, in_dim] = weights.shape() else {
        return Err(NeuralError::ShapeMismatch("dense weights must be out×in".into()));
    };
    if grad_out.len() != out_dim {
        return Err(NeuralError::ShapeMismatch(format!(
            "grad_out {} does not match dense output {out_dim}",
            grad_out.len()
        )));
    }
    let mut grad_in = Tensor::zeros(&[in_dim]);
    let mut grad_w = Tensor::zeros(&[out_dim, in_dim]);
    let mut grad_b = Tensor::zeros(&[out_dim]);
    let wd = weights.data();
    let xd = input.data();
    for o in 0..out_dim {
        let g = grad_out.data()[o] * activation.derivative_from_output(output.data()[o]);
        grad_b.data_mut()[o] = g;
        if g == 0.0 {
            continue;
        }
        axpy(&mut grad_w.data_mut()[o * in_dim..(o + 1) * in_dim], g, xd);
        axpy(grad_in.data_mut(), g, &wd[o * in_dim..(o + 1) * in_dim]);
    }
    Ok((grad_in, grad_w, grad_b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Train,
    Eval,
}

/// Inverted dropout. In train mode each element is zeroed independently with
/// probability `p` and survivors are scaled by 1/(1−p); in eval mode the
/// input passes through untouched. Returns the output and the multiplicative
/// mask (needed by the backward pass).
pub fn dropout(
    input: &Tensor,
    p: f64,
    mode: Mode,
    rng: &mut RngStream,
) -> Result<(Tensor, Vec<f64>), NeuralError> {
    if !(0.0..1.0).contains(&p) {
        return Err(NeuralError::InvalidProbability(p));
    }
    if mode == Mode::Eval || p == 0.0 {
        return Ok((input.clone(), vec![1.0; input.len()]));
    }
    let scale = 1.0 / (1.0 - p);
    let mut out = input.clone();
    let mut mask = vec![0.0f64; input.len()];
    for (v, m) in out.data_mut().iter_mut().zip(mask.iter_mut()) {
        if rng.next_f64() < p {
            *v = 0.0;
        } else {
            *v *= scale;
            *m = scale;
        }
    }
    Ok((out, mask))
}

/// Dropout backward: the gradient passes through the same mask.
pub fn dropout_backward(mask: &[f64], grad_out: &Tensor) -> Tensor {
    let mut grad_in = grad_out.clone();
    for (g, &m) in grad_in.data_mut().iter_mut().zip(mask) {
        *g *= m;
    }
    grad_in
}
