//! The network architecture, its parameters, and whole-network
//! forward/backward passes.

use super::layers::{
    conv2d_backward, conv2d_forward, dense_backward, dense_forward, dropout, dropout_backward,
    maxpool_backward, maxpool_forward, Activation, Mode,
};
use super::tensor::Tensor;
use super::NeuralError;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LayerSpec {
    Conv2d {
        filters: usize,
        kernel: usize,
        activation: Activation,
    },
    MaxPool {
        pool: usize,
        stride: usize,
    },
    Flatten,
    Dropout {
        p: f64,
    },
    Dense {
        units: usize,
        activation: Activation,
    },
}

/// An ordered layer stack with a fixed input shape (H×W×C).
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSpec {
    pub input: [usize; 3],
    pub layers: Vec<LayerSpec>,
}

impl NetworkSpec {
    /// The 11-layer regression architecture: two conv+pool stages, then
    /// three tanh dense layers with dropout in between, ending in 7 outputs.
    ///
    /// For a 64×64×4 input the shape chain is 61×61×32 → 30×30×32 →
    /// 28×28×32 → 14×14×32 → 6272 → 200 → 100 → 7.
    pub fn flagship(dropout_p: f64, conv_activation: Activation) -> NetworkSpec {
        NetworkSpec::flagship_for(64, 64, dropout_p, conv_activation)
    }

    /// The flagship layer stack over an arbitrary input resolution.
    pub fn flagship_for(h: usize, w: usize, dropout_p: f64, conv_activation: Activation) -> NetworkSpec {
        NetworkSpec {
            input: [h, w, 4],
            layers: vec![
                LayerSpec::Conv2d {
                    filters: 32,
                    kernel: 4,
                    activation: conv_activation,
                },
                LayerSpec::MaxPool { pool: 2, stride: 2 },
                LayerSpec::Conv2d {
                    filters: 32,
                    kernel: 3,
                    activation: conv_activation,
                },
                LayerSpec::MaxPool { pool: 2, stride: 2 },
                LayerSpec::Flatten,
                LayerSpec::Dropout { p: dropout_p },
                LayerSpec::Dense {
                    units: 200,
                    activation: Activation::Tanh,
                },
                LayerSpec::Dropout { p: dropout_p },
                LayerSpec::Dense {
                    units: 100,
                    activation: Activation::Tanh,
                },
                LayerSpec::Dropout { p: dropout_p },
                LayerSpec::Dense {
                    units: 7,
                    activation: Activation::Tanh,
                },
            ],
        }
    }

    /// The same 11-layer sequence shrunk to an 8×8×4 input, small enough for
    /// central-difference gradient checks.
    pub fn toy(dropout_p: f64, conv_activation: Activation) -> NetworkSpec {
        NetworkSpec {
            input: [8, 8, 4],
            layers: vec![
                LayerSpec::Conv2d {
                    filters: 8,
                    kernel: 3,
                    activation: conv_activation,
                },
                LayerSpec::MaxPool { pool: 2, stride: 2 },
                LayerSpec::Conv2d {
                    filters: 8,
                    kernel: 2,
                    activation: conv_activation,
                },
                LayerSpec::MaxPool { pool: 2, stride: 2 },
                LayerSpec::Flatten,
                LayerSpec::Dropout { p: dropout_p },
                LayerSpec::Dense {
                    units: 16,
                    activation: Activation::Tanh,
                },
                LayerSpec::Dropout { p: dropout_p },
                LayerSpec::Dense {
                    units: 12,
                    activation: Activation::Tanh,
                },
                LayerSpec::Dropout { p: dropout_p },
                LayerSpec::Dense {
                    units: 7,
                    activation: Activation::Tanh,
                },
            ],
        }
    }

    /// Output shape of every layer in order, validating compatibility.
    pub fn shape_chain(&self) -> Result<Vec<Vec<usize>>, NeuralError> {
        let mut shapes = Vec::with_capacity(self.layers.len());
        let mut cur: Vec<usize> = self.input.to_vec();
        for (i, layer) in self.layers.iter().enumerate() {
            cur = match layer {
                LayerSpec::Conv2d { filters, kernel, .. } => match cur[..] {
                    [h, w, _] if h >= *kernel && w >= *kernel => {
                        vec![h - kernel + 1, w - kernel + 1, *filters]
                    }
                    _ => {
                        return Err(NeuralError::ShapeMismatch(format!(
                            "layer {i}: conv kernel {kernel} does not fit {cur:?}"
                        )))
                    }
                },
                LayerSpec::MaxPool { pool, stride } => match cur[..] {
                    [h, w, c] if h >= *pool && w >= *pool && *stride > 0 => {
                        vec![(h - pool) / stride + 1, (w - pool) / stride + 1, c]
                    }
                    _ => {
                        return Err(NeuralError::ShapeMismatch(format!(
                            "layer {i}: pool {pool} does not fit {cur:?}"
                        )))
                    }
                },
                LayerSpec::Flatten => vec![cur.iter().product()],
                LayerSpec::Dropout { p } => {
                    if !(0.0..1.0).contains(p) {
                        return Err(NeuralError::InvalidProbability(*p));
                    }
                    cur
                }
                LayerSpec::Dense { units, .. } => match cur[..] {
                    [_] => vec![*units],
                    _ => {
                        return Err(NeuralError::ShapeMismatch(format!(
                            "layer {i}: dense needs a flat input, got {cur:?}"
                        )))
                    }
                },
            };
            shapes.push(cur.clone());
        }
        Ok(shapes)
    }

    pub fn output_dim(&self) -> Result<usize, NeuralError> {
        let chain = self.shape_chain()?;
        match chain.last().map(|s| &s[..]) {
            Some([n]) => Ok(*n),
            other => Err(NeuralError::ShapeMismatch(format!(
                "network must end in a flat output, got {other:?}"
            ))),
        }
    }

    /// Weight shape and bias length per layer (None for non-parametric
    /// layers).
    pub fn param_shapes(&self) -> Result<Vec<LayerParamShape>, NeuralError> {
        let chain = self.shape_chain()?;
        let mut out = Vec::with_capacity(self.layers.len());
        let mut prev: Vec<usize> = self.input.to_vec();
        for (layer, shape) in self.layers.iter().zip(&chain) {
            out.push(match layer {
                LayerSpec::Conv2d { filters, kernel, .. } => {
                    Some((vec![*filters, *kernel, *kernel, prev[2]], *filters))
                }
                LayerSpec::Dense { units, .. } => Some((vec![*units, prev[0]], *units)),
                _ => None,
            });
            prev = shape.clone();
        }
        Ok(out)
    }
}

/// Weight tensor shape and bias length of one layer, when it has any.
pub type LayerParamShape = Option<(Vec<usize>, usize)>;

/// Trainable weights and biases, one optional pair per layer.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkParams {
    pub layers: Vec<Option<(Tensor, Tensor)>>,
}

impl NetworkParams {
    /// Deterministic uniform fan-in initialization: weights drawn from
    /// ±√(1/fan_in) out of the seeded stream (then snapped to the f32 grid),
    /// biases zero.
    pub fn init(spec: &NetworkSpec, seed: u64) -> Result<NetworkParams, NeuralError> {
        let mut rng = RngStream::new(seed).derive(0x696e_6974); // "init"
        let mut layers = Vec::with_capacity(spec.layers.len());
        let mut prev: Vec<usize> = spec.input.to_vec();
        let chain = spec.shape_chain()?;
        for (layer, shape) in spec.layers.iter().zip(&chain) {
            let entry = match layer {
                LayerSpec::Conv2d { filters, kernel, .. } => {
                    let fan_in = kernel * kernel * prev[2];
                    let bound = (1.0 / fan_in as f64).sqrt();
                    let mut w = Tensor::zeros(&[*filters, *kernel, *kernel, prev[2]]);
                    for v in w.data_mut() {
                        *v = rng.uniform(-bound, bound);
                    }
                    w.round_to_f32_grid();
                    Some((w, Tensor::zeros(&[*filters])))
                }
                LayerSpec::Dense { units, .. } => {
                    let fan_in = prev[0];
                    let bound = (1.0 / fan_in as f64).sqrt();
                    let mut w = Tensor::zeros(&[*units, fan_in]);
                    for v in w.data_mut() {
                        *v = rng.uniform(-bound, bound);
                    }
                    w.round_to_f32_grid();
                    Some((w, Tensor::zeros(&[*units])))
                }
                _ => None,
            };
            layers.push(entry);
            prev = shape.clone();
        }
        Ok(NetworkParams { layers })
    }

    /// Zero tensors with the same shapes (gradient and moment buffers).
    pub fn zeros_like(&self) -> NetworkParams {
        NetworkParams {
            layers: self
                .layers
                .iter()
                .map(|l| {
                    l.as_ref()
                        .map(|(w, b)| (Tensor::zeros(w.shape()), Tensor::zeros(b.shape())))
                })
                .collect(),
        }
    }

    /// Set every weight and bias to zero (constant-zero predictor).
    pub fn zeroed(mut self) -> NetworkParams {
        for layer in self.layers.iter_mut().flatten() {
            layer.0.data_mut().fill(0.0);
            layer.1.data_mut().fill(0.0);
        }
        self
    }

    pub fn total_parameters(&self) -> usize {
        self.layers
            .iter()
            .flatten()
            .map(|(w, b)| w.len() + b.len())
            .sum()
    }

    pub fn is_finite(&self) -> bool {
        self.layers
            .iter()
            .flatten()
            .all(|(w, b)| w.is_finite() && b.is_finite())
    }

    /// Elementwise accumulation: self += other (shapes must match).
    pub fn accumulate(&mut self, other: &NetworkParams) {
        for (a, b) in self.layers.iter_mut().zip(&other.layers) {
            if let (Some((aw, ab)), Some((bw, bb))) = (a.as_mut(), b.as_ref()) {
                for (x, y) in aw.data_mut().iter_mut().zip(bw.data()) {
                    *x += y;
                }
                for (x, y) in ab.data_mut().iter_mut().zip(bb.data()) {
                    *x += y;
                }
            }
        }
    }

    /// Elementwise scale.
    pub fn scale(&mut self, factor: f64) {
        for (w, b) in self.layers.iter_mut().flatten() {
            for x in w.data_mut() {
                *x *= factor;
            }
            for x in b.data_mut() {
                *x *= factor;
            }
        }
    }
}

/// Per-layer bookkeeping the backward pass needs.
#[derive(Debug, Clone)]
enum LayerAux {
    None,
    Argmax(Vec<u32>),
    Mask(Vec<f64>),
}

/// Activations and auxiliary state captured during a forward pass.
#[derive(Debug, Clone)]
pub struct ForwardCache {
    /// `acts[0]` is the input; `acts[i+1]` is layer i's output.
    acts: Vec<Tensor>,
    aux: Vec<LayerAux>,
}

impl ForwardCache {
    pub fn output(&self) -> &Tensor {
        self.acts.last().expect("cache always holds the input")
    }
}

/// Run the network. Train mode draws dropout masks from `rng`; eval mode is
/// a deterministic pure function that ignores `rng` entirely.
pub fn forward(
    spec: &NetworkSpec,
    params: &NetworkParams,
    input: &Tensor,
    mode: Mode,
    rng: &mut RngStream,
) -> Result<(Tensor, ForwardCache), NeuralError> {
    if input.shape() != spec.input {
        return Err(NeuralError::ShapeMismatch(format!(
            "input {:?} does not match spec {:?}",
            input.shape(),
            spec.input
        )));
    }
    if params.layers.len() != spec.layers.len() {
        return Err(NeuralError::ShapeMismatch(
            "parameter count does not match layer count".into(),
        ));
    }
    let mut acts = Vec::with_capacity(spec.layers.len() + 1);
    let mut aux = Vec::with_capacity(spec.layers.len());
    acts.push(input.clone());
    for (layer, p) in spec.layers.iter().zip(&params.layers) {
        let cur = acts.last().unwrap();
        let (next, a) = match (layer, p) {
            (LayerSpec::Conv2d { activation, .. }, Some((w, b))) => {
                (conv2d_forward(cur, w, b, *activation)?, LayerAux::None)
            }
            (LayerSpec::MaxPool { pool, stride }, None) => {
                let (out, argmax) = maxpool_forward(cur, *pool, *stride)?;
                (out, LayerAux::Argmax(argmax))
            }
            (LayerSpec::Flatten, None) => (cur.reshaped(&[cur.len()])?, LayerAux::None),
            (LayerSpec::Dropout { p }, None) => {
                let (out, mask) = dropout(cur, *p, mode, rng)?;
                (out, LayerAux::Mask(mask))
            }
            (LayerSpec::Dense { activation, .. }, Some((w, b))) => {
                (dense_forward(cur, w, b, *activation)?, LayerAux::None)
            }
            _ => {
                return Err(NeuralError::ShapeMismatch(
                    "parameters misaligned with layer kinds".into(),
                ))
            }
        };
        acts.push(next);
        aux.push(a);
    }
    let out = acts.last().unwrap().clone();
    Ok((out, ForwardCache { acts, aux }))
}

/// Backpropagate `grad_output` through the cached pass; returns the
/// parameter gradients and the gradient with respect to the input.
pub fn backward(
    spec: &NetworkSpec,
    params: &NetworkParams,
    cache: &ForwardCache,
    grad_output: &Tensor,
) -> Result<(NetworkParams, Tensor), NeuralError> {
    if grad_output.shape() != cache.output().shape() {
        return Err(NeuralError::ShapeMismatch(format!(
            "grad_output {:?} does not match network output {:?}",
            grad_output.shape(),
            cache.output().shape()
        )));
    }
    let mut grads = params.zeros_like();
    let mut grad = grad_output.clone();
    for (i, layer) in spec.layers.iter().enumerate().rev() {
        let input = &cache.acts[i];
        let output = &cache.acts[i + 1];
        grad = match (layer, &params.layers[i], &cache.aux[i]) {
            (LayerSpec::Conv2d { activation, .. }, Some((w, _)), LayerAux::None) => {
                let (gi, gw, gb) = conv2d_backward(input, w, output, &grad, *activation)?;
                grads.layers[i] = Some((gw, gb));
                gi
            }
            (LayerSpec::MaxPool { .. }, None, LayerAux::Argmax(argmax)) => {
                maxpool_backward(input.shape(), argmax, &grad)
            }
            (LayerSpec::Flatten, None, LayerAux::None) => grad.reshaped(input.shape())?,
            (LayerSpec::Dropout { .. }, None, LayerAux::Mask(mask)) => {
                dropout_backward(mask, &grad)
            }
            (LayerSpec::Dense { activation, .. }, Some((w, _)), LayerAux::None) => {
                let (gi, gw, gb) = dense_backward(input, w, output, &grad, *activation)?;
                grads.layers[i] = Some((gw, gb));
                gi
            }
            _ => {
                return Err(NeuralError::ShapeMismatch(
                    "cache misaligned with layer kinds".into(),
                ))
            }
        };
    }
    Ok((grads, grad))
}
