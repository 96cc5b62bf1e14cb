//! From-scratch tensor operations and the 11-layer CNN regressor: forward,
//! backpropagation, inverted dropout, Adam, MSE loss, target scaling, and
//! finite-difference gradient verification.

mod adam;
mod gradcheck;
mod layers;
mod loss;
mod model_io;
mod network;
mod tensor;

pub use adam::{adam_step, AdamConfig, AdamState};
pub use gradcheck::grad_check;
pub use layers::{
    conv2d_backward, conv2d_forward, dense_backward, dense_forward, dropout, dropout_backward,
    maxpool_backward, maxpool_forward, Activation, Mode,
};
pub use loss::{mse_loss, scale_targets, unscale_outputs};
pub use model_io::{crc64, load_model, model_from_bytes, model_to_bytes, save_model};
pub use network::{backward, forward, ForwardCache, LayerSpec, NetworkParams, NetworkSpec};
pub use tensor::Tensor;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NeuralError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid dropout probability {0} (need 0 ≤ p < 1)")]
    InvalidProbability(f64),
    #[error("angle {angle}° outside the ±{bound}° scaling bound")]
    OutOfBound { angle: f64, bound: f64 },
    #[error("model parse error: {0}")]
    Parse(String),
    #[error("unsupported model version {found}")]
    VersionMismatch { found: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[cfg(test)]
mod tests;
