//! Mean-squared-error loss over matching tensors.

use super::tensor::Tensor;
use super::NeuralError;

/// Mean over all entries of the squared error, plus the gradient with
/// respect to the predictions: 2(pred − target)/len.
pub fn mse_loss(pred: &Tensor, target: &Tensor) -> Result<(f64, Tensor), NeuralError> {
    if pred.shape() != target.shape() {
        return Err(NeuralError::ShapeMismatch(format!(
            "pred {:?} vs target {:?}",
            pred.shape(),
            target.shape()
        )));
    }
    let n = pred.len() as f64;
    let mut grad = Tensor::zeros(pred.shape());
    let mut sum = 0.0;
    for ((g, &p), &t) in grad.data_mut().iter_mut().zip(pred.data()).zip(target.data()) {
        let d = p - t;
        sum += d * d;
        *g = 2.0 * d / n;
    }
    Ok((sum / n, grad))
}

/// Target scaling between degrees and the network's tanh range.
///
/// y = θ / (bound·margin); with the flagship bound of 55° and margin 1 the
/// grid endpoints map to exactly ±1.
pub fn scale_targets(angles_deg: &[f64], bound: f64, margin: f64) -> Result<Vec<f64>, NeuralError> {
    let scale = bound * margin;
    angles_deg
        .iter()
        .map(|&a| {
            if a.abs() > bound {
                Err(NeuralError::OutOfBound { angle: a, bound })
            } else {
                Ok(a / scale)
            }
        })
        .collect()
}

/// Inverse of [`scale_targets`]: θ = y · bound · margin.
pub fn unscale_outputs(outputs: &[f64], bound: f64, margin: f64) -> Vec<f64> {
    let scale = bound * margin;
    outputs.iter().map(|&y| y * scale).collect()
}
