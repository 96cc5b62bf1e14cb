//! Finite-difference verification of the backward pass.

use super::layers::Mode;
use super::loss::mse_loss;
use super::network::{forward, NetworkParams, NetworkSpec};
use super::tensor::Tensor;
use super::NeuralError;
use crate::rng::RngStream;

/// Compare analytic parameter gradients against central differences
/// (h = 1e-4, full f64 pipeline) on a sampled subset of at least
/// `min_samples` parameters; returns the maximum relative error.
///
/// The forward pass runs in train mode with the dropout stream re-seeded
/// identically for every evaluation, so the loss is a deterministic function
/// of the parameters even at nonzero dropout rates.
pub fn grad_check(
    spec: &NetworkSpec,
    params: &NetworkParams,
    input: &Tensor,
    target: &Tensor,
    min_samples: usize,
    seed: u64,
) -> Result<f64, NeuralError> {
    let h = 1e-4;
    let loss_of = |p: &NetworkParams| -> Result<f64, NeuralError> {
        let mut rng = RngStream::new(seed);
        let (out, _) = forward(spec, p, input, Mode::Train, &mut rng)?;
        Ok(mse_loss(&out, target)?.0)
    };

    // analytic gradients with the same dropout masks
    let mut rng = RngStream::new(seed);
    let (out, cache) = forward(spec, params, input, Mode::Train, &mut rng)?;
    let (_, grad_pred) = mse_loss(&out, target)?;
    let (grads, _) = super::network::backward(spec, params, &cache, &grad_pred)?;

    // flat index space over all parameter coordinates
    let coords: Vec<(usize, bool, usize)> = params
        .layers
        .iter()
        .enumerate()
        .flat_map(|(li, l)| {
            l.as_ref()
                .map(|(w, b)| {
                    (0..w.len())
                        .map(move |i| (li, true, i))
                        .chain((0..b.len()).map(move |i| (li, false, i)))
                })
                .into_iter()
                .flatten()
        })
        .collect();
    let total = coords.len();
    let mut picks: Vec<usize> = if total <= min_samples {
        (0..total).collect()
    } else {
        let mut pick_rng = RngStream::new(seed).derive(0x7069_636b); // "pick"
        let mut chosen = std::collections::BTreeSet::new();
        while chosen.len() < min_samples {
            chosen.insert(pick_rng.next_index(total));
        }
        chosen.into_iter().collect()
    };
    picks.sort_unstable();

    let mut max_rel = 0.0f64;
    let mut work = params.clone();
    for idx in picks {
        let (li, is_weight, i) = coords[idx];
        let read = |p: &NetworkParams| {
            let (w, b) = p.layers[li].as_ref().unwrap();
            if is_weight {
                w.data()[i]
            } else {
                b.data()[i]
            }
        };
        let write = |p: &mut NetworkParams, v: f64| {
            let (w, b) = p.layers[li].as_mut().unwrap();
            if is_weight {
                w.data_mut()[i] = v;
            } else {
                b.data_mut()[i] = v;
            }
        };
        let orig = read(&work);
        write(&mut work, orig + h);
        let plus = loss_of(&work)?;
        write(&mut work, orig - h);
        let minus = loss_of(&work)?;
        write(&mut work, orig);
        let numeric = (plus - minus) / (2.0 * h);
        let analytic = read(&grads);
        let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1e-8);
        max_rel = max_rel.max(rel);
    }
    Ok(max_rel)
}
