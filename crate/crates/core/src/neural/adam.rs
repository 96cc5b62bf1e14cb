//! Adam with bias correction.

use super::network::NetworkParams;
use super::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig {
            learning_rate: 1e-6,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// First/second moment estimates plus the timestep counter.
#[derive(Debug, Clone)]
pub struct AdamState {
    pub config: AdamConfig,
    first: NetworkParams,
    second: NetworkParams,
    pub timestep: u64,
}

impl AdamState {
    pub fn new(params: &NetworkParams, config: AdamConfig) -> AdamState {
        AdamState {
            config,
            first: params.zeros_like(),
            second: params.zeros_like(),
            timestep: 0,
        }
    }
}

/// One Adam update. Parameters are snapped back to the f32 grid afterwards
/// so the in-memory state always equals what a model file round trip yields.
pub fn adam_step(params: &mut NetworkParams, grads: &NetworkParams, state: &mut AdamState) {
    state.timestep += 1;
    let t = state.timestep as i32;
    let c = state.config;
    let bias1 = 1.0 - c.beta1.powi(t);
    let bias2 = 1.0 - c.beta2.powi(t);
    for ((p, g), (m, v)) in params
        .layers
        .iter_mut()
        .zip(&grads.layers)
        .zip(state.first.layers.iter_mut().zip(&mut state.second.layers))
    {
        let (Some((pw, pb)), Some((gw, gb)), Some((mw, mb)), Some((vw, vb))) =
            (p.as_mut(), g.as_ref(), m.as_mut(), v.as_mut())
        else {
            continue;
        };
        update_tensor(pw, gw, mw, vw, c, bias1, bias2);
        update_tensor(pb, gb, mb, vb, c, bias1, bias2);
    }
}

fn update_tensor(
    p: &mut Tensor,
    g: &Tensor,
    m: &mut Tensor,
    v: &mut Tensor,
    c: AdamConfig,
    bias1: f64,
    bias2: f64,
) {
    let pd = p.data_mut();
    let gd = g.data();
    let md = m.data_mut();
    let vd = v.data_mut();
    for i in 0..pd.len() {
        md[i] = c.beta1 * md[i] + (1.0 - c.beta1) * gd[i];
        vd[i] = c.beta2 * vd[i] + (1.0 - c.beta2) * gd[i] * gd[i];
        let m_hat = md[i] / bias1;
        let v_hat = vd[i] / bias2;
        pd[i] -= c.learning_rate * m_hat / (v_hat.sqrt() + c.epsilon);
    }
    p.round_to_f32_grid();
}
