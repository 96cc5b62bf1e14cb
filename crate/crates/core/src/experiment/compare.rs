//! The orthogonal-vs-random training-design comparison.

use super::dataset::LoadedDataset;
use super::eval::{evaluate, EvalReport};
use super::train::{train, TrainConfig, TrainLog};
use super::ExpError;
use crate::neural::{crc64, model_to_bytes, NetworkSpec};

/// Two training runs plus four evaluations: each model on its own training
/// set and on the shared validation set.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub orthogonal_log: TrainLog,
    pub random_log: TrainLog,
    pub orthogonal_train_eval: EvalReport,
    pub orthogonal_validation_eval: EvalReport,
    pub random_train_eval: EvalReport,
    pub random_validation_eval: EvalReport,
}

impl ComparisonReport {
    pub fn evals(&self) -> [&EvalReport; 4] {
        [
            &self.orthogonal_train_eval,
            &self.orthogonal_validation_eval,
            &self.random_train_eval,
            &self.random_validation_eval,
        ]
    }
}

/// Train one model per training design under an identical configuration
/// (identical seed, so both arms start from bit-identical initial weights)
/// and evaluate both on their training set and the validation set. The
/// dataset is the only varying factor between the two arms.
pub fn compare_designs(
    orthogonal: &LoadedDataset,
    random: &LoadedDataset,
    validation: &LoadedDataset,
    config: &TrainConfig,
) -> Result<ComparisonReport, ExpError> {
    if orthogonal.len() != random.len() {
        return Err(ExpError::Mismatch(format!(
            "training sets must have equal size: {} vs {}",
            orthogonal.len(),
            random.len()
        )));
    }
    let dims = (orthogonal.height, orthogonal.width);
    for (name, ds) in [("random", random), ("validation", validation)] {
        if (ds.height, ds.width) != dims {
            return Err(ExpError::Mismatch(format!(
                "{name} dataset is {}×{}, expected {}×{}",
                ds.height, ds.width, dims.0, dims.1
            )));
        }
    }
    let spec = NetworkSpec::flagship_for(dims.0, dims.1, config.dropout_p, config.conv_activation);

    let (orth_params, orthogonal_log) = train(orthogonal, &spec, config)?;
    let orth_id = model_digest(&spec, &orth_params)?;
    let (rand_params, random_log) = train(random, &spec, config)?;
    let rand_id = model_digest(&spec, &rand_params)?;

    let b = config.angle_bound;
    let m = config.target_margin;
    Ok(ComparisonReport {
        orthogonal_train_eval: evaluate(&orth_params, &spec, orthogonal, b, m, &orth_id)?,
        orthogonal_validation_eval: evaluate(&orth_params, &spec, validation, b, m, &orth_id)?,
        random_train_eval: evaluate(&rand_params, &spec, random, b, m, &rand_id)?,
        random_validation_eval: evaluate(&rand_params, &spec, validation, b, m, &rand_id)?,
        orthogonal_log,
        random_log,
    })
}

/// Deterministic fingerprint of a serialized model.
pub fn model_digest(
    spec: &NetworkSpec,
    params: &crate::neural::NetworkParams,
) -> Result<String, ExpError> {
    Ok(format!("{:016x}", crc64(&model_to_bytes(spec, params)?)))
}
