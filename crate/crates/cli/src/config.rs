//! Flat `key = value` configuration files with `#` comments.

use anyhow::{anyhow, bail, Result};
use armpose_core::experiment::{Optimizer, TrainConfig};
use armpose_core::neural::Activation;

/// Parse a training config file. Unknown keys are rejected; every value is
/// validated against its field's constraints when the config is used.
pub fn parse_train_config(text: &str, base: TrainConfig) -> Result<TrainConfig> {
    let mut config = base;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected key = value", lineno + 1))?;
        let key = key.trim();
        let value = value.trim();
        let ctx = |what: &str| anyhow!("line {}: invalid {what} {value:?}", lineno + 1);
        match key {
            "learning_rate" => config.learning_rate = value.parse().map_err(|_| ctx("learning_rate"))?,
            "batch_size" => config.batch_size = value.parse().map_err(|_| ctx("batch_size"))?,
            "epochs" => config.epochs = value.parse().map_err(|_| ctx("epochs"))?,
            "dropout_p" => config.dropout_p = value.parse().map_err(|_| ctx("dropout_p"))?,
            "optimizer" => {
                config.optimizer =
                    Optimizer::parse(value).ok_or_else(|| ctx("optimizer (expected adam)"))?
            }
            "seed" => config.seed = value.parse().map_err(|_| ctx("seed"))?,
            "stopping_loss" => {
                config.stopping_loss = if value == "none" {
                    None
                } else {
                    Some(value.parse().map_err(|_| ctx("stopping_loss"))?)
                }
            }
            "conv_activation" => {
                config.conv_activation = Activation::parse(value)
                    .ok_or_else(|| ctx("conv_activation (linear|tanh|relu)"))?
            }
            "target_margin" => config.target_margin = value.parse().map_err(|_| ctx("target_margin"))?,
            "angle_bound" => config.angle_bound = value.parse().map_err(|_| ctx("angle_bound"))?,
            other => bail!("line {}: unknown key {other:?}", lineno + 1),
        }
    }
    Ok(config)
}

/// Render a config in the same `key = value` format.
pub fn format_train_config(config: &TrainConfig) -> String {
    let stopping = match config.stopping_loss {
        Some(v) => v.to_string(),
        None => "none".into(),
    };
    format!(
        "learning_rate = {}\nbatch_size = {}\nepochs = {}\ndropout_p = {}\n\
         optimizer = {}\nseed = {}\nstopping_loss = {}\nconv_activation = {}\n\
         target_margin = {}\nangle_bound = {}\n",
        config.learning_rate,
        config.batch_size,
        config.epochs,
        config.dropout_p,
        config.optimizer.name(),
        config.seed,
        stopping,
        config.conv_activation.name(),
        config.target_margin,
        config.angle_bound,
    )
}
