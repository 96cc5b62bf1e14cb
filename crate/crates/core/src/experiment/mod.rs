//! Dataset generation, training, evaluation, and the orthogonal-vs-random
//! training-design comparison.
//!
//! Everything here is deterministic end to end: (designs, configs, seeds)
//! reproduce datasets, models, logs, and reports byte for byte, regardless
//! of thread count.

mod compare;
mod dataset;
mod eval;
mod manifest;
mod report;
mod train;

pub use compare::{compare_designs, model_digest, ComparisonReport};
pub use dataset::{generate_dataset, load_dataset, LoadedDataset};
pub use eval::{evaluate, EvalReport};
pub use manifest::{ConfigDigests, DatasetManifest, SampleEntry};
pub use report::{
    eval_csv, export_comparison, human_eval_table, loss_csv, loss_curves_svg, table1_csv,
};
pub use train::{train, LogEntry, Optimizer, TrainConfig, TrainLog, DESK_IMAGE_SIZE};

use crate::doe::DoeError;
use crate::kinematics::KinematicsError;
use crate::neural::NeuralError;
use crate::render::RenderError;
use thiserror::Error;


#[derive(Debug, Error)]
pub enum ExpError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("pose {pose}: joint limits violated at indices {joints:?}")]
    LimitViolation { pose: usize, joints: Vec<usize> },
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("manifest error: {0}")]
    Manifest(String),
    #[error(transparent)]
    Neural(#[from] NeuralError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error(transparent)]
    Doe(#[from] DoeError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
}

/// Map `f` over `0..n`, in parallel when the `parallel` feature is on. The
/// output order (and any downstream accumulation order) is index order
/// either way, so results are identical with and without threads.
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}
