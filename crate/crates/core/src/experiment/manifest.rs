//! Dataset manifest: which poses were rendered into which files, under which
//! configuration fingerprints.

use super::ExpError;
use crate::kinematics::{check_limits, JointVector, RobotModel};
use crate::neural::crc64;
use crate::render::rgbd_from_bytes;
use serde::{Deserialize, Serialize};
use std::path::Path;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigDigests {
    pub robot: String,
    pub camera: String,
    pub scene: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleEntry {
    pub file: String,
    pub joints_deg: [f64; 7],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub id: String,
    pub provenance: String,
    pub seed: u64,
    pub digests: ConfigDigests,
    pub samples: Vec<SampleEntry>,
}

impl DatasetManifest {
    pub fn save(&self, dir: &Path) -> Result<(), ExpError> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| ExpError::Manifest(e.to_string()))?;
        text.push('\n');
        std::fs::write(dir.join(MANIFEST_FILE), text)?;
        Ok(())
    }

    pub fn load(dir: &Path) -> Result<DatasetManifest, ExpError> {
        let text = std::fs::read_to_string(dir.join(MANIFEST_FILE))?;
        serde_json::from_str(&text).map_err(|e| ExpError::Manifest(e.to_string()))
    }

    /// Check the manifest invariants against the files on disk: every sample
    /// exists, parses as an RGBD file of a consistent size, and its joint
    /// vector is within the model's limits.
    pub fn validate(&self, dir: &Path, model: &RobotModel) -> Result<(), ExpError> {
        let mut dims: Option<(usize, usize)> = None;
        for (i, sample) in self.samples.iter().enumerate() {
            let bytes = std::fs::read(dir.join(&sample.file))?;
            let img = rgbd_from_bytes(&bytes)?;
            match dims {
                None => dims = Some((img.width, img.height)),
                Some(d) => {
                    if d != (img.width, img.height) {
                        return Err(ExpError::Manifest(format!(
                            "sample {i} has size {}×{}, expected {}×{}",
                            img.width, img.height, d.0, d.1
                        )));
                    }
                }
            }
            let violations = check_limits(model, &JointVector::from_degrees(sample.joints_deg));
            if !violations.is_empty() {
                return Err(ExpError::LimitViolation {
                    pose: i,
                    joints: violations,
                });
            }
        }
        Ok(())
    }
}

/// CRC-64 fingerprint of a configuration string, in hex.
pub(crate) fn digest_of(text: &str) -> String {
    format!("{:016x}", crc64(text.as_bytes()))
}
