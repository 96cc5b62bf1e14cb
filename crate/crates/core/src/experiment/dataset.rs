//! Rendering a joint design into an on-disk RGB-D dataset and loading it
//! back for training.

use super::manifest::{digest_of, ConfigDigests, DatasetManifest, SampleEntry};
use super::{map_indexed, ExpError};
use crate::doe::JointDesign;
use crate::kinematics::{check_limits, JointVector, RobotModel};
use crate::neural::Tensor;
use crate::render::{normalize, render_rgbd, rgbd_from_bytes, rgbd_to_bytes, CameraModel, SceneConfig};
use std::path::Path;

/// A dataset materialized in memory: one H×W×4 tensor per pose.
#[derive(Debug, Clone)]
pub struct LoadedDataset {
    pub id: String,
    pub provenance: String,
    pub images: Vec<Tensor>,
    pub joints_deg: Vec<[f64; 7]>,
    pub height: usize,
    pub width: usize,
}

impl LoadedDataset {
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

/// Render every pose of the design into `out_dir` (one normalized RGBD file
/// per pose plus a manifest). Bit-reproducible from (design, configs, seed):
/// the seed does not influence the renders, but it is recorded in the
/// manifest and the dataset id for provenance.
pub fn generate_dataset(
    design: &JointDesign,
    model: &RobotModel,
    camera: &CameraModel,
    scene: &SceneConfig,
    out_dir: &Path,
    seed: u64,
) -> Result<DatasetManifest, ExpError> {
    if design.k != 7 {
        return Err(ExpError::Mismatch(format!(
            "designs must have 7 joints, got {}",
            design.k
        )));
    }
    let poses: Vec<JointVector> = (0..design.n)
        .map(|i| {
            let mut d = [0.0; 7];
            d.copy_from_slice(design.row(i));
            JointVector::from_degrees(d)
        })
        .collect();
    for (i, pose) in poses.iter().enumerate() {
        let violations = check_limits(model, pose);
        if !violations.is_empty() {
            return Err(ExpError::LimitViolation {
                pose: i,
                joints: violations,
            });
        }
    }

    std::fs::create_dir_all(out_dir)?;
    let rendered: Vec<Result<Vec<u8>, ExpError>> = map_indexed(poses.len(), |i| {
        let raw = render_rgbd(model, &poses[i], camera, scene)?;
        Ok(rgbd_to_bytes(&normalize(&raw, camera)))
    });

    let digests = ConfigDigests {
        robot: digest_of(&model.to_json()),
        camera: digest_of(&camera.digest_string()),
        scene: digest_of(&scene.digest_string()),
    };
    let config_tag = digest_of(&format!(
        "{}-{}-{}",
        digests.robot, digests.camera, digests.scene
    ));
    let id = format!(
        "{}-{}-s{}-{}",
        design.provenance.as_str(),
        design.n,
        seed,
        &config_tag[..8]
    );

    let mut samples = Vec::with_capacity(design.n);
    for (i, bytes) in rendered.into_iter().enumerate() {
        let bytes = bytes?;
        let file = format!("sample_{i:05}.rgbd");
        std::fs::write(out_dir.join(&file), bytes)?;
        let mut joints_deg = [0.0; 7];
        joints_deg.copy_from_slice(design.row(i));
        samples.push(SampleEntry { file, joints_deg });
    }
    let manifest = DatasetManifest {
        id,
        provenance: design.provenance.as_str().to_string(),
        seed,
        digests,
        samples,
    };
    manifest.save(out_dir)?;
    Ok(manifest)
}

/// Read a dataset directory back into memory, widening samples to f64.
pub fn load_dataset(dir: &Path) -> Result<(DatasetManifest, LoadedDataset), ExpError> {
    let manifest = DatasetManifest::load(dir)?;
    let mut images = Vec::with_capacity(manifest.samples.len());
    let mut joints = Vec::with_capacity(manifest.samples.len());
    let mut dims: Option<(usize, usize)> = None;
    for (i, sample) in manifest.samples.iter().enumerate() {
        let bytes = std::fs::read(dir.join(&sample.file))?;
        let img = rgbd_from_bytes(&bytes)?;
        match dims {
            None => dims = Some((img.height, img.width)),
            Some(d) => {
                if d != (img.height, img.width) {
                    return Err(ExpError::Manifest(format!(
                        "sample {i} has inconsistent dimensions"
                    )));
                }
            }
        }
        let data: Vec<f64> = img.data.iter().map(|&v| v as f64).collect();
        images.push(Tensor::from_vec(&[img.height, img.width, 4], data)?);
        joints.push(sample.joints_deg);
    }
    let (height, width) = dims.ok_or_else(|| ExpError::Manifest("empty dataset".into()))?;
    Ok((
        manifest.clone(),
        LoadedDataset {
            id: manifest.id,
            provenance: manifest.provenance,
            images,
            joints_deg: joints,
            height,
            width,
        },
    ))
}
