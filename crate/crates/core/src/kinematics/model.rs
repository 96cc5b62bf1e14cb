//! The kinematic description of the arm: screw axes, home configuration,
//! joint limits, and the capsule radii the renderer draws the links with.

use super::{KinematicsError, ScrewAxis, Se3};
use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

/// One joint's geometry at the home configuration: its unit rotation axis
/// and a point on the axis (both in the base frame).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointGeometry {
    pub omega: Vector3<f64>,
    pub point: Vector3<f64>,
}

/// A 7-DOF arm model. Immutable after construction; the screw axes
/// (v = −ω × q) are derived and validated on build.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotModel {
    joints: [JointGeometry; 7],
    axes: [ScrewAxis; 7],
    home: Se3,
    limits_deg: [(f64, f64); 7],
    link_radii: [f64; 8],
}

impl RobotModel {
    pub fn new(
        joints: [JointGeometry; 7],
        home: Se3,
        limits_deg: [(f64, f64); 7],
        link_radii: [f64; 8],
    ) -> Result<Self, KinematicsError> {
        let mut axes = [ScrewAxis {
            omega: Vector3::zeros(),
            v: Vector3::zeros(),
        }; 7];
        for (i, j) in joints.iter().enumerate() {
            axes[i] = ScrewAxis::revolute(j.omega, j.point)?;
        }
        home.validate()?;
        for (i, (lo, hi)) in limits_deg.iter().enumerate() {
            if lo.partial_cmp(hi) != Some(std::cmp::Ordering::Less) {
                return Err(KinematicsError::Model(format!(
                    "joint {} limits ({lo}, {hi}) must satisfy lo < hi",
                    i + 1
                )));
            }
        }
        if link_radii.iter().any(|&r| r < 0.0 || !r.is_finite()) {
            return Err(KinematicsError::Model("link radii must be nonnegative".into()));
        }
        Ok(RobotModel {
            joints,
            axes,
            home,
            limits_deg,
            link_radii,
        })
    }

    /// The shipped default model, parsed from the versioned JSON asset.
    pub fn sawyer_like() -> RobotModel {
        RobotModel::from_json(include_str!("../../assets/sawyer_like.json"))
            .expect("bundled model asset is valid")
    }

    pub fn joints(&self) -> &[JointGeometry; 7] {
        &self.joints
    }

    pub fn screw_axes(&self) -> &[ScrewAxis; 7] {
        &self.axes
    }

    pub fn home(&self) -> &Se3 {
        &self.home
    }

    pub fn limits_deg(&self) -> &[(f64, f64); 7] {
        &self.limits_deg
    }

    pub fn link_radii(&self) -> &[f64; 8] {
        &self.link_radii
    }

    pub fn from_json(text: &str) -> Result<RobotModel, KinematicsError> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| KinematicsError::Model(e.to_string()))?;
        if file.version != 1 {
            return Err(KinematicsError::Model(format!(
                "unsupported model version {}",
                file.version
            )));
        }
        if file.joints.len() != 7 {
            return Err(KinematicsError::Model(format!(
                "expected 7 joints, got {}",
                file.joints.len()
            )));
        }
        if file.link_radii.len() != 8 {
            return Err(KinematicsError::Model(format!(
                "expected 8 link radii, got {}",
                file.link_radii.len()
            )));
        }
        let mut joints = [JointGeometry {
            omega: Vector3::zeros(),
            point: Vector3::zeros(),
        }; 7];
        let mut limits = [(0.0, 0.0); 7];
        for (i, j) in file.joints.iter().enumerate() {
            joints[i] = JointGeometry {
                omega: Vector3::from(j.omega),
                point: Vector3::from(j.q),
            };
            limits[i] = (j.limits_deg[0], j.limits_deg[1]);
        }
        let r = file.home_rotation;
        let home = Se3::new(
            Matrix3::new(
                r[0][0], r[0][1], r[0][2],
                r[1][0], r[1][1], r[1][2],
                r[2][0], r[2][1], r[2][2],
            ),
            Vector3::from(file.home_translation),
        );
        let mut radii = [0.0; 8];
        radii.copy_from_slice(&file.link_radii);
        RobotModel::new(joints, home, limits, radii)
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            version: 1,
            name: "custom".into(),
            description: String::new(),
            joints: self
                .joints
                .iter()
                .zip(&self.limits_deg)
                .map(|(j, &(lo, hi))| JointFile {
                    omega: j.omega.into(),
                    q: j.point.into(),
                    limits_deg: [lo, hi],
                })
                .collect(),
            home_rotation: [
                [self.home.rotation[(0, 0)], self.home.rotation[(0, 1)], self.home.rotation[(0, 2)]],
                [self.home.rotation[(1, 0)], self.home.rotation[(1, 1)], self.home.rotation[(1, 2)]],
                [self.home.rotation[(2, 0)], self.home.rotation[(2, 1)], self.home.rotation[(2, 2)]],
            ],
            home_translation: self.home.translation.into(),
            link_radii: self.link_radii.to_vec(),
        };
        serde_json::to_string_pretty(&file).expect("model serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    version: u32,
    #[serde(default)]
    name: String,
    #[serde(default)]
    description: String,
    joints: Vec<JointFile>,
    home_rotation: [[f64; 3]; 3],
    home_translation: [f64; 3],
    link_radii: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct JointFile {
    omega: [f64; 3],
    q: [f64; 3],
    limits_deg: [f64; 2],
}
