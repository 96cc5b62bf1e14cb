//! Screw-theory forward kinematics.
//!
//! A joint's motion is generated by a twist (ω, v): the matrix exponential
//! of the twist scaled by the joint angle is a rigid transform, and the
//! product of the seven per-joint exponentials with the home configuration
//! gives the end-effector pose. The exponential is evaluated in closed form
//! (Rodrigues for the rotation, the G(θ) integral for the translation), so
//! there is no series truncation to tune.
//!
//! Angles are degrees at every external boundary (CSV, CLI, reports) and
//! radians inside the math.

mod model;

pub use model::{JointGeometry, RobotModel};

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KinematicsError {
    #[error("invalid screw axis: {0}")]
    InvalidAxis(String),
    #[error("model error: {0}")]
    Model(String),
}

const UNIT_TOL: f64 = 1e-9;

/// A unit twist: rotation axis ω and linear component v, expressed in the
/// base frame at the home configuration.
///
/// Revolute joints have ‖ω‖ = 1 and v = −ω × q for a point q on the axis;
/// prismatic joints (supported for generality) have ω = 0 and ‖v‖ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewAxis {
    pub omega: Vector3<f64>,
    pub v: Vector3<f64>,
}

impl ScrewAxis {
    /// Revolute axis through the point `q` with unit direction `omega`.
    pub fn revolute(omega: Vector3<f64>, q: Vector3<f64>) -> Result<Self, KinematicsError> {
        let axis = ScrewAxis {
            omega,
            v: -omega.cross(&q),
        };
        axis.validate()?;
        Ok(axis)
    }

    /// Prismatic axis translating along the unit direction `v`.
    pub fn prismatic(v: Vector3<f64>) -> Result<Self, KinematicsError> {
        let axis = ScrewAxis {
            omega: Vector3::zeros(),
            v,
        };
        axis.validate()?;
        Ok(axis)
    }

    pub fn validate(&self) -> Result<(), KinematicsError> {
        let wn = self.omega.norm();
        if (wn - 1.0).abs() <= UNIT_TOL {
            return Ok(());
        }
        if wn <= UNIT_TOL {
            let vn = self.v.norm();
            if (vn - 1.0).abs() <= UNIT_TOL {
                return Ok(());
            }
            return Err(KinematicsError::InvalidAxis(format!(
                "prismatic axis needs a unit v, got norm {vn}"
            )));
        }
        Err(KinematicsError::InvalidAxis(format!(
            "rotation axis must be unit length, got norm {wn}"
        )))
    }

    fn is_revolute(&self) -> bool {
        self.omega.norm() > UNIT_TOL
    }
}

/// A rigid transform: rotation matrix plus translation in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Se3 {
    pub rotation: Matrix3<f64>,
    pub translation: Vector3<f64>,
}

impl Se3 {
    pub fn identity() -> Self {
        Se3 {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Self {
        Se3 { rotation, translation }
    }

    pub fn from_translation(translation: Vector3<f64>) -> Self {
        Se3 {
            rotation: Matrix3::identity(),
            translation,
        }
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Se3) -> Se3 {
        Se3 {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn apply(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * p + self.translation
    }

    pub fn inverse(&self) -> Se3 {
        let rt = self.rotation.transpose();
        Se3 {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    /// Max-abs deviation of RᵀR from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let m = self.rotation.transpose() * self.rotation - Matrix3::identity();
        m.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()))
    }

    /// Check RᵀR = I and det R = +1 within 1e-9.
    pub fn validate(&self) -> Result<(), KinematicsError> {
        let err = self.orthonormality_error();
        if err > UNIT_TOL {
            return Err(KinematicsError::InvalidAxis(format!(
                "rotation is not orthonormal (max-abs error {err:.3e})"
            )));
        }
        let det = self.rotation.determinant();
        if (det - 1.0).abs() > UNIT_TOL {
            return Err(KinematicsError::InvalidAxis(format!(
                "rotation determinant {det} is not +1"
            )));
        }
        Ok(())
    }

    /// Max-abs difference over rotation and translation entries.
    pub fn max_abs_diff(&self, other: &Se3) -> f64 {
        let dr = self.rotation - other.rotation;
        let dt = self.translation - other.translation;
        dr.iter()
            .chain(dt.iter())
            .fold(0.0f64, |acc, &x| acc.max(x.abs()))
    }
}

/// Seven joint angles, held in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointVector {
    degrees: [f64; 7],
}

impl JointVector {
    pub fn from_degrees(degrees: [f64; 7]) -> Self {
        JointVector { degrees }
    }

    pub fn zero() -> Self {
        JointVector { degrees: [0.0; 7] }
    }

    pub fn degrees(&self) -> &[f64; 7] {
        &self.degrees
    }

    pub fn radians(&self) -> [f64; 7] {
        self.degrees.map(f64::to_radians)
    }

    pub fn is_finite(&self) -> bool {
        self.degrees.iter().all(|a| a.is_finite())
    }
}

fn skew(w: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -w.z, w.y, w.z, 0.0, -w.x, -w.y, w.x, 0.0)
}

/// Closed-form exponential of a twist scaled by `theta` (radians).
///
/// Rotation: I + sinθ·\[ω\] + (1−cosθ)·\[ω\]².
/// Translation: (Iθ + (1−cosθ)·\[ω\] + (θ−sinθ)·\[ω\]²)·v.
/// For ω = 0 this degenerates to a pure translation v·θ.
pub fn twist_exp(axis: &ScrewAxis, theta: f64) -> Result<Se3, KinematicsError> {
    axis.validate()?;
    if !axis.is_revolute() {
        return Ok(Se3::from_translation(axis.v * theta));
    }
    let w = skew(&axis.omega);
    let w2 = w * w;
    let (s, c) = theta.sin_cos();
    let rotation = Matrix3::identity() + w * s + w2 * (1.0 - c);
    let g = Matrix3::identity() * theta + w * (1.0 - c) + w2 * (theta - s);
    Ok(Se3 {
        rotation,
        translation: g * axis.v,
    })
}

/// Product-of-exponentials forward kinematics: the end-effector pose for the
/// given joint vector, composing one twist exponential per joint with the
/// home configuration.
pub fn poe_fk(model: &RobotModel, joints: &JointVector) -> Se3 {
    let mut t = Se3::identity();
    for (axis, theta) in model.screw_axes().iter().zip(joints.radians()) {
        let e = twist_exp(axis, theta).expect("model axes are validated at construction");
        t = t.compose(&e);
    }
    t.compose(model.home())
}

/// The seven joint frames plus the end-effector frame at the given pose.
///
/// Frame i is the prefix product of the first i twist exponentials applied
/// to joint i's home frame (identity rotation at the home point); the 8th
/// entry equals [`poe_fk`]'s output.
pub fn joint_frames(model: &RobotModel, joints: &JointVector) -> [Se3; 8] {
    let mut frames = [Se3::identity(); 8];
    let mut prefix = Se3::identity();
    let thetas = joints.radians();
    for i in 0..7 {
        let e = twist_exp(&model.screw_axes()[i], thetas[i])
            .expect("model axes are validated at construction");
        prefix = prefix.compose(&e);
        frames[i] = prefix.compose(&Se3::from_translation(model.joints()[i].point));
    }
    frames[7] = prefix.compose(model.home());
    frames
}

/// Indices (0-based) of joints whose angle lies outside the closed interval
/// [lo, hi]; an empty vector means every joint is in limits.
pub fn check_limits(model: &RobotModel, joints: &JointVector) -> Vec<usize> {
    model
        .limits_deg()
        .iter()
        .zip(joints.degrees())
        .enumerate()
        .filter(|(_, ((lo, hi), angle))| **angle < *lo || **angle > *hi)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests;
