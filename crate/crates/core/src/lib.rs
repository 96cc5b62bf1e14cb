//! Estimating a 7-DOF arm's joint vector from a single synthetic RGB-D image.
//!
//! The crate covers the full pipeline at desk scale:
//!
//! - [`doe`] — orthogonal-array experiment designs over joint space, plus
//!   random control and validation designs.
//! - [`kinematics`] — screw-theory forward kinematics (product of
//!   exponentials) for a shipped 7-DOF arm model.
//! - [`render`] — deterministic ray-cast RGB-D capture of the arm against a
//!   white background, with colored joint markers.
//! - [`neural`] — from-scratch tensors, an 11-layer CNN regressor,
//!   backpropagation, Adam, and finite-difference gradient verification.
//! - [`experiment`] — dataset generation, training, evaluation, and the
//!   orthogonal-vs-random training-design comparison.
//!
//! Everything is deterministic: given the same seeds and configurations, the
//! pipeline reproduces datasets, models, and reports byte for byte.

pub mod doe;
pub mod experiment;
pub mod kinematics;
pub mod neural;
pub mod render;
pub mod rng;
