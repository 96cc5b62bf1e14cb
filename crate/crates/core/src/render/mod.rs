//! Deterministic synthetic RGB-D capture of the arm.
//!
//! A fixed pinhole camera casts one ray per pixel; the nearest hit among the
//! link capsules and the joint marker spheres wins the depth buffer. Flat
//! shading, no lights, no noise: two renders of the same pose are
//! bit-identical, which is what makes datasets and the downstream training
//! runs reproducible.

mod io;
mod ray;

pub use io::{rgbd_from_bytes, rgbd_to_bytes};
pub use ray::{ray_capsule_intersect, ray_sphere};

use crate::kinematics::{check_limits, joint_frames, JointVector, RobotModel, Se3};
use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("joint limits violated at indices {0:?}")]
    LimitViolation(Vec<usize>),
    #[error("invalid camera: {0}")]
    InvalidCamera(String),
    #[error("rgbd parse error: {0}")]
    Parse(String),
}

/// Pinhole camera: intrinsics in pixels, camera-from-world pose, and the
/// depth range the sensor reports.
///
/// Camera frame convention: +x right, +y down, +z forward. Pixel (0,0) is
/// the top-left corner; rays go through pixel centers.
#[derive(Debug, Clone, PartialEq)]
pub struct CameraModel {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: usize,
    pub height: usize,
    pub pose: Se3,
    pub near: f64,
    pub far: f64,
}

impl CameraModel {
    /// Camera-from-world pose looking from `eye` toward `target`, with the
    /// world up direction mapped toward the image's up.
    pub fn look_at(eye: Vector3<f64>, target: Vector3<f64>, up: Vector3<f64>) -> Se3 {
        let forward = (target - eye).normalize();
        let right = forward.cross(&up).normalize();
        let down = forward.cross(&right);
        // rows of the camera-from-world rotation are the camera axes
        let rotation = Matrix3::from_rows(&[right.transpose(), down.transpose(), forward.transpose()]);
        let translation = -(rotation * eye);
        Se3::new(rotation, translation)
    }

    /// The default desk-scale capture rig: 2.5 m from the arm base, framing
    /// the workspace center, 64×64 pixels.
    pub fn default_desk() -> CameraModel {
        CameraModel::desk_with_resolution(64)
    }

    /// The default rig at an arbitrary square resolution (intrinsics scale
    /// with the side length so the framing is unchanged).
    pub fn desk_with_resolution(side: usize) -> CameraModel {
        let s = side as f64;
        CameraModel {
            fx: s,
            fy: s,
            cx: s / 2.0,
            cy: s / 2.0,
            width: side,
            height: side,
            pose: CameraModel::look_at(
                Vector3::new(2.5, 0.0, 0.6),
                Vector3::new(0.0, 0.0, 0.6),
                Vector3::new(0.0, 0.0, 1.0),
            ),
            near: 0.5,
            far: 4.0,
        }
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        if self.fx <= 0.0 || self.fy <= 0.0 {
            return Err(RenderError::InvalidCamera("focal lengths must be positive".into()));
        }
        if self.cx < 0.0 || self.cx >= self.width as f64 || self.cy < 0.0 || self.cy >= self.height as f64 {
            return Err(RenderError::InvalidCamera("principal point outside image".into()));
        }
        if !(0.0 < self.near && self.near < self.far) {
            return Err(RenderError::InvalidCamera("need 0 < near < far".into()));
        }
        Ok(())
    }

    /// Fingerprint of every field, for dataset manifests.
    pub fn digest_string(&self) -> String {
        format!(
            "camera fx={:?} fy={:?} cx={:?} cy={:?} w={} h={} R={:?} t={:?} near={:?} far={:?}",
            self.fx,
            self.fy,
            self.cx,
            self.cy,
            self.width,
            self.height,
            self.pose.rotation.as_slice(),
            self.pose.translation.as_slice(),
            self.near,
            self.far
        )
    }
}

/// Colors and sizes of everything in the scene.
///
/// The background is white (the capture rig drapes the scene) and each joint
/// carries a distinct marker color so the landmarks are visually separable.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneConfig {
    pub background_rgb: [f32; 3],
    /// Depth reported for pixels that hit nothing, in meters.
    pub background_depth: f64,
    /// One color per link capsule (base pedestal + 7 links).
    pub link_rgb: [[f32; 3]; 8],
    /// Seven pairwise-distinct marker colors.
    pub marker_rgb: [[f32; 3]; 7],
    pub marker_radius: f64,
}

impl SceneConfig {
    pub fn default_scene() -> SceneConfig {
        SceneConfig {
            background_rgb: [1.0, 1.0, 1.0],
            background_depth: 4.0,
            link_rgb: [[0.25, 0.25, 0.28]; 8],
            // seven well-separated hues
            marker_rgb: [
                [0.90, 0.10, 0.10],
                [0.95, 0.60, 0.05],
                [0.85, 0.85, 0.10],
                [0.10, 0.75, 0.15],
                [0.10, 0.70, 0.85],
                [0.15, 0.20, 0.90],
                [0.75, 0.15, 0.80],
            ],
            marker_radius: 0.08,
        }
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        let all = self
            .link_rgb
            .iter()
            .chain(self.marker_rgb.iter())
            .chain(std::iter::once(&self.background_rgb));
        for c in all {
            if c.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
                return Err(RenderError::Parse("color component outside [0,1]".into()));
            }
        }
        for i in 0..7 {
            for j in (i + 1)..7 {
                if self.marker_rgb[i] == self.marker_rgb[j] {
                    return Err(RenderError::Parse(format!(
                        "marker colors {i} and {j} are not distinct"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn digest_string(&self) -> String {
        format!(
            "scene bg={:?} bgd={:?} links={:?} markers={:?} mr={:?}",
            self.background_rgb, self.background_depth, self.link_rgb, self.marker_rgb, self.marker_radius
        )
    }
}

/// H×W×4 image: R, G, B in \[0,1\] and depth in meters (raw) or \[0,1\]
/// (normalized), channel-interleaved row-major, top row first.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbdImage {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f32>,
}

impl RgbdImage {
    pub fn channels() -> usize {
        4
    }

    pub fn pixel(&self, x: usize, y: usize) -> [f32; 4] {
        let i = (y * self.width + x) * 4;
        [self.data[i], self.data[i + 1], self.data[i + 2], self.data[i + 3]]
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

struct Capsule {
    a: Vector3<f64>,
    b: Vector3<f64>,
    radius: f64,
    color: [f32; 3],
}

struct Marker {
    center: Vector3<f64>,
    radius: f64,
    color: [f32; 3],
}

/// World-space primitives for one pose of the arm.
struct ScenePrimitives {
    links: Vec<Capsule>,
    markers: Vec<Marker>,
}

fn build_primitives(model: &RobotModel, joints: &JointVector, scene: &SceneConfig) -> ScenePrimitives {
    let frames = joint_frames(model, joints);
    let mut chain = Vec::with_capacity(9);
    chain.push(Vector3::zeros()); // arm base
    for f in &frames {
        chain.push(f.translation);
    }
    let links = (0..8)
        .map(|i| Capsule {
            a: chain[i],
            b: chain[i + 1],
            radius: model.link_radii()[i],
            color: scene.link_rgb[i],
        })
        .collect();
    let markers = (0..7)
        .map(|i| Marker {
            center: frames[i].translation,
            radius: scene.marker_radius,
            color: scene.marker_rgb[i],
        })
        .collect();
    ScenePrimitives { links, markers }
}

/// Cast the pixel ray and return the winning primitive's color and hit
/// distance. Markers take priority over links at exactly equal depth.
fn trace(
    prims: &ScenePrimitives,
    origin: &Vector3<f64>,
    dir: &Vector3<f64>,
) -> Option<(f64, [f32; 3])> {
    let mut best: Option<(f64, [f32; 3])> = None;
    for link in &prims.links {
        if link.radius <= 0.0 {
            continue;
        }
        if let Some(t) = ray_capsule_intersect(origin, dir, &link.a, &link.b, link.radius) {
            if best.is_none_or(|(bt, _)| t < bt) {
                best = Some((t, link.color));
            }
        }
    }
    for marker in &prims.markers {
        if marker.radius <= 0.0 {
            continue;
        }
        if let Some(t) = ray_sphere(origin, dir, &marker.center, marker.radius) {
            // <= gives markers priority at equal depth, like tape on the surface
            if best.is_none_or(|(bt, _)| t <= bt) {
                best = Some((t, marker.color));
            }
        }
    }
    best
}

/// Render the arm at the given pose into a raw RGB-D image.
///
/// Deterministic: identical inputs produce bit-identical buffers. Fails with
/// [`RenderError::LimitViolation`] if any joint is outside its limits.
pub fn render_rgbd(
    model: &RobotModel,
    joints: &JointVector,
    camera: &CameraModel,
    scene: &SceneConfig,
) -> Result<RgbdImage, RenderError> {
    camera.validate()?;
    scene.validate()?;
    let violations = check_limits(model, joints);
    if !violations.is_empty() {
        return Err(RenderError::LimitViolation(violations));
    }

    let prims = build_primitives(model, joints, scene);
    let cam_to_world = camera.pose.inverse();
    let origin = cam_to_world.translation;

    let mut data = vec![0f32; camera.width * camera.height * 4];
    for py in 0..camera.height {
        for px in 0..camera.width {
            let dir_cam = Vector3::new(
                (px as f64 + 0.5 - camera.cx) / camera.fx,
                (py as f64 + 0.5 - camera.cy) / camera.fy,
                1.0,
            );
            let dir = (cam_to_world.rotation * dir_cam).normalize();
            let (rgb, depth) = match trace(&prims, &origin, &dir) {
                Some((t, color)) => (color, t.clamp(camera.near, camera.far)),
                None => (scene.background_rgb, scene.background_depth),
            };
            let i = (py * camera.width + px) * 4;
            data[i] = rgb[0];
            data[i + 1] = rgb[1];
            data[i + 2] = rgb[2];
            data[i + 3] = depth as f32;
        }
    }
    Ok(RgbdImage {
        width: camera.width,
        height: camera.height,
        data,
    })
}

/// Preprocess a raw capture: RGB is already in \[0,1\] and passes through;
/// depth maps affinely from \[near, far\] onto \[0,1\], clamped.
pub fn normalize(image: &RgbdImage, camera: &CameraModel) -> RgbdImage {
    let near = camera.near;
    let span = camera.far - camera.near;
    let mut data = image.data.clone();
    for px in data.chunks_exact_mut(4) {
        let d = px[3] as f64;
        px[3] = (((d - near) / span).clamp(0.0, 1.0)) as f32;
    }
    RgbdImage {
        width: image.width,
        height: image.height,
        data,
    }
}
