//! Interactive browser demo.
//!
//! Three operations are exposed to the page: render the arm at a joint
//! vector (RGB or depth view), browse the 144 poses of the orthogonal
//! design, and read off the end-effector pose from forward kinematics.
//! All heavy lifting stays in the core crate; the page only moves pixel
//! buffers onto a canvas.
//!
//! The `*_impl` layer works in plain Rust types so it runs (and is tested)
//! on the host; the `#[wasm_bindgen]` wrappers only translate errors.

use armpose_core::doe::{map_to_joint_angles, OrthogonalArray};
use armpose_core::kinematics::{check_limits, poe_fk, JointVector, RobotModel};
use armpose_core::render::{normalize, render_rgbd, CameraModel, SceneConfig};
use wasm_bindgen::prelude::*;

fn joints_from_slice(joints_deg: &[f64]) -> Result<JointVector, String> {
    if joints_deg.len() != 7 {
        return Err("expected 7 joint angles".into());
    }
    let mut d = [0.0; 7];
    d.copy_from_slice(joints_deg);
    Ok(JointVector::from_degrees(d))
}

fn render_pose_rgba_impl(joints_deg: &[f64], size: u32, depth_view: bool) -> Result<Vec<u8>, String> {
    let model = RobotModel::sawyer_like();
    let joints = joints_from_slice(joints_deg)?;
    let violations = check_limits(&model, &joints);
    if !violations.is_empty() {
        return Err(format!("joint limits violated at indices {violations:?}"));
    }
    let camera = CameraModel::desk_with_resolution(size as usize);
    let scene = SceneConfig::default_scene();
    let raw = render_rgbd(&model, &joints, &camera, &scene).map_err(|e| e.to_string())?;
    let img = normalize(&raw, &camera);
    let mut out = Vec::with_capacity(img.data.len());
    for px in img.data.chunks_exact(4) {
        if depth_view {
            let d = (px[3].clamp(0.0, 1.0) * 255.0) as u8;
            out.extend_from_slice(&[d, d, d, 255]);
        } else {
            out.extend_from_slice(&[
                (px[0].clamp(0.0, 1.0) * 255.0) as u8,
                (px[1].clamp(0.0, 1.0) * 255.0) as u8,
                (px[2].clamp(0.0, 1.0) * 255.0) as u8,
                255,
            ]);
        }
    }
    Ok(out)
}

fn orthogonal_pose_impl(row: u32) -> Result<Vec<f64>, String> {
    let oa = OrthogonalArray::flagship();
    if row as usize >= oa.spec().runs {
        return Err("row out of range".into());
    }
    let design = map_to_joint_angles(&oa, 10.0, -55.0);
    Ok(design.row(row as usize).to_vec())
}

fn end_effector_text_impl(joints_deg: &[f64]) -> Result<String, String> {
    let model = RobotModel::sawyer_like();
    let joints = joints_from_slice(joints_deg)?;
    let pose = poe_fk(&model, &joints);
    let t = pose.translation;
    let r = pose.rotation;
    Ok(format!(
        "position  x {:+.3} m   y {:+.3} m   z {:+.3} m\nrotation  [{:+.3} {:+.3} {:+.3}; {:+.3} {:+.3} {:+.3}; {:+.3} {:+.3} {:+.3}]",
        t[0], t[1], t[2],
        r[(0, 0)], r[(0, 1)], r[(0, 2)],
        r[(1, 0)], r[(1, 1)], r[(1, 2)],
        r[(2, 0)], r[(2, 1)], r[(2, 2)],
    ))
}

/// Render the arm at the given joint angles (degrees) into an RGBA byte
/// buffer of `size`×`size` pixels, ready for a canvas `ImageData`. With
/// `depth_view` the normalized depth channel is shown as grayscale.
#[wasm_bindgen]
pub fn render_pose_rgba(joints_deg: &[f64], size: u32, depth_view: bool) -> Result<Vec<u8>, JsValue> {
    render_pose_rgba_impl(joints_deg, size, depth_view).map_err(|e| JsValue::from_str(&e))
}

/// Number of poses in the orthogonal design.
#[wasm_bindgen]
pub fn orthogonal_pose_count() -> u32 {
    OrthogonalArray::flagship().spec().runs as u32
}

/// Joint angles (degrees) of one row of the orthogonal design, mapped onto
/// the −55°…55° grid.
#[wasm_bindgen]
pub fn orthogonal_pose(row: u32) -> Result<Vec<f64>, JsValue> {
    orthogonal_pose_impl(row).map_err(|e| JsValue::from_str(&e))
}

/// Human-readable end-effector pose for the given joint angles.
#[wasm_bindgen]
pub fn end_effector_text(joints_deg: &[f64]) -> Result<String, JsValue> {
    end_effector_text_impl(joints_deg).map_err(|e| JsValue::from_str(&e))
}

/// Joint limits in degrees as [lo, hi] pairs, flattened.
#[wasm_bindgen]
pub fn joint_limits_deg() -> Vec<f64> {
    RobotModel::sawyer_like()
        .limits_deg()
        .iter()
        .flat_map(|&(lo, hi)| [lo, hi])
        .collect()
}
