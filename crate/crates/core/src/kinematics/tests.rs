use super::*;
use crate::rng::RngStream;
use nalgebra::{Rotation3, Unit, Vector3};

/// Independent oracle: compose plain rotation matrices about explicitly
/// stored axes and points, T(x) = R(x − q) + q, using nalgebra's
/// axis-angle rotation (a quaternion path, not the Rodrigues closed form
/// the implementation uses).
fn oracle_fk(model: &RobotModel, joints: &JointVector) -> Se3 {
    let mut acc = Se3::identity();
    for (j, theta) in model.joints().iter().zip(joints.radians()) {
        let r = Rotation3::from_axis_angle(&Unit::new_normalize(j.omega), theta);
        let rot: nalgebra::Matrix3<f64> = r.into_inner();
        let trans = j.point - rot * j.point;
        acc = acc.compose(&Se3::new(rot, trans));
    }
    acc.compose(model.home())
}

fn random_pose(rng: &mut RngStream, lo: f64, hi: f64) -> JointVector {
    let mut d = [0.0; 7];
    for v in &mut d {
        *v = rng.uniform(lo, hi);
    }
    JointVector::from_degrees(d)
}

#[test]
fn twist_exp_zero_angle_is_identity() {
    let axis = ScrewAxis::revolute(Vector3::new(0.0, 0.0, 1.0), Vector3::new(0.3, -0.2, 0.5)).unwrap();
    let t = twist_exp(&axis, 0.0).unwrap();
    assert_eq!(t.max_abs_diff(&Se3::identity()), 0.0);
}

#[test]
fn twist_exp_quarter_turn_about_z() {
    let axis = ScrewAxis::revolute(Vector3::new(0.0, 0.0, 1.0), Vector3::zeros()).unwrap();
    let t = twist_exp(&axis, std::f64::consts::FRAC_PI_2).unwrap();
    // compare against a plain z-axis rotation matrix
    let z90 = Rotation3::from_axis_angle(&Unit::new_normalize(Vector3::z()), std::f64::consts::FRAC_PI_2);
    let mapped = t.apply(&Vector3::new(1.0, 0.0, 0.0));
    assert!((mapped - Vector3::new(0.0, 1.0, 0.0)).norm() < 1e-12);
    assert!((t.rotation - z90.into_inner()).abs().max() < 1e-12);
    assert!(t.translation.norm() < 1e-15);
}

#[test]
fn twist_exp_prismatic_limit() {
    let axis = ScrewAxis::prismatic(Vector3::new(1.0, 0.0, 0.0)).unwrap();
    let t = twist_exp(&axis, 0.3).unwrap();
    assert_eq!(t.rotation, nalgebra::Matrix3::identity());
    assert!((t.translation - Vector3::new(0.3, 0.0, 0.0)).norm() < 1e-15);
}

#[test]
fn twist_exp_rejects_bad_axis() {
    let bad = ScrewAxis {
        omega: Vector3::new(0.0, 0.0, 2.0),
        v: Vector3::zeros(),
    };
    assert!(matches!(twist_exp(&bad, 1.0), Err(KinematicsError::InvalidAxis(_))));
}

#[test]
fn one_parameter_subgroup_property() {
    let mut rng = RngStream::new(11);
    for _ in 0..50 {
        let dir = Vector3::new(
            rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0),
        )
        .normalize();
        let q = Vector3::new(
            rng.uniform(-0.5, 0.5),
            rng.uniform(-0.5, 0.5),
            rng.uniform(0.0, 1.0),
        );
        let axis = ScrewAxis::revolute(dir, q).unwrap();
        let a = rng.uniform(-3.0, 3.0);
        let b = rng.uniform(-3.0, 3.0);
        let lhs = twist_exp(&axis, a).unwrap().compose(&twist_exp(&axis, b).unwrap());
        let rhs = twist_exp(&axis, a + b).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-9);
        // inverse property
        let inv = twist_exp(&axis, a).unwrap().compose(&twist_exp(&axis, -a).unwrap());
        assert!(inv.max_abs_diff(&Se3::identity()) < 1e-9);
    }
}

#[test]
fn zero_pose_returns_home_exactly() {
    let model = RobotModel::sawyer_like();
    let t = poe_fk(&model, &JointVector::zero());
    assert!(t.max_abs_diff(model.home()) < 1e-12);
}

#[test]
fn single_joint_pose_composes_with_home() {
    let model = RobotModel::sawyer_like();
    let joints = JointVector::from_degrees([30.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let t = poe_fk(&model, &joints);
    let e1 = twist_exp(&model.screw_axes()[0], 30f64.to_radians()).unwrap();
    let expected = e1.compose(model.home());
    assert!(t.max_abs_diff(&expected) < 1e-15);
}

#[test]
fn matches_rotation_composition_oracle_on_random_poses() {
    let model = RobotModel::sawyer_like();
    let mut rng = RngStream::new(5);
    for _ in 0..150 {
        let joints = random_pose(&mut rng, -55.0, 55.0);
        let ours = poe_fk(&model, &joints);
        let theirs = oracle_fk(&model, &joints);
        assert!(
            ours.max_abs_diff(&theirs) < 1e-9,
            "mismatch at {:?}",
            joints.degrees()
        );
    }
}

#[test]
fn fixture_pose_from_oracle() {
    // frozen oracle_fk output for this pose on the shipped model
    let model = RobotModel::sawyer_like();
    let joints = JointVector::from_degrees([10.0, -20.0, 30.0, 0.0, 5.0, 15.0, -5.0]);
    let fixture = Se3::new(
        nalgebra::Matrix3::new(
            0.779103953392186, -0.6074495480897945, -0.15492603504308536,
            0.6253202293264646, 0.7705458350650174, 0.12342498474398479,
            0.04440315983986304, -0.19303927732319082, 0.9801857970848057,
        ),
        Vector3::new(-0.13512566998903996, 0.06384398020481835, 1.1052593104854609),
    );
    let t = poe_fk(&model, &joints);
    assert!(t.max_abs_diff(&fixture) < 1e-9);
    let oracle = oracle_fk(&model, &joints);
    assert!(oracle.max_abs_diff(&fixture) < 1e-12);
}

#[test]
fn orthonormality_drift_over_many_poses() {
    let model = RobotModel::sawyer_like();
    let mut rng = RngStream::new(99);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let joints = random_pose(&mut rng, -180.0, 180.0);
        let t = poe_fk(&model, &joints);
        worst = worst.max(t.orthonormality_error());
    }
    assert!(worst <= 1e-9, "orthonormality drift {worst} exceeds 1e-9");
}

#[test]
fn joint_frames_at_home() {
    let model = RobotModel::sawyer_like();
    let frames = joint_frames(&model, &JointVector::zero());
    for (i, frame) in frames.iter().enumerate().take(7) {
        assert!(frame.rotation == nalgebra::Matrix3::identity());
        assert_eq!(frame.translation, model.joints()[i].point);
    }
    assert!(frames[7].max_abs_diff(model.home()) < 1e-15);
}

#[test]
fn joint_frames_first_joint_rotates_all() {
    let model = RobotModel::sawyer_like();
    let theta = 40f64.to_radians();
    let joints = JointVector::from_degrees([40.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    let frames = joint_frames(&model, &joints);
    let base_rot = Rotation3::from_axis_angle(&Unit::new_normalize(model.joints()[0].omega), theta);
    for (i, frame) in frames.iter().enumerate().take(7) {
        let expected = base_rot * model.joints()[i].point;
        assert!((frame.translation - expected).norm() < 1e-12);
    }
}

#[test]
fn joint_frames_last_equals_poe_fk() {
    let model = RobotModel::sawyer_like();
    let mut rng = RngStream::new(3);
    for _ in 0..100 {
        let joints = random_pose(&mut rng, -55.0, 55.0);
        let frames = joint_frames(&model, &joints);
        let t = poe_fk(&model, &joints);
        assert_eq!(frames[7].max_abs_diff(&t), 0.0);
    }
}

#[test]
fn limits_accept_boundary_and_flag_violations() {
    let model = RobotModel::sawyer_like();
    assert!(check_limits(&model, &JointVector::zero()).is_empty());
    // closed interval: exactly ±55 is in limits
    let boundary = JointVector::from_degrees([55.0, -55.0, 55.0, -55.0, 55.0, -55.0, 55.0]);
    assert!(check_limits(&model, &boundary).is_empty());
    let bad = JointVector::from_degrees([0.0, 0.0, 56.0, 0.0, 0.0, 0.0, 0.0]);
    assert_eq!(check_limits(&model, &bad), vec![2]);
    let worse = JointVector::from_degrees([-60.0, 0.0, 56.0, 0.0, 0.0, 0.0, 90.0]);
    assert_eq!(check_limits(&model, &worse), vec![0, 2, 6]);
}

#[test]
fn model_json_round_trip() {
    let model = RobotModel::sawyer_like();
    let json = model.to_json();
    let back = RobotModel::from_json(&json).unwrap();
    assert_eq!(back, model);
}

#[test]
fn model_rejects_bad_files() {
    assert!(RobotModel::from_json("{}").is_err());
    let mut v: serde_json::Value =
        serde_json::from_str(include_str!("../../assets/sawyer_like.json")).unwrap();
    v["version"] = serde_json::json!(2);
    assert!(matches!(
        RobotModel::from_json(&v.to_string()),
        Err(KinematicsError::Model(_))
    ));
}
