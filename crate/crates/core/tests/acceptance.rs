//! Acceptance suite: the ten criteria the artifact must meet, one test per
//! criterion, each printing a PASS line with its measured numbers. Run with
//! `cargo test --test acceptance -- --nocapture` to see them.

use armpose_core::doe::{
    map_to_joint_angles, random_design, verify_strength, OrthogonalArray, Provenance,
};
use armpose_core::experiment::{
    compare_designs, eval_csv, evaluate, export_comparison, generate_dataset, load_dataset,
    loss_csv, train, TrainConfig, DESK_IMAGE_SIZE,
};
use armpose_core::kinematics::{
    joint_frames, poe_fk, twist_exp, JointVector, RobotModel, ScrewAxis, Se3,
};
use armpose_core::neural::{
    grad_check, save_model, Activation, NetworkParams, NetworkSpec, Tensor,
};
use armpose_core::render::{CameraModel, SceneConfig};
use armpose_core::rng::RngStream;
use nalgebra::{Rotation3, Unit, Vector3};
use std::path::Path;
use std::time::Instant;

fn pass(n: u32, name: &str, detail: &str) {
    println!("ACCEPTANCE {n:02} {name}: PASS ({detail})");
}

#[test]
fn criterion_01_orthogonality_of_flagship_array() {
    let t0 = Instant::now();
    let oa = OrthogonalArray::flagship();
    let report = verify_strength(&oa, 2);
    assert!(report.pass, "violation: {:?}", report.violation);
    assert_eq!(report.index, Some(1));
    // 21 column pairs, 144 ordered level pairs each, seen exactly once
    assert_eq!(oa.spec().factors * (oa.spec().factors - 1) / 2, 21);
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "verification took {elapsed:.3}s, budget 1s");
    pass(
        1,
        "orthogonality",
        &format!("OA(144,7,12,2) strength 2, lambda 1, {elapsed:.3}s"),
    );
}

#[test]
fn criterion_02_degree_mapping_grid() {
    let design = map_to_joint_angles(&OrthogonalArray::flagship(), 10.0, -55.0);
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &a in design.rows_flat() {
        let level = (a + 55.0) / 10.0;
        assert_eq!(level, level.round(), "angle {a} is off the 10-degree grid");
        assert!((-55.0..=55.0).contains(&a));
        min = min.min(a);
        max = max.max(a);
    }
    assert_eq!(min, -55.0);
    assert_eq!(max, 55.0);
    pass(2, "degree mapping", "grid -55..55 step 10, min/max exact");
}

#[test]
fn criterion_03_database_size_claim() {
    let full_grid: u64 = 11u64.pow(7);
    assert_eq!(full_grid, 19_487_171);
    let dir = tempfile::tempdir().unwrap();
    let design = map_to_joint_angles(&OrthogonalArray::flagship(), 10.0, -55.0);
    let manifest = generate_dataset(
        &design,
        &RobotModel::sawyer_like(),
        &CameraModel::desk_with_resolution(16),
        &SceneConfig::default_scene(),
        dir.path(),
        0,
    )
    .unwrap();
    assert_eq!(manifest.samples.len(), 144);
    pass(
        3,
        "database size",
        &format!("{} grid poses replaced by {} samples", full_grid, manifest.samples.len()),
    );
}

/// Independent oracle: rotations about explicitly stored axes/points,
/// composed as homogeneous transforms via quaternion-backed axis-angle.
fn oracle_fk(model: &RobotModel, joints: &JointVector) -> Se3 {
    let mut acc = Se3::identity();
    for (j, theta) in model.joints().iter().zip(joints.radians()) {
        let rot = Rotation3::from_axis_angle(&Unit::new_normalize(j.omega), theta).into_inner();
        let trans = j.point - rot * j.point;
        acc = acc.compose(&Se3::new(rot, trans));
    }
    acc.compose(model.home())
}

#[test]
fn criterion_04_forward_kinematics_identities() {
    let t0 = Instant::now();
    let model = RobotModel::sawyer_like();

    let home = poe_fk(&model, &JointVector::zero());
    assert!(home.max_abs_diff(model.home()) < 1e-12, "zero pose drifts from M");

    let mut rng = RngStream::new(404);
    for _ in 0..50 {
        let dir = Vector3::new(
            rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0),
        )
        .normalize();
        let q = Vector3::new(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(0.0, 1.0));
        let axis = ScrewAxis::revolute(dir, q).unwrap();
        let (a, b) = (rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
        let lhs = twist_exp(&axis, a).unwrap().compose(&twist_exp(&axis, b).unwrap());
        assert!(lhs.max_abs_diff(&twist_exp(&axis, a + b).unwrap()) < 1e-9);
        let round = twist_exp(&axis, a).unwrap().compose(&twist_exp(&axis, -a).unwrap());
        assert!(round.max_abs_diff(&Se3::identity()) < 1e-9);
    }

    let mut worst = 0.0f64;
    for _ in 0..120 {
        let mut d = [0.0; 7];
        for v in &mut d {
            *v = rng.uniform(-55.0, 55.0);
        }
        let joints = JointVector::from_degrees(d);
        let ours = poe_fk(&model, &joints);
        worst = worst.max(ours.max_abs_diff(&oracle_fk(&model, &joints)));
        // definitional consistency of the frame chain
        let frames = joint_frames(&model, &joints);
        assert_eq!(frames[7].max_abs_diff(&ours), 0.0);
    }
    assert!(worst < 1e-9, "oracle disagreement {worst:.3e}");
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "took {elapsed:.2}s, budget 5s");
    pass(
        4,
        "FK identities",
        &format!("oracle agreement within {worst:.2e} on 120 poses, {elapsed:.2}s"),
    );
}

#[test]
fn criterion_05_network_shape_chain() {
    let spec = NetworkSpec::flagship(0.05, Activation::Linear);
    assert_eq!(spec.layers.len(), 11);
    let chain = spec.shape_chain().unwrap();
    let expected: Vec<Vec<usize>> = vec![
        vec![61, 61, 32],
        vec![30, 30, 32],
        vec![28, 28, 32],
        vec![14, 14, 32],
        vec![6272],
        vec![6272],
        vec![200],
        vec![200],
        vec![100],
        vec![100],
        vec![7],
    ];
    assert_eq!(chain, expected);
    pass(5, "shape chain", "64x64x4 -> 11 layers -> 7, flatten 6272");
}

#[test]
fn criterion_06_gradient_correctness() {
    let t0 = Instant::now();
    let spec = NetworkSpec::toy(0.05, Activation::Linear);
    let params = NetworkParams::init(&spec, 606).unwrap();
    let mut rng = RngStream::new(607);
    let mut input = Tensor::zeros(&[8, 8, 4]);
    for v in input.data_mut() {
        *v = rng.uniform(0.0, 1.0);
    }
    let mut target = Tensor::zeros(&[7]);
    for v in target.data_mut() {
        *v = rng.uniform(-0.9, 0.9);
    }
    let err = grad_check(&spec, &params, &input, &target, 200, 11).unwrap();
    assert!(err <= 1e-4, "max relative gradient error {err:.3e} exceeds 1e-4");
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "took {elapsed:.1}s, budget 2min");
    pass(
        6,
        "gradient correctness",
        &format!("max rel error {err:.2e} over 200+ sampled parameters, {elapsed:.1}s"),
    );
}

fn run_pipeline(root: &Path, seed: u64) -> Vec<(String, Vec<u8>)> {
    let ds_dir = root.join("ds");
    let val_dir = root.join("val");
    let model = RobotModel::sawyer_like();
    let camera = CameraModel::desk_with_resolution(16);
    let scene = SceneConfig::default_scene();
    let design = random_design(10, 7, -55.0, 55.0, seed).unwrap();
    generate_dataset(&design, &model, &camera, &scene, &ds_dir, seed).unwrap();
    let val_design = random_design(4, 7, -55.0, 55.0, seed + 1)
        .unwrap()
        .with_provenance(Provenance::Validation);
    generate_dataset(&val_design, &model, &camera, &scene, &val_dir, seed).unwrap();

    let (_, train_ds) = load_dataset(&ds_dir).unwrap();
    let (_, val_ds) = load_dataset(&val_dir).unwrap();
    let config = TrainConfig {
        learning_rate: 1e-3,
        batch_size: 10,
        epochs: 3,
        dropout_p: 0.05,
        seed,
        ..TrainConfig::default()
    };
    let spec = NetworkSpec::flagship_for(16, 16, config.dropout_p, config.conv_activation);
    let (params, log) = train(&train_ds, &spec, &config).unwrap();
    save_model(&spec, &params, &root.join("model.ann1")).unwrap();
    std::fs::write(root.join("loss.csv"), loss_csv(&log)).unwrap();
    let report = evaluate(&params, &spec, &val_ds, 55.0, 1.0, "model").unwrap();
    std::fs::write(root.join("report.csv"), eval_csv(&[&report])).unwrap();

    // every file the pipeline produced, in stable order
    let mut files = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        let mut entries: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
        entries.sort();
        for p in entries {
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                files.push((rel, std::fs::read(&p).unwrap()));
            }
        }
    }
    files.sort();
    files
}

#[test]
fn criterion_07_end_to_end_determinism() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let run_a = run_pipeline(a.path(), 42);
    let run_b = run_pipeline(b.path(), 42);
    assert_eq!(run_a.len(), run_b.len());
    for ((name_a, bytes_a), (name_b, bytes_b)) in run_a.iter().zip(&run_b) {
        assert_eq!(name_a, name_b);
        assert_eq!(bytes_a, bytes_b, "{name_a} differs between identical runs");
    }
    pass(
        7,
        "determinism",
        &format!("{} files byte-identical across two runs", run_a.len()),
    );
}

#[test]
fn criterion_08_underfit_baseline_oracle() {
    let t0 = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let design = random_design(1000, 7, -55.0, 55.0, 808)
        .unwrap()
        .with_provenance(Provenance::Validation);
    generate_dataset(
        &design,
        &RobotModel::sawyer_like(),
        &CameraModel::desk_with_resolution(16),
        &SceneConfig::default_scene(),
        dir.path(),
        808,
    )
    .unwrap();
    let (_, ds) = load_dataset(dir.path()).unwrap();
    let spec = NetworkSpec::flagship_for(16, 16, 0.0, Activation::Linear);
    let params = NetworkParams::init(&spec, 0).unwrap().zeroed();
    let report = evaluate(&params, &spec, &ds, 55.0, 1.0, "constant-zero").unwrap();
    for (j, mae) in report.per_joint_mae_deg.iter().enumerate() {
        assert!(
            (mae - 27.5).abs() <= 1.5,
            "joint {} MAE {mae:.2} outside 27.5 +/- 1.5",
            j + 1
        );
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "took {elapsed:.1}s, budget 1min");
    pass(
        8,
        "underfit baseline",
        &format!(
            "constant-zero predictor MAE {:.2}..{:.2} deg over 1000 poses, {elapsed:.1}s",
            report.per_joint_mae_deg.iter().cloned().fold(f64::INFINITY, f64::min),
            report.per_joint_mae_deg.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        ),
    );
}

#[test]
fn criterion_09_desk_scale_directional_reproduction() {
    let t0 = Instant::now();
    let side = DESK_IMAGE_SIZE;
    let config = TrainConfig::desk_scale();
    let model = RobotModel::sawyer_like();
    let camera = CameraModel::desk_with_resolution(side);
    let scene = SceneConfig::default_scene();

    let orth_design = map_to_joint_angles(&OrthogonalArray::flagship(), 10.0, -55.0);
    let rand_design = random_design(144, 7, -55.0, 55.0, config.seed).unwrap();
    let val_design = random_design(32, 7, -55.0, 55.0, config.seed + 1)
        .unwrap()
        .with_provenance(Provenance::Validation);
    assert_eq!(orth_design.n, rand_design.n, "both arms train on 144 images");

    let dirs = [
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
    ];
    generate_dataset(&orth_design, &model, &camera, &scene, dirs[0].path(), 0).unwrap();
    generate_dataset(&rand_design, &model, &camera, &scene, dirs[1].path(), 0).unwrap();
    generate_dataset(&val_design, &model, &camera, &scene, dirs[2].path(), 0).unwrap();
    let (_, orth) = load_dataset(dirs[0].path()).unwrap();
    let (_, rand) = load_dataset(dirs[1].path()).unwrap();
    let (_, val) = load_dataset(dirs[2].path()).unwrap();
    assert_eq!(val.len(), 32);

    let report = compare_designs(&orth, &rand, &val, &config).unwrap();

    // (a) the orthogonal arm converges: final loss at most half the initial
    let initial = report.orthogonal_log.entries[0].loss;
    let final_loss = report.orthogonal_log.final_loss().unwrap();
    let ratio = final_loss / initial;
    assert!(
        ratio <= 0.5,
        "orthogonal arm failed to converge: {final_loss:.4} / {initial:.4} = {ratio:.3}"
    );
    // regression bound pinned from the committed run (achieved 0.026)
    assert!(ratio <= 0.08, "convergence regressed: ratio {ratio:.3} above pinned 0.08");

    // (b) training error strictly below the 32-pose validation error
    let train_mae = report.orthogonal_train_eval.average_deg;
    let val_mae = report.orthogonal_validation_eval.average_deg;
    assert!(
        train_mae < val_mae,
        "expected train MAE < validation MAE, got {train_mae:.2} vs {val_mae:.2}"
    );

    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed <= 1800.0, "took {elapsed:.0}s, budget 30min");
    pass(
        9,
        "desk-scale directional reproduction",
        &format!(
            "loss {initial:.3} -> {final_loss:.4} (x{ratio:.3}); train MAE {train_mae:.1} < validation MAE {val_mae:.1} deg; {elapsed:.0}s"
        ),
    );
}

#[test]
fn criterion_10_report_fidelity() {
    let model = RobotModel::sawyer_like();
    let camera = CameraModel::desk_with_resolution(16);
    let scene = SceneConfig::default_scene();
    let dirs = [
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
    ];
    let orth = random_design(6, 7, -55.0, 55.0, 1).unwrap().with_provenance(Provenance::Orthogonal);
    let rand = random_design(6, 7, -55.0, 55.0, 2).unwrap();
    let val = random_design(3, 7, -55.0, 55.0, 3).unwrap().with_provenance(Provenance::Validation);
    generate_dataset(&orth, &model, &camera, &scene, dirs[0].path(), 1).unwrap();
    generate_dataset(&rand, &model, &camera, &scene, dirs[1].path(), 2).unwrap();
    generate_dataset(&val, &model, &camera, &scene, dirs[2].path(), 3).unwrap();
    let (_, orth) = load_dataset(dirs[0].path()).unwrap();
    let (_, rand) = load_dataset(dirs[1].path()).unwrap();
    let (_, val) = load_dataset(dirs[2].path()).unwrap();

    let config = TrainConfig {
        learning_rate: 1e-3,
        batch_size: 6,
        epochs: 4,
        seed: 0,
        ..TrainConfig::default()
    };
    let report = compare_designs(&orth, &rand, &val, &config).unwrap();
    let out = tempfile::tempdir().unwrap();
    export_comparison(&report, out.path()).unwrap();

    // Table-1 shape: header + two dataset rows, 9 columns each
    let table = std::fs::read_to_string(out.path().join("table1.csv")).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "dataset,j1,j2,j3,j4,j5,j6,j7,average");
    assert!(lines[1].starts_with("random,"));
    assert!(lines[2].starts_with("orthogonal,"));
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 9);
    }

    // per-epoch loss CSVs: row count equals the configured epochs
    for name in ["loss_orthogonal.csv", "loss_random.csv"] {
        let text = std::fs::read_to_string(out.path().join(name)).unwrap();
        assert_eq!(text.lines().count() - 1, config.epochs, "{name}");
    }
    pass(10, "report fidelity", "table1 2x9, loss rows == epochs");
}
