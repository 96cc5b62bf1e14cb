//! Command-line surface for the arm-pose pipeline.
//!
//! Exit codes: 0 success, 1 I/O or parse error, 2 unsupported design,
//! 3 verification failure, 4 joint-limit violation, 5 shape mismatch.

mod config;

use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use armpose_core::doe::{
    construct_oa, map_to_joint_angles, random_design, verify_strength, DesignSpec, DoeError,
    JointDesign, OrthogonalArray, Provenance,
};
use armpose_core::experiment::{
    compare_designs, evaluate, eval_csv, export_comparison, generate_dataset, human_eval_table,
    load_dataset, loss_csv, train, ExpError, TrainConfig,
};
use armpose_core::kinematics::{check_limits, poe_fk, JointVector, RobotModel};
use armpose_core::neural::{load_model, save_model, NetworkSpec, NeuralError};
use armpose_core::render::{CameraModel, SceneConfig};

#[derive(Parser)]
#[command(
    name = "armpose",
    about = "Orthogonal-array joint-space designs, synthetic RGB-D capture, and CNN pose regression",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct and verify orthogonal arrays
    Oa {
        #[command(subcommand)]
        action: OaAction,
    },
    /// Generate synthetic RGB-D datasets from joint designs
    Dataset {
        #[command(subcommand)]
        action: DatasetAction,
    },
    /// Train the CNN regressor on a dataset
    Train(TrainArgs),
    /// Evaluate a trained model on a dataset
    Eval(EvalArgs),
    /// Run the orthogonal-vs-random design comparison
    Compare(CompareArgs),
    /// Forward kinematics for a joint vector
    Fk(FkArgs),
    /// Write the bundled robot model description
    Model(ModelArgs),
}

#[derive(Subcommand)]
enum OaAction {
    /// Construct an orthogonal array and write it as CSV
    Generate {
        #[arg(long)]
        runs: usize,
        #[arg(long)]
        factors: usize,
        #[arg(long)]
        levels: usize,
        #[arg(long, default_value_t = 2)]
        strength: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the strength property of an array file
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        strength: usize,
    },
}

#[derive(Subcommand)]
enum DatasetAction {
    /// Render a design into RGBD sample files plus a manifest
    Generate(DatasetArgs),
}

#[derive(Args)]
struct DatasetArgs {
    /// Design file: an OA CSV (f1..fk header, mapped via --step/--offset)
    /// or a joint-angle CSV (j1..jk header)
    #[arg(long, conflicts_with_all = ["random", "validation"])]
    design: Option<PathBuf>,
    /// Generate this many uniform random training poses instead
    #[arg(long, conflicts_with = "validation")]
    random: Option<usize>,
    /// Generate this many uniform random hold-out poses instead
    #[arg(long)]
    validation: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Square image resolution in pixels
    #[arg(long, default_value_t = 64)]
    image_size: usize,
    /// Degrees per level when mapping an OA file
    #[arg(long, default_value_t = 10.0)]
    step: f64,
    /// Degree offset of level 0 when mapping an OA file
    #[arg(long, default_value_t = -55.0, allow_hyphen_values = true)]
    offset: f64,
    /// Uniform range for --random/--validation draws
    #[arg(long, default_value_t = -55.0, allow_hyphen_values = true)]
    lo: f64,
    #[arg(long, default_value_t = 55.0, allow_hyphen_values = true)]
    hi: f64,
    /// Robot model JSON (defaults to the bundled arm)
    #[arg(long)]
    model: Option<PathBuf>,
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    dataset: PathBuf,
    /// key = value config file (defaults to the desk-scale configuration)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Use the reference hyperparameters (lr 1e-6, 20000 epochs, dropout
    /// 0.05, batch 144) and record them next to the model
    #[arg(long)]
    paper_config: bool,
    /// Seed override
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long)]
    report: PathBuf,
    #[arg(long, default_value_t = 55.0)]
    angle_bound: f64,
    #[arg(long, default_value_t = 1.0)]
    target_margin: f64,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    orthogonal: PathBuf,
    #[arg(long)]
    random: PathBuf,
    #[arg(long)]
    validation: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    paper_config: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FkArgs {
    /// Seven comma-separated joint angles in degrees
    #[arg(long, allow_hyphen_values = true)]
    joints: String,
    #[arg(long)]
    model: Option<PathBuf>,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    out: PathBuf,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::new(1, e.to_string())
    }
}

impl From<DoeError> for Failure {
    fn from(e: DoeError) -> Failure {
        let code = match &e {
            DoeError::UnsupportedDesign(_) | DoeError::InvalidSpec(_) => 2,
            DoeError::Parse { .. } | DoeError::InvalidRange { .. } => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<NeuralError> for Failure {
    fn from(e: NeuralError) -> Failure {
        let code = match &e {
            NeuralError::ShapeMismatch(_) => 5,
            NeuralError::OutOfBound { .. } => 4,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ExpError> for Failure {
    fn from(e: ExpError) -> Failure {
        let code = match &e {
            ExpError::LimitViolation { .. } => 4,
            ExpError::Mismatch(_) => 5,
            ExpError::Neural(ne) => return Failure::from_neural_in_exp(ne, e.to_string()),
            ExpError::Render(armpose_core::render::RenderError::LimitViolation(_)) => 4,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl Failure {
    fn from_neural_in_exp(ne: &NeuralError, message: String) -> Failure {
        let code = match ne {
            NeuralError::ShapeMismatch(_) => 5,
            NeuralError::OutOfBound { .. } => 4,
            _ => 1,
        };
        Failure::new(code, message)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Oa { action } => match action {
            OaAction::Generate {
                runs,
                factors,
                levels,
                strength,
                out,
            } => cmd_oa_generate(runs, factors, levels, strength, &out),
            OaAction::Verify { file, strength } => cmd_oa_verify(&file, strength),
        },
        Command::Dataset { action } => match action {
            DatasetAction::Generate(args) => cmd_dataset_generate(args),
        },
        Command::Train(args) => cmd_train(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Fk(args) => cmd_fk(args),
        Command::Model(args) => {
            std::fs::write(&args.out, RobotModel::sawyer_like().to_json())?;
            println!("wrote {}", args.out.display());
            Ok(())
        }
    }
}

fn cmd_oa_generate(
    runs: usize,
    factors: usize,
    levels: usize,
    strength: usize,
    out: &Path,
) -> Result<(), Failure> {
    let spec = DesignSpec::new(runs, factors, levels, strength)?;
    let oa = construct_oa(&spec)?;
    let report = verify_strength(&oa, strength);
    if !report.pass {
        return Err(Failure::new(3, "constructed array failed verification"));
    }
    std::fs::write(out, oa.to_csv())?;
    println!(
        "OA({runs},{factors},{levels},{strength}) with index {} written to {}",
        report.index.unwrap(),
        out.display()
    );
    Ok(())
}

fn cmd_oa_verify(file: &Path, strength: usize) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file)?;
    let oa = OrthogonalArray::from_csv(&text, strength)?;
    let report = verify_strength(&oa, strength);
    if report.pass {
        println!(
            "pass: strength {} with index {} ({} runs, {} factors, {} levels)",
            strength,
            report.index.unwrap(),
            oa.spec().runs,
            oa.spec().factors,
            oa.spec().levels
        );
        Ok(())
    } else {
        let v = report.violation.expect("failing report names a violation");
        Err(Failure::new(
            3,
            format!(
                "strength-{strength} violation at columns {:?}: tuple {:?} occurs {} times, expected {}",
                v.columns, v.levels, v.count, v.expected
            ),
        ))
    }
}

fn load_robot(path: &Option<PathBuf>) -> Result<RobotModel, Failure> {
    match path {
        None => Ok(RobotModel::sawyer_like()),
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            RobotModel::from_json(&text).map_err(|e| Failure::new(1, e.to_string()))
        }
    }
}

fn cmd_dataset_generate(args: DatasetArgs) -> Result<(), Failure> {
    let model = load_robot(&args.model)?;
    let camera = CameraModel::desk_with_resolution(args.image_size);
    let scene = SceneConfig::default_scene();

    let design: JointDesign = if let Some(path) = &args.design {
        let text = std::fs::read_to_string(path)?;
        let header = text.lines().next().unwrap_or("");
        if header.starts_with('f') {
            let oa = OrthogonalArray::from_csv(&text, 2)?;
            map_to_joint_angles(&oa, args.step, args.offset)
        } else {
            JointDesign::from_csv(&text, Provenance::Orthogonal)?
        }
    } else if let Some(n) = args.random {
        random_design(n, 7, args.lo, args.hi, args.seed)?
    } else if let Some(n) = args.validation {
        random_design(n, 7, args.lo, args.hi, args.seed)?.with_provenance(Provenance::Validation)
    } else {
        return Err(Failure::new(
            1,
            "one of --design, --random, or --validation is required",
        ));
    };

    let manifest = generate_dataset(&design, &model, &camera, &scene, &args.out, args.seed)?;
    println!(
        "dataset {} with {} samples written to {}",
        manifest.id,
        manifest.samples.len(),
        args.out.display()
    );
    Ok(())
}

fn resolve_config(
    config_path: &Option<PathBuf>,
    paper: bool,
    seed: Option<u64>,
) -> Result<TrainConfig, Failure> {
    let base = if paper {
        TrainConfig::default()
    } else {
        TrainConfig::desk_scale()
    };
    let mut cfg = match config_path {
        None => base,
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            config::parse_train_config(&text, base).map_err(|e| Failure::new(1, e.to_string()))?
        }
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn write_provenance_config(cfg: &TrainConfig, out: &Path) -> Result<PathBuf, Failure> {
    let dir = out.parent().filter(|p| !p.as_os_str().is_empty());
    let path = dir.map(|d| d.to_path_buf()).unwrap_or_default().join("paper.cfg");
    std::fs::write(&path, config::format_train_config(cfg))?;
    Ok(path)
}

fn cmd_train(args: TrainArgs) -> Result<(), Failure> {
    let cfg = resolve_config(&args.config, args.paper_config, args.seed)?;
    let (_, dataset) = load_dataset(&args.dataset)?;
    let spec = NetworkSpec::flagship_for(
        dataset.height,
        dataset.width,
        cfg.dropout_p,
        cfg.conv_activation,
    );
    let (params, log) = train(&dataset, &spec, &cfg)?;
    save_model(&spec, &params, &args.out)?;
    let loss_path = args.out.with_extension("loss.csv");
    std::fs::write(&loss_path, loss_csv(&log))?;
    if args.paper_config {
        let p = write_provenance_config(&cfg, &args.out)?;
        println!("reference config recorded at {}", p.display());
    }
    println!(
        "trained {} epochs on {} ({} samples), final loss {:.6}; model at {}, losses at {}",
        log.entries.len(),
        dataset.id,
        dataset.len(),
        log.final_loss().unwrap_or(f64::NAN),
        args.out.display(),
        loss_path.display()
    );
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<(), Failure> {
    let (spec, params) = load_model(&args.model)?;
    let (_, dataset) = load_dataset(&args.dataset)?;
    let model_id = armpose_core::experiment::model_digest(&spec, &params)?;
    let report = evaluate(
        &params,
        &spec,
        &dataset,
        args.angle_bound,
        args.target_margin,
        &model_id,
    )?;
    std::fs::write(&args.report, eval_csv(&[&report]))?;
    print!("{}", human_eval_table(&[&report]));
    println!("report written to {}", args.report.display());
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), Failure> {
    let cfg = resolve_config(&args.config, args.paper_config, args.seed)?;
    let (_, orthogonal) = load_dataset(&args.orthogonal)?;
    let (_, random) = load_dataset(&args.random)?;
    let (_, validation) = load_dataset(&args.validation)?;
    let report = compare_designs(&orthogonal, &random, &validation, &cfg)?;
    let written = export_comparison(&report, &args.out)?;
    if args.paper_config {
        std::fs::write(
            args.out.join("paper.cfg"),
            config::format_train_config(&cfg),
        )?;
    }
    print!("{}", human_eval_table(&report.evals()));
    println!(
        "orthogonal final loss {:.6}, random final loss {:.6}",
        report.orthogonal_log.final_loss().unwrap_or(f64::NAN),
        report.random_log.final_loss().unwrap_or(f64::NAN)
    );
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_fk(args: FkArgs) -> Result<(), Failure> {
    let model = load_robot(&args.model)?;
    let parts: Vec<&str> = args.joints.split(',').collect();
    if parts.len() != 7 {
        return Err(Failure::new(
            1,
            format!("expected 7 joint angles, got {}", parts.len()),
        ));
    }
    let mut degrees = [0.0f64; 7];
    for (slot, part) in degrees.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Failure::new(1, format!("invalid angle {part:?}")))?;
    }
    let joints = JointVector::from_degrees(degrees);
    let violations = check_limits(&model, &joints);
    if !violations.is_empty() {
        let names: Vec<String> = violations.iter().map(|i| format!("j{}", i + 1)).collect();
        return Err(Failure::new(
            4,
            format!("joint limits violated at {}", names.join(", ")),
        ));
    }
    let pose = poe_fk(&model, &joints);
    println!("rotation:");
    for r in 0..3 {
        println!(
            "  [{:>10.6} {:>10.6} {:>10.6}]",
            pose.rotation[(r, 0)],
            pose.rotation[(r, 1)],
            pose.rotation[(r, 2)]
        );
    }
    println!(
        "translation: [{:.6} {:.6} {:.6}] m",
        pose.translation[0], pose.translation[1], pose.translation[2]
    );
    Ok(())
}
