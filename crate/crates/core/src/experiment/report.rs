//! CSV and SVG report rendering.
//!
//! CSV files carry full precision; the human-readable table rounds to one
//! decimal place.

use super::compare::ComparisonReport;
use super::eval::EvalReport;
use super::train::TrainLog;
use std::io;
use std::path::{Path, PathBuf};

/// `epoch,loss` with one row per logged epoch.
pub fn loss_csv(log: &TrainLog) -> String {
    let mut out = String::from("epoch,loss\n");
    for e in &log.entries {
        out.push_str(&format!("{},{}\n", e.epoch, e.loss));
    }
    out
}

/// `dataset,j1..j7,average` rows, one per report.
pub fn eval_csv(reports: &[&EvalReport]) -> String {
    let mut out = String::from("dataset,j1,j2,j3,j4,j5,j6,j7,average\n");
    for r in reports {
        out.push_str(&r.dataset_id);
        for v in r.per_joint_mae_deg {
            out.push_str(&format!(",{v}"));
        }
        out.push_str(&format!(",{}\n", r.average_deg));
    }
    out
}

/// The two-row validation table: random first, orthogonal second.
pub fn table1_csv(random_validation: &EvalReport, orthogonal_validation: &EvalReport) -> String {
    let mut out = String::from("dataset,j1,j2,j3,j4,j5,j6,j7,average\n");
    for (label, r) in [("random", random_validation), ("orthogonal", orthogonal_validation)] {
        out.push_str(label);
        for v in r.per_joint_mae_deg {
            out.push_str(&format!(",{v}"));
        }
        out.push_str(&format!(",{}\n", r.average_deg));
    }
    out
}

/// Fixed-width table with one decimal place per entry.
pub fn human_eval_table(reports: &[&EvalReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<32} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6} {:>6} {:>8}\n",
        "dataset", "j1", "j2", "j3", "j4", "j5", "j6", "j7", "average"
    ));
    for r in reports {
        out.push_str(&format!("{:<32}", r.dataset_id));
        for v in r.per_joint_mae_deg {
            out.push_str(&format!(" {v:>6.1}"));
        }
        out.push_str(&format!(" {:>8.1}\n", r.average_deg));
    }
    out
}

/// Self-contained SVG line chart of one or more loss curves.
pub fn loss_curves_svg(curves: &[(&str, &TrainLog)]) -> String {
    const W: f64 = 720.0;
    const H: f64 = 440.0;
    const ML: f64 = 70.0;
    const MR: f64 = 20.0;
    const MT: f64 = 30.0;
    const MB: f64 = 50.0;
    let colors = ["#1f6fb2", "#c23b22", "#2e8b57", "#8a2be2"];

    let max_epoch = curves
        .iter()
        .flat_map(|(_, l)| l.entries.iter().map(|e| e.epoch))
        .max()
        .unwrap_or(1)
        .max(1) as f64;
    let max_loss = curves
        .iter()
        .flat_map(|(_, l)| l.entries.iter().map(|e| e.loss))
        .fold(f64::MIN_POSITIVE, f64::max);
    let scale_y = (H - MT - MB) / max_loss;
    let scale_x = (W - ML - MR) / max_epoch;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "  <line x1=\"{ML}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MB,
        W - MR,
        H - MB
    ));
    svg.push_str(&format!(
        "  <line x1=\"{ML}\" y1=\"{MT}\" x2=\"{ML}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - MB
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">epoch</text>\n",
        (ML + W - MR) / 2.0,
        H - 12.0
    ));
    svg.push_str(&format!(
        "  <text x=\"16\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">training loss</text>\n",
        (MT + H - MB) / 2.0,
        (MT + H - MB) / 2.0
    ));
    svg.push_str(&format!(
        "  <text x=\"{ML}\" y=\"{}\" font-size=\"12\">0</text>\n",
        H - MB + 16.0
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{}</text>\n",
        W - MR,
        H - MB + 16.0,
        max_epoch as usize
    ));
    svg.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">{max_loss:.4}</text>\n",
        ML - 6.0,
        MT + 6.0
    ));

    for (ci, (label, log)) in curves.iter().enumerate() {
        let color = colors[ci % colors.len()];
        let points: Vec<String> = log
            .entries
            .iter()
            .map(|e| {
                let x = ML + e.epoch as f64 * scale_x;
                let y = H - MB - e.loss * scale_y;
                format!("{x:.2},{y:.2}")
            })
            .collect();
        if !points.is_empty() {
            svg.push_str(&format!(
                "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                points.join(" ")
            ));
        }
        let ly = MT + 16.0 * ci as f64;
        svg.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"3\"/>\n",
            W - MR - 150.0,
            W - MR - 120.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
            W - MR - 112.0,
            ly + 4.0,
            xml_escape(label)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Write the full comparison artifact set into `dir`: two per-epoch loss
/// CSVs, four evaluation CSVs (each model on its training set and on
/// validation), the two-row validation table, and an SVG with both loss
/// curves. Returns the written paths.
pub fn export_comparison(report: &ComparisonReport, dir: &Path) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let files = [
        ("loss_orthogonal.csv", loss_csv(&report.orthogonal_log)),
        ("loss_random.csv", loss_csv(&report.random_log)),
        ("eval_orthogonal_train.csv", eval_csv(&[&report.orthogonal_train_eval])),
        (
            "eval_orthogonal_validation.csv",
            eval_csv(&[&report.orthogonal_validation_eval]),
        ),
        ("eval_random_train.csv", eval_csv(&[&report.random_train_eval])),
        (
            "eval_random_validation.csv",
            eval_csv(&[&report.random_validation_eval]),
        ),
        (
            "table1.csv",
            table1_csv(&report.random_validation_eval, &report.orthogonal_validation_eval),
        ),
        (
            "summary.svg",
            loss_curves_svg(&[
                ("orthogonal", &report.orthogonal_log),
                ("random", &report.random_log),
            ]),
        ),
    ];
    let mut written = Vec::new();
    for (name, content) in files {
        let path = dir.join(name);
        std::fs::write(&path, content)?;
        written.push(path);
    }
    Ok(written)
}
