//! Orthogonal-array experiment designs over joint space.
//!
//! An orthogonal array OA(N,k,s,t) of index λ is an N×k matrix over s symbols
//! in which every N×t submatrix contains each ordered t-tuple exactly
//! λ = N/sᵗ times. Strength-2, index-1 arrays are the sampling designs used
//! to span a 7-dimensional joint space with far fewer poses than a full
//! grid: 144 poses instead of 11⁷ ≈ 20 million.
//!
//! [`construct_oa`] builds arrays via Galois fields (prime-power levels), an
//! embedded table for the flagship (144,7,12,2) parameters, or Kronecker
//! products for coprime composite levels. [`verify_strength`] is the sole
//! arbiter of correctness for all routes.

mod construct;
mod flagship;
mod gf;
mod latin;
mod verify;

pub use construct::construct_oa;
pub use flagship::FLAGSHIP_OA_144_7_12;
pub use latin::LatinSquareSet;
pub use verify::{verify_strength, StrengthReport, TupleViolation};

use crate::rng::RngStream;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DoeError {
    #[error("invalid design spec: {0}")]
    InvalidSpec(String),
    #[error("unsupported design: {0}")]
    UnsupportedDesign(String),
    #[error("invalid range: lo {lo} must be < hi {hi}")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Parameters of an orthogonal array: N runs, k factors, s levels,
/// strength t, index λ = N/sᵗ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignSpec {
    pub runs: usize,
    pub factors: usize,
    pub levels: usize,
    pub strength: usize,
    pub index: usize,
}

impl DesignSpec {
    /// Validate the arithmetic invariants: λ = N/sᵗ must divide exactly and
    /// k ≥ t.
    pub fn new(runs: usize, factors: usize, levels: usize, strength: usize) -> Result<Self, DoeError> {
        if runs == 0 || factors == 0 || strength == 0 {
            return Err(DoeError::InvalidSpec(
                "runs, factors, and strength must be positive".into(),
            ));
        }
        if levels < 2 {
            return Err(DoeError::InvalidSpec("levels must be at least 2".into()));
        }
        if factors < strength {
            return Err(DoeError::InvalidSpec(format!(
                "factors ({factors}) must be at least the strength ({strength})"
            )));
        }
        let st = levels
            .checked_pow(strength as u32)
            .ok_or_else(|| DoeError::InvalidSpec("levels^strength overflows".into()))?;
        if !runs.is_multiple_of(st) {
            return Err(DoeError::InvalidSpec(format!(
                "runs ({runs}) must be a multiple of levels^strength ({st})"
            )));
        }
        Ok(DesignSpec {
            runs,
            factors,
            levels,
            strength,
            index: runs / st,
        })
    }

    /// The flagship parameters: OA(144,7,12,2), index 1.
    pub fn flagship() -> Self {
        DesignSpec::new(144, 7, 12, 2).expect("flagship spec is valid")
    }
}

/// An N×k array of level indices in `[0, levels)`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalArray {
    spec: DesignSpec,
    rows: Vec<u16>,
}

impl OrthogonalArray {
    /// Wrap a raw level matrix, checking only the entry-range invariant.
    /// The strength property is checked separately by [`verify_strength`].
    pub fn from_rows(spec: DesignSpec, rows: Vec<u16>) -> Result<Self, DoeError> {
        if rows.len() != spec.runs * spec.factors {
            return Err(DoeError::InvalidSpec(format!(
                "expected {} entries, got {}",
                spec.runs * spec.factors,
                rows.len()
            )));
        }
        if let Some(bad) = rows.iter().find(|&&v| v as usize >= spec.levels) {
            return Err(DoeError::InvalidSpec(format!(
                "entry {bad} out of range for {} levels",
                spec.levels
            )));
        }
        Ok(OrthogonalArray { spec, rows })
    }

    /// The shipped OA(144,7,12,2) table.
    pub fn flagship() -> Self {
        let rows = FLAGSHIP_OA_144_7_12
            .iter()
            .flat_map(|row| row.iter().map(|&v| v as u16))
            .collect();
        OrthogonalArray::from_rows(DesignSpec::flagship(), rows).expect("flagship table is well formed")
    }

    pub fn spec(&self) -> &DesignSpec {
        &self.spec
    }

    pub fn row(&self, i: usize) -> &[u16] {
        let k = self.spec.factors;
        &self.rows[i * k..(i + 1) * k]
    }

    pub fn at(&self, row: usize, col: usize) -> u16 {
        self.rows[row * self.spec.factors + col]
    }

    pub fn rows_flat(&self) -> &[u16] {
        &self.rows
    }

    /// Serialize as CSV with header `f1..fk` and one run per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (1..=self.spec.factors).map(|j| format!("f{j}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..self.spec.runs {
            let line: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Parse the CSV form written by [`OrthogonalArray::to_csv`]. The strength is not
    /// recorded in the file; the caller states the claimed strength (used
    /// to compute the spec's index).
    pub fn from_csv(text: &str, strength: usize) -> Result<Self, DoeError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(DoeError::Parse {
            line: 1,
            msg: "empty file".into(),
        })?;
        let factors = header.split(',').count();
        if factors == 0 || !header.starts_with('f') {
            return Err(DoeError::Parse {
                line: 1,
                msg: format!("expected header f1..fk, got {header:?}"),
            });
        }
        let mut rows: Vec<u16> = Vec::new();
        let mut runs = 0usize;
        let mut max_level = 0u16;
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != factors {
                return Err(DoeError::Parse {
                    line: idx + 1,
                    msg: format!("expected {factors} fields, got {}", fields.len()),
                });
            }
            for f in fields {
                let v: u16 = f.trim().parse().map_err(|_| DoeError::Parse {
                    line: idx + 1,
                    msg: format!("invalid level {f:?}"),
                })?;
                max_level = max_level.max(v);
                rows.push(v);
            }
            runs += 1;
        }
        if runs == 0 {
            return Err(DoeError::Parse {
                line: 1,
                msg: "no data rows".into(),
            });
        }
        let spec = DesignSpec::new(runs, factors, (max_level as usize + 1).max(2), strength)?;
        OrthogonalArray::from_rows(spec, rows)
    }
}

/// Where a joint design came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Orthogonal,
    Random,
    Validation,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Orthogonal => "orthogonal",
            Provenance::Random => "random",
            Provenance::Validation => "validation",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "orthogonal" => Some(Provenance::Orthogonal),
            "random" => Some(Provenance::Random),
            "validation" => Some(Provenance::Validation),
            _ => None,
        }
    }
}

/// An n×k matrix of joint angles in degrees, together with the bounds the
/// angles are guaranteed to lie in.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDesign {
    pub n: usize,
    pub k: usize,
    rows: Vec<f64>,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub provenance: Provenance,
}

impl JointDesign {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.k..(i + 1) * self.k]
    }

    pub fn rows_flat(&self) -> &[f64] {
        &self.rows
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Serialize as CSV with header `j1..jk`. Angles are printed with the
    /// shortest decimal representation that parses back to the same bits,
    /// so the round trip through [`JointDesign::from_csv`] is lossless.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (1..=self.k).map(|j| format!("j{j}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..self.n {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str, provenance: Provenance) -> Result<Self, DoeError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(DoeError::Parse {
            line: 1,
            msg: "empty file".into(),
        })?;
        if !header.starts_with('j') {
            return Err(DoeError::Parse {
                line: 1,
                msg: format!("expected header j1..jk, got {header:?}"),
            });
        }
        let k = header.split(',').count();
        let mut rows: Vec<f64> = Vec::new();
        let mut n = 0usize;
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != k {
                return Err(DoeError::Parse {
                    line: idx + 1,
                    msg: format!("expected {k} fields, got {}", fields.len()),
                });
            }
            for f in fields {
                let v: f64 = f.trim().parse().map_err(|_| DoeError::Parse {
                    line: idx + 1,
                    msg: format!("invalid angle {f:?}"),
                })?;
                if !v.is_finite() {
                    return Err(DoeError::Parse {
                        line: idx + 1,
                        msg: format!("non-finite angle {f:?}"),
                    });
                }
                rows.push(v);
            }
            n += 1;
        }
        if n == 0 {
            return Err(DoeError::Parse {
                line: 1,
                msg: "no data rows".into(),
            });
        }
        let lower = rows.iter().cloned().fold(f64::INFINITY, f64::min);
        let upper = rows.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(JointDesign {
            n,
            k,
            rows,
            lower_bound: lower,
            upper_bound: upper,
            provenance,
        })
    }
}

/// Map level indices to joint angles in degrees: `angle = step * level + offset`.
///
/// With the flagship parameters (step 10°, offset −55°) the twelve levels
/// land exactly on the grid −55°, −45°, …, 55°.
pub fn map_to_joint_angles(oa: &OrthogonalArray, step: f64, offset: f64) -> JointDesign {
    assert!(step > 0.0, "step must be positive");
    let rows: Vec<f64> = oa.rows_flat().iter().map(|&v| step * v as f64 + offset).collect();
    JointDesign {
        n: oa.spec.runs,
        k: oa.spec.factors,
        rows,
        lower_bound: offset,
        upper_bound: step * (oa.spec.levels - 1) as f64 + offset,
        provenance: Provenance::Orthogonal,
    }
}

/// An n×k design of independent uniform draws over `[lo, hi]`, fully
/// determined by the seed.
pub fn random_design(n: usize, k: usize, lo: f64, hi: f64, seed: u64) -> Result<JointDesign, DoeError> {
    // rejects NaN bounds as well as inverted or empty ranges
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(DoeError::InvalidRange { lo, hi });
    }
    let mut rng = RngStream::new(seed).derive(0x6465_7369_676e); // "design"
    let rows: Vec<f64> = (0..n * k).map(|_| rng.uniform(lo, hi)).collect();
    Ok(JointDesign {
        n,
        k,
        rows,
        lower_bound: lo,
        upper_bound: hi,
        provenance: Provenance::Random,
    })
}
