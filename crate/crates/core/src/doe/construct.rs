//! Construction routes for strength-2, index-1 orthogonal arrays.

use super::gf::{prime_power, prime_power_parts, GaloisField};
use super::{DesignSpec, DoeError, OrthogonalArray, FLAGSHIP_OA_144_7_12};

/// Construct an OA(s², k, s, 2) of index 1.
///
/// Routes are tried in order:
/// 1. `s` a prime power and `k ≤ s+1`: the Galois-field construction —
///    rows are indexed by pairs (a, b) ∈ GF(s)², columns are `a`, `b`, and
///    `a·c + b` for nonzero `c`.
/// 2. An embedded constant table covering the parameters; the shipped
///    table is OA(144,7,12,2), so any `k ≤ 7` at 12 levels is served by a
///    column slice of it.
/// 3. `s = s₁·s₂·…` with coprime prime-power parts: the Kronecker product
///    of the per-part arrays, which reaches `k ≤ min(sᵢ + 1)` columns.
pub fn construct_oa(spec: &DesignSpec) -> Result<OrthogonalArray, DoeError> {
    // revalidate (the spec may have been built by hand)
    let spec = DesignSpec::new(spec.runs, spec.factors, spec.levels, spec.strength)?;
    if spec.strength != 2 {
        return Err(DoeError::UnsupportedDesign(format!(
            "only strength 2 is constructible (requested {})",
            spec.strength
        )));
    }
    if spec.index != 1 || spec.runs != spec.levels * spec.levels {
        return Err(DoeError::UnsupportedDesign(format!(
            "only index-1 arrays with runs = levels² are constructible \
             (requested {} runs at {} levels)",
            spec.runs, spec.levels
        )));
    }
    let s = spec.levels;
    let k = spec.factors;

    if prime_power(s).is_some() && k <= s + 1 {
        return galois_route(spec);
    }

    if s == 12 && k <= 7 {
        return embedded_route(spec);
    }

    let parts = prime_power_parts(s);
    if parts.len() >= 2 {
        let max_factors = parts.iter().map(|&p| p + 1).min().unwrap();
        if k <= max_factors {
            return kronecker_route(spec, &parts);
        }
        return Err(DoeError::UnsupportedDesign(format!(
            "levels {s} decomposes into coprime parts {parts:?}, which yields at most \
             {max_factors} factors; {k} requested"
        )));
    }

    Err(DoeError::UnsupportedDesign(format!(
        "no construction route for {} runs, {} factors, {} levels",
        spec.runs, k, s
    )))
}

fn galois_route(spec: DesignSpec) -> Result<OrthogonalArray, DoeError> {
    let s = spec.levels;
    let f = GaloisField::new(s).expect("route requires a prime power");
    let mut rows = Vec::with_capacity(spec.runs * spec.factors);
    for a in 0..s {
        for b in 0..s {
            for col in 0..spec.factors {
                let v = match col {
                    0 => a,
                    1 => b,
                    c => f.add(f.mul(a, c - 1), b),
                };
                rows.push(v as u16);
            }
        }
    }
    OrthogonalArray::from_rows(spec, rows)
}

fn embedded_route(spec: DesignSpec) -> Result<OrthogonalArray, DoeError> {
    let mut rows = Vec::with_capacity(spec.runs * spec.factors);
    for row in FLAGSHIP_OA_144_7_12.iter() {
        rows.extend(row[..spec.factors].iter().map(|&v| v as u16));
    }
    OrthogonalArray::from_rows(spec, rows)
}

fn kronecker_route(spec: DesignSpec, parts: &[usize]) -> Result<OrthogonalArray, DoeError> {
    let k = spec.factors;
    let mut acc: Option<OrthogonalArray> = None;
    for &part in parts {
        let part_spec = DesignSpec::new(part * part, k, part, 2)?;
        let oa = galois_route(part_spec)?;
        acc = Some(match acc {
            None => oa,
            Some(prev) => kronecker(&prev, &oa)?,
        });
    }
    Ok(acc.expect("at least one part"))
}

/// Kronecker product of two strength-2 index-1 arrays over coprime level
/// counts: entry (r₁r₂, j) = a(r₁,j)·s_b + b(r₂,j), an OA over s_a·s_b levels.
fn kronecker(a: &OrthogonalArray, b: &OrthogonalArray) -> Result<OrthogonalArray, DoeError> {
    let k = a.spec().factors.min(b.spec().factors);
    let sa = a.spec().levels;
    let sb = b.spec().levels;
    let spec = DesignSpec::new(a.spec().runs * b.spec().runs, k, sa * sb, 2)?;
    let mut rows = Vec::with_capacity(spec.runs * k);
    for ra in 0..a.spec().runs {
        for rb in 0..b.spec().runs {
            for j in 0..k {
                rows.push(a.at(ra, j) * sb as u16 + b.at(rb, j));
            }
        }
    }
    OrthogonalArray::from_rows(spec, rows)
}
