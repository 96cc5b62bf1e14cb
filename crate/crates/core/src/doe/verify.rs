//! Strength verification: the oracle every construction route must pass.

use super::OrthogonalArray;

/// First balance violation found: the column tuple, the level tuple, and its
/// observed count against the expected index.
#[derive(Debug, Clone, PartialEq)]
pub struct TupleViolation {
    pub columns: Vec<usize>,
    pub levels: Vec<u16>,
    pub count: u64,
    pub expected: f64,
}

/// Outcome of checking the strength-t balance property.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthReport {
    pub pass: bool,
    pub strength: usize,
    /// N / sᵗ, which must be an exact integer for the property to hold.
    pub expected_index: f64,
    /// The verified index λ, present only on pass.
    pub index: Option<u64>,
    pub violation: Option<TupleViolation>,
}

impl StrengthReport {
    fn fail(strength: usize, expected_index: f64, violation: TupleViolation) -> Self {
        StrengthReport {
            pass: false,
            strength,
            expected_index,
            index: None,
            violation: Some(violation),
        }
    }
}

/// Check that every t-subset of columns contains each ordered t-tuple of
/// levels exactly λ = N/sᵗ times.
///
/// A failing array yields a failing report (with the first violating column
/// tuple in lexicographic order), never an error.
///
/// # Panics
/// If `t` is zero or exceeds the number of factors.
pub fn verify_strength(oa: &OrthogonalArray, t: usize) -> StrengthReport {
    let spec = *oa.spec();
    assert!(t >= 1 && t <= spec.factors, "strength must be in 1..=factors");
    let s = spec.levels;
    let st = s.checked_pow(t as u32).expect("levels^t overflows usize");
    let expected_index = spec.runs as f64 / st as f64;
    if !spec.runs.is_multiple_of(st) {
        // no integer index is possible; report the first column tuple with
        // its first unbalanced level tuple
        let columns: Vec<usize> = (0..t).collect();
        let counts = count_tuples(oa, &columns, st);
        let (tuple_idx, &count) = counts
            .iter()
            .enumerate()
            .find(|(_, &c)| c as f64 != expected_index)
            .expect("a non-integer index forces some unbalanced tuple");
        return StrengthReport::fail(
            t,
            expected_index,
            TupleViolation {
                columns,
                levels: decode_tuple(tuple_idx, s, t),
                count,
                expected: expected_index,
            },
        );
    }
    let lambda = (spec.runs / st) as u64;

    let mut columns: Vec<usize> = (0..t).collect();
    loop {
        let counts = count_tuples(oa, &columns, st);
        if let Some((tuple_idx, &count)) = counts.iter().enumerate().find(|(_, &c)| c != lambda) {
            return StrengthReport::fail(
                t,
                expected_index,
                TupleViolation {
                    columns: columns.clone(),
                    levels: decode_tuple(tuple_idx, s, t),
                    count,
                    expected: expected_index,
                },
            );
        }
        if !next_combination(&mut columns, spec.factors) {
            break;
        }
    }
    StrengthReport {
        pass: true,
        strength: t,
        expected_index,
        index: Some(lambda),
        violation: None,
    }
}

fn count_tuples(oa: &OrthogonalArray, columns: &[usize], st: usize) -> Vec<u64> {
    let s = oa.spec().levels;
    let mut counts = vec![0u64; st];
    for r in 0..oa.spec().runs {
        let row = oa.row(r);
        let mut idx = 0usize;
        for &c in columns {
            idx = idx * s + row[c] as usize;
        }
        counts[idx] += 1;
    }
    counts
}

fn decode_tuple(mut idx: usize, s: usize, t: usize) -> Vec<u16> {
    let mut levels = vec![0u16; t];
    for slot in (0..t).rev() {
        levels[slot] = (idx % s) as u16;
        idx /= s;
    }
    levels
}

/// Advance `columns` to the next t-combination of `0..k` in lexicographic
/// order; returns false when exhausted.
fn next_combination(columns: &mut [usize], k: usize) -> bool {
    let t = columns.len();
    let mut i = t;
    while i > 0 {
        i -= 1;
        if columns[i] < k - (t - i) {
            columns[i] += 1;
            for j in i + 1..t {
                columns[j] = columns[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_enumerate_all() {
        let mut cols = vec![0, 1];
        let mut seen = vec![cols.clone()];
        while next_combination(&mut cols, 4) {
            seen.push(cols.clone());
        }
        assert_eq!(
            seen,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }
}
