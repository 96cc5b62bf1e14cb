//! Mutually orthogonal Latin squares, the classical face of strength-2
//! index-1 arrays: m MOLS of order s ⇔ OA(s², m+2, s, 2).

use super::{DesignSpec, DoeError, OrthogonalArray};

/// A set of pairwise-orthogonal Latin squares of a common order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquareSet {
    order: usize,
    /// Each square stored row-major, `order × order` symbols in `[0, order)`.
    squares: Vec<Vec<u16>>,
}

impl LatinSquareSet {
    /// Extract the squares from an index-1 strength-2 array: columns 0 and 1
    /// index the cell (row, column), and each further factor fills one
    /// square. Requires at least 3 factors.
    pub fn from_oa(oa: &OrthogonalArray) -> Result<Self, DoeError> {
        let spec = *oa.spec();
        if spec.strength != 2 || spec.index != 1 || spec.runs != spec.levels * spec.levels {
            return Err(DoeError::InvalidSpec(
                "Latin squares require an index-1 strength-2 array with runs = levels²".into(),
            ));
        }
        if spec.factors < 3 {
            return Err(DoeError::InvalidSpec(
                "need at least 3 factors to carve out a Latin square".into(),
            ));
        }
        let s = spec.levels;
        let mut squares = vec![vec![u16::MAX; s * s]; spec.factors - 2];
        for r in 0..spec.runs {
            let row = oa.row(r);
            let cell = row[0] as usize * s + row[1] as usize;
            for (sq, &v) in squares.iter_mut().zip(&row[2..]) {
                if sq[cell] != u16::MAX {
                    return Err(DoeError::InvalidSpec(format!(
                        "cell ({}, {}) filled twice; array is not index 1",
                        row[0], row[1]
                    )));
                }
                sq[cell] = v;
            }
        }
        let set = LatinSquareSet { order: s, squares };
        set.validate().map_err(DoeError::InvalidSpec)?;
        Ok(set)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn count(&self) -> usize {
        self.squares.len()
    }

    pub fn square(&self, i: usize) -> &[u16] {
        &self.squares[i]
    }

    /// Check the defining invariants: each square is Latin (every symbol
    /// once per row and per column) and every pair is orthogonal
    /// (superimposing yields all s² ordered pairs exactly once).
    pub fn validate(&self) -> Result<(), String> {
        let s = self.order;
        for (i, sq) in self.squares.iter().enumerate() {
            for r in 0..s {
                let mut row_seen = vec![false; s];
                let mut col_seen = vec![false; s];
                for c in 0..s {
                    let rv = sq[r * s + c] as usize;
                    let cv = sq[c * s + r] as usize;
                    if rv >= s || row_seen[rv] {
                        return Err(format!("square {i}: row {r} repeats symbol {rv}"));
                    }
                    if cv >= s || col_seen[cv] {
                        return Err(format!("square {i}: column {r} repeats symbol {cv}"));
                    }
                    row_seen[rv] = true;
                    col_seen[cv] = true;
                }
            }
        }
        for i in 0..self.squares.len() {
            for j in (i + 1)..self.squares.len() {
                let mut seen = vec![false; s * s];
                for cell in 0..s * s {
                    let pair = self.squares[i][cell] as usize * s + self.squares[j][cell] as usize;
                    if seen[pair] {
                        return Err(format!(
                            "squares {i} and {j} are not orthogonal: pair repeated"
                        ));
                    }
                    seen[pair] = true;
                }
            }
        }
        Ok(())
    }

    /// Reassemble the OA(s², m+2, s, 2) this set is equivalent to.
    pub fn to_oa(&self) -> OrthogonalArray {
        let s = self.order;
        let factors = self.squares.len() + 2;
        let spec = DesignSpec::new(s * s, factors, s, 2).expect("valid by construction");
        let mut rows = Vec::with_capacity(s * s * factors);
        for r in 0..s {
            for c in 0..s {
                rows.push(r as u16);
                rows.push(c as u16);
                for sq in &self.squares {
                    rows.push(sq[r * s + c]);
                }
            }
        }
        OrthogonalArray::from_rows(spec, rows).expect("well formed by construction")
    }
}
