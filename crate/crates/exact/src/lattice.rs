use crate::ExactError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense rectangular matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    /// Builds a matrix from its rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(ExactError::Shape(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, entries })
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row_a -= f * row_b
    fn row_sub(&mut self, a: usize, b: usize, f: &BigInt) {
        for j in 0..self.cols {
            let t = f * self.get(b, j);
            *self.at(a, j) -= t;
        }
    }

    /// col_a -= f * col_b
    fn col_sub(&mut self, a: usize, b: usize, f: &BigInt) {
        for i in 0..self.rows {
            let t = f * self.get(i, b);
            *self.at(i, a) -= t;
        }
    }
}

/// The non-zero invariant factors `d_1 | d_2 | ...` of the Smith normal form,
/// all positive.
pub fn smith_diagonal(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < a.rows && t < a.cols {
        // Pivot of smallest magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                let v = a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let p = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..a.rows {
                let q = a.get(i, t).div_floor(&p);
                if !q.is_zero() {
                    a.row_sub(i, t, &q);
                }
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..a.cols {
                let q = a.get(t, j).div_floor(&p);
                if !q.is_zero() {
                    a.col_sub(j, t, &q);
                }
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Enforce divisibility of the remaining block by the pivot.
                let bad = (t + 1..a.rows)
                    .flat_map(|i| (t + 1..a.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        // Add the offending row to the pivot row and retry.
                        let neg_one = -BigInt::one();
                        a.row_sub(t, i, &neg_one);
                        continue;
                    }
                }
            }
            // Move the smallest remaining non-zero entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..a.rows {
                let v = a.get(i, t);
                if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t..a.cols {
                let v = a.get(t, j);
                if !v.is_zero() && v.abs() < a.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            a.swap_rows(t, best.0);
            a.swap_cols(t, best.1);
        }
        diag.push(a.get(t, t).abs());
        t += 1;
    }
    diag
}

/// Index of a sublattice of `Z^rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    /// The span has full rank and this finite index.
    Finite(BigInt),
    /// The span has lower rank.
    Infinite,
}

/// The index `[Z^rank : span(rows)]`, computed from the Smith normal form.
pub fn lattice_index(rank: usize, generators: &IntegerMatrix) -> Result<LatticeIndex, ExactError> {
    if generators.cols() != rank {
        return Err(ExactError::Shape(format!(
            "generators have {} columns, ambient rank is {rank}",
            generators.cols()
        )));
    }
    if rank == 0 {
        return Ok(LatticeIndex::Finite(BigInt::one()));
    }
    let d = smith_diagonal(generators);
    if d.len() < rank {
        return Ok(LatticeIndex::Infinite);
    }
    Ok(LatticeIndex::Finite(d.iter().product()))
}

/// Number of orbits of the subgroup of `prod Z/moduli_e` generated by the
/// 0/1 `action_rows` acting by translation.
///
/// Equals `[Z^E : span(action_rows, moduli_e * unit_e)]`.
pub fn orbit_count(moduli: &[u64], action_rows: &[Vec<u8>]) -> Result<BigInt, ExactError> {
    let e = moduli.len();
    if moduli.contains(&0) {
        return Err(ExactError::InvalidArgument("zero modulus".into()));
    }
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(action_rows.len() + e);
    for r in action_rows {
        if r.len() != e {
            return Err(ExactError::Shape(format!("action row of length {}, expected {e}", r.len())));
        }
        rows.push(r.iter().map(|&x| i64::from(x)).collect());
    }
    for (i, &k) in moduli.iter().enumerate() {
        let mut r = vec![0i64; e];
        r[i] = i64::try_from(k).map_err(|_| ExactError::InvalidArgument("modulus too large".into()))?;
        rows.push(r);
    }
    match lattice_index(e, &IntegerMatrix::from_rows(e, &rows)?)? {
        LatticeIndex::Finite(i) => Ok(i),
        LatticeIndex::Infinite => unreachable!("diagonal moduli give full rank"),
    }
}
