//! Dense matrices over the rationals with exact rank and nullspace.
//!
//! Plain Gaussian elimination with the first nonzero pivot. Everything in
//! scope is at most a few hundred rows, so no fraction-free tricks.

use crate::rat::Rat;
use num_traits::{One, Zero};
use std::fmt;

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Self {
            rows: n,
            cols: m,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    /// Row reduction to reduced echelon form; returns the pivot columns.
    fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let pivot = m.at(row, col).clone();
            for c in col..m.cols {
                let v = m.at(row, c) / &pivot;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c) - &factor * m.at(row, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `true` exactly for square matrices of full rank.
    pub fn is_nonsingular(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of the exact right-nullspace, possibly empty.
    ///
    /// Each vector is reduced so its first nonzero entry is 1; the basis is
    /// ordered by free column, which makes the output deterministic.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (m, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().copied().peekable();
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| {
                if pivot_iter.peek() == Some(c) {
                    pivot_iter.next();
                    false
                } else {
                    true
                }
            })
            .collect();
        for f in free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m.at(i, f).clone();
            }
            let lead = v
                .iter()
                .find(|x| !x.is_zero())
                .cloned()
                .expect("nullspace vector cannot be zero");
            for x in &mut v {
                *x /= lead.clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| crate::rat::format_rat(self.at(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
