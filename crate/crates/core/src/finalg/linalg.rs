//! Sparse coordinate vectors and exact row reduction.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

/// Sorted `(index, coefficient)` list without explicit zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

/// Accumulator for building a [`SparseVec`] from unordered contributions.
#[derive(Debug, Clone)]
pub struct Accumulator<S> {
    entries: BTreeMap<usize, S>,
}

impl<S: Scalar> Default for Accumulator<S> {
    fn default() -> Self {
        Accumulator {
            entries: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> Accumulator<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, idx: usize, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&idx) {
            Some(v) => *v += c,
            None => {
                self.entries.insert(idx, c.clone());
            }
        }
    }

    /// Adds `scale · v`.
    pub fn add_scaled(&mut self, v: &[(usize, S)], scale: &S) {
        if scale.is_zero() {
            return;
        }
        for (i, c) in v {
            self.add(*i, &(c.clone() * scale));
        }
    }

    pub fn finish(self) -> SparseVec<S> {
        self.entries
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }
}

pub fn sparse_from_dense<S: Scalar>(v: &[S]) -> SparseVec<S> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn dense_from_sparse<S: Scalar>(v: &[(usize, S)], dim: usize) -> Vec<S> {
    let mut out = vec![S::zero(); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

pub fn basis_vector<S: Scalar>(i: usize) -> SparseVec<S> {
    vec![(i, S::one())]
}

pub fn sparse_sub<S: Scalar>(a: &[(usize, S)], b: &[(usize, S)]) -> SparseVec<S> {
    let mut acc = Accumulator::new();
    acc.add_scaled(a, &S::one());
    acc.add_scaled(b, &-S::one());
    acc.finish()
}

/// Incremental reduced row echelon form over an exact field.
#[derive(Debug, Clone)]
pub struct RowReducer<F> {
    ncols: usize,
    // (pivot column, row with 1 at the pivot and 0 at every other pivot)
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(ncols: usize) -> Self {
        RowReducer {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the current basis and adds it when independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<F>) -> bool {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        for (p, r) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let f = row[*p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x = x.clone() - &(y.clone() * &f);
                }
            }
        }
        let Some(p) = row.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = row[p].inv().expect("nonzero pivot");
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * &inv;
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x = x.clone() - &(y.clone() * &f);
                }
            }
        }
        self.rows.push((p, row));
        true
    }

    pub fn insert_sparse(&mut self, row: &[(usize, F)]) -> bool {
        if row.is_empty() {
            return false;
        }
        let mut dense = vec![F::zero(); self.ncols];
        for (i, c) in row {
            dense[*i] = c.clone();
        }
        self.insert(dense)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        p.sort_unstable();
        p
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let piv = self.pivots();
        (0..self.ncols)
            .filter(|c| piv.binary_search(c).is_err())
            .collect()
    }

    /// Basis of `{x : row·x = 0 for every inserted row}`. Basis vector `t` has
    /// a 1 at the `t`-th free column and 0 at all other free columns.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![F::zero(); self.ncols];
                v[f] = F::one();
                for (p, r) in &self.rows {
                    v[*p] = -r[f].clone();
                }
                v
            })
            .collect()
    }

    /// Returns the reduced row whose pivot is `col`, if any.
    pub fn row_with_pivot(&self, col: usize) -> Option<&[F]> {
        self.rows
            .iter()
            .find(|(p, _)| *p == col)
            .map(|(_, r)| r.as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("linear system has a {0}-dimensional solution space")]
    Underdetermined(usize),
}

/// Solves `A x = b` exactly for a unique `x`. Rows are given as sparse
/// coefficient lists paired with their right-hand side.
pub fn solve_unique<F: Field>(
    ncols: usize,
    rows: impl IntoIterator<Item = (SparseVec<F>, F)>,
) -> Result<Vec<F>, SolveError> {
    let mut red = RowReducer::new(ncols + 1);
    for (row, rhs) in rows {
        let mut dense = vec![F::zero(); ncols + 1];
        for (i, c) in row {
            dense[i] = c;
        }
        dense[ncols] = rhs;
        red.insert(dense);
    }
    if red.row_with_pivot(ncols).is_some() {
        return Err(SolveError::Inconsistent);
    }
    if red.rank() < ncols {
        return Err(SolveError::Underdetermined(ncols - red.rank()));
    }
    Ok((0..ncols)
        .map(|c| red.row_with_pivot(c).expect("full rank")[ncols].clone())
        .collect())
}

/// Exact rank of a dense matrix given by rows.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let mut red = RowReducer::new(first.len());
    for r in rows {
        red.insert(r.clone());
    }
    red.rank()
}

/// Inverse of a square matrix, `None` when singular.
pub fn invert<F: Field>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut red = RowReducer::new(2 * n);
    for (i, r) in m.iter().enumerate() {
        let mut row = r.clone();
        row.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
        red.insert(row);
    }
    (0..n)
        .map(|c| red.row_with_pivot(c).map(|r| r[n..].to_vec()))
        .collect()
}
