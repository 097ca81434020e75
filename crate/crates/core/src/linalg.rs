//! Exact sparse linear algebra over the rationals.
//!
//! Elimination is fraction-free: every row is first scaled to integers, then
//! reduced with Bareiss' exact-division update. The pivot rule is fixed: the
//! first nonzero entry scanning columns left to right, then rows top to
//! bottom among the not-yet-pivoted rows. Everything here is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{fmt_scalar, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_integer(v.into())).collect())
            .collect();
        Self::from_dense(&dense)
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(&j).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Sets an entry; storing zero removes it.
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Scalar) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Scalar> {
        &self.data[i]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                t.data[*j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().map(|(j, a)| a * &v[*j]).sum())
            .collect())
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    out.add_to(i, *j, &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// Reorders rows and columns: entry `(i, j)` moves to `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out.set(row_perm[i], col_perm[*j], v.clone());
            }
        }
        out
    }

    /// Appends the columns of `other` to the right.
    pub fn hstack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for (j, v) in &self.data[i] {
                out.data[i].insert(*j, v.clone());
            }
            for (j, v) in &other.data[i] {
                out.data[i].insert(self.cols + j, v.clone());
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| fmt_scalar(&self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row echelon form over the integers: `rows[k]` has its leading entry in
/// column `pivots[k]`.
struct Echelon {
    rows: Vec<BTreeMap<usize, BigInt>>,
    pivots: Vec<usize>,
}

fn integer_row(row: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, BigInt> {
    let lcm = row
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter()
        .map(|(j, v)| (*j, v.numer() * (&lcm / v.denom())))
        .collect()
}

fn fraction_free_echelon(m: &SparseMatrix) -> Echelon {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = m
        .data
        .iter()
        .filter(|r| !r.is_empty())
        .map(integer_row)
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i].contains_key(&col)) else {
            continue;
        };
        rows.swap(r, found);
        let pivot_row = rows[r].clone();
        let p = pivot_row[&col].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let a = row.get(&col).cloned().unwrap_or_else(BigInt::zero);
            let mut next = BTreeMap::new();
            let keys: Vec<usize> = row
                .keys()
                .chain(pivot_row.keys())
                .copied()
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            for j in keys {
                let x = row.get(&j).cloned().unwrap_or_else(BigInt::zero);
                let y = pivot_row.get(&j).cloned().unwrap_or_else(BigInt::zero);
                let num = &p * x - &a * y;
                if num.is_zero() {
                    continue;
                }
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division was not exact");
                next.insert(j, q);
            }
            *row = next;
        }
        prev = p;
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

/// Reduced row echelon form over the rationals, derived from the fraction-free echelon form.
struct Rref {
    rows: Vec<BTreeMap<usize, Scalar>>,
    pivots: Vec<usize>,
}

fn rref(m: &SparseMatrix) -> Rref {
    let ech = fraction_free_echelon(m);
    let mut rows: Vec<BTreeMap<usize, Scalar>> = ech
        .rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|(j, v)| (j, BigRational::from_integer(v)))
                .collect()
        })
        .collect();
    let pivots = ech.pivots;
    for k in (0..rows.len()).rev() {
        let pc = pivots[k];
        let lead = rows[k][&pc].clone();
        for v in rows[k].values_mut() {
            *v /= &lead;
        }
        let pivot_row = rows[k].clone();
        for row in rows.iter_mut().take(k) {
            let Some(c) = row.get(&pc).cloned() else {
                continue;
            };
            for (j, v) in &pivot_row {
                let entry = row.entry(*j).or_insert_with(Scalar::zero);
                *entry -= &c * v;
                if entry.is_zero() {
                    row.remove(j);
                }
            }
        }
    }
    Rref { rows, pivots }
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    fraction_free_echelon(m).pivots.len()
}

/// Basis of the null space. One vector per free column `j`, with a 1 in
/// position `j`, zeros in the other free positions, and minus the reduced
/// echelon entries in the pivot positions.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Scalar>> {
    let r = rref(m);
    let pivot_set: std::collections::BTreeSet<usize> = r.pivots.iter().copied().collect();
    (0..m.cols)
        .filter(|j| !pivot_set.contains(j))
        .map(|free| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[free] = Scalar::one();
            for (k, row) in r.rows.iter().enumerate() {
                if let Some(c) = row.get(&free) {
                    v[r.pivots[k]] = -c.clone();
                }
            }
            v
        })
        .collect()
}

/// Solves `m x = v`. Returns `None` when `v` is not in the column space.
pub fn in_image(m: &SparseMatrix, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if v.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            got: v.len(),
        });
    }
    let mut aug = SparseMatrix::zeros(m.rows, m.cols + 1);
    for (i, vi) in v.iter().enumerate() {
        for (j, a) in &m.data[i] {
            aug.data[i].insert(*j, a.clone());
        }
        if !vi.is_zero() {
            aug.data[i].insert(m.cols, vi.clone());
        }
    }
    let r = rref(&aug);
    if r.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (k, row) in r.rows.iter().enumerate() {
        x[r.pivots[k]] = row.get(&m.cols).cloned().unwrap_or_else(Scalar::zero);
    }
    debug_assert_eq!(m.mul_vec(&x)?, v);
    Ok(Some(x))
}

/// Rank of the span of a list of dense vectors of equal length.
pub fn span_rank(len: usize, vectors: &[Vec<Scalar>]) -> usize {
    rank(&SparseMatrix::from_columns(len, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&SparseMatrix::zeros(3, 5)), 0);
        // ad(h) on sl2 in basis (e, h, f): diag(2, 0, -2)
        let ad_h = SparseMatrix::from_i64(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, -2]]);
        assert_eq!(rank(&ad_h), 2);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&SparseMatrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
        assert!(kernel_basis(&SparseMatrix::identity(2)).is_empty());
    }

    #[test]
    fn image_examples() {
        let id = SparseMatrix::identity(3);
        let v = vec![int(4), int(-1), int(0)];
        assert_eq!(in_image(&id, &v).unwrap(), Some(v.clone()));
        let col = SparseMatrix::from_i64(&[&[1], &[2]]);
        assert_eq!(in_image(&col, &[int(1), int(2)]).unwrap(), Some(vec![int(1)]));
        assert_eq!(in_image(&col, &[int(1), int(3)]).unwrap(), None);
        assert!(matches!(
            in_image(&col, &[int(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rational_entries() {
        let m = SparseMatrix::from_dense(&[
            vec![crate::scalar::frac(1, 2), crate::scalar::frac(1, 3)],
            vec![int(3), int(2)],
        ]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn zero_pivot_column_is_skipped() {
        let m = SparseMatrix::from_i64(&[&[0, 1, 2], &[0, 2, 5], &[0, 3, 7]]);
        assert_eq!(rank(&m), 2);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![int(1), int(0), int(0)]]);
    }
}
