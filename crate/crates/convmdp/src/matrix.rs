//! Dense matrices over a finite field with the small linear-algebra toolkit
//! the rest of the crate needs: determinant, rank, unique solves and
//! per-component solvability of underdetermined systems. All target shapes
//! are tiny (at most 7 x 20), so everything is straightforward Gaussian
//! elimination with partial pivoting.

use crate::error::{Error, Result};
use crate::gf::{Element, Field};
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Element>,
    field: Arc<Field>,
}

impl std::fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GfMatrix {}x{} over GF({})", self.rows, self.cols, self.field.q())?;
        for r in 0..self.rows {
            let row: Vec<u16> = (0..self.cols).map(|c| self.get(r, c).value()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl GfMatrix {
    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> GfMatrix {
        GfMatrix { rows, cols, data: vec![field.zero(); rows * cols], field }
    }

    pub fn from_rows(field: Arc<Field>, rows: Vec<Vec<Element>>) -> Result<GfMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data = rows.into_iter().flatten().collect();
        Ok(GfMatrix { rows: nrows, cols: ncols, data, field })
    }

    /// Builds a matrix from integer encodings, validating the range.
    pub fn from_values(field: Arc<Field>, rows: usize, cols: usize, values: &[u64]) -> Result<GfMatrix> {
        if values.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                values.len()
            )));
        }
        let mut data = Vec::with_capacity(values.len());
        for &v in values {
            data.push(field.element(v)?);
        }
        Ok(GfMatrix { rows, cols, data, field })
    }

    pub fn identity(field: Arc<Field>, n: usize) -> GfMatrix {
        let mut m = GfMatrix::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Element {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Element) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn values(&self) -> Vec<u16> {
        self.data.iter().map(|e| e.value()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> GfMatrix {
        let mut out = GfMatrix::zeros(self.field.clone(), self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn submatrix(&self, row_range: std::ops::Range<usize>, col_range: std::ops::Range<usize>) -> GfMatrix {
        let mut out = GfMatrix::zeros(
            self.field.clone(),
            row_range.len(),
            col_range.len(),
        );
        for (i, r) in row_range.clone().enumerate() {
            for (j, c) in col_range.clone().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    pub fn matmul(&self, other: &GfMatrix) -> Result<GfMatrix> {
        self.field.check_compatible(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = GfMatrix::zeros(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Element]) -> Result<Vec<Element>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "matrix has {} columns, vector has {}",
                self.cols,
                v.len()
            )));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = f.zero();
            for k in 0..self.cols {
                acc = f.add(acc, f.mul(self.get(i, k), v[k]));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Result<Element> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = f.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return Ok(f.zero()),
            };
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pv_inv = f.inv(pv).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pv_inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let delta = f.mul(factor, a[col * n + c]);
                    a[r * n + c] = f.sub(a[r * n + c], delta);
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        let (_, pivots) = self.rref();
        pivots.len()
    }

    /// Reduced row echelon form together with the pivot-column indices.
    pub fn rref(&self) -> (GfMatrix, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot = (row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            if pivot != row {
                for c in 0..m.cols {
                    let tmp = m.get(pivot, c);
                    m.set(pivot, c, m.get(row, c));
                    m.set(row, c, tmp);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                m.set(row, c, f.mul(m.get(row, c), inv));
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col);
                for c in col..m.cols {
                    let delta = f.mul(factor, m.get(row, c));
                    m.set(r, c, f.sub(m.get(r, c), delta));
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// A basis of the right nullspace, one vector per non-pivot column.
    pub fn nullspace(&self) -> Vec<Vec<Element>> {
        let f = &self.field;
        let (rref, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rref.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `A x = b` when the solution is unique. Returns `None` when the
    /// system is consistent but underdetermined, and an error when it is
    /// inconsistent (which on an erasure channel means corrupted input).
    pub fn solve_unique(&self, b: &[Element]) -> Result<Option<Vec<Element>>> {
        let solved = self.solve_components(b)?;
        let out: Option<Vec<Element>> = solved.into_iter().collect();
        Ok(out)
    }

    /// Any single solution of a consistent system `A x = b` (free variables
    /// set to zero), or `None` when the system is inconsistent.
    pub fn solve_particular(&self, b: &[Element]) -> Result<Option<Vec<Element>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "matrix has {} rows, rhs has {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug = GfMatrix::zeros(self.field.clone(), self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let (rref, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.get(row, self.cols);
        }
        Ok(Some(x))
    }

    /// Per-component solve of `A x = b`: returns, for every unknown, its
    /// value when that component is the same in all solutions, or `None`
    /// when the component is not determined. Errors on inconsistency.
    pub fn solve_components(&self, b: &[Element]) -> Result<Vec<Option<Element>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "matrix has {} rows, rhs has {}",
                self.rows,
                b.len()
            )));
        }
        let mut aug = GfMatrix::zeros(self.field.clone(), self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let (rref, pivots) = aug.rref();
        // A pivot in the rhs column marks an inconsistent row 0 = 1.
        if pivots.last() == Some(&self.cols) {
            return Err(Error::InconsistentSystem);
        }
        let mut out = vec![None; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            // The pivot variable is determined iff its row touches no free column.
            let determined = (0..self.cols)
                .filter(|c| !pivots.contains(c))
                .all(|c| rref.get(row, c).is_zero());
            if determined {
                out[pc] = Some(rref.get(row, self.cols));
            }
        }
        Ok(out)
    }
}
