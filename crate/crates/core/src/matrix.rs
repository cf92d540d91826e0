//! Matrices of polynomials, with the graded structure made explicit.
//!
//! A graded matrix carries optional row and column degree vectors; a
//! nonzero entry at `(i, j)` must then be homogeneous of degree
//! `col[j] - row[i]`.  The degree vectors are what turns a matrix
//! factorization into Betti data.

use crate::poly::{MultiPoly, PolyError};
use crate::scalar::{Field, Scalar};

/// A rectangular matrix of polynomials over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    nvars: usize,
    entries: Vec<MultiPoly>,
    pub row_degrees: Option<Vec<i64>>,
    pub col_degrees: Option<Vec<i64>>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self, PolyError> {
        assert!(!rows.is_empty(), "matrix must have at least one row");
        let ncols = rows[0].len();
        assert!(ncols > 0, "matrix must have at least one column");
        let field = rows[0][0].field();
        let nvars = rows[0][0].nvars();
        let mut entries = Vec::with_capacity(rows.len() * ncols);
        for row in &rows {
            if row.len() != ncols {
                return Err(PolyError::DimensionMismatch(
                    rows.len(),
                    ncols,
                    1,
                    row.len(),
                ));
            }
            for e in row {
                if e.field() != field {
                    return Err(PolyError::FieldMismatch);
                }
                if e.nvars() != nvars {
                    return Err(PolyError::ArityMismatch {
                        left: nvars,
                        right: e.nvars(),
                    });
                }
                entries.push(e.clone());
            }
        }
        Ok(PolyMatrix {
            rows: rows.len(),
            cols: ncols,
            field,
            nvars,
            entries,
            row_degrees: None,
            col_degrees: None,
        })
    }

    pub fn identity(field: Field, nvars: usize, n: usize) -> Self {
        let mut m = Self::zero(field, nvars, n, n);
        for i in 0..n {
            m.entries[i * n + i] = MultiPoly::one(field, nvars);
        }
        m
    }

    pub fn zero(field: Field, nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            field,
            nvars,
            entries: vec![MultiPoly::zero(field, nvars); rows * cols],
            row_degrees: None,
            col_degrees: None,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: MultiPoly) {
        assert_eq!(p.field(), self.field);
        assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    /// Entry-wise equality, ignoring the degree-vector metadata.
    pub fn same_entries(&self, other: &PolyMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }

    pub fn neg(&self) -> PolyMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.neg();
        }
        out
    }

    /// Multiplies every entry by a fixed scalar.
    pub fn scale(&self, c: &Scalar) -> Result<PolyMatrix, PolyError> {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.scalar_mul(c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        let mut out = Self::zero(self.field, self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero(self.field, self.nvars);
                for k in 0..self.cols {
                    let term = self.entry(i, k).mul(other.entry(k, j))?;
                    acc = acc.add(&term)?;
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        // Degree vectors compose through the middle when both are present.
        out.row_degrees = self.row_degrees.clone();
        out.col_degrees = other.col_degrees.clone();
        Ok(out)
    }

    /// Whether the matrix equals `f * I`.
    pub fn is_scalar_identity(&self, f: &MultiPoly) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.entry(i, j);
                if i == j {
                    if e != f {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant by cofactor expansion along the first row.
    ///
    /// Exponential in the size, which is fine here: nothing in this
    /// crate needs determinants beyond 4x4, and the expansion keeps the
    /// arithmetic division-free.
    pub fn determinant(&self) -> Result<MultiPoly, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare(self.rows, self.cols));
        }
        Ok(self.det_inner(
            &(0..self.rows).collect::<Vec<_>>(),
            &(0..self.cols).collect::<Vec<_>>(),
        ))
    }

    fn det_inner(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        let n = rows.len();
        if n == 1 {
            return self.entry(rows[0], cols[0]).clone();
        }
        let mut acc = MultiPoly::zero(self.field, self.nvars);
        let sub_rows: Vec<usize> = rows[1..].to_vec();
        for (pos, &j) in cols.iter().enumerate() {
            let pivot = self.entry(rows[0], j);
            if pivot.is_zero() {
                continue;
            }
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let minor = self.det_inner(&sub_rows, &sub_cols);
            let term = pivot.mul(&minor).expect("entries share field");
            acc = if pos % 2 == 0 {
                acc.add(&term).expect("entries share field")
            } else {
                acc.sub(&term).expect("entries share field")
            };
        }
        acc
    }

    /// The adjugate: transpose of the cofactor matrix, satisfying
    /// `M * adj(M) = adj(M) * M = det(M) * I`.
    pub fn adjugate(&self) -> Result<PolyMatrix, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut out = Self::zero(self.field, self.nvars, n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = if n == 1 {
                    MultiPoly::one(self.field, self.nvars)
                } else {
                    self.det_inner(&rows, &cols)
                };
                let cof = if (i + j) % 2 == 0 { minor } else { minor.neg() };
                out.entries[i * n + j] = cof;
            }
        }
        Ok(out)
    }
}

/// Infers row and column degree vectors making every nonzero entry
/// homogeneous of degree `col[j] - row[i]`.
///
/// Constraints are propagated over the bipartite row/column graph; each
/// connected component is anchored so that its minimal row degree is 0
/// (an isolated column gets degree 0).
pub fn grading_infer(m: &PolyMatrix) -> Result<(Vec<i64>, Vec<i64>), PolyError> {
    let (rows, cols) = (m.rows(), m.cols());
    // Node ids: 0..rows are rows, rows..rows+cols are columns.
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); rows + cols];
    for i in 0..rows {
        for j in 0..cols {
            let e = m.entry(i, j);
            if e.is_zero() {
                continue;
            }
            if !e.is_homogeneous() {
                return Err(PolyError::NotHomogeneous(i, j));
            }
            let d = e.degree().expect("nonzero entry has a degree");
            // col = row + d, row = col - d
            adj[i].push((rows + j, d));
            adj[rows + j].push((i, -d));
        }
    }
    let mut value = vec![None::<i64>; rows + cols];
    for start in 0..rows + cols {
        if value[start].is_some() {
            continue;
        }
        // Breadth-first propagation from an arbitrary anchor.
        value[start] = Some(0);
        let mut queue = std::collections::VecDeque::from([start]);
        let mut component = vec![start];
        while let Some(u) = queue.pop_front() {
            let base = value[u].unwrap();
            for &(v, delta) in &adj[u] {
                let expect = base + delta;
                match value[v] {
                    None => {
                        value[v] = Some(expect);
                        component.push(v);
                        queue.push_back(v);
                    }
                    Some(actual) if actual != expect => {
                        let (i, j) = if u < rows {
                            (u, v - rows)
                        } else {
                            (v, u - rows)
                        };
                        return Err(PolyError::InconsistentGrading(i, j));
                    }
                    Some(_) => {}
                }
            }
        }
        // Anchor: minimal row degree in the component becomes 0.
        let min_row = component
            .iter()
            .filter(|&&n| n < rows)
            .map(|&n| value[n].unwrap())
            .min();
        if let Some(min_row) = min_row {
            for &n in &component {
                *value[n].as_mut().unwrap() -= min_row;
            }
        }
    }
    let row_degrees: Vec<i64> = (0..rows).map(|i| value[i].unwrap()).collect();
    let col_degrees: Vec<i64> = (0..cols).map(|j| value[rows + j].unwrap()).collect();
    Ok((row_degrees, col_degrees))
}

/// Solves `a x = rhs` over the scalar field by Gaussian elimination.
///
/// Deterministic: pivots are chosen as the first nonzero entry in
/// row-major order, and free variables are set to zero.  Returns `None`
/// when the system is inconsistent.
pub fn solve_linear(a: &[Vec<Scalar>], rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>, PolyError> {
    let nrows = a.len();
    if nrows != rhs.len() {
        return Err(PolyError::DimensionMismatch(nrows, 0, rhs.len(), 0));
    }
    if nrows == 0 {
        return Ok(Some(Vec::new()));
    }
    let ncols = a[0].len();
    let field = rhs
        .first()
        .map(Scalar::field)
        .or_else(|| a[0].first().map(Scalar::field))
        .unwrap_or(Field::Rational);
    let mut mat: Vec<Vec<Scalar>> = Vec::with_capacity(nrows);
    for (row, r) in a.iter().zip(rhs) {
        if row.len() != ncols {
            return Err(PolyError::DimensionMismatch(nrows, ncols, 1, row.len()));
        }
        let mut aug: Vec<Scalar> = row.clone();
        aug.push(r.clone());
        for v in &aug {
            if v.field() != field {
                return Err(PolyError::FieldMismatch);
            }
        }
        mat.push(aug);
    }

    let mut pivot_of_col = vec![None::<usize>; ncols];
    let mut next_row = 0usize;
    for col in 0..ncols {
        let Some(p) = (next_row..nrows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(next_row, p);
        let inv = mat[next_row][col].inverse()?;
        for v in mat[next_row].iter_mut() {
            *v = v.mul(&inv)?;
        }
        let pivot_row = mat[next_row].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r != next_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (dst, src) in row[col..=ncols].iter_mut().zip(&pivot_row[col..=ncols]) {
                    let delta = factor.mul(src)?;
                    *dst = dst.sub(&delta)?;
                }
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == nrows {
            break;
        }
    }

    // Inconsistent when a zero row has nonzero right-hand side.
    for row in &mat {
        if row[..ncols].iter().all(Scalar::is_zero) && !row[ncols].is_zero() {
            return Ok(None);
        }
    }

    let mut solution = vec![field.zero(); ncols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            solution[col] = mat[*r][ncols].clone();
        }
    }
    Ok(Some(solution))
}
