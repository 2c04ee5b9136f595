//! Dense matrices over a field with fraction-free (Bareiss) elimination.
//!
//! For [`Rational`](crate::scalar::Rational) input every row is first scaled
//! to coprime integers, so the Bareiss recurrence only ever divides integers
//! by exact integer divisors and entries stay bounded by minors of the input.

use std::fmt;

use crate::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Row echelon form produced by [`Matrix::echelon`].
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    /// Nonzero rows, upper trapezoidal.
    pub rows: Vec<Vec<F>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub cols: usize,
    /// Row permutation applied (original index of each echelon row before elimination).
    pub row_order: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Right kernel basis, one vector per non-pivot column (that column set to 1).
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![F::zero(); self.cols];
            x[free] = F::one();
            for k in (0..self.rows.len()).rev() {
                let row = &self.rows[k];
                let pc = self.pivots[k];
                let mut s = F::zero();
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        s = s + row[j].clone() * x[j].clone();
                    }
                }
                if !s.is_zero() {
                    x[pc] = -s / row[pc].clone();
                }
            }
            basis.push(x);
        }
        basis
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Rows must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: nrows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix columns");
            for (i, v) in c.iter().enumerate() {
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

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |s, (a, b)| s + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Fraction-free row echelon form.
    pub fn echelon(&self) -> Echelon<F> {
        let mut rows: Vec<Vec<F>> = (0..self.rows)
            .map(|i| {
                let r = self.row(i).to_vec();
                let refs: Vec<&F> = r.iter().collect();
                match F::integral_scale(&refs) {
                    Some(s) => r.into_iter().map(|v| v * s.clone()).collect(),
                    None => r,
                }
            })
            .collect();
        let mut order: Vec<usize> = (0..self.rows).collect();
        let mut pivots = Vec::new();
        let mut prev = F::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            // smallest nonzero pivot candidate keeps numbers small
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if !rows[i][c].is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) if rows[i][c].abs_cmp_key() < rows[b][c].abs_cmp_key() => best = Some(i),
                        _ => {}
                    }
                }
            }
            let Some(p) = best else { continue };
            rows.swap(r, p);
            order.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pv = pivot_row[c].clone();
            for row in tail.iter_mut() {
                let lead = row[c].clone();
                if lead.is_zero() {
                    if !(pv == prev) {
                        for v in row[c + 1..].iter_mut() {
                            if !v.is_zero() {
                                *v = pv.clone() * v.clone() / prev.clone();
                            }
                        }
                    }
                    continue;
                }
                for j in c + 1..self.cols {
                    let a = &row[j];
                    let b = &pivot_row[j];
                    let v = match (a.is_zero(), b.is_zero()) {
                        (true, true) => continue,
                        (false, true) => pv.clone() * a.clone(),
                        (true, false) => -(lead.clone() * b.clone()),
                        (false, false) => pv.clone() * a.clone() - lead.clone() * b.clone(),
                    };
                    row[j] = v / prev.clone();
                }
                row[c] = F::zero();
            }
            prev = pv;
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        order.truncate(r);
        Echelon {
            rows,
            pivots,
            cols: self.cols,
            row_order: order,
        }
    }

    pub fn rank(&self) -> usize {
        if let Some(k) = self.fast_nullspace() {
            return self.cols - k.len();
        }
        self.echelon().rank()
    }

    /// Basis of `{x : self * x = 0}`; its size is `cols - rank`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.fast_nullspace().unwrap_or_else(|| self.echelon().nullspace())
    }

    fn fast_nullspace(&self) -> Option<Vec<Vec<F>>> {
        if self.rows == 0 || self.cols == 0 {
            return None;
        }
        let rows: Vec<&[F]> = (0..self.rows).map(|i| self.row(i)).collect();
        F::fast_nullspace(&rows, self.cols)
    }

    /// Left kernel: `{y : y^T * self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<F>> {
        self.transpose().nullspace()
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return F::one();
        }
        // track the sign of the row permutation and the integral scalings
        let mut scaled = self.clone();
        let mut undo = F::one();
        for i in 0..self.rows {
            let refs: Vec<&F> = scaled.row(i).iter().collect();
            if let Some(s) = F::integral_scale(&refs) {
                for j in 0..self.cols {
                    let v = scaled.get(i, j).clone() * s.clone();
                    scaled.set(i, j, v);
                }
                undo = undo / s;
            }
        }
        let e = scaled.echelon();
        if e.rank() < self.rows {
            return F::zero();
        }
        let sign = permutation_sign(&e.row_order);
        let last = e.rows[self.rows - 1][self.cols - 1].clone();
        let d = if sign { -last } else { last };
        d * undo
    }

    /// Columns of `self` selected greedily so that they are independent; the
    /// returned indices span the column space.
    pub fn independent_columns(&self) -> Vec<usize> {
        if let Some(k) = self.fast_nullspace() {
            // each kernel vector ends at its free column
            let mut pivot = vec![true; self.cols];
            for v in &k {
                if let Some(j) = v.iter().rposition(|x| !x.is_zero()) {
                    pivot[j] = false;
                }
            }
            return (0..self.cols).filter(|&j| pivot[j]).collect();
        }
        self.echelon().pivots
    }
}

/// true when the permutation is odd
fn permutation_sign(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Incrementally grown row space, for greedy complement selection.
#[derive(Clone, Debug)]
pub struct RowSpan<F: Field> {
    dim: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> RowSpan<F> {
    pub fn new(dim: usize) -> Self {
        RowSpan { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let t = v[*p].clone() / row[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - t.clone() * r.clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.dim);
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let refs: Vec<&F> = r.iter().collect();
        let r = match F::integral_scale(&refs) {
            Some(s) => r.into_iter().map(|x| x * s.clone()).collect(),
            None => r,
        };
        self.rows.push((p, r));
        true
    }
}

/// Rank of a family of vectors of common length `dim`.
pub fn rank_of_vectors<F: Field>(dim: usize, vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(dim, vectors.to_vec()).rank()
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let id: Matrix<Rational> = Matrix::identity(3);
        assert!(id.nullspace().is_empty());
        assert_eq!(id.rank(), 3);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z: Matrix<Rational> = Matrix::zeros(2, 3);
        assert_eq!(z.nullspace().len(), 3);
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let ker = a.nullspace();
        assert_eq!(ker.len(), 4 - a.rank());
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn determinant_matches_cofactor() {
        let a = m(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) + 0 = 2*(-26) + (-2) = -54
        assert_eq!(a.determinant(), int(-54));
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(b.determinant(), int(-1));
        let c = Matrix::from_rows(2, vec![vec![rat(1, 2), rat(1, 3)], vec![int(1), int(1)]]);
        assert_eq!(c.determinant(), rat(1, 6));
    }

    #[test]
    fn rank_with_skipped_columns() {
        let a = m(&[&[0, 0, 1, 2], &[0, 0, 2, 4], &[0, 3, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.nullspace().len(), 2);
    }

    #[test]
    fn floats_work_through_the_same_code() {
        let a: Matrix<f64> = Matrix::from_rows(2, vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert!((a.determinant() + 2.0).abs() < 1e-12);
    }
}
