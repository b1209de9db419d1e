//! Dense matrices over [`Scalar`] plus the elimination-based oracles
//! (determinant, rank, inverse) that every closed-form result is checked
//! against.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix with at least one row and one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| Scalar::zero())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| if i == j { Scalar::one() } else { Scalar::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty {rows}x{cols} matrix")));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<Scalar>,
    ) -> Result<Self> {
        let mut err = None;
        let m = Self::from_fn(rows, cols, |i, j| match f(i, j) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                Scalar::zero()
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(m),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        if r == 0 || c == 0 {
            return Err(Error::Dimension(format!("empty {r}x{c} matrix")));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor for integer matrices; panics on ragged or empty input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| Scalar::from_int(v)).collect())
            .collect();
        Self::from_rows(rows).expect("well-formed integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.cols)
    }

    pub fn diagonal(&self) -> impl Iterator<Item = &Scalar> {
        (0..self.rows.min(self.cols)).map(move |i| &self[(i, i)])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone()).expect("non-empty")
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)].is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)].is_zero()))
    }

    pub fn multiply(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    acc += &(a * &rhs[(k, j)]);
                }
            }
            acc
        })
    }

    /// Entrywise product.
    pub fn hadamard(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "hadamard of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a * b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!("{what} of non-square {}x{} matrix", self.rows, self.cols)))
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Each step computes `(a_ij a_kk - a_ik a_kj) / p` where `p` is the
    /// previous pivot; the division is exact. A zero pivot is replaced by
    /// the first nonzero entry below it, flipping the sign.
    pub fn det_oracle(&self) -> Result<Scalar> {
        self.require_square("determinant")?;
        let n = self.rows;
        let mut a = self.clone();
        let mut prev = Scalar::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[(r, k)].is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[(i, j)] * &a[(k, k)]) - &(&a[(i, k)] * &a[(k, j)]);
                    a[(i, j)] = &v / &prev;
                }
                a[(i, k)] = Scalar::zero();
            }
            prev = a[(k, k)].clone();
        }
        let det = a[(n - 1, n - 1)].clone();
        Ok(if negate { -det } else { det })
    }

    /// Row-echelon form over the field; returns the rank.
    pub fn rank_oracle(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let Some(p) = (rank..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, rank);
            let pivot = a[(rank, col)].clone();
            for i in rank + 1..a.rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let factor = &a[(i, col)] / &pivot;
                for j in col..a.cols {
                    let d = &factor * &a[(rank, j)];
                    a[(i, j)] -= &d;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse.
    pub fn inverse_oracle(&self) -> Result<Matrix> {
        self.require_square("inverse")?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n)?;
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pinv = a[(col, col)].inv().expect("nonzero pivot");
            for j in 0..n {
                a[(col, j)] *= &pinv;
                inv[(col, j)] *= &pinv;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let factor = a[(i, col)].clone();
                for j in 0..n {
                    let da = &factor * &a[(col, j)];
                    a[(i, j)] -= &da;
                    let di = &factor * &inv[(col, j)];
                    inv[(i, j)] -= &di;
                }
            }
        }
        Ok(inv)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Right-aligned columns, one row per line; round-trips through [`FromStr`].
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let mut widths = vec![0; self.cols];
        for (k, c) in cells.iter().enumerate() {
            widths[k % self.cols] = widths[k % self.cols].max(c.len());
        }
        for (i, row) in cells.chunks(self.cols).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c:>w$}", w = widths[j])?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// One row per line, whitespace-separated scalars. Blank lines and `#`
/// comments are skipped.
impl FromStr for Matrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().map(str::parse).collect::<Result<Vec<Scalar>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
    }
}
