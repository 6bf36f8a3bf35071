use std::fmt;

use num_traits::Zero;

use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

/// Dense matrix over one of the catalog rings. Linear maps act on row
/// vectors from the right: a matrix with `rows = dim(source)` and
/// `cols = dim(target)` sends `v` to `v * M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![Elem::zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry into the ring.
    pub fn from_rows(ring: &Ring, cols: usize, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            for x in r {
                data.push(ring.coerce(&x)?);
            }
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| ring.from_int(x)).collect())
            .collect();
        Matrix::from_rows(ring, cols, rows).expect("well-formed literal")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = self.ring.reduce(x);
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out.normalize();
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows, "vector length must match matrix rows");
        let mut out = vec![Elem::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out.into_iter().map(|x| self.ring.reduce(x)).collect()
    }

    /// Matrix times column vector.
    pub fn apply_col(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols, "vector length must match matrix columns");
        (0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Elem::zero(), |acc, (a, b)| acc + a * b);
                self.ring.reduce(s)
            })
            .collect()
    }

    /// Kronecker product, indexing `(i1, i2) -> i1 * rows2 + i2`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zero(&self.ring, rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            out.data[(i1 * other.rows + i2) * cols + j1 * other.cols + j2] = a * b;
                        }
                    }
                }
            }
        }
        out.normalize();
        out
    }

    pub fn map_entries(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| target.reduce(f(x))).collect(),
        }
    }

    pub fn select_columns(&self, cols: std::ops::Range<usize>) -> Matrix {
        let width = cols.len();
        let rows = (0..self.rows).map(|i| self.row(i)[cols.clone()].to_vec()).collect();
        Matrix::from_rows(&self.ring, width, rows).expect("slice of a valid matrix")
    }

    fn normalize(&mut self) {
        if matches!(self.ring, Ring::IntegersMod(_)) {
            for x in &mut self.data {
                *x = self.ring.reduce(std::mem::take(x));
            }
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
