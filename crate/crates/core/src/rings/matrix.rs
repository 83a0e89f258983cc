//! Dense matrices of ring elements. The ring is passed to every operation
//! rather than stored, so matrices stay plain data.

use serde::{Deserialize, Serialize};

use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub data: Vec<Elem>,
}

/// Matrix in manifest syntax: a list of rows of element strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixStrings(pub Vec<Vec<String>>);

impl Matrix {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>, cols: usize) -> Matrix {
        let r = rows.len();
        let data: Vec<Elem> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * cols, "ragged matrix");
        Matrix {
            rows: r,
            cols,
            data,
        }
    }

    pub fn from_cols(ring: &Ring, rows: usize, cols: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zero(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, e) in c.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    pub fn parse(ring: &Ring, rows: usize, cols: usize, s: &MatrixStrings) -> Result<Matrix> {
        if s.0.len() != rows {
            return Err(Error::InvalidComplex(format!(
                "expected {rows} rows, found {}",
                s.0.len()
            )));
        }
        let mut m = Matrix::zero(ring, rows, cols);
        for (i, row) in s.0.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidComplex(format!(
                    "row {i}: expected {cols} entries, found {}",
                    row.len()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                m.set(i, j, ring.parse(e)?);
            }
        }
        Ok(m)
    }

    pub fn to_strings(&self, ring: &Ring) -> MatrixStrings {
        MatrixStrings(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| ring.format(self.get(i, j)))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Elem) {
        self.data[i * self.cols + j] = e;
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_zero(&self, ring: &Ring) -> bool {
        self.data.iter().all(|e| ring.is_zero(e))
    }

    pub fn mul(&self, ring: &Ring, b: &Matrix) -> Matrix {
        assert_eq!(self.cols, b.rows, "dimension mismatch in product");
        let mut out = Matrix::zero(ring, self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..b.cols {
                    let bk = b.get(k, j);
                    if ring.is_zero(bk) {
                        continue;
                    }
                    let v = ring.add(out.get(i, j), &ring.mul(a, bk));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, ring: &Ring, b: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (b.rows, b.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&b.data)
                .map(|(x, y)| ring.add(x, y))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &Ring, c: &Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| ring.mul(c, x)).collect(),
        }
    }

    pub fn neg(&self, ring: &Ring) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| ring.neg(x)).collect(),
        }
    }

    pub fn apply(&self, ring: &Ring, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for (j, x) in v.iter().enumerate() {
                    acc = ring.add(&acc, &ring.mul(self.get(i, j), x));
                }
                acc
            })
            .collect()
    }

    /// Block matrix `[[a, b], [c, d]]`; blocks must agree in size.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let (rows, cols) = (a.rows + c.rows, a.cols + b.cols);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..a.rows {
            data.extend_from_slice(&a.data[i * a.cols..(i + 1) * a.cols]);
            data.extend_from_slice(&b.data[i * b.cols..(i + 1) * b.cols]);
        }
        for i in 0..c.rows {
            data.extend_from_slice(&c.data[i * c.cols..(i + 1) * c.cols]);
            data.extend_from_slice(&d.data[i * d.cols..(i + 1) * d.cols]);
        }
        Matrix { rows, cols, data }
    }

    pub fn direct_sum(ring: &Ring, a: &Matrix, b: &Matrix) -> Matrix {
        Matrix::block(
            a,
            &Matrix::zero(ring, a.rows, b.cols),
            &Matrix::zero(ring, b.rows, a.cols),
            b,
        )
    }

    pub fn hcat(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.rows, b.rows);
        let cols = a.cols + b.cols;
        let mut data = Vec::with_capacity(a.rows * cols);
        for i in 0..a.rows {
            data.extend(a.row(i));
            data.extend(b.row(i));
        }
        Matrix {
            rows: a.rows,
            cols,
            data,
        }
    }

    /// Kronecker product `a ⊗ b`, with row/column index `(i, k) -> i * b.rows + k`.
    pub fn kronecker(ring: &Ring, a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Matrix::zero(ring, a.rows * b.rows, a.cols * b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let x = a.get(i, j);
                if ring.is_zero(x) {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        let y = b.get(k, l);
                        if !ring.is_zero(y) {
                            out.set(i * b.rows + k, j * b.cols + l, ring.mul(x, y));
                        }
                    }
                }
            }
        }
        out
    }

    /// Entrywise image under a ring map.
    pub fn map(&self, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let cols: Vec<Vec<Elem>> = idx.iter().map(|&j| self.col(j)).collect();
        let mut m = Matrix {
            rows: self.rows,
            cols: idx.len(),
            data: Vec::with_capacity(self.rows * idx.len()),
        };
        for i in 0..self.rows {
            for c in &cols {
                m.data.push(c[i].clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.cols * idx.len());
        for &i in idx {
            data.extend(self.row(i));
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }
}
