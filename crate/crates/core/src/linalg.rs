//! Small dense matrices over a [`Field`].

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(f: &Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity(f: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if let Some(bad) = rows.iter().find(|x| x.len() != c) {
            return Err(Error::WrongDimension { expected: c, found: bad.len() });
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(f: &Field, rows: &[Vec<i64>]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect())
    }

    pub fn get(&self, i: usize, j: usize) -> &Fe {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        (0..self.rows)
            .map(|i| f.sum(self.row(i).iter().zip(v).map(|(a, b)| f.mul(a, b)).collect::<Vec<_>>().iter()))
            .collect()
    }

    pub fn sub(&self, f: &Field, other: &Matrix) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn minus_identity(&self, f: &Field) -> Matrix {
        self.sub(f, &Matrix::identity(f, self.rows))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, f: &Field) -> Fe {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !f.is_zero(a.get(r, c))) else {
                return f.zero();
            };
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let pv = a.get(c, c).clone();
            det = f.mul(&det, &pv);
            let pinv = f.inv(&pv).unwrap();
            for r in c + 1..n {
                let factor = f.mul(a.get(r, c), &pinv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(a.get(r, j), &f.mul(&factor, a.get(c, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        !f.is_zero(&self.det(f))
    }

    /// Unique solution of `self · x = b`.
    pub fn solve(&self, f: &Field, b: &[Fe]) -> Result<Vec<Fe>> {
        assert!(self.is_square());
        let n = self.rows;
        if b.len() != n {
            return Err(Error::WrongDimension { expected: n, found: b.len() });
        }
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for c in 0..n {
            let piv = (c..n).find(|&r| !f.is_zero(a.get(r, c))).ok_or(Error::NotInvertible)?;
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                }
                rhs.swap(piv, c);
            }
            let pinv = f.inv(a.get(c, c))?;
            for j in c..n {
                let v = f.mul(a.get(c, j), &pinv);
                a.set(c, j, v);
            }
            rhs[c] = f.mul(&rhs[c], &pinv);
            for r in 0..n {
                if r == c || f.is_zero(a.get(r, c)) {
                    continue;
                }
                let factor = a.get(r, c).clone();
                for j in c..n {
                    let v = f.sub(a.get(r, j), &f.mul(&factor, a.get(c, j)));
                    a.set(r, j, v);
                }
                rhs[r] = f.sub(&rhs[r], &f.mul(&factor, &rhs[c]));
            }
        }
        Ok(rhs)
    }

    pub fn format(&self, f: &Field) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| f.format(x)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_solve() {
        let f = Field::prime(7).unwrap();
        let m = Matrix::from_i64(&f, &[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.det(&f), f.one());
        let b = vec![f.from_i64(3), f.from_i64(5)];
        let x = m.solve(&f, &b).unwrap();
        assert_eq!(m.apply(&f, &x), b);
        let s = Matrix::from_i64(&f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(!s.is_invertible(&f));
        assert_eq!(s.solve(&f, &b).unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn det_over_q_matches_cofactor() {
        let q = Field::rational();
        let m = Matrix::from_i64(&q, &[vec![0, 2, 1], vec![3, -1, 4], vec![5, 2, 0]]).unwrap();
        // cofactor expansion along the first row
        let d = 0 * (-1 * 0 - 4 * 2) - 2 * (3 * 0 - 4 * 5) + 1 * (3 * 2 - (-1) * 5);
        assert_eq!(m.det(&q), q.from_i64(d));
    }
}
