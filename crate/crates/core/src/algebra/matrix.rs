//! Dense matrices over a ring context and the Berkowitz characteristic polynomial.

use super::poly::{Poly, PolyRing};
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries.
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn filled(rows: usize, cols: usize, e: E) -> Self {
        Matrix { rows, cols, data: vec![e; rows * cols] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entrywise map.
    pub fn map<F, T>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Builds a matrix from its columns.
    pub fn from_cols(cols: Vec<Vec<E>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in &cols {
                data.push(col[i].clone());
            }
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self, zero: E) -> Self {
        let n = self.rows + other.rows;
        let m = self.cols + other.cols;
        let mut out = Matrix::filled(n, m, zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }
}

/// Matrix arithmetic over a ring context.
#[derive(Clone, Debug)]
pub struct MatOps<R: Ring> {
    pub ring: R,
}

impl<R: Ring> MatOps<R> {
    pub fn new(ring: R) -> Self {
        MatOps { ring }
    }

    pub fn zeros(&self, rows: usize, cols: usize) -> Matrix<R::Elem> {
        Matrix::filled(rows, cols, self.ring.zero())
    }

    pub fn identity(&self, n: usize) -> Matrix<R::Elem> {
        let mut m = self.zeros(n, n);
        for i in 0..n {
            m.set(i, i, self.ring.one());
        }
        m
    }

    pub fn scalar(&self, n: usize, c: &R::Elem) -> Matrix<R::Elem> {
        let mut m = self.zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn add(&self, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        Matrix {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().zip(&b.data).map(|(x, y)| self.ring.add(x, y)).collect(),
        }
    }

    pub fn sub(&self, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        Matrix {
            rows: a.rows,
            cols: a.cols,
            data: a.data.iter().zip(&b.data).map(|(x, y)| self.ring.sub(x, y)).collect(),
        }
    }

    pub fn neg(&self, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
        a.map(|x| self.ring.neg(x))
    }

    pub fn scale(&self, a: &Matrix<R::Elem>, c: &R::Elem) -> Matrix<R::Elem> {
        a.map(|x| self.ring.mul(c, x))
    }

    pub fn mul(&self, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
        assert_eq!(a.cols, b.rows, "dimension mismatch in matrix product");
        let mut out = self.zeros(a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.get(i, k);
                if self.ring.is_zero(x) {
                    continue;
                }
                for j in 0..b.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = self.ring.add(&out.data[idx], &self.ring.mul(x, b.get(k, j)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
        assert_eq!(a.cols, v.len());
        (0..a.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (j, x) in v.iter().enumerate() {
                    acc = self.ring.add(&acc, &self.ring.mul(a.get(i, j), x));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, a: &Matrix<R::Elem>, mut e: u64) -> Matrix<R::Elem> {
        let mut acc = self.identity(a.rows);
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_zero(&self, a: &Matrix<R::Elem>) -> bool {
        a.data.iter().all(|x| self.ring.is_zero(x))
    }

    /// Characteristic polynomial det(X*Id - m), ascending coefficients, without division.
    pub fn berkowitz_charpoly(&self, m: &Matrix<R::Elem>) -> Result<Poly<R::Elem>> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
        }
        let r = &self.ring;
        let n = m.rows;
        let pr = PolyRing::with_var(r.clone(), "X");
        if n == 0 {
            return Ok(pr.one());
        }
        // descending coefficient vector of the leading k x k block
        let mut cvec = vec![r.one(), r.neg(m.get(0, 0))];
        for k in 1..n {
            // A_k = leading k x k block, R = row k (cols < k), C = col k (rows < k)
            let row: Vec<R::Elem> = (0..k).map(|j| m.get(k, j).clone()).collect();
            let mut col: Vec<R::Elem> = (0..k).map(|i| m.get(i, k).clone()).collect();
            let mut t = Vec::with_capacity(k + 2);
            t.push(r.one());
            t.push(r.neg(m.get(k, k)));
            for _ in 2..=k + 1 {
                // -R * A_k^(i-2) * C, advancing col <- A_k col
                let mut dot = r.zero();
                for j in 0..k {
                    dot = r.add(&dot, &r.mul(&row[j], &col[j]));
                }
                t.push(r.neg(&dot));
                let next: Vec<R::Elem> = (0..k)
                    .map(|i| {
                        let mut acc = r.zero();
                        for j in 0..k {
                            acc = r.add(&acc, &r.mul(m.get(i, j), &col[j]));
                        }
                        acc
                    })
                    .collect();
                col = next;
            }
            let mut next = Vec::with_capacity(k + 2);
            for i in 0..k + 2 {
                let mut acc = r.zero();
                for j in 0..=i.min(k) {
                    acc = r.add(&acc, &r.mul(&t[i - j], &cvec[j]));
                }
                next.push(acc);
            }
            cvec = next;
        }
        cvec.reverse();
        Ok(pr.trim(cvec))
    }

    pub fn det(&self, m: &Matrix<R::Elem>) -> Result<R::Elem> {
        let cp = self.berkowitz_charpoly(m)?;
        let c0 = cp.coeffs.first().cloned().unwrap_or_else(|| self.ring.zero());
        Ok(if m.rows % 2 == 1 { self.ring.neg(&c0) } else { c0 })
    }
}

#[cfg(test)]
pub(crate) fn cofactor_det<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.rows;
    if n == 0 {
        return r.one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = r.zero();
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = cofactor_det(r, &m.submatrix(&rows, &cols));
        let term = r.mul(m.get(0, j), &minor);
        acc = if j % 2 == 0 { r.add(&acc, &term) } else { r.sub(&acc, &term) };
    }
    acc
}
