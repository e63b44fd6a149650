//! Truncated polynomial rings R[Z]/Z^n.

use super::ring::Ring;

/// Elements are coefficient vectors of length exactly `n`.
#[derive(Clone, Debug)]
pub struct TruncRing<R: Ring> {
    pub base: R,
    pub n: usize,
}

impl<R: Ring> TruncRing<R> {
    pub fn new(base: R, n: usize) -> Self {
        TruncRing { base, n }
    }

    pub fn from_coeffs(&self, mut v: Vec<R::Elem>) -> Vec<R::Elem> {
        v.resize(self.n, self.base.zero());
        v
    }

    pub fn constant(&self, c: R::Elem) -> Vec<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c * Z^k` (zero when k >= n).
    pub fn monomial(&self, c: R::Elem, k: usize) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.n];
        if k < self.n {
            v[k] = c;
        }
        v
    }
}

impl<R: Ring> Ring for TruncRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.n]
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut v = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.n - i) {
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(x, y));
            }
        }
        v
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let c = self.base.try_inv(a.first()?)?;
        let mut b: Vec<R::Elem> = Vec::with_capacity(self.n);
        b.push(c.clone());
        for k in 1..self.n {
            let mut acc = self.base.zero();
            for i in 1..=k {
                acc = self.base.add(&acc, &self.base.mul(&a[i], &b[k - i]));
            }
            b.push(self.base.neg(&self.base.mul(&c, &acc)));
        }
        Some(b)
    }
}
