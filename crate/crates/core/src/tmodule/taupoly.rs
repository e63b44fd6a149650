//! Twisted polynomials M_n(R){tau} with tau * x = x^q * tau.

use crate::algebra::{ARing, MatOps, Matrix, RatFuncField, Ring};

/// A ring with a q-power Frobenius endomorphism.
pub trait Frobenius: Ring {
    /// x -> x^{q^k}.
    fn frob(&self, x: &Self::Elem, k: u32) -> Self::Elem;

    fn frob_matrix(&self, m: &Matrix<Self::Elem>, k: u32) -> Matrix<Self::Elem> {
        if k == 0 {
            return m.clone();
        }
        m.map(|x| self.frob(x, k))
    }
}

impl Frobenius for ARing {
    fn frob(&self, x: &Self::Elem, k: u32) -> Self::Elem {
        if k == 0 {
            return x.clone();
        }
        // coefficients lie in F_q, which q-powers fix
        let q = self.base.order() as usize;
        self.inflate(x, q.pow(k))
    }
}

impl Frobenius for RatFuncField {
    fn frob(&self, x: &Self::Elem, k: u32) -> Self::Elem {
        if k == 0 {
            return x.clone();
        }
        RatFuncField::frob(self, x, k)
    }
}

/// `sum_i coeffs[i] tau^i`, all coefficients n x n.
#[derive(Clone, Debug, PartialEq)]
pub struct TauPoly<E> {
    pub coeffs: Vec<Matrix<E>>,
}

impl<E> TauPoly<E> {
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

/// Arithmetic in M_n(R){tau}.
#[derive(Clone, Debug)]
pub struct TauRing<R: Frobenius> {
    pub ring: R,
    pub n: usize,
}

impl<R: Frobenius> TauRing<R> {
    pub fn new(ring: R, n: usize) -> Self {
        TauRing { ring, n }
    }

    fn ops(&self) -> MatOps<R> {
        MatOps::new(self.ring.clone())
    }

    pub fn trim(&self, mut coeffs: Vec<Matrix<R::Elem>>) -> TauPoly<R::Elem> {
        let ops = self.ops();
        while coeffs.last().is_some_and(|m| ops.is_zero(m)) {
            coeffs.pop();
        }
        TauPoly { coeffs }
    }

    pub fn zero(&self) -> TauPoly<R::Elem> {
        TauPoly { coeffs: vec![] }
    }

    pub fn one(&self) -> TauPoly<R::Elem> {
        self.constant(self.ops().identity(self.n))
    }

    pub fn constant(&self, m: Matrix<R::Elem>) -> TauPoly<R::Elem> {
        self.trim(vec![m])
    }

    /// `m tau^k`.
    pub fn monomial(&self, m: Matrix<R::Elem>, k: usize) -> TauPoly<R::Elem> {
        let mut coeffs = vec![self.ops().zeros(self.n, self.n); k];
        coeffs.push(m);
        self.trim(coeffs)
    }

    pub fn coeff(&self, a: &TauPoly<R::Elem>, k: usize) -> Matrix<R::Elem> {
        a.coeffs.get(k).cloned().unwrap_or_else(|| self.ops().zeros(self.n, self.n))
    }

    pub fn add(&self, a: &TauPoly<R::Elem>, b: &TauPoly<R::Elem>) -> TauPoly<R::Elem> {
        let ops = self.ops();
        let len = a.coeffs.len().max(b.coeffs.len());
        self.trim((0..len).map(|k| ops.add(&self.coeff(a, k), &self.coeff(b, k))).collect())
    }

    pub fn neg(&self, a: &TauPoly<R::Elem>) -> TauPoly<R::Elem> {
        let ops = self.ops();
        TauPoly { coeffs: a.coeffs.iter().map(|m| ops.neg(m)).collect() }
    }

    pub fn sub(&self, a: &TauPoly<R::Elem>, b: &TauPoly<R::Elem>) -> TauPoly<R::Elem> {
        self.add(a, &self.neg(b))
    }

    /// (A tau^i)(B tau^j) = A B^{(i)} tau^{i+j}.
    pub fn mul(&self, a: &TauPoly<R::Elem>, b: &TauPoly<R::Elem>) -> TauPoly<R::Elem> {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let ops = self.ops();
        let mut out = vec![ops.zeros(self.n, self.n); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ops.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                let prod = ops.mul(ai, &self.ring.frob_matrix(bj, i as u32));
                out[i + j] = ops.add(&out[i + j], &prod);
            }
        }
        self.trim(out)
    }

    /// Left multiplication by a tau^0 matrix.
    pub fn scale_left(&self, m: &Matrix<R::Elem>, a: &TauPoly<R::Elem>) -> TauPoly<R::Elem> {
        let ops = self.ops();
        self.trim(a.coeffs.iter().map(|c| ops.mul(m, c)).collect())
    }

    pub fn pow(&self, a: &TauPoly<R::Elem>, e: u32) -> TauPoly<R::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Applies the operator to a column vector: sum_i A_i x^{(i)}.
    pub fn apply(&self, a: &TauPoly<R::Elem>, x: &[R::Elem]) -> Vec<R::Elem> {
        let ops = self.ops();
        let mut out = vec![self.ring.zero(); self.n];
        for (i, m) in a.coeffs.iter().enumerate() {
            let xi: Vec<R::Elem> = x.iter().map(|c| self.ring.frob(c, i as u32)).collect();
            let y = ops.mul_vec(m, &xi);
            for (o, v) in out.iter_mut().zip(y) {
                *o = self.ring.add(o, &v);
            }
        }
        out
    }

    /// Maps coefficients into another Frobenius ring.
    pub fn map_into<S: Frobenius, F: Fn(&R::Elem) -> S::Elem>(
        &self,
        a: &TauPoly<R::Elem>,
        target: &TauRing<S>,
        f: F,
    ) -> TauPoly<S::Elem> {
        target.trim(a.coeffs.iter().map(|m| m.map(&f)).collect())
    }

    pub fn fmt_taupoly(&self, a: &TauPoly<R::Elem>) -> String {
        if a.coeffs.is_empty() {
            return "0".into();
        }
        let ops = self.ops();
        let mut terms = Vec::new();
        for (k, m) in a.coeffs.iter().enumerate() {
            if ops.is_zero(m) {
                continue;
            }
            let body = if self.n == 1 {
                crate::algebra::poly::paren(&self.ring.fmt_elem(m.get(0, 0)))
            } else {
                let rows: Vec<String> = (0..m.rows)
                    .map(|i| {
                        let r: Vec<String> = m.row(i).iter().map(|x| self.ring.fmt_elem(x)).collect();
                        format!("[{}]", r.join(", "))
                    })
                    .collect();
                format!("[{}]", rows.join(", "))
            };
            let tau = if k == 1 { "tau".to_string() } else { format!("tau^{k}") };
            terms.push(match (k, body.as_str()) {
                (0, _) => body,
                (_, "1") => tau,
                _ => format!("{body}*{tau}"),
            });
        }
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, FiniteField, PolyRing};

    #[test]
    fn tau_commutation() {
        let fq = FiniteField::new(&FieldSpec::prime(3).unwrap()).unwrap();
        let a = PolyRing::new(fq.clone());
        let tr = TauRing::new(a.clone(), 1);
        let t = Matrix::from_rows(vec![vec![a.var_elem()]]);
        let tau = tr.monomial(Matrix::from_rows(vec![vec![a.one()]]), 1);
        // tau * t = t^3 * tau
        let lhs = tr.mul(&tau, &tr.constant(t));
        let t3 = a.monomial(fq.one(), 3);
        assert_eq!(lhs, tr.monomial(Matrix::from_rows(vec![vec![t3]]), 1));
    }
}
