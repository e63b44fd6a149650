//! The rational function field k = F_q(t), exact.

use super::fq::{FiniteField, FqElem};
use super::laurent::{Laurent, LaurentRing};
use super::poly::{Poly, PolyRing};
use super::ring::{Field, Ring};
use crate::error::Result;

/// `num / den` with `den` monic and coprime to `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    pub num: Poly<FqElem>,
    pub den: Poly<FqElem>,
}

#[derive(Clone, Debug)]
pub struct RatFuncField {
    pub a: PolyRing<FiniteField>,
}

impl RatFuncField {
    pub fn new(fq: FiniteField) -> Self {
        RatFuncField { a: PolyRing::new(fq) }
    }

    pub fn fq(&self) -> &FiniteField {
        &self.a.base
    }

    pub fn make(&self, num: Poly<FqElem>, den: Poly<FqElem>) -> RatFunc {
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return RatFunc { num, den: self.a.one() };
        }
        let g = self.a.gcd(&num, &den);
        let (n, _) = self.a.divrem(&num, &g).expect("gcd divides");
        let (d, _) = self.a.divrem(&den, &g).expect("gcd divides");
        let l = self.fq().inv(d.leading().unwrap());
        RatFunc { num: self.a.scale(&n, &l), den: self.a.scale(&d, &l) }
    }

    pub fn from_poly(&self, p: Poly<FqElem>) -> RatFunc {
        RatFunc { num: p, den: self.a.one() }
    }

    pub fn is_poly(&self, x: &RatFunc) -> bool {
        x.den.len() == 1
    }

    /// Valuation at infinity in u = 1/t: deg den - deg num.
    pub fn u_valuation(&self, x: &RatFunc) -> Option<i64> {
        x.num.degree().map(|dn| x.den.degree().unwrap() as i64 - dn as i64)
    }

    /// Laurent expansion in u, known to absolute precision `prec`.
    pub fn to_laurent(&self, x: &RatFunc, prec: i64) -> Result<Laurent<FqElem>> {
        let lr = LaurentRing::new(self.fq().clone(), prec);
        if x.num.is_empty() {
            return Ok(lr.zero());
        }
        let n = lr.from_poly_t(&x.num);
        if self.is_poly(x) {
            return Ok(n);
        }
        let d = lr.from_poly_t(&x.den);
        // relative precision of 1/den must cover prec - val(num)
        let target = prec - n.val;
        let di = lr.inverse_to(&d, target)?;
        Ok(lr.truncate(&lr.mul(&n, &di), prec))
    }

    /// Applies the q^k-power Frobenius (raises t to t^{q^k}, coefficients to their q^k powers).
    pub fn frob(&self, x: &RatFunc, k: u32) -> RatFunc {
        let q = self.fq().order() as usize;
        let e = q.pow(k);
        let fq = self.fq().clone();
        let qk = (fq.order() as u64).pow(k);
        let map = |p: &Poly<FqElem>| {
            let c = self.a.map(p, |c| fq.pow(c, qk));
            self.a.inflate(&c, e)
        };
        RatFunc { num: map(&x.num), den: map(&x.den) }
    }

    pub fn fmt_ratfunc(&self, x: &RatFunc) -> String {
        if self.is_poly(x) {
            self.a.fmt_poly(&x.num)
        } else {
            format!("({})/({})", self.a.fmt_poly(&x.num), self.a.fmt_poly(&x.den))
        }
    }
}

impl Ring for RatFuncField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc { num: self.a.zero(), den: self.a.one() }
    }

    fn one(&self) -> RatFunc {
        RatFunc { num: self.a.one(), den: self.a.one() }
    }

    fn add(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        if x.den == y.den {
            return self.make(self.a.add(&x.num, &y.num), x.den.clone());
        }
        let num = self.a.add(&self.a.mul(&x.num, &y.den), &self.a.mul(&y.num, &x.den));
        self.make(num, self.a.mul(&x.den, &y.den))
    }

    fn neg(&self, x: &RatFunc) -> RatFunc {
        RatFunc { num: self.a.neg(&x.num), den: x.den.clone() }
    }

    fn mul(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        if x.num.is_empty() || y.num.is_empty() {
            return self.zero();
        }
        self.make(self.a.mul(&x.num, &y.num), self.a.mul(&x.den, &y.den))
    }

    fn is_zero(&self, x: &RatFunc) -> bool {
        x.num.is_empty()
    }

    fn try_inv(&self, x: &RatFunc) -> Option<RatFunc> {
        if x.num.is_empty() {
            None
        } else {
            Some(self.make(x.den.clone(), x.num.clone()))
        }
    }

    fn from_int(&self, n: i64) -> RatFunc {
        self.from_poly(self.a.from_int(n))
    }

    fn fmt_elem(&self, x: &RatFunc) -> String {
        self.fmt_ratfunc(x)
    }
}

impl Field for RatFuncField {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::FieldSpec;

    #[test]
    fn expansion_of_inverse_polynomial() {
        let fq = FiniteField::new(&FieldSpec::prime(2).unwrap()).unwrap();
        let k = RatFuncField::new(fq.clone());
        let one = fq.one();
        // 1/(t+1) = u + u^2 + u^3 + ...
        let x = k.make(k.a.one(), k.a.from_coeffs(vec![one, one]));
        let l = k.to_laurent(&x, 5).unwrap();
        assert_eq!(l.val, 1);
        assert_eq!(l.coeffs.len(), 4);
        assert_eq!(k.u_valuation(&x), Some(1));
    }

    #[test]
    fn field_operations_reduce() {
        let fq = FiniteField::new(&FieldSpec::prime(3).unwrap()).unwrap();
        let k = RatFuncField::new(fq.clone());
        let t = k.from_poly(k.a.var_elem());
        let x = k.inv(&k.sub(&t, &k.one()));
        let y = k.mul(&x, &k.sub(&t, &k.one()));
        assert!(k.is_one(&y));
    }
}
