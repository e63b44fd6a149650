//! Dense univariate polynomials over a coefficient ring context.

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Ascending coefficient list, trimmed so the last entry is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly<E> {
    pub coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    pub base: R,
    /// Variable name used when printing.
    pub var: &'static str,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base, var: "t" }
    }

    pub fn with_var(base: R, var: &'static str) -> Self {
        PolyRing { base, var }
    }

    pub fn trim(&self, mut v: Vec<R::Elem>) -> Poly<R::Elem> {
        while let Some(c) = v.last() {
            if self.base.is_zero(c) {
                v.pop();
            } else {
                break;
            }
        }
        Poly { coeffs: v }
    }

    pub fn from_coeffs(&self, v: Vec<R::Elem>) -> Poly<R::Elem> {
        self.trim(v)
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.trim(vec![c])
    }

    /// The variable itself.
    pub fn var_elem(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = c;
        self.trim(v)
    }

    pub fn coeff(&self, p: &Poly<R::Elem>, k: usize) -> R::Elem {
        p.coeffs.get(k).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn eval(&self, p: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        p.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    pub fn scale(&self, p: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.trim(p.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, p: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if p.is_empty() {
            return p.clone();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend(p.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Applies `f` to every coefficient.
    pub fn map<F: Fn(&R::Elem) -> R::Elem>(&self, p: &Poly<R::Elem>, f: F) -> Poly<R::Elem> {
        self.trim(p.coeffs.iter().map(f).collect())
    }

    /// Substitutes `var -> var^e`.
    pub fn inflate(&self, p: &Poly<R::Elem>, e: usize) -> Poly<R::Elem> {
        if p.is_empty() || e == 1 {
            return p.clone();
        }
        let mut v = vec![self.base.zero(); (p.len() - 1) * e + 1];
        for (i, c) in p.coeffs.iter().enumerate() {
            v[i * e] = c.clone();
        }
        self.trim(v)
    }

    /// Remainder on division by `var^n`.
    pub fn truncate(&self, p: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        self.trim(p.coeffs.iter().take(n).cloned().collect())
    }

    pub fn is_monic(&self, p: &Poly<R::Elem>) -> bool {
        p.leading().is_some_and(|c| self.base.is_one(c))
    }

    /// Division with remainder; the divisor must have a unit leading coefficient.
    pub fn divrem(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
        let lb = b
            .leading()
            .ok_or_else(|| Error::NotInvertible("polynomial division by zero".into()))?;
        let inv = self
            .base
            .try_inv(lb)
            .ok_or_else(|| Error::NotInvertible("leading coefficient of divisor is not a unit".into()))?;
        let db = b.len() - 1;
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly { coeffs: vec![] }, a.clone()));
        }
        let mut quo = vec![self.base.zero(); r.len() - db];
        for k in (0..quo.len()).rev() {
            let c = self.base.mul(&r[k + db], &inv);
            if self.base.is_zero(&c) {
                continue;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[k + i] = self.base.sub(&r[k + i], &self.base.mul(&c, bc));
            }
            quo[k] = c;
        }
        r.truncate(db);
        Ok((self.trim(quo), self.trim(r)))
    }

    pub fn rem(&self, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Formal derivative.
    pub fn derivative(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.trim(
            p.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.base.mul(&self.base.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Formats with the ring's variable name, descending exponents.
    pub fn fmt_poly(&self, p: &Poly<R::Elem>) -> String {
        let mut terms = Vec::new();
        for (e, c) in p.coeffs.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let cs = paren(&self.base.fmt_elem(c));
            let mono = match e {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{e}", self.var),
            };
            terms.push(if e == 0 {
                cs
            } else if self.base.is_one(c) {
                mono
            } else {
                format!("{cs}*{mono}")
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Wraps compound coefficient strings in parentheses.
pub fn paren(s: &str) -> String {
    let inner = s.strip_prefix('-').unwrap_or(s);
    if inner.contains('+') || inner.contains(' ') || inner.contains('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly { coeffs: vec![] }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => self.base.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            });
        }
        self.trim(v)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return self.zero();
        }
        let mut v = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(x, y));
            }
        }
        self.trim(v)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }

    /// Only constant units are detected; nilpotent higher coefficients are not inverted here.
    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.len() == 1 {
            self.base.try_inv(&a.coeffs[0]).map(|c| self.constant(c))
        } else {
            None
        }
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String {
        self.fmt_poly(a)
    }
}

impl<F: Field> PolyRing<F> {
    pub fn make_monic(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        match p.leading() {
            None => p.clone(),
            Some(l) => self.scale(p, &self.base.inv(l)),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_empty() {
            let r = self.rem(&x, &y).expect("nonzero divisor over a field");
            x = y;
            y = r;
        }
        self.make_monic(&x)
    }

    /// Returns (g, s, t) with s*a + t*b = g monic.
    pub fn xgcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1).expect("nonzero divisor over a field");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.base.inv(&l);
                (self.scale(&r0, &li), self.scale(&s0, &li), self.scale(&t0, &li))
            }
        }
    }

    /// Inverse of `a` modulo `m`, if coprime.
    pub fn inv_mod(&self, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (g, s, _) = self.xgcd(a, m);
        if g.len() == 1 {
            Some(self.rem(&s, m).expect("nonzero modulus"))
        } else {
            None
        }
    }

    pub fn mul_mod(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, a: &Poly<F::Elem>, mut e: u64, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = self.rem(&self.one(), m).expect("nonzero modulus");
        let mut base = self.rem(a, m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul_mod(&base, &base, m);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::{FieldSpec, FiniteField};

    fn a(q_p: u32) -> PolyRing<FiniteField> {
        PolyRing::new(FiniteField::new(&FieldSpec::prime(q_p).unwrap()).unwrap())
    }

    fn p(r: &PolyRing<FiniteField>, c: &[i64]) -> Poly<crate::algebra::fq::FqElem> {
        r.from_coeffs(c.iter().map(|&x| r.base.from_int(x)).collect())
    }

    #[test]
    fn format_follows_canonical_form() {
        let r = a(3);
        assert_eq!(r.fmt_poly(&p(&r, &[1, 2, 0, 1])), "t^3+2*t+1");
        assert_eq!(r.fmt_poly(&r.zero()), "0");
    }

    #[test]
    fn divrem_reconstructs() {
        let r = a(5);
        let x = p(&r, &[1, 2, 3, 4, 0, 1]);
        let y = p(&r, &[3, 0, 2]);
        let (q, rem) = r.divrem(&x, &y).unwrap();
        assert_eq!(r.add(&r.mul(&q, &y), &rem), x);
        assert!(rem.len() < y.len());
    }

    #[test]
    fn xgcd_bezout() {
        let r = a(3);
        let x = p(&r, &[1, 1, 0, 1]);
        let y = p(&r, &[2, 0, 1]);
        let (g, s, t) = r.xgcd(&x, &y);
        assert_eq!(r.add(&r.mul(&s, &x), &r.mul(&t, &y)), g);
    }
}
