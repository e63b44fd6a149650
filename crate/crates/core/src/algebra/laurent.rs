//! Laurent series in u = 1/t with explicit absolute precision.

use super::poly::{paren, Poly, PolyRing};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Precision marker for values known exactly (finite Laurent polynomials).
pub const EXACT: i64 = i64::MAX / 4;

/// Coefficient of `u^(val+i)` is `coeffs[i]`; coefficients of exponents `>= prec` are unknown.
///
/// Canonical form: first and last stored coefficients nonzero, `val + len <= prec`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<E> {
    pub val: i64,
    pub coeffs: Vec<E>,
    pub prec: i64,
}

impl<E> Laurent<E> {
    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Valuation, or the precision when no nonzero coefficient is known.
    pub fn val_or_prec(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            self.val
        }
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.first()
    }
}

fn padd(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        a + b
    }
}

#[derive(Clone, Debug)]
pub struct LaurentRing<R: Ring> {
    pub base: R,
    /// Absolute precision given to inverses of exact values.
    pub default_prec: i64,
}

impl<R: Ring> LaurentRing<R> {
    pub fn new(base: R, default_prec: i64) -> Self {
        LaurentRing { base, default_prec }
    }

    /// Normalizes raw data: drops unknown, leading and trailing zero coefficients.
    pub fn make(&self, val: i64, mut coeffs: Vec<R::Elem>, prec: i64) -> Laurent<R::Elem> {
        if prec < EXACT {
            let keep = (prec - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !self.base.is_zero(c));
        match lead {
            None => Laurent { val: 0, coeffs: vec![], prec },
            Some(k) => {
                coeffs.drain(..k);
                Laurent { val: val + k as i64, coeffs, prec }
            }
        }
    }

    pub fn exact(&self, val: i64, coeffs: Vec<R::Elem>) -> Laurent<R::Elem> {
        self.make(val, coeffs, EXACT)
    }

    pub fn scalar(&self, c: R::Elem) -> Laurent<R::Elem> {
        self.make(0, vec![c], EXACT)
    }

    /// `c * u^e`.
    pub fn monomial(&self, c: R::Elem, e: i64) -> Laurent<R::Elem> {
        self.make(e, vec![c], EXACT)
    }

    /// Zero known up to `u^prec`.
    pub fn zero_to(&self, prec: i64) -> Laurent<R::Elem> {
        Laurent { val: 0, coeffs: vec![], prec }
    }

    /// Coefficient of `u^j`; errors when `j` is beyond precision.
    pub fn coeff(&self, x: &Laurent<R::Elem>, j: i64) -> Result<R::Elem> {
        if j >= x.prec {
            return Err(Error::InsufficientPrecision(format!(
                "coefficient of u^{j} requested, precision {}",
                x.prec
            )));
        }
        Ok(self.coeff_or_zero(x, j))
    }

    /// Coefficient of `u^j`, treating unknown coefficients as zero.
    pub fn coeff_or_zero(&self, x: &Laurent<R::Elem>, j: i64) -> R::Elem {
        if j < x.val {
            return self.base.zero();
        }
        x.coeffs
            .get((j - x.val) as usize)
            .cloned()
            .unwrap_or_else(|| self.base.zero())
    }

    pub fn truncate(&self, x: &Laurent<R::Elem>, prec: i64) -> Laurent<R::Elem> {
        self.make(x.val, x.coeffs.clone(), prec.min(x.prec))
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, x: &Laurent<R::Elem>, k: i64) -> Laurent<R::Elem> {
        Laurent { val: x.val + k, coeffs: x.coeffs.clone(), prec: padd(x.prec, k) }
    }

    pub fn scale(&self, x: &Laurent<R::Elem>, c: &R::Elem) -> Laurent<R::Elem> {
        self.make(x.val, x.coeffs.iter().map(|a| self.base.mul(a, c)).collect(), x.prec)
    }

    /// Substitutes `u -> u^k` and maps coefficients through `f`.
    pub fn inflate<F: Fn(&R::Elem) -> R::Elem>(&self, x: &Laurent<R::Elem>, k: i64, f: F) -> Laurent<R::Elem> {
        assert!(k >= 1);
        if x.coeffs.is_empty() {
            let prec = if x.is_exact() { EXACT } else { x.prec * k };
            return Laurent { val: 0, coeffs: vec![], prec };
        }
        let mut v = vec![self.base.zero(); (x.coeffs.len() - 1) * k as usize + 1];
        for (i, c) in x.coeffs.iter().enumerate() {
            v[i * k as usize] = f(c);
        }
        let prec = if x.is_exact() { EXACT } else { x.prec * k };
        self.make(x.val * k, v, prec)
    }

    /// Maps into another coefficient ring.
    pub fn map_into<S: Ring, F: Fn(&R::Elem) -> S::Elem>(
        &self,
        x: &Laurent<R::Elem>,
        target: &LaurentRing<S>,
        f: F,
    ) -> Laurent<S::Elem> {
        target.make(x.val, x.coeffs.iter().map(f).collect(), x.prec)
    }

    /// Embeds a polynomial in t (t = 1/u).
    pub fn from_poly_t(&self, p: &Poly<R::Elem>) -> Laurent<R::Elem> {
        match p.degree() {
            None => self.zero(),
            Some(d) => self.exact(-(d as i64), p.coeffs.iter().rev().cloned().collect()),
        }
    }

    /// The part with nonnegative powers of t, as a polynomial in t.
    pub fn poly_part(&self, x: &Laurent<R::Elem>) -> Result<Poly<R::Elem>> {
        if x.prec <= 0 {
            return Err(Error::InsufficientPrecision(format!(
                "polynomial part needs precision > 0, have {}",
                x.prec
            )));
        }
        let pr = PolyRing::new(self.base.clone());
        if x.val > 0 || x.coeffs.is_empty() {
            return Ok(pr.zero());
        }
        let deg = (-x.val) as usize;
        let mut v = vec![self.base.zero(); deg + 1];
        for (k, slot) in v.iter_mut().enumerate() {
            *slot = self.coeff_or_zero(x, -(k as i64));
        }
        Ok(pr.trim(v))
    }

    /// The part with strictly negative powers of t (exponents of u at least 1).
    pub fn frac_part(&self, x: &Laurent<R::Elem>) -> Laurent<R::Elem> {
        if x.val >= 1 {
            return x.clone();
        }
        let skip = (1 - x.val) as usize;
        let coeffs: Vec<R::Elem> = x.coeffs.iter().skip(skip).cloned().collect();
        self.make(1, coeffs, x.prec)
    }

    /// Equality modulo `u^n`; errors if either side is not known that far.
    pub fn eq_to(&self, a: &Laurent<R::Elem>, b: &Laurent<R::Elem>, n: i64) -> Result<bool> {
        if a.prec < n || b.prec < n {
            return Err(Error::InsufficientPrecision(format!(
                "comparison mod u^{n} with precisions {} and {}",
                a.prec, b.prec
            )));
        }
        let d = self.sub(a, b);
        Ok(d.val_or_prec() >= n || d.coeffs.is_empty())
    }

    /// Equality at the common precision.
    pub fn eq_common(&self, a: &Laurent<R::Elem>, b: &Laurent<R::Elem>) -> bool {
        let d = self.sub(a, b);
        d.coeffs.is_empty()
    }

    /// Inverse to absolute precision `target` (capped by the input's own precision).
    pub fn inverse_to(&self, x: &Laurent<R::Elem>, target: i64) -> Result<Laurent<R::Elem>> {
        let lead = match x.leading() {
            Some(c) => c,
            None => {
                return Err(if x.is_exact() {
                    Error::NotInvertible("zero has no inverse".into())
                } else {
                    Error::InsufficientPrecision("no nonzero coefficient within precision".into())
                })
            }
        };
        let ci = match self.base.try_inv(lead) {
            Some(c) => c,
            None => {
                let has_unit = x.coeffs.iter().any(|c| self.base.is_unit(c));
                return Err(if has_unit {
                    Error::NotInvertible(
                        "leading coefficient is not a unit (a later coefficient is; invert componentwise)".into(),
                    )
                } else if x.is_exact() {
                    Error::NotInvertible("no coefficient is a unit".into())
                } else {
                    Error::InsufficientPrecision("no unit coefficient within precision".into())
                });
            }
        };
        let v = x.val;
        let own = if x.is_exact() { EXACT } else { x.prec - 2 * v };
        let prec = own.min(target);
        let n = (prec + v).max(0) as usize;
        let mut b: Vec<R::Elem> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                b.push(ci.clone());
                continue;
            }
            let mut acc = self.base.zero();
            for i in 1..=k.min(x.coeffs.len() - 1) {
                acc = self.base.add(&acc, &self.base.mul(&x.coeffs[i], &b[k - i]));
            }
            b.push(self.base.neg(&self.base.mul(&ci, &acc)));
        }
        Ok(self.make(-v, b, prec))
    }

    /// Inverse at the natural precision (the default precision for exact inputs).
    pub fn laurent_inverse(&self, x: &Laurent<R::Elem>) -> Result<Laurent<R::Elem>> {
        let target = if x.is_exact() { self.default_prec } else { EXACT };
        self.inverse_to(x, target)
    }

    /// Canonical text form in the variable t.
    pub fn fmt_laurent(&self, x: &Laurent<R::Elem>) -> String {
        let mut terms = Vec::new();
        for (i, c) in x.coeffs.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            let te = -(x.val + i as i64);
            let cs = paren(&self.base.fmt_elem(c));
            let mono = match te {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{te}"),
            };
            terms.push(if te == 0 {
                cs
            } else if self.base.is_one(c) {
                mono
            } else {
                format!("{cs}*{mono}")
            });
        }
        if !x.is_exact() {
            terms.push(format!("O(t^{})", -x.prec));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl<R: Ring> Ring for LaurentRing<R> {
    type Elem = Laurent<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Laurent { val: 0, coeffs: vec![], prec: EXACT }
    }

    fn one(&self) -> Self::Elem {
        self.scalar(self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let prec = a.prec.min(b.prec);
        if a.coeffs.is_empty() {
            return self.truncate(b, prec);
        }
        if b.coeffs.is_empty() {
            return self.truncate(a, prec);
        }
        let lo = a.val.min(b.val);
        let hi = (a.val + a.coeffs.len() as i64).max(b.val + b.coeffs.len() as i64).min(prec);
        if hi <= lo {
            return self.zero_to(prec);
        }
        let mut v = Vec::with_capacity((hi - lo) as usize);
        for e in lo..hi {
            v.push(self.base.add(&self.coeff_or_zero(a, e), &self.coeff_or_zero(b, e)));
        }
        self.make(lo, v, prec)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Laurent { val: a.val, coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(), prec: a.prec }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let va = a.val_or_prec();
        let vb = b.val_or_prec();
        let prec = padd(a.prec, vb).min(padd(b.prec, va));
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero_to(prec);
        }
        let base_e = a.val + b.val;
        let mut n = a.coeffs.len() + b.coeffs.len() - 1;
        if prec < EXACT {
            n = n.min((prec - base_e).max(0) as usize);
        }
        let mut v = vec![self.base.zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= n {
                break;
            }
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(n - i) {
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(x, y));
            }
        }
        self.make(base_e, v, prec)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.is_empty()
    }

    fn try_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.laurent_inverse(a).ok()
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String {
        self.fmt_laurent(a)
    }
}
