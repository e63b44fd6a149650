//! Finite fields GF(p^r) and their extensions, table driven.

use std::fmt;
use std::sync::Arc;

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Largest field order handled by the table representation.
pub const MAX_ORDER: u32 = 1 << 12;

/// Element of a [`FiniteField`], encoded as `sum c_i * b^i` over its digit field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FqElem(pub u32);

/// Prime, degree and modulus of GF(p^r); the modulus is monic over F_p in `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u32,
    pub r: u32,
    /// Ascending coefficients in F_p, length r+1, last entry 1.
    pub modulus: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    // remainder of a by monic b over F_p
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

impl FieldSpec {
    /// Validates primality of `p`, monicity, degree and irreducibility of the modulus.
    pub fn new(p: u32, r: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::Invalid("field degree must be positive".into()));
        }
        let q = (p as u64).pow(r);
        if q > MAX_ORDER as u64 {
            return Err(Error::Unsupported(format!("field order {q} exceeds {MAX_ORDER}")));
        }
        if modulus.len() != r as usize + 1 || *modulus.last().unwrap() != 1 {
            return Err(Error::Invalid(format!("modulus must be monic of degree {r}")));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Invalid("modulus coefficients must be reduced mod p".into()));
        }
        let spec = FieldSpec { p, r, modulus };
        if !spec.modulus_irreducible() {
            return Err(Error::Invalid(format!(
                "modulus {} is reducible over F_{p}",
                spec.modulus_string()
            )));
        }
        Ok(spec)
    }

    /// F_p with modulus `x`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, vec![0, 1])
    }

    /// The irreducible modulus that sorts first (descending coefficient vector order).
    pub fn conventional(p: u32, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if r == 1 {
            return Self::prime(p);
        }
        let count = (p as u64).pow(r);
        for idx in 0..count {
            // enumerate lower coefficients with the constant term varying slowest
            let mut lower = vec![0u32; r as usize];
            let mut k = idx;
            for i in 0..r as usize {
                lower[i] = (k % p as u64) as u32;
                k /= p as u64;
            }
            lower.reverse();
            let mut m = lower;
            m.push(1);
            if m[0] == 0 {
                continue;
            }
            let spec = FieldSpec { p, r, modulus: m };
            if spec.modulus_irreducible() {
                return Self::new(p, r, spec.modulus);
            }
        }
        Err(Error::Invalid(format!("no irreducible of degree {r} over F_{p}")))
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.r)
    }

    /// Trial division by every monic polynomial of degree at most r/2.
    pub fn modulus_irreducible(&self) -> bool {
        let p = self.p;
        let r = self.r as usize;
        if r == 1 {
            return true;
        }
        for d in 1..=r / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut div = Vec::with_capacity(d + 1);
                let mut k = idx;
                for _ in 0..d {
                    div.push((k % p as u64) as u32);
                    k /= p as u64;
                }
                div.push(1);
                if poly_mod_p(&self.modulus, &div, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub fn modulus_string(&self) -> String {
        fmt_fp_poly(&self.modulus, "x")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p, self.r, self.modulus_string())
    }
}

/// Formats ascending F_p coefficients as a polynomial in `var`.
pub fn fmt_fp_poly(c: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (e, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        terms.push(if e == 0 {
            a.to_string()
        } else if a == 1 {
            mono
        } else {
            format!("{a}*{mono}")
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

struct Inner {
    order: u32,
    p: u32,
    digit_base: u32,
    degree: u32,
    base: Option<FiniteField>,
    modulus: Vec<u32>,
    add_tab: Vec<u32>,
    neg_tab: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    spec: Option<FieldSpec>,
}

/// GF(Q) built either over F_p from a [`FieldSpec`] or over another `FiniteField`.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.order)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.order == other.0.order
                && self.0.modulus == other.0.modulus
                && self.0.digit_base == other.0.digit_base
                && self.0.base.as_ref().map(|b| b.order()) == other.0.base.as_ref().map(|b| b.order()))
    }
}

struct Digits<'a> {
    p: u32,
    base: Option<&'a FiniteField>,
}

impl Digits<'_> {
    fn add(&self, a: u32, b: u32) -> u32 {
        match self.base {
            None => (a + b) % self.p,
            Some(f) => f.add(&FqElem(a), &FqElem(b)).0,
        }
    }
    fn neg(&self, a: u32) -> u32 {
        match self.base {
            None => (self.p - a) % self.p,
            Some(f) => f.neg(&FqElem(a)).0,
        }
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        match self.base {
            None => a * b % self.p,
            Some(f) => f.mul(&FqElem(a), &FqElem(b)).0,
        }
    }
}

fn to_digits(mut x: u32, base: u32, n: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(n as usize);
    for _ in 0..n {
        d.push(x % base);
        x /= base;
    }
    d
}

fn from_digits(d: &[u32], base: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * base + c)
}

impl FiniteField {
    pub fn new(spec: &FieldSpec) -> Result<Self> {
        Self::build(spec.p, spec.p, spec.r, None, spec.modulus.clone(), Some(spec.clone()))
    }

    /// GF(q^m) as `base[y]/(modulus)`; `modulus` is monic over `base`, ascending.
    pub fn extension(base: &FiniteField, modulus: &[FqElem]) -> Result<Self> {
        let m = modulus.len() as u32 - 1;
        let order = (base.order() as u64).pow(m);
        if order > MAX_ORDER as u64 {
            return Err(Error::Unsupported(format!("extension field of order {order} too large")));
        }
        if modulus.last() != Some(&FqElem(1)) {
            return Err(Error::Invalid("extension modulus must be monic".into()));
        }
        Self::build(
            base.char_p(),
            base.order(),
            m,
            Some(base.clone()),
            modulus.iter().map(|c| c.0).collect(),
            None,
        )
    }

    fn build(
        p: u32,
        digit_base: u32,
        degree: u32,
        base: Option<FiniteField>,
        modulus: Vec<u32>,
        spec: Option<FieldSpec>,
    ) -> Result<Self> {
        let order = digit_base.pow(degree);
        let dig = Digits { p, base: base.as_ref() };
        let n = degree as usize;
        let raw_mul = |a: u32, b: u32| -> u32 {
            let da = to_digits(a, digit_base, degree);
            let db = to_digits(b, digit_base, degree);
            let mut prod = vec![0u32; 2 * n];
            for i in 0..n {
                if da[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    prod[i + j] = dig.add(prod[i + j], dig.mul(da[i], db[j]));
                }
            }
            for k in (n..2 * n).rev() {
                let c = prod[k];
                if c == 0 {
                    continue;
                }
                prod[k] = 0;
                for (i, &m) in modulus.iter().enumerate().take(n) {
                    let idx = k - n + i;
                    prod[idx] = dig.add(prod[idx], dig.neg(dig.mul(c, m)));
                }
            }
            from_digits(&prod[..n], digit_base)
        };
        let mut exp = Vec::new();
        let mut log = vec![0u32; order as usize];
        if order == 2 {
            exp.push(1);
        } else {
            let mut found = false;
            for g in 2..order {
                let mut x = 1u32;
                let mut seq = Vec::with_capacity(order as usize - 1);
                let mut ok = true;
                for k in 0..order - 1 {
                    seq.push(x);
                    x = raw_mul(x, g);
                    if x == 1 && k + 1 < order - 1 {
                        ok = false;
                        break;
                    }
                    if x == 0 {
                        return Err(Error::Invalid("modulus is reducible (zero divisor found)".into()));
                    }
                }
                if ok && x == 1 {
                    exp = seq;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::Invalid("no primitive element: modulus is reducible".into()));
            }
        }
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        let neg_tab: Vec<u32> = (0..order)
            .map(|a| {
                let d: Vec<u32> = to_digits(a, digit_base, degree).into_iter().map(|c| dig.neg(c)).collect();
                from_digits(&d, digit_base)
            })
            .collect();
        let mut add_tab = Vec::new();
        if order <= 256 {
            add_tab = vec![0u32; (order * order) as usize];
            for a in 0..order {
                let da = to_digits(a, digit_base, degree);
                for b in 0..order {
                    let db = to_digits(b, digit_base, degree);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| dig.add(x, y)).collect();
                    add_tab[(a * order + b) as usize] = from_digits(&s, digit_base);
                }
            }
        }
        Ok(FiniteField(Arc::new(Inner {
            order,
            p,
            digit_base,
            degree,
            base,
            modulus,
            add_tab,
            neg_tab,
            exp,
            log,
            spec,
        })))
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn char_p(&self) -> u32 {
        self.0.p
    }

    /// Degree over the digit field (F_p or the base field of an extension).
    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn base(&self) -> Option<&FiniteField> {
        self.0.base.as_ref()
    }

    pub fn spec(&self) -> Option<&FieldSpec> {
        self.0.spec.as_ref()
    }

    pub fn elem(&self, idx: u32) -> FqElem {
        debug_assert!(idx < self.0.order);
        FqElem(idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.0.order).map(FqElem)
    }

    /// Generator of the multiplicative group.
    pub fn primitive(&self) -> FqElem {
        FqElem(self.0.exp[if self.0.order == 2 { 0 } else { 1 }])
    }

    /// a^(p^k).
    pub fn frob_p(&self, a: &FqElem, k: u32) -> FqElem {
        self.pow(a, (self.0.p as u64).pow(k))
    }

    /// a^(b^k) with b the digit-field order (relative Frobenius for extensions).
    pub fn frob_rel(&self, a: &FqElem, k: u32) -> FqElem {
        let mut x = *a;
        for _ in 0..k {
            x = self.pow(&x, self.0.digit_base as u64);
        }
        x
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: &FqElem) -> u64 {
        let n = (self.0.order - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        n / gcd(n, l)
    }

    /// Element of multiplicative order `n` (n must divide Q-1).
    pub fn root_of_unity(&self, n: u64) -> Option<FqElem> {
        let m = (self.0.order - 1) as u64;
        if n == 0 || m % n != 0 {
            return None;
        }
        let k = m / n;
        Some(FqElem(self.0.exp[(k % m) as usize]))
    }

    /// Embeds an element of the digit field (constant polynomial).
    pub fn embed_digit(&self, a: FqElem) -> FqElem {
        a
    }

    pub fn digits(&self, a: &FqElem) -> Vec<u32> {
        to_digits(a.0, self.0.digit_base, self.0.degree)
    }

    pub fn from_digit_vec(&self, d: &[u32]) -> FqElem {
        FqElem(from_digits(d, self.0.digit_base))
    }

    /// True when the element lies in the digit field.
    pub fn in_digit_field(&self, a: &FqElem) -> bool {
        a.0 < self.0.digit_base
    }

    pub fn fmt_elem_str(&self, a: &FqElem) -> String {
        let d = self.digits(a);
        match &self.0.base {
            None => {
                if self.0.degree == 1 {
                    a.0.to_string()
                } else {
                    fmt_fp_poly(&d, "x")
                }
            }
            Some(b) => {
                let mut terms = Vec::new();
                for (e, &c) in d.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let cs = b.fmt_elem_str(&FqElem(c));
                    let cs = if cs.contains('+') { format!("({cs})") } else { cs };
                    terms.push(match e {
                        0 => cs,
                        1 if c == 1 => "y".into(),
                        1 => format!("{cs}*y"),
                        _ if c == 1 => format!("y^{e}"),
                        _ => format!("{cs}*y^{e}"),
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
        }
    }

    /// Parses the canonical `x`-polynomial notation (e.g. `x^2+2`), also accepting `-`.
    pub fn parse_elem(&self, s: &str) -> Result<FqElem> {
        if self.0.base.is_some() {
            return Err(Error::Unsupported("parsing extension-field elements".into()));
        }
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Invalid("empty field element".into()));
        }
        let p = self.0.p as i64;
        let mut coeffs = vec![0i64; self.0.degree as usize + 1];
        let mut acc = self.zero();
        for (sign, term) in split_signed_terms(&s)? {
            let mut c: i64 = 1;
            let mut e: u32 = 0;
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::Invalid(format!("bad field element '{s}'")));
                }
                if let Some(rest) = factor.strip_prefix('x') {
                    if rest.is_empty() {
                        e += 1;
                    } else if let Some(k) = rest.strip_prefix('^') {
                        e += k.parse::<u32>().map_err(|_| Error::Invalid(format!("bad exponent in '{s}'")))?;
                    } else {
                        return Err(Error::Invalid(format!("bad field element '{s}'")));
                    }
                } else {
                    let v: i64 = factor.parse().map_err(|_| Error::Invalid(format!("bad field element '{s}'")))?;
                    c = c * v.rem_euclid(p) % p;
                }
            }
            let c = (sign * c).rem_euclid(p);
            if (e as usize) < coeffs.len() - 1 {
                coeffs[e as usize] = (coeffs[e as usize] + c) % p;
            } else {
                // reduce x^e through the field
                let xe = self.pow(&self.x_elem(), e as u64);
                let term = self.mul(&xe, &self.from_int(c));
                acc = self.add(&acc, &term);
            }
        }
        let d: Vec<u32> = coeffs[..self.0.degree as usize].iter().map(|&c| c as u32).collect();
        Ok(self.add(&acc, &FqElem(from_digits(&d, self.0.digit_base))))
    }

    /// The class of the formal generator `x` (equals the integer 0 only when r = 1 and modulus is x).
    pub fn x_elem(&self) -> FqElem {
        if self.0.degree == 1 {
            // x = -m0 in F_p[x]/(x + m0)
            FqElem(self.0.neg_tab[self.0.modulus[0] as usize])
        } else {
            FqElem(self.0.digit_base)
        }
    }
}

/// Splits `a+b-c` at top level (outside parentheses) into signed terms.
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut sign = 1i64;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && prev != Some('^') => {
                if !cur.is_empty() {
                    out.push((sign, std::mem::take(&mut cur)));
                } else if ch == '+' && prev.is_some() {
                    return Err(Error::Invalid(format!("empty term in '{s}'")));
                }
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => cur.push(ch),
        }
        prev = Some(ch);
    }
    if depth != 0 {
        return Err(Error::Invalid(format!("unbalanced parentheses in '{s}'")));
    }
    if cur.is_empty() {
        return Err(Error::Invalid(format!("dangling operator in '{s}'")));
    }
    out.push((sign, cur));
    Ok(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Ring for FiniteField {
    type Elem = FqElem;

    #[inline]
    fn zero(&self) -> FqElem {
        FqElem(0)
    }

    #[inline]
    fn one(&self) -> FqElem {
        FqElem(1)
    }

    #[inline]
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let i = &self.0;
        if !i.add_tab.is_empty() {
            return FqElem(i.add_tab[(a.0 * i.order + b.0) as usize]);
        }
        let dig = Digits { p: i.p, base: i.base.as_ref() };
        let da = to_digits(a.0, i.digit_base, i.degree);
        let db = to_digits(b.0, i.digit_base, i.degree);
        let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| dig.add(x, y)).collect();
        FqElem(from_digits(&s, i.digit_base))
    }

    #[inline]
    fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(self.0.neg_tab[a.0 as usize])
    }

    #[inline]
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        let i = &self.0;
        let n = i.order - 1;
        let s = i.log[a.0 as usize] + i.log[b.0 as usize];
        FqElem(i.exp[(if s >= n { s - n } else { s }) as usize])
    }

    #[inline]
    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }

    fn try_inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        let i = &self.0;
        let n = i.order - 1;
        let l = i.log[a.0 as usize];
        Some(FqElem(i.exp[((n - l) % n) as usize]))
    }

    fn from_int(&self, n: i64) -> FqElem {
        let p = self.0.p as i64;
        FqElem(n.rem_euclid(p) as u32)
    }

    fn fmt_elem(&self, a: &FqElem) -> String {
        self.fmt_elem_str(a)
    }

    fn pow(&self, a: &FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem(1);
        }
        if a.0 == 0 {
            return FqElem(0);
        }
        let n = (self.0.order - 1) as u64;
        let l = self.0.log[a.0 as usize] as u64;
        FqElem(self.0.exp[((l * (e % n)) % n) as usize])
    }
}

impl Field for FiniteField {}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_specs(max_q: u32) -> Vec<FieldSpec> {
        let mut out = Vec::new();
        for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
            let mut r = 1;
            while p.pow(r) <= max_q {
                out.push(FieldSpec::conventional(p, r).unwrap());
                r += 1;
            }
        }
        out
    }

    #[test]
    fn field_axioms_exhaustive_up_to_64() {
        for spec in all_specs(64) {
            let f = FiniteField::new(&spec).unwrap();
            let els: Vec<FqElem> = f.elements().collect();
            for a in &els {
                assert_eq!(f.add(a, &f.zero()), *a);
                assert_eq!(f.mul(a, &f.one()), *a);
                assert!(f.is_zero(&f.add(a, &f.neg(a))));
                if !f.is_zero(a) {
                    assert!(f.is_one(&f.mul(a, &f.inv(a))));
                }
                for b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            // associativity and distributivity over all triples is O(q^3); q <= 64 keeps it cheap
            for a in &els {
                for b in &els {
                    let ab = f.mul(a, b);
                    let s = f.add(a, b);
                    for c in &els {
                        assert_eq!(f.mul(&ab, c), f.mul(a, &f.mul(b, c)));
                        assert_eq!(f.add(&s, c), f.add(a, &f.add(b, c)));
                        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&ab, &f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_everything() {
        for spec in all_specs(64) {
            let f = FiniteField::new(&spec).unwrap();
            let q = f.order() as u64;
            for a in f.elements() {
                assert_eq!(f.pow(&a, q), a);
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(FieldSpec::new(2, 2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::new(4, 1, vec![0, 1]).is_err());
        assert!(FieldSpec::new(2, 2, vec![1, 1, 1]).is_ok());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let spec = FieldSpec::new(3, 2, vec![1, 0, 1]).unwrap();
        let f = FiniteField::new(&spec).unwrap();
        for a in f.elements() {
            let s = f.fmt_elem_str(&a);
            assert_eq!(f.parse_elem(&s).unwrap(), a, "{s}");
        }
        let x = f.parse_elem("x").unwrap();
        assert_eq!(f.parse_elem("x^2").unwrap(), f.mul(&x, &x));
        assert_eq!(f.fmt_elem_str(&f.parse_elem("x^2").unwrap()), "2");
    }

    #[test]
    fn extension_contains_base() {
        let fq = FiniteField::new(&FieldSpec::prime(3).unwrap()).unwrap();
        // y^2 + 1 irreducible over F_3
        let ext = FiniteField::extension(&fq, &[FqElem(1), FqElem(0), FqElem(1)]).unwrap();
        assert_eq!(ext.order(), 9);
        for a in fq.elements() {
            for b in fq.elements() {
                assert_eq!(ext.mul(&a, &b), fq.mul(&a, &b));
                assert_eq!(ext.add(&a, &b), fq.add(&a, &b));
            }
        }
        let z = ext.root_of_unity(4).unwrap();
        assert_eq!(ext.mult_order(&z), 4);
    }
}
