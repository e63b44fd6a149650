//! K_infinity = K (x) k_infinity in w-coordinates: one Laurent series in u = 1/t per basis element.

use super::extension::{ExtensionData, OkElem};
use super::reduction::TamingModule;
use crate::algebra::{APoly, Field, FiniteField, FqElem, Laurent, LaurentRing, Ring, EXACT};
use crate::error::{Error, Result};

pub type KInf = Vec<Laurent<FqElem>>;

#[derive(Clone, Debug)]
pub struct KInfOps {
    pub x: ExtensionData,
    pub lr: LaurentRing<FiniteField>,
    /// w_i^q in w-coordinates.
    wq: Vec<OkElem>,
}

impl KInfOps {
    pub fn new(x: &ExtensionData) -> Self {
        let q = x.fq.order() as u64;
        let wq = (0..x.d).map(|i| x.pow(&x.basis(i), q)).collect();
        KInfOps { x: x.clone(), lr: LaurentRing::new(x.fq.clone(), EXACT), wq }
    }

    pub fn d(&self) -> usize {
        self.x.d
    }

    pub fn zero(&self) -> KInf {
        vec![self.lr.zero(); self.x.d]
    }

    pub fn from_ok(&self, y: &OkElem) -> KInf {
        y.iter().map(|c| self.lr.from_poly_t(c)).collect()
    }

    /// c * w_i for a scalar c in k_infinity.
    pub fn scalar_basis(&self, c: Laurent<FqElem>, i: usize) -> KInf {
        let mut v = self.zero();
        v[i] = c;
        v
    }

    pub fn add(&self, a: &KInf, b: &KInf) -> KInf {
        a.iter().zip(b).map(|(x, y)| self.lr.add(x, y)).collect()
    }

    pub fn sub(&self, a: &KInf, b: &KInf) -> KInf {
        a.iter().zip(b).map(|(x, y)| self.lr.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &KInf) -> KInf {
        a.iter().map(|x| self.lr.neg(x)).collect()
    }

    pub fn scale(&self, a: &KInf, c: &Laurent<FqElem>) -> KInf {
        a.iter().map(|x| self.lr.mul(x, c)).collect()
    }

    pub fn scale_a(&self, a: &KInf, c: &APoly) -> KInf {
        self.scale(a, &self.lr.from_poly_t(c))
    }

    pub fn truncate(&self, a: &KInf, prec: i64) -> KInf {
        a.iter().map(|x| self.lr.truncate(x, prec)).collect()
    }

    /// Multiplication through the structure constants.
    pub fn mul(&self, a: &KInf, b: &KInf) -> KInf {
        let d = self.x.d;
        let mut out = self.zero();
        for i in 0..d {
            if a[i].coeffs.is_empty() && a[i].is_exact() {
                continue;
            }
            for j in 0..d {
                if b[j].coeffs.is_empty() && b[j].is_exact() {
                    continue;
                }
                let c = self.lr.mul(&a[i], &b[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    let m = &self.x.mult[i][j][k];
                    if !m.is_empty() {
                        *o = self.lr.add(o, &self.lr.mul(&c, &self.lr.from_poly_t(m)));
                    }
                }
            }
        }
        out
    }

    /// Multiplication by an element of O_K.
    pub fn mul_ok(&self, a: &KInf, y: &OkElem) -> KInf {
        self.mul(a, &self.from_ok(y))
    }

    /// The q-power map: sum c_i w_i -> sum c_i(u^q) w_i^q.
    pub fn tau(&self, a: &KInf) -> KInf {
        let q = self.x.fq.order() as i64;
        let mut out = self.zero();
        for (i, c) in a.iter().enumerate() {
            if c.coeffs.is_empty() && c.is_exact() {
                continue;
            }
            let ci = self.lr.inflate(c, q, |e| *e);
            let term = self.scale(&self.from_ok(&self.wq[i]), &ci);
            out = self.add(&out, &term);
        }
        out
    }

    pub fn tau_k(&self, a: &KInf, k: usize) -> KInf {
        let mut out = a.clone();
        for _ in 0..k {
            out = self.tau(&out);
        }
        out
    }

    pub fn apply_g(&self, g: usize, a: &KInf) -> KInf {
        let m = &self.x.gaction[g];
        let mut out = self.zero();
        for (j, c) in a.iter().enumerate() {
            let col: OkElem = m.col(j);
            out = self.add(&out, &self.scale(&self.from_ok(&col), c));
        }
        out
    }

    /// Smallest u-valuation over coordinates (None for zero).
    pub fn valuation(&self, a: &KInf) -> Option<i64> {
        a.iter().filter_map(|x| x.valuation()).min()
    }

    pub fn precision(&self, a: &KInf) -> i64 {
        a.iter().map(|x| x.prec).min().unwrap_or(EXACT)
    }

    /// The O_K-part (nonnegative t-powers per coordinate).
    pub fn integral_part(&self, a: &KInf) -> Result<OkElem> {
        a.iter().map(|x| self.lr.poly_part(x)).collect()
    }

    /// Representative of a modulo M with all coordinates of x/xi in u^1 F_q[[u]].
    pub fn reduce_mod_lattice(&self, a: &KInf, m: &TamingModule) -> Result<KInf> {
        if self.precision(a) <= 0 {
            return Err(Error::InsufficientPrecision("reduction mod the lattice needs precision > 0".into()));
        }
        if m.is_all_of_ok() {
            let c = &m.xi.coeffs[0];
            let a = if *c == self.x.fq.one() { a.clone() } else { self.scale(a, &self.lr.scalar(self.x.fq.inv(c))) };
            let r: KInf = a.iter().map(|x| self.lr.frac_part(x)).collect();
            return Ok(if *c == self.x.fq.one() { r } else { self.scale(&r, &self.lr.scalar(*c)) });
        }
        let xi = self.lr.from_poly_t(&m.xi);
        let deg = m.xi.degree().unwrap() as i64;
        let prec = self.precision(a);
        if prec.saturating_add(deg) <= 0 {
            return Err(Error::InsufficientPrecision("precision lost dividing by xi".into()));
        }
        let low = self.valuation(a).unwrap_or(0).min(0);
        let target = prec.saturating_add(2 * deg - low).min(EXACT);
        let xinv = self.lr.inverse_to(&xi, target)?;
        let divided: KInf = a.iter().map(|x| self.lr.frac_part(&self.lr.mul(x, &xinv))).collect();
        Ok(self.truncate(&self.scale(&divided, &xi), prec))
    }

    pub fn fmt(&self, a: &KInf) -> String {
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.coeffs.is_empty())
            .map(|(i, x)| format!("({})*w{}", self.lr.fmt_laurent(x), i + 1))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, PolyRing};
    use crate::fields::extension::{carlitz_cyclotomic_deg1, trivial_extension};

    fn f(p: u32) -> FiniteField {
        FiniteField::new(&FieldSpec::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn trivial_reduce_drops_polynomial_part() {
        let fq = f(2);
        let x = trivial_extension(&fq);
        let ops = KInfOps::new(&x);
        let lr = &ops.lr;
        let one = fq.one();
        // t^2 + 1 + u
        let v = lr.make(-2, vec![one, FqElem(0), one, one], 10);
        let m = TamingModule::full(&x.a());
        let r = ops.reduce_mod_lattice(&vec![v], &m).unwrap();
        assert_eq!(r[0], lr.make(1, vec![one], 10));
        assert_eq!(ops.reduce_mod_lattice(&r, &m).unwrap(), r);
    }

    #[test]
    fn cyclotomic_lambda_cubed_is_integral() {
        let fq = f(3);
        let a = PolyRing::new(fq.clone());
        let x = carlitz_cyclotomic_deg1(&fq, &a.var_elem()).unwrap();
        let ops = KInfOps::new(&x);
        let lam = ops.from_ok(&x.basis(1));
        let l3 = ops.mul(&ops.mul(&lam, &lam), &lam);
        let r = ops.reduce_mod_lattice(&l3, &TamingModule::full(&a)).unwrap();
        assert!(r.iter().all(|c| c.coeffs.is_empty()));
        // tau(lambda) = lambda^3 = -t lambda
        assert_eq!(ops.tau(&lam), ops.scale_a(&lam, &a.neg(&a.var_elem())));
    }

    #[test]
    fn xi_reduction_is_idempotent() {
        let fq = f(3);
        let x = trivial_extension(&fq);
        let a = x.a();
        let ops = KInfOps::new(&x);
        let m = TamingModule { xi: a.var_elem() };
        let v = vec![ops.lr.make(-3, vec![fq.one(), fq.one(), fq.one(), fq.one(), fq.one()], 12)];
        let r = ops.reduce_mod_lattice(&v, &m).unwrap();
        // t^3 + t^2 + t + 1 + u: remove t^3+t^2+t, keep 1 + u
        assert_eq!(r[0], ops.lr.make(0, vec![fq.one(), fq.one()], 12));
        assert_eq!(ops.reduce_mod_lattice(&r, &m).unwrap(), r);
    }
}
