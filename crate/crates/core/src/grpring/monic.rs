//! Monic representatives in F_q((u))[G] and componentwise Laurent arithmetic.

use super::characters::GroupAlgebra;
use super::ring::{GrElem, GroupRing};
use crate::algebra::{Laurent, LaurentRing, Poly, PolyRing, Ring, EXACT};
use crate::error::{Error, Result};

/// Laurent series over a group ring.
pub type GrLaurent = Laurent<GrElem>;

/// Inverse of a polynomial unit c(1 + n(t)) in L[t], L local, n with nilpotent coefficients.
pub fn poly_unit_inverse(l: &GroupRing, w: &Poly<GrElem>) -> Result<Poly<GrElem>> {
    let pr = PolyRing::new(l.clone());
    let c0 = w
        .coeffs
        .first()
        .ok_or_else(|| Error::NotInvertible("zero polynomial".into()))?;
    let ci = l
        .try_inv(c0)
        .ok_or_else(|| Error::NotInvertible("constant term is not a unit".into()))?;
    let n = pr.sub(&pr.scale(w, &ci), &pr.one());
    let neg_n = pr.neg(&n);
    let mut acc = pr.one();
    let mut term = pr.one();
    for _ in 0..=l.nilpotency_bound() * (w.len().max(1)) {
        term = pr.mul(&term, &neg_n);
        if term.is_empty() {
            return Ok(pr.scale(&acc, &ci));
        }
        acc = pr.add(&acc, &term);
    }
    Err(Error::NotInvertible("polynomial is not a unit of L[t]".into()))
}

/// Splits a local component y = z * w with z in u^{j0}(1 + u L[[u]]) and w a polynomial unit.
pub fn local_monic_split(l: &GroupRing, y: &GrLaurent) -> Result<(GrLaurent, Poly<GrElem>)> {
    let lr = LaurentRing::new(l.clone(), EXACT);
    let pr = PolyRing::new(l.clone());
    let pos = y.coeffs.iter().position(|c| l.is_unit(c));
    let Some(pos) = pos else {
        return Err(if y.is_exact() {
            Error::NotInvertible("no unit coefficient: element is not a unit".into())
        } else {
            Error::InsufficientPrecision("no unit coefficient within precision".into())
        });
    };
    let j0 = y.val + pos as i64;
    let c0 = y.coeffs[pos].clone();
    let mut w = pr.constant(c0.clone());
    let mut winv = pr.constant(l.try_inv(&c0).expect("unit"));
    for _ in 0..=l.nilpotency_bound() + 1 {
        let z = lr.mul(y, &lr.from_poly_t(&winv));
        if z.prec <= j0 {
            return Err(Error::InsufficientPrecision("monic normalization lost all precision".into()));
        }
        // polynomial f(t) = sum_{j <= j0} z_j t^{j0 - j}
        let lo = z.val.min(j0);
        let deg = (j0 - lo) as usize;
        let mut fc = vec![l.zero(); deg + 1];
        for (k, slot) in fc.iter_mut().enumerate() {
            *slot = lr.coeff_or_zero(&z, j0 - k as i64);
        }
        let f = pr.trim(fc);
        if pr.is_one(&f) {
            return Ok((z, w));
        }
        let finv = poly_unit_inverse(l, &f)?;
        w = pr.mul(&w, &f);
        winv = pr.mul(&winv, &finv);
    }
    Err(Error::NotInvertible("monic normalization did not converge".into()))
}

impl GroupAlgebra {
    pub fn laurent_ring(&self, default_prec: i64) -> LaurentRing<GroupRing> {
        LaurentRing::new(self.gr.clone(), default_prec)
    }

    pub fn psi_laurent(&self, x: &GrLaurent) -> Vec<GrLaurent> {
        let lr = LaurentRing::new(self.local.clone(), EXACT);
        (0..self.classes.len())
            .map(|c| lr.make(x.val, x.coeffs.iter().map(|a| self.psi_component(a, c)).collect(), x.prec))
            .collect()
    }

    pub fn psi_inv_laurent(&self, comps: &[GrLaurent]) -> Result<GrLaurent> {
        let lr = LaurentRing::new(self.local.clone(), EXACT);
        let gl = self.laurent_ring(EXACT);
        let prec = comps.iter().map(|c| c.prec).min().unwrap_or(EXACT);
        let nonzero: Vec<&GrLaurent> = comps.iter().filter(|c| !c.coeffs.is_empty()).collect();
        if nonzero.is_empty() {
            return Ok(gl.zero_to(prec));
        }
        let lo = nonzero.iter().map(|c| c.val).min().unwrap();
        let hi = nonzero
            .iter()
            .map(|c| c.val + c.coeffs.len() as i64)
            .max()
            .unwrap()
            .min(prec);
        let mut coeffs = Vec::new();
        for j in lo..hi {
            let cj: Vec<GrElem> = comps.iter().map(|c| lr.coeff_or_zero(c, j)).collect();
            coeffs.push(self.psi_inv(&cj)?);
        }
        Ok(gl.make(lo, coeffs, prec))
    }

    pub fn psi_poly(&self, x: &Poly<GrElem>) -> Vec<Poly<GrElem>> {
        let pr = PolyRing::new(self.local.clone());
        (0..self.classes.len())
            .map(|c| pr.trim(x.coeffs.iter().map(|a| self.psi_component(a, c)).collect()))
            .collect()
    }

    pub fn psi_inv_poly(&self, comps: &[Poly<GrElem>]) -> Result<Poly<GrElem>> {
        let pr = PolyRing::new(self.gr.clone());
        let n = comps.iter().map(|c| c.len()).max().unwrap_or(0);
        let lp = PolyRing::new(self.local.clone());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let ck: Vec<GrElem> = comps.iter().map(|c| lp.coeff(c, k)).collect();
            out.push(self.psi_inv(&ck)?);
        }
        Ok(pr.trim(out))
    }

    /// True iff every component lies in t^n (1 + u L[[u]]).
    pub fn is_monic(&self, x: &GrLaurent) -> Result<bool> {
        let mut all = true;
        for y in self.psi_laurent(x) {
            if !y.coeffs.iter().any(|c| self.local.is_unit(c)) {
                return Err(if y.is_exact() {
                    Error::NotInvertible("is_monic on a non-unit".into())
                } else {
                    Error::InsufficientPrecision("no unit coefficient within precision".into())
                });
            }
            if !y.is_exact() && y.prec < y.val + 2 {
                return Err(Error::InsufficientPrecision(
                    "monicity needs a coefficient past the leading one".into(),
                ));
            }
            all &= self.local.is_one(&y.coeffs[0]);
        }
        Ok(all)
    }

    /// x = xplus * unit with xplus monic and unit in F_q[t][G]^x.
    pub fn monic_part(&self, x: &GrLaurent) -> Result<(GrLaurent, Poly<GrElem>)> {
        let comps = self.psi_laurent(x);
        let mut zs = Vec::with_capacity(comps.len());
        let mut ws = Vec::with_capacity(comps.len());
        for y in &comps {
            let (z, w) = local_monic_split(&self.local, y)?;
            zs.push(z);
            ws.push(w);
        }
        Ok((self.psi_inv_laurent(&zs)?, self.psi_inv_poly(&ws)?))
    }

    /// Inverse of a polynomial unit of F_q[t][G], computed componentwise.
    pub fn poly_unit_inverse(&self, w: &Poly<GrElem>) -> Result<Poly<GrElem>> {
        let comps: Result<Vec<Poly<GrElem>>> =
            self.psi_poly(w).iter().map(|c| poly_unit_inverse(&self.local, c)).collect();
        self.psi_inv_poly(&comps?)
    }

    /// Laurent inverse over F_q[G]; falls back to components when the leading coefficient is not a unit.
    pub fn laurent_inverse(&self, x: &GrLaurent, default_prec: i64) -> Result<GrLaurent> {
        let gl = self.laurent_ring(default_prec);
        match gl.laurent_inverse(x) {
            Ok(y) => return Ok(y),
            Err(Error::NotInvertible(_)) => {}
            Err(e) => return Err(e),
        }
        let lr = LaurentRing::new(self.local.clone(), default_prec);
        let mut out = Vec::new();
        for y in self.psi_laurent(x) {
            let (z, w) = local_monic_split(&self.local, &y)?;
            let zi = lr.laurent_inverse(&z)?;
            let wi = poly_unit_inverse(&self.local, &w)?;
            out.push(lr.mul(&zi, &lr.from_poly_t(&wi)));
        }
        self.psi_inv_laurent(&out)
    }

    /// Reads a monic element as a polynomial in t (errors if it has negative t-powers within precision).
    pub fn as_polynomial(&self, x: &GrLaurent) -> Result<Poly<GrElem>> {
        let gl = self.laurent_ring(EXACT);
        if x.prec <= 0 {
            return Err(Error::InsufficientPrecision("cannot read a polynomial: precision <= 0".into()));
        }
        let frac = gl.frac_part(x);
        if !frac.coeffs.is_empty() {
            return Err(Error::Invalid("element has nonzero negative t-powers".into()));
        }
        gl.poly_part(x)
    }
}
