//! t-modules over A = F_q[t]: phi_E(t) = d_E[t] + M_1 tau + ... + M_l tau^l.

use super::taupoly::{TauPoly, TauRing};
use crate::algebra::{APoly, ARing, FiniteField, MatOps, Matrix, PolyRing, RatFuncField, Ring};
use crate::error::{Error, Result};

/// Which built-in family a module came from (used in reports and by twist predictions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TModuleKind {
    Carlitz,
    /// phi(t) = t + a_1 tau + ... + a_r tau^r.
    Drinfeld { coeffs: Vec<APoly> },
    CarlitzTensor { m: u32 },
    DrinfeldTwist { coeffs: Vec<APoly>, m: u32 },
    Custom,
}

#[derive(Clone, Debug)]
pub struct TModuleSpec {
    pub kind: TModuleKind,
    pub fq: FiniteField,
    pub n: usize,
    /// mats[0] = d_E[t], mats[j] = M_j.
    pub mats: Vec<Matrix<APoly>>,
}

impl TModuleSpec {
    /// Validates the shape, nilpotency of d_E[t] - t Id and invertibility of d_E[t] over k.
    pub fn new(kind: TModuleKind, fq: FiniteField, mats: Vec<Matrix<APoly>>) -> Result<Self> {
        let n = mats.first().map(|m| m.rows).ok_or_else(|| Error::Invalid("empty t-module".into()))?;
        if n == 0 || mats.iter().any(|m| m.rows != n || m.cols != n) {
            return Err(Error::Invalid("t-module matrices must all be n x n with n >= 1".into()));
        }
        let mut mats = mats;
        let a = PolyRing::new(fq.clone());
        let ops = MatOps::new(a.clone());
        while mats.len() > 1 && ops.is_zero(mats.last().unwrap()) {
            mats.pop();
        }
        let e = TModuleSpec { kind, fq, n, mats };
        let nil = e.nilpotent_part();
        if !ops.is_zero(&ops.pow(&nil, n as u64)) {
            return Err(Error::Invalid("d_E[t] - t*Id is not nilpotent".into()));
        }
        Ok(e)
    }

    pub fn a(&self) -> ARing {
        PolyRing::new(self.fq.clone())
    }

    pub fn k(&self) -> RatFuncField {
        RatFuncField::new(self.fq.clone())
    }

    pub fn tau_degree(&self) -> usize {
        self.mats.len() - 1
    }

    pub fn d_t(&self) -> &Matrix<APoly> {
        &self.mats[0]
    }

    /// N = d_E[t] - t Id.
    pub fn nilpotent_part(&self) -> Matrix<APoly> {
        let a = self.a();
        let ops = MatOps::new(a.clone());
        ops.sub(&self.mats[0], &ops.scalar(self.n, &a.var_elem()))
    }

    pub fn tau_ring(&self) -> TauRing<ARing> {
        TauRing::new(self.a(), self.n)
    }

    pub fn phi_t(&self) -> TauPoly<APoly> {
        self.tau_ring().trim(self.mats.clone())
    }

    /// phi_E(a) by Horner's rule in phi_E(t).
    pub fn phi_eval(&self, a: &APoly) -> TauPoly<APoly> {
        let tr = self.tau_ring();
        let ar = self.a();
        let pt = self.phi_t();
        let mut acc = tr.zero();
        for c in a.coeffs.iter().rev() {
            acc = tr.mul(&acc, &pt);
            let cm = MatOps::new(ar.clone()).scalar(self.n, &ar.constant(*c));
            acc = tr.add(&acc, &tr.constant(cm));
        }
        acc
    }

    /// d_E[a] = a(d_E[t]).
    pub fn lie_eval(&self, a: &APoly) -> Matrix<APoly> {
        let ar = self.a();
        let ops = MatOps::new(ar.clone());
        let mut acc = ops.zeros(self.n, self.n);
        for c in a.coeffs.iter().rev() {
            acc = ops.mul(&acc, self.d_t());
            acc = ops.add(&acc, &ops.scalar(self.n, &ar.constant(*c)));
        }
        acc
    }

    pub fn describe(&self) -> String {
        let a = self.a();
        let f = |v: &[APoly]| v.iter().map(|c| a.fmt_poly(c)).collect::<Vec<_>>().join(",");
        match &self.kind {
            TModuleKind::Carlitz => "carlitz".into(),
            TModuleKind::Drinfeld { coeffs } => format!("drinfeld[{}]", f(coeffs)),
            TModuleKind::CarlitzTensor { m } => format!("carlitz_tensor(m={m})"),
            TModuleKind::DrinfeldTwist { coeffs, m } => format!("drinfeld_twist[{}](m={m})", f(coeffs)),
            TModuleKind::Custom => format!("custom(n={})", self.n),
        }
    }

    pub fn fmt_phi_t(&self) -> String {
        self.tau_ring().fmt_taupoly(&self.phi_t())
    }

    /// Smallest C with deg ||d_E[t]^m|| <= m + C on the given exponent range (norms are t-degrees).
    pub fn norm_growth_constant(&self, range: std::ops::RangeInclusive<i64>) -> Result<i64> {
        let k = self.k();
        let ops = MatOps::new(k.clone());
        let d = self.d_t().map(|p| k.from_poly(p.clone()));
        let dinv = crate::algebra::linalg::inverse(&k, &d)
            .ok_or_else(|| Error::Invalid("d_E[t] is not invertible over k".into()))?;
        let mut c = i64::MIN;
        for m in range {
            let pm = if m >= 0 { ops.pow(&d, m as u64) } else { ops.pow(&dinv, m.unsigned_abs()) };
            let norm = pm
                .data
                .iter()
                .filter_map(|x| k.u_valuation(x))
                .map(|v| -v)
                .max()
                .ok_or_else(|| Error::Invalid("zero power of d_E[t]".into()))?;
            c = c.max(norm - m);
        }
        Ok(c)
    }
}

fn one_by_one(p: APoly) -> Matrix<APoly> {
    Matrix::from_rows(vec![vec![p]])
}

/// phi_C(t) = t + tau.
pub fn make_carlitz(fq: &FiniteField) -> TModuleSpec {
    let a = PolyRing::new(fq.clone());
    let mats = vec![one_by_one(a.var_elem()), one_by_one(a.one())];
    TModuleSpec::new(TModuleKind::Carlitz, fq.clone(), mats).expect("Carlitz module is valid")
}

/// Drinfeld module phi(t) = t + a_1 tau + ... + a_r tau^r.
pub fn make_drinfeld(fq: &FiniteField, coeffs: Vec<APoly>) -> Result<TModuleSpec> {
    let a = PolyRing::new(fq.clone());
    if coeffs.last().is_none_or(|c| c.is_empty()) {
        return Err(Error::Invalid("Drinfeld module needs a nonzero leading coefficient".into()));
    }
    let mut mats = vec![one_by_one(a.var_elem())];
    mats.extend(coeffs.iter().map(|c| one_by_one(c.clone())));
    let kind = if coeffs.len() == 1 && a.is_one(&coeffs[0]) {
        TModuleKind::Carlitz
    } else {
        TModuleKind::Drinfeld { coeffs }
    };
    TModuleSpec::new(kind, fq.clone(), mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;

    fn f(p: u32) -> FiniteField {
        FiniteField::new(&FieldSpec::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn carlitz_phi_t_squared() {
        let fq = f(2);
        let c = make_carlitz(&fq);
        let a = c.a();
        let t2 = a.monomial(fq.one(), 2);
        let p = c.phi_eval(&t2);
        assert_eq!(c.tau_ring().fmt_taupoly(&p), "t^2 + (t^2+t)*tau + tau^2");
        let t2p1 = a.add(&t2, &a.one());
        let p = c.phi_eval(&t2p1);
        assert_eq!(c.tau_ring().fmt_taupoly(&p), "(t^2+1) + (t^2+t)*tau + tau^2");
    }

    #[test]
    fn phi_of_one_and_t() {
        let fq = f(3);
        let c = make_carlitz(&fq);
        let tr = c.tau_ring();
        assert_eq!(c.phi_eval(&c.a().one()), tr.one());
        assert_eq!(c.phi_eval(&c.a().var_elem()), c.phi_t());
        assert_eq!(c.lie_eval(&c.a().var_elem()), c.mats[0]);
    }

    #[test]
    fn norm_constant_carlitz_is_zero() {
        let c = make_carlitz(&f(2));
        assert_eq!(c.norm_growth_constant(-8..=8).unwrap(), 0);
    }
}
