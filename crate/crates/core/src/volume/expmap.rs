//! Exp_E and Log_E evaluated on K_inf^n in w-coordinates, with truncation bounds.

use crate::algebra::{FqElem, Laurent, Matrix, RatFunc, RatFuncField};
use crate::error::{Error, Result};
use crate::fields::{ExtensionData, KInf, KInfOps};
use crate::tmodule::{exp_coeffs, log_from_exp, ExpSeries, TModuleSpec};

/// Exp and Log with the data needed to bound omitted terms.
///
/// A term c_i z^{(i)} with v(z) >= j has valuation at least v(c_i) - delta_i + q^i j, where
/// delta_i bounds the t-degrees of the coordinates of w^{q^i}. Past the computed range the
/// ratio (v(c_i) - delta_i) / q^i is extrapolated: from the smaller of the last two computed
/// values for Exp (the ratios grow, possibly with oscillation), and from the smallest computed
/// value minus one for Log (they decrease to a limit).
#[derive(Clone, Debug)]
pub struct ExpMap {
    pub e: TModuleSpec,
    pub kinf: KInfOps,
    k: RatFuncField,
    exp: ExpSeries,
    log: ExpSeries,
    exp_val: Vec<Option<i64>>,
    log_val: Vec<Option<i64>>,
    delta: Vec<i64>,
    exp_slope: f64,
    log_slope: f64,
    /// Exp and Log are isometries of U_j for every j >= iso.
    pub iso: usize,
}

fn q_pow(q: i64, i: usize) -> f64 {
    (q as f64).powi(i as i32)
}

impl ExpMap {
    /// Uses the smallest coefficient count c with q^{c-1} >= 64, at least 4.
    pub fn new(e: &TModuleSpec, x: &ExtensionData) -> Result<Self> {
        let q = e.fq.order() as i64;
        let mut count = 4;
        while q_pow(q, count - 1) < 64.0 {
            count += 1;
        }
        Self::with_count(e, x, count)
    }

    pub fn with_count(e: &TModuleSpec, x: &ExtensionData, count: usize) -> Result<Self> {
        if count < 4 {
            return Err(Error::Invalid("need at least four series coefficients".into()));
        }
        let k = e.k();
        let exp = exp_coeffs(e, count)?;
        let log = log_from_exp(&k, &exp);
        let kinf = KInfOps::new(x);
        let q = e.fq.order() as i64;
        let mut delta = Vec::with_capacity(count);
        for i in 0..count {
            let qi = (q as u64).pow(i as u32);
            let dm = (0..x.d)
                .flat_map(|j| x.pow(&x.basis(j), qi))
                .filter_map(|p| p.degree())
                .max()
                .unwrap_or(0) as i64;
            delta.push(dm);
        }
        let exp_val: Vec<Option<i64>> = (0..count).map(|i| exp.valuation(&k, i)).collect();
        let log_val: Vec<Option<i64>> = (0..count).map(|i| log.valuation(&k, i)).collect();
        let ratio = |v: Option<i64>, i: usize| v.map(|v| (v - delta[i]) as f64 / q_pow(q, i));
        let exp_ratios: Vec<f64> = (1..count).filter_map(|i| ratio(exp_val[i], i)).collect();
        let log_ratios: Vec<f64> = (1..count).filter_map(|i| ratio(log_val[i], i)).collect();
        // Ratios of higher rank modules oscillate, so compare minima over adjacent pairs.
        let pair_min: Vec<f64> = match exp_ratios.len() {
            0 | 1 => exp_ratios.clone(),
            _ => exp_ratios.windows(2).map(|w| w[0].min(w[1])).collect(),
        };
        let exp_slope = match pair_min.as_slice() {
            [] => f64::INFINITY,
            [.., a, b, c] if !(a <= b && b <= c) => {
                return Err(Error::Certification(
                    "exponential coefficients do not show increasing growth; cannot bound the tail".into(),
                ))
            }
            [.., last] => *last,
        };
        let log_slope = log_ratios.iter().copied().fold(f64::INFINITY, f64::min) - 1.0;
        let mut out = ExpMap { e: e.clone(), kinf, k, exp, log, exp_val, log_val, delta, exp_slope, log_slope, iso: 0 };
        out.iso = out.isometry_start()?;
        Ok(out)
    }

    pub fn count(&self) -> usize {
        self.exp.count()
    }

    fn q(&self) -> i64 {
        self.e.fq.order() as i64
    }

    fn contracts(&self, vals: &[Option<i64>], slope: f64, j: i64) -> bool {
        let q = self.q();
        let computed = (1..vals.len()).all(|i| match vals[i] {
            Some(v) => v - self.delta[i] + q.pow(i as u32) * j > j,
            None => true,
        });
        let c = vals.len();
        let tail = slope.is_infinite() || (slope + j as f64 > 0.0 && q_pow(q, c) * (slope + j as f64) > j as f64);
        computed && tail
    }

    fn isometry_start(&self) -> Result<usize> {
        for j in 1..=256i64 {
            if self.contracts(&self.exp_val, self.exp_slope, j) && self.contracts(&self.log_val, self.log_slope, j) {
                return Ok(j as usize);
            }
        }
        Err(Error::Certification("no isometry radius found for Exp and Log".into()))
    }

    fn apply(&self, series: &ExpSeries, vals: &[Option<i64>], slope: f64, z: &[KInf], prec: i64) -> Result<Vec<KInf>> {
        let kinf = &self.kinf;
        let n = self.e.n;
        let lr = &kinf.lr;
        let Some(vz) = z.iter().filter_map(|c| kinf.valuation(c)).min() else {
            let p = z.iter().map(|c| kinf.precision(c)).min().unwrap_or(prec).min(prec);
            return Ok(vec![kinf.truncate(&kinf.zero(), p); n]);
        };
        let q = self.q();
        let c = series.count();
        if slope.is_finite() && (slope + vz as f64 <= 0.0 || q_pow(q, c) * (slope + vz as f64) < prec as f64) {
            return Err(Error::InsufficientPrecision(format!(
                "{c} series coefficients do not reach precision {prec} on arguments of valuation {vz}"
            )));
        }
        let mut out: Vec<KInf> = vec![kinf.zero(); n];
        let mut zi: Vec<KInf> = z.to_vec();
        for i in 0..c {
            if i > 0 {
                zi = zi.iter().map(|y| kinf.tau(y)).collect();
            }
            let Some(vi) = vals[i] else { continue };
            let Some(vzi) = zi.iter().filter_map(|y| kinf.valuation(y)).min() else { continue };
            if vi + vzi >= prec {
                continue;
            }
            let m: &Matrix<RatFunc> = &series.coeffs[i];
            for (r, o) in out.iter_mut().enumerate() {
                for (cc, y) in zi.iter().enumerate() {
                    let entry = m.get(r, cc);
                    if entry.num.is_empty() {
                        continue;
                    }
                    let coef: Laurent<FqElem> = self.k.to_laurent(entry, prec - vzi)?;
                    *o = kinf.add(o, &kinf.scale(y, &coef));
                }
            }
        }
        let p = z.iter().map(|c| kinf.precision(c)).min().unwrap_or(prec).min(prec);
        Ok(out.iter().map(|y| y.iter().map(|c| lr.truncate(c, p)).collect()).collect())
    }

    /// Exp_E(z) to absolute precision `prec` (or the precision of z if lower).
    pub fn exp(&self, z: &[KInf], prec: i64) -> Result<Vec<KInf>> {
        self.apply(&self.exp, &self.exp_val, self.exp_slope, z, prec)
    }

    /// Log_E(z) for z in U_iso.
    pub fn log(&self, z: &[KInf], prec: i64) -> Result<Vec<KInf>> {
        if let Some(v) = z.iter().filter_map(|c| self.kinf.valuation(c)).min() {
            if v < self.iso as i64 {
                return Err(Error::Invalid(format!("Log evaluated outside its isometry domain (valuation {v})")));
            }
        }
        self.apply(&self.log, &self.log_val, self.log_slope, z, prec)
    }

    /// phi_E(t) z = d_E[t] z + sum_j M_j tau^j z, exactly on exact input.
    pub fn phi_t(&self, z: &[KInf]) -> Vec<KInf> {
        let kinf = &self.kinf;
        let n = self.e.n;
        let mut out: Vec<KInf> = vec![kinf.zero(); n];
        let mut zi: Vec<KInf> = z.to_vec();
        for (j, m) in self.e.mats.iter().enumerate() {
            if j > 0 {
                zi = zi.iter().map(|y| kinf.tau(y)).collect();
            }
            for (r, o) in out.iter_mut().enumerate() {
                for (cc, y) in zi.iter().enumerate() {
                    let entry = m.get(r, cc);
                    if !entry.is_empty() {
                        *o = kinf.add(o, &kinf.scale_a(y, entry));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, FiniteField, LaurentRing, Ring, EXACT};
    use crate::fields::trivial_extension;
    use crate::tmodule::make_carlitz;

    #[test]
    fn exp_of_log_is_identity_on_small_elements() {
        let fq = FiniteField::new(&FieldSpec::prime(2).unwrap()).unwrap();
        let x = trivial_extension(&fq);
        let c = make_carlitz(&fq);
        let em = ExpMap::new(&c, &x).unwrap();
        let lr = LaurentRing::new(fq.clone(), EXACT);
        let s = em.iso as i64;
        let z = vec![vec![lr.exact(s, vec![fq.one(), FqElem(0), fq.one()])]];
        let back = em.exp(&em.log(&z, 30).unwrap(), 30).unwrap();
        assert_eq!(back[0][0], lr.truncate(&z[0][0], 30));
    }

    #[test]
    fn carlitz_exp_functional_equation() {
        // Exp(t z) = phi(t) Exp(z) on z = 1
        let fq = FiniteField::new(&FieldSpec::prime(2).unwrap()).unwrap();
        let x = trivial_extension(&fq);
        let c = make_carlitz(&fq);
        let em = ExpMap::new(&c, &x).unwrap();
        let lr = LaurentRing::new(fq.clone(), EXACT);
        let one = vec![vec![lr.one()]];
        let t = vec![vec![lr.exact(-1, vec![fq.one()])]];
        let lhs = em.exp(&t, 12).unwrap();
        let rhs = em.phi_t(&em.exp(&one, 14).unwrap());
        assert!(lr.eq_to(&lhs[0][0], &rhs[0][0], 12).unwrap());
    }
}
