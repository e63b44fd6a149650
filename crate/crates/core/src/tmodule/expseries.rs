//! Exponential and logarithm series of a t-module, exactly over k = F_q(t).

use super::spec::TModuleSpec;
use super::taupoly::Frobenius;
use crate::algebra::{MatOps, Matrix, RatFunc, RatFuncField, Ring};
use crate::error::{Error, Result};

/// Coefficients c_0 = Id, c_1, ... of sum_i c_i z^{(i)}.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSeries {
    pub coeffs: Vec<Matrix<RatFunc>>,
}

impl ExpSeries {
    pub fn count(&self) -> usize {
        self.coeffs.len()
    }

    /// Smallest u-valuation among the entries of c_i (None for a zero matrix).
    pub fn valuation(&self, k: &RatFuncField, i: usize) -> Option<i64> {
        self.coeffs[i].data.iter().filter_map(|x| k.u_valuation(x)).min()
    }
}

fn lift(k: &RatFuncField, m: &Matrix<crate::algebra::APoly>) -> Matrix<RatFunc> {
    m.map(|p| k.from_poly(p.clone()))
}

/// Solves X D^{(i)} - D X = C where D = t Id + N; the operator X -> N X - X N^{(i)} is nilpotent.
fn sylvester(k: &RatFuncField, e: &TModuleSpec, i: u32, c: &Matrix<RatFunc>) -> Result<Matrix<RatFunc>> {
    let ops = MatOps::new(k.clone());
    let n = e.n;
    let nil = lift(k, &e.nilpotent_part());
    let nil_i = k.frob_matrix(&nil, i);
    let t = k.from_poly(e.a().var_elem());
    let theta = k.frob(&t, i);
    let denom = k.sub(&theta, &t);
    let dinv = k
        .try_inv(&denom)
        .ok_or_else(|| Error::NotInvertible("singular Sylvester system".into()))?;
    let x0 = ops.scale(c, &dinv);
    let mut x = x0.clone();
    for _ in 0..2 * n {
        let corr = ops.sub(&ops.mul(&nil, &x), &ops.mul(&x, &nil_i));
        x = ops.add(&x0, &ops.scale(&corr, &dinv));
    }
    let d = lift(k, e.d_t());
    let d_i = k.frob_matrix(&d, i);
    let resid = ops.sub(&ops.sub(&ops.mul(&x, &d_i), &ops.mul(&d, &x)), c);
    if !ops.is_zero(&resid) {
        return Err(Error::NotInvertible("Sylvester iteration did not converge".into()));
    }
    Ok(x)
}

/// First `count` exponential coefficients from e_i d^{(i)} - d e_i = sum_{j>=1} M_j e_{i-j}^{(j)}.
pub fn exp_coeffs(e: &TModuleSpec, count: usize) -> Result<ExpSeries> {
    if count == 0 {
        return Err(Error::Invalid("need at least one coefficient".into()));
    }
    let k = e.k();
    let ops = MatOps::new(k.clone());
    let ms: Vec<Matrix<RatFunc>> = e.mats.iter().map(|m| lift(&k, m)).collect();
    let mut coeffs = vec![ops.identity(e.n)];
    for i in 1..count {
        let mut c = ops.zeros(e.n, e.n);
        for j in 1..=e.tau_degree().min(i) {
            let term = ops.mul(&ms[j], &k.frob_matrix(&coeffs[i - j], j as u32));
            c = ops.add(&c, &term);
        }
        coeffs.push(sylvester(&k, e, i as u32, &c)?);
    }
    Ok(ExpSeries { coeffs })
}

/// Compositional inverse: sum_{i+j=k} l_i e_j^{(i)} = 0 for k >= 1.
pub fn log_from_exp(k: &RatFuncField, exp: &ExpSeries) -> ExpSeries {
    let ops = MatOps::new(k.clone());
    let n = exp.coeffs[0].rows;
    let mut logs = vec![ops.identity(n)];
    for m in 1..exp.count() {
        let mut acc = ops.zeros(n, n);
        for (i, li) in logs.iter().enumerate() {
            acc = ops.add(&acc, &ops.mul(li, &k.frob_matrix(&exp.coeffs[m - i], i as u32)));
        }
        logs.push(ops.neg(&acc));
    }
    ExpSeries { coeffs: logs }
}

pub fn log_coeffs(e: &TModuleSpec, count: usize) -> Result<ExpSeries> {
    Ok(log_from_exp(&e.k(), &exp_coeffs(e, count)?))
}

/// Composition f(g(z)) truncated to the shorter length.
pub fn compose(k: &RatFuncField, f: &ExpSeries, g: &ExpSeries) -> ExpSeries {
    let ops = MatOps::new(k.clone());
    let n = f.coeffs[0].rows;
    let len = f.count().min(g.count());
    let mut out = vec![ops.zeros(n, n); len];
    for (i, fi) in f.coeffs.iter().enumerate().take(len) {
        for j in 0..len - i {
            let term = ops.mul(fi, &k.frob_matrix(&g.coeffs[j], i as u32));
            out[i + j] = ops.add(&out[i + j], &term);
        }
    }
    ExpSeries { coeffs: out }
}

/// Index of the first coefficient of Exp(d z) - phi(t)(Exp z) that is nonzero, if any.
pub fn functional_equation_residual(e: &TModuleSpec, exp: &ExpSeries) -> Option<usize> {
    let k = e.k();
    let ops = MatOps::new(k.clone());
    let ms: Vec<Matrix<RatFunc>> = e.mats.iter().map(|m| lift(&k, m)).collect();
    for i in 0..exp.count() {
        let lhs = ops.mul(&exp.coeffs[i], &k.frob_matrix(&ms[0], i as u32));
        let mut rhs = ops.zeros(e.n, e.n);
        for j in 0..=e.tau_degree().min(i) {
            rhs = ops.add(&rhs, &ops.mul(&ms[j], &k.frob_matrix(&exp.coeffs[i - j], j as u32)));
        }
        if !ops.is_zero(&ops.sub(&lhs, &rhs)) {
            return Some(i);
        }
    }
    None
}

/// True when a series is the identity to its computed length.
pub fn is_identity(k: &RatFuncField, s: &ExpSeries) -> bool {
    let ops = MatOps::new(k.clone());
    let n = s.coeffs[0].rows;
    s.coeffs[0] == ops.identity(n) && s.coeffs[1..].iter().all(|m| ops.is_zero(m))
}
