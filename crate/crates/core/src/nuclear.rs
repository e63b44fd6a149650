//! Nuclear operators on compact filtered modules and their determinants mod Z^{N+1}.

use crate::algebra::{APoly, ARing, FiniteField, FqElem, MatOps, Matrix, Ring, TruncRing};
use crate::error::{Error, Result};
use crate::fields::{ExtensionData, KInf, KInfOps, PrimeOfA, ResidueRing, TamingModule};
use crate::grpring::{GrLaurent, GroupAlgebra};
use crate::lvalue::{theta_with, CutoffPolicy, ThetaValue};
use crate::modsize::{find_free_basis, FqRep};
use crate::tmodule::{TModuleSpec, TauPoly, TauRing};

/// A module V with open neighborhoods U_s and a q-power map tau.
#[derive(Clone, Debug)]
pub enum FilteredModule {
    /// (K_inf / xi O_K)^n, identified with (K_inf / O_K)^n by dividing by xi, so tau becomes
    /// xi^{q-1} tau. U_s consists of vectors whose w-coordinates all lie in u^s F_q[[u]].
    Ambient { kinf: KInfOps, xi: APoly, n: usize },
    /// A finite module (n copies of one F_q-space with given tau and t); U = 0.
    Finite { fq: FiniteField, one: FqRep, tau: Matrix<FqElem>, t: Matrix<FqElem>, n: usize },
}

impl FilteredModule {
    pub fn ambient(x: &ExtensionData, m: &TamingModule, n: usize) -> Result<Self> {
        if !x.g_action_constant() {
            return Err(Error::Unsupported(
                "the u-adic filtration is G-stable only for constant G-matrices".into(),
            ));
        }
        Ok(FilteredModule::Ambient { kinf: KInfOps::new(x), xi: m.xi.clone(), n })
    }

    /// (M / v M)^n.
    pub fn residue(x: &ExtensionData, m: &TamingModule, v: &PrimeOfA, n: usize) -> Result<Self> {
        let r = ResidueRing::new(x, v)?;
        let a = x.a();
        let q = x.fq.order() as u64;
        let ops = MatOps::new(x.fq.clone());
        let tau = ops.mul(&r.mult_matrix(&a.pow(&m.xi, q - 1))?, &r.frob_matrix()?);
        let t = r.mult_matrix(&a.var_elem())?;
        let rho = (0..x.group.size()).map(|g| r.group_matrix(g)).collect::<Result<_>>()?;
        Ok(FilteredModule::Finite { fq: x.fq.clone(), one: FqRep { dim: r.dim(), rho }, tau, t, n })
    }

    pub fn n(&self) -> usize {
        match self {
            FilteredModule::Ambient { n, .. } | FilteredModule::Finite { n, .. } => *n,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FilteredModule::Finite { .. })
    }

    /// dim_{F_q} V / U_s.
    pub fn quotient_dim(&self, s: usize) -> usize {
        match self {
            FilteredModule::Ambient { kinf, n, .. } => n * kinf.d() * s.saturating_sub(1),
            FilteredModule::Finite { one, n, .. } => n * one.dim,
        }
    }

    /// The G-representation on V / U_s.
    pub fn rep(&self, s: usize) -> FqRep {
        let dim = self.quotient_dim(s);
        let fq = self.fq();
        let ops = MatOps::new(fq.clone());
        match self {
            FilteredModule::Ambient { kinf, n, .. } => {
                let d = kinf.d();
                let w = s.saturating_sub(1);
                let rho = kinf
                    .x
                    .gaction
                    .iter()
                    .map(|g| {
                        let mut m = ops.zeros(dim, dim);
                        for k in 0..*n {
                            for i in 0..d {
                                for i2 in 0..d {
                                    let c = fq_const(g.get(i2, i));
                                    for j in 0..w {
                                        m.set((k * d + i2) * w + j, (k * d + i) * w + j, c);
                                    }
                                }
                            }
                        }
                        m
                    })
                    .collect();
                FqRep { dim, rho }
            }
            FilteredModule::Finite { one, n, .. } => {
                let rho = one.rho.iter().map(|g| block_diag(&ops, g, *n)).collect();
                FqRep { dim, rho }
            }
        }
    }

    pub fn fq(&self) -> FiniteField {
        match self {
            FilteredModule::Ambient { kinf, .. } => kinf.x.fq.clone(),
            FilteredModule::Finite { fq, .. } => fq.clone(),
        }
    }

    /// The twisted map tau_xi = xi^{q-1} tau on K_inf.
    fn tau_xi(kinf: &KInfOps, xi_pow: &APoly, y: &KInf) -> KInf {
        let z = kinf.tau(y);
        if xi_pow.len() == 1 && xi_pow.coeffs[0] == kinf.x.fq.one() {
            z
        } else {
            kinf.scale_a(&z, xi_pow)
        }
    }

    /// F_q-matrix of the operator on V / U_s (requires U_s to be stable).
    pub fn matrix_of(&self, op: &TauPoly<APoly>, s: usize) -> Result<Matrix<FqElem>> {
        match self {
            FilteredModule::Ambient { kinf, xi, n } => {
                let a = kinf.x.a();
                let q = kinf.x.fq.order() as u64;
                let xi_pow = a.pow(xi, q - 1);
                let d = kinf.d();
                let w = s.saturating_sub(1);
                let dim = self.quotient_dim(s);
                let lr = &kinf.lr;
                let mut out = Matrix::filled(dim, dim, FqElem(0));
                for k in 0..*n {
                    for i in 0..d {
                        for j in 1..s {
                            let mut y: Vec<KInf> = vec![kinf.zero(); *n];
                            y[k] = kinf.scalar_basis(lr.monomial(kinf.x.fq.one(), j as i64), i);
                            let mut img: Vec<KInf> = vec![kinf.zero(); *n];
                            for (l, c) in op.coeffs.iter().enumerate() {
                                if l > 0 {
                                    y = y.iter().map(|z| Self::tau_xi(kinf, &xi_pow, z)).collect();
                                }
                                for (r, o) in img.iter_mut().enumerate() {
                                    for (cc, yc) in y.iter().enumerate() {
                                        let e = c.get(r, cc);
                                        if !e.is_empty() {
                                            *o = kinf.add(o, &kinf.scale_a(yc, e));
                                        }
                                    }
                                }
                            }
                            let col = (k * d + i) * w + (j - 1);
                            for (r, o) in img.iter().enumerate() {
                                for (i2, c) in o.iter().enumerate() {
                                    for j2 in 1..s {
                                        let v = lr.coeff_or_zero(c, j2 as i64);
                                        if v.0 != 0 {
                                            out.set((r * d + i2) * w + (j2 - 1), col, v);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                Ok(out)
            }
            FilteredModule::Finite { fq, one, tau, t, n } => {
                let ops = MatOps::new(fq.clone());
                let dim = one.dim;
                let mut out = ops.zeros(dim * n, dim * n);
                let mut tau_l = ops.identity(dim);
                for (l, c) in op.coeffs.iter().enumerate() {
                    if l > 0 {
                        tau_l = ops.mul(tau, &tau_l);
                    }
                    for r in 0..*n {
                        for cc in 0..*n {
                            let e = c.get(r, cc);
                            if e.is_empty() {
                                continue;
                            }
                            let blk = ops.mul(&poly_at_matrix(&ops, e, t), &tau_l);
                            for a in 0..dim {
                                for b in 0..dim {
                                    let v = ops.ring.add(out.get(r * dim + a, cc * dim + b), blk.get(a, b));
                                    out.set(r * dim + a, cc * dim + b, v);
                                }
                            }
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}

fn fq_const(p: &APoly) -> FqElem {
    p.coeffs.first().copied().unwrap_or(FqElem(0))
}

fn block_diag(ops: &MatOps<FiniteField>, m: &Matrix<FqElem>, n: usize) -> Matrix<FqElem> {
    let d = m.rows;
    let mut out = ops.zeros(d * n, d * n);
    for k in 0..n {
        for a in 0..d {
            for b in 0..d {
                out.set(k * d + a, k * d + b, *m.get(a, b));
            }
        }
    }
    out
}

fn poly_at_matrix(ops: &MatOps<FiniteField>, p: &APoly, t: &Matrix<FqElem>) -> Matrix<FqElem> {
    let mut acc = ops.zeros(t.rows, t.cols);
    for c in p.coeffs.iter().rev() {
        acc = ops.add(&ops.mul(&acc, t), &ops.scalar(t.rows, c));
    }
    acc
}

/// Phi = sum_{m>=1} phi_m Z^m with each phi_m in M_n(A){tau}; `phis[m-1]` = phi_m.
#[derive(Clone, Debug, PartialEq)]
pub struct NuclearOperator {
    pub n: usize,
    pub phis: Vec<TauPoly<APoly>>,
}

impl NuclearOperator {
    /// Number of known coefficients (determinants are taken mod Z^{count+1}).
    pub fn count(&self) -> usize {
        self.phis.len()
    }

    pub fn zero(n: usize, count: usize) -> Self {
        NuclearOperator { n, phis: vec![TauPoly { coeffs: vec![] }; count] }
    }

    /// (1 + Phi)(1 + Psi) - 1, truncated to the shorter length.
    pub fn compose(&self, tr: &TauRing<ARing>, other: &Self) -> Self {
        let count = self.count().min(other.count());
        let mut phis = Vec::with_capacity(count);
        for m in 1..=count {
            let mut acc = tr.add(&self.phis[m - 1], &other.phis[m - 1]);
            for a in 1..m {
                acc = tr.add(&acc, &tr.mul(&self.phis[a - 1], &other.phis[m - a - 1]));
            }
            phis.push(acc);
        }
        NuclearOperator { n: self.n, phis }
    }

    /// Block-diagonal operator on V' + V''.
    pub fn direct_sum(&self, a: &ARing, other: &Self) -> Self {
        let count = self.count().min(other.count());
        let n = self.n + other.n;
        let ops = MatOps::new(a.clone());
        let phis = (0..count)
            .map(|m| {
                let (x, y) = (&self.phis[m], &other.phis[m]);
                let len = x.coeffs.len().max(y.coeffs.len());
                let coeffs = (0..len)
                    .map(|l| {
                        let mut out = ops.zeros(n, n);
                        if let Some(c) = x.coeffs.get(l) {
                            for i in 0..self.n {
                                for j in 0..self.n {
                                    out.set(i, j, c.get(i, j).clone());
                                }
                            }
                        }
                        if let Some(c) = y.coeffs.get(l) {
                            for i in 0..other.n {
                                for j in 0..other.n {
                                    out.set(self.n + i, self.n + j, c.get(i, j).clone());
                                }
                            }
                        }
                        out
                    })
                    .collect();
                TauRing::new(a.clone(), n).trim(coeffs)
            })
            .collect();
        NuclearOperator { n, phis }
    }
}

/// phi_m = (d_E[t] - phi_E(t)) d_E[t]^{m-1} for m = 1..=count.
pub fn make_theta_operator(e: &TModuleSpec, count: usize) -> NuclearOperator {
    let tr = e.tau_ring();
    let d = tr.constant(e.d_t().clone());
    let head = tr.sub(&d, &e.phi_t());
    let mut phis = Vec::with_capacity(count);
    let mut dpow = tr.one();
    for _ in 0..count {
        phis.push(tr.mul(&head, &dpow));
        dpow = tr.mul(&dpow, &d);
    }
    NuclearOperator { n: e.n, phis }
}

fn max_degree(m: &Matrix<APoly>) -> Option<usize> {
    m.data.iter().filter_map(|p| p.degree()).max()
}

/// Smallest s >= 1 with phi(U_j) in U_{j+1} for all j >= s and every phi in `ops`.
///
/// On w-coordinates, tau_xi lowers u-valuations from j to q j - delta where delta bounds the
/// t-degrees of the coordinates of xi^{q-1} w_i^q; an A-matrix of degree c lowers them by c.
pub fn nucleus_index(ops: &[TauPoly<APoly>], v: &FilteredModule) -> Result<usize> {
    let a_zero = |m: &Matrix<APoly>| m.data.iter().all(|p| p.is_empty());
    for op in ops {
        if op.coeffs.first().is_some_and(|c| !a_zero(c)) {
            return Err(Error::Invalid("operator has a tau^0 term and need not be locally contracting".into()));
        }
    }
    let (kinf, xi) = match v {
        FilteredModule::Finite { .. } => return Ok(0),
        FilteredModule::Ambient { kinf, xi, .. } => (kinf, xi),
    };
    let x = &kinf.x;
    let q = x.fq.order() as i64;
    let delta_w = (0..x.d)
        .flat_map(|i| x.pow(&x.basis(i), q as u64))
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0) as i64;
    let delta = delta_w + (q - 1) * xi.degree().unwrap_or(0) as i64;
    let holds = |s: i64, l: usize, c: i64| {
        let mut f = s;
        for _ in 0..l {
            f = q * f - delta;
        }
        f - c > s
    };
    let mut best = 1i64;
    for op in ops {
        for (l, c) in op.coeffs.iter().enumerate().skip(1) {
            let Some(cd) = max_degree(c) else { continue };
            while !holds(best, l, cd as i64) {
                best += 1;
            }
        }
    }
    let s = best as usize;
    verify_contraction(ops, v, s)?;
    Ok(s)
}

/// Checks phi(u^j w_i e_k) in U_{j+1} on generators at j = s, s + 1 by exact evaluation.
fn verify_contraction(ops: &[TauPoly<APoly>], v: &FilteredModule, s: usize) -> Result<()> {
    let FilteredModule::Ambient { kinf, xi, n } = v else { return Ok(()) };
    let a = kinf.x.a();
    let q = kinf.x.fq.order() as u64;
    let xi_pow = a.pow(xi, q - 1);
    for op in ops {
        for j in s..s + 2 {
            for k in 0..*n {
                for i in 0..kinf.d() {
                    let mut y: Vec<KInf> = vec![kinf.zero(); *n];
                    y[k] = kinf.scalar_basis(kinf.lr.monomial(kinf.x.fq.one(), j as i64), i);
                    for (l, c) in op.coeffs.iter().enumerate() {
                        if l > 0 {
                            y = y.iter().map(|z| FilteredModule::tau_xi(kinf, &xi_pow, z)).collect();
                        }
                        for r in 0..*n {
                            for (cc, yc) in y.iter().enumerate() {
                                let e = c.get(r, cc);
                                if e.is_empty() {
                                    continue;
                                }
                                let img = kinf.scale_a(yc, e);
                                if kinf.valuation(&img).is_some_and(|val| val <= j as i64) {
                                    return Err(Error::Certification(format!(
                                        "operator term tau^{l} does not contract U_{j}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Depth used by `nuclear_det` by default: nucleus index plus the precision.
pub fn default_depth(op: &NuclearOperator, v: &FilteredModule) -> Result<usize> {
    let s = nucleus_index(&op.phis, v)?;
    Ok(if v.is_finite() { 0 } else { s + op.count() })
}

/// det_{F_q[G][Z]/Z^{N+1}}(1 + Phi | V / U_s) with N = op.count(), read with Z = u.
pub fn nuclear_det(alg: &GroupAlgebra, op: &NuclearOperator, v: &FilteredModule, depth: Option<usize>) -> Result<GrLaurent> {
    if op.n != v.n() {
        return Err(Error::Invalid(format!("operator acts on {} coordinates, module has {}", op.n, v.n())));
    }
    let nucleus = nucleus_index(&op.phis, v)?;
    let s = match depth {
        Some(s) if !v.is_finite() && s < nucleus => {
            return Err(Error::Invalid(format!("depth {s} is below the nucleus index {nucleus}")))
        }
        Some(s) => s,
        None => default_depth(op, v)?,
    };
    let big_n = op.count();
    let tr = TruncRing::new(alg.gr.clone(), big_n + 1);
    let gl = alg.laurent_ring(big_n as i64 + 1);
    if v.quotient_dim(s) == 0 {
        return Ok(gl.make(0, tr.one(), big_n as i64 + 1));
    }
    let rep = v.rep(s);
    let basis = find_free_basis(alg, &rep, 0x5eed ^ s as u64)?;
    let r = basis.rank;
    let mut m = MatOps::new(tr.clone()).identity(r);
    for (k, phi) in op.phis.iter().enumerate() {
        if phi.coeffs.is_empty() {
            continue;
        }
        let a = basis.matrix_of(alg, &v.matrix_of(phi, s)?);
        for i in 0..r {
            for j in 0..r {
                let entry = a.get(i, j);
                if alg.gr.is_zero(entry) {
                    continue;
                }
                let cell = tr.add(m.get(i, j), &tr.monomial(entry.clone(), k + 1));
                m.set(i, j, cell);
            }
        }
    }
    let det = MatOps::new(tr).det(&m)?;
    Ok(gl.make(0, det, big_n as i64 + 1))
}

/// Both sides of Theta(0) = det(1 + Phi | (K_inf / M)^n) at T = t.
#[derive(Clone, Debug)]
pub struct TraceReport {
    pub theta: ThetaValue,
    pub det: GrLaurent,
    pub residual: GrLaurent,
    pub depth: usize,
    pub pass: bool,
}

pub fn trace_check(alg: &GroupAlgebra, e: &TModuleSpec, x: &ExtensionData, m: &TamingModule, n: usize) -> Result<TraceReport> {
    trace_check_with(alg, e, x, m, n, CutoffPolicy::default())
}

pub fn trace_check_with(
    alg: &GroupAlgebra,
    e: &TModuleSpec,
    x: &ExtensionData,
    m: &TamingModule,
    n: usize,
    policy: CutoffPolicy,
) -> Result<TraceReport> {
    let theta = theta_with(alg, e, x, m, n, &[], policy)?;
    let op = make_theta_operator(e, n);
    let v = FilteredModule::ambient(x, m, e.n)?;
    let depth = default_depth(&op, &v)?;
    let det = nuclear_det(alg, &op, &v, Some(depth))?;
    let gl = alg.laurent_ring(n as i64 + 1);
    let residual = gl.sub(&theta.value, &det);
    let pass = residual.coeffs.is_empty();
    Ok(TraceReport { theta, det, residual, depth, pass })
}

/// det(1 + Phi | (M / v M)^n) for the theta operator, which should be |E(M/v)|_G / |Lie_E(M/v)|_G.
pub fn local_det(alg: &GroupAlgebra, e: &TModuleSpec, x: &ExtensionData, m: &TamingModule, v: &PrimeOfA, n: usize) -> Result<GrLaurent> {
    let op = make_theta_operator(e, n);
    nuclear_det(alg, &op, &FilteredModule::residue(x, m, v, e.n)?, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, LaurentRing, PolyRing};
    use crate::fields::{carlitz_cyclotomic_deg1, trivial_extension};
    use crate::lvalue::euler_factor;
    use crate::tmodule::{make_carlitz, make_drinfeld};

    fn f(p: u32) -> FiniteField {
        FiniteField::new(&FieldSpec::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn carlitz_operator_coefficients() {
        let fq = f(2);
        let c = make_carlitz(&fq);
        let a = c.a();
        let op = make_theta_operator(&c, 3);
        // phi_m = -tau t^{m-1} = -t^{q(m-1)} tau
        for m in 1..=3usize {
            let tr = c.tau_ring();
            assert_eq!(op.phis[m - 1].coeffs.len(), 2);
            assert!(op.phis[m - 1].coeffs[0].data[0].is_empty());
            let expect = a.neg(&a.monomial(fq.one(), 2 * (m - 1)));
            assert_eq!(tr.coeff(&op.phis[m - 1], 1).data[0], expect);
        }
    }

    #[test]
    fn nucleus_examples() {
        let fq = f(2);
        let x = trivial_extension(&fq);
        let a = x.a();
        let v = FilteredModule::ambient(&x, &TamingModule::full(&a), 1).unwrap();
        let tr = TauRing::new(a.clone(), 1);
        let tau = tr.monomial(Matrix::from_rows(vec![vec![a.one()]]), 1);
        assert_eq!(nucleus_index(&[tau], &v).unwrap(), 1);
        let t2tau = tr.monomial(Matrix::from_rows(vec![vec![a.monomial(fq.one(), 2)]]), 1);
        assert_eq!(nucleus_index(&[t2tau], &v).unwrap(), 3);
        let with_const = tr.constant(Matrix::from_rows(vec![vec![a.one()]]));
        assert!(nucleus_index(&[with_const], &v).is_err());
    }

    #[test]
    fn finite_scalar_det() {
        let fq = f(3);
        let x = trivial_extension(&fq);
        let a = x.a();
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let v = FilteredModule::residue(&x, &TamingModule::full(&a), &PrimeOfA::new(&a, a.var_elem()).unwrap(), 1).unwrap();
        // phi_1 = 2 tau on F_3 where tau = id: det = 1 + 2 Z
        let tr = TauRing::new(a.clone(), 1);
        let mut op = NuclearOperator::zero(1, 3);
        op.phis[0] = tr.monomial(Matrix::from_rows(vec![vec![a.constant(fq.from_int(2))]]), 1);
        let d = nuclear_det(&alg, &op, &v, None).unwrap();
        let lr = LaurentRing::new(alg.gr.clone(), 4);
        assert_eq!(d, lr.make(0, vec![vec![fq.one()], vec![fq.from_int(2)]], 4));
        assert_eq!(nuclear_det(&alg, &NuclearOperator::zero(1, 3), &v, None).unwrap(), lr.make(0, vec![vec![fq.one()]], 4));
    }

    #[test]
    fn trace_formula_carlitz_q2() {
        let fq = f(2);
        let x = trivial_extension(&fq);
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let rep = trace_check(&alg, &make_carlitz(&fq), &x, &TamingModule::full(&x.a()), 5).unwrap();
        assert!(rep.pass, "residual {:?}", rep.residual);
    }

    #[test]
    fn trace_formula_rank2_q2() {
        let fq = f(2);
        let x = trivial_extension(&fq);
        let a = x.a();
        let e = make_drinfeld(&fq, vec![a.one(), a.one()]).unwrap();
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let rep = trace_check(&alg, &e, &x, &TamingModule::full(&a), 3).unwrap();
        assert!(rep.pass, "residual {:?}", rep.residual);
    }

    #[test]
    fn nucleus_independence_cyclotomic() {
        let fq = f(3);
        let a = PolyRing::new(fq.clone());
        let x = carlitz_cyclotomic_deg1(&fq, &a.var_elem()).unwrap();
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let c = make_carlitz(&fq);
        let op = make_theta_operator(&c, 3);
        let v = FilteredModule::ambient(&x, &TamingModule::full(&a), 1).unwrap();
        let s = nucleus_index(&op.phis, &v).unwrap();
        let d1 = nuclear_det(&alg, &op, &v, Some(s)).unwrap();
        let d2 = nuclear_det(&alg, &op, &v, Some(s + 2)).unwrap();
        assert_eq!(d1, d2);
    }

    #[test]
    fn local_det_is_inverse_euler_factor() {
        let fq = f(3);
        let x = trivial_extension(&fq);
        let a = x.a();
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let c = make_carlitz(&fq);
        let m = TamingModule::full(&a);
        let v = PrimeOfA::new(&a, a.add(&a.var_elem(), &a.one())).unwrap();
        let n = 5;
        let ld = local_det(&alg, &c, &x, &m, &v, n).unwrap();
        let ef = euler_factor(&alg, &c, &x, &m, &v).unwrap();
        let gl = alg.laurent_ring(n as i64 + 1);
        let p = gl.mul(&ld, &ef.ratio(&alg, n).unwrap());
        assert!(gl.sub(&p, &gl.one()).coeffs.is_empty());
    }
}
