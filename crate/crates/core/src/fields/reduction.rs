//! Primes of A, taming modules, and the residue modules Lie_E(M/v), E(M/v).

use super::extension::{ExtensionData, OkElem};
use crate::algebra::{is_irreducible, APoly, ARing, FqElem, MatOps, Matrix, Ring};
use crate::error::{Error, Result};
use crate::grpring::GroupAlgebra;
use crate::modsize::{find_free_basis, is_equivariant, FiniteFqGModule, FqRep};
use crate::tmodule::TModuleSpec;

/// A monic irreducible P of A.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeOfA {
    pub p: APoly,
}

impl PrimeOfA {
    pub fn new(a: &ARing, p: APoly) -> Result<Self> {
        if !a.is_monic(&p) || p.degree().unwrap_or(0) == 0 {
            return Err(Error::Invalid(format!("{} is not a monic non-constant polynomial", a.fmt_poly(&p))));
        }
        if !is_irreducible(a, &p) {
            return Err(Error::Invalid(format!("{} is not irreducible", a.fmt_poly(&p))));
        }
        Ok(PrimeOfA { p })
    }

    pub fn degree(&self) -> usize {
        self.p.degree().unwrap()
    }
}

/// M = xi * O_K (xi = 1 gives O_K itself).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TamingModule {
    pub xi: APoly,
}

impl TamingModule {
    pub fn full(a: &ARing) -> Self {
        TamingModule { xi: a.one() }
    }

    pub fn is_all_of_ok(&self) -> bool {
        self.xi.len() == 1
    }

    /// A[G]-generators xi w_i as coordinate vectors.
    pub fn generators(&self, x: &ExtensionData) -> Vec<OkElem> {
        (0..x.d).map(|i| x.scale(&x.basis(i), &self.xi)).collect()
    }
}

/// M_xi = xi M with xi the product of the primes in S.
pub fn xi_taming(a: &ARing, s: &[PrimeOfA]) -> TamingModule {
    let mut xi = a.one();
    for v in s {
        xi = a.mul(&xi, &v.p);
    }
    TamingModule { xi }
}

/// O_K / v as an F_q-space with basis t^j w_i (j < deg P), index i * deg P + j.
pub struct ResidueRing<'a> {
    pub x: &'a ExtensionData,
    pub v: PrimeOfA,
    a: ARing,
    /// w_i^q mod P.
    wq: Vec<OkElem>,
}

impl<'a> ResidueRing<'a> {
    pub fn new(x: &'a ExtensionData, v: &PrimeOfA) -> Result<Self> {
        let a = x.a();
        let q = x.fq.order() as u64;
        let mut r = ResidueRing { x, v: v.clone(), a, wq: vec![] };
        r.wq = (0..x.d).map(|i| r.reduce(&x.pow(&x.basis(i), q))).collect::<Result<_>>()?;
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        self.x.d * self.v.degree()
    }

    pub fn reduce(&self, y: &OkElem) -> Result<OkElem> {
        y.iter().map(|c| self.a.rem(c, &self.v.p)).collect()
    }

    pub fn to_vec(&self, y: &OkElem) -> Vec<FqElem> {
        let dp = self.v.degree();
        let mut out = vec![FqElem(0); self.dim()];
        for (i, c) in y.iter().enumerate() {
            for (j, cj) in c.coeffs.iter().enumerate() {
                out[i * dp + j] = *cj;
            }
        }
        out
    }

    pub fn from_vec(&self, v: &[FqElem]) -> OkElem {
        let dp = self.v.degree();
        (0..self.x.d).map(|i| self.a.trim(v[i * dp..(i + 1) * dp].to_vec())).collect()
    }

    fn basis_elem(&self, idx: usize) -> OkElem {
        let dp = self.v.degree();
        let mut y = vec![self.a.zero(); self.x.d];
        y[idx / dp] = self.a.monomial(self.x.fq.one(), idx % dp);
        y
    }

    /// F_q-matrix of an F_q-linear map given on basis elements.
    fn matrix_of<F: Fn(&OkElem) -> Result<OkElem>>(&self, f: F) -> Result<Matrix<FqElem>> {
        let cols: Vec<Vec<FqElem>> = (0..self.dim())
            .map(|i| f(&self.basis_elem(i)).map(|y| self.to_vec(&y)))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_cols(cols))
    }

    /// Multiplication by c in A.
    pub fn mult_matrix(&self, c: &APoly) -> Result<Matrix<FqElem>> {
        self.matrix_of(|y| self.reduce(&self.x.scale(y, c)))
    }

    /// y -> y^q (F_q-linear on O_K/v).
    pub fn frob_matrix(&self) -> Result<Matrix<FqElem>> {
        let q = self.x.fq.order() as usize;
        self.matrix_of(|y| {
            let mut out = vec![self.a.zero(); self.x.d];
            for (i, c) in y.iter().enumerate() {
                if c.is_empty() {
                    continue;
                }
                let cq = self.a.rem(&self.a.inflate(c, q), &self.v.p)?;
                out = self.x.add(&out, &self.x.scale(&self.wq[i], &cq));
            }
            self.reduce(&out)
        })
    }

    pub fn group_matrix(&self, g: usize) -> Result<Matrix<FqElem>> {
        self.matrix_of(|y| self.reduce(&self.x.act(g, y)))
    }
}

/// Block matrix on V^n from an n x n matrix of A-scalars applied after a common map `inner`.
fn block_matrix(r: &ResidueRing, m: &Matrix<APoly>, inner: &Matrix<FqElem>) -> Result<Matrix<FqElem>> {
    let fq = &r.x.fq;
    let ops = MatOps::new(fq.clone());
    let dim = r.dim();
    let n = m.rows;
    let mut out = Matrix::filled(n * dim, n * dim, FqElem(0));
    for i in 0..n {
        for j in 0..n {
            let c = m.get(i, j);
            if c.is_empty() {
                continue;
            }
            let blk = ops.mul(&r.mult_matrix(c)?, inner);
            for a in 0..dim {
                for b in 0..dim {
                    out.set(i * dim + a, j * dim + b, *blk.get(a, b));
                }
            }
        }
    }
    Ok(out)
}

/// F_q-matrices of the Lie and module t-actions on (M/v)^n, with the G-representation.
pub struct ResidueActions {
    pub rep: FqRep,
    pub lie_t: Matrix<FqElem>,
    pub e_t: Matrix<FqElem>,
}

pub fn residue_actions(x: &ExtensionData, m: &TamingModule, v: &PrimeOfA, e: &TModuleSpec) -> Result<ResidueActions> {
    let r = ResidueRing::new(x, v)?;
    let fq = &x.fq;
    let ops = MatOps::new(fq.clone());
    let a = x.a();
    let dim = r.dim();
    let n = e.n;
    // tau on M/vM transported to O_K/v: y -> xi^{q-1} y^q
    let q = fq.order() as u64;
    let xi_pow = a.pow(&m.xi, q - 1);
    let tau = ops.mul(&r.mult_matrix(&xi_pow)?, &r.frob_matrix()?);
    let id = ops.identity(dim);
    let lie_t = block_matrix(&r, e.d_t(), &id)?;
    let mut e_t = ops.zeros(n * dim, n * dim);
    let mut tau_j = id.clone();
    for (j, mj) in e.mats.iter().enumerate() {
        if j > 0 {
            tau_j = ops.mul(&tau, &tau_j);
        }
        e_t = ops.add(&e_t, &block_matrix(&r, mj, &tau_j)?);
    }
    let mut rho = Vec::with_capacity(x.group.size());
    for g in 0..x.group.size() {
        let gm = r.group_matrix(g)?;
        let mut big = ops.zeros(n * dim, n * dim);
        for k in 0..n {
            for a_ in 0..dim {
                for b in 0..dim {
                    big.set(k * dim + a_, k * dim + b, *gm.get(a_, b));
                }
            }
        }
        rho.push(big);
    }
    Ok(ResidueActions { rep: FqRep { dim: n * dim, rho }, lie_t, e_t })
}

/// (Lie_E(M/v), E(M/v)) as F_q[G]-free modules.
pub fn reduction(
    alg: &GroupAlgebra,
    x: &ExtensionData,
    m: &TamingModule,
    v: &PrimeOfA,
    e: &TModuleSpec,
) -> Result<(FiniteFqGModule, FiniteFqGModule)> {
    let acts = residue_actions(x, m, v, e)?;
    if !is_equivariant(alg, &acts.rep, &acts.lie_t) || !is_equivariant(alg, &acts.rep, &acts.e_t) {
        return Err(Error::Invalid("t-actions on M/v do not commute with G".into()));
    }
    let seed = v.p.coeffs.iter().fold(17u64, |h, c| h.wrapping_mul(31).wrapping_add(c.0 as u64));
    let basis = find_free_basis(alg, &acts.rep, seed)?;
    let lie = FiniteFqGModule { rank: basis.rank, theta_t: basis.matrix_of(alg, &acts.lie_t) };
    let emod = FiniteFqGModule { rank: basis.rank, theta_t: basis.matrix_of(alg, &acts.e_t) };
    Ok((lie, emod))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, FiniteField, PolyRing};
    use crate::fields::extension::{carlitz_cyclotomic_deg1, trivial_extension};
    use crate::modsize::gsize;
    use crate::tmodule::make_carlitz;

    fn prime(a: &ARing, coeffs: &[i64]) -> PrimeOfA {
        let p = a.trim(coeffs.iter().map(|&c| a.base.from_int(c)).collect());
        PrimeOfA::new(a, p).unwrap()
    }

    fn f(p: u32) -> FiniteField {
        FiniteField::new(&FieldSpec::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn carlitz_mod_t_q2() {
        let fq = f(2);
        let a = PolyRing::new(fq.clone());
        let x = trivial_extension(&fq);
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let v = prime(&a, &[0, 1]);
        let (lie, em) = reduction(&alg, &x, &TamingModule::full(&a), &v, &make_carlitz(&fq)).unwrap();
        assert_eq!(lie.theta_t.get(0, 0), &vec![FqElem(0)]);
        assert_eq!(em.theta_t.get(0, 0), &vec![FqElem(1)]);
    }

    #[test]
    fn carlitz_factor_sizes_are_p_and_p_minus_one() {
        let fq = f(3);
        let a = PolyRing::new(fq.clone());
        let x = trivial_extension(&fq);
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let c = make_carlitz(&fq);
        for v in crate::algebra::enumerate_monic_irreducibles(&a, 3) {
            let v = PrimeOfA { p: v };
            let (lie, em) = reduction(&alg, &x, &TamingModule::full(&a), &v, &c).unwrap();
            let pl = gsize(&alg, &lie).unwrap();
            let pe = gsize(&alg, &em).unwrap();
            let expect_e = a.sub(&v.p, &a.one());
            assert_eq!(pl.coeffs.iter().map(|c| c[0]).collect::<Vec<_>>(), v.p.coeffs);
            assert_eq!(pe.coeffs.iter().map(|c| c[0]).collect::<Vec<_>>(), expect_e.coeffs);
        }
    }

    #[test]
    fn xi_scaling_kills_tau_at_s() {
        let fq = f(2);
        let a = PolyRing::new(fq.clone());
        let x = trivial_extension(&fq);
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let v = prime(&a, &[0, 1]);
        let m = xi_taming(&a, std::slice::from_ref(&v));
        let (lie, em) = reduction(&alg, &x, &m, &v, &make_carlitz(&fq)).unwrap();
        assert_eq!(lie.theta_t, em.theta_t);
    }

    #[test]
    fn cyclotomic_q3_mod_t_plus_one_is_free() {
        let fq = f(3);
        let a = PolyRing::new(fq.clone());
        let x = carlitz_cyclotomic_deg1(&fq, &a.var_elem()).unwrap();
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let v = prime(&a, &[1, 1]);
        let (lie, em) = reduction(&alg, &x, &TamingModule::full(&a), &v, &make_carlitz(&fq)).unwrap();
        assert_eq!(lie.rank, 1);
        assert_eq!(em.rank, 1);
    }
}
