//! G-sizes of finite F_q[G]-free A[G]-modules, Fitting-ideal membership and lattice indices.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::{self, Echelon};
use crate::algebra::{FqElem, MatOps, Matrix, Poly, PolyRing, Ring, EXACT};
use crate::error::{Error, Result};
use crate::grpring::{GrElem, GrLaurent, GroupAlgebra};

/// A finite A[G]-module presented as a free F_q[G]-module of rank `rank` with a t-action.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteFqGModule {
    pub rank: usize,
    /// Matrix of t acting on F_q[G]-coordinates (columns are images of basis vectors).
    pub theta_t: Matrix<GrElem>,
}

impl FiniteFqGModule {
    pub fn zero(alg: &GroupAlgebra) -> Self {
        FiniteFqGModule { rank: 0, theta_t: Matrix::filled(0, 0, alg.gr.zero()) }
    }

    pub fn direct_sum(&self, other: &Self, alg: &GroupAlgebra) -> Self {
        FiniteFqGModule {
            rank: self.rank + other.rank,
            theta_t: self.theta_t.direct_sum(&other.theta_t, alg.gr.zero()),
        }
    }
}

/// An F_q-linear representation: a vector space with matrices for each group element.
#[derive(Clone, Debug)]
pub struct FqRep {
    pub dim: usize,
    /// rho(g) for every group element g, in group index order.
    pub rho: Vec<Matrix<FqElem>>,
}

/// An F_q[G]-basis b_1..b_r of a free representation, with the F_q-basis rho(g) b_j.
#[derive(Clone, Debug)]
pub struct FreeBasis {
    pub rank: usize,
    /// Columns ordered (j, g) -> j * |G| + g.
    pub fq_basis: Matrix<FqElem>,
    fq_basis_inv: Matrix<FqElem>,
}

impl FreeBasis {
    /// F_q[G]-coordinates of an F_q-vector.
    pub fn coordinates(&self, alg: &GroupAlgebra, v: &[FqElem]) -> Vec<GrElem> {
        let ops = MatOps::new(alg.fq.clone());
        let c = ops.mul_vec(&self.fq_basis_inv, v);
        let n = alg.gr.size();
        (0..self.rank).map(|j| c[j * n..(j + 1) * n].to_vec()).collect()
    }

    /// Matrix over F_q[G] of a G-equivariant F_q-linear map.
    pub fn matrix_of(&self, alg: &GroupAlgebra, t: &Matrix<FqElem>) -> Matrix<GrElem> {
        let ops = MatOps::new(alg.fq.clone());
        let n = alg.gr.size();
        let mut out = Matrix::filled(self.rank, self.rank, alg.gr.zero());
        for j in 0..self.rank {
            let bj = self.fq_basis.col(j * n);
            let img = ops.mul_vec(t, &bj);
            for (i, c) in self.coordinates(alg, &img).into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        out
    }
}

/// Searches an F_q[G]-basis: standard vectors first, then seeded random vectors.
pub fn find_free_basis(alg: &GroupAlgebra, rep: &FqRep, seed: u64) -> Result<FreeBasis> {
    let fq = &alg.fq;
    let n = alg.gr.size();
    if rep.dim % n != 0 {
        return Err(Error::NotFree(format!("dimension {} not divisible by |G| = {n}", rep.dim)));
    }
    let rank = rep.dim / n;
    let ops = MatOps::new(fq.clone());
    let mut ech = Echelon::new(fq.clone(), rep.dim);
    let mut gens: Vec<Vec<FqElem>> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = fq.order();
    let mut tries = 0usize;
    let mut std_idx = 0usize;
    while gens.len() < rank {
        let cand: Vec<FqElem> = if std_idx < rep.dim {
            let mut v = vec![FqElem(0); rep.dim];
            v[std_idx] = fq.one();
            std_idx += 1;
            v
        } else {
            tries += 1;
            if tries > 400 + 50 * rep.dim {
                return Err(Error::NotFree(format!(
                    "no F_q[G]-basis found ({} of {rank} generators)",
                    gens.len()
                )));
            }
            (0..rep.dim).map(|_| FqElem(rng.gen_range(0..q))).collect()
        };
        let orbit: Vec<Vec<FqElem>> = rep.rho.iter().map(|m| ops.mul_vec(m, &cand)).collect();
        let mut trial = ech.clone();
        if orbit.iter().all(|v| trial.insert(v)) {
            ech = trial;
            gens.push(cand);
        }
    }
    let mut cols = Vec::with_capacity(rep.dim);
    for b in &gens {
        for m in &rep.rho {
            cols.push(ops.mul_vec(m, b));
        }
    }
    let fq_basis = Matrix::from_cols(cols);
    let fq_basis_inv = linalg::inverse(fq, &fq_basis).expect("basis vectors are independent");
    Ok(FreeBasis { rank, fq_basis, fq_basis_inv })
}

/// Checks that an F_q-linear map commutes with the group action.
pub fn is_equivariant(alg: &GroupAlgebra, rep: &FqRep, t: &Matrix<FqElem>) -> bool {
    let ops = MatOps::new(alg.fq.clone());
    rep.rho.iter().all(|m| ops.mul(t, m) == ops.mul(m, t))
}

/// Builds the module from an F_q-linear t-action on a free representation.
pub fn module_from_fq(alg: &GroupAlgebra, rep: &FqRep, t: &Matrix<FqElem>, seed: u64) -> Result<FiniteFqGModule> {
    if !is_equivariant(alg, rep, t) {
        return Err(Error::Invalid("t-action does not commute with G".into()));
    }
    let basis = find_free_basis(alg, rep, seed)?;
    Ok(FiniteFqGModule { rank: basis.rank, theta_t: basis.matrix_of(alg, t) })
}

/// The monic generator of Fitt^0 of B: the characteristic polynomial of t over F_q[G].
pub fn gsize(alg: &GroupAlgebra, b: &FiniteFqGModule) -> Result<Poly<GrElem>> {
    let ops = MatOps::new(alg.gr.clone());
    let cp = ops.berkowitz_charpoly(&b.theta_t)?;
    Ok(PolyRing::new(alg.gr.clone()).trim(cp.coeffs))
}

/// `gsize` as an exact Laurent value in u.
pub fn gsize_laurent(alg: &GroupAlgebra, b: &FiniteFqGModule) -> Result<GrLaurent> {
    let p = gsize(alg, b)?;
    Ok(alg.laurent_ring(EXACT).from_poly_t(&p))
}

/// Reads the monic part of a candidate as a polynomial of F_q[t][G].
pub fn candidate_polynomial(alg: &GroupAlgebra, candidate: &GrLaurent) -> Result<Poly<GrElem>> {
    let (xp, _unit) = alg.monic_part(candidate)?;
    alg.as_polynomial(&xp).map_err(|e| match e {
        Error::Invalid(_) => Error::InsufficientPrecision(
            "candidate has negative t-powers at working precision; cannot read it as a polynomial".into(),
        ),
        other => other,
    })
}

/// True when `f` divides `g` in F_q[G][t], tested in every local component.
pub fn divides(alg: &GroupAlgebra, f: &Poly<GrElem>, g: &Poly<GrElem>) -> Result<bool> {
    let lp = PolyRing::new(alg.local.clone());
    for (fc, gc) in alg.psi_poly(f).iter().zip(alg.psi_poly(g).iter()) {
        let lead = fc.leading().ok_or_else(|| Error::Invalid("division by zero polynomial".into()))?;
        if alg.local.is_unit(lead) {
            if !lp.rem(gc, fc)?.is_empty() {
                return Ok(false);
            }
        } else if !divides_by_solve(alg, fc, gc)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bounded-degree linear solve for h with f h = g over the local ring, as an F_q-system.
fn divides_by_solve(alg: &GroupAlgebra, f: &Poly<GrElem>, g: &Poly<GrElem>) -> Result<bool> {
    let l = &alg.local;
    let ext = l.field();
    let lp = PolyRing::new(l.clone());
    let ls = l.size();
    let hdeg = g.len().max(1);
    let out_len = (f.len() + hdeg).max(g.len());
    // unknowns: coefficients of h (hdeg * ls scalars over ext)
    let mut cols = Vec::new();
    for k in 0..hdeg {
        for e in 0..ls {
            let mono = lp.monomial(l.basis(e), k);
            let prod = lp.mul(f, &mono);
            let mut col = Vec::with_capacity(out_len * ls);
            for j in 0..out_len {
                col.extend(lp.coeff(&prod, j));
            }
            cols.push(col);
        }
    }
    let m = Matrix::from_cols(cols);
    let mut rhs = Vec::with_capacity(out_len * ls);
    for j in 0..out_len {
        rhs.extend(lp.coeff(g, j));
    }
    Ok(linalg::solve(ext, &m, &rhs).is_some())
}

/// Membership of a candidate value in Fitt^0 of an F_q[G]-free module.
pub fn fitting_contains(alg: &GroupAlgebra, candidate: &GrLaurent, b: &FiniteFqGModule) -> Result<bool> {
    let c = candidate_polynomial(alg, candidate)?;
    let f = gsize(alg, b)?;
    divides(alg, &f, &c)
}

/// Equality of principal ideals (f) = (candidate), by mutual divisibility.
pub fn fitting_equals(alg: &GroupAlgebra, candidate: &GrLaurent, b: &FiniteFqGModule) -> Result<bool> {
    let c = candidate_polynomial(alg, candidate)?;
    let f = gsize(alg, b)?;
    Ok(divides(alg, &f, &c)? && divides(alg, &c, &f)?)
}

/// An A[G]-lattice in k_inf[G]^r: columns are basis vectors in a fixed k_inf[G]-basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeBasis {
    pub basis: Matrix<GrLaurent>,
}

impl LatticeBasis {
    pub fn dim(&self) -> usize {
        self.basis.rows
    }
}

/// [L1 : L2]_G = det(X)^+ where L2 = L1 X; computed as det(B2)^+ / det(B1)^+.
pub fn lattice_index(alg: &GroupAlgebra, l1: &LatticeBasis, l2: &LatticeBasis, prec: i64) -> Result<GrLaurent> {
    if l1.dim() != l2.dim() || !l1.basis.is_square() || !l2.basis.is_square() {
        return Err(Error::Invalid("lattices of different or non-full rank".into()));
    }
    let gl = alg.laurent_ring(prec);
    let ops = MatOps::new(gl.clone());
    let d1 = ops.det(&l1.basis)?;
    let d2 = ops.det(&l2.basis)?;
    if d1.coeffs.is_empty() || d2.coeffs.is_empty() {
        return Err(Error::NotInvertible("singular change of basis".into()));
    }
    let (p1, _) = alg.monic_part(&d1)?;
    let (p2, _) = alg.monic_part(&d2)?;
    let inv = alg.laurent_inverse(&p1, prec)?;
    Ok(gl.truncate(&gl.mul(&p2, &inv), prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, FiniteField};
    use crate::grpring::GroupSpec;

    fn alg(p: u32, orders: Vec<u32>) -> GroupAlgebra {
        let fq = FiniteField::new(&FieldSpec::prime(p).unwrap()).unwrap();
        GroupAlgebra::new(fq, GroupSpec::new(orders).unwrap()).unwrap()
    }

    fn companion(alg: &GroupAlgebra, f: &[i64]) -> FiniteFqGModule {
        // f monic, ascending; t acts on A/(f) by multiplication
        let n = f.len() - 1;
        let r = &alg.gr;
        let mut m = Matrix::filled(n, n, r.zero());
        for i in 1..n {
            m.set(i, i - 1, r.one());
        }
        for i in 0..n {
            m.set(i, n - 1, r.scalar(alg.fq.from_int(-f[i])));
        }
        FiniteFqGModule { rank: n, theta_t: m }
    }

    #[test]
    fn gsize_of_cyclic_module_is_f() {
        let a = alg(3, vec![]);
        let b = companion(&a, &[2, 0, 1, 1]);
        let g = gsize(&a, &b).unwrap();
        let expect: Vec<GrElem> = [2, 0, 1, 1].iter().map(|&c| a.gr.scalar(a.fq.from_int(c))).collect();
        assert_eq!(g.coeffs, expect);
        assert_eq!(gsize(&a, &FiniteFqGModule::zero(&a)).unwrap().coeffs, vec![a.gr.one()]);
    }

    #[test]
    fn carlitz_mod_t_over_f2() {
        let a = alg(2, vec![]);
        let b = FiniteFqGModule { rank: 1, theta_t: Matrix::from_rows(vec![vec![a.gr.one()]]) };
        let g = gsize(&a, &b).unwrap();
        let pr = PolyRing::new(a.gr.clone());
        assert_eq!(pr.fmt_poly(&g), "t+1");
    }

    #[test]
    fn fitting_examples() {
        let a = alg(3, vec![]);
        let b = companion(&a, &[1, 1]);
        let gl = a.laurent_ring(6);
        let f = gsize_laurent(&a, &b).unwrap();
        assert!(fitting_contains(&a, &f, &b).unwrap());
        assert!(!fitting_contains(&a, &gl.one(), &b).unwrap());
        let t1 = gl.from_poly_t(&PolyRing::new(a.gr.clone()).from_coeffs(vec![a.gr.one(), a.gr.one()]));
        assert!(fitting_contains(&a, &gl.mul(&f, &t1), &b).unwrap());
        assert!(fitting_equals(&a, &f, &b).unwrap());
    }

    #[test]
    fn lattice_index_examples() {
        let a = alg(3, vec![]);
        let gl = a.laurent_ring(8);
        let one = gl.one();
        let l1 = LatticeBasis { basis: Matrix::from_rows(vec![vec![one.clone()]]) };
        assert_eq!(lattice_index(&a, &l1, &l1, 8).unwrap(), gl.truncate(&one, 8));
        let f = gl.exact(-1, vec![a.gr.scalar(a.fq.from_int(2)), a.gr.one()]);
        let l2 = LatticeBasis { basis: Matrix::from_rows(vec![vec![f]]) };
        let idx = lattice_index(&a, &l1, &l2, 8).unwrap();
        assert_eq!(gl.fmt_laurent(&idx), "t + 2 + O(t^-7)");
    }
}
