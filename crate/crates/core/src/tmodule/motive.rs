//! Anderson motives of the built-in families and their conversion back to t-modules.
//!
//! A motive here is K[T]^r with a semilinear tau given by tau(e_j) = column j of `phi`.
//! The t-module is read off from a K{tau}-basis mu_1..mu_d of the motive: if
//! T mu_j = sum_l P_jl(tau) mu_l then phi_E(t) = (P_jl).

use super::spec::{make_carlitz, TModuleKind, TModuleSpec};
use super::taupoly::Frobenius;
use crate::algebra::linalg::{self, Echelon};
use crate::algebra::{APoly, ARing, FiniteField, MatOps, Matrix, Poly, PolyRing, RatFunc, RatFuncField, Ring};
use crate::error::{Error, Result};

/// Elements of A[T].
pub type ATPoly = Poly<APoly>;

#[derive(Clone, Debug)]
pub struct MotiveSpec {
    pub fq: FiniteField,
    pub rank: usize,
    /// tau(e_j) = sum_i phi[i][j] e_i, entries in A[T].
    pub phi: Matrix<ATPoly>,
}

impl MotiveSpec {
    fn a(&self) -> ARing {
        PolyRing::new(self.fq.clone())
    }

    fn at(&self) -> PolyRing<ARing> {
        PolyRing::with_var(self.a(), "T")
    }

    /// X = T - t.
    fn x(&self) -> ATPoly {
        let a = self.a();
        self.at().from_coeffs(vec![a.neg(&a.var_elem()), a.one()])
    }

    /// Twist of A-coefficients (T is tau-invariant).
    fn twist(&self, v: &[ATPoly]) -> Vec<ATPoly> {
        let a = self.a();
        let at = self.at();
        v.iter().map(|p| at.map(p, |c| a.frob(c, 1))).collect()
    }

    pub fn tau(&self, v: &[ATPoly]) -> Vec<ATPoly> {
        MatOps::new(self.at()).mul_vec(&self.phi, &self.twist(v))
    }

    /// Degree in T of det(phi), which is the dimension of the t-module.
    pub fn dimension(&self) -> Result<usize> {
        let det = MatOps::new(self.at()).det(&self.phi)?;
        let d = det.degree().ok_or_else(|| Error::Invalid("motive with singular tau-matrix".into()))?;
        // det must be a unit times (T - t)^d
        let at = self.at();
        let lead = det.leading().unwrap();
        let c = lead.coeffs.first().copied().filter(|_| lead.len() == 1);
        let Some(c) = c else {
            return Err(Error::Unsupported("det of the tau-matrix has a non-constant leading coefficient".into()));
        };
        let expect = at.scale(&at.pow(&self.x(), d as u64), &self.a().constant(c));
        if expect != det {
            return Err(Error::Unsupported("det of the tau-matrix is not a unit times (T-t)^d".into()));
        }
        Ok(d)
    }

    pub fn tensor(&self, other: &MotiveSpec) -> MotiveSpec {
        let at = self.at();
        let r = self.rank * other.rank;
        let mut phi = Matrix::filled(r, r, at.zero());
        for i1 in 0..self.rank {
            for j1 in 0..self.rank {
                for i2 in 0..other.rank {
                    for j2 in 0..other.rank {
                        let v = at.mul(self.phi.get(i1, j1), other.phi.get(i2, j2));
                        phi.set(i1 * other.rank + i2, j1 * other.rank + j2, v);
                    }
                }
            }
        }
        MotiveSpec { fq: self.fq.clone(), rank: r, phi }
    }
}

/// Motive of C^{(x) m}: rank 1, tau = (T - t)^m.
pub fn carlitz_power_motive(fq: &FiniteField, m: u32) -> MotiveSpec {
    let base = MotiveSpec { fq: fq.clone(), rank: 1, phi: Matrix::filled(1, 1, PolyRing::with_var(PolyRing::new(fq.clone()), "T").one()) };
    let at = base.at();
    let phi = Matrix::from_rows(vec![vec![at.pow(&base.x(), m as u64)]]);
    MotiveSpec { phi, ..base }
}

/// Motive of a Drinfeld module with unit leading coefficient, basis 1, tau, ..., tau^{r-1}.
pub fn drinfeld_motive(e: &TModuleSpec) -> Result<MotiveSpec> {
    let a = e.a();
    if e.n != 1 || e.d_t().get(0, 0) != &a.var_elem() {
        return Err(Error::Unsupported("motive construction needs a Drinfeld module".into()));
    }
    let r = e.tau_degree();
    let coeffs: Vec<APoly> = (1..=r).map(|j| e.mats[j].get(0, 0).clone()).collect();
    let lead = &coeffs[r - 1];
    let linv = if lead.len() == 1 { e.fq.try_inv(&lead.coeffs[0]) } else { None };
    let Some(linv) = linv else {
        return Err(Error::Unsupported("Drinfeld leading coefficient must be a nonzero constant".into()));
    };
    let at = PolyRing::with_var(a.clone(), "T");
    let c = |p: APoly| at.constant(p);
    let mut phi = Matrix::filled(r, r, at.zero());
    for j in 0..r - 1 {
        phi.set(j + 1, j, at.one());
    }
    // a_r tau^r = (T - t) - sum_{i<r} a_i tau^i
    let x = at.from_coeffs(vec![a.neg(&a.var_elem()), a.one()]);
    phi.set(0, r - 1, at.scale(&x, &a.constant(linv)));
    for i in 1..r {
        let v = a.neg(&a.scale(&coeffs[i - 1], &linv));
        phi.set(i, r - 1, c(v));
    }
    Ok(MotiveSpec { fq: e.fq.clone(), rank: r, phi })
}

fn flatten(k: &RatFuncField, v: &[ATPoly], width: usize) -> Vec<RatFunc> {
    let mut out = Vec::with_capacity(v.len() * width);
    for p in v {
        for d in 0..width {
            let c = p.coeffs.get(d).cloned().unwrap_or_default();
            out.push(k.from_poly(c));
        }
    }
    out
}

fn max_deg(v: &[ATPoly]) -> usize {
    v.iter().map(|p| p.len()).max().unwrap_or(0)
}

/// Converts a motive into a t-module via a K{tau}-basis of powers of (T - t).
pub fn motive_to_tmodule(mot: &MotiveSpec, kind: TModuleKind) -> Result<TModuleSpec> {
    let d = mot.dimension()?;
    let r = mot.rank;
    let at = mot.at();
    let k = RatFuncField::new(mot.fq.clone());
    let phi_deg = mot.phi.data.iter().map(|p| p.len()).max().unwrap_or(1);
    let width = 2 * (d + phi_deg + 2);
    let unit = |i: usize, p: ATPoly| -> Vec<ATPoly> {
        let mut v = vec![at.zero(); r];
        v[i] = p;
        v
    };
    // K-span of tau(M) inside degree < width
    let mut ech = Echelon::new(k.clone(), r * width);
    for i in 0..r {
        let mut j = 0usize;
        loop {
            let v = MatOps::new(at.clone()).mul_vec(&mot.phi, &unit(i, at.monomial(mot.a().one(), j)));
            if max_deg(&v) > width {
                break;
            }
            ech.insert(&flatten(&k, &v, width));
            j += 1;
        }
    }
    let mut mus: Vec<Vec<ATPoly>> = Vec::new();
    'outer: for e in 0..=d {
        for i in 0..r {
            let v = unit(i, at.pow(&mot.x(), e as u64));
            if ech.insert(&flatten(&k, &v, width)) {
                mus.push(v);
                if mus.len() == d {
                    break 'outer;
                }
            }
        }
    }
    if mus.len() != d {
        return Err(Error::Unsupported("could not find a K{tau}-basis of the motive".into()));
    }
    let t_var = at.var_elem();
    for lmax in 1..=(d + r) {
        // columns tau^k mu_l, k <= lmax
        let mut cols: Vec<Vec<ATPoly>> = Vec::new();
        for mu in &mus {
            let mut v = mu.clone();
            let mut pows = vec![v.clone()];
            for _ in 0..lmax {
                v = mot.tau(&v);
                pows.push(v.clone());
            }
            cols.extend(pows);
        }
        let targets: Vec<Vec<ATPoly>> = mus.iter().map(|mu| mu.iter().map(|p| at.mul(p, &t_var)).collect()).collect();
        let w = cols.iter().chain(targets.iter()).map(|v| max_deg(v)).max().unwrap_or(1);
        let m = Matrix::from_cols(cols.iter().map(|v| flatten(&k, v, w)).collect());
        let sols: Option<Vec<Vec<RatFunc>>> = targets.iter().map(|tv| linalg::solve(&k, &m, &flatten(&k, tv, w))).collect();
        let Some(sols) = sols else { continue };
        if sols.iter().flatten().any(|c| !k.is_poly(c)) {
            return Err(Error::Unsupported("t-action of the motive has non-polynomial coefficients".into()));
        }
        let a = mot.a();
        let mut mats = vec![Matrix::filled(d, d, a.zero()); lmax + 1];
        for (j, sol) in sols.iter().enumerate() {
            for l in 0..d {
                for kk in 0..=lmax {
                    // column index: l * (lmax + 1) + kk
                    mats[kk].set(j, l, sol[l * (lmax + 1) + kk].num.clone());
                }
            }
        }
        return TModuleSpec::new(kind, mot.fq.clone(), mats);
    }
    Err(Error::Unsupported("t-action of the motive not found within the degree bound".into()))
}

/// C^{(x) m}, a t-module of dimension m.
pub fn carlitz_tensor(fq: &FiniteField, m: u32) -> Result<TModuleSpec> {
    if m == 0 {
        return Err(Error::Invalid("carlitz_tensor needs m >= 1".into()));
    }
    if m == 1 {
        return Ok(make_carlitz(fq));
    }
    motive_to_tmodule(&carlitz_power_motive(fq, m), TModuleKind::CarlitzTensor { m })
}

/// E(m) = E (x) C^{(x) m} for a Drinfeld module E.
pub fn drinfeld_twist(e: &TModuleSpec, m: u32) -> Result<TModuleSpec> {
    if m == 0 {
        return Ok(e.clone());
    }
    if e.kind == TModuleKind::Carlitz {
        return carlitz_tensor(&e.fq, m + 1);
    }
    let mot = drinfeld_motive(e)?.tensor(&carlitz_power_motive(&e.fq, m));
    let coeffs = match &e.kind {
        TModuleKind::Drinfeld { coeffs } => coeffs.clone(),
        _ => (1..=e.tau_degree()).map(|j| e.mats[j].get(0, 0).clone()).collect(),
    };
    motive_to_tmodule(&mot, TModuleKind::DrinfeldTwist { coeffs, m })
}
