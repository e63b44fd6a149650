//! Volumes of objects 0 -> K_inf^n / Lambda -> M -> H -> 0, the operator Delta_gamma and the
//! identities built on them.

use super::frames::{combine, components, contains, index_components, inverse_rel, to_relative, GLattice};
use super::taelman::{taelman_data, ClassModule, TaelmanData, TaelmanOptions};
use crate::algebra::{FiniteField, FqElem, Laurent, LaurentRing, Poly, Ring, EXACT};
use crate::error::{Error, Result};
use crate::fields::{ExtensionData, PrimeOfA, TamingModule};
use crate::grpring::{GrElem, GrLaurent, GroupAlgebra};
use crate::lvalue::{theta0, theta_m, ThetaValue};
use crate::modsize::{candidate_polynomial, divides};
use crate::nuclear::{nuclear_det, FilteredModule, NuclearOperator};
use crate::tmodule::{drinfeld_twist, TModuleSpec};

/// How the finite part H sits in M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gluing {
    /// M = K_inf^n / Lambda x H.
    Split,
    /// M = E(K_inf) / E(O_K^n) with Lambda = Exp^{-1}(O_K^n) and H = H(E/O_K).
    Exp,
}

#[derive(Clone, Debug)]
pub struct ArakelovObject {
    pub lattice: GLattice,
    /// Characteristic polynomials of t on the character parts of H.
    pub h: Vec<Poly<FqElem>>,
    pub gluing: Gluing,
}

impl ArakelovObject {
    /// Lie(K_inf) / Lambda.
    pub fn lie(lattice: GLattice) -> Self {
        let h = vec![Poly { coeffs: vec![FqElem(1)] }; lattice.comps.len()];
        ArakelovObject { lattice, h, gluing: Gluing::Split }
    }

    pub fn split(lattice: GLattice, h: &ClassModule) -> Self {
        ArakelovObject { lattice, h: h.charpolys.clone(), gluing: Gluing::Split }
    }

    /// E(K_inf) / E(O_K^n) read through Exp.
    pub fn from_exp(data: &TaelmanData) -> Self {
        ArakelovObject { lattice: data.lattice.lattice.clone(), h: data.h.charpolys.clone(), gluing: Gluing::Exp }
    }

    fn h_is_zero(&self) -> bool {
        self.h.iter().all(|p| p.coeffs.len() <= 1)
    }
}

fn div_rel(lr: &LaurentRing<FiniteField>, a: &Laurent<FqElem>, b: &Laurent<FqElem>, n: usize) -> Result<Laurent<FqElem>> {
    to_relative(lr, &lr.mul(a, &inverse_rel(lr, b, n)?), n)
}

/// Vol(M) = |Lambda'/Lambda x s(H)|_G / [Lambda' : Lambda_0]_G, per character, mod relative u^{n+1}.
///
/// |Lambda'/Lambda x s(H)|_G = [Lambda' : Lambda]_G |H|_G by multiplicativity of |.|_G. For the
/// split gluing any lattice Lambda' containing Lambda is admissible and containment is checked.
/// For the Exp gluing only Lambda' = Lambda is accepted: it is admissible when H = 0, and for
/// H != 0 the value agrees with that of any admissible lattice by the same multiplicativity.
pub fn vol(alg: &GroupAlgebra, obj: &ArakelovObject, lambda0: &GLattice, admissible: Option<&GLattice>, n: usize) -> Result<GrLaurent> {
    let fq = &alg.fq;
    let lam_p = match admissible {
        None => &obj.lattice,
        Some(l) => {
            if obj.gluing == Gluing::Exp && !obj.h_is_zero() && l != &obj.lattice {
                return Err(Error::Unsupported(
                    "admissibility of a lattice for a non-split gluing is not verified".into(),
                ));
            }
            if !contains(fq, l, &obj.lattice)? {
                return Err(Error::Invalid("lattice is not admissible: it does not contain Lambda".into()));
            }
            l
        }
    };
    let lr = LaurentRing::new(fq.clone(), EXACT);
    let quot = index_components(fq, lam_p, &obj.lattice, n)?;
    let base = index_components(fq, lam_p, lambda0, n)?;
    let mut out = Vec::with_capacity(quot.len());
    for ((q, b), h) in quot.iter().zip(&base).zip(&obj.h) {
        let hq = lr.mul(q, &lr.from_poly_t(h));
        out.push(div_rel(&lr, &hq, b, n)?);
    }
    combine(alg, &out)
}

/// An isomorphism gamma : M1 -> M2 = Lie(K_inf) / Lambda_2, recorded by the t-action it pulls back.
#[derive(Clone, Debug)]
pub enum GammaMap {
    /// gamma commutes with t.
    ALinear { n: usize },
    /// The identity E(K_inf)/E(O_K^n) -> Lie(K_inf)/O_K^n; in coordinates gamma is Exp_E.
    Exp(TModuleSpec),
}

/// Delta_gamma = sum_m delta_m Z^m with delta_m = (t - gamma^{-1} t gamma) t^{m-1}, t acting on M1.
pub fn delta_gamma(g: &GammaMap, count: usize) -> NuclearOperator {
    match g {
        GammaMap::ALinear { n } => NuclearOperator::zero(*n, count),
        GammaMap::Exp(e) => {
            let tr = e.tau_ring();
            let phi = e.phi_t();
            let head = tr.sub(&phi, &tr.constant(e.d_t().clone()));
            let mut phis = Vec::with_capacity(count);
            let mut pow = tr.one();
            for _ in 0..count {
                phis.push(tr.mul(&head, &pow));
                pow = tr.mul(&pow, &phi);
            }
            NuclearOperator { n: e.n, phis }
        }
    }
}

fn opts(n: usize) -> TaelmanOptions {
    TaelmanOptions { precision: n, ..TaelmanOptions::default() }
}

fn full(x: &ExtensionData) -> TamingModule {
    TamingModule::full(&x.a())
}

/// det(1 + Delta_gamma | M1) against Vol(M2) / Vol(M1) for gamma induced by Exp_E.
#[derive(Clone, Debug)]
pub struct VolumeReport {
    pub det: GrLaurent,
    pub vol1: GrLaurent,
    pub vol2: GrLaurent,
    pub ratio: GrLaurent,
    pub residual: GrLaurent,
    pub depth: usize,
    pub pass: bool,
}

pub fn volume_formula_check(alg: &GroupAlgebra, e: &TModuleSpec, x: &ExtensionData, n: usize) -> Result<VolumeReport> {
    let op = delta_gamma(&GammaMap::Exp(e.clone()), n);
    let v = FilteredModule::ambient(x, &full(x), e.n)?;
    let det = nuclear_det(alg, &op, &v, None)?;
    let data = taelman_data(alg, e, x, &opts(n))?;
    let l0 = GLattice::standard(&alg.fq, &data.frames);
    let vol1 = vol(alg, &ArakelovObject::from_exp(&data), &l0, None, n)?;
    let vol2 = vol(alg, &ArakelovObject::lie(l0.clone()), &l0, None, n)?;
    let lr = LaurentRing::new(alg.fq.clone(), EXACT);
    let r: Vec<Laurent<FqElem>> = components(alg, &vol2)
        .iter()
        .zip(components(alg, &vol1).iter())
        .map(|(a, b)| div_rel(&lr, a, b, n))
        .collect::<Result<_>>()?;
    let ratio = combine(alg, &r)?;
    let gl = alg.laurent_ring(n as i64 + 1);
    let residual = gl.truncate(&gl.sub(&det, &ratio), n as i64 + 1);
    let pass = residual.coeffs.is_empty();
    Ok(VolumeReport { det, vol1, vol2, ratio, residual, depth: data.depth, pass })
}

/// Theta against [Lie(O_K) : Exp^{-1}(O_K^n)]_G |H(E/O_K)|_G, and against Vol(E) / Vol(Lie).
#[derive(Clone, Debug)]
pub struct EtnfReport {
    pub theta: ThetaValue,
    pub index: GrLaurent,
    pub h_size: GrLaurent,
    pub h_dim: usize,
    pub product: GrLaurent,
    pub volume_ratio: GrLaurent,
    pub residual: GrLaurent,
    pub depth: usize,
    pub pass: bool,
}

pub fn etnf_check(alg: &GroupAlgebra, e: &TModuleSpec, x: &ExtensionData, n: usize) -> Result<EtnfReport> {
    if !alg.is_tame() {
        return Err(Error::Unsupported("the equivariant class number formula is checked for p not dividing |G|".into()));
    }
    let data = taelman_data(alg, e, x, &opts(n))?;
    let theta = theta0(alg, e, x, &full(x), n)?;
    let lr = LaurentRing::new(alg.fq.clone(), EXACT);
    let l0 = GLattice::standard(&alg.fq, &data.frames);
    let idx = index_components(&alg.fq, &l0, &data.lattice.lattice, n)?;
    let prod: Vec<Laurent<FqElem>> = idx
        .iter()
        .zip(&data.h.charpolys)
        .map(|(i, h)| to_relative(&lr, &lr.mul(i, &lr.from_poly_t(h)), n))
        .collect::<Result<_>>()?;
    let product = combine(alg, &prod)?;
    let vol_e = vol(alg, &ArakelovObject::from_exp(&data), &l0, None, n)?;
    let vol_lie = vol(alg, &ArakelovObject::lie(l0.clone()), &l0, None, n)?;
    let vr: Vec<Laurent<FqElem>> = components(alg, &vol_e)
        .iter()
        .zip(components(alg, &vol_lie).iter())
        .map(|(a, b)| div_rel(&lr, a, b, n))
        .collect::<Result<_>>()?;
    let volume_ratio = combine(alg, &vr)?;
    let gl = alg.laurent_ring(n as i64 + 1);
    let residual = gl.truncate(&gl.sub(&theta.value, &product), n as i64 + 1);
    let pass = residual.coeffs.is_empty() && gl.truncate(&gl.sub(&volume_ratio, &product), n as i64 + 1).coeffs.is_empty();
    Ok(EtnfReport {
        theta,
        index: combine(alg, &idx)?,
        h_size: data.h.gsize(alg)?,
        h_dim: data.h.dim(),
        product,
        volume_ratio,
        residual,
        depth: data.depth,
        pass,
    })
}

/// Theta / [Lie(O_K) : Lambda']_G against Fitt^0 H.
#[derive(Clone, Debug)]
pub struct FittingReport {
    pub theta: ThetaValue,
    pub candidate: GrLaurent,
    pub h_size: Poly<GrElem>,
    pub h_dim: usize,
    /// The candidate lies in Fitt^0 H.
    pub contains: bool,
    /// The candidate generates Fitt^0 H.
    pub equal: bool,
}

fn fitting_report(alg: &GroupAlgebra, theta: ThetaValue, data: &TaelmanData, n: usize) -> Result<FittingReport> {
    let lr = LaurentRing::new(alg.fq.clone(), EXACT);
    let l0 = GLattice::standard(&alg.fq, &data.frames);
    let idx = index_components(&alg.fq, &l0, &data.lattice.lattice, n)?;
    let cand: Vec<Laurent<FqElem>> = components(alg, &theta.value)
        .iter()
        .zip(&idx)
        .map(|(t, i)| div_rel(&lr, t, i, n))
        .collect::<Result<_>>()?;
    let candidate = combine(alg, &cand)?;
    let cpoly = candidate_polynomial(alg, &candidate)?;
    let h_size = data.h.gsize_poly(alg)?;
    let contains = divides(alg, &h_size, &cpoly)?;
    let equal = contains && divides(alg, &cpoly, &h_size)?;
    Ok(FittingReport { theta, candidate, h_size, h_dim: data.h.dim(), contains, equal })
}

/// Brumer-Stark: Theta(0) / [Lie(O_K) : Exp^{-1}(O_K^n)]_G in Fitt^0 H(E/O_K), p not dividing |G|.
pub fn brumer_stark_check(alg: &GroupAlgebra, e: &TModuleSpec, x: &ExtensionData, n: usize) -> Result<FittingReport> {
    let data = taelman_data(alg, e, x, &opts(n))?;
    let theta = theta0(alg, e, x, &full(x), n)?;
    fitting_report(alg, theta, &data, n)
}

/// Coates-Sinnott: the same statement for the twist E(m).
pub fn coates_sinnott_check(
    alg: &GroupAlgebra,
    e: &TModuleSpec,
    x: &ExtensionData,
    s: &[PrimeOfA],
    m: usize,
    n: usize,
) -> Result<FittingReport> {
    if !s.is_empty() {
        return Err(Error::Unsupported(
            "the twisted check uses M = O_K, which needs p not dividing |G| and S empty".into(),
        ));
    }
    let twisted = drinfeld_twist(e, m as u32)?;
    let data = taelman_data(alg, &twisted, x, &opts(n))?;
    let theta = theta_m(alg, e, x, s, m, n)?;
    fitting_report(alg, theta, &data, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, MatOps, Matrix, PolyRing};
    use crate::fields::{carlitz_cyclotomic_deg1, trivial_extension};
    use crate::grpring::GroupSpec;
    use crate::modsize::FqRep;
    use crate::tmodule::{carlitz_tensor, make_carlitz, make_drinfeld};
    use crate::volume::frames::char_frames;
    use crate::volume::{regulator_index, TaelmanOptions};

    fn f(p: u32) -> FiniteField {
        FiniteField::new(&FieldSpec::prime(p).unwrap()).unwrap()
    }

    fn setup(p: u32) -> (FiniteField, ExtensionData, GroupAlgebra, Vec<crate::volume::CharFrame>) {
        let fq = f(p);
        let x = trivial_extension(&fq);
        let alg = GroupAlgebra::new(fq.clone(), GroupSpec::trivial()).unwrap();
        let frames = char_frames(&alg, &x, 1).unwrap();
        (fq, x, alg, frames)
    }

    #[test]
    fn volume_examples() {
        let (fq, _x, alg, frames) = setup(3);
        let lr = LaurentRing::new(fq.clone(), EXACT);
        let l0 = GLattice::standard(&fq, &frames);
        let one = vol(&alg, &ArakelovObject::lie(l0.clone()), &l0, None, 4).unwrap();
        assert_eq!(components(&alg, &one)[0], lr.make(0, vec![fq.one()], 5));
        // Lambda = (t + 1) Lambda_0 has volume t + 1
        let c = lr.exact(-1, vec![fq.one(), fq.one()]);
        let v = vol(&alg, &ArakelovObject::lie(l0.scaled(&fq, &c)), &l0, None, 4).unwrap();
        assert_eq!(components(&alg, &v)[0], lr.make(-1, vec![fq.one(), fq.one()], 4));
        // split H = A/(t): volume t, also with Lambda' = t^{-1} Lambda
        let h = ClassModule::new(
            &fq,
            &frames,
            &alg,
            Matrix::from_rows(vec![vec![FqElem(0)]]),
            FqRep { dim: 1, rho: vec![MatOps::new(fq.clone()).identity(1)] },
        )
        .unwrap();
        let obj = ArakelovObject::split(l0.clone(), &h);
        let v = vol(&alg, &obj, &l0, None, 4).unwrap();
        assert_eq!(components(&alg, &v)[0], lr.make(-1, vec![fq.one()], 4));
        let wider = l0.scaled(&fq, &lr.exact(1, vec![fq.one()]));
        let v2 = vol(&alg, &obj, &l0, Some(&wider), 4).unwrap();
        assert_eq!(v, v2);
        // a lattice that does not contain Lambda is rejected
        let narrower = l0.scaled(&fq, &lr.exact(-1, vec![fq.one()]));
        assert!(vol(&alg, &obj, &l0, Some(&narrower), 4).is_err());
    }

    #[test]
    fn volume_ratio_is_independent_of_lambda0() {
        let (fq, x, alg, _) = setup(2);
        let c = make_carlitz(&fq);
        let data = taelman_data(&alg, &c, &x, &opts(4)).unwrap();
        let l0 = GLattice::standard(&fq, &data.frames);
        let lr = LaurentRing::new(fq.clone(), EXACT);
        let shifted = l0.scaled(&fq, &lr.exact(-1, vec![fq.one(), fq.one()]));
        let ratio = |base: &GLattice| {
            let a = vol(&alg, &ArakelovObject::from_exp(&data), base, None, 4).unwrap();
            let b = vol(&alg, &ArakelovObject::lie(l0.clone()), base, None, 4).unwrap();
            div_rel(&lr, &components(&alg, &a)[0], &components(&alg, &b)[0], 4).unwrap()
        };
        assert_eq!(ratio(&l0), ratio(&shifted));
    }

    #[test]
    fn carlitz_preimage_lattice_is_generated_by_log_one() {
        // q = 2: H = 0 and Exp^{-1}(A) = A log(1), log(1) = sum_k (-1)^k / L_k
        let (fq, x, alg, _) = setup(2);
        let c = make_carlitz(&fq);
        let data = taelman_data(&alg, &c, &x, &opts(6)).unwrap();
        assert_eq!(data.h.dim(), 0);
        assert_eq!(data.lattice.degrees, vec![vec![0]]);
        let lam = &data.lattice.vectors[0][0][0][0];
        // 1 + 1/(t^2 + t) + 1/((t^2+t)(t^4+t)) + ... = 1 + u^2 + u^3 + u^4 + ...
        let k = c.k();
        let a = c.a();
        let l1 = a.sub(&a.var_elem(), &a.pow(&a.var_elem(), 2));
        let l2 = a.mul(&l1, &a.sub(&a.var_elem(), &a.pow(&a.var_elem(), 4)));
        let l3 = a.mul(&l2, &a.sub(&a.var_elem(), &a.pow(&a.var_elem(), 8)));
        let mut oracle = k.from_poly(a.one());
        for l in [l1, l2, l3] {
            oracle = k.add(&oracle, &k.make(a.one(), l));
        }
        let lr = LaurentRing::new(fq.clone(), EXACT);
        let expect = k.to_laurent(&oracle, 9).unwrap();
        assert!(lr.eq_to(lam, &expect, 9).unwrap());
    }

    #[test]
    fn etnf_carlitz_q2() {
        let (fq, x, alg, _) = setup(2);
        let r = etnf_check(&alg, &make_carlitz(&fq), &x, 4).unwrap();
        assert!(r.pass, "residual {:?}", r.residual);
        assert_eq!(r.h_dim, 0);
    }

    #[test]
    fn etnf_rank_two_q2() {
        let (fq, x, alg, _) = setup(2);
        let a = PolyRing::new(fq.clone());
        let e = make_drinfeld(&fq, vec![a.one(), a.one()]).unwrap();
        let r = etnf_check(&alg, &e, &x, 3).unwrap();
        assert!(r.pass, "residual {:?}", r.residual);
    }

    #[test]
    fn etnf_cyclotomic_q3() {
        let fq = f(3);
        let a = PolyRing::new(fq.clone());
        let x = carlitz_cyclotomic_deg1(&fq, &a.var_elem()).unwrap();
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let r = etnf_check(&alg, &make_carlitz(&fq), &x, 3).unwrap();
        assert!(r.pass, "residual {:?}", r.residual);
    }

    #[test]
    fn volume_formula_carlitz_q2() {
        let (fq, x, alg, _) = setup(2);
        let r = volume_formula_check(&alg, &make_carlitz(&fq), &x, 3).unwrap();
        assert!(r.pass, "residual {:?}", r.residual);
    }

    #[test]
    fn delta_of_a_linear_map_vanishes() {
        let op = delta_gamma(&GammaMap::ALinear { n: 1 }, 3);
        assert!(op.phis.iter().all(|p| p.coeffs.is_empty()));
    }

    #[test]
    fn brumer_stark_carlitz_trivial() {
        let (fq, x, alg, _) = setup(2);
        let r = brumer_stark_check(&alg, &make_carlitz(&fq), &x, 4).unwrap();
        assert!(r.contains && r.equal);
    }
    fn drinfeld(fq: &FiniteField, coeffs: &[usize]) -> TModuleSpec {
        // phi(t) = t + sum_j t^{coeffs[j]} tau^{j+1}
        let a = PolyRing::new(fq.clone());
        make_drinfeld(fq, coeffs.iter().map(|&k| a.pow(&a.var_elem(), k as u64)).collect()).unwrap()
    }

    #[test]
    fn class_module_is_stable_in_depth() {
        let (fq, x, alg, _) = setup(2);
        let e = drinfeld(&fq, &[3]);
        let base = taelman_data(&alg, &e, &x, &opts(3)).unwrap();
        assert_eq!(base.h.dim(), 1);
        for extra in 1..=2 {
            let o = TaelmanOptions { depth: Some(base.depth + extra), ..opts(3) };
            let d = taelman_data(&alg, &e, &x, &o).unwrap();
            assert_eq!(d.h.charpolys, base.h.charpolys);
            let i1 = regulator_index(&alg, &base, 3).unwrap();
            let i2 = regulator_index(&alg, &d, 3).unwrap();
            assert_eq!(i1, i2);
        }
    }

    #[test]
    fn etnf_with_nontrivial_class_module() {
        // over F_2, phi(t) = t + t^3 tau has a one-dimensional H and t + t^4 tau a two-dimensional one
        let (fq, x, alg, _) = setup(2);
        for (k, dim) in [(3, 1), (4, 2)] {
            let e = drinfeld(&fq, &[k]);
            let r = etnf_check(&alg, &e, &x, 3).unwrap();
            assert!(r.pass, "residual {:?}", r.residual);
            assert_eq!(r.h_dim, dim);
            let bs = brumer_stark_check(&alg, &e, &x, 3).unwrap();
            assert!(bs.contains && bs.equal);
        }
    }

    #[test]
    fn etnf_carlitz_square_q2() {
        // Theta = zeta(2) = 1 + u^4 + u^6 + ...; the u^4 term needs the index through d[t]
        let (fq, x, alg, _) = setup(2);
        let e = carlitz_tensor(&fq, 2).unwrap();
        let r = etnf_check(&alg, &e, &x, 5).unwrap();
        assert!(r.pass, "residual {:?}", r.residual);
        assert_eq!(r.h_dim, 0);
        assert!(volume_formula_check(&alg, &e, &x, 5).unwrap().pass);
    }

    #[test]
    fn volume_formula_synthetic_instances() {
        // gamma = Exp_E for several Drinfeld modules; Exp_E(z) = z + D_1 z^q + ... converges everywhere
        let (fq, x, alg, _) = setup(2);
        for coeffs in [&[0usize, 0][..], &[2], &[0, 1], &[2, 0]] {
            let r = volume_formula_check(&alg, &drinfeld(&fq, coeffs), &x, 3).unwrap();
            assert!(r.pass, "{coeffs:?}: residual {:?}", r.residual);
        }
        let (fq3, x3, alg3, _) = setup(3);
        let r = volume_formula_check(&alg3, &make_carlitz(&fq3), &x3, 3).unwrap();
        assert!(r.pass, "residual {:?}", r.residual);
    }

    #[test]
    fn coates_sinnott_carlitz_twist() {
        let (fq, x, alg, _) = setup(2);
        let r = coates_sinnott_check(&alg, &make_carlitz(&fq), &x, &[], 1, 3).unwrap();
        assert!(r.contains && r.equal);
    }

    #[test]
    fn brumer_stark_cyclotomic_q3() {
        let fq = f(3);
        let a = PolyRing::new(fq.clone());
        let x = carlitz_cyclotomic_deg1(&fq, &a.var_elem()).unwrap();
        let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
        let r = brumer_stark_check(&alg, &make_carlitz(&fq), &x, 3).unwrap();
        assert!(r.contains && r.equal);
    }
}
