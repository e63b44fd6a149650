//! Euler factors and truncated Euler products: Theta(0), Theta_S(0) and Theta(m) via twists.

use rayon::prelude::*;

use crate::algebra::{enumerate_monic_irreducibles, APoly, Poly, PolyRing, Ring, TruncRing};
use crate::error::{Error, Result};
use crate::fields::{reduction, xi_taming, ExtensionData, PrimeOfA, TamingModule};
use crate::grpring::{GrElem, GrLaurent, GroupAlgebra, GroupRing};
use crate::modsize::gsize;
use crate::tmodule::{drinfeld_twist, TModuleKind, TModuleSpec};

/// |Lie_E(M/v)|_G / |E(M/v)|_G for one prime.
#[derive(Clone, Debug)]
pub struct EulerFactor {
    pub prime: PrimeOfA,
    pub num: Poly<GrElem>,
    pub den: Poly<GrElem>,
    /// Largest s with ratio = 1 mod u^s; None when the ratio is exactly 1.
    pub stab: Option<usize>,
}

/// Coefficients of u^k (k < len) of u^D p(1/u) for p monic of degree D.
fn reversed_series(gr: &GroupRing, p: &Poly<GrElem>, len: usize) -> Vec<GrElem> {
    let d = p.degree().unwrap_or(0);
    (0..len).map(|k| if k <= d { p.coeffs[d - k].clone() } else { gr.zero() }).collect()
}

impl EulerFactor {
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0)
    }

    /// True when the ratio is 1 modulo u^{n+1}.
    pub fn trivial_to(&self, n: usize) -> bool {
        self.stab.map_or(true, |s| s > n)
    }

    /// The ratio as a power series in u, truncated mod u^len.
    pub fn ratio_series(&self, alg: &GroupAlgebra, len: usize) -> Result<Vec<GrElem>> {
        let tr = TruncRing::new(alg.gr.clone(), len);
        let num = reversed_series(&alg.gr, &self.num, len);
        let den = reversed_series(&alg.gr, &self.den, len);
        let inv = tr
            .try_inv(&den)
            .ok_or_else(|| Error::NotInvertible("denominator of an Euler factor is not monic".into()))?;
        Ok(tr.mul(&num, &inv))
    }

    pub fn ratio(&self, alg: &GroupAlgebra, n: usize) -> Result<GrLaurent> {
        let s = self.ratio_series(alg, n + 1)?;
        Ok(alg.laurent_ring(n as i64 + 1).make(0, s, n as i64 + 1))
    }
}

pub fn euler_factor(
    alg: &GroupAlgebra,
    e: &TModuleSpec,
    x: &ExtensionData,
    m: &TamingModule,
    v: &PrimeOfA,
) -> Result<EulerFactor> {
    let (lie, emod) = reduction(alg, x, m, v, e)?;
    let num = gsize(alg, &lie)?;
    let den = gsize(alg, &emod)?;
    let pr = PolyRing::new(alg.gr.clone());
    let dn = num.degree().unwrap_or(0);
    if den.degree().unwrap_or(0) != dn || !pr.is_monic(&num) || !pr.is_monic(&den) {
        return Err(Error::Invalid("Euler factor sizes are not monic of equal degree".into()));
    }
    let diff = pr.sub(&num, &den);
    let stab = diff.degree().map(|k| dn - k);
    Ok(EulerFactor { prime: v.clone(), num, den, stab })
}

/// Limits on how far the prime-degree cutoff may be pushed.
#[derive(Clone, Copy, Debug)]
pub struct CutoffPolicy {
    pub max_degree: usize,
    /// Upper bound on the total number of primes enumerated.
    pub max_primes: u64,
}

impl Default for CutoffPolicy {
    fn default() -> Self {
        CutoffPolicy { max_degree: 16, max_primes: 60_000 }
    }
}

/// A truncated Euler product with its audit data.
#[derive(Clone, Debug)]
pub struct ThetaValue {
    pub value: GrLaurent,
    pub precision: usize,
    /// All primes of degree <= cutoff were multiplied in.
    pub cutoff: usize,
    /// Included factors, ascending degree then lexicographic.
    pub factors: Vec<EulerFactor>,
    /// Factors of degree cutoff + 1, all trivial mod u^{N+1}.
    pub certificate: Vec<EulerFactor>,
}

/// Starting cutoff N + n (1 + tau-degree).
pub fn initial_cutoff(e: &TModuleSpec, n: usize) -> usize {
    n + e.n * (1 + e.tau_degree())
}

fn primes_of_degree(a: &crate::algebra::ARing, d: usize, skip: &[PrimeOfA]) -> Vec<PrimeOfA> {
    let mut ps: Vec<APoly> = enumerate_monic_irreducibles(a, d);
    ps.sort_by(|x, y| x.coeffs.iter().rev().map(|c| c.0).cmp(y.coeffs.iter().rev().map(|c| c.0)));
    ps.into_iter().map(|p| PrimeOfA { p }).filter(|v| !skip.contains(v)).collect()
}

/// Rough count of monic irreducibles of degree d.
fn prime_count_estimate(q: u64, d: usize) -> u64 {
    q.saturating_pow(d as u32) / d as u64 + 1
}

fn factors_of_degree(
    alg: &GroupAlgebra,
    e: &TModuleSpec,
    x: &ExtensionData,
    m: &TamingModule,
    d: usize,
    skip: &[PrimeOfA],
) -> Result<Vec<EulerFactor>> {
    let primes = primes_of_degree(&x.a(), d, skip);
    primes.par_iter().map(|v| euler_factor(alg, e, x, m, v)).collect()
}

/// Product of the ratios mod u^{n+1}, folded in the given order.
pub fn product_of(alg: &GroupAlgebra, factors: &[EulerFactor], n: usize) -> Result<GrLaurent> {
    let tr = TruncRing::new(alg.gr.clone(), n + 1);
    let mut acc = tr.one();
    for f in factors.iter().filter(|f| !f.trivial_to(n)) {
        acc = tr.mul(&acc, &f.ratio_series(alg, n + 1)?);
    }
    Ok(alg.laurent_ring(n as i64 + 1).make(0, acc, n as i64 + 1))
}

/// Theta^{E,M}(0) mod u^{n+1}, omitting the primes in `skip`.
///
/// The cutoff D starts at `initial_cutoff` and grows until every factor of degree D and D + 1
/// is 1 mod u^{n+1}; the product then equals the one at cutoff D + 1.
pub fn theta_with(
    alg: &GroupAlgebra,
    e: &TModuleSpec,
    x: &ExtensionData,
    m: &TamingModule,
    n: usize,
    skip: &[PrimeOfA],
    policy: CutoffPolicy,
) -> Result<ThetaValue> {
    if n == 0 {
        return Err(Error::Invalid("precision must be at least 1".into()));
    }
    if e.fq != x.fq || alg.group() != &x.group {
        return Err(Error::Invalid("t-module, extension and group algebra disagree".into()));
    }
    let q = x.fq.order() as u64;
    let mut by_degree: Vec<Vec<EulerFactor>> = vec![vec![]];
    let mut enumerated = 0u64;
    let mut d = initial_cutoff(e, n);
    loop {
        while by_degree.len() <= d + 1 {
            let k = by_degree.len();
            enumerated += prime_count_estimate(q, k);
            if k > policy.max_degree || enumerated > policy.max_primes {
                let stabs: Vec<String> = by_degree
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, fs)| {
                        let s = fs.iter().filter_map(|f| f.stab).min();
                        format!("deg {k}: min stab {}", s.map_or("inf".into(), |s| s.to_string()))
                    })
                    .collect();
                return Err(Error::Certification(format!(
                    "cutoff rule did not certify precision {n} within degree {} ({})",
                    k - 1,
                    stabs.join(", ")
                )));
            }
            by_degree.push(factors_of_degree(alg, e, x, m, k, skip)?);
        }
        let top_ok = |k: usize| by_degree[k].iter().all(|f| f.trivial_to(n));
        if top_ok(d) && top_ok(d + 1) {
            break;
        }
        d += 1;
    }
    let certificate = by_degree.pop().unwrap_or_default();
    let factors: Vec<EulerFactor> = by_degree.into_iter().flatten().collect();
    let value = product_of(alg, &factors, n)?;
    Ok(ThetaValue { value, precision: n, cutoff: d, factors, certificate })
}

pub fn theta0(alg: &GroupAlgebra, e: &TModuleSpec, x: &ExtensionData, m: &TamingModule, n: usize) -> Result<ThetaValue> {
    theta_with(alg, e, x, m, n, &[], CutoffPolicy::default())
}

/// Theta_S(0): the Euler product over v outside S with M = O_K.
pub fn theta_s(alg: &GroupAlgebra, e: &TModuleSpec, x: &ExtensionData, s: &[PrimeOfA], n: usize) -> Result<ThetaValue> {
    theta_with(alg, e, x, &TamingModule::full(&x.a()), n, s, CutoffPolicy::default())
}

/// Theta_S(0) via the xi-scaled module M_xi, where the factors at S are 1.
pub fn theta_s_via_xi(
    alg: &GroupAlgebra,
    e: &TModuleSpec,
    x: &ExtensionData,
    s: &[PrimeOfA],
    n: usize,
) -> Result<ThetaValue> {
    theta_with(alg, e, x, &xi_taming(&x.a(), s), n, &[], CutoffPolicy::default())
}

/// Theta_S(m) = Theta_S^{E(m)}(0) for a Drinfeld module E.
pub fn theta_m(
    alg: &GroupAlgebra,
    e: &TModuleSpec,
    x: &ExtensionData,
    s: &[PrimeOfA],
    m: usize,
    n: usize,
) -> Result<ThetaValue> {
    match e.kind {
        TModuleKind::Carlitz | TModuleKind::Drinfeld { .. } => {}
        _ => return Err(Error::Unsupported("theta_m needs a Drinfeld module".into())),
    }
    let twisted = drinfeld_twist(e, m as u32)?;
    theta_s(alg, &twisted, x, s, n)
}

/// The Carlitz factor with Frobenius twisted by Nv^{-m}: P^{m+1} / (P^{m+1} - 1), mod u^{n+1}.
pub fn carlitz_twist_prediction(alg: &GroupAlgebra, p: &APoly, m: usize, n: usize) -> Result<GrLaurent> {
    let pg = PolyRing::new(alg.gr.clone());
    let lift = pg.trim(p.coeffs.iter().map(|c| alg.gr.scalar(*c)).collect());
    let num = pg.pow(&lift, m as u64 + 1);
    let den = pg.sub(&num, &pg.one());
    let f = EulerFactor { prime: PrimeOfA { p: p.clone() }, stab: None, num, den };
    f.ratio(alg, n)
}

/// The same product computed independently in each character component, then recombined.
pub fn product_by_components(alg: &GroupAlgebra, factors: &[EulerFactor], n: usize) -> Result<GrLaurent> {
    let tr = TruncRing::new(alg.local.clone(), n + 1);
    let mut comps = vec![tr.one(); alg.classes.len()];
    for f in factors {
        let nums = alg.psi_poly(&f.num);
        let dens = alg.psi_poly(&f.den);
        for (c, acc) in comps.iter_mut().enumerate() {
            let num = reversed_series(&alg.local, &nums[c], n + 1);
            let den = reversed_series(&alg.local, &dens[c], n + 1);
            let inv = tr
                .try_inv(&den)
                .ok_or_else(|| Error::NotInvertible("component denominator is not monic".into()))?;
            *acc = tr.mul(acc, &tr.mul(&num, &inv));
        }
    }
    let ll = crate::algebra::LaurentRing::new(alg.local.clone(), n as i64 + 1);
    let ls: Vec<GrLaurent> = comps.into_iter().map(|c| ll.make(0, c, n as i64 + 1)).collect();
    alg.psi_inv_laurent(&ls)
}
