//! The exp-preimage lattice Exp^{-1}(O_K^n) and the class module O_K^n-cokernel of Exp.
//!
//! Both come from one finite computation. Fix s with Exp and Log isometries of U_{s-1}, and
//! let W = K_inf^n / (O_K^n + U_s), an F_q-space with basis u^e w_i e_k, 1 <= e < s.
//!
//! * Exp(K_inf^n) + O_K^n contains U_{s-1}, and it is the A-span (through phi(t)) of
//!   Exp(O_inf^n). So its image S in W is the phi(t)-closure of the images of u^e w_i e_k,
//!   0 <= e < s, and H = W / S.
//! * z = p + f (p polynomial of t-degree <= B, f with exponents in [1, s)) has
//!   Exp(z) in O_K^n + U_s iff z - Log(r) lies in the preimage lattice, where r is the
//!   fractional part of Exp(z). This identifies the kernel of z -> Exp(z) mod (O_K^n + U_s)
//!   with the lattice elements of degree <= B.

use super::expmap::ExpMap;
use super::frames::{char_frames, combine_polys, CharFrame, GLattice};
use crate::algebra::linalg::{self, Echelon};
use crate::algebra::{FiniteField, FqElem, Laurent, LaurentRing, MatOps, Matrix, Poly, Ring};
use crate::error::{Error, Result};
use crate::fields::{ExtensionData, KInf};
use crate::grpring::{GrElem, GrLaurent, GroupAlgebra};
use crate::modsize::{module_from_fq, FiniteFqGModule, FqRep};
use crate::tmodule::TModuleSpec;

#[derive(Clone, Debug)]
pub struct TaelmanOptions {
    /// Depth s of the quotient W; defaults to one past the isometry radius.
    pub depth: Option<usize>,
    /// Largest t-degree B tried when searching for a lattice basis.
    pub max_degree: usize,
    /// Lattice coordinates are computed so that indices are known mod u^{precision + 1}.
    pub precision: usize,
}

impl Default for TaelmanOptions {
    fn default() -> Self {
        TaelmanOptions { depth: None, max_degree: 10, precision: 8 }
    }
}

/// A finite A[G]-module given by F_q-matrices, with the characteristic polynomial of t per character.
#[derive(Clone, Debug)]
pub struct ClassModule {
    pub fq: FiniteField,
    pub t: Matrix<FqElem>,
    pub rep: FqRep,
    /// Characteristic polynomial of t on e_chi H, in frame order.
    pub charpolys: Vec<Poly<FqElem>>,
}

impl ClassModule {
    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    /// Builds the eigenpart data from t and G matrices.
    pub fn new(fq: &FiniteField, frames: &[CharFrame], alg: &GroupAlgebra, t: Matrix<FqElem>, rep: FqRep) -> Result<Self> {
        let ops = MatOps::new(fq.clone());
        let mut charpolys = Vec::with_capacity(frames.len());
        for fr in frames {
            let e = alg.idempotent(fr.class);
            let mut p = ops.zeros(rep.dim, rep.dim);
            for (g, c) in e.iter().enumerate() {
                if c.0 != 0 {
                    p = ops.add(&p, &ops.scale(&rep.rho[g], c));
                }
            }
            let cols = linalg::independent_columns(fq, &p);
            let rows: Vec<usize> = (0..rep.dim).collect();
            let img = p.submatrix(&rows, &cols);
            let timg = ops.mul(&t, &img);
            let restricted = linalg::solve_many(fq, &img, &timg)
                .ok_or_else(|| Error::Invalid("t does not preserve a character eigenpart".into()))?;
            charpolys.push(ops.berkowitz_charpoly(&restricted)?);
        }
        Ok(ClassModule { fq: fq.clone(), t, rep, charpolys })
    }

    /// |H|_G as an exact element of k_inf[G].
    pub fn gsize(&self, alg: &GroupAlgebra) -> Result<GrLaurent> {
        combine_polys(alg, &self.charpolys)
    }

    /// |H|_G as a polynomial of F_q[G][t].
    pub fn gsize_poly(&self, alg: &GroupAlgebra) -> Result<Poly<GrElem>> {
        let comps: Vec<Poly<GrElem>> = self
            .charpolys
            .iter()
            .map(|p| Poly { coeffs: p.coeffs.iter().map(|c| alg.local_scalar(*c)).collect() })
            .collect();
        alg.psi_inv_poly(&comps)
    }

    /// The same module as a free F_q[G]-module, when it is one.
    pub fn as_free(&self, alg: &GroupAlgebra) -> Result<FiniteFqGModule> {
        module_from_fq(alg, &self.rep, &self.t, 0xc1a55)
    }
}

/// Exp^{-1}(O_K^n) with a reduced basis per character.
#[derive(Clone, Debug)]
pub struct ExpInvLattice {
    /// Coordinates for the k_inf-structure through d_E[t], in which indices are taken.
    pub lattice: GLattice,
    /// t-degrees of the reduced basis elements, per frame.
    pub degrees: Vec<Vec<i64>>,
    /// Basis elements in K_inf^n, per frame.
    pub vectors: Vec<Vec<Vec<KInf>>>,
    /// Absolute precision of the coordinates.
    pub precision: i64,
    /// Largest degree B used in the search.
    pub search_degree: usize,
}

#[derive(Clone, Debug)]
pub struct TaelmanData {
    pub frames: Vec<CharFrame>,
    pub h: ClassModule,
    pub lattice: ExpInvLattice,
    pub depth: usize,
}

struct Quotient<'a> {
    em: &'a ExpMap,
    n: usize,
    d: usize,
    s: usize,
}

impl Quotient<'_> {
    fn w(&self) -> usize {
        self.s - 1
    }

    fn dim(&self) -> usize {
        self.n * self.d * self.w()
    }

    fn lr(&self) -> &LaurentRing<FiniteField> {
        &self.em.kinf.lr
    }

    fn monomial(&self, k: usize, i: usize, e: i64) -> Vec<KInf> {
        let kinf = &self.em.kinf;
        let mut y = vec![kinf.zero(); self.n];
        y[k] = kinf.scalar_basis(self.lr().monomial(kinf.x.fq.one(), e), i);
        y
    }

    /// Coordinates in W of y mod (O_K^n + U_s).
    fn to_w(&self, y: &[KInf]) -> Result<Vec<FqElem>> {
        let lr = self.lr();
        let mut v = vec![FqElem(0); self.dim()];
        for k in 0..self.n {
            for i in 0..self.d {
                for e in 1..self.s {
                    v[(k * self.d + i) * self.w() + e - 1] = lr.coeff(&y[k][i], e as i64)?;
                }
            }
        }
        Ok(v)
    }

    fn from_w(&self, v: &[FqElem]) -> Vec<KInf> {
        let kinf = &self.em.kinf;
        let lr = self.lr();
        let mut y = vec![kinf.zero(); self.n];
        for k in 0..self.n {
            for i in 0..self.d {
                let base = (k * self.d + i) * self.w();
                y[k][i] = lr.exact(1, v[base..base + self.w()].to_vec());
            }
        }
        y
    }

    /// Matrix of the representative map y -> phi(t) y on W.
    fn t_matrix(&self) -> Result<Matrix<FqElem>> {
        let dim = self.dim();
        let mut cols = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut v = vec![FqElem(0); dim];
            v[j] = self.em.kinf.x.fq.one();
            cols.push(self.to_w(&self.em.phi_t(&self.from_w(&v)))?);
        }
        Ok(Matrix::from_cols(cols))
    }

    fn rep(&self, frames_rho: &[Matrix<FqElem>]) -> FqRep {
        let dim = self.dim();
        let w = self.w();
        let rho = frames_rho
            .iter()
            .map(|g| {
                let mut m = Matrix::filled(dim, dim, FqElem(0));
                for k in 0..self.n {
                    for i in 0..self.d {
                        for i2 in 0..self.d {
                            let c = *g.get(i2, i);
                            for j in 0..w {
                                m.set((k * self.d + i2) * w + j, (k * self.d + i) * w + j, c);
                            }
                        }
                    }
                }
                m
            })
            .collect();
        FqRep { dim, rho }
    }
}

/// C(m, k) mod p for any integer m and k >= 0, by Lucas' theorem.
fn binom_mod(m: i64, k: u64, p: u64) -> u64 {
    if m < 0 {
        // C(m, k) = (-1)^k C(k - m - 1, k)
        let c = binom_mod(k as i64 - m - 1, k, p);
        return if k % 2 == 1 { (p - c) % p } else { c };
    }
    let (mut m, mut k) = (m as u64, k);
    let mut out = 1;
    while k > 0 {
        let (a, b) = (m % p, k % p);
        if b > a {
            return 0;
        }
        // small binomial by the multiplicative formula, exact in u128 for a < p
        let mut c: u128 = 1;
        for i in 0..b {
            c = c * (a - i) as u128 / (i + 1) as u128;
        }
        out = out * (c % p as u128) as u64 % p;
        m /= p;
        k /= p;
    }
    out
}

/// The k-th Hasse derivative in t of a Laurent series in u = 1/t.
fn hasse(fq: &FiniteField, lr: &LaurentRing<FiniteField>, x: &Laurent<FqElem>, k: usize) -> Laurent<FqElem> {
    let p = fq.char_p() as u64;
    let coeffs = x
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            // d^k t^m = C(m, k) t^(m - k) with m = -(val + i)
            let b = binom_mod(-(x.val + i as i64), k as u64, p);
            fq.mul(c, &fq.from_digit_vec(&[b as u32]))
        })
        .collect();
    let prec = if x.is_exact() { x.prec } else { x.prec + k as i64 };
    lr.make(x.val + k as i64, coeffs, prec)
}

/// Coordinates of z in the k_inf-structure of Lie(K_inf) through d_E[t] = t + N: the f with
/// z = f(d_E[t]) = sum_k N^k D_k f, found by iterating f = z - sum_{k>0} N^k D_k f.
fn lie_coordinates(em: &ExpMap, z: &[KInf]) -> Vec<KInf> {
    let nil = em.e.nilpotent_part();
    if (0..z.len()).all(|r| (0..z.len()).all(|c| nil.get(r, c).is_empty())) {
        return z.to_vec();
    }
    let kinf = &em.kinf;
    let fq = &kinf.x.fq;
    let n = z.len();
    let apply_n = |v: &[KInf]| -> Vec<KInf> {
        (0..n)
            .map(|r| {
                (0..n).fold(kinf.zero(), |acc, c| {
                    let entry = nil.get(r, c);
                    if entry.is_empty() { acc } else { kinf.add(&acc, &kinf.scale_a(&v[c], entry)) }
                })
            })
            .collect()
    };
    let mut f = z.to_vec();
    // N^n = 0, so n rounds reach the fixed point
    for _ in 0..n {
        let mut next = z.to_vec();
        for k in 1..n {
            let mut term: Vec<KInf> =
                f.iter().map(|y| y.iter().map(|c| hasse(fq, &kinf.lr, c, k)).collect()).collect();
            for _ in 0..k {
                term = apply_n(&term);
            }
            next = next.iter().zip(&term).map(|(a, b)| kinf.sub(a, b)).collect();
        }
        f = next;
    }
    f
}

fn constant_gmats(x: &ExtensionData) -> Vec<Matrix<FqElem>> {
    x.gaction.iter().map(|m| m.map(|p| p.coeffs.first().copied().unwrap_or(FqElem(0)))).collect()
}

/// Domain of the kernel search: u^e w_i e_k for e in [-b, s), ordered by e then (k, i).
struct Domain {
    b: i64,
    nd: usize,
    s: usize,
}

impl Domain {
    fn dim(&self) -> usize {
        (self.b as usize + self.s) * self.nd
    }

    fn exponent(&self, block: usize) -> i64 {
        block as i64 - self.b
    }
}

/// Picks a reduced basis from a spanning set of L_B (vectors in domain coordinates).
fn reduced_basis(fq: &FiniteField, dom: &Domain, vectors: &[Vec<FqElem>], want: usize) -> Option<(Vec<Vec<FqElem>>, Vec<i64>)> {
    let mut ech = Echelon::new(fq.clone(), dom.dim());
    for v in vectors {
        ech.insert(v);
    }
    let nd = dom.nd;
    let blocks = dom.b as usize + dom.s;
    let mut lead = Echelon::new(fq.clone(), nd);
    let mut chosen = Vec::new();
    let mut degrees = Vec::new();
    // lowest degree first: blocks with the largest exponent first
    for block in (0..blocks).rev() {
        for (p, row) in ech.rows() {
            if p / nd != block {
                continue;
            }
            if lead.insert(&row[block * nd..(block + 1) * nd]) {
                chosen.push(row.clone());
                degrees.push(-dom.exponent(block));
            }
        }
    }
    if chosen.len() != want {
        return None;
    }
    // the reduced basis must account for all of L_B
    let expected: i64 = degrees.iter().map(|&dg| dom.b - dg + 1).sum();
    if expected != ech.rank() as i64 {
        return None;
    }
    Some((chosen, degrees))
}

fn check_options(e: &TModuleSpec, x: &ExtensionData) -> Result<()> {
    if e.fq.order() != x.fq.order() {
        return Err(Error::Invalid("t-module and extension are over different fields".into()));
    }
    Ok(())
}

/// Computes H(E/O_K), Exp^{-1}(O_K^n) and its reduced basis.
pub fn taelman_data(alg: &GroupAlgebra, e: &TModuleSpec, x: &ExtensionData, opts: &TaelmanOptions) -> Result<TaelmanData> {
    check_options(e, x)?;
    let frames = char_frames(alg, x, e.n)?;
    let em = ExpMap::new(e, x)?;
    let s = match opts.depth {
        Some(s) if s < em.iso + 1 => {
            return Err(Error::Invalid(format!("depth {s} is below the isometry radius {} plus one", em.iso)))
        }
        Some(s) => s,
        None => em.iso + 1,
    };
    let fq = &x.fq;
    let quo = Quotient { em: &em, n: e.n, d: x.d, s };
    let nd = e.n * x.d;
    let gmats = constant_gmats(x);

    // images of u^e w_i e_k for e in [-b, s), memoized across b
    let mut images: std::collections::HashMap<(i64, usize), Vec<FqElem>> = std::collections::HashMap::new();
    let mut image = |em: &ExpMap, ex: i64, c: usize| -> Result<Vec<FqElem>> {
        if let Some(v) = images.get(&(ex, c)) {
            return Ok(v.clone());
        }
        let y = quo.monomial(c / x.d, c % x.d, ex);
        let v = quo.to_w(&em.exp(&y, s as i64)?)?;
        images.insert((ex, c), v.clone());
        Ok(v)
    };

    // class module: phi(t)-closure of the images of the O_inf^n generators
    let tmat = quo.t_matrix()?;
    let ops = MatOps::new(fq.clone());
    let mut span = Echelon::new(fq.clone(), quo.dim());
    let mut queue = Vec::new();
    for ex in 0..s as i64 {
        for c in 0..nd {
            let v = image(&em, ex, c)?;
            if span.insert(&v) {
                queue.push(v);
            }
        }
    }
    while let Some(v) = queue.pop() {
        let tv = ops.mul_vec(&tmat, &v);
        if span.insert(&tv) {
            queue.push(tv);
        }
    }
    let pivots: Vec<usize> = span.rows().iter().map(|(p, _)| *p).collect();
    let free: Vec<usize> = (0..quo.dim()).filter(|j| !pivots.contains(j)).collect();
    let project = |v: &[FqElem]| -> Vec<FqElem> {
        let r = span.reduce(v);
        free.iter().map(|&j| r[j]).collect()
    };
    let unit = |j: usize| {
        let mut v = vec![FqElem(0); quo.dim()];
        v[j] = fq.one();
        v
    };
    let t_h = Matrix::from_cols(free.iter().map(|&j| project(&ops.mul_vec(&tmat, &unit(j)))).collect());
    let wrep = quo.rep(&gmats);
    let h_rep = FqRep {
        dim: free.len(),
        rho: wrep.rho.iter().map(|g| Matrix::from_cols(free.iter().map(|&j| project(&ops.mul_vec(g, &unit(j)))).collect())).collect(),
    };
    let h = ClassModule::new(fq, &frames, alg, t_h, h_rep)?;

    // lattice: kernel of the image map on the degree-b domain
    let mut found = None;
    for b in 0..=opts.max_degree as i64 {
        let dom = Domain { b, nd, s };
        let mut cols = Vec::with_capacity(dom.dim());
        for block in 0..(b as usize + s) {
            for c in 0..nd {
                cols.push(image(&em, dom.exponent(block), c)?);
            }
        }
        let m = Matrix::from_cols(cols);
        let ker = linalg::kernel(fq, &m);
        let mut per_frame = Vec::with_capacity(frames.len());
        for fr in &frames {
            let projected: Vec<Vec<FqElem>> = ker
                .iter()
                .map(|v| {
                    let mut out = Vec::with_capacity(v.len());
                    for chunk in v.chunks(nd) {
                        out.extend(fr.project(fq, chunk));
                    }
                    out
                })
                .collect();
            match reduced_basis(fq, &dom, &projected, fr.dim()) {
                Some(r) => per_frame.push(r),
                None => break,
            }
        }
        if per_frame.len() == frames.len() {
            found = Some((dom, per_frame));
            break;
        }
    }
    let (dom, per_frame) = found.ok_or_else(|| {
        Error::Certification(format!(
            "no reduced basis of the exp-preimage lattice up to degree {}",
            opts.max_degree
        ))
    })?;

    // lift the truncated kernel vectors to lattice elements z - Log(frac Exp z)
    let min_deg = per_frame.iter().flat_map(|(_, d)| d.iter().copied()).min().unwrap_or(0);
    let prec = (s as i64).max(opts.precision as i64 + 3 - min_deg);
    let kinf = &em.kinf;
    let lr = &kinf.lr;
    let mut comps = Vec::with_capacity(frames.len());
    let mut vectors = Vec::with_capacity(frames.len());
    let mut degrees = Vec::with_capacity(frames.len());
    for (fr, (rows, degs)) in frames.iter().zip(&per_frame) {
        let mut cols = Vec::with_capacity(rows.len());
        let mut vecs = Vec::with_capacity(rows.len());
        for row in rows {
            let mut z: Vec<KInf> = vec![kinf.zero(); e.n];
            for (idx, c) in row.iter().enumerate() {
                if c.0 == 0 {
                    continue;
                }
                let (block, slot) = (idx / nd, idx % nd);
                let term = lr.monomial(*c, dom.exponent(block));
                let (k, i) = (slot / x.d, slot % x.d);
                z[k][i] = lr.add(&z[k][i], &term);
            }
            let ez = em.exp(&z, prec)?;
            let frac: Vec<KInf> = ez.iter().map(|y| y.iter().map(|c| lr.frac_part(c)).collect()).collect();
            if frac.iter().any(|y| kinf.valuation(y).is_some_and(|v| v < s as i64)) {
                return Err(Error::Certification("kernel vector does not map into O_K^n + U_s".into()));
            }
            let corr = em.log(&frac, prec)?;
            let lam: Vec<KInf> = z.iter().zip(&corr).map(|(a, b)| kinf.sub(a, b)).collect();
            let flat: Vec<Laurent<FqElem>> =
                lie_coordinates(&em, &lam).iter().flat_map(|y| y.iter().cloned()).collect();
            cols.push(fr.coords(lr, &flat));
            vecs.push(lam);
        }
        comps.push(Matrix::from_cols(cols));
        vectors.push(vecs);
        degrees.push(degs.clone());
    }
    let lattice = ExpInvLattice {
        lattice: GLattice { comps },
        degrees,
        vectors,
        precision: prec,
        search_degree: dom.b as usize,
    };
    Ok(TaelmanData { frames, h, lattice, depth: s })
}

pub fn class_module(alg: &GroupAlgebra, e: &TModuleSpec, x: &ExtensionData, opts: &TaelmanOptions) -> Result<ClassModule> {
    Ok(taelman_data(alg, e, x, opts)?.h)
}

pub fn expinv_lattice(alg: &GroupAlgebra, e: &TModuleSpec, x: &ExtensionData, opts: &TaelmanOptions) -> Result<ExpInvLattice> {
    Ok(taelman_data(alg, e, x, opts)?.lattice)
}

/// [Lie(O_K) : Exp^{-1}(O_K^n)]_G at relative precision n + 1.
pub fn regulator_index(alg: &GroupAlgebra, data: &TaelmanData, n: usize) -> Result<GrLaurent> {
    let l0 = GLattice::standard(&alg.fq, &data.frames);
    super::frames::g_index(alg, &l0, &data.lattice.lattice, n)
}
