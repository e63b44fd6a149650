//! Property checks shared by the `properties` suite and the acceptance summary.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tmod_lvalues::algebra::{
    APoly, FieldSpec, FiniteField, FqElem, LaurentRing, MatOps, Matrix, PolyRing, Ring, EXACT,
};
use tmod_lvalues::fields::{
    carlitz_cyclotomic_deg1, trivial_extension, ExtensionData, TamingModule,
};
use tmod_lvalues::grpring::{GrElem, GrLaurent, GroupAlgebra, GroupSpec};
use tmod_lvalues::modsize::{gsize, FiniteFqGModule};
use tmod_lvalues::nuclear::{nuclear_det, nucleus_index, FilteredModule, NuclearOperator};
use tmod_lvalues::tmodule::{
    carlitz_tensor, drinfeld_twist, exp_coeffs, functional_equation_residual, make_carlitz,
    make_drinfeld, TModuleSpec, TauRing,
};

type Check = std::result::Result<(), TestCaseError>;

pub const MONIC_CASES: u32 = 630;
pub const ALGEBRA_CASES: u32 = 200;
pub const NUCLEAR_CASES: u32 = 24;
pub const EXP_CASES: u32 = 24;

/// (p, r, group orders): trivial, tame split, tame with characters outside F_q, wild, mixed.
pub const GROUPS: &[(u32, u32, &[u32])] = &[
    (2, 1, &[]),
    (3, 1, &[2]),
    (2, 1, &[3]),
    (2, 1, &[2]),
    (3, 1, &[3]),
    (2, 1, &[2, 3]),
    (5, 1, &[4]),
    (2, 2, &[3]),
    (3, 1, &[2, 2]),
];

fn algebra(i: usize) -> GroupAlgebra {
    let (p, r, orders) = GROUPS[i];
    let fq = FiniteField::new(&FieldSpec::conventional(p, r).unwrap()).unwrap();
    GroupAlgebra::new(fq, GroupSpec::new(orders.to_vec()).unwrap()).unwrap()
}

fn rand_fq(fq: &FiniteField, rng: &mut ChaCha8Rng) -> FqElem {
    FqElem(rng.gen_range(0..fq.order()))
}

fn rand_gr(alg: &GroupAlgebra, rng: &mut ChaCha8Rng) -> GrElem {
    (0..alg.gr.size()).map(|_| rand_fq(&alg.fq, rng)).collect()
}

fn rand_unit(alg: &GroupAlgebra, rng: &mut ChaCha8Rng) -> GrElem {
    loop {
        let x = rand_gr(alg, rng);
        if alg.is_unit(&x) {
            return x;
        }
    }
}

/// A unit of F_q((1/t))[G] with unit leading coefficient, relative precision `len`.
fn rand_laurent_unit(alg: &GroupAlgebra, rng: &mut ChaCha8Rng, len: usize) -> GrLaurent {
    let val = rng.gen_range(-3i64..=3);
    let mut coeffs = vec![rand_unit(alg, rng)];
    coeffs.extend((1..len).map(|_| rand_gr(alg, rng)));
    alg.laurent_ring(EXACT).make(val, coeffs, val + len as i64)
}

/// A unit of F_q[t][G]: a constant unit, times 1 + n t with n nilpotent when G has a p-part.
fn rand_poly_unit(alg: &GroupAlgebra, rng: &mut ChaCha8Rng) -> tmod_lvalues::algebra::Poly<GrElem> {
    let pg = PolyRing::new(alg.gr.clone());
    let c = pg.constant(rand_unit(alg, rng));
    let p = alg.fq.char_p() as usize;
    let g = alg.group();
    let Some(k) = g.orders.iter().position(|&n| n as usize % p == 0) else {
        return c;
    };
    // (sigma - 1)^{order/p} with sigma of order divisible by p is nilpotent
    let sigma = g.generator(k);
    let mut nil = alg.gr.sub(&alg.gr.basis(sigma), &alg.gr.one());
    for _ in 1..(g.orders[k] as usize / p) {
        nil = alg
            .gr
            .mul(&nil, &alg.gr.sub(&alg.gr.basis(sigma), &alg.gr.one()));
    }
    let nil = alg.gr.scale(&nil, &rand_fq(&alg.fq, rng));
    pg.mul(&c, &pg.trim(vec![alg.gr.one(), nil]))
}

fn agree(gl: &LaurentRing<tmod_lvalues::grpring::GroupRing>, a: &GrLaurent, b: &GrLaurent) -> bool {
    gl.sub(a, b).coeffs.is_empty()
}

fn rand_a(fq: &FiniteField, rng: &mut ChaCha8Rng, deg: usize) -> APoly {
    PolyRing::new(fq.clone()).trim((0..=deg).map(|_| rand_fq(fq, rng)).collect())
}

/// A scalar operator sum_m (sum_l c_{m,l} tau^l) Z^m with tau-degrees 1..=2 and A-degrees <= 1.
fn rand_operator(fq: &FiniteField, rng: &mut ChaCha8Rng, count: usize) -> NuclearOperator {
    let a = PolyRing::new(fq.clone());
    let tr = TauRing::new(a.clone(), 1);
    let phis = (0..count)
        .map(|_| {
            let mut acc = tr.zero();
            for l in 1..=2 {
                let c = rand_a(fq, rng, 1);
                acc = tr.add(&acc, &tr.monomial(Matrix::from_rows(vec![vec![c]]), l));
            }
            acc
        })
        .collect();
    NuclearOperator { n: 1, phis }
}

fn nuclear_setups() -> Vec<(GroupAlgebra, ExtensionData)> {
    let f2 = FiniteField::new(&FieldSpec::prime(2).unwrap()).unwrap();
    let f3 = FiniteField::new(&FieldSpec::prime(3).unwrap()).unwrap();
    let a3 = PolyRing::new(f3.clone());
    let cyc = carlitz_cyclotomic_deg1(&f3, &a3.var_elem()).unwrap();
    [trivial_extension(&f2), trivial_extension(&f3), cyc]
        .into_iter()
        .map(|x| (GroupAlgebra::new(x.fq.clone(), x.group.clone()).unwrap(), x))
        .collect()
}

fn builtin_modules(fq: &FiniteField, rng: &mut ChaCha8Rng) -> Vec<TModuleSpec> {
    let r = rng.gen_range(1..=2);
    let mut coeffs: Vec<APoly> = (0..r).map(|_| rand_a(fq, rng, 2)).collect();
    // drinfeld_twist needs a nonzero constant top coefficient
    let top = FqElem(rng.gen_range(1..fq.order()));
    *coeffs.last_mut().unwrap() = PolyRing::new(fq.clone()).constant(top);
    let d = make_drinfeld(fq, coeffs).unwrap();
    let mut out = vec![make_carlitz(fq), carlitz_tensor(fq, 2).unwrap(), d.clone()];
    if fq.order() <= 3 {
        out.push(carlitz_tensor(fq, 3).unwrap());
        out.push(drinfeld_twist(&d, 1).unwrap());
    }
    out
}

pub fn monic_part_round_trip(gi: usize, seed: u64) -> Check {
    let alg = algebra(gi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gl = alg.laurent_ring(EXACT);
    let x = rand_laurent_unit(&alg, &mut rng, 6);
    let (plus, w) = alg.monic_part(&x).unwrap();
    prop_assert!(alg.is_monic(&plus).unwrap());
    prop_assert!(agree(&gl, &gl.mul(&plus, &gl.from_poly_t(&w)), &x));
    // a monic element is its own monic part, and scaling by a polynomial unit is undone
    let (again, w1) = alg.monic_part(&plus).unwrap();
    prop_assert!(agree(&gl, &again, &plus));
    prop_assert_eq!(w1, PolyRing::new(alg.gr.clone()).one());
    let u = rand_poly_unit(&alg, &mut rng);
    let (back, w2) = alg.monic_part(&gl.mul(&plus, &gl.from_poly_t(&u))).unwrap();
    prop_assert!(agree(&gl, &back, &plus));
    prop_assert_eq!(w2, u);
    Ok(())
}

pub fn psi_is_a_ring_isomorphism(gi: usize, seed: u64) -> Check {
    let alg = algebra(gi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = (rand_gr(&alg, &mut rng), rand_gr(&alg, &mut rng));
    let (pa, pb) = (alg.psi(&a), alg.psi(&b));
    let prod = alg.psi(&alg.gr.mul(&a, &b));
    let sum = alg.psi(&alg.gr.add(&a, &b));
    for c in 0..alg.classes.len() {
        prop_assert_eq!(&prod[c], &alg.local.mul(&pa[c], &pb[c]));
        prop_assert_eq!(&sum[c], &alg.local.add(&pa[c], &pb[c]));
    }
    prop_assert!(alg.psi(&alg.gr.one()).iter().all(|y| alg.local.is_one(y)));
    prop_assert_eq!(alg.psi_inv(&pa).unwrap(), a);
    Ok(())
}

pub fn gsize_is_multiplicative_and_componentwise(gi: usize, seed: u64) -> Check {
    let alg = algebra(gi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let module = |rng: &mut ChaCha8Rng| {
        let r = rng.gen_range(1..=3);
        let rows = (0..r)
            .map(|_| (0..r).map(|_| rand_gr(&alg, rng)).collect())
            .collect();
        FiniteFqGModule {
            rank: r,
            theta_t: Matrix::from_rows(rows),
        }
    };
    let (b1, b2) = (module(&mut rng), module(&mut rng));
    let pg = PolyRing::new(alg.gr.clone());
    let s12 = gsize(&alg, &b1.direct_sum(&b2, &alg)).unwrap();
    prop_assert_eq!(
        s12,
        pg.mul(&gsize(&alg, &b1).unwrap(), &gsize(&alg, &b2).unwrap())
    );
    // the chi-component of |B|_G is the characteristic polynomial of e_chi t
    let s1 = alg.psi_poly(&gsize(&alg, &b1).unwrap());
    let lops = MatOps::new(alg.local.clone());
    let lp = PolyRing::new(alg.local.clone());
    for (c, sc) in s1.iter().enumerate() {
        let m = b1.theta_t.map(|x| alg.psi_component(x, c));
        prop_assert_eq!(sc, &lp.trim(lops.berkowitz_charpoly(&m).unwrap().coeffs));
    }
    Ok(())
}

pub fn nuclear_det_is_nucleus_independent_and_multiplicative(si: usize, seed: u64) -> Check {
    let (alg, x) = nuclear_setups().swap_remove(si);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = 3;
    let v = FilteredModule::ambient(&x, &TamingModule::full(&x.a()), 1).unwrap();
    let f = rand_operator(&x.fq, &mut rng, count);
    let g = rand_operator(&x.fq, &mut rng, count);
    let fg = f.compose(&TauRing::new(x.a(), 1), &g);
    let s = [&f, &g, &fg]
        .iter()
        .map(|o| nucleus_index(&o.phis, &v).unwrap())
        .max()
        .unwrap();
    let det = |o: &NuclearOperator, d: usize| nuclear_det(&alg, o, &v, Some(d)).unwrap();
    let df = det(&f, s);
    prop_assert_eq!(&df, &det(&f, s + 1));
    prop_assert_eq!(&df, &det(&f, s + 2));
    let gl = alg.laurent_ring(count as i64 + 1);
    prop_assert_eq!(det(&fg, s), gl.mul(&df, &det(&g, s)));
    // block sums on V + V
    let v2 = FilteredModule::ambient(&x, &TamingModule::full(&x.a()), 2).unwrap();
    let sum = f.direct_sum(&x.a(), &g);
    let s2 = nucleus_index(&sum.phis, &v2).unwrap();
    prop_assert_eq!(
        nuclear_det(&alg, &sum, &v2, Some(s2)).unwrap(),
        gl.mul(&df, &det(&g, s))
    );
    Ok(())
}

pub fn exp_satisfies_the_functional_equation(qi: usize, seed: u64) -> Check {
    let (p, r) = [(2, 1), (3, 1), (2, 2), (5, 1)][qi];
    let fq = FiniteField::new(&FieldSpec::conventional(p, r).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for e in builtin_modules(&fq, &mut rng) {
        // coefficients of tau^0 .. tau^3
        let exp = exp_coeffs(&e, 4).unwrap();
        prop_assert_eq!(
            functional_equation_residual(&e, &exp),
            None,
            "{}",
            e.describe()
        );
    }
    Ok(())
}

/// Returns the number of fields checked.
pub fn field_axioms_hold_exhaustively_up_to_64() -> usize {
    let mut checked = 0;
    for q in 2u32..=64 {
        let Some((p, r)) = (2..=q)
            .find(|p| q % p == 0)
            .map(|p| (p, (q as f64).log(p as f64).round() as u32))
        else {
            continue;
        };
        if p.pow(r) != q || !(2..p).all(|d| p % d != 0) {
            continue;
        }
        let fq = FiniteField::new(&FieldSpec::conventional(p, r).unwrap()).unwrap();
        let els: Vec<FqElem> = (0..q).map(FqElem).collect();
        let (zero, one) = (fq.zero(), fq.one());
        for a in &els {
            assert_eq!(fq.add(a, &zero), *a);
            assert_eq!(fq.mul(a, &one), *a);
            assert!(fq.is_zero(&fq.add(a, &fq.neg(a))));
            assert_eq!(fq.pow(a, q as u64), *a, "x^q = x in GF({q})");
            if !fq.is_zero(a) {
                assert_eq!(fq.mul(a, &fq.try_inv(a).unwrap()), one);
            }
            for b in &els {
                assert_eq!(fq.add(a, b), fq.add(b, a));
                assert_eq!(fq.mul(a, b), fq.mul(b, a));
                for c in &els {
                    assert_eq!(fq.add(&fq.add(a, b), c), fq.add(a, &fq.add(b, c)));
                    assert_eq!(fq.mul(&fq.mul(a, b), c), fq.mul(a, &fq.mul(b, c)));
                    assert_eq!(
                        fq.mul(a, &fq.add(b, c)),
                        fq.add(&fq.mul(a, b), &fq.mul(a, c))
                    );
                }
            }
        }
        checked += 1;
    }
    checked
}

pub fn laurent_inverse_round_trip_over_group_rings() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for gi in 0..GROUPS.len() {
        let alg = algebra(gi);
        let gl = alg.laurent_ring(EXACT);
        for _ in 0..20 {
            let x = rand_laurent_unit(&alg, &mut rng, 5);
            let y = alg.laurent_inverse(&x, 8).unwrap();
            assert!(agree(&gl, &gl.mul(&x, &y), &gl.one()));
        }
    }
}

/// Runs a two-argument property with proptest's runner, for callers outside `proptest!`.
pub fn run_property(
    cases: u32,
    range: usize,
    f: fn(usize, u64) -> Check,
) -> std::result::Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&(0..range, any::<u64>()), |(i, seed)| f(i, seed))
        .map_err(|e| e.to_string())
}
