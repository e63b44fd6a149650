//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use tmod_lvalues::algebra::{enumerate_monic_irreducibles, FieldSpec, FiniteField, PolyRing, Ring};
use tmod_lvalues::fields::{carlitz_cyclotomic_deg1, trivial_extension, ExtensionData, PrimeOfA, TamingModule};
use tmod_lvalues::grpring::{GrLaurent, GroupAlgebra};
use tmod_lvalues::lvalue::{carlitz_twist_prediction, euler_factor, theta0};
use tmod_lvalues::nuclear::trace_check;
use tmod_lvalues::tmodule::{carlitz_tensor, drinfeld_twist, make_carlitz, make_drinfeld, TModuleSpec};
use tmod_lvalues::volume::{brumer_stark_check, coates_sinnott_check, etnf_check, volume_formula_check};

// Runtime limits per case.
const LIMIT_ZETA: Duration = Duration::from_secs(5);
const LIMIT_TRACE: Duration = Duration::from_secs(120);
const LIMIT_ETNF: Duration = Duration::from_secs(300);
const LIMIT_PROPERTIES: Duration = Duration::from_secs(600);
// Criterion 4 compares modulo u^4.
const VOLUME_PRECISION: usize = 3;
// Criterion 6 compares the Laurent expansions to this precision besides the exact polynomials.
const TWIST_PRECISION: usize = 12;

fn prime_field(p: u32) -> FiniteField {
    FiniteField::new(&FieldSpec::prime(p).unwrap()).unwrap()
}

fn trivial(p: u32) -> (FiniteField, ExtensionData, GroupAlgebra) {
    let fq = prime_field(p);
    let x = trivial_extension(&fq);
    let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
    (fq, x, alg)
}

fn cyclotomic_q3() -> (FiniteField, ExtensionData, GroupAlgebra) {
    let fq = prime_field(3);
    let t = PolyRing::new(fq.clone()).var_elem();
    let x = carlitz_cyclotomic_deg1(&fq, &t).unwrap();
    let alg = GroupAlgebra::new(fq.clone(), x.group.clone()).unwrap();
    (fq, x, alg)
}

/// Coefficient of u^k of a trivial-group Laurent series in u = 1/t.
fn coeff(x: &GrLaurent, k: i64) -> u32 {
    if k < x.val {
        return 0;
    }
    x.coeffs.get((k - x.val) as usize).map_or(0, |c| c[0].0)
}

/// Sum of 1/a over monic a in F_p[t] of degree <= d, as coefficients of u^0..u^d, with plain
/// integer arithmetic mod p.
fn zeta_oracle(p: u32, d: usize) -> Vec<u32> {
    let len = d + 1;
    let mut total = vec![0u32; len];
    for deg in 0..=d {
        // lower coefficients c_0..c_{deg-1} of a, enumerated in base p
        for idx in 0..(p as usize).pow(deg as u32) {
            let mut low = Vec::with_capacity(deg);
            let mut r = idx;
            for _ in 0..deg {
                low.push((r % p as usize) as u32);
                r /= p as usize;
            }
            // a = t^deg (1 + c_{deg-1} u + ... + c_0 u^deg)
            let mut f = vec![0u32; len];
            f[0] = 1;
            for j in 1..=deg.min(d) {
                f[j] = low[deg - j];
            }
            // 1/f by the recursion g_k = -sum_{j=1..k} f_j g_{k-j}
            let mut g = vec![0u32; len];
            g[0] = 1;
            for k in 1..len {
                let s: u32 = (1..=k).map(|j| f[j] * g[k - j] % p).sum::<u32>() % p;
                g[k] = (p - s) % p;
            }
            for k in deg..len {
                total[k] = (total[k] + g[k - deg]) % p;
            }
        }
    }
    total
}

struct Line {
    ok: bool,
    detail: String,
}

fn report(n: usize, name: &str, line: &Line) {
    let word = if line.ok { "PASS" } else { "FAIL" };
    println!("criterion {n} {word}: {name}: {}", line.detail);
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn criterion_zeta() -> Line {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [2, 3] {
        let (_, x, alg) = trivial(p);
        let fq = alg.fq.clone();
        let (theta, dt) = timed(|| theta0(&alg, &make_carlitz(&fq), &x, &TamingModule::full(&x.a()), 4).unwrap());
        let got: Vec<u32> = (0..5).map(|k| coeff(&theta.value, k)).collect();
        let want = zeta_oracle(p, 4);
        let good = got == want && theta.value.prec >= 5 && dt < LIMIT_ZETA;
        if p == 2 {
            ok &= want == vec![1, 0, 1, 1, 1];
        }
        ok &= good;
        parts.push(format!("q={p} {got:?} vs oracle {want:?} in {:.2}s", dt.as_secs_f64()));
    }
    Line { ok, detail: parts.join("; ") }
}

fn criterion_trace() -> Line {
    let (f2, x2, a2) = trivial(2);
    let (f3, x3, a3) = cyclotomic_q3();
    let t = PolyRing::new(f2.clone());
    let rank2 = make_drinfeld(&f2, vec![t.one(), t.one()]).unwrap();
    let cases: Vec<(&str, &GroupAlgebra, TModuleSpec, &ExtensionData, usize)> = vec![
        ("Carlitz q=2 N=5", &a2, make_carlitz(&f2), &x2, 5),
        ("t+tau+tau^2 q=2 N=3", &a2, rank2, &x2, 3),
        ("C^(x)2 q=2 N=3", &a2, carlitz_tensor(&f2, 2).unwrap(), &x2, 3),
        ("Carlitz k(lambda_t) q=3 N=3", &a3, make_carlitz(&f3), &x3, 3),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, alg, e, x, n) in cases {
        let (r, dt) = timed(|| trace_check(alg, &e, x, &TamingModule::full(&x.a()), n));
        let good = matches!(&r, Ok(r) if r.pass) && dt < LIMIT_TRACE;
        ok &= good;
        parts.push(format!("{name} {} in {:.1}s", if good { "ok" } else { "bad" }, dt.as_secs_f64()));
    }
    Line { ok, detail: parts.join("; ") }
}

fn criterion_etnf() -> Line {
    let (f2, x2, a2) = trivial(2);
    let (f3, x3, a3) = cyclotomic_q3();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, alg, e, x, n, h_zero) in [
        ("trivial q=2 N=4", &a2, make_carlitz(&f2), &x2, 4, true),
        ("k(lambda_t) q=3 N=3", &a3, make_carlitz(&f3), &x3, 3, false),
    ] {
        let (r, dt) = timed(|| etnf_check(alg, &e, x, n));
        let good = match &r {
            Ok(r) => r.pass && (!h_zero || r.h_dim == 0) && dt < LIMIT_ETNF,
            Err(_) => false,
        };
        ok &= good;
        let h = r.as_ref().map_or("?".to_string(), |r| r.h_dim.to_string());
        parts.push(format!("{name} dim H={h} {} in {:.1}s", if good { "ok" } else { "bad" }, dt.as_secs_f64()));
    }
    Line { ok, detail: parts.join("; ") }
}

fn criterion_volume() -> Line {
    let (f2, x2, a2) = trivial(2);
    let t = PolyRing::new(f2.clone());
    let tk = |k: u64| t.pow(&t.var_elem(), k);
    // gamma = Exp_E for Drinfeld modules phi(t) = t + sum_j c_j tau^j
    let synthetic = [
        ("t+tau+tau^2", vec![t.one(), t.one()]),
        ("t+t^2 tau", vec![tk(2)]),
        ("t+tau+t tau^2", vec![t.one(), tk(1)]),
        ("t+t^2 tau+tau^2", vec![tk(2), t.one()]),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, coeffs) in synthetic {
        let e = make_drinfeld(&f2, coeffs).unwrap();
        let good = matches!(volume_formula_check(&a2, &e, &x2, VOLUME_PRECISION), Ok(r) if r.pass);
        ok &= good;
        parts.push(format!("{name} {}", if good { "ok" } else { "bad" }));
    }
    let good = matches!(volume_formula_check(&a2, &make_carlitz(&f2), &x2, VOLUME_PRECISION), Ok(r) if r.pass);
    ok &= good;
    parts.push(format!("exp instance Carlitz {}", if good { "ok" } else { "bad" }));
    Line { ok, detail: parts.join("; ") }
}

fn criterion_fitting() -> Line {
    let (f2, x2, a2) = trivial(2);
    let (f3, x3, a3) = cyclotomic_q3();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, r) in [
        ("BS trivial q=2 N=4", brumer_stark_check(&a2, &make_carlitz(&f2), &x2, 4)),
        ("BS k(lambda_t) q=3 N=3", brumer_stark_check(&a3, &make_carlitz(&f3), &x3, 3)),
        ("CS m=1 q=2 N=4", coates_sinnott_check(&a2, &make_carlitz(&f2), &x2, &[], 1, 4)),
    ] {
        // every instance here is tame, so equality is required as well as containment
        let (c, e) = r.as_ref().map_or((false, false), |r| (r.contains, r.equal));
        ok &= c && e;
        parts.push(format!("{name} contains={c} equal={e}"));
    }
    Line { ok, detail: parts.join("; ") }
}

fn criterion_twist() -> Line {
    let (f2, x2, a2) = trivial(2);
    let a = x2.a();
    let pg = PolyRing::new(a2.gr.clone());
    let carlitz = make_carlitz(&f2);
    let mut ok = true;
    let mut count = 0;
    for m in 1..=2usize {
        let twisted = drinfeld_twist(&carlitz, m as u32).unwrap();
        for d in 1..=2 {
            for p in enumerate_monic_irreducibles(&a, d) {
                let ef = euler_factor(&a2, &twisted, &x2, &TamingModule::full(&a), &PrimeOfA { p: p.clone() }).unwrap();
                // predicted factor P^{m+1} / (P^{m+1} - 1), compared as cross products
                let lift = pg.trim(p.coeffs.iter().map(|c| a2.gr.scalar(*c)).collect());
                let num = pg.pow(&lift, m as u64 + 1);
                let den = pg.sub(&num, &pg.one());
                let exact = pg.mul(&ef.num, &den) == pg.mul(&ef.den, &num);
                let series = ef.ratio(&a2, TWIST_PRECISION).unwrap()
                    == carlitz_twist_prediction(&a2, &p, m, TWIST_PRECISION).unwrap();
                ok &= exact && series;
                count += 1;
            }
        }
    }
    // two primes of degree 1 and one of degree 2 over F_2, for each m
    ok &= count == 6;
    Line { ok, detail: format!("{count} Euler factors of C(m), m in {{1,2}}, deg v <= 2") }
}

fn criterion_properties() -> Line {
    use common::*;
    let suites: [(&str, u32, usize, fn(usize, u64) -> _); 5] = [
        ("monic_part", MONIC_CASES, GROUPS.len(), monic_part_round_trip),
        ("psi", ALGEBRA_CASES, GROUPS.len(), psi_is_a_ring_isomorphism),
        ("gsize", ALGEBRA_CASES, GROUPS.len(), gsize_is_multiplicative_and_componentwise),
        ("nuclear_det", NUCLEAR_CASES, 3, nuclear_det_is_nucleus_independent_and_multiplicative),
        ("exp", EXP_CASES, 4, exp_satisfies_the_functional_equation),
    ];
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, cases, range, f) in suites {
        let r = run_property(cases, range, f);
        ok &= r.is_ok();
        parts.push(format!("{name} x{cases} {}", if r.is_ok() { "ok" } else { "bad" }));
    }
    let fields = field_axioms_hold_exhaustively_up_to_64();
    laurent_inverse_round_trip_over_group_rings();
    ok &= fields == 27;
    parts.push(format!("field axioms for {fields} fields"));
    let dt = start.elapsed();
    ok &= dt < LIMIT_PROPERTIES;
    Line { ok, detail: format!("{} in {:.1}s", parts.join(", "), dt.as_secs_f64()) }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Line); 7] = [
        ("Carlitz zeta truncation", criterion_zeta),
        ("trace formula", criterion_trace),
        ("equivariant class number formula", criterion_etnf),
        ("volume formula", criterion_volume),
        ("Brumer-Stark and Coates-Sinnott", criterion_fitting),
        ("twist law", criterion_twist),
        ("property suites", criterion_properties),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let line = f();
        report(i + 1, name, &line);
        if !line.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn oracle_matches_hand_values() {
    // over F_2: 1 + 1/t + 1/(t+1) = 1 + u^2 + u^3 + ... up to degree 1
    assert_eq!(zeta_oracle(2, 1), vec![1, 0]);
    assert_eq!(zeta_oracle(2, 4), vec![1, 0, 1, 1, 1]);
    // over F_3 the power sums of F_3 vanish in degrees 0 and 1 and deg 2 has 9 terms of u^2
    assert_eq!(&zeta_oracle(3, 2)[..3], &[1, 0, 0]);
}
