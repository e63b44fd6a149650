//! Monic irreducible polynomials over F_q (the finite primes of A).

use super::fq::{FiniteField, FqElem};
use super::poly::{Poly, PolyRing};
use super::ring::Ring;

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: f of degree n is irreducible iff f | t^{q^n} - t and
/// gcd(t^{q^{n/r}} - t, f) = 1 for every prime r | n.
pub fn is_irreducible(a: &PolyRing<FiniteField>, f: &Poly<FqElem>) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let q = a.base.order() as u64;
    let t = a.var_elem();
    // t^{q^k} mod f by repeated q-th powering
    let frob_pow = |k: u64| {
        let mut x = a.rem(&t, f).unwrap();
        for _ in 0..k {
            x = a.pow_mod(&x, q, f);
        }
        x
    };
    let full = a.sub(&frob_pow(n as u64), &t);
    if !a.rem(&full, f).unwrap().is_empty() {
        return false;
    }
    for r in prime_factors(n as u64) {
        let h = a.sub(&frob_pow(n as u64 / r), &t);
        if a.gcd(&h, f).len() != 1 {
            return false;
        }
    }
    true
}

/// All monic irreducibles of degree `d`, sorted by descending-exponent coefficient vector.
pub fn enumerate_monic_irreducibles(a: &PolyRing<FiniteField>, d: usize) -> Vec<Poly<FqElem>> {
    if d == 0 {
        return Vec::new();
    }
    let q = a.base.order() as u64;
    let total = q.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        // idx in base q, most significant digit = coefficient of t^{d-1}
        let mut coeffs = vec![FqElem(0); d + 1];
        let mut k = idx;
        for c in coeffs.iter_mut().take(d) {
            *c = FqElem((k % q) as u32);
            k /= q;
        }
        coeffs[d] = a.base.one();
        if d > 1 && coeffs[0] == FqElem(0) {
            continue;
        }
        let f = a.from_coeffs(coeffs);
        if is_irreducible(a, &f) {
            out.push(f);
        }
    }
    out
}

/// Monic irreducibles of degree 1..=max_deg, ascending degree then lexicographic.
pub fn primes_up_to(a: &PolyRing<FiniteField>, max_deg: usize) -> Vec<Poly<FqElem>> {
    (1..=max_deg).flat_map(|d| enumerate_monic_irreducibles(a, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fq::FieldSpec;

    fn mobius(n: u64) -> i64 {
        let mut m = n;
        let mut res = 1;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                m /= d;
                if m % d == 0 {
                    return 0;
                }
                res = -res;
            }
            d += 1;
        }
        if m > 1 {
            res = -res;
        }
        res
    }

    fn necklace(q: u64, d: u64) -> u64 {
        let s: i64 = (1..=d)
            .filter(|e| d % e == 0)
            .map(|e| mobius(e) * (q.pow((d / e) as u32) as i64))
            .sum();
        (s / d as i64) as u64
    }

    #[test]
    fn small_examples() {
        let a = PolyRing::new(FiniteField::new(&FieldSpec::prime(2).unwrap()).unwrap());
        let fmt = |v: Vec<Poly<FqElem>>| v.iter().map(|p| a.fmt_poly(p)).collect::<Vec<_>>();
        assert_eq!(fmt(enumerate_monic_irreducibles(&a, 1)), vec!["t", "t+1"]);
        assert_eq!(fmt(enumerate_monic_irreducibles(&a, 2)), vec!["t^2+t+1"]);
        assert_eq!(fmt(enumerate_monic_irreducibles(&a, 3)), vec!["t^3+t+1", "t^3+t^2+1"]);
        assert!(enumerate_monic_irreducibles(&a, 0).is_empty());
    }

    #[test]
    fn counts_match_necklace_formula() {
        for (p, r) in [(2u32, 1u32), (3, 1), (2, 2)] {
            let fq = FiniteField::new(&FieldSpec::conventional(p, r).unwrap()).unwrap();
            let q = fq.order() as u64;
            let a = PolyRing::new(fq);
            for d in 1..=8 {
                assert_eq!(enumerate_monic_irreducibles(&a, d).len() as u64, necklace(q, d as u64), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn irreducibles_have_no_small_factors() {
        // trial division oracle
        let fq = FiniteField::new(&FieldSpec::prime(3).unwrap()).unwrap();
        let a = PolyRing::new(fq);
        for f in enumerate_monic_irreducibles(&a, 4) {
            for g in primes_up_to(&a, 2) {
                assert!(!a.rem(&f, &g).unwrap().is_empty());
            }
        }
    }
}
