//! Parser for the polynomial and Laurent notation printed by the library.
//!
//! Accepts sums and products of integers, `x` (the field generator), `t`, group elements
//! `g(a,b,..)`, integer powers `^k`, parentheses and one trailing `O(t^k)` precision term.

use crate::algebra::{APoly, FiniteField, FqElem, LaurentRing, PolyRing, Ring, EXACT};
use crate::error::{Error, Result};
use crate::grpring::{GrLaurent, GroupAlgebra};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Comma,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '^' => out.push(Tok::Caret),
            ',' => out.push(Tok::Comma),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            '0'..='9' => {
                let start = i;
                while i + 1 < cs.len() && cs[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = cs[start..=i].iter().collect();
                let v = text.parse().map_err(|_| Error::Invalid(format!("number too large: {text}")))?;
                out.push(Tok::Num(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i + 1 < cs.len() && cs[i + 1].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Tok::Ident(cs[start..=i].iter().collect()));
            }
            _ => return Err(Error::Invalid(format!("unexpected character '{c}' in '{s}'"))),
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(i64),
    Sym(String),
    Group(Vec<i64>),
    BigO(i64),
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Invalid(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(v),
            Some(Tok::Minus) => match self.next() {
                Some(Tok::Num(v)) => Ok(-v),
                got => Err(Error::Invalid(format!("expected an integer, found {got:?}"))),
            },
            got => Err(Error::Invalid(format!("expected an integer, found {got:?}"))),
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            neg = true;
        }
        loop {
            terms.push((neg, self.product()?));
            match self.peek() {
                Some(Tok::Plus) => neg = false,
                Some(Tok::Minus) => neg = true,
                _ => break,
            }
            self.next();
        }
        Ok(Expr::Sum(terms))
    }

    fn product(&mut self) -> Result<Expr> {
        let mut fs = vec![self.power()?];
        while self.peek() == Some(&Tok::Star) {
            self.next();
            fs.push(self.power()?);
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { Expr::Product(fs) })
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            let k = self.int()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(Expr::Num(v)),
            Some(Tok::Open) => {
                let e = self.sum()?;
                self.expect(Tok::Close)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) if name == "g" => {
                self.expect(Tok::Open)?;
                let mut v = Vec::new();
                if self.peek() != Some(&Tok::Close) {
                    v.push(self.int()?);
                    while self.peek() == Some(&Tok::Comma) {
                        self.next();
                        v.push(self.int()?);
                    }
                }
                self.expect(Tok::Close)?;
                Ok(Expr::Group(v))
            }
            Some(Tok::Ident(name)) if name == "O" => {
                self.expect(Tok::Open)?;
                match self.next() {
                    Some(Tok::Ident(t)) if t == "t" => {}
                    got => return Err(Error::Invalid(format!("expected O(t^k), found {got:?}"))),
                }
                let k = if self.peek() == Some(&Tok::Caret) {
                    self.next();
                    self.int()?
                } else {
                    1
                };
                self.expect(Tok::Close)?;
                Ok(Expr::BigO(k))
            }
            Some(Tok::Ident(name)) => Ok(Expr::Sym(name)),
            got => Err(Error::Invalid(format!("unexpected token {got:?}"))),
        }
    }
}

fn parse(s: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    if p.toks.is_empty() {
        return Err(Error::Invalid("empty expression".into()));
    }
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Invalid(format!("trailing input in '{s}'")));
    }
    Ok(e)
}

/// Parses a polynomial over F_p in `x` into reduced ascending coefficients.
pub fn parse_fp_poly(s: &str, p: u32) -> Result<Vec<u32>> {
    fn eval(e: &Expr, p: i64) -> Result<Vec<i64>> {
        let norm = |mut v: Vec<i64>| {
            for c in v.iter_mut() {
                *c = c.rem_euclid(p);
            }
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        let mul = |a: &[i64], b: &[i64]| {
            let mut r = vec![0i64; (a.len() + b.len()).saturating_sub(1)];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    r[i + j] = (r[i + j] + x * y) % p;
                }
            }
            r
        };
        Ok(match e {
            Expr::Num(v) => norm(vec![*v]),
            Expr::Sym(s) if s == "x" => vec![0, 1],
            Expr::Sum(ts) => {
                let mut acc: Vec<i64> = vec![];
                for (neg, t) in ts {
                    let v = eval(t, p)?;
                    if acc.len() < v.len() {
                        acc.resize(v.len(), 0);
                    }
                    for (i, c) in v.iter().enumerate() {
                        acc[i] += if *neg { -c } else { *c };
                    }
                }
                norm(acc)
            }
            Expr::Product(fs) => {
                let mut acc = vec![1];
                for f in fs {
                    acc = mul(&acc, &eval(f, p)?);
                }
                norm(acc)
            }
            Expr::Pow(b, k) if *k >= 0 => {
                let b = eval(b, p)?;
                let mut acc = vec![1];
                for _ in 0..*k {
                    acc = mul(&acc, &b);
                }
                norm(acc)
            }
            other => return Err(Error::Invalid(format!("not a polynomial in x: {other:?}"))),
        })
    }
    Ok(eval(&parse(s)?, p as i64)?.into_iter().map(|c| c as u32).collect())
}

/// Evaluates into F_q[G]((1/t)); the result is exact unless an O(t^k) term is present.
pub fn parse_gr_laurent(s: &str, alg: &GroupAlgebra) -> Result<GrLaurent> {
    let lr = LaurentRing::new(alg.gr.clone(), EXACT);
    let fq = &alg.fq;
    let gen = if fq.order() == fq.char_p() { None } else { Some(fq.parse_elem("x")?) };
    let group = alg.group().clone();
    let mut prec = EXACT;

    fn eval(
        e: &Expr,
        top: bool,
        lr: &LaurentRing<crate::grpring::GroupRing>,
        alg: &GroupAlgebra,
        gen: Option<FqElem>,
        group: &crate::grpring::GroupSpec,
        prec: &mut i64,
    ) -> Result<GrLaurent> {
        let fq = &alg.fq;
        let scalar = |c: FqElem| lr.scalar(alg.gr.scalar(c));
        Ok(match e {
            Expr::Num(v) => scalar(fq.from_int(*v)),
            Expr::Sym(s) if s == "t" => lr.exact(-1, vec![alg.gr.one()]),
            Expr::Sym(s) if s == "x" => match gen {
                Some(g) => scalar(g),
                None => return Err(Error::Invalid("x is only defined for non-prime fields".into())),
            },
            Expr::Sym(s) => return Err(Error::Invalid(format!("unknown symbol '{s}'"))),
            Expr::Group(v) => {
                if v.len() != group.orders.len() {
                    return Err(Error::Invalid(format!("group element needs {} indices", group.orders.len())));
                }
                let red: Vec<u32> = v.iter().zip(&group.orders).map(|(a, n)| a.rem_euclid(*n as i64) as u32).collect();
                let mut c = alg.gr.zero();
                c[group.to_index(&red)] = fq.one();
                lr.scalar(c)
            }
            Expr::BigO(k) => {
                if !top {
                    return Err(Error::Invalid("O(t^k) must be a top-level term".into()));
                }
                *prec = (*prec).min(-*k);
                lr.zero()
            }
            Expr::Sum(ts) => {
                let mut acc = lr.zero();
                for (neg, t) in ts {
                    let v = eval(t, top, lr, alg, gen, group, prec)?;
                    acc = if *neg { lr.sub(&acc, &v) } else { lr.add(&acc, &v) };
                }
                acc
            }
            Expr::Product(fs) => {
                let mut acc = lr.one();
                for f in fs {
                    acc = lr.mul(&acc, &eval(f, false, lr, alg, gen, group, prec)?);
                }
                acc
            }
            Expr::Pow(b, k) => match (&**b, *k) {
                (Expr::Sym(s), k) if s == "t" => lr.exact(-k, vec![alg.gr.one()]),
                (_, k) if k >= 0 => {
                    let b = eval(b, false, lr, alg, gen, group, prec)?;
                    let mut acc = lr.one();
                    for _ in 0..k {
                        acc = lr.mul(&acc, &b);
                    }
                    acc
                }
                _ => return Err(Error::Invalid("negative powers are only allowed on t".into())),
            },
        })
    }

    let v = eval(&parse(s)?, true, &lr, alg, gen, &group, &mut prec)?;
    Ok(lr.truncate(&v, prec))
}

/// Parses an element of A = F_q[t].
pub fn parse_a_poly(s: &str, fq: &FiniteField) -> Result<APoly> {
    let alg = GroupAlgebra::new(fq.clone(), crate::grpring::GroupSpec::trivial())?;
    let v = parse_gr_laurent(s, &alg)?;
    if !v.is_exact() {
        return Err(Error::Invalid(format!("'{s}' is not a polynomial")));
    }
    if v.coeffs.is_empty() {
        return Ok(PolyRing::new(fq.clone()).zero());
    }
    if v.val + v.coeffs.len() as i64 > 1 {
        return Err(Error::Invalid(format!("'{s}' has negative powers of t")));
    }
    // u-exponent val + i is t-degree -(val + i)
    let deg = (-v.val) as usize;
    let mut coeffs = vec![fq.zero(); deg + 1];
    for (i, c) in v.coeffs.iter().enumerate() {
        coeffs[deg - i] = c[0];
    }
    Ok(PolyRing::new(fq.clone()).trim(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;
    use crate::grpring::GroupSpec;

    #[test]
    fn laurent_round_trip() {
        let fq = FiniteField::new(&FieldSpec::prime(3).unwrap()).unwrap();
        let alg = GroupAlgebra::new(fq.clone(), GroupSpec::cyclic(2)).unwrap();
        let lr = alg.laurent_ring(6);
        for s in ["1*g(0) + 2*g(1)*t^-2 + O(t^-5)", "t^2 + (1*g(0) + 1*g(1))*t + 2", "g(1)*t^-1 - 1"] {
            let v = parse_gr_laurent(s, &alg).unwrap();
            let back = parse_gr_laurent(&lr.fmt_laurent(&v), &alg).unwrap();
            assert_eq!(v, back, "{s}");
        }
    }

    #[test]
    fn polynomials() {
        let fq = FiniteField::new(&FieldSpec::prime(2).unwrap()).unwrap();
        let a = PolyRing::new(fq.clone());
        let p = parse_a_poly("t^3 + t + 1", &fq).unwrap();
        assert_eq!(a.fmt_poly(&p), "t^3+t+1");
        assert_eq!(parse_a_poly(&a.fmt_poly(&p), &fq).unwrap(), p);
        assert!(parse_a_poly("t^-1", &fq).is_err());
        assert_eq!(parse_fp_poly("x^2 + x + 1", 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_fp_poly("x^2 - 1", 3).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn rejects_malformed_input() {
        let fq = FiniteField::new(&FieldSpec::prime(2).unwrap()).unwrap();
        for s in ["", "t +", "(t", "t * * t", "O(t^2)*t", "y"] {
            assert!(parse_a_poly(s, &fq).is_err(), "{s}");
        }
    }
}
