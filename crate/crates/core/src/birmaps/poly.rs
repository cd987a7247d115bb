//! Sparse polynomials in up to four variables over Q(√d).
//!
//! Quadric maps use the variables `u0 u1 v0 v1`; plane maps use `x y z`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::numfield::{FieldElem, NumError};

pub type Exp = [u16; 4];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot parse expression {text:?}: {msg}")]
    Parse { text: String, msg: String },
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    d: i64,
    terms: BTreeMap<Exp, FieldElem>,
}

pub const QUADRIC_VARS: [&str; 4] = ["u0", "u1", "v0", "v1"];
pub const PLANE_VARS: [&str; 3] = ["x", "y", "z"];

impl Poly {
    pub fn zero(d: i64) -> Self {
        Poly { d, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        let mut p = Poly::zero(c.d());
        if !c.is_zero() {
            p.terms.insert([0; 4], c);
        }
        p
    }

    pub fn var(d: i64, i: usize) -> Self {
        let mut e = [0u16; 4];
        e[i] = 1;
        Poly::monomial(e, FieldElem::one(d))
    }

    pub fn monomial(e: Exp, c: FieldElem) -> Self {
        let mut p = Poly::zero(c.d());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &FieldElem)> {
        self.terms.iter()
    }

    pub fn as_constant(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(FieldElem::zero(self.d)),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, e: Exp, c: FieldElem) {
        let v = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly { d: self.d, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.d);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, k: &FieldElem) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.d);
        }
        Poly { d: self.d, terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::constant(FieldElem::one(self.d));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &[FieldElem]) -> FieldElem {
        let mut s = FieldElem::zero(self.d);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &x[i].pow(k as u32);
                }
            }
            s = &s + &t;
        }
        s
    }

    /// Replaces variable i by `subs[i]`.
    pub fn substitute(&self, subs: &[Poly]) -> Poly {
        let mut cache: BTreeMap<(usize, u16), Poly> = BTreeMap::new();
        let mut r = Poly::zero(self.d);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let p = cache.entry((i, k)).or_insert_with(|| subs[i].pow(k as u32));
                    t = t.mul(p);
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Maximal total degree in the variables `vars`.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.terms.keys().map(|e| vars.iter().map(|&i| e[i] as u32).sum()).max().unwrap_or(0)
    }

    /// True when every term has the same total degree in `vars`.
    pub fn is_homogeneous_in(&self, vars: &[usize]) -> bool {
        let mut it = self.terms.keys().map(|e| vars.iter().map(|&i| e[i] as u32).sum::<u32>());
        match it.next() {
            None => true,
            Some(first) => it.all(|x| x == first),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Poly {
        let mut r = Poly::zero(self.d);
        for (e, c) in &self.terms {
            r.add_term(*e, f(c));
        }
        r
    }

    /// Permutes variables: variable i becomes variable `perm[i]`.
    pub fn rename(&self, perm: [usize; 4]) -> Poly {
        let mut r = Poly::zero(self.d);
        for (e, c) in &self.terms {
            let mut ne = [0u16; 4];
            for i in 0..4 {
                ne[perm[i]] = e[i];
            }
            r.add_term(ne, c.clone());
        }
        r
    }

    /// Coefficient table lines `e0 e1 e2 e3 : coeff`, in exponent order.
    pub fn to_table(&self) -> Vec<String> {
        self.terms.iter().map(|(e, c)| format!("{} {} {} {} : {}", e[0], e[1], e[2], e[3], c)).collect()
    }

    pub fn from_table(lines: &[String], d: i64) -> Result<Poly, PolyError> {
        let mut p = Poly::zero(d);
        for l in lines {
            let err = |msg: &str| PolyError::Parse { text: l.clone(), msg: msg.to_string() };
            let (ex, c) = l.split_once(':').ok_or_else(|| err("missing ':'"))?;
            let ex: Vec<u16> = ex.split_whitespace().map(|t| t.parse().map_err(|_| err("bad exponent"))).collect::<Result<_, _>>()?;
            if ex.len() != 4 {
                return Err(err("need four exponents"));
            }
            p.add_term([ex[0], ex[1], ex[2], ex[3]], FieldElem::parse(c.trim(), d)?);
        }
        Ok(p)
    }

    /// Parses an arithmetic expression with `+ - * / ^`, parentheses,
    /// integer literals, the variables `vars` and named constants.
    /// Division is only allowed by constants.
    pub fn parse(text: &str, d: i64, vars: &[&str], consts: &[(&str, FieldElem)]) -> Result<Poly, PolyError> {
        let mut p = Parser { s: text.as_bytes(), i: 0, d, vars, consts, text };
        let r = p.expr()?;
        p.skip_ws();
        if p.i != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(r)
    }

    pub fn display_with(&self, vars: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { vars[i].to_string() } else { format!("{}^{}", vars[i], k) })
                .collect();
            let coeff = if c.is_one() && !mono.is_empty() { String::new() } else { format!("({c})") };
            let sep = if coeff.is_empty() || mono.is_empty() { "" } else { "*" };
            parts.push(format!("{coeff}{sep}{}", mono.join("*")));
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&QUADRIC_VARS))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    d: i64,
    vars: &'a [&'a str],
    consts: &'a [(&'a str, FieldElem)],
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { text: self.text.to_string(), msg: format!("{msg} at byte {}", self.i) }
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.i += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.i += 1;
            let f = self.unary()?;
            if c == b'*' {
                acc = acc.mul(&f);
            } else {
                let k = f.as_constant().ok_or_else(|| self.err("division by a non-constant"))?;
                acc = acc.scale(&k.inv()?);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, PolyError> {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.skip_ws();
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            let n: u32 = std::str::from_utf8(&self.s[start..self.i]).unwrap().parse().map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let n: i64 = std::str::from_utf8(&self.s[start..self.i]).unwrap().parse().map_err(|_| self.err("bad integer"))?;
                Ok(Poly::constant(FieldElem::int(self.d, n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                if let Some(k) = self.vars.iter().position(|v| *v == name) {
                    return Ok(Poly::var(self.d, k));
                }
                match self.consts.iter().find(|(n, _)| *n == name) {
                    Some((_, v)) => Ok(Poly::constant(v.clone())),
                    None => Err(self.err(&format!("unknown name {name:?}"))),
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_evaluate() {
        let d = -1;
        let mu = FieldElem::parse("2+1*w", d).unwrap();
        let p = Poly::parse("-v1*(mu*u0 - 3*u1^2/2)", d, &QUADRIC_VARS, &[("mu", mu.clone())]).unwrap();
        let x: Vec<FieldElem> = [1, 2, 3, 4].iter().map(|&n| FieldElem::int(d, n)).collect();
        // -4*(mu - 6)
        assert_eq!(p.eval(&x), &FieldElem::int(d, -4) * &(&mu - &FieldElem::int(d, 6)));
        assert!(Poly::parse("u0/u1", d, &QUADRIC_VARS, &[]).is_err());
        assert!(Poly::parse("u0+", d, &QUADRIC_VARS, &[]).is_err());
        assert!(Poly::parse("t", d, &QUADRIC_VARS, &[]).is_err());
    }

    #[test]
    fn substitution_and_tables() {
        let d = 5;
        let p = Poly::parse("u0^2*v1 - 2*u1^2*v0", d, &QUADRIC_VARS, &[]).unwrap();
        let subs: Vec<Poly> = ["u1", "u0", "v1", "v0"]
            .iter()
            .map(|s| Poly::parse(s, d, &QUADRIC_VARS, &[]).unwrap())
            .collect();
        assert_eq!(p.substitute(&subs).substitute(&subs), p);
        assert_eq!(p.substitute(&subs), p.rename([1, 0, 3, 2]));
        assert_eq!(Poly::from_table(&p.to_table(), d).unwrap(), p);
        assert_eq!(p.degree_in(&[0, 1]), 2);
        assert!(p.is_homogeneous_in(&[0, 1]) && p.is_homogeneous_in(&[2, 3]));
        assert!(!Poly::parse("u0 + u1^2", d, &QUADRIC_VARS, &[]).unwrap().is_homogeneous_in(&[0, 1]));
    }
}
