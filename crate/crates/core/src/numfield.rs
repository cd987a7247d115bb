//! Exact arithmetic in a quadratic field Q(sqrt d).
//!
//! Every element carries its `d`; mixing fields is an error at the boundary
//! (`checked_*`) and a panic inside the operator impls, where the engine has
//! already validated that a scenario lives in a single field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(i64, i64),
    #[error("d = {0} is not a squarefree integer different from 0 and 1")]
    InvalidField(i64),
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Checks that `d` is squarefree and not 0 or 1.
pub fn validate_d(d: i64) -> Result<(), NumError> {
    if d == 0 || d == 1 {
        return Err(NumError::InvalidField(d));
    }
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return Err(NumError::InvalidField(d));
        }
        k += 1;
    }
    Ok(())
}

/// a + b*sqrt(d) with exact rationals a, b.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    d: i64,
    a: Rat,
    b: Rat,
}

impl FieldElem {
    pub fn new(d: i64, a: Rat, b: Rat) -> Self {
        FieldElem { d, a, b }
    }

    pub fn from_rat(d: i64, a: Rat) -> Self {
        FieldElem { d, a, b: Rat::zero() }
    }

    pub fn int(d: i64, n: i64) -> Self {
        Self::from_rat(d, rat_int(n))
    }

    pub fn zero(d: i64) -> Self {
        Self::int(d, 0)
    }

    pub fn one(d: i64) -> Self {
        Self::int(d, 1)
    }

    /// The generator sqrt(d).
    pub fn sqrt_d(d: i64) -> Self {
        FieldElem { d, a: Rat::zero(), b: Rat::one() }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn re_part(&self) -> &Rat {
        &self.a
    }

    pub fn sqrt_part(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugation a + b√d ↦ a − b√d.
    pub fn conj(&self) -> Self {
        FieldElem { d: self.d, a: self.a.clone(), b: -self.b.clone() }
    }

    /// Complex conjugation under the embedding into C: the Galois
    /// conjugation when d < 0, the identity when d > 0.
    pub fn cc(&self) -> Self {
        if self.d < 0 {
            self.conj()
        } else {
            self.clone()
        }
    }

    /// The element is real under the embedding into C.
    pub fn is_real(&self) -> bool {
        self.d > 0 || self.b.is_zero()
    }

    /// Field norm x·conj(x) = a² − d b².
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - rat_int(self.d) * &self.b * &self.b
    }

    fn same_field(&self, o: &Self) -> Result<(), NumError> {
        if self.d == o.d {
            Ok(())
        } else {
            Err(NumError::FieldMismatch(self.d, o.d))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, NumError> {
        self.same_field(o)?;
        Ok(FieldElem { d: self.d, a: &self.a + &o.a, b: &self.b + &o.b })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, NumError> {
        self.same_field(o)?;
        Ok(FieldElem { d: self.d, a: &self.a - &o.a, b: &self.b - &o.b })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, NumError> {
        self.same_field(o)?;
        let dd = rat_int(self.d);
        Ok(FieldElem {
            d: self.d,
            a: &self.a * &o.a + dd * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
        })
    }

    pub fn inv(&self) -> Result<Self, NumError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let c = self.conj();
        Ok(FieldElem { d: self.d, a: &c.a / &n, b: &c.b / &n })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, NumError> {
        self.same_field(o)?;
        self.checked_mul(&o.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FieldElem::one(self.d);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, r: &Rat) -> Self {
        FieldElem { d: self.d, a: &self.a * r, b: &self.b * r }
    }

    /// Parses `text` in the grammar `a/b`, `a/b+c/d*w`, `a/b-c/d*w` where
    /// `w` stands for sqrt(d). A bare `c/d*w` or `w` is accepted as well.
    pub fn parse(text: &str, d: i64) -> Result<Self, NumError> {
        let err = || NumError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        if !s.contains('w') {
            return Ok(Self::from_rat(d, parse_rat(&s).ok_or_else(err)?));
        }
        if !s.ends_with('w') || s.matches('w').count() != 1 {
            return Err(err());
        }
        let body = &s[..s.len() - 1];
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (re, im) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let a = if re.is_empty() { Rat::zero() } else { parse_rat(re).ok_or_else(err)? };
        let b = match im {
            "" | "+" => Rat::one(),
            "-" => -Rat::one(),
            _ => {
                let coeff = im.strip_suffix('*').ok_or_else(err)?;
                let coeff = coeff.strip_prefix('+').unwrap_or(coeff);
                parse_rat(coeff).ok_or_else(err)?
            }
        };
        Ok(FieldElem { d, a, b })
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str| {
        let t = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
        !t.is_empty() && t.chars().all(|c| c.is_ascii_digit())
    };
    if !digits(n) || !d.chars().all(|c| c.is_ascii_digit()) || d.is_empty() {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text: `a` when rational, otherwise `a+b*w` / `a-b*w`.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rat(&self.a));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        let coeff = if b.is_one() { String::new() } else { format!("{}*", format_rat(&b)) };
        if self.a.is_zero() {
            let lead = if sign == '-' { "-" } else { "" };
            return write!(f, "{lead}{coeff}w");
        }
        write!(f, "{}{}{}w", format_rat(&self.a), sign, coeff)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [d={}]", self, self.d)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                self.$checked(o).expect("field mismatch")
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: FieldElem) -> FieldElem {
                (&self).$checked(&o).expect("field mismatch")
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, o: &FieldElem) -> FieldElem {
                (&self).$checked(o).expect("field mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { d: self.d, a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// Named parameter conditions. Each is decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    /// |μ| = 1
    UnitNorm,
    /// μ ∈ R
    IsReal,
    /// μ + μ̄ = 2
    Trace2,
    /// λ² − λ + 1 = 0
    Omega6,
    /// λ + λ̄ = 1
    Trace1,
    /// k1²k2 − 2k1 + k2 = 0
    KCond,
    /// μ1 + μ2 − μ1μ2 = 0
    MuCond,
    /// (μ1, μ2) = ((1∓√5)/2, (3∓√5)/2)
    Golden,
    /// μ1 + μ2 = 1
    Sum1,
}

impl Predicate {
    pub const ALL: [Predicate; 9] = [
        Predicate::UnitNorm,
        Predicate::IsReal,
        Predicate::Trace2,
        Predicate::Omega6,
        Predicate::Trace1,
        Predicate::KCond,
        Predicate::MuCond,
        Predicate::Golden,
        Predicate::Sum1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::UnitNorm => "unit_norm",
            Predicate::IsReal => "is_real",
            Predicate::Trace2 => "trace2",
            Predicate::Omega6 => "omega6",
            Predicate::Trace1 => "trace1",
            Predicate::KCond => "k_cond",
            Predicate::MuCond => "mu_cond",
            Predicate::Golden => "golden",
            Predicate::Sum1 => "sum1",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            Predicate::KCond | Predicate::MuCond | Predicate::Golden | Predicate::Sum1 => 2,
            _ => 1,
        }
    }

    pub fn eval(self, params: &[FieldElem]) -> Result<bool, NumError> {
        assert_eq!(params.len(), self.arity(), "{} takes {} parameters", self.name(), self.arity());
        let d = params[0].d();
        for p in params {
            p.same_field(&params[0])?;
        }
        let c = |n: i64| FieldElem::int(d, n);
        let x = &params[0];
        Ok(match self {
            Predicate::UnitNorm => (x * &x.cc()).is_one(),
            Predicate::IsReal => x.is_real(),
            Predicate::Trace2 => (x + &x.cc()) == c(2),
            Predicate::Omega6 => (x * x - x + c(1)).is_zero(),
            Predicate::Trace1 => (x + &x.cc()) == c(1),
            Predicate::KCond => {
                let y = &params[1];
                (x * x * y.clone() - c(2) * x + y).is_zero()
            }
            Predicate::MuCond => {
                let y = &params[1];
                (x + y - x * y).is_zero()
            }
            Predicate::Golden => {
                let y = &params[1];
                if d != 5 {
                    false
                } else {
                    let half = Rat::new(BigInt::from(1), BigInt::from(2));
                    [1i64, -1].iter().any(|&s| {
                        let w = FieldElem::sqrt_d(5).scale(&rat_int(s));
                        (c(1) - w.clone()).scale(&half) == *x && (c(3) - w).scale(&half) == *y
                    })
                }
            }
            Predicate::Sum1 => (x + &params[1]) == c(1),
        })
    }
}

/// Squarefree test for a univariate polynomial over Q given by coefficients
/// in increasing degree: true iff gcd(P, P') is a nonzero constant.
pub fn is_squarefree(p: &[Rat]) -> bool {
    let p = trim(p.to_vec());
    if p.is_empty() {
        return false;
    }
    let dp: Vec<Rat> = p.iter().enumerate().skip(1).map(|(i, c)| c * rat_int(i as i64)).collect();
    let g = poly_gcd(p, trim(dp));
    g.len() == 1
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &q * c;
        }
        r = trim(r);
    }
    r
}

/// gcd over Q, not normalised; a constant result has length 1.
pub fn poly_gcd(a: Vec<Rat>, b: Vec<Rat>) -> Vec<Rat> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Greatest common divisor of two integers, always non-negative.
pub fn igcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}
