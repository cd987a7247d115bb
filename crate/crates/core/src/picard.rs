//! The rank-6 Picard lattice of a degree-4 del Pezzo surface.
//!
//! Two bases are supported. The quadric basis `f1 f2 e1 e2 e3 e4` comes from
//! P¹×P¹ blown up in four points: `f1` is the class of `{u = const}`, `f2`
//! the class of `{v = const}`. The plane basis `L E1 … E5` comes from P²
//! blown up in five points.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{rat_inverse, RatMat};
use crate::numfield::{rat_int, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Quadric,
    Plane,
}

pub const QUADRIC_LABELS: [&str; 6] = ["f1", "f2", "e1", "e2", "e3", "e4"];
pub const PLANE_LABELS: [&str; 6] = ["L", "E1", "E2", "E3", "E4", "E5"];

impl Basis {
    pub fn labels(self) -> [&'static str; 6] {
        match self {
            Basis::Quadric => QUADRIC_LABELS,
            Basis::Plane => PLANE_LABELS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::Quadric => "quadric",
            Basis::Plane => "plane",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "quadric" => Some(Basis::Quadric),
            "plane" => Some(Basis::Plane),
            _ => None,
        }
    }

    /// Gram matrix of the intersection form.
    pub fn gram(self) -> [[i64; 6]; 6] {
        let mut g = [[0i64; 6]; 6];
        match self {
            Basis::Quadric => {
                g[0][1] = 1;
                g[1][0] = 1;
            }
            Basis::Plane => g[0][0] = 1,
        }
        for (i, row) in g.iter_mut().enumerate().skip(1) {
            if self == Basis::Plane || i >= 2 {
                row[i] = -1;
            }
        }
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicardError {
    #[error("basis mismatch: {0:?} vs {1:?}")]
    BasisMismatch(Basis, Basis),
    #[error("cannot parse class {0:?}")]
    Parse(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub basis: Basis,
    pub coeffs: [i64; 6],
}

impl DivisorClass {
    pub fn new(basis: Basis, coeffs: [i64; 6]) -> Self {
        DivisorClass { basis, coeffs }
    }

    pub fn zero(basis: Basis) -> Self {
        Self::new(basis, [0; 6])
    }

    pub fn unit(basis: Basis, i: usize) -> Self {
        let mut c = [0; 6];
        c[i] = 1;
        Self::new(basis, c)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.basis, o.basis, "basis mismatch");
        let mut c = self.coeffs;
        for (x, y) in c.iter_mut().zip(o.coeffs) {
            *x += y;
        }
        Self::new(self.basis, c)
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.basis, self.coeffs.map(|x| k * x))
    }

    /// Self-intersection.
    pub fn square(&self) -> i64 {
        intersect(self, self).expect("same basis")
    }

    /// Parses a signed combination of labels such as `f1+f2-e1-e3` or
    /// `2L-E1-E2`; `0` is the zero class.
    pub fn parse(text: &str, basis: Basis) -> Result<Self, PicardError> {
        let err = || PicardError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(Self::zero(basis));
        }
        let labels = basis.labels();
        let mut coeffs = [0i64; 6];
        let mut rest = s.as_str();
        if rest.is_empty() {
            return Err(err());
        }
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if rest.len() == s.len() => (1, rest),
                _ => return Err(err()),
            };
            let end = body[1.min(body.len())..].find(['+', '-']).map_or(body.len(), |i| i + 1);
            let term = &body[..end];
            let split = term.find(|c: char| !c.is_ascii_digit()).ok_or_else(err)?;
            let (num, label) = term.split_at(split);
            let k: i64 = if num.is_empty() { 1 } else { num.parse().map_err(|_| err())? };
            let i = labels.iter().position(|l| *l == label).ok_or_else(err)?;
            coeffs[i] += sign * k;
            rest = &body[end..];
        }
        Ok(Self::new(basis, coeffs))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, l) in self.coeffs.iter().zip(self.basis.labels()) {
            if *c == 0 {
                continue;
            }
            if *c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(l);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<i64, PicardError> {
    if a.basis != b.basis {
        return Err(PicardError::BasisMismatch(a.basis, b.basis));
    }
    let g = a.basis.gram();
    let mut s = 0;
    for i in 0..6 {
        for j in 0..6 {
            s += a.coeffs[i] * g[i][j] * b.coeffs[j];
        }
    }
    Ok(s)
}

pub fn canonical_class(basis: Basis) -> DivisorClass {
    match basis {
        Basis::Quadric => DivisorClass::new(basis, [-2, -2, 1, 1, 1, 1]),
        Basis::Plane => DivisorClass::new(basis, [-3, 1, 1, 1, 1, 1]),
    }
}

/// Per-coordinate bounds for classes with `x² = square` and `x·K = k_degree`.
///
/// The form `P(x) = (x·K)²/2 − x²` is positive definite (it flips the sign of
/// the form along K, and K² = 4 > 0 on a lattice of signature (1,5)), and is
/// constant on the solution set. Cauchy–Schwarz for P gives
/// `x_i² ≤ P(x) · (G_P⁻¹)_ii`.
pub fn coefficient_box(basis: Basis, square: i64, k_degree: i64) -> [i64; 6] {
    let g = basis.gram();
    let gk: Vec<i64> = (0..6).map(|i| (0..6).map(|j| g[i][j] * canonical_class(basis).coeffs[j]).sum()).collect();
    let half = Rat::new(1.into(), 2.into());
    let mut gp: RatMat = vec![vec![Rat::zero(); 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            gp[i][j] = rat_int(gk[i] * gk[j]) * &half - rat_int(g[i][j]);
        }
    }
    let inv = rat_inverse(&gp).expect("P is positive definite");
    let p_val = rat_int(k_degree * k_degree) * &half - rat_int(square);
    let mut out = [0i64; 6];
    for (i, o) in out.iter_mut().enumerate() {
        let r = &p_val * &inv[i][i];
        assert!(!r.is_negative());
        let fl = (r.numer() / r.denom()).to_i64().expect("small bound");
        let mut n = (fl as f64).sqrt() as i64 + 1;
        while n * n > fl {
            n -= 1;
        }
        *o = n;
    }
    out
}

/// All classes with the given square and degree against K inside `bound`.
pub fn enumerate_in_box(basis: Basis, square: i64, k_degree: i64, bound: [i64; 6]) -> Vec<DivisorClass> {
    let k = canonical_class(basis);
    let mut out = Vec::new();
    let mut c = bound.map(|b| -b);
    loop {
        let d = DivisorClass::new(basis, c);
        if d.square() == square && intersect(&d, &k).unwrap() == k_degree {
            out.push(d);
        }
        let mut i = 0;
        loop {
            if i == 6 {
                out.sort();
                return out;
            }
            if c[i] < bound[i] {
                c[i] += 1;
                break;
            }
            c[i] = -bound[i];
            i += 1;
        }
    }
}

fn enumerate(basis: Basis, square: i64, k_degree: i64) -> Vec<DivisorClass> {
    enumerate_in_box(basis, square, k_degree, coefficient_box(basis, square, k_degree))
}

/// The 16 classes with D² = −1 and D·K = −1, sorted.
pub fn enumerate_minus_one(basis: Basis) -> Vec<DivisorClass> {
    enumerate(basis, -1, -1)
}

/// The 10 conic classes C² = 0, C·K = −2, sorted.
pub fn enumerate_conic_classes(basis: Basis) -> Vec<DivisorClass> {
    enumerate(basis, 0, -2)
}

/// The 40 roots r² = −2, r·K = 0, sorted.
pub fn enumerate_roots(basis: Basis) -> Vec<DivisorClass> {
    enumerate(basis, -2, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceptionalPair {
    /// 1-based position in the ordered list.
    pub index: usize,
    pub members: [DivisorClass; 2],
}

/// The five pairs in a default order: plane pair i is {L−Ei, −K−L+Ei}; the
/// quadric order is {e1+e2 | e3+e4 crossings}, then the two rulings.
/// Real forms reorder these (see `realforms`).
pub fn exceptional_pairs(basis: Basis) -> Vec<ExceptionalPair> {
    let mk = |i: usize, a: DivisorClass| {
        let b = canonical_class(basis).neg().sub(&a);
        ExceptionalPair { index: i + 1, members: [a, b] }
    };
    match basis {
        Basis::Plane => (0..5)
            .map(|i| mk(i, DivisorClass::unit(basis, 0).sub(&DivisorClass::unit(basis, i + 1))))
            .collect(),
        Basis::Quadric => ["f1+f2-e1-e2", "f1+f2-e1-e3", "f1+f2-e1-e4", "f1", "f2"]
            .iter()
            .enumerate()
            .map(|(i, s)| mk(i, DivisorClass::parse(s, basis).unwrap()))
            .collect(),
    }
}

/// Columns are the plane coordinates of f1, f2, e1, …, e4.
const QUADRIC_TO_PLANE: [[i64; 6]; 6] = [
    [1, 1, 1, 0, 0, 0],
    [-1, 0, -1, 0, 0, 0],
    [0, -1, -1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
];

/// Columns are the quadric coordinates of L, E1, …, E5.
const PLANE_TO_QUADRIC: [[i64; 6]; 6] = [
    [1, 0, 1, 0, 0, 0],
    [1, 1, 0, 0, 0, 0],
    [-1, -1, -1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 1],
];

/// The change-of-basis matrix from `from` to `to` (identity when equal).
pub fn change_matrix(from: Basis, to: Basis) -> [[i64; 6]; 6] {
    match (from, to) {
        (Basis::Quadric, Basis::Plane) => QUADRIC_TO_PLANE,
        (Basis::Plane, Basis::Quadric) => PLANE_TO_QUADRIC,
        _ => {
            let mut m = [[0; 6]; 6];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
            m
        }
    }
}

/// Isometry f1=L−E1, f2=L−E2, e1=L−E1−E2, e2=E3, e3=E4, e4=E5 and its inverse.
pub fn change_basis(c: &DivisorClass, to: Basis) -> DivisorClass {
    let m = change_matrix(c.basis, to);
    let mut out = [0i64; 6];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..6).map(|j| m[i][j] * c.coeffs[j]).sum();
    }
    DivisorClass::new(to, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASES: [Basis; 2] = [Basis::Quadric, Basis::Plane];

    #[test]
    fn basic_numbers() {
        let q = |s| DivisorClass::parse(s, Basis::Quadric).unwrap();
        let p = |s| DivisorClass::parse(s, Basis::Plane).unwrap();
        assert_eq!(intersect(&q("f1"), &q("f2")), Ok(1));
        assert_eq!(intersect(&p("L-E1"), &p("2L-E2-E3-E4-E5")), Ok(2));
        for b in BASES {
            assert_eq!(canonical_class(b).square(), 4);
        }
        assert_eq!(
            intersect(&q("f1"), &p("L")),
            Err(PicardError::BasisMismatch(Basis::Quadric, Basis::Plane))
        );
    }

    #[test]
    fn counts_and_incidences() {
        for b in BASES {
            let lines = enumerate_minus_one(b);
            assert_eq!(lines.len(), 16);
            for d in &lines {
                let meets = lines.iter().filter(|e| intersect(d, e).unwrap() == 1).count();
                assert_eq!(meets, 5, "{d}");
            }
            assert_eq!(enumerate_conic_classes(b).len(), 10);
            assert_eq!(enumerate_roots(b).len(), 40);
        }
    }

    #[test]
    fn explicit_class_lists() {
        let lines: Vec<String> = enumerate_minus_one(Basis::Plane).iter().map(|c| c.to_string()).collect();
        assert!(lines.contains(&"E3".to_string()));
        assert!(lines.contains(&"L-E2-E5".to_string()));
        assert!(lines.contains(&"2L-E1-E2-E3-E4-E5".to_string()));
        let conics: Vec<String> = enumerate_conic_classes(Basis::Quadric).iter().map(|c| c.to_string()).collect();
        for s in ["f1", "f2", "f1+f2-e2-e4", "f1+2f2-e1-e2-e3-e4", "2f1+f2-e1-e2-e3-e4"] {
            assert!(conics.contains(&s.to_string()), "{s}");
        }
    }

    /// Widening the derived box by two in every direction finds nothing new.
    #[test]
    fn box_is_exhaustive() {
        for b in BASES {
            for (sq, k) in [(-1, -1), (0, -2), (-2, 0)] {
                let bx = coefficient_box(b, sq, k);
                let wide = enumerate_in_box(b, sq, k, bx.map(|x| x + 2));
                assert_eq!(wide, enumerate_in_box(b, sq, k, bx));
            }
        }
    }

    #[test]
    fn pairs_partition_conics() {
        for b in BASES {
            let k = canonical_class(b);
            let mut members: Vec<DivisorClass> = Vec::new();
            for pr in exceptional_pairs(b) {
                let [x, y] = pr.members;
                assert_eq!(x.add(&y), k.neg());
                assert_eq!((x.square(), y.square(), intersect(&x, &y).unwrap()), (0, 0, 2));
                members.extend([x, y]);
            }
            members.sort();
            assert_eq!(members, enumerate_conic_classes(b));
        }
    }

    #[test]
    fn change_basis_is_isometry() {
        let l = DivisorClass::parse("L", Basis::Plane).unwrap();
        assert_eq!(change_basis(&l, Basis::Quadric).to_string(), "f1+f2-e1");
        for b in BASES {
            let other = if b == Basis::Quadric { Basis::Plane } else { Basis::Quadric };
            assert_eq!(change_basis(&canonical_class(b), other), canonical_class(other));
            let lines = enumerate_minus_one(b);
            for x in &lines {
                assert_eq!(change_basis(&change_basis(x, other), b), *x);
                for y in &lines {
                    assert_eq!(
                        intersect(x, y).unwrap(),
                        intersect(&change_basis(x, other), &change_basis(y, other)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn text_grammar() {
        for (s, b) in [("f1+f2-e1-e3", Basis::Quadric), ("2L-E1-E2", Basis::Plane), ("-3L+E1+E2+E3+E4+E5", Basis::Plane), ("0", Basis::Plane)] {
            assert_eq!(DivisorClass::parse(s, b).unwrap().to_string(), s);
        }
        for bad in ["", "f1+", "x1", "f1++f2", "2"] {
            assert!(DivisorClass::parse(bad, Basis::Quadric).is_err(), "{bad}");
        }
    }
}
