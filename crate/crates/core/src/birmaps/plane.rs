//! Rational self-maps of P² and the quadratic involutions of a five-point
//! plane model.

use std::fmt;

use crate::linalg::det;
use crate::numfield::FieldElem;

use super::point::ProjPoint;
use super::poly::{Poly, PLANE_VARS};
use super::BirError;

const XYZ: [usize; 3] = [0, 1, 2];

#[derive(Clone, PartialEq)]
pub struct PlaneMap {
    pub c: [Poly; 3],
}

fn cross_vanishes(a: &[FieldElem], b: &[FieldElem]) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| (&a[i] * &b[j] - &a[j] * &b[i]).is_zero()))
}

/// Affine grid `[1:a:b]`, `a, b ≤ n`. A form of degree ≤ n vanishing there
/// vanishes identically.
fn plane_grid(d: i64, n: u32) -> Vec<[FieldElem; 3]> {
    let c = |k: i64| FieldElem::int(d, k);
    let mut out = Vec::new();
    for a in 0..=n as i64 {
        for b in 0..=n as i64 {
            out.push([c(1), c(a), c(b)]);
        }
    }
    out
}

impl PlaneMap {
    pub fn new(c: [Poly; 3]) -> Result<Self, BirError> {
        if c.iter().all(|p| p.is_zero()) {
            return Err(BirError::Malformed("all components vanish".into()));
        }
        let degs: Vec<u32> = c.iter().filter(|p| !p.is_zero()).map(|p| p.degree_in(&XYZ)).collect();
        if !c.iter().all(|p| p.is_homogeneous_in(&XYZ)) || degs.iter().any(|&x| x != degs[0]) {
            return Err(BirError::Malformed("components are not forms of one degree".into()));
        }
        Ok(PlaneMap { c })
    }

    pub fn parse(exprs: [&str; 3], d: i64, consts: &[(&str, FieldElem)]) -> Result<Self, BirError> {
        let p = |s: &str| Poly::parse(s, d, &PLANE_VARS, consts).map_err(|e| BirError::Malformed(e.to_string()));
        PlaneMap::new([p(exprs[0])?, p(exprs[1])?, p(exprs[2])?])
    }

    pub fn identity(d: i64) -> Self {
        PlaneMap { c: [Poly::var(d, 0), Poly::var(d, 1), Poly::var(d, 2)] }
    }

    /// The linear map `x ↦ H·x`.
    pub fn linear(h: &[Vec<FieldElem>]) -> Self {
        let d = h[0][0].d();
        let row = |i: usize| (0..3).fold(Poly::zero(d), |acc, j| acc.add(&Poly::var(d, j).scale(&h[i][j])));
        PlaneMap { c: [row(0), row(1), row(2)] }
    }

    pub fn d(&self) -> i64 {
        self.c[0].d()
    }

    pub fn degree(&self) -> u32 {
        self.c.iter().map(|p| p.degree_in(&XYZ)).max().unwrap_or(0)
    }

    fn eval_raw(&self, x: &[FieldElem]) -> Vec<FieldElem> {
        self.c.iter().map(|p| p.eval(x)).collect()
    }

    pub fn evaluate(&self, p: &ProjPoint) -> Result<ProjPoint, BirError> {
        ProjPoint::new(self.eval_raw(&p.0)).map_err(|_| BirError::BasePointEvaluation(p.to_string()))
    }

    pub fn is_base_point(&self, p: &ProjPoint) -> bool {
        self.eval_raw(&p.0).iter().all(|c| c.is_zero())
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &PlaneMap) -> PlaneMap {
        PlaneMap { c: self.c.clone().map(|p| p.substitute(&g.c)) }
    }

    pub fn equals_as_rational_map(&self, o: &PlaneMap) -> bool {
        let n = self.degree() + o.degree();
        let grid = plane_grid(self.d(), n);
        let nonzero = |m: &PlaneMap| grid.iter().any(|x| m.eval_raw(x).iter().any(|c| !c.is_zero()));
        nonzero(self) && nonzero(o) && grid.iter().all(|x| cross_vanishes(&self.eval_raw(x), &o.eval_raw(x)))
    }

    pub fn order(&self, max: u32) -> Option<u32> {
        let id = PlaneMap::identity(self.d());
        let mut acc = self.clone();
        for n in 1..=max {
            if acc.equals_as_rational_map(&id) {
                return Some(n);
            }
            acc = self.compose(&acc);
        }
        None
    }

    /// Coordinatewise conjugation of coefficients.
    pub fn conjugate_by_real_structure(&self) -> PlaneMap {
        PlaneMap { c: self.c.clone().map(|p| p.map_coeffs(|c| c.cc())) }
    }

    /// Whether the line through `a` and `b` (off the base locus) maps onto `target`.
    pub fn contracts_line(&self, a: &ProjPoint, b: &ProjPoint, target: &ProjPoint) -> bool {
        let d = self.d();
        let mut defined = false;
        for t in 0..=self.degree() as i64 + 1 {
            let (s0, s1) = if t == 0 { (FieldElem::zero(d), FieldElem::one(d)) } else { (FieldElem::one(d), FieldElem::int(d, t - 1)) };
            let x: Vec<FieldElem> = (0..3).map(|i| &(&a.0[i] * &s0) + &(&b.0[i] * &s1)).collect();
            let y = self.eval_raw(&x);
            if !cross_vanishes(&y, &target.0) {
                return false;
            }
            defined |= y.iter().any(|c| !c.is_zero());
        }
        defined
    }
}

impl fmt::Display for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.c.iter().map(|p| p.display_with(&PLANE_VARS)).collect();
        write!(f, "[{}]", s.join(" : "))
    }
}

impl fmt::Debug for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn adjugate(m: &[Vec<FieldElem>]) -> Vec<Vec<FieldElem>> {
    let minor = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        &(&m[rows[0]][cols[0]] * &m[rows[1]][cols[1]]) - &(&m[rows[0]][cols[1]] * &m[rows[1]][cols[0]])
    };
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let c = minor(j, i);
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect()
        })
        .collect()
}

/// The standard quadratic involution `[a·yz : b·xz : c·xy]`.
pub fn standard_involution(abc: &[FieldElem; 3]) -> PlaneMap {
    let d = abc[0].d();
    let v = |i| Poly::var(d, i);
    PlaneMap { c: [v(1).mul(&v(2)).scale(&abc[0]), v(0).mul(&v(2)).scale(&abc[1]), v(0).mul(&v(1)).scale(&abc[2])] }
}

/// The quadratic involution with base points `base` exchanging `swap[0]`
/// and `swap[1]`. Fails when the five points are not in general position.
pub fn quadratic_involution(base: [&ProjPoint; 3], swap: [&ProjPoint; 2]) -> Result<PlaneMap, BirError> {
    let d = base[0].d();
    let h0: Vec<Vec<FieldElem>> = (0..3).map(|i| base.iter().map(|p| p.0[i].clone()).collect()).collect();
    let general = |cols: [&ProjPoint; 3]| {
        let m: Vec<Vec<FieldElem>> = (0..3).map(|i| cols.iter().map(|p| p.0[i].clone()).collect()).collect();
        !det(&m, d).is_zero()
    };
    let five = [base[0], base[1], base[2], swap[0], swap[1]];
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                if !general([five[i], five[j], five[k]]) {
                    return Err(BirError::DegenerateCurve("three of the five points are collinear".into()));
                }
            }
        }
    }
    // frame H: e_i ↦ base[i], [1:1:1] ↦ swap[0]
    let adj0 = adjugate(&h0);
    let c: Vec<FieldElem> = (0..3).map(|i| (0..3).fold(FieldElem::zero(d), |s, j| &s + &(&adj0[i][j] * &swap[0].0[j]))).collect();
    let h: Vec<Vec<FieldElem>> = (0..3).map(|i| (0..3).map(|j| &h0[i][j] * &c[j]).collect()).collect();
    let hinv = adjugate(&h);
    let abc: Vec<FieldElem> = (0..3).map(|i| (0..3).fold(FieldElem::zero(d), |s, j| &s + &(&hinv[i][j] * &swap[1].0[j]))).collect();
    let lam = standard_involution(&[abc[0].clone(), abc[1].clone(), abc[2].clone()]);
    Ok(PlaneMap::linear(&h).compose(&lam.compose(&PlaneMap::linear(&hinv))))
}
