//! Rational self-maps of P¹×P¹ given by bihomogeneous coordinate pairs.
//!
//! Equality of rational maps reduces to the vanishing of the cross
//! determinants, which are decided on full grids: a nonzero bihomogeneous
//! form of bidegree (p, q) cannot vanish on n₁ × n₂ distinct points of
//! P¹×P¹ when n₁ > p and n₂ > q.

use std::fmt;

use crate::numfield::FieldElem;
use crate::realforms::FormId;

use super::point::{p1, ProjPoint, QuadricPoint};
use super::poly::{Poly, QUADRIC_VARS};
use super::BirError;

const U: [usize; 2] = [0, 1];
const V: [usize; 2] = [2, 3];

#[derive(Clone, PartialEq)]
pub struct BidegMap {
    /// Output coordinates `[A0:A1]` of the first factor.
    pub a: [Poly; 2],
    /// Output coordinates `[B0:B1]` of the second factor.
    pub b: [Poly; 2],
}

/// `(deg in u, deg in v)`.
pub type Bidegree = (u32, u32);

pub fn bidegree(p: &Poly) -> Bidegree {
    (p.degree_in(&U), p.degree_in(&V))
}

fn pair_bidegree(c: &[Poly; 2]) -> Bidegree {
    let (x, y) = (bidegree(&c[0]), bidegree(&c[1]));
    (x.0.max(y.0), x.1.max(y.1))
}

/// The P¹ grid `[1:0], [1:1], …, [1:n], [0:1]`.
pub fn p1_grid(d: i64, n: u32) -> Vec<ProjPoint> {
    let mut out: Vec<ProjPoint> = (0..=n as i64).map(|t| ProjPoint::ints(d, &[1, t])).collect();
    out.push(ProjPoint::ints(d, &[0, 1]));
    out
}

/// Decides whether a bihomogeneous form is identically zero.
pub fn vanishes_identically(p: &Poly) -> bool {
    let (du, dv) = bidegree(p);
    let d = p.d();
    let gu = p1_grid(d, du);
    let gv = p1_grid(d, dv);
    gu.iter().all(|u| {
        gv.iter().all(|v| p.eval(&[u.0[0].clone(), u.0[1].clone(), v.0[0].clone(), v.0[1].clone()]).is_zero())
    })
}

impl BidegMap {
    pub fn new(a: [Poly; 2], b: [Poly; 2]) -> Result<Self, BirError> {
        let m = BidegMap { a, b };
        for (name, c) in [("A", &m.a), ("B", &m.b)] {
            if c[0].is_zero() && c[1].is_zero() {
                return Err(BirError::Malformed(format!("{name} components both vanish")));
            }
            let da = bidegree(&c[0]);
            let db = bidegree(&c[1]);
            let homog = c.iter().all(|p| p.is_homogeneous_in(&U) && p.is_homogeneous_in(&V));
            if !homog || (!c[0].is_zero() && !c[1].is_zero() && da != db) {
                return Err(BirError::Malformed(format!("{name} components are not of one common bidegree")));
            }
        }
        Ok(m)
    }

    /// Builds a map from four expressions in `u0 u1 v0 v1` and constants.
    pub fn parse(exprs: [&str; 4], d: i64, consts: &[(&str, FieldElem)]) -> Result<Self, BirError> {
        let p = |s: &str| Poly::parse(s, d, &QUADRIC_VARS, consts).map_err(|e| BirError::Malformed(e.to_string()));
        BidegMap::new([p(exprs[0])?, p(exprs[1])?], [p(exprs[2])?, p(exprs[3])?])
    }

    pub fn identity(d: i64) -> Self {
        BidegMap { a: [Poly::var(d, 0), Poly::var(d, 1)], b: [Poly::var(d, 2), Poly::var(d, 3)] }
    }

    pub fn d(&self) -> i64 {
        self.a[0].d()
    }

    pub fn bidegrees(&self) -> (Bidegree, Bidegree) {
        (pair_bidegree(&self.a), pair_bidegree(&self.b))
    }

    pub fn components(&self) -> [&Poly; 4] {
        [&self.a[0], &self.a[1], &self.b[0], &self.b[1]]
    }

    pub fn evaluate(&self, p: &QuadricPoint) -> Result<QuadricPoint, BirError> {
        let x = p.coords();
        let a = [self.a[0].eval(&x), self.a[1].eval(&x)];
        let b = [self.b[0].eval(&x), self.b[1].eval(&x)];
        if a.iter().all(|c| c.is_zero()) || b.iter().all(|c| c.is_zero()) {
            return Err(BirError::BasePointEvaluation(p.to_string()));
        }
        Ok(QuadricPoint::new(p1(&a[0], &a[1]), p1(&b[0], &b[1])))
    }

    /// True when one of the two output pairs vanishes at `p`.
    pub fn is_base_point(&self, p: &QuadricPoint) -> bool {
        matches!(self.evaluate(p), Err(BirError::BasePointEvaluation(_)))
    }

    /// `self ∘ g` by substitution; common factors are kept.
    pub fn compose(&self, g: &BidegMap) -> BidegMap {
        let subs = [g.a[0].clone(), g.a[1].clone(), g.b[0].clone(), g.b[1].clone()];
        BidegMap {
            a: [self.a[0].substitute(&subs), self.a[1].substitute(&subs)],
            b: [self.b[0].substitute(&subs), self.b[1].substitute(&subs)],
        }
    }

    pub fn power(&self, n: u32) -> BidegMap {
        let mut acc = BidegMap::identity(self.d());
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Equality as rational maps: `A·A'` and `B·B'` cross determinants vanish.
    pub fn equals_as_rational_map(&self, o: &BidegMap) -> bool {
        let ca = self.a[0].mul(&o.a[1]).sub(&self.a[1].mul(&o.a[0]));
        let cb = self.b[0].mul(&o.b[1]).sub(&self.b[1].mul(&o.b[0]));
        [&self.a, &self.b, &o.a, &o.b].iter().all(|c| !(vanishes_identically(&c[0]) && vanishes_identically(&c[1])))
            && vanishes_identically(&ca)
            && vanishes_identically(&cb)
    }

    pub fn is_identity_as_rational_map(&self) -> bool {
        self.equals_as_rational_map(&BidegMap::identity(self.d()))
    }

    /// Smallest n ≤ `max` with selfⁿ = id.
    pub fn order(&self, max: u32) -> Option<u32> {
        let mut acc = self.clone();
        for n in 1..=max {
            if acc.is_identity_as_rational_map() {
                return Some(n);
            }
            acc = self.compose(&acc);
        }
        None
    }

    /// σ ∘ self ∘ σ as a coordinate map.
    pub fn conjugate_by_real_structure(&self, form: FormId) -> BidegMap {
        let cc = |p: &Poly| p.map_coeffs(|c| c.cc());
        if form.swaps_factors() {
            // σ(u,v) = (v̄,ū): A' = B^cc(v,u), B' = A^cc(v,u)
            let sw = |p: &Poly| cc(p).rename([2, 3, 0, 1]);
            BidegMap { a: [sw(&self.b[0]), sw(&self.b[1])], b: [sw(&self.a[0]), sw(&self.a[1])] }
        } else {
            BidegMap { a: [cc(&self.a[0]), cc(&self.a[1])], b: [cc(&self.b[0]), cc(&self.b[1])] }
        }
    }

    pub fn commutes_with_real_structure(&self, form: FormId) -> bool {
        self.equals_as_rational_map(&self.conjugate_by_real_structure(form))
    }

    /// Tables `e0 e1 e2 e3 : coeff` for A0, A1, B0, B1.
    pub fn to_tables(&self) -> [Vec<String>; 4] {
        self.components().map(|p| p.to_table())
    }

    pub fn from_tables(t: &[Vec<String>; 4], d: i64) -> Result<BidegMap, BirError> {
        let p = |l: &Vec<String>| Poly::from_table(l, d).map_err(|e| BirError::Malformed(e.to_string()));
        BidegMap::new([p(&t[0])?, p(&t[1])?], [p(&t[2])?, p(&t[3])?])
    }
}

impl fmt::Display for BidegMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |p: &Poly| p.display_with(&QUADRIC_VARS);
        write!(f, "([{} : {}], [{} : {}])", s(&self.a[0]), s(&self.a[1]), s(&self.b[0]), s(&self.b[1]))
    }
}

impl fmt::Debug for BidegMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A curve on P¹×P¹ given by incidence data.
#[derive(Debug, Clone)]
pub enum Curve {
    /// `{u = x}`, of class f1.
    Fiber1(ProjPoint),
    /// `{v = x}`, of class f2.
    Fiber2(ProjPoint),
    /// The (1,1)-curve through three points.
    Curve11([QuadricPoint; 3]),
}

impl Curve {
    /// The fibre through `p` of the given ruling (1: class f1, 2: class f2).
    pub fn fiber_through(p: &QuadricPoint, ruling: u8) -> Curve {
        if ruling == 1 {
            Curve::Fiber1(p.u.clone())
        } else {
            Curve::Fiber2(p.v.clone())
        }
    }
}

/// A parametrisation of a curve by t = [t0:t1]; each output coordinate is
/// `k + c0·t0 + c1·t1`.
struct Param {
    u: [[FieldElem; 3]; 2],
    v: [[FieldElem; 3]; 2],
}

impl Param {
    fn at(&self, t: &ProjPoint) -> QuadricPoint {
        let lin = |c: &[FieldElem; 3]| &c[0] + &(&(&c[1] * &t.0[0]) + &(&c[2] * &t.0[1]));
        QuadricPoint::new(
            ProjPoint(vec![lin(&self.u[0]), lin(&self.u[1])]),
            ProjPoint(vec![lin(&self.v[0]), lin(&self.v[1])]),
        )
    }

    /// Degree in t of a pulled-back form of bidegree `b`.
    fn degree(&self, b: Bidegree) -> u32 {
        let moving = |c: &[[FieldElem; 3]; 2]| c.iter().any(|r| !r[1].is_zero() || !r[2].is_zero()) as u32;
        b.0 * moving(&self.u) + b.1 * moving(&self.v)
    }
}

fn parametrise(curve: &Curve, d: i64) -> Result<Param, BirError> {
    let z = || FieldElem::zero(d);
    let o = || FieldElem::one(d);
    let fixed = |x: &ProjPoint| [[x.0[0].clone(), z(), z()], [x.0[1].clone(), z(), z()]];
    let moving = || [[z(), o(), z()], [z(), z(), o()]];
    match curve {
        Curve::Fiber1(x) => Ok(Param { u: fixed(x), v: moving() }),
        Curve::Fiber2(x) => Ok(Param { u: moving(), v: fixed(x) }),
        Curve::Curve11(pts) => {
            let rows: Vec<Vec<FieldElem>> = pts.iter().map(super::point::bilinear_row).collect();
            let ns = crate::linalg::nullspace(&rows, 4, d);
            if ns.len() != 1 {
                return Err(BirError::DegenerateCurve(format!("{} (1,1)-curves through the points", ns.len())));
            }
            let [c00, c01, c10, c11] = [ns[0][0].clone(), ns[0][1].clone(), ns[0][2].clone(), ns[0][3].clone()];
            if (&c00 * &c11 - &c01 * &c10).is_zero() {
                return Err(BirError::DegenerateCurve("the (1,1)-curve is reducible".into()));
            }
            // c00 u0v0 + c01 u0v1 + c10 u1v0 + c11 u1v1 = 0 with u = [t0:t1]
            Ok(Param { u: moving(), v: [[z(), c01, c11], [z(), -&c00, -&c10]] })
        }
    }
}

/// Whether `m` maps every point of `curve` (off its base locus) to `target`.
///
/// Both cross determinants restricted to the curve are polynomials in the
/// parameter of known degree D; they are evaluated at D + 1 parameter
/// values. The map must also be defined somewhere on the curve.
pub fn contracts(m: &BidegMap, curve: &Curve, target: &QuadricPoint) -> Result<bool, BirError> {
    let d = m.d();
    let par = parametrise(curve, d)?;
    let (ba, bb) = m.bidegrees();
    let n = par.degree(ba).max(par.degree(bb));
    let mut defined = [false, false];
    for t in p1_grid(d, n) {
        let x = par.at(&t).coords();
        for (k, (c, tgt)) in [(&m.a, &target.u), (&m.b, &target.v)].into_iter().enumerate() {
            let (y0, y1) = (c[0].eval(&x), c[1].eval(&x));
            if !(&y0 * &tgt.0[1] - &y1 * &tgt.0[0]).is_zero() {
                return Ok(false);
            }
            defined[k] |= !(y0.is_zero() && y1.is_zero());
        }
    }
    Ok(defined[0] && defined[1])
}
