//! Projective points, the real structures, and the normalised blown-up
//! points of each real form.

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::det;
use crate::numfield::FieldElem;
use crate::realforms::{form_spec, FormId};

use super::BirError;

/// Named scenario parameters.
pub type Params = BTreeMap<String, FieldElem>;

/// Homogeneous coordinates, not all zero; equality is proportionality.
#[derive(Clone)]
pub struct ProjPoint(pub Vec<FieldElem>);

impl ProjPoint {
    pub fn new(c: Vec<FieldElem>) -> Result<Self, BirError> {
        if c.iter().all(|x| x.is_zero()) {
            return Err(BirError::ZeroPoint);
        }
        Ok(ProjPoint(c))
    }

    pub fn ints(d: i64, c: &[i64]) -> Self {
        ProjPoint(c.iter().map(|&x| FieldElem::int(d, x)).collect())
    }

    pub fn d(&self) -> i64 {
        self.0[0].d()
    }

    /// Entrywise complex conjugation.
    pub fn cc(&self) -> Self {
        ProjPoint(self.0.iter().map(|x| x.cc()).collect())
    }

    /// Scaled so the first nonzero coordinate is 1.
    pub fn normalised(&self) -> Self {
        ProjPoint(crate::linalg::normalise(self.0.clone()))
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, o: &Self) -> bool {
        let n = self.0.len();
        n == o.0.len() && (0..n).all(|i| (i + 1..n).all(|j| (&self.0[i] * &o.0[j] - &self.0[j] * &o.0[i]).is_zero()))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalised();
        let parts: Vec<String> = n.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, PartialEq)]
pub struct QuadricPoint {
    pub u: ProjPoint,
    pub v: ProjPoint,
}

impl QuadricPoint {
    pub fn new(u: ProjPoint, v: ProjPoint) -> Self {
        QuadricPoint { u, v }
    }

    pub fn coords(&self) -> [FieldElem; 4] {
        [self.u.0[0].clone(), self.u.0[1].clone(), self.v.0[0].clone(), self.v.0[1].clone()]
    }

    /// The real structure of `form`: conjugate and swap factors on Q₃,₁,
    /// conjugate coordinatewise on Q₂,₂.
    pub fn sigma(&self, form: FormId) -> QuadricPoint {
        if form.swaps_factors() {
            QuadricPoint::new(self.v.cc(), self.u.cc())
        } else {
            QuadricPoint::new(self.u.cc(), self.v.cc())
        }
    }
}

impl fmt::Display for QuadricPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl fmt::Debug for QuadricPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn get<'a>(params: &'a Params, name: &str) -> Result<&'a FieldElem, BirError> {
    params.get(name).ok_or_else(|| BirError::InvalidParameters(format!("missing parameter {name}")))
}

/// `[a:b]` from two field elements.
pub fn p1(a: &FieldElem, b: &FieldElem) -> ProjPoint {
    ProjPoint(vec![a.clone(), b.clone()])
}

/// The normalised blown-up points of `form` in the order e1 … e4.
pub fn normal_points(form: FormId, d: i64, params: &Params) -> Result<[QuadricPoint; 4], BirError> {
    let c = |n: i64| FieldElem::int(d, n);
    let pt = |a: ProjPoint, b: ProjPoint| QuadricPoint::new(a, b);
    let pts = match form {
        FormId::Q31_02 => {
            let mu = get(params, "mu")?;
            [
                pt(p1(&c(1), &c(0)), p1(&c(0), &c(1))),
                pt(p1(&c(0), &c(1)), p1(&c(1), &c(0))),
                pt(p1(&c(1), &c(1)), p1(&c(1), mu)),
                pt(p1(&c(1), &mu.cc()), p1(&c(1), &c(1))),
            ]
        }
        FormId::Q31_21 => {
            let mu = get(params, "mu")?;
            [
                pt(p1(&c(1), &c(0)), p1(&c(1), &c(0))),
                pt(p1(&c(0), &c(1)), p1(&c(0), &c(1))),
                pt(p1(&c(1), &c(1)), p1(mu, &c(1))),
                pt(p1(&mu.cc(), &c(1)), p1(&c(1), &c(1))),
            ]
        }
        FormId::Q31_40 => {
            let l = get(params, "lambda")?;
            [
                pt(p1(&c(1), &c(0)), p1(&c(1), &c(0))),
                pt(p1(&c(0), &c(1)), p1(&c(0), &c(1))),
                pt(p1(&c(1), &c(1)), p1(&c(1), &c(1))),
                pt(p1(l, &c(1)), p1(&l.cc(), &c(1))),
            ]
        }
        FormId::Q22_02 => {
            if d != -1 {
                return Err(BirError::InvalidParameters("q22-02 points need field_d = -1".into()));
            }
            let i = FieldElem::sqrt_d(d);
            let (k1, k2) = (get(params, "k1")?, get(params, "k2")?);
            [
                pt(p1(&c(1), &i), p1(&c(1), &i)),
                pt(p1(&c(1), &-&i), p1(&c(1), &-&i)),
                pt(p1(&c(1), &(k1 * &i)), p1(&c(1), &(k2 * &i))),
                pt(p1(&c(1), &-(k1 * &i)), p1(&c(1), &-(k2 * &i))),
            ]
        }
        FormId::Q22_40 => {
            let (m1, m2) = (get(params, "mu1")?, get(params, "mu2")?);
            [
                pt(p1(&c(1), &c(0)), p1(&c(1), &c(0))),
                pt(p1(&c(0), &c(1)), p1(&c(0), &c(1))),
                pt(p1(&c(1), &c(1)), p1(&c(1), &c(1))),
                pt(p1(&c(1), m1), p1(&c(1), m2)),
            ]
        }
    };
    for p in &pts {
        for x in p.coords() {
            if x.d() != d {
                return Err(BirError::FieldMismatch);
            }
        }
    }
    Ok(pts)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    NotDistinct(usize, usize),
    /// Two points on a common fibre of the ruling `{u = const}` (1) or
    /// `{v = const}` (2).
    SharedFiber(usize, usize, u8),
    CurveThroughAll,
    NotSigmaStable(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotDistinct(i, j) => write!(f, "NotDistinct(e{}, e{})", i + 1, j + 1),
            Violation::SharedFiber(i, j, r) => write!(f, "SharedFiber(e{}, e{}, f{r})", i + 1, j + 1),
            Violation::CurveThroughAll => f.write_str("CurveThroughAll"),
            Violation::NotSigmaStable(i) => write!(f, "NotSigmaStable(e{})", i + 1),
        }
    }
}

/// The pattern in which σ permutes e1 … e4, read off the lattice involution.
pub fn sigma_point_pattern(form: FormId) -> [usize; 4] {
    let s = form_spec(form).sigma;
    let mut out = [0; 4];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..4).find(|&j| s.m[j + 2][i + 2] == 1).expect("sigma permutes the e's");
    }
    out
}

/// Monomial row (u0v0, u0v1, u1v0, u1v1) of a point.
pub fn bilinear_row(p: &QuadricPoint) -> Vec<FieldElem> {
    let [a, b, c, e] = p.coords();
    vec![&a * &c, &a * &e, &b * &c, &b * &e]
}

pub fn validate_points(form: FormId, pts: &[QuadricPoint; 4]) -> Vec<Violation> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                out.push(Violation::NotDistinct(i, j));
                continue;
            }
            if pts[i].u == pts[j].u {
                out.push(Violation::SharedFiber(i, j, 1));
            }
            if pts[i].v == pts[j].v {
                out.push(Violation::SharedFiber(i, j, 2));
            }
        }
    }
    let rows: Vec<Vec<FieldElem>> = pts.iter().map(bilinear_row).collect();
    if det(&rows, pts[0].u.d()).is_zero() {
        out.push(Violation::CurveThroughAll);
    }
    let pattern = sigma_point_pattern(form);
    for i in 0..4 {
        if pts[i].sigma(form) != pts[pattern[i]] {
            out.push(Violation::NotSigmaStable(i));
        }
    }
    out
}
