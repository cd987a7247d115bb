//! Möbius pairs `(u, v) ↦ (A·u, B·v)` or `(u, v) ↦ (B·v, A·u)` through
//! prescribed point correspondences.
//!
//! Each correspondence `M·x ∝ y` is one linear equation
//! `m00·x0·y1 + m01·x1·y1 − m10·x0·y0 − m11·x1·y0 = 0`.

use crate::linalg::{det, nullspace};
use crate::numfield::FieldElem;

use super::bideg::BidegMap;
use super::point::{ProjPoint, QuadricPoint};
use super::poly::Poly;
use super::BirError;

pub type Mat2 = [[FieldElem; 2]; 2];

/// How the two matrices are tied to the real structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Realness {
    /// `B = Ā`: the maps commuting with `(u, v) ↦ (v̄, ū)`.
    BEqualsConjA,
    /// `A` and `B` real: the maps commuting with coordinatewise conjugation.
    BothReal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoebiusSolution {
    pub a: Mat2,
    pub b: Mat2,
    pub swap: bool,
}

fn row(x: &ProjPoint, y: &ProjPoint) -> Vec<FieldElem> {
    let (x0, x1, y0, y1) = (&x.0[0], &x.0[1], &y.0[0], &y.0[1]);
    vec![x0 * y1, x1 * y1, -(x0 * y0), -(x1 * y0)]
}

fn mat(v: &[FieldElem]) -> Mat2 {
    [[v[0].clone(), v[1].clone()], [v[2].clone(), v[3].clone()]]
}

fn cc_mat(m: &Mat2) -> Mat2 {
    [[m[0][0].cc(), m[0][1].cc()], [m[1][0].cc(), m[1][1].cc()]]
}

/// Rational rows: each field row splits into its rational and √d parts.
fn split_rows(rows: &[Vec<FieldElem>], d: i64) -> Vec<Vec<FieldElem>> {
    rows.iter()
        .flat_map(|r| {
            [
                r.iter().map(|c| FieldElem::from_rat(d, c.re_part().clone())).collect::<Vec<_>>(),
                r.iter().map(|c| FieldElem::from_rat(d, c.sqrt_part().clone())).collect(),
            ]
        })
        .collect()
}

fn unique(ns: Vec<Vec<FieldElem>>) -> Result<Vec<FieldElem>, BirError> {
    match ns.len() {
        0 => Err(BirError::NoSolution),
        1 => Ok(ns.into_iter().next().expect("one vector")),
        _ => Err(BirError::UnderdeterminedSystem),
    }
}

/// Solves for the unique Möbius pair sending each `x` to its `y`.
pub fn solve_moebius_pair(
    constraints: &[(QuadricPoint, QuadricPoint)],
    swap: bool,
    realness: Realness,
    d: i64,
) -> Result<MoebiusSolution, BirError> {
    let mut a_rows = Vec::new();
    let mut b_rows = Vec::new();
    for (x, y) in constraints {
        if swap {
            a_rows.push(row(&x.u, &y.v));
            b_rows.push(row(&x.v, &y.u));
        } else {
            a_rows.push(row(&x.u, &y.u));
            b_rows.push(row(&x.v, &y.v));
        }
    }
    // real data only matters when √d is not real
    let real_split = d < 0;
    let (a, b) = match realness {
        Realness::BEqualsConjA => {
            // B z ∝ w  ⟺  A z̄ ∝ w̄
            let mut rows = a_rows;
            rows.extend(b_rows.iter().map(|r| r.iter().map(|c| c.cc()).collect()));
            let a = mat(&unique(nullspace(&rows, 4, d))?);
            let b = cc_mat(&a);
            (a, b)
        }
        Realness::BothReal => {
            let prep = |r: Vec<Vec<FieldElem>>| if real_split { split_rows(&r, d) } else { r };
            let a = mat(&unique(nullspace(&prep(a_rows), 4, d))?);
            let b = mat(&unique(nullspace(&prep(b_rows), 4, d))?);
            (a, b)
        }
    };
    let invertible = |m: &Mat2| !det(&[m[0].to_vec(), m[1].to_vec()], d).is_zero();
    if !invertible(&a) || !invertible(&b) {
        return Err(BirError::NoSolution);
    }
    Ok(MoebiusSolution { a, b, swap })
}

impl MoebiusSolution {
    pub fn to_map(&self, d: i64) -> BidegMap {
        let lin = |m: &Mat2, i: usize, vars: [usize; 2]| {
            Poly::var(d, vars[0]).scale(&m[i][0]).add(&Poly::var(d, vars[1]).scale(&m[i][1]))
        };
        let (first, second) = if self.swap {
            ([lin(&self.b, 0, [2, 3]), lin(&self.b, 1, [2, 3])], [lin(&self.a, 0, [0, 1]), lin(&self.a, 1, [0, 1])])
        } else {
            ([lin(&self.a, 0, [0, 1]), lin(&self.a, 1, [0, 1])], [lin(&self.b, 0, [2, 3]), lin(&self.b, 1, [2, 3])])
        };
        BidegMap { a: first, b: second }
    }
}
