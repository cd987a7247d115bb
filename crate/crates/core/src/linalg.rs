//! Gaussian elimination over Q and over Q(√d).

use num_traits::{One, Zero};

use crate::numfield::{FieldElem, Rat};

pub type RatMat = Vec<Vec<Rat>>;

/// Inverse of a square rational matrix, `None` when singular.
pub fn rat_inverse(m: &RatMat) -> Option<RatMat> {
    let n = m.len();
    let mut a: RatMat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Rat::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] = &a[r][c] - v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn rat_mul(a: &RatMat, b: &RatMat) -> RatMat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).fold(Rat::zero(), |s, t| s + &a[i][t] * &b[t][j])).collect())
        .collect()
}

/// Basis of the right nullspace of `rows` (each of length `ncols`) over
/// Q(√d). Returned vectors are normalised so their first nonzero entry is 1.
pub fn nullspace(rows: &[Vec<FieldElem>], ncols: usize, d: i64) -> Vec<Vec<FieldElem>> {
    let mut a: Vec<Vec<FieldElem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let v = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - &v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FieldElem::zero(d); ncols];
            v[f] = FieldElem::one(d);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[i][f];
            }
            normalise(v)
        })
        .collect()
}

/// Scales `v` so its first nonzero entry is 1; the zero vector is unchanged.
pub fn normalise(v: Vec<FieldElem>) -> Vec<FieldElem> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v,
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
    }
}

/// Determinant by elimination over Q(√d).
pub fn det(m: &[Vec<FieldElem>], d: i64) -> FieldElem {
    let n = m.len();
    let mut a = m.to_vec();
    let mut acc = FieldElem::one(d);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return FieldElem::zero(d) };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        acc = &acc * &a[c][c];
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in c..n {
                    let v = &a[c][j] * &f;
                    a[i][j] = &a[i][j] - &v;
                }
            }
        }
    }
    acc
}
