//! Checks that an explicit map induces a given Picard-lattice matrix.
//!
//! With `M` the pushforward and `P = M⁻¹` the pullback, every column of `P`
//! is a geometric statement about the map: `P·f1` is the class of
//! `{A = const}` and `P·ex` the class of the curve sent onto the point `x`.
//! [`lattice_facts`] turns the columns into [`Fact`]s and [`check_fact`]
//! decides each one on the map.

use crate::picard::{Basis, DivisorClass};
use crate::weyl::PicAut;

use super::bideg::{bidegree, contracts, Curve};
use super::plane::PlaneMap;
use super::point::{ProjPoint, QuadricPoint};
use super::BidegMap;

/// A checkable statement about a map; point indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Fact {
    /// The output pair of the given factor (0: A, 1: B) has this bidegree.
    Bidegree(usize, (i64, i64)),
    /// Exactly these blown-up points are base points.
    BasePoints(Vec<usize>),
    /// Point `from` is a regular point mapped to point `to`.
    Image(usize, usize),
    /// The fibre of ruling 1 or 2 through point `through` is contracted onto `onto`.
    ContractsFiber { ruling: u8, through: usize, onto: usize },
    /// The (1,1)-curve through three points is contracted onto `onto`.
    ContractsCurve11 { through: [usize; 3], onto: usize },
    /// Plane maps: the degree of the components.
    Degree(i64),
    /// Plane maps: the line through two points is contracted onto `onto`.
    ContractsLine { through: [usize; 2], onto: usize },
}

fn pt_name(basis: Basis, i: usize) -> String {
    match basis {
        Basis::Quadric => format!("e{}", i + 1),
        Basis::Plane => format!("E{}", i + 1),
    }
}

impl Fact {
    pub fn render(&self, basis: Basis) -> String {
        let n = |i: usize| pt_name(basis, i);
        match self {
            Fact::Bidegree(k, (a, b)) => format!("{} has bidegree ({a},{b})", if *k == 0 { "A" } else { "B" }),
            Fact::BasePoints(v) => {
                let names: Vec<String> = v.iter().map(|&i| n(i)).collect();
                format!("base points {{{}}}", names.join(","))
            }
            Fact::Image(a, b) => format!("{} -> {}", n(*a), n(*b)),
            Fact::ContractsFiber { ruling, through, onto } => format!("f{ruling}({}) -> {}", n(*through), n(*onto)),
            Fact::ContractsCurve11 { through, onto } => {
                format!("c11({},{},{}) -> {}", n(through[0]), n(through[1]), n(through[2]), n(*onto))
            }
            Fact::Degree(k) => format!("degree {k}"),
            Fact::ContractsLine { through, onto } => format!("line({},{}) -> {}", n(through[0]), n(through[1]), n(*onto)),
        }
    }

    pub fn parse(s: &str, basis: Basis) -> Option<Fact> {
        let prefix = if basis == Basis::Quadric { 'e' } else { 'E' };
        let idx = |t: &str| -> Option<usize> {
            let k: usize = t.trim().strip_prefix(prefix)?.parse().ok()?;
            (1..=5).contains(&k).then_some(k - 1)
        };
        let list = |t: &str| -> Option<Vec<usize>> {
            let t = t.trim();
            if t.is_empty() {
                Some(vec![])
            } else {
                t.split(',').map(idx).collect()
            }
        };
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("base points {") {
            return Some(Fact::BasePoints(list(rest.strip_suffix('}')?)?));
        }
        if let Some(rest) = s.strip_prefix("degree ") {
            return Some(Fact::Degree(rest.trim().parse().ok()?));
        }
        for (k, p) in ["A has bidegree (", "B has bidegree ("].iter().enumerate() {
            if let Some(rest) = s.strip_prefix(p) {
                let (a, b) = rest.strip_suffix(')')?.split_once(',')?;
                return Some(Fact::Bidegree(k, (a.trim().parse().ok()?, b.trim().parse().ok()?)));
            }
        }
        let (lhs, rhs) = s.split_once("->")?;
        let onto = idx(rhs)?;
        let lhs = lhs.trim();
        let inner = |head: &str| lhs.strip_prefix(head).and_then(|r| r.strip_suffix(')')).and_then(list);
        if let Some(v) = inner("f1(").or_else(|| inner("f2(")) {
            let ruling = if lhs.starts_with("f1") { 1 } else { 2 };
            return (v.len() == 1).then(|| Fact::ContractsFiber { ruling, through: v[0], onto });
        }
        if let Some(v) = inner("c11(") {
            return (v.len() == 3).then(|| Fact::ContractsCurve11 { through: [v[0], v[1], v[2]], onto });
        }
        if let Some(v) = inner("line(") {
            return (v.len() == 2).then(|| Fact::ContractsLine { through: [v[0], v[1]], onto });
        }
        Some(Fact::Image(idx(lhs)?, onto))
    }
}

/// The lattice matrix of a biregular map permuting the blown-up points:
/// `e_i ↦ e_perm[i]`, with the rulings exchanged when `swap`.
pub fn moebius_lattice(swap: bool, perm: [usize; 4]) -> PicAut {
    let mut m = [[0i64; 6]; 6];
    if swap {
        m[1][0] = 1;
        m[0][1] = 1;
    } else {
        m[0][0] = 1;
        m[1][1] = 1;
    }
    for (i, &j) in perm.iter().enumerate() {
        m[j + 2][i + 2] = 1;
    }
    PicAut { basis: Basis::Quadric, m }
}

/// Where a map sends each blown-up point, if it permutes them regularly.
pub fn point_permutation(map: &BidegMap, pts: &[QuadricPoint; 4]) -> Option<[usize; 4]> {
    let mut perm = [0; 4];
    for (i, p) in pts.iter().enumerate() {
        let y = map.evaluate(p).ok()?;
        perm[i] = pts.iter().position(|q| *q == y)?;
    }
    Some(perm)
}

/// The lattice matrix of a Möbius pair read off its point permutation.
pub fn moebius_lattice_of(map: &BidegMap, pts: &[QuadricPoint; 4]) -> Option<PicAut> {
    let swap = match map.bidegrees() {
        ((1, 0), (0, 1)) => false,
        ((0, 1), (1, 0)) => true,
        _ => return None,
    };
    Some(moebius_lattice(swap, point_permutation(map, pts)?))
}

fn negative_support(c: &DivisorClass, first: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| c.coeffs[first + i] < 0).collect()
}

/// Reads the pullback columns of `lattice` as facts. Fails on a column of a
/// shape no fact describes.
pub fn lattice_facts(lattice: &PicAut) -> Result<Vec<Fact>, String> {
    let pull = lattice.inverse();
    let basis = lattice.basis;
    let col = |i| pull.apply(&DivisorClass::unit(basis, i));
    let mut out = Vec::new();
    let mut base = std::collections::BTreeSet::new();
    let (first, n) = match basis {
        Basis::Quadric => {
            for k in 0..2 {
                let c = col(k);
                out.push(Fact::Bidegree(k, (c.coeffs[0], c.coeffs[1])));
                base.extend(negative_support(&c, 2, 4));
            }
            (2, 4)
        }
        Basis::Plane => {
            let c = col(0);
            out.push(Fact::Degree(c.coeffs[0]));
            base.extend(negative_support(&c, 1, 5));
            (1, 5)
        }
    };
    out.push(Fact::BasePoints(base.into_iter().collect()));
    for x in 0..n {
        let c = col(x + first);
        let listed = negative_support(&c, first, n);
        let head: Vec<i64> = c.coeffs[..first].to_vec();
        let fact = match (basis, head.as_slice()) {
            (_, h) if h.iter().all(|&a| a == 0) => {
                (0..n).find(|&y| c == DivisorClass::unit(basis, y + first)).map(|y| Fact::Image(y, x))
            }
            (Basis::Quadric, [1, 0]) | (Basis::Quadric, [0, 1]) if listed.len() == 1 => {
                Some(Fact::ContractsFiber { ruling: if head[0] == 1 { 1 } else { 2 }, through: listed[0], onto: x })
            }
            (Basis::Quadric, [1, 1]) if listed.len() == 3 => {
                Some(Fact::ContractsCurve11 { through: [listed[0], listed[1], listed[2]], onto: x })
            }
            (Basis::Plane, [1]) if listed.len() == 2 => Some(Fact::ContractsLine { through: [listed[0], listed[1]], onto: x }),
            _ => None,
        };
        out.push(fact.ok_or_else(|| format!("pullback of {} is {c}, outside the checked shapes", pt_name(basis, x)))?);
    }
    out.sort();
    Ok(out)
}

/// A map of either model together with its blown-up points.
pub enum Model<'a> {
    Quadric(&'a BidegMap, &'a [QuadricPoint; 4]),
    Plane(&'a PlaneMap, &'a [ProjPoint; 5]),
}

pub fn check_fact(model: &Model<'_>, fact: &Fact) -> bool {
    match (model, fact) {
        (Model::Quadric(m, _), Fact::Bidegree(k, deg)) => {
            let c = if *k == 0 { &m.a } else { &m.b };
            let p = if c[0].is_zero() { &c[1] } else { &c[0] };
            let b = bidegree(p);
            (b.0 as i64, b.1 as i64) == *deg
        }
        (Model::Quadric(m, pts), Fact::BasePoints(v)) => {
            (0..4).filter(|&i| m.is_base_point(&pts[i])).collect::<Vec<_>>() == *v
        }
        (Model::Quadric(m, pts), Fact::Image(a, b)) => {
            m.evaluate(&pts[*a]).map(|y| y == pts[*b]).unwrap_or(false)
        }
        (Model::Quadric(m, pts), Fact::ContractsFiber { ruling, through, onto }) => {
            contracts(m, &Curve::fiber_through(&pts[*through], *ruling), &pts[*onto]).unwrap_or(false)
        }
        (Model::Quadric(m, pts), Fact::ContractsCurve11 { through, onto }) => {
            let three = through.map(|i| pts[i].clone());
            contracts(m, &Curve::Curve11(three), &pts[*onto]).unwrap_or(false)
        }
        (Model::Plane(m, _), Fact::Degree(k)) => m.degree() as i64 == *k,
        (Model::Plane(m, pts), Fact::BasePoints(v)) => {
            (0..5).filter(|&i| m.is_base_point(&pts[i])).collect::<Vec<_>>() == *v
        }
        (Model::Plane(m, pts), Fact::Image(a, b)) => m.evaluate(&pts[*a]).map(|y| y == pts[*b]).unwrap_or(false),
        (Model::Plane(m, pts), Fact::ContractsLine { through, onto }) => {
            m.contracts_line(&pts[through[0]], &pts[through[1]], &pts[*onto])
        }
        _ => false,
    }
}

/// Facts of `lattice` that fail on the map; empty means the map induces it.
pub fn certify(model: &Model<'_>, lattice: &PicAut) -> Vec<String> {
    let basis = lattice.basis;
    let want = match model {
        Model::Quadric(..) => Basis::Quadric,
        Model::Plane(..) => Basis::Plane,
    };
    if basis != want {
        return vec![format!("lattice matrix is in the {} basis", basis.name())];
    }
    match lattice_facts(lattice) {
        Err(e) => vec![e],
        Ok(facts) => facts.iter().filter(|f| !check_fact(model, f)).map(|f| format!("fails: {}", f.render(basis))).collect(),
    }
}
