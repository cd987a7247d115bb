//! Lattice automorphisms fixing K, the pair action on the five exceptional
//! pairs, and small permutation-group utilities.
//!
//! Matrices act on columns: the image of a class with coefficient vector `x`
//! is `M x`, and `(MN) x = M (N x)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::linalg::RatMat;
use crate::picard::{canonical_class, enumerate_minus_one, enumerate_roots, intersect, Basis, DivisorClass, ExceptionalPair};

pub type Mat6 = [[i64; 6]; 6];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("{0} is not a root (needs r² = −2 and r·K = 0)")]
    NotARoot(DivisorClass),
    #[error("element does not act trivially on the pairs")]
    NotInKernel,
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("matrix does not map exceptional pairs to exceptional pairs")]
    NotPairPreserving,
    #[error("cannot parse permutation {0:?}")]
    ParsePerm(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RejectReason {
    NonIntegral,
    NotIsometry,
    MovesK,
    NotPermutingExceptional,
}

impl RejectReason {
    pub fn name(self) -> &'static str {
        match self {
            RejectReason::NonIntegral => "NonIntegral",
            RejectReason::NotIsometry => "NotIsometry",
            RejectReason::MovesK => "MovesK",
            RejectReason::NotPermutingExceptional => "NotPermutingExceptional",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PicAut {
    pub basis: Basis,
    pub m: Mat6,
}

pub fn mat_mul(a: &Mat6, b: &Mat6) -> Mat6 {
    let mut c = [[0i64; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            c[i][j] = (0..6).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn transpose(a: &Mat6) -> Mat6 {
    let mut t = [[0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            t[j][i] = a[i][j];
        }
    }
    t
}

pub fn identity6() -> Mat6 {
    let mut m = [[0; 6]; 6];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

impl PicAut {
    pub fn identity(basis: Basis) -> Self {
        PicAut { basis, m: identity6() }
    }

    /// `self ∘ other`.
    pub fn mul(&self, o: &PicAut) -> PicAut {
        assert_eq!(self.basis, o.basis);
        PicAut { basis: self.basis, m: mat_mul(&self.m, &o.m) }
    }

    /// Both Gram matrices are their own inverse, so M⁻¹ = G Mᵀ G.
    pub fn inverse(&self) -> PicAut {
        let g = self.basis.gram();
        PicAut { basis: self.basis, m: mat_mul(&mat_mul(&g, &transpose(&self.m)), &g) }
    }

    pub fn apply(&self, c: &DivisorClass) -> DivisorClass {
        assert_eq!(self.basis, c.basis);
        let mut out = [0i64; 6];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..6).map(|j| self.m[i][j] * c.coeffs[j]).sum();
        }
        DivisorClass::new(self.basis, out)
    }

    pub fn is_identity(&self) -> bool {
        self.m == identity6()
    }

    pub fn order(&self) -> usize {
        let mut x = *self;
        let mut n = 1;
        while !x.is_identity() {
            x = x.mul(self);
            n += 1;
        }
        n
    }

    /// Conjugates into another basis via the picard change of basis.
    pub fn to_basis(&self, to: Basis) -> PicAut {
        let t = crate::picard::change_matrix(self.basis, to);
        let ti = crate::picard::change_matrix(to, self.basis);
        PicAut { basis: to, m: mat_mul(&mat_mul(&t, &self.m), &ti) }
    }

    pub fn to_rat(&self) -> RatMat {
        self.m.iter().map(|r| r.iter().map(|&x| crate::numfield::rat_int(x)).collect()).collect()
    }

    pub fn rows_text(&self) -> Vec<String> {
        self.m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect()
    }
}

/// Full verdict: integral, form-preserving, K-fixing, permuting the 16 lines.
pub fn check_lattice_automorphism(m: &RatMat, basis: Basis) -> Result<PicAut, RejectReason> {
    let mut im = [[0i64; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let x = &m[i][j];
            if !x.denom().is_one() {
                return Err(RejectReason::NonIntegral);
            }
            im[i][j] = x.numer().to_i64().ok_or(RejectReason::NonIntegral)?;
        }
    }
    let g = basis.gram();
    if mat_mul(&mat_mul(&transpose(&im), &g), &im) != g {
        return Err(RejectReason::NotIsometry);
    }
    let a = PicAut { basis, m: im };
    let k = canonical_class(basis);
    if a.apply(&k) != k {
        return Err(RejectReason::MovesK);
    }
    let lines = line_set(basis);
    let image: BTreeSet<DivisorClass> = lines.iter().map(|l| a.apply(l)).collect();
    if image != *lines {
        return Err(RejectReason::NotPermutingExceptional);
    }
    Ok(a)
}

fn line_set(basis: Basis) -> &'static BTreeSet<DivisorClass> {
    static Q: OnceLock<BTreeSet<DivisorClass>> = OnceLock::new();
    static P: OnceLock<BTreeSet<DivisorClass>> = OnceLock::new();
    let cell = if basis == Basis::Quadric { &Q } else { &P };
    cell.get_or_init(|| enumerate_minus_one(basis).into_iter().collect())
}

pub fn is_lattice_automorphism(m: &RatMat, basis: Basis) -> bool {
    check_lattice_automorphism(m, basis).is_ok()
}

/// s_r(x) = x + (x·r) r.
pub fn reflection(r: &DivisorClass) -> Result<PicAut, WeylError> {
    let b = r.basis;
    if r.square() != -2 || intersect(r, &canonical_class(b)).unwrap() != 0 {
        return Err(WeylError::NotARoot(*r));
    }
    let mut m = [[0i64; 6]; 6];
    for j in 0..6 {
        let e = DivisorClass::unit(b, j);
        let img = e.add(&r.scale(intersect(&e, r).unwrap()));
        for i in 0..6 {
            m[i][j] = img.coeffs[i];
        }
    }
    Ok(PicAut { basis: b, m })
}

/// A permutation of the five pairs: `self.0[i]` is the image of pair i
/// (0-based). Composition is left action: `(g∘h)(i) = g(h(i))`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub [u8; 5]);

impl Perm {
    pub const ID: Perm = Perm([0, 1, 2, 3, 4]);

    pub fn compose(&self, h: &Perm) -> Perm {
        Perm(h.0.map(|x| self.0[x as usize]))
    }

    pub fn inverse(&self) -> Perm {
        let mut out = [0u8; 5];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Perm::ID
    }

    pub fn order(&self) -> usize {
        let mut x = *self;
        let mut n = 1;
        while !x.is_identity() {
            x = x.compose(self);
            n += 1;
        }
        n
    }

    /// Cycle notation with 1-based labels, e.g. `(13245)` or `(12)(45)`;
    /// `id` for the identity.
    pub fn parse(s: &str) -> Result<Perm, WeylError> {
        let err = || WeylError::ParsePerm(s.to_string());
        let t = s.trim();
        let mut p = Perm::ID;
        if t == "id" || t.is_empty() {
            return Ok(p);
        }
        let mut seen = [false; 5];
        for cyc in t.split_inclusive(')') {
            let body = cyc.strip_prefix('(').and_then(|c| c.strip_suffix(')')).ok_or_else(err)?;
            let pts: Vec<usize> = body
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).filter(|d| (1..=5).contains(d)).ok_or_else(err))
                .collect::<Result<_, _>>()?;
            if pts.len() < 2 {
                return Err(err());
            }
            for (k, &x) in pts.iter().enumerate() {
                if seen[x - 1] {
                    return Err(err());
                }
                seen[x - 1] = true;
                p.0[x - 1] = (pts[(k + 1) % pts.len()] - 1) as u8;
            }
        }
        Ok(p)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 5];
        let mut out = String::new();
        for i in 0..5 {
            if seen[i] || self.0[i] as usize == i {
                continue;
            }
            out.push('(');
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                out.push_str(&(j + 1).to_string());
                j = self.0[j] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("id");
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Five bits, bit i (value `1 << i`) for pair i.
pub type Bits5 = u8;

pub fn format_bits(b: Bits5) -> String {
    (0..5).map(|i| if b >> i & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn parse_bits(s: &str) -> Option<Bits5> {
    if s.len() != 5 {
        return None;
    }
    s.chars().enumerate().try_fold(0u8, |acc, (i, c)| match c {
        '0' => Some(acc),
        '1' => Some(acc | 1 << i),
        _ => None,
    })
}

/// The induced action on ordered pairs; `swaps` bit i records that pair i
/// lands on its image pair with members exchanged.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PairAction {
    pub perm: Perm,
    pub swaps: Bits5,
}

impl PairAction {
    pub fn compose(&self, h: &PairAction) -> PairAction {
        let mut s = 0u8;
        for i in 0..5 {
            let bit = (h.swaps >> i & 1) ^ (self.swaps >> h.perm.0[i] & 1);
            s |= bit << i;
        }
        PairAction { perm: self.perm.compose(&h.perm), swaps: s }
    }
}

impl fmt::Display for PairAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.perm, format_bits(self.swaps))
    }
}

pub fn pair_action(m: &PicAut, pairs: &[ExceptionalPair]) -> Result<PairAction, WeylError> {
    let mut perm = [0u8; 5];
    let mut swaps = 0u8;
    for (i, p) in pairs.iter().enumerate() {
        let img = m.apply(&p.members[0]);
        let (j, s) = pairs
            .iter()
            .enumerate()
            .find_map(|(j, q)| q.members.iter().position(|x| *x == img).map(|s| (j, s)))
            .ok_or(WeylError::NotPairPreserving)?;
        if m.apply(&p.members[1]) != pairs[j].members[1 - s] {
            return Err(WeylError::NotPairPreserving);
        }
        perm[i] = j as u8;
        swaps |= (s as u8) << i;
    }
    Ok(PairAction { perm: Perm(perm), swaps })
}

pub fn kernel_signature(m: &PicAut, pairs: &[ExceptionalPair]) -> Result<Bits5, WeylError> {
    let a = pair_action(m, pairs)?;
    if a.perm.is_identity() {
        Ok(a.swaps)
    } else {
        Err(WeylError::NotInKernel)
    }
}

/// A finite group of lattice automorphisms in canonical (sorted) order.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub basis: Basis,
    pub elements: Vec<PicAut>,
    index: HashMap<Mat6, usize>,
}

impl WeylGroup {
    pub fn from_elements(basis: Basis, mut elements: Vec<PicAut>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().enumerate().map(|(i, e)| (e.m, i)).collect();
        WeylGroup { basis, elements, index }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &PicAut) -> bool {
        self.index.contains_key(&g.m)
    }

    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| self.contains(&a.mul(b))))
    }
}

/// Breadth-first closure of `gens` under left multiplication.
pub fn closure(basis: Basis, gens: &[PicAut]) -> WeylGroup {
    let id = PicAut::identity(basis);
    let mut seen: HashMap<Mat6, ()> = HashMap::from([(id.m, ())]);
    let mut out = vec![id];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.mul(&x);
            if seen.insert(y.m, ()).is_none() {
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    WeylGroup::from_elements(basis, out)
}

pub fn root_reflections(basis: Basis) -> Vec<PicAut> {
    enumerate_roots(basis).iter().map(|r| reflection(r).expect("enumerated roots")).collect()
}

/// The group generated by all 40 root reflections.
pub fn generate_weyl(basis: Basis) -> WeylGroup {
    closure(basis, &root_reflections(basis))
}

/// Shared cached copy of `generate_weyl`.
pub fn weyl_group(basis: Basis) -> &'static WeylGroup {
    static Q: OnceLock<WeylGroup> = OnceLock::new();
    static P: OnceLock<WeylGroup> = OnceLock::new();
    match basis {
        Basis::Quadric => Q.get_or_init(|| generate_weyl(basis)),
        Basis::Plane => P.get_or_init(|| generate_weyl(basis)),
    }
}

pub fn centralizer(g: &PicAut, group: &WeylGroup) -> Result<WeylGroup, WeylError> {
    if !group.contains(g) {
        return Err(WeylError::NotAMember);
    }
    let els = group.elements.iter().filter(|h| h.mul(g) == g.mul(h)).copied().collect();
    Ok(WeylGroup::from_elements(group.basis, els))
}

/// For each transposition of pairs, a root reflection acting as that
/// transposition with no member swaps.
pub fn transposition_lifts(basis: Basis, pairs: &[ExceptionalPair]) -> BTreeMap<Perm, PicAut> {
    let mut out = BTreeMap::new();
    for s in root_reflections(basis) {
        let a = pair_action(&s, pairs).expect("reflections preserve pairs");
        if a.swaps == 0 && a.perm.order() == 2 && a.perm.0.iter().enumerate().filter(|(i, x)| *i != **x as usize).count() == 2 {
            out.entry(a.perm).or_insert(s);
        }
    }
    out
}

/// Closure of `gens` in Sym₅, sorted.
pub fn perm_closure(gens: &[Perm]) -> Vec<Perm> {
    let mut set = BTreeSet::from([Perm::ID]);
    let mut queue = VecDeque::from([Perm::ID]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set.into_iter().collect()
}

/// Span over F₂ of 5-bit vectors, sorted.
pub fn span_bits(gens: &[Bits5]) -> Vec<Bits5> {
    let mut set = BTreeSet::from([0u8]);
    for g in gens {
        let add: Vec<u8> = set.iter().map(|x| x ^ g).collect();
        set.extend(add);
    }
    set.into_iter().collect()
}

/// Isomorphism types occurring among subgroups of Sym₅ in this problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupName {
    Trivial,
    Z2,
    Z3,
    Z4,
    Z5,
    Klein4,
    Sym3,
    D4,
    D5,
    D6,
    Sym5,
    Other(usize),
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Trivial => f.write_str("trivial"),
            GroupName::Other(n) => write!(f, "other({n})"),
            g => write!(f, "{g:?}"),
        }
    }
}

/// Identification by order and element-order multiset, which separates
/// every subgroup type of Sym₅ listed in `GroupName`.
pub fn identify_small_group(elements: &[Perm]) -> GroupName {
    let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
    for e in elements {
        *orders.entry(e.order()).or_default() += 1;
    }
    let count = |k: usize| orders.get(&k).copied().unwrap_or(0);
    match elements.len() {
        1 => GroupName::Trivial,
        2 => GroupName::Z2,
        3 => GroupName::Z3,
        4 if count(4) == 2 => GroupName::Z4,
        4 => GroupName::Klein4,
        5 => GroupName::Z5,
        6 if count(6) == 0 => GroupName::Sym3,
        8 if count(2) == 5 && count(4) == 2 => GroupName::D4,
        10 if count(2) == 5 && count(5) == 4 => GroupName::D5,
        12 if count(2) == 7 && count(6) == 2 => GroupName::D6,
        120 => GroupName::Sym5,
        n => GroupName::Other(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::exceptional_pairs;

    #[test]
    fn perm_text() {
        for s in ["id", "(13245)", "(12)(45)", "(2435)"] {
            assert_eq!(Perm::parse(s).unwrap().to_string(), s);
        }
        assert!(Perm::parse("(11)").is_err());
        assert!(Perm::parse("(16)").is_err());
        assert!(Perm::parse("(1)").is_err());
        assert_eq!(Perm::parse("(123)").unwrap().order(), 3);
    }

    #[test]
    fn reflection_examples() {
        let p = |s| DivisorClass::parse(s, Basis::Plane).unwrap();
        let s = reflection(&p("E1-E2")).unwrap();
        assert_eq!(s.apply(&p("E1")), p("E2"));
        assert_eq!(s.apply(&p("L")), p("L"));
        let q = reflection(&p("L-E1-E2-E3")).unwrap();
        assert!(q.mul(&q).is_identity());
        assert_eq!(q.apply(&p("E1")), p("L-E2-E3"));
        assert_eq!(reflection(&p("E1")), Err(WeylError::NotARoot(p("E1"))));
    }

    #[test]
    fn small_groups() {
        let g = |gens: &[&str]| {
            let ps: Vec<Perm> = gens.iter().map(|s| Perm::parse(s).unwrap()).collect();
            identify_small_group(&perm_closure(&ps))
        };
        assert_eq!(g(&["(13245)", "(12)(45)"]), GroupName::D5);
        assert_eq!(g(&["(23)(45)"]), GroupName::Z2);
        assert_eq!(g(&["(123)", "(12)", "(45)"]), GroupName::D6);
        assert_eq!(g(&["(123)", "(12)(45)"]), GroupName::Sym3);
        assert_eq!(g(&["(23)", "(2435)"]), GroupName::D4);
        assert_eq!(g(&["(23)", "(45)"]), GroupName::Klein4);
        assert_eq!(g(&["(12)", "(12345)"]), GroupName::Sym5);
        assert_eq!(g(&["(123)(45)"]), GroupName::Other(6));
        assert_eq!(g(&[]), GroupName::Trivial);
    }

    #[test]
    fn kernel_signatures_and_section() {
        let pairs = exceptional_pairs(Basis::Plane);
        assert_eq!(kernel_signature(&PicAut::identity(Basis::Plane), &pairs), Ok(0));
        let lifts = transposition_lifts(Basis::Plane, &pairs);
        assert_eq!(lifts.len(), 10);
        let s = reflection(&DivisorClass::parse("L-E1-E2-E3", Basis::Plane).unwrap()).unwrap();
        assert_eq!(kernel_signature(&s, &pairs), Err(WeylError::NotInKernel));
    }
}
