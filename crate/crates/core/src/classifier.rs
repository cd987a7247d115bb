//! Classification of a concrete real surface: A₀ and A′ by closed-form
//! parameter conditions, independently by verified witnesses, and a cross
//! check of the two.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::birmaps::builtins::{builtins, Builtin, Gate, LatticeSource};
use crate::birmaps::certify::{certify, moebius_lattice, Model};
use crate::birmaps::plane::{quadratic_involution, PlaneMap};
use crate::birmaps::point::{normal_points, validate_points, Params};
use crate::birmaps::solver::{solve_moebius_pair, Realness};
use crate::birmaps::{BidegMap, BirError, ProjPoint, QuadricPoint};
use crate::fixtures::{self, FixtureError};
use crate::linalg::RatMat;
use crate::numfield::{is_squarefree, validate_d, FieldElem, Predicate, Rat};
use crate::picard::{exceptional_pairs, Basis, DivisorClass};
use crate::realforms::{form_spec, kernel_bound, FormId, FormSpec};
use crate::weyl::{
    check_lattice_automorphism, format_bits, identify_small_group, pair_action, reflection, Bits5, GroupName,
    PairAction, Perm, PicAut,
};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}

impl From<BirError> for ClassifyError {
    fn from(e: BirError) -> Self {
        ClassifyError::InvalidParameters(e.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub form: FormId,
    pub d: i64,
    pub params: Params,
}

fn invalid(msg: impl Into<String>) -> ClassifyError {
    ClassifyError::InvalidParameters(msg.into())
}

impl Scenario {
    /// Validates the parameters against the form's normal-form domain.
    pub fn new(form: FormId, d: i64, params: Params) -> Result<Self, ClassifyError> {
        validate_d(d).map_err(|e| invalid(e.to_string()))?;
        let names: BTreeSet<&str> = params.keys().map(|s| s.as_str()).collect();
        let want: BTreeSet<&str> = form.param_names().iter().copied().collect();
        if names != want {
            return Err(invalid(format!("{form} takes parameters {:?}", form.param_names())));
        }
        if params.values().any(|v| v.d() != d) {
            return Err(invalid("parameters must lie in the scenario field"));
        }
        let p = |n: &str| &params[n];
        let c = |k: i64| FieldElem::int(d, k);
        match form {
            FormId::Q31_02 | FormId::Q31_21 => {
                let mu = p("mu");
                if [c(0), c(1), c(-1)].contains(mu) {
                    return Err(invalid("mu must differ from 0 and ±1"));
                }
            }
            FormId::Q31_40 => {
                if p("lambda").is_real() {
                    return Err(invalid("lambda must not be real"));
                }
            }
            FormId::Q22_02 => {
                if d != -1 {
                    return Err(invalid("q22-02 requires field_d = -1"));
                }
                let (k1, k2) = (p("k1"), p("k2"));
                let unit = |k: &FieldElem| k.is_rational() && *k.re_part() > Rat::from_integer(0.into()) && *k.re_part() < Rat::from_integer(1.into());
                if !unit(k1) || !unit(k2) || k1 == k2 {
                    return Err(invalid("k1, k2 must be distinct rationals in ]0,1["));
                }
            }
            FormId::Q22_40 => {
                for n in ["mu1", "mu2"] {
                    let m = p(n);
                    if !m.is_real() || *m == c(0) || *m == c(1) {
                        return Err(invalid(format!("{n} must be real and differ from 0 and 1")));
                    }
                }
            }
        }
        let s = Scenario { form, d, params };
        let pts = normal_points(form, d, &s.params)?;
        let bad = validate_points(form, &pts);
        if !bad.is_empty() {
            let names: Vec<String> = bad.iter().map(|v| v.to_string()).collect();
            return Err(invalid(format!("points not in general position: {}", names.join(", "))));
        }
        Ok(s)
    }

    /// Parameters given as `name=value` texts in the numfield grammar.
    pub fn parse(form: FormId, d: i64, params: &[(String, String)]) -> Result<Self, ClassifyError> {
        validate_d(d).map_err(|e| invalid(e.to_string()))?;
        let mut out = Params::new();
        for (k, v) in params {
            let x = FieldElem::parse(v, d).map_err(|e| invalid(format!("{k}: {e}")))?;
            if out.insert(k.clone(), x).is_some() {
                return Err(invalid(format!("parameter {k} given twice")));
            }
        }
        Scenario::new(form, d, out)
    }

    pub fn points(&self) -> [QuadricPoint; 4] {
        normal_points(self.form, self.d, &self.params).expect("validated scenario")
    }

    fn args(&self) -> Vec<FieldElem> {
        self.form.param_names().iter().map(|n| self.params[*n].clone()).collect()
    }

    pub fn holds(&self, p: Predicate) -> bool {
        p.eval(&self.args()).expect("validated scenario")
    }

    pub fn params_text(&self) -> BTreeMap<String, String> {
        self.params.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
    }

    pub fn label(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{} d={} {}", self.form, self.d, ps.join(" "))
    }
}

/// The fixed sample scenarios, one per branch of the classification.
pub fn sample_scenarios() -> Vec<Scenario> {
    let s = |form, d, ps: &[(&str, &str)]| {
        let ps: Vec<(String, String)> = ps.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        Scenario::parse(form, d, &ps).expect("sample scenario is valid")
    };
    use FormId::*;
    vec![
        s(Q31_02, -1, &[("mu", "3/5+4/5*w")]),
        s(Q31_02, -1, &[("mu", "2+w")]),
        s(Q31_21, -1, &[("mu", "2")]),
        s(Q31_21, -1, &[("mu", "1+w")]),
        s(Q31_40, -3, &[("lambda", "1/2+1/2*w")]),
        s(Q31_40, -7, &[("lambda", "1/2+1/2*w")]),
        s(Q22_02, -1, &[("k1", "1/2"), ("k2", "4/5")]),
        s(Q22_02, -1, &[("k1", "1/2"), ("k2", "1/3")]),
        s(Q22_40, 5, &[("mu1", "1/2-1/2*w"), ("mu2", "3/2-1/2*w")]),
        s(Q22_40, 5, &[("mu1", "1/2+1/2*w"), ("mu2", "3/2+1/2*w")]),
        s(Q22_40, -1, &[("mu1", "3"), ("mu2", "3/2")]),
        s(Q22_40, -1, &[("mu1", "2"), ("mu2", "3")]),
        s(Q22_40, -1, &[("mu1", "1/3"), ("mu2", "2/3")]),
    ]
}

/// What backs one element of the reported groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Builtin tag, `moebius/<swap>/<images>` for solver solutions, or
    /// `plane/<base>/<exchanged>` for the plane involutions.
    pub name: String,
    pub action: PairAction,
    /// The map in coordinates.
    pub map: String,
    /// The condition under which this witness exists, if any.
    pub locus: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Classification {
    /// Elements of A₀ as swap signatures, sorted.
    pub a0: Vec<Bits5>,
    pub a0_gens: Vec<Bits5>,
    /// Elements of A′, sorted.
    pub aprime: Vec<Perm>,
    pub aprime_gens: Vec<Perm>,
    pub aprime_name: GroupName,
    pub witnesses: Vec<Witness>,
    /// Table branch taken by the conditions, if that mode produced this.
    pub branch: Option<String>,
}

fn perms(gens: &[&str]) -> Vec<Perm> {
    gens.iter().map(|s| Perm::parse(s).expect("static permutation")).collect()
}

/// Greedy generating set: keep an element when it enlarges the span.
fn bit_generators(all: &[Bits5]) -> Vec<Bits5> {
    let mut gens = Vec::new();
    let mut span = vec![0u8];
    for &x in all {
        if !span.contains(&x) {
            gens.push(x);
            span = crate::weyl::span_bits(&gens);
        }
    }
    gens
}

fn classification(a0: Vec<Bits5>, aprime_gens: Vec<Perm>, witnesses: Vec<Witness>, branch: Option<String>) -> Classification {
    let aprime = crate::weyl::perm_closure(&aprime_gens);
    Classification {
        a0_gens: bit_generators(&a0),
        a0,
        aprime_name: identify_small_group(&aprime),
        aprime,
        aprime_gens,
        witnesses,
        branch,
    }
}

/// A′ from the exact parameter conditions; A₀ is the lattice bound.
pub fn classify_by_conditions(s: &Scenario) -> Classification {
    use FormId::*;
    let (branch, gens): (&str, &[&str]) = match s.form {
        Q31_02 if s.holds(Predicate::UnitNorm) => ("|mu| = 1", &["(23)(45)"]),
        Q31_02 => ("|mu| != 1", &[]),
        Q31_21 if s.holds(Predicate::IsReal) => ("mu real", &["(23)(45)"]),
        Q31_21 => ("mu not real", &[]),
        Q31_40 if s.holds(Predicate::Omega6) => ("lambda^2 - lambda + 1 = 0", &["(123)", "(12)(45)"]),
        Q31_40 if s.holds(Predicate::Trace1) => ("lambda + conj lambda = 1", &["(12)(45)"]),
        Q31_40 => ("generic lambda", &[]),
        Q22_02 if s.holds(Predicate::KCond) => ("k1^2 k2 - 2 k1 + k2 = 0", &["(12)(45)"]),
        Q22_02 => ("generic k", &[]),
        Q22_40 if s.holds(Predicate::Golden) => ("golden pair", &["(13245)", "(12)(45)"]),
        Q22_40 if s.holds(Predicate::MuCond) => ("mu1 + mu2 - mu1 mu2 = 0", &["(12)(45)"]),
        Q22_40 => ("generic mu", &[]),
    };
    let spec = form_spec(s.form);
    classification(kernel_bound(&spec), perms(gens), Vec::new(), Some(branch.to_string()))
}

fn commutes(a: &PicAut, b: &PicAut) -> bool {
    a.mul(b) == b.mul(a)
}

fn all_perms4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p.contains(&i)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn lattice_of(b: &Builtin, map: &BidegMap, pts: &[QuadricPoint; 4]) -> Result<Option<PicAut>, ClassifyError> {
    Ok(match b.lattice {
        LatticeSource::Fixture(tag) => {
            let rec = fixtures::matrix(tag)?;
            check_lattice_automorphism(&rec.rows, rec.basis).ok()
        }
        LatticeSource::Inline(m) => Some(PicAut { basis: Basis::Quadric, m }),
        LatticeSource::PointPermutation => crate::birmaps::certify::moebius_lattice_of(map, pts),
    })
}

/// A predicate with its defining condition.
pub fn locus(p: Predicate) -> String {
    let f = match p {
        Predicate::UnitNorm => "|mu| = 1",
        Predicate::IsReal => "mu real",
        Predicate::Trace2 => "mu + conj mu = 2",
        Predicate::Omega6 => "lambda^2 - lambda + 1 = 0",
        Predicate::Trace1 => "lambda + conj lambda = 1",
        Predicate::KCond => "k1^2 k2 - 2 k1 + k2 = 0",
        Predicate::MuCond => "mu1 + mu2 - mu1 mu2 = 0",
        Predicate::Golden => "(mu1, mu2) = ((1±w)/2, (3±w)/2), w^2 = 5",
        Predicate::Sum1 => "mu1 + mu2 = 1",
    };
    format!("{} ({f})", p.name())
}

fn gate_text(b: &Builtin) -> Option<String> {
    match b.gate {
        Gate::Always => None,
        Gate::Holds(p) => Some(locus(p)),
        Gate::GoldenSign(_) => Some(locus(Predicate::Golden)),
    }
}

/// A builtin at a scenario: its lattice matrix once the map is certified,
/// or the reasons it fails.
pub fn verify_builtin(b: &Builtin, s: &Scenario) -> Result<Result<(BidegMap, PicAut), Vec<String>>, ClassifyError> {
    let pts = s.points();
    let map = b.build(s.d, &s.params)?;
    let Some(lat) = lattice_of(b, &map, &pts)? else {
        return Ok(Err(vec!["no lattice matrix".into()]));
    };
    let mut fail = certify(&Model::Quadric(&map, &pts), &lat);
    if !map.commutes_with_real_structure(s.form) {
        fail.push("does not commute with the real structure".into());
    }
    if map.order(b.order) != Some(b.order) {
        fail.push(format!("order is not {}", b.order));
    }
    let base: Vec<usize> = (0..4).filter(|&i| map.is_base_point(&pts[i])).collect();
    if base != b.base_points {
        fail.push(format!("base points {base:?}, advertised {:?}", b.base_points));
    }
    Ok(if fail.is_empty() { Ok((map, lat)) } else { Err(fail) })
}

/// The plane model of q22-40: `p1 p2 p3`, `[1:1:1]`, `[mu1:mu2:mu1 mu2]`.
pub fn plane_points(s: &Scenario) -> [ProjPoint; 5] {
    let d = s.d;
    let (m1, m2) = (s.params["mu1"].clone(), s.params["mu2"].clone());
    [
        ProjPoint::ints(d, &[1, 0, 0]),
        ProjPoint::ints(d, &[0, 1, 0]),
        ProjPoint::ints(d, &[0, 0, 1]),
        ProjPoint::ints(d, &[1, 1, 1]),
        ProjPoint(vec![m1.clone(), m2.clone(), &m1 * &m2]),
    ]
}

/// Lattice matrix of the quadratic involution with base points `base`
/// exchanging `pair`, in the plane basis.
pub fn plane_involution_lattice(base: [usize; 3], pair: [usize; 2]) -> PicAut {
    let mut r = [0i64; 6];
    r[0] = 1;
    for i in base {
        r[i + 1] = -1;
    }
    let s = reflection(&DivisorClass::new(Basis::Plane, r)).expect("L-Ei-Ej-Ek is a root");
    let mut t = crate::weyl::identity6();
    let (a, b) = (pair[0] + 1, pair[1] + 1);
    t[a][a] = 0;
    t[b][b] = 0;
    t[a][b] = 1;
    t[b][a] = 1;
    PicAut { basis: Basis::Plane, m: t }.mul(&s)
}

fn plane_involutions(s: &Scenario) -> Vec<(String, PlaneMap, PicAut)> {
    let pts = plane_points(s);
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let rest: Vec<usize> = (0..5).filter(|&k| k != i && k != j).collect();
            let base = [rest[0], rest[1], rest[2]];
            let Ok(map) = quadratic_involution(base.map(|k| &pts[k]), [&pts[i], &pts[j]]) else {
                continue;
            };
            let lat = plane_involution_lattice(base, [i, j]);
            let real = map.equals_as_rational_map(&map.conjugate_by_real_structure());
            if real && certify(&Model::Plane(&map, &pts), &lat).is_empty() && map.order(2) == Some(2) {
                out.push((format!("plane/E{}E{}E{}/E{}E{}", base[0] + 1, base[1] + 1, base[2] + 1, i + 1, j + 1), map, lat));
            }
        }
    }
    out
}

/// Real Möbius pairs permuting the blown-up points, one per solvable
/// point permutation whose lattice matrix commutes with σ.
fn moebius_witnesses(s: &Scenario, spec: &FormSpec) -> Vec<(String, BidegMap, PicAut)> {
    let pts = s.points();
    let realness = if s.form.swaps_factors() { Realness::BEqualsConjA } else { Realness::BothReal };
    let mut out = Vec::new();
    for swap in [false, true] {
        for perm in all_perms4() {
            let lat = moebius_lattice(swap, perm);
            if !commutes(&lat, &spec.sigma) {
                continue;
            }
            let cons: Vec<(QuadricPoint, QuadricPoint)> = (0..4).map(|i| (pts[i].clone(), pts[perm[i]].clone())).collect();
            let Ok(sol) = solve_moebius_pair(&cons, swap, realness, s.d) else {
                continue;
            };
            let map = sol.to_map(s.d);
            if certify(&Model::Quadric(&map, &pts), &lat).is_empty() && map.commutes_with_real_structure(s.form) {
                let img: String = perm.iter().map(|k| (k + 1).to_string()).collect();
                out.push((format!("moebius/{}/{img}", if swap { "swap" } else { "keep" }), map, lat));
            }
        }
    }
    out
}

/// Closure of pair actions under composition.
fn action_closure(gens: &[PairAction]) -> BTreeSet<PairAction> {
    let id = PairAction { perm: Perm::ID, swaps: 0 };
    let mut set = BTreeSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// A₀ and A′ generated by verified witnesses.
pub fn classify_by_witnesses(s: &Scenario) -> Result<Classification, ClassifyError> {
    let spec = form_spec(s.form);
    let mut witnesses = Vec::new();
    let mut push = |name: String, map: String, lat: &PicAut, locus: Option<String>| {
        let q = lat.to_basis(Basis::Quadric);
        let action = pair_action(&q, &spec.pairs).expect("lattice automorphisms preserve pairs");
        witnesses.push(Witness { name, action, map, locus });
    };
    for b in builtins().iter().filter(|b| b.form == s.form) {
        if !b.gate_holds(s.d, &s.params)? {
            continue;
        }
        if let Ok((map, lat)) = verify_builtin(b, s)? {
            push(b.tag(), map.to_string(), &lat, gate_text(b));
        }
    }
    for (name, map, lat) in moebius_witnesses(s, &spec) {
        push(name, map.to_string(), &lat, None);
    }
    if s.form == FormId::Q22_40 {
        let plane_pairs = exceptional_pairs(Basis::Plane);
        for (name, map, lat) in plane_involutions(s) {
            debug_assert!(pair_action(&lat, &plane_pairs).is_ok());
            push(name, map.to_string(), &lat, None);
        }
    }
    let group = action_closure(&witnesses.iter().map(|w| w.action).collect::<Vec<_>>());
    let a0: Vec<Bits5> = group.iter().filter(|a| a.perm.is_identity()).map(|a| a.swaps).collect();
    let mut gens: Vec<Perm> = Vec::new();
    let mut seen = vec![Perm::ID];
    for w in &witnesses {
        if !seen.contains(&w.action.perm) {
            gens.push(w.action.perm);
            seen = crate::weyl::perm_closure(&gens);
        }
    }
    let mut a0s = a0;
    a0s.sort();
    Ok(classification(a0s, gens, witnesses, None))
}

#[derive(Debug, Clone)]
pub struct CrossCheck {
    pub conditions: Classification,
    pub witnesses: Classification,
    pub flags: Vec<String>,
}

fn perm_list(ps: &[Perm]) -> String {
    let v: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    format!("<{}>", v.join(","))
}

/// Both classifications; any disagreement becomes one DISCREPANCY flag.
pub fn cross_check(s: &Scenario) -> Result<CrossCheck, ClassifyError> {
    let c = classify_by_conditions(s);
    let w = classify_by_witnesses(s)?;
    let mut flags = Vec::new();
    if c.aprime != w.aprime || c.a0 != w.a0 {
        let extra: Vec<String> = w
            .witnesses
            .iter()
            .filter(|x| !c.aprime.contains(&x.action.perm))
            .filter_map(|x| x.locus.as_ref().map(|l| format!("{} of type {} on the locus {l}", x.name, x.action.perm)))
            .collect();
        let cause = if extra.is_empty() { String::new() } else { format!("; extra witness {}", extra.join(", ")) };
        flags.push(format!(
            "DISCREPANCY: conditions give A'={} {} with |A0|={}, witnesses give A'={} {} with |A0|={}{cause}",
            c.aprime_name,
            perm_list(&c.aprime_gens),
            c.a0.len(),
            w.aprime_name,
            perm_list(&w.aprime_gens),
            w.a0.len(),
        ));
    }
    Ok(CrossCheck { conditions: c, witnesses: w, flags })
}

/// Text of A₀ in Table 1 style, e.g. `(Z/2)^4`.
pub fn a0_text(a0: &[Bits5]) -> String {
    match a0.len().trailing_zeros() {
        0 => "trivial".into(),
        1 => "Z/2".into(),
        k => format!("(Z/2)^{k}"),
    }
}

pub fn a0_gens_text(gens: &[Bits5]) -> Vec<String> {
    gens.iter().map(|&g| format_bits(g)).collect()
}

/// One line of the reproduced table.
pub fn table_row(s: &Scenario, c: &Classification) -> String {
    let gens = if c.aprime_gens.is_empty() { String::new() } else { format!(" {}", perm_list(&c.aprime_gens)) };
    format!("{:<40} A0={}, A'={}{}", s.label(), a0_text(&c.a0), c.aprime_name, gens)
}

/// The pencil model of q31-02 as two quadrics in five variables.
#[derive(Debug, Clone)]
pub struct QuadricModel {
    pub m1: RatMat,
    pub m2: RatMat,
    /// Coefficients of `det(M1 + t·M2)`, increasing degree.
    pub pencil: Vec<Rat>,
    /// The binary quintic `det(s·M1 + t·M2)` is squarefree.
    pub smooth: bool,
}

fn rat_det(m: &RatMat) -> Rat {
    let d = -1;
    let fm: Vec<Vec<FieldElem>> = m.iter().map(|r| r.iter().map(|x| FieldElem::from_rat(d, x.clone())).collect()).collect();
    crate::linalg::det(&fm, d).re_part().clone()
}

/// Lagrange interpolation through `(k, ys[k])`, `k = 0..n`.
fn interpolate(ys: &[Rat]) -> Vec<Rat> {
    let n = ys.len();
    let zero = Rat::from_integer(0.into());
    let mut out = vec![zero.clone(); n];
    for (k, yk) in ys.iter().enumerate() {
        // basis polynomial ∏_{j≠k} (t - j)/(k - j)
        let mut basis = vec![Rat::from_integer(1.into())];
        let mut denom = Rat::from_integer(1.into());
        for j in 0..n {
            if j == k {
                continue;
            }
            let mut next = vec![zero.clone(); basis.len() + 1];
            for (i, c) in basis.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * Rat::from_integer((j as i64).into());
            }
            basis = next;
            denom *= Rat::from_integer((k as i64 - j as i64).into());
        }
        for (i, c) in basis.iter().enumerate() {
            out[i] += c * yk / &denom;
        }
    }
    while out.last().is_some_and(|c| *c == zero) {
        out.pop();
    }
    out
}

/// Gram matrices of the two quadrics; only `tr = mu + conj mu` and
/// `N = mu conj mu` enter.
pub fn emit_quadric_model(mu: &FieldElem) -> Result<QuadricModel, ClassifyError> {
    let mut ps = Params::new();
    ps.insert("mu".into(), mu.clone());
    Scenario::new(FormId::Q31_02, mu.d(), ps)?;
    let tr = (mu + &mu.cc()).re_part().clone();
    let n = (mu * &mu.cc()).re_part().clone();
    let one = Rat::from_integer(1.into());
    let z = Rat::from_integer(0.into());
    let mut m1 = vec![vec![z.clone(); 5]; 5];
    let mut m2 = m1.clone();
    m1[0][0] = &tr - &n;
    m1[0][1] = -one.clone();
    m1[1][0] = -one.clone();
    m1[1][1] = one.clone();
    m1[2][2] = &one - &tr + &n;
    m1[3][3] = one.clone();
    m2[0][0] = n.clone();
    m2[0][1] = -n.clone();
    m2[1][0] = -n.clone();
    m2[1][1] = &tr - &one;
    m2[3][3] = n.clone();
    m2[4][4] = &one - &tr + &n;
    let ys: Vec<Rat> = (0..6)
        .map(|k| {
            let t = Rat::from_integer(k.into());
            let m: RatMat = (0..5).map(|i| (0..5).map(|j| &m1[i][j] + &t * &m2[i][j]).collect()).collect();
            rat_det(&m)
        })
        .collect();
    let pencil = interpolate(&ys);
    let deg = pencil.len().saturating_sub(1);
    let smooth = deg >= 4 && is_squarefree(&pencil);
    if !smooth {
        return Err(invalid(format!("the pencil at mu={mu} is singular")));
    }
    Ok(QuadricModel { m1, m2, pencil, smooth })
}
