//! The fixture runner: every matrix and map fixture checked against its
//! stated properties, plus the lattice bounds, the solver feasibility
//! claims, the quadric model and the sample classifications per case.

use std::collections::BTreeMap;

use crate::birmaps::builtins::{builtins, PLANE_INVOLUTION};
use crate::birmaps::certify::{check_fact, lattice_facts, Fact, Model};
use crate::birmaps::plane::PlaneMap;
use crate::birmaps::point::Params;
use crate::birmaps::poly::Poly;
use crate::birmaps::solver::{solve_moebius_pair, Realness};
use crate::birmaps::{BidegMap, BirError, ProjPoint, QuadricPoint};
use crate::classifier::{cross_check, emit_quadric_model, sample_scenarios, verify_builtin, ClassifyError, Scenario};
use crate::fixtures::{self, Expect, Manifest, MapFile, MapRecord, MatrixRecord};
use crate::numfield::FieldElem;
use crate::picard::{exceptional_pairs, Basis};
use crate::realforms::{envelope_mismatch, form_spec, image_bound, kernel_bound, sigma_arrows, FormId};
use crate::weyl::{check_lattice_automorphism, format_bits, pair_action, PicAut, RejectReason};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub case: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct Verification {
    pub checks: Vec<Check>,
    /// Regenerated σ arrow tables, one per case run.
    pub sigma_tables: Vec<(FormId, Vec<String>)>,
    pub flags: Vec<String>,
    pub notes: Vec<String>,
}

impl Verification {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }
}

fn check(case: u8, name: impl Into<String>, result: Result<String, String>) -> Check {
    let (pass, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check { case, name: name.into(), pass, detail }
}

/// An integral record must be a lattice automorphism commuting with σ with
/// the stated pair action; a non-integral one must be rejected as such.
pub fn check_matrix(rec: &MatrixRecord) -> Result<String, String> {
    let res = check_lattice_automorphism(&rec.rows, rec.basis);
    match (rec.expect, res) {
        (Expect::NonIntegral, Err(RejectReason::NonIntegral)) => Ok("rejected: NonIntegral".into()),
        (Expect::NonIntegral, Err(r)) => Err(format!("rejected as {} instead of NonIntegral", r.name())),
        (Expect::NonIntegral, Ok(_)) => Err("accepted, expected NonIntegral".into()),
        (Expect::Automorphism, Err(r)) => Err(format!("rejected: {}", r.name())),
        (Expect::Automorphism, Ok(m)) => {
            let spec = form_spec(rec.form);
            let q = m.to_basis(Basis::Quadric);
            if q.mul(&spec.sigma) != spec.sigma.mul(&q) {
                return Err("does not commute with sigma".into());
            }
            // Plane records state their action on the plane's own pairs {L-Ei, -K-L+Ei}.
            let a = match rec.basis {
                Basis::Quadric => pair_action(&q, &spec.pairs),
                Basis::Plane => pair_action(&m, &exceptional_pairs(Basis::Plane)),
            }
            .map_err(|e| e.to_string())?;
            if a.perm != rec.perm {
                return Err(format!("acts as {}, stated {}", a.perm, rec.perm));
            }
            if let Some(s) = rec.swaps {
                if a.swaps != s {
                    return Err(format!("signature {}, stated {}", format_bits(a.swaps), format_bits(s)));
                }
            }
            Ok(format!("automorphism acting as {a}"))
        }
    }
}

fn rows_of(m: &PicAut) -> Vec<String> {
    m.rows_text()
}

fn parse_rows(rows: &[String]) -> Result<crate::linalg::RatMat, String> {
    rows.iter()
        .map(|l| l.split_whitespace().map(|t| t.parse().map_err(|_| format!("bad entry {t}"))).collect())
        .collect()
}

/// The five points of the plane fixture: `p1 p2 p3 [1:1:1] [a:b:c]`.
pub fn plane_fixture_points(d: i64, abc: &[FieldElem; 3]) -> [ProjPoint; 5] {
    [
        ProjPoint::ints(d, &[1, 0, 0]),
        ProjPoint::ints(d, &[0, 1, 0]),
        ProjPoint::ints(d, &[0, 0, 1]),
        ProjPoint::ints(d, &[1, 1, 1]),
        ProjPoint(abc.to_vec()),
    ]
}

fn plane_consts(params: &Params) -> Result<[FieldElem; 3], String> {
    let g = |n: &str| params.get(n).cloned().ok_or_else(|| format!("missing {n}"));
    Ok([g("a")?, g("b")?, g("c")?])
}

fn record_params(rec: &MapRecord) -> Result<Params, String> {
    rec.params
        .iter()
        .map(|(k, v)| FieldElem::parse(v, rec.d).map(|x| (k.clone(), x)).map_err(|e| format!("{k}: {e}")))
        .collect()
}

/// Rebuilds a map record and checks its manifest on the map, and the
/// manifest against the facts read off its lattice matrix.
pub fn check_map_record(rec: &MapRecord) -> Result<String, String> {
    let form = FormId::parse(&rec.form).ok_or("unknown form")?;
    let basis = Basis::from_name(&rec.basis).ok_or("unknown basis")?;
    let params = record_params(rec)?;
    let lattice = check_lattice_automorphism(&parse_rows(&rec.lattice)?, basis).map_err(|r| r.name().to_string())?;
    let stated: Vec<Fact> =
        rec.facts.iter().map(|f| Fact::parse(f, basis).ok_or_else(|| format!("unreadable fact {f}"))).collect::<Result<_, _>>()?;
    let mut from_lattice = lattice_facts(&lattice)?;
    from_lattice.sort();
    let mut sorted = stated.clone();
    sorted.sort();
    if sorted != from_lattice {
        return Err("manifest differs from the facts of the lattice matrix".into());
    }
    let tables: Vec<Poly> = rec
        .components
        .iter()
        .map(|t| Poly::from_table(t, rec.d).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let failed: Vec<String>;
    match basis {
        Basis::Quadric => {
            if tables.len() != 4 {
                return Err("need four components".into());
            }
            let map = BidegMap::new([tables[0].clone(), tables[1].clone()], [tables[2].clone(), tables[3].clone()])
                .map_err(|e| e.to_string())?;
            let s = Scenario::new(form, rec.d, params).map_err(|e| e.to_string())?;
            let pts = s.points();
            let model = Model::Quadric(&map, &pts);
            failed = stated.iter().filter(|f| !check_fact(&model, f)).map(|f| f.render(basis)).collect();
            if map.order(rec.order) != Some(rec.order) {
                return Err(format!("order is not {}", rec.order));
            }
            if rec.real != map.commutes_with_real_structure(form) {
                return Err("real-structure commutation differs from the manifest".into());
            }
        }
        Basis::Plane => {
            if tables.len() != 3 {
                return Err("need three components".into());
            }
            let map = PlaneMap::new([tables[0].clone(), tables[1].clone(), tables[2].clone()]).map_err(|e| e.to_string())?;
            let pts = plane_fixture_points(rec.d, &plane_consts(&params)?);
            let model = Model::Plane(&map, &pts);
            failed = stated.iter().filter(|f| !check_fact(&model, f)).map(|f| f.render(basis)).collect();
            if map.order(rec.order) != Some(rec.order) {
                return Err(format!("order is not {}", rec.order));
            }
            if rec.real != map.equals_as_rational_map(&map.conjugate_by_real_structure()) {
                return Err("real-structure commutation differs from the manifest".into());
            }
        }
    }
    if !failed.is_empty() {
        return Err(format!("fails: {}", failed.join("; ")));
    }
    Ok(format!("{} facts, order {}", stated.len(), rec.order))
}

const PLANE_SAMPLE: [i64; 3] = [2, 3, 5];

fn plane_map(d: i64, abc: &[FieldElem; 3]) -> Result<PlaneMap, BirError> {
    let consts = [("a", abc[0].clone()), ("b", abc[1].clone()), ("c", abc[2].clone())];
    PlaneMap::parse(PLANE_INVOLUTION, d, &consts)
}

/// The map fixtures: every builtin at every sample scenario where its gate
/// holds, and the plane involution at `(a, b, c) = (2, 3, 5)`.
pub fn build_map_records() -> Result<Vec<MapRecord>, ClassifyError> {
    let mut out = Vec::new();
    let samples = sample_scenarios();
    for b in builtins() {
        for (k, s) in samples.iter().filter(|s| s.form == b.form).enumerate() {
            if !b.gate_holds(s.d, &s.params)? {
                continue;
            }
            let (map, lat) = verify_builtin(&b, s)?
                .map_err(|e| ClassifyError::InvalidParameters(format!("{} does not verify: {}", b.tag(), e.join("; "))))?;
            let facts = lattice_facts(&lat).map_err(ClassifyError::InvalidParameters)?;
            out.push(MapRecord {
                tag: format!("{}@{}", b.tag(), k + 1),
                form: b.form.as_str().into(),
                basis: "quadric".into(),
                d: s.d,
                params: s.params_text(),
                facts: facts.iter().map(|f| f.render(Basis::Quadric)).collect(),
                order: b.order,
                real: true,
                lattice: rows_of(&lat),
                components: map.to_tables().to_vec(),
            });
        }
    }
    let d = -1;
    let abc = PLANE_SAMPLE.map(|x| FieldElem::int(d, x));
    let map = plane_map(d, &abc)?;
    let rec = fixtures::matrix("q22-40/lambda")?;
    let lat = check_lattice_automorphism(&rec.rows, Basis::Plane)
        .map_err(|r| ClassifyError::InvalidParameters(r.name().to_string()))?;
    let facts = lattice_facts(&lat).map_err(ClassifyError::InvalidParameters)?;
    let params: BTreeMap<String, String> =
        ["a", "b", "c"].iter().zip(PLANE_SAMPLE).map(|(k, v)| (k.to_string(), v.to_string())).collect();
    out.push(MapRecord {
        tag: "q22-40/lambda@plane".into(),
        form: "q22-40".into(),
        basis: "plane".into(),
        d,
        params,
        facts: facts.iter().map(|f| f.render(Basis::Plane)).collect(),
        order: 2,
        real: true,
        lattice: rows_of(&lat),
        components: map.c.iter().map(|p| p.to_table()).collect(),
    });
    Ok(out)
}

const MAPS_HEADER: &str = "# Builtin maps at the sample parameters. Generated by `cargo run -p dp4aut --example gen_fixtures`.\n\
# `facts` use 1-based point labels; `components` are coefficient tables `e0 e1 e2 e3 : coeff` with w = sqrt(d).\n\n";

pub fn render_map_fixtures() -> Result<String, ClassifyError> {
    let file = MapFile { map: build_map_records()? };
    let body = toml::to_string(&file).map_err(|e| ClassifyError::InvalidParameters(e.to_string()))?;
    Ok(format!("{MAPS_HEADER}{body}"))
}

pub fn render_manifest(m: &Manifest) -> String {
    format!("# Record counts; the loaders refuse files that disagree.\nmatrices = {}\nmaps = {}\n", m.matrices, m.maps)
}

/// The plane involution with a = 0 is not a valid witness: the fifth point
/// becomes a base point and the lattice facts fail.
fn degenerate_plane_check() -> Result<String, String> {
    let d = -1;
    let abc = [0, 1, 1].map(|x| FieldElem::int(d, x));
    let map = plane_map(d, &abc).map_err(|e| e.to_string())?;
    let pts = plane_fixture_points(d, &abc);
    let rec = fixtures::matrix("q22-40/lambda").map_err(|e| e.to_string())?;
    let lat = check_lattice_automorphism(&rec.rows, Basis::Plane).map_err(|r| r.name().to_string())?;
    let fails = crate::birmaps::certify::certify(&Model::Plane(&map, &pts), &lat);
    if map.is_base_point(&pts[4]) && !fails.is_empty() {
        Ok(format!("rejected ({} failing facts, E5 is a base point)", fails.len()))
    } else {
        Err("degenerate involution was accepted".into())
    }
}

/// Whether the Möbius system for a point permutation has a real solution.
pub fn moebius_feasible(s: &Scenario, swap: bool, perm: [usize; 4]) -> bool {
    let pts = s.points();
    let cons: Vec<(QuadricPoint, QuadricPoint)> = (0..4).map(|i| (pts[i].clone(), pts[perm[i]].clone())).collect();
    let realness = if s.form.swaps_factors() { Realness::BEqualsConjA } else { Realness::BothReal };
    solve_moebius_pair(&cons, swap, realness, s.d).is_ok()
}

fn scenario(form: FormId, d: i64, ps: &[(&str, &str)]) -> Scenario {
    let ps: Vec<(String, String)> = ps.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    Scenario::parse(form, d, &ps).expect("static scenario")
}

/// One feasibility statement about a Möbius-pair system.
#[derive(Debug, Clone)]
pub struct SolverClaim {
    pub case: u8,
    pub what: &'static str,
    pub scenario: Scenario,
    pub swap: bool,
    /// `e_i ↦ e_perm[i]`.
    pub perm: [usize; 4],
    pub feasible: bool,
}

pub fn solver_claims() -> Vec<SolverClaim> {
    use FormId::*;
    // q -> r -> s -> q fixing p; and fixing p, s while exchanging q, r with the rulings swapped
    let cycle = [0, 2, 3, 1];
    let swap_qr = [0, 2, 1, 3];
    let claim = |case, what, scenario, swap, perm, feasible| SolverClaim { case, what, scenario, swap, perm, feasible };
    vec![
        claim(3, "3-cycle at lambda=(1+sqrt-3)/2", scenario(Q31_40, -3, &[("lambda", "1/2+1/2*w")]), false, cycle, true),
        claim(3, "3-cycle at lambda=1+i", scenario(Q31_40, -1, &[("lambda", "1+w")]), false, cycle, false),
        claim(3, "(12)(45) at lambda=(1+sqrt-7)/2", scenario(Q31_40, -7, &[("lambda", "1/2+1/2*w")]), true, swap_qr, true),
        claim(5, "(12)(45) at (mu1,mu2)=(3,3/2)", scenario(Q22_40, -1, &[("mu1", "3"), ("mu2", "3/2")]), true, swap_qr, true),
        claim(5, "(12)(45) at (mu1,mu2)=(2,3)", scenario(Q22_40, -1, &[("mu1", "2"), ("mu2", "3")]), true, swap_qr, false),
    ]
}

fn bound_check(form: FormId) -> Result<String, String> {
    let spec = form_spec(form);
    let k = kernel_bound(&spec);
    let i = image_bound(&spec);
    let want = match form {
        FormId::Q31_40 => (8, 12),
        FormId::Q31_21 => (4, 0),
        FormId::Q31_02 => (8, 4),
        FormId::Q22_02 => (16, 0),
        FormId::Q22_40 => (16, 120),
    };
    if k.len() != want.0 || (want.1 != 0 && i.len() != want.1) {
        return Err(format!("kernel bound {} and image bound {}", k.len(), i.len()));
    }
    Ok(format!("kernel bound of order {}, image bound of order {}", k.len(), i.len()))
}

/// Runs every fixture of the selected case (all cases when `None`).
pub fn verify_paper(case: Option<u8>) -> Result<Verification, ClassifyError> {
    let mut v = Verification::default();
    let wanted = |form: FormId| case.is_none_or(|c| c == form.case());
    let matrices = fixtures::matrices()?;
    let maps = fixtures::maps()?;
    let mut cases: Vec<u8> = (1..=5).filter(|c| case.is_none_or(|x| x == *c)).collect();
    cases.sort();
    for c in &cases {
        let form = FormId::from_case(*c).expect("case 1..5");
        v.sigma_tables.push((form, sigma_arrows(&form_spec(form))));
        v.checks.push(check(*c, format!("bounds {form}"), bound_check(form)));
        if let Some(note) = envelope_mismatch(&form_spec(form)) {
            v.notes.push(note);
        }
    }
    for rec in matrices.iter().filter(|r| wanted(r.form)) {
        v.checks.push(check(rec.form.case(), format!("matrix {}", rec.tag), check_matrix(rec)));
    }
    for rec in &maps {
        let form = FormId::parse(&rec.form).ok_or_else(|| ClassifyError::InvalidParameters(format!("unknown form in {}", rec.tag)))?;
        if wanted(form) {
            v.checks.push(check(form.case(), format!("map {}", rec.tag), check_map_record(rec)));
        }
    }
    if wanted(FormId::Q22_40) {
        v.checks.push(check(5, "plane involution with a=0", degenerate_plane_check()));
    }
    for SolverClaim { case: c, what, scenario: s, swap, perm, feasible } in solver_claims() {
        if cases.contains(&c) {
            let got = moebius_feasible(&s, swap, perm);
            let word = |b: bool| if b { "feasible" } else { "infeasible" };
            let r = if got == feasible { Ok(word(got).to_string()) } else { Err(format!("{}, expected {}", word(got), word(feasible))) };
            v.checks.push(check(c, format!("solver {what}"), r));
        }
    }
    if wanted(FormId::Q31_02) {
        for mu in ["2+w", "3/5+4/5*w"] {
            let m = FieldElem::parse(mu, -1).expect("static value");
            let r = emit_quadric_model(&m)
                .map(|q| format!("pencil determinant of degree {} is squarefree", q.pencil.len() - 1))
                .map_err(|e| e.to_string());
            v.checks.push(check(1, format!("quadric model mu={mu}"), r));
        }
    }
    for s in sample_scenarios().iter().filter(|s| wanted(s.form)) {
        let x = cross_check(s)?;
        let spec = form_spec(s.form);
        let bound = kernel_bound(&spec);
        let image = image_bound(&spec);
        let ok = x.conditions.a0 == bound
            && x.witnesses.a0 == bound
            && x.witnesses.aprime.iter().all(|p| image.contains(p))
            && x.conditions.aprime.iter().all(|p| image.contains(p));
        let detail = format!("A0 order {}, A' {} by conditions, {} by witnesses", x.witnesses.a0.len(), x.conditions.aprime_name, x.witnesses.aprime_name);
        v.checks.push(check(s.form.case(), format!("classify {}", s.label()), if ok { Ok(detail) } else { Err(detail) }));
        v.flags.extend(x.flags.iter().map(|f| format!("{}: {f}", s.label())));
    }
    Ok(v)
}
