use dp4aut::birmaps::Params;
use dp4aut::classifier::{
    classify_by_conditions, classify_by_witnesses, cross_check, emit_quadric_model, sample_scenarios, ClassifyError,
    Scenario,
};
use dp4aut::numfield::{rat, FieldElem};
use dp4aut::realforms::{form_spec, image_bound, kernel_bound, FormId};
use dp4aut::weyl::{perm_closure, GroupName, Perm};
use proptest::prelude::*;

fn scen(form: FormId, d: i64, ps: &[(&str, &str)]) -> Result<Scenario, ClassifyError> {
    let ps: Vec<(String, String)> = ps.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    Scenario::parse(form, d, &ps)
}

fn group(gens: &[&str]) -> Vec<Perm> {
    perm_closure(&gens.iter().map(|g| Perm::parse(g).unwrap()).collect::<Vec<_>>())
}

#[test]
fn samples_respect_the_bounds() {
    for s in sample_scenarios() {
        let spec = form_spec(s.form);
        let x = cross_check(&s).unwrap();
        for c in [&x.conditions, &x.witnesses] {
            assert_eq!(c.a0, kernel_bound(&spec), "{}", s.label());
            assert!(c.aprime.iter().all(|p| image_bound(&spec).contains(p)), "{}", s.label());
        }
        // witnesses realise at least what the conditions claim
        assert!(x.conditions.aprime.iter().all(|p| x.witnesses.aprime.contains(p)), "{}", s.label());
    }
}

#[test]
fn golden_pair_gives_d5() {
    let s = scen(FormId::Q22_40, 5, &[("mu1", "1/2+1/2*w"), ("mu2", "3/2+1/2*w")]).unwrap();
    let w = classify_by_witnesses(&s).unwrap();
    assert_eq!(w.aprime.len(), 10);
    assert_eq!(w.aprime_name, GroupName::D5);
    assert_eq!(w.aprime, group(&["(13245)", "(12)(45)"]));
}

#[test]
fn sym3_from_solver_witnesses_alone() {
    let s = scen(FormId::Q31_40, -3, &[("lambda", "1/2+1/2*w")]).unwrap();
    let w = classify_by_witnesses(&s).unwrap();
    let solver: Vec<Perm> = w.witnesses.iter().filter(|x| x.name.starts_with("moebius/")).map(|x| x.action.perm).collect();
    assert_eq!(perm_closure(&solver), group(&["(123)", "(12)(45)"]));
}

#[test]
fn flags_sit_on_the_proof_loci() {
    let flagged: Vec<String> = sample_scenarios()
        .iter()
        .filter(|s| !cross_check(s).unwrap().flags.is_empty())
        .map(|s| s.label())
        .collect();
    assert_eq!(flagged, ["q31-21 d=-1 mu=1+w", "q22-40 d=-1 mu1=1/3 mu2=2/3"]);
    let s = scen(FormId::Q22_40, -1, &[("mu1", "1/3"), ("mu2", "2/3")]).unwrap();
    let f = &cross_check(&s).unwrap().flags;
    assert_eq!(f.len(), 1);
    assert!(f[0].contains("(13)(45)") && f[0].contains("mu1 + mu2 = 1"));
}

#[test]
fn conditions_are_deterministic() {
    for s in sample_scenarios() {
        let a = format!("{:?}", classify_by_conditions(&s));
        let b = format!("{:?}", classify_by_conditions(&s));
        assert_eq!(a, b);
    }
}

#[test]
fn invalid_scenarios() {
    use FormId::*;
    type Case = (FormId, i64, &'static [(&'static str, &'static str)]);
    let bad: [Case; 11] = [
        (Q31_02, -1, &[("mu", "1")]),
        (Q31_02, -1, &[("mu", "0")]),
        (Q31_02, -1, &[("lambda", "2+w")]),
        (Q31_21, -1, &[("mu", "w")]),
        (Q31_40, -3, &[("lambda", "2")]),
        (Q22_02, -1, &[("k1", "1/2"), ("k2", "1/2")]),
        (Q22_02, -1, &[("k1", "3/2"), ("k2", "1/2")]),
        (Q22_02, -2, &[("k1", "1/3"), ("k2", "1/2")]),
        (Q22_40, -1, &[("mu1", "1"), ("mu2", "3")]),
        (Q22_40, -1, &[("mu1", "w"), ("mu2", "3")]),
        (Q31_02, 4, &[("mu", "2")]),
    ];
    for (form, d, ps) in bad {
        assert!(matches!(scen(form, d, ps), Err(ClassifyError::InvalidParameters(_))), "{form} {d} {ps:?}");
    }
    assert!(scen(Q31_02, -1, &[("mu", "2+w"), ("mu", "3")]).is_err());
}

#[test]
fn quadric_model_data() {
    let mu = FieldElem::parse("3/5+4/5*w", -1).unwrap();
    let m = emit_quadric_model(&mu).unwrap();
    // tr = 6/5 and N = 1
    assert_eq!(m.m1[0][0], rat(1, 5));
    assert_eq!(m.m1[0][1], rat(-1, 1));
    assert_eq!(m.m1[2][2], rat(4, 5));
    assert_eq!(m.m1[3][3], rat(1, 1));
    for mat in [&m.m1, &m.m2] {
        for (i, row) in mat.iter().enumerate() {
            assert!(row.iter().enumerate().all(|(j, x)| *x == mat[j][i]));
        }
    }
    assert!(m.smooth);
    assert!(emit_quadric_model(&FieldElem::int(-1, 1)).is_err());
}

#[test]
fn pencil_interpolation_matches_direct_determinants() {
    use dp4aut::numfield::Rat;
    let mu = FieldElem::parse("2+w", -1).unwrap();
    let m = emit_quadric_model(&mu).unwrap();
    // brute-force cofactor expansion at values outside the interpolation nodes
    fn det(m: &[Vec<Rat>]) -> Rat {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<Rat>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
                let s = if j % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
                s * &m[0][j] * det(&minor)
            })
            .sum()
    }
    for t in [7i64, -3, 11] {
        let t = rat(t, 1);
        let mt: Vec<Vec<Rat>> = (0..5).map(|i| (0..5).map(|j| &m.m1[i][j] + &t * &m.m2[i][j]).collect()).collect();
        let p: Rat = m.pencil.iter().enumerate().map(|(k, c)| c * num_traits::pow(t.clone(), k)).sum();
        assert_eq!(det(&mt), p);
    }
}

fn gauss() -> impl Strategy<Value = (i64, i64, i64)> {
    (-6i64..=6, 1i64..=6, 1i64..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Off the flagged loci the two modes agree.
    #[test]
    fn modes_agree_off_the_loci((a, b, den) in gauss(), real in any::<bool>()) {
        let (form, im) = if real { (FormId::Q31_21, 0) } else { (FormId::Q31_02, b) };
        let mu = FieldElem::new(-1, rat(a, den), rat(im, den));
        let mut ps = Params::new();
        ps.insert("mu".into(), mu.clone());
        let Ok(s) = Scenario::new(form, -1, ps) else { return Ok(()) };
        let x = cross_check(&s).unwrap();
        prop_assert!(x.flags.is_empty(), "{}: {:?}", s.label(), x.flags);
        prop_assert_eq!(x.conditions.aprime, x.witnesses.aprime);
    }

    /// On the k-condition the Z/2 branch appears and is realised.
    #[test]
    fn k_condition_branch(n in 1i64..9, m in 10i64..20) {
        let k1 = format!("{n}/{m}");
        let k2 = format!("{}/{}", 2 * n * m, m * m + n * n);
        let s = scen(FormId::Q22_02, -1, &[("k1", &k1), ("k2", &k2)]).unwrap();
        let x = cross_check(&s).unwrap();
        prop_assert_eq!(x.conditions.aprime.len(), 2);
        prop_assert_eq!(x.witnesses.aprime, x.conditions.aprime);
    }
}
