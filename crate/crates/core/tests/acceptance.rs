//! One line per acceptance criterion, each with a pinned time limit.
//! Runs without the libtest harness so the lines always reach stdout.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use dp4aut::birmaps::builtins::builtins;
use dp4aut::classifier::{classify_by_conditions, classify_by_witnesses, cross_check, emit_quadric_model, sample_scenarios};
use dp4aut::fixtures::{maps, matrices, Expect};
use dp4aut::numfield::{is_squarefree, FieldElem};
use dp4aut::picard::{enumerate_conic_classes, enumerate_minus_one, exceptional_pairs, intersect, Basis};
use dp4aut::realforms::{form_spec, image_bound, kernel_bound, FormId};
use dp4aut::verify::{check_map_record, check_matrix, moebius_feasible, solver_claims};
use dp4aut::weyl::{generate_weyl, pair_action, parse_bits, perm_closure, span_bits, transposition_lifts, closure, Perm};

type Outcome = Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn perms(gens: &[&str]) -> Vec<Perm> {
    perm_closure(&gens.iter().map(|g| Perm::parse(g).unwrap()).collect::<Vec<_>>())
}

fn enumeration() -> Outcome {
    for basis in [Basis::Quadric, Basis::Plane] {
        let lines = enumerate_minus_one(basis);
        ensure(lines.len() == 16, format!("{} lines in the {} basis", lines.len(), basis.name()))?;
        ensure(enumerate_conic_classes(basis).len() == 10, "conic count")?;
        ensure(exceptional_pairs(basis).len() == 5, "pair count")?;
        for a in &lines {
            let meets = lines.iter().filter(|b| intersect(a, b).unwrap() == 1).count();
            ensure(meets == 5, format!("{a} meets {meets} lines"))?;
        }
    }
    Ok("16 lines, 10 conic classes, 5 pairs in both bases; every line meets 5 others".into())
}

fn group_structure() -> Outcome {
    let w = generate_weyl(Basis::Quadric);
    ensure(w.order() == 1920, format!("|W| = {}", w.order()))?;
    let pairs = exceptional_pairs(Basis::Quadric);
    let acts: Vec<_> = w.elements.iter().map(|g| pair_action(g, &pairs).unwrap()).collect();
    let image: BTreeSet<Perm> = acts.iter().map(|a| a.perm).collect();
    ensure(image.len() == 120, format!("image of order {}", image.len()))?;
    let kernel: BTreeSet<u8> = acts.iter().filter(|a| a.perm.is_identity()).map(|a| a.swaps).collect();
    let even: BTreeSet<u8> = (0u8..32).filter(|v| v.count_ones() % 2 == 0).collect();
    ensure(kernel == even, "kernel signatures are not the even-weight vectors")?;
    // the reflection lifts of transpositions generate a complement
    let lifts = transposition_lifts(Basis::Quadric, &pairs);
    ensure(lifts.len() == 10, format!("{} transposition lifts", lifts.len()))?;
    let section = closure(Basis::Quadric, &lifts.values().copied().collect::<Vec<_>>());
    let section_image: BTreeSet<Perm> = section.elements.iter().map(|g| pair_action(g, &pairs).unwrap().perm).collect();
    ensure(section.order() == 120 && section_image.len() == 120, format!("section of order {}", section.order()))?;
    Ok("|W| = 1920, image Sym5, kernel = 16 even-weight signatures, reflection section of order 120".into())
}

fn sigma_bounds() -> Outcome {
    let kb = |id| kernel_bound(&form_spec(id));
    let orders: Vec<usize> =
        [FormId::Q31_40, FormId::Q31_21, FormId::Q31_02, FormId::Q22_02, FormId::Q22_40].into_iter().map(|f| kb(f).len()).collect();
    ensure(orders == [8, 4, 8, 16, 16], format!("kernel orders {orders:?}"))?;
    let span = |g: &[&str]| span_bits(&g.iter().map(|s| parse_bits(s).unwrap()).collect::<Vec<_>>());
    let gens: [(FormId, &[&str]); 5] = [
        (FormId::Q31_02, &["01100", "10100", "00011"]),
        (FormId::Q31_21, &["01100", "00011"]),
        (FormId::Q31_40, &["01100", "10100", "00011"]),
        (FormId::Q22_02, &["10100", "00110", "00101", "01100"]),
        (FormId::Q22_40, &["10001", "01001", "00101", "00011"]),
    ];
    for (id, g) in gens {
        ensure(kb(id) == span(g), format!("{id} kernel generators"))?;
    }
    let ib = |id| image_bound(&form_spec(id));
    ensure(ib(FormId::Q31_02) == perms(&["(23)", "(45)"]), "q31-02 image is not the Klein group")?;
    ensure(ib(FormId::Q31_40) == perms(&["(12)", "(123)", "(45)"]), "q31-40 image is not Sym3 x Sym2")?;
    ensure(ib(FormId::Q22_40).len() == 120, "q22-40 image is not Sym5")?;
    Ok("kernel orders (8,4,8,16,16) with the stated generators; images Klein4, order 12, Sym5".into())
}

fn matrix_fixtures() -> Outcome {
    let recs = matrices().map_err(|e| e.to_string())?;
    let mut rejected = 0;
    for r in &recs {
        check_matrix(r).map_err(|e| format!("{}: {e}", r.tag))?;
        rejected += usize::from(r.expect == Expect::NonIntegral);
    }
    Ok(format!("{} integer matrices act as stated, {rejected} half-integer matrices rejected NonIntegral", recs.len() - rejected))
}

fn map_fixtures() -> Outcome {
    let recs = maps().map_err(|e| e.to_string())?;
    for r in &recs {
        check_map_record(r).map_err(|e| format!("{}: {e}", r.tag))?;
    }
    let golden = sample_scenarios().into_iter().find(|s| s.d == 5).unwrap();
    let psi1 = builtins().into_iter().find(|b| b.tag() == "q22-40/psi1").unwrap();
    let order = psi1.build(golden.d, &golden.params).map_err(|e| e.to_string())?.order(10);
    ensure(order == Some(5), format!("psi1 has order {order:?}"))?;
    Ok(format!("{} map manifests hold; psi1 has order 5 over Q(sqrt 5)", recs.len()))
}

fn solver_dichotomies() -> Outcome {
    let claims = solver_claims();
    for c in &claims {
        ensure(moebius_feasible(&c.scenario, c.swap, c.perm) == c.feasible, c.what)?;
    }
    Ok(format!("{} feasibility claims reproduced", claims.len()))
}

fn table_reproduction() -> Outcome {
    let expected: [(&str, &[&str]); 13] = [
        ("q31-02 d=-1 mu=3/5+4/5*w", &["(23)(45)"]),
        ("q31-02 d=-1 mu=2+w", &[]),
        ("q31-21 d=-1 mu=2", &["(23)(45)"]),
        ("q31-21 d=-1 mu=1+w", &[]),
        ("q31-40 d=-3 lambda=1/2+1/2*w", &["(123)", "(12)(45)"]),
        ("q31-40 d=-7 lambda=1/2+1/2*w", &["(12)(45)"]),
        ("q22-02 d=-1 k1=1/2 k2=4/5", &["(12)(45)"]),
        ("q22-02 d=-1 k1=1/2 k2=1/3", &[]),
        ("q22-40 d=5 mu1=1/2-1/2*w mu2=3/2-1/2*w", &["(13245)", "(12)(45)"]),
        ("q22-40 d=5 mu1=1/2+1/2*w mu2=3/2+1/2*w", &["(13245)", "(12)(45)"]),
        ("q22-40 d=-1 mu1=3 mu2=3/2", &["(12)(45)"]),
        ("q22-40 d=-1 mu1=2 mu2=3", &[]),
        ("q22-40 d=-1 mu1=1/3 mu2=2/3", &[]),
    ];
    // witnesses add an element exactly on the two flagged proof loci
    let flagged = ["q31-21 d=-1 mu=1+w", "q22-40 d=-1 mu1=1/3 mu2=2/3"];
    let samples = sample_scenarios();
    ensure(samples.len() == expected.len(), "sample count")?;
    for (s, (label, gens)) in samples.iter().zip(expected) {
        ensure(s.label() == label, format!("sample {} out of order", s.label()))?;
        let want = perms(gens);
        let bound = kernel_bound(&form_spec(s.form));
        let c = classify_by_conditions(s);
        let w = classify_by_witnesses(s).map_err(|e| e.to_string())?;
        ensure(c.aprime == want, format!("{label}: conditions give {}", c.aprime_name))?;
        ensure(c.a0 == bound && w.a0 == bound, format!("{label}: A0 differs from the bound"))?;
        if flagged.contains(&label) {
            ensure(w.aprime.len() == 2 * want.len(), format!("{label}: witnesses give {}", w.aprime_name))?;
        } else {
            ensure(w.aprime == want, format!("{label}: witnesses give {}", w.aprime_name))?;
        }
    }
    Ok("13 sample scenarios give the table branches (D5 of order 10 at the golden pair); A0 = bound".into())
}

fn quadric_model() -> Outcome {
    let mut degs = Vec::new();
    for mu in ["2+w", "3/5+4/5*w"] {
        let m = emit_quadric_model(&FieldElem::parse(mu, -1).unwrap()).map_err(|e| e.to_string())?;
        // det(s M1 + t M2) = s^5 P(t/s); squarefree as a quintic iff P is squarefree of degree >= 4
        let deg = m.pencil.len() - 1;
        ensure(deg >= 4 && is_squarefree(&m.pencil), format!("mu={mu}: pencil degree {deg} not squarefree"))?;
        degs.push(deg);
    }
    Ok(format!("binary quintic det(s M1 + t M2) squarefree at both samples (affine degrees {degs:?})"))
}

fn discrepancy_ledger() -> Outcome {
    let mut flagged = Vec::new();
    for s in sample_scenarios() {
        let x = cross_check(&s).map_err(|e| e.to_string())?;
        match x.flags.len() {
            0 => {}
            1 => flagged.push((s.label(), x.flags[0].clone())),
            n => return Err(format!("{}: {n} flags", s.label())),
        }
    }
    let want = [("q31-21 d=-1 mu=1+w", "mu + conj mu = 2"), ("q22-40 d=-1 mu1=1/3 mu2=2/3", "mu1 + mu2 = 1")];
    ensure(flagged.len() == 2, format!("{} flagged scenarios", flagged.len()))?;
    for ((label, flag), (wl, locus)) in flagged.iter().zip(want) {
        ensure(label == wl && flag.contains(locus), format!("unexpected flag on {label}: {flag}"))?;
    }
    Ok("exactly one flag each on the trace2 and sum1 loci, none elsewhere".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("enumeration counts", enumeration, 1),
        ("group structure", group_structure, 10),
        ("sigma bounds", sigma_bounds, 10),
        ("matrix fixtures", matrix_fixtures, 1),
        ("map fixtures", map_fixtures, 30),
        ("solver dichotomies", solver_dichotomies, 5),
        ("table reproduction", table_reproduction, 60),
        ("quadric model", quadric_model, 1),
        ("discrepancy ledger", discrepancy_ledger, 10),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let dt = t.elapsed();
        let within = dt <= Duration::from_secs(*limit);
        let (ok, detail) = match outcome {
            Ok(d) if within => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit} s limit")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {}: {} {name} ({:.2} s / {limit} s): {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            dt.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
