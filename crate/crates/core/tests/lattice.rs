use std::collections::BTreeSet;

use dp4aut::picard::{canonical_class, exceptional_pairs, intersect, Basis, DivisorClass};
use dp4aut::realforms::{envelope_mismatch, form_spec, image_bound, kernel_bound, sigma_arrows, FormId};
use dp4aut::weyl::{
    centralizer, closure, format_bits, is_lattice_automorphism, pair_action, parse_bits, perm_closure, span_bits,
    transposition_lifts, weyl_group, Perm, PicAut,
};
use proptest::prelude::*;

fn bits(list: &[&str]) -> Vec<u8> {
    let mut v: Vec<u8> = list.iter().map(|s| parse_bits(s).unwrap()).collect();
    v.sort();
    v
}

fn perms(gens: &[&str]) -> Vec<Perm> {
    perm_closure(&gens.iter().map(|s| Perm::parse(s).unwrap()).collect::<Vec<_>>())
}

/// Brute-force oracle: the isometries fixing K are exactly the permutations
/// of the 16 lines that preserve all incidences *and* are linear. We rebuild
/// W from the 16 lines by choosing images of a fixed basis of lines.
fn weyl_order_by_line_images(basis: Basis) -> usize {
    let lines = dp4aut::picard::enumerate_minus_one(basis);
    // a Z-basis made of lines: in the plane basis E1..E5 and L-E1-E2
    let plane = |s: &str| DivisorClass::parse(s, Basis::Plane).unwrap();
    let src: Vec<DivisorClass> = ["L-E1-E2", "E1", "E2", "E3", "E4", "E5"]
        .iter()
        .map(|s| dp4aut::picard::change_basis(&plane(s), basis))
        .collect();
    let g = |a: &DivisorClass, b: &DivisorClass| intersect(a, b).unwrap();
    let mut count = 0;
    let mut chosen: Vec<DivisorClass> = Vec::new();
    fn rec(
        k: usize,
        src: &[DivisorClass],
        lines: &[DivisorClass],
        chosen: &mut Vec<DivisorClass>,
        count: &mut usize,
        g: &dyn Fn(&DivisorClass, &DivisorClass) -> i64,
    ) {
        if k == src.len() {
            *count += 1;
            return;
        }
        for l in lines {
            if chosen.iter().enumerate().all(|(i, c)| g(c, l) == g(&src[i], &src[k])) {
                chosen.push(*l);
                rec(k + 1, src, lines, chosen, count, g);
                chosen.pop();
            }
        }
    }
    rec(0, &src, &lines, &mut chosen, &mut count, &g);
    count
}

#[test]
fn weyl_group_structure() {
    for basis in [Basis::Quadric, Basis::Plane] {
        let w = weyl_group(basis);
        assert_eq!(w.order(), 1920);
        assert_eq!(weyl_order_by_line_images(basis), 1920);
        assert!(w.is_closed());
        for g in &w.elements {
            assert!(w.contains(&g.inverse()));
            assert!(is_lattice_automorphism(&g.to_rat(), basis));
        }
        let pairs = exceptional_pairs(basis);
        let mut image = BTreeSet::new();
        let mut kernel = BTreeSet::new();
        for g in &w.elements {
            let a = pair_action(g, &pairs).unwrap();
            image.insert(a.perm);
            if a.perm.is_identity() {
                assert!(kernel.insert(a.swaps), "kernel signature determines the element");
            }
        }
        assert_eq!(image.len(), 120);
        let even: BTreeSet<u8> = (0u8..32).filter(|v| v.count_ones() % 2 == 0).collect();
        assert_eq!(kernel, even);
        let lifts = transposition_lifts(basis, &pairs);
        assert_eq!(lifts.len(), 10);
        let generated = closure(basis, &lifts.values().copied().collect::<Vec<_>>());
        assert_eq!(generated.order(), 120, "the lifts generate a complement");
    }
}

#[test]
fn centralizer_basics() {
    let w = weyl_group(Basis::Quadric);
    assert_eq!(centralizer(&PicAut::identity(Basis::Quadric), w).unwrap().order(), 1920);
    let s = form_spec(FormId::Q31_02);
    let c = centralizer(&s.sigma, w).unwrap();
    assert!(c.is_closed());
    let kernel: Vec<_> = c
        .elements
        .iter()
        .filter(|g| pair_action(g, &s.pairs).unwrap().perm.is_identity())
        .collect();
    assert_eq!(kernel.len(), 8);
    let mut bad = PicAut::identity(Basis::Quadric);
    bad.m[0][0] = 2;
    assert!(centralizer(&bad, w).is_err());
}

#[test]
fn sigma_is_involution_normalising_pairs() {
    for id in FormId::ALL {
        let s = form_spec(id);
        assert!(s.sigma.mul(&s.sigma).is_identity());
        assert_eq!(s.sigma.apply(&canonical_class(Basis::Quadric)), canonical_class(Basis::Quadric));
        assert!(pair_action(&s.sigma, &s.pairs).is_ok());
    }
}

#[test]
fn sigma_arrow_tables() {
    let a = |id| sigma_arrows(&form_spec(id));
    assert_eq!(
        a(FormId::Q31_02),
        ["R1 -> R1", "R2 -> R2 (members exchanged)", "R3 -> R3 (members exchanged)", "R4 -> R5", "R5 -> R4"]
    );
    assert_eq!(a(FormId::Q31_21), ["R1 -> R1", "R2 -> R3", "R3 -> R2", "R4 -> R5", "R5 -> R4"]);
    assert_eq!(a(FormId::Q22_40), ["R1 -> R1", "R2 -> R2", "R3 -> R3", "R4 -> R4", "R5 -> R5"]);
    let q22 = pair_action(&form_spec(FormId::Q22_02).sigma, &form_spec(FormId::Q22_02).pairs).unwrap();
    assert!(q22.perm.is_identity());
    assert_eq!(format_bits(q22.swaps), "00011");
}

#[test]
fn kernel_bounds() {
    let kb = |id| kernel_bound(&form_spec(id));
    let orders: Vec<usize> = [FormId::Q31_40, FormId::Q31_21, FormId::Q31_02, FormId::Q22_02, FormId::Q22_40]
        .into_iter()
        .map(|id| kb(id).len())
        .collect();
    assert_eq!(orders, [8, 4, 8, 16, 16]);
    let q31_02: Vec<u8> = (0u8..32)
        .filter(|v| (v >> 3 & 1) == (v >> 4 & 1) && ((v & 1) ^ (v >> 1 & 1) ^ (v >> 2 & 1)) == 0)
        .collect();
    assert_eq!(kb(FormId::Q31_02), q31_02);
    assert_eq!(kb(FormId::Q31_21), bits(&["00000", "00011", "01100", "01111"]));
    // generator lists of the kernel statements
    assert_eq!(kb(FormId::Q31_02), span_bits(&bits(&["01100", "10100", "00011"])));
    assert_eq!(kb(FormId::Q31_40), span_bits(&bits(&["01100", "10100", "00011"])));
    assert_eq!(kb(FormId::Q22_02), span_bits(&bits(&["10100", "00110", "00101", "01100"])));
    assert_eq!(kb(FormId::Q22_40), span_bits(&bits(&["10001", "01001", "00101", "00011"])));
}

#[test]
fn image_bounds() {
    let ib = |id| image_bound(&form_spec(id));
    assert_eq!(ib(FormId::Q31_02), perms(&["(23)", "(45)"]));
    assert_eq!(ib(FormId::Q31_40), perms(&["(12)", "(123)", "(45)"]));
    assert_eq!(ib(FormId::Q31_40).len(), 12);
    assert_eq!(ib(FormId::Q22_40).len(), 120);
    // the envelope check is exercised for every form; any mismatch is data
    for id in FormId::ALL {
        let s = form_spec(id);
        let bound = image_bound(&s);
        assert_eq!(envelope_mismatch(&s).is_none(), bound == dp4aut::realforms::stated_image_envelope(id));
    }
}

fn element() -> impl Strategy<Value = usize> {
    0usize..1920
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pair_action_is_homomorphism(i in element(), j in element()) {
        let w = weyl_group(Basis::Quadric);
        let pairs = form_spec(FormId::Q22_02).pairs;
        let (g, h) = (w.elements[i], w.elements[j]);
        let lhs = pair_action(&g.mul(&h), &pairs).unwrap();
        let rhs = pair_action(&g, &pairs).unwrap().compose(&pair_action(&h, &pairs).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn elements_are_isometries(i in element(), c in prop::array::uniform6(-3i64..=3), d in prop::array::uniform6(-3i64..=3)) {
        let w = weyl_group(Basis::Plane);
        let g = w.elements[i];
        let (x, y) = (DivisorClass::new(Basis::Plane, c), DivisorClass::new(Basis::Plane, d));
        prop_assert_eq!(intersect(&g.apply(&x), &g.apply(&y)), intersect(&x, &y));
        prop_assert_eq!(intersect(&x, &y), intersect(&y, &x));
        let conj = g.to_basis(Basis::Quadric);
        let xq = dp4aut::picard::change_basis(&x, Basis::Quadric);
        prop_assert_eq!(dp4aut::picard::change_basis(&g.apply(&x), Basis::Quadric), conj.apply(&xq));
    }
}
