use dp4aut::birmaps::builtins::builtins;
use dp4aut::birmaps::certify::{certify, lattice_facts, moebius_lattice, Fact, Model};
use dp4aut::birmaps::plane::{quadratic_involution, standard_involution};
use dp4aut::birmaps::solver::{solve_moebius_pair, MoebiusSolution, Realness};
use dp4aut::birmaps::{BirError, ProjPoint, QuadricPoint};
use dp4aut::classifier::{sample_scenarios, Scenario};
use dp4aut::numfield::{rat, FieldElem};
use dp4aut::picard::Basis;
use dp4aut::realforms::FormId;
use dp4aut::weyl::{weyl_group, PicAut};
use proptest::prelude::*;

const D: i64 = -1;

fn gauss(re: i64, im: i64) -> FieldElem {
    FieldElem::new(D, rat(re, 1), rat(im, 1))
}

fn p1(a: FieldElem, b: FieldElem) -> ProjPoint {
    ProjPoint::new(vec![a, b]).unwrap()
}

fn mat_apply(m: &[[FieldElem; 2]; 2], x: &ProjPoint) -> ProjPoint {
    let y0 = &(&m[0][0] * &x.0[0]) + &(&m[0][1] * &x.0[1]);
    let y1 = &(&m[1][0] * &x.0[0]) + &(&m[1][1] * &x.0[1]);
    p1(y0, y1)
}

fn scenario(label: &str) -> Scenario {
    sample_scenarios().into_iter().find(|s| s.label() == label).expect("sample label")
}

#[test]
fn psi1_has_order_five_over_the_golden_field() {
    let s = scenario("q22-40 d=5 mu1=1/2-1/2*w mu2=3/2-1/2*w");
    let b = builtins().into_iter().find(|b| b.tag() == "q22-40/psi1").unwrap();
    assert!(b.gate_holds(s.d, &s.params).unwrap());
    let m = b.build(s.d, &s.params).unwrap();
    assert_eq!(m.order(10), Some(5));
    assert!(m.commutes_with_real_structure(FormId::Q22_40));
}

#[test]
fn builtins_fail_off_their_gate() {
    // psi at mu=2 leaves the trace2 locus
    let s = scenario("q31-21 d=-1 mu=2");
    let b = builtins().into_iter().find(|b| b.tag() == "q31-21/psi").unwrap();
    assert!(!b.gate_holds(s.d, &s.params).unwrap());
}

#[test]
fn certification_rejects_a_wrong_lattice() {
    let s = scenario("q22-02 d=-1 k1=1/2 k2=4/5");
    let b = builtins().into_iter().find(|b| b.tag() == "q22-02/phi1").unwrap();
    let m = b.build(s.d, &s.params).unwrap();
    let pts = s.points();
    assert!(!certify(&Model::Quadric(&m, &pts), &PicAut::identity(Basis::Quadric)).is_empty());
    assert!(!certify(&Model::Quadric(&m, &pts), &PicAut::identity(Basis::Plane)).is_empty());
}

#[test]
fn identity_certifies_as_trivial_lattice() {
    let s = scenario("q31-02 d=-1 mu=2+w");
    let id = dp4aut::birmaps::BidegMap::identity(s.d);
    let pts = s.points();
    assert!(certify(&Model::Quadric(&id, &pts), &moebius_lattice(false, [0, 1, 2, 3])).is_empty());
    assert!(!certify(&Model::Quadric(&id, &pts), &moebius_lattice(true, [0, 1, 2, 3])).is_empty());
}

#[test]
fn solver_reports_degenerate_systems() {
    let pt = |a, b, c, e| QuadricPoint::new(p1(gauss(a, 0), gauss(b, 0)), p1(gauss(c, 0), gauss(e, 0)));
    let one = vec![(pt(1, 0, 1, 0), pt(1, 0, 1, 0))];
    assert!(matches!(solve_moebius_pair(&one, false, Realness::BothReal, D), Err(BirError::UnderdeterminedSystem)));
    // three fixed points and a fourth sent elsewhere on the first factor
    let mut cons: Vec<_> = [(1, 0), (0, 1), (1, 1)].iter().map(|&(a, b)| (pt(a, b, a, b), pt(a, b, a, b))).collect();
    cons.push((pt(1, 2, 1, 2), pt(1, 3, 1, 2)));
    assert!(matches!(solve_moebius_pair(&cons, false, Realness::BothReal, D), Err(BirError::NoSolution)));
}

#[test]
fn quadratic_involution_needs_general_position() {
    let p = |c: &[i64]| ProjPoint::ints(D, c);
    let (a, b, c) = (p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[0, 0, 1]));
    assert!(quadratic_involution([&a, &b, &c], [&p(&[1, 1, 1]), &p(&[1, 1, 0])]).is_err());
    let q = quadratic_involution([&a, &b, &c], [&p(&[1, 1, 1]), &p(&[2, 3, 5])]).unwrap();
    assert_eq!(q.evaluate(&p(&[1, 1, 1])).unwrap(), p(&[2, 3, 5]));
    assert_eq!(q.order(4), Some(2));
}

fn small() -> impl Strategy<Value = i64> {
    -4i64..=4
}

fn gauss_strategy() -> impl Strategy<Value = FieldElem> {
    (small(), small()).prop_map(|(a, b)| gauss(a, b))
}

fn point_strategy() -> impl Strategy<Value = ProjPoint> {
    (gauss_strategy(), gauss_strategy())
        .prop_filter("nonzero", |(a, b)| !(a.is_zero() && b.is_zero()))
        .prop_map(|(a, b)| p1(a, b))
}

fn matrix_strategy() -> impl Strategy<Value = [[FieldElem; 2]; 2]> {
    prop::array::uniform4(gauss_strategy())
        .prop_map(|[a, b, c, d]| [[a, b], [c, d]])
        .prop_filter("invertible", |m| !(&(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])).is_zero())
}

fn conj(m: &[[FieldElem; 2]; 2]) -> [[FieldElem; 2]; 2] {
    [[m[0][0].cc(), m[0][1].cc()], [m[1][0].cc(), m[1][1].cc()]]
}

fn distinct(ps: &[ProjPoint]) -> bool {
    (0..ps.len()).all(|i| (i + 1..ps.len()).all(|j| ps[i] != ps[j]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Images of three generic points determine the pair (A, conj A).
    #[test]
    fn solver_recovers_a_conjugate_pair(
        a in matrix_strategy(),
        us in prop::array::uniform4(point_strategy()),
        vs in prop::array::uniform4(point_strategy()),
        swap in any::<bool>(),
    ) {
        prop_assume!(distinct(&us[..3]) && distinct(&vs[..3]));
        let b = conj(&a);
        let image = |u: &ProjPoint, v: &ProjPoint| {
            let (au, bv) = (mat_apply(&a, u), mat_apply(&b, v));
            if swap { QuadricPoint::new(bv, au) } else { QuadricPoint::new(au, bv) }
        };
        let cons: Vec<_> = (0..3).map(|i| (QuadricPoint::new(us[i].clone(), vs[i].clone()), image(&us[i], &vs[i]))).collect();
        let sol = solve_moebius_pair(&cons, swap, Realness::BEqualsConjA, D).unwrap();
        let map = sol.to_map(D);
        let expect = MoebiusSolution { a: a.clone(), b: b.clone(), swap }.to_map(D);
        prop_assert!(map.equals_as_rational_map(&expect));
        prop_assert_eq!(map.evaluate(&QuadricPoint::new(us[3].clone(), vs[3].clone())).unwrap(), image(&us[3], &vs[3]));
    }

    /// Composition is evaluation in sequence.
    #[test]
    fn composition_matches_evaluation(
        a in matrix_strategy(), b in matrix_strategy(), c in matrix_strategy(), e in matrix_strategy(),
        u in point_strategy(), v in point_strategy(),
    ) {
        let f = MoebiusSolution { a, b, swap: true }.to_map(D);
        let g = MoebiusSolution { a: c, b: e, swap: false }.to_map(D);
        let p = QuadricPoint::new(u, v);
        let direct = f.evaluate(&g.evaluate(&p).unwrap()).unwrap();
        prop_assert_eq!(f.compose(&g).evaluate(&p).unwrap(), direct);
    }

    /// The standard involution is an involution exchanging [1:1:1] and [a:b:c].
    #[test]
    fn standard_involution_properties(abc in prop::array::uniform3(1i64..=9)) {
        let coeffs = abc.map(|x| FieldElem::int(D, x));
        let q = standard_involution(&coeffs);
        prop_assert_eq!(q.order(3), Some(2));
        let fifth = ProjPoint::new(coeffs.to_vec()).unwrap();
        prop_assert_eq!(q.evaluate(&ProjPoint::ints(D, &[1, 1, 1])).unwrap(), fifth);
        for i in 0..3 {
            let mut e = [0; 3];
            e[i] = 1;
            prop_assert!(q.is_base_point(&ProjPoint::ints(D, &e)));
        }
    }

    /// Fact texts read back to the same fact.
    #[test]
    fn fact_text_is_faithful(i in 0usize..1920, plane in any::<bool>()) {
        let basis = if plane { Basis::Plane } else { Basis::Quadric };
        let g = weyl_group(basis).elements[i];
        // elements outside the checked shapes have no facts to compare
        if let Ok(facts) = lattice_facts(&g) {
            for f in facts {
                prop_assert_eq!(Fact::parse(&f.render(basis), basis), Some(f));
            }
        }
    }
}
