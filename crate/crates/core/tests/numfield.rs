use dp4aut::numfield::{is_squarefree, rat, FieldElem, NumError, Predicate};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![-7i64, -3, -1, 2, 5])
}

fn elem(d: i64) -> impl Strategy<Value = FieldElem> {
    (-30i64..=30, 1i64..=9, -30i64..=30, 1i64..=9).prop_map(move |(a, b, c, e)| FieldElem::new(d, rat(a, b), rat(c, e)))
}

fn pair() -> impl Strategy<Value = (FieldElem, FieldElem)> {
    field().prop_flat_map(|d| (elem(d), elem(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_reads_back((x, _) in pair()) {
        prop_assert_eq!(FieldElem::parse(&x.to_string(), x.d()).unwrap(), x);
    }

    #[test]
    fn field_laws((x, y) in pair()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        if !y.is_zero() {
            prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x.clone());
        }
        prop_assert!((&x * &x.conj()).is_rational());
    }

    /// The k-condition holds exactly on k2 = 2 k1 / (1 + k1^2).
    #[test]
    fn k_condition_locus(n in 1i64..50, m in 51i64..100) {
        let k1 = FieldElem::new(-1, rat(n, m), rat(0, 1));
        let k2 = FieldElem::new(-1, rat(2 * n * m, m * m + n * n), rat(0, 1));
        prop_assert!(Predicate::KCond.eval(&[k1.clone(), k2.clone()]).unwrap());
        let off = &k2 + &FieldElem::new(-1, rat(1, 1000), rat(0, 1));
        prop_assert!(!Predicate::KCond.eval(&[k1, off]).unwrap());
    }

    /// Squarefree iff the roots of a product of linear factors are distinct.
    #[test]
    fn squarefree_matches_root_multiset(roots in prop::collection::vec(-5i64..=5, 1..6)) {
        let mut p = vec![rat(1, 1)];
        for r in &roots {
            let mut next = vec![rat(0, 1); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * rat(*r, 1);
            }
            p = next;
        }
        let mut sorted = roots.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(is_squarefree(&p), sorted.len() == roots.len());
    }
}

#[test]
fn mixed_fields_are_rejected() {
    let x = FieldElem::int(-1, 2);
    let y = FieldElem::int(5, 2);
    assert!(matches!(x.checked_add(&y), Err(NumError::FieldMismatch { .. })));
    assert!(Predicate::KCond.eval(&[x, y]).is_err());
}
