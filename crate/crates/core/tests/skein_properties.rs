use proptest::prelude::*;

use qtangle::coeff::{Laurent, Var};
use qtangle::diagram::{BraidWord, LinkDiagram};
use qtangle::qgroup::QGroup;
use qtangle::skein::{bracket, bracket_functor, bracket_statesum, jones, loop_value, mirror};

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        prop::collection::vec((1..n, any::<bool>()), 0..=max_len)
            .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
    })
}

fn t_pow(k: i64) -> Laurent {
    Laurent::var_pow(Var::T4, 4 * k)
}

fn half_t_difference() -> Laurent {
    &Laurent::var_pow(Var::T4, 2) - &Laurent::var_pow(Var::T4, -2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn state_sum_matches_functor(b in braid(5, 10)) {
        let d = b.closure();
        prop_assert_eq!(bracket_statesum(&d).unwrap(), bracket_functor(&d).unwrap());
    }

    #[test]
    fn mirror_inverts_the_variable(b in braid(4, 8)) {
        let d = b.closure();
        prop_assert_eq!(jones(&mirror(&d)).unwrap(), jones(&d).unwrap().invert_var());
        prop_assert_eq!(bracket(&mirror(&d)).unwrap(), bracket(&d).unwrap().invert_var());
    }

    #[test]
    fn jones_ignores_kinks(b in braid(4, 6), sign in prop::sample::select(vec![1i8, -1])) {
        let d = b.closure();
        let kinked = d.add_kink(0, sign).unwrap();
        prop_assert_eq!(jones(&kinked).unwrap(), jones(&d).unwrap());
        let factor = Laurent::monomial(Var::A, -1, 3 * sign as i64);
        prop_assert_eq!(bracket(&kinked).unwrap(), &factor * &bracket(&d).unwrap());
    }

    #[test]
    fn jones_skein_relation(b in braid(4, 7), pick in any::<prop::sample::Index>()) {
        let d = b.closure();
        prop_assume!(!d.crossings().is_empty());
        let i = pick.index(d.crossings().len());
        let (plus, minus) = if d.crossings()[i].sign > 0 {
            (d.clone(), d.switch_crossing(i))
        } else {
            (d.switch_crossing(i), d.clone())
        };
        let zero = d.smooth_oriented(i);
        let lhs = &(&t_pow(-1) * &jones(&plus).unwrap()) - &(&t_pow(1) * &jones(&minus).unwrap());
        let rhs = &half_t_difference() * &jones(&zero).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn disjoint_union_multiplies(a in braid(3, 5), b in braid(3, 5)) {
        let (da, db) = (a.closure(), b.closure());
        let both = da.disjoint_union(&db);
        prop_assert_eq!(bracket(&both).unwrap(), &bracket(&da).unwrap() * &bracket(&db).unwrap());
        prop_assert_eq!(bracket_functor(&both).unwrap(), bracket(&both).unwrap());
    }

    #[test]
    fn colored_mirror_relation(b in braid(3, 5), label in 1usize..=3) {
        let d = b.closure();
        let c = d.component_count();
        let g = QGroup::generic();
        let labels = vec![label; c];
        let framings: Vec<i64> = (0..c).map(|k| d.self_writhe(k).unwrap()).collect();
        let mirrored: Vec<i64> = framings.iter().map(|f| -f).collect();
        let v = g.colored_invariant(&d, &labels, &framings).unwrap();
        let m = g.colored_invariant(&mirror(&d), &labels, &mirrored).unwrap();
        prop_assert_eq!(m, v.invert_var());
    }
}

#[test]
fn unlinks_are_powers_of_the_loop() {
    for k in 0..5 {
        assert_eq!(bracket(&LinkDiagram::unlink(k)).unwrap(), loop_value().pow(k as u64));
    }
}

#[test]
fn large_diagrams_use_the_functor() {
    let b = BraidWord::parse("braid 3 : s1 s2' s1 s2' s1 s2' s1 s2' s1 s2' s1 s2' s1 s2' s1 s2'").unwrap();
    let d = b.closure();
    assert!(d.crossings().len() > 14);
    assert_eq!(bracket(&d).unwrap(), bracket_statesum(&d).unwrap());
}
