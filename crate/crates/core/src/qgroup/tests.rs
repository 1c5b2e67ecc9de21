use super::*;
use crate::coeff::{quantum_integer, Laurent, Ring, Var};
use crate::diagram::{BraidWord, LinkDiagram};
use crate::functor::{
    check_labeled_relations, kauffman_over, tangle_relations, LabeledTable, SparseMatrix, StrandType,
};

fn q(n: i64) -> Laurent {
    quantum_integer(n, Var::S)
}

#[test]
fn representation_relations() {
    let g = QGroup::generic();
    for n in 1..=6 {
        let (h, x, y) = (g.rep_h(n), g.rep_x(n), g.rep_y(n));
        let comm = |a: &SparseMatrix<Laurent>, b: &SparseMatrix<Laurent>| {
            a.mul(b).unwrap().sub(&b.mul(a).unwrap()).unwrap()
        };
        assert_eq!(comm(&h, &x), x.scale(&g.int(2)));
        assert_eq!(comm(&h, &y), y.scale(&g.int(-2)));
        let diag = SparseMatrix::from_entries(
            n,
            n,
            &Var::S,
            g.weights(StrandType::up(n)).iter().enumerate().map(|(i, &w)| (i, i, q(w))),
        );
        assert_eq!(comm(&x, &y), diag);
    }
}

#[test]
fn braiding_on_v2_matches_kauffman_crossing() {
    let g = QGroup::generic();
    let over = g.over(StrandType::up(2), StrandType::up(2)).unwrap();
    let expected = kauffman_over().map(&Var::S, |p| p.with_var(Var::S));
    assert_eq!(*over, expected);
}

#[test]
fn braiding_intertwines_coproduct() {
    let g = QGroup::generic();
    for a in 1..=3 {
        for b in 1..=3 {
            let c = g.over(StrandType::up(a), StrandType::up(b)).unwrap();
            for gen in ['h', 'x', 'y'] {
                let lhs = c.mul(&g.coproduct(gen, a, b).unwrap()).unwrap();
                let rhs = g.coproduct(gen, b, a).unwrap().mul(&c).unwrap();
                assert_eq!(lhs, rhs, "{} on V{} ⊗ V{}", gen, a, b);
            }
        }
    }
}

#[test]
fn quantum_dimension_and_twist() {
    let g = QGroup::generic();
    let kinked = LinkDiagram::unknot().add_kink(0, 1).unwrap();
    for n in 1..=6 {
        assert_eq!(g.qdim(n), q(n as i64));
        let id = SparseMatrix::identity(n, &Var::S);
        assert_eq!(g.qtr(&id, n).unwrap(), q(n as i64));
        let loop_value = g.colored_invariant(&LinkDiagram::unknot(), &[n], &[0]).unwrap();
        assert_eq!(loop_value, q(n as i64));
        // blackboard framing of the kinked unknot is +1
        let k = g.colored_invariant(&kinked, &[n], &[1]).unwrap();
        assert_eq!(k, g.twist(n).mul(&q(n as i64)), "twist on V{}", n);
    }
    assert_eq!(g.twist(2), Laurent::var_pow(Var::S, 3));
}

#[test]
fn hopf_link_values() {
    let g = QGroup::generic();
    let hopf = BraidWord::parse("braid 2 : s1 s1").unwrap().closure();
    for i in 1..=4 {
        for j in 1..=4 {
            let v = g.colored_invariant(&hopf, &[i, j], &[0, 0]).unwrap();
            assert_eq!(v, q((i * j) as i64), "H[{}][{}]", i, j);
        }
    }
}

#[test]
fn labeled_moves_small() {
    let g = QGroup::generic();
    let report = check_labeled_relations(&g, &tangle_relations(), |_| 4).unwrap();
    let bad: Vec<_> = report.failures().collect();
    assert!(bad.is_empty(), "{:#?}", bad);
}

#[test]
fn fusion_examples() {
    assert_eq!(fusion(2, 2, 5).unwrap(), vec![(1, 1), (3, 1)]);
    assert_eq!(fusion(2, 2, 3).unwrap(), vec![(1, 1)]);
    assert_eq!(fusion(1, 3, 6).unwrap(), vec![(3, 1)]);
    assert!(fusion(3, 1, 3).is_err());
}

#[test]
fn modular_data_at_l3() {
    let md = ModularData::new(3, RootSpec::default_for(3)).unwrap();
    assert_eq!(md.label_count(), 2);
    assert!(md.qdims[0].is_one());
    // [4] = -[2] at l = 3
    assert_eq!(md.hopf[1][1], md.qdims[1].neg());
    assert!(!md.hopf_det.is_zero());
    assert!(md.u_plus.mul(&md.u_minus).is_one());
    assert!(md.omega_hopf(2).is_zero());
    assert!(!md.omega_hopf(1).is_zero());
    let back = crate::coeff::Cyclotomic::from_json(&md.to_json()["qdims"][1]).unwrap();
    assert_eq!(back, md.qdims[1]);
}

#[test]
fn root_validation() {
    assert!(ModularData::new(4, RootSpec::with_exponent(4, 2)).is_err());
    assert!(ModularData::new(4, RootSpec::half_order(4, 1)).is_err());
    // with s of order 2l the labels V_1..V_{l-1} do not form a modular set
    let err = ModularData::new(5, RootSpec::half_order(5, 1)).unwrap_err();
    assert!(err.to_string().contains("singular"), "{}", err);
    ModularData::new(5, RootSpec::with_exponent(5, 3)).unwrap();
}

#[test]
fn cyclotomic_group_matches_specialised_generic() {
    let root = RootSpec::default_for(5);
    let qc = QGroup::at_root(root.order, root.exponent).unwrap();
    let field = qc.ring_ctx().clone();
    let trefoil = BraidWord::parse("braid 2 : s1 s1 s1").unwrap().closure();
    let g = QGroup::generic();
    for n in 1..=3 {
        let exact = qc.colored_invariant(&trefoil, &[n], &[1]).unwrap();
        let generic = g.colored_invariant(&trefoil, &[n], &[1]).unwrap();
        let spec = crate::coeff::Cyclotomic::from_laurent(&generic, &field, 1);
        assert_eq!(exact, spec);
    }
}
