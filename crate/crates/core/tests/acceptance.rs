//! End-to-end acceptance checks, one line of output per criterion.

use std::time::{Duration, Instant};

use qtangle::coeff::{quantum_integer, Cyclotomic, Laurent, Ring, Var};
use qtangle::diagram::{BraidWord, LinkDiagram, SurgeryPresentation};
use qtangle::functor::{
    check_labeled_relations, check_relations, kauffman_table, tangle_relations, LabeledTable, SparseMatrix,
    StrandType,
};
use qtangle::qgroup::{hopf_link, ModularData, QGroup, RootSpec};
use qtangle::rt::{corpus, handle_slide_pairs, rt_invariant, s3_value, tqft_dim, unitary_s3_numeric, Spine};
use qtangle::skein::{bracket_functor, bracket_statesum, jones, jones_string, loop_value, mirror};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn trefoil() -> LinkDiagram {
    BraidWord::parse("braid 2 : s1 s1 s1").unwrap().closure()
}

fn md(l: usize) -> ModularData {
    ModularData::new(l, RootSpec::default_for(l)).unwrap()
}

fn bracket_regression() -> Outcome {
    let cases = [
        (trefoil(), Laurent::parse("A^7 + A^3 + A^-1 - A^-9").unwrap()),
        (LinkDiagram::unknot(), loop_value()),
        (
            LinkDiagram::unknot().add_kink(0, 1).unwrap(),
            &Laurent::monomial(Var::A, -1, 3) * &loop_value(),
        ),
        (LinkDiagram::empty(), Laurent::one(Var::A)),
    ];
    for (d, expected) in cases {
        let start = Instant::now();
        let got = bracket_statesum(&d).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("<{}> = {}, expected {}", d, got, expected))?;
        ensure(start.elapsed() < Duration::from_secs(1), || format!("<{}> took too long", d))?;
    }
    Ok(())
}

fn jones_regression() -> Outcome {
    let right = jones_string(&jones(&trefoil()).unwrap());
    ensure(right == "t^(1/2)*(t^4 - t^2 - t - 1)", || format!("right trefoil: {}", right))?;
    let left = jones_string(&jones(&mirror(&trefoil())).unwrap());
    ensure(left == "t^(-1/2)*(t^-4 - t^-2 - t^-1 - 1)", || format!("left trefoil: {}", left))?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let b = BraidWord::random(&mut rng, 4, 8);
        let d = b.closure();
        let v = jones(&d).map_err(|e| e.to_string())?;
        let m = jones(&mirror(&d)).map_err(|e| e.to_string())?;
        ensure(m == v.invert_var(), || format!("mirror relation fails for {}", b))?;
    }
    Ok(())
}

fn dual_algorithm() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let b = BraidWord::random(&mut rng, 5, 10);
        let d = b.closure();
        let s = bracket_statesum(&d).map_err(|e| e.to_string())?;
        let f = bracket_functor(&d).map_err(|e| format!("{}: {}", b, e))?;
        ensure(s == f, || format!("{}: state sum {} but functor {}", b, s, f))?;
    }
    Ok(())
}

fn relation_suite() -> Outcome {
    let k = check_relations(&kauffman_table()).map_err(|e| e.to_string())?;
    ensure(k.all_passed(), || format!("Kauffman table: {:?}", k.failures().collect::<Vec<_>>()))?;
    let g = QGroup::generic();
    let labeled = check_labeled_relations(&g, &tangle_relations(), |_| 4).map_err(|e| e.to_string())?;
    ensure(labeled.all_passed(), || {
        format!("labeled table: {:?}", labeled.failures().collect::<Vec<_>>())
    })?;
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                let id = |n: usize| SparseMatrix::identity(n, &Var::S);
                let cr = |x: usize, y: usize| (*g.over(StrandType::up(x), StrandType::up(y)).unwrap()).clone();
                // braid relation on V_a ⊗ V_b ⊗ V_c, rightmost factor applied first
                let lhs = cr(b, c)
                    .kron(&id(a))
                    .mul(&id(b).kron(&cr(a, c)))
                    .and_then(|m| m.mul(&cr(a, b).kron(&id(c))))
                    .map_err(|e| e.to_string())?;
                let rhs = id(c)
                    .kron(&cr(a, b))
                    .mul(&cr(a, c).kron(&id(b)))
                    .and_then(|m| m.mul(&id(a).kron(&cr(b, c))))
                    .map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || format!("Yang-Baxter fails on V{} ⊗ V{} ⊗ V{}", a, b, c))?;
            }
        }
    }
    Ok(())
}

fn quantum_group_identities() -> Outcome {
    let g = QGroup::generic();
    let comm = |a: &SparseMatrix<Laurent>, b: &SparseMatrix<Laurent>| {
        a.mul(b).unwrap().sub(&b.mul(a).unwrap()).unwrap()
    };
    for n in 1..=8 {
        let (h, x, y) = (g.rep_h(n), g.rep_x(n), g.rep_y(n));
        ensure(comm(&h, &x) == x.scale(&g.int(2)), || format!("[h,x] on V{}", n))?;
        ensure(comm(&h, &y) == y.scale(&g.int(-2)), || format!("[h,y] on V{}", n))?;
        let weights = g.weights(StrandType::up(n));
        let diag = SparseMatrix::from_entries(
            n,
            n,
            &Var::S,
            weights.iter().enumerate().map(|(i, &w)| (i, i, quantum_integer(w, Var::S))),
        );
        ensure(comm(&x, &y) == diag, || format!("[x,y] on V{}", n))?;
        ensure(g.qdim(n) == quantum_integer(n as i64, Var::S), || format!("qdim V{}", n))?;
    }
    let hopf = hopf_link();
    for i in 1..=5 {
        for j in 1..=5 {
            let v = g.colored_invariant(&hopf, &[i, j], &[0, 0]).map_err(|e| e.to_string())?;
            ensure(v == quantum_integer((i * j) as i64, Var::S), || format!("generic Hopf ({}, {})", i, j))?;
        }
    }
    for l in 3..=7 {
        let root = RootSpec::default_for(l);
        let q = QGroup::at_root(root.order, root.exponent).map_err(|e| e.to_string())?;
        for i in 1..=5.min(l - 1) {
            for j in 1..=5.min(l - 1) {
                let v = q.colored_invariant(&hopf, &[i, j], &[0, 0]).map_err(|e| e.to_string())?;
                ensure(v == q.qint((i * j) as i64), || format!("Hopf ({}, {}) at l = {}", i, j, l))?;
            }
        }
    }
    Ok(())
}

fn modular_data() -> Outcome {
    for l in 3..=12 {
        let m = ModularData::new(l, RootSpec::default_for(l)).map_err(|e| e.to_string())?;
        let n = m.label_count();
        for i in 0..n {
            for j in 0..n {
                ensure(m.hopf[i][j] == m.hopf[j][i], || format!("H not symmetric at l = {}", l))?;
            }
        }
        ensure(!m.hopf_det.is_zero(), || format!("det H = 0 at l = {}", l))?;
        for i in m.labels() {
            let lhs = m.fusion_times_qdims(i);
            for (k, v) in lhs.iter().enumerate() {
                let rhs = m.qdims[i - 1].mul(&m.qdims[k]);
                ensure(*v == rhs, || format!("fusion eigenvector fails for λ{} at l = {}", i, l))?;
            }
            let expected_zero = i != 1;
            ensure(m.omega_hopf(i).is_zero() == expected_zero, || {
                format!("ω-Hopf value for λ{} at l = {}", i, l)
            })?;
        }
    }
    Ok(())
}

fn unknot(p: i64) -> SurgeryPresentation {
    SurgeryPresentation::unknot(p)
}

/// `C^{sign p} K^{-1} qdim(ω)^{-1/2} Σ [n]^2 θ_n^p` from raw root powers.
fn lens_oracle(m: &ModularData, p: i64) -> qtangle::coeff::SqrtExt {
    let f = &m.field;
    let s = |k: i64| Cyclotomic::zeta_pow(f, m.root.exponent * k);
    let qint = |n: i64| s(2 * n).sub(&s(-2 * n)).mul(&s(2).sub(&s(-2)).inv().unwrap());
    let sum = |p: i64| {
        (1..m.l as i64).fold(Cyclotomic::zero(f), |acc, n| {
            let d = qint(n);
            acc.add(&d.mul(&d).mul(&s((n * n - 1) * p)))
        })
    };
    let base = |x: Cyclotomic| qtangle::coeff::SqrtExt::from_base(&m.sqrt_field, x);
    let root = qtangle::coeff::SqrtExt::sqrt(&m.sqrt_field);
    let root_inv = root.inv().unwrap();
    let c = root.mul(&base(sum(1)).inv().unwrap());
    let c_sign = match p.signum() {
        1 => c,
        -1 => c.inv().unwrap(),
        _ => qtangle::coeff::SqrtExt::one(&m.sqrt_field),
    };
    c_sign.mul(&root_inv).mul(&root_inv).mul(&base(sum(p)))
}

fn rt_invariants() -> Outcome {
    let err = |e: qtangle::Error| e.to_string();
    for l in 3..=5 {
        let m = md(l);
        let s3 = s3_value(&m);
        let pair = SurgeryPresentation::new(LinkDiagram::unlink(2), vec![1, -1]).unwrap();
        for p in [SurgeryPresentation::empty(), unknot(1), pair] {
            let z = rt_invariant(&p, &m).map_err(err)?.corrected;
            ensure(z == s3, || format!("S^3 from {} at l = {}", p, l))?;
        }
        ensure(rt_invariant(&unknot(0), &m).map_err(err)?.corrected.is_one(), || {
            format!("S^1 x S^2 at l = {}", l)
        })?;
        for p in (-5..=5i64).filter(|&p| p != 0) {
            let z = rt_invariant(&unknot(p), &m).map_err(err)?.corrected;
            ensure(z == lens_oracle(&m, p), || format!("L({}, 1) at l = {}", p, l))?;
        }
        for (name, p) in corpus() {
            let z = rt_invariant(&p, &m).map_err(err)?.corrected;
            for sign in [1, -1] {
                let zs = rt_invariant(&p.stabilize(sign).map_err(err)?, &m).map_err(err)?.corrected;
                ensure(zs == z, || format!("stabilization of {} by {:+} at l = {}", name, sign, l))?;
            }
        }
        for (name, a, b) in handle_slide_pairs() {
            let za = rt_invariant(&a, &m).map_err(err)?;
            let zb = rt_invariant(&b, &m).map_err(err)?;
            ensure(za == zb, || format!("handle slide {} at l = {}", name, l))?;
        }
    }
    Ok(())
}

fn tqft_dimensions() -> Outcome {
    let err = |e: qtangle::Error| e.to_string();
    for l in 2..=12 {
        ensure(tqft_dim(1, l).map_err(err)? == (l - 1) as u64, || format!("genus 1 at l = {}", l))?;
    }
    ensure(tqft_dim(2, 3).map_err(err)? == 4, || "genus 2 at l = 3".to_string())?;
    let budget = qtangle::rt::DEFAULT_MAX_COST;
    for l in 3..=6 {
        let g2 = [
            Spine::caterpillar(2).map_err(err)?,
            Spine::necklace(2).map_err(err)?,
            Spine::theta(),
        ];
        let g3 = [
            Spine::caterpillar(3).map_err(err)?,
            Spine::necklace(3).map_err(err)?,
            Spine::tetrahedron(),
        ];
        for family in [&g2[..], &g3[..]] {
            let counts: Vec<u64> = family
                .iter()
                .map(|s| s.count_labelings(l, budget))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            ensure(counts.windows(2).all(|w| w[0] == w[1]), || {
                format!("spines disagree at genus {} and l = {}: {:?}", family[0].genus(), l, counts)
            })?;
        }
    }
    Ok(())
}

fn unitary_numeric() -> Outcome {
    for l in 3..=12 {
        let z = s3_value(&md(l)).to_complex();
        let expected = unitary_s3_numeric(l);
        ensure((z.re - expected).abs() < 1e-9 && z.im.abs() < 1e-9, || {
            format!("l = {}: {} vs {}", l, z, expected)
        })?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("bracket regression", 4, bracket_regression),
        ("Jones regression and mirror relation", 10, jones_regression),
        ("state sum equals functor on random braids", 60, dual_algorithm),
        ("relation suite and Yang-Baxter", 120, relation_suite),
        ("quantum group identities", 120, quantum_group_identities),
        ("modular data for l = 3..12", 120, modular_data),
        ("surgery invariants and Kirby moves", 300, rt_invariants),
        ("surface state-space dimensions", 60, tqft_dimensions),
        ("unitary numeric value of Z(S^3)", 60, unitary_numeric),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(*budget) {
            outcome = Err(format!("took {:.1} s, budget {} s", elapsed.as_secs_f64(), budget));
        }
        match &outcome {
            Ok(()) => println!("criterion {}: PASS  {} ({:.2} s)", i + 1, name, elapsed.as_secs_f64()),
            Err(e) => {
                println!("criterion {}: FAIL  {} ({:.2} s): {}", i + 1, name, elapsed.as_secs_f64(), e);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}
