use super::*;
use crate::coeff::{Cyclotomic, Ring, SqrtExt};
use crate::diagram::{LinkDiagram, SurgeryPresentation};
use crate::error::Error;
use crate::qgroup::{ModularData, RootSpec};

fn md(l: usize) -> ModularData {
    ModularData::new(l, RootSpec::default_for(l)).unwrap()
}

fn unlink(framings: &[i64]) -> SurgeryPresentation {
    SurgeryPresentation::new(LinkDiagram::unlink(framings.len()), framings.to_vec()).unwrap()
}

/// `C^{sign p} K^{-1} D^{-1} Σ [n]^2 θ_n^p` from raw powers of `s`.
fn lens_oracle(md: &ModularData, p: i64) -> SqrtExt {
    let f = &md.field;
    let e = md.root.exponent;
    let s = |k: i64| Cyclotomic::zeta_pow(f, e * k);
    let qint = |n: i64| s(2 * n).sub(&s(-2 * n)).mul(&s(2).sub(&s(-2)).inv().unwrap());
    let sum = |p: i64| {
        (1..md.l as i64).fold(Cyclotomic::zero(f), |acc, n| {
            let d = qint(n);
            acc.add(&d.mul(&d).mul(&s((n * n - 1) * p)))
        })
    };
    let base = |x: Cyclotomic| SqrtExt::from_base(&md.sqrt_field, x);
    let d = SqrtExt::sqrt(&md.sqrt_field);
    let dinv = d.inv().unwrap();
    // C = D / Σ[n]^2 θ_n
    let c = d.mul(&base(sum(1)).inv().unwrap());
    let c_sign = if p > 0 { c } else if p < 0 { c.inv().unwrap() } else { SqrtExt::one(&md.sqrt_field) };
    c_sign.mul(&dinv).mul(&dinv).mul(&base(sum(p)))
}

#[test]
fn s3_presentations() {
    for l in 3..=6 {
        let m = md(l);
        let s3 = s3_value(&m);
        for p in [
            SurgeryPresentation::empty(),
            SurgeryPresentation::unknot(1),
            SurgeryPresentation::unknot(-1),
            unlink(&[1, -1]),
        ] {
            assert_eq!(rt_invariant(&p, &m).unwrap().corrected, s3, "l = {}, {}", l, p);
        }
    }
}

#[test]
fn s1_times_s2_is_one() {
    for l in 3..=6 {
        let m = md(l);
        let z = rt_invariant(&SurgeryPresentation::unknot(0), &m).unwrap();
        assert!(z.corrected.is_one(), "l = {}", l);
    }
}

#[test]
fn lens_spaces_match_formula() {
    for l in 3..=5 {
        let m = md(l);
        for p in -5..=5i64 {
            let z = rt_invariant(&SurgeryPresentation::unknot(p), &m).unwrap();
            assert_eq!(z.corrected, lens_oracle(&m, p), "l = {}, p = {}", l, p);
        }
    }
}

#[test]
fn biframed_value_tracks_signature() {
    let m = md(4);
    let z = rt_invariant(&SurgeryPresentation::unknot(1), &m).unwrap();
    assert_eq!(z.signature, 1);
    assert_eq!(z.biframed, m.u_plus.mul(&m.k_inv));
    assert_eq!(z.corrected, z.biframed.mul(&m.c));
}

#[test]
fn numeric_s3_at_unitary_root() {
    for l in 3..=12 {
        let z = s3_value(&md(l)).to_complex();
        assert!((z.re - unitary_s3_numeric(l)).abs() < 1e-9 && z.im.abs() < 1e-9, "l = {}", l);
    }
}

#[test]
fn kirby_moves_on_corpus() {
    for l in 3..=4 {
        let report = kirby_invariance_suite(&md(l)).unwrap();
        assert!(report.all_passed(), "l = {}: {:?}", l, report.failures().collect::<Vec<_>>());
        assert!(report.checks.len() >= 2 * corpus().len() + 6);
    }
}

#[test]
fn connected_sum_is_multiplicative() {
    let m = md(4);
    let corpus = corpus();
    for (_, a) in corpus.iter().take(6) {
        for (_, b) in corpus.iter().skip(3).take(3) {
            let za = rt_invariant(a, &m).unwrap().corrected;
            let zb = rt_invariant(b, &m).unwrap().corrected;
            let zab = rt_invariant(&a.disjoint_union(b), &m).unwrap().corrected;
            assert_eq!(zab, za.mul(&zb).mul(&m.k));
        }
    }
}

#[test]
fn framing_kinks_do_not_matter() {
    let m = md(4);
    let (_, p) = corpus().into_iter().find(|(n, _)| n == "trefoil_p1").unwrap();
    let z = rt_invariant(&p, &m).unwrap();
    for sign in [1, -1] {
        assert_eq!(rt_invariant(&p.add_kink(0, sign).unwrap(), &m).unwrap(), z);
    }
}

#[test]
fn cost_guard_refuses() {
    let big = unlink(&[0; 9]);
    assert!(matches!(rt_invariant(&big, &md(7)), Err(Error::Refused(_))));
    assert!(matches!(
        rt_invariant_with(&unlink(&[0; 3]), &md(5), 10),
        Err(Error::Refused(_))
    ));
}

#[test]
fn tqft_dimensions() {
    for l in 2..=12 {
        assert_eq!(tqft_dim(0, l).unwrap(), 1);
        assert_eq!(tqft_dim(1, l).unwrap(), (l - 1) as u64);
    }
    assert_eq!(tqft_dim(2, 3).unwrap(), 4);
    for l in 3..=6 {
        let g2 = tqft_dim(2, l).unwrap();
        assert_eq!(Spine::theta().count_labelings(l, DEFAULT_MAX_COST).unwrap(), g2);
        assert_eq!(Spine::necklace(2).unwrap().count_labelings(l, DEFAULT_MAX_COST).unwrap(), g2);
        let g3 = tqft_dim(3, l).unwrap();
        assert_eq!(Spine::tetrahedron().count_labelings(l, DEFAULT_MAX_COST).unwrap(), g3);
        assert_eq!(Spine::necklace(3).unwrap().count_labelings(l, DEFAULT_MAX_COST).unwrap(), g3);
        for g in 1..=4 {
            let d = tqft_dim(g, l).unwrap() as f64;
            assert!((d - verlinde_numeric(g, l)).abs() < 1e-6, "g = {}, l = {}", g, l);
        }
    }
}

#[test]
fn spine_genus() {
    for g in 1..=6 {
        assert_eq!(Spine::caterpillar(g).unwrap().genus(), g);
        assert_eq!(Spine::necklace(g).unwrap().genus(), g);
    }
    assert_eq!(Spine::tetrahedron().genus(), 3);
    assert!(Spine::new(2, vec![[0, 0, 1]]).is_err());
}
