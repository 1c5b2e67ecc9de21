use crate::diagram::SurgeryPresentation;
use crate::error::{Error, Result};
use crate::functor::{RelationCheck, RelationReport};
use crate::qgroup::ModularData;

use super::invariant::rt_invariant;

const CORPUS: &[(&str, &str)] = &[
    ("unknot_0", include_str!("../../data/corpus/unknot_0.surgery")),
    ("unknot_p1", include_str!("../../data/corpus/unknot_p1.surgery")),
    ("unknot_m3", include_str!("../../data/corpus/unknot_m3.surgery")),
    ("hopf_0_0", include_str!("../../data/corpus/hopf_0_0.surgery")),
    ("hopf_2_m1", include_str!("../../data/corpus/hopf_2_m1.surgery")),
    ("trefoil_p1", include_str!("../../data/corpus/trefoil_p1.surgery")),
    ("trefoil_m1", include_str!("../../data/corpus/trefoil_m1.surgery")),
    ("figure_eight_0", include_str!("../../data/corpus/figure_eight_0.surgery")),
    ("chain_1_2_m1", include_str!("../../data/corpus/chain_1_2_m1.surgery")),
    ("unlink_2_m2", include_str!("../../data/corpus/unlink_2_m2.surgery")),
];

const HANDLE_SLIDES: &[(&str, &str)] = &[
    ("hopf_0_0_to_2_0", include_str!("../../data/handle_slides/hopf_0_0_to_2_0.surgery")),
    ("hopf_0_0_to_m2_0", include_str!("../../data/handle_slides/hopf_0_0_to_m2_0.surgery")),
    ("unlink_2_p1", include_str!("../../data/handle_slides/unlink_2_p1.surgery")),
    ("unlink_2_m1", include_str!("../../data/handle_slides/unlink_2_m1.surgery")),
    ("unlink_m3_p1", include_str!("../../data/handle_slides/unlink_m3_p1.surgery")),
    ("hopf_unknot_to_chain_a", include_str!("../../data/handle_slides/hopf_unknot_to_chain_a.surgery")),
    ("hopf_unknot_to_chain_b", include_str!("../../data/handle_slides/hopf_unknot_to_chain_b.surgery")),
    ("trefoil_meridian", include_str!("../../data/handle_slides/trefoil_meridian.surgery")),
];

/// The built-in surgery corpus, including the empty presentation of `S^3`.
pub fn corpus() -> Vec<(String, SurgeryPresentation)> {
    let mut out = vec![("empty".to_string(), SurgeryPresentation::empty())];
    for (name, text) in CORPUS {
        out.push((name.to_string(), SurgeryPresentation::parse(text).expect("corpus file parses")));
    }
    out
}

/// Split a two-part file at its `---` line.
fn parse_pair(text: &str) -> Result<(SurgeryPresentation, SurgeryPresentation)> {
    let mut parts = text.split("\n---\n");
    let (a, b) = match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => return Err(Error::parse(0, "a handle-slide file needs exactly one '---' separator")),
    };
    Ok((SurgeryPresentation::parse(a)?, SurgeryPresentation::parse(b)?))
}

/// Pairs of presentations related by one handle slide.
pub fn handle_slide_pairs() -> Vec<(String, SurgeryPresentation, SurgeryPresentation)> {
    HANDLE_SLIDES
        .iter()
        .map(|(name, text)| {
            let (a, b) = parse_pair(text).expect("handle-slide file parses");
            (name.to_string(), a, b)
        })
        .collect()
}

/// Stabilization by `±1` unknots leaves the corrected invariant unchanged on
/// every corpus entry, and both sides of every handle-slide pair agree.
pub fn kirby_invariance_suite(md: &ModularData) -> Result<RelationReport> {
    let mut checks = Vec::new();
    for (name, p) in corpus() {
        let base = rt_invariant(&p, md)?.corrected;
        for sign in [1, -1] {
            let stabilized = rt_invariant(&p.stabilize(sign)?, md)?.corrected;
            checks.push(RelationCheck {
                name: "stabilization",
                instance: format!("{} with a {:+} unknot", name, sign),
                passed: stabilized == base,
            });
        }
    }
    for (name, a, b) in handle_slide_pairs() {
        let za = rt_invariant(&a, md)?;
        let zb = rt_invariant(&b, md)?;
        checks.push(RelationCheck {
            name: "handle slide",
            instance: name,
            passed: za == zb,
        });
    }
    Ok(RelationReport { checks })
}
