use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coeff::{Cyclotomic, Ring, SqrtExt};
use crate::diagram::SurgeryPresentation;
use crate::error::{Error, Result};
use crate::qgroup::{ModularData, QGroup};

/// Default ceiling on the number of label tuples a coloring sum may visit.
pub const DEFAULT_MAX_COST: u64 = 10_000_000;

/// The surgery invariant of a closed 3-manifold in both normalizations.
#[derive(Clone, Debug, PartialEq)]
pub struct RtValue {
    /// `K^{-1} F(L labeled by Ω)`, which depends on the linking-matrix signature.
    pub biframed: SqrtExt,
    /// `C^σ` times the biframed value, a framing-independent invariant.
    pub corrected: SqrtExt,
    pub signature: i64,
}

impl RtValue {
    pub fn numeric(&self) -> Complex64 {
        self.corrected.to_complex()
    }

    pub fn to_json(&self) -> Value {
        let c = self.numeric();
        let b = self.biframed.to_complex();
        json!({
            "corrected": self.corrected,
            "biframed": self.biframed,
            "signature": self.signature,
            "numeric": {"re": c.re, "im": c.im},
            "biframed_numeric": {"re": b.re, "im": b.im},
        })
    }
}

/// `x^k` for any integer `k`.
fn power(x: &SqrtExt, k: i64) -> Result<SqrtExt> {
    if k >= 0 {
        Ok(x.pow(k as u64))
    } else {
        Ok(x.inv()?.pow(k.unsigned_abs()))
    }
}

/// The number of label tuples a coloring sum over `p` visits.
pub fn coloring_cost(p: &SurgeryPresentation, md: &ModularData) -> u64 {
    (md.label_count() as u64).saturating_pow(p.component_count() as u32)
}

/// `Σ over labelings n of Π [n_i] F(L; n)`, the Ω-sum before scaling.
pub fn coloring_sum(p: &SurgeryPresentation, md: &ModularData, max_cost: u64) -> Result<Cyclotomic> {
    let c = p.component_count();
    let labels = md.label_count();
    let cost = coloring_cost(p, md);
    if cost > max_cost || (c > 8 && md.l > 6) {
        return Err(Error::Refused(format!(
            "{} components at l = {} need {} label tuples (limit {})",
            c, md.l, cost, max_cost
        )));
    }
    let q = QGroup::at_root(md.root.order, md.root.exponent)?;
    let tuples: Vec<Vec<usize>> = (0..cost)
        .map(|mut code| {
            (0..c)
                .map(|_| {
                    let n = (code % labels as u64) as usize + 1;
                    code /= labels as u64;
                    n
                })
                .collect()
        })
        .collect();
    let terms: Vec<Cyclotomic> = tuples
        .par_iter()
        .map(|ns| -> Result<Cyclotomic> {
            let f = q.colored_invariant(p.diagram(), ns, p.framings())?;
            Ok(ns.iter().fold(f, |acc, &n| acc.mul(&md.qdims[n - 1])))
        })
        .collect::<Result<_>>()?;
    Ok(terms
        .iter()
        .fold(Cyclotomic::zero(&md.field), |acc, t| acc.add(t)))
}

/// The surgery invariant `Z = C^σ K^{-1} K^{-c} Σ_n Π[n_i] F(L; n)`.
pub fn rt_invariant(p: &SurgeryPresentation, md: &ModularData) -> Result<RtValue> {
    rt_invariant_with(p, md, DEFAULT_MAX_COST)
}

pub fn rt_invariant_with(p: &SurgeryPresentation, md: &ModularData, max_cost: u64) -> Result<RtValue> {
    let sum = md.lift(&coloring_sum(p, md, max_cost)?);
    let c = p.component_count() as i64;
    let biframed = sum.mul(&power(&md.k, -1 - c)?);
    let signature = p.signature();
    let corrected = biframed.mul(&power(&md.c, signature)?);
    Ok(RtValue {
        biframed,
        corrected,
        signature,
    })
}

/// `Z(S^3) = K^{-1}`.
pub fn s3_value(md: &ModularData) -> SqrtExt {
    md.k_inv.clone()
}

/// `√(2/l)·sin(π/l)`, the value of `K^{-1}` at the unitary root.
pub fn unitary_s3_numeric(l: usize) -> f64 {
    (2.0 / l as f64).sqrt() * (std::f64::consts::PI / l as f64).sin()
}
