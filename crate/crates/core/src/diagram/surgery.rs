use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::Value;

use super::braid::BraidWord;
use super::pd::LinkDiagram;
use crate::error::{Error, Result};

/// A framed link in S³: a diagram plus an absolute integer framing for each
/// component, in component order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryPresentation {
    diagram: LinkDiagram,
    framings: Vec<i64>,
}

impl SurgeryPresentation {
    pub fn new(diagram: LinkDiagram, framings: Vec<i64>) -> Result<Self> {
        if framings.len() != diagram.component_count() {
            return Err(Error::invalid(format!(
                "{} framings given for {} components",
                framings.len(),
                diagram.component_count()
            )));
        }
        if !diagram.is_oriented() {
            return Err(Error::invalid("surgery diagrams must carry an orientation"));
        }
        Ok(SurgeryPresentation { diagram, framings })
    }

    /// The empty presentation of S³.
    pub fn empty() -> Self {
        SurgeryPresentation {
            diagram: LinkDiagram::empty(),
            framings: Vec::new(),
        }
    }

    /// The `p`-framed unknot.
    pub fn unknot(p: i64) -> Self {
        SurgeryPresentation {
            diagram: LinkDiagram::unknot(),
            framings: vec![p],
        }
    }

    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn component_count(&self) -> usize {
        self.framings.len()
    }

    /// Off-diagonal entries are linking numbers, the diagonal holds framings.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let c = self.component_count();
        let mut m = vec![vec![0i64; c]; c];
        for i in 0..c {
            m[i][i] = self.framings[i];
            for j in i + 1..c {
                let lk = self.diagram.linking_number(i, j).expect("oriented");
                m[i][j] = lk;
                m[j][i] = lk;
            }
        }
        m
    }

    pub fn signature(&self) -> i64 {
        signature(&self.linking_matrix()).expect("linking matrices are symmetric")
    }

    /// Add a disjoint `sign`-framed unknot as the last component.
    pub fn stabilize(&self, sign: i64) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::invalid("stabilization sign must be +1 or -1"));
        }
        let mut framings = self.framings.clone();
        framings.push(sign);
        Ok(SurgeryPresentation {
            diagram: self.diagram.disjoint_union(&LinkDiagram::unknot()),
            framings,
        })
    }

    pub fn disjoint_union(&self, other: &SurgeryPresentation) -> Self {
        let mut framings = self.framings.clone();
        framings.extend_from_slice(&other.framings);
        SurgeryPresentation {
            diagram: self.diagram.disjoint_union(&other.diagram),
            framings,
        }
    }

    /// Same 3-manifold data with a kink of `sign` on component `k`; the
    /// absolute framing is unchanged.
    pub fn add_kink(&self, k: usize, sign: i8) -> Result<Self> {
        Ok(SurgeryPresentation {
            diagram: self.diagram.add_kink(k, sign)?,
            framings: self.framings.clone(),
        })
    }

    /// Parse a surgery file: a braid or PD description followed by a line
    /// `framings: [f1, ..., fk]`. Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut framings = None;
        let mut body = String::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let t = line.trim();
            if let Some(rest) = t.strip_prefix("framings:") {
                let inner = rest.trim();
                let inner = inner
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| Error::parse(offset, "framings must be written as [f1, f2, ...]"))?;
                let mut v = Vec::new();
                for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    v.push(
                        part.parse::<i64>()
                            .map_err(|_| Error::parse(offset, format!("bad framing '{}'", part)))?,
                    );
                }
                framings = Some(v);
            } else if !t.is_empty() && !t.starts_with('#') {
                body.push_str(t);
                body.push(' ');
            }
            offset += line.len();
        }
        let framings = framings.ok_or_else(|| Error::parse(text.len(), "missing 'framings:' line"))?;
        let diagram = parse_link(body.trim())?;
        Self::new(diagram, framings)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "diagram": self.diagram.to_json(),
            "framings": self.framings,
        })
    }

    /// Accepts `{"diagram": <PD JSON>, "framings": [...]}` or
    /// `{"braid": <braid JSON>, "framings": [...]}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let framings: Vec<i64> = serde_json::from_value(value["framings"].clone())
            .map_err(|e| Error::parse(0, format!("framings: {}", e)))?;
        let diagram = if !value["diagram"].is_null() {
            LinkDiagram::from_json(&value["diagram"])?
        } else if !value["braid"].is_null() {
            BraidWord::from_json(&value["braid"])?.closure()
        } else {
            return Err(Error::parse(0, "surgery JSON needs 'diagram' or 'braid'"));
        };
        Self::new(diagram, framings)
    }
}

/// A link given either as `braid n : ...` (closed up) or as PD text.
pub fn parse_link(text: &str) -> Result<LinkDiagram> {
    if text.trim_start().starts_with("braid") {
        Ok(BraidWord::parse(text)?.closure())
    } else {
        LinkDiagram::parse(text)
    }
}

impl fmt::Display for SurgeryPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fr: Vec<String> = self.framings.iter().map(|x| x.to_string()).collect();
        writeln!(f, "{}", self.diagram)?;
        write!(f, "framings: [{}]", fr.join(", "))
    }
}

/// Signature of a symmetric integer matrix by symmetric Gaussian elimination
/// over the rationals.
pub fn signature(m: &[Vec<i64>]) -> Result<i64> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::invalid("signature needs a square matrix"));
        }
        for j in 0..n {
            if row[j] != m[j][i] {
                return Err(Error::invalid("signature needs a symmetric matrix"));
            }
        }
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut sig = 0i64;
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        let pivot = live.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // all remaining diagonal entries vanish; look for an off-diagonal one
                let pair = live
                    .iter()
                    .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => break,
                    Some((i, j)) => {
                        // row_i += row_j, col_i += col_j (a congruence)
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let d = a[p][p].clone();
        sig += if d.is_positive() { 1 } else { -1 };
        live.retain(|&i| i != p);
        for &i in &live {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &live {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
        }
        for &i in &live {
            a[i][p] = BigRational::zero();
            a[p][i] = BigRational::zero();
        }
    }
    Ok(sig)
}
