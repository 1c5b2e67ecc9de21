use std::fmt;

use serde::{Deserialize, Serialize};

use super::pd::{Crossing, LinkDiagram};
use crate::error::{Error, Result};

/// A word in the braid group on `strands` strands. Letter `(i, true)` is `σ_i`,
/// `(i, false)` its inverse; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, bool)>,
}

#[derive(Serialize, Deserialize)]
struct BraidJson {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, bool)>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::invalid("a braid needs at least one strand"));
        }
        for &(i, _) in &letters {
            if i == 0 || i >= strands {
                return Err(Error::invalid(format!(
                    "generator s{} out of range for {} strands",
                    i, strands
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    /// A uniformly random word with `2..=max_strands` strands and
    /// `0..=max_crossings` letters.
    pub fn random<G: rand::Rng>(rng: &mut G, max_strands: usize, max_crossings: usize) -> Self {
        let strands = rng.gen_range(2..=max_strands.max(2));
        let len = rng.gen_range(0..=max_crossings);
        let letters = (0..len)
            .map(|_| (rng.gen_range(1..strands), rng.gen_bool(0.5)))
            .collect();
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, bool)] {
        &self.letters
    }

    /// The underlying permutation: `perm[i]` is the bottom position of the
    /// strand ending at top position `i` (both 0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.strands).collect();
        for &(i, _) in &self.letters {
            pos.swap(i - 1, i);
        }
        pos
    }

    pub fn cycle_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, !s)).collect(),
        }
    }

    /// Mirror image: every letter changes sign.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|&(i, s)| (i, !s)).collect(),
        }
    }

    /// Parse `braid <n> : s1 s2' ...`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        let offset = text.len() - trimmed.len();
        let rest = trimmed
            .strip_prefix("braid")
            .ok_or_else(|| Error::parse(offset, "expected 'braid'"))?;
        let colon = rest
            .find(':')
            .ok_or_else(|| Error::parse(offset + 5, "expected ':' after the strand count"))?;
        let count_text = rest[..colon].trim();
        let strands: usize = count_text
            .parse()
            .map_err(|_| Error::parse(offset + 5, format!("bad strand count '{}'", count_text)))?;
        if strands == 0 {
            return Err(Error::parse(offset + 5, "a braid needs at least one strand"));
        }
        let body_start = offset + 5 + colon + 1;
        let body = &rest[colon + 1..];
        let mut letters = Vec::new();
        let mut idx = 0;
        for token in body.split_whitespace() {
            let pos = body_start + body[idx..].find(token).unwrap() + idx;
            idx = pos - body_start + token.len();
            let (core, positive) = match token.strip_suffix('\'') {
                Some(c) => (c, false),
                None => (token, true),
            };
            let index = core
                .strip_prefix('s')
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| Error::parse(pos, format!("malformed braid letter '{}'", token)))?;
            if index == 0 || index >= strands {
                return Err(Error::parse(
                    pos,
                    format!("generator '{}' out of range for {} strands", token, strands),
                ));
            }
            letters.push((index, positive));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(BraidJson {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .map(|&(i, s)| if s { i as i64 } else { -(i as i64) })
                .collect(),
        })
        .expect("braid JSON")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: BraidJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::parse(0, format!("braid JSON: {}", e)))?;
        let letters = raw
            .letters
            .iter()
            .map(|&l| (l.unsigned_abs() as usize, l > 0))
            .collect();
        Self::new(raw.strands, letters)
    }

    /// Trace closure as a planar diagram. Components are listed in order of
    /// their lowest strand position.
    pub fn closure(&self) -> LinkDiagram {
        let n = self.strands;
        let mut next = n as u32 + 1;
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        let mut crossings = Vec::with_capacity(self.letters.len());
        for &(i, positive) in &self.letters {
            let p = i - 1;
            let (in_l, in_r) = (cur[p], cur[p + 1]);
            let (out_l, out_r) = (next, next + 1);
            next += 2;
            crossings.push(if positive {
                Crossing::new([in_r, out_r, out_l, in_l], 1)
            } else {
                Crossing::new([in_l, in_r, out_r, out_l], -1)
            });
            cur[p] = out_l;
            cur[p + 1] = out_r;
        }
        // the arc leaving the top at position i is the arc entering the bottom there
        let mut rename: std::collections::HashMap<u32, u32> = Default::default();
        for (i, &top) in cur.iter().enumerate() {
            if top != i as u32 + 1 {
                rename.insert(top, i as u32 + 1);
            }
        }
        for c in &mut crossings {
            for a in c.arcs.iter_mut() {
                if let Some(&r) = rename.get(a) {
                    *a = r;
                }
            }
        }
        let provisional =
            LinkDiagram::with_signs(crossings.clone(), 0).expect("braid closures are valid diagrams");
        let mut seen = std::collections::HashSet::new();
        let mut reps = Vec::new();
        for i in 1..=n as u32 {
            match provisional.arc_component(i) {
                Some(k) => {
                    if seen.insert(k) {
                        reps.push(Some(i));
                    }
                }
                None => reps.push(None),
            }
        }
        LinkDiagram::from_parts(crossings, reps)
            .expect("braid closures are valid diagrams")
            .canonical()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "braid {} :", self.strands)?;
        for &(i, s) in &self.letters {
            write!(f, " s{}{}", i, if s { "" } else { "'" })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let b = BraidWord::parse("braid 2 : s1 s1 s1").unwrap();
        assert_eq!(b.letters(), &[(1, true); 3]);
        let id = BraidWord::parse("braid 3 :").unwrap();
        assert_eq!(id.strands(), 3);
        assert!(id.letters().is_empty());
        let err = BraidWord::parse("braid 2 : s5").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 10, .. }), "{:?}", err);
        assert!(BraidWord::parse("braid 2 : t1").is_err());
        assert!(BraidWord::parse("brad 2 : s1").is_err());
    }

    #[test]
    fn closures() {
        let unknot = BraidWord::identity(1).closure();
        assert_eq!(unknot.crossings().len(), 0);
        assert_eq!(unknot.component_count(), 1);
        let trefoil = BraidWord::parse("braid 2 : s1 s1 s1").unwrap().closure();
        assert_eq!(trefoil.crossings().len(), 3);
        assert_eq!(trefoil.component_count(), 1);
        let hopf = BraidWord::parse("braid 2 : s1 s1").unwrap().closure();
        assert_eq!(hopf.component_count(), 2);
    }

    fn arb_braid() -> impl Strategy<Value = BraidWord> {
        (1usize..6).prop_flat_map(|n| {
            let letter = if n > 1 {
                (1..n, any::<bool>()).boxed()
            } else {
                Just((1usize, true)).boxed()
            };
            let len = if n > 1 { 0..12usize } else { 0..1usize };
            prop::collection::vec(letter, len).prop_map(move |l| BraidWord::new(n, l).unwrap())
        })
    }

    proptest! {
        #[test]
        fn roundtrip(b in arb_braid()) {
            prop_assert_eq!(BraidWord::parse(&b.to_string()).unwrap(), b.clone());
            prop_assert_eq!(BraidWord::from_json(&b.to_json()).unwrap(), b);
        }

        #[test]
        fn closure_components_match_cycles(b in arb_braid()) {
            prop_assert_eq!(b.closure().component_count(), b.cycle_count());
        }
    }
}
