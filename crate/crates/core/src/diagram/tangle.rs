use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};

/// A tangle generator occupying one horizontal position in a slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    Over,
    Under,
    Cup,
    Cap,
    Id,
    Coupon {
        name: String,
        inputs: usize,
        outputs: usize,
    },
}

impl Gen {
    pub fn coupon(name: &str, inputs: usize, outputs: usize) -> Gen {
        Gen::Coupon {
            name: name.to_string(),
            inputs,
            outputs,
        }
    }

    /// `(bottom, top)` strand counts.
    pub fn arity(&self) -> (usize, usize) {
        match self {
            Gen::Over | Gen::Under => (2, 2),
            Gen::Cup => (0, 2),
            Gen::Cap => (2, 0),
            Gen::Id => (1, 1),
            Gen::Coupon {
                inputs, outputs, ..
            } => (*inputs, *outputs),
        }
    }

    fn parse(token: &str, pos: usize) -> Result<Gen> {
        let t = token.trim();
        Ok(match t {
            "over" => Gen::Over,
            "under" => Gen::Under,
            "cup" => Gen::Cup,
            "cap" => Gen::Cap,
            "id" => Gen::Id,
            _ => {
                let inner = t
                    .strip_prefix("coupon(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::parse(pos, format!("unknown generator '{}'", t)))?;
                let (name, arity) = match inner.split_once(':') {
                    Some((n, a)) => (n.trim(), Some(a)),
                    None => (inner.trim(), None),
                };
                if name.is_empty() {
                    return Err(Error::parse(pos, "coupon needs a name"));
                }
                let (inputs, outputs) = match arity {
                    None => (1, 1),
                    Some(a) => {
                        let (i, o) = a
                            .split_once("->")
                            .ok_or_else(|| Error::parse(pos, "coupon arity must be 'in->out'"))?;
                        let p = |x: &str| {
                            x.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::parse(pos, format!("bad coupon arity '{}'", a)))
                        };
                        (p(i)?, p(o)?)
                    }
                };
                Gen::coupon(name, inputs, outputs)
            }
        })
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Over => f.write_str("over"),
            Gen::Under => f.write_str("under"),
            Gen::Cup => f.write_str("cup"),
            Gen::Cap => f.write_str("cap"),
            Gen::Id => f.write_str("id"),
            Gen::Coupon {
                name,
                inputs,
                outputs,
            } => write!(f, "coupon({}:{}->{})", name, inputs, outputs),
        }
    }
}

/// A Morse-sliced tangle: slices are stacked bottom to top, each a horizontal
/// tensor product of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TangleWord {
    slices: Vec<Vec<Gen>>,
}

fn slice_arity(slice: &[Gen]) -> (usize, usize) {
    slice.iter().fold((0, 0), |(i, o), g| {
        let (a, b) = g.arity();
        (i + a, o + b)
    })
}

impl TangleWord {
    pub fn new(slices: Vec<Vec<Gen>>) -> Result<Self> {
        let w = TangleWord { slices };
        w.validate()?;
        Ok(w)
    }

    pub fn empty() -> Self {
        TangleWord::default()
    }

    pub fn validate(&self) -> Result<()> {
        for k in 1..self.slices.len() {
            let below = slice_arity(&self.slices[k - 1]).1;
            let above = slice_arity(&self.slices[k]).0;
            if below != above {
                return Err(Error::invalid(format!(
                    "slice {} expects {} strands but slice {} provides {}",
                    k + 1,
                    above,
                    k,
                    below
                )));
            }
        }
        Ok(())
    }

    pub fn slices(&self) -> &[Vec<Gen>] {
        &self.slices
    }

    pub fn domain(&self) -> usize {
        self.slices.first().map_or(0, |s| slice_arity(s).0)
    }

    pub fn codomain(&self) -> usize {
        self.slices.last().map_or(0, |s| slice_arity(s).1)
    }

    pub fn is_closed(&self) -> bool {
        self.domain() == 0 && self.codomain() == 0
    }

    /// `self` followed by `other` on top.
    pub fn then(&self, other: &TangleWord) -> Result<TangleWord> {
        let mut slices = self.slices.clone();
        slices.extend(other.slices.iter().cloned());
        if !self.slices.is_empty() && !other.slices.is_empty() && self.codomain() != other.domain() {
            return Err(Error::invalid(format!(
                "cannot compose: codomain {} against domain {}",
                self.codomain(),
                other.domain()
            )));
        }
        TangleWord::new(slices)
    }

    /// Side-by-side placement, padding the shorter word with identity strands.
    pub fn beside(&self, other: &TangleWord) -> TangleWord {
        let n = self.slices.len().max(other.slices.len());
        let pad = |w: &TangleWord, k: usize| -> Vec<Gen> {
            match w.slices.get(k) {
                Some(s) => s.clone(),
                None => vec![Gen::Id; w.codomain()],
            }
        };
        let slices = (0..n)
            .map(|k| {
                let mut s = pad(self, k);
                s.extend(pad(other, k));
                s
            })
            .collect();
        TangleWord { slices }
    }

    pub fn crossing_count(&self) -> usize {
        self.slices
            .iter()
            .flatten()
            .filter(|g| matches!(g, Gen::Over | Gen::Under))
            .count()
    }

    pub fn max_width(&self) -> usize {
        self.slices
            .iter()
            .map(|s| {
                let (i, o) = slice_arity(s);
                i.max(o)
            })
            .max()
            .unwrap_or(0)
    }

    /// Parse the line-per-slice DSL: `over, id`, `cup`, `coupon(f:1->2)`, ...
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut slices = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.split('#').next().unwrap_or("");
            if !body.trim().is_empty() {
                let mut slice = Vec::new();
                let mut col = 0;
                for tok in split_top_level(body) {
                    slice.push(Gen::parse(tok, offset + col)?);
                    col += tok.len() + 1;
                }
                slices.push(slice);
            }
            offset += line.len();
        }
        TangleWord::new(slices)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "slices": self.slices.iter().map(|s| s.iter().map(|g| g.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let slices = value["slices"]
            .as_array()
            .ok_or_else(|| Error::parse(0, "tangle JSON needs a 'slices' array"))?;
        let mut out = Vec::new();
        for s in slices {
            let gens = s
                .as_array()
                .ok_or_else(|| Error::parse(0, "each slice must be an array"))?;
            let mut slice = Vec::new();
            for g in gens {
                let t = g
                    .as_str()
                    .ok_or_else(|| Error::parse(0, "generators must be strings"))?;
                slice.push(Gen::parse(t, 0)?);
            }
            out.push(slice);
        }
        TangleWord::new(out)
    }
}

fn split_top_level(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in line.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&line[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&line[start..]);
    out.into_iter().filter(|t| !t.trim().is_empty()).collect()
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.slices.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            let parts: Vec<String> = s.iter().map(|g| g.to_string()).collect();
            f.write_str(&parts.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dsl_roundtrip() {
        let text = "cup, cup\nid, over, id\n# comment\ncoupon(f:2->2), id, id\ncap, cap\n";
        let w = TangleWord::parse(text).unwrap();
        assert_eq!(w.slices().len(), 4);
        assert!(w.is_closed());
        assert_eq!(TangleWord::parse(&w.to_string()).unwrap(), w);
        assert_eq!(TangleWord::from_json(&w.to_json()).unwrap(), w);
    }

    #[test]
    fn arity_errors_name_the_slice() {
        let err = TangleWord::parse("cup\nover, id").unwrap_err();
        assert!(err.to_string().contains("slice 2"), "{}", err);
        assert!(TangleWord::parse("twist").is_err());
        assert!(TangleWord::parse("coupon(f:x)").is_err());
    }

    #[test]
    fn default_coupon_arity() {
        let w = TangleWord::parse("coupon(g)").unwrap();
        assert_eq!(w.slices()[0][0], Gen::coupon("g", 1, 1));
        assert_eq!((w.domain(), w.codomain()), (1, 1));
    }
}
