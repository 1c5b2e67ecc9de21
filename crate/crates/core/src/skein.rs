//! The Kauffman bracket and the Jones polynomial.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::coeff::{Laurent, Var};
use crate::diagram::{to_tangle_word, LinkDiagram};
use crate::error::{Error, Result};
use crate::functor::{eval_word, kauffman_table};

/// State sums over more crossings than this are refused.
pub const MAX_STATESUM_CROSSINGS: usize = 30;

/// `-A^2 - A^-2`, the value of a single loop.
pub fn loop_value() -> Laurent {
    -Laurent::var_pow(Var::A, 2) - Laurent::var_pow(Var::A, -2)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
        ra != rb
    }
}

/// The bracket by summing over all `2^c` smoothings. The A-smoothing of
/// `X(a,b,c,d)` joins `a` with `b` and `c` with `d`.
pub fn bracket_statesum(d: &LinkDiagram) -> Result<Laurent> {
    let crossings = d.crossings();
    let n = crossings.len();
    if n > MAX_STATESUM_CROSSINGS {
        return Err(Error::Refused(format!(
            "state sum over {} crossings exceeds the limit of {}",
            n, MAX_STATESUM_CROSSINGS
        )));
    }
    let mut index: HashMap<u32, usize> = HashMap::new();
    for c in crossings {
        for a in c.arcs {
            let k = index.len();
            index.entry(a).or_insert(k);
        }
    }
    let arcs: Vec<[usize; 4]> = crossings.iter().map(|c| c.arcs.map(|a| index[&a])).collect();
    let m = index.len();
    let free = d.free_loop_count();
    // counts[(#A - #B, loops)]
    let counts: HashMap<(i64, usize), i64> = (0..1u64 << n)
        .into_par_iter()
        .fold(HashMap::new, |mut acc, state| {
            let mut dsu = Dsu {
                parent: (0..m).collect(),
            };
            let mut loops = m;
            let mut a_minus_b = 0i64;
            for (i, x) in arcs.iter().enumerate() {
                let pairs = if state >> i & 1 == 0 {
                    a_minus_b += 1;
                    [(x[0], x[1]), (x[2], x[3])]
                } else {
                    a_minus_b -= 1;
                    [(x[0], x[3]), (x[1], x[2])]
                };
                for (u, v) in pairs {
                    if dsu.union(u, v) {
                        loops -= 1;
                    }
                }
            }
            *acc.entry((a_minus_b, loops + free)).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let delta = loop_value();
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort_unstable();
    let mut total = Laurent::zero(Var::A);
    for ((e, loops), c) in keys {
        total = &total + &(&Laurent::monomial(Var::A, c, e) * &delta.pow(loops as u64));
    }
    Ok(total)
}

/// The bracket by evaluating a Morse slicing of `d` with the Kauffman
/// generator matrices.
pub fn bracket_functor(d: &LinkDiagram) -> Result<Laurent> {
    let word = to_tangle_word(d)?;
    let m = eval_word(&word, &kauffman_table())?;
    m.as_scalar()
        .ok_or_else(|| Error::invalid("a closed diagram must evaluate to a scalar"))
}

/// The bracket, by state sum for small diagrams and by the functor otherwise.
pub fn bracket(d: &LinkDiagram) -> Result<Laurent> {
    if d.crossings().len() <= 14 {
        bracket_statesum(d)
    } else {
        bracket_functor(d)
    }
}

/// Which scalar multiple of the Jones polynomial to report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// The unknot has value `-t^(1/2) - t^(-1/2)` and the empty link 1.
    #[default]
    Unreduced,
    /// Divided by `-t^(1/2) - t^(-1/2)`, so the unknot has value 1.
    Divided,
}

/// Substitute `A = t^(-1/4)`.
fn a_to_t(p: &Laurent) -> Laurent {
    p.substitute(Var::T4, -1)
}

/// The Jones polynomial `(-A)^(-3w) <d>` at `A = t^(-1/4)`, as a Laurent
/// polynomial in `t^(1/4)`.
pub fn jones(d: &LinkDiagram) -> Result<Laurent> {
    jones_with(d, Normalization::Unreduced)
}

pub fn jones_with(d: &LinkDiagram, norm: Normalization) -> Result<Laurent> {
    if !d.is_oriented() {
        return Err(Error::invalid("the Jones polynomial needs an oriented diagram"));
    }
    let w = d.writhe()?;
    let factor = Laurent::monomial(Var::A, if w % 2 == 0 { 1 } else { -1 }, -3 * w);
    let v = a_to_t(&(&factor * &bracket(d)?));
    match norm {
        Normalization::Unreduced => Ok(v),
        Normalization::Divided => {
            if d.component_count() == 0 {
                return Err(Error::invalid("the divided normalization is undefined for the empty link"));
            }
            v.exact_div(&a_to_t(&loop_value()))
        }
    }
}

/// Render a Jones value as `t^(1/2)*(t^4 - t^2 - t - 1)`: a fractional power
/// of `t` times a polynomial in integer powers of `t`. The fractional power is
/// chosen so that the exponents of the bracketed part lie as close to zero as
/// possible, preferring a positive prefactor on ties.
pub fn jones_string(v: &Laurent) -> String {
    debug_assert_eq!(v.var(), Var::T4);
    let lo = match v.min_exp() {
        None => return "0".to_string(),
        Some(e) => e,
    };
    let r = lo.rem_euclid(4);
    if r == 0 || v.terms().iter().any(|&(e, _)| (e - lo).rem_euclid(4) != 0) {
        return v.canonical_string();
    }
    let closeness = |f: i64| v.terms().iter().map(|&(e, _)| (e - f).abs()).min().unwrap();
    let (up, down) = (r, r - 4);
    let f = if closeness(down) < closeness(up) { down } else { up };
    let inner = v.shift(-f);
    let pre = Laurent::var_pow(Var::T4, f).canonical_string();
    if inner.len() == 1 {
        return v.canonical_string();
    }
    // polynomials in t^-1 read from the most negative power, as in t^-4 - t^-2
    let body = if inner.max_exp().unwrap() <= 0 {
        inner.ascending_string()
    } else {
        inner.canonical_string()
    };
    format!("{}*({})", pre, body)
}

/// Every crossing switched.
pub fn mirror(d: &LinkDiagram) -> LinkDiagram {
    d.mirror()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Ring;
    use crate::diagram::BraidWord;

    fn trefoil() -> LinkDiagram {
        BraidWord::parse("braid 2 : s1 s1 s1").unwrap().closure()
    }

    #[test]
    fn bracket_examples() {
        assert!(bracket_statesum(&LinkDiagram::empty()).unwrap().is_one());
        assert_eq!(bracket_statesum(&LinkDiagram::unknot()).unwrap(), loop_value());
        assert_eq!(
            bracket_statesum(&trefoil()).unwrap().canonical_string(),
            "A^7 + A^3 + A^-1 - A^-9"
        );
        let kink = LinkDiagram::unknot().add_kink(0, 1).unwrap();
        assert_eq!(bracket_statesum(&kink).unwrap().canonical_string(), "A^5 + A");
    }

    #[test]
    fn functor_matches_statesum_on_examples() {
        for d in [
            LinkDiagram::empty(),
            LinkDiagram::unknot(),
            LinkDiagram::unlink(3),
            trefoil(),
            trefoil().mirror(),
            LinkDiagram::unknot().add_kink(0, -1).unwrap(),
        ] {
            assert_eq!(bracket_functor(&d).unwrap(), bracket_statesum(&d).unwrap(), "{}", d);
        }
    }

    #[test]
    fn jones_trefoils() {
        let right = jones(&trefoil()).unwrap();
        assert_eq!(jones_string(&right), "t^(1/2)*(t^4 - t^2 - t - 1)");
        let left = jones(&trefoil().mirror()).unwrap();
        assert_eq!(jones_string(&left), "t^(-1/2)*(t^-4 - t^-2 - t^-1 - 1)");
        assert_eq!(left, right.invert_var());
        assert!(jones(&LinkDiagram::empty()).unwrap().is_one());
        let divided = jones_with(&LinkDiagram::unknot(), Normalization::Divided).unwrap();
        assert!(divided.is_one());
        assert!(jones(&trefoil().forget_orientation()).is_err());
    }
}
