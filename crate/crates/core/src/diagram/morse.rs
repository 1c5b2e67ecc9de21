//! Slicing a planar diagram into a tangle word by a bottom-to-top sweep.

use super::pd::LinkDiagram;
use super::tangle::{Gen, TangleWord};
use crate::error::{Error, Result};

/// Orientation and component of a cup, in order of appearance in the word.
/// `left_up` is true when the strand leaving the cup's left end points upward.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CupTag {
    pub component: usize,
    pub left_up: bool,
}

/// A closed tangle word together with the data needed to label it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slicing {
    pub word: TangleWord,
    pub cups: Vec<CupTag>,
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    arc: u32,
    up: bool,
}

struct Sweep<'a> {
    d: &'a LinkDiagram,
    frontier: Vec<Entry>,
    slices: Vec<Vec<Gen>>,
    cups: Vec<CupTag>,
}

impl Sweep<'_> {
    fn emit(&mut self, pos: usize, gen: Gen) {
        let width = self.frontier.len();
        let (ins, _) = gen.arity();
        let mut slice = vec![Gen::Id; pos];
        slice.push(gen);
        slice.extend(std::iter::repeat(Gen::Id).take(width - pos - ins));
        self.slices.push(slice);
    }

    fn cup(&mut self, pos: usize, arc: u32, left_up: bool) {
        let comp = self.d.arc_component(arc).unwrap();
        self.emit(pos, Gen::Cup);
        self.cups.push(CupTag {
            component: comp,
            left_up,
        });
        let pair = [
            Entry { arc, up: left_up },
            Entry {
                arc,
                up: !left_up,
            },
        ];
        self.frontier.splice(pos..pos, pair);
    }

    /// Carry the rightmost frontier strand around the bottom of everything
    /// sliced so far, so that it reappears at the left end: a cup spanning
    /// the whole picture is added below, and its right end is capped against
    /// the strand.
    fn wrap_right_to_left(&mut self) {
        let x = *self.frontier.last().unwrap();
        let mut slices = vec![vec![Gen::Cup]];
        for old in self.slices.drain(..) {
            let mut padded = vec![Gen::Id];
            padded.extend(old);
            padded.push(Gen::Id);
            slices.push(padded);
        }
        self.slices = slices;
        self.cups.insert(
            0,
            CupTag {
                component: self.d.arc_component(x.arc).unwrap(),
                left_up: x.up,
            },
        );
        let w = self.frontier.len();
        self.frontier.insert(0, x);
        self.frontier.push(Entry { arc: x.arc, up: !x.up });
        self.emit(w, Gen::Cap);
        self.frontier.truncate(w);
    }

    fn cap_adjacent(&mut self) {
        while let Some(p) = (0..self.frontier.len().saturating_sub(1))
            .find(|&p| self.frontier[p].arc == self.frontier[p + 1].arc)
        {
            debug_assert_ne!(self.frontier[p].up, self.frontier[p + 1].up);
            self.emit(p, Gen::Cap);
            self.frontier.drain(p..p + 2);
        }
    }

    /// Apply crossing `ci` to the frontier entries at `pos, pos+1`, which feed
    /// its slots `t` and `t+1`.
    fn cross(&mut self, ci: usize, pos: usize, t: usize) {
        let c = self.d.crossings()[ci];
        debug_assert_eq!(self.frontier[pos].arc, c.arcs[t]);
        debug_assert_eq!(self.frontier[pos + 1].arc, c.arcs[(t + 1) % 4]);
        debug_assert_eq!(self.frontier[pos].up, c.incoming(t));
        let gen = if t % 2 == 1 { Gen::Over } else { Gen::Under };
        self.emit(pos, gen);
        let top = |slot: usize| Entry {
            arc: c.arcs[slot],
            up: !c.incoming(slot),
        };
        let left = top((t + 3) % 4);
        let right = top((t + 2) % 4);
        self.frontier[pos] = left;
        self.frontier[pos + 1] = right;
    }
}

/// Slice a diagram into a closed tangle word. Crossings are consumed greedily:
/// adjacent equal strands are capped first, then the crossing with the longest
/// run of adjacent frontier strands feeding consecutive slots is placed, ties
/// going to the smallest arc label. A run of one strand is completed by a cup.
/// Leftover strands are capped at the end, carrying strands around the
/// bottom of the picture when their partners are not adjacent.
pub fn morse_slicing(d: &LinkDiagram) -> Result<Slicing> {
    let crossings = d.crossings();
    let n = crossings.len();
    let mut sw = Sweep {
        d,
        frontier: Vec::new(),
        slices: Vec::new(),
        cups: Vec::new(),
    };
    let mut done = vec![false; n];
    let mut placed = 0;
    let min_label: Vec<u32> = crossings
        .iter()
        .map(|c| *c.arcs.iter().min().unwrap())
        .collect();
    while placed < n {
        sw.cap_adjacent();
        // (k, label, crossing, frontier position of block start, first slot)
        let mut best: Option<(usize, u32, usize, usize, usize)> = None;
        for ci in (0..n).filter(|&ci| !done[ci]) {
            let c = crossings[ci];
            let mut hits: Vec<(usize, usize)> = Vec::new();
            for slot in 0..4 {
                let arc = c.arcs[slot];
                let mut found = sw.frontier.iter().enumerate().filter(|(_, e)| e.arc == arc);
                if let (Some((p, _)), None) = (found.next(), found.next()) {
                    hits.push((p, slot));
                }
            }
            hits.sort_unstable();
            // maximal runs of adjacent frontier strands feeding consecutive slots
            let mut start = 0;
            while start < hits.len() {
                let mut end = start + 1;
                while end < hits.len()
                    && hits[end].0 == hits[end - 1].0 + 1
                    && hits[end].1 == (hits[end - 1].1 + 1) % 4
                {
                    end += 1;
                }
                let cand = (end - start, min_label[ci], ci, hits[start].0, hits[start].1);
                let better = match best {
                    None => true,
                    Some(b) => cand.0 > b.0 || (cand.0 == b.0 && cand.1 < b.1),
                };
                if better {
                    best = Some(cand);
                }
                start = end;
            }
        }
        let ci = match best {
            Some((k, _, ci, pos, t)) => {
                let c = crossings[ci];
                if k == 1 {
                    let t2 = (t + 1) % 4;
                    sw.cup(pos + 1, c.arcs[t2], c.incoming(t2));
                }
                sw.cross(ci, pos, t);
                ci
            }
            None => {
                let ci = (0..n)
                    .filter(|&ci| !done[ci])
                    .min_by_key(|&ci| min_label[ci])
                    .unwrap();
                let c = crossings[ci];
                let pos = sw.frontier.len();
                sw.cup(pos, c.arcs[0], !c.incoming(0));
                sw.cup(pos + 2, c.arcs[1], c.incoming(1));
                sw.cross(ci, pos + 1, 0);
                ci
            }
        };
        done[ci] = true;
        placed += 1;
    }
    let mut wraps = 0;
    loop {
        sw.cap_adjacent();
        if sw.frontier.is_empty() {
            break;
        }
        if wraps >= sw.frontier.len() {
            return Err(Error::invalid(
                "diagram could not be sliced; the crossing list is not planar",
            ));
        }
        sw.wrap_right_to_left();
        wraps += 1;
    }
    for (k, comp) in d.components().iter().enumerate() {
        if comp.is_none() {
            sw.slices.push(vec![Gen::Cup]);
            sw.cups.push(CupTag {
                component: k,
                left_up: true,
            });
            sw.slices.push(vec![Gen::Cap]);
        }
    }
    Ok(Slicing {
        word: TangleWord::new(sw.slices)?,
        cups: sw.cups,
    })
}

/// The tangle word of [`morse_slicing`].
pub fn to_tangle_word(d: &LinkDiagram) -> Result<TangleWord> {
    Ok(morse_slicing(d)?.word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_and_empty() {
        let w = to_tangle_word(&LinkDiagram::unknot()).unwrap();
        assert_eq!(w.slices(), &[vec![Gen::Cup], vec![Gen::Cap]]);
        assert!(to_tangle_word(&LinkDiagram::empty()).unwrap().slices().is_empty());
    }

    #[test]
    fn hopf_link_shape() {
        let d = LinkDiagram::parse("X(1,4,2,3) X(3,2,4,1)").unwrap();
        let w = to_tangle_word(&d).unwrap();
        let count = |g: &Gen| w.slices().iter().flatten().filter(|x| *x == g).count();
        assert_eq!(count(&Gen::Cup), 2);
        assert_eq!(count(&Gen::Cap), 2);
        assert_eq!(w.crossing_count(), 2);
        assert!(w.is_closed());
    }
}
