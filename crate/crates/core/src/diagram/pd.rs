use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One 4-valent vertex `X(a,b,c,d)`: arcs listed counterclockwise starting from
/// the incoming under-strand, so the under-strand runs `a → c`. The over-strand
/// runs `d → b` when `sign = +1` and `b → d` when `sign = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn new(arcs: [u32; 4], sign: i8) -> Self {
        Crossing { arcs, sign }
    }

    /// Whether the strand at `slot` enters the crossing there.
    pub fn incoming(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            1 => self.sign < 0,
            2 => false,
            3 => self.sign > 0,
            _ => unreachable!("crossing slots are 0..4"),
        }
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        if self.sign > 0 {
            Crossing::new([d, a, b, c], -1)
        } else {
            Crossing::new([b, c, d, a], 1)
        }
    }
}

/// An oriented link diagram in planar-diagram form. Components without
/// crossings are kept as free loops. The order of `components` is significant
/// (framings and labels refer to it); a component is named by one of its arcs,
/// or `None` for a free loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    components: Vec<Option<u32>>,
    arc_component: BTreeMap<u32, usize>,
    oriented: bool,
}

#[derive(Serialize, Deserialize)]
struct PdJson {
    pd: Vec<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signs: Option<Vec<i8>>,
    #[serde(default)]
    free_loops: usize,
}

struct UnionFind {
    parent: HashMap<u32, u32>,
}

impl UnionFind {
    fn new() -> Self {
        UnionFind {
            parent: HashMap::new(),
        }
    }
    fn find(&mut self, x: u32) -> u32 {
        let p = *self.parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent.insert(x, r);
        r
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

fn arc_slots(crossings: &[Crossing]) -> Result<BTreeMap<u32, Vec<(usize, usize)>>> {
    let mut ends: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, c) in crossings.iter().enumerate() {
        for (s, &a) in c.arcs.iter().enumerate() {
            ends.entry(a).or_default().push((i, s));
        }
    }
    for (a, e) in &ends {
        if e.len() != 2 {
            return Err(Error::invalid(format!(
                "arc {} appears {} time(s); every arc must appear exactly twice",
                a,
                e.len()
            )));
        }
    }
    Ok(ends)
}

impl LinkDiagram {
    pub fn empty() -> Self {
        LinkDiagram {
            crossings: Vec::new(),
            components: Vec::new(),
            arc_component: BTreeMap::new(),
            oriented: true,
        }
    }

    /// `k` disjoint crossingless circles.
    pub fn unlink(k: usize) -> Self {
        LinkDiagram {
            components: vec![None; k],
            ..Self::empty()
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// Build from crossings with explicit signs and a component list. Every
    /// arc component must be named exactly once in `components`.
    pub fn from_parts(crossings: Vec<Crossing>, components: Vec<Option<u32>>) -> Result<Self> {
        let ends = arc_slots(&crossings)?;
        for c in &crossings {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::invalid("crossing signs must be +1 or -1"));
            }
        }
        for (a, e) in &ends {
            let ins = e
                .iter()
                .filter(|&&(i, s)| crossings[i].incoming(s))
                .count();
            if ins != 1 {
                return Err(Error::invalid(format!(
                    "inconsistent orientation: arc {} has {} incoming ends",
                    a, ins
                )));
            }
        }
        let mut uf = UnionFind::new();
        for c in &crossings {
            uf.union(c.arcs[0], c.arcs[2]);
            uf.union(c.arcs[1], c.arcs[3]);
        }
        let mut root_index: HashMap<u32, usize> = HashMap::new();
        for (k, rep) in components.iter().enumerate() {
            if let Some(a) = rep {
                if !ends.contains_key(a) {
                    return Err(Error::invalid(format!("component arc {} is not in the diagram", a)));
                }
                if root_index.insert(uf.find(*a), k).is_some() {
                    return Err(Error::invalid(format!("component of arc {} listed twice", a)));
                }
            }
        }
        let mut arc_component = BTreeMap::new();
        for &a in ends.keys() {
            let k = *root_index.get(&uf.find(a)).ok_or_else(|| {
                Error::invalid(format!("component of arc {} missing from the component list", a))
            })?;
            arc_component.insert(a, k);
        }
        Ok(LinkDiagram {
            crossings,
            components,
            arc_component,
            oriented: true,
        })
    }

    /// Build from crossings with explicit signs; components ordered by smallest
    /// arc label, followed by `free_loops` crossingless circles.
    pub fn with_signs(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self> {
        let _ = arc_slots(&crossings)?;
        let mut uf = UnionFind::new();
        for c in &crossings {
            uf.union(c.arcs[0], c.arcs[2]);
            uf.union(c.arcs[1], c.arcs[3]);
        }
        let mut roots: Vec<u32> = crossings
            .iter()
            .flat_map(|c| c.arcs)
            .map(|a| uf.find(a))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        let mut comps: Vec<Option<u32>> = roots.into_iter().map(Some).collect();
        comps.extend(std::iter::repeat(None).take(free_loops));
        Self::from_parts(crossings, comps)
    }

    /// Build from bare PD tuples, inferring each crossing's sign from the
    /// orientation forced by the under-strands. Where a group of crossings is
    /// not forced, the first of them takes its over-strand direction from the
    /// arc numbering (the usual "labels increase along the strand" rule).
    pub fn from_pd(tuples: &[[u32; 4]], free_loops: usize) -> Result<Self> {
        let n = tuples.len();
        let probe: Vec<Crossing> = tuples.iter().map(|&t| Crossing::new(t, 1)).collect();
        let ends = arc_slots(&probe)?;
        // incoming(slot) = constant xor (positive if the slot is b or d)
        let term = |slot: usize| -> (bool, bool) {
            match slot {
                0 => (true, false),
                1 => (true, true),
                2 => (false, false),
                _ => (false, true),
            }
        };
        let mut forced: Vec<Option<bool>> = vec![None; n];
        let mut edges: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        let mut fixed: Vec<(usize, bool, u32)> = Vec::new();
        for (&arc, e) in &ends {
            let ((i1, s1), (i2, s2)) = (e[0], e[1]);
            let (c1, v1) = term(s1);
            let (c2, v2) = term(s2);
            let rhs = !(c1 ^ c2);
            match (v1, v2) {
                (false, false) => {
                    if rhs {
                        // both ends are under-strand ends pointing the same way
                        return Err(Error::invalid(format!(
                            "inconsistent orientation along arc {}",
                            arc
                        )));
                    }
                }
                (true, false) => fixed.push((i1, rhs, arc)),
                (false, true) => fixed.push((i2, rhs, arc)),
                (true, true) => {
                    if i1 == i2 {
                        if rhs {
                            return Err(Error::invalid(format!(
                                "inconsistent orientation along arc {}",
                                arc
                            )));
                        }
                    } else {
                        edges[i1].push((i2, rhs));
                        edges[i2].push((i1, rhs));
                    }
                }
            }
        }
        let mut queue = VecDeque::new();
        for &(i, v, arc) in &fixed {
            match forced[i] {
                Some(old) if old != v => {
                    return Err(Error::invalid(format!(
                        "inconsistent orientation along arc {}",
                        arc
                    )))
                }
                Some(_) => {}
                None => {
                    forced[i] = Some(v);
                    queue.push_back(i);
                }
            }
        }
        let mut next_seed = 0;
        loop {
            while let Some(i) = queue.pop_front() {
                let v = forced[i].unwrap();
                for &(j, parity) in &edges[i] {
                    let want = v ^ parity;
                    match forced[j] {
                        Some(w) if w != want => {
                            return Err(Error::invalid(format!(
                                "inconsistent orientation around crossing {}",
                                j + 1
                            )))
                        }
                        Some(_) => {}
                        None => {
                            forced[j] = Some(want);
                            queue.push_back(j);
                        }
                    }
                }
            }
            while next_seed < n && forced[next_seed].is_some() {
                next_seed += 1;
            }
            if next_seed == n {
                break;
            }
            let [_, b, _, d] = tuples[next_seed];
            let (b, d) = (b as i64, d as i64);
            let b_to_d = d - b == 1 || b - d > 1;
            forced[next_seed] = Some(!b_to_d);
            queue.push_back(next_seed);
        }
        let crossings = tuples
            .iter()
            .zip(forced)
            .map(|(&t, s)| Crossing::new(t, if s.unwrap() { 1 } else { -1 }))
            .collect();
        Self::with_signs(crossings, free_loops)
    }

    /// Parse `X(a,b,c,d) X(...) ...`; a bare `O` adds a crossingless circle.
    pub fn parse(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut tuples = Vec::new();
        let mut loops = 0;
        while i < bytes.len() {
            let ch = bytes[i];
            if ch.is_ascii_whitespace() || ch == b',' || ch == b';' {
                i += 1;
                continue;
            }
            if ch == b'O' {
                loops += 1;
                i += 1;
                continue;
            }
            if ch != b'X' {
                return Err(Error::parse(i, format!("expected 'X(', found '{}'", ch as char)));
            }
            let start = i;
            let open = text[i..]
                .find('(')
                .map(|p| p + i)
                .filter(|&p| text[i + 1..p].trim().is_empty())
                .ok_or_else(|| Error::parse(start, "expected '(' after 'X'"))?;
            let close = text[open..]
                .find(')')
                .map(|p| p + open)
                .ok_or_else(|| Error::parse(open, "unclosed crossing tuple"))?;
            let parts: Vec<&str> = text[open + 1..close].split(',').collect();
            if parts.len() != 4 {
                return Err(Error::parse(
                    start,
                    format!("crossing needs 4 arcs, found {}", parts.len()),
                ));
            }
            let mut t = [0u32; 4];
            for (k, p) in parts.iter().enumerate() {
                t[k] = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(open + 1, format!("bad arc label '{}'", p.trim())))?;
            }
            tuples.push(t);
            i = close + 1;
        }
        Self::from_pd(&tuples, loops)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PdJson {
            pd: self.crossings.iter().map(|c| c.arcs).collect(),
            signs: Some(self.crossings.iter().map(|c| c.sign).collect()),
            free_loops: self.free_loop_count(),
        })
        .expect("PD JSON")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: PdJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::parse(0, format!("PD JSON: {}", e)))?;
        match raw.signs {
            Some(signs) => {
                if signs.len() != raw.pd.len() {
                    return Err(Error::invalid("'signs' must have one entry per crossing"));
                }
                let cs = raw
                    .pd
                    .iter()
                    .zip(signs)
                    .map(|(&t, s)| Crossing::new(t, s))
                    .collect();
                Self::with_signs(cs, raw.free_loops)
            }
            None => Self::from_pd(&raw.pd, raw.free_loops),
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Component representatives: an arc label, or `None` for a free loop.
    pub fn components(&self) -> &[Option<u32>] {
        &self.components
    }

    pub fn free_loop_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_none()).count()
    }

    pub fn arc_component(&self, arc: u32) -> Option<usize> {
        self.arc_component.get(&arc).copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = u32> + '_ {
        self.arc_component.keys().copied()
    }

    pub fn max_arc(&self) -> u32 {
        self.arc_component.keys().next_back().copied().unwrap_or(0)
    }

    /// Components of the under- and over-strand at crossing `i`.
    pub fn crossing_components(&self, i: usize) -> (usize, usize) {
        let c = &self.crossings[i];
        (self.arc_component[&c.arcs[0]], self.arc_component[&c.arcs[1]])
    }

    /// For every arc, its two ends as `(crossing, slot)`.
    pub fn arc_ends(&self) -> BTreeMap<u32, [(usize, usize); 2]> {
        arc_slots(&self.crossings)
            .expect("validated diagram")
            .into_iter()
            .map(|(a, e)| (a, [e[0], e[1]]))
            .collect()
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    /// The same diagram with its orientation marked as unknown.
    pub fn forget_orientation(&self) -> Self {
        LinkDiagram {
            oriented: false,
            ..self.clone()
        }
    }

    fn require_oriented(&self) -> Result<()> {
        if self.oriented {
            Ok(())
        } else {
            Err(Error::invalid("this operation needs an oriented diagram"))
        }
    }

    pub fn writhe(&self) -> Result<i64> {
        self.require_oriented()?;
        Ok(self.crossings.iter().map(|c| c.sign as i64).sum())
    }

    /// Writhe of the crossings where component `k` crosses itself.
    pub fn self_writhe(&self, k: usize) -> Result<i64> {
        self.require_oriented()?;
        Ok((0..self.crossings.len())
            .filter(|&i| self.crossing_components(i) == (k, k))
            .map(|i| self.crossings[i].sign as i64)
            .sum())
    }

    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        self.require_oriented()?;
        let total: i64 = (0..self.crossings.len())
            .filter(|&x| {
                let (u, o) = self.crossing_components(x);
                (u == i && o == j) || (u == j && o == i)
            })
            .map(|x| self.crossings[x].sign as i64)
            .sum();
        if i == j {
            return Ok(total);
        }
        debug_assert!(total % 2 == 0);
        Ok(total / 2)
    }

    /// Every crossing switched.
    pub fn mirror(&self) -> Self {
        LinkDiagram {
            crossings: self.crossings.iter().map(Crossing::switched).collect(),
            ..self.clone()
        }
    }

    pub fn switch_crossing(&self, i: usize) -> Self {
        let mut out = self.clone();
        out.crossings[i] = out.crossings[i].switched();
        out
    }

    /// Replace crossing `i` by its orientation-respecting smoothing.
    pub fn smooth_oriented(&self, i: usize) -> Self {
        let c = self.crossings[i];
        let [a, b, cc, d] = c.arcs;
        let mut uf = UnionFind::new();
        if c.sign > 0 {
            uf.union(a, b);
            uf.union(cc, d);
        } else {
            uf.union(a, d);
            uf.union(b, cc);
        }
        let rest: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, x)| Crossing::new(x.arcs.map(|v| uf.find(v)), x.sign))
            .collect();
        let used: std::collections::HashSet<u32> = rest.iter().flat_map(|x| x.arcs).collect();
        let mut orphan: Vec<u32> = c.arcs.iter().map(|&v| uf.find(v)).collect();
        orphan.sort_unstable();
        orphan.dedup();
        let new_loops = orphan.iter().filter(|v| !used.contains(v)).count();
        Self::with_signs(rest, self.free_loop_count() + new_loops)
            .expect("smoothing keeps a valid diagram")
            .canonical()
    }

    /// Disjoint union, `other` drawn to the right; components of `other`
    /// follow those of `self`.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> Self {
        let shift = self.max_arc();
        let mut crossings = self.crossings.clone();
        crossings.extend(
            other
                .crossings
                .iter()
                .map(|c| Crossing::new(c.arcs.map(|a| a + shift), c.sign)),
        );
        let mut comps = self.components.clone();
        comps.extend(other.components.iter().map(|c| c.map(|a| a + shift)));
        let mut out = Self::from_parts(crossings, comps).expect("disjoint union is valid");
        out.oriented = self.oriented && other.oriented;
        out
    }

    /// Insert a Reidemeister-I kink of the given sign on component `k`. The
    /// new crossing is appended last.
    pub fn add_kink(&self, k: usize, sign: i8) -> Result<Self> {
        if k >= self.components.len() {
            return Err(Error::invalid(format!(
                "unknown component {} (diagram has {})",
                k,
                self.components.len()
            )));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::invalid("kink sign must be +1 or -1"));
        }
        let m = self.max_arc();
        let (l, y) = (m + 1, m + 2);
        let mut crossings = self.crossings.clone();
        let mut comps = self.components.clone();
        let x = match self.components[k] {
            None => {
                comps[k] = Some(l);
                y
            }
            Some(x) => {
                // reroute the head of arc x to the new arc y
                let (ci, slot) = self.arc_ends()[&x]
                    .into_iter()
                    .find(|&(ci, s)| self.crossings[ci].incoming(s))
                    .expect("every arc has a head");
                crossings[ci].arcs[slot] = y;
                x
            }
        };
        crossings.push(if sign > 0 {
            Crossing::new([l, l, y, x], 1)
        } else {
            Crossing::new([x, l, l, y], -1)
        });
        let mut out = Self::from_parts(crossings, comps)?;
        out.oriented = self.oriented;
        Ok(out)
    }

    /// Remove the Reidemeister-I kink at crossing `i`.
    pub fn remove_kink(&self, i: usize) -> Result<Self> {
        let c = *self
            .crossings
            .get(i)
            .ok_or_else(|| Error::invalid(format!("no crossing {}", i)))?;
        let j = (0..4)
            .find(|&j| c.arcs[j] == c.arcs[(j + 1) % 4])
            .ok_or_else(|| Error::invalid(format!("crossing {} is not a kink", i)))?;
        let others = [(j + 2) % 4, (j + 3) % 4];
        let (sin, sout) = if c.incoming(others[0]) {
            (others[0], others[1])
        } else {
            (others[1], others[0])
        };
        let (x_in, x_out) = (c.arcs[sin], c.arcs[sout]);
        let loop_arc = c.arcs[j];
        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, x)| *x)
            .collect();
        let mut comps = self.components.clone();
        let k = self.arc_component[&loop_arc];
        if x_in == x_out {
            comps[k] = None;
        } else {
            for x in &mut crossings {
                for a in x.arcs.iter_mut() {
                    if *a == x_out {
                        *a = x_in;
                    }
                }
            }
            comps[k] = Some(x_in);
        }
        let mut out = Self::from_parts(crossings, comps)?;
        out.oriented = self.oriented;
        Ok(out)
    }

    /// Relabel arcs `1, 2, ...` component by component, and within a
    /// component in order of first appearance in the crossing list.
    pub fn canonical(&self) -> Self {
        let mut first: HashMap<u32, usize> = HashMap::new();
        for c in &self.crossings {
            for &a in &c.arcs {
                let next = first.len();
                first.entry(a).or_insert(next);
            }
        }
        let mut order: Vec<u32> = first.keys().copied().collect();
        order.sort_by_key(|a| (self.arc_component[a], first[a]));
        let map: HashMap<u32, u32> = order
            .into_iter()
            .enumerate()
            .map(|(i, a)| (a, i as u32 + 1))
            .collect();
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing::new(c.arcs.map(|a| map[&a]), c.sign))
            .collect();
        let comps = self.components.iter().map(|c| c.map(|a| map[&a])).collect();
        let mut out = Self::from_parts(crossings, comps).expect("relabelling keeps validity");
        out.oriented = self.oriented;
        for (&a, &k) in &out.arc_component {
            if let Some(rep) = out.components[k].as_mut() {
                *rep = (*rep).min(a);
            }
        }
        out
    }

    /// Equality up to arc relabelling.
    pub fn same_as(&self, other: &LinkDiagram) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.crossings {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "X({},{},{},{})", c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3])?;
        }
        for _ in 0..self.free_loop_count() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str("O")?;
        }
        Ok(())
    }
}
