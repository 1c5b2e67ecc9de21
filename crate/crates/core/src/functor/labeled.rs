use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::eval::{propagate, Step};
use super::matrix::SparseMatrix;
use super::relations::{Relation, RelationCheck, RelationReport};
use crate::coeff::Ring;
use crate::diagram::{Gen, Slicing, TangleWord};
use crate::error::{Error, Result};

/// The decoration of a strand at one height: the label `n` of the
/// representation `V_n`, and whether the strand points up (carrying `V_n`)
/// or down (carrying its dual).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StrandType {
    pub label: usize,
    pub up: bool,
}

impl StrandType {
    pub fn up(label: usize) -> Self {
        StrandType { label, up: true }
    }

    pub fn down(label: usize) -> Self {
        StrandType { label, up: false }
    }

    pub fn reversed(self) -> Self {
        StrandType {
            label: self.label,
            up: !self.up,
        }
    }
}

impl fmt::Display for StrandType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}{}", self.label, if self.up { "" } else { "*" })
    }
}

/// Matrices for labeled generators. Strand types refer to the bottom of the
/// generator; caps and cups are indexed by the type of their left end.
pub trait LabeledTable<R: Ring> {
    fn ctx(&self) -> R::Ctx;
    fn dim(&self, t: StrandType) -> usize {
        t.label
    }
    fn over(&self, a: StrandType, b: StrandType) -> Result<Arc<SparseMatrix<R>>>;
    fn under(&self, a: StrandType, b: StrandType) -> Result<Arc<SparseMatrix<R>>>;
    fn cup(&self, left: StrandType) -> Result<Arc<SparseMatrix<R>>>;
    fn cap(&self, left: StrandType) -> Result<Arc<SparseMatrix<R>>>;
}

/// An intertwiner placed on a coupon.
#[derive(Clone, Debug, PartialEq)]
pub struct CouponDef<R: Ring> {
    pub inputs: Vec<StrandType>,
    pub outputs: Vec<StrandType>,
    pub matrix: SparseMatrix<R>,
}

/// A tangle word whose strands carry labels and orientations.
#[derive(Clone, Debug)]
pub struct LabeledTangle<R: Ring> {
    word: TangleWord,
    domain: Vec<StrandType>,
    cups: Vec<StrandType>,
    coupons: HashMap<String, CouponDef<R>>,
}

impl<R: Ring> LabeledTangle<R> {
    /// `cups` gives the type of the left end of each cup, in the order the
    /// cups occur (slices bottom to top, generators left to right).
    pub fn new(word: TangleWord, domain: Vec<StrandType>, cups: Vec<StrandType>) -> Result<Self> {
        let t = LabeledTangle {
            word,
            domain,
            cups,
            coupons: HashMap::new(),
        };
        t.levels()?;
        Ok(t)
    }

    /// Attach the intertwiner for coupons named `name`.
    pub fn with_coupon(mut self, name: &str, def: CouponDef<R>) -> Result<Self> {
        let (ri, ci) = (def.matrix.rows(), def.matrix.cols());
        let want_rows: usize = def.outputs.iter().map(|t| t.label).product();
        let want_cols: usize = def.inputs.iter().map(|t| t.label).product();
        if (ri, ci) != (want_rows, want_cols) {
            return Err(Error::invalid(format!(
                "coupon '{}' matrix is {}x{}, its strands need {}x{}",
                name, ri, ci, want_rows, want_cols
            )));
        }
        self.coupons.insert(name.to_string(), def);
        self.levels()?;
        Ok(self)
    }

    /// Label a Morse slicing of a link diagram, component `k` carrying
    /// `labels[k]`.
    pub fn from_slicing(slicing: &Slicing, labels: &[usize]) -> Result<Self> {
        let mut cups = Vec::with_capacity(slicing.cups.len());
        for tag in &slicing.cups {
            let label = *labels.get(tag.component).ok_or_else(|| {
                Error::invalid(format!("no label given for component {}", tag.component))
            })?;
            cups.push(StrandType {
                label,
                up: tag.left_up,
            });
        }
        Self::new(slicing.word.clone(), Vec::new(), cups)
    }

    pub fn word(&self) -> &TangleWord {
        &self.word
    }

    pub fn domain(&self) -> &[StrandType] {
        &self.domain
    }

    pub fn codomain(&self) -> Vec<StrandType> {
        self.levels().expect("validated").pop().unwrap()
    }

    /// Strand types at every height, bottom first.
    pub fn levels(&self) -> Result<Vec<Vec<StrandType>>> {
        self.word.validate()?;
        if self.domain.len() != self.word.domain() {
            return Err(Error::invalid(format!(
                "{} domain types given for a tangle with {} bottom strands",
                self.domain.len(),
                self.word.domain()
            )));
        }
        let mut cur = self.domain.clone();
        if let Some(t) = cur.iter().find(|t| t.label == 0) {
            return Err(Error::invalid(format!("label {} is not a representation", t.label)));
        }
        let mut levels = vec![cur.clone()];
        let mut cups = self.cups.iter();
        for (k, slice) in self.word.slices().iter().enumerate() {
            let mut next = Vec::new();
            let mut pos = 0;
            for g in slice {
                let (i, _) = g.arity();
                let ins = &cur[pos..pos + i];
                match g {
                    Gen::Id => next.push(ins[0]),
                    Gen::Over | Gen::Under => {
                        next.push(ins[1]);
                        next.push(ins[0]);
                    }
                    Gen::Cup => {
                        let t = *cups.next().ok_or_else(|| {
                            Error::invalid(format!("slice {}: more cups than cup types", k + 1))
                        })?;
                        if t.label == 0 {
                            return Err(Error::invalid("label 0 is not a representation"));
                        }
                        next.push(t);
                        next.push(t.reversed());
                    }
                    Gen::Cap => {
                        if ins[0].label != ins[1].label || ins[0].up == ins[1].up {
                            return Err(Error::invalid(format!(
                                "slice {}: a cap cannot join {} and {}",
                                k + 1,
                                ins[0],
                                ins[1]
                            )));
                        }
                    }
                    Gen::Coupon { name, .. } => {
                        let def = self.coupons.get(name).ok_or_else(|| {
                            Error::invalid(format!("slice {}: no intertwiner for coupon '{}'", k + 1, name))
                        })?;
                        if def.inputs != ins {
                            return Err(Error::invalid(format!(
                                "slice {}: coupon '{}' expects other strand types below",
                                k + 1,
                                name
                            )));
                        }
                        next.extend_from_slice(&def.outputs);
                    }
                }
                pos += i;
            }
            cur = next;
            levels.push(cur.clone());
        }
        if cups.next().is_some() {
            return Err(Error::invalid("more cup types than cups"));
        }
        Ok(levels)
    }
}

/// Evaluate a labeled tangle: generator images from `table`, coupons from
/// their attached intertwiners.
pub fn eval_labeled<R: Ring, T: LabeledTable<R> + ?Sized>(
    t: &LabeledTangle<R>,
    table: &T,
) -> Result<SparseMatrix<R>> {
    let levels = t.levels()?;
    let dims = |ts: &[StrandType]| -> usize { ts.iter().map(|&x| table.dim(x)).product() };
    let mut steps = Vec::new();
    for (k, slice) in t.word.slices().iter().enumerate() {
        let below = &levels[k];
        let above = &levels[k + 1];
        let (mut done_in, mut done_out) = (0, 0);
        for g in slice {
            let (i, o) = g.arity();
            let ins = &below[done_in..done_in + i];
            let outs = &above[done_out..done_out + o];
            let matrix = match g {
                Gen::Id => None,
                Gen::Over => Some(table.over(ins[0], ins[1])?),
                Gen::Under => Some(table.under(ins[0], ins[1])?),
                Gen::Cup => Some(table.cup(outs[0])?),
                Gen::Cap => Some(table.cap(ins[0])?),
                Gen::Coupon { name, .. } => Some(Arc::new(t.coupons[name].matrix.clone())),
            };
            if let Some(matrix) = matrix {
                steps.push(Step {
                    left: dims(&above[..done_out]),
                    right: dims(&below[done_in + i..]),
                    matrix,
                });
            }
            done_in += i;
            done_out += o;
        }
    }
    Ok(propagate(dims(&levels[0]), &steps, &table.ctx()))
}

/// The connected strands of a coupon-free word. Each boundary point of every
/// height gets a class and a parity; points of one class with equal parity
/// point the same way.
struct StrandClasses {
    count: usize,
    /// `(class, parity)` per point, per height.
    levels: Vec<Vec<(usize, bool)>>,
    /// `(height, position)` of the left end of each cup, in order.
    cups: Vec<(usize, usize)>,
}

fn strand_classes(word: &TangleWord) -> Result<StrandClasses> {
    word.validate()?;
    let mut offsets = vec![0usize];
    let mut widths = vec![word.domain()];
    for slice in word.slices() {
        let w: usize = slice.iter().map(|g| g.arity().1).sum();
        offsets.push(offsets.last().unwrap() + widths.last().unwrap());
        widths.push(w);
    }
    let total = offsets.last().unwrap() + widths.last().unwrap();
    // union-find with parity relative to the parent
    let mut parent: Vec<usize> = (0..total).collect();
    let mut par = vec![false; total];
    fn find(parent: &mut [usize], par: &mut [bool], x: usize) -> (usize, bool) {
        if parent[x] == x {
            return (x, false);
        }
        let p = parent[x];
        let (r, pp) = find(parent, par, p);
        parent[x] = r;
        par[x] ^= pp;
        (r, par[x])
    }
    let mut join = |a: usize, b: usize, flip: bool| -> Result<()> {
        let (ra, pa) = find(&mut parent, &mut par, a);
        let (rb, pb) = find(&mut parent, &mut par, b);
        if ra == rb {
            if (pa ^ pb) != flip {
                return Err(Error::invalid("inconsistent strand orientations"));
            }
        } else {
            parent[ra] = rb;
            par[ra] = pa ^ pb ^ flip;
        }
        Ok(())
    };
    let mut cups = Vec::new();
    for (k, slice) in word.slices().iter().enumerate() {
        let (lo, hi) = (offsets[k], offsets[k + 1]);
        let (mut p, mut q) = (0, 0);
        for g in slice {
            match g {
                Gen::Id => join(lo + p, hi + q, false)?,
                Gen::Over | Gen::Under => {
                    join(lo + p, hi + q + 1, false)?;
                    join(lo + p + 1, hi + q, false)?;
                }
                Gen::Cup => {
                    join(hi + q, hi + q + 1, true)?;
                    cups.push((k + 1, q));
                }
                Gen::Cap => join(lo + p, lo + p + 1, true)?,
                Gen::Coupon { .. } => {
                    return Err(Error::invalid("strand classes are defined for coupon-free words"))
                }
            }
            let (i, o) = g.arity();
            p += i;
            q += o;
        }
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut levels = Vec::new();
    for (k, &w) in widths.iter().enumerate() {
        let mut row = Vec::with_capacity(w);
        for p in 0..w {
            let (r, pr) = find(&mut parent, &mut par, offsets[k] + p);
            let n = ids.len();
            row.push((*ids.entry(r).or_insert(n), pr));
        }
        levels.push(row);
    }
    Ok(StrandClasses {
        count: ids.len(),
        levels,
        cups,
    })
}

type Boundary = (Vec<StrandType>, Vec<StrandType>);

/// Every labeling of `word` with labels `1..=max_label`, keyed by boundary types.
fn labeled_values<R: Ring, T: LabeledTable<R> + ?Sized>(
    word: &TangleWord,
    table: &T,
    max_label: usize,
) -> Result<BTreeMap<Boundary, SparseMatrix<R>>> {
    let classes = strand_classes(word)?;
    let c = classes.count;
    let mut out = BTreeMap::new();
    let choices = (2 * max_label).pow(c as u32);
    for mut code in 0..choices {
        let mut assign = Vec::with_capacity(c);
        for _ in 0..c {
            let x = code % (2 * max_label);
            code /= 2 * max_label;
            assign.push(StrandType {
                label: x / 2 + 1,
                up: x % 2 == 0,
            });
        }
        let ty = |(cls, parity): (usize, bool)| {
            let base: StrandType = assign[cls];
            if parity {
                base.reversed()
            } else {
                base
            }
        };
        let domain: Vec<StrandType> = classes.levels[0].iter().map(|&x| ty(x)).collect();
        let codomain: Vec<StrandType> = classes.levels.last().unwrap().iter().map(|&x| ty(x)).collect();
        let cups = classes.cups.iter().map(|&(h, p)| ty(classes.levels[h][p])).collect();
        let lt = LabeledTangle::new(word.clone(), domain.clone(), cups)?;
        let value = eval_labeled(&lt, table)?;
        if let Some(prev) = out.insert((domain, codomain), value.clone()) {
            if prev != value {
                return Err(Error::invalid("a closed strand inside a relation word"));
            }
        }
    }
    Ok(out)
}

/// Check relations for every labeling of their strands. `max_label` gives
/// the largest label to try as a function of the number of strand classes.
pub fn check_labeled_relations<R: Ring, T: LabeledTable<R> + ?Sized>(
    table: &T,
    relations: &[Relation],
    max_label: impl Fn(usize) -> usize,
) -> Result<RelationReport> {
    let mut report = RelationReport::default();
    for r in relations {
        let classes = strand_classes(&r.sides[0])?.count;
        let m = max_label(classes);
        let first = labeled_values(&r.sides[0], table, m)?;
        let mut passed = true;
        for side in &r.sides[1..] {
            if labeled_values(side, table, m)? != first {
                passed = false;
            }
        }
        report.checks.push(RelationCheck {
            name: r.name,
            instance: format!("{} (labels up to {})", r.instance, m),
            passed,
        });
    }
    Ok(report)
}
