use serde::Serialize;

use super::eval::{eval_word, GeneratorTable};
use crate::coeff::Ring;
use crate::diagram::{Gen, TangleWord};
use crate::error::Result;

/// Tangle words that must all evaluate to the same matrix.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub instance: String,
    pub sides: Vec<TangleWord>,
}

fn word(text: &str) -> TangleWord {
    TangleWord::parse(text).expect("built-in relation words parse")
}

fn rel(name: &'static str, instance: &str, sides: &[&str]) -> Relation {
    Relation {
        name,
        instance: instance.to_string(),
        sides: sides.iter().map(|s| word(s)).collect(),
    }
}

fn ids(k: usize) -> Vec<Gen> {
    vec![Gen::Id; k]
}

fn slice_word(slices: Vec<Vec<Gen>>) -> TangleWord {
    TangleWord::new(slices).expect("built-in relation words are well formed")
}

/// Kinks on the left and right of a strand, built from a crossing `x`.
fn kink_left(x: &str) -> String {
    format!("cup, id\nid, {x}\ncap, id")
}

fn kink_right(x: &str) -> String {
    format!("id, cup\n{x}, id\nid, cap")
}

/// The defining relations I-VII of the tangle category, as concrete pairs of
/// words over the unlabeled generators.
pub fn tangle_relations() -> Vec<Relation> {
    let mut out = vec![
        rel("I", "left and right over-kinks agree", &[&kink_left("over"), &kink_right("over")]),
        rel("I", "left and right under-kinks agree", &[&kink_left("under"), &kink_right("under")]),
        rel(
            "I",
            "opposite kinks cancel",
            &[&format!("{}\n{}", kink_left("over"), kink_right("under")), "id"],
        ),
        rel(
            "I",
            "opposite kinks cancel (reversed)",
            &[&format!("{}\n{}", kink_left("under"), kink_right("over")), "id"],
        ),
        rel("II", "over then under", &["over\nunder", "id, id"]),
        rel("II", "under then over", &["under\nover", "id, id"]),
        rel(
            "III",
            "braid relation, over",
            &["over, id\nid, over\nover, id", "id, over\nover, id\nid, over"],
        ),
        rel(
            "III",
            "braid relation, under",
            &["under, id\nid, under\nunder, id", "id, under\nunder, id\nid, under"],
        ),
        rel("IV", "zigzags", &["id, cup\ncap, id", "id", "cup, id\nid, cap"]),
        rel("V", "cap slides over", &["over, id\nid, cap", "id, under\ncap, id"]),
        rel("V", "cap slides under", &["under, id\nid, cap", "id, over\ncap, id"]),
        rel("V", "cup slides over", &["id, cup\nover, id", "cup, id\nid, under"]),
        rel("V", "cup slides under", &["id, cup\nunder, id", "cup, id\nid, over"]),
    ];
    let movers = [Gen::Over, Gen::Under, Gen::Cup, Gen::Cap];
    let others = [Gen::Cup, Gen::Cap, Gen::Id];
    for t in &movers {
        for s in &others {
            let (ta, tb) = t.arity();
            let (sc, sd) = s.arity();
            let mut first = vec![t.clone()];
            first.extend(ids(sc));
            let mut second = ids(tb);
            second.push(s.clone());
            let lhs = slice_word(vec![first, second]);
            let mid = slice_word(vec![vec![t.clone(), s.clone()]]);
            let mut third = ids(ta);
            third.push(s.clone());
            let mut fourth = vec![t.clone()];
            fourth.extend(ids(sd));
            let rhs = slice_word(vec![third, fourth]);
            out.push(Relation {
                name: "VI",
                instance: format!("{t} and {s} commute"),
                sides: vec![lhs, mid, rhs],
            });
        }
    }
    for t in &movers {
        let (a, b) = t.arity();
        let sides = vec![
            slice_word(vec![vec![t.clone()]]),
            slice_word(vec![ids(a), vec![t.clone()]]),
            slice_word(vec![vec![t.clone()], ids(b)]),
        ];
        out.push(Relation {
            name: "VII",
            instance: format!("identity slices around {t}"),
            sides,
        });
    }
    out
}

/// Outcome of checking one relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: &'static str,
    pub instance: String,
    pub passed: bool,
}

/// Outcomes for every relation checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Whether every instance of relation `name` passed.
    pub fn passed(&self, name: &str) -> bool {
        self.checks.iter().filter(|c| c.name == name).all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Evaluate both sides of every relation in `relations` with `table`.
pub fn check_relations_with<R: Ring, T: GeneratorTable<R> + ?Sized>(
    table: &T,
    relations: &[Relation],
) -> Result<RelationReport> {
    let mut report = RelationReport::default();
    for r in relations {
        let first = eval_word(&r.sides[0], table)?;
        let mut passed = true;
        for side in &r.sides[1..] {
            if eval_word(side, table)? != first {
                passed = false;
            }
        }
        report.checks.push(RelationCheck {
            name: r.name,
            instance: r.instance.clone(),
            passed,
        });
    }
    Ok(report)
}

/// Check the relations I-VII for an unlabeled generator table.
pub fn check_relations<R: Ring, T: GeneratorTable<R> + ?Sized>(table: &T) -> Result<RelationReport> {
    check_relations_with(table, &tangle_relations())
}
