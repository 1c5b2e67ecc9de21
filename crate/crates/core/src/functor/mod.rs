//! Tangle words to matrices: generator tables, evaluation and relation checks.

mod eval;
mod kauffman;
mod labeled;
mod matrix;
mod relations;

pub use eval::{eval_word, propagate, GeneratorTable, MatrixTable, Step, DENSE_LIMIT};
pub use kauffman::{kauffman_cap, kauffman_cup, kauffman_over, kauffman_table, kauffman_under};
pub use labeled::{
    check_labeled_relations, eval_labeled, CouponDef, LabeledTable, LabeledTangle, StrandType,
};
pub use matrix::SparseMatrix;
pub use relations::{
    check_relations, check_relations_with, tangle_relations, Relation, RelationCheck, RelationReport,
};
