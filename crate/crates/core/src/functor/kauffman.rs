use super::eval::MatrixTable;
use super::matrix::SparseMatrix;
use crate::coeff::{Laurent, Var};
use crate::diagram::Gen;

fn a(e: i64) -> Laurent {
    Laurent::var_pow(Var::A, e)
}

fn z() -> Laurent {
    Laurent::zero(Var::A)
}

/// The crossing whose bottom-left strand passes over, on `V ⊗ V` with `V` two
/// dimensional and the left factor most significant.
pub fn kauffman_over() -> SparseMatrix<Laurent> {
    SparseMatrix::from_rows(
        vec![
            vec![a(1), z(), z(), z()],
            vec![z(), z(), a(-1), z()],
            vec![z(), a(-1), &a(1) - &a(-3), z()],
            vec![z(), z(), z(), a(1)],
        ],
        &Var::A,
    )
}

pub fn kauffman_under() -> SparseMatrix<Laurent> {
    SparseMatrix::from_rows(
        vec![
            vec![a(-1), z(), z(), z()],
            vec![z(), &a(-1) - &a(3), a(1), z()],
            vec![z(), a(1), z(), z()],
            vec![z(), z(), z(), a(-1)],
        ],
        &Var::A,
    )
}

pub fn kauffman_cap() -> SparseMatrix<Laurent> {
    SparseMatrix::from_rows(vec![vec![z(), a(1), -a(-1), z()]], &Var::A)
}

pub fn kauffman_cup() -> SparseMatrix<Laurent> {
    kauffman_cap().transpose().scale(&Laurent::constant(Var::A, -1))
}

/// The unoriented two-dimensional representation whose closed values are
/// Kauffman brackets.
pub fn kauffman_table() -> MatrixTable<Laurent> {
    let mut t = MatrixTable::new(2, &Var::A);
    t.set(Gen::Over, kauffman_over()).expect("shape");
    t.set(Gen::Under, kauffman_under()).expect("shape");
    t.set(Gen::Cup, kauffman_cup()).expect("shape");
    t.set(Gen::Cap, kauffman_cap()).expect("shape");
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn over_and_under_are_inverse() {
        let p = kauffman_over().mul(&kauffman_under()).unwrap();
        assert!(p.is_identity());
    }

    #[test]
    fn crossing_is_a_skein_combination() {
        // over = A·id + A^-1·(cup∘cap)
        let id = SparseMatrix::identity(4, &Var::A);
        let e = kauffman_cup().mul(&kauffman_cap()).unwrap();
        let rhs = id.scale(&a(1)).add(&e.scale(&a(-1))).unwrap();
        assert_eq!(kauffman_over(), rhs);
    }
}
