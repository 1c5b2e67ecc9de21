use std::fmt::Debug;

/// A commutative ring whose elements may need a shared context
/// (the variable of a Laurent ring, the order of a cyclotomic field, ...).
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + Sized {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    fn ctx(&self) -> Self::Ctx;

    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Ring::add(self, other);
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = Ring::mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = Ring::mul(&base, &base);
            }
        }
        acc
    }
}
