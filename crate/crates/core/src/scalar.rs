use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive};

use crate::{Error, Result};

/// An exact, non-negative integer scalar for subgroup counts.
///
/// Implemented for every type with the required arithmetic, in particular
/// `u64`, `u128` and [`num_bigint::BigUint`].
pub trait Exact:
    Integer + Clone + Debug + Display + FromPrimitive + ToPrimitive + CheckedAdd + CheckedSub + CheckedMul
{
    fn lift(v: u64) -> Self {
        Self::from_u64(v).expect("u64 fits every exact scalar")
    }

    fn add_exact(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs).ok_or_else(|| Error::Arithmetic(format!("overflow in {self} + {rhs}")))
    }

    fn sub_exact(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs).ok_or_else(|| Error::Arithmetic(format!("negative or overflowing {self} - {rhs}")))
    }

    fn mul_exact(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or_else(|| Error::Arithmetic(format!("overflow in {self} * {rhs}")))
    }

    /// Quotient, failing unless `rhs` divides `self`.
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        let (q, r) = self.div_rem(rhs);
        if !r.is_zero() {
            return Err(Error::Arithmetic(format!("{rhs} does not divide {self}")));
        }
        Ok(q)
    }

    fn pow_exact(base: u64, exp: u32) -> Result<Self> {
        let b = Self::lift(base);
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul_exact(&b)?;
        }
        Ok(acc)
    }
}

impl<T> Exact for T where
    T: Integer + Clone + Debug + Display + FromPrimitive + ToPrimitive + CheckedAdd + CheckedSub + CheckedMul
{
}
