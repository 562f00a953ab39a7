//! Exact combinatorial counting, generic over the integer scalar.
//!
//! Every function works for any unsigned scalar implementing [`ExactCount`]:
//! fixed-width types report overflow as `None`, while [`BigUint`] never
//! overflows. The crate-level [`Count`](crate::Count) alias is the big-integer
//! instantiation used by all reported bounds.

use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, FromPrimitive, One, ToPrimitive, Zero};
use std::fmt::{Debug, Display};

/// An unsigned integer scalar with checked arithmetic.
pub trait ExactCount:
    Clone + Ord + Debug + Display + Zero + One + CheckedAdd + CheckedMul + CheckedDiv + FromPrimitive
{
}

impl<T> ExactCount for T where
    T: Clone
        + Ord
        + Debug
        + Display
        + Zero
        + One
        + CheckedAdd
        + CheckedMul
        + CheckedDiv
        + FromPrimitive
{
}

fn lift<T: ExactCount>(x: u64) -> Option<T> {
    T::from_u64(x)
}

/// `C(n, k)`, or `None` if an intermediate value overflows `T`.
///
/// Computed as the running product `C(n, i+1) = C(n, i) (n-i) / (i+1)`, which
/// is exact at every step.
pub fn binomial<T: ExactCount>(n: u64, k: u64) -> Option<T> {
    if k > n {
        return Some(T::zero());
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc.checked_mul(&lift(n - i)?)?;
        acc = acc.checked_div(&lift(i + 1)?)?;
    }
    Some(acc)
}

/// `n!`, or `None` on overflow.
pub fn factorial<T: ExactCount>(n: u64) -> Option<T> {
    let mut acc = T::one();
    for i in 2..=n {
        acc = acc.checked_mul(&lift(i)?)?;
    }
    Some(acc)
}

/// `base^exp`, or `None` on overflow.
pub fn power<T: ExactCount>(base: u64, exp: u64) -> Option<T> {
    let b: T = lift(base)?;
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc.checked_mul(&b)?;
    }
    Some(acc)
}

/// Same as [`binomial`] for the big-integer scalar, which cannot overflow.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    binomial(n, k).expect("big integers do not overflow")
}

pub fn factorial_big(n: u64) -> BigUint {
    factorial(n).expect("big integers do not overflow")
}

pub fn power_big(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(u32::try_from(exp).expect("exponent fits in u32"))
}

/// Converts a big count to `u64` if it fits.
pub fn to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}

/// Small binomial in machine words, for sizes already known to be tiny.
pub(crate) fn binom_usize(n: usize, k: usize) -> usize {
    binomial::<u128>(n as u64, k as u64)
        .and_then(|v| usize::try_from(v).ok())
        .unwrap_or(usize::MAX)
}
