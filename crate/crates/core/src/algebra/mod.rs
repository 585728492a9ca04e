//! Exact scalars, polynomials in `q`, and rational functions in `q`.

pub(crate) mod poly;
mod ratfun;

pub use poly::QPoly;
pub use ratfun::QRatFun;

use num_bigint::BigInt;

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator by `num-rational`.
pub type Rational = num_rational::BigRational;

/// Integer as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `numer / denom` as a [`Rational`].
///
/// Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `n!` as a [`Rational`].
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::from(1u8);
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}
