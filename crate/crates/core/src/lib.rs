//! Exact computation of Eulerian polynomials of Coxeter groups.
//!
//! A polynomial sequence `T_n(q)` with exponential generating function
//! `((1-q) e^{a(1-q)x} / (1 - q e^{d(1-q)x}))^b` is reached three ways:
//!
//! * [`series`]: expand the EGF over truncated power series with
//!   rational-function coefficients;
//! * [`jacobi`]: sum weighted Motzkin paths (or expand the finite Jacobi
//!   continued fraction) built from the closed-form coefficients `s_i`, `t_i`;
//! * [`families`]: brute-force enumeration over `S_n` and `B_n`, plus the
//!   classical recurrences.
//!
//! [`riordan`] connects the first two through the production matrix of the
//! exponential Riordan array `[g, f]`, and [`convexity`] checks
//! (strong) q-log-convexity of the resulting sequences.
//!
//! Everything is exact: coefficients are [`Rational`]s, and no floating point
//! is used anywhere. The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use eulerian_core::families::{Enumerator, FamilySpec};
//! use eulerian_core::QPoly;
//!
//! let type_b = FamilySpec::type_b();
//! let params = type_b.params();
//! let egf = params.egf(5).unwrap();
//! let cfrac = params.jfraction(3).moments_motzkin(5).unwrap();
//! let enumerated = type_b.enumerate(3, &Enumerator::default()).unwrap();
//!
//! assert_eq!(egf[3], QPoly::from_ints(&[1, 23, 23, 1]));
//! assert_eq!(cfrac.mu(), &egf[..]);
//! assert_eq!(enumerated, egf[3]);
//! ```

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod convexity;
mod error;
pub mod families;
pub mod jacobi;
pub mod riordan;
pub mod series;

pub use algebra::{QPoly, QRatFun, Rational};
pub use error::{Error, Result};
