//! q-log-convexity checks with witnesses, Zhu's continued-fraction
//! criterion, and the log-convexity experiment for Eulerian transformations.
//!
//! `f >=_q g` means `f - g` has nonnegative coefficients. A sequence is
//! q-log-convex when `f_{n-1} f_{n+1} >=_q f_n^2` for `n >= 1`, and strongly
//! q-log-convex when `f_{m-1} f_{n+1} >=_q f_m f_n` for all `n >= m >= 1`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{rat, QPoly, Rational};
use crate::families::{eulerian_a_numbers, eulerian_b_numbers, EulerParams};
use crate::jacobi::JFraction;
use crate::{Error, Result};

/// A failed inequality. For polynomial checks `coeff_index` is the first
/// negative coefficient of the difference; numeric checks leave it `None`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub m: usize,
    pub n: usize,
    pub coeff_index: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityReport {
    witnesses: Vec<Witness>,
    checked_range: (usize, usize),
}

impl ConvexityReport {
    fn new(mut witnesses: Vec<Witness>, checked_range: (usize, usize)) -> Self {
        witnesses.sort();
        Self {
            witnesses,
            checked_range,
        }
    }

    pub fn verdict(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    /// Largest `(m, n)` examined.
    pub fn checked_range(&self) -> (usize, usize) {
        self.checked_range
    }
}

fn ensure_len(seq_len: usize, required: usize) -> Result<()> {
    if seq_len < required {
        return Err(Error::SequenceTooShort {
            required,
            available: seq_len,
        });
    }
    Ok(())
}

fn pair_witness(seq: &[QPoly], m: usize, n: usize) -> Option<Witness> {
    let diff = &seq[m - 1] * &seq[n + 1] - &seq[m] * &seq[n];
    diff.first_negative().map(|k| Witness {
        m,
        n,
        coeff_index: Some(k),
    })
}

/// `f_{n-1} f_{n+1} >=_q f_n^2` for every interior `n`.
pub fn check_q_log_convex(seq: &[QPoly]) -> Result<ConvexityReport> {
    ensure_len(seq.len(), 3)?;
    let last = seq.len() - 2;
    let witnesses = (1..=last).filter_map(|n| pair_witness(seq, n, n)).collect();
    Ok(ConvexityReport::new(witnesses, (last, last)))
}

/// `f_{m-1} f_{n+1} >=_q f_m f_n` for all `1 <= m <= n <= len - 2`.
pub fn check_strong_q_log_convex(seq: &[QPoly]) -> Result<ConvexityReport> {
    ensure_len(seq.len(), 3)?;
    let last = seq.len() - 2;
    let witnesses = (1..=last)
        .flat_map(|m| (m..=last).map(move |n| (m, n)))
        .filter_map(|(m, n)| pair_witness(seq, m, n))
        .collect();
    Ok(ConvexityReport::new(witnesses, (last, last)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZhuReport {
    /// Failures of `s_i s_{i+1} >=_q t_{i+1}`, recorded as `m = n = i`.
    pub report: ConvexityReport,
    /// Whether every `s_i` and `t_i` examined has nonnegative coefficients,
    /// which the criterion assumes.
    pub hypothesis_nonneg: bool,
    /// `s_0 s_1 - t_1`; outside the criterion's range, reported for reference.
    pub gap_at_zero: QPoly,
}

impl ZhuReport {
    /// The criterion applies and holds.
    pub fn implies_strong_convexity(&self) -> bool {
        self.hypothesis_nonneg && self.report.verdict()
    }
}

/// Checks `s_i s_{i+1} >=_q t_{i+1}` for `1 <= i <= i_max`.
pub fn zhu_criterion(jf: &JFraction, i_max: usize) -> Result<ZhuReport> {
    let required = i_max.max(1) + 2;
    if jf.depth() < required {
        return Err(Error::FractionTooShort {
            required,
            available: jf.depth(),
        });
    }
    let (s, t) = (jf.s(), jf.t());
    let gap = |i: usize| &s[i] * &s[i + 1] - &t[i];
    let witnesses = (1..=i_max)
        .filter_map(|i| {
            gap(i).first_negative().map(|k| Witness {
                m: i,
                n: i,
                coeff_index: Some(k),
            })
        })
        .collect();
    let hypothesis_nonneg = s[..=i_max + 1].iter().all(QPoly::is_nonneg) && t[..=i_max].iter().all(QPoly::is_nonneg);
    Ok(ZhuReport {
        report: ConvexityReport::new(witnesses, (i_max, i_max)),
        hypothesis_nonneg,
        gap_at_zero: gap(0),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapAnalysis {
    /// `s_i s_{i+1} - t_{i+1}`, expanded.
    pub gap: QPoly,
    /// `(di+ab)(di+d+ab) + (ab^2 d - a^2 b^2) q + (di+bd-ab)(di+d+bd-ab) q^2`.
    pub lower_bound: QPoly,
    /// `gap >=_q lower_bound`.
    pub gap_dominates_bound: bool,
    /// `lower_bound >=_q 0`.
    pub bound_nonneg: bool,
}

/// The gap `s_i s_{i+1} - t_{i+1}` from its expanded coefficients, with the
/// intermediate lower bound that makes nonnegativity evident when
/// `b >= 0` and `d >= a >= 0`.
pub fn symbolic_gap(i: usize, params: &EulerParams) -> GapAnalysis {
    let EulerParams { a, b, d } = params;
    let di = d * rat(i as i64);
    let ab = a * b;
    let bd = b * d;
    let constant = (&di + &ab) * (&di + d + &ab);
    let quadratic = (&di + &bd - &ab) * (&di + d + &bd - &ab);
    let a2b2 = &ab * &ab;
    let linear = (&di + &ab) * (&di + d + &bd - &ab) + &ab * d * (b - Rational::one()) - &a2b2;
    let bound_linear = &ab * b * d - &a2b2;
    let gap = QPoly::from_coeffs(alloc::vec![constant.clone(), linear, quadratic.clone()]);
    let lower_bound = QPoly::from_coeffs(alloc::vec![constant, bound_linear, quadratic]);
    GapAnalysis {
        gap_dominates_bound: gap.ge_q(&lower_bound),
        bound_nonneg: lower_bound.is_nonneg(),
        gap,
        lower_bound,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Triangle {
    /// Classical Eulerian numbers `A(n, k)`.
    EulerianA,
    /// Type-B Eulerian numbers `B(n, k)`.
    EulerianB,
}

impl Triangle {
    pub fn row(self, n: usize) -> Vec<BigInt> {
        match self {
            Triangle::EulerianA => eulerian_a_numbers(n),
            Triangle::EulerianB => eulerian_b_numbers(n),
        }
    }
}

/// Largest `n_max` accepted by [`transform_preserves_lcx`].
pub const TRANSFORM_MAX_N: usize = 64;

/// `z_n = sum_k T(n, k) x_k` for `n = 0..=n_max`.
pub fn transform(triangle: Triangle, x: &[Rational], n_max: usize) -> Result<Vec<Rational>> {
    ensure_len(x.len(), n_max + 1)?;
    Ok((0..=n_max)
        .map(|n| {
            triangle
                .row(n)
                .into_iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (t, xk)| acc + Rational::from_integer(t) * xk)
        })
        .collect())
}

/// Nonnegative with `x_k^2 <= x_{k-1} x_{k+1}`; returns the first failing index.
fn first_log_convex_failure(x: &[Rational]) -> Option<usize> {
    if let Some(k) = x.iter().position(Signed::is_negative) {
        return Some(k);
    }
    (1..x.len().saturating_sub(1)).find(|&k| &x[k] * &x[k] > &x[k - 1] * &x[k + 1])
}

/// Evidence run for "the Eulerian transformation preserves log-convexity":
/// refuses non-log-convex input, then reports every `n` where
/// `z_n^2 > z_{n-1} z_{n+1}`.
pub fn transform_preserves_lcx(triangle: Triangle, x: &[Rational], n_max: usize) -> Result<ConvexityReport> {
    if n_max > TRANSFORM_MAX_N {
        return Err(Error::EnumerationRange {
            n: n_max,
            cap: TRANSFORM_MAX_N,
        });
    }
    ensure_len(x.len(), n_max + 1)?;
    let x = &x[..=n_max];
    if let Some(index) = first_log_convex_failure(x) {
        return Err(Error::NotLogConvex { index });
    }
    let z = transform(triangle, x, n_max)?;
    let witnesses = (1..n_max)
        .filter(|&n| &z[n] * &z[n] > &z[n - 1] * &z[n + 1])
        .map(|n| Witness {
            m: n,
            n,
            coeff_index: None,
        })
        .collect();
    Ok(ConvexityReport::new(witnesses, (n_max.saturating_sub(1), n_max.saturating_sub(1))))
}

/// Named log-convex input sequences for the transformation experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinSeq {
    Ones,
    PowersOfTwo,
    Factorials,
    Catalan,
    Motzkin,
}

impl BuiltinSeq {
    pub const ALL: [BuiltinSeq; 5] = [
        BuiltinSeq::Ones,
        BuiltinSeq::PowersOfTwo,
        BuiltinSeq::Factorials,
        BuiltinSeq::Catalan,
        BuiltinSeq::Motzkin,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinSeq::Ones => "ones",
            BuiltinSeq::PowersOfTwo => "powers-of-two",
            BuiltinSeq::Factorials => "factorials",
            BuiltinSeq::Catalan => "catalan",
            BuiltinSeq::Motzkin => "motzkin",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.as_str() == name)
    }

    /// First `len` terms.
    pub fn terms(self, len: usize) -> Vec<Rational> {
        let mut out: Vec<BigInt> = Vec::with_capacity(len);
        for n in 0..len {
            let next = match self {
                BuiltinSeq::Ones => BigInt::one(),
                BuiltinSeq::PowersOfTwo => BigInt::one() << n,
                BuiltinSeq::Factorials => match n {
                    0 => BigInt::one(),
                    _ => &out[n - 1] * n,
                },
                // C_n = C_{n-1} * 2(2n-1) / (n+1)
                BuiltinSeq::Catalan => match n {
                    0 => BigInt::one(),
                    _ => &out[n - 1] * (4 * n - 2) / (n + 1),
                },
                // (n+2) M_n = (2n+1) M_{n-1} + 3(n-1) M_{n-2}
                BuiltinSeq::Motzkin => match n {
                    0 | 1 => BigInt::one(),
                    _ => (&out[n - 1] * (2 * n + 1) + &out[n - 2] * (3 * n - 3)) / (n + 2),
                },
            };
            out.push(next);
        }
        out.into_iter().map(Rational::from_integer).collect()
    }
}
