//! The concrete Eulerian families, their combinatorial definitions, and the
//! classical recurrences.
//!
//! Every family is an instance of the exponential generating function
//! `((1-q) e^{a(1-q)x} / (1 - q e^{d(1-q)x}))^b`:
//!
//! | family          | polynomial       | `(a, b, d)`   |
//! |-----------------|------------------|---------------|
//! | `TypeA_shifted` | `P(A_n, q)`      | `(1, 1, 1)`   |
//! | `TypeA`         | `A_n(q)`         | `(0, 1, 1)`   |
//! | `TypeA_qt`      | `A_n(q; t) / q`  | `(1, t, 1)`   |
//! | `TypeB`         | `P(B_n, q)`      | `(1, 1, 2)`   |
//! | `TypeB_qt`      | `B_n(q; t)`      | `(1, 1, 1+t)` |
//! | `General`       | `P_n(q, a, d)`   | `(a, 1, d)`   |
//!
//! Index alignment with the enumerations: `P(A_n, q)` is the descent
//! polynomial of `S_n`, and `A_n(q; t) = sum q^{exc+1} t^{cyc}` carries one
//! more factor of `q` than the generating function produces.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{rat, QPoly, Rational};
use crate::jacobi::JFraction;
use crate::riordan::ExpRiordan;
use crate::series::egf_coefficients;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyName {
    TypeAShifted,
    TypeA,
    TypeAQt,
    TypeB,
    TypeBQt,
    General,
}

impl FamilyName {
    pub const ALL: [FamilyName; 6] = [
        FamilyName::TypeAShifted,
        FamilyName::TypeA,
        FamilyName::TypeAQt,
        FamilyName::TypeB,
        FamilyName::TypeBQt,
        FamilyName::General,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::TypeAShifted => "TypeA_shifted",
            FamilyName::TypeA => "TypeA",
            FamilyName::TypeAQt => "TypeA_qt",
            FamilyName::TypeB => "TypeB",
            FamilyName::TypeBQt => "TypeB_qt",
            FamilyName::General => "General",
        }
    }

    fn takes_t(self) -> bool {
        matches!(self, FamilyName::TypeAQt | FamilyName::TypeBQt)
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or(Error::FamilyParams("unknown family name"))
    }
}

/// Exponent triple `(a, b, d)` of the Eulerian generating function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerParams {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

impl EulerParams {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        Self { a, b, d }
    }

    pub fn from_ints(a: i64, b: i64, d: i64) -> Self {
        Self::new(rat(a), rat(b), rat(d))
    }

    pub fn jfraction(&self, depth: usize) -> JFraction {
        JFraction::from_params(&self.a, &self.b, &self.d, depth)
    }

    /// `T_0..T_{n-1}` from the exponential generating function.
    pub fn egf(&self, n: usize) -> Result<Vec<QPoly>> {
        egf_coefficients(&self.a, &self.b, &self.d, n)
    }

    pub fn riordan(&self, order: usize) -> Result<ExpRiordan> {
        ExpRiordan::eulerian(&self.a, &self.b, &self.d, order)
    }

    /// `b >= 0` and `d >= a >= 0`, the range where strong q-log-convexity
    /// is guaranteed.
    pub fn in_convex_range(&self) -> bool {
        !self.b.is_negative() && !self.a.is_negative() && self.d >= self.a
    }
}

/// A family together with the parameters it needs: `t` for the
/// q-analogues, `a` and `d` for the general family, nothing otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    name: FamilyName,
    t: Option<Rational>,
    a: Option<Rational>,
    d: Option<Rational>,
}

impl FamilySpec {
    pub fn new(name: FamilyName, t: Option<Rational>, a: Option<Rational>, d: Option<Rational>) -> Result<Self> {
        let general = name == FamilyName::General;
        if name.takes_t() != t.is_some() {
            return Err(Error::FamilyParams(if t.is_some() {
                "t is only accepted by TypeA_qt and TypeB_qt"
            } else {
                "TypeA_qt and TypeB_qt require t"
            }));
        }
        if general != (a.is_some() && d.is_some()) || (!general && (a.is_some() || d.is_some())) {
            return Err(Error::FamilyParams(if general {
                "General requires both a and d"
            } else {
                "a and d are only accepted by General"
            }));
        }
        Ok(Self { name, t, a, d })
    }

    pub fn type_a_shifted() -> Self {
        Self::new(FamilyName::TypeAShifted, None, None, None).expect("valid")
    }

    pub fn type_a() -> Self {
        Self::new(FamilyName::TypeA, None, None, None).expect("valid")
    }

    pub fn type_a_qt(t: Rational) -> Self {
        Self::new(FamilyName::TypeAQt, Some(t), None, None).expect("valid")
    }

    pub fn type_b() -> Self {
        Self::new(FamilyName::TypeB, None, None, None).expect("valid")
    }

    pub fn type_b_qt(t: Rational) -> Self {
        Self::new(FamilyName::TypeBQt, Some(t), None, None).expect("valid")
    }

    pub fn general(a: Rational, d: Rational) -> Self {
        Self::new(FamilyName::General, None, Some(a), Some(d)).expect("valid")
    }

    pub fn name(&self) -> FamilyName {
        self.name
    }

    pub fn t(&self) -> Option<&Rational> {
        self.t.as_ref()
    }

    pub fn a(&self) -> Option<&Rational> {
        self.a.as_ref()
    }

    pub fn d(&self) -> Option<&Rational> {
        self.d.as_ref()
    }

    pub fn params(&self) -> EulerParams {
        let one = Rational::one;
        match self.name {
            FamilyName::TypeAShifted => EulerParams::new(one(), one(), one()),
            FamilyName::TypeA => EulerParams::new(Rational::zero(), one(), one()),
            FamilyName::TypeAQt => EulerParams::new(one(), self.t.clone().expect("validated"), one()),
            FamilyName::TypeB => EulerParams::new(one(), one(), rat(2)),
            FamilyName::TypeBQt => EulerParams::new(one(), one(), one() + self.t.as_ref().expect("validated")),
            FamilyName::General => EulerParams::new(
                self.a.clone().expect("validated"),
                one(),
                self.d.clone().expect("validated"),
            ),
        }
    }

    pub fn has_enumeration(&self) -> bool {
        self.name != FamilyName::General
    }

    pub fn has_recurrence(&self) -> bool {
        !self.name.takes_t()
    }

    /// `T_n(q)` by brute force over `S_n` or `B_n`. `n = 0` is the empty
    /// group and gives 1.
    pub fn enumerate(&self, n: usize, limits: &Enumerator) -> Result<QPoly> {
        EnumerationCache::new(*limits).enumerate(self, n)
    }

    /// `T_n(q)` from the family's own recurrence.
    pub fn recurrence(&self, n: usize) -> Result<QPoly> {
        match self.name {
            FamilyName::TypeAShifted => Ok(assemble(&eulerian_a_numbers(n))),
            FamilyName::TypeA if n == 0 => Ok(QPoly::one()),
            FamilyName::TypeA => Ok(assemble(&eulerian_a_numbers(n)).shift_up(1)),
            FamilyName::TypeB => Ok(eulerian_b_poly_rec(n)),
            FamilyName::General => Ok(general_eulerian(
                n,
                self.a.as_ref().expect("validated"),
                self.d.as_ref().expect("validated"),
            )),
            FamilyName::TypeAQt | FamilyName::TypeBQt => {
                Err(Error::FamilyParams("q-analogues have no recurrence route"))
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if let Some(t) = &self.t {
            write!(f, "(t={t})")?;
        }
        if let (Some(a), Some(d)) = (&self.a, &self.d) {
            write!(f, "(a={a},d={d})")?;
        }
        Ok(())
    }
}

fn assemble(row: &[BigInt]) -> QPoly {
    QPoly::from_coeffs(row.iter().cloned().map(Rational::from_integer).collect())
}

/// Signed permutation `pi(1..n)`: the absolute values form a permutation of
/// `1..n`, signs are arbitrary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    values: Vec<i32>,
}

impl SignedPerm {
    pub fn new(values: Vec<i32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let m = v.unsigned_abs() as usize;
            if m == 0 || m > n || seen[m] {
                return Err(Error::Precondition {
                    op: "SignedPerm::new",
                    requirement: "absolute values forming a permutation of 1..n",
                });
            }
            seen[m] = true;
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// Type-B descents: positions `i in 0..n` with `pi(i) > pi(i+1)`, where
    /// `pi(0) = 0`.
    pub fn descents(&self) -> usize {
        type_b_descents(&self.values)
    }

    /// Number of negative entries.
    pub fn negatives(&self) -> usize {
        self.values.iter().filter(|v| **v < 0).count()
    }
}

fn type_b_descents(values: &[i32]) -> usize {
    let mut prev = 0;
    let mut count = 0;
    for &v in values {
        if prev > v {
            count += 1;
        }
        prev = v;
    }
    count
}

/// Steps `perm` to its lexicographic successor; `false` after the last one.
fn next_permutation(perm: &mut [u8]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm.iter().rposition(|&x| x > perm[i]).expect("pivot has a successor");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Joint distribution of two statistics: `counts[i][j]` elements have
/// first statistic `i` and second statistic `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    counts: Vec<Vec<u64>>,
}

impl Tally {
    fn new(rows: usize, cols: usize) -> Self {
        Self {
            counts: vec![vec![0; cols]; rows],
        }
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// `sum counts[i][j] q^{i + shift} t^j` with `t` substituted.
    pub fn substitute(&self, t: &Rational, shift: usize) -> QPoly {
        let coeffs = self
            .counts
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                let mut power = Rational::one();
                for &c in row {
                    if c != 0 {
                        acc += Rational::from_integer(c.into()) * &power;
                    }
                    power *= t;
                }
                acc
            })
            .collect();
        QPoly::from_coeffs(coeffs).shift_up(shift)
    }
}

/// Brute-force enumeration over `S_n` and `B_n`, bounded by size caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumerator {
    /// Largest `n` enumerated over `S_n`.
    pub max_symmetric: usize,
    /// Largest `n` enumerated over `B_n`.
    pub max_signed: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self {
            max_symmetric: 8,
            max_signed: 7,
        }
    }
}

impl Enumerator {
    fn check(n: usize, cap: usize) -> Result<()> {
        // u8 permutation storage bounds the hard limit
        if n == 0 || n > cap || n > 20 {
            return Err(Error::EnumerationRange { n, cap });
        }
        Ok(())
    }

    /// `sum_{pi in S_n} q^{des(pi)}`.
    pub fn descents_a(&self, n: usize) -> Result<QPoly> {
        Self::check(n, self.max_symmetric)?;
        let mut counts = vec![0u64; n];
        let mut perm: Vec<u8> = (0..n as u8).collect();
        loop {
            let des = perm.windows(2).filter(|w| w[0] > w[1]).count();
            counts[des] += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(QPoly::from_coeffs(
            counts.into_iter().map(|c| Rational::from_integer(c.into())).collect(),
        ))
    }

    /// Joint distribution of (excedances, cycles) over `S_n`.
    pub fn exc_cycles_tally(&self, n: usize) -> Result<Tally> {
        Self::check(n, self.max_symmetric)?;
        let mut tally = Tally::new(n, n + 1);
        let mut perm: Vec<u8> = (0..n as u8).collect();
        let mut seen = vec![false; n];
        loop {
            let exc = perm.iter().enumerate().filter(|(i, &p)| p as usize > *i).count();
            seen.iter_mut().for_each(|s| *s = false);
            let mut cycles = 0;
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                cycles += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = perm[i] as usize;
                }
            }
            tally.counts[exc][cycles] += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(tally)
    }

    /// `A_n(q; t) = sum_{pi in S_n} q^{exc(pi)+1} t^{cyc(pi)}` at a rational `t`.
    pub fn exc_cycles(&self, n: usize, t: &Rational) -> Result<QPoly> {
        Ok(self.exc_cycles_tally(n)?.substitute(t, 1))
    }

    /// Joint distribution of (type-B descents, negative entries) over `B_n`.
    pub fn signed_tally(&self, n: usize) -> Result<Tally> {
        Self::check(n, self.max_signed)?;
        let mut tally = Tally::new(n + 1, n + 1);
        let mut perm: Vec<u8> = (1..=n as u8).collect();
        let mut values = vec![0i32; n];
        loop {
            for signs in 0u32..(1 << n) {
                for (k, (v, &p)) in values.iter_mut().zip(&perm).enumerate() {
                    *v = if signs >> k & 1 == 1 { -(p as i32) } else { p as i32 };
                }
                let des = type_b_descents(&values);
                tally.counts[des][signs.count_ones() as usize] += 1;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(tally)
    }

    /// `B_n(q; t) = sum_{pi in B_n} q^{d_B(pi)} t^{N(pi)}` at a rational `t`.
    pub fn signed(&self, n: usize, t: &Rational) -> Result<QPoly> {
        Ok(self.signed_tally(n)?.substitute(t, 0))
    }
}

/// Keeps the joint tallies of each `S_n` and `B_n` so that every `t`
/// reuses a single pass over the group.
#[derive(Clone, Debug, Default)]
pub struct EnumerationCache {
    limits: Enumerator,
    exc_cycles: BTreeMap<usize, Tally>,
    signed: BTreeMap<usize, Tally>,
}

impl EnumerationCache {
    pub fn new(limits: Enumerator) -> Self {
        Self {
            limits,
            exc_cycles: BTreeMap::new(),
            signed: BTreeMap::new(),
        }
    }

    pub fn limits(&self) -> &Enumerator {
        &self.limits
    }

    /// Largest `n` the family can be enumerated at, `None` for General.
    pub fn cap(&self, name: FamilyName) -> Option<usize> {
        match name {
            FamilyName::TypeB | FamilyName::TypeBQt => Some(self.limits.max_signed),
            FamilyName::General => None,
            _ => Some(self.limits.max_symmetric),
        }
    }

    pub fn enumerate(&mut self, spec: &FamilySpec, n: usize) -> Result<QPoly> {
        if n == 0 && spec.has_enumeration() {
            return Ok(QPoly::one());
        }
        let one = Rational::one();
        let t = spec.t.as_ref().unwrap_or(&one);
        match spec.name {
            FamilyName::TypeAShifted => self.limits.descents_a(n),
            FamilyName::TypeA => Ok(self.exc_cycles_tally(n)?.substitute(t, 1)),
            // the excedance statistic carries one extra factor of q
            FamilyName::TypeAQt => Ok(self
                .exc_cycles_tally(n)?
                .substitute(t, 1)
                .shift_down(1)
                .expect("every term carries q")),
            FamilyName::TypeB | FamilyName::TypeBQt => Ok(self.signed_tally(n)?.substitute(t, 0)),
            FamilyName::General => Err(Error::FamilyParams("General has no enumeration route")),
        }
    }

    fn exc_cycles_tally(&mut self, n: usize) -> Result<&Tally> {
        if !self.exc_cycles.contains_key(&n) {
            let tally = self.limits.exc_cycles_tally(n)?;
            self.exc_cycles.insert(n, tally);
        }
        Ok(&self.exc_cycles[&n])
    }

    fn signed_tally(&mut self, n: usize) -> Result<&Tally> {
        if !self.signed.contains_key(&n) {
            let tally = self.limits.signed_tally(n)?;
            self.signed.insert(n, tally);
        }
        Ok(&self.signed[&n])
    }
}

/// Classical Eulerian numbers `A(n, k)`, `k = 0..=n`: permutations of `S_n`
/// with `k` descents. Row 0 is `(1)`.
pub fn eulerian_a_numbers(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for k in 0..m {
            // A(m,k) = (k+1) A(m-1,k) + (m-k) A(m-1,k-1)
            let stay = row.get(k).map_or_else(BigInt::zero, |v| v * (k + 1));
            let rise = if k > 0 { &row[k - 1] * (m - k) } else { BigInt::zero() };
            next[k] = stay + rise;
        }
        row = next;
    }
    row
}

/// Type-B Eulerian numbers `B_{n,k}`, `k = 0..=n`, from
/// `B_{n,k} = (2k+1) B_{n-1,k} + (2n-2k+1) B_{n-1,k-1}`.
pub fn eulerian_b_numbers(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let next = (0..=m)
            .map(|k| {
                let stay = row.get(k).map_or_else(BigInt::zero, |v| v * (2 * k + 1));
                let rise = if k > 0 { &row[k - 1] * (2 * m - 2 * k + 1) } else { BigInt::zero() };
                stay + rise
            })
            .collect();
        row = next;
    }
    row
}

/// `P(B_n, q)` from `P(B_n) = ((2n-1) q + 1) P(B_{n-1}) + 2q(1-q) P'(B_{n-1})`.
pub fn eulerian_b_poly_rec(n: usize) -> QPoly {
    let two_q_one_minus_q = QPoly::from_ints(&[0, 2, -2]);
    let mut p = QPoly::one();
    for m in 1..=n {
        let lead = QPoly::from_ints(&[1, 2 * m as i64 - 1]);
        p = &lead * &p + &two_q_one_minus_q * &p.derivative();
    }
    p
}

/// General Eulerian numbers `A_{n,k}(a, d)` for `k = -1..=n-1`; entry `j`
/// holds `A_{n, j-1}`. Recurrence:
/// `A_{n,k} = (-a + (k+2)d) A_{n-1,k} + (a + (n-k-1)d) A_{n-1,k-1}`,
/// `A_{0,-1} = 1`.
pub fn general_eulerian_numbers(n: usize, a: &Rational, d: &Rational) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for m in 1..=n {
        let next = (0..=m)
            .map(|j| {
                // k = j - 1
                let k = j as i64 - 1;
                let stay = row
                    .get(j)
                    .map_or_else(Rational::zero, |v| v * (d * rat(k + 2) - a));
                let rise = if j > 0 {
                    &row[j - 1] * (a + d * rat(m as i64 - k - 1))
                } else {
                    Rational::zero()
                };
                stay + rise
            })
            .collect();
        row = next;
    }
    row
}

/// `P_n(q, a, d) = sum_k A_{n,k}(a, d) q^{n-1-k}`, normalised so that the
/// sequence has exponential generating function
/// `(1-q) e^{a(1-q)x} / (1 - q e^{d(1-q)x})`. The opposite exponent
/// `q^{k+1}` gives the reversed polynomial, i.e. the family `(d - a, 1, d)`.
pub fn general_eulerian(n: usize, a: &Rational, d: &Rational) -> QPoly {
    let mut coeffs = general_eulerian_numbers(n, a, d);
    coeffs.reverse();
    QPoly::from_coeffs(coeffs)
}

/// One row of the `B_n(q; 0)` comparison: the `t = 0` specialisation of the
/// type-B q-analogue next to `A_n(q)` and `P(A_n, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TZeroRow {
    pub n: usize,
    pub b_n_q_0: QPoly,
    pub a_n: QPoly,
    pub p_a_n: QPoly,
}

impl TZeroRow {
    pub fn matches_a_n(&self) -> bool {
        self.b_n_q_0 == self.a_n
    }

    pub fn matches_p_a_n(&self) -> bool {
        self.b_n_q_0 == self.p_a_n
    }
}

/// `B_n(q; 0)` against `A_n(q)` and `P(A_n, q)` for `n < nmax`, all from the
/// generating functions.
pub fn t_zero_comparison(nmax: usize) -> Result<Vec<TZeroRow>> {
    let b0 = FamilySpec::type_b_qt(Rational::zero()).params().egf(nmax)?;
    let a = FamilySpec::type_a().params().egf(nmax)?;
    let pa = FamilySpec::type_a_shifted().params().egf(nmax)?;
    Ok(b0
        .into_iter()
        .zip(a)
        .zip(pa)
        .enumerate()
        .map(|(n, ((b_n_q_0, a_n), p_a_n))| TZeroRow { n, b_n_q_0, a_n, p_a_n })
        .collect())
}
