//! Jacobi continued fractions, their moment sequences and the associated
//! monic orthogonal polynomials.
//!
//! A [`JFraction`] of depth `K` stores `s_0..s_{K-1}` and `t_1..t_{K-1}`
//! and stands for
//!
//! ```text
//! 1 / (1 - s_0 x - t_1 x^2 / (1 - s_1 x - t_2 x^2 / (1 - ...)))
//! ```
//!
//! `t` is stored zero-based: `t()[i]` is `t_{i+1}`.

use alloc::vec;
use alloc::vec::Vec;


use crate::algebra::{QPoly, QRatFun, Rational};
use crate::riordan::LowerTri;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JFraction {
    s: Vec<QPoly>,
    t: Vec<QPoly>,
}

/// Continued-fraction depth needed to determine `n` moments `mu_0..mu_{n-1}`.
pub fn required_depth(n: usize) -> usize {
    n.div_ceil(2).max(1)
}

impl JFraction {
    pub fn new(s: Vec<QPoly>, t: Vec<QPoly>) -> Result<Self> {
        if s.is_empty() || t.len() + 1 != s.len() {
            return Err(Error::FractionTooShort {
                required: t.len() + 1,
                available: s.len(),
            });
        }
        Ok(Self { s, t })
    }

    /// Closed-form coefficients of the Eulerian family `(a, b, d)`:
    /// `s_i = (di + ab) + (di + bd - ab) q`, `t_{i+1} = d^2 (i+1)(i+b) q`.
    pub fn from_params(a: &Rational, b: &Rational, d: &Rational, depth: usize) -> Self {
        assert!(depth > 0, "depth must be positive");
        let ab = a * b;
        let s = (0..depth)
            .map(|i| {
                let di = d * Rational::from_integer(i.into());
                QPoly::linear(&di + &ab, &di + b * d - &ab)
            })
            .collect();
        let t = (0..depth - 1)
            .map(|i| {
                let i1 = Rational::from_integer((i + 1).into());
                let ib = Rational::from_integer(i.into()) + b;
                QPoly::monomial(d * d * i1 * ib, 1)
            })
            .collect();
        Self { s, t }
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self) -> &[QPoly] {
        &self.s
    }

    /// `t_1, t_2, ...` (zero-based storage).
    pub fn t(&self) -> &[QPoly] {
        &self.t
    }

    pub fn truncate(&self, depth: usize) -> Self {
        let depth = depth.clamp(1, self.depth());
        Self {
            s: self.s[..depth].to_vec(),
            t: self.t[..depth - 1].to_vec(),
        }
    }

    fn ensure_depth(&self, n: usize) -> Result<usize> {
        let required = required_depth(n);
        if self.depth() < required {
            return Err(Error::FractionTooShort {
                required,
                available: self.depth(),
            });
        }
        Ok(required)
    }

    /// `mu_0..mu_{n-1}` as weighted Motzkin path sums: level steps at height
    /// `h` weigh `s_h`, down steps from height `h` weigh `t_h`, up steps 1.
    pub fn moments_motzkin(&self, n: usize) -> Result<MomentSeq> {
        self.ensure_depth(n)?;
        if n == 0 {
            return Ok(MomentSeq::new(Vec::new()));
        }
        let top = n.saturating_sub(1) / 2;
        let mut heights = vec![QPoly::zero(); top + 1];
        heights[0] = QPoly::one();
        let mut mu = Vec::with_capacity(n);
        mu.push(QPoly::one());
        for _ in 1..n {
            let next: Vec<QPoly> = (0..=top)
                .map(|h| {
                    let mut acc = &heights[h] * &self.s[h];
                    if h > 0 {
                        acc = acc + &heights[h - 1];
                    }
                    if h < top {
                        acc = acc + &heights[h + 1] * &self.t[h];
                    }
                    acc
                })
                .collect();
            heights = next;
            mu.push(heights[0].clone());
        }
        Ok(MomentSeq { mu })
    }

    /// `mu_0..mu_{n-1}` by collapsing the finite continued fraction into a
    /// single quotient `A(x)/B(x)` of polynomials in `x` and expanding it.
    pub fn moments_cfrac(&self, n: usize) -> Result<MomentSeq> {
        let depth = self.ensure_depth(n)?;
        if n == 0 {
            return Ok(MomentSeq::new(Vec::new()));
        }
        // innermost level: 1 / (1 - s_{D-1} x)
        let mut num: Vec<QPoly> = vec![QPoly::one()];
        let mut den: Vec<QPoly> = vec![QPoly::one(), -&self.s[depth - 1]];
        for k in (0..depth - 1).rev() {
            // 1 / (1 - s_k x - t_{k+1} x^2 num/den) = den / ((1 - s_k x) den - t_{k+1} x^2 num)
            let mut next = vec![QPoly::zero(); (den.len() + 1).max(num.len() + 2)];
            for (i, c) in den.iter().enumerate() {
                next[i] = &next[i] + c;
                next[i + 1] = &next[i + 1] - &(c * &self.s[k]);
            }
            for (i, c) in num.iter().enumerate() {
                next[i + 2] = &next[i + 2] - &(c * &self.t[k]);
            }
            num = core::mem::replace(&mut den, next);
        }
        // den(0) = 1, so the expansion needs no division
        let mut mu: Vec<QPoly> = Vec::with_capacity(n);
        for m in 0..n {
            let mut c = num.get(m).cloned().unwrap_or_default();
            for j in 1..=m.min(den.len() - 1) {
                c = c - &den[j] * &mu[m - j];
            }
            mu.push(c);
        }
        Ok(MomentSeq { mu })
    }

    /// Coefficient matrix of `Q_0..Q_{n-1}` from
    /// `Q_k = (x - s_{k-1}) Q_{k-1} - t_{k-1} Q_{k-2}`.
    pub fn orthopoly(&self, n: usize) -> Result<OrthoBasis> {
        if n > self.depth() {
            return Err(Error::FractionTooShort {
                required: n,
                available: self.depth(),
            });
        }
        let mut polys: Vec<Vec<QPoly>> = Vec::with_capacity(n);
        for k in 0..n {
            let next = match k {
                0 => vec![QPoly::one()],
                _ => {
                    let prev = &polys[k - 1];
                    let mut q = vec![QPoly::zero(); k + 1];
                    for (i, c) in prev.iter().enumerate() {
                        q[i + 1] = &q[i + 1] + c;
                        q[i] = &q[i] - &(c * &self.s[k - 1]);
                    }
                    if k >= 2 {
                        for (i, c) in polys[k - 2].iter().enumerate() {
                            q[i] = &q[i] - &(c * &self.t[k - 2]);
                        }
                    }
                    q
                }
            };
            polys.push(next);
        }
        let rows = polys
            .into_iter()
            .map(|p| {
                let mut row: Vec<QRatFun> = p.into_iter().map(QRatFun::from).collect();
                row.resize(n, QRatFun::zero());
                row
            })
            .collect();
        Ok(OrthoBasis {
            matrix: LowerTri::from_rows(rows)?,
        })
    }
}

/// Moments `mu_0, mu_1, ...` of a linear functional on polynomials in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSeq {
    mu: Vec<QPoly>,
}

impl MomentSeq {
    pub fn new(mu: Vec<QPoly>) -> Self {
        Self { mu }
    }

    pub fn mu(&self) -> &[QPoly] {
        &self.mu
    }

    pub fn into_vec(self) -> Vec<QPoly> {
        self.mu
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    /// `L(f g)` for polynomials in `x` given by coefficient vectors.
    fn pairing(&self, f: &[QRatFun], g: &[QRatFun]) -> QRatFun {
        let mut acc = QRatFun::zero();
        for (i, a) in f.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                if !b.is_zero() && !self.mu[i + j].is_zero() {
                    acc = acc + (a * b).mul_poly(&self.mu[i + j]);
                }
            }
        }
        acc
    }

    /// Recovers the continued fraction of the largest depth the available
    /// moments determine (`len / 2`).
    pub fn to_jfraction(&self) -> Result<JFraction> {
        self.to_jfraction_depth(self.len() / 2)
    }

    /// Recovers `s_0..s_{depth-1}`, `t_1..t_{depth-1}` by Gram-Schmidt
    /// orthogonalisation of `1, x, x^2, ...` against the moment functional:
    /// `s_n = <x Q_n, Q_n> / <Q_n, Q_n>`, `t_n = <Q_n, Q_n> / <Q_{n-1}, Q_{n-1}>`.
    pub fn to_jfraction_depth(&self, depth: usize) -> Result<JFraction> {
        if depth == 0 || self.len() < 2 * depth {
            return Err(Error::TooFewMoments {
                required: 2 * depth.max(1),
                available: self.len(),
            });
        }
        let mut basis: Vec<Vec<QRatFun>> = Vec::with_capacity(depth);
        let mut norms: Vec<QRatFun> = Vec::with_capacity(depth);
        let mut s = Vec::with_capacity(depth);
        let mut t = Vec::with_capacity(depth - 1);
        for n in 0..depth {
            let q_n = if n == 0 {
                vec![QRatFun::one()]
            } else {
                let mut monomial = vec![QRatFun::zero(); n + 1];
                monomial[n] = QRatFun::one();
                let mut q = monomial.clone();
                for (q_k, norm_k) in basis.iter().zip(&norms) {
                    let coef = self.pairing(&monomial, q_k).checked_div(norm_k)?;
                    for (c, b) in q.iter_mut().zip(q_k) {
                        *c = &*c - &(&coef * b);
                    }
                }
                q
            };
            let norm = self.pairing(&q_n, &q_n);
            if norm.is_zero() {
                return Err(Error::NotQuasiDefinite { degree: n });
            }
            let mut x_q = vec![QRatFun::zero()];
            x_q.extend(q_n.iter().cloned());
            let s_n = self.pairing(&x_q, &q_n).checked_div(&norm)?;
            s.push(s_n.into_poly().ok_or(Error::NotPolynomial { index: n })?);
            if let Some(prev) = norms.last() {
                let t_n = norm.checked_div(prev)?;
                t.push(t_n.into_poly().ok_or(Error::NotPolynomial { index: n })?);
            }
            basis.push(q_n);
            norms.push(norm);
        }
        JFraction::new(s, t)
    }
}

/// Monic polynomials `Q_0, Q_1, ...`; row `n` of the matrix holds the
/// coefficients of `Q_n` in `1, x, x^2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoBasis {
    matrix: LowerTri,
}

impl OrthoBasis {
    pub fn from_matrix(matrix: LowerTri) -> Result<Self> {
        if (0..matrix.order()).any(|i| !matrix.get(i, i).is_one()) {
            return Err(Error::Precondition {
                op: "OrthoBasis::from_matrix",
                requirement: "monic rows",
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &LowerTri {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.matrix.order()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.order() == 0
    }

    /// `true` iff `L(Q_n x^m) = 0` for all `0 <= m < n`. Needs moments up to
    /// index `2N - 2`.
    pub fn check_orthogonality(&self, moments: &MomentSeq) -> Result<bool> {
        let n = self.len();
        let required = (2 * n).saturating_sub(1);
        if moments.len() < required {
            return Err(Error::TooFewMoments {
                required,
                available: moments.len(),
            });
        }
        for row in 1..n {
            for m in 0..row {
                let sum = self
                    .matrix
                    .row(row)
                    .iter()
                    .enumerate()
                    .fold(QRatFun::zero(), |acc, (k, a)| acc + a.mul_poly(&moments.mu()[k + m]));
                if !sum.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    fn params(a: i64, b: i64, d: i64, depth: usize) -> JFraction {
        JFraction::from_params(&rat(a), &rat(b), &rat(d), depth)
    }

    #[test]
    fn params_examples() {
        let jf = params(1, 1, 2, 3);
        assert_eq!(jf.s()[0], p(&[1, 1]));
        assert_eq!(jf.t()[0], p(&[0, 4]));
        let jf = params(0, 1, 1, 2);
        assert_eq!(jf.s()[0], p(&[0, 1]));
        assert_eq!(jf.t()[0], p(&[0, 1]));
        let jf = params(1, 3, 1, 2);
        assert_eq!(jf.s()[0], p(&[3]));
        assert_eq!(jf.t()[0], p(&[0, 3]));
    }

    #[test]
    fn motzkin_small_moments() {
        let jf = JFraction::new(vec![p(&[2, 1]), p(&[5])], vec![p(&[0, 3])]).unwrap();
        let mu = jf.moments_motzkin(3).unwrap();
        assert_eq!(mu.mu()[0], QPoly::one());
        assert_eq!(mu.mu()[1], p(&[2, 1]));
        assert_eq!(mu.mu()[2], &p(&[2, 1]) * &p(&[2, 1]) + p(&[0, 3]));
    }

    #[test]
    fn zero_moments_requested() {
        let jf = params(1, 1, 1, 1);
        assert!(jf.moments_motzkin(0).unwrap().is_empty());
        assert!(jf.moments_cfrac(0).unwrap().is_empty());
        assert_eq!(jf.moments_cfrac(1).unwrap().mu(), &[QPoly::one()]);
    }

    #[test]
    fn type_b_third_moment() {
        let mu = params(1, 1, 2, 3).moments_motzkin(4).unwrap();
        assert_eq!(mu.mu()[3], p(&[1, 23, 23, 1]));
    }

    #[test]
    fn catalan_weighted_moments() {
        let jf = JFraction::new(vec![p(&[]); 4], vec![p(&[0, 1]); 3]).unwrap();
        let mu = jf.moments_cfrac(7).unwrap();
        let expect = [p(&[1]), p(&[]), p(&[0, 1]), p(&[]), p(&[0, 0, 2]), p(&[]), p(&[0, 0, 0, 5])];
        assert_eq!(mu.mu(), &expect[..]);
        assert_eq!(jf.moments_motzkin(7).unwrap(), mu);
    }

    #[test]
    fn shifted_type_a_third_moment() {
        let mu = params(1, 1, 1, 2).moments_cfrac(4).unwrap();
        assert_eq!(mu.mu()[3], p(&[1, 4, 1]));
        assert_eq!(mu.mu()[0], QPoly::one());
    }

    #[test]
    fn too_short_fraction() {
        let jf = params(1, 1, 1, 2);
        assert_eq!(
            jf.moments_motzkin(6),
            Err(Error::FractionTooShort { required: 3, available: 2 })
        );
        assert!(jf.moments_cfrac(6).is_err());
        assert!(jf.moments_motzkin(4).is_ok());
    }

    #[test]
    fn orthopoly_rows() {
        let basis = params(1, 1, 1, 3).orthopoly(3).unwrap();
        assert_eq!(basis.matrix().row(0), &[QRatFun::one()]);
        assert_eq!(basis.matrix().row(1), &[QRatFun::from(p(&[-1])), QRatFun::one()]);
        let basis = params(1, 1, 2, 3).orthopoly(3).unwrap();
        // (x - (3 + 3q)) (x - (1 + q)) - 4q
        let s0 = p(&[1, 1]);
        let s1 = p(&[3, 3]);
        let expect = [&(&s0 * &s1) - &p(&[0, 4]), -(&s0 + &s1), QPoly::one()];
        let row: Vec<QRatFun> = expect.into_iter().map(QRatFun::from).collect();
        assert_eq!(basis.matrix().row(2), &row[..]);
    }

    #[test]
    fn three_term_relation() {
        // x Q_n = Q_{n+1} + s_n Q_n + t_n Q_{n-1}
        let jf = params(2, 3, 5, 7);
        let basis = jf.orthopoly(7).unwrap();
        let a = basis.matrix();
        for n in 1..6 {
            for k in 0..=n + 1 {
                let lhs = if k == 0 { QRatFun::zero() } else { a.get(n, k - 1) };
                let rhs = a.get(n + 1, k)
                    + a.get(n, k).mul_poly(&jf.s()[n])
                    + a.get(n - 1, k).mul_poly(&jf.t()[n - 1]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn orthogonality() {
        let jf = params(1, 1, 1, 6);
        let mu = jf.moments_motzkin(11).unwrap();
        assert!(jf.orthopoly(1).unwrap().check_orthogonality(&mu).unwrap());
        let basis = jf.orthopoly(5).unwrap();
        assert!(basis.check_orthogonality(&mu).unwrap());
        let mut rows = basis.matrix().full_rows();
        rows[3][1] = &rows[3][1] + &QRatFun::one();
        let broken = OrthoBasis::from_matrix(LowerTri::from_rows(rows).unwrap()).unwrap();
        assert!(!broken.check_orthogonality(&mu).unwrap());
        let short = MomentSeq::new(mu.mu()[..5].to_vec());
        assert!(basis.check_orthogonality(&short).is_err());
    }

    #[test]
    fn moments_to_fraction() {
        let jf = params(1, 1, 2, 4);
        let mu = jf.moments_motzkin(8).unwrap();
        assert_eq!(mu.to_jfraction_depth(4).unwrap(), jf);

        let catalan = MomentSeq::new([1, 0, 1, 0, 2, 0, 5, 0].iter().map(|&c| p(&[c])).collect());
        let jf = catalan.to_jfraction().unwrap();
        assert_eq!(jf.s(), &[p(&[]), p(&[]), p(&[]), p(&[])]);
        assert_eq!(jf.t(), &[p(&[1]), p(&[1]), p(&[1])]);

        let two = MomentSeq::new(vec![p(&[1]), p(&[3, 1])]);
        assert_eq!(two.to_jfraction().unwrap().s(), &[p(&[3, 1])]);
    }

    #[test]
    fn vanishing_norm_detected() {
        let mut mu = vec![p(&[1])];
        mu.resize(6, QPoly::zero());
        assert_eq!(
            MomentSeq::new(mu).to_jfraction_depth(3),
            Err(Error::NotQuasiDefinite { degree: 1 })
        );
    }

    fn arb_qpoly() -> impl Strategy<Value = QPoly> {
        proptest::collection::vec((-4i64..=4, 1i64..=2), 0..=3)
            .prop_map(|cs| QPoly::from_coeffs(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    fn arb_jfraction(depth: usize) -> impl Strategy<Value = JFraction> {
        (
            proptest::collection::vec(arb_qpoly(), depth),
            proptest::collection::vec(arb_qpoly(), depth - 1),
        )
            .prop_map(|(s, t)| JFraction::new(s, t).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn two_moment_routes_agree(jf in arb_jfraction(4), n in 1usize..=8) {
            prop_assert_eq!(jf.moments_motzkin(n).unwrap(), jf.moments_cfrac(n).unwrap());
        }

        #[test]
        fn fraction_roundtrip(jf in arb_jfraction(5)) {
            prop_assume!(jf.t().iter().all(|t| !t.is_zero()));
            let mu = jf.moments_motzkin(10).unwrap();
            prop_assert_eq!(mu.to_jfraction_depth(5).unwrap(), jf);
        }
    }
}
