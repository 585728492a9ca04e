//! Exponential Riordan arrays `L = [g, f]` and their production matrices.
//!
//! Column `k` of `L` has exponential generating function `g(x) f(x)^k / k!`
//! with `f(0) = 0` and `f'(0) != 0`. The production matrix `P` satisfies
//! `row_{n+1}(L) = row_n(L) P`, i.e. `P = L^{-1} Lbar` where `Lbar` is `L`
//! with its first row removed. It can also be read off from the
//! `c`- and `r`-series:
//!
//! ```text
//! c(x) = g'(fbar(x)) / g(fbar(x)),   r(x) = f'(fbar(x)),
//! p_{i,j} = i!/j! (c_{i-j} + j r_{i-j+1}),   c_{-1} = 0.
//! ```

use alloc::vec;
use alloc::vec::Vec;


use crate::algebra::{factorial, QRatFun, Rational};
use crate::jacobi::JFraction;
use crate::series::{eulerian_egf, eulerian_riordan_f, TruncSeries};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpRiordan {
    g: TruncSeries,
    f: TruncSeries,
}

impl ExpRiordan {
    pub fn new(g: TruncSeries, f: TruncSeries) -> Result<Self> {
        if g.order() != f.order() {
            return Err(Error::OrderMismatch {
                left: g.order(),
                right: f.order(),
            });
        }
        if g.order() < 2 {
            return Err(Error::InvalidRiordan("order must be at least 2"));
        }
        if g.coeff(0).is_zero() {
            return Err(Error::InvalidRiordan("g(0) must be invertible"));
        }
        if !f.coeff(0).is_zero() {
            return Err(Error::InvalidRiordan("f(0) must vanish"));
        }
        if f.coeff(1).is_zero() {
            return Err(Error::InvalidRiordan("f'(0) must be invertible"));
        }
        Ok(Self { g, f })
    }

    /// The array whose first column is the Eulerian-type sequence `T_n(q)`
    /// with parameters `(a, b, d)`; needs `d != 0`.
    pub fn eulerian(a: &Rational, b: &Rational, d: &Rational, order: usize) -> Result<Self> {
        Self::new(eulerian_egf(a, b, d, order)?, eulerian_riordan_f(d, order)?)
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    pub fn g(&self) -> &TruncSeries {
        &self.g
    }

    pub fn f(&self) -> &TruncSeries {
        &self.f
    }

    /// The `N x N` truncation of `L`: `l_{n,k} = n!/k! [x^n] g f^k`.
    pub fn matrix(&self) -> LowerTri {
        let n = self.order();
        let mut rows: Vec<Vec<QRatFun>> = (0..n).map(|i| Vec::with_capacity(i + 1)).collect();
        let mut column = self.g.clone();
        for k in 0..n {
            let kfact_inv = factorial(k).recip();
            for (i, row) in rows.iter_mut().enumerate().skip(k) {
                let scale = factorial(i) * &kfact_inv;
                row.push(column.coeff(i).scale(&scale));
            }
            if k + 1 < n {
                column = column.checked_mul(&self.f).expect("orders agree");
            }
        }
        LowerTri { rows }
    }

    /// The `c`- and `r`-series, each of order `N - 1`.
    pub fn c_and_r(&self) -> Result<(TruncSeries, TruncSeries)> {
        let fbar = self.f.comp_inverse()?;
        let r = self.f.derivative()?.compose(&fbar)?;
        let g_at = self.g.compose(&fbar)?.truncate(r.order());
        let c = self.g.derivative()?.compose(&fbar)?.checked_mul(&g_at.inverse()?)?;
        Ok((c, r))
    }
}

/// Square lower-triangular matrix over `QRatFun`. Only the entries on or
/// below the diagonal are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerTri {
    rows: Vec<Vec<QRatFun>>,
}

impl LowerTri {
    /// Builds from full square rows; fails if anything above the diagonal is
    /// nonzero or the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<QRatFun>>) -> Result<Self> {
        let n = rows.len();
        let mut out = Vec::with_capacity(n);
        for (i, mut row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidRiordan("matrix rows must be square"));
            }
            if row[i + 1..].iter().any(|e| !e.is_zero()) {
                return Err(Error::InvalidRiordan("nonzero entry above the diagonal"));
            }
            row.truncate(i + 1);
            out.push(row);
        }
        Ok(Self { rows: out })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n)
                .map(|i| {
                    let mut row = vec![QRatFun::zero(); i + 1];
                    row[i] = QRatFun::one();
                    row
                })
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(i, j)`; zero above the diagonal.
    pub fn get(&self, i: usize, j: usize) -> QRatFun {
        self.rows[i].get(j).cloned().unwrap_or_else(QRatFun::zero)
    }

    /// The stored part of row `i`: columns `0..=i`.
    pub fn row(&self, i: usize) -> &[QRatFun] {
        &self.rows[i]
    }

    pub fn column(&self, k: usize) -> Vec<QRatFun> {
        (0..self.order()).map(|i| self.get(i, k)).collect()
    }

    pub fn full_rows(&self) -> Vec<Vec<QRatFun>> {
        let n = self.order();
        self.rows
            .iter()
            .map(|row| {
                let mut full = row.clone();
                full.resize(n, QRatFun::zero());
                full
            })
            .collect()
    }

    /// Leading principal `n x n` block.
    pub fn truncate(&self, n: usize) -> Self {
        Self {
            rows: self.rows.iter().take(n).cloned().collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        let rows = (0..self.order())
            .map(|i| {
                (0..=i)
                    .map(|j| {
                        (j..=i).fold(QRatFun::zero(), |acc, k| acc + &self.rows[i][k] * &other.rows[k][j])
                    })
                    .collect()
            })
            .collect();
        Ok(Self { rows })
    }

    /// Exact inverse by forward substitution.
    #[allow(clippy::needless_range_loop)]
    pub fn inverse(&self) -> Result<Self> {
        let n = self.order();
        let diag_inv: Vec<QRatFun> = (0..n)
            .map(|i| self.rows[i][i].recip().map_err(|_| Error::Singular { row: i }))
            .collect::<Result<_>>()?;
        let mut inv: Vec<Vec<QRatFun>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(i + 1);
            for j in 0..i {
                // sum_{k=j}^{i} l_{i,k} m_{k,j} = 0
                let acc = (j..i).fold(QRatFun::zero(), |acc, k| {
                    let l = &self.rows[i][k];
                    if l.is_zero() {
                        acc
                    } else {
                        acc + l * &inv[k][j]
                    }
                });
                row.push(-(&acc * &diag_inv[i]));
            }
            row.push(diag_inv[i].clone());
            inv.push(row);
        }
        Ok(Self { rows: inv })
    }
}

/// Truncated production matrix: `rows` rows and `rows + 1` columns, so the
/// superdiagonal of the last row is included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductionMatrix {
    entries: Vec<Vec<QRatFun>>,
    tridiagonal: bool,
}

impl ProductionMatrix {
    fn from_entries(entries: Vec<Vec<QRatFun>>) -> Self {
        let tridiagonal = entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, e)| {
                if j == i + 1 {
                    e.is_one()
                } else if j + 1 < i || j > i + 1 {
                    e.is_zero()
                } else {
                    true
                }
            })
        });
        Self { entries, tridiagonal }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &QRatFun {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<QRatFun>] {
        &self.entries
    }

    /// Unit superdiagonal and nothing outside the three central bands.
    pub fn is_tridiagonal(&self) -> bool {
        self.tridiagonal
    }

    /// Diagonal band `s_0, s_1, ...`.
    pub fn diagonal(&self) -> Vec<QRatFun> {
        (0..self.rows()).map(|i| self.entries[i][i].clone()).collect()
    }

    /// Subdiagonal band `t_1, t_2, ...`.
    pub fn subdiagonal(&self) -> Vec<QRatFun> {
        (1..self.rows()).map(|i| self.entries[i][i - 1].clone()).collect()
    }

    /// The Jacobi continued fraction encoded by a tridiagonal production
    /// matrix with polynomial bands.
    pub fn to_jfraction(&self) -> Result<JFraction> {
        if !self.tridiagonal {
            return Err(Error::InvalidRiordan("production matrix is not tridiagonal"));
        }
        let poly = |band: Vec<QRatFun>| -> Result<Vec<_>> {
            band.into_iter()
                .enumerate()
                .map(|(index, e)| e.into_poly().ok_or(Error::NotPolynomial { index }))
                .collect()
        };
        JFraction::new(poly(self.diagonal())?, poly(self.subdiagonal())?)
    }
}

/// `P` from the closed formula in the `c`- and `r`-coefficients. Needs both
/// series to have order at least `rows`.
pub fn production_matrix_formula(c: &TruncSeries, r: &TruncSeries, rows: usize) -> Result<ProductionMatrix> {
    if c.order() < rows || r.order() < rows {
        return Err(Error::OrderMismatch {
            left: c.order().min(r.order()),
            right: rows,
        });
    }
    let entries = (0..rows)
        .map(|i| {
            (0..=rows)
                .map(|j| {
                    if j > i + 1 {
                        return QRatFun::zero();
                    }
                    let mut e = if j <= i { c.coeff(i - j).clone() } else { QRatFun::zero() };
                    if j > 0 {
                        e = e + r.coeff(i + 1 - j).scale(&Rational::from_integer(j.into()));
                    }
                    e.scale(&(factorial(i) / factorial(j)))
                })
                .collect()
        })
        .collect();
    Ok(ProductionMatrix::from_entries(entries))
}

/// `P = L^{-1} Lbar`, exact on rows `0..=N-2` of an order-`N` array.
pub fn production_matrix_direct(l: &LowerTri) -> Result<ProductionMatrix> {
    let n = l.order();
    if n < 2 {
        return Err(Error::InvalidRiordan("order must be at least 2"));
    }
    let inv = l.inverse()?;
    let entries = (0..n - 1)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // sum_k (L^{-1})_{i,k} L_{k+1,j}, k <= i
                    (0..=i).fold(QRatFun::zero(), |acc, k| {
                        let a = inv.row(i)[k].clone();
                        if a.is_zero() {
                            acc
                        } else {
                            acc + a * l.get(k + 1, j)
                        }
                    })
                })
                .collect()
        })
        .collect();
    Ok(ProductionMatrix::from_entries(entries))
}
