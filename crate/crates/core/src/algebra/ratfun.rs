use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::{QPoly, Rational};
use crate::{Error, Result};

/// Quotient of two polynomials in `q`, kept in canonical form: coprime
/// numerator and denominator, monic denominator. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRatFun {
    num: QPoly,
    den: QPoly,
}

impl QRatFun {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.coeffs()[0].recip();
            return Self {
                num: num.scale(&inv),
                den: QPoly::one(),
            };
        }
        let g = num.gcd(&den).expect("numerator is nonzero");
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc_inv = den.leading().expect("denominator is nonzero").recip();
        Self {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        QPoly::one().into()
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::constant(c).into()
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator, when the denominator is 1.
    pub fn as_poly(&self) -> Option<&QPoly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn into_poly(self) -> Option<QPoly> {
        self.is_poly().then_some(self.num)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &QPoly) -> Self {
        self * &QRatFun::from(p.clone())
    }
}

impl From<QPoly> for QRatFun {
    fn from(num: QPoly) -> Self {
        Self {
            num,
            den: QPoly::one(),
        }
    }
}

impl From<Rational> for QRatFun {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Debug for QRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRatFun({self})")
    }
}

impl fmt::Display for QRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Neg for &QRatFun {
    type Output = QRatFun;
    fn neg(self) -> QRatFun {
        QRatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for QRatFun {
    type Output = QRatFun;
    fn neg(self) -> QRatFun {
        -&self
    }
}

fn add_sub(lhs: &QRatFun, rhs: &QRatFun, negate: bool) -> QRatFun {
    let rnum = if negate { -&rhs.num } else { rhs.num.clone() };
    if lhs.den == rhs.den {
        let num = &lhs.num + &rnum;
        return if lhs.den.is_one() {
            QRatFun { num, den: QPoly::one() }
        } else {
            QRatFun::reduce(num, lhs.den.clone())
        };
    }
    if rhs.den.is_one() {
        return QRatFun::reduce(&lhs.num + &(&rnum * &lhs.den), lhs.den.clone());
    }
    if lhs.den.is_one() {
        return QRatFun::reduce(&(&lhs.num * &rhs.den) + &rnum, rhs.den.clone());
    }
    let num = &lhs.num * &rhs.den + &rnum * &lhs.den;
    QRatFun::reduce(num, &lhs.den * &rhs.den)
}

impl Add for &QRatFun {
    type Output = QRatFun;
    fn add(self, rhs: &QRatFun) -> QRatFun {
        add_sub(self, rhs, false)
    }
}

impl Sub for &QRatFun {
    type Output = QRatFun;
    fn sub(self, rhs: &QRatFun) -> QRatFun {
        add_sub(self, rhs, true)
    }
}

impl Mul for &QRatFun {
    type Output = QRatFun;
    fn mul(self, rhs: &QRatFun) -> QRatFun {
        if self.is_zero() || rhs.is_zero() {
            return QRatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRatFun {
                num: &self.num * &rhs.num,
                den: QPoly::one(),
            };
        }
        // cross-cancel first so the final gcd works on smaller operands
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        let den = &b * &d;
        let lc_inv = den.leading().expect("nonzero").recip();
        let num = &a * &c;
        if lc_inv.is_one() {
            QRatFun { num, den }
        } else {
            QRatFun {
                num: num.scale(&lc_inv),
                den: den.scale(&lc_inv),
            }
        }
    }
}

fn cancel(num: &QPoly, den: &QPoly) -> (QPoly, QPoly) {
    if den.is_constant() {
        return (num.clone(), den.clone());
    }
    let g = num.gcd(den).expect("denominator is nonzero");
    if g.is_one() {
        (num.clone(), den.clone())
    } else {
        (num.div_exact(&g).expect("exact"), den.div_exact(&g).expect("exact"))
    }
}

macro_rules! forward_owned {
    ($($Op:ident $op:ident),*) => {$(
        impl $Op for QRatFun {
            type Output = QRatFun;
            fn $op(self, rhs: QRatFun) -> QRatFun { (&self).$op(&rhs) }
        }
        impl $Op<&QRatFun> for QRatFun {
            type Output = QRatFun;
            fn $op(self, rhs: &QRatFun) -> QRatFun { (&self).$op(rhs) }
        }
        impl $Op<QRatFun> for &QRatFun {
            type Output = QRatFun;
            fn $op(self, rhs: QRatFun) -> QRatFun { self.$op(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Default for QRatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl One for QRatFun {
    fn one() -> Self {
        QRatFun::one()
    }
}

impl num_traits::Zero for QRatFun {
    fn zero() -> Self {
        QRatFun::zero()
    }
    fn is_zero(&self) -> bool {
        QRatFun::is_zero(self)
    }
}
