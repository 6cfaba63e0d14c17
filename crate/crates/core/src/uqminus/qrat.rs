//! Reduced quotients of Laurent polynomials in `q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Signed;

use super::lpoly::LPoly;
use crate::error::{Error, Result};

/// `num/den` with `gcd(num, den) = 1`, `den` having lowest exponent 0 and a positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRat {
    num: LPoly,
    den: LPoly,
}

impl QRat {
    pub fn new(num: LPoly, den: LPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NotDivisible("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num.divide_exact(&g)?, den.divide_exact(&g)?);
        let shift = den.low();
        num = num.shift(-shift);
        den = den.shift(-shift);
        if den.leading().is_negative() {
            num = -num;
            den = -den;
        }
        Ok(QRat { num, den })
    }

    pub fn zero() -> Self {
        QRat { num: LPoly::zero(), den: LPoly::one() }
    }

    pub fn one() -> Self {
        Self::from(LPoly::one())
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from(LPoly::q_pow(e))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from(LPoly::from_int(c))
    }

    pub fn num(&self) -> &LPoly {
        &self.num
    }

    pub fn den(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn bar(&self) -> Self {
        QRat::new(self.num.bar(), self.den.bar()).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        QRat::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Ok((0..k.unsigned_abs()).fold(QRat::one(), |acc, _| &acc * &base))
    }
}

impl From<LPoly> for QRat {
    fn from(p: LPoly) -> Self {
        QRat { num: p, den: LPoly::one() }
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        if self.den == o.den {
            return QRat::new(&self.num + &o.num, self.den.clone()).expect("nonzero");
        }
        QRat::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -self.num.clone(), den: self.den.clone() }
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self + &(-o)
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        QRat::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }
}

impl Div for &QRat {
    type Output = Result<QRat>;
    fn div(self, o: &QRat) -> Result<QRat> {
        QRat::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        let a = LPoly::from_terms(&[(1, 4), (-1, 0)]);
        let b = LPoly::from_terms(&[(1, 2), (-1, 0)]);
        let r = QRat::new(a, b.shift(3)).unwrap();
        assert_eq!(r, QRat::from(LPoly::from_terms(&[(1, -1), (1, -3)])));
        let x = QRat::new(LPoly::one(), LPoly::from_terms(&[(-1, 0), (1, 4)])).unwrap();
        assert_eq!(x.den(), &LPoly::from_terms(&[(1, 4), (-1, 0)]));
        assert_eq!(x.num(), &LPoly::one());
        assert!(QRat::new(LPoly::one(), LPoly::zero()).is_err());
    }

    #[test]
    fn field_ops() {
        let x = QRat::new(LPoly::q_pow(1), LPoly::from_terms(&[(1, 0), (-1, 4)])).unwrap();
        let y = &(&x * &x.inv().unwrap()) - &QRat::one();
        assert!(y.is_zero());
        assert_eq!(&(&x + &x) - &x, x);
        assert_eq!(x.bar().bar(), x);
        assert_eq!(x.pow(-2).unwrap(), (&QRat::one() / &(&x * &x)).unwrap());
    }
}
