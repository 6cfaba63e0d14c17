//! Dense Laurent polynomials in one variable `q` over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `Σ coeffs[k] q^{low+k}`, trimmed so both ends are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LPoly {
    pub fn zero() -> Self {
        LPoly::default()
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::new(0, vec![BigInt::from(c)])
    }

    pub fn q_pow(e: i64) -> Self {
        Self::new(e, vec![BigInt::one()])
    }

    /// `Σ c q^e` over the given pairs.
    pub fn from_terms(pairs: &[(i64, i64)]) -> Self {
        pairs.iter().fold(Self::zero(), |acc, &(c, e)| acc + Self::from_int(c).shift(e))
    }

    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        let k = e - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LPoly { low: self.low + e, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `q ↦ q⁻¹`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LPoly { low: -self.high(), coeffs: self.coeffs.iter().rev().cloned().collect() }
    }

    /// `q ↦ q^k` for `k > 0`.
    pub fn substitute_power(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            out = out + Self::new((self.low + i as i64) * k, vec![c.clone()]);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient; fails if `d` does not divide `self`.
    pub fn divide_exact(&self, d: &LPoly) -> Result<LPoly> {
        if d.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (q, r) = poly_divmod(&self.coeffs, &d.coeffs);
        if r.iter().any(|c| !c.is_zero()) || q.is_none() {
            return Err(Error::NotDivisible(format!("{self} by {d}")));
        }
        Ok(Self::new(self.low - d.low, q.unwrap()))
    }

    /// Greatest common divisor, normalized to lowest exponent 0 and positive leading coefficient.
    pub fn gcd(&self, other: &LPoly) -> LPoly {
        if self.is_zero() {
            return other.normalized_unit();
        }
        if other.is_zero() {
            return self.normalized_unit();
        }
        let c = content(&self.coeffs).gcd(&content(&other.coeffs));
        let mut a = primitive(&self.coeffs);
        let mut b = primitive(&other.coeffs);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = if r.is_empty() { r } else { primitive(&r) };
        }
        LPoly::new(0, a).scale(&c).normalized_unit()
    }

    /// The associate with lowest exponent 0 and positive leading coefficient.
    pub fn normalized_unit(&self) -> LPoly {
        let p = LPoly { low: 0, coeffs: self.coeffs.clone() };
        if p.leading().is_negative() {
            -p
        } else {
            p
        }
    }
}

fn trim_vec(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    let mut out: Vec<BigInt> = p.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -&*x);
    }
    trim_vec(out)
}

/// Pseudo-remainder of `a` by `b` (both trimmed, `b` nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        r.iter_mut().for_each(|x| *x *= &lb);
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &lr * c;
        }
        r = trim_vec(r);
    }
    r
}

/// Division with integer quotient coefficients; `None` if some step is not integral.
fn poly_divmod(a: &[BigInt], b: &[BigInt]) -> (Option<Vec<BigInt>>, Vec<BigInt>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Some(vec![]), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    let lb = b.last().unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap();
        let (c, rem) = lr.div_rem(lb);
        if !rem.is_zero() {
            return (None, r);
        }
        let shift = r.len() - b.len();
        for (k, x) in b.iter().enumerate() {
            r[shift + k] -= &c * x;
        }
        q[shift] = c;
        r = trim_vec(r);
    }
    (Some(q), r)
}

impl Add for &LPoly {
    type Output = LPoly;
    fn add(self, other: &LPoly) -> LPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let coeffs = (low..=high).map(|e| self.coefficient(e) + other.coefficient(e)).collect();
        LPoly::new(low, coeffs)
    }
}

impl Add for LPoly {
    type Output = LPoly;
    fn add(self, other: LPoly) -> LPoly {
        &self + &other
    }
}

impl Neg for LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly { low: self.low, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Sub for &LPoly {
    type Output = LPoly;
    fn sub(self, other: &LPoly) -> LPoly {
        self + &(-other.clone())
    }
}

impl Sub for LPoly {
    type Output = LPoly;
    fn sub(self, other: LPoly) -> LPoly {
        &self - &other
    }
}

impl Mul for &LPoly {
    type Output = LPoly;
    fn mul(self, other: &LPoly) -> LPoly {
        if self.is_zero() || other.is_zero() {
            return LPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LPoly::new(self.low + other.low, coeffs)
    }
}

impl Mul for LPoly {
    type Output = LPoly;
    fn mul(self, other: LPoly) -> LPoly {
        &self * &other
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + k as i64;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}
