//! q-integers, q-factorials, Gaussian binomials, and q-exponentials of
//! nilpotent operators on finite free Z[Γ]-modules.
//!
//! The conventions are `(n)_q = 1 + q² + … + q^{2n-2}` with `(0)_q = (1)_q = 1`,
//! and `exp_q(X) = Σ Xⁿ / (n)_q!`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::coeff::{GammaLaurent, GammaMonomial};
use crate::error::{Error, Result};

/// Which variable the q-integers are taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QBase {
    Q,
    QInv,
}

impl QBase {
    fn sign(self) -> i64 {
        match self {
            QBase::Q => 1,
            QBase::QInv => -1,
        }
    }
}

pub fn q_int(n: u32, base: QBase) -> GammaLaurent {
    let mut out = GammaLaurent::zero();
    for k in 0..n.max(1) as i64 {
        out.add_term(&BigInt::one(), &GammaMonomial::q_pow(2 * k * base.sign()));
    }
    out
}

pub fn q_factorial(n: u32, base: QBase) -> GammaLaurent {
    (1..=n).fold(GammaLaurent::one(), |acc, k| &acc * &q_int(k, base))
}

/// Gaussian binomial, built from the recursion
/// `binom(n+1, i) = binom(n, i) + q^{2n-2i+2} binom(n, i-1)`.
pub fn q_binomial(n: u32, i: i64, base: QBase) -> GammaLaurent {
    if i < 0 || i > n as i64 {
        return GammaLaurent::zero();
    }
    let mut row = vec![GammaLaurent::one()];
    for m in 0..n as i64 {
        let mut next = Vec::with_capacity(row.len() + 1);
        for k in 0..=m + 1 {
            let mut c = if k <= m { row[k as usize].clone() } else { GammaLaurent::zero() };
            if k >= 1 {
                let shift = GammaMonomial::q_pow((2 * m - 2 * k + 2) * base.sign());
                c += &row[(k - 1) as usize].mul_monomial(&shift);
            }
            next.push(c);
        }
        row = next;
    }
    row.swap_remove(i as usize)
}

/// A sparse vector over Z[Γ] indexed by basis keys.
pub type Vector<K> = BTreeMap<K, GammaLaurent>;

pub fn vec_add_scaled<K: Ord + Clone>(acc: &mut Vector<K>, x: &Vector<K>, c: &GammaLaurent) {
    for (k, v) in x {
        let term = v * c;
        vec_add_at(acc, k.clone(), &term);
    }
}

pub fn vec_add_at<K: Ord>(acc: &mut Vector<K>, key: K, c: &GammaLaurent) {
    if c.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// A linear map on the span of a finite basis, stored by its images.
///
/// Construction checks that every basis vector is killed by the
/// `bound`-th power.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOperator<K: Ord + Clone> {
    images: BTreeMap<K, Vector<K>>,
    bound: usize,
}

impl<K: Ord + Clone + std::fmt::Debug> LocalOperator<K> {
    pub fn new(images: BTreeMap<K, Vector<K>>, bound: usize) -> Result<Self> {
        let op = LocalOperator { images, bound };
        for k in op.images.keys() {
            let mut x: Vector<K> = BTreeMap::from([(k.clone(), GammaLaurent::one())]);
            for _ in 0..bound {
                x = op.apply(&x)?;
            }
            if !x.is_empty() {
                return Err(Error::NotNilpotent(bound));
            }
        }
        Ok(op)
    }

    /// Tabulates `f` on `basis`; the nilpotency bound is the basis size.
    pub fn from_fn(basis: impl IntoIterator<Item = K>, f: impl Fn(&K) -> Vector<K>) -> Result<Self> {
        let images: BTreeMap<K, Vector<K>> = basis.into_iter().map(|k| {
            let img = f(&k);
            (k, img)
        }).collect();
        let bound = images.len();
        Self::new(images, bound)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn apply(&self, x: &Vector<K>) -> Result<Vector<K>> {
        let mut out = BTreeMap::new();
        for (k, c) in x {
            let img = self.images.get(k).ok_or_else(|| Error::OutOfCell(format!("{k:?}")))?;
            vec_add_scaled(&mut out, img, c);
        }
        Ok(out)
    }

    /// `a·self + b·other` on the common basis.
    pub fn combine(&self, a: &GammaLaurent, other: &Self, b: &GammaLaurent) -> Result<Self> {
        let mut images = BTreeMap::new();
        for k in self.images.keys().chain(other.images.keys()) {
            let mut img = BTreeMap::new();
            if let Some(x) = self.images.get(k) {
                vec_add_scaled(&mut img, x, a);
            }
            if let Some(x) = other.images.get(k) {
                vec_add_scaled(&mut img, x, b);
            }
            images.insert(k.clone(), img);
        }
        Self::new(images, self.bound.max(other.bound))
    }
}

/// `exp_base(sign·X)` applied to `x`; every division by `(n)!` must be exact.
pub fn q_exp_apply<K: Ord + Clone + std::fmt::Debug>(
    op: &LocalOperator<K>,
    x: &Vector<K>,
    base: QBase,
    sign: i64,
) -> Result<Vector<K>> {
    let mut out = x.clone();
    let mut power = x.clone();
    let sign = GammaLaurent::from_int(sign);
    let mut k = 0u32;
    loop {
        power = op.apply(&power)?;
        if power.is_empty() {
            return Ok(out);
        }
        k += 1;
        if k as usize > op.bound() {
            return Err(Error::NotNilpotent(op.bound()));
        }
        for c in power.values_mut() {
            *c = &*c * &sign;
        }
        let fact = q_factorial(k, base);
        for (key, c) in &power {
            vec_add_at(&mut out, key.clone(), &c.divide_exact(&fact)?);
        }
    }
}

/// `binom(n+1, i) = binom(n, i) + q^{±(2n-2i+2)} binom(n, i-1)` for all `n ≤ max_n`.
pub fn gaussian_recursion_holds(max_n: u32) -> bool {
    [QBase::Q, QBase::QInv].into_iter().all(|base| {
        (0..=max_n).all(|n| {
            (0..=n as i64 + 1).all(|i| {
                let shift = GammaMonomial::q_pow((2 * n as i64 - 2 * i + 2) * base.sign());
                q_binomial(n + 1, i, base) == &q_binomial(n, i, base) + &q_binomial(n, i - 1, base).mul_monomial(&shift)
            })
        })
    })
}

/// `Σ_m (-1)^m q^{m(m-1)} binom(s, m) = 0`.
pub fn alternating_sum_vanishes(s: u32) -> bool {
    let mut acc = GammaLaurent::zero();
    for m in 0..=s as i64 {
        let t = q_binomial(s, m, QBase::Q).mul_monomial(&GammaMonomial::q_pow(m * (m - 1)));
        acc += &if m % 2 == 0 { t } else { -t };
    }
    acc.is_zero()
}

/// `X e_ab = (a+1)_q e_{a+1,b}` and `Y e_ab = q^{2a}(b+1)_q e_{a,b+1}` on `a + b ≤ size`; `YX = q²XY`.
pub fn q_commuting_pair(size: u32) -> Result<(LocalOperator<(u32, u32)>, LocalOperator<(u32, u32)>)> {
    let basis: Vec<(u32, u32)> = (0..=size).flat_map(|a| (0..=size - a).map(move |b| (a, b))).collect();
    let x = LocalOperator::from_fn(basis.clone(), |&(a, b)| {
        if a + b < size { BTreeMap::from([((a + 1, b), q_int(a + 1, QBase::Q))]) } else { BTreeMap::new() }
    })?;
    let y = LocalOperator::from_fn(basis, |&(a, b)| {
        if a + b < size {
            BTreeMap::from([((a, b + 1), q_int(b + 1, QBase::Q).mul_monomial(&GammaMonomial::q_pow(2 * a as i64)))])
        } else {
            BTreeMap::new()
        }
    })?;
    Ok((x, y))
}

/// `exp_q(X + Y) = exp_q(X) exp_q(Y)` for the pair of [`q_commuting_pair`], on every basis vector.
pub fn exp_multiplicative_holds(size: u32) -> Result<bool> {
    let (x, y) = q_commuting_pair(size)?;
    let sum = x.combine(&GammaLaurent::one(), &y, &GammaLaurent::one())?;
    for a in 0..=size {
        for b in 0..=size - a {
            let e: Vector<(u32, u32)> = BTreeMap::from([((a, b), GammaLaurent::one())]);
            let lhs = q_exp_apply(&sum, &e, QBase::Q, 1)?;
            let rhs = q_exp_apply(&x, &q_exp_apply(&y, &e, QBase::Q, 1)?, QBase::Q, 1)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `exp_{q⁻¹}(-X) exp_q(X) = 1` for the operator `X` of [`q_commuting_pair`].
pub fn exp_inverse_holds(size: u32) -> Result<bool> {
    let (x, _) = q_commuting_pair(size)?;
    for a in 0..=size {
        for b in 0..=size - a {
            let e: Vector<(u32, u32)> = BTreeMap::from([((a, b), GammaLaurent::one())]);
            let there = q_exp_apply(&x, &e, QBase::Q, 1)?;
            if q_exp_apply(&x, &there, QBase::QInv, -1)? != e {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
