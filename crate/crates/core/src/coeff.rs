//! The coefficient ring Z[Γ]: integer Laurent expressions in `v` (with
//! `v² = q`) and the deformation parameters `p_ij`, `q_ij`.
//!
//! Γ is totally ordered by reading exponents in the fixed variable order
//! `v, p_12, p_13, …, q_12, q_13, …`; a monomial is *positive* (lies in Γ₊)
//! when its first nonzero exponent is negative, so `q⁻¹ ∈ Γ₊`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Unordered index pair `{i, j}` stored with `i < j`; `p_ji` is `p_ij⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParamIndex {
    i: u8,
    j: u8,
}

impl ParamIndex {
    pub fn new(i: usize, j: usize) -> Option<Self> {
        (i < j && i >= 1).then(|| ParamIndex { i: i as u8, j: j as u8 })
    }

    pub fn i(&self) -> usize {
        self.i as usize
    }

    pub fn j(&self) -> usize {
        self.j as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ParamKind {
    P,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Param {
    pub kind: ParamKind,
    pub idx: ParamIndex,
}

/// An element of Γ. `v` is the exponent of `q^{1/2}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GammaMonomial {
    v: i64,
    // sorted by Param, no zero exponents
    params: Vec<(Param, i64)>,
}

impl GammaMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn v_pow(e: i64) -> Self {
        GammaMonomial { v: e, params: Vec::new() }
    }

    pub fn q_pow(e: i64) -> Self {
        Self::v_pow(2 * e)
    }

    fn param(kind: ParamKind, a: usize, b: usize, e: i64) -> Self {
        match a.cmp(&b) {
            Ordering::Equal => Self::one(),
            Ordering::Less => Self::from_params(0, [(Param { kind, idx: ParamIndex::new(a, b).unwrap() }, e)]),
            Ordering::Greater => Self::from_params(0, [(Param { kind, idx: ParamIndex::new(b, a).unwrap() }, -e)]),
        }
    }

    /// `p_ab^e` for any `a, b` (so `p_aa = 1` and `p_ba = p_ab⁻¹`).
    pub fn p(a: usize, b: usize, e: i64) -> Self {
        Self::param(ParamKind::P, a, b, e)
    }

    /// `q_ab^e` (the deformation parameter, not the quantum variable).
    pub fn qp(a: usize, b: usize, e: i64) -> Self {
        Self::param(ParamKind::Q, a, b, e)
    }

    pub fn from_params(v: i64, params: impl IntoIterator<Item = (Param, i64)>) -> Self {
        let mut map: BTreeMap<Param, i64> = BTreeMap::new();
        for (p, e) in params {
            *map.entry(p).or_insert(0) += e;
        }
        GammaMonomial { v, params: map.into_iter().filter(|(_, e)| *e != 0).collect() }
    }

    pub fn v_exp(&self) -> i64 {
        self.v
    }

    pub fn params(&self) -> &[(Param, i64)] {
        &self.params
    }

    pub fn is_one(&self) -> bool {
        self.v == 0 && self.params.is_empty()
    }

    /// True when the monomial involves no deformation parameters.
    pub fn is_pure_q(&self) -> bool {
        self.params.is_empty()
    }

    pub fn inv(&self) -> Self {
        GammaMonomial { v: -self.v, params: self.params.iter().map(|&(p, e)| (p, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        GammaMonomial { v: self.v * k, params: self.params.iter().map(|&(p, e)| (p, e * k)).collect() }
    }

    /// Square root in Γ, if every exponent is even.
    pub fn sqrt(&self) -> Option<Self> {
        if self.v % 2 != 0 || self.params.iter().any(|(_, e)| e % 2 != 0) {
            return None;
        }
        Some(GammaMonomial { v: self.v / 2, params: self.params.iter().map(|&(p, e)| (p, e / 2)).collect() })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.params.len() + other.params.len());
        let (mut a, mut b) = (self.params.iter().peekable(), other.params.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(pa, ea)), Some(&&(pb, eb))) => match pa.cmp(&pb) {
                    Ordering::Less => {
                        out.push((pa, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((pb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        if ea + eb != 0 {
                            out.push((pa, ea + eb));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&x)) => {
                    out.push(x);
                    b.next();
                }
                (None, None) => break,
            }
        }
        GammaMonomial { v: self.v + other.v, params: out }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Membership in Γ₊: the first nonzero exponent is negative.
    pub fn is_positive(&self) -> bool {
        if self.v != 0 {
            return self.v < 0;
        }
        self.params.first().map(|&(_, e)| e < 0).unwrap_or(false)
    }

    /// The total group order: `a < b` iff `b·a⁻¹ ∈ Γ₊`.
    pub fn group_cmp(&self, other: &Self) -> Ordering {
        let r = other.div(self);
        if r.is_one() {
            Ordering::Equal
        } else if r.is_positive() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn exponent_of(&self, p: &Param) -> i64 {
        self.params.iter().find(|(q, _)| q == p).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let mut p = serde_json::Map::new();
        let mut q = serde_json::Map::new();
        for (param, e) in &self.params {
            let key = format!("{},{}", param.idx.i, param.idx.j);
            match param.kind {
                ParamKind::P => p.insert(key, json!(e)),
                ParamKind::Q => q.insert(key, json!(e)),
            };
        }
        json!({ "v": self.v, "p": p, "Q": q })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = || Error::Parse(format!("monomial {value}"));
        let v = value.get("v").and_then(Value::as_i64).ok_or_else(bad)?;
        let mut params = Vec::new();
        for (field, kind) in [("p", ParamKind::P), ("Q", ParamKind::Q)] {
            let Some(obj) = value.get(field).and_then(Value::as_object) else { continue };
            for (key, e) in obj {
                let (i, j) = key.split_once(',').ok_or_else(bad)?;
                let i: usize = i.trim().parse().map_err(|_| bad())?;
                let j: usize = j.trim().parse().map_err(|_| bad())?;
                let idx = ParamIndex::new(i, j).ok_or_else(bad)?;
                params.push((Param { kind, idx }, e.as_i64().ok_or_else(bad)?));
            }
        }
        Ok(Self::from_params(v, params))
    }
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, base: &str, e: i64) -> fmt::Result {
    if e == 1 {
        write!(f, "{base}")
    } else {
        write!(f, "{base}^{e}")
    }
}

impl fmt::Display for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        if self.v != 0 {
            if self.v % 2 == 0 {
                fmt_exp(f, "q", self.v / 2)?;
            } else {
                write!(f, "q^{}/2", self.v)?;
            }
            first = false;
        }
        for (p, e) in &self.params {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = match p.kind {
                ParamKind::P => format!("p[{}][{}]", p.idx.i, p.idx.j),
                ParamKind::Q => format!("Q[{}][{}]", p.idx.i, p.idx.j),
            };
            fmt_exp(f, &name, *e)?;
        }
        Ok(())
    }
}

/// A finite integer combination of elements of Γ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GammaLaurent {
    terms: BTreeMap<GammaMonomial, BigInt>,
}

impl GammaLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(GammaMonomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::term(BigInt::from(c), GammaMonomial::one())
    }

    pub fn monomial(m: GammaMonomial) -> Self {
        Self::term(BigInt::one(), m)
    }

    pub fn term(c: BigInt, m: GammaMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GammaLaurent { terms }
    }

    /// `q^e` with integer `e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(GammaMonomial::q_pow(e))
    }

    /// `q^{e/2}`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(GammaMonomial::v_pow(e))
    }

    /// Builds `Σ c_k q^{e_k}` from `(c, e)` pairs.
    pub fn from_q_terms(pairs: &[(i64, i64)]) -> Self {
        let mut out = Self::zero();
        for &(c, e) in pairs {
            out.add_term(&BigInt::from(c), &GammaMonomial::q_pow(e));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GammaMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &GammaMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, c: &BigInt, m: &GammaMonomial) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(m);
        }
    }

    pub fn add_scaled(&mut self, other: &GammaLaurent, c: &BigInt, m: &GammaMonomial) {
        for (om, oc) in &other.terms {
            self.add_term(&(oc * c), &om.mul(m));
        }
    }

    /// The single monomial this element equals, if it is one (coefficient 1).
    pub fn as_monomial(&self) -> Option<GammaMonomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m.clone()),
            _ => None,
        }
    }

    pub fn mul_monomial(&self, m: &GammaMonomial) -> Self {
        GammaLaurent { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GammaLaurent { terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The involution γ ↦ γ⁻¹ extended linearly.
    pub fn bar(&self) -> Self {
        GammaLaurent { terms: self.terms.iter().map(|(m, c)| (m.inv(), c.clone())).collect() }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        self.bar() == *self
    }

    /// The part supported on Γ₊.
    pub fn positive_part(&self) -> Self {
        GammaLaurent {
            terms: self.terms.iter().filter(|(m, _)| m.is_positive()).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn is_supported_on_positive(&self) -> bool {
        self.terms.keys().all(GammaMonomial::is_positive)
    }

    /// Every monomial is a pure power of `q` (even `v` exponent, no parameters).
    pub fn is_integral_q(&self) -> bool {
        self.terms.keys().all(|m| m.is_pure_q() && m.v % 2 == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn specialize(&self, s: &Specialization) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(c, &s.apply(m));
        }
        out
    }

    fn max_term(&self) -> Option<(&GammaMonomial, &BigInt)> {
        self.terms.iter().max_by(|a, b| a.0.group_cmp(b.0))
    }

    /// Exponent box of the support: per variable, (min, max).
    fn exponent_box(&self) -> (i64, i64, BTreeMap<Param, (i64, i64)>) {
        let mut vmin = i64::MAX;
        let mut vmax = i64::MIN;
        let params: Vec<Param> = {
            let mut all: Vec<Param> = self.terms.keys().flat_map(|m| m.params.iter().map(|(p, _)| *p)).collect();
            all.sort();
            all.dedup();
            all
        };
        let mut boxes: BTreeMap<Param, (i64, i64)> = params.iter().map(|p| (*p, (i64::MAX, i64::MIN))).collect();
        for m in self.terms.keys() {
            vmin = vmin.min(m.v);
            vmax = vmax.max(m.v);
            for p in &params {
                let e = m.exponent_of(p);
                let b = boxes.get_mut(p).unwrap();
                b.0 = b.0.min(e);
                b.1 = b.1.max(e);
            }
        }
        (vmin, vmax, boxes)
    }

    /// Exact quotient `self / d` in Z[Γ].
    pub fn divide_exact(&self, d: &GammaLaurent) -> Result<GammaLaurent> {
        if d.is_zero() {
            return Err(Error::NotDivisible(format!("({self}) / 0")));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let not_div = || Error::NotDivisible(format!("({self}) / ({d})"));
        let (xv0, xv1, xbox) = self.exponent_box();
        let (dv0, dv1, dbox) = d.exponent_box();
        // Z[Γ] is a domain, so per variable the quotient's exponents are confined to
        // [min_x - min_d, max_x - max_d]; this bounds the long division.
        let in_box = |m: &GammaMonomial| -> bool {
            if m.v < xv0 - dv0 || m.v > xv1 - dv1 {
                return false;
            }
            let mut keys: Vec<Param> = xbox.keys().chain(dbox.keys()).copied().collect();
            keys.extend(m.params.iter().map(|(p, _)| *p));
            keys.iter().all(|p| {
                let (x0, x1) = xbox.get(p).copied().unwrap_or((0, 0));
                let (d0, d1) = dbox.get(p).copied().unwrap_or((0, 0));
                let e = m.exponent_of(p);
                e >= x0 - d0 && e <= x1 - d1
            })
        };
        let (dm, dc) = d.max_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.max_term().map(|(m, c)| (m.clone(), c.clone())) {
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return Err(not_div());
            }
            let qm = rm.div(&dm);
            if !in_box(&qm) {
                return Err(not_div());
            }
            quot.add_term(&qc, &qm);
            rem.add_scaled(d, &(-qc), &qm);
        }
        Ok(quot)
    }

    /// Solves `h - bar(h) = g` with `h` supported on Γ₊.
    pub fn solve_bar_equation(&self) -> Result<GammaLaurent> {
        if self.bar() != -self {
            return Err(Error::NotAntisymmetric(self.to_string()));
        }
        Ok(self.positive_part())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| {
                    let mut obj = m.to_json();
                    let coeff = match c.to_i64() {
                        Some(x) => json!(x),
                        None => json!(c.to_string()),
                    };
                    obj.as_object_mut().unwrap().insert("coeff".into(), coeff);
                    obj
                })
                .collect(),
        )
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let arr = value.as_array().ok_or_else(|| Error::Parse(format!("laurent {value}")))?;
        let mut out = Self::zero();
        for t in arr {
            let m = GammaMonomial::from_json(t)?;
            let c = match t.get("coeff") {
                Some(Value::Number(n)) => n.as_i64().map(BigInt::from),
                Some(Value::String(s)) => s.parse::<BigInt>().ok(),
                _ => None,
            }
            .ok_or_else(|| Error::Parse(format!("coefficient in {t}")))?;
            out.add_term(&c, &m);
        }
        Ok(out)
    }

    /// True when rendering as a coefficient needs parentheses.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

impl fmt::Display for GammaLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<GammaMonomial> for GammaLaurent {
    fn from(m: GammaMonomial) -> Self {
        Self::monomial(m)
    }
}

impl<'a> Add<&'a GammaLaurent> for &'a GammaLaurent {
    type Output = GammaLaurent;
    fn add(self, rhs: &GammaLaurent) -> GammaLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GammaLaurent {
    type Output = GammaLaurent;
    fn add(mut self, rhs: GammaLaurent) -> GammaLaurent {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a GammaLaurent> for GammaLaurent {
    fn add_assign(&mut self, rhs: &GammaLaurent) {
        for (m, c) in &rhs.terms {
            self.add_term(c, m);
        }
    }
}

impl<'a> SubAssign<&'a GammaLaurent> for GammaLaurent {
    fn sub_assign(&mut self, rhs: &GammaLaurent) {
        for (m, c) in &rhs.terms {
            self.add_term(&-c, m);
        }
    }
}

impl<'a> Sub<&'a GammaLaurent> for &'a GammaLaurent {
    type Output = GammaLaurent;
    fn sub(self, rhs: &GammaLaurent) -> GammaLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for GammaLaurent {
    type Output = GammaLaurent;
    fn sub(mut self, rhs: GammaLaurent) -> GammaLaurent {
        self -= &rhs;
        self
    }
}

impl<'a> Neg for &'a GammaLaurent {
    type Output = GammaLaurent;
    fn neg(self) -> GammaLaurent {
        GammaLaurent { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for GammaLaurent {
    type Output = GammaLaurent;
    fn neg(self) -> GammaLaurent {
        -&self
    }
}

impl<'a> Mul<&'a GammaLaurent> for &'a GammaLaurent {
    type Output = GammaLaurent;
    fn mul(self, rhs: &GammaLaurent) -> GammaLaurent {
        let mut out = GammaLaurent::zero();
        for (m, c) in &self.terms {
            out.add_scaled(rhs, c, m);
        }
        out
    }
}

impl Mul for GammaLaurent {
    type Output = GammaLaurent;
    fn mul(self, rhs: GammaLaurent) -> GammaLaurent {
        &self * &rhs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecName {
    Generic,
    Official,
    Ast,
}

impl SpecName {
    pub const ALL: [SpecName; 3] = [SpecName::Generic, SpecName::Official, SpecName::Ast];

    pub fn as_str(&self) -> &'static str {
        match self {
            SpecName::Generic => "generic",
            SpecName::Official => "official",
            SpecName::Ast => "ast",
        }
    }
}

impl std::str::FromStr for SpecName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "generic" => Ok(SpecName::Generic),
            "official" => Ok(SpecName::Official),
            "ast" => Ok(SpecName::Ast),
            other => Err(Error::Parse(format!("unknown specialization {other:?}"))),
        }
    }
}

/// A ring endomorphism of Z[Γ] fixing `q` and sending each parameter to a monomial.
///
/// * `Generic`: identity.
/// * `Official`: `p_ji ↦ q^{-1/2}`, `q_ji ↦ q^{1/2}` for `j > i`.
/// * `Ast`: `q_ij ↦ p_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Specialization {
    pub name: SpecName,
}

impl Specialization {
    pub const GENERIC: Specialization = Specialization { name: SpecName::Generic };
    pub const OFFICIAL: Specialization = Specialization { name: SpecName::Official };
    pub const AST: Specialization = Specialization { name: SpecName::Ast };

    pub fn new(name: SpecName) -> Self {
        Specialization { name }
    }

    /// Image of the stored generator (`p_ij` or `q_ij`, `i < j`).
    pub fn image(&self, p: Param) -> GammaMonomial {
        match (self.name, p.kind) {
            (SpecName::Generic, _) => GammaMonomial::from_params(0, [(p, 1)]),
            (SpecName::Official, ParamKind::P) => GammaMonomial::v_pow(1),
            (SpecName::Official, ParamKind::Q) => GammaMonomial::v_pow(-1),
            (SpecName::Ast, ParamKind::P) => GammaMonomial::from_params(0, [(p, 1)]),
            (SpecName::Ast, ParamKind::Q) => GammaMonomial::from_params(0, [(Param { kind: ParamKind::P, idx: p.idx }, 1)]),
        }
    }

    pub fn apply(&self, m: &GammaMonomial) -> GammaMonomial {
        if self.name == SpecName::Generic {
            return m.clone();
        }
        let mut out = GammaMonomial::v_pow(m.v);
        for &(p, e) in &m.params {
            out = out.mul(&self.image(p).pow(e));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> GammaLaurent {
        GammaLaurent::q_pow(e)
    }

    fn p21q21() -> GammaMonomial {
        GammaMonomial::p(2, 1, 1).mul(&GammaMonomial::qp(2, 1, 1))
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&(&q(1) + &GammaLaurent::one()) + &GammaLaurent::from_int(-1), q(1));
        assert_eq!(&(&q(1) - &q(-1)) * &(&q(1) + &q(-1)), &q(2) - &q(-2));
        let m = GammaLaurent::monomial(p21q21());
        assert_eq!(&m * &GammaLaurent::monomial(p21q21().inv()), GammaLaurent::one());
    }

    #[test]
    fn bar_examples() {
        assert_eq!((&q(1) - &q(-1)).bar(), &q(-1) - &q(1));
        assert_eq!(GammaLaurent::monomial(p21q21()).bar(), GammaLaurent::monomial(p21q21().inv()));
        assert_eq!(GammaLaurent::from_int(3).bar(), GammaLaurent::from_int(3));
    }

    #[test]
    fn solve_bar_examples() {
        assert_eq!((&q(1) - &q(-1)).solve_bar_equation().unwrap(), -q(-1));
        assert_eq!(GammaLaurent::zero().solve_bar_equation().unwrap(), GammaLaurent::zero());
        assert!(matches!(GammaLaurent::one().solve_bar_equation(), Err(Error::NotAntisymmetric(_))));
    }

    #[test]
    fn specialize_examples() {
        let off = Specialization::OFFICIAL;
        assert_eq!(GammaLaurent::monomial(p21q21()).specialize(&off), GammaLaurent::one());
        let x = GammaLaurent::monomial(GammaMonomial::q_pow(1).mul(&GammaMonomial::p(2, 1, 1)));
        assert_eq!(x.specialize(&off), GammaLaurent::v_pow(1));
        assert_eq!(x.specialize(&Specialization::GENERIC), x);
        // q_ij -> p_ij under AST
        let y = GammaLaurent::monomial(GammaMonomial::qp(1, 3, 2));
        assert_eq!(y.specialize(&Specialization::AST), GammaLaurent::monomial(GammaMonomial::p(1, 3, 2)));
    }

    #[test]
    fn divide_examples() {
        let d = &q(1) - &q(-1);
        assert_eq!((&q(2) - &q(-2)).divide_exact(&d).unwrap(), &q(1) + &q(-1));
        assert_eq!(d.divide_exact(&d).unwrap(), GammaLaurent::one());
        assert!(matches!(GammaLaurent::one().divide_exact(&d), Err(Error::NotDivisible(_))));
        assert!(GammaLaurent::from_int(3).divide_exact(&GammaLaurent::from_int(2)).is_err());
    }

    #[test]
    fn nonneg_examples() {
        let x = &GammaLaurent::one()
            + &GammaLaurent::monomial(GammaMonomial::q_pow(-1).mul(&GammaMonomial::p(2, 1, -1)));
        assert!(x.is_nonneg());
        assert!(!(&q(1) - &q(-1)).is_nonneg());
        assert!(GammaLaurent::zero().is_nonneg());
    }

    #[test]
    fn q_inverse_is_positive() {
        assert!(GammaMonomial::q_pow(-1).is_positive());
        assert!(!GammaMonomial::q_pow(1).is_positive());
        assert!(!GammaMonomial::one().is_positive());
        assert_eq!(GammaMonomial::q_pow(-1).group_cmp(&GammaMonomial::one()), Ordering::Greater);
    }

    #[test]
    fn rendering() {
        let x = &(&q(2) - &q(-2)) + &GammaLaurent::v_pow(-3);
        assert_eq!(x.to_string(), "q^2 + q^-3/2 - q^-2");
        let m = GammaLaurent::term(BigInt::from(-2), GammaMonomial::p(2, 1, 1).mul(&GammaMonomial::qp(1, 2, 1)));
        assert_eq!(m.to_string(), "-2*p[1][2]^-1*Q[1][2]");
        let back = GammaLaurent::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x);
    }
}
