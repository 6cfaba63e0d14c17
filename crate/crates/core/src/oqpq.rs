//! The algebra O_{q,P,Q}(M(n)): normal forms over the lexicographic PBW
//! basis, the normalization `Z(A) = D(A) Z^A`, products and the bar map.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Signed;
use serde_json::{json, Value};

use crate::coeff::{GammaLaurent, GammaMonomial, Specialization};
use crate::error::{Error, Result};
use crate::matgrid::MatIdx;

/// A generator `Z_ij`, 1-based.
pub type Gen = (usize, usize);

/// Parses a word literal such as `"22.11"`.
pub fn parse_word(s: &str) -> Result<Vec<Gen>> {
    s.split('.')
        .map(|g| {
            let d: Vec<usize> = g.trim().chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>()
                .ok_or_else(|| Error::Parse(format!("generator {g:?}")))?;
            match d.as_slice() {
                [i, j] if *i >= 1 && *j >= 1 => Ok((*i, *j)),
                _ => Err(Error::Parse(format!("generator {g:?}"))),
            }
        })
        .collect()
}

/// `D(A)` over the generic parameters: the square root of the coefficient
/// picked up when the word of `Z^A` is reversed.
pub fn d_factor(a: &MatIdx) -> GammaMonomial {
    let n = a.n();
    let mut v = 0i64;
    let mut out = GammaMonomial::one();
    let gens: Vec<(Gen, i64)> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .map(|(i, j)| ((i, j), a.get(i, j) as i64))
        .filter(|(_, x)| *x > 0)
        .collect();
    for (k, &((i, j), x)) in gens.iter().enumerate() {
        for &((s, t), y) in &gens[k + 1..] {
            let m = x * y;
            if s > i && t > j {
                out = out.mul(&GammaMonomial::p(s, i, m)).mul(&GammaMonomial::qp(t, j, m));
            } else if s > i {
                v += 2 * m;
                out = out.mul(&GammaMonomial::p(s, i, m)).mul(&GammaMonomial::qp(j, t, -m));
            } else {
                out = out.mul(&GammaMonomial::qp(t, j, m));
            }
        }
    }
    out.mul(&GammaMonomial::v_pow(v))
}

/// Generic coefficients of `Z_big Z_small` (with `big > small`) as sorted products.
pub fn generic_relation(big: Gen, small: Gen) -> Vec<(GammaLaurent, Gen, Gen)> {
    let ((s, t), (i, j)) = (big, small);
    debug_assert!(big > small);
    if s > i && t > j {
        let c1 = GammaMonomial::p(s, i, 2).mul(&GammaMonomial::qp(t, j, 2));
        let c2 = &(&GammaLaurent::q_pow(2) - &GammaLaurent::one()) * &GammaLaurent::monomial(GammaMonomial::p(s, i, 2));
        vec![(GammaLaurent::monomial(c1), small, big), (c2, (i, t), (s, j))]
    } else if s > i {
        let c = GammaMonomial::q_pow(2).mul(&GammaMonomial::p(s, i, 2)).mul(&GammaMonomial::qp(j, t, -2));
        vec![(GammaLaurent::monomial(c), small, big)]
    } else {
        vec![(GammaLaurent::monomial(GammaMonomial::qp(t, j, 2)), small, big)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Ordered monomials `Z^A`.
    Plain,
    /// Normalized monomials `Z(A)`.
    Norm,
}

/// A finite combination of `Z^A` or `Z(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    n: usize,
    basis: Basis,
    terms: BTreeMap<MatIdx, GammaLaurent>,
}

impl Element {
    pub fn zero(n: usize, basis: Basis) -> Self {
        Element { n, basis, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, basis: Basis) -> Self {
        Self::term(GammaLaurent::one(), MatIdx::zero(n), basis)
    }

    pub fn term(c: GammaLaurent, a: MatIdx, basis: Basis) -> Self {
        let mut out = Self::zero(a.n(), basis);
        out.add_term(a, &c);
        out
    }

    /// `Z(A)`.
    pub fn norm(a: MatIdx) -> Self {
        Self::term(GammaLaurent::one(), a, Basis::Norm)
    }

    pub fn from_terms(n: usize, basis: Basis, terms: impl IntoIterator<Item = (MatIdx, GammaLaurent)>) -> Self {
        let mut out = Self::zero(n, basis);
        for (a, c) in terms {
            out.add_term(a, &c);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<MatIdx, GammaLaurent> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<MatIdx, GammaLaurent> {
        self.terms
    }

    pub fn coefficient(&self, a: &MatIdx) -> GammaLaurent {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: MatIdx, c: &GammaLaurent) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
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

    pub fn add_scaled(&mut self, other: &Element, c: &GammaLaurent) {
        for (a, x) in &other.terms {
            self.add_term(a.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &GammaLaurent) -> Element {
        let mut out = Self::zero(self.n, self.basis);
        out.add_scaled(self, c);
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&GammaLaurent) -> GammaLaurent) -> Element {
        Self::from_terms(self.n, self.basis, self.terms.iter().map(|(a, c)| (a.clone(), f(c))))
    }

    pub fn specialize(&self, s: &Specialization) -> Element {
        self.map_coefficients(|c| c.specialize(s))
    }

    pub fn leading(&self) -> Option<(&MatIdx, &GammaLaurent)> {
        self.terms.iter().max_by(|x, y| x.0.rho().cmp(&y.0.rho()).then_with(|| x.0.cmp(y.0)))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(a, c)| json!({ "matrix": a.to_string(), "coeff": c.to_json() }))
            .collect();
        let basis = match self.basis {
            Basis::Plain => "plain",
            Basis::Norm => "norm",
        };
        json!({ "n": self.n, "basis": basis, "terms": terms })
    }

    pub fn from_json(value: &Value) -> Result<Element> {
        let bad = || Error::Parse(format!("element {value}"));
        let n = value.get("n").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let basis = match value.get("basis").and_then(Value::as_str) {
            Some("plain") => Basis::Plain,
            Some("norm") => Basis::Norm,
            _ => return Err(bad()),
        };
        let mut out = Element::zero(n, basis);
        for t in value.get("terms").and_then(Value::as_array).ok_or_else(bad)? {
            let a: MatIdx = t.get("matrix").and_then(Value::as_str).ok_or_else(bad)?.parse()?;
            out.add_term(a, &GammaLaurent::from_json(t.get("coeff").ok_or_else(bad)?)?);
        }
        Ok(out)
    }

    /// Paper-style rendering with `Z\begin{pmatrix}…\end{pmatrix}` factors.
    pub fn to_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let z = match self.basis {
            Basis::Plain => "Z^",
            Basis::Norm => "Z",
        };
        let mut out = String::new();
        for (k, (a, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = coefficient_parts(c);
            let body = latex_coefficient(&body);
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
            out.push_str(z);
            out.push_str(&a.to_latex());
        }
        out
    }
}

/// Splits a coefficient into a sign and the text preceding `Z[..]`.
fn coefficient_parts(c: &GammaLaurent) -> (bool, String) {
    if c.is_compound() {
        return (false, format!("({c}) "));
    }
    let (m, x) = c.terms().next().expect("nonzero coefficient");
    let neg = x.is_negative();
    let abs = GammaLaurent::term(x.abs(), m.clone());
    if abs.is_one() {
        (neg, String::new())
    } else {
        (neg, format!("{abs} "))
    }
}

fn latex_coefficient(text: &str) -> String {
    let mut out = String::new();
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        match chars[k] {
            '^' => {
                let start = k + 1;
                let mut end = start;
                while end < chars.len() && (chars[end] == '-' || chars[end] == '/' || chars[end].is_ascii_digit()) {
                    end += 1;
                }
                let exp: String = chars[start..end].iter().collect();
                out.push_str(&format!("^{{{exp}}}"));
                k = end;
            }
            '*' => k += 1,
            '[' => {
                let close = chars[k..].iter().position(|&c| c == ']').map(|p| p + k).unwrap_or(chars.len() - 1);
                let i: String = chars[k + 1..close].iter().collect();
                let close2 = chars[close + 2..].iter().position(|&c| c == ']').map(|p| p + close + 2).unwrap_or(chars.len() - 1);
                let j: String = chars[close + 2..close2].iter().collect();
                out.push_str(&format!("_{{{i}{j}}}"));
                k = close2 + 1;
            }
            'Q' => {
                out.push('q');
                k += 1;
            }
            c => {
                out.push(c);
                k += 1;
            }
        }
    }
    out
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let z = match self.basis {
            Basis::Plain => "Z^",
            Basis::Norm => "Z",
        };
        for (k, (a, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = coefficient_parts(c);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{body}{z}[{a}]")?;
        }
        Ok(())
    }
}

type Plain = BTreeMap<MatIdx, GammaLaurent>;

fn plain_add(acc: &mut Plain, a: &MatIdx, c: &GammaLaurent) {
    if c.is_zero() {
        return;
    }
    if let Some(x) = acc.get_mut(a) {
        *x += c;
        if x.is_zero() {
            acc.remove(a);
        }
    } else {
        acc.insert(a.clone(), c.clone());
    }
}

/// The algebra for a fixed size and parameter specialization.
#[derive(Debug)]
pub struct Algebra {
    n: usize,
    spec: Specialization,
    relations: HashMap<(Gen, Gen), Vec<(GammaLaurent, Gen, Gen)>>,
    memo: RwLock<HashMap<(MatIdx, Gen), Arc<Plain>>>,
}

impl Algebra {
    pub fn new(n: usize, spec: Specialization) -> Self {
        assert!(n >= 1);
        let gens: Vec<Gen> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
        let mut relations = HashMap::new();
        for &big in &gens {
            for &small in &gens {
                if big > small {
                    let rel = generic_relation(big, small)
                        .into_iter()
                        .map(|(c, x, y)| (c.specialize(&spec), x, y))
                        .collect();
                    relations.insert((big, small), rel);
                }
            }
        }
        Algebra { n, spec, relations, memo: RwLock::new(HashMap::new()) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> Specialization {
        self.spec
    }

    /// The specialized relation for `Z_big Z_small`.
    pub fn relation(&self, big: Gen, small: Gen) -> &[(GammaLaurent, Gen, Gen)] {
        &self.relations[&(big, small)]
    }

    /// `D(A)` under this algebra's specialization.
    pub fn d(&self, a: &MatIdx) -> GammaMonomial {
        self.spec.apply(&d_factor(a))
    }

    fn check_gen(&self, g: Gen) -> Result<()> {
        if g.0 < 1 || g.1 < 1 || g.0 > self.n || g.1 > self.n {
            return Err(Error::SizeMismatch(format!("generator {}{} for n={}", g.0, g.1, self.n)));
        }
        Ok(())
    }

    /// `Z^A · Z_g` as a combination of ordered monomials.
    fn mul_gen(&self, a: &MatIdx, g: Gen) -> Arc<Plain> {
        let key = (a.clone(), g);
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let mut out = Plain::new();
        match a.max_generator() {
            Some(h) if h > g => {
                let mut rest = a.clone();
                rest.set(h.0, h.1, a.get(h.0, h.1) - 1);
                for (c, x, y) in self.relation(h, g) {
                    for (b, cb) in self.mul_gen(&rest, *x).iter() {
                        let cb = cb * c;
                        for (d, cd) in self.mul_gen(b, *y).iter() {
                            plain_add(&mut out, d, &(cd * &cb));
                        }
                    }
                }
            }
            _ => {
                let mut b = a.clone();
                b.set(g.0, g.1, a.get(g.0, g.1) + 1);
                out.insert(b, GammaLaurent::one());
            }
        }
        let out = Arc::new(out);
        self.memo.write().unwrap().insert(key, out.clone());
        out
    }

    fn mul_word(&self, start: Plain, word: &[Gen]) -> Plain {
        let mut cur = start;
        for &g in word {
            let mut next = Plain::new();
            for (a, c) in &cur {
                for (b, cb) in self.mul_gen(a, g).iter() {
                    plain_add(&mut next, b, &(cb * c));
                }
            }
            cur = next;
        }
        cur
    }

    /// Reduces a combination of arbitrary words to ordered monomials.
    pub fn normal_form(&self, words: &[(GammaLaurent, Vec<Gen>)]) -> Result<Element> {
        let mut out = Element::zero(self.n, Basis::Plain);
        for (c, w) in words {
            for &g in w {
                self.check_gen(g)?;
            }
            let start = Plain::from([(MatIdx::zero(self.n), c.clone())]);
            for (a, x) in self.mul_word(start, w) {
                out.add_term(a, &x);
            }
        }
        Ok(out)
    }

    pub fn to_plain(&self, x: &Element) -> Element {
        match x.basis {
            Basis::Plain => x.clone(),
            Basis::Norm => Element::from_terms(
                x.n,
                Basis::Plain,
                x.terms.iter().map(|(a, c)| (a.clone(), c.mul_monomial(&self.d(a)))),
            ),
        }
    }

    pub fn to_norm(&self, x: &Element) -> Element {
        match x.basis {
            Basis::Norm => x.clone(),
            Basis::Plain => Element::from_terms(
                x.n,
                Basis::Norm,
                x.terms.iter().map(|(a, c)| (a.clone(), c.mul_monomial(&self.d(a).inv()))),
            ),
        }
    }

    fn to_basis(&self, x: &Element, basis: Basis) -> Element {
        match basis {
            Basis::Plain => self.to_plain(x),
            Basis::Norm => self.to_norm(x),
        }
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.n != self.n {
            return Err(Error::SizeMismatch(format!("element of size {} in algebra of size {}", x.n, self.n)));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        if x.basis != y.basis {
            return Err(Error::SizeMismatch("operands in different bases".into()));
        }
        let (px, py) = (self.to_plain(x), self.to_plain(y));
        let mut out = Element::zero(self.n, Basis::Plain);
        for (b, cb) in &py.terms {
            let word = b.word();
            let prod = self.mul_word(px.terms.clone(), &word);
            for (a, c) in prod {
                out.add_term(a, &(&c * cb));
            }
        }
        Ok(self.to_basis(&out, x.basis))
    }

    /// The anti-automorphism fixing every `Z_ij` and inverting Γ.
    pub fn bar(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        let px = self.to_plain(x);
        let mut out = Element::zero(self.n, Basis::Plain);
        for (a, c) in &px.terms {
            let mut word = a.word();
            word.reverse();
            let start = Plain::from([(MatIdx::zero(self.n), c.bar())]);
            for (b, cb) in self.mul_word(start, &word) {
                out.add_term(b, &cb);
            }
        }
        Ok(self.to_basis(&out, x.basis))
    }

    /// `g_AB` with `Z(A)Z(B) = g_AB Z(A+B) + lower terms`.
    pub fn leading_product_monomial(&self, a: &MatIdx, b: &MatIdx) -> Result<GammaMonomial> {
        let prod = self.multiply(&Element::norm(a.clone()), &Element::norm(b.clone()))?;
        let sum = a.checked_add(b)?;
        prod.coefficient(&sum)
            .as_monomial()
            .ok_or_else(|| Error::TriangularityViolation(format!("leading coefficient of Z({a})Z({b})")))
    }
}

/// Which bi-character is applied to the Dipper–Donkin relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    Bicharacter,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistVerdict {
    pub big: Gen,
    pub small: Gen,
    pub matches: bool,
}

/// The one-parameter Dipper–Donkin relation for `Z_big Z_small`.
pub fn dd_relation(big: Gen, small: Gen) -> Vec<(GammaLaurent, Gen, Gen)> {
    let ((s, t), (i, j)) = (big, small);
    if s > i && t > j {
        vec![(GammaLaurent::one(), small, big), (&GammaLaurent::q_pow(2) - &GammaLaurent::one(), (i, t), (s, j))]
    } else if s > i {
        vec![(GammaLaurent::q_pow(2), small, big)]
    } else {
        vec![(GammaLaurent::one(), small, big)]
    }
}

fn bicharacter(x: Gen, y: Gen) -> GammaMonomial {
    GammaMonomial::p(x.0, y.0, 1).mul(&GammaMonomial::qp(x.1, y.1, 1))
}

fn as_map(rel: &[(GammaLaurent, Gen, Gen)]) -> BTreeMap<(Gen, Gen), GammaLaurent> {
    let mut out: BTreeMap<(Gen, Gen), GammaLaurent> = BTreeMap::new();
    for (c, x, y) in rel {
        *out.entry((*x, *y)).or_default() += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Rewrites each Dipper–Donkin relation in the twisted product
/// `x*y = φ(g₁,g₂)ψ(h₁,h₂)xy` and compares it with the defining relation.
pub fn twist_check(n: usize, twist: Twist) -> Vec<TwistVerdict> {
    let gens: Vec<Gen> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for &big in &gens {
        for &small in &gens {
            if big <= small {
                continue;
            }
            let dd = dd_relation(big, small);
            let (twisted, target) = match twist {
                Twist::Bicharacter => {
                    let lhs = bicharacter(big, small);
                    let rel: Vec<_> = dd
                        .iter()
                        .map(|(c, x, y)| (c.mul_monomial(&lhs.div(&bicharacter(*x, *y))), *x, *y))
                        .collect();
                    (rel, generic_relation(big, small))
                }
                Twist::Trivial => (dd.clone(), dd.clone()),
            };
            out.push(TwistVerdict { big, small, matches: as_map(&twisted) == as_map(&target) });
        }
    }
    out
}
