//! The free algebra on `F_1..F_N`, the twisted coproduct `r`, Lusztig's
//! bilinear form and equality modulo its radical.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::RwLock;

use super::lpoly::LPoly;
use super::qrat::QRat;

/// Letters are simple-root indices `1..=N`.
pub type Word = Vec<u8>;

/// Simple-root multiplicities, indexed from 0 for `α_1`.
pub type Weight = Vec<u32>;

/// `(α_i, α_j)` for type `A_N`.
pub fn cartan(i: u8, j: u8) -> i64 {
    match (i as i64 - j as i64).abs() {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// The bilinear form on weights induced by `cartan`.
pub fn weight_form(x: &[u32], y: &[u32]) -> i64 {
    let mut out = 0;
    for (i, &a) in x.iter().enumerate() {
        for (j, &b) in y.iter().enumerate() {
            out += a as i64 * b as i64 * cartan(i as u8 + 1, j as u8 + 1);
        }
    }
    out
}

pub fn word_weight(w: &[u8], n: usize) -> Weight {
    let mut out = vec![0; n];
    for &l in w {
        out[l as usize - 1] += 1;
    }
    out
}

/// Every arrangement of the multiset of letters with the given weight, sorted.
pub fn words_of_weight(wt: &[u32]) -> Vec<Word> {
    fn go(left: &mut Vec<u32>, cur: &mut Word, out: &mut Vec<Word>) {
        if left.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i as u8 + 1);
                go(left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut wt.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// A finite combination of words with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, QRat>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        FreeElement { terms: BTreeMap::from([(w, QRat::one())]) }
    }

    pub fn generator(i: u8) -> Self {
        Self::word(vec![i])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, QRat)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<Word, QRat> {
        &self.terms
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

    pub fn coefficient(&self, w: &[u8]) -> QRat {
        self.terms.get(w).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn add_term(&mut self, w: Word, c: &QRat) {
        if c.is_zero() {
            return;
        }
        let next = match self.terms.get(&w) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, next);
        }
    }

    pub fn add_scaled(&mut self, other: &FreeElement, c: &QRat) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &QRat) -> FreeElement {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out.add_scaled(other, &QRat::from_int(-1));
        out
    }

    pub fn mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> FreeElement {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Splits by weight.
    pub fn components(&self, n: usize) -> BTreeMap<Weight, FreeElement> {
        let mut out: BTreeMap<Weight, FreeElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(word_weight(w, n)).or_default().add_term(w.clone(), c);
        }
        out
    }

    /// The twisted derivation `∂_i`: `(x, F_i y) = (∂_i x, y)`.
    pub fn derivation(&self, i: u8) -> FreeElement {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut pairing = 0;
            for (k, &l) in w.iter().enumerate() {
                if l == i {
                    let mut rest = w.clone();
                    rest.remove(k);
                    out.add_term(rest, &(c * &QRat::q_pow(2 * pairing)));
                }
                pairing += cartan(l, i);
            }
        }
        out
    }

    /// Clears denominators: a nonzero rational multiple with polynomial coefficients.
    pub fn integral(&self) -> BTreeMap<Word, LPoly> {
        let mut lcm = LPoly::one();
        for c in self.terms.values() {
            let g = lcm.gcd(c.den());
            lcm = (&lcm * c.den()).divide_exact(&g).expect("gcd divides");
        }
        self.terms
            .iter()
            .map(|(w, c)| (w.clone(), (&(c.num() * &lcm)).divide_exact(c.den()).expect("lcm is a multiple")))
            .collect()
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word: String = if w.is_empty() { "1".into() } else { w.iter().map(|l| format!("F{l}")).collect() };
                format!("({c}) {word}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Φ`: reverses every word and sends `q ↦ q⁻¹`.
pub fn phi(x: &FreeElement) -> FreeElement {
    FreeElement::from_terms(x.terms().iter().map(|(w, c)| (w.iter().rev().copied().collect(), c.bar())))
}

/// `r(x) = Σ c·left⊗right`, keyed by `(left, right)`.
pub type Tensor = BTreeMap<(Word, Word), QRat>;

/// The twisted coproduct of every word, summed.
pub fn r_map(x: &FreeElement) -> Tensor {
    let mut out = Tensor::new();
    for (w, c) in x.terms() {
        let len = w.len();
        for mask in 0u32..(1 << len) {
            let (mut left, mut right) = (Word::new(), Word::new());
            let mut exp = 0;
            for (k, &l) in w.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    exp += right.iter().map(|&x| cartan(x, l)).sum::<i64>();
                    left.push(l);
                } else {
                    right.push(l);
                }
            }
            let term = c * &QRat::q_pow(2 * exp);
            let e = out.entry((left, right)).or_insert_with(QRat::zero);
            *e = &*e + &term;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Lusztig's form on words, memoized; concurrent reads, idempotent inserts.
#[derive(Debug, Default)]
pub struct Form {
    memo: RwLock<HashMap<(Word, Word), LPoly>>,
}

impl Form {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn words(&self, u: &[u8], v: &[u8]) -> LPoly {
        if u.len() != v.len() {
            return LPoly::zero();
        }
        if u.is_empty() {
            return LPoly::one();
        }
        let mut su = u.to_vec();
        let mut sv = v.to_vec();
        su.sort_unstable();
        sv.sort_unstable();
        if su != sv {
            return LPoly::zero();
        }
        let key = (u.to_vec(), v.to_vec());
        if let Some(x) = self.memo.read().unwrap().get(&key) {
            return x.clone();
        }
        let i = v[0];
        let mut out = LPoly::zero();
        let mut pairing = 0;
        for (k, &l) in u.iter().enumerate() {
            if l == i {
                let mut rest = u.to_vec();
                rest.remove(k);
                out = out + self.words(&rest, &v[1..]).shift(2 * pairing);
            }
            pairing += cartan(l, i);
        }
        self.memo.write().unwrap().insert(key, out.clone());
        out
    }

    pub fn pair(&self, x: &FreeElement, y: &FreeElement) -> QRat {
        let mut out = QRat::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                let f = self.words(u, v);
                if !f.is_zero() {
                    out = &out + &(&(a * b) * &QRat::from(f));
                }
            }
        }
        out
    }
}

/// True when `(x, w) = 0` for every word `w`, i.e. `x` vanishes in `U_q(n⁻)`.
pub fn is_radical_zero(x: &FreeElement) -> bool {
    fn zero_poly(x: &BTreeMap<Word, LPoly>) -> bool {
        if x.is_empty() {
            return true;
        }
        if x.keys().all(Vec::is_empty) {
            return x.values().all(LPoly::is_zero);
        }
        let letters: BTreeSet<u8> = x.keys().flatten().copied().collect();
        letters.into_iter().all(|i| zero_poly(&derive(x, i)))
    }
    fn derive(x: &BTreeMap<Word, LPoly>, i: u8) -> BTreeMap<Word, LPoly> {
        let mut out: BTreeMap<Word, LPoly> = BTreeMap::new();
        for (w, c) in x {
            let mut pairing = 0;
            for (k, &l) in w.iter().enumerate() {
                if l == i {
                    let mut rest = w.clone();
                    rest.remove(k);
                    let e = out.entry(rest).or_default();
                    *e = &*e + &c.shift(2 * pairing);
                }
                pairing += cartan(l, i);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
    let n = x.terms().keys().flatten().copied().max().unwrap_or(0) as usize;
    x.components(n).values().all(|c| zero_poly(&c.integral()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(i: u8) -> FreeElement {
        FreeElement::generator(i)
    }

    fn serre(i: u8, j: u8) -> FreeElement {
        let mut x = f(i).mul(&f(i)).mul(&f(j));
        x.add_scaled(&f(i).mul(&f(j)).mul(&f(i)), &QRat::from(LPoly::from_terms(&[(-1, 2), (-1, -2)])));
        x.add_scaled(&f(j).mul(&f(i)).mul(&f(i)), &QRat::one());
        x
    }

    #[test]
    fn weight_form_examples() {
        assert_eq!(weight_form(&[1, 0, 0], &[1, 0, 0]), 2);
        assert_eq!(weight_form(&[1, 0, 0], &[0, 1, 0]), -1);
        assert_eq!(weight_form(&[1, 1, 0], &[0, 1, 1]), 0);
    }

    #[test]
    fn r_examples() {
        let r = r_map(&f(1));
        assert_eq!(r.len(), 2);
        assert_eq!(r[&(vec![1], vec![])], QRat::one());
        let r = r_map(&f(2).mul(&f(1)));
        assert_eq!(r[&(vec![1], vec![2])], QRat::q_pow(-2));
        assert_eq!(r[&(vec![2], vec![1])], QRat::one());
        assert_eq!(r[&(vec![2, 1], vec![])], QRat::one());
        assert_eq!(r[&(vec![], vec![2, 1])], QRat::one());
        assert_eq!(r_map(&FreeElement::one()), Tensor::from([((vec![], vec![]), QRat::one())]));
    }

    #[test]
    fn form_examples() {
        let form = Form::new();
        assert_eq!(form.pair(&f(1), &f(1)), QRat::one());
        assert_eq!(form.pair(&f(2).mul(&f(1)), &f(1).mul(&f(2))), QRat::q_pow(-2));
        assert!(form.pair(&f(1), &f(2)).is_zero());
    }

    #[test]
    fn derivation_matches_form() {
        let form = Form::new();
        let x = f(2).mul(&f(1)).mul(&f(2));
        for w in words_of_weight(&[1, 1]) {
            let lhs = form.pair(&x, &f(2).mul(&FreeElement::word(w.clone())));
            let rhs = form.pair(&x.derivation(2), &FreeElement::word(w));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn radical_examples() {
        assert!(is_radical_zero(&serre(1, 2)));
        assert!(is_radical_zero(&serre(2, 1)));
        assert!(is_radical_zero(&f(1).mul(&f(3)).sub(&f(3).mul(&f(1)))));
        assert!(!is_radical_zero(&f(1)));
        assert!(!is_radical_zero(&f(1).mul(&f(2)).sub(&f(2).mul(&f(1)))));
        assert!(is_radical_zero(&FreeElement::zero()));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&f(1).mul(&f(2))), f(2).mul(&f(1)));
        assert_eq!(phi(&f(1).scale(&QRat::q_pow(1))), f(1).scale(&QRat::q_pow(-1)));
    }

    #[test]
    fn words_examples() {
        assert_eq!(words_of_weight(&[2, 1]).len(), 3);
        assert_eq!(words_of_weight(&[0, 0]), vec![Word::new()]);
    }
}
