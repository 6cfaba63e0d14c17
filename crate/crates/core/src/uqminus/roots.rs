//! Root vectors, PBW monomials and their duals.

use std::collections::BTreeMap;

use super::free::{weight_form, word_weight, FreeElement};
use super::lpoly::LPoly;
use super::qrat::QRat;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    /// `F_ij = [F_j, [F_{j-1}, … [F_{i+1}, F_i]_q …]_q]_q`
    Plain,
    /// `(1 - q⁴)^{i-j} F_ij`
    DualScaled,
    /// `F*_ij = (q F_j F*_{i,j-1} - q⁻¹ F*_{i,j-1} F_j)/(q² - q⁻²)`
    DualRecursive,
}

fn weight_of(x: &FreeElement, n: usize) -> Vec<u32> {
    x.terms().keys().next().map(|w| word_weight(w, n)).unwrap_or_else(|| vec![0; n])
}

/// `[x, y]_q = xy - q^{-2(wt x, wt y)} yx`.
pub fn q_commutator(x: &FreeElement, y: &FreeElement, n: usize) -> FreeElement {
    let pairing = weight_form(&weight_of(x, n), &weight_of(y, n));
    let mut out = x.mul(y);
    out.add_scaled(&y.mul(x), &-&QRat::q_pow(-2 * pairing));
    out
}

pub fn root_vector(i: usize, j: usize, kind: RootKind) -> Result<FreeElement> {
    if i == 0 || i > j || j > u8::MAX as usize {
        return Err(Error::IndexOutOfRange(format!("root ({i},{j})")));
    }
    let n = j;
    let f = |k: usize| FreeElement::generator(k as u8);
    Ok(match kind {
        RootKind::Plain => (i + 1..=j).fold(f(i), |acc, k| q_commutator(&f(k), &acc, n)),
        RootKind::DualScaled => {
            let s = QRat::from(LPoly::from_terms(&[(1, 0), (-1, 4)])).pow(i as i64 - j as i64)?;
            root_vector(i, j, RootKind::Plain)?.scale(&s)
        }
        RootKind::DualRecursive => {
            let den = QRat::from(LPoly::from_terms(&[(1, 2), (-1, -2)])).inv()?;
            (i + 1..=j).fold(f(i), |acc, k| {
                let mut x = f(k).mul(&acc).scale(&QRat::q_pow(1));
                x.add_scaled(&acc.mul(&f(k)), &-&QRat::q_pow(-1));
                x.scale(&den)
            })
        }
    })
}

/// Multiplicities `m_ij` of positive roots `α_ij`, `i ≤ j`.
pub type PbwIndex = BTreeMap<(usize, usize), u32>;

pub fn pbw_degree(m: &PbwIndex) -> u32 {
    m.iter().map(|(&(i, j), &k)| k * (j - i + 1) as u32).sum()
}

pub fn pbw_weight(m: &PbwIndex, n: usize) -> Vec<u32> {
    let mut out = vec![0; n];
    for (&(i, j), &k) in m {
        for l in i..=j {
            out[l - 1] += k;
        }
    }
    out
}

/// `|m|² = (wt, wt)`.
pub fn pbw_norm(m: &PbwIndex, n: usize) -> i64 {
    let w = pbw_weight(m, n);
    weight_form(&w, &w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RootOrder {
    /// `α_ij ≤ α_kl` iff `j < l`, or `j = l` and `i < k`; factors left to right ascending.
    Ascending,
    /// The same order with factors left to right descending.
    #[default]
    Descending,
}

/// The q-integer used in divided powers `F^m/[m]!`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum DividedPower {
    /// `(q^{2m} - q^{-2m})/(q² - q⁻²)`
    Balanced,
    /// `1 + q⁴ + … + q^{4(m-1)}`
    #[default]
    Quartic,
    /// `1 + q² + … + q^{2(m-1)}`
    Square,
}

pub fn divided_int(m: u32, form: DividedPower) -> LPoly {
    let pairs: Vec<(i64, i64)> = (0..m.max(1) as i64)
        .map(|k| match form {
            DividedPower::Balanced => (1, 4 * k - 2 * (m as i64 - 1)),
            DividedPower::Quartic => (1, 4 * k),
            DividedPower::Square => (1, 2 * k),
        })
        .collect();
    LPoly::from_terms(&pairs)
}

pub fn divided_factorial(m: u32, form: DividedPower) -> LPoly {
    (1..=m).fold(LPoly::one(), |acc, k| &acc * &divided_int(k, form))
}

fn ordered(m: &PbwIndex, order: RootOrder) -> Vec<((usize, usize), u32)> {
    let mut v: Vec<((usize, usize), u32)> = m.iter().filter(|(_, &k)| k > 0).map(|(&r, &k)| (r, k)).collect();
    v.sort_by_key(|&((i, j), _)| (j, i));
    if order == RootOrder::Descending {
        v.reverse();
    }
    v
}

/// `F(m) = Π F_ij^{m_ij}/[m_ij]!` in the given order.
pub fn pbw_element(m: &PbwIndex, order: RootOrder, form: DividedPower) -> Result<FreeElement> {
    let mut out = FreeElement::one();
    for ((i, j), k) in ordered(m, order) {
        let f = root_vector(i, j, RootKind::Plain)?.pow(k);
        out = out.mul(&f.scale(&QRat::from(divided_factorial(k, form)).inv()?));
    }
    Ok(out)
}

/// `F*(m) = Π q^{binom(m_ij, 2)} F*_ij^{m_ij}`, optionally times `q^{|m|²/2 - deg m}`.
pub fn pbw_dual(m: &PbwIndex, normalized: bool, order: RootOrder, kind: RootKind, n: usize) -> Result<FreeElement> {
    let mut out = FreeElement::one();
    for ((i, j), k) in ordered(m, order) {
        let f = root_vector(i, j, kind)?.pow(k);
        let binom = (k as i64) * (k as i64 - 1) / 2;
        out = out.mul(&f.scale(&QRat::q_pow(binom)));
    }
    if normalized {
        out = out.scale(&QRat::q_pow(pbw_norm(m, n) / 2 - pbw_degree(m) as i64));
    }
    Ok(out)
}

/// `(1 - q⁴)^{deg m} / Π φ_{m_ij}(q⁴)` with `φ_k(z) = (1-z)…(1-z^k)`.
pub fn diagonal_closed_form(m: &PbwIndex) -> QRat {
    let num = LPoly::from_terms(&[(1, 0), (-1, 4)]).pow(pbw_degree(m));
    let mut den = LPoly::one();
    for &k in m.values() {
        for l in 1..=k as i64 {
            den = &den * &LPoly::from_terms(&[(1, 0), (-1, 4 * l)]);
        }
    }
    QRat::new(num, den).expect("nonzero")
}

/// Every PBW index of the given degree over the roots of `A_n`.
pub fn pbw_indices_of_degree(n: usize, deg: u32) -> Vec<PbwIndex> {
    let roots: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    fn go(roots: &[(usize, usize)], left: u32, cur: &mut PbwIndex, out: &mut Vec<PbwIndex>) {
        let Some((&r, rest)) = roots.split_first() else {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        };
        let h = (r.1 - r.0 + 1) as u32;
        for k in 0..=left / h {
            if k > 0 {
                cur.insert(r, k);
            }
            go(rest, left - k * h, cur, out);
            cur.remove(&r);
        }
    }
    let mut out = Vec::new();
    go(&roots, deg, &mut PbwIndex::new(), &mut out);
    out
}

/// `(-1)^{deg m - Σ m_ij}`, the sign separating the form from the closed diagonal.
pub fn diagonal_sign(m: &PbwIndex) -> i64 {
    if (pbw_degree(m) - m.values().sum::<u32>()) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uqminus::free::{is_radical_zero, phi, Form};

    fn f(i: u8) -> FreeElement {
        FreeElement::generator(i)
    }

    #[test]
    fn root_examples() {
        assert_eq!(root_vector(1, 1, RootKind::Plain).unwrap(), f(1));
        let mut want = f(2).mul(&f(1));
        want.add_scaled(&f(1).mul(&f(2)), &-&QRat::q_pow(2));
        assert_eq!(root_vector(1, 2, RootKind::Plain).unwrap(), want);
        let den = QRat::from(LPoly::from_terms(&[(1, 2), (-1, -2)])).inv().unwrap();
        let mut want = f(2).mul(&f(1)).scale(&QRat::q_pow(1));
        want.add_scaled(&f(1).mul(&f(2)), &-&QRat::q_pow(-1));
        assert_eq!(root_vector(1, 2, RootKind::DualRecursive).unwrap(), want.scale(&den));
        assert!(root_vector(2, 1, RootKind::Plain).is_err());
    }

    #[test]
    fn pbw_examples() {
        let m = PbwIndex::from([((1, 1), 1)]);
        assert_eq!(pbw_dual(&m, true, RootOrder::Ascending, RootKind::DualScaled, 3).unwrap(), f(1));
        let m = PbwIndex::from([((1, 2), 1)]);
        let s = QRat::from(LPoly::from_terms(&[(1, 0), (-1, 4)])).inv().unwrap();
        let want = root_vector(1, 2, RootKind::Plain).unwrap().scale(&s);
        assert_eq!(pbw_dual(&m, false, RootOrder::Ascending, RootKind::DualScaled, 3).unwrap(), want);
        let m = PbwIndex::from([((1, 1), 2)]);
        let want = f(1).mul(&f(1)).scale(&QRat::q_pow(1));
        assert_eq!(pbw_dual(&m, false, RootOrder::Ascending, RootKind::DualScaled, 3).unwrap(), want);
    }

    #[test]
    fn degree_and_norm() {
        let m = PbwIndex::from([((1, 2), 1), ((3, 3), 2)]);
        assert_eq!(pbw_degree(&m), 4);
        assert_eq!(pbw_weight(&m, 3), vec![1, 1, 2]);
        assert_eq!(pbw_norm(&m, 3), 2 + 2 + 8 - 2 - 4);
        assert_eq!(pbw_indices_of_degree(2, 2).len(), 4);
    }

    #[test]
    fn divided_examples() {
        assert_eq!(divided_int(2, DividedPower::Balanced), LPoly::from_terms(&[(1, 2), (1, -2)]));
        assert_eq!(divided_int(2, DividedPower::Quartic), LPoly::from_terms(&[(1, 0), (1, 4)]));
        assert!(divided_int(1, DividedPower::Square).is_one());
        assert!(divided_factorial(0, DividedPower::Balanced).is_one());
    }

    #[test]
    fn diagonal_and_orthogonal() {
        let form = Form::new();
        for deg in 1..=3 {
            let ms = pbw_indices_of_degree(3, deg);
            let els: Vec<FreeElement> =
                ms.iter().map(|m| pbw_element(m, RootOrder::default(), DividedPower::default()).unwrap()).collect();
            for (k, m) in ms.iter().enumerate() {
                let want = diagonal_closed_form(m);
                let want = if diagonal_sign(m) == 1 { want } else { -&want };
                assert_eq!(form.pair(&els[k], &els[k]), want, "{m:?}");
                for (l, m2) in ms.iter().enumerate() {
                    if l != k && pbw_weight(m, 3) == pbw_weight(m2, 3) {
                        assert!(form.pair(&els[k], &els[l]).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn dual_kinds() {
        let f = |i: u8| FreeElement::generator(i);
        for (i, j) in [(1, 1), (1, 2), (2, 3), (1, 3)] {
            let s = root_vector(i, j, RootKind::DualScaled).unwrap();
            let r = root_vector(i, j, RootKind::DualRecursive).unwrap();
            assert!(is_radical_zero(&phi(&r).sub(&r)));
            assert_eq!(is_radical_zero(&phi(&s).sub(&s)), i == j);
        }
        // Not proportional: the two commutators carry opposite q-powers.
        let r = root_vector(1, 2, RootKind::DualRecursive).unwrap();
        let s = root_vector(1, 2, RootKind::DualScaled).unwrap();
        let ratio = |x: &FreeElement| (&x.coefficient(&[1, 2]) / &x.coefficient(&[2, 1])).unwrap();
        assert_eq!(ratio(&s), -&QRat::q_pow(2));
        assert_eq!(ratio(&r), -&QRat::q_pow(-2));
        let mut want = f(2).mul(&f(1));
        want.add_scaled(&f(1).mul(&f(2)), &-&QRat::q_pow(-2));
        let c = r.coefficient(&[2, 1]);
        assert_eq!(r, want.scale(&c));
    }
}
