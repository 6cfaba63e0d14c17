//! The local operators `T_ij^st`, their q-exponentials, and the
//! factorization of the bar action into one exponential per 2×2 block.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::coeff::{GammaLaurent, GammaMonomial};
use crate::error::{Error, Result};
use crate::matgrid::{apply_move, enumerate_cell, Cell, Direction, MatIdx, MoveLabel};
use crate::oqpq::{Basis, Element};
use crate::qcomb::{q_exp_apply, q_factorial, LocalOperator, QBase, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalKind {
    T,
    TBar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalLabel {
    pub label: MoveLabel,
    pub kind: LocalKind,
}

/// `Σ q^{∓s}` for `s = |a-b|+1, |a-b|+3, …, a+b-1`; zero when `ab = 0`.
pub fn local_coefficient(a: u32, b: u32, kind: LocalKind) -> GammaLaurent {
    let sign = match kind {
        LocalKind::T => -1,
        LocalKind::TBar => 1,
    };
    let mut out = GammaLaurent::zero();
    if a == 0 || b == 0 {
        return out;
    }
    let (lo, hi) = ((a as i64 - b as i64).abs() + 1, (a + b) as i64 - 1);
    for s in (lo..=hi).step_by(2) {
        out += &GammaLaurent::q_pow(sign * s);
    }
    out
}

fn label_entries(a: &MatIdx, l: &MoveLabel) -> (u32, u32) {
    (a.get(l.i, l.j), a.get(l.s, l.t))
}

fn move_down(a: &MatIdx, l: &MoveLabel) -> Option<MatIdx> {
    apply_move(a, l, Direction::Down).ok()
}

/// Applies `T` or `T̄` termwise to an element of the normalized basis.
pub fn local_apply(op: &LocalLabel, x: &Element) -> Element {
    let mut out = Element::zero(x.n(), Basis::Norm);
    for (a, c) in x.terms() {
        let (p, r) = label_entries(a, &op.label);
        if let Some(target) = move_down(a, &op.label) {
            out.add_term(target, &(c * &local_coefficient(p, r, op.kind)));
        }
    }
    out
}

/// Which exponential of the local operators at one label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalExp {
    /// `exp_{q⁻¹}(-T + T̄)`
    Bar,
    /// `exp_q(T)`
    Forward,
    /// `exp_{q⁻¹}(-T)`
    Inverse,
}

fn operator(cell: &Cell, label: MoveLabel, which: LocalExp) -> Result<LocalOperator<MatIdx>> {
    LocalOperator::from_fn(cell.members.iter().cloned(), |a| {
        let (p, r) = label_entries(a, &label);
        let c = match which {
            LocalExp::Bar => local_coefficient(p, r, LocalKind::TBar) - local_coefficient(p, r, LocalKind::T),
            _ => local_coefficient(p, r, LocalKind::T),
        };
        match move_down(a, &label) {
            Some(b) if !c.is_zero() => BTreeMap::from([(b, c)]),
            _ => BTreeMap::new(),
        }
    })
}

fn exp_params(which: LocalExp) -> (QBase, i64) {
    match which {
        LocalExp::Bar => (QBase::QInv, 1),
        LocalExp::Forward => (QBase::Q, 1),
        LocalExp::Inverse => (QBase::QInv, -1),
    }
}

/// The exponentials at every label of one cell, tabulated once.
#[derive(Clone, Debug)]
pub struct CellOperators {
    pub cell: Cell,
    ops: BTreeMap<(MoveLabel, LocalExpKey), LocalOperator<MatIdx>>,
}

type LocalExpKey = u8;

fn key(which: LocalExp) -> LocalExpKey {
    match which {
        LocalExp::Bar => 0,
        LocalExp::Forward | LocalExp::Inverse => 1,
    }
}

impl CellOperators {
    pub fn new(cell: Cell) -> Result<Self> {
        let n = cell.rows.len();
        let mut ops = BTreeMap::new();
        for label in MoveLabel::all(n) {
            for which in [LocalExp::Bar, LocalExp::Forward] {
                ops.insert((label, key(which)), operator(&cell, label, which)?);
            }
        }
        Ok(CellOperators { cell, ops })
    }

    pub fn for_matrix(a: &MatIdx) -> Result<Self> {
        Self::new(enumerate_cell(&a.row_sums(), &a.col_sums())?)
    }

    pub fn apply(&self, label: MoveLabel, which: LocalExp, x: &Element) -> Result<Element> {
        let op = &self.ops[&(label, key(which))];
        let (base, sign) = exp_params(which);
        let v: Vector<MatIdx> = x.terms().clone();
        Ok(Element::from_terms(x.n(), Basis::Norm, q_exp_apply(op, &v, base, sign)?))
    }

    /// The ordered product of `exp_{q⁻¹}(-T + T̄)` over all labels.
    pub fn factorized_bar(&self, order: FactorOrder, x: &Element) -> Result<Element> {
        let mut labels = order.labels(self.cell.rows.len());
        if order.application == Application::RightmostFirst {
            labels.reverse();
        }
        labels.iter().try_fold(x.clone(), |y, l| self.apply(*l, LocalExp::Bar, &y))
    }
}

/// The single label of the 2×2 case.
pub fn label_2x2() -> MoveLabel {
    MoveLabel::new(1, 1, 2, 2).expect("valid label")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Ascending,
    Descending,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Application {
    /// The leftmost factor of the product acts on the vector first.
    LeftmostFirst,
    /// Ordinary composition: the rightmost factor acts first.
    RightmostFirst,
}

/// How a label `(i,j)/(s,t)` splits into the two keys of a lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grouping {
    /// Outer key `(i,j)`, inner key `(s,t)`.
    DoubleLex,
    /// Outer key the row pair `(i,s)`, inner key the column pair `(j,t)`.
    RowsThenColumns,
}

/// Arrangement of the factors: lexicographic in the outer key, then in
/// the inner key, each possibly reversed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FactorOrder {
    pub grouping: Grouping,
    pub outer: Sense,
    pub inner: Sense,
    pub application: Application,
}

impl FactorOrder {
    /// Double-lex order read as ordinary composition of matrices.
    pub const FROZEN: FactorOrder = FactorOrder {
        grouping: Grouping::DoubleLex,
        outer: Sense::Ascending,
        inner: Sense::Ascending,
        application: Application::RightmostFirst,
    };

    pub fn all() -> Vec<FactorOrder> {
        let mut out = Vec::new();
        for grouping in [Grouping::DoubleLex, Grouping::RowsThenColumns] {
            for application in [Application::RightmostFirst, Application::LeftmostFirst] {
                for outer in [Sense::Ascending, Sense::Descending] {
                    for inner in [Sense::Ascending, Sense::Descending] {
                        out.push(FactorOrder { grouping, outer, inner, application });
                    }
                }
            }
        }
        out
    }

    pub fn double_lex() -> Vec<FactorOrder> {
        Self::all().into_iter().filter(|o| o.grouping == Grouping::DoubleLex).collect()
    }

    /// Labels in product order, left to right.
    pub fn labels(&self, n: usize) -> Vec<MoveLabel> {
        let mut labels = MoveLabel::all(n);
        labels.sort_by(|x, y| {
            let (outer, inner) = match self.grouping {
                Grouping::DoubleLex => ((x.i, x.j).cmp(&(y.i, y.j)), (x.s, x.t).cmp(&(y.s, y.t))),
                Grouping::RowsThenColumns => ((x.i, x.s).cmp(&(y.i, y.s)), (x.j, x.t).cmp(&(y.j, y.t))),
            };
            let outer = if self.outer == Sense::Descending { outer.reverse() } else { outer };
            let inner = if self.inner == Sense::Descending { inner.reverse() } else { inner };
            outer.then(inner)
        });
        labels
    }
}

impl fmt::Display for FactorOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |x: Sense| if x == Sense::Ascending { "asc" } else { "desc" };
        let a = if self.application == Application::RightmostFirst { "rightmost-first" } else { "leftmost-first" };
        let g = if self.grouping == Grouping::DoubleLex { "double-lex" } else { "rows-columns" };
        write!(f, "{g}-{}-{}-{}", s(self.outer), s(self.inner), a)
    }
}

impl FromStr for FactorOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FactorOrder::all()
            .into_iter()
            .find(|o| o.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown factor order {s:?}")))
    }
}

/// `bar(Z(A))` computed as a product of local exponentials.
pub fn bar_via_factorization(a: &MatIdx, order: FactorOrder) -> Result<Element> {
    CellOperators::for_matrix(a)?.factorized_bar(order, &Element::norm(a.clone()))
}

/// `τ⁽ⁱ⁾` and `μ⁽ⁱ⁾`: the coefficients of `Z(C - iI + iE)` in `tⁱ Z(C)` and `(-t + t̄)ⁱ Z(C)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauMu {
    pub c: MatIdx,
    pub i: u32,
    pub tau: GammaLaurent,
    pub mu: GammaLaurent,
}

pub fn tau_mu(c: &MatIdx, i: u32) -> Result<TauMu> {
    if c.n() != 2 {
        return Err(Error::SizeMismatch(format!("{c} is not 2×2")));
    }
    let l = label_2x2();
    let mut tau = Element::norm(c.clone());
    let mut mu = tau.clone();
    for _ in 0..i {
        tau = local_apply(&LocalLabel { label: l, kind: LocalKind::T }, &tau);
        let minus = local_apply(&LocalLabel { label: l, kind: LocalKind::T }, &mu);
        let plus = local_apply(&LocalLabel { label: l, kind: LocalKind::TBar }, &mu);
        mu = plus;
        mu.add_scaled(&minus, &GammaLaurent::from_int(-1));
    }
    let target = shifted(c, i);
    let read = |x: &Element| target.as_ref().map(|t| x.coefficient(t)).unwrap_or_default();
    Ok(TauMu { c: c.clone(), i, tau: read(&tau), mu: read(&mu) })
}

/// `C - iI + iE`, if nonnegative.
pub fn shifted(c: &MatIdx, i: u32) -> Option<MatIdx> {
    let d = c.checked_sub(&MatIdx::from_rows(&[&[i, 0], &[0, i]]))?;
    d.checked_add(&MatIdx::from_rows(&[&[0, i], &[i, 0]])).ok()
}

fn trace(a: &MatIdx) -> i64 {
    (a.get(1, 1) + a.get(2, 2)) as i64
}

fn divided(x: &GammaLaurent, r: u32) -> Result<GammaLaurent> {
    x.divide_exact(&q_factorial(r, QBase::QInv))
}

/// Both sides of the `τ` recursion for `A + I` at step `r ≥ 1`.
pub fn key_tau_sides(a: &MatIdx, r: u32) -> Result<(GammaLaurent, GammaLaurent)> {
    let a_i = a.checked_add(&MatIdx::identity(2))?;
    let lhs = divided(&tau_mu(&a_i, r)?.tau, r)?;
    let shift = GammaMonomial::q_pow(-(trace(a) - 2 * (r as i64 - 1)) - 1);
    let rhs = divided(&tau_mu(a, r)?.tau, r)? + divided(&tau_mu(a, r - 1)?.tau, r - 1)?.mul_monomial(&shift);
    Ok((lhs, rhs))
}

/// Both sides of the `μ` recursion for `A + I` at step `s ≥ 1`.
pub fn key_mu_sides(a: &MatIdx, s: u32) -> Result<(GammaLaurent, GammaLaurent)> {
    let a_i = a.checked_add(&MatIdx::identity(2))?;
    let lhs = divided(&tau_mu(&a_i, s)?.mu, s)?;
    let prev = divided(&tau_mu(a, s - 1)?.mu, s - 1)?;
    let down = GammaMonomial::q_pow(-(trace(a) - 2 * (s as i64 - 1)) - 1);
    let up = GammaMonomial::q_pow(trace(a) + 1);
    let rhs = divided(&tau_mu(a, s)?.mu, s)? - prev.mul_monomial(&down) + prev.mul_monomial(&up);
    Ok((lhs, rhs))
}

/// `(q^a - q^{-a})(q^b - q^{-b})/(q - q⁻¹)`, the coefficient of `(t̄ - t)Z(A)`.
pub fn difference_closed_form(a: u32, b: u32) -> GammaLaurent {
    let qq = |k: i64| GammaLaurent::from_q_terms(&[(1, k), (-1, -k)]);
    (qq(a as i64) * qq(b as i64)).divide_exact(&qq(1)).expect("exact")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MatIdx {
        s.parse().unwrap()
    }

    fn t(kind: LocalKind) -> LocalLabel {
        LocalLabel { label: label_2x2(), kind }
    }

    #[test]
    fn local_apply_examples() {
        let y = local_apply(&t(LocalKind::T), &Element::norm(MatIdx::identity(2)));
        assert_eq!(y, Element::term(GammaLaurent::q_pow(-1), m("0,1;1,0"), Basis::Norm));
        let y = local_apply(&t(LocalKind::T), &Element::norm(m("2,0;0,1")));
        assert_eq!(y, Element::term(GammaLaurent::q_pow(-2), m("1,1;1,0"), Basis::Norm));
        assert!(local_apply(&t(LocalKind::T), &Element::norm(m("0,1;1,0"))).is_zero());
        let y = local_apply(&t(LocalKind::TBar), &Element::norm(m("2,0;0,2")));
        assert_eq!(y.coefficient(&m("1,1;1,1")), GammaLaurent::from_q_terms(&[(1, 1), (1, 3)]));
    }

    #[test]
    fn h_examples() {
        let ops = CellOperators::for_matrix(&MatIdx::identity(2)).unwrap();
        let y = ops.apply(label_2x2(), LocalExp::Bar, &Element::norm(MatIdx::identity(2))).unwrap();
        let mut want = Element::norm(MatIdx::identity(2));
        want.add_term(m("0,1;1,0"), &GammaLaurent::from_q_terms(&[(1, 1), (-1, -1)]));
        assert_eq!(y, want);
        let e = Element::norm(m("0,1;1,0"));
        assert_eq!(ops.apply(label_2x2(), LocalExp::Bar, &e).unwrap(), e);
    }

    #[test]
    fn inverse_column_is_basis_element() {
        let a = m("2,0;0,1");
        let ops = CellOperators::for_matrix(&a).unwrap();
        let y = ops.apply(label_2x2(), LocalExp::Inverse, &Element::norm(a.clone())).unwrap();
        let mut want = Element::norm(a);
        want.add_term(m("1,1;1,0"), &-GammaLaurent::q_pow(-2));
        assert_eq!(y, want);
    }

    #[test]
    fn tau_mu_examples() {
        let tm = tau_mu(&MatIdx::identity(2), 1).unwrap();
        assert_eq!(tm.tau, GammaLaurent::q_pow(-1));
        assert_eq!(tm.mu, GammaLaurent::from_q_terms(&[(1, 1), (-1, -1)]));
        let tm = tau_mu(&m("0,1;1,0"), 1).unwrap();
        assert!(tm.tau.is_zero() && tm.mu.is_zero());
        let tm = tau_mu(&m("3,1;0,2"), 0).unwrap();
        assert!(tm.tau.is_one() && tm.mu.is_one());
    }

    #[test]
    fn difference_examples() {
        assert_eq!(difference_closed_form(1, 1), GammaLaurent::from_q_terms(&[(1, 1), (-1, -1)]));
        assert_eq!(difference_closed_form(2, 1), GammaLaurent::from_q_terms(&[(1, 2), (-1, -2)]));
    }

    #[test]
    fn orders() {
        assert_eq!(FactorOrder::all().len(), 16);
        for o in FactorOrder::all() {
            assert_eq!(o.to_string().parse::<FactorOrder>().unwrap(), o);
        }
        assert_eq!(FactorOrder::FROZEN.labels(3), MoveLabel::all(3));
        let rows = FactorOrder { grouping: Grouping::RowsThenColumns, ..FactorOrder::FROZEN };
        let labels = rows.labels(3);
        assert_eq!(labels[0], MoveLabel::new(1, 1, 2, 2).unwrap());
        assert_eq!(labels[2], MoveLabel::new(1, 2, 2, 3).unwrap());
        assert_eq!(labels[3], MoveLabel::new(1, 1, 3, 2).unwrap());
        assert_eq!(FactorOrder::FROZEN.labels(2), vec![label_2x2()]);
    }
}
