//! The conjectured closed formula for `b(A)`, evaluated under each of its
//! readings and compared with the solver.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::canon::CanonStore;
use crate::coeff::GammaLaurent;
use crate::error::{Error, Result};
use crate::matgrid::{down_set, enumerate_cell, principal_path, Cell, MatIdx, MoveLabel, PathOrder};
use crate::oqpq::{Basis, Element};
use crate::qcomb::{q_binomial, QBase};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariantName {
    /// The formula as printed, entries read from `A`.
    Literal,
    /// Drop `q^{-|a_ij - a_st|}` for labels unused by the path.
    SkipZeroFactor,
    /// Read the entries from `B` instead of `A`.
    BEntries,
}

impl VariantName {
    pub const ALL: [VariantName; 3] = [VariantName::Literal, VariantName::SkipZeroFactor, VariantName::BEntries];

    pub fn as_str(&self) -> &'static str {
        match self {
            VariantName::Literal => "literal",
            VariantName::SkipZeroFactor => "skip-zero-factor",
            VariantName::BEntries => "b-entries",
        }
    }
}

impl FromStr for VariantName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VariantName::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown variant {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConjectureVariant {
    pub name: VariantName,
    pub path_order: PathOrder,
}

impl ConjectureVariant {
    pub fn new(name: VariantName) -> Self {
        ConjectureVariant { name, path_order: PathOrder::default() }
    }

    pub fn all() -> Vec<ConjectureVariant> {
        let mut out = Vec::new();
        for name in VariantName::ALL {
            for path_order in PathOrder::ALL {
                out.push(ConjectureVariant { name, path_order });
            }
        }
        out
    }
}

impl fmt::Display for ConjectureVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name.as_str(), self.path_order.as_str())
    }
}

/// `(-q⁻¹)^{l_AB} Π q^{-|a_ij - a_st|} binom(min(a_ij, a_st), p_ij^st(B))_{q⁻²}`.
pub fn conj_coefficient(a: &MatIdx, b: &MatIdx, variant: ConjectureVariant) -> Result<GammaLaurent> {
    let path = principal_path(a, b, variant.path_order)?;
    let uses = path.multiplicities();
    let source = if variant.name == VariantName::BEntries { b } else { a };
    let l = path.len() as i64;
    let mut out = GammaLaurent::q_pow(-l);
    if l % 2 == 1 {
        out = -out;
    }
    for label in MoveLabel::all(a.n()) {
        let p = uses.get(&label).copied().unwrap_or(0);
        if p == 0 && variant.name == VariantName::SkipZeroFactor {
            continue;
        }
        let (x, y) = (source.get(label.i, label.j), source.get(label.s, label.t));
        let gap = (x as i64 - y as i64).abs();
        out = out.mul_monomial(&crate::coeff::GammaMonomial::q_pow(-gap)) * q_binomial(x.min(y), p as i64, QBase::QInv);
        if out.is_zero() {
            break;
        }
    }
    Ok(out)
}

/// `Σ_{B ≤ A} conj_coefficient(A, B)·Z(B)`.
pub fn conj_element(a: &MatIdx, variant: ConjectureVariant) -> Result<Element> {
    let mut out = Element::zero(a.n(), Basis::Norm);
    for b in down_set(a) {
        out.add_term(b.clone(), &conj_coefficient(a, &b, variant)?);
    }
    Ok(out)
}

/// One disagreement between the formula and the solver.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub a: MatIdx,
    pub b: MatIdx,
    pub conjectured: GammaLaurent,
    pub solver: GammaLaurent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VariantReport {
    pub variant: ConjectureVariant,
    pub match_all: bool,
    pub mismatches: Vec<Certificate>,
    /// Matrices whose conjectured element is not bar-invariant.
    pub not_invariant: Vec<MatIdx>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjReport {
    pub cells: Vec<String>,
    pub variants: Vec<VariantReport>,
}

pub fn cell_id(cell: &Cell) -> String {
    let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    format!("{}|{}", join(&cell.rows), join(&cell.cols))
}

/// The cells of all `2×2` matrices with entries at most `max_entry`.
pub fn m2_cells(max_entry: u32) -> Vec<Cell> {
    let mut out: Vec<Cell> = Vec::new();
    let k = max_entry + 1;
    for code in 0..k.pow(4) {
        let v: Vec<u32> = (0..4).map(|p| (code / k.pow(p)) % k).collect();
        let a = MatIdx::from_entries(2, v).expect("four entries");
        let cell = enumerate_cell(&a.row_sums(), &a.col_sums()).expect("equal margins");
        if !out.contains(&cell) {
            out.push(cell);
        }
    }
    out
}

/// Margins `(a, b+c, 0 | a, b, c)` in `M₃`: the cells of `[[a,0,0],[0,b,c]]`.
pub fn family_2x3_cells(max_entry: u32) -> Vec<Cell> {
    let mut out: Vec<Cell> = Vec::new();
    for a in 0..=max_entry {
        for b in 0..=max_entry {
            for c in 0..=max_entry {
                let cell = enumerate_cell(&[a, b + c, 0], &[a, b, c]).expect("equal margins");
                if !out.contains(&cell) {
                    out.push(cell);
                }
            }
        }
    }
    out
}

pub fn conj_check(cells: &[Cell], variants: &[ConjectureVariant], store: &CanonStore) -> Result<ConjReport> {
    let mut out = Vec::new();
    for &variant in variants {
        let mut mismatches = Vec::new();
        let mut not_invariant = Vec::new();
        for cell in cells {
            let table = store.table(&cell.rows, &cell.cols)?;
            for a in &cell.members {
                let conj = conj_element(a, variant)?;
                for b in down_set(a) {
                    let (c, s) = (conj.coefficient(&b), table.coefficient(a, &b));
                    if c != s {
                        mismatches.push(Certificate { a: a.clone(), b, conjectured: c, solver: s });
                    }
                }
                if store.algebra().bar(&conj)? != conj {
                    not_invariant.push(a.clone());
                }
            }
        }
        out.push(VariantReport { variant, match_all: mismatches.is_empty(), mismatches, not_invariant });
    }
    Ok(ConjReport { cells: cells.iter().map(cell_id).collect(), variants: out })
}

impl ConjReport {
    pub fn any_match_all(&self) -> bool {
        self.variants.iter().any(|v| v.match_all)
    }

    pub fn to_json(&self) -> Value {
        let variants: Vec<Value> = self
            .variants
            .iter()
            .map(|v| {
                let mismatches: Vec<Value> = v
                    .mismatches
                    .iter()
                    .map(|c| {
                        json!({
                            "A": c.a.to_string(),
                            "B": c.b.to_string(),
                            "conjectured": c.conjectured.to_json(),
                            "solver": c.solver.to_json(),
                        })
                    })
                    .collect();
                json!({
                    "variant": v.variant.name.as_str(),
                    "path_order": v.variant.path_order.as_str(),
                    "match_all": v.match_all,
                    "mismatches": mismatches,
                    "not_bar_invariant": v.not_invariant.iter().map(MatIdx::to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "cells": self.cells, "variants": variants })
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coeff::Specialization;
    use crate::oqpq::Algebra;

    fn m(s: &str) -> MatIdx {
        s.parse().unwrap()
    }

    fn v(name: VariantName) -> ConjectureVariant {
        ConjectureVariant::new(name)
    }

    #[test]
    fn coefficient_examples() {
        let skip = v(VariantName::SkipZeroFactor);
        let e = m("0,1;1,0");
        assert_eq!(conj_coefficient(&MatIdx::identity(2), &e, skip).unwrap(), -GammaLaurent::q_pow(-1));
        let a = m("2,0;0,1");
        assert_eq!(conj_coefficient(&a, &a, v(VariantName::Literal)).unwrap(), GammaLaurent::q_pow(-1));
        assert!(conj_coefficient(&a, &a, skip).unwrap().is_one());
        assert!(matches!(conj_coefficient(&e, &MatIdx::identity(2), skip), Err(Error::NotComparable(..))));
    }

    #[test]
    fn element_examples() {
        let skip = v(VariantName::SkipZeroFactor);
        let mut want = Element::norm(MatIdx::identity(2));
        want.add_term(m("0,1;1,0"), &-GammaLaurent::q_pow(-1));
        assert_eq!(conj_element(&MatIdx::identity(2), skip).unwrap(), want);
        assert_eq!(conj_element(&m("0,1;1,0"), skip).unwrap(), Element::norm(m("0,1;1,0")));
        let mut want = Element::norm(m("2,0;0,1"));
        want.add_term(m("1,1;1,0"), &-GammaLaurent::q_pow(-2));
        assert_eq!(conj_element(&m("2,0;0,1"), skip).unwrap(), want);
    }

    #[test]
    fn literal_fixture() {
        let store = CanonStore::new(Arc::new(Algebra::new(2, Specialization::GENERIC)));
        let cell = enumerate_cell(&[2, 1], &[2, 1]).unwrap();
        let r = conj_check(&[cell], &[v(VariantName::Literal)], &store).unwrap();
        let a = m("2,0;0,1");
        assert!(r.variants[0].mismatches.iter().any(|c| c.a == a && c.b == a && c.conjectured == GammaLaurent::q_pow(-1)));
        assert!(!r.variants[0].match_all);
    }

    #[test]
    fn cell_families() {
        assert_eq!(m2_cells(1).len(), 15);
        let fam = family_2x3_cells(1);
        assert_eq!(fam.len(), 8);
        assert!(fam.iter().all(|c| c.rows[2] == 0));
    }

    #[test]
    fn names_roundtrip() {
        for n in VariantName::ALL {
            assert_eq!(n.as_str().parse::<VariantName>().unwrap(), n);
        }
        assert_eq!(ConjectureVariant::all().len(), 9);
    }
}
