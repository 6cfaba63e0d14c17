//! Dual canonical bases cell by cell: the bar matrix, the triangular
//! solver, expansion in the basis, structure constants and decompositions.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use log::warn;
use serde_json::{json, Value};

use crate::coeff::{GammaLaurent, GammaMonomial, SpecName, Specialization};
use crate::error::{Error, Result};
use crate::matgrid::{enumerate_cell, less_equal, Cell, MatIdx};
use crate::oqpq::{Algebra, Basis, Element};

type Row = BTreeMap<MatIdx, GammaLaurent>;

/// `bar(Z(A)) = Σ_B entries[A][B] Z(B)` over one cell.
#[derive(Clone, Debug, PartialEq)]
pub struct BarMatrix {
    pub cell: Cell,
    pub entries: BTreeMap<MatIdx, Row>,
}

pub fn bar_matrix(alg: &Algebra, cell: &Cell) -> Result<BarMatrix> {
    let mut entries = BTreeMap::new();
    for a in &cell.members {
        let row = alg.bar(&Element::norm(a.clone()))?.into_terms();
        if !row.get(a).map(GammaLaurent::is_one).unwrap_or(false) {
            return Err(Error::TriangularityViolation(format!("diagonal entry at {a}")));
        }
        if let Some(b) = row.keys().find(|b| *b != a && !less_equal(b, a)) {
            return Err(Error::TriangularityViolation(format!("entry at ({a}, {b})")));
        }
        entries.insert(a.clone(), row);
    }
    Ok(BarMatrix { cell: cell.clone(), entries })
}

/// `b(A) = Σ_B h[A][B] Z(B)` for every `A` of one cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalTable {
    pub cell: Cell,
    pub spec: SpecName,
    pub h: BTreeMap<MatIdx, Row>,
}

impl CanonicalTable {
    pub fn n(&self) -> usize {
        self.cell.rows.len()
    }

    pub fn b(&self, a: &MatIdx) -> Option<Element> {
        let row = self.h.get(a)?;
        Some(Element::from_terms(self.n(), Basis::Norm, row.iter().map(|(b, c)| (b.clone(), c.clone()))))
    }

    pub fn coefficient(&self, a: &MatIdx, b: &MatIdx) -> GammaLaurent {
        self.h.get(a).and_then(|r| r.get(b)).cloned().unwrap_or_default()
    }

    pub fn specialize(&self, spec: Specialization) -> CanonicalTable {
        let h = self
            .h
            .iter()
            .map(|(a, row)| {
                let row = row
                    .iter()
                    .map(|(b, c)| (b.clone(), c.specialize(&spec)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                (a.clone(), row)
            })
            .collect();
        CanonicalTable { cell: self.cell.clone(), spec: spec.name, h }
    }

    pub fn to_json(&self) -> Value {
        let mut h = Vec::new();
        for (a, row) in &self.h {
            for (b, c) in row.iter().rev() {
                h.push(json!({ "A": a.to_string(), "B": b.to_string(), "coeff": c.to_json() }));
            }
        }
        json!({
            "margins": { "rows": self.cell.rows, "cols": self.cell.cols },
            "spec": self.spec.as_str(),
            "h": h,
        })
    }

    pub fn from_json(value: &Value) -> Result<CanonicalTable> {
        let bad = |what: &str| Error::CacheCorrupt(what.to_string());
        let margins = value.get("margins").ok_or_else(|| bad("margins"))?;
        let read = |key: &str| -> Result<Vec<u32>> {
            margins
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(key))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad(key)))
                .collect()
        };
        let (rows, cols) = (read("rows")?, read("cols")?);
        let spec: SpecName = value.get("spec").and_then(Value::as_str).ok_or_else(|| bad("spec"))?.parse()?;
        let cell = enumerate_cell(&rows, &cols)?;
        let mut h: BTreeMap<MatIdx, Row> = BTreeMap::new();
        for t in value.get("h").and_then(Value::as_array).ok_or_else(|| bad("h"))? {
            let a: MatIdx = t.get("A").and_then(Value::as_str).ok_or_else(|| bad("A"))?.parse()?;
            let b: MatIdx = t.get("B").and_then(Value::as_str).ok_or_else(|| bad("B"))?.parse()?;
            let c = GammaLaurent::from_json(t.get("coeff").ok_or_else(|| bad("coeff"))?)?;
            h.entry(a).or_default().insert(b, c);
        }
        if h.len() != cell.members.len() || cell.members.iter().any(|a| !h[a].get(a).map(GammaLaurent::is_one).unwrap_or(false)) {
            return Err(bad("table does not cover its cell"));
        }
        Ok(CanonicalTable { cell, spec, h })
    }
}

/// Solves for every `b(A)` in the cell, processing coefficients by decreasing `rho`.
pub fn canonical_basis(alg: &Algebra, cell: &Cell) -> Result<CanonicalTable> {
    let bar = bar_matrix(alg, cell)?;
    let order = cell.by_rho_desc();
    let mut h = BTreeMap::new();
    for a in &cell.members {
        let ra = a.rho();
        let mut row = Row::from([(a.clone(), GammaLaurent::one())]);
        for c in order.iter().filter(|c| c.rho() < ra) {
            let mut g = GammaLaurent::zero();
            for (b, hab) in &row {
                if let Some(x) = bar.entries[b].get(c) {
                    g += &(&hab.bar() * x);
                }
            }
            let hac = g.solve_bar_equation()?;
            if !hac.is_zero() {
                row.insert(c.clone(), hac);
            }
        }
        h.insert(a.clone(), row);
    }
    Ok(CanonicalTable { cell: cell.clone(), spec: alg.spec().name, h })
}

/// `m` with `x = m·y`, if such a monomial exists.
pub fn equiv_up_to_monomial(x: &Element, y: &Element) -> Option<GammaMonomial> {
    if x.basis() != y.basis() || x.len() != y.len() {
        return None;
    }
    let (a, cy) = y.terms().iter().next()?;
    let m = x.coefficient(a).divide_exact(cy).ok()?.as_monomial()?;
    (y.scale(&GammaLaurent::monomial(m.clone())) == *x).then_some(m)
}

/// Coordinates in the basis `{b(A)}`.
pub type CanonicalElement = BTreeMap<MatIdx, GammaLaurent>;

#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    pub coefficients: CanonicalElement,
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub left: MatIdx,
    pub right: MatIdx,
    /// `b(left)b(right) = monomial·b(A)`.
    pub monomial: GammaMonomial,
    /// `m′` with `b(right)b(left) = m′·b(A)`, when it exists.
    pub reversed: Option<GammaMonomial>,
    /// `m·m′⁻¹` is a pure power of `q`.
    pub q_commutes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionReport {
    pub target: MatIdx,
    pub factorizations: Vec<Factorization>,
}

impl DecompositionReport {
    pub fn indecomposable(&self) -> bool {
        self.factorizations.is_empty()
    }
}

/// On-disk cache of solved tables, one JSON document per cell.
#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, rows: &[u32], cols: &[u32], spec: SpecName) -> PathBuf {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join("-");
        self.dir.join(format!("n{}_r{}_c{}_{}.json", rows.len(), join(rows), join(cols), spec.as_str()))
    }

    pub fn load(&self, rows: &[u32], cols: &[u32], spec: SpecName) -> Result<Option<CanonicalTable>> {
        let path = self.path(rows, cols, spec);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path)?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Error::CacheCorrupt(format!("{}: {e}", path.display())))?;
        let table = CanonicalTable::from_json(&value).map_err(|e| Error::CacheCorrupt(format!("{}: {e}", path.display())))?;
        if table.cell.rows != rows || table.cell.cols != cols || table.spec != spec {
            return Err(Error::CacheCorrupt(format!("{}: key mismatch", path.display())));
        }
        Ok(Some(table))
    }

    /// Writes through a temporary file and renames it into place.
    pub fn store(&self, table: &CanonicalTable) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(&table.cell.rows, &table.cell.cols, table.spec);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        let text = serde_json::to_string_pretty(&table.to_json()).map_err(|e| Error::Io(e.to_string()))?;
        tmp.write_all(text.as_bytes())?;
        tmp.write_all(b"\n")?;
        tmp.persist(&path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }
}

type CellKey = (Vec<u32>, Vec<u32>);

/// Solved tables for one algebra, computed on demand and memoized.
#[derive(Debug)]
pub struct CanonStore {
    alg: Arc<Algebra>,
    tables: RwLock<HashMap<CellKey, Arc<CanonicalTable>>>,
    disk: Option<DiskCache>,
    reuse_generic: bool,
}

impl CanonStore {
    pub fn new(alg: Arc<Algebra>) -> Self {
        CanonStore { alg, tables: RwLock::new(HashMap::new()), disk: None, reuse_generic: false }
    }

    pub fn with_disk(mut self, disk: DiskCache) -> Self {
        self.disk = Some(disk);
        self
    }

    /// Derive tables by specializing the generic solution instead of solving directly.
    pub fn with_generic_reuse(mut self, on: bool) -> Self {
        self.reuse_generic = on;
        self
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    fn solve(&self, rows: &[u32], cols: &[u32]) -> Result<CanonicalTable> {
        let cell = enumerate_cell(rows, cols)?;
        let spec = self.alg.spec();
        if self.reuse_generic && spec.name != SpecName::Generic {
            let generic = Algebra::new(self.n(), Specialization::GENERIC);
            return Ok(canonical_basis(&generic, &cell)?.specialize(spec));
        }
        canonical_basis(&self.alg, &cell)
    }

    pub fn table(&self, rows: &[u32], cols: &[u32]) -> Result<Arc<CanonicalTable>> {
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(t) = self.tables.read().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let spec = self.alg.spec().name;
        let mut loaded = None;
        if let Some(disk) = &self.disk {
            match disk.load(rows, cols, spec) {
                Ok(t) => loaded = t,
                Err(e) => warn!("{e}; recomputing"),
            }
        }
        let table = match loaded {
            Some(t) => t,
            None => {
                let t = self.solve(rows, cols)?;
                if let Some(disk) = &self.disk {
                    disk.store(&t)?;
                }
                t
            }
        };
        let table = Arc::new(table);
        self.tables.write().unwrap().entry(key).or_insert(table.clone());
        Ok(table)
    }

    pub fn table_for(&self, a: &MatIdx) -> Result<Arc<CanonicalTable>> {
        if a.n() != self.n() {
            return Err(Error::SizeMismatch(format!("{a} for n={}", self.n())));
        }
        self.table(&a.row_sums(), &a.col_sums())
    }

    pub fn b(&self, a: &MatIdx) -> Result<Element> {
        Ok(self.table_for(a)?.b(a).expect("a matrix lies in its own cell"))
    }

    /// Coordinates of `x` in the basis `{b(A)}`.
    pub fn expand(&self, x: &Element) -> Result<CanonicalElement> {
        let mut rest = self.alg.to_norm(x);
        let mut out = CanonicalElement::new();
        while let Some((a, c)) = rest.leading().map(|(a, c)| (a.clone(), c.clone())) {
            let b = self.b(&a)?;
            rest.add_scaled(&b, &-&c);
            out.insert(a, c);
        }
        Ok(out)
    }

    /// `Σ coords[A]·b(A)` as an element in the normalized basis.
    pub fn assemble(&self, coords: &CanonicalElement) -> Result<Element> {
        let mut out = Element::zero(self.n(), Basis::Norm);
        for (a, c) in coords {
            out.add_scaled(&self.b(a)?, c);
        }
        Ok(out)
    }

    pub fn structure_constants(&self, a: &MatIdx, b: &MatIdx) -> Result<StructureConstants> {
        let prod = self.alg.multiply(&self.b(a)?, &self.b(b)?)?;
        let coefficients = self.expand(&prod)?;
        let positive = coefficients.values().all(GammaLaurent::is_nonneg);
        Ok(StructureConstants { coefficients, positive })
    }

    /// `b(A+B)` from `(q^{1-d}b(A)b(B) - q^{d-1}b(B)b(A))/(q - q⁻¹)`, with `q^d`
    /// replaced by the leading monomial `g_AB`.
    pub fn inductive_product(&self, a: &MatIdx, b: &MatIdx) -> Result<Element> {
        let g = GammaLaurent::monomial(self.alg.leading_product_monomial(a, b)?);
        let (ba, bb) = (self.b(a)?, self.b(b)?);
        let q = GammaLaurent::q_pow(1);
        let qi = GammaLaurent::q_pow(-1);
        let left = self.alg.multiply(&ba, &bb)?.scale(&(&q * &g.bar()));
        let right = self.alg.multiply(&bb, &ba)?.scale(&(&qi * &g));
        let mut num = left;
        num.add_scaled(&right, &-GammaLaurent::one());
        let denom = &q - &qi;
        let quotient = Element::from_terms(
            self.n(),
            Basis::Norm,
            num.terms().iter().map(|(m, c)| c.divide_exact(&denom).map(|x| (m.clone(), x))).collect::<Result<Vec<_>>>()?,
        );
        let sum = a.checked_add(b)?;
        let coords = self.expand(&quotient)?;
        if !coords.get(&sum).map(GammaLaurent::is_one).unwrap_or(false) {
            return Err(Error::TriangularityViolation(format!("coefficient of b({sum}) in the inductive product")));
        }
        let mut out = quotient;
        for (d, c) in &coords {
            if d == &sum {
                continue;
            }
            if !c.is_bar_symmetric() {
                return Err(Error::NonSymmetricCoefficient(format!("c_{d} = {c}")));
            }
            out.add_scaled(&self.b(d)?, &-c);
        }
        Ok(out)
    }

    /// All splittings `A = B + C` with `b(B)b(C)` a monomial multiple of `b(A)`.
    pub fn decompose_search(&self, a: &MatIdx) -> Result<DecompositionReport> {
        let target = self.b(a)?;
        let mut factorizations = Vec::new();
        for left in sub_matrices(a) {
            if left.is_zero() || &left == a {
                continue;
            }
            let right = a.checked_sub(&left).expect("sub-matrix");
            let prod = self.alg.multiply(&self.b(&left)?, &self.b(&right)?)?;
            let Some(monomial) = equiv_up_to_monomial(&prod, &target) else { continue };
            let rev = self.alg.multiply(&self.b(&right)?, &self.b(&left)?)?;
            let reversed = equiv_up_to_monomial(&rev, &target);
            let q_commutes = reversed.as_ref().map(|r| monomial.div(r).is_pure_q()).unwrap_or(false);
            factorizations.push(Factorization { left, right, monomial, reversed, q_commutes });
        }
        Ok(DecompositionReport { target: a.clone(), factorizations })
    }
}

/// Every `B` with `0 ≤ B ≤ A` entrywise, in increasing order.
pub fn sub_matrices(a: &MatIdx) -> Vec<MatIdx> {
    let mut out = vec![MatIdx::zero(a.n())];
    for k in 0..a.entries().len() {
        let mut next = Vec::new();
        for b in &out {
            for x in 0..=a.entries()[k] {
                let mut e = b.entries().to_vec();
                e[k] = x;
                next.push(MatIdx::from_entries(a.n(), e).expect("same size"));
            }
        }
        out = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MatIdx {
        s.parse().unwrap()
    }

    fn store(spec: Specialization) -> CanonStore {
        CanonStore::new(Arc::new(Algebra::new(2, spec)))
    }

    fn el(terms: &[(&str, GammaLaurent)]) -> Element {
        Element::from_terms(2, Basis::Norm, terms.iter().map(|(a, c)| (m(a), c.clone())))
    }

    #[test]
    fn bar_matrix_examples() {
        let alg = Algebra::new(2, Specialization::GENERIC);
        let bm = bar_matrix(&alg, &enumerate_cell(&[1, 1], &[1, 1]).unwrap()).unwrap();
        let qq = GammaLaurent::from_q_terms(&[(1, 1), (-1, -1)]);
        assert_eq!(bm.entries[&MatIdx::identity(2)], Row::from([(MatIdx::identity(2), GammaLaurent::one()), (m("0,1;1,0"), qq)]));
        assert_eq!(bm.entries[&m("0,1;1,0")], Row::from([(m("0,1;1,0"), GammaLaurent::one())]));
        let bm = bar_matrix(&alg, &enumerate_cell(&[2, 1], &[2, 1]).unwrap()).unwrap();
        assert_eq!(bm.entries[&m("2,0;0,1")].len(), 2);
        let bm = bar_matrix(&alg, &enumerate_cell(&[1, 0], &[1, 0]).unwrap()).unwrap();
        assert_eq!(bm.entries.len(), 1);
    }

    #[test]
    fn worked_examples() {
        let s = store(Specialization::GENERIC);
        let q = GammaLaurent::q_pow;
        assert_eq!(s.b(&m("2,0;0,1")).unwrap(), el(&[("2,0;0,1", q(0)), ("1,1;1,0", -q(-2))]));
        assert_eq!(s.b(&m("1,0;1,1")).unwrap(), el(&[("1,0;1,1", q(0)), ("0,1;2,0", -q(-1))]));
        assert_eq!(s.b(&m("1,1;0,1")).unwrap(), el(&[("1,1;0,1", q(0)), ("0,2;1,0", -q(-1))]));
        assert_eq!(s.b(&m("0,1;1,0")).unwrap(), el(&[("0,1;1,0", q(0))]));
    }

    #[test]
    fn expand_examples() {
        let s = store(Specialization::GENERIC);
        let coords = s.expand(&Element::norm(MatIdx::identity(2))).unwrap();
        assert_eq!(coords, CanonicalElement::from([(MatIdx::identity(2), GammaLaurent::one()), (m("0,1;1,0"), GammaLaurent::q_pow(-1))]));
        let b = s.b(&m("2,0;0,1")).unwrap();
        assert_eq!(s.expand(&b).unwrap(), CanonicalElement::from([(m("2,0;0,1"), GammaLaurent::one())]));
        assert!(s.expand(&Element::zero(2, Basis::Norm)).unwrap().is_empty());
    }

    #[test]
    fn inductive_examples() {
        let s = store(Specialization::OFFICIAL);
        let b = s.inductive_product(&MatIdx::unit(2, 1, 1), &MatIdx::unit(2, 2, 2)).unwrap();
        assert_eq!(b, el(&[("1,0;0,1", GammaLaurent::one()), ("0,1;1,0", -GammaLaurent::q_pow(-1))]));
        let e = s.inductive_product(&MatIdx::unit(2, 1, 2), &MatIdx::unit(2, 2, 1)).unwrap();
        assert_eq!(e, s.b(&m("0,1;1,0")).unwrap());
        let a = m("2,0;0,1");
        assert_eq!(s.inductive_product(&MatIdx::zero(2), &a).unwrap(), s.b(&a).unwrap());
    }

    #[test]
    fn structure_constant_examples() {
        let s = store(Specialization::GENERIC);
        let sc = s.structure_constants(&MatIdx::unit(2, 1, 1), &MatIdx::unit(2, 2, 2)).unwrap();
        let c = GammaMonomial::p(2, 1, -1).mul(&GammaMonomial::qp(2, 1, -1));
        let want = CanonicalElement::from([
            (MatIdx::identity(2), GammaLaurent::monomial(c.clone())),
            (m("0,1;1,0"), GammaLaurent::monomial(c.mul(&GammaMonomial::q_pow(-1)))),
        ]);
        assert_eq!(sc.coefficients, want);
        assert!(sc.positive);
        let e12 = MatIdx::unit(2, 1, 2);
        let sc = s.structure_constants(&e12, &e12).unwrap();
        assert_eq!(sc.coefficients.len(), 1);
        assert!(sc.positive);
        let a = m("2,0;0,1");
        let sc = s.structure_constants(&a, &MatIdx::zero(2)).unwrap();
        assert_eq!(sc.coefficients, CanonicalElement::from([(a, GammaLaurent::one())]));
    }

    #[test]
    fn equivalence_examples() {
        let z = Element::norm(MatIdx::identity(2));
        assert_eq!(equiv_up_to_monomial(&z.scale(&GammaLaurent::q_pow(1)), &z), Some(GammaMonomial::q_pow(1)));
        let mut w = z.clone();
        w.add_term(m("0,1;1,0"), &GammaLaurent::one());
        assert_eq!(equiv_up_to_monomial(&w, &z), None);
    }

    #[test]
    fn decomposition_examples() {
        let s = store(Specialization::OFFICIAL);
        assert!(s.decompose_search(&MatIdx::identity(2)).unwrap().indecomposable());
        assert!(s.decompose_search(&MatIdx::unit(2, 1, 1)).unwrap().indecomposable());
        let r = s.decompose_search(&m("2,0;0,0")).unwrap();
        assert_eq!(r.factorizations.len(), 1);
        assert!(r.factorizations[0].q_commutes);
    }

    #[test]
    fn table_json_roundtrip() {
        let s = store(Specialization::GENERIC);
        let t = s.table(&[2, 1], &[2, 1]).unwrap();
        assert_eq!(CanonicalTable::from_json(&t.to_json()).unwrap(), *t);
    }
}
