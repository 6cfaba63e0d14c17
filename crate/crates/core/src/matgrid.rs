//! Nonnegative integer matrices, cells of fixed margins, the move order
//! and the move graph H(A).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `n×n` matrix over Z₊ stored row-major. Indices in the API are 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatIdx {
    n: usize,
    entries: Vec<u32>,
}

impl MatIdx {
    pub fn zero(n: usize) -> Self {
        MatIdx { n, entries: vec![0; n * n] }
    }

    pub fn from_rows(rows: &[&[u32]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        MatIdx { n, entries: rows.iter().flat_map(|r| r.iter().copied()).collect() }
    }

    pub fn from_entries(n: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::SizeMismatch(format!("{} entries for n={n}", entries.len())));
        }
        Ok(MatIdx { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 1..=n {
            m.set(i, i, 1);
        }
        m
    }

    /// The single generator `E_ij`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, 1);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.entries[(i - 1) * self.n + (j - 1)] = value;
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.chunks(self.n.max(1)).map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (1..=self.n).map(|j| (1..=self.n).map(|i| self.get(i, j)).sum()).collect()
    }

    pub fn mass(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// `Σ a_ij a_st` over `i<s, j<t`; strictly decreases under downward moves.
    pub fn rho(&self) -> u64 {
        let mut total = 0u64;
        for i in 1..=self.n {
            for j in 1..=self.n {
                let a = self.get(i, j) as u64;
                if a == 0 {
                    continue;
                }
                for s in i + 1..=self.n {
                    for t in j + 1..=self.n {
                        total += a * self.get(s, t) as u64;
                    }
                }
            }
        }
        total
    }

    pub fn checked_add(&self, other: &MatIdx) -> Result<MatIdx> {
        self.same_size(other)?;
        Ok(MatIdx { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    /// Entrywise difference, or `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &MatIdx) -> Option<MatIdx> {
        if self.n != other.n {
            return None;
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>()?;
        Some(MatIdx { n: self.n, entries })
    }

    fn same_size(&self, other: &MatIdx) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!("{self} vs {other}")));
        }
        Ok(())
    }

    /// Generators in lexicographic order with repetition: the word of `Z^A`.
    pub fn word(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.mass() as usize);
        for i in 1..=self.n {
            for j in 1..=self.n {
                for _ in 0..self.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The lexicographically largest generator present.
    pub fn max_generator(&self) -> Option<(usize, usize)> {
        let k = self.entries.iter().rposition(|&x| x > 0)?;
        Some((k / self.n + 1, k % self.n + 1))
    }

    pub fn has_margins(&self, rows: &[u32], cols: &[u32]) -> bool {
        self.row_sums() == rows && self.col_sums() == cols
    }

    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n.max(1))
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join("&"))
            .collect();
        format!("\\begin{{pmatrix}}{}\\end{{pmatrix}}", rows.join("\\\\"))
    }

    /// All downward moves that apply, with their results, in label order.
    pub fn down_moves(&self) -> Vec<(MoveLabel, MatIdx)> {
        let mut out = Vec::new();
        for label in MoveLabel::all(self.n) {
            if let Ok(b) = apply_move(self, &label, Direction::Down) {
                out.push((label, b));
            }
        }
        out
    }
}

impl fmt::Display for MatIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .chunks(self.n.max(1))
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl fmt::Debug for MatIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for MatIdx {
    type Err = Error;

    /// Parses `"2,0;0,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("matrix literal {s:?}"));
        let rows: Vec<Vec<u32>> = s
            .trim()
            .split(';')
            .map(|r| r.split(',').map(|x| x.trim().parse::<u32>().map_err(|_| bad())).collect())
            .collect::<Result<_>>()?;
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(bad());
        }
        Ok(MatIdx { n, entries: rows.into_iter().flatten().collect() })
    }
}

impl Serialize for MatIdx {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MatIdx {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A 2×2 sub-matrix move at rows `i<s` and columns `j<t`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct MoveLabel {
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub t: usize,
}

impl MoveLabel {
    pub fn new(i: usize, j: usize, s: usize, t: usize) -> Result<Self> {
        if i >= 1 && j >= 1 && i < s && j < t {
            Ok(MoveLabel { i, j, s, t })
        } else {
            Err(Error::IllegalMove(format!("({i},{j})/({s},{t})")))
        }
    }

    /// Every label for size `n`, in double-lexicographic order.
    pub fn all(n: usize) -> Vec<MoveLabel> {
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for s in i + 1..=n {
                    for t in j + 1..=n {
                        out.push(MoveLabel { i, j, s, t });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for MoveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})/({},{})", self.i, self.j, self.s, self.t)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Down,
    Up,
}

pub fn apply_move(a: &MatIdx, m: &MoveLabel, direction: Direction) -> Result<MatIdx> {
    if m.s > a.n || m.t > a.n {
        return Err(Error::IllegalMove(format!("{m} out of range for n={}", a.n)));
    }
    let (dec, inc) = match direction {
        Direction::Down => ([(m.i, m.j), (m.s, m.t)], [(m.i, m.t), (m.s, m.j)]),
        Direction::Up => ([(m.i, m.t), (m.s, m.j)], [(m.i, m.j), (m.s, m.t)]),
    };
    if dec.iter().any(|&(x, y)| a.get(x, y) == 0) {
        return Err(Error::IllegalMove(format!("{m} on {a}")));
    }
    let mut b = a.clone();
    for (x, y) in dec {
        b.set(x, y, b.get(x, y) - 1);
    }
    for (x, y) in inc {
        b.set(x, y, b.get(x, y) + 1);
    }
    Ok(b)
}

/// All matrices with the given margins and the single moves among them.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    pub members: Vec<MatIdx>,
    pub edges: Vec<(MatIdx, MoveLabel, MatIdx)>,
}

impl Cell {
    pub fn contains(&self, a: &MatIdx) -> bool {
        self.members.binary_search(a).is_ok()
    }

    /// Members sorted by decreasing `rho`, ties broken by matrix order.
    pub fn by_rho_desc(&self) -> Vec<MatIdx> {
        let mut out = self.members.clone();
        out.sort_by(|a, b| b.rho().cmp(&a.rho()).then_with(|| b.cmp(a)));
        out
    }
}

pub fn enumerate_cell(rows: &[u32], cols: &[u32]) -> Result<Cell> {
    let (r, c): (u64, u64) = (rows.iter().map(|&x| x as u64).sum(), cols.iter().map(|&x| x as u64).sum());
    if r != c {
        return Err(Error::MarginMismatch { rows: r, cols: c });
    }
    if rows.len() != cols.len() {
        return Err(Error::SizeMismatch(format!("{} row sums vs {} column sums", rows.len(), cols.len())));
    }
    let n = rows.len();
    let mut members = Vec::new();
    let mut current = MatIdx::zero(n);
    fill_row(1, rows, &mut cols.to_vec(), &mut current, &mut members);
    members.sort();
    let mut edges = Vec::new();
    for a in &members {
        for (label, b) in a.down_moves() {
            edges.push((a.clone(), label, b));
        }
    }
    Ok(Cell { rows: rows.to_vec(), cols: cols.to_vec(), members, edges })
}

fn fill_row(i: usize, rows: &[u32], remaining: &mut Vec<u32>, current: &mut MatIdx, out: &mut Vec<MatIdx>) {
    let n = rows.len();
    if i > n {
        if remaining.iter().all(|&x| x == 0) {
            out.push(current.clone());
        }
        return;
    }
    fill_entry(i, 1, rows[i - 1], rows, remaining, current, out);
}

#[allow(clippy::too_many_arguments)]
fn fill_entry(
    i: usize,
    j: usize,
    left: u32,
    rows: &[u32],
    remaining: &mut Vec<u32>,
    current: &mut MatIdx,
    out: &mut Vec<MatIdx>,
) {
    let n = rows.len();
    if j == n {
        if left <= remaining[j - 1] {
            remaining[j - 1] -= left;
            current.set(i, j, left);
            fill_row(i + 1, rows, remaining, current, out);
            current.set(i, j, 0);
            remaining[j - 1] += left;
        }
        return;
    }
    let capacity_after: u32 = remaining[j..].iter().sum();
    let lo = left.saturating_sub(capacity_after);
    let hi = left.min(remaining[j - 1]);
    for x in lo..=hi {
        remaining[j - 1] -= x;
        current.set(i, j, x);
        fill_entry(i, j + 1, left - x, rows, remaining, current, out);
        current.set(i, j, 0);
        remaining[j - 1] += x;
    }
}

/// Compositions of `total` into `parts` nonnegative parts, in lex order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|k| {
            compositions(total - k, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, k);
                rest
            })
        })
        .collect()
}

/// Every nonempty cell of `n×n` matrices with mass in `1..=max_mass`.
pub fn cells_up_to(n: usize, max_mass: u32) -> Vec<Cell> {
    let mut out = Vec::new();
    for mass in 1..=max_mass {
        for rows in compositions(mass, n) {
            for cols in compositions(mass, n) {
                out.push(enumerate_cell(&rows, &cols).expect("equal margins"));
            }
        }
    }
    out
}

/// The set `{B : B ≤ A}`.
pub fn down_set(a: &MatIdx) -> BTreeSet<MatIdx> {
    let mut seen = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(x) = queue.pop_front() {
        for (_, y) in x.down_moves() {
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `B ≤ A`: `B` is reachable from `A` by downward moves.
pub fn less_equal(b: &MatIdx, a: &MatIdx) -> bool {
    if a.n != b.n || a.row_sums() != b.row_sums() || a.col_sums() != b.col_sums() {
        return false;
    }
    if a == b {
        return true;
    }
    let target = b.rho();
    let mut seen = BTreeSet::from([a.clone()]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(x) = queue.pop_front() {
        for (_, y) in x.down_moves() {
            if &y == b {
                return true;
            }
            if y.rho() > target && seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    false
}

/// The move graph below `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hasse {
    pub top: MatIdx,
    pub nodes: Vec<MatIdx>,
    pub edges: Vec<(MatIdx, MoveLabel, MatIdx)>,
    /// Longest-path depth from the top.
    pub levels: BTreeMap<MatIdx, usize>,
    pub tail: MatIdx,
}

impl Hasse {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph H {\n  rankdir=TB;\n");
        for node in &self.nodes {
            out.push_str(&format!("  \"{node}\" [label=\"{node}\", level={}];\n", self.levels[node]));
        }
        for (from, label, to) in &self.edges {
            out.push_str(&format!("  \"{from}\" -> \"{to}\" [label=\"{label}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn hasse_graph(a: &MatIdx) -> Hasse {
    let set = down_set(a);
    let nodes: Vec<MatIdx> = set.iter().cloned().collect();
    let mut edges = Vec::new();
    for x in &nodes {
        for (label, y) in x.down_moves() {
            edges.push((x.clone(), label, y));
        }
    }
    let mut order = nodes.clone();
    order.sort_by(|x, y| y.rho().cmp(&x.rho()).then_with(|| x.cmp(y)));
    let mut levels: BTreeMap<MatIdx, usize> = BTreeMap::from([(a.clone(), 0)]);
    for x in &order {
        let Some(&lx) = levels.get(x) else { continue };
        for (_, y) in x.down_moves() {
            let e = levels.entry(y).or_insert(0);
            *e = (*e).max(lx + 1);
        }
    }
    let minimal: Vec<&MatIdx> = nodes.iter().filter(|x| x.down_moves().is_empty()).collect();
    debug_assert_eq!(minimal.len(), 1, "H({a}) has {} minimal nodes", minimal.len());
    let tail = minimal[0].clone();
    Hasse { top: a.clone(), nodes, edges, levels, tail }
}

/// How ties among longest paths are broken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathOrder {
    /// Lexicographically largest label sequence, labels compared as `(i,j,s,t)`.
    #[default]
    LexMaxLabels,
    LexMinLabels,
    /// Lexicographically largest sequence of visited matrices.
    LexMaxNodes,
}

impl PathOrder {
    pub const ALL: [PathOrder; 3] = [PathOrder::LexMaxLabels, PathOrder::LexMinLabels, PathOrder::LexMaxNodes];

    pub fn as_str(&self) -> &'static str {
        match self {
            PathOrder::LexMaxLabels => "lex-max-labels",
            PathOrder::LexMinLabels => "lex-min-labels",
            PathOrder::LexMaxNodes => "lex-max-nodes",
        }
    }
}

impl FromStr for PathOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PathOrder::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown path order {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRecord {
    pub from: MatIdx,
    pub to: MatIdx,
    pub labels: Vec<MoveLabel>,
}

impl PathRecord {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn multiplicities(&self) -> BTreeMap<MoveLabel, u32> {
        let mut out = BTreeMap::new();
        for l in &self.labels {
            *out.entry(*l).or_insert(0) += 1;
        }
        out
    }
}

/// A longest `A → B` path, extremal among longest paths under `order`.
pub fn principal_path(a: &MatIdx, b: &MatIdx, order: PathOrder) -> Result<PathRecord> {
    if !less_equal(b, a) {
        return Err(Error::NotComparable(b.to_string(), a.to_string()));
    }
    // nodes between B and A, with the longest distance down to B
    let between: Vec<MatIdx> = down_set(a).into_iter().filter(|x| less_equal(b, x)).collect();
    let mut by_rho = between.clone();
    by_rho.sort_by_key(MatIdx::rho);
    let mut dist: BTreeMap<MatIdx, usize> = BTreeMap::from([(b.clone(), 0)]);
    for x in &by_rho {
        if x == b {
            continue;
        }
        let best = x.down_moves().into_iter().filter_map(|(_, y)| dist.get(&y).map(|d| d + 1)).max();
        if let Some(d) = best {
            dist.insert(x.clone(), d);
        }
    }
    let mut labels = Vec::new();
    let mut cur = a.clone();
    while &cur != b {
        let want = dist[&cur] - 1;
        let options: Vec<(MoveLabel, MatIdx)> =
            cur.down_moves().into_iter().filter(|(_, y)| dist.get(y) == Some(&want)).collect();
        let chosen = match order {
            PathOrder::LexMaxLabels => options.into_iter().max_by(|x, y| x.0.cmp(&y.0)),
            PathOrder::LexMinLabels => options.into_iter().min_by(|x, y| x.0.cmp(&y.0)),
            PathOrder::LexMaxNodes => options.into_iter().max_by(|x, y| x.1.cmp(&y.1)),
        }
        .expect("a longest path continues");
        labels.push(chosen.0);
        cur = chosen.1;
    }
    Ok(PathRecord { from: a.clone(), to: b.clone(), labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> MatIdx {
        s.parse().unwrap()
    }

    #[test]
    fn literal_roundtrip() {
        let a = m("2,0;0,1");
        assert_eq!(a.to_string(), "2,0;0,1");
        assert_eq!(a.get(1, 1), 2);
        assert_eq!(a.row_sums(), vec![2, 1]);
        assert!("1,2;3".parse::<MatIdx>().is_err());
        assert!("x".parse::<MatIdx>().is_err());
    }

    #[test]
    fn cell_examples() {
        let c = enumerate_cell(&[1, 1], &[1, 1]).unwrap();
        assert_eq!(c.members, vec![m("0,1;1,0"), m("1,0;0,1")]);
        assert_eq!(c.edges, vec![(m("1,0;0,1"), MoveLabel::new(1, 1, 2, 2).unwrap(), m("0,1;1,0"))]);
        let c = enumerate_cell(&[2, 1], &[2, 1]).unwrap();
        assert_eq!(c.members, vec![m("1,1;1,0"), m("2,0;0,1")]);
        let c = enumerate_cell(&[1, 1, 1], &[1, 1, 1]).unwrap();
        assert_eq!(c.members.len(), 6);
        assert!(matches!(enumerate_cell(&[1, 1], &[1, 2]), Err(Error::MarginMismatch { .. })));
    }

    #[test]
    fn move_examples() {
        let l = MoveLabel::new(1, 1, 2, 2).unwrap();
        assert_eq!(apply_move(&MatIdx::identity(2), &l, Direction::Down).unwrap(), m("0,1;1,0"));
        assert_eq!(apply_move(&m("2,0;0,1"), &l, Direction::Down).unwrap(), m("1,1;1,0"));
        assert!(apply_move(&m("0,1;1,0"), &l, Direction::Down).is_err());
        assert_eq!(apply_move(&m("0,1;1,0"), &l, Direction::Up).unwrap(), MatIdx::identity(2));
        assert!(MoveLabel::new(2, 1, 1, 2).is_err());
    }

    #[test]
    fn order_examples() {
        let (i, e) = (MatIdx::identity(2), m("0,1;1,0"));
        assert!(less_equal(&e, &i));
        assert!(!less_equal(&i, &e));
        assert!(less_equal(&i, &i));
        assert!(!less_equal(&m("1,0;0,1"), &m("2,0;0,1")));
    }

    #[test]
    fn hasse_examples() {
        let h = hasse_graph(&m("2,0;0,1"));
        assert_eq!(h.nodes.len(), 2);
        assert_eq!(h.edges.len(), 1);
        assert_eq!(h.tail, m("1,1;1,0"));
        let h = hasse_graph(&m("0,1;1,0"));
        assert_eq!((h.nodes.len(), h.edges.len()), (1, 0));
        let h = hasse_graph(&MatIdx::identity(2));
        assert_eq!(h.tail, m("0,1;1,0"));
        assert!(h.to_dot().contains("\"1,0;0,1\" -> \"0,1;1,0\" [label=\"(1,1)/(2,2)\"]"));
    }

    #[test]
    fn principal_path_examples() {
        let l = MoveLabel::new(1, 1, 2, 2).unwrap();
        let p = principal_path(&m("2,0;0,1"), &m("1,1;1,0"), PathOrder::default()).unwrap();
        assert_eq!(p.labels, vec![l]);
        assert_eq!(p.multiplicities(), BTreeMap::from([(l, 1)]));
        let a = m("2,1;0,3");
        assert!(principal_path(&a, &a, PathOrder::default()).unwrap().is_empty());
        let p = principal_path(&MatIdx::identity(2), &m("0,1;1,0"), PathOrder::default()).unwrap();
        assert_eq!(p.len(), 1);
        assert!(principal_path(&m("0,1;1,0"), &MatIdx::identity(2), PathOrder::default()).is_err());
    }

    #[test]
    fn principal_path_orders_differ_on_3x3() {
        let id = MatIdx::identity(3);
        let anti = m("0,0,1;0,1,0;1,0,0");
        let max = principal_path(&id, &anti, PathOrder::LexMaxLabels).unwrap();
        let min = principal_path(&id, &anti, PathOrder::LexMinLabels).unwrap();
        assert_eq!(max.len(), 3);
        assert_eq!(min.len(), 3);
        assert!(max.labels > min.labels);
    }

    #[test]
    fn rho_decreases_on_moves() {
        for rows in [[2u32, 1, 1], [1, 2, 1], [2, 2, 0]] {
            let cell = enumerate_cell(&rows, &[1, 2, 1]).unwrap();
            for (a, _, b) in &cell.edges {
                assert!(b.rho() < a.rho());
            }
        }
    }
}
