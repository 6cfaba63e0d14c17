//! Quantum minors, the normalized 2×2 determinant `Δ` and its
//! compatibility with the dual canonical basis.

use crate::canon::CanonStore;
use crate::coeff::{GammaLaurent, GammaMonomial};
use crate::error::{Error, Result};
use crate::matgrid::MatIdx;
use crate::oqpq::{Algebra, Basis, Element};

/// Rows `I` and columns `J` of a minor, 1-based and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(n: usize, rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if rows.len() != cols.len() || rows.is_empty() {
            return Err(Error::SizeMismatch(format!("{} rows against {} columns", rows.len(), cols.len())));
        }
        if !increasing(&rows) || !increasing(&cols) {
            return Err(Error::Parse("minor indices must be strictly increasing".into()));
        }
        if rows.iter().chain(&cols).any(|&k| k == 0 || k > n) {
            return Err(Error::IndexOutOfRange(format!("minor indices outside 1..{n}")));
        }
        Ok(MinorSpec { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// `Σ_k E_{i_k j_k}`.
    pub fn matrix(&self, n: usize) -> MatIdx {
        let mut a = MatIdx::zero(n);
        for (&i, &j) in self.rows.iter().zip(&self.cols) {
            a.set(i, j, 1);
        }
        a
    }
}

fn spec_coeff(alg: &Algebra, m: &GammaMonomial) -> GammaLaurent {
    GammaLaurent::monomial(alg.spec().apply(m))
}

fn require_2x2(alg: &Algebra) -> Result<()> {
    if alg.n() == 2 {
        Ok(())
    } else {
        Err(Error::SizeMismatch(format!("needs n = 2, got {}", alg.n())))
    }
}

/// `det_q = Z11 Z22 - q21^{-2} Z12 Z21` in the plain basis.
pub fn det_q(alg: &Algebra) -> Result<Element> {
    require_2x2(alg)?;
    let mut x = Element::term(GammaLaurent::one(), MatIdx::identity(2), Basis::Plain);
    x.add_term(MatIdx::from_rows(&[&[0, 1], &[1, 0]]), &-spec_coeff(alg, &GammaMonomial::qp(2, 1, -2)));
    Ok(x)
}

/// `Δ = p21 q21 det_q`, in the normalized basis.
pub fn delta2(alg: &Algebra) -> Result<Element> {
    let scale = spec_coeff(alg, &GammaMonomial::p(2, 1, 1).mul(&GammaMonomial::qp(2, 1, 1)));
    Ok(alg.to_norm(&det_q(alg)?.scale(&scale)))
}

/// `f_A = q^{a21-a12} p21^{r2-r1} q21^{c2-c1}`, unspecialized.
pub fn f_factor(a: &MatIdx) -> Result<GammaMonomial> {
    if a.n() != 2 {
        return Err(Error::SizeMismatch(format!("{a} is not 2×2")));
    }
    let (r, c) = (a.row_sums(), a.col_sums());
    let d = |x: u32, y: u32| x as i64 - y as i64;
    Ok(GammaMonomial::q_pow(d(a.get(2, 1), a.get(1, 2)))
        .mul(&GammaMonomial::p(2, 1, d(r[1], r[0])))
        .mul(&GammaMonomial::qp(2, 1, d(c[1], c[0]))))
}

/// The dual canonical element `b(M(spec))`.
pub fn quantum_minor(spec: &MinorSpec, store: &CanonStore) -> Result<Element> {
    store.b(&spec.matrix(store.n()))
}

/// Verdicts for the identities relating `Δ` to one matrix `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub a: MatIdx,
    /// `Z(A)Δ = f_A (Z(A+I) - q^{-tr(A)-1} Z(A+E))`
    pub product_rule: bool,
    /// `Z^A Δ = f_A² Δ Z^A`
    pub commutation: bool,
    /// `b(A)·(f_A⁻¹Δ) = b(A+I)`
    pub basis_shift: bool,
    /// The four `det_q` covariance relations.
    pub covariance: bool,
}

impl DeltaReport {
    pub fn all(&self) -> bool {
        self.product_rule && self.commutation && self.basis_shift && self.covariance
    }
}

/// `det_q·x = c·x·det_q` (or with the sides swapped) for the four generators.
pub fn covariance_holds(alg: &Algebra) -> Result<bool> {
    let det = det_q(alg)?;
    let pq = GammaMonomial::p(2, 1, 2).mul(&GammaMonomial::qp(2, 1, 2));
    let twisted = GammaMonomial::q_pow(2).mul(&GammaMonomial::p(2, 1, 2)).mul(&GammaMonomial::qp(2, 1, -2));
    let z = |i, j| Element::term(GammaLaurent::one(), MatIdx::unit(2, i, j), Basis::Plain);
    let mut ok = true;
    for (g, c, det_left) in [((1, 1), &pq, true), ((2, 2), &pq, false), ((1, 2), &twisted, true), ((2, 1), &twisted, false)] {
        let x = z(g.0, g.1);
        let (lhs, rhs) = if det_left {
            (alg.multiply(&det, &x)?, alg.multiply(&x, &det)?)
        } else {
            (alg.multiply(&x, &det)?, alg.multiply(&det, &x)?)
        };
        ok &= alg.to_norm(&lhs) == alg.to_norm(&rhs).scale(&spec_coeff(alg, c));
    }
    Ok(ok)
}

pub fn delta_compatibility(a: &MatIdx, store: &CanonStore) -> Result<DeltaReport> {
    let alg = store.algebra();
    require_2x2(alg)?;
    let delta = delta2(alg)?;
    let f = spec_coeff(alg, &f_factor(a)?);
    let (a_i, a_e) = (a.checked_add(&MatIdx::identity(2))?, a.checked_add(&MatIdx::from_rows(&[&[0, 1], &[1, 0]]))?);
    let tr = (a.get(1, 1) + a.get(2, 2)) as i64;

    let lhs = alg.multiply(&Element::norm(a.clone()), &delta)?;
    let mut rhs = Element::norm(a_i.clone());
    rhs.add_term(a_e, &-GammaLaurent::q_pow(-tr - 1));
    let product_rule = lhs == rhs.scale(&f);

    let za = Element::term(GammaLaurent::one(), a.clone(), Basis::Plain);
    let plain_delta = alg.to_plain(&delta);
    let lhs = alg.multiply(&za, &plain_delta)?;
    let rhs = alg.multiply(&plain_delta, &za)?.scale(&(&f * &f));
    let commutation = alg.to_norm(&lhs) == alg.to_norm(&rhs);

    let f_inv = spec_coeff(alg, &f_factor(a)?.inv());
    let lhs = alg.multiply(&store.b(a)?, &delta.scale(&f_inv))?;
    let basis_shift = lhs == store.b(&a_i)?;

    Ok(DeltaReport { a: a.clone(), product_rule, commutation, basis_shift, covariance: covariance_holds(alg)? })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coeff::Specialization;

    fn store(spec: Specialization) -> CanonStore {
        CanonStore::new(Arc::new(Algebra::new(2, spec)))
    }

    #[test]
    fn delta_examples() {
        for spec in [Specialization::GENERIC, Specialization::OFFICIAL, Specialization::AST] {
            let s = store(spec);
            let d = delta2(s.algebra()).unwrap();
            let mut want = Element::norm(MatIdx::identity(2));
            want.add_term(MatIdx::from_rows(&[&[0, 1], &[1, 0]]), &-GammaLaurent::q_pow(-1));
            assert_eq!(d, want);
            assert_eq!(s.algebra().bar(&d).unwrap(), d);
            assert_eq!(s.b(&MatIdx::identity(2)).unwrap(), d);
        }
    }

    #[test]
    fn f_examples() {
        assert!(f_factor(&MatIdx::identity(2)).unwrap().is_one());
        let e11 = f_factor(&MatIdx::unit(2, 1, 1)).unwrap();
        assert_eq!(e11, GammaMonomial::p(2, 1, -1).mul(&GammaMonomial::qp(2, 1, -1)));
        assert!(f_factor(&MatIdx::from_rows(&[&[0, 1], &[1, 0]])).unwrap().is_one());
        let a = MatIdx::from_rows(&[&[2, 1], &[0, 3]]);
        let f = f_factor(&a).unwrap();
        assert_eq!(f_factor(&a.checked_add(&MatIdx::identity(2)).unwrap()).unwrap(), f);
    }

    #[test]
    fn minor_examples() {
        let s = store(Specialization::GENERIC);
        let full = MinorSpec::new(2, vec![1, 2], vec![1, 2]).unwrap();
        assert_eq!(quantum_minor(&full, &s).unwrap(), delta2(s.algebra()).unwrap());
        let one = MinorSpec::new(2, vec![2], vec![1]).unwrap();
        assert_eq!(quantum_minor(&one, &s).unwrap(), Element::norm(MatIdx::unit(2, 2, 1)));
        let s3 = CanonStore::new(Arc::new(Algebra::new(3, Specialization::GENERIC)));
        let m = MinorSpec::new(3, vec![1, 2], vec![1, 2]).unwrap();
        let b = quantum_minor(&m, &s3).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(s3.algebra().bar(&b).unwrap(), b);
        assert!(MinorSpec::new(2, vec![2, 1], vec![1, 2]).is_err());
        assert!(MinorSpec::new(2, vec![1], vec![3]).is_err());
    }

    #[test]
    fn compatibility_examples() {
        let s = store(Specialization::GENERIC);
        for a in [MatIdx::zero(2), MatIdx::unit(2, 1, 1), MatIdx::from_rows(&[&[1, 2], &[0, 1]])] {
            let r = delta_compatibility(&a, &s).unwrap();
            assert!(r.all(), "{r:?}");
        }
    }
}
