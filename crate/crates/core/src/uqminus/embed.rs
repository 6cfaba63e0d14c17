//! The map `Z_ij ↦ F*_{i,j+n-1}` from the OFFICIAL quantum matrix algebra
//! into `U_q(n⁻)` of type `A_{2n-1}`, and its checks.

use serde_json::{json, Value};

use super::free::{is_radical_zero, phi, FreeElement};
use super::qrat::QRat;
use super::roots::{root_vector, RootKind};
use crate::canon::CanonStore;
use crate::coeff::{GammaLaurent, SpecName};
use crate::error::{Error, Result};
use crate::matgrid::{cells_up_to, MatIdx};
use crate::oqpq::{Algebra, Basis, Element, Gen};

/// `U` exponent of `q` per unit of `v` (where `v² = q` on the matrix side).
pub const Q_SCALE: i64 = 1;

pub fn embed_generator(g: Gen, n: usize) -> Result<FreeElement> {
    let (i, j) = (g.0, g.1 + n - 1);
    if i == 0 || g.1 == 0 || j > 2 * n - 1 {
        return Err(Error::IndexOutOfRange(format!("Z_{}{} for n={n}", g.0, g.1)));
    }
    root_vector(i, j, RootKind::DualRecursive)
}

fn embed_coefficient(c: &GammaLaurent, scale: i64) -> Result<QRat> {
    let mut out = QRat::zero();
    for (m, k) in c.terms() {
        if !m.is_pure_q() {
            return Err(Error::Parse(format!("coefficient {c} is not a power of q")));
        }
        let k = i64::try_from(k).map_err(|_| Error::Parse("coefficient too large".into()))?;
        out = &out + &(&QRat::from_int(k) * &QRat::q_pow(m.v_exp() * scale));
    }
    Ok(out)
}

/// The image of `x` with `v ↦ q^scale` on coefficients.
pub fn embed_scaled(x: &Element, alg: &Algebra, scale: i64) -> Result<FreeElement> {
    let n = alg.n();
    let gens: Vec<FreeElement> =
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).map(|g| embed_generator(g, n)).collect::<Result<_>>()?;
    let plain = alg.to_plain(x);
    let mut out = FreeElement::zero();
    for (a, c) in plain.terms() {
        let mut term = FreeElement::one();
        for (i, j) in a.word() {
            term = term.mul(&gens[(i - 1) * n + j - 1]);
        }
        out.add_scaled(&term, &embed_coefficient(c, scale)?);
    }
    Ok(out)
}

pub fn embed(x: &Element, alg: &Algebra) -> Result<FreeElement> {
    embed_scaled(x, alg, Q_SCALE)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub n: usize,
    pub relations: Vec<EmbeddingCheck>,
    pub phi_fixed: Vec<EmbeddingCheck>,
}

impl EmbeddingReport {
    pub fn all(&self) -> bool {
        self.relations.iter().chain(&self.phi_fixed).all(|c| c.holds)
    }

    pub fn to_json(&self) -> Value {
        let list = |v: &[EmbeddingCheck]| -> Vec<Value> {
            v.iter().map(|c| json!({ "check": c.label, "holds": c.holds })).collect()
        };
        json!({ "n": self.n, "relations": list(&self.relations), "phi_fixed": list(&self.phi_fixed), "all": self.all() })
    }
}

/// The defining relations `Z_big Z_small - Σ c Z_x Z_y` in the free algebra.
pub fn relation_images(alg: &Algebra, scale: i64) -> Result<Vec<(String, FreeElement)>> {
    let n = alg.n();
    let gens: Vec<Gen> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for &big in &gens {
        for &small in &gens {
            if big <= small {
                continue;
            }
            let mut x = embed_generator(big, n)?.mul(&embed_generator(small, n)?);
            for (c, p, q) in alg.relation(big, small) {
                let y = embed_generator(*p, n)?.mul(&embed_generator(*q, n)?);
                x.add_scaled(&y, &-&embed_coefficient(c, scale)?);
            }
            out.push((format!("Z{}{}·Z{}{}", big.0, big.1, small.0, small.1), x));
        }
    }
    Ok(out)
}

/// Relation images are radical-zero, and `Φ` fixes the image of every `b(A)` with mass at most `max_mass`.
pub fn verify_embedding(store: &CanonStore, max_mass: u32) -> Result<EmbeddingReport> {
    let alg = store.algebra();
    if alg.spec().name != SpecName::Official {
        return Err(Error::Parse("the embedding needs the OFFICIAL specialization".into()));
    }
    let n = alg.n();
    let relations = relation_images(alg, Q_SCALE)?
        .into_iter()
        .map(|(label, x)| EmbeddingCheck { label, holds: is_radical_zero(&x) })
        .collect();
    let mut phi_fixed = Vec::new();
    for a in matrices_up_to(n, max_mass) {
        let img = embed(&store.b(&a)?, alg)?;
        phi_fixed.push(EmbeddingCheck { label: format!("b({a})"), holds: is_radical_zero(&phi(&img).sub(&img)) });
    }
    Ok(EmbeddingReport { n, relations, phi_fixed })
}

/// Every nonzero `n×n` matrix of mass at most `max_mass`.
pub fn matrices_up_to(n: usize, max_mass: u32) -> Vec<MatIdx> {
    cells_up_to(n, max_mass).into_iter().flat_map(|c| c.members).collect()
}

/// `Element` in the normalized basis, used by callers that only have a matrix.
pub fn embed_norm(a: &MatIdx, alg: &Algebra) -> Result<FreeElement> {
    embed(&Element::term(GammaLaurent::one(), a.clone(), Basis::Norm), alg)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coeff::Specialization;

    fn official() -> Algebra {
        Algebra::new(2, Specialization::OFFICIAL)
    }

    #[test]
    fn generator_images() {
        assert_eq!(embed_generator((2, 1), 2).unwrap(), FreeElement::generator(2));
        assert_eq!(embed_generator((1, 1), 2).unwrap(), root_vector(1, 2, RootKind::DualRecursive).unwrap());
        assert_eq!(embed_generator((2, 2), 2).unwrap(), root_vector(2, 3, RootKind::DualRecursive).unwrap());
        assert!(matches!(embed_generator((1, 3), 2), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn relations_vanish() {
        for (label, x) in relation_images(&official(), Q_SCALE).unwrap() {
            assert!(is_radical_zero(&x), "{label}");
        }
    }

    #[test]
    fn canonical_images_fixed() {
        let store = CanonStore::new(Arc::new(official()));
        let r = verify_embedding(&store, 2).unwrap();
        assert!(r.all(), "{r:?}");
        assert!(r.phi_fixed.iter().any(|c| c.label == format!("b({})", MatIdx::identity(2))));
    }
}
