use std::fs;
use std::sync::Arc;

use qcanon::canon::{CanonStore, DiskCache};
use qcanon::coeff::{SpecName, Specialization};
use qcanon::matgrid::{cells_up_to, less_equal, MatIdx};
use qcanon::oqpq::{Algebra, Element};

fn store(spec: Specialization, dir: &std::path::Path) -> CanonStore {
    CanonStore::new(Arc::new(Algebra::new(2, spec))).with_disk(DiskCache::new(dir))
}

#[test]
fn cache_roundtrip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let s = store(Specialization::GENERIC, dir.path());
    let first = s.table(&[2, 1], &[2, 1]).unwrap();
    let path = DiskCache::new(dir.path()).path(&[2, 1], &[2, 1], SpecName::Generic);
    let bytes = fs::read(&path).unwrap();
    let again = store(Specialization::GENERIC, dir.path());
    let second = again.table(&[2, 1], &[2, 1]).unwrap();
    assert_eq!(first, second);
    DiskCache::new(dir.path()).store(&second).unwrap();
    assert_eq!(fs::read(&path).unwrap(), bytes);
}

#[test]
fn corrupt_cache_recomputes() {
    let dir = tempfile::tempdir().unwrap();
    let want = store(Specialization::OFFICIAL, dir.path()).table(&[2, 1], &[1, 2]).unwrap();
    let disk = DiskCache::new(dir.path());
    let path = disk.path(&[2, 1], &[1, 2], SpecName::Official);
    fs::write(&path, "{ not json").unwrap();
    assert!(disk.load(&[2, 1], &[1, 2], SpecName::Official).is_err());
    let got = store(Specialization::OFFICIAL, dir.path()).table(&[2, 1], &[1, 2]).unwrap();
    assert_eq!(got, want);
    assert!(disk.load(&[2, 1], &[1, 2], SpecName::Official).unwrap().is_some());
}

#[test]
fn generic_reuse_matches_direct() {
    for spec in [Specialization::OFFICIAL, Specialization::AST] {
        let direct = CanonStore::new(Arc::new(Algebra::new(2, spec)));
        let reused = CanonStore::new(Arc::new(Algebra::new(2, spec))).with_generic_reuse(true);
        for cell in cells_up_to(2, 4) {
            assert_eq!(
                direct.table(&cell.rows, &cell.cols).unwrap(),
                reused.table(&cell.rows, &cell.cols).unwrap(),
                "{:?}",
                spec
            );
        }
    }
}

#[test]
fn basis_is_bar_invariant_and_unitriangular() {
    for n in [2, 3] {
        let s = CanonStore::new(Arc::new(Algebra::new(n, Specialization::GENERIC)));
        for cell in cells_up_to(n, if n == 2 { 4 } else { 3 }) {
            for a in &cell.members {
                let b = s.b(a).unwrap();
                assert_eq!(s.algebra().bar(&b).unwrap(), b, "b({a})");
                assert!(b.coefficient(a).is_one());
                for (c, h) in b.terms() {
                    if c != a {
                        assert!(less_equal(c, a) && h.is_supported_on_positive(), "b({a}) at {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn expand_assemble_roundtrip() {
    let s = CanonStore::new(Arc::new(Algebra::new(2, Specialization::GENERIC)));
    let x = s.algebra().multiply(&Element::norm(MatIdx::identity(2)), &Element::norm(MatIdx::unit(2, 1, 2))).unwrap();
    assert_eq!(s.assemble(&s.expand(&x).unwrap()).unwrap(), x);
}
