//! Residuation on finite lattices: Heyting implication, co-Heyting
//! subtraction, and the frame/coframe checks.
//!
//! `implication` and `subtraction` are total: on a non-frame they still
//! return the candidate residual, and `check_residuation` is the
//! authority on whether residuation actually holds. On a finite lattice
//! the binary distributive law is equivalent to the infinitary frame law,
//! so the checks below are cubic rather than exponential.

use crate::lattice::Lattice;
use crate::set::ElementSet;

/// A violation of the frame (or coframe) law: an element `x` and a set
/// `ys` with `x ∧ ⋁ys ≠ ⋁ {x ∧ y | y ∈ ys}` (dually for the coframe).
#[derive(Debug, Clone)]
pub struct LawWitness {
    pub x: usize,
    pub ys: ElementSet,
}

#[derive(Debug, Clone)]
pub struct ResiduationReport {
    pub is_frame: bool,
    pub is_coframe: bool,
    pub frame_witness: Option<LawWitness>,
    pub coframe_witness: Option<LawWitness>,
}

/// The candidate Heyting implication: `⋁ {z | x ∧ z ≤ y}`. On a frame
/// this is the residual of the meet, i.e. `z ≤ x→y ⟺ x ∧ z ≤ y`.
pub fn implication(l: &Lattice, x: usize, y: usize) -> usize {
    let candidates =
        ElementSet::from_indices(l.n(), (0..l.n()).filter(|&z| l.leq(l.meet(x, z), y)));
    // z = bottom always qualifies, so the join is over a nonempty set.
    l.join_set(&candidates)
}

/// The candidate co-Heyting subtraction: `⋀ {z | x ≤ y ∨ z}`, which is
/// the implication computed in the dual lattice.
pub fn subtraction(l: &Lattice, x: usize, y: usize) -> usize {
    let candidates =
        ElementSet::from_indices(l.n(), (0..l.n()).filter(|&z| l.leq(x, l.join(y, z))));
    l.meet_set(&candidates)
}

/// Checks both residuation laws. On a finite lattice
/// `is_frame = is_coframe = is_distributive`.
pub fn check_residuation(l: &Lattice) -> ResiduationReport {
    let frame_witness = frame_violation(l);
    let coframe_witness = frame_violation(&l.dual());
    ResiduationReport {
        is_frame: frame_witness.is_none(),
        is_coframe: coframe_witness.is_none(),
        frame_witness,
        coframe_witness,
    }
}

/// Looks for a pair `(x, y)` where the adjunction `x ∧ (x→y) ≤ y` fails.
/// When it does, `Y = {z | x ∧ z ≤ y}` is a genuine frame-law violation:
/// each `x ∧ z ≤ y` yet `x ∧ ⋁Y ≰ y`.
fn frame_violation(l: &Lattice) -> Option<LawWitness> {
    for x in 0..l.n() {
        for y in 0..l.n() {
            if !l.leq(l.meet(x, implication(l, x, y)), y) {
                let ys = ElementSet::from_indices(
                    l.n(),
                    (0..l.n()).filter(|&z| l.leq(l.meet(x, z), y)),
                );
                return Some(LawWitness { x, ys });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, CatalogSpec};

    #[test]
    fn boolean_implication() {
        let l = build(&CatalogSpec::Boolean(2)).unwrap();
        let p = l.index_of("p").unwrap();
        let q = l.index_of("q").unwrap();
        assert_eq!(implication(&l, p, q), q);
        for x in 0..l.n() {
            assert_eq!(implication(&l, x, l.top()), l.top());
        }
        for y in 0..l.n() {
            assert_eq!(implication(&l, l.bottom(), y), l.top());
        }
    }

    #[test]
    fn boolean_subtraction() {
        let l = build(&CatalogSpec::Boolean(2)).unwrap();
        let p = l.index_of("p").unwrap();
        let q = l.index_of("q").unwrap();
        assert_eq!(subtraction(&l, l.top(), p), q);
        for x in 0..l.n() {
            assert_eq!(subtraction(&l, x, x), l.bottom());
            assert_eq!(subtraction(&l, l.bottom(), x), l.bottom());
        }
    }

    #[test]
    fn subtraction_is_dual_implication() {
        for spec in [CatalogSpec::Boolean(2), CatalogSpec::Chain(3), CatalogSpec::N5] {
            let l = build(&spec).unwrap();
            let d = l.dual();
            for x in 0..l.n() {
                for y in 0..l.n() {
                    // x∖y is the least z with x ≤ y∨z; in the dual that
                    // is y→x, with the arguments swapped.
                    assert_eq!(subtraction(&l, x, y), implication(&d, y, x));
                }
            }
        }
    }

    #[test]
    fn n5_is_not_a_frame_and_witness_is_genuine() {
        let l = build(&CatalogSpec::N5).unwrap();
        let report = check_residuation(&l);
        assert!(!report.is_frame);
        assert!(!report.is_coframe);
        let w = report.frame_witness.unwrap();
        let join_of_meets = l.join_set(&ElementSet::from_indices(
            l.n(),
            w.ys.iter().map(|y| l.meet(w.x, y)).collect::<Vec<_>>(),
        ));
        assert_ne!(l.meet(w.x, l.join_set(&w.ys)), join_of_meets);
    }

    #[test]
    fn distributive_lattices_are_frames_and_coframes() {
        for spec in [CatalogSpec::Boolean(3), CatalogSpec::Chain(5)] {
            let report = check_residuation(&build(&spec).unwrap());
            assert!(report.is_frame);
            assert!(report.is_coframe);
            assert!(report.frame_witness.is_none());
        }
    }

    #[test]
    fn residuation_law_on_frames() {
        for spec in [CatalogSpec::Boolean(2), CatalogSpec::Chain(4), CatalogSpec::Divisor(12)] {
            let l = build(&spec).unwrap();
            assert!(check_residuation(&l).is_frame);
            for x in 0..l.n() {
                for y in 0..l.n() {
                    let imp = implication(&l, x, y);
                    for z in 0..l.n() {
                        assert_eq!(l.leq(z, imp), l.leq(l.meet(x, z), y));
                    }
                }
            }
        }
    }

    #[test]
    fn frame_agrees_with_distributivity() {
        for spec in [
            CatalogSpec::N5,
            CatalogSpec::M3,
            CatalogSpec::Boolean(2),
            CatalogSpec::Chain(3),
            CatalogSpec::Divisor(30),
        ] {
            let l = build(&spec).unwrap();
            let report = check_residuation(&l);
            assert_eq!(report.is_frame, l.is_distributive());
            assert_eq!(report.is_coframe, l.is_distributive());
        }
    }
}
