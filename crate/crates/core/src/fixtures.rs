//! Small hand-written algebras: `B2`, the 3-chain and the Boolean square,
//! each with its Heyting implication and identity tense operators.

use crate::algebra::{Algebra, Profile};
use crate::dli::heyting_residual;
use crate::lattice::{build_lattice, FiniteLattice};
use crate::tense::TenseQuadruple;

fn heyting_with_identity(name: &str, lat: FiniteLattice) -> Algebra {
    let n = lat.size();
    let imp = heyting_residual(&lat).expect("finite distributive lattices are Heyting");
    let a = Algebra::new(name, lat, Profile::THeyting)
        .with_op(crate::algebra::sym::IMP, imp)
        .expect("residual table fits the lattice");
    TenseQuadruple::identity(n)
        .attach(&a)
        .expect("identity tables fit the lattice")
}

/// The two-element chain `0 < 1`.
pub fn b2() -> Algebra {
    heyting_with_identity("B2", build_lattice(&["0", "1"], &[("0", "1")]).unwrap())
}

/// The chain `0 < m < 1`.
pub fn chain3() -> Algebra {
    let l = build_lattice(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap();
    heyting_with_identity("C3", l)
}

/// `2 × 2` with atoms `a`, `b`.
pub fn boolean_square() -> Algebra {
    let l = build_lattice(
        &["0", "a", "b", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )
    .unwrap();
    heyting_with_identity("B2xB2", l)
}

/// All three, in size order.
pub fn all() -> Vec<Algebra> {
    vec![b2(), chain3(), boolean_square()]
}
