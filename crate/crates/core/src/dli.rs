//! Implication axioms for distributive lattices with implication.
//!
//! Levels are cumulative: `Dli` checks I1–I4, `DliPlus` adds I5, `Dli1Plus`
//! adds `x -> x = 1`, `I6` adds `x <= y -> x`, and `Heyting` adds full
//! residuation `x ∧ y <= z  <=>  x <= y -> z`.

use crate::algebra::{bin, sym, Algebra, OpTable};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::report::{forall1, forall2, forall3, AxiomReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ImplicationLevel {
    Dli,
    DliPlus,
    Dli1Plus,
    I6,
    Heyting,
}

/// Axioms of the implication `imp` over `lat`, ids prefixed with `prefix`.
pub(crate) fn implication_axioms(
    lat: &FiniteLattice,
    imp: &[usize],
    level: ImplicationLevel,
    prefix: &str,
) -> AxiomReport {
    let n = lat.size();
    let i = |a, b| bin(imp, n, a, b);
    let (bot, top) = (lat.bot(), lat.top());
    let mut r = AxiomReport::new();
    r.record(
        format!("{prefix}I1"),
        forall3(n, |a, b, d| lat.meet(i(a, b), i(a, d)) == i(a, lat.meet(b, d))),
    );
    r.record(
        format!("{prefix}I2"),
        forall3(n, |a, b, d| lat.meet(i(a, d), i(b, d)) == i(lat.join(a, b), d)),
    );
    r.record(format!("{prefix}I3"), forall1(n, |a| i(bot, a) == top));
    r.record(format!("{prefix}I4"), forall1(n, |a| i(a, top) == top));
    if level >= ImplicationLevel::DliPlus {
        r.record(
            format!("{prefix}I5"),
            forall2(n, |a, b| lat.leq(lat.meet(a, i(a, b)), b)),
        );
    }
    if level >= ImplicationLevel::Dli1Plus {
        r.record(format!("{prefix}x->x=1"), forall1(n, |x| i(x, x) == top));
    }
    if level >= ImplicationLevel::I6 {
        r.record(format!("{prefix}I6"), forall2(n, |x, y| lat.leq(x, i(y, x))));
    }
    if level >= ImplicationLevel::Heyting {
        r.record(
            format!("{prefix}residuation"),
            forall3(n, |x, y, z| lat.leq(lat.meet(x, y), z) == lat.leq(x, i(y, z))),
        );
    }
    r
}

pub fn check_implication_profile(a: &Algebra, level: ImplicationLevel) -> Result<AxiomReport> {
    let imp = a.binary(sym::IMP)?;
    Ok(implication_axioms(a.lattice(), imp, level, ""))
}

/// Relative pseudocomplement `y -> z = max{x : x ∧ y <= z}` of a lattice.
///
/// On a finite distributive lattice the maximum always exists; `None` is
/// returned only if it does not.
pub fn heyting_residual(lat: &FiniteLattice) -> Option<OpTable> {
    let n = lat.size();
    let mut table = Vec::with_capacity(n * n);
    for y in 0..n {
        for z in 0..n {
            // join of all candidates, which must itself be a candidate
            let cand = (0..n)
                .filter(|&x| lat.leq(lat.meet(x, y), z))
                .fold(lat.bot(), |acc, x| lat.join(acc, x));
            if !lat.leq(lat.meet(cand, y), z) {
                return None;
            }
            table.push(cand);
        }
    }
    Some(OpTable::Binary(table))
}

pub(crate) fn residual_table(lat: &FiniteLattice) -> Result<Vec<usize>> {
    match heyting_residual(lat) {
        Some(OpTable::Binary(t)) => Ok(t),
        _ => Err(Error::NoResidual),
    }
}

/// Antitone-in-first / monotone-in-second laws of `->`.
///
/// The first item, `precondition:dli`, records whether I1–I4 hold; the laws
/// themselves are checked independently of it.
pub fn check_monotonicity_laws(a: &Algebra) -> Result<AxiomReport> {
    let imp = a.binary(sym::IMP)?;
    let lat = a.lattice();
    let n = lat.size();
    let i = |x, y| bin(imp, n, x, y);
    let mut r = AxiomReport::new();
    r.record_bool(
        "precondition:dli",
        implication_axioms(lat, imp, ImplicationLevel::Dli, "").all_hold(),
    );
    r.record(
        "antitone-first",
        forall3(n, |x, y, z| !lat.leq(x, y) || lat.leq(i(y, z), i(x, z))),
    );
    r.record(
        "monotone-second",
        forall3(n, |x, y, z| !lat.leq(x, y) || lat.leq(i(z, x), i(z, y))),
    );
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeytingCharacterization {
    pub is_dli1_plus: bool,
    pub satisfies_i6: bool,
    pub is_heyting: bool,
}

pub fn check_heyting_characterization(a: &Algebra) -> Result<HeytingCharacterization> {
    let imp = a.binary(sym::IMP)?;
    let lat = a.lattice();
    let n = lat.size();
    let is_dli1_plus = implication_axioms(lat, imp, ImplicationLevel::Dli1Plus, "").all_hold();
    let satisfies_i6 = forall2(n, |x, y| lat.leq(x, bin(imp, n, y, x))).is_none();
    let is_heyting = forall3(n, |x, y, z| {
        lat.leq(lat.meet(x, y), z) == lat.leq(x, bin(imp, n, y, z))
    })
    .is_none();
    Ok(HeytingCharacterization {
        is_dli1_plus,
        satisfies_i6,
        is_heyting,
    })
}
