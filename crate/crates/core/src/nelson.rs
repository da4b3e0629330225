//! Tense Heyting algebras, the weak pair implication, and Nelson checks.

use crate::algebra::{bin, sym, Algebra};
use crate::dli::{implication_axioms, residual_table, ImplicationLevel};
use crate::error::{Error, Result};
use crate::kalman::{center_embedding, kalman_weak};
use crate::kleene::{check_kleene_ki_profile, require_level, KleeneLevel};
use crate::report::{forall2, forall3, AxiomReport};
use crate::tense::{check_tense_axioms, TenseQuadruple};

fn require_heyting(a: &Algebra) -> Result<()> {
    let r = implication_axioms(a.lattice(), a.binary(sym::IMP)?, ImplicationLevel::Heyting, "");
    if r.all_hold() {
        Ok(())
    } else {
        Err(Error::PreconditionUnverified(format!(
            "`{}` is not a Heyting algebra",
            a.name()
        )))
    }
}

/// T0–T4, then T5 and T6 re-derived (`T5:derived`, `T6:derived`).
pub fn check_tense_heyting(l: &Algebra) -> Result<AxiomReport> {
    require_heyting(l)?;
    let q = TenseQuadruple::from_algebra(l)?;
    let full = check_tense_axioms(l, &q, true)?;
    let mut r = AxiomReport::new();
    for o in full.outcomes() {
        let id = match o.id.as_str() {
            "T5" | "T6" => format!("{}:derived", o.id),
            other => other.to_string(),
        };
        r.record(id, o.witness.clone());
    }
    Ok(r)
}

/// `K(A)` with `(a,b) ⇒ (d,e) = (a → d, a ∧ e)` as `imp` and the general
/// pair implication kept as `impki`.
pub fn fv_kalman(a: &Algebra, q: &TenseQuadruple) -> Result<Algebra> {
    require_heyting(a)?;
    let with_q = q.attach(a)?;
    let r = check_tense_heyting(&with_q)?;
    if !r.all_hold() {
        return Err(Error::PreconditionUnverified(format!(
            "`{}` is not a tense Heyting algebra",
            a.name()
        )));
    }
    kalman_weak(a, q)
}

/// Centered Kleene reduct, `x ⇒ y = x → (∼x ∨ y)` for the lattice residual
/// `→`, and `(x ∧ y) ⇒ z = x ⇒ (y ⇒ z)`.
pub fn check_centered_nelson(u: &Algebra) -> Result<AxiomReport> {
    let mut r = check_kleene_ki_profile(u, KleeneLevel::CKleene)?;
    let lat = u.lattice();
    let n = lat.size();
    let neg = u.unary(sym::NEG)?;
    let imp = u.binary(sym::IMP)?;
    let res = residual_table(lat)?;
    r.record(
        "quasi-nelson",
        forall2(n, |x, y| bin(imp, n, x, y) == bin(&res, n, x, lat.join(neg[x], y))),
    );
    r.record(
        "nelson",
        forall3(n, |x, y, z| {
            bin(imp, n, lat.meet(x, y), z) == bin(imp, n, x, bin(imp, n, y, z))
        }),
    );
    Ok(r)
}

/// `x <= y ⇒ x` and, with the center's restricted `⇒`, residuation on the
/// center. Witnesses are indices of `u`.
pub(crate) fn nelson_items(u: &Algebra, r: &mut AxiomReport) -> Result<()> {
    let lat = u.lattice();
    let n = lat.size();
    let imp = u.binary(sym::IMP)?;
    r.record("I6", forall2(n, |x, y| lat.leq(x, bin(imp, n, y, x))));
    let emb = center_embedding(u)?;
    let k = emb.len();
    let (e, i) = (|x: usize| emb[x], |a: usize, b: usize| bin(imp, n, emb[a], emb[b]));
    r.record(
        "center-residuation",
        forall3(k, |x, y, z| {
            lat.leq(lat.meet(e(x), e(y)), e(z)) == lat.leq(e(x), i(y, z))
        })
        .map(|w| w.into_iter().map(e).collect()),
    );
    Ok(())
}

/// I6 on an `itkic1` instance; when it holds the center must be Heyting.
pub fn check_nelson_itkic1(u: &Algebra) -> Result<AxiomReport> {
    require_level(u, KleeneLevel::Itkic1)?;
    let mut r = AxiomReport::new();
    nelson_items(u, &mut r)?;
    Ok(r)
}
