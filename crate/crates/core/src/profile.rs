//! One entry point for every declared profile.

use crate::algebra::{sym, Algebra, Profile};
use crate::dli::{check_implication_profile, ImplicationLevel};
use crate::error::{Error, Result};
use crate::kleene::{check_kleene_ki_profile, KleeneLevel};
use crate::nelson::{check_tense_heyting, nelson_items};
use crate::report::{forall1, AxiomReport};
use crate::tense::{check_tense_axioms, TenseQuadruple};

fn implication_then_tense(
    a: &Algebra,
    level: ImplicationLevel,
    tense: Option<bool>,
) -> Result<AxiomReport> {
    let mut r = check_implication_profile(a, level)?;
    if let Some(with_t0) = tense {
        let q = TenseQuadruple::from_algebra(a)?;
        r.extend(check_tense_axioms(a, &q, with_t0)?);
    }
    Ok(r)
}

/// Full axiom report of `a` against `profile`.
pub fn check_profile(a: &Algebra, profile: Profile) -> Result<AxiomReport> {
    use ImplicationLevel as I;
    use KleeneLevel as K;
    match profile {
        Profile::Dl => {
            // the lattice axioms are enforced when the lattice is built
            let mut r = AxiomReport::new();
            r.record_bool("bounded-distributive-lattice", true);
            Ok(r)
        }
        Profile::Dli => implication_then_tense(a, I::Dli, None),
        Profile::DliPlus => implication_then_tense(a, I::DliPlus, None),
        Profile::Dli1Plus => implication_then_tense(a, I::Dli1Plus, None),
        Profile::Heyting => implication_then_tense(a, I::Heyting, None),
        Profile::Tdli => implication_then_tense(a, I::DliPlus, Some(false)),
        Profile::Tdli0 => implication_then_tense(a, I::DliPlus, Some(true)),
        Profile::Tdli01 => implication_then_tense(a, I::Dli1Plus, Some(true)),
        Profile::THeyting => {
            let mut r = check_implication_profile(a, I::Heyting)?;
            if r.all_hold() {
                r.extend(check_tense_heyting(a)?);
            } else {
                let q = TenseQuadruple::from_algebra(a)?;
                r.extend(check_tense_axioms(a, &q, true)?);
            }
            Ok(r)
        }
        Profile::Kleene => check_kleene_ki_profile(a, K::Kleene),
        Profile::CKleene => check_kleene_ki_profile(a, K::CKleene),
        Profile::Ki => check_kleene_ki_profile(a, K::Ki),
        Profile::Tki => check_kleene_ki_profile(a, K::Tki),
        Profile::Tkic => check_kleene_ki_profile(a, K::Tkic),
        Profile::Itkic1 => check_kleene_ki_profile(a, K::Itkic1),
        Profile::NelsonItkic1 => {
            let mut r = check_kleene_ki_profile(a, K::Ki)?;
            let ck = crate::kleene::ck_items(a)?;
            r.extend(ck);
            let (lat, n) = (a.lattice(), a.size());
            let imp = a.binary(sym::IMP)?;
            r.record(
                "x=>x=1",
                forall1(n, |x| crate::algebra::bin(imp, n, x, x) == lat.top()),
            );
            nelson_items(a, &mut r)?;
            Ok(r)
        }
        Profile::TNelson => {
            let mut r = check_kleene_ki_profile(a, K::Itkic1)?;
            nelson_items(a, &mut r)?;
            Ok(r)
        }
    }
}

/// `Ok` when every item of [`check_profile`] holds.
pub fn require_profile(a: &Algebra, profile: Profile) -> Result<()> {
    let r = check_profile(a, profile)?;
    if r.all_hold() {
        Ok(())
    } else {
        Err(Error::PreconditionUnverified(format!(
            "`{}` is not {profile}: {:?} fail",
            a.name(),
            r.failures().map(|o| o.id.as_str()).collect::<Vec<_>>()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kalman::kalman_k;

    #[test]
    fn fixtures_satisfy_every_dli_profile() {
        for a in fixtures::all() {
            for p in Profile::ALL.iter().filter(|p| p.family() == crate::Family::Dli) {
                assert!(check_profile(&a, *p).unwrap().all_hold(), "{} {p}", a.name());
            }
        }
    }

    #[test]
    fn kalman_images_satisfy_every_kleene_profile() {
        for a in fixtures::all() {
            let k = kalman_k(&a).unwrap();
            for p in Profile::ALL.iter().filter(|p| p.family() == crate::Family::Kleene) {
                assert!(check_profile(&k, *p).unwrap().all_hold(), "{} {p}", k.name());
            }
        }
    }

    #[test]
    fn require_names_failures() {
        let mut a = fixtures::b2();
        a.set_op(sym::IMP, crate::OpTable::Binary(vec![1, 1, 1, 1])).unwrap();
        let e = require_profile(&a, Profile::DliPlus).unwrap_err();
        assert!(e.to_string().contains("I5"), "{e}");
    }
}
