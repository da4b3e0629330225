//! Kleene algebras with implication and their tense expansions.
//!
//! On this side only `G` and `H` are stored; `F(x) = ∼G(∼x)` and
//! `P(x) = ∼H(∼x)` are recomputed from the tables whenever needed.

use crate::algebra::{bin, sym, Algebra};
use crate::dli::{implication_axioms, ImplicationLevel};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::report::{forall1, forall2, AxiomReport};
use crate::tense::TenseView;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum KleeneLevel {
    Kleene,
    CKleene,
    Ki,
    Tki,
    Tkic,
    Itkic1,
}

/// Derived `F = ∼G∼` and `P = ∼H∼` of a Kleene instance carrying `G, H`.
pub fn derived_diamonds(u: &Algebra) -> Result<(Vec<usize>, Vec<usize>)> {
    let neg = u.unary(sym::NEG)?;
    let g = u.unary(sym::G)?;
    let h = u.unary(sym::H)?;
    let f = (0..u.size()).map(|x| neg[g[neg[x]]]).collect();
    let p = (0..u.size()).map(|x| neg[h[neg[x]]]).collect();
    Ok((f, p))
}

pub(crate) struct KleeneTense {
    g: Vec<usize>,
    h: Vec<usize>,
    f: Vec<usize>,
    p: Vec<usize>,
}

impl KleeneTense {
    pub fn of(u: &Algebra) -> Result<Self> {
        let (f, p) = derived_diamonds(u)?;
        Ok(KleeneTense {
            g: u.unary(sym::G)?.to_vec(),
            h: u.unary(sym::H)?.to_vec(),
            f,
            p,
        })
    }

    pub fn view<'a>(&'a self, lat: &'a FiniteLattice) -> TenseView<'a> {
        TenseView {
            lat,
            g: &self.g,
            h: &self.h,
            f: &self.f,
            p: &self.p,
        }
    }
}

fn kleene_items(lat: &FiniteLattice, neg: &[usize], r: &mut AxiomReport) {
    let n = lat.size();
    r.record("involution", forall1(n, |x| neg[neg[x]] == x));
    r.record(
        "de-morgan",
        forall2(n, |x, y| neg[lat.join(x, y)] == lat.meet(neg[x], neg[y])),
    );
    r.record(
        "kleene",
        forall2(n, |x, y| {
            lat.leq(lat.meet(x, neg[x]), lat.join(y, neg[y]))
        }),
    );
}

pub(crate) fn ki_items(lat: &FiniteLattice, neg: &[usize], c: usize, imp: &[usize], r: &mut AxiomReport) {
    let n = lat.size();
    let i = |a, b| bin(imp, n, a, b);
    r.extend(implication_axioms(lat, imp, ImplicationLevel::Dli, "KI1:"));
    r.record(
        "KI2",
        forall2(n, |x, y| {
            lat.leq(lat.join(lat.meet(x, i(x, y)), c), lat.join(y, c))
        }),
    );
    r.record_bool("KI3", i(c, c) == lat.top());
    r.record(
        "KI4",
        forall2(n, |x, y| {
            lat.meet(i(x, y), c) == lat.meet(lat.join(neg[x], y), c)
        }),
    );
    r.record(
        "KI5",
        forall2(n, |x, y| {
            lat.join(i(x, neg[y]), c)
                == lat.meet(i(x, lat.join(neg[y], c)), i(y, lat.join(neg[x], c)))
        }),
    );
}

/// Cumulative axiom report for the requested level.
pub fn check_kleene_ki_profile(u: &Algebra, level: KleeneLevel) -> Result<AxiomReport> {
    let lat = u.lattice();
    let n = lat.size();
    let neg = u.unary(sym::NEG)?;
    let mut r = AxiomReport::new();
    kleene_items(lat, neg, &mut r);
    if level == KleeneLevel::Kleene {
        return Ok(r);
    }
    let c = u.constant(sym::CENTER)?;
    r.record("center", (neg[c] != c).then(|| vec![c]));
    r.record("center-unique", forall1(n, |x| neg[x] != x || x == c));
    if level == KleeneLevel::CKleene {
        return Ok(r);
    }
    let imp = u.binary(sym::IMP)?;
    ki_items(lat, neg, c, imp, &mut r);
    if level == KleeneLevel::Ki {
        return Ok(r);
    }
    let t = KleeneTense::of(u)?;
    let v = t.view(lat);
    r.record("t1", v.boxes_preserve_top());
    r.record("t2", v.boxes_preserve_meets());
    r.record("t3", v.units());
    r.record("t4", v.join_mix());
    r.record("t5", v.box_k(imp));
    r.record("t6", v.box_diamond_k(imp));
    if level == KleeneLevel::Tki {
        return Ok(r);
    }
    r.record(
        "tc",
        (t.g[c] != c || t.h[c] != c).then(|| vec![c]),
    );
    if level == KleeneLevel::Tkic {
        return Ok(r);
    }
    r.extend(ck_items(u)?);
    r.record("x=>x=1", forall1(n, |x| bin(imp, n, x, x) == lat.top()));
    Ok(r)
}

fn require(u: &Algebra, level: KleeneLevel) -> Result<()> {
    let r = check_kleene_ki_profile(u, level)?;
    if r.all_hold() {
        Ok(())
    } else {
        Err(Error::PreconditionUnverified(format!(
            "`{}` fails {:?} at {:?}",
            u.name(),
            level,
            r.failures().map(|o| o.id.as_str()).collect::<Vec<_>>()
        )))
    }
}

pub(crate) fn require_level(u: &Algebra, level: KleeneLevel) -> Result<()> {
    require(u, level)
}

/// t7–t16 (needs `tki`) and, when `G(c) = c = H(c)`, c1–c3.
pub fn verify_ki_derived(u: &Algebra) -> Result<AxiomReport> {
    require(u, KleeneLevel::Tki)?;
    let lat = u.lattice();
    let n = lat.size();
    let c = u.constant(sym::CENTER)?;
    let t = KleeneTense::of(u)?;
    let v = t.view(lat);
    let mut r = AxiomReport::new();
    r.record("t7", v.diamonds_preserve_bottom());
    r.record("t8", v.diamonds_preserve_joins());
    r.record("t9", v.counits());
    r.record("t10", v.boxes_monotone());
    r.record("t11", v.diamonds_monotone());
    r.record("t12", v.meet_mix());
    r.record("t13", v.frobenius());
    r.record("t14", v.disjointness());
    r.record("t15", v.co_frobenius());
    r.record("t16", v.codisjointness());
    if t.g[c] == c && t.h[c] == c {
        r.record("c1", (t.f[c] != c || t.p[c] != c).then(|| vec![c]));
        r.record(
            "c2",
            forall1(n, |x| {
                t.g[lat.join(x, c)] == lat.join(t.g[x], c)
                    && t.h[lat.join(x, c)] == lat.join(t.h[x], c)
            }),
        );
        r.record(
            "c3",
            forall1(n, |x| {
                t.f[lat.meet(x, c)] == lat.meet(t.f[x], c)
                    && t.p[lat.meet(x, c)] == lat.meet(t.p[x], c)
            }),
        );
    }
    Ok(r)
}

/// Outcome of the (CK) search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CkCheck {
    pub holds: bool,
    /// A pair `x, y >= c` with `x ∧ y <= c` realised by no `z`.
    pub witness: Option<(usize, usize)>,
}

fn ck_violation(lat: &FiniteLattice, neg: &[usize], c: usize) -> Option<(usize, usize)> {
    let n = lat.size();
    for x in 0..n {
        if !lat.leq(c, x) {
            continue;
        }
        for y in 0..n {
            if !lat.leq(c, y) || !lat.leq(lat.meet(x, y), c) {
                continue;
            }
            let realised = (0..n).any(|z| lat.join(z, c) == x && lat.join(neg[z], c) == y);
            if !realised {
                return Some((x, y));
            }
        }
    }
    None
}

pub(crate) fn ck_items(u: &Algebra) -> Result<AxiomReport> {
    let c = u.constant(sym::CENTER)?;
    let mut r = AxiomReport::new();
    r.record(
        "CK",
        ck_violation(u.lattice(), u.unary(sym::NEG)?, c).map(|(x, y)| vec![x, y]),
    );
    Ok(r)
}

/// Every pair `x, y >= c` with `x ∧ y <= c` is `(z ∨ c, ∼z ∨ c)` for some `z`.
pub fn check_ck(u: &Algebra) -> Result<CkCheck> {
    require(u, KleeneLevel::CKleene)?;
    let c = u.constant(sym::CENTER)?;
    let w = ck_violation(u.lattice(), u.unary(sym::NEG)?, c);
    Ok(CkCheck {
        holds: w.is_none(),
        witness: w,
    })
}
