//! The pair construction `K`, the center construction `C`, the unit maps
//! `α: L → C(K(L))` and `β: U → K(C(U))`, and lifting of morphisms.

use crate::algebra::{bin, sym, Algebra, OpTable, Profile};
use crate::dli::{implication_axioms, ImplicationLevel};
use crate::error::{Error, Result};
use crate::kleene::{check_ck, derived_diamonds, require_level, KleeneLevel};
use crate::lattice::FiniteLattice;
use crate::morphism::{certify, Morphism, Preservation};
use crate::report::forall3;
use crate::tense::{check_tense_axioms, TenseQuadruple};

const DLI_SYMBOLS: [&str; 5] = [sym::IMP, sym::G, sym::H, sym::F, sym::P];
const KI_SYMBOLS: [&str; 5] = [sym::IMP, sym::NEG, sym::CENTER, sym::G, sym::H];

fn symbols(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// The disjoint pairs `(a, b)` with `a ∧ b = 0`, in lexicographic order.
/// Element `i` of a Kalman image is `kalman_pairs(..)[i]`.
pub fn kalman_pairs(lat: &FiniteLattice) -> Vec<(usize, usize)> {
    let n = lat.size();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| lat.meet(a, b) == lat.bot())
        .collect()
}

struct PairIndex {
    n: usize,
    slots: Vec<usize>,
}

impl PairIndex {
    fn new(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut slots = vec![usize::MAX; n * n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            slots[a * n + b] = i;
        }
        PairIndex { n, slots }
    }

    fn get(&self, a: usize, b: usize) -> Option<usize> {
        let i = self.slots[a * self.n + b];
        (i != usize::MAX).then_some(i)
    }
}

fn pair_lookup(idx: &PairIndex, symbol: &str, a: usize, b: usize) -> Result<usize> {
    idx.get(a, b).ok_or_else(|| {
        Error::PreconditionUnverified(format!(
            "`{symbol}` produced a non-disjoint pair at ({a},{b})"
        ))
    })
}

fn pair_lattice(lat: &FiniteLattice, pairs: &[(usize, usize)]) -> Result<FiniteLattice> {
    let k = pairs.len();
    let names = pairs
        .iter()
        .map(|&(a, b)| format!("({},{})", lat.name(a), lat.name(b)))
        .collect();
    let mut leq = vec![false; k * k];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(x, y)) in pairs.iter().enumerate() {
            leq[i * k + j] = lat.leq(a, x) && lat.leq(y, b);
        }
    }
    Ok(FiniteLattice::from_leq(names, leq)?)
}

/// Lattice, negation, center and a pair implication built from `first`.
fn kalman_skeleton(
    name: String,
    lat: &FiniteLattice,
    profile: Profile,
) -> Result<(Algebra, Vec<(usize, usize)>, PairIndex)> {
    let pairs = kalman_pairs(lat);
    let idx = PairIndex::new(lat.size(), &pairs);
    let klat = pair_lattice(lat, &pairs)?;
    let neg: Vec<usize> = pairs
        .iter()
        .map(|&(a, b)| idx.get(b, a).expect("swap of a disjoint pair is disjoint"))
        .collect();
    let c = idx.get(lat.bot(), lat.bot()).expect("(0,0) is disjoint");
    let k = Algebra::new(name, klat, profile)
        .with_op(sym::NEG, OpTable::Unary(neg))?
        .with_op(sym::CENTER, OpTable::Constant(c))?;
    Ok((k, pairs, idx))
}

/// `(a,b) ⇒ (x,y) = ((a→x) ∧ (y→b), a ∧ y)`.
fn ki_implication(
    lat: &FiniteLattice,
    imp: &[usize],
    pairs: &[(usize, usize)],
    idx: &PairIndex,
) -> Result<Vec<usize>> {
    let n = lat.size();
    let mut t = Vec::with_capacity(pairs.len() * pairs.len());
    for &(a, b) in pairs {
        for &(x, y) in pairs {
            let first = lat.meet(bin(imp, n, a, x), bin(imp, n, y, b));
            t.push(pair_lookup(idx, sym::IMP, first, lat.meet(a, y))?);
        }
    }
    Ok(t)
}

/// `(a,b) ⇒ (d,e) = (a→d, a ∧ e)` for a Heyting `→`.
fn weak_implication(
    lat: &FiniteLattice,
    imp: &[usize],
    pairs: &[(usize, usize)],
    idx: &PairIndex,
) -> Result<Vec<usize>> {
    let n = lat.size();
    let mut t = Vec::with_capacity(pairs.len() * pairs.len());
    for &(a, _) in pairs {
        for &(d, e) in pairs {
            t.push(pair_lookup(idx, sym::IMP_FV, bin(imp, n, a, d), lat.meet(a, e))?);
        }
    }
    Ok(t)
}

fn is_residuated(lat: &FiniteLattice, imp: &[usize]) -> bool {
    let n = lat.size();
    forall3(n, |x, y, z| lat.leq(lat.meet(x, y), z) == lat.leq(x, bin(imp, n, y, z))).is_none()
}

pub(crate) fn require_tdli(l: &Algebra, with_t0: bool) -> Result<TenseQuadruple> {
    let imp = l.binary(sym::IMP)?;
    let base = implication_axioms(l.lattice(), imp, ImplicationLevel::DliPlus, "");
    let q = TenseQuadruple::from_algebra(l)?;
    let tense = check_tense_axioms(l, &q, with_t0)?;
    let failed: Vec<&str> = base
        .failures()
        .chain(tense.failures())
        .map(|o| o.id.as_str())
        .collect();
    if failed.is_empty() {
        Ok(q)
    } else {
        Err(Error::PreconditionUnverified(format!(
            "`{}` is not a tense DLI+{} algebra: {failed:?} fail",
            l.name(),
            if with_t0 { "_0" } else { "" }
        )))
    }
}

/// `K(L)`: the tense Kleene algebra with implication on disjoint pairs.
///
/// `G_K(a,b) = (G a, F b)` and `H_K(a,b) = (H a, P b)`. The result is tagged
/// `tkic` when `G(0) = H(0) = 0` and `tki` otherwise. When `→` is a Heyting
/// implication the weak implication is attached as `impfv`.
pub fn kalman_k(l: &Algebra) -> Result<Algebra> {
    let q = require_tdli(l, false)?;
    let lat = l.lattice();
    let imp = l.binary(sym::IMP)?;
    let centered = q.g[lat.bot()] == lat.bot() && q.h[lat.bot()] == lat.bot();
    let profile = if centered { Profile::Tkic } else { Profile::Tki };
    let (mut k, pairs, idx) = kalman_skeleton(format!("K({})", l.name()), lat, profile)?;
    k.set_op(sym::IMP, OpTable::Binary(ki_implication(lat, imp, &pairs, &idx)?))?;
    let lift = |first: &[usize], second: &[usize], symbol: &str| -> Result<Vec<usize>> {
        pairs
            .iter()
            .map(|&(a, b)| pair_lookup(&idx, symbol, first[a], second[b]))
            .collect()
    };
    k.set_op(sym::G, OpTable::Unary(lift(&q.g, &q.f, sym::G)?))?;
    k.set_op(sym::H, OpTable::Unary(lift(&q.h, &q.p, sym::H)?))?;
    if is_residuated(lat, imp) {
        k.set_op(sym::IMP_FV, OpTable::Binary(weak_implication(lat, imp, &pairs, &idx)?))?;
    }
    Ok(k)
}

/// `K(A)` for a Heyting algebra with tense operators, carrying the weak
/// implication as `imp` and the general pair implication as `impki`.
pub(crate) fn kalman_weak(a: &Algebra, q: &TenseQuadruple) -> Result<Algebra> {
    let lat = a.lattice();
    let imp = a.binary(sym::IMP)?;
    let (mut k, pairs, idx) =
        kalman_skeleton(format!("Kfv({})", a.name()), lat, Profile::CKleene)?;
    k.set_op(sym::IMP, OpTable::Binary(weak_implication(lat, imp, &pairs, &idx)?))?;
    k.set_op(sym::IMP_KI, OpTable::Binary(ki_implication(lat, imp, &pairs, &idx)?))?;
    let lift = |first: &[usize], second: &[usize], symbol: &str| -> Result<Vec<usize>> {
        pairs
            .iter()
            .map(|&(a, b)| pair_lookup(&idx, symbol, first[a], second[b]))
            .collect()
    };
    k.set_op(sym::G, OpTable::Unary(lift(&q.g, &q.f, sym::G)?))?;
    k.set_op(sym::H, OpTable::Unary(lift(&q.h, &q.p, sym::H)?))?;
    Ok(k)
}

/// Indices of the elements `x >= c`, in index order.
pub fn center_embedding(u: &Algebra) -> Result<Vec<usize>> {
    let c = u.constant(sym::CENTER)?;
    let lat = u.lattice();
    Ok((0..u.size()).filter(|&x| lat.leq(c, x)).collect())
}

/// `C(U)`: the elements above the center with `⇒`, `G`, `H` restricted and
/// `F`, `P` the restrictions of the derived `∼G∼`, `∼H∼`.
pub fn center_c(u: &Algebra) -> Result<Algebra> {
    require_level(u, KleeneLevel::Tkic)?;
    let emb = center_embedding(u)?;
    let n = u.size();
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in emb.iter().enumerate() {
        pos[x] = i;
    }
    let into = |symbol: &str, args: Vec<usize>, v: usize| -> Result<usize> {
        match pos[v] {
            usize::MAX => Err(Error::CenterNotClosed {
                symbol: symbol.to_string(),
                args,
            }),
            i => Ok(i),
        }
    };
    let lat = u.lattice().restrict(&emb)?;
    let imp = u.binary(sym::IMP)?;
    let mut cimp = Vec::with_capacity(emb.len() * emb.len());
    for &x in &emb {
        for &y in &emb {
            cimp.push(into(sym::IMP, vec![x, y], bin(imp, n, x, y))?);
        }
    }
    let (f, p) = derived_diamonds(u)?;
    let restrict = |symbol: &str, t: &[usize]| -> Result<Vec<usize>> {
        emb.iter().map(|&x| into(symbol, vec![x], t[x])).collect()
    };
    let g = restrict(sym::G, u.unary(sym::G)?)?;
    let h = restrict(sym::H, u.unary(sym::H)?)?;
    let f = restrict(sym::F, &f)?;
    let p = restrict(sym::P, &p)?;
    Algebra::new(format!("C({})", u.name()), lat, Profile::Tdli0)
        .with_op(sym::IMP, OpTable::Binary(cimp))?
        .with_op(sym::G, OpTable::Unary(g))?
        .with_op(sym::H, OpTable::Unary(h))?
        .with_op(sym::F, OpTable::Unary(f))?
        .with_op(sym::P, OpTable::Unary(p))
}

fn certified(f: Vec<usize>, a: &Algebra, b: &Algebra, list: &[&str], what: &str) -> Result<Morphism> {
    match certify(&f, a, b, &symbols(list))? {
        Preservation::Certified(m) => Ok(m),
        Preservation::Violated(v) => Err(Error::Counterexample(format!(
            "{what} fails to preserve `{}` at {:?}",
            v.symbol, v.args
        ))),
    }
}

/// `α_L(x) = (x, 0)` into `C(K(L))`, certified bijective.
pub fn alpha_map(l: &Algebra) -> Result<Morphism> {
    require_tdli(l, true)?;
    let k = kalman_k(l)?;
    let ck = center_c(&k)?;
    let lat = l.lattice();
    let pairs = kalman_pairs(lat);
    let emb = center_embedding(&k)?;
    let map = (0..l.size())
        .map(|x| {
            let kx = pairs.iter().position(|&p| p == (x, lat.bot())).expect("(x,0) is disjoint");
            emb.iter().position(|&e| e == kx).expect("(x,0) lies above (0,0)")
        })
        .collect();
    let m = certified(map, l, &ck, &DLI_SYMBOLS, "alpha")?;
    if !m.is_bijective() {
        return Err(Error::Counterexample(format!(
            "alpha on `{}` is not bijective",
            l.name()
        )));
    }
    Ok(m)
}

/// `β_U(x) = (x ∨ c, ∼x ∨ c)` into `K(C(U))`, certified injective; the
/// `surjective` flag records whether it is onto.
pub fn beta_map(u: &Algebra) -> Result<Morphism> {
    require_level(u, KleeneLevel::Tkic)?;
    let cu = center_c(u)?;
    let kc = kalman_k(&cu)?;
    let emb = center_embedding(u)?;
    let lat = u.lattice();
    let c = u.constant(sym::CENTER)?;
    let neg = u.unary(sym::NEG)?;
    let cpos = |x: usize| emb.iter().position(|&e| e == x).expect("joins with c lie above c");
    let idx = PairIndex::new(cu.size(), &kalman_pairs(cu.lattice()));
    let map = (0..u.size())
        .map(|x| {
            let (a, b) = (cpos(lat.join(x, c)), cpos(lat.join(neg[x], c)));
            pair_lookup(&idx, "beta", a, b)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = certified(map, u, &kc, &KI_SYMBOLS, "beta")?;
    if !m.injective {
        return Err(Error::Counterexample(format!(
            "beta on `{}` is not injective",
            u.name()
        )));
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functor {
    K,
    C,
}

/// `K(f)(a,b) = (f a, f b)` or `C(f)(x) = f(x)`, certified in the target
/// category.
pub fn lift_morphism(f: &Morphism, functor: Functor) -> Result<Morphism> {
    let (src, tgt) = (&f.source, &f.target);
    match functor {
        Functor::K => {
            require_tdli(src, true)?;
            require_tdli(tgt, true)?;
            certified(f.map.clone(), src, tgt, &DLI_SYMBOLS, "f")?;
            let (ks, kt) = (kalman_k(src)?, kalman_k(tgt)?);
            let idx = PairIndex::new(tgt.size(), &kalman_pairs(tgt.lattice()));
            let map = kalman_pairs(src.lattice())
                .into_iter()
                .map(|(a, b)| pair_lookup(&idx, "K(f)", f.map[a], f.map[b]))
                .collect::<Result<Vec<_>>>()?;
            certified(map, &ks, &kt, &KI_SYMBOLS, "K(f)")
        }
        Functor::C => {
            require_level(src, KleeneLevel::Tkic)?;
            require_level(tgt, KleeneLevel::Tkic)?;
            certified(f.map.clone(), src, tgt, &KI_SYMBOLS, "f")?;
            let (cs, ct) = (center_c(src)?, center_c(tgt)?);
            let (es, et) = (center_embedding(src)?, center_embedding(tgt)?);
            let map = es
                .iter()
                .map(|&x| {
                    et.iter().position(|&e| e == f.map[x]).ok_or_else(|| {
                        Error::CenterNotClosed {
                            symbol: "f".into(),
                            args: vec![x],
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            certified(map, &cs, &ct, &DLI_SYMBOLS, "C(f)")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivalenceSide {
    /// Tense DLI+ algebras with `G(0) = H(0) = 0`; checks `α`.
    Dli,
    /// Tense centered KI-algebras satisfying (CK); checks `β`.
    Ki,
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub side: EquivalenceSide,
    /// `α_X` or `β_X`.
    pub unit: Morphism,
    pub isomorphism: bool,
    /// Whether the naturality square commutes for the supplied morphism.
    pub naturality: Option<bool>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.isomorphism && self.naturality.unwrap_or(true)
    }
}

/// Round trip through `K` and `C` for `x`, plus the naturality square for
/// `square` (a morphism out of `x`) when given.
pub fn equivalence_report(
    x: &Algebra,
    side: EquivalenceSide,
    square: Option<&Morphism>,
) -> Result<EquivalenceReport> {
    if let Some(f) = square {
        if &f.source != x {
            return Err(Error::PreconditionUnverified(
                "naturality morphism must start at the checked algebra".into(),
            ));
        }
    }
    match side {
        EquivalenceSide::Dli => {
            let unit = alpha_map(x)?;
            let naturality = match square {
                None => None,
                Some(f) => {
                    // α_M ∘ f  vs  C(K(f)) ∘ α_L
                    let alpha_m = alpha_map(&f.target)?;
                    let kf = lift_morphism(f, Functor::K)?;
                    let ckf = lift_morphism(&kf, Functor::C)?;
                    Some((0..x.size()).all(|e| alpha_m.map[f.map[e]] == ckf.map[unit.map[e]]))
                }
            };
            Ok(EquivalenceReport {
                side,
                isomorphism: unit.is_bijective(),
                unit,
                naturality,
            })
        }
        EquivalenceSide::Ki => {
            require_level(x, KleeneLevel::Tkic)?;
            let ck = check_ck(x)?;
            if !ck.holds {
                return Err(Error::PreconditionUnverified(format!(
                    "`{}` violates (CK) at {:?}",
                    x.name(),
                    ck.witness
                )));
            }
            let unit = beta_map(x)?;
            let naturality = match square {
                None => None,
                Some(g) => {
                    // β_V ∘ g  vs  K(C(g)) ∘ β_U
                    let beta_v = beta_map(&g.target)?;
                    let cg = lift_morphism(g, Functor::C)?;
                    let kcg = lift_morphism(&cg, Functor::K)?;
                    Some((0..x.size()).all(|e| beta_v.map[g.map[e]] == kcg.map[unit.map[e]]))
                }
            };
            Ok(EquivalenceReport {
                side,
                isomorphism: unit.is_bijective(),
                unit,
                naturality,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(a: &Algebra) -> Vec<&str> {
        a.lattice().names().iter().map(String::as_str).collect()
    }

    #[test]
    fn k_of_b2_is_three_chain() {
        let k = kalman_k(&fixtures::b2()).unwrap();
        assert_eq!(names(&k), ["(0,0)", "(0,1)", "(1,0)"]);
        let l = k.lattice();
        assert_eq!(l.bot(), 1);
        assert_eq!(l.top(), 2);
        assert!(l.leq(1, 0) && l.leq(0, 2));
        assert_eq!(k.constant(sym::CENTER).unwrap(), 0);
        assert_eq!(k.profile(), Profile::Tkic);
    }

    #[test]
    fn k_of_chain3_is_five_chain() {
        let k = kalman_k(&fixtures::chain3()).unwrap();
        let l = k.lattice();
        let order = ["(0,1)", "(0,m)", "(0,0)", "(m,0)", "(1,0)"];
        for w in order.windows(2) {
            let (a, b) = (l.index_of(w[0]).unwrap(), l.index_of(w[1]).unwrap());
            assert!(l.leq(a, b) && a != b);
        }
        assert_eq!(k.size(), 5);
    }

    #[test]
    fn center_implies_zero_on_k_b2() {
        // c ⇒ 0 = ((0→0) ∧ (1→0), 0 ∧ 1) = (0,0) = c
        let k = kalman_k(&fixtures::b2()).unwrap();
        let imp = k.binary(sym::IMP).unwrap();
        let (c, bot) = (0, k.lattice().bot());
        assert_eq!(imp[c * 3 + bot], c);
    }

    #[test]
    fn center_of_k_b2() {
        let k = kalman_k(&fixtures::b2()).unwrap();
        let c = center_c(&k).unwrap();
        assert_eq!(names(&c), ["(0,0)", "(1,0)"]);
        assert!(crate::find_isomorphism(&c, &fixtures::b2()).unwrap().is_some());
    }

    #[test]
    fn center_of_kleene_chain_is_two_chain() {
        // the 3-element Kleene chain is K(B2) up to renaming
        let k = kalman_k(&fixtures::b2()).unwrap();
        assert_eq!(center_c(&k).unwrap().size(), 2);
    }

    #[test]
    fn alpha_on_b2_and_chain3() {
        let a = alpha_map(&fixtures::b2()).unwrap();
        assert_eq!(a.map, vec![0, 1]);
        assert_eq!(a.target.element_name(0), "(0,0)");
        assert_eq!(a.target.element_name(1), "(1,0)");
        let g = a.target.unary(sym::G).unwrap();
        assert_eq!(a.map[fixtures::b2().unary(sym::G).unwrap()[1]], g[a.map[1]]);

        let a3 = alpha_map(&fixtures::chain3()).unwrap();
        assert_eq!(a3.target.element_name(a3.map[1]), "(m,0)");
    }

    #[test]
    fn beta_on_k_b2() {
        let k = kalman_k(&fixtures::b2()).unwrap();
        let b = beta_map(&k).unwrap();
        assert!(b.injective && b.surjective);
        // β(c) is the center of K(C(U)), β(1) = (1, c)
        assert_eq!(b.target.element_name(b.map[0]), "((0,0),(0,0))");
        assert_eq!(b.target.element_name(b.map[2]), "((1,0),(0,0))");
        let kc = b.target.constant(sym::CENTER).unwrap();
        assert_eq!(b.map[0], kc);
    }

    #[test]
    fn lifting_identities() {
        let b2 = fixtures::b2();
        let id = certify(&[0, 1], &b2, &b2, &symbols(&DLI_SYMBOLS))
            .unwrap()
            .certified()
            .unwrap();
        let kid = lift_morphism(&id, Functor::K).unwrap();
        assert_eq!(kid.map, vec![0, 1, 2]);
        let cid = lift_morphism(&kid, Functor::C).unwrap();
        assert_eq!(cid.map, vec![0, 1]);
    }

    #[test]
    fn lifting_embedding_b2_into_chain3() {
        let (b2, c3) = (fixtures::b2(), fixtures::chain3());
        let f = certify(&[0, 2], &b2, &c3, &symbols(&DLI_SYMBOLS))
            .unwrap()
            .certified()
            .unwrap();
        let kf = lift_morphism(&f, Functor::K).unwrap();
        let src = kalman_pairs(b2.lattice());
        let tgt = kalman_pairs(c3.lattice());
        for (i, &(a, b)) in src.iter().enumerate() {
            assert_eq!(tgt[kf.map[i]], (f.map[a], f.map[b]));
        }
        assert!(kf.injective && !kf.surjective);
    }

    #[test]
    fn equivalence_reports() {
        let b2 = fixtures::b2();
        assert!(equivalence_report(&b2, EquivalenceSide::Dli, None).unwrap().passed());
        let k = kalman_k(&b2).unwrap();
        assert!(equivalence_report(&k, EquivalenceSide::Ki, None).unwrap().passed());
        assert!(equivalence_report(&fixtures::chain3(), EquivalenceSide::Dli, None)
            .unwrap()
            .passed());
    }

    #[test]
    fn naturality_square_for_embedding() {
        let (b2, c3) = (fixtures::b2(), fixtures::chain3());
        let f = certify(&[0, 2], &b2, &c3, &symbols(&DLI_SYMBOLS))
            .unwrap()
            .certified()
            .unwrap();
        let r = equivalence_report(&b2, EquivalenceSide::Dli, Some(&f)).unwrap();
        assert_eq!(r.naturality, Some(true));
        let kf = lift_morphism(&f, Functor::K).unwrap();
        let r = equivalence_report(&kf.source, EquivalenceSide::Ki, Some(&kf)).unwrap();
        assert_eq!(r.naturality, Some(true));
    }

    #[test]
    fn kalman_requires_tense_dli_plus() {
        let mut b2 = fixtures::b2();
        b2.set_op(sym::IMP, OpTable::Binary(vec![1, 1, 1, 1])).unwrap();
        assert!(matches!(kalman_k(&b2), Err(Error::PreconditionUnverified(_))));
    }
}
