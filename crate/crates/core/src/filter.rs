//! Tense 1-filters, (centered) tense deductive systems, and their
//! correspondences with congruences.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{bin, sym, Algebra, Profile};
use crate::congruence::{compatibility_violation, congruence_transport, Congruence, Transport};
use crate::error::{Error, Result};
use crate::kalman::{beta_map, center_c, center_embedding};
use crate::par;
use crate::profile::require_profile;
use crate::report::AxiomReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterKind {
    OneFilter,
    TenseOneFilter,
    TenseDs,
    CenteredTenseDs,
}

impl FilterKind {
    pub const ALL: [FilterKind; 4] = [
        FilterKind::OneFilter,
        FilterKind::TenseOneFilter,
        FilterKind::TenseDs,
        FilterKind::CenteredTenseDs,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FilterKind::OneFilter => "one-filter",
            FilterKind::TenseOneFilter => "tense-one-filter",
            FilterKind::TenseDs => "tense-ds",
            FilterKind::CenteredTenseDs => "centered-tense-ds",
        }
    }

    /// Profile an algebra must satisfy before subsets of this kind are
    /// meaningful.
    pub fn presumes(self) -> Profile {
        match self {
            FilterKind::OneFilter => Profile::Dli1Plus,
            FilterKind::TenseOneFilter => Profile::Tdli01,
            FilterKind::TenseDs | FilterKind::CenteredTenseDs => Profile::Itkic1,
        }
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FilterKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FilterKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| format!("unknown subset kind `{s}`"))
    }
}

/// A sorted set of element indices claimed to be of the given kind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SubsetWitness {
    pub members: Vec<usize>,
    pub kind: FilterKind,
}

impl SubsetWitness {
    pub fn new(mut members: Vec<usize>, kind: FilterKind) -> Self {
        members.sort_unstable();
        members.dedup();
        SubsetWitness { members, kind }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }
}

fn is_upset(a: &Algebra, s: &[bool]) -> bool {
    let lat = a.lattice();
    let n = a.size();
    (0..n).all(|x| !s[x] || (0..n).all(|y| !lat.leq(x, y) || s[y]))
}

/// Lattice filter satisfying `((a ∧ f) → b) → (a → b) ∈ S` for all `a, b`
/// and `f ∈ S`.
fn one_filter(a: &Algebra, s: &[bool]) -> Result<bool> {
    let lat = a.lattice();
    let n = a.size();
    let imp = a.binary(sym::IMP)?;
    let i = |x, y| bin(imp, n, x, y);
    if !s.iter().any(|&b| b) || !is_upset(a, s) {
        return Ok(false);
    }
    let meets = (0..n).all(|x| (0..n).all(|y| !(s[x] && s[y]) || s[lat.meet(x, y)]));
    let scheme = (0..n).filter(|&f| s[f]).all(|f| {
        (0..n).all(|x| (0..n).all(|y| s[i(i(lat.meet(x, f), y), i(x, y))]))
    });
    Ok(meets && scheme)
}

fn closed_under(a: &Algebra, s: &[bool], symbols: &[&str]) -> Result<bool> {
    for &sy in symbols {
        let t = a.unary(sy)?;
        if (0..a.size()).any(|x| s[x] && !s[t[x]]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (tD1)–(tD3) with `⇒`.
fn tense_ds(a: &Algebra, d: &[bool]) -> Result<bool> {
    let n = a.size();
    let imp = a.binary(sym::IMP)?;
    if !d[a.lattice().top()] {
        return Ok(false);
    }
    let mp = (0..n).all(|u| !d[u] || (0..n).all(|v| !d[bin(imp, n, u, v)] || d[v]));
    Ok(mp && closed_under(a, d, &[sym::G, sym::H])?)
}

/// Shared data for membership tests against one algebra.
struct Ctx<'a> {
    a: &'a Algebra,
    kind: FilterKind,
    /// Center algebra and its embedding, for the centered kind.
    center: Option<(Algebra, Vec<usize>)>,
}

impl<'a> Ctx<'a> {
    fn new(a: &'a Algebra, kind: FilterKind) -> Result<Self> {
        let center = match kind {
            FilterKind::CenteredTenseDs => Some((center_c(a)?, center_embedding(a)?)),
            _ => None,
        };
        Ok(Ctx { a, kind, center })
    }

    fn accepts(&self, s: &[bool]) -> Result<bool> {
        match self.kind {
            FilterKind::OneFilter => one_filter(self.a, s),
            FilterKind::TenseOneFilter => {
                Ok(one_filter(self.a, s)? && closed_under(self.a, s, &[sym::G, sym::H])?)
            }
            FilterKind::TenseDs => tense_ds(self.a, s),
            FilterKind::CenteredTenseDs => {
                if !tense_ds(self.a, s)? {
                    return Ok(false);
                }
                let (center, emb) = self.center.as_ref().expect("built for this kind");
                let sd: Vec<bool> = emb.iter().map(|&e| s[e]).collect();
                let ctd1 = one_filter(center, &sd)? && closed_under(center, &sd, &[sym::G, sym::H])?;
                Ok(ctd1 && ctd2(self.a, s)?)
            }
        }
    }
}

/// `∼u ⇒ c ∈ D` and `1 ⇒ (u ∨ c) ∈ D` imply `u ∈ D`.
fn ctd2(a: &Algebra, d: &[bool]) -> Result<bool> {
    let n = a.size();
    let lat = a.lattice();
    let (imp, neg, c) = (a.binary(sym::IMP)?, a.unary(sym::NEG)?, a.constant(sym::CENTER)?);
    Ok((0..n).all(|u| {
        let premise = d[bin(imp, n, neg[u], c)] && d[bin(imp, n, lat.top(), lat.join(u, c))];
        !premise || d[u]
    }))
}

/// Whether `members` is a subset of the given kind (no profile check).
pub fn is_subset_of_kind(a: &Algebra, members: &[usize], kind: FilterKind) -> Result<bool> {
    let w = SubsetWitness::new(members.to_vec(), kind);
    Ctx::new(a, kind)?.accepts(&w.mask(a.size()))
}

/// Every up-set of the lattice, as membership masks.
pub fn upsets(a: &Algebra) -> Vec<Vec<bool>> {
    let lat = a.lattice();
    let n = a.size();
    let above: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| y != x && lat.leq(x, y)).collect())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| above[x].len());
    let mut out = Vec::new();
    let mut mask = vec![false; n];
    fn go(i: usize, order: &[usize], above: &[Vec<usize>], mask: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if i == order.len() {
            out.push(mask.clone());
            return;
        }
        let x = order[i];
        go(i + 1, order, above, mask, out);
        if above[x].iter().all(|&y| mask[y]) {
            mask[x] = true;
            go(i + 1, order, above, mask, out);
            mask[x] = false;
        }
    }
    go(0, &order, &above, &mut mask, &mut out);
    out
}

fn sort_subsets(v: &mut [SubsetWitness]) {
    v.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then_with(|| a.members.cmp(&b.members)));
}

/// All subsets of the kind, by size then lexicographically. Candidates
/// are the up-sets of the lattice: every kind is increasing.
pub fn enumerate_filters(a: &Algebra, kind: FilterKind) -> Result<Vec<SubsetWitness>> {
    require_profile(a, kind.presumes())?;
    let ctx = Ctx::new(a, kind)?;
    let candidates = upsets(a);
    let mut out: Vec<SubsetWitness> = par::filter_map(&candidates, |m| match ctx.accepts(m) {
        Ok(true) => Some(Ok(m.clone())),
        Ok(false) => None,
        Err(e) => Some(Err(e)),
    })
    .into_iter()
    .map(|r| r.map(|m| SubsetWitness::new((0..m.len()).filter(|&i| m[i]).collect(), kind)))
    .collect::<Result<_>>()?;
    sort_subsets(&mut out);
    Ok(out)
}

fn require_kind(a: &Algebra, s: &SubsetWitness, kind: FilterKind) -> Result<()> {
    if s.members.iter().any(|&x| x >= a.size()) || !is_subset_of_kind(a, &s.members, kind)? {
        return Err(Error::PreconditionUnverified(format!(
            "{:?} is not a {kind} of `{}`",
            s.members,
            a.name()
        )));
    }
    Ok(())
}

/// Builds the relation `rel` as a congruence of `a`, or explains why not.
fn relation_as_congruence(a: &Algebra, rel: impl Fn(usize, usize) -> bool, what: &str) -> Result<Congruence> {
    let n = a.size();
    let theta = Congruence::from_keys((0..n).map(|x| (0..n).find(|&y| rel(x, y)).unwrap_or(x)));
    for x in 0..n {
        for y in 0..n {
            if rel(x, y) != theta.related(x, y) {
                return Err(Error::Counterexample(format!(
                    "{what} is not an equivalence at ({x},{y})"
                )));
            }
        }
    }
    if let Some(v) = compatibility_violation(a, &theta) {
        return Err(Error::Counterexample(format!(
            "{what} is not compatible with `{}` at {:?}",
            v.symbol, v.args
        )));
    }
    Ok(theta)
}

/// `Θ(S) = {(a,b) : a → b, b → a ∈ S}`.
pub fn theta_of_filter(l: &Algebra, s: &SubsetWitness) -> Result<Congruence> {
    require_profile(l, Profile::Tdli01)?;
    require_kind(l, s, FilterKind::TenseOneFilter)?;
    let n = l.size();
    let imp = l.binary(sym::IMP)?;
    let m = s.mask(n);
    relation_as_congruence(l, |a, b| m[bin(imp, n, a, b)] && m[bin(imp, n, b, a)], "Θ(S)")
}

/// `1/θ`.
pub fn one_class_filter(l: &Algebra, theta: &Congruence) -> Result<SubsetWitness> {
    require_profile(l, Profile::Tdli01)?;
    if theta.size() != l.size() || compatibility_violation(l, theta).is_some() {
        return Err(Error::PreconditionUnverified("input is not a congruence".into()));
    }
    let top = l.lattice().top();
    Ok(SubsetWitness::new(
        (0..l.size()).filter(|&a| theta.related(a, top)).collect(),
        FilterKind::TenseOneFilter,
    ))
}

/// `ε ∩ C(T)²` on the center's indices.
pub fn center_restriction(u: &Algebra, eps: &Congruence) -> Result<Congruence> {
    require_profile(u, Profile::Itkic1)?;
    if eps.size() != u.size() || compatibility_violation(u, eps).is_some() {
        return Err(Error::PreconditionUnverified("input is not a congruence".into()));
    }
    let emb = center_embedding(u)?;
    Ok(Congruence::from_keys(emb.iter().map(|&e| eps.labels()[e])))
}

/// `θ_S`: `u ⇒ (v ∨ c)`, `v ⇒ (u ∨ c)`, `∼u ⇒ (∼v ∨ c)`, `∼v ⇒ (∼u ∨ c)`
/// all in `S`, with `S` given on the center's indices. The result is
/// cross-checked against `Θ(S)` carried to `U` through `K(C(U))` and `β`.
pub fn theta_s_direct(u: &Algebra, s: &SubsetWitness) -> Result<Congruence> {
    require_profile(u, Profile::Itkic1)?;
    let center = center_c(u)?;
    require_kind(&center, s, FilterKind::TenseOneFilter)?;
    let emb = center_embedding(u)?;
    let n = u.size();
    let lat = u.lattice();
    let (imp, neg, c) = (u.binary(sym::IMP)?, u.unary(sym::NEG)?, u.constant(sym::CENTER)?);
    let mut in_s = vec![false; n];
    for &x in &s.members {
        in_s[emb[x]] = true;
    }
    let i = |x, y| in_s[bin(imp, n, x, y)];
    let direct = relation_as_congruence(
        u,
        |x, y| {
            i(x, lat.join(y, c))
                && i(y, lat.join(x, c))
                && i(neg[x], lat.join(neg[y], c))
                && i(neg[y], lat.join(neg[x], c))
        },
        "θ_S",
    )?;
    let composite = transport_composite(u, &center, s)?;
    if composite != direct {
        return Err(Error::Counterexample(format!(
            "θ_S {:?} differs from the transported Θ(S) {:?}",
            direct.labels(),
            composite.labels()
        )));
    }
    Ok(direct)
}

/// `Θ(S)` on `C(U)`, then `γ` on `K(C(U))`, then pulled back along `β`.
fn transport_composite(u: &Algebra, center: &Algebra, s: &SubsetWitness) -> Result<Congruence> {
    let theta = theta_of_filter(center, s)?;
    let gamma = congruence_transport(center, &theta, Transport::ToK)?;
    let beta = beta_map(u)?;
    Ok(Congruence::from_keys(beta.map.iter().map(|&b| gamma.labels()[b])))
}

/// `t(x, y, z) = ((x ∧ z) ⇒ y) ⇒ (x ⇒ y)`.
pub fn eval_t_term(u: &Algebra, x: usize, y: usize, z: usize) -> Result<usize> {
    let n = u.size();
    let imp = u.binary(sym::IMP)?;
    if [x, y, z].iter().any(|&e| e >= n) {
        return Err(Error::PreconditionUnverified(format!(
            "element index out of range for `{}`",
            u.name()
        )));
    }
    let i = |a, b| bin(imp, n, a, b);
    Ok(i(i(u.lattice().meet(x, z), y), i(x, y)))
}

/// `D_S = {u : ∼u ⇒ c, 1 ⇒ (u ∨ c) ∈ S}` for a tense 1-filter `S` of the
/// center (center indices).
pub fn ds_of_filter(u: &Algebra, s: &SubsetWitness) -> Result<SubsetWitness> {
    require_profile(u, Profile::Itkic1)?;
    let center = center_c(u)?;
    require_kind(&center, s, FilterKind::TenseOneFilter)?;
    let emb = center_embedding(u)?;
    let n = u.size();
    let lat = u.lattice();
    let (imp, neg, c) = (u.binary(sym::IMP)?, u.unary(sym::NEG)?, u.constant(sym::CENTER)?);
    let mut in_s = vec![false; n];
    for &x in &s.members {
        in_s[emb[x]] = true;
    }
    let d = SubsetWitness::new(
        (0..n)
            .filter(|&w| in_s[bin(imp, n, neg[w], c)] && in_s[bin(imp, n, lat.top(), lat.join(w, c))])
            .collect(),
        FilterKind::CenteredTenseDs,
    );
    if !is_subset_of_kind(u, &d.members, FilterKind::CenteredTenseDs)? {
        return Err(Error::Counterexample(format!(
            "D_S = {:?} is not a centered tense deductive system",
            d.members
        )));
    }
    Ok(d)
}

/// `S_D = D ∩ C(T)` on the center's indices.
pub fn filter_of_ds(u: &Algebra, d: &SubsetWitness) -> Result<SubsetWitness> {
    require_profile(u, Profile::Itkic1)?;
    require_kind(u, d, FilterKind::CenteredTenseDs)?;
    let emb = center_embedding(u)?;
    let s = SubsetWitness::new(
        (0..emb.len()).filter(|&i| d.contains(emb[i])).collect(),
        FilterKind::TenseOneFilter,
    );
    let center = center_c(u)?;
    if !is_subset_of_kind(&center, &s.members, FilterKind::TenseOneFilter)? {
        return Err(Error::Counterexample(format!(
            "S_D = {:?} is not a tense 1-filter of the center",
            s.members
        )));
    }
    Ok(s)
}

/// `S ↦ D_S` for a tense 1-filter of the center, `D ↦ S_D` for a centered
/// tense deductive system.
pub fn ds_filter_bijection(u: &Algebra, input: &SubsetWitness) -> Result<SubsetWitness> {
    match input.kind {
        FilterKind::TenseOneFilter => ds_of_filter(u, input),
        FilterKind::CenteredTenseDs => filter_of_ds(u, input),
        k => Err(Error::PreconditionUnverified(format!(
            "expected a tense-one-filter or centered-tense-ds, got {k}"
        ))),
    }
}

/// (tD4) `(u ∧ v) ∨ c ∈ D` and (tD5) `t(a, b, u ∨ c) ∈ D` for `u, v ∈ D`
/// and `a, b >= c`.
pub fn check_ds_closure(u: &Algebra, d: &SubsetWitness) -> Result<AxiomReport> {
    let n = u.size();
    let lat = u.lattice();
    let c = u.constant(sym::CENTER)?;
    let emb = center_embedding(u)?;
    let m = d.mask(n);
    let mut r = AxiomReport::new();
    let mut td4 = None;
    'outer: for &x in &d.members {
        for &y in &d.members {
            if !m[lat.join(lat.meet(x, y), c)] {
                td4 = Some(vec![x, y]);
                break 'outer;
            }
        }
    }
    r.record("tD4", td4);
    let mut td5 = None;
    'outer5: for &a in &emb {
        for &b in &emb {
            for &x in &d.members {
                if !m[eval_t_term(u, a, b, lat.join(x, c))?] {
                    td5 = Some(vec![a, b, x]);
                    break 'outer5;
                }
            }
        }
    }
    r.record("tD5", td5);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kalman::kalman_k;

    fn members(v: &[SubsetWitness]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.members.clone()).collect()
    }

    #[test]
    fn tense_one_filters_of_chain3_and_b2() {
        let f = enumerate_filters(&fixtures::chain3(), FilterKind::TenseOneFilter).unwrap();
        assert_eq!(members(&f), vec![vec![2], vec![1, 2], vec![0, 1, 2]]);
        let f = enumerate_filters(&fixtures::b2(), FilterKind::TenseOneFilter).unwrap();
        assert_eq!(members(&f), vec![vec![1], vec![0, 1]]);
    }

    #[test]
    fn centered_ds_of_k_b2() {
        let k = kalman_k(&fixtures::b2()).unwrap();
        let d = enumerate_filters(&k, FilterKind::CenteredTenseDs).unwrap();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn theta_on_b2_and_chain3() {
        let b2 = fixtures::b2();
        let s = |m: Vec<usize>| SubsetWitness::new(m, FilterKind::TenseOneFilter);
        assert_eq!(theta_of_filter(&b2, &s(vec![1])).unwrap(), Congruence::discrete(2));
        assert_eq!(theta_of_filter(&b2, &s(vec![0, 1])).unwrap(), Congruence::total(2));
        let c3 = fixtures::chain3();
        assert_eq!(
            theta_of_filter(&c3, &s(vec![1, 2])).unwrap(),
            Congruence::from_keys([0, 1, 1])
        );
        assert_eq!(
            one_class_filter(&c3, &Congruence::from_keys([0, 1, 1])).unwrap(),
            s(vec![1, 2])
        );
    }

    #[test]
    fn theta_s_on_k_b2() {
        let k = kalman_k(&fixtures::b2()).unwrap();
        let s = |m: Vec<usize>| SubsetWitness::new(m, FilterKind::TenseOneFilter);
        // center of K(B2) is {(0,0), (1,0)} with indices 0, 1
        assert_eq!(theta_s_direct(&k, &s(vec![0, 1])).unwrap(), Congruence::total(3));
        assert_eq!(theta_s_direct(&k, &s(vec![1])).unwrap(), Congruence::discrete(3));
    }

    #[test]
    fn t_term_on_k_b2() {
        let k = kalman_k(&fixtures::b2()).unwrap();
        let (c, one) = (0, 2);
        assert_eq!(eval_t_term(&k, one, one, one).unwrap(), one);
        assert_eq!(eval_t_term(&k, one, c, c).unwrap(), c);
    }

    #[test]
    fn ds_of_k_b2() {
        let k = kalman_k(&fixtures::b2()).unwrap();
        let s = |m: Vec<usize>| SubsetWitness::new(m, FilterKind::TenseOneFilter);
        assert_eq!(ds_of_filter(&k, &s(vec![1])).unwrap().members, vec![2]);
        assert_eq!(ds_of_filter(&k, &s(vec![0, 1])).unwrap().members, vec![0, 1, 2]);
        let d = ds_of_filter(&k, &s(vec![0, 1])).unwrap();
        assert_eq!(ds_filter_bijection(&k, &d).unwrap(), s(vec![0, 1]));
        assert!(check_ds_closure(&k, &d).unwrap().all_hold());
    }

    #[test]
    fn upsets_of_chain3() {
        assert_eq!(upsets(&fixtures::chain3()).len(), 4);
        assert_eq!(upsets(&fixtures::boolean_square()).len(), 6);
    }

    #[test]
    fn kind_ids_round_trip() {
        for k in FilterKind::ALL {
            assert_eq!(k.id().parse::<FilterKind>().unwrap(), k);
        }
    }
}
