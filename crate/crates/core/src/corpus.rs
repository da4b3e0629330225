//! Generated test corpus: every distributive lattice up to a size bound,
//! implications on each, tense structures on each, Kalman images, and
//! small subalgebras of those images.

use std::collections::BTreeSet;

use crate::algebra::{bin, sym, Algebra, OpTable, Profile};
use crate::dli::{heyting_residual, implication_axioms, ImplicationLevel};
use crate::error::Result;
use crate::kalman::kalman_k;
use crate::lattice::FiniteLattice;
use crate::nelson::check_tense_heyting;
use crate::tense::enumerate_tense_structures;

/// Bounds on the generated corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    /// Largest lattice size.
    pub max_size: usize,
    /// DLI⁺ implications taken per lattice, and separately DLI₁⁺ ones; the
    /// Heyting residual is always added.
    pub implications: usize,
    /// Tense structures taken per algebra, with and without `G(0) = H(0) = 0`.
    pub tense: usize,
    /// Kalman images up to this size are searched for subalgebras generated
    /// by two elements.
    pub subalgebra_source_max: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_size: 6,
            implications: 8,
            tense: 6,
            subalgebra_source_max: 9,
        }
    }
}

fn element_names(n: usize) -> Vec<String> {
    if n == 1 {
        return vec!["0".into()];
    }
    let mut names = vec!["0".to_string()];
    names.extend((0..n - 2).map(|i| ((b'a' + i as u8) as char).to_string()));
    names.push("1".into());
    names
}

/// Row-major order relation of `lat` with the middle elements permuted.
fn relabelled(lat: &FiniteLattice, perm: &[usize]) -> Vec<bool> {
    let n = lat.size();
    let full: Vec<usize> = std::iter::once(0)
        .chain(perm.iter().map(|&p| p + 1))
        .chain((n > 1).then_some(n - 1))
        .collect();
    let mut out = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = lat.leq(full[i], full[j]);
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of distributive lattices with
/// `1..=max_size` elements. Element `0` is the bottom and `n - 1` the top.
pub fn distributive_lattices(max_size: usize) -> Vec<FiniteLattice> {
    let mut out = Vec::new();
    for n in 1..=max_size {
        let names = element_names(n);
        let k = n.saturating_sub(2);
        // naturally labelled strict orders on the middle elements
        let slots: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let perms = permutations(k);
        let mut seen = BTreeSet::new();
        for mask in 0u32..(1 << slots.len()) {
            let mut leq = vec![false; n * n];
            for x in 0..n {
                leq[x * n + x] = true;
                leq[x * n + n - 1] = true;
                leq[x] = true;
            }
            for (b, &(i, j)) in slots.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    leq[(i + 1) * n + j + 1] = true;
                }
            }
            let Ok(lat) = FiniteLattice::from_leq(names.clone(), leq) else {
                continue;
            };
            let canon = perms.iter().map(|p| relabelled(&lat, p)).min().unwrap();
            if seen.insert(canon) {
                out.push(lat);
            }
        }
    }
    out
}

fn irreducibles(lat: &FiniteLattice) -> (Vec<usize>, Vec<usize>) {
    let n = lat.size();
    let covers = lat.covers();
    let lower = |x: usize| covers.iter().filter(|c| c.1 == x).count();
    let upper = |x: usize| covers.iter().filter(|c| c.0 == x).count();
    let j = (0..n).filter(|&x| x != lat.bot() && lower(x) == 1).collect();
    let m = (0..n).filter(|&x| x != lat.top() && upper(x) == 1).collect();
    (j, m)
}

/// The first `limit` DLI⁺ implications (DLI₁⁺ when `reflexive`).
///
/// An implication is fixed by its values `v(j, m) = j → m` on
/// join-irreducible `j` and meet-irreducible `m`, and
/// `x → y = ⋀{v(j, m) : j <= x, y <= m}`. The extension satisfies I1–I4
/// exactly when `v` is antitone in `j` and monotone in `m`, and I5 exactly
/// when `j ∧ v(j, m) <= m`; `x → x = 1` needs `v(j, m) = 1` for `j <= m`.
pub fn implications(lat: &FiniteLattice, reflexive: bool, limit: usize) -> Vec<Vec<usize>> {
    let n = lat.size();
    let (js, ms) = irreducibles(lat);
    let cells: Vec<(usize, usize)> = js.iter().flat_map(|&j| ms.iter().map(move |&m| (j, m))).collect();
    let extend = |v: &[usize]| -> Vec<usize> {
        let mut t = vec![lat.top(); n * n];
        for x in 0..n {
            for y in 0..n {
                for (&(j, m), &val) in cells.iter().zip(v) {
                    if lat.leq(j, x) && lat.leq(y, m) {
                        t[x * n + y] = lat.meet(t[x * n + y], val);
                    }
                }
            }
        }
        t
    };
    let allowed = |i: usize, v: &[usize], val: usize| -> bool {
        let (j, m) = cells[i];
        if !lat.leq(lat.meet(j, val), m) || (reflexive && lat.leq(j, m) && val != lat.top()) {
            return false;
        }
        cells[..i].iter().zip(v).all(|(&(j2, m2), &w)| {
            (!(lat.leq(j2, j) && lat.leq(m, m2)) || lat.leq(val, w))
                && (!(lat.leq(j, j2) && lat.leq(m2, m)) || lat.leq(w, val))
        })
    };
    let mut out = Vec::new();
    let mut v: Vec<usize> = Vec::with_capacity(cells.len());
    // iterative depth-first search over values in index order
    let mut next = vec![0usize; cells.len() + 1];
    while out.len() < limit {
        let i = v.len();
        if i == cells.len() {
            let t = extend(&v);
            debug_assert!(implication_axioms(lat, &t, ImplicationLevel::DliPlus, "").all_hold());
            out.push(t);
            if v.pop().is_none() {
                break;
            }
            continue;
        }
        match (next[i]..n).find(|&val| allowed(i, &v, val)) {
            Some(val) => {
                next[i] = val + 1;
                next[i + 1] = 0;
                v.push(val);
            }
            None => {
                if v.pop().is_none() {
                    break;
                }
            }
        }
    }
    out
}

/// The generated corpus.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub lattices: Vec<FiniteLattice>,
    /// The hand-written fixtures, then generated tense DLI⁺ algebras. Each
    /// is tagged with the strongest of `tdli`, `tdli0`, `tdli01`, `theyting`
    /// it satisfies.
    pub tdli: Vec<Algebra>,
    /// `K(L)` for every `tdli0` member.
    pub kalman: Vec<Algebra>,
    /// Proper subalgebras of small Kalman images, generated by two elements.
    pub subalgebras: Vec<Algebra>,
}

fn strongest_tag(a: &Algebra, t0: bool) -> Result<Profile> {
    let imp = a.binary(sym::IMP)?;
    let lat = a.lattice();
    if !t0 {
        return Ok(Profile::Tdli);
    }
    if implication_axioms(lat, imp, ImplicationLevel::Heyting, "").all_hold()
        && check_tense_heyting(a)?.all_hold()
    {
        return Ok(Profile::THeyting);
    }
    if implication_axioms(lat, imp, ImplicationLevel::Dli1Plus, "").all_hold() {
        return Ok(Profile::Tdli01);
    }
    Ok(Profile::Tdli0)
}

impl Corpus {
    pub fn build(cfg: &CorpusConfig) -> Result<Corpus> {
        let lattices = distributive_lattices(cfg.max_size);
        let mut tdli = crate::fixtures::all();
        for (li, lat) in lattices.iter().enumerate() {
            let mut imps: Vec<Vec<usize>> = Vec::new();
            if let Some(OpTable::Binary(h)) = heyting_residual(lat) {
                imps.push(h);
            }
            for t in implications(lat, false, cfg.implications)
                .into_iter()
                .chain(implications(lat, true, cfg.implications))
            {
                if !imps.contains(&t) {
                    imps.push(t);
                }
            }
            for (ii, imp) in imps.into_iter().enumerate() {
                let base = Algebra::new(format!("L{li}i{ii}"), lat.clone(), Profile::DliPlus)
                    .with_op(sym::IMP, OpTable::Binary(imp))?;
                let mut qs = enumerate_tense_structures(&base, true, Some(cfg.tense))?;
                let ident = crate::tense::TenseQuadruple::identity(lat.size());
                if !qs.contains(&ident) {
                    qs.push(ident);
                }
                qs.extend(
                    enumerate_tense_structures(&base, false, None)?
                        .into_iter()
                        .filter(|q| q.g[lat.bot()] != lat.bot() || q.h[lat.bot()] != lat.bot())
                        .take(cfg.tense),
                );
                for (qi, q) in qs.iter().enumerate() {
                    let mut a = q.attach(&base)?;
                    a.set_name(format!("L{li}i{ii}t{qi}"));
                    let t0 = q.g[lat.bot()] == lat.bot() && q.h[lat.bot()] == lat.bot();
                    a.set_profile(strongest_tag(&a, t0)?)?;
                    tdli.push(a);
                }
            }
        }
        let mut kalman = Vec::new();
        for a in tdli.iter().filter(|a| a.profile() != Profile::Tdli) {
            let mut k = kalman_k(a)?;
            if crate::check_profile(&k, Profile::Itkic1)?.all_hold() {
                k.set_profile(Profile::Itkic1)?;
            }
            kalman.push(k);
        }
        let mut subalgebras = Vec::new();
        for k in kalman.iter().filter(|k| k.size() <= cfg.subalgebra_source_max) {
            subalgebras.extend(two_generated_subalgebras(k)?);
        }
        Ok(Corpus {
            lattices,
            tdli,
            kalman,
            subalgebras,
        })
    }

    fn tagged(&self, allowed: &[Profile]) -> impl Iterator<Item = &Algebra> + '_ {
        let allowed = allowed.to_vec();
        self.tdli.iter().filter(move |a| allowed.contains(&a.profile()))
    }

    /// Members with `G(0) = H(0) = 0`.
    pub fn tdli0(&self) -> impl Iterator<Item = &Algebra> + '_ {
        self.tagged(&[Profile::Tdli0, Profile::Tdli01, Profile::THeyting])
    }

    /// Members with `G(0) = H(0) = 0` and `x → x = 1`.
    pub fn tdli01(&self) -> impl Iterator<Item = &Algebra> + '_ {
        self.tagged(&[Profile::Tdli01, Profile::THeyting])
    }

    /// Tense Heyting members.
    pub fn theyting(&self) -> impl Iterator<Item = &Algebra> + '_ {
        self.tagged(&[Profile::THeyting])
    }

    /// Kalman images and subalgebras: all satisfy `tkic`.
    pub fn tkic(&self) -> impl Iterator<Item = &Algebra> + '_ {
        self.kalman.iter().chain(&self.subalgebras)
    }

    /// The members of [`Corpus::tkic`] tagged `itkic1`.
    pub fn itkic1(&self) -> impl Iterator<Item = &Algebra> + '_ {
        self.tkic().filter(|u| u.profile() == Profile::Itkic1)
    }
}

/// Subalgebras of a `tkic` algebra generated by two elements, excluding the
/// whole algebra, deduplicated. Tagged `itkic1` when they satisfy it and
/// `tkic` otherwise.
pub fn two_generated_subalgebras(u: &Algebra) -> Result<Vec<Algebra>> {
    let n = u.size();
    let lat = u.lattice();
    let (neg, imp, g, h) = (
        u.unary(sym::NEG)?,
        u.binary(sym::IMP)?,
        u.unary(sym::G)?,
        u.unary(sym::H)?,
    );
    let c = u.constant(sym::CENTER)?;
    let close = |seed: &[usize]| -> Vec<bool> {
        let mut s = vec![false; n];
        for &x in seed.iter().chain(&[lat.bot(), lat.top(), c]) {
            s[x] = true;
        }
        loop {
            let mut grew = false;
            let members: Vec<usize> = (0..n).filter(|&x| s[x]).collect();
            let mut add = |x: usize, s: &mut Vec<bool>| {
                if !s[x] {
                    s[x] = true;
                    grew = true;
                }
            };
            for &x in &members {
                add(neg[x], &mut s);
                add(g[x], &mut s);
                add(h[x], &mut s);
                for &y in &members {
                    add(lat.meet(x, y), &mut s);
                    add(lat.join(x, y), &mut s);
                    add(bin(imp, n, x, y), &mut s);
                }
            }
            if !grew {
                return s;
            }
        }
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x..n {
            let s = close(&[x, y]);
            let members: Vec<usize> = (0..n).filter(|&i| s[i]).collect();
            if members.len() == n || !seen.insert(members.clone()) {
                continue;
            }
            let mut pos = vec![usize::MAX; n];
            for (i, &m) in members.iter().enumerate() {
                pos[m] = i;
            }
            let k = members.len();
            let sub_lat = lat.restrict(&members)?;
            let mut sub_imp = Vec::with_capacity(k * k);
            for &a in &members {
                for &b in &members {
                    sub_imp.push(pos[bin(imp, n, a, b)]);
                }
            }
            let un = |t: &[usize]| OpTable::Unary(members.iter().map(|&a| pos[t[a]]).collect());
            let mut sub = Algebra::new(
                format!("{}[{}]", u.name(), members.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(",")),
                sub_lat,
                Profile::Tkic,
            )
            .with_op(sym::NEG, un(neg))?
            .with_op(sym::G, un(g))?
            .with_op(sym::H, un(h))?
            .with_op(sym::CENTER, OpTable::Constant(pos[c]))?
            .with_op(sym::IMP, OpTable::Binary(sub_imp))?;
            if crate::check_profile(&sub, Profile::Itkic1)?.all_hold() {
                sub.set_profile(Profile::Itkic1)?;
            }
            out.push(sub);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts_by_size() {
        let all = distributive_lattices(6);
        let counts: Vec<usize> = (1..=6).map(|n| all.iter().filter(|l| l.size() == n).count()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 5]);
    }

    #[test]
    fn implications_on_b2() {
        let l = &distributive_lattices(2)[1];
        // 0 → 0 is forced to 1 by I3; 1 → 0 must be 0 by I5; 0 → 1, 1 → 1 = 1
        assert_eq!(implications(l, false, 10), vec![vec![1, 1, 0, 1]]);
        let one = &distributive_lattices(1)[0];
        assert_eq!(implications(one, false, 10), vec![vec![0]]);
    }

    #[test]
    fn small_corpus_is_tagged_consistently() {
        let cfg = CorpusConfig {
            max_size: 4,
            ..CorpusConfig::default()
        };
        let c = Corpus::build(&cfg).unwrap();
        for a in &c.tdli {
            assert!(crate::check_profile(a, a.profile()).unwrap().all_hold(), "{}", a.name());
        }
        for u in c.tkic() {
            assert!(crate::check_profile(u, u.profile()).unwrap().all_hold(), "{}", u.name());
        }
        assert!(c.theyting().count() > 0);
        assert!(c.tdli.iter().any(|a| a.profile() == Profile::Tdli));
    }
}
