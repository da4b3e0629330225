//! Congruences: generation, enumeration, and transport along `K`.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use serde::Serialize;

use crate::algebra::{Algebra, OpTable, Profile};
use crate::error::{Error, Result};
use crate::kalman::{kalman_k, kalman_pairs};
use crate::morphism::Violation;
use crate::par;
use crate::profile::require_profile;

/// An equivalence on element indices stored as canonical block labels:
/// blocks are numbered in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Congruence {
    labels: Vec<usize>,
}

impl Congruence {
    /// Groups indices with equal keys.
    pub fn from_keys<K: Eq + Hash>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut seen = HashMap::new();
        let labels = keys
            .into_iter()
            .map(|k| {
                let next = seen.len();
                *seen.entry(k).or_insert(next)
            })
            .collect();
        Congruence { labels }
    }

    pub fn discrete(n: usize) -> Self {
        Congruence {
            labels: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence { labels: vec![0; n] }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| !self.related(a, b) || other.related(a, b)))
    }

    /// The equivalence generated by the union.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.size();
        let mut uf = UnionFind::new(n);
        for c in [self, other] {
            let mut first = vec![usize::MAX; n];
            for (i, &l) in c.labels.iter().enumerate() {
                if first[l] == usize::MAX {
                    first[l] = i;
                } else {
                    uf.union(first[l], i);
                }
            }
        }
        uf.congruence()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// `true` when two distinct classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    fn congruence(&mut self) -> Congruence {
        let n = self.parent.len();
        Congruence::from_keys((0..n).map(|x| self.find(x)))
    }
}

/// Operations a congruence must respect: the lattice plus the symbols the
/// declared profile requires. Extra tables (e.g. `impfv`) are ignored.
fn signature_ops(a: &Algebra) -> Vec<(String, OpTable)> {
    let lat = a.lattice();
    let mut ops = vec![
        ("meet".to_string(), OpTable::Binary(lat.meet_table().to_vec())),
        ("join".to_string(), OpTable::Binary(lat.join_table().to_vec())),
    ];
    for s in a.profile().required_symbols() {
        if let Some(t) = a.op(s) {
            if t.arity() > 0 {
                ops.push((s.to_string(), t.clone()));
            }
        }
    }
    ops
}

/// First operation and argument tuple where `theta` fails to be compatible,
/// or `None` for a congruence.
pub fn compatibility_violation(a: &Algebra, theta: &Congruence) -> Option<Violation> {
    let n = a.size();
    assert_eq!(theta.size(), n);
    for (s, t) in signature_ops(a) {
        for x in 0..n {
            for y in x + 1..n {
                if !theta.related(x, y) {
                    continue;
                }
                match &t {
                    OpTable::Unary(u) => {
                        if !theta.related(u[x], u[y]) {
                            return Some(Violation { symbol: s, args: vec![x, y] });
                        }
                    }
                    OpTable::Binary(b) => {
                        for z in 0..n {
                            if !theta.related(b[x * n + z], b[y * n + z])
                                || !theta.related(b[z * n + x], b[z * n + y])
                            {
                                return Some(Violation {
                                    symbol: s,
                                    args: vec![x, y, z],
                                });
                            }
                        }
                    }
                    OpTable::Constant(_) => {}
                }
            }
        }
    }
    None
}

pub fn is_congruence(a: &Algebra, theta: &Congruence) -> bool {
    theta.size() == a.size() && compatibility_violation(a, theta).is_none()
}

/// `Cg(x, y)`, by closing the merged pair under one-step translations.
pub fn principal_congruence(a: &Algebra, x: usize, y: usize) -> Congruence {
    let n = a.size();
    let ops = signature_ops(a);
    let mut uf = UnionFind::new(n);
    let mut queue = Vec::new();
    if uf.union(x, y) {
        queue.push((x, y));
    }
    while let Some((p, q)) = queue.pop() {
        for (_, t) in &ops {
            let mut push = |u: usize, v: usize, uf: &mut UnionFind| {
                if uf.union(u, v) {
                    queue.push((u, v));
                }
            };
            match t {
                OpTable::Unary(u) => push(u[p], u[q], &mut uf),
                OpTable::Binary(b) => {
                    for z in 0..n {
                        push(b[p * n + z], b[q * n + z], &mut uf);
                        push(b[z * n + p], b[z * n + q], &mut uf);
                    }
                }
                OpTable::Constant(_) => {}
            }
        }
    }
    uf.congruence()
}

/// Ordering used for congruence listings: finest first, then by labels.
pub fn congruence_order(a: &Congruence, b: &Congruence) -> std::cmp::Ordering {
    b.block_count()
        .cmp(&a.block_count())
        .then_with(|| a.labels.cmp(&b.labels))
}

/// All congruences, as joins of principal congruences, in
/// [`congruence_order`].
pub fn enumerate_congruences(a: &Algebra) -> Vec<Congruence> {
    let n = a.size();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let principals: BTreeSet<Congruence> = par::map(&pairs, |&(x, y)| principal_congruence(a, x, y))
        .into_iter()
        .collect();
    let mut all: BTreeSet<Congruence> = principals.clone();
    all.insert(Congruence::discrete(n));
    let mut frontier: Vec<Congruence> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principals {
                let j = c.join(p);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Congruence> = all.into_iter().collect();
    out.sort_by(congruence_order);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transport {
    /// `θ ↦ γ_θ` on `K(L)`.
    ToK,
    /// `γ ↦ θ^γ` back on `L`.
    FromK,
}

/// Moves a congruence between `L` and `K(L)`.
pub fn congruence_transport(l: &Algebra, x: &Congruence, direction: Transport) -> Result<Congruence> {
    require_profile(l, Profile::Tdli0)?;
    let k = kalman_k(l)?;
    let pairs = kalman_pairs(l.lattice());
    let (home, what) = match direction {
        Transport::ToK => (l, "L"),
        Transport::FromK => (&k, "K(L)"),
    };
    if !is_congruence(home, x) {
        return Err(Error::PreconditionUnverified(format!(
            "input is not a congruence of {what}"
        )));
    }
    Ok(match direction {
        Transport::ToK => Congruence::from_keys(
            pairs.iter().map(|&(a, b)| (x.labels[a], x.labels[b])),
        ),
        Transport::FromK => {
            let bot = l.lattice().bot();
            Congruence::from_keys((0..l.size()).map(|a| {
                let i = pairs.iter().position(|&p| p == (a, bot)).expect("(a,0) is disjoint");
                x.labels[i]
            }))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn canonical_labels() {
        let c = Congruence::from_keys([7, 3, 7, 1]);
        assert_eq!(c.labels(), [0, 1, 0, 2]);
        assert_eq!(c.blocks(), vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn joins_are_transitive() {
        let a = Congruence::from_keys([0, 0, 1, 2]);
        let b = Congruence::from_keys([0, 1, 1, 2]);
        assert_eq!(a.join(&b).labels(), [0, 0, 0, 1]);
        assert!(a.refines(&a.join(&b)));
    }

    #[test]
    fn b2_has_two_congruences() {
        let cs = enumerate_congruences(&fixtures::b2());
        assert_eq!(cs, vec![Congruence::discrete(2), Congruence::total(2)]);
    }

    #[test]
    fn chain3_has_three() {
        let cs = enumerate_congruences(&fixtures::chain3());
        let labels: Vec<&[usize]> = cs.iter().map(|c| c.labels()).collect();
        assert_eq!(labels, [&[0, 1, 2][..], &[0, 1, 1], &[0, 0, 0]]);
    }

    #[test]
    fn k_chain3_has_three() {
        let k = kalman_k(&fixtures::chain3()).unwrap();
        assert_eq!(enumerate_congruences(&k).len(), 3);
    }

    #[test]
    fn transport_round_trip_on_chain3() {
        let l = fixtures::chain3();
        let theta = Congruence::from_keys([0, 1, 1]);
        let g = congruence_transport(&l, &theta, Transport::ToK).unwrap();
        let pairs = kalman_pairs(l.lattice());
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(x, y)) in pairs.iter().enumerate() {
                assert_eq!(g.related(i, j), theta.related(a, x) && theta.related(b, y));
            }
        }
        assert_eq!(congruence_transport(&l, &g, Transport::FromK).unwrap(), theta);
    }

    #[test]
    fn transport_extremes() {
        let l = fixtures::b2();
        let to_k = |c| congruence_transport(&l, &c, Transport::ToK).unwrap();
        assert_eq!(to_k(Congruence::discrete(2)), Congruence::discrete(3));
        assert_eq!(to_k(Congruence::total(2)), Congruence::total(3));
    }

    #[test]
    fn transport_rejects_non_congruence() {
        // {0,m} is not a congruence class of the Heyting 3-chain
        let l = fixtures::chain3();
        let bad = Congruence::from_keys([0, 0, 1]);
        assert!(compatibility_violation(&l, &bad).is_some());
        assert!(congruence_transport(&l, &bad, Transport::ToK).is_err());
    }
}
