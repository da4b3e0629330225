//! Finite bounded distributive lattices stored as index tables.
//!
//! Elements are the indices `0..n` in declaration order. Names are kept for
//! presentation only; every table is index based. A [`FiniteLattice`] is only
//! ever constructed through [`FiniteLattice::from_leq`] (or [`build_lattice`]),
//! which verifies the partial order, boundedness, existence of all binary
//! meets and joins, and distributivity.

use std::collections::HashMap;

use thiserror::Error;

/// Reasons an order relation fails to describe a bounded distributive lattice.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("element `{0}` declared twice")]
    DuplicateName(String),
    #[error("unknown element `{0}`")]
    UnknownName(String),
    #[error("not a poset: `{a}` <= `{b}` and `{b}` <= `{a}` with `{a}` != `{b}`")]
    NotAPoset { a: String, b: String },
    #[error("not bounded: no {which} element (witnesses `{a}`, `{b}`)")]
    NotBounded {
        which: &'static str,
        a: String,
        b: String,
    },
    #[error("not a lattice: `{a}` and `{b}` have no {which}")]
    NotALattice {
        which: &'static str,
        a: String,
        b: String,
    },
    #[error("not distributive at (`{a}`, `{b}`, `{c}`): a meet (b join c) != (a meet b) join (a meet c)")]
    NotDistributive { a: String, b: String, c: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bot: usize,
    top: usize,
}

/// Builds a lattice from element names and a generating order relation.
///
/// `order_pairs` need not be a cover relation: the reflexive-transitive
/// closure is always taken.
pub fn build_lattice<S: AsRef<str>>(
    names: &[S],
    order_pairs: &[(S, S)],
) -> Result<FiniteLattice, LatticeError> {
    let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(LatticeError::DuplicateName(name.clone()));
        }
    }
    let n = names.len();
    let mut leq = vec![false; n * n];
    for (a, b) in order_pairs {
        let resolve = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| LatticeError::UnknownName(s.as_ref().to_string()))
        };
        let (i, j) = (resolve(a)?, resolve(b)?);
        leq[i * n + j] = true;
    }
    FiniteLattice::from_leq(names, leq)
}

impl FiniteLattice {
    /// Builds a lattice from a row-major `n x n` relation, closing it
    /// reflexively and transitively first.
    pub fn from_leq(names: Vec<String>, mut leq: Vec<bool>) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        assert_eq!(leq.len(), n * n, "order relation must be n x n");
        for i in 0..n {
            leq[i * n + i] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::NotAPoset {
                        a: names[i].clone(),
                        b: names[j].clone(),
                    });
                }
            }
        }

        let bot = (0..n).find(|&b| (0..n).all(|x| leq[b * n + x]));
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x * n + t]));
        let (bot, top) = match (bot, top) {
            (Some(b), Some(t)) => (b, t),
            (None, _) => {
                let (a, b) = two_extremal(&leq, n, false);
                return Err(LatticeError::NotBounded {
                    which: "bottom",
                    a: names[a].clone(),
                    b: names[b].clone(),
                });
            }
            (_, None) => {
                let (a, b) = two_extremal(&leq, n, true);
                return Err(LatticeError::NotBounded {
                    which: "top",
                    a: names[a].clone(),
                    b: names[b].clone(),
                });
            }
        };

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let glb = (0..n).filter(|&x| leq[x * n + i] && leq[x * n + j]).find(|&x| {
                    (0..n).all(|y| !(leq[y * n + i] && leq[y * n + j]) || leq[y * n + x])
                });
                let lub = (0..n).filter(|&x| leq[i * n + x] && leq[j * n + x]).find(|&x| {
                    (0..n).all(|y| !(leq[i * n + y] && leq[j * n + y]) || leq[x * n + y])
                });
                match (glb, lub) {
                    (Some(m), Some(u)) => {
                        meet[i * n + j] = m;
                        join[i * n + j] = u;
                    }
                    (None, _) | (_, None) => {
                        return Err(LatticeError::NotALattice {
                            which: if glb.is_none() { "meet" } else { "join" },
                            a: names[i].clone(),
                            b: names[j].clone(),
                        })
                    }
                }
            }
        }

        let lattice = FiniteLattice {
            names,
            leq,
            meet,
            join,
            bot,
            top,
        };
        if let Some((a, b, c)) = lattice.distributivity_violation() {
            return Err(LatticeError::NotDistributive {
                a: lattice.names[a].clone(),
                b: lattice.names[b].clone(),
                c: lattice.names[c].clone(),
            });
        }
        Ok(lattice)
    }

    fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.size();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet_table(&self) -> &[usize] {
        &self.meet
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    /// Pairs `(a, b)` with `a < b` and nothing strictly between, in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                let between = (0..n).any(|x| x != a && x != b && self.leq(a, x) && self.leq(x, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The sub-poset on `members` (kept in the given order), validated as a
    /// lattice in its own right.
    pub fn restrict(&self, members: &[usize]) -> Result<FiniteLattice, LatticeError> {
        let k = members.len();
        let names = members.iter().map(|&i| self.names[i].clone()).collect();
        let mut leq = vec![false; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                leq[i * k + j] = self.leq(a, b);
            }
        }
        FiniteLattice::from_leq(names, leq)
    }

    /// Copy of this lattice with different presentation names.
    pub fn renamed(&self, names: Vec<String>) -> FiniteLattice {
        assert_eq!(names.len(), self.size());
        FiniteLattice {
            names,
            ..self.clone()
        }
    }
}

// Two distinct minimal (or maximal) elements of a poset without a bottom (top).
fn two_extremal(leq: &[bool], n: usize, maximal: bool) -> (usize, usize) {
    let above = |a: usize, b: usize| if maximal { leq[a * n + b] } else { leq[b * n + a] };
    let extremal: Vec<usize> = (0..n)
        .filter(|&x| (0..n).all(|y| y == x || !above(x, y)))
        .collect();
    (extremal[0], *extremal.get(1).unwrap_or(&extremal[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chain() {
        let l = build_lattice(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!((l.bot(), l.top()), (0, 1));
        assert_eq!(l.meet(0, 1), 0);
        assert_eq!(l.join(0, 1), 1);
    }

    #[test]
    fn three_chain_meet_is_min() {
        let l = build_lattice(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(l.meet(a, b), a.min(b));
                assert_eq!(l.join(a, b), a.max(b));
            }
        }
        assert!(l.leq(0, 2), "transitive closure applied");
    }

    #[test]
    fn diamond_m3_is_not_distributive() {
        let names = ["0", "a", "b", "c", "1"];
        let pairs = [
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ];
        let err = build_lattice(&names, &pairs).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotDistributive {
                a: "a".into(),
                b: "b".into(),
                c: "c".into()
            }
        );
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            build_lattice::<&str>(&[], &[]).unwrap_err(),
            LatticeError::Empty
        );
        assert!(matches!(
            build_lattice(&["a", "a"], &[]).unwrap_err(),
            LatticeError::DuplicateName(n) if n == "a"
        ));
        assert!(matches!(
            build_lattice(&["a", "b"], &[("a", "q")]).unwrap_err(),
            LatticeError::UnknownName(n) if n == "q"
        ));
        assert!(matches!(
            build_lattice(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err(),
            LatticeError::NotAPoset { .. }
        ));
        // two incomparable atoms, no bottom
        assert!(matches!(
            build_lattice(&["a", "b", "1"], &[("a", "1"), ("b", "1")]).unwrap_err(),
            LatticeError::NotBounded { which: "bottom", .. }
        ));
        // bounded but a, b have two minimal upper bounds
        let names = ["0", "a", "b", "x", "y", "1"];
        let pairs = [
            ("0", "a"),
            ("0", "b"),
            ("a", "x"),
            ("b", "x"),
            ("a", "y"),
            ("b", "y"),
            ("x", "1"),
            ("y", "1"),
        ];
        assert!(matches!(
            build_lattice(&names, &pairs).unwrap_err(),
            LatticeError::NotALattice { .. }
        ));
    }

    #[test]
    fn covers_of_square() {
        let l = build_lattice(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"), ("0", "1")],
        )
        .unwrap();
        assert_eq!(l.covers(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
