//! Axiom reports and the exhaustive quantifier helpers that fill them.

use serde::Serialize;

use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub id: String,
    pub holds: bool,
    /// Argument tuple violating the axiom; `None` when it holds.
    pub witness: Option<Vec<usize>>,
}

/// Ordered list of checked axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `id` as holding iff `witness` is `None`.
    pub fn record(&mut self, id: impl Into<String>, witness: Option<Vec<usize>>) {
        self.outcomes.push(AxiomOutcome {
            id: id.into(),
            holds: witness.is_none(),
            witness,
        });
    }

    /// Records a failure that has no argument tuple (e.g. a missing element).
    pub fn record_bool(&mut self, id: impl Into<String>, holds: bool) {
        self.outcomes.push(AxiomOutcome {
            id: id.into(),
            holds,
            witness: if holds { None } else { Some(Vec::new()) },
        });
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.outcomes.extend(other.outcomes);
    }

    pub fn all_hold(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    pub fn outcomes(&self) -> &[AxiomOutcome] {
        &self.outcomes
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome> {
        self.outcomes.iter().filter(|o| !o.holds)
    }

    pub fn get(&self, id: &str) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.id == id)
    }

    pub fn holds(&self, id: &str) -> Option<bool> {
        self.get(id).map(|o| o.holds)
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn ids(&self) -> Vec<&str> {
        self.outcomes.iter().map(|o| o.id.as_str()).collect()
    }
}

pub(crate) fn forall1<P>(n: usize, pred: P) -> Option<Vec<usize>>
where
    P: Fn(usize) -> bool,
{
    (0..n).find(|&x| !pred(x)).map(|x| vec![x])
}

pub(crate) fn forall2<P>(n: usize, pred: P) -> Option<Vec<usize>>
where
    P: Fn(usize, usize) -> bool + Sync + Send,
{
    par::find_map_first(n, |x| (0..n).find(|&y| !pred(x, y)).map(|y| vec![x, y]))
}

pub(crate) fn forall3<P>(n: usize, pred: P) -> Option<Vec<usize>>
where
    P: Fn(usize, usize, usize) -> bool + Sync + Send,
{
    par::find_map_first(n, |x| {
        for y in 0..n {
            for z in 0..n {
                if !pred(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
        None
    })
}
