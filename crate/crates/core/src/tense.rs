//! Tense operators `G, H, F, P` on distributive lattices with implication.

use crate::adjoint::{adjoint_of, Side};
use crate::algebra::{bin, sym, Algebra, OpTable};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::par;
use crate::report::{forall1, forall2, AxiomReport};

/// Four unary tables over one lattice. Ordered lexicographically by
/// `(G, H, F, P)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TenseQuadruple {
    pub g: Vec<usize>,
    pub h: Vec<usize>,
    pub f: Vec<usize>,
    pub p: Vec<usize>,
}

impl TenseQuadruple {
    pub fn identity(n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        TenseQuadruple {
            g: id.clone(),
            h: id.clone(),
            f: id.clone(),
            p: id,
        }
    }

    pub fn from_algebra(a: &Algebra) -> Result<Self> {
        Ok(TenseQuadruple {
            g: a.unary(sym::G)?.to_vec(),
            h: a.unary(sym::H)?.to_vec(),
            f: a.unary(sym::F)?.to_vec(),
            p: a.unary(sym::P)?.to_vec(),
        })
    }

    /// Copy of `a` carrying these four operators.
    pub fn attach(&self, a: &Algebra) -> Result<Algebra> {
        a.clone()
            .with_op(sym::G, OpTable::Unary(self.g.clone()))?
            .with_op(sym::H, OpTable::Unary(self.h.clone()))?
            .with_op(sym::F, OpTable::Unary(self.f.clone()))?
            .with_op(sym::P, OpTable::Unary(self.p.clone()))
    }

    pub(crate) fn view<'a>(&'a self, lat: &'a FiniteLattice) -> TenseView<'a> {
        TenseView {
            lat,
            g: &self.g,
            h: &self.h,
            f: &self.f,
            p: &self.p,
        }
    }
}

/// Borrowed operators plus the lattice laws that relate them. Shared by the
/// DLI side (where all four are primitive) and the Kleene side (where `F`
/// and `P` are derived through the negation).
pub(crate) struct TenseView<'a> {
    pub lat: &'a FiniteLattice,
    pub g: &'a [usize],
    pub h: &'a [usize],
    pub f: &'a [usize],
    pub p: &'a [usize],
}

type Witness = Option<Vec<usize>>;

impl TenseView<'_> {
    fn n(&self) -> usize {
        self.lat.size()
    }

    pub fn adjunction_pg(&self) -> Witness {
        let l = self.lat;
        forall2(self.n(), |x, y| l.leq(self.p[x], y) == l.leq(x, self.g[y]))
    }

    pub fn adjunction_fh(&self) -> Witness {
        let l = self.lat;
        forall2(self.n(), |x, y| l.leq(self.f[x], y) == l.leq(x, self.h[y]))
    }

    /// G(x) ∧ F(y) <= F(x ∧ y), and the past-tense mirror.
    pub fn meet_mix(&self) -> Witness {
        let l = self.lat;
        forall2(self.n(), |x, y| {
            l.leq(l.meet(self.g[x], self.f[y]), self.f[l.meet(x, y)])
                && l.leq(l.meet(self.h[x], self.p[y]), self.p[l.meet(x, y)])
        })
    }

    /// G(x ∨ y) <= G(x) ∨ F(y), and the past-tense mirror.
    pub fn join_mix(&self) -> Witness {
        let l = self.lat;
        forall2(self.n(), |x, y| {
            l.leq(self.g[l.join(x, y)], l.join(self.g[x], self.f[y]))
                && l.leq(self.h[l.join(x, y)], l.join(self.h[x], self.p[y]))
        })
    }

    /// G(x -> y) <= G(x) -> G(y), and for H.
    pub fn box_k(&self, imp: &[usize]) -> Witness {
        let (l, n) = (self.lat, self.n());
        let i = |a, b| bin(imp, n, a, b);
        forall2(n, |x, y| {
            l.leq(self.g[i(x, y)], i(self.g[x], self.g[y]))
                && l.leq(self.h[i(x, y)], i(self.h[x], self.h[y]))
        })
    }

    /// G(x -> y) <= F(x) -> F(y), and H with P.
    pub fn box_diamond_k(&self, imp: &[usize]) -> Witness {
        let (l, n) = (self.lat, self.n());
        let i = |a, b| bin(imp, n, a, b);
        forall2(n, |x, y| {
            l.leq(self.g[i(x, y)], i(self.f[x], self.f[y]))
                && l.leq(self.h[i(x, y)], i(self.p[x], self.p[y]))
        })
    }

    pub fn boxes_preserve_top(&self) -> Witness {
        let t = self.lat.top();
        (self.g[t] != t || self.h[t] != t).then(|| vec![t])
    }

    pub fn boxes_preserve_bottom(&self) -> Witness {
        let b = self.lat.bot();
        (self.g[b] != b || self.h[b] != b).then(|| vec![b])
    }

    pub fn diamonds_preserve_bottom(&self) -> Witness {
        let b = self.lat.bot();
        (self.f[b] != b || self.p[b] != b).then(|| vec![b])
    }

    pub fn boxes_preserve_meets(&self) -> Witness {
        let l = self.lat;
        forall2(self.n(), |x, y| {
            self.g[l.meet(x, y)] == l.meet(self.g[x], self.g[y])
                && self.h[l.meet(x, y)] == l.meet(self.h[x], self.h[y])
        })
    }

    pub fn diamonds_preserve_joins(&self) -> Witness {
        let l = self.lat;
        forall2(self.n(), |x, y| {
            self.f[l.join(x, y)] == l.join(self.f[x], self.f[y])
                && self.p[l.join(x, y)] == l.join(self.p[x], self.p[y])
        })
    }

    /// x <= GP(x) and x <= HF(x).
    pub fn units(&self) -> Witness {
        let l = self.lat;
        forall1(self.n(), |x| {
            l.leq(x, self.g[self.p[x]]) && l.leq(x, self.h[self.f[x]])
        })
    }

    /// FH(x) <= x and PG(x) <= x.
    pub fn counits(&self) -> Witness {
        let l = self.lat;
        forall1(self.n(), |x| {
            l.leq(self.f[self.h[x]], x) && l.leq(self.p[self.g[x]], x)
        })
    }

    pub fn boxes_monotone(&self) -> Witness {
        let l = self.lat;
        forall2(self.n(), |x, y| {
            !l.leq(x, y) || (l.leq(self.g[x], self.g[y]) && l.leq(self.h[x], self.h[y]))
        })
    }

    pub fn diamonds_monotone(&self) -> Witness {
        let l = self.lat;
        forall2(self.n(), |x, y| {
            !l.leq(x, y) || (l.leq(self.f[x], self.f[y]) && l.leq(self.p[x], self.p[y]))
        })
    }

    /// x ∧ F(y) <= F(P(x) ∧ y) and x ∧ P(y) <= P(F(x) ∧ y).
    pub fn frobenius(&self) -> Witness {
        let l = self.lat;
        forall2(self.n(), |x, y| {
            l.leq(l.meet(x, self.f[y]), self.f[l.meet(self.p[x], y)])
                && l.leq(l.meet(x, self.p[y]), self.p[l.meet(self.f[x], y)])
        })
    }

    /// F(x) ∧ y = 0  <=>  x ∧ P(y) = 0.
    pub fn disjointness(&self) -> Witness {
        let l = self.lat;
        let b = l.bot();
        forall2(self.n(), |x, y| {
            (l.meet(self.f[x], y) == b) == (l.meet(x, self.p[y]) == b)
        })
    }

    /// G(x ∨ H(y)) <= G(x) ∨ y and H(x ∨ G(y)) <= H(x) ∨ y.
    pub fn co_frobenius(&self) -> Witness {
        let l = self.lat;
        forall2(self.n(), |x, y| {
            l.leq(self.g[l.join(x, self.h[y])], l.join(self.g[x], y))
                && l.leq(self.h[l.join(x, self.g[y])], l.join(self.h[x], y))
        })
    }

    /// x ∨ H(y) = 1  <=>  G(x) ∨ y = 1.
    pub fn codisjointness(&self) -> Witness {
        let l = self.lat;
        let t = l.top();
        forall2(self.n(), |x, y| {
            (l.join(x, self.h[y]) == t) == (l.join(self.g[x], y) == t)
        })
    }
}

/// Checks T1–T6 (and T0 when requested) exhaustively.
pub fn check_tense_axioms(a: &Algebra, q: &TenseQuadruple, with_t0: bool) -> Result<AxiomReport> {
    let imp = a.binary(sym::IMP)?;
    check_quadruple_shape(a, q)?;
    let v = q.view(a.lattice());
    let mut r = AxiomReport::new();
    if with_t0 {
        r.record("T0", v.boxes_preserve_bottom());
    }
    r.record("T1", v.adjunction_pg());
    r.record("T2", v.adjunction_fh());
    r.record("T3", v.meet_mix());
    r.record("T4", v.join_mix());
    r.record("T5", v.box_k(imp));
    r.record("T6", v.box_diamond_k(imp));
    Ok(r)
}

fn check_quadruple_shape(a: &Algebra, q: &TenseQuadruple) -> Result<()> {
    let n = a.size();
    for (s, t) in [(sym::G, &q.g), (sym::H, &q.h), (sym::F, &q.f), (sym::P, &q.p)] {
        if t.len() != n || t.iter().any(|&x| x >= n) {
            return Err(Error::InvalidTable {
                symbol: s.to_string(),
                reason: format!("not a unary table over {n} elements"),
            });
        }
    }
    Ok(())
}

pub(crate) fn derived_laws(v: &TenseView<'_>) -> Vec<(&'static str, Witness)> {
    vec![
        ("T7", v.boxes_preserve_top()),
        ("T8", v.boxes_preserve_meets()),
        ("T9", v.units()),
        ("T10", v.diamonds_preserve_bottom()),
        ("T11", v.diamonds_preserve_joins()),
        ("T12", v.counits()),
        ("T13", v.boxes_monotone()),
        ("T14", v.diamonds_monotone()),
        ("T15", v.frobenius()),
        ("T16", v.disjointness()),
        ("T17", v.co_frobenius()),
        ("T18", v.codisjointness()),
    ]
}

/// Checks T7–T18, which follow from T1–T6; any failure is a counterexample
/// to that implication (or a bug).
pub fn verify_tense_derived(a: &Algebra, q: &TenseQuadruple) -> Result<AxiomReport> {
    let base = check_tense_axioms(a, q, false)?;
    if !base.all_hold() {
        return Err(Error::PreconditionUnverified(format!(
            "tense axioms fail: {:?}",
            base.failures().map(|o| o.id.as_str()).collect::<Vec<_>>()
        )));
    }
    let mut r = AxiomReport::new();
    for (id, w) in derived_laws(&q.view(a.lattice())) {
        r.record(id, w);
    }
    Ok(r)
}

/// Unary maps with `m(1) = 1` and `m(x ∧ y) = m(x) ∧ m(y)`, in
/// lexicographic table order.
pub fn meet_preserving_maps(lat: &FiniteLattice) -> Vec<Vec<usize>> {
    fn go(lat: &FiniteLattice, m: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = lat.size();
        let i = m.len();
        if i == n {
            out.push(m.clone());
            return;
        }
        for v in 0..n {
            if i == lat.top() && v != lat.top() {
                continue;
            }
            m.push(v);
            let ok = (0..=i).all(|x| {
                (0..=i).all(|y| {
                    let z = lat.meet(x, y);
                    z > i || m[z] == lat.meet(m[x], m[y])
                })
            });
            if ok {
                go(lat, m, out);
            }
            m.pop();
        }
    }
    let mut out = Vec::new();
    go(lat, &mut Vec::with_capacity(lat.size()), &mut out);
    out
}

/// All tense quadruples on `a` (T1–T6, plus T0 when `with_t0`), ordered by
/// `(G, H)` and truncated at `limit`.
///
/// `G` and `H` range over meet-preserving maps fixing the top; `P` and `F`
/// are then forced as their lower adjoints, and T3–T6 filter the pairs.
pub fn enumerate_tense_structures(
    a: &Algebra,
    with_t0: bool,
    limit: Option<usize>,
) -> Result<Vec<TenseQuadruple>> {
    let imp = a.binary(sym::IMP)?;
    let lat = a.lattice();
    let boxes: Vec<(Vec<usize>, Vec<usize>)> = meet_preserving_maps(lat)
        .into_iter()
        .filter(|m| !with_t0 || m[lat.bot()] == lat.bot())
        .filter_map(|m| adjoint_of(lat, &m, Side::Left).map(|lower| (m, lower)))
        .collect();
    let per_g: Vec<Vec<TenseQuadruple>> = par::map(&boxes, |(g, p)| {
        let mut found = Vec::new();
        for (h, f) in &boxes {
            let q = TenseQuadruple {
                g: g.clone(),
                h: h.clone(),
                f: f.clone(),
                p: p.clone(),
            };
            let v = q.view(lat);
            if v.meet_mix().is_none()
                && v.join_mix().is_none()
                && v.box_k(imp).is_none()
                && v.box_diamond_k(imp).is_none()
            {
                found.push(q);
                if limit.is_some_and(|k| found.len() >= k) {
                    break;
                }
            }
        }
        found
    });
    let mut out: Vec<TenseQuadruple> = per_g.into_iter().flatten().collect();
    if let Some(k) = limit {
        out.truncate(k);
    }
    Ok(out)
}
