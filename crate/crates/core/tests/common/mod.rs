//! Brute-force oracles, written against the definitions and sharing no
//! search code with the library.

#![allow(dead_code)]

use tdli::filter::FilterKind;
use tdli::{sym, Algebra, FiniteLattice, OpTable, TenseQuadruple};

fn at(t: &[usize], n: usize, x: usize, y: usize) -> usize {
    t[x * n + y]
}

/// Every partition of `0..n` as a restricted growth string.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for b in 0..=next {
            cur.push(b);
            go(n, cur, out);
            cur.pop();
        }
    }
    go(n, &mut cur, &mut out);
    out
}

/// Tables a congruence must respect: meet, join, and the profile's
/// non-constant required operations.
fn signature(a: &Algebra) -> Vec<OpTable> {
    let lat = a.lattice();
    let mut ops = vec![
        OpTable::Binary(lat.meet_table().to_vec()),
        OpTable::Binary(lat.join_table().to_vec()),
    ];
    for s in a.profile().required_symbols() {
        match a.op(s) {
            Some(t @ OpTable::Unary(_)) | Some(t @ OpTable::Binary(_)) => ops.push(t.clone()),
            _ => {}
        }
    }
    ops
}

/// Congruences found by testing every partition, in the listing order
/// (finest first, then by labels).
pub fn congruences_by_partitions(a: &Algebra) -> Vec<Vec<usize>> {
    let n = a.size();
    let ops = signature(a);
    let mut out: Vec<Vec<usize>> = partitions(n)
        .into_iter()
        .filter(|p| {
            ops.iter().all(|t| match t {
                OpTable::Unary(u) => (0..n).all(|x| (0..n).all(|y| p[x] != p[y] || p[u[x]] == p[u[y]])),
                OpTable::Binary(b) => (0..n).all(|x1| {
                    (0..n).all(|x2| {
                        p[x1] != p[x2]
                            || (0..n).all(|y1| {
                                (0..n).all(|y2| p[y1] != p[y2] || p[at(b, n, x1, y1)] == p[at(b, n, x2, y2)])
                            })
                    })
                }),
                OpTable::Constant(_) => true,
            })
        })
        .collect();
    let blocks = |p: &Vec<usize>| p.iter().max().map_or(0, |m| m + 1);
    out.sort_by(|p, q| blocks(q).cmp(&blocks(p)).then_with(|| p.cmp(q)));
    out
}

fn all_maps(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..n).map(move |v| {
                    let mut m = m.clone();
                    m.push(v);
                    m
                })
            })
            .collect();
    }
    out
}

/// Pairs `(B, D)` of arbitrary maps with `D(x) <= y` iff `x <= B(y)`.
fn adjoint_pairs(lat: &FiniteLattice) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = lat.size();
    let maps = all_maps(n);
    let mut out = Vec::new();
    for b in &maps {
        for d in &maps {
            if (0..n).all(|x| (0..n).all(|y| lat.leq(d[x], y) == lat.leq(x, b[y]))) {
                out.push((b.clone(), d.clone()));
            }
        }
    }
    out
}

/// Every tense quadruple on `a`, by testing T1 and T2 over all pairs of
/// maps and then T3–T6 (and T0) directly. Sorted.
pub fn naive_tense(a: &Algebra, with_t0: bool) -> Vec<TenseQuadruple> {
    let lat = a.lattice();
    let n = lat.size();
    let imp = a.binary(sym::IMP).unwrap();
    let i = |x, y| at(imp, n, x, y);
    let (m, j, le) = (|x, y| lat.meet(x, y), |x, y| lat.join(x, y), |x, y| lat.leq(x, y));
    let pairs = adjoint_pairs(lat);
    let mut out = Vec::new();
    for (g, p) in &pairs {
        for (h, f) in &pairs {
            if with_t0 && (g[lat.bot()] != lat.bot() || h[lat.bot()] != lat.bot()) {
                continue;
            }
            let ok = (0..n).all(|x| {
                (0..n).all(|y| {
                    le(m(g[x], f[y]), f[m(x, y)])
                        && le(m(h[x], p[y]), p[m(x, y)])
                        && le(g[j(x, y)], j(g[x], f[y]))
                        && le(h[j(x, y)], j(h[x], p[y]))
                        && le(g[i(x, y)], i(g[x], g[y]))
                        && le(h[i(x, y)], i(h[x], h[y]))
                        && le(g[i(x, y)], i(f[x], f[y]))
                        && le(h[i(x, y)], i(p[x], p[y]))
                })
            });
            if ok {
                out.push(TenseQuadruple {
                    g: g.clone(),
                    h: h.clone(),
                    f: f.clone(),
                    p: p.clone(),
                });
            }
        }
    }
    out.sort();
    out
}

/// `y → z = max{x : x ∧ y <= z}`, by scanning for the unique maximum.
pub fn max_scan_residual(lat: &FiniteLattice) -> Vec<usize> {
    let n = lat.size();
    let mut t = Vec::with_capacity(n * n);
    for y in 0..n {
        for z in 0..n {
            let cands: Vec<usize> = (0..n).filter(|&x| lat.leq(lat.meet(x, y), z)).collect();
            let max = cands
                .iter()
                .copied()
                .find(|&x| cands.iter().all(|&w| lat.leq(w, x)))
                .expect("finite distributive lattices have residuals");
            t.push(max);
        }
    }
    t
}

struct View<'a> {
    lat: &'a FiniteLattice,
    n: usize,
    imp: &'a [usize],
    g: &'a [usize],
    h: &'a [usize],
}

impl View<'_> {
    fn of(a: &Algebra) -> View<'_> {
        View {
            lat: a.lattice(),
            n: a.size(),
            imp: a.binary(sym::IMP).unwrap(),
            g: a.unary(sym::G).unwrap(),
            h: a.unary(sym::H).unwrap(),
        }
    }

    fn i(&self, x: usize, y: usize) -> usize {
        at(self.imp, self.n, x, y)
    }

    /// 1-filter of the sub-structure on `dom` (closed under the operations).
    fn one_filter(&self, dom: &[usize], s: &[bool]) -> bool {
        let l = self.lat;
        dom.iter().any(|&x| s[x])
            && dom.iter().all(|&x| !s[x] || dom.iter().all(|&y| !l.leq(x, y) || s[y]))
            && dom.iter().all(|&x| dom.iter().all(|&y| !(s[x] && s[y]) || s[l.meet(x, y)]))
            && dom.iter().all(|&f| {
                !s[f]
                    || dom.iter().all(|&x| {
                        dom.iter().all(|&y| s[self.i(self.i(l.meet(x, f), y), self.i(x, y))])
                    })
            })
    }

    fn tense_closed(&self, s: &[bool]) -> bool {
        (0..self.n).all(|x| !s[x] || (s[self.g[x]] && s[self.h[x]]))
    }

    fn tense_ds(&self, s: &[bool]) -> bool {
        s[self.lat.top()]
            && (0..self.n).all(|x| (0..self.n).all(|y| !(s[x] && s[self.i(x, y)]) || s[y]))
            && self.tense_closed(s)
    }
}

/// Every subset of the kind, found by scanning all `2^n` subsets. Sorted
/// by size, then lexicographically.
pub fn scan_filters(a: &Algebra, kind: FilterKind) -> Vec<Vec<usize>> {
    let n = a.size();
    assert!(n <= 16, "subset scan is exponential");
    let v = View::of(a);
    let all: Vec<usize> = (0..n).collect();
    let center: Vec<usize> = match kind {
        FilterKind::CenteredTenseDs => {
            let c = a.constant(sym::CENTER).unwrap();
            (0..n).filter(|&x| a.lattice().leq(c, x)).collect()
        }
        _ => Vec::new(),
    };
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let s: Vec<bool> = (0..n).map(|i| mask & (1 << i) != 0).collect();
        let ok = match kind {
            FilterKind::OneFilter => v.one_filter(&all, &s),
            FilterKind::TenseOneFilter => v.one_filter(&all, &s) && v.tense_closed(&s),
            FilterKind::TenseDs => v.tense_ds(&s),
            FilterKind::CenteredTenseDs => {
                let neg = a.unary(sym::NEG).unwrap();
                let c = a.constant(sym::CENTER).unwrap();
                let l = a.lattice();
                v.tense_ds(&s)
                    && v.one_filter(&center, &s)
                    && (0..n).all(|u| !(s[v.i(neg[u], c)] && s[v.i(l.top(), l.join(u, c))]) || s[u])
            }
        };
        if ok {
            out.push((0..n).filter(|&i| s[i]).collect::<Vec<_>>());
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}
