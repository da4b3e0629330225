//! Homomorphism certification and isomorphism search between finite algebras.

use crate::algebra::{Algebra, OpTable};
use crate::error::{Error, Result};

/// An index map together with the symbols it was verified to preserve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub source: Algebra,
    pub target: Algebra,
    pub map: Vec<usize>,
    /// Lattice bounds and operations (`"0"`, `"1"`, `"meet"`, `"join"`, then
    /// operation symbols) checked exhaustively.
    pub preserved: Vec<String>,
    pub injective: bool,
    pub surjective: bool,
}

impl Morphism {
    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

/// The first `(symbol, arguments)` at which a map fails to commute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub symbol: String,
    pub args: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preservation {
    Certified(Morphism),
    Violated(Violation),
}

impl Preservation {
    pub fn certified(self) -> Option<Morphism> {
        match self {
            Preservation::Certified(m) => Some(m),
            Preservation::Violated(_) => None,
        }
    }
}

/// Checks that `f` is a homomorphism from `a` to `b` for the lattice
/// structure and every operation symbol of `a`.
///
/// Every symbol of `a` must exist in `b` with the same arity.
pub fn is_homomorphism(f: &[usize], a: &Algebra, b: &Algebra) -> Result<Preservation> {
    for (s, arity) in a.signature() {
        match b.op(&s) {
            Some(t) if t.arity() == arity => {}
            _ => {
                return Err(Error::SignatureMismatch(format!(
                    "`{s}` (arity {arity}) of `{}` missing in `{}`",
                    a.name(),
                    b.name()
                )))
            }
        }
    }
    let symbols: Vec<String> = a.ops().keys().cloned().collect();
    certify(f, a, b, &symbols)
}

/// Like [`is_homomorphism`] but only for the listed operation symbols, which
/// both algebras must carry.
pub fn certify(f: &[usize], a: &Algebra, b: &Algebra, symbols: &[String]) -> Result<Preservation> {
    if f.len() != a.size() {
        return Err(Error::SignatureMismatch(format!(
            "map has {} entries for {} elements",
            f.len(),
            a.size()
        )));
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= b.size()) {
        return Err(Error::SignatureMismatch(format!(
            "map value {bad} out of range for `{}`",
            b.name()
        )));
    }
    let (la, lb) = (a.lattice(), b.lattice());
    let n = a.size();
    let violated = |symbol: &str, args: Vec<usize>| {
        Ok(Preservation::Violated(Violation {
            symbol: symbol.to_string(),
            args,
        }))
    };

    if f[la.bot()] != lb.bot() {
        return violated("0", vec![]);
    }
    if f[la.top()] != lb.top() {
        return violated("1", vec![]);
    }
    for x in 0..n {
        for y in 0..n {
            if f[la.meet(x, y)] != lb.meet(f[x], f[y]) {
                return violated("meet", vec![x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if f[la.join(x, y)] != lb.join(f[x], f[y]) {
                return violated("join", vec![x, y]);
            }
        }
    }
    let mut preserved: Vec<String> = ["0", "1", "meet", "join"].map(String::from).to_vec();
    let nb = b.size();
    for s in symbols {
        let (ta, tb) = match (a.op(s), b.op(s)) {
            (Some(ta), Some(tb)) if ta.arity() == tb.arity() => (ta, tb),
            _ => {
                return Err(Error::SignatureMismatch(format!(
                    "`{s}` not shared by `{}` and `{}`",
                    a.name(),
                    b.name()
                )))
            }
        };
        match (ta, tb) {
            (OpTable::Constant(ca), OpTable::Constant(cb)) => {
                if f[*ca] != *cb {
                    return violated(s, vec![]);
                }
            }
            (OpTable::Unary(ua), OpTable::Unary(ub)) => {
                if let Some(x) = (0..n).find(|&x| f[ua[x]] != ub[f[x]]) {
                    return violated(s, vec![x]);
                }
            }
            (OpTable::Binary(ba), OpTable::Binary(bb)) => {
                for x in 0..n {
                    for y in 0..n {
                        if f[ba[x * n + y]] != bb[f[x] * nb + f[y]] {
                            return violated(s, vec![x, y]);
                        }
                    }
                }
            }
            _ => unreachable!("arity checked above"),
        }
        preserved.push(s.clone());
    }

    let mut hit = vec![false; nb];
    let mut injective = true;
    for &y in f {
        if hit[y] {
            injective = false;
        }
        hit[y] = true;
    }
    Ok(Preservation::Certified(Morphism {
        source: a.clone(),
        target: b.clone(),
        map: f.to_vec(),
        preserved,
        injective,
        surjective: hit.iter().all(|&h| h),
    }))
}

/// Lexicographically least isomorphism from `a` onto `b`, if one exists.
pub fn find_isomorphism(a: &Algebra, b: &Algebra) -> Result<Option<Morphism>> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch(format!(
            "`{}` and `{}` carry different operation symbols",
            a.name(),
            b.name()
        )));
    }
    if a.size() != b.size() {
        return Ok(None);
    }
    let n = a.size();
    let profile = |alg: &Algebra| -> Vec<(usize, usize)> {
        let l = alg.lattice();
        (0..n)
            .map(|x| {
                let down = (0..n).filter(|&y| l.leq(y, x)).count();
                let up = (0..n).filter(|&y| l.leq(x, y)).count();
                (down, up)
            })
            .collect()
    };
    let (pa, pb) = (profile(a), profile(b));
    let mut search = IsoSearch {
        a,
        b,
        pa,
        pb,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if search.extend(0) {
        let map = search.map;
        match certify(&map, a, b, &a.ops().keys().cloned().collect::<Vec<_>>())? {
            Preservation::Certified(m) if m.is_bijective() => Ok(Some(m)),
            _ => Err(Error::Counterexample(
                "isomorphism search produced an uncertified map".into(),
            )),
        }
    } else {
        Ok(None)
    }
}

struct IsoSearch<'a> {
    a: &'a Algebra,
    b: &'a Algebra,
    pa: Vec<(usize, usize)>,
    pb: Vec<(usize, usize)>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, i: usize) -> bool {
        let n = self.map.len();
        if i == n {
            return true;
        }
        for j in 0..n {
            if self.used[j] || self.pa[i] != self.pb[j] {
                continue;
            }
            self.map[i] = j;
            if self.consistent(i) {
                self.used[j] = true;
                if self.extend(i + 1) {
                    return true;
                }
                self.used[j] = false;
            }
        }
        self.map[i] = usize::MAX;
        false
    }

    /// Checks every constraint whose arguments and result are assigned and
    /// involve the freshly assigned element `i`.
    fn consistent(&self, i: usize) -> bool {
        let (la, lb) = (self.a.lattice(), self.b.lattice());
        let n = self.map.len();
        let m = &self.map;
        let assigned = |x: usize| x <= i;
        for k in 0..=i {
            if la.leq(k, i) != lb.leq(m[k], m[i]) || la.leq(i, k) != lb.leq(m[i], m[k]) {
                return false;
            }
        }
        for (s, ta) in self.a.ops() {
            let tb = self.b.op(s).expect("signatures equal");
            match (ta, tb) {
                (OpTable::Constant(ca), OpTable::Constant(cb)) => {
                    if (*ca == i) != (m[i] == *cb) {
                        return false;
                    }
                }
                (OpTable::Unary(ua), OpTable::Unary(ub)) => {
                    for x in 0..=i {
                        let y = ua[x];
                        if (x == i || y == i) && assigned(y) && m[y] != ub[m[x]] {
                            return false;
                        }
                    }
                }
                (OpTable::Binary(ba), OpTable::Binary(bb)) => {
                    for x in 0..=i {
                        for y in 0..=i {
                            let z = ba[x * n + y];
                            if (x == i || y == i || z == i)
                                && assigned(z)
                                && m[z] != bb[m[x] * n + m[y]]
                            {
                                return false;
                            }
                        }
                    }
                }
                _ => return false,
            }
        }
        true
    }
}
