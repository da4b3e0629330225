//! Galois adjoints of unary maps on a finite lattice.

use crate::lattice::FiniteLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `g` with `g(x) <= y  <=>  x <= f(y)`.
    Left,
    /// `g` with `f(x) <= y  <=>  x <= g(y)`.
    Right,
}

/// The adjoint of `f` on the given side, or `None` when it does not exist.
///
/// Candidates are `g(y) = max{x : f(x) <= y}` (right) and
/// `g(x) = min{y : x <= f(y)}` (left); the biconditional is then verified
/// for every pair, so monotonicity of `f` is checked rather than assumed.
pub fn adjoint_of(lat: &FiniteLattice, f: &[usize], side: Side) -> Option<Vec<usize>> {
    let n = lat.size();
    assert_eq!(f.len(), n);
    let mut g = Vec::with_capacity(n);
    for y in 0..n {
        let candidates = (0..n).filter(|&x| match side {
            Side::Right => lat.leq(f[x], y),
            Side::Left => lat.leq(y, f[x]),
        });
        let extreme = match side {
            Side::Right => candidates.fold(None, |acc: Option<usize>, x| {
                Some(acc.map_or(x, |a| lat.join(a, x)))
            }),
            Side::Left => candidates.fold(None, |acc: Option<usize>, x| {
                Some(acc.map_or(x, |a| lat.meet(a, x)))
            }),
        }?;
        let attained = match side {
            Side::Right => lat.leq(f[extreme], y),
            Side::Left => lat.leq(y, f[extreme]),
        };
        if !attained {
            return None;
        }
        g.push(extreme);
    }
    let ok = (0..n).all(|x| {
        (0..n).all(|y| match side {
            Side::Right => lat.leq(f[x], y) == lat.leq(x, g[y]),
            Side::Left => lat.leq(g[x], y) == lat.leq(x, f[y]),
        })
    });
    ok.then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;

    fn chain3() -> FiniteLattice {
        build_lattice(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap()
    }

    #[test]
    fn identity_is_self_adjoint() {
        let l = chain3();
        assert_eq!(adjoint_of(&l, &[0, 1, 2], Side::Right), Some(vec![0, 1, 2]));
        assert_eq!(adjoint_of(&l, &[0, 1, 2], Side::Left), Some(vec![0, 1, 2]));
    }

    #[test]
    fn right_adjoint_by_scan() {
        // f(0)=0, f(m)=0, f(1)=1; g(y) = max{x : f(x) <= y}
        let l = chain3();
        assert_eq!(adjoint_of(&l, &[0, 0, 2], Side::Right), Some(vec![1, 1, 2]));
    }

    #[test]
    fn constant_map_has_no_right_adjoint() {
        let l = chain3();
        assert_eq!(adjoint_of(&l, &[1, 1, 1], Side::Right), None);
    }

    #[test]
    fn non_monotone_map_rejected() {
        let l = chain3();
        assert_eq!(adjoint_of(&l, &[2, 0, 1], Side::Right), None);
        assert_eq!(adjoint_of(&l, &[2, 0, 1], Side::Left), None);
    }
}
