//! Local structure of S(n,k): triangles, 6-cycles through a path, and the
//! transposition-product identity behind star-edge 6-cycles.

use super::{EdgeKind, StarGraph};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// A 6-cycle `u v w x y z` (closing back to `u`), as vertex indices.
pub type SixCycle = [u32; 6];

fn require_edge(g: &StarGraph, u: u32, v: u32) -> Result<EdgeKind> {
    g.kind_between(u, v).ok_or_else(|| {
        Error::InvalidParameters(format!(
            "{} and {} are not adjacent",
            g.vertex(u),
            g.vertex(v)
        ))
    })
}

/// Whether the edge `uv` lies on a triangle.
pub fn is_edge_in_triangle(g: &StarGraph, u: u32, v: u32) -> Result<bool> {
    require_edge(g, u, v)?;
    let nv = g.neighbor_slice(v);
    Ok(g.neighbor_slice(u).iter().any(|w| nv.contains(w)))
}

/// All 6-cycles through the path `u – v – w` whose kinds follow the path's pattern.
///
/// A mixed residual/star path yields the alternating 6-cycles through it; a star/star
/// path yields the all-star 6-cycles. Two residual edges are not a supported pattern.
pub fn six_cycles_through(g: &StarGraph, u: u32, v: u32, w: u32) -> Result<Vec<SixCycle>> {
    let uv = require_edge(g, u, v)?;
    let vw = require_edge(g, v, w)?;
    if u == w {
        return Err(Error::InvalidParameters("u and w coincide".into()));
    }
    // Kinds of the remaining edges w–x, x–y, y–z, z–u.
    let rest: [EdgeKind; 4] = match (uv, vw) {
        (EdgeKind::Residual, EdgeKind::Star) | (EdgeKind::Star, EdgeKind::Residual) => {
            [uv, vw, uv, vw]
        }
        (EdgeKind::Star, EdgeKind::Star) => [EdgeKind::Star; 4],
        (EdgeKind::Residual, EdgeKind::Residual) => {
            return Err(Error::UnsupportedPattern(
                "both edges residual: neither alternating nor all-star".into(),
            ))
        }
    };
    let walk = |from: u32, kind: EdgeKind| {
        g.neighbors(from)
            .filter(move |&(_, kk)| kk == kind)
            .map(|(to, _)| to)
    };
    let mut found = Vec::new();
    for x in walk(w, rest[0]) {
        if x == u || x == v {
            continue;
        }
        for y in walk(x, rest[1]) {
            if y == u || y == v || y == w {
                continue;
            }
            for z in walk(y, rest[2]) {
                if z == u || z == v || z == w || z == x {
                    continue;
                }
                if g.kind_between(z, u) == Some(rest[3]) {
                    found.push([u, v, w, x, y, z]);
                }
            }
        }
    }
    Ok(found)
}

/// `(1 f)(1 e)(1 d)(1 c)(1 b)(1 a)` on `n` points; `(1 a)` acts first.
pub fn transposition_product(n: usize, letters: [usize; 6]) -> Result<Perm> {
    letters.iter().try_fold(Perm::identity(n), |acc, &x| {
        Perm::transposition(n, 1, x)?.compose(&acc)
    })
}

/// Exhaustive check over all `2 ≤ a,…,f ≤ n` with cyclically adjacent letters distinct:
/// the product is the identity exactly when `a = c = e` and `b = d = f`.
pub fn transposition_identity_check(n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("n = {n} < 3")));
    }
    let letters: Vec<usize> = (2..=n).collect();
    let mut counter = [0usize; 6];
    loop {
        let t: [usize; 6] = std::array::from_fn(|i| letters[counter[i]]);
        let admissible = (0..6).all(|i| t[i] != t[(i + 1) % 6]);
        if admissible {
            let identity = transposition_product(n, t)?.is_identity();
            let pattern = t[0] == t[2] && t[2] == t[4] && t[1] == t[3] && t[3] == t[5];
            if identity != pattern {
                return Ok(false);
            }
        }
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == 6 {
                return Ok(true);
            }
            counter[i] += 1;
            if counter[i] < letters.len() {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::KPerm;

    fn idx(g: &StarGraph, entries: &[u32]) -> u32 {
        g.index_of(&KPerm::new(entries.to_vec(), g.n()).unwrap())
            .unwrap()
    }

    #[test]
    fn residual_edge_in_triangle_star_edge_not() {
        let g = StarGraph::build(4, 2).unwrap();
        let (a, b, c) = (idx(&g, &[1, 2]), idx(&g, &[3, 2]), idx(&g, &[2, 1]));
        assert!(is_edge_in_triangle(&g, a, b).unwrap());
        assert!(!is_edge_in_triangle(&g, a, c).unwrap());
        let far = idx(&g, &[3, 4]);
        assert!(is_edge_in_triangle(&g, a, far).is_err());
    }

    #[test]
    fn alternating_cycle_of_the_worked_example() {
        let g = StarGraph::build(5, 3).unwrap();
        let u = idx(&g, &[4, 2, 3]);
        let v = idx(&g, &[1, 2, 3]);
        let w = idx(&g, &[2, 1, 3]);
        let cycles = six_cycles_through(&g, u, v, w).unwrap();
        assert_eq!(cycles.len(), 1);
        let expected = [
            u,
            v,
            w,
            idx(&g, &[4, 1, 3]),
            idx(&g, &[1, 4, 3]),
            idx(&g, &[2, 4, 3]),
        ];
        assert_eq!(cycles[0], expected);
    }

    #[test]
    fn star_star_path_has_one_star_cycle() {
        let g = StarGraph::build(5, 3).unwrap();
        let u = idx(&g, &[2, 1, 3]);
        let v = idx(&g, &[1, 2, 3]);
        let w = idx(&g, &[3, 2, 1]);
        assert_eq!(six_cycles_through(&g, u, v, w).unwrap().len(), 1);
    }

    #[test]
    fn residual_residual_is_unsupported() {
        let g = StarGraph::build(5, 3).unwrap();
        let u = idx(&g, &[4, 2, 3]);
        let v = idx(&g, &[1, 2, 3]);
        let w = idx(&g, &[5, 2, 3]);
        assert!(matches!(
            six_cycles_through(&g, u, v, w),
            Err(Error::UnsupportedPattern(_))
        ));
    }

    #[test]
    fn transposition_examples() {
        for n in 3..=6 {
            assert!(transposition_product(n, [2, 3, 2, 3, 2, 3])
                .unwrap()
                .is_identity());
        }
        // Traced by hand point by point: 1→3, 2→4, 3→1, 4→2.
        let p = transposition_product(5, [2, 3, 4, 2, 3, 4]).unwrap();
        assert!(!p.is_identity());
        assert_eq!(p, Perm::from_cycles(5, &[&[1, 3], &[2, 4]]).unwrap());
    }

    #[test]
    fn transposition_scan_small_n() {
        for n in 3..=6 {
            assert!(transposition_identity_check(n).unwrap(), "n = {n}");
        }
        assert!(transposition_identity_check(2).is_err());
    }
}
