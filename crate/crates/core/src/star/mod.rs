//! The (n,k)-star graph S(n,k).
//!
//! Vertices are k-permutations of `{1..n}`, indexed by lexicographic rank. A star
//! edge swaps position 1 with position i (2 ≤ i ≤ k); a residual edge changes only
//! position 1. Every vertex has `k − 1` star and `n − k` residual neighbors.
//!
//! Adjacency is stored as a fixed-degree table: slot `j < k − 1` of a vertex is the
//! star neighbor swapping positions 1 and `j + 2`, the remaining `n − k` slots are the
//! residual neighbors in ascending order of the new first symbol.

mod aut;
mod automorphisms;
mod lemmas;

pub use aut::{apply_automorphism, aut_product, AutPair};
pub use automorphisms::{brute_force_automorphism_count, DEFAULT_BRUTE_FORCE_VERTICES};
pub use lemmas::{
    is_edge_in_triangle, six_cycles_through, transposition_identity_check, transposition_product,
    SixCycle,
};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::KPerm;
use crate::util::falling_u64;

/// Vertex cap for materialized graphs.
pub const DEFAULT_VERTEX_CAP: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Star,
    Residual,
}

impl EdgeKind {
    pub fn code(self) -> char {
        match self {
            EdgeKind::Star => 'S',
            EdgeKind::Residual => 'R',
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            EdgeKind::Star => "star",
            EdgeKind::Residual => "residual",
        }
    }
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "S(n,k) needs 1 <= k < n, got n = {n}, k = {k}"
        )));
    }
    Ok(())
}

/// Lexicographic rank of a k-permutation among all k-permutations of `{1..n}`.
pub fn rank(v: &KPerm) -> Result<u64> {
    let (n, k) = (v.n(), v.k());
    let mut used = vec![false; n + 1];
    let mut r: u64 = 0;
    for (i, &a) in v.entries().iter().enumerate() {
        let smaller_unused = (1..a as usize).filter(|&x| !used[x]).count() as u64;
        let block = falling_u64((n - i - 1) as u64, (k - i - 1) as u64).ok_or_else(|| {
            Error::InvalidParameters(format!("P({n},{k}) does not fit in 64 bits"))
        })?;
        r += smaller_unused * block;
        used[a as usize] = true;
    }
    Ok(r)
}

/// Rank of 0-based entries with precomputed block sizes; the hot path for certificates.
pub(crate) struct Ranker {
    blocks: Vec<u64>,
}

impl Ranker {
    pub(crate) fn new(n: usize, k: usize) -> Result<Ranker> {
        if k == 0 || k > n || n > crate::perm::MAX_DEGREE {
            return Err(Error::InvalidParameters(format!("no ranker for ({n},{k})")));
        }
        let blocks = (0..k)
            .map(|i| falling_u64((n - i - 1) as u64, (k - i - 1) as u64))
            .collect::<Option<Vec<u64>>>()
            .ok_or_else(|| {
                Error::InvalidParameters(format!("P({n},{k}) does not fit in 64 bits"))
            })?;
        falling_u64(n as u64, k as u64).ok_or_else(|| {
            Error::InvalidParameters(format!("P({n},{k}) does not fit in 64 bits"))
        })?;
        Ok(Ranker { blocks })
    }

    pub(crate) fn rank0(&self, a: &[u8]) -> u64 {
        let mut used = [0u64; 4];
        let mut r = 0;
        for (&x, &block) in a.iter().zip(&self.blocks) {
            let x = x as usize;
            let (word, bit) = (x / 64, x % 64);
            let below: u32 = used[..word].iter().map(|w| w.count_ones()).sum::<u32>()
                + (used[word] & ((1u64 << bit) - 1)).count_ones();
            r += (x as u64 - below as u64) * block;
            used[word] |= 1 << bit;
        }
        r
    }
}

/// Inverse of [`rank`].
pub fn unrank(index: u64, n: usize, k: usize) -> Result<KPerm> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameters(format!(
            "no {k}-permutations of {n} points"
        )));
    }
    let count = falling_u64(n as u64, k as u64)
        .ok_or_else(|| Error::InvalidParameters(format!("P({n},{k}) does not fit in 64 bits")))?;
    if index >= count {
        return Err(Error::OutOfRange { index, count });
    }
    let mut unused: Vec<u32> = (1..=n as u32).collect();
    let mut rest = index;
    let mut entries = Vec::with_capacity(k);
    for i in 0..k {
        let block = falling_u64((n - i - 1) as u64, (k - i - 1) as u64).expect("fits: below count");
        let digit = (rest / block) as usize;
        rest %= block;
        entries.push(unused.remove(digit));
    }
    Ok(KPerm::from_entries_unchecked(entries, n))
}

/// Kind of the edge between `u` and `v`, or `None` when they are not adjacent.
pub fn edge_kind(u: &KPerm, v: &KPerm) -> Result<Option<EdgeKind>> {
    if u.n() != v.n() || u.k() != v.k() {
        return Err(Error::InvalidParameters(format!(
            "{u} and {v} come from different star graphs"
        )));
    }
    if u == v {
        return Err(Error::SelfLoop(u.to_string()));
    }
    let (a, b) = (u.entries(), v.entries());
    let diffs: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
    Ok(match diffs.as_slice() {
        [0] => Some(EdgeKind::Residual),
        [0, i] if a[0] == b[*i] && a[*i] == b[0] => Some(EdgeKind::Star),
        _ => None,
    })
}

/// All neighbors of `v` in slot order, computed from the definitions.
pub fn neighbors_of(v: &KPerm) -> Vec<(KPerm, EdgeKind)> {
    let (n, k) = (v.n(), v.k());
    let a = v.entries();
    let mut out = Vec::with_capacity(n - 1);
    for i in 1..k {
        let mut b = a.to_vec();
        b.swap(0, i);
        out.push((KPerm::from_entries_unchecked(b, n), EdgeKind::Star));
    }
    let mut present = vec![false; n + 1];
    for &x in a {
        present[x as usize] = true;
    }
    for s in 1..=n as u32 {
        if !present[s as usize] {
            let mut b = a.to_vec();
            b[0] = s;
            out.push((KPerm::from_entries_unchecked(b, n), EdgeKind::Residual));
        }
    }
    out
}

/// A materialized S(n,k).
#[derive(Clone, Debug)]
pub struct StarGraph {
    n: usize,
    k: usize,
    vertex_count: u64,
    neighbors: Vec<u32>,
}

impl StarGraph {
    pub fn build(n: usize, k: usize) -> Result<StarGraph> {
        StarGraph::build_with_cap(n, k, DEFAULT_VERTEX_CAP)
    }

    pub fn build_with_cap(n: usize, k: usize, vertex_cap: u64) -> Result<StarGraph> {
        check_nk(n, k)?;
        let count = falling_u64(n as u64, k as u64)
            .filter(|&c| c <= vertex_cap)
            .ok_or_else(|| {
                Error::BudgetExhausted(format!("S({n},{k}) exceeds the {vertex_cap}-vertex cap"))
            })?;
        let degree = n - 1;
        let mut neighbors = Vec::with_capacity(count as usize * degree);
        for i in 0..count {
            let v = unrank(i, n, k)?;
            for (u, _) in neighbors_of(&v) {
                neighbors.push(rank(&u)? as u32);
            }
        }
        Ok(StarGraph {
            n,
            k,
            vertex_count: count,
            neighbors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertex_count
    }

    pub fn degree(&self) -> usize {
        self.n - 1
    }

    pub fn edge_count(&self) -> u64 {
        self.vertex_count * self.degree() as u64 / 2
    }

    pub fn vertex(&self, index: u32) -> KPerm {
        unrank(index as u64, self.n, self.k).expect("index within vertex count")
    }

    pub fn index_of(&self, v: &KPerm) -> Result<u32> {
        if v.n() != self.n || v.k() != self.k {
            return Err(Error::InvalidParameters(format!(
                "{v} is not a vertex of S({},{})",
                self.n, self.k
            )));
        }
        Ok(rank(v)? as u32)
    }

    fn slot_kind(&self, slot: usize) -> EdgeKind {
        if slot + 1 < self.k {
            EdgeKind::Star
        } else {
            EdgeKind::Residual
        }
    }

    pub fn neighbor_slice(&self, v: u32) -> &[u32] {
        let d = self.degree();
        &self.neighbors[v as usize * d..(v as usize + 1) * d]
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = (u32, EdgeKind)> + '_ {
        self.neighbor_slice(v)
            .iter()
            .enumerate()
            .map(move |(slot, &u)| (u, self.slot_kind(slot)))
    }

    /// Kind of the edge `uv` in this graph, if present.
    pub fn kind_between(&self, u: u32, v: u32) -> Option<EdgeKind> {
        self.neighbors(u)
            .find(|&(w, _)| w == v)
            .map(|(_, kind)| kind)
    }

    /// Every edge once, as `(u, v, kind)` with `u < v`, in vertex order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, EdgeKind)> + '_ {
        (0..self.vertex_count as u32).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, kind)| (u, v, kind))
        })
    }

    /// `(star, residual)` neighbor counts of one vertex.
    pub fn degree_split(&self, v: u32) -> (usize, usize) {
        self.neighbors(v)
            .fold((0, 0), |(s, r), (_, kind)| match kind {
                EdgeKind::Star => (s + 1, r),
                EdgeKind::Residual => (s, r + 1),
            })
    }

    /// Number of triangles through `v`.
    pub fn triangles_at(&self, v: u32) -> usize {
        let nb = self.neighbor_slice(v);
        let mut count = 0;
        for (i, &a) in nb.iter().enumerate() {
            let na = self.neighbor_slice(a);
            count += nb[i + 1..].iter().filter(|b| na.contains(b)).count();
        }
        count
    }

    pub fn stats(&self) -> GraphStats {
        let mut uniform_split = Some(self.degree_split(0));
        let mut triangles_total = 0u64;
        for v in 0..self.vertex_count as u32 {
            if Some(self.degree_split(v)) != uniform_split {
                uniform_split = None;
            }
            triangles_total += self.triangles_at(v) as u64;
        }
        GraphStats {
            n: self.n,
            k: self.k,
            vertices: self.vertex_count,
            edges: self.edge_count(),
            star_per_vertex: uniform_split.map(|s| s.0),
            residual_per_vertex: uniform_split.map(|s| s.1),
            triangles: triangles_total / 3,
            triangles_per_vertex: self.triangles_at(0),
        }
    }

    /// DOT export; edges carry `kind="star"|"residual"`, vertices are labeled `"[a1,…,ak]"`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph S_{}_{} {{", self.n, self.k);
        for v in 0..self.vertex_count as u32 {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", self.vertex(v));
        }
        for (u, v, kind) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v} [kind=\"{}\"];", kind.label());
        }
        out.push_str("}\n");
        out
    }

    /// Edge-list export: one `u v K` line per edge, `K ∈ {S, R}`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v, kind) in self.edges() {
            let _ = writeln!(out, "{u} {v} {}", kind.code());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub k: usize,
    pub vertices: u64,
    pub edges: u64,
    /// `None` when vertices disagree (never for a correctly built graph).
    pub star_per_vertex: Option<usize>,
    pub residual_per_vertex: Option<usize>,
    pub triangles: u64,
    pub triangles_per_vertex: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_ranker_agrees() {
        let ranker = Ranker::new(6, 4).unwrap();
        for i in 0..360 {
            let v = unrank(i, 6, 4).unwrap();
            let raw: Vec<u8> = v.entries().iter().map(|&x| (x - 1) as u8).collect();
            assert_eq!(ranker.rank0(&raw), i);
        }
    }

    fn kp(entries: &[u32], n: usize) -> KPerm {
        KPerm::new(entries.to_vec(), n).unwrap()
    }

    #[test]
    fn s42_has_12_vertices_with_1_star_2_residual() {
        let g = StarGraph::build(4, 2).unwrap();
        assert_eq!(g.vertex_count(), 12);
        for v in 0..12 {
            assert_eq!(g.degree_split(v), (1, 2));
        }
    }

    #[test]
    fn s94_vertex_count() {
        assert_eq!(StarGraph::build(9, 4).unwrap().vertex_count(), 3024);
    }

    #[test]
    fn k_equal_one_is_complete() {
        let g = StarGraph::build(6, 1).unwrap();
        assert_eq!(g.vertex_count(), 6);
        for u in 0..6u32 {
            for v in 0..6u32 {
                assert_eq!(g.kind_between(u, v).is_some(), u != v);
            }
        }
    }

    #[test]
    fn build_rejects_bad_parameters() {
        assert!(StarGraph::build(4, 4).is_err());
        assert!(StarGraph::build(4, 0).is_err());
        assert!(matches!(
            StarGraph::build_with_cap(9, 4, 1000),
            Err(Error::BudgetExhausted(_))
        ));
    }

    #[test]
    fn rank_extremes() {
        assert_eq!(rank(&KPerm::base(7, 3)).unwrap(), 0);
        assert_eq!(unrank(209, 7, 3).unwrap().entries(), &[7, 6, 5]);
        assert!(matches!(unrank(210, 7, 3), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn rank_unrank_exhaustive_on_5_3() {
        let mut prev: Option<KPerm> = None;
        for i in 0..60 {
            let v = unrank(i, 5, 3).unwrap();
            assert_eq!(rank(&v).unwrap(), i);
            if let Some(p) = prev {
                assert!(p < v, "lexicographic order");
            }
            prev = Some(v);
        }
    }

    #[test]
    fn edge_kinds_from_definitions() {
        assert_eq!(
            edge_kind(&kp(&[1, 2, 3], 5), &kp(&[2, 1, 3], 5)).unwrap(),
            Some(EdgeKind::Star)
        );
        assert_eq!(
            edge_kind(&kp(&[1, 2, 3], 5), &kp(&[4, 2, 3], 5)).unwrap(),
            Some(EdgeKind::Residual)
        );
        assert_eq!(
            edge_kind(&kp(&[1, 2, 3], 5), &kp(&[2, 3, 1], 5)).unwrap(),
            None
        );
        assert_eq!(
            edge_kind(&kp(&[1, 2, 3], 5), &kp(&[1, 3, 2], 5)).unwrap(),
            None
        );
        assert!(matches!(
            edge_kind(&kp(&[1, 2, 3], 5), &kp(&[1, 2, 3], 5)),
            Err(Error::SelfLoop(_))
        ));
    }

    #[test]
    fn adjacency_is_symmetric_with_matching_kinds() {
        let g = StarGraph::build(6, 3).unwrap();
        for u in 0..g.vertex_count() as u32 {
            for (v, kind) in g.neighbors(u) {
                assert_eq!(g.kind_between(v, u), Some(kind));
                assert_eq!(edge_kind(&g.vertex(u), &g.vertex(v)).unwrap(), Some(kind));
            }
        }
    }

    #[test]
    fn exports() {
        let g = StarGraph::build(3, 2).unwrap();
        let edges = g.to_edge_list();
        assert_eq!(edges.lines().count(), 6);
        assert!(edges
            .lines()
            .all(|l| l.ends_with(" S") || l.ends_with(" R")));
        let dot = StarGraph::build(5, 3).unwrap().to_dot();
        assert_eq!(dot.matches("[label=").count(), 60);
        assert!(dot.contains("0 [label=\"[1,2,3]\"];"));
        assert!(dot.contains("kind=\"star\"") && dot.contains("kind=\"residual\""));
    }

    #[test]
    fn stats_report_degree_split_and_triangles() {
        let s = StarGraph::build(4, 2).unwrap().stats();
        assert_eq!(
            (s.star_per_vertex, s.residual_per_vertex),
            (Some(1), Some(2))
        );
        // Residual cliques have n − k + 1 = 3 vertices: one triangle per clique.
        assert_eq!(s.triangles_per_vertex, 1);
        assert_eq!(s.triangles, 4);
    }

    proptest::proptest! {
        #[test]
        fn rank_round_trip(n in 2usize..10, kk in 1usize..9, seed in 0u64..1_000_000) {
            let k = 1 + kk % (n - 1);
            let count = falling_u64(n as u64, k as u64).unwrap();
            let i = seed % count;
            let v = unrank(i, n, k).unwrap();
            proptest::prop_assert_eq!(rank(&v).unwrap(), i);
        }
    }
}
