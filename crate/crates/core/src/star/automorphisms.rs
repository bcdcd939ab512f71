//! Independent automorphism count by backtracking over plain adjacency.
//!
//! Edge kinds are ignored on purpose: the count must be able to confirm, not assume,
//! that every automorphism preserves them.

use std::collections::VecDeque;

use super::StarGraph;
use crate::error::{Error, Result};

pub const DEFAULT_BRUTE_FORCE_VERTICES: u64 = 64;

struct Search {
    adj: Vec<Vec<bool>>,
    neighbors: Vec<Vec<usize>>,
    invariant: Vec<(usize, usize)>,
    order: Vec<usize>,
    /// For each position in `order`, an earlier mapped neighbour (BFS parent).
    parent: Vec<Option<usize>>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    count: u128,
}

impl Search {
    fn extend(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.count += 1;
            return;
        }
        let v = self.order[depth];
        let candidates: Vec<usize> = match self.parent[depth] {
            Some(p) => self.neighbors[self.image[p].expect("parent mapped")].clone(),
            None => (0..self.adj.len()).collect(),
        };
        for c in candidates {
            if self.used[c] || self.invariant[c] != self.invariant[v] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let fu = self.image[u].expect("mapped");
                self.adj[u][v] == self.adj[fu][c]
            });
            if !consistent {
                continue;
            }
            self.image[v] = Some(c);
            self.used[c] = true;
            self.extend(depth + 1);
            self.used[c] = false;
            self.image[v] = None;
        }
    }
}

/// `|Aut(g)|` for a small graph, counted exactly.
///
/// Vertices are mapped in BFS order so each new vertex's image is drawn from the
/// neighbours of its parent's image; candidates must match degree and triangle count
/// and agree on adjacency and non-adjacency with every vertex mapped so far.
pub fn brute_force_automorphism_count(g: &StarGraph, max_vertices: u64) -> Result<u128> {
    let m = g.vertex_count();
    if m > max_vertices {
        return Err(Error::BudgetExhausted(format!(
            "{m} vertices exceed the automorphism-count budget of {max_vertices}"
        )));
    }
    let m = m as usize;
    let neighbors: Vec<Vec<usize>> = (0..m as u32)
        .map(|v| g.neighbor_slice(v).iter().map(|&w| w as usize).collect())
        .collect();
    let mut adj = vec![vec![false; m]; m];
    for (v, ns) in neighbors.iter().enumerate() {
        for &w in ns {
            adj[v][w] = true;
        }
    }
    let invariant: Vec<(usize, usize)> = (0..m)
        .map(|v| {
            let ns = &neighbors[v];
            let triangles = ns
                .iter()
                .enumerate()
                .map(|(i, &a)| ns[i + 1..].iter().filter(|&&b| adj[a][b]).count())
                .sum();
            (ns.len(), triangles)
        })
        .collect();

    let mut order = Vec::with_capacity(m);
    let mut parent = Vec::with_capacity(m);
    let mut seen = vec![false; m];
    for root in 0..m {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([(root, None)]);
        while let Some((v, p)) = queue.pop_front() {
            order.push(v);
            parent.push(p);
            for &w in &neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back((w, Some(v)));
                }
            }
        }
    }

    let mut search = Search {
        adj,
        neighbors,
        invariant,
        order,
        parent,
        image: vec![None; m],
        used: vec![false; m],
        count: 0,
    };
    search.extend(0);
    Ok(search.count)
}
