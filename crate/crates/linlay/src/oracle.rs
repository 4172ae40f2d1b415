//! Brute-force reference implementations. These exist to be obviously
//! correct; the main algorithms are tested against them wherever the domains
//! overlap.

use crate::arrangement::{Arrangement, BranchDecomposition, LinearLayout};
use crate::error::{Error, Result};
use itertools::Itertools;
use std::collections::HashMap;

/// Exact path-width by dynamic programming over subsets of parts:
/// cost(S) = max(connectivity(S), min over e in S of cost(S - e)), cost(∅) = 0.
/// Returns the optimum and a layout achieving it.
pub fn pathwidth_subset_dp(a: &Arrangement) -> Result<(usize, LinearLayout)> {
    let n = a.n_parts();
    if n > 20 {
        return Err(Error::SizeLimit { what: "subset-DP part count", limit: 20, actual: n });
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let full = (1usize << n) - 1;
    let mut conn = vec![u16::MAX; 1 << n];
    let mut cost = vec![u16::MAX; 1 << n];
    cost[0] = 0;
    conn[0] = 0;
    let conn_of = |mask: usize, conn: &mut Vec<u16>| -> u16 {
        if conn[mask] == u16::MAX {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            conn[mask] = a.connectivity(&s) as u16;
        }
        conn[mask]
    };
    for mask in 1..=full {
        let c = conn_of(mask, &mut conn);
        let mut best = u16::MAX;
        for e in 0..n {
            if mask >> e & 1 == 1 {
                best = best.min(cost[mask & !(1 << e)]);
            }
        }
        cost[mask] = best.max(c);
    }
    // reconstruct by peeling the last element, lowest index on ties
    let mut layout_rev = Vec::with_capacity(n);
    let mut mask = full;
    while mask != 0 {
        let mut pick = None;
        for e in 0..n {
            if mask >> e & 1 == 1 {
                let prev = cost[mask & !(1 << e)];
                if prev.max(conn[mask]) == cost[mask] && pick.is_none() {
                    pick = Some(e);
                }
            }
        }
        let e = pick.expect("subset DP reconstruction failed");
        layout_rev.push(e);
        mask &= !(1 << e);
    }
    layout_rev.reverse();
    let width = cost[full] as usize;
    debug_assert_eq!(a.layout_width(&layout_rev), width);
    Ok((width, layout_rev))
}

/// Exact path-width by trying all n! layouts. Must agree with the subset DP.
pub fn pathwidth_permutations(a: &Arrangement) -> Result<usize> {
    let n = a.n_parts();
    if n > 8 {
        return Err(Error::SizeLimit { what: "permutation enumeration part count", limit: 8, actual: n });
    }
    if n <= 1 {
        return Ok(0);
    }
    Ok((0..n)
        .permutations(n)
        .map(|layout| a.layout_width(&layout))
        .min()
        .unwrap())
}

/// Visits every unrooted subcubic tree with n labeled leaves as an edge list.
/// Leaves are nodes 0..n; internal nodes are numbered from n upward.
fn for_each_subcubic_tree(n: usize, f: &mut impl FnMut(&[(usize, usize)], usize)) {
    assert!(n >= 2);
    if n == 2 {
        f(&[(0, 1)], 2);
        return;
    }
    fn grow(
        edges: &mut Vec<(usize, usize)>,
        next_leaf: usize,
        n: usize,
        n_nodes: usize,
        f: &mut impl FnMut(&[(usize, usize)], usize),
    ) {
        if next_leaf == n {
            f(edges, n_nodes);
            return;
        }
        let w = n_nodes; // new internal node subdividing an edge
        for i in 0..edges.len() {
            let (u, v) = edges[i];
            edges[i] = (u, w);
            edges.push((w, v));
            edges.push((next_leaf, w));
            grow(edges, next_leaf + 1, n, n_nodes + 1, f);
            edges.pop();
            edges.pop();
            edges[i] = (u, v);
        }
    }
    let mut edges = vec![(0, n), (1, n), (2, n)];
    grow(&mut edges, 3, n, n + 1, f);
}

/// Leaf sets on one side of each edge, by flood fill.
fn edge_cuts(edges: &[(usize, usize)], n_nodes: usize, n_leaves: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n_nodes];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut cuts = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        let mut side = Vec::new();
        let mut stack = vec![u];
        let mut visited = vec![false; n_nodes];
        visited[u] = true;
        while let Some(x) = stack.pop() {
            if x < n_leaves {
                side.push(x);
            }
            for &y in &adj[x] {
                if !(x == u && y == v) && !visited[y] {
                    visited[y] = true;
                    stack.push(y);
                }
            }
        }
        side.sort_unstable();
        cuts.push(side);
    }
    cuts
}

/// Exact branch-width by enumerating all subcubic trees with n labeled
/// leaves, together with a minimizing decomposition.
pub fn branchwidth_bruteforce(a: &Arrangement) -> Result<(usize, BranchDecomposition)> {
    let n = a.n_parts();
    if n > 7 {
        return Err(Error::SizeLimit { what: "branch-width enumeration part count", limit: 7, actual: n });
    }
    if n < 2 {
        return Err(Error::InvalidInput("branch-decomposition needs at least 2 parts".into()));
    }
    let mut best: Option<(usize, Vec<(usize, usize)>, usize)> = None;
    for_each_subcubic_tree(n, &mut |edges, n_nodes| {
        let width = edge_cuts(edges, n_nodes, n)
            .iter()
            .map(|side| a.connectivity(side))
            .max()
            .unwrap_or(0);
        if best.as_ref().is_none_or(|(w, _, _)| width < *w) {
            best = Some((width, edges.to_vec(), n_nodes));
        }
    });
    let (width, edges, n_nodes) = best.unwrap();
    let mut adjacency = vec![Vec::new(); n_nodes];
    for &(u, v) in &edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let leaf_part: Vec<Option<usize>> =
        (0..n_nodes).map(|v| if v < n { Some(v) } else { None }).collect();
    Ok((width, BranchDecomposition::from_unrooted(&adjacency, &leaf_part)))
}

/// Applies the two compression operations exhaustively: every applicable
/// operation is tried at every step and all branches are checked to converge
/// to the same fixed point, which is returned.
///
/// The operations: drop one of two equal consecutive entries; drop the
/// interior of any interval whose interior values are sandwiched between the
/// endpoints monotonically.
pub fn typical_bruteforce(seq: &[usize]) -> Vec<usize> {
    let mut memo: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    fn go(seq: Vec<usize>, memo: &mut HashMap<Vec<usize>, Vec<usize>>) -> Vec<usize> {
        if let Some(r) = memo.get(&seq) {
            return r.clone();
        }
        let mut successors: Vec<Vec<usize>> = Vec::new();
        for i in 1..seq.len() {
            if seq[i - 1] == seq[i] {
                let mut s = seq.clone();
                s.remove(i);
                successors.push(s);
            }
        }
        for i in 0..seq.len() {
            for j in i + 2..seq.len() {
                let up = (i + 1..j).all(|k| seq[i] <= seq[k] && seq[k] <= seq[j]);
                let down = (i + 1..j).all(|k| seq[i] >= seq[k] && seq[k] >= seq[j]);
                if up || down {
                    let mut s = Vec::with_capacity(seq.len() - (j - i - 1));
                    s.extend_from_slice(&seq[..=i]);
                    s.extend_from_slice(&seq[j..]);
                    successors.push(s);
                }
            }
        }
        let result = if successors.is_empty() {
            seq.clone()
        } else {
            let results: Vec<Vec<usize>> =
                successors.into_iter().map(|s| go(s, memo)).collect();
            for r in &results[1..] {
                assert_eq!(r, &results[0], "compression is not confluent");
            }
            results.into_iter().next().unwrap()
        };
        memo.insert(seq, result.clone());
        result
    }
    go(seq.to_vec(), &mut memo)
}
