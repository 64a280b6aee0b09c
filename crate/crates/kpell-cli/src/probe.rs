//! Experimental searches behind the `probe` subcommand. These answer open
//! questions for one small instance at a time by plain backtracking; the
//! output is an observation about that instance, never a general claim.

use anyhow::{bail, Result};
use serde::Serialize;

use kpell::graph::{build_fib_cube, LabeledGraph};
use kpell::seqs::fibonacci;
use kpell::Budget;

/// Backtracking node cap; hitting it yields an inconclusive report rather
/// than an open-ended run.
const NODE_BUDGET: u64 = 20_000_000;

#[derive(Serialize)]
struct CycleReport {
    n: usize,
    k: u8,
    vertices: u64,
    method: &'static str,
    /// None when the search hit the node budget before finishing.
    exists: Option<bool>,
    nodes_explored: u64,
}

pub fn hamilton_cycle(n: usize, k: u8, g: &LabeledGraph, json: bool) -> String {
    let v = g.vertex_count();
    let mut nodes = 0u64;
    let exists = if v == 0 {
        Some(false)
    } else {
        let mut visited = vec![false; v];
        visited[0] = true;
        cycle_dfs(g, 0, 1, &mut visited, &mut nodes)
    };
    let report = CycleReport {
        n,
        k,
        vertices: v as u64,
        method: "exhaustive backtracking",
        exists,
        nodes_explored: nodes,
    };
    if json {
        return super::json_line(&report);
    }
    match report.exists {
        Some(e) => format!(
            "Hamiltonian cycle on {v} vertices: {} (exhaustive, {} nodes)\n",
            if e { "exists" } else { "does not exist" },
            report.nodes_explored
        ),
        None => format!(
            "Hamiltonian cycle search inconclusive: node budget {} exhausted\n",
            NODE_BUDGET
        ),
    }
}

/// Some(true): a cycle through all vertices closes back to vertex 0.
/// Some(false): subtree exhausted. None: out of node budget.
fn cycle_dfs(
    g: &LabeledGraph,
    at: u32,
    depth: usize,
    visited: &mut [bool],
    nodes: &mut u64,
) -> Option<bool> {
    *nodes += 1;
    if *nodes > NODE_BUDGET {
        return None;
    }
    if depth == g.vertex_count() {
        return Some(g.is_edge(at, 0));
    }
    let mut out_of_budget = false;
    for &u in g.neighbors_of(at) {
        if visited[u as usize] {
            continue;
        }
        visited[u as usize] = true;
        match cycle_dfs(g, u, depth + 1, visited, nodes) {
            Some(true) => return Some(true),
            Some(false) => {}
            None => out_of_budget = true,
        }
        visited[u as usize] = false;
        if out_of_budget {
            return None;
        }
    }
    Some(false)
}

#[derive(Serialize)]
struct EmbedDimReport {
    n: usize,
    k: u8,
    vertices: u64,
    /// Dimension the constructive embedding guarantees.
    guaranteed_dim: usize,
    method: &'static str,
    /// Smallest target dimension found; None when the search was cut off.
    smallest_dim: Option<usize>,
    nodes_explored: u64,
}

pub fn embed_dim(n: usize, k: u8, g: &LabeledGraph, json: bool) -> Result<String> {
    let v = g.vertex_count();
    if v > 16 {
        bail!("probe is limited to graphs with at most 16 vertices (got {v})");
    }
    if n == 0 {
        bail!("probe needs n >= 1");
    }
    let guaranteed = (2 * k as usize - 2) * n - 1;
    let budget = Budget::default();
    let mut nodes = 0u64;
    let mut smallest = None;
    for m in 0..=guaranteed {
        // no room for the vertex set: skip without searching
        if fibonacci(m as u64 + 2) < num_bigint::BigInt::from(v) {
            continue;
        }
        let cube = build_fib_cube(m, &budget)?;
        match subgraph_search(g, &cube, &mut nodes) {
            Some(true) => {
                smallest = Some(m);
                break;
            }
            Some(false) => {}
            None => break, // inconclusive: cannot certify any smaller bound
        }
    }
    let report = EmbedDimReport {
        n,
        k,
        vertices: v as u64,
        guaranteed_dim: guaranteed,
        method: "exhaustive backtracking",
        smallest_dim: smallest,
        nodes_explored: nodes,
    };
    if json {
        return Ok(super::json_line(&report));
    }
    Ok(match report.smallest_dim {
        Some(m) => format!(
            "smallest target dimension: {m} (constructive bound {guaranteed}, {} nodes)\n",
            report.nodes_explored
        ),
        None => format!(
            "search inconclusive within node budget {NODE_BUDGET} (constructive bound {guaranteed})\n"
        ),
    })
}

/// Does src embed into dst as a subgraph (edges preserved, map injective)?
/// Vertices are assigned in breadth-first order so every new vertex after
/// the first has a mapped neighbor constraining its candidates.
fn subgraph_search(src: &LabeledGraph, dst: &LabeledGraph, nodes: &mut u64) -> Option<bool> {
    let vs = src.vertex_count();
    if dst.vertex_count() < vs {
        return Some(false);
    }
    if vs == 0 {
        return Some(true);
    }
    let order = bfs_order(src);
    let mut map = vec![u32::MAX; vs];
    let mut used = vec![false; dst.vertex_count()];
    assign(src, dst, &order, 0, &mut map, &mut used, nodes)
}

fn bfs_order(g: &LabeledGraph) -> Vec<u32> {
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut seen = vec![false; g.vertex_count()];
    seen[0] = true;
    order.push(0u32);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors_of(u) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                order.push(w);
            }
        }
    }
    order
}

fn assign(
    src: &LabeledGraph,
    dst: &LabeledGraph,
    order: &[u32],
    idx: usize,
    map: &mut [u32],
    used: &mut [bool],
    nodes: &mut u64,
) -> Option<bool> {
    if idx == order.len() {
        return Some(true);
    }
    *nodes += 1;
    if *nodes > NODE_BUDGET {
        return None;
    }
    let u = order[idx];
    // candidates: neighbors of some already-mapped source neighbor, or the
    // whole target for the root
    let mapped_neighbor = src
        .neighbors_of(u)
        .iter()
        .find(|&&w| map[w as usize] != u32::MAX)
        .map(|&w| map[w as usize]);
    let candidates: Vec<u32> = match mapped_neighbor {
        Some(t) => dst.neighbors_of(t).to_vec(),
        None => (0..dst.vertex_count() as u32).collect(),
    };
    let mut out_of_budget = false;
    for c in candidates {
        if used[c as usize] || dst.degree(c) < src.degree(u) {
            continue;
        }
        let consistent = src
            .neighbors_of(u)
            .iter()
            .all(|&w| map[w as usize] == u32::MAX || dst.is_edge(c, map[w as usize]));
        if !consistent {
            continue;
        }
        map[u as usize] = c;
        used[c as usize] = true;
        match assign(src, dst, order, idx + 1, map, used, nodes) {
            Some(true) => return Some(true),
            Some(false) => {}
            None => out_of_budget = true,
        }
        map[u as usize] = u32::MAX;
        used[c as usize] = false;
        if out_of_budget {
            return None;
        }
    }
    Some(false)
}
