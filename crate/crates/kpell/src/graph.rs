//! Immutable adjacency structures for the word graphs, the first-letter
//! decomposition, and Hamiltonian path construction.
//!
//! Adjacency: change one letter by +-1 within {0, ..., k-1}, or swap a
//! factor (k-1)(k-1) <-> kk, with the result required to stay valid. The
//! validity re-check is the single rule that restricts kk -> (k-1)(k-1)
//! to aligned pairs inside longer runs.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::words::{
    enumerate_fib, enumerate_kpell, fib_counts, fib_rank, is_valid_fib, is_valid_kpell,
    kpell_counts, kpell_rank, render_letters, KPellWord, Letter, WordList,
};
use crate::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Words of length n over {0, ..., k}, even runs of k.
    KPell { n: usize, k: Letter },
    /// Binary strings of length m without consecutive ones.
    Fibonacci { m: usize },
}

/// A frozen graph: canonical lexicographic vertex order, CSR adjacency with
/// sorted neighbor lists.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    family: Family,
    words: WordList,
    /// counts[m] = number of valid length-m words, for O(n) rank lookups.
    rank_table: Vec<u64>,
    offsets: Vec<u32>,
    adj: Vec<u32>,
}

impl LabeledGraph {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn word(&self, i: u32) -> &[Letter] {
        self.words.get(i as usize)
    }

    pub fn words(&self) -> &WordList {
        &self.words
    }

    pub fn render_vertex(&self, i: u32) -> String {
        render_letters(self.word(i))
    }

    /// Neighbor indices of vertex i, strictly ascending.
    pub fn neighbors_of(&self, i: u32) -> &[u32] {
        let i = i as usize;
        &self.adj[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    pub fn degree(&self, i: u32) -> usize {
        self.neighbors_of(i).len()
    }

    pub fn is_edge(&self, u: u32, v: u32) -> bool {
        self.neighbors_of(u).binary_search(&v).is_ok()
    }

    /// Vertex index of a word, by rank in the canonical order.
    pub fn index_of(&self, letters: &[Letter]) -> Result<u32> {
        let ok = match self.family {
            Family::KPell { n, k } => letters.len() == n && is_valid_kpell(letters, k),
            Family::Fibonacci { m } => letters.len() == m && is_valid_fib(letters),
        };
        if !ok {
            return Err(Error::WordNotInGraph(render_letters(letters)));
        }
        let rank = match self.family {
            Family::KPell { k, .. } => kpell_rank(letters, k, &self.rank_table),
            Family::Fibonacci { .. } => fib_rank(letters, &self.rank_table),
        };
        Ok(rank as u32)
    }

    /// All edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |u| {
            self.neighbors_of(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }
}

/// Calls f with every word adjacent to w. buf is scratch of the same length.
fn for_each_neighbor(
    w: &[Letter],
    k: Letter,
    buf: &mut [Letter],
    f: &mut dyn FnMut(&[Letter]),
) {
    buf.copy_from_slice(w);
    for i in 0..w.len() {
        let c = w[i];
        if c >= k {
            continue;
        }
        if c > 0 {
            buf[i] = c - 1;
            f(buf);
        }
        if c + 1 < k {
            buf[i] = c + 1;
            f(buf);
        }
        buf[i] = c;
    }
    // factor swaps: accepted iff the whole word still satisfies the
    // even-run invariant, which confines kk -> (k-1)(k-1) to aligned pairs
    for i in 0..w.len().saturating_sub(1) {
        if w[i] == k - 1 && w[i + 1] == k - 1 {
            buf[i] = k;
            buf[i + 1] = k;
            if is_valid_kpell(buf, k) {
                f(buf);
            }
            buf[i] = k - 1;
            buf[i + 1] = k - 1;
        } else if w[i] == k && w[i + 1] == k {
            buf[i] = k - 1;
            buf[i + 1] = k - 1;
            if is_valid_kpell(buf, k) {
                f(buf);
            }
            buf[i] = k;
            buf[i + 1] = k;
        }
    }
}

/// All words adjacent to w, sorted lexicographically.
pub fn neighbors(w: &KPellWord) -> Vec<KPellWord> {
    let k = w.k();
    let mut buf = w.letters().to_vec();
    let mut out = Vec::new();
    for_each_neighbor(w.letters(), k, &mut buf, &mut |x: &[Letter]| {
        out.push(x.to_vec());
    });
    out.sort();
    out.into_iter()
        .map(|ls| KPellWord::new(ls, k).expect("generated neighbors are valid"))
        .collect()
}

/// Definition-level adjacency test, independent of neighbor generation:
/// the words differ in one position by a unit step below k, or in one
/// adjacent pair that is (k-1)(k-1) in one word and kk in the other.
pub fn are_adjacent(u: &[Letter], v: &[Letter], k: Letter) -> bool {
    if u.len() != v.len() || !is_valid_kpell(u, k) || !is_valid_kpell(v, k) {
        return false;
    }
    let diff: Vec<usize> = (0..u.len()).filter(|&i| u[i] != v[i]).collect();
    match diff.as_slice() {
        [i] => {
            let (a, b) = (u[*i], v[*i]);
            a < k && b < k && a.abs_diff(b) == 1
        }
        [i, j] if *j == *i + 1 => {
            let pa = (u[*i], u[*i + 1]);
            let pb = (v[*i], v[*i + 1]);
            let low = (k - 1, k - 1);
            let high = (k, k);
            (pa == low && pb == high) || (pa == high && pb == low)
        }
        _ => false,
    }
}

/// Two-pass CSR assembly over a fixed word list.
fn assemble(
    words: &WordList,
    k_for_gen: Option<Letter>,
    rank_table: &[u64],
) -> Result<(Vec<u32>, Vec<u32>)> {
    let v = words.len();
    let width = words.width();
    let mut buf = vec![0u8; width];
    let emit = |w: &[Letter], buf: &mut [Letter], f: &mut dyn FnMut(&[Letter])| match k_for_gen {
        Some(k) => for_each_neighbor(w, k, buf, f),
        None => for_each_fib_neighbor(w, buf, f),
    };

    let mut offsets = vec![0u32; v + 1];
    let mut total: u64 = 0;
    for i in 0..v {
        let mut deg: u32 = 0;
        emit(words.get(i), &mut buf, &mut |_| deg += 1);
        total += deg as u64;
        if total > u32::MAX as u64 {
            return Err(Error::InvalidParameter(
                "graph too large: adjacency index would overflow u32".into(),
            ));
        }
        offsets[i + 1] = deg;
    }
    for i in 0..v {
        offsets[i + 1] += offsets[i];
    }

    let mut adj = vec![0u32; total as usize];
    let mut cursor: Vec<u32> = offsets[..v].to_vec();
    for i in 0..v {
        emit(words.get(i), &mut buf, &mut |x: &[Letter]| {
            let r = match k_for_gen {
                Some(k) => kpell_rank(x, k, rank_table),
                None => fib_rank(x, rank_table),
            };
            adj[cursor[i] as usize] = r as u32;
            cursor[i] += 1;
        });
    }
    for i in 0..v {
        adj[offsets[i] as usize..offsets[i + 1] as usize].sort_unstable();
    }
    Ok((offsets, adj))
}

pub fn build_kpell_graph(n: usize, k: Letter, budget: &Budget) -> Result<LabeledGraph> {
    let words = enumerate_kpell(n, k, budget)?;
    if words.len() as u64 > u32::MAX as u64 {
        return Err(Error::InvalidParameter(
            "vertex count exceeds u32 index space".into(),
        ));
    }
    let rank_table = kpell_counts(n, k);
    let (offsets, adj) = assemble(&words, Some(k), &rank_table)?;
    Ok(LabeledGraph {
        family: Family::KPell { n, k },
        words,
        rank_table,
        offsets,
        adj,
    })
}

fn for_each_fib_neighbor(w: &[Letter], buf: &mut [Letter], f: &mut dyn FnMut(&[Letter])) {
    buf.copy_from_slice(w);
    for i in 0..w.len() {
        if w[i] == 1 {
            buf[i] = 0;
            f(buf);
        } else {
            let left_ok = i == 0 || w[i - 1] == 0;
            let right_ok = i + 1 == w.len() || w[i + 1] == 0;
            if left_ok && right_ok {
                buf[i] = 1;
                f(buf);
            }
        }
        buf[i] = w[i];
    }
}

pub fn build_fib_cube(m: usize, budget: &Budget) -> Result<LabeledGraph> {
    let words = enumerate_fib(m, budget)?;
    if words.len() as u64 > u32::MAX as u64 {
        return Err(Error::InvalidParameter(
            "vertex count exceeds u32 index space".into(),
        ));
    }
    let rank_table = fib_counts(m);
    let (offsets, adj) = assemble(&words, None, &rank_table)?;
    Ok(LabeledGraph {
        family: Family::Fibonacci { m },
        words,
        rank_table,
        offsets,
        adj,
    })
}

/// First-letter partition: k prefix blocks, each a copy of the next smaller
/// graph, and the kk block, a copy of the graph two sizes down, attached to
/// the (k-1) block by one link edge per kk-block vertex.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Block j = vertices whose word starts with letter j, j < k.
    pub prefix_blocks: Vec<Range<u32>>,
    /// Vertices whose word starts with kk.
    pub tail_block: Range<u32>,
    /// (vertex (k-1)(k-1)w, vertex kkw) pairs, ascending in both components.
    pub links: Vec<(u32, u32)>,
}

pub fn decompose(g: &LabeledGraph) -> Result<Decomposition> {
    let Family::KPell { n, k } = g.family() else {
        return Err(Error::WrongFamily {
            expected: "k-Pell",
            found: format!("{:?}", g.family()),
        });
    };
    if n < 2 {
        return Err(Error::DecompositionTooShort(n));
    }
    // lexicographic order groups vertices by first letter
    let block = g.rank_table[n - 1];
    let tail = g.rank_table[n - 2];
    let prefix_blocks: Vec<Range<u32>> = (0..k as u64)
        .map(|j| (j * block) as u32..((j + 1) * block) as u32)
        .collect();
    let tail_start = k as u64 * block;
    let tail_block = tail_start as u32..(tail_start + tail) as u32;
    debug_assert_eq!(tail_start + tail, g.vertex_count() as u64);
    // kkw's unique neighbor in the (k-1) block is (k-1)(k-1)w; within that
    // block, words starting (k-1)(k-1) come after the k-1 prefixes 0..k-1
    let partner_base = (k - 1) as u64 * block + (k - 1) as u64 * tail;
    let links = (0..tail)
        .map(|r| ((partner_base + r) as u32, (tail_start + r) as u32))
        .collect();
    Ok(Decomposition {
        prefix_blocks,
        tail_block,
        links,
    })
}

// ---------------------------------------------------------------------------
// Hamiltonian path
// ---------------------------------------------------------------------------

/// Hamiltonian path of an R x C grid ending at (R-1, tc), free start.
/// None exactly when R and C are odd and (R-1 + tc) is odd, which is the
/// bipartite color obstruction.
fn grid_path(r: usize, c: usize, tc: usize) -> Option<Vec<(u32, u32)>> {
    debug_assert!(r >= 2 && tc < c);
    if c == 1 {
        return Some((0..r).map(|row| (row as u32, 0)).collect());
    }
    if tc == 0 || tc == c - 1 {
        // column serpentine; parity of the column count fixes the start row
        // so the final column is traversed downward
        let cols: Vec<usize> = if tc == 0 {
            (0..c).rev().collect()
        } else {
            (0..c).collect()
        };
        let start_down = cols.len() % 2 == 1;
        let mut path = Vec::with_capacity(r * c);
        for (i, &col) in cols.iter().enumerate() {
            if (i % 2 == 0) == start_down {
                path.extend((0..r).map(|row| (row as u32, col as u32)));
            } else {
                path.extend((0..r).rev().map(|row| (row as u32, col as u32)));
            }
        }
        return Some(path);
    }
    // interior target: cover the columns right of tc first, ending at
    // (0, tc+1), then walk the left block from (0, tc) down to (R-1, tc)
    let w1 = tc + 1;
    if !(r % 2 == 1 && w1 % 2 == 0) {
        if let Some(left) = side_block(r, w1, 0) {
            let mut path = serp_to(r, tc + 1, c - 1, true);
            path.extend(left);
            return Some(path);
        }
    }
    // mirrored variant when the left width has the blocking parity
    let w2 = c - tc;
    if !(r % 2 == 1 && w2 % 2 == 0) {
        let tcm = c - 1 - tc;
        if let Some(left) = side_block(r, tcm + 1, 0) {
            let mut path = serp_to(r, tcm + 1, c - 1, true);
            path.extend(left);
            return Some(
                path.into_iter()
                    .map(|(row, col)| (row, (c - 1) as u32 - col))
                    .collect(),
            );
        }
    }
    None
}

/// Hamiltonian path of the r x w block at columns coloff.., from the block's
/// top-right corner to its bottom-right corner. None iff r odd and w even.
fn side_block(r: usize, w: usize, coloff: usize) -> Option<Vec<(u32, u32)>> {
    let hi = coloff + w - 1;
    if w == 1 {
        return Some((0..r).map(|row| (row as u32, hi as u32)).collect());
    }
    let mut path = Vec::with_capacity(r * w);
    if r % 2 == 0 {
        // row serpentine
        for row in 0..r {
            if row % 2 == 0 {
                path.extend((coloff..=hi).rev().map(|col| (row as u32, col as u32)));
            } else {
                path.extend((coloff..=hi).map(|col| (row as u32, col as u32)));
            }
        }
        return Some(path);
    }
    if w % 2 == 0 {
        return None;
    }
    // r odd, w odd: top row leftward, left column downward, then a column
    // serpentine over the remaining (r-1) x (w-1) block
    path.extend((coloff..=hi).rev().map(|col| (0, col as u32)));
    path.extend((1..r).map(|row| (row as u32, coloff as u32)));
    for (i, col) in (coloff + 1..=hi).enumerate() {
        if i % 2 == 0 {
            path.extend((1..r).rev().map(|row| (row as u32, col as u32)));
        } else {
            path.extend((1..r).map(|row| (row as u32, col as u32)));
        }
    }
    Some(path)
}

/// Column serpentine over columns c0..=c1 ending at the top (row 0) or
/// bottom (row r-1) of column c0; the start corner is whatever parity forces.
fn serp_to(r: usize, c0: usize, c1: usize, end_col_top: bool) -> Vec<(u32, u32)> {
    let ncols = c1 - c0 + 1;
    let mut up = if ncols % 2 == 1 {
        end_col_top
    } else {
        !end_col_top
    };
    let mut path = Vec::with_capacity(r * ncols);
    for col in (c0..=c1).rev() {
        if up {
            path.extend((0..r).rev().map(|row| (row as u32, col as u32)));
        } else {
            path.extend((0..r).map(|row| (row as u32, col as u32)));
        }
        up = !up;
    }
    path
}

/// Word sequence of a Hamiltonian path of the length-n graph, built by
/// recursion on the first-letter decomposition: a Hamiltonian path of the
/// k x F_{n,k} grid formed by the prefix copies, steered to end at
/// (k-1)(k-1)g, then the kk block traversed from g. The grid target column
/// is chosen among the two endpoints of the smaller path so the grid's
/// bipartite parity constraint is satisfiable.
fn construct_ham_words(n: usize, k: Letter) -> Result<Vec<Vec<Letter>>> {
    let mut prev2: Vec<Vec<Letter>> = vec![vec![]];
    if n == 0 {
        return Ok(prev2);
    }
    let mut prev: Vec<Vec<Letter>> = (0..k).map(|j| vec![j]).collect();
    for m in 2..=n {
        let cols = prev.len();
        let counts = kpell_counts(m - 1, k);
        let mut pos = vec![0u32; cols];
        for (i, w) in prev.iter().enumerate() {
            pos[kpell_rank(w, k, &counts) as usize] = i as u32;
        }
        let mut chosen: Option<(bool, usize)> = None;
        for rev in [false, true] {
            let gamma = if rev {
                prev2.last().unwrap()
            } else {
                prev2.first().unwrap()
            };
            let mut target = Vec::with_capacity(m - 1);
            target.push(k - 1);
            target.extend_from_slice(gamma);
            let c = pos[kpell_rank(&target, k, &counts) as usize] as usize;
            if k % 2 == 0 || cols % 2 == 0 || c % 2 == 0 {
                chosen = Some((rev, c));
                break;
            }
        }
        let Some((rev, c)) = chosen else {
            return Err(Error::PathConstruction(format!(
                "no feasible splice column at level {m} (k = {k})"
            )));
        };
        let grid = grid_path(k as usize, cols, c).ok_or_else(|| {
            Error::PathConstruction(format!("grid path infeasible at level {m} (k = {k})"))
        })?;
        let mut next = Vec::with_capacity(k as usize * cols + prev2.len());
        for (row, col) in grid {
            let mut w = Vec::with_capacity(m);
            w.push(row as Letter);
            w.extend_from_slice(&prev[col as usize]);
            next.push(w);
        }
        let tail: Box<dyn Iterator<Item = &Vec<Letter>>> = if rev {
            Box::new(prev2.iter().rev())
        } else {
            Box::new(prev2.iter())
        };
        for g in tail {
            let mut w = Vec::with_capacity(m);
            w.push(k);
            w.push(k);
            w.extend_from_slice(g);
            next.push(w);
        }
        prev2 = std::mem::replace(&mut prev, next);
    }
    Ok(prev)
}

/// Checks that path visits every vertex exactly once and that consecutive
/// vertices are adjacent in g.
pub fn validate_path(g: &LabeledGraph, path: &[u32]) -> Result<()> {
    let v = g.vertex_count();
    if path.len() != v {
        return Err(Error::PathConstruction(format!(
            "path length {} != vertex count {v}",
            path.len()
        )));
    }
    let mut seen = vec![false; v];
    for &i in path {
        let i = i as usize;
        if i >= v || seen[i] {
            return Err(Error::PathConstruction(format!(
                "vertex index {i} out of range or repeated"
            )));
        }
        seen[i] = true;
    }
    for pair in path.windows(2) {
        if !g.is_edge(pair[0], pair[1]) {
            return Err(Error::PathConstruction(format!(
                "consecutive vertices {} and {} are not adjacent",
                g.render_vertex(pair[0]),
                g.render_vertex(pair[1])
            )));
        }
    }
    Ok(())
}

/// A Hamiltonian path as vertex indices, validated against g's adjacency
/// before return.
pub fn hamiltonian_path(g: &LabeledGraph) -> Result<Vec<u32>> {
    let Family::KPell { n, k } = g.family() else {
        return Err(Error::WrongFamily {
            expected: "k-Pell",
            found: format!("{:?}", g.family()),
        });
    };
    let words = construct_ham_words(n, k)?;
    let path: Vec<u32> = words
        .iter()
        .map(|w| kpell_rank(w, k, &g.rank_table) as u32)
        .collect();
    validate_path(g, &path)?;
    Ok(path)
}

fn graph_name(family: Family) -> String {
    match family {
        Family::KPell { n, k } => format!("kpell_{n}_{k}"),
        Family::Fibonacci { m } => format!("fibonacci_{m}"),
    }
}

/// Graphviz rendering: vertices labeled by their words, edges unlabeled,
/// fixed output order. Labels contain only digits and parentheses, so no
/// escaping is needed.
pub fn to_dot(g: &LabeledGraph) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", graph_name(g.family()));
    for i in 0..g.vertex_count() as u32 {
        let _ = writeln!(out, "  v{} [label=\"{}\"];", i, g.render_vertex(i));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  v{u} -- v{v};");
    }
    out.push_str("}\n");
    out
}

/// GraphML rendering with the same vertex labels as `to_dot`.
pub fn to_graphml(g: &LabeledGraph) -> String {
    use std::fmt::Write;
    let mut out = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n\
         \x20 <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n",
    );
    let _ = writeln!(
        out,
        "  <graph id=\"{}\" edgedefault=\"undirected\">",
        graph_name(g.family())
    );
    for i in 0..g.vertex_count() as u32 {
        let _ = writeln!(
            out,
            "    <node id=\"n{}\"><data key=\"label\">{}</data></node>",
            i,
            g.render_vertex(i)
        );
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "    <edge source=\"n{u}\" target=\"n{v}\"/>");
    }
    out.push_str("  </graph>\n</graphml>\n");
    out
}

#[derive(serde::Serialize)]
struct AdjacencyFile {
    family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<Letter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    vertices: Vec<String>,
    edges: Vec<(u32, u32)>,
}

/// JSON rendering: rendered vertex list plus the edge list as index pairs
/// [i, j] with i < j, ascending.
pub fn to_adjacency_json(g: &LabeledGraph) -> String {
    let (family, n, k, m) = match g.family() {
        Family::KPell { n, k } => ("kpell", Some(n), Some(k), None),
        Family::Fibonacci { m } => ("fibonacci", None, None, Some(m)),
    };
    let file = AdjacencyFile {
        family,
        n,
        k,
        m,
        vertices: (0..g.vertex_count() as u32)
            .map(|i| g.render_vertex(i))
            .collect(),
        edges: g.edges().collect(),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail")
}
