//! Token-wise embedding of the word graphs into binary-string cubes, with a
//! verified certificate.
//!
//! Each letter i < k maps to the block (10)^(k-1-i) 0^(2i) and each aligned
//! kk pair to 01 0^(4k-6); every block ends in 0, and dropping that final 0
//! yields strings of length (2k-2)n - 1 with no consecutive 1s.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_fib_cube, Family, LabeledGraph};
use crate::words::{is_valid_fib, render_letters, KPellWord, Letter};
use crate::Budget;

/// Image of a word as a bit string (one byte per bit). Greedy left-to-right
/// pairing of k-runs is well defined because runs of k have even length.
pub fn phi(w: &KPellWord) -> Vec<Letter> {
    let k = w.k();
    let letters = w.letters();
    let mut bits = Vec::with_capacity((2 * k as usize - 2) * letters.len());
    let mut i = 0;
    while i < letters.len() {
        let c = letters[i];
        if c == k {
            bits.extend_from_slice(&[0, 1]);
            bits.extend(std::iter::repeat_n(0, 4 * k as usize - 6));
            i += 2;
        } else {
            for _ in 0..k - 1 - c {
                bits.extend_from_slice(&[1, 0]);
            }
            bits.extend(std::iter::repeat_n(0, 2 * c as usize));
            i += 1;
        }
    }
    // every block ends in 0, so the final bit is droppable for n >= 1
    bits.pop();
    bits
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingCertificate {
    pub n: usize,
    pub k: Letter,
    pub target_dim: usize,
    pub injective: bool,
    pub edges_preserved: bool,
    pub checked_edges: u64,
}

#[derive(Debug, Clone)]
pub struct EmbeddingMap {
    /// images[i] = bit string for source vertex i, length target_dim.
    pub images: Vec<Vec<Letter>>,
    pub certificate: EmbeddingCertificate,
}

fn hamming_distance(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Maps every vertex through `phi` and certifies the result: images are
/// valid no-consecutive-ones strings of length (2k-2)n - 1, the map is
/// injective, and every source edge lands on a pair at Hamming distance 1.
/// Non-edges are deliberately not constrained (the image is a subgraph, not
/// an induced one). When the target cube is small enough it is materialized
/// and the edge checks run against its adjacency as well.
pub fn verify_embedding(g: &LabeledGraph, budget: &Budget) -> Result<EmbeddingMap> {
    let Family::KPell { n, k } = g.family() else {
        return Err(Error::WrongFamily {
            expected: "k-Pell",
            found: format!("{:?}", g.family()),
        });
    };
    if n == 0 {
        return Err(Error::InvalidParameter(
            "embedding needs n >= 1 (the empty word has no image)".into(),
        ));
    }
    let target_dim = (2 * k as usize - 2) * n - 1;
    if target_dim as u64 > budget.embedding_dim {
        return Err(Error::BudgetExceeded {
            what: "embedding target dimension".into(),
            needed: target_dim.to_string(),
            budget: budget.embedding_dim,
        });
    }

    let images: Vec<Vec<Letter>> = (0..g.vertex_count() as u32)
        .map(|i| phi(&KPellWord::new(g.word(i).to_vec(), k).expect("graph words are valid")))
        .collect();
    for (i, img) in images.iter().enumerate() {
        if img.len() != target_dim || !is_valid_fib(img) {
            return Err(Error::InvalidWord(format!(
                "image of vertex {} is not a valid length-{} target string: {}",
                g.render_vertex(i as u32),
                target_dim,
                render_letters(img)
            )));
        }
    }

    let distinct: HashSet<&[Letter]> = images.iter().map(Vec::as_slice).collect();
    if distinct.len() != images.len() {
        return Err(Error::InvalidWord("image collision: map not injective".into()));
    }

    let cube = if target_dim as u64 <= budget.materialized_dim {
        Some(build_fib_cube(target_dim, budget)?)
    } else {
        None
    };
    let edges: Vec<(u32, u32)> = g.edges().collect();
    edges
        .par_iter()
        .try_for_each(|&(u, v)| -> Result<()> {
            let (a, b) = (&images[u as usize], &images[v as usize]);
            let ok = match &cube {
                Some(c) => c.is_edge(c.index_of(a)?, c.index_of(b)?),
                None => hamming_distance(a, b) == 1,
            };
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidWord(format!(
                    "edge {} -- {} maps to a non-edge",
                    g.render_vertex(u),
                    g.render_vertex(v)
                )))
            }
        })?;

    Ok(EmbeddingMap {
        images,
        certificate: EmbeddingCertificate {
            n,
            k,
            target_dim,
            injective: true,
            edges_preserved: true,
            checked_edges: edges.len() as u64,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_kpell_graph;

    fn kw(s: &str, k: Letter) -> KPellWord {
        KPellWord::new(s.bytes().map(|b| b - b'0').collect(), k).unwrap()
    }

    #[test]
    fn phi_block_examples() {
        assert_eq!(phi(&kw("0", 2)), vec![1]);
        assert_eq!(phi(&kw("22", 2)), vec![0, 1, 0]);
        assert_eq!(phi(&kw("12", 3)), vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(phi(&kw("33", 3)), vec![0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(phi(&kw("00", 2)), vec![1, 0, 1]);
    }

    #[test]
    fn certificates_on_small_graphs() {
        let b = Budget::default();
        for (n, k) in [(2usize, 2u8), (1, 2), (1, 5), (3, 3), (4, 2), (2, 4)] {
            let g = build_kpell_graph(n, k, &b).unwrap();
            let m = verify_embedding(&g, &b).unwrap();
            let c = &m.certificate;
            assert_eq!(c.target_dim, (2 * k as usize - 2) * n - 1, "n={n} k={k}");
            assert!(c.injective && c.edges_preserved);
            assert_eq!(c.checked_edges, g.edge_count() as u64);
        }
    }

    #[test]
    fn direct_bitstring_route_past_materialization() {
        // (2k-2)n - 1 = 39 exceeds the materialized-cube cutoff, so edges
        // are checked directly on bit strings
        let mut b = Budget::default();
        assert!(39 > b.materialized_dim);
        let g = build_kpell_graph(4, 6, &b).unwrap();
        let m = verify_embedding(&g, &b).unwrap();
        assert_eq!(m.certificate.target_dim, 39);
        assert!(m.certificate.edges_preserved);
        b.embedding_dim = 30;
        assert!(verify_embedding(&g, &b).is_err());
    }

    #[test]
    fn image_sets_fit_in_target() {
        // injectivity needs |V| source vertices to fit among the target
        // cube's strings; spot-check the counts relation
        let b = Budget::default();
        let g = build_kpell_graph(2, 2, &b).unwrap();
        let cube = build_fib_cube(3, &b).unwrap();
        assert!(g.vertex_count() <= cube.vertex_count());
        let m = verify_embedding(&g, &b).unwrap();
        for img in &m.images {
            assert!(cube.index_of(img).is_ok());
        }
    }

    #[test]
    fn empty_word_has_no_image() {
        let b = Budget::default();
        let g = build_kpell_graph(0, 3, &b).unwrap();
        assert!(verify_embedding(&g, &b).is_err());
    }
}
