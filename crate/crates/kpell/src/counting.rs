//! Enumerative invariants: edge counts by three independent routes, cube
//! polynomials by four, the degree distribution, and the census of
//! near-maximum-degree vertices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Family, LabeledGraph};
use crate::seqs::k_fibonacci;
pub use crate::seqs::IntPolynomial;
use crate::words::{KPellWord, Letter};
use crate::Budget;

/// |E| via E_n = k E_{n-1} + E_{n-2} + F_{n+1} - F_n, E_0 = 0, E_1 = k - 1.
pub fn edge_count_recurrence(n: usize, k: Letter) -> BigInt {
    let k_big = BigInt::from(k);
    let mut e_prev2 = BigInt::zero();
    if n == 0 {
        return e_prev2;
    }
    let mut e_prev = BigInt::from(k - 1);
    let mut f_prev = BigInt::one(); // F_1
    let mut f_cur = k_big.clone(); // F_2
    for _ in 2..=n {
        let f_next = &k_big * &f_cur + &f_prev;
        let e_next = &k_big * &e_prev + &e_prev2 + &f_next - &f_cur;
        e_prev2 = std::mem::replace(&mut e_prev, e_next);
        f_prev = std::mem::replace(&mut f_cur, f_next);
    }
    e_prev
}

/// |E| as the convolution sum over i of F_i (F_{n-i+2} - F_{n-i+1}).
pub fn edge_count_sum_formula(n: usize, k: Letter) -> BigInt {
    let f: Vec<BigInt> = (0..=n as u64 + 2).map(|i| k_fibonacci(i, k as u64)).collect();
    let mut total = BigInt::zero();
    for i in 0..=n {
        total += &f[i] * (&f[n - i + 2] - &f[n - i + 1]);
    }
    total
}

/// Power-series coefficients of num(t)/den(t) where the coefficients are
/// themselves integer polynomials (in x). Requires den to start with 1.
pub fn polynomial_series(
    num: &[IntPolynomial],
    den: &[IntPolynomial],
    count: usize,
) -> Result<Vec<IntPolynomial>> {
    match den.first() {
        Some(p) if *p == IntPolynomial::one() => {}
        _ => {
            return Err(Error::InvalidParameter(
                "series denominator must have constant coefficient 1".into(),
            ))
        }
    }
    let mut out: Vec<IntPolynomial> = Vec::with_capacity(count);
    for i in 0..count {
        let mut acc = num.get(i).cloned().unwrap_or_else(IntPolynomial::zero);
        for j in 1..=i.min(den.len() - 1) {
            acc = acc.sub(&den[j].mul(&out[i - j]));
        }
        out.push(acc);
    }
    Ok(out)
}

fn poly_a(k: Letter) -> IntPolynomial {
    // k + (k-1)x
    IntPolynomial::from_i64(&[k as i64, k as i64 - 1])
}

fn poly_b() -> IntPolynomial {
    // 1 + x
    IntPolynomial::from_i64(&[1, 1])
}

/// Cube polynomials C_0..C_{count-1} as the t-series of
/// 1 / (1 - (k + (k-1)x) t - (1 + x) t^2).
pub fn cube_polynomial_gf_stream(k: Letter, count: usize) -> Result<Vec<IntPolynomial>> {
    let minus_a = poly_a(k).scale(&BigInt::from(-1));
    let minus_b = poly_b().scale(&BigInt::from(-1));
    polynomial_series(
        &[IntPolynomial::one()],
        &[IntPolynomial::one(), minus_a, minus_b],
        count,
    )
}

/// C_n = (k + (k-1)x) C_{n-1} + (1 + x) C_{n-2}, C_0 = 1, C_1 = k + (k-1)x.
pub fn cube_polynomial_recurrence(n: usize, k: Letter) -> IntPolynomial {
    let a = poly_a(k);
    let b = poly_b();
    let mut prev2 = IntPolynomial::one();
    if n == 0 {
        return prev2;
    }
    let mut prev = a.clone();
    for _ in 2..=n {
        let next = a.mul(&prev).add(&b.mul(&prev2));
        prev2 = std::mem::replace(&mut prev, next);
    }
    prev
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// C_n = sum over i of binom(n-i, i) (k + (k-1)x)^(n-2i) (1 + x)^i.
pub fn cube_polynomial_closed_form(n: usize, k: Letter) -> IntPolynomial {
    let a = poly_a(k);
    let b = poly_b();
    let mut total = IntPolynomial::zero();
    for i in 0..=n / 2 {
        let mut term = IntPolynomial::new(vec![binomial(n - i, i)]);
        for _ in 0..n - 2 * i {
            term = term.mul(&a);
        }
        for _ in 0..i {
            term = term.mul(&b);
        }
        total = total.add(&term);
    }
    total
}

/// c_i = number of induced i-dimensional hypercubes, found from each cube's
/// minimum vertex by extending one direction (up-neighbor) at a time. Every
/// added vertex is checked against the whole partial cube: adjacent to its
/// hypercube neighbors, non-adjacent to everything else, strictly above the
/// minimum. The counts are exact for arbitrary graphs.
pub fn cube_polynomial_bruteforce(g: &LabeledGraph, budget: &Budget) -> Result<IntPolynomial> {
    let v = g.vertex_count();
    if v as u64 > budget.dense_vertices {
        return Err(Error::BudgetExceeded {
            what: "induced-cube enumeration".into(),
            needed: v.to_string(),
            budget: budget.dense_vertices,
        });
    }
    let max_deg = (0..v as u32).map(|i| g.degree(i)).max().unwrap_or(0);
    if max_deg as u64 > budget.cube_max_degree {
        return Err(Error::BudgetExceeded {
            what: "induced-cube enumeration (degree cap)".into(),
            needed: max_deg.to_string(),
            budget: budget.cube_max_degree,
        });
    }
    let counts = (0..v as u32)
        .into_par_iter()
        .map(|root| {
            let mut local: Vec<u64> = vec![1]; // the 0-cube at root
            let ups: Vec<u32> = g
                .neighbors_of(root)
                .iter()
                .copied()
                .filter(|&u| u > root)
                .collect();
            let mut cube = vec![root];
            extend_cubes(g, root, &ups, 0, &mut cube, &mut local);
            local
        })
        .reduce(Vec::new, |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), 0);
            }
            for (i, x) in b.into_iter().enumerate() {
                a[i] += x;
            }
            a
        });
    Ok(IntPolynomial::new(
        counts.into_iter().map(BigInt::from).collect(),
    ))
}

/// cube[mask] holds the vertex at hypercube coordinate mask. Tries to grow
/// the cube by each later up-neighbor as a fresh direction.
fn extend_cubes(
    g: &LabeledGraph,
    root: u32,
    ups: &[u32],
    from: usize,
    cube: &mut Vec<u32>,
    counts: &mut Vec<u64>,
) {
    let half = cube.len();
    for i in from..ups.len() {
        let u = ups[i];
        if place(g, root, cube, half, 0, u) {
            complete_half(g, root, ups, i, half, cube, counts, 1);
            cube.truncate(half);
        }
    }
}

/// Recursively fills masks half..2*half-1 of the new half; mask half+m pairs
/// with existing mask m. On completion counts the cube and tries to extend it
/// further.
fn complete_half(
    g: &LabeledGraph,
    root: u32,
    ups: &[u32],
    dir_idx: usize,
    half: usize,
    cube: &mut Vec<u32>,
    counts: &mut Vec<u64>,
    m: usize,
) {
    if m == half {
        let dim = cube.len().ilog2() as usize;
        if counts.len() <= dim {
            counts.resize(dim + 1, 0);
        }
        counts[dim] += 1;
        extend_cubes(g, root, ups, dir_idx + 1, cube, counts);
        return;
    }
    debug_assert_eq!(cube.len(), half + m);
    // candidates must at least be adjacent to the partner vertex cube[m]
    let partner = cube[m];
    for &cand in g.neighbors_of(partner) {
        if place(g, root, cube, half, m, cand) {
            complete_half(g, root, ups, dir_idx, half, cube, counts, m + 1);
            cube.truncate(half + m);
        }
    }
}

/// Pushes cand as the vertex at mask half+m iff it is strictly above the
/// root, new, adjacent to exactly its hypercube neighbors among the vertices
/// placed so far, and non-adjacent to all the others.
fn place(g: &LabeledGraph, root: u32, cube: &mut Vec<u32>, half: usize, m: usize, cand: u32) -> bool {
    if cand <= root {
        return false;
    }
    let mask = half + m;
    for (j, &existing) in cube.iter().enumerate() {
        if existing == cand {
            return false;
        }
        let want_edge = (mask ^ j).count_ones() == 1;
        if g.is_edge(existing, cand) != want_edge {
            return false;
        }
    }
    cube.push(cand);
    true
}

/// Vertex degree from letter statistics: each 0 contributes 1, letters
/// 1..k-1 contribute 2 apiece minus one per run of k-1, and each aligned kk
/// pair contributes 1.
pub fn degree_formula(w: &KPellWord) -> u64 {
    let k = w.k();
    let mut mid = 0u64;
    for i in 1..k {
        mid += w.count_letter(i) as u64;
    }
    w.count_letter(0) as u64 + 2 * mid + w.count_letter(k) as u64 / 2 - w.runs_of(k - 1) as u64
}

/// Delta = 2n for k >= 3, 2n - 1 for k = 2 (n >= 1).
pub fn max_degree(n: usize, k: Letter) -> u64 {
    if n == 0 {
        0
    } else if k == 2 {
        2 * n as u64 - 1
    } else {
        2 * n as u64
    }
}

/// delta = ceil(n / 2).
pub fn min_degree(n: usize) -> u64 {
    (n as u64).div_ceil(2)
}

#[derive(Debug, Clone)]
pub struct DegreeCensus {
    pub histogram: BTreeMap<u64, u64>,
    pub min: u64,
    pub max: u64,
}

pub fn degree_census(g: &LabeledGraph) -> DegreeCensus {
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    for i in 0..g.vertex_count() as u32 {
        *histogram.entry(g.degree(i) as u64).or_insert(0) += 1;
    }
    let min = *histogram.keys().next().expect("nonempty graph");
    let max = *histogram.keys().next_back().expect("nonempty graph");
    DegreeCensus { histogram, min, max }
}

/// The published count of degree-(2n-1) vertices; diverges from the census
/// (see `count_degree_delta_minus_1`).
pub fn delta_minus_one_formula(n: usize, k: Letter) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    let e = (k - 2) as u32;
    let mut total = BigInt::from(n) * BigInt::from(n - 1).pow(e);
    for l in 1..=n {
        total += BigInt::from(n - l + 1) * BigInt::from((n - l) as u64).pow(e);
    }
    total
}

/// A vertex has degree 2n - 1 iff it has a single 0 and no letter above
/// k - 2, or no 0, no k, and exactly one run of k - 1.
pub fn delta_minus_one_characterization(w: &KPellWord) -> bool {
    let k = w.k();
    let c0 = w.count_letter(0);
    let ckm1 = w.count_letter(k - 1);
    let ck = w.count_letter(k);
    (c0 == 1 && ckm1 == 0 && ck == 0)
        || (c0 == 0 && ck == 0 && ckm1 >= 1 && w.runs_of(k - 1) == 1)
}

#[derive(Debug, Clone)]
pub struct DeltaMinusOneReport {
    pub formula: BigInt,
    pub census: u64,
    pub agrees: bool,
}

/// Census of degree-(Delta - 1) vertices next to the closed formula. The two
/// are reported side by side because they genuinely differ (already at
/// n = 2, k = 3: formula 4, census 5); the census is ground truth.
pub fn count_degree_delta_minus_1(g: &LabeledGraph) -> Result<DeltaMinusOneReport> {
    let Family::KPell { n, k } = g.family() else {
        return Err(Error::WrongFamily {
            expected: "k-Pell",
            found: format!("{:?}", g.family()),
        });
    };
    if k < 3 || n == 0 {
        return Err(Error::InvalidParameter(
            "near-maximum-degree census needs k >= 3 and n >= 1".into(),
        ));
    }
    let target = max_degree(n, k) - 1;
    let census = (0..g.vertex_count() as u32)
        .filter(|&i| g.degree(i) as u64 == target)
        .count() as u64;
    let formula = delta_minus_one_formula(n, k);
    let agrees = formula == BigInt::from(census);
    Ok(DeltaMinusOneReport {
        formula,
        census,
        agrees,
    })
}

/// Set equality between the degree-(2n-1) vertices and the two-case word
/// characterization.
pub fn characterization_matches_census(g: &LabeledGraph) -> Result<bool> {
    let Family::KPell { n, k } = g.family() else {
        return Err(Error::WrongFamily {
            expected: "k-Pell",
            found: format!("{:?}", g.family()),
        });
    };
    if k < 3 || n == 0 {
        return Err(Error::InvalidParameter(
            "near-maximum-degree characterization needs k >= 3 and n >= 1".into(),
        ));
    }
    let target = 2 * n as u64 - 1;
    for i in 0..g.vertex_count() as u32 {
        let w = KPellWord::new(g.word(i).to_vec(), k).expect("graph words are valid");
        if (g.degree(i) as u64 == target) != delta_minus_one_characterization(&w) {
            return Ok(false);
        }
    }
    Ok(true)
}
