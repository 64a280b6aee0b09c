//! Acceptance suite: twelve end-to-end criteria, one printed line each.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines;
//! the single test fails if any criterion fails.
//!
//! Graphs small enough for the all-source distance sweep are built once and
//! shared across criteria; the largest instances are built transiently for
//! the counting criteria only.

use std::collections::BTreeMap;
use std::process::Command;

use num_bigint::BigInt;

use kpell::counting::{
    characterization_matches_census, count_degree_delta_minus_1, cube_polynomial_bruteforce,
    cube_polynomial_closed_form, cube_polynomial_gf_stream, cube_polynomial_recurrence,
    degree_census, degree_formula, edge_count_recurrence, edge_count_sum_formula, max_degree,
    min_degree, IntPolynomial,
};
use kpell::embed::verify_embedding;
use kpell::graph::{build_kpell_graph, hamiltonian_path, LabeledGraph};
use kpell::metrics::{
    center_induces_fibonacci_cube, closed_form_diameter, closed_form_radius,
    eccentricity_profile, predicted_center, verify_median_graph, EccentricityProfile, MedianMode,
};
use kpell::seqs::{edge_count_gf, gf_coefficients, k_fibonacci};
use kpell::words::KPellWord;
use kpell::Budget;

const SEED: u64 = 7;

struct Ctx {
    budget: Budget,
    /// Graphs with at most budget.bfs_vertices vertices, keyed (k, n).
    graphs: BTreeMap<(u8, usize), LabeledGraph>,
    profiles: BTreeMap<(u8, usize), EccentricityProfile>,
}

fn fits(n: usize, k: u8, cap: u64) -> bool {
    k_fibonacci(n as u64 + 1, k as u64) <= BigInt::from(cap)
}

fn build_ctx() -> Ctx {
    let budget = Budget::default();
    let mut graphs = BTreeMap::new();
    let mut profiles = BTreeMap::new();
    for k in 2..=9u8 {
        for n in 0.. {
            if !fits(n, k, budget.bfs_vertices) {
                break;
            }
            let g = build_kpell_graph(n, k, &budget).expect("under budget");
            // distance sweeps: the full range for k <= 6, the reference-table
            // range for larger k
            if k <= 6 || n <= 5 {
                let p = eccentricity_profile(&g, &budget).expect("connected");
                profiles.insert((k, n), p);
            }
            graphs.insert((k, n), g);
        }
    }
    Ctx {
        budget,
        graphs,
        profiles,
    }
}

type Outcome = Result<String, String>;

fn criterion_1_2(ctx: &Ctx) -> (Outcome, Outcome) {
    let mut checked = 0u32;
    let mut max_v = 0u64;
    for k in 2..=6u8 {
        for n in 0.. {
            if !fits(n, k, ctx.budget.vertices) {
                break;
            }
            let owned;
            let g = match ctx.graphs.get(&(k, n)) {
                Some(g) => g,
                None => {
                    owned = build_kpell_graph(n, k, &ctx.budget).expect("under budget");
                    &owned
                }
            };
            let v = BigInt::from(g.vertex_count());
            if v != k_fibonacci(n as u64 + 1, k as u64) {
                return (Err(format!("vertex count off at n={n} k={k}")), Err("edge counts unchecked".into()));
            }
            let e = BigInt::from(g.edge_count());
            let rec = edge_count_recurrence(n, k);
            let sum = edge_count_sum_formula(n, k);
            let series = gf_coefficients(&edge_count_gf(k as u64), n + 1)
                .expect("integer coefficients")[n]
                .clone();
            if e != rec || e != sum || e != series {
                return (
                    Ok(format!("{checked} graphs")),
                    Err(format!("edge counts disagree at n={n} k={k}: built {e}, recurrence {rec}, sum {sum}, series {series}")),
                );
            }
            checked += 1;
            max_v = max_v.max(g.vertex_count() as u64);
        }
    }
    // spot anchors from the two drawn examples
    let anchors_ok = ctx.graphs[&(2, 2)].edge_count() == 5 && ctx.graphs[&(3, 2)].edge_count() == 13;
    (
        Ok(format!("{checked} graphs, largest {max_v} vertices")),
        if anchors_ok {
            Ok(format!("four-way agreement on {checked} graphs"))
        } else {
            Err("anchor edge counts are wrong".into())
        },
    )
}

fn criterion_3(ctx: &Ctx) -> Outcome {
    let mut checked = 0u32;
    for (&(k, n), p) in &ctx.profiles {
        if k > 6 {
            continue;
        }
        if p.radius as u64 != closed_form_radius(n, k) {
            return Err(format!(
                "radius {} != closed form {} at n={n} k={k}",
                p.radius,
                closed_form_radius(n, k)
            ));
        }
        if p.diameter as u64 != closed_form_diameter(n, k) {
            return Err(format!(
                "diameter {} != closed form {} at n={n} k={k}",
                p.diameter,
                closed_form_diameter(n, k)
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} eccentricity profiles"))
}

fn criterion_4(ctx: &Ctx) -> Outcome {
    // exact set equality against the parity-dispatched families
    let mut compared = 0u32;
    for (&(k, n), p) in &ctx.profiles {
        if k > 6 || n < 2 {
            continue;
        }
        let predicted = predicted_center(&ctx.graphs[&(k, n)], &ctx.budget)
            .map_err(|e| format!("prediction failed at n={n} k={k}: {e}"))?;
        if predicted != p.center {
            return Err(format!("center set mismatch at n={n} k={k}"));
        }
        compared += 1;
    }
    // reference-table reproduction, k = 2..9
    let rows: &[(u8, &[u64])] = &[
        (2, &[2, 3, 5, 8, 13, 21, 34, 55, 89, 144]),
        (3, &[1, 3, 2, 8, 4, 20, 8, 48, 16, 112]),
        (4, &[2, 3, 5, 8, 13]),
        (5, &[1, 3, 2, 8, 4]),
        (6, &[2, 3, 5, 8, 13]),
        (7, &[1, 3, 2, 8, 4]),
        (8, &[2, 3, 5, 8, 13]),
        (9, &[1, 3, 2, 8, 4]),
    ];
    for &(k, sizes) in rows {
        for (i, &want) in sizes.iter().enumerate() {
            let n = i + 1;
            let got = ctx.profiles[&(k, n)].center.len() as u64;
            if got != want {
                return Err(format!("table cell n={n} k={k}: center size {got}, expected {want}"));
            }
        }
    }
    Ok(format!("{compared} set equalities plus 50 table cells"))
}

fn criterion_5(ctx: &Ctx) -> Outcome {
    let mut checked = 0u32;
    for (&(k, n), g) in &ctx.graphs {
        if k % 2 != 0 || n < 2 {
            continue;
        }
        match center_induces_fibonacci_cube(g, &ctx.budget) {
            Ok(true) => checked += 1,
            Ok(false) => return Err(format!("letter map is not an isomorphism at n={n} k={k}")),
            Err(e) => return Err(format!("check failed at n={n} k={k}: {e}")),
        }
    }
    Ok(format!("{checked} even-k centers"))
}

fn criterion_6(ctx: &Ctx) -> Outcome {
    let mut brute_checked = 0u32;
    for (&(k, n), g) in &ctx.graphs {
        if k > 6 {
            continue;
        }
        let rec = cube_polynomial_recurrence(n, k);
        if cube_polynomial_closed_form(n, k) != rec {
            return Err(format!("closed form diverges at n={n} k={k}"));
        }
        if g.vertex_count() as u64 <= ctx.budget.dense_vertices {
            let bf = cube_polynomial_bruteforce(g, &ctx.budget)
                .map_err(|e| format!("brute force failed at n={n} k={k}: {e}"))?;
            if bf != rec {
                return Err(format!("induced-cube census diverges at n={n} k={k}"));
            }
            if bf.coeff(0) != BigInt::from(g.vertex_count())
                || bf.coeff(1) != BigInt::from(g.edge_count())
            {
                return Err(format!("low coefficients are not |V|, |E| at n={n} k={k}"));
            }
            brute_checked += 1;
        }
    }
    // the fixed low-order expansions, substituted at several k
    for k in 2..=5u8 {
        for n in 0..=4usize {
            if cube_polynomial_recurrence(n, k) != printed_polynomial(n, k as i64) {
                return Err(format!("printed expansion differs at n={n} k={k}"));
            }
        }
    }
    // series route
    for k in 2..=6u8 {
        let stream = cube_polynomial_gf_stream(k, 13).expect("unit constant term");
        for (n, c) in stream.iter().enumerate() {
            if *c != cube_polynomial_recurrence(n, k) {
                return Err(format!("series coefficient {n} differs at k={k}"));
            }
        }
    }
    Ok(format!("{brute_checked} censuses, 20 fixtures, 65 series coefficients"))
}

fn printed_polynomial(n: usize, k: i64) -> IntPolynomial {
    let coeffs: Vec<i64> = match n {
        0 => vec![1],
        1 => vec![k, k - 1],
        2 => vec![k * k + 1, 2 * k * k - 2 * k + 1, k * k - 2 * k + 1],
        3 => vec![
            k * k * k + 2 * k,
            3 * k * k * k - 3 * k * k + 4 * k - 2,
            3 * k * k * k - 6 * k * k + 5 * k - 2,
            k * k * k - 3 * k * k + 3 * k - 1,
        ],
        4 => {
            let (k2, k3, k4) = (k * k, k * k * k, k * k * k * k);
            vec![
                k4 + 3 * k2 + 1,
                4 * k4 - 4 * k3 + 9 * k2 - 6 * k + 2,
                6 * k4 - 12 * k3 + 15 * k2 - 12 * k + 4,
                4 * k4 - 12 * k3 + 15 * k2 - 10 * k + 3,
                k4 - 4 * k3 + 6 * k2 - 4 * k + 1,
            ]
        }
        _ => unreachable!(),
    };
    IntPolynomial::from_i64(&coeffs)
}

fn criterion_7(ctx: &Ctx) -> Outcome {
    let mut vertices = 0u64;
    for (&(k, n), g) in &ctx.graphs {
        for i in 0..g.vertex_count() as u32 {
            let w = KPellWord::new(g.word(i).to_vec(), k).expect("valid");
            if degree_formula(&w) != g.degree(i) as u64 {
                return Err(format!("degree formula off for {} in n={n} k={k}", w));
            }
        }
        vertices += g.vertex_count() as u64;
        if n >= 1 {
            let census = degree_census(g);
            if census.max != max_degree(n, k) || census.min != min_degree(n) {
                return Err(format!(
                    "extremes ({}, {}) != formulas ({}, {}) at n={n} k={k}",
                    census.min,
                    census.max,
                    min_degree(n),
                    max_degree(n, k)
                ));
            }
        }
    }
    Ok(format!("{vertices} vertex degrees"))
}

fn criterion_8(ctx: &Ctx) -> Outcome {
    let mut divergences = 0u32;
    for k in [3u8, 4] {
        for n in 1..=8usize {
            let g = &ctx.graphs[&(k, n)];
            let r = count_degree_delta_minus_1(g).map_err(|e| e.to_string())?;
            if !characterization_matches_census(g).map_err(|e| e.to_string())? {
                return Err(format!("word characterization misses the census at n={n} k={k}"));
            }
            if !r.agrees {
                divergences += 1;
            }
            if n == 2 && k == 3 && (r.formula != BigInt::from(4) || r.census != 5) {
                return Err(format!(
                    "expected the known 4-vs-5 gap at n=2 k=3, got formula {} census {}",
                    r.formula, r.census
                ));
            }
        }
    }
    // the published closed form genuinely undercounts on some inputs (first
    // at n=2, k=3: formula 4 vs census 5), so the count is reported, not
    // gated; the word characterization above is exact and is what we gate.
    Ok(format!(
        "16 censuses; closed form diverges on {divergences} of them as expected"
    ))
}

fn criterion_9(ctx: &Ctx) -> Outcome {
    let mut exhaustive = 0u32;
    let mut sampled = 0u32;
    for (&(k, n), g) in &ctx.graphs {
        if k > 6 || g.vertex_count() as u64 > ctx.budget.dense_vertices {
            continue;
        }
        let r = verify_median_graph(g, &ctx.budget, SEED).map_err(|e| e.to_string())?;
        if !r.all_unique {
            let (x, y, z) = r.counterexample.expect("failure carries a triple");
            return Err(format!(
                "triple ({}, {}, {}) lacks a unique median at n={n} k={k}",
                g.render_vertex(x),
                g.render_vertex(y),
                g.render_vertex(z)
            ));
        }
        match r.mode {
            MedianMode::Exhaustive => exhaustive += 1,
            MedianMode::Sampled { .. } => sampled += 1,
        }
    }
    Ok(format!("{exhaustive} exhaustive, {sampled} sampled graphs"))
}

fn criterion_10(ctx: &Ctx) -> Outcome {
    let mut certificates = 0u32;
    for k in 2..=21u8 {
        for n in 1.. {
            if (2 * k as usize - 2) * n - 1 > ctx.budget.embedding_dim as usize
                || !fits(n, k, ctx.budget.bfs_vertices)
            {
                break;
            }
            let owned;
            let g = match ctx.graphs.get(&(k, n)) {
                Some(g) => g,
                None => {
                    owned = build_kpell_graph(n, k, &ctx.budget).expect("under budget");
                    &owned
                }
            };
            let map = verify_embedding(g, &ctx.budget)
                .map_err(|e| format!("certificate failed at n={n} k={k}: {e}"))?;
            if !map.certificate.injective || !map.certificate.edges_preserved {
                return Err(format!("incomplete certificate at n={n} k={k}"));
            }
            certificates += 1;
        }
    }
    Ok(format!("{certificates} certificates"))
}

fn criterion_11(ctx: &Ctx) -> Outcome {
    let mut paths = 0u32;
    for (&(k, n), g) in &ctx.graphs {
        if g.vertex_count() as u64 > ctx.budget.hamiltonian_vertices {
            continue;
        }
        hamiltonian_path(g).map_err(|e| format!("no validated path at n={n} k={k}: {e}"))?;
        paths += 1;
    }
    Ok(format!("{paths} validated paths"))
}

fn criterion_12() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_kpell-cli"))
            .args(["verify", "--n-max", "5", "-k", "2,3", "--seed", "7", "--json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    if !a.status.success() || !b.status.success() {
        return Err("verify exited nonzero".into());
    }
    if a.stdout != b.stdout {
        return Err("reports differ between runs".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

#[test]
fn acceptance() {
    let ctx = build_ctx();
    let (c1, c2) = criterion_1_2(&ctx);
    let results: Vec<(&str, Outcome)> = vec![
        ("vertex counts match the counting formula", c1),
        ("edge counts agree across four routes", c2),
        ("radius and diameter match their closed forms", criterion_3(&ctx)),
        ("centers equal the predicted families and the reference table", criterion_4(&ctx)),
        ("even-k centers induce binary-string cubes", criterion_5(&ctx)),
        ("cube polynomials agree across routes, fixtures, and series", criterion_6(&ctx)),
        ("degrees match the letter-statistics formula and extremes", criterion_7(&ctx)),
        ("near-max-degree census reported against the diverging closed form", criterion_8(&ctx)),
        ("median uniqueness holds on exhaustive and sampled triples", criterion_9(&ctx)),
        ("embedding certificates valid for every in-range instance", criterion_10(&ctx)),
        ("Hamiltonian paths validate on every in-range instance", criterion_11(&ctx)),
        ("verification reports are byte-identical across runs", criterion_12()),
    ];
    let mut failures = Vec::new();
    for (i, (title, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {title} ({detail})", i + 1),
            Err(detail) => {
                println!("[FAIL] {:>2}. {title}: {detail}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "criteria failed: {failures:?}");
}
