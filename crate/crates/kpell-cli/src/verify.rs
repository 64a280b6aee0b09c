//! The `verify` subcommand: runs every closed-form result against its
//! brute-force counterpart for a sweep of (n, k) and assembles a
//! deterministic report.
//!
//! Checks that would exceed their budget are reported as skipped. Two checks
//! are informational rather than gating: the near-maximum-degree count
//! (whose closed form genuinely disagrees with the census on some inputs)
//! and the periphery word-shape rule (stated without proof).

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use kpell::counting::{
    characterization_matches_census, count_degree_delta_minus_1, cube_polynomial_bruteforce,
    cube_polynomial_closed_form, cube_polynomial_gf_stream, cube_polynomial_recurrence,
    degree_census, degree_formula, edge_count_recurrence, edge_count_sum_formula, max_degree,
    min_degree,
};
use kpell::embed::verify_embedding;
use kpell::graph::{build_kpell_graph, hamiltonian_path, LabeledGraph};
use kpell::metrics::{
    center_induces_fibonacci_cube, closed_form_diameter, closed_form_radius,
    eccentricity_profile, predicted_center, radius_witness_eccentricity, verify_median_graph,
    verify_periphery_shape, MedianMode,
};
use kpell::seqs::{edge_count_gf, gf_coefficients, k_fibonacci};
use kpell::words::{center_family_size, KPellWord};
use kpell::{Budget, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported but never gating.
    Informational,
    /// Not run, with the reason in the detail.
    Skipped,
}

#[derive(Serialize)]
pub struct CheckRecord {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Serialize)]
pub struct GraphRecord {
    pub n: usize,
    pub k: u8,
    pub vertices: u64,
    pub edges: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_size: Option<u64>,
    pub checks: Vec<CheckRecord>,
}

#[derive(Serialize)]
pub struct VerificationReport {
    pub tool_version: &'static str,
    pub seed: u64,
    pub n_max: usize,
    pub k_set: Vec<u8>,
    pub budget_vertices: u64,
    /// True iff no check failed; informational and skipped records do not
    /// count against this.
    pub all_passed: bool,
    pub records: Vec<GraphRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

fn check(name: &'static str, ok: bool, detail: String) -> CheckRecord {
    CheckRecord {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail,
    }
}

fn fail(name: &'static str, detail: String) -> CheckRecord {
    CheckRecord {
        name,
        status: Status::Fail,
        detail,
    }
}

fn info(name: &'static str, detail: String) -> CheckRecord {
    CheckRecord {
        name,
        status: Status::Informational,
        detail,
    }
}

fn skip(name: &'static str, detail: String) -> CheckRecord {
    CheckRecord {
        name,
        status: Status::Skipped,
        detail,
    }
}

pub fn run(
    n_max: usize,
    k_set: &[u8],
    seed: u64,
    budget: &Budget,
    timings: bool,
) -> VerificationReport {
    let start = Instant::now();
    let mut records = Vec::new();
    for &k in k_set {
        for n in 0..=n_max {
            if k_fibonacci(n as u64 + 1, k as u64) > BigInt::from(budget.vertices) {
                break;
            }
            records.push(check_graph(n, k, seed, budget));
        }
    }
    let all_passed = records
        .iter()
        .all(|r| r.checks.iter().all(|c| c.status != Status::Fail));
    VerificationReport {
        tool_version: env!("CARGO_PKG_VERSION"),
        seed,
        n_max,
        k_set: k_set.to_vec(),
        budget_vertices: budget.vertices,
        all_passed,
        records,
        elapsed_ms: timings.then(|| start.elapsed().as_millis()),
    }
}

fn check_graph(n: usize, k: u8, seed: u64, budget: &Budget) -> GraphRecord {
    let g = build_kpell_graph(n, k, budget).expect("vertex count is pre-checked");
    let mut checks = Vec::new();

    let expected_v = k_fibonacci(n as u64 + 1, k as u64);
    checks.push(check(
        "vertex-count",
        BigInt::from(g.vertex_count()) == expected_v,
        format!(
            "{} vertices; counting formula gives {}",
            g.vertex_count(),
            expected_v
        ),
    ));

    let built = BigInt::from(g.edge_count());
    let rec = edge_count_recurrence(n, k);
    let sum = edge_count_sum_formula(n, k);
    let series = gf_coefficients(&edge_count_gf(k as u64), n + 1)
        .map(|c| c[n].clone())
        .expect("edge-count series has integer coefficients");
    checks.push(check(
        "edge-count-four-routes",
        built == rec && built == sum && built == series,
        format!("built {built} / recurrence {rec} / sum {sum} / series {series}"),
    ));

    let mut radius = None;
    let mut diameter = None;
    let mut center_size = None;
    match eccentricity_profile(&g, budget) {
        Err(Error::BudgetExceeded { .. }) => {
            checks.push(skip(
                "radius-diameter",
                "over the all-source distance budget".into(),
            ));
            checks.push(skip("center-prediction", "needs the distance sweep".into()));
            checks.push(skip("periphery-shape", "needs the distance sweep".into()));
        }
        Err(e) => checks.push(fail("radius-diameter", format!("distance sweep failed: {e}"))),
        Ok(profile) => {
            radius = Some(profile.radius);
            diameter = Some(profile.diameter);
            center_size = Some(profile.center.len() as u64);
            checks.push(check(
                "radius-diameter",
                profile.radius as u64 == closed_form_radius(n, k)
                    && profile.diameter as u64 == closed_form_diameter(n, k),
                format!(
                    "radius {} (closed form {}), diameter {} (closed form {})",
                    profile.radius,
                    closed_form_radius(n, k),
                    profile.diameter,
                    closed_form_diameter(n, k)
                ),
            ));
            if n >= 2 {
                checks.push(match predicted_center(&g, budget) {
                    Ok(predicted) => {
                        let family_size = center_family_size(n, k)
                            .expect("n >= 2 has a family prediction");
                        check(
                            "center-prediction",
                            predicted == profile.center
                                && BigInt::from(profile.center.len()) == family_size,
                            format!(
                                "center size {} vs predicted family of {}",
                                profile.center.len(),
                                family_size
                            ),
                        )
                    }
                    Err(e) => fail("center-prediction", e.to_string()),
                });
            } else {
                checks.push(skip(
                    "center-prediction",
                    "the family prediction starts at n = 2".into(),
                ));
            }
            checks.push(match verify_periphery_shape(&g, &profile) {
                Ok(matches) => info(
                    "periphery-shape",
                    format!("block-word description matches the computed periphery: {matches}"),
                ),
                Err(e) => info("periphery-shape", format!("not evaluated: {e}")),
            });
        }
    }

    checks.push(match radius_witness_eccentricity(&g) {
        Ok(ecc) => check(
            "radius-witness",
            ecc as u64 == closed_form_radius(n, k),
            format!(
                "middle-letter word has eccentricity {}, radius formula {}",
                ecc,
                closed_form_radius(n, k)
            ),
        ),
        Err(e) => fail("radius-witness", e.to_string()),
    });

    if k % 2 == 0 && n >= 2 {
        checks.push(match center_induces_fibonacci_cube(&g, budget) {
            Ok(ok) => check(
                "center-cube-structure",
                ok,
                "predicted center induces the binary-string cube under the letter map".into(),
            ),
            Err(e) => fail("center-cube-structure", e.to_string()),
        });
    }

    let rec_poly = cube_polynomial_recurrence(n, k);
    let closed_ok = cube_polynomial_closed_form(n, k) == rec_poly;
    let brute = if (g.vertex_count() as u64) <= budget.dense_vertices {
        Some(cube_polynomial_bruteforce(&g, budget))
    } else {
        None
    };
    checks.push(match brute {
        Some(Ok(bf)) => check(
            "cube-polynomial-routes",
            closed_ok && bf == rec_poly,
            format!("recurrence / closed form / brute force all give {rec_poly}"),
        ),
        Some(Err(e)) => check(
            "cube-polynomial-routes",
            closed_ok,
            format!("recurrence matches closed form; brute force skipped: {e}"),
        ),
        None => check(
            "cube-polynomial-routes",
            closed_ok,
            "recurrence matches closed form; brute force over the dense budget".into(),
        ),
    });
    if n <= 12 {
        let stream = cube_polynomial_gf_stream(k, n + 1)
            .expect("series denominator starts with 1");
        checks.push(check(
            "cube-polynomial-series",
            stream[n] == rec_poly,
            "series coefficient matches the recurrence".into(),
        ));
    }

    let formula_ok = (0..g.vertex_count() as u32).all(|i| {
        let w = KPellWord::new(g.word(i).to_vec(), k).expect("graph words are valid");
        degree_formula(&w) == g.degree(i) as u64
    });
    checks.push(check(
        "degree-formula",
        formula_ok,
        format!(
            "letter-statistics degree matches adjacency for all {} vertices",
            g.vertex_count()
        ),
    ));
    let census = degree_census(&g);
    checks.push(check(
        "degree-extremes",
        census.max == max_degree(n, k) && census.min == min_degree(n),
        format!(
            "max {} (formula {}), min {} (formula {})",
            census.max,
            max_degree(n, k),
            census.min,
            min_degree(n)
        ),
    ));
    if k >= 3 && n >= 1 {
        checks.push(match characterization_matches_census(&g) {
            Ok(ok) => check(
                "near-max-degree-characterization",
                ok,
                "two-case word characterization equals the degree census set".into(),
            ),
            Err(e) => fail("near-max-degree-characterization", e.to_string()),
        });
        checks.push(match count_degree_delta_minus_1(&g) {
            Ok(r) => info(
                "near-max-degree-count",
                format!(
                    "closed form {} vs census {}: {}",
                    r.formula,
                    r.census,
                    if r.agrees {
                        "agree"
                    } else {
                        "differ (known closed-form discrepancy; census is ground truth)"
                    }
                ),
            ),
            Err(e) => info("near-max-degree-count", format!("not evaluated: {e}")),
        });
    }

    checks.push(median_check(&g, seed, budget));

    if n >= 1 {
        checks.push(match verify_embedding(&g, budget) {
            Ok(map) => {
                let c = &map.certificate;
                check(
                    "cube-embedding",
                    c.injective && c.edges_preserved,
                    format!(
                        "dimension {}, injective, {} edges preserved",
                        c.target_dim, c.checked_edges
                    ),
                )
            }
            Err(Error::BudgetExceeded { .. }) => skip(
                "cube-embedding",
                "target dimension over the embedding budget".into(),
            ),
            Err(e) => fail("cube-embedding", e.to_string()),
        });
    }

    if g.vertex_count() as u64 <= budget.hamiltonian_vertices {
        checks.push(match hamiltonian_path(&g) {
            Ok(path) => check(
                "hamiltonian-path",
                true,
                format!("validated path over all {} vertices", path.len()),
            ),
            Err(e) => fail("hamiltonian-path", e.to_string()),
        });
    } else {
        checks.push(skip(
            "hamiltonian-path",
            "over the path-construction budget".into(),
        ));
    }

    GraphRecord {
        n,
        k,
        vertices: g.vertex_count() as u64,
        edges: g.edge_count() as u64,
        radius,
        diameter,
        center_size,
        checks,
    }
}

fn median_check(g: &LabeledGraph, seed: u64, budget: &Budget) -> CheckRecord {
    match verify_median_graph(g, budget, seed) {
        Err(Error::BudgetExceeded { .. }) => skip(
            "median-uniqueness",
            "over the distance-matrix budget".into(),
        ),
        Err(e) => fail("median-uniqueness", e.to_string()),
        Ok(r) => {
            let how = match r.mode {
                MedianMode::Exhaustive => format!("all {} multiset triples", r.triples_checked),
                MedianMode::Sampled { seed } => {
                    format!("{} sampled triples (seed {})", r.triples_checked, seed)
                }
            };
            match r.counterexample {
                None => check(
                    "median-uniqueness",
                    r.all_unique,
                    format!("{how} each have a unique middle vertex"),
                ),
                Some((x, y, z)) => fail(
                    "median-uniqueness",
                    format!(
                        "triple ({}, {}, {}) lacks a unique middle vertex",
                        g.render_vertex(x),
                        g.render_vertex(y),
                        g.render_vertex(z)
                    ),
                ),
            }
        }
    }
}

pub fn render_text(report: &VerificationReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let ks: Vec<String> = report.k_set.iter().map(|k| k.to_string()).collect();
    let _ = writeln!(
        out,
        "verify: n <= {}, k in {{{}}}, seed {}, vertex budget {}",
        report.n_max,
        ks.join(", "),
        report.seed,
        report.budget_vertices
    );
    for r in &report.records {
        let _ = writeln!(out, "n={} k={}: {} vertices, {} edges", r.n, r.k, r.vertices, r.edges);
        for c in &r.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Informational => "info",
                Status::Skipped => "skip",
            };
            let _ = writeln!(out, "  [{tag}] {}: {}", c.name, c.detail);
        }
    }
    let _ = writeln!(
        out,
        "result: {}",
        if report.all_passed {
            "all checks passed"
        } else {
            "FAILURES PRESENT"
        }
    );
    if let Some(ms) = report.elapsed_ms {
        let _ = writeln!(out, "elapsed: {ms} ms");
    }
    out
}
