//! Acceptance criteria for the energy library and the `geb` CLI.
//!
//! Each test prints one `PASS`/`FAIL` line. Run with
//! `cargo test -p geb --test acceptance -- --nocapture` to see them.

use std::collections::HashSet;
use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use geb::bounds::BoundName;
use geb::cli;
use geb::graph6::HEADER;
use geb::{
    bound_report, canonical_form, chebyshev_functional, determinant_exact, dragomir_bound, eigenvalues,
    energy_chain, enumerate_all, enumerate_connected, gruss_bound, parse_graph6, rank_exact, spectral_stats,
    write_graph6, BoundReport64, BoundedVector64, Graph, DEFAULT_ZERO_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

const CONNECTED_COUNTS: [usize; 7] = [1, 1, 2, 6, 21, 112, 853];
const CONNECTED_ORDER_8: usize = 11117;
const TIME_BUDGET: Duration = Duration::from_secs(300);

fn verdict(id: u32, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS  AC{id}  {what}");
    } else {
        println!("FAIL  AC{id}  {what} ({} failures)", failures.len());
        for f in failures.iter().take(10) {
            println!("        {f}");
        }
        panic!("AC{id} failed: {}", failures[0]);
    }
}

fn connected_corpus() -> &'static [Graph] {
    static CORPUS: OnceLock<Vec<Graph>> = OnceLock::new();
    CORPUS.get_or_init(|| (1..=7).flat_map(|n| enumerate_connected(n).unwrap()).collect())
}

fn all_graphs_corpus() -> &'static [Graph] {
    static CORPUS: OnceLock<Vec<Graph>> = OnceLock::new();
    CORPUS.get_or_init(|| (1..=7).flat_map(|n| enumerate_all(n).unwrap()).collect())
}

fn fixtures() -> Vec<Graph> {
    let mut v = vec![Graph::petersen()];
    for n in 2..=8 {
        v.push(Graph::complete(n).unwrap());
    }
    for p in 1..=6 {
        for q in p..=6 {
            v.push(Graph::complete_bipartite(p, q).unwrap());
        }
    }
    v
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["geb"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn summary_json(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("summary is JSON")
}

fn report(g: &Graph) -> BoundReport64 {
    bound_report(g, DEFAULT_ZERO_TOL).unwrap()
}

fn name(g: &Graph) -> String {
    write_graph6(g).unwrap()
}

/// Every connected graph on `n + 1` vertices has a vertex whose removal
/// leaves it connected, so joining a new vertex to each nonempty subset of
/// each connected `n`-vertex class reaches every class on `n + 1` vertices.
fn extend_by_one_vertex(base: &[Graph]) -> Vec<Graph> {
    let forms: HashSet<_> = base
        .par_iter()
        .flat_map_iter(|g| {
            let n = g.n();
            let edges: Vec<_> = g.edges().collect();
            (1u32..(1 << n)).map(move |subset| {
                let mut e = edges.clone();
                e.extend((0..n).filter(|&v| subset >> v & 1 == 1).map(|v| (v, n)));
                canonical_form(&Graph::from_edge_list(n + 1, &e).unwrap()).unwrap()
            })
        })
        .collect();
    let mut forms: Vec<_> = forms.into_iter().collect();
    forms.sort();
    forms.iter().map(|f| f.to_graph()).collect()
}

#[test]
fn ac1_conjectures_rerun() {
    let mut failures = Vec::new();

    let start = Instant::now();
    let (code, out, err) = run_cli(&["conjectures", "--enumerate", "7"]);
    let elapsed = start.elapsed();
    let s = summary_json(&out);
    if code != cli::EXIT_CLEAN {
        failures.push(format!("n=7 exit code {code}: {err}"));
    }
    if s["graphs_seen"] != 853 || s["graphs_checked"] != 853 {
        failures.push(format!("n=7 saw {} and checked {}", s["graphs_seen"], s["graphs_checked"]));
    }
    if s["violations"].as_array().is_none_or(|v| !v.is_empty()) {
        failures.push(format!("n=7 counterexamples: {}", s["violations"]));
    }
    if elapsed > TIME_BUDGET {
        failures.push(format!("n=7 took {elapsed:?}"));
    }

    let order8 = extend_by_one_vertex(&enumerate_connected(7).unwrap());
    if order8.len() != CONNECTED_ORDER_8 {
        failures.push(format!("n=8 corpus has {} classes", order8.len()));
    }
    if let Some(g) = order8.iter().find(|g| !g.is_connected()) {
        failures.push(format!("n=8 corpus contains disconnected {}", name(g)));
    }
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "{HEADER}").unwrap();
    for g in &order8 {
        writeln!(file, "{}", name(g)).unwrap();
    }
    file.flush().unwrap();
    let path = file.path().to_str().unwrap();
    let (code, out, err) = run_cli(&["conjectures", "--corpus", path]);
    let s = summary_json(&out);
    if code != cli::EXIT_CLEAN {
        failures.push(format!("n=8 exit code {code}: {err}"));
    }
    if s["graphs_seen"] != CONNECTED_ORDER_8 || s["graphs_checked"] != CONNECTED_ORDER_8 {
        failures.push(format!("n=8 saw {} and checked {}", s["graphs_seen"], s["graphs_checked"]));
    }
    if s["violations"].as_array().is_none_or(|v| !v.is_empty()) {
        failures.push(format!("n=8 counterexamples: {}", s["violations"]));
    }

    verdict(
        1,
        &format!("conjectures: 853 graphs on 7 vertices in {elapsed:.1?}, {} on 8, no counterexamples", order8.len()),
        &failures,
    );
}

#[test]
fn ac2_soundness_suite() {
    let mut failures = Vec::new();
    for (i, &expected) in CONNECTED_COUNTS.iter().enumerate() {
        let n = (i + 1).to_string();
        let (code, out, err) = run_cli(&["verify", "--enumerate", &n]);
        let s = summary_json(&out);
        if code != cli::EXIT_CLEAN {
            failures.push(format!("n={n} exit code {code}: {err}"));
        }
        if s["graphs_seen"] != expected || s["graphs_checked"] != expected {
            failures.push(format!("n={n}: saw {}, checked {}, want {expected}", s["graphs_seen"], s["graphs_checked"]));
        }
        if s["violations"].as_array().is_none_or(|v| !v.is_empty()) {
            failures.push(format!("n={n} violations: {}", s["violations"]));
        }
    }
    verdict(2, "verify --enumerate 1..7: counts 1,1,2,6,21,112,853, every proven bound holds", &failures);
}

#[test]
fn ac3_equality_fixtures() {
    let tol = 1e-9;
    let mut failures = Vec::new();
    let mut check = |g: Graph, label: String, bound: BoundName| {
        let r = report(&g);
        match r.value(bound) {
            Some(b) if (r.energy - b).abs() <= tol => {}
            other => failures.push(format!("{label}: E = {}, {bound} = {other:?}", r.energy)),
        }
    };
    for p in 1..=6 {
        for q in p..=6 {
            check(Graph::complete_bipartite(p, q).unwrap(), format!("K{p},{q}"), BoundName::CorNice);
        }
    }
    for n in 2..=8 {
        check(Graph::complete(n).unwrap(), format!("K{n}"), BoundName::Main);
    }
    check(Graph::path(3).unwrap(), "P3".into(), BoundName::RankBound);
    check(Graph::complete_bipartite(2, 3).unwrap(), "K2,3".into(), BoundName::RankBound);
    verdict(3, "equality: K_{p,q} at 2m/lambda1, K_n at main, P3 and K2,3 at rank bound", &failures);
}

#[test]
fn ac4_dominance() {
    let tol = 1e-9;
    let failures: Vec<String> = connected_corpus()
        .par_iter()
        .filter(|g| g.edge_count() > 0)
        .flat_map_iter(|g| {
            let r = report(g);
            let key = name(g);
            let l = &r.lower;
            let (main, cor, amgm, rank) =
                (l.main.unwrap(), l.cor_nice.unwrap(), l.amgm.unwrap(), l.rank_bound.unwrap());
            let mut f = Vec::new();
            if rank < main - tol {
                f.push(format!("{key}: rank bound {rank} < main {main}"));
            }
            if main < cor - tol {
                f.push(format!("{key}: main {main} < cor_nice {cor}"));
            }
            if g.is_triangle_free() && cor < l.caporossi - tol {
                f.push(format!("{key}: cor_nice {cor} < caporossi {}", l.caporossi));
            }
            if g.is_regular() && (cor - g.n() as f64).abs() > tol {
                f.push(format!("{key}: regular but cor_nice = {cor}"));
            }
            if amgm > main + tol {
                f.push(format!("{key}: amgm {amgm} > main {main}"));
            }
            f
        })
        .collect();
    verdict(4, "dominance on connected graphs up to 7 vertices", &failures);
}

fn random_bounded(rng: &mut ChaCha8Rng, len: usize) -> BoundedVector64 {
    let entries: Vec<f64> = (0..len).map(|_| rng.gen_range(-10.0..=10.0)).collect();
    let lo = entries.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = entries.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if rng.gen_bool(0.5) {
        BoundedVector64::tight(entries).unwrap()
    } else {
        let (lo, hi) = (lo - rng.gen_range(0.0..5.0), hi + rng.gen_range(0.0..5.0));
        BoundedVector64::new(entries, lo, hi).unwrap()
    }
}

#[test]
fn ac5_gruss_suite() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e72);
    for trial in 0..10_000 {
        let len = rng.gen_range(1..=50);
        let x = random_bounded(&mut rng, len);
        let y = random_bounded(&mut rng, len);
        let t = chebyshev_functional(&x, &y).unwrap();
        let d = dragomir_bound(&x, &y).unwrap();
        let g = gruss_bound(&x, &y);
        let slack = 1e-12 * g.max(1.0);
        if t.abs() > d + slack || d > g + slack {
            failures.push(format!("trial {trial}: |T| = {}, dragomir = {d}, gruss = {g}", t.abs()));
        }
    }

    let graphs: Vec<Graph> = connected_corpus().iter().cloned().chain(fixtures()).collect();
    let chain_failures: Vec<String> = graphs
        .par_iter()
        .filter(|g| g.edge_count() > 0)
        .flat_map_iter(|g| {
            let spec = eigenvalues::<f64>(g).unwrap();
            let stats = spectral_stats(&spec, DEFAULT_ZERO_TOL);
            let target = spec.energy().powi(2) - 2.0 * g.edge_count() as f64;
            [false, true].into_iter().filter_map(move |restricted| {
                let key = format!("{} (restricted: {restricted})", name(g));
                match energy_chain(&spec, &stats, restricted) {
                    Err(e) => Some(format!("{key}: {e}")),
                    Ok(c) if (c.p - target).abs() > 1e-6 => Some(format!("{key}: P = {}, E^2 - 2m = {target}", c.p)),
                    Ok(c) if c.p < c.p_lower - 1e-9 => Some(format!("{key}: P = {} < {}", c.p, c.p_lower)),
                    Ok(_) => None,
                }
            })
        })
        .collect();
    failures.extend(chain_failures);
    verdict(5, "10^4 random Grüss triples and the energy chain on every corpus graph", &failures);
}

#[test]
fn ac6_spectral_cross_checks() {
    let graphs: Vec<Graph> = all_graphs_corpus().iter().cloned().chain(fixtures()).collect();
    let failures: Vec<String> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let key = name(g);
            let spec = eigenvalues::<f64>(g).unwrap();
            let stats = spectral_stats(&spec, DEFAULT_ZERO_TOL);
            let m = g.edge_count() as f64;
            let tri = g.triangle_count() as f64;
            let det: f64 = determinant_exact(g).to_string().parse().unwrap();
            let mut f = Vec::new();
            if spec.power_sum(1).abs() > 1e-8 {
                f.push(format!("{key}: trace {}", spec.power_sum(1)));
            }
            if (spec.power_sum(2) - 2.0 * m).abs() > 1e-7 {
                f.push(format!("{key}: sum of squares {} vs 2m = {}", spec.power_sum(2), 2.0 * m));
            }
            if (spec.power_sum(3) - 6.0 * tri).abs() > 1e-6 {
                f.push(format!("{key}: sum of cubes {} vs 6 triangles = {}", spec.power_sum(3), 6.0 * tri));
            }
            if (stats.det - det).abs() > 1e-6 * det.abs().max(1.0) {
                f.push(format!("{key}: eigenproduct {} vs det {det}", stats.det));
            }
            if stats.rank != rank_exact(g) {
                f.push(format!("{key}: numerical rank {} vs exact {}", stats.rank, rank_exact(g)));
            }
            f
        })
        .collect();
    verdict(6, &format!("spectral oracles on {} graphs", graphs.len()), &failures);
}

#[test]
fn ac7_graph6_round_trip() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e6);
    for trial in 0..10_000 {
        let n = rng.gen_range(1..=20);
        let density: f64 = rng.gen();
        let edges: Vec<_> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .filter(|_| rng.gen_bool(density))
            .collect();
        let g = Graph::from_edge_list(n, &edges).unwrap();
        let s = write_graph6(&g).unwrap();
        match parse_graph6(&s) {
            Ok(h) if h == g && write_graph6(&h).unwrap() == s => {}
            other => failures.push(format!("trial {trial}: {s} decoded to {other:?}")),
        }
    }
    let goldens = [
        ("A_", Graph::complete(2).unwrap()),
        ("Bw", Graph::complete(3).unwrap()),
        ("A?", Graph::empty(2).unwrap()),
    ];
    for (s, g) in goldens {
        if parse_graph6(s).ok().as_ref() != Some(&g) {
            failures.push(format!("{s} does not decode to the expected graph"));
        }
        if write_graph6(&g).unwrap() != s {
            failures.push(format!("expected graph does not encode to {s}"));
        }
    }
    verdict(7, "graph6 round trip on 10^4 random graphs and golden vectors", &failures);
}

#[test]
fn ac8_petersen() {
    let r = report(&Graph::petersen());
    let checks = [
        ("E", Some(r.energy), 16.0),
        ("main", r.lower.main, 15.0),
        ("cor_nice", r.lower.cor_nice, 10.0),
        ("amgm", r.lower.amgm, 15.0),
    ];
    let failures: Vec<String> = checks
        .iter()
        .filter(|(_, got, want)| got.is_none_or(|v| (v - want).abs() > 1e-9))
        .map(|(label, got, want)| format!("{label} = {got:?}, want {want}"))
        .collect();
    verdict(8, "Petersen: E = 16, main = 15, cor_nice = 10, amgm = 15", &failures);
}
