//! Acceptance criteria 1 to 9. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;
mod support;

use std::collections::BTreeSet;
use std::panic;
use std::time::Instant;

use common::*;
use itertools::Itertools;
use metric_repair::exact::brute_force_repair_capped;
use metric_repair::generate;
use metric_repair::reductions::{increase_to_general, lbcut_to_mr, multicut_to_mr};
use metric_repair::*;
use num_bigint::BigUint;
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equality", oracle_equality),
        ("structure theorem", structure_theorem),
        ("spc ratio", spc_ratio),
        ("deficit greedy and counting", deficit_greedy_counts),
        ("reduction round-trips", reduction_round_trips),
        ("iomr gap", iomr_gap),
        ("footnote instance", footnote_instance),
        ("path counting", path_counting),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

/// The 100 random graphs shared by criteria 1, 3 and 4.
fn suite() -> Vec<WeightedGraph> {
    (0..100u64)
        .map(|seed| {
            let n = 5 + (seed % 4) as usize;
            let m = (n + 2 + (seed % 7) as usize).min(14).min(n * (n - 1) / 2);
            generate::random(n, m, 10, seed).unwrap()
        })
        .collect()
}

fn heavy_set(g: &WeightedGraph) -> BTreeSet<Edge> {
    let d = fw_distances(g);
    g.edges()
        .filter(|(e, w)| d[e.low()][e.high()].as_ref().unwrap() < *w)
        .map(|(e, _)| e)
        .collect()
}

fn oracle_equality() -> Check {
    let mut broken = 0;
    for (i, g) in suite().iter().enumerate() {
        let n = g.vertex_count();
        let want = min_cover(g, false);
        let brute = brute_force_repair(g, Mode::General).map_err(|e| e.to_string())?;
        ensure!(
            brute.support_size() == want,
            "graph {i}: brute force {} vs cover oracle {want}",
            brute.support_size()
        );
        let out = FptSolver::new(n).unwrap().solve(g).map_err(|e| e.to_string())?;
        let plan = out.plan.ok_or(format!("graph {i}: fpt returned nothing"))?;
        ensure!(out.optimal, "graph {i}: fpt fell back to the full edge set");
        ensure!(
            plan.support_size() == want,
            "graph {i}: fpt {} vs OPT {want}",
            plan.support_size()
        );
        ensure!(fw_is_metric(plan.repaired()), "graph {i}: fpt repair is not a metric");

        let dmr = decrease_repair(g);
        ensure!(
            dmr.support() == &heavy_set(g),
            "graph {i}: dmr support is not the heavy set"
        );
        ensure!(
            dmr.support_size() == min_decrease(g),
            "graph {i}: dmr size is not the decrease optimum"
        );
        ensure!(fw_is_metric(dmr.repaired()), "graph {i}: dmr repair is not a metric");
        broken += usize::from(want > 0);
    }
    let mut chordal = 0;
    for sigma in [3usize, 4] {
        let mut taken = 0;
        for seed in 0..200u64 {
            if taken == 20 {
                break;
            }
            let g = generate::chordal(8, sigma, 8, seed).unwrap();
            if g.edge_count() > 14 {
                continue;
            }
            taken += 1;
            let want = brute_force_repair(&g, Mode::General).unwrap().support_size();
            ensure!(
                want == min_cover(&g, false),
                "sigma {sigma} seed {seed}: brute force disagrees with oracle"
            );
            let out = FptSolver::new(sigma).unwrap().solve(&g).map_err(|e| e.to_string())?;
            ensure!(
                out.chordality_verified && out.optimal,
                "sigma {sigma} seed {seed}: search not exact"
            );
            let got = out.plan.unwrap().support_size();
            ensure!(got == want, "sigma {sigma} seed {seed}: fpt {got} vs OPT {want}");
        }
        ensure!(
            taken == 20,
            "only {taken} sigma-{sigma} instances with at most 14 edges"
        );
        chordal += taken;
    }
    Ok(format!(
        "100 random graphs ({broken} non-metric) plus {chordal} chordal graphs, fpt = dmr = OPT"
    ))
}

fn structure_theorem() -> Check {
    let mut subsets = 0;
    for seed in 0..20u64 {
        let n = 6 + (seed % 2) as usize;
        let g = generate::random(n, 10, 10, 1000 + seed).unwrap();
        let set = enumerate_broken_cycles(&g, 1_000_000).unwrap();
        ensure!(
            set.cycles.len() == brute_broken_cycles(&g).len(),
            "seed {seed}: broken cycle count differs from brute force"
        );
        let edges = g.edge_list();
        for k in 0..=edges.len() {
            for combo in edges.iter().copied().combinations(k) {
                let s: BTreeSet<Edge> = combo.into_iter().collect();
                subsets += 1;
                for (mode, cover) in [
                    (Mode::General, set.is_regular_cover(&s)),
                    (Mode::IncreaseOnly, set.is_light_cover(&s)),
                ] {
                    let plan = verify_support(&g, &s, mode).unwrap();
                    ensure!(
                        plan.is_some() == cover,
                        "seed {seed} {mode}: verifier and cover disagree on {s:?}"
                    );
                    if let Some(p) = plan {
                        ensure!(p.support().is_subset(&s), "seed {seed}: support leaves S");
                        ensure!(
                            fw_is_metric(p.repaired()),
                            "seed {seed}: verified repair is not a metric"
                        );
                    }
                }
            }
        }
    }
    Ok(format!("20 graphs, {subsets} subsets, both modes, zero discrepancies"))
}

fn spc_ratio() -> Check {
    let mut worst: (usize, usize) = (0, 1);
    for (i, g) in suite().iter().enumerate() {
        let l = enumerate_broken_cycles(g, 1_000_000).unwrap().stats.max_light_edges;
        let opt_g = brute_force_repair(g, Mode::General).unwrap().support_size();
        let opt_i = brute_force_repair(g, Mode::IncreaseOnly).unwrap().support_size();
        let sg = spc(g, Mode::General).unwrap();
        let si = spc(g, Mode::IncreaseOnly).unwrap();
        ensure!(
            sg.support_size() <= (l + 1) * opt_g,
            "graph {i}: general {} > ({l}+1)*{opt_g}",
            sg.support_size()
        );
        ensure!(
            si.support_size() <= l * opt_i,
            "graph {i}: increase {} > {l}*{opt_i}",
            si.support_size()
        );
        ensure!(
            fw_is_metric(sg.repaired()) && fw_is_metric(si.repaired()),
            "graph {i}: spc repair is not a metric"
        );
        if opt_g > 0 && sg.support_size() * worst.1 > worst.0 * opt_g {
            worst = (sg.support_size(), opt_g);
        }
    }
    Ok(format!(
        "100 graphs within bound, worst general ratio {}/{}",
        worst.0, worst.1
    ))
}

fn deficit_greedy_counts() -> Check {
    for (i, g) in suite().iter().enumerate() {
        for mode in [Mode::General, Mode::IncreaseOnly] {
            let p = deficit_greedy(g, mode).unwrap();
            ensure!(
                fw_is_metric(p.repaired()),
                "graph {i} {mode}: greedy repair is not a metric"
            );
        }
    }
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 50 && seed < 5000 {
        let n = 5 + (seed % 3) as usize;
        let m = (n + 1 + (seed % 5) as usize).min(n * (n - 1) / 2);
        let g = generate::random(n, m, 10, 20_000 + seed).unwrap();
        seed += 1;
        if is_metric(&g) || !light_segments_disjoint(&g) {
            continue;
        }
        checked += 1;
        let o = apsp(&g);
        let table = PathCountTable::build(&g, &o);
        let (delta, counts) = deficit_counts(&g);
        ensure!(graph_deficit(&g, &o) == delta, "instance {seed}: deficit differs");
        for (e, (nh, nl)) in counts {
            ensure!(
                count_heavy(&g, &o, &table, e, &delta) == nh,
                "instance {seed}: N_h{e:?}"
            );
            ensure!(
                count_light(&g, &o, &table, e, &delta) == nl,
                "instance {seed}: N_l{e:?}"
            );
        }
    }
    ensure!(checked == 50, "only {checked} qualifying instances");
    Ok(format!(
        "greedy valid on 200 runs; counts exact on 50 instances ({seed} drawn)"
    ))
}

/// Demand pairs that are not edges, picked deterministically.
fn non_edge_pairs(g: &SimpleGraph, seed: u64, count: usize) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let free: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| !g.has_edge(Edge::new(u, v)))
        .collect();
    (0..count)
        .map(|i| free[(seed as usize * 7 + i * 13) % free.len()])
        .unique()
        .collect()
}

fn reduction_round_trips() -> Check {
    // Increase-only to general. The gadget instance is large, so only inputs
    // whose brute-force search on it stays small are used.
    let mut inc = 0;
    let mut nonzero = 0;
    let mut seed = 0u64;
    while inc < 30 && seed < 400 {
        let g = generate::random(4 + (seed % 2) as usize, 5 + (seed % 2) as usize, 6, seed).unwrap();
        seed += 1;
        let art = increase_to_general(&g);
        let want = min_cover(&g, true);
        if art.output.edge_count() > 40 || want > 2 {
            continue;
        }
        inc += 1;
        nonzero += usize::from(want > 0);
        let src = brute_force_repair(&g, Mode::IncreaseOnly).unwrap().support_size();
        ensure!(
            src == want,
            "inc2gen seed {seed}: source brute force disagrees with oracle"
        );
        let got = brute_force_repair_capped(&art.output, Mode::General, 64).unwrap();
        ensure!(
            got.support_size() == want,
            "inc2gen seed {seed}: {} vs {want}",
            got.support_size()
        );
        ensure!(
            got.support().iter().all(|&e| g.has_edge(e)),
            "inc2gen seed {seed}: support uses a gadget edge"
        );
    }
    ensure!(inc == 30, "only {inc} increase-to-general instances");

    for seed in 0..30u64 {
        let n = 6 + (seed % 3) as usize;
        let g = if seed % 2 == 0 {
            generate::random_tree(n, seed)
        } else {
            generate::random_simple(n, n + 1, seed).unwrap()
        };
        let pairs = non_edge_pairs(&g, seed, 2);
        let want = exact::brute_multicut(&g, &pairs, 16).unwrap().len();
        let art = multicut_to_mr(&g, &pairs).unwrap();
        let got = brute_force_repair(&art.output, Mode::IncreaseOnly)
            .unwrap()
            .support_size();
        ensure!(got == want, "multicut seed {seed}: {got} vs {want}");
        ensure!(
            min_cover(&art.output, true) == want,
            "multicut seed {seed}: cover oracle disagrees"
        );
    }

    let shapes = [(2usize, 3usize), (3, 2), (2, 2), (1, 3), (6, 1)];
    for seed in 0..30u64 {
        let (layers, width) = shapes[seed as usize % shapes.len()];
        let g = generate::layered(layers, width, seed).unwrap();
        let t = g.vertex_count() - 1;
        let length = 1 + (seed / 5 % 4) as usize;
        let want = exact::brute_lbcut(&g, 0, t, length, 16).unwrap().len();
        let art = lbcut_to_mr(&g, 0, t, length).unwrap();
        let got = brute_force_repair(&art.output, Mode::IncreaseOnly)
            .unwrap()
            .support_size();
        ensure!(got == want, "lbcut seed {seed} L={length}: {got} vs {want}");
    }
    Ok(format!(
        "30 instances each for increase-to-general ({nonzero} with OPT > 0), multicut and length-bounded cut"
    ))
}

fn iomr_gap() -> Check {
    for n in 3..=8usize {
        let d = iomr_adversarial(n).unwrap();
        let out = iomr_fixed(&d);
        let want = (n - 1) * (n - 2) / 2;
        ensure!(
            out.modified_count() == want,
            "n={n}: {} modified, expected {want}",
            out.modified_count()
        );
        ensure!(out.repaired.is_metric(), "n={n}: result is not a metric");
        for (e, w) in d.pairs() {
            ensure!(out.repaired.get(e.low(), e.high()) >= w, "n={n}: an entry decreased");
        }
    }
    let eps = parse_rational("1/100").unwrap();
    let mut ratios = Vec::new();
    for n in 3..=6usize {
        let g = iomr_adversarial(n).unwrap().to_graph(&eps).unwrap();
        let opt = brute_force_repair(&g, Mode::IncreaseOnly).unwrap().support_size();
        ensure!(
            opt == min_cover(&g, true),
            "n={n}: brute force disagrees with the cover oracle"
        );
        ensure!(opt <= n - 2, "n={n}: OPT {opt} > {}", n - 2);
        ratios.push(format!("n={n} {}/{opt}", (n - 1) * (n - 2) / 2));
    }
    let matrix = support::ok(&["gen", "iomr-adversarial", "--n", "6"], "");
    let v = support::run(&["repair", "--omega", "increase", "--algo", "iomr"], &matrix).json();
    ensure!(v["support_size"] == 10, "cli n=6 gave {}", v["support_size"]);
    Ok(format!("binom(n-1,2) changes for n=3..8; ratios {}", ratios.join(", ")))
}

/// Applies a report's deltas to `g` and checks the result independently.
fn report_is_metric(g: &WeightedGraph, report: &Value) -> bool {
    let mut h = g.clone();
    for d in report["deltas"].as_array().unwrap() {
        let e = Edge::new(d[0].as_u64().unwrap() as usize, d[1].as_u64().unwrap() as usize);
        let delta = parse_rational(d[2].as_str().unwrap()).unwrap();
        let w = h.weight(e).unwrap() + delta;
        h.set_weight(e, w).unwrap();
    }
    report["metric_ok"] == true && fw_is_metric(&h)
}

fn footnote_instance() -> Check {
    for n in 4..=10usize {
        let text = support::ok(&["gen", "footnote-kn", "--n", &n.to_string()], "");
        let g = parse_graph(&text).unwrap();
        for algo in ["fpt", "spc", "deficit", "5cycle"] {
            let v = support::run(&["repair", "--omega", "general", "--algo", algo], &text).json();
            ensure!(report_is_metric(&g, &v), "n={n} {algo}: invalid plan");
            if algo == "fpt" {
                ensure!(v["support_size"] == 1, "n={n}: fpt size {}", v["support_size"]);
            }
        }
    }
    Ok("n=4..10, all four solvers valid, fpt size 1".into())
}

fn path_counting() -> Check {
    for seed in 0..50u64 {
        let n = 5 + (seed % 4) as usize;
        let m = (n + 3 + (seed % 5) as usize).min(n * (n - 1) / 2);
        let g = generate::random(n, m, 3, 500 + seed).unwrap();
        let o = apsp(&g);
        for t in 0..n {
            let c = count_shortest_paths(&g, &o, t);
            for v in 0..n {
                ensure!(c.count(v) == &brute_sp_count(&g, v, t), "seed {seed}: #sp({v},{t})");
            }
        }
    }
    for k in 1..=40usize {
        let g = generate::ladder(k);
        let o = apsp(&g);
        let got = count_shortest_paths(&g, &o, 3 * k).count(0).clone();
        ensure!(got == BigUint::from(1u8) << k, "ladder k={k}: {got}");
        if k <= 5 {
            ensure!(got == brute_sp_count(&g, 0, 3 * k), "ladder k={k}: enumeration differs");
        }
    }
    Ok("50 random graphs match enumeration; ladder #sp = 2^k for k=1..40".into())
}

fn determinism() -> Check {
    let instance = support::ok(&["gen", "random", "--n", "7", "--m", "12", "--seed", "9"], "");
    let g = parse_graph(&instance).unwrap();
    let complete = support::ok(&["gen", "random", "--n", "6", "--m", "15", "--seed", "9"], "");
    let kg = parse_graph(&complete).unwrap();
    let matrix = support::ok(&["gen", "iomr-adversarial", "--n", "5"], "");
    let simple = "6 6\n0 1\n1 2\n2 5\n0 3\n3 4\n4 5\n";
    let mut runs: Vec<(Vec<String>, &str)> = Vec::new();
    let mut add = |args: &[&str], stdin| runs.push((args.iter().map(|s| s.to_string()).collect(), stdin));

    add(&["gen", "random", "--n", "8", "--m", "14", "--seed", "5"], "");
    add(&["gen", "chordal", "--n", "9", "--sigma", "4", "--seed", "5"], "");
    add(&["gen", "iomr-adversarial", "--n", "6"], "");
    add(&["gen", "iomr-adversarial", "--n", "6", "--epsilon", "1/1000"], "");
    add(&["gen", "footnote-kn", "--n", "7"], "");
    add(&["gen", "ladder", "--k", "6"], "");
    let pairs = [
        ("decrease", "dmr"),
        ("decrease", "exact"),
        ("increase", "fpt"),
        ("increase", "spc"),
        ("increase", "deficit"),
        ("increase", "exact"),
        ("general", "fpt"),
        ("general", "spc"),
        ("general", "deficit"),
        ("general", "exact"),
    ];
    for (omega, algo) in pairs {
        add(
            &["repair", "--omega", omega, "--algo", algo, "--stats", "--no-timing"],
            &instance,
        );
    }
    add(
        &[
            "repair",
            "--omega",
            "general",
            "--algo",
            "5cycle",
            "--stats",
            "--no-timing",
        ],
        &complete,
    );
    add(
        &["repair", "--omega", "increase", "--algo", "iomr", "--no-timing"],
        &matrix,
    );
    add(&["verify", "--edge", "0,1", "--edge", "2,3", "--no-timing"], &instance);
    add(&["reduce", "inc2gen"], &instance);
    add(&["reduce", "multicut", "--pair", "0,5", "--pair", "1,4"], simple);
    add(&["reduce", "lbcut", "--s", "0", "--t", "5", "--length", "3"], simple);
    add(&["cut", "multicut", "--pair", "0,5", "--pair", "1,4"], simple);
    add(&["cut", "lbcut", "--s", "0", "--t", "5", "--length", "3"], simple);
    add(&["stats"], &instance);

    let total = runs.len();
    for (args, stdin) in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = support::run(&args, stdin);
        let b = support::run(&args, stdin);
        ensure!(
            a.code == b.code && a.stdout == b.stdout,
            "{args:?} differs between runs"
        );
        if args[0] == "repair" && args[4] != "iomr" {
            ensure!(a.code == 0, "{args:?} failed: {}", a.stderr);
            let source = if args[4] == "5cycle" { &kg } else { &g };
            ensure!(
                report_is_metric(source, &a.json()),
                "{args:?}: report does not re-verify"
            );
        } else if args[0] != "verify" {
            ensure!(a.code == 0, "{args:?} failed: {}", a.stderr);
        }
    }
    Ok(format!("{total} commands byte-identical across two runs"))
}
