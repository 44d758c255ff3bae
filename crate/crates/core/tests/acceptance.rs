//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails. Sizes, counts and time limits are pinned below.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Ratio;

use tpaths::graft::{EdgeId, EdgeSet, Graft, VertexId, VertexSet};
use tpaths::linkage::{self, joker_family};
use tpaths::menger::{self, single};
use tpaths::packing::{self, lovcher_certificate, perfect_linkage_traced};
use tpaths::path::Path;
use tpaths::toolkit::{self, GenParams, XorShift64Star, DEFAULT_CAP};

const TIME_LIMIT: Duration = Duration::from_secs(60);

const C1_INSTANCES: usize = 300;
const C1_MIN_LINKABLE: usize = 100;
const C1_MAX_VERTICES: usize = 10;
const C1_MAX_EDGES: usize = 18;
const C2_INSTANCES: usize = 300;
const C4_INSTANCES: usize = 100;
const C4_MAX_EDGES: usize = 12;
const C5_INSTANCES: usize = 50;
const C5_MAX_EDGES: usize = 10;
const C6_PAIRS: usize = 200;
const C7_MAX_VERTICES: usize = 12;
const C7_INSTANCES: usize = 150;
const C8_SEEDS: u64 = 12;

struct Verdict {
    pass: bool,
    summary: String,
}

fn verdict(pass: bool, summary: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        summary: summary.into(),
    }
}

/// Random parameters whose pieces stay within `max_vertices` vertices and
/// `tpaths * 3 + cycles * 3` edges.
fn draw_params(
    rng: &mut XorShift64Star,
    max_vertices: usize,
    max_cycles: usize,
    max_tpaths: usize,
) -> GenParams {
    let n = rng.between(4, max_vertices);
    GenParams {
        seed: rng.next_u64(),
        vertex_count: n,
        terminal_count: rng.between(2, n.min(5)),
        cycle_count: rng.between(0, max_cycles),
        tpath_count: rng.between(1, max_tpaths),
        max_piece_length: 3,
    }
}

fn generate(p: &GenParams) -> Graft {
    toolkit::generate_inner_eulerian(p).expect("acceptance parameters are feasible")
}

/// Brute-force linkability of one terminal: try to route every edge at `t`
/// along its own path to another terminal, edge-disjointly.
fn linkage_exists(g: &Graft, t: VertexId) -> bool {
    fn go(by_first: &[Vec<Path>], i: usize, used: &mut EdgeSet) -> bool {
        if i == by_first.len() {
            return true;
        }
        for p in &by_first[i] {
            if p.edges.iter().any(|e| used.contains(e)) {
                continue;
            }
            used.extend(p.edges.iter().copied());
            if go(by_first, i + 1, used) {
                return true;
            }
            for e in &p.edges {
                used.remove(e);
            }
        }
        false
    }
    let others = linkage::other_terminals(g, t);
    let paths =
        toolkit::enumerate_ab_paths(g, &single(t), &others, DEFAULT_CAP).expect("small instance");
    let by_first: Vec<Vec<Path>> = g
        .incident(t)
        .iter()
        .map(|&e| paths.iter().filter(|p| p.edges[0] == e).cloned().collect())
        .collect();
    go(&by_first, 0, &mut EdgeSet::new())
}

fn all_linked_brute_force(g: &Graft) -> bool {
    g.terminals().iter().all(|&t| linkage_exists(g, t))
}

/// Criteria 1 and 3 share their runs.
fn criteria_1_and_3() -> (Verdict, Verdict) {
    let mut rng = XorShift64Star::new(0xC1);
    let start = Instant::now();
    let (mut linkable, mut mismatches, mut size_violations, mut over_bound) = (0, 0, 0, 0);
    let (mut steps_checked, mut step_violations) = (0, 0);
    let mut first_problem = String::new();
    for i in 0..C1_INSTANCES {
        let p = draw_params(&mut rng, C1_MAX_VERTICES, 2, 4);
        let g = generate(&p);
        if g.vertex_count() > C1_MAX_VERTICES || g.edge_count() > C1_MAX_EDGES {
            size_violations += 1;
        }
        let minimax = toolkit::minimax_value(&g);
        let (brute, _) = toolkit::brute_force_max_packing(&g, DEFAULT_CAP).expect("below cap");
        if Ratio::from_integer(brute as u64) > minimax {
            over_bound += 1;
        }
        if !linkage::linkability_condition(&g) {
            continue;
        }
        linkable += 1;
        match perfect_linkage_traced(&g) {
            Ok((paths, steps)) => {
                let n = paths.len();
                if !(Ratio::from_integer(n as u64) == minimax
                    && n == brute
                    && toolkit::verify_linkage(&g, &paths).ok)
                {
                    mismatches += 1;
                    if first_problem.is_empty() {
                        first_problem = format!(
                            "instance {i}: packing {n}, minimax {minimax}, brute force {brute}"
                        );
                    }
                }
                // re-check every remainder with the brute-force linkage test
                let mut rest = g.clone();
                for step in &steps {
                    rest = rest.without_edges(&step.path.edge_set());
                    steps_checked += 1;
                    let ok = step.inner_eulerian
                        && step.linkable
                        && tpaths::euler::is_inner_eulerian(&rest)
                        && all_linked_brute_force(&rest);
                    if !ok {
                        step_violations += 1;
                    }
                }
            }
            Err(e) => {
                mismatches += 1;
                step_violations += 1;
                if first_problem.is_empty() {
                    first_problem = format!("instance {i}: {e}");
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let c1 = verdict(
        linkable >= C1_MIN_LINKABLE && mismatches == 0 && size_violations == 0 && over_bound == 0 && elapsed < TIME_LIMIT,
        format!(
            "minimax reproduction: {linkable}/{C1_INSTANCES} linkable (need {C1_MIN_LINKABLE}), \
             {mismatches} mismatches, {size_violations} oversized, {over_bound} packings above the bound, \
             {:.2}s (limit {}s){}",
            elapsed.as_secs_f64(),
            TIME_LIMIT.as_secs(),
            if first_problem.is_empty() { String::new() } else { format!("; first: {first_problem}") }
        ),
    );
    let c3 = verdict(
        step_violations == 0 && steps_checked > 0,
        format!("extraction invariant: {steps_checked} remainders checked, {step_violations} violations"),
    );
    (c1, c3)
}

fn criterion_2() -> Verdict {
    let mut rng = XorShift64Star::new(0xC2);
    let start = Instant::now();
    let (mut failures, mut unlinkable) = (0, 0);
    let mut first_problem = String::new();
    for i in 0..C2_INSTANCES {
        let p = draw_params(&mut rng, 10, 3, 5);
        let g = generate(&p);
        if !linkage::linkability_condition(&g) {
            unlinkable += 1;
        }
        let report = lovcher_certificate(&g).map(|c| toolkit::verify_certificate(&g, &c));
        match report {
            Ok(r) if r.ok => {}
            Ok(r) => {
                failures += 1;
                if first_problem.is_empty() {
                    first_problem = format!("instance {i}: {}", r.violations[0]);
                }
            }
            Err(e) => {
                failures += 1;
                if first_problem.is_empty() {
                    first_problem = format!("instance {i}: {e}");
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        failures == 0 && elapsed < TIME_LIMIT,
        format!(
            "structural certificate: {}/{C2_INSTANCES} verified ({unlinkable} not linkable), {:.2}s (limit {}s){}",
            C2_INSTANCES - failures,
            elapsed.as_secs_f64(),
            TIME_LIMIT.as_secs(),
            if first_problem.is_empty() { String::new() } else { format!("; first: {first_problem}") }
        ),
    )
}

fn criterion_4() -> Verdict {
    let mut rng = XorShift64Star::new(0xC4);
    let (mut instances, mut pairs, mut violations, mut disagreements) = (0, 0, 0, 0);
    let mut draws = 0;
    while instances < C4_INSTANCES && draws < 50 * C4_INSTANCES {
        draws += 1;
        let p = draw_params(&mut rng, 8, 2, 3);
        let g = generate(&p);
        let all: VertexSet = g.terminals().iter().copied().collect();
        let c = joker_family(&g, &all).expect("joker family").contracted;
        if c.edge_count() == 0 || c.edge_count() > C4_MAX_EDGES {
            continue;
        }
        instances += 1;
        let edges: Vec<EdgeId> = c.edge_ids().collect();
        for (i, &f) in edges.iter().enumerate() {
            for &h in &edges[i..] {
                pairs += 1;
                let alive = packing::survives_two_deletions(&c, f, h).expect("live edges");
                if !alive.values().all(|&ok| ok) {
                    violations += 1;
                }
                let rest = c.without_edges(&[f, h].into_iter().collect());
                if !alive.iter().all(|(&t, &ok)| ok == linkage_exists(&rest, t)) {
                    disagreements += 1;
                }
            }
        }
    }
    verdict(
        instances == C4_INSTANCES && violations == 0 && disagreements == 0,
        format!(
            "two-deletion robustness: {instances} post-joker instances, {pairs} single and pair deletions, \
             {violations} violations, {disagreements} disagreements with brute force"
        ),
    )
}

fn criterion_5() -> Verdict {
    let mut rng = XorShift64Star::new(0xC5);
    let (mut instances, mut cases, mut linkages, mut violations) = (0, 0, 0, 0);
    let mut draws = 0;
    let mut first_problem = String::new();
    while instances < C5_INSTANCES && draws < 100 * C5_INSTANCES {
        draws += 1;
        let p = draw_params(&mut rng, 7, 1, 3);
        let g = generate(&p);
        if g.edge_count() > C5_MAX_EDGES {
            continue;
        }
        let mut hit = false;
        for &t in g.terminals() {
            let (a, b) = (single(t), linkage::other_terminals(&g, t));
            let all = toolkit::enumerate_linkages(&g, t, DEFAULT_CAP).expect("small instance");
            if all.is_empty() || g.degree(t) == 0 {
                continue;
            }
            let at_t = g.delta_vertex(t);
            let forced = all
                .iter()
                .map(|l| l.edge_set())
                .reduce(|x, y| x.intersection(&y).copied().collect())
                .unwrap_or_default();
            let min_cuts = toolkit::enumerate_min_cuts(&g, &a, &b);
            for &e in forced.difference(&at_t) {
                hit = true;
                cases += 1;
                let ok = match menger::tight_cut_through(&g, &a, &b, e) {
                    Ok(cut) => {
                        let smallest = min_cuts
                            .iter()
                            .filter(|c| c.edges.contains(&e))
                            .all(|c| cut.source_region.is_subset(&c.source_region));
                        linkages += all.len();
                        smallest
                            && cut.edges.contains(&e)
                            && all.iter().all(|l| menger::is_orthogonal(&cut.edges, l))
                    }
                    Err(err) => {
                        if first_problem.is_empty() {
                            first_problem = format!("edge {e}: {err}");
                        }
                        false
                    }
                };
                if !ok {
                    violations += 1;
                }
            }
        }
        if hit {
            instances += 1;
        }
    }
    verdict(
        instances == C5_INSTANCES && violations == 0,
        format!(
            "tight-cut orthogonality: {instances} instances, {cases} unavoidable edges, {linkages} linkages checked, \
             {violations} violations{}",
            if first_problem.is_empty() { String::new() } else { format!("; first: {first_problem}") }
        ),
    )
}

/// Two disjoint non-empty vertex sets of size one or two.
fn draw_sides(rng: &mut XorShift64Star, g: &Graft) -> (VertexSet, VertexSet) {
    let verts: Vec<VertexId> = g.vertices().collect();
    let picked = rng.sample(&verts, 4.min(verts.len()));
    let split = if picked.len() >= 4 {
        rng.between(1, 2)
    } else {
        1
    };
    let b_len = rng.between(1, (picked.len() - split).min(2));
    let a = picked[..split].iter().copied().collect();
    let b = picked[split..split + b_len].iter().copied().collect();
    (a, b)
}

fn criterion_6() -> Verdict {
    let mut rng = XorShift64Star::new(0xC6);
    let (mut pairs, mut violations) = (0, 0);
    while pairs < C6_PAIRS {
        let p = draw_params(&mut rng, 7, 2, 3);
        let g = generate(&p);
        let (a, b) = draw_sides(&mut rng, &g);
        let Ok(systems) = toolkit::enumerate_path_systems(&g, &a, &b, 5_000) else {
            continue;
        };
        if systems.len() < 2 {
            continue;
        }
        for _ in 0..5 {
            let sp = &systems[rng.below(systems.len())];
            let sq = &systems[rng.below(systems.len())];
            pairs += 1;
            let ok = match menger::pym_merge(&g, &a, &b, sp, sq) {
                Ok(r) => {
                    r.is_edge_disjoint()
                        && r.iter().all(|x| x.is_ab_path(&g, &a, &b))
                        && r.delta_trace(&g, &a).is_superset(&sp.delta_trace(&g, &a))
                        && r.delta_trace(&g, &b).is_superset(&sq.delta_trace(&g, &b))
                }
                Err(_) => false,
            };
            if !ok {
                violations += 1;
            }
        }
    }
    verdict(
        violations == 0,
        format!("Pym postconditions: {pairs} pairs, {violations} violations"),
    )
}

fn criterion_7() -> Verdict {
    let mut rng = XorShift64Star::new(0xC7);
    let (mut cuts, mut violations, mut oversized) = (0, 0, 0);
    for _ in 0..C7_INSTANCES {
        let n = rng.between(4, C7_MAX_VERTICES);
        let p = GenParams {
            seed: rng.next_u64(),
            vertex_count: n,
            terminal_count: rng.between(2, n.min(4)),
            cycle_count: rng.between(0, 3),
            tpath_count: rng.between(1, 4),
            max_piece_length: 4,
        };
        let g = generate(&p);
        if g.vertex_count() > C7_MAX_VERTICES {
            oversized += 1;
        }
        let (a, b) = if rng.below(2) == 0 {
            let t = g.terminals()[0];
            (single(t), linkage::other_terminals(&g, t))
        } else {
            draw_sides(&mut rng, &g)
        };
        let (small, large) = menger::extreme_cuts(&g, &a, &b).expect("disjoint sides");
        for c in toolkit::enumerate_min_cuts(&g, &a, &b) {
            cuts += 1;
            let by_region = small.source_region.is_subset(&c.source_region)
                && c.source_region.is_subset(&large.source_region);
            let by_order = menger::cut_leq(&g, &a, &b, &small, &c) == Ok(true)
                && menger::cut_leq(&g, &a, &b, &c, &large) == Ok(true);
            if !(by_region && by_order) {
                violations += 1;
            }
        }
    }
    verdict(
        violations == 0 && oversized == 0,
        format!("lattice sandwich: {C7_INSTANCES} instances, {cuts} minimum cuts, {violations} violations"),
    )
}

fn criterion_8() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_tpaths");
    let dir = std::env::temp_dir().join(format!("tpaths-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let run = |args: &[&str]| -> Vec<u8> {
        let out = Command::new(bin).args(args).output().expect("binary runs");
        let mut bytes = out.stdout;
        bytes.extend(out.status.code().unwrap_or(-1).to_le_bytes());
        bytes
    };
    let mut differing: BTreeMap<&str, usize> = BTreeMap::new();
    let mut runs = 0;
    for seed in 0..C8_SEEDS {
        let seed = (seed * 7919).to_string();
        let gen_args = [
            "gen",
            "--seed",
            &seed,
            "--vertices",
            "9",
            "--terminals",
            "3",
            "--cycles",
            "2",
            "--tpaths",
            "4",
        ];
        let g1 = run(&gen_args);
        let g2 = run(&gen_args);
        let file = dir.join(format!("g{seed}.txt"));
        std::fs::write(&file, &g1[..g1.len() - 4]).expect("write graft");
        let f = file.to_str().unwrap();
        runs += 3;
        if g1 != g2 {
            *differing.entry("gen").or_default() += 1;
        }
        for cmd in ["pack", "certify"] {
            if run(&[cmd, f]) != run(&[cmd, f]) {
                *differing.entry(cmd).or_default() += 1;
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    verdict(
        differing.is_empty(),
        format!(
            "determinism: {runs} command pairs over {C8_SEEDS} seeds, differing: {differing:?}"
        ),
    )
}

fn main() {
    let (c1, c3) = criteria_1_and_3();
    let results = [
        (1, c1),
        (2, criterion_2()),
        (3, c3),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, criterion_7()),
        (8, criterion_8()),
    ];
    let mut failed = 0;
    for (n, v) in &results {
        println!(
            "criterion {n} [{}] {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.summary
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
