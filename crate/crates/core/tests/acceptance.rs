//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 2 claims the rank axioms over ℤ/4, which is false: gains of
//! order 2 break local submodularity. It is reported as FAIL with a witness
//! and listed in `KNOWN_FAILURES`, so the process still exits 0 unless some
//! other criterion fails.

use std::collections::VecDeque;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use gainsign::arrangement::{
    build_arrangement, chromatic_polynomials, chromatic_polynomials_by_flats, count_regions, enumerate_cells,
    generate_family, polytope_dimension, polytope_points, Family, FamilySpec, PointFamily,
};
use gainsign::corpus::{exhaustive, random_connected_graph, random_instance};
use gainsign::edge_set::EdgeSet;
use gainsign::gain::GainSignedGraph;
use gainsign::group::{Integers, IntegersMod, Rationals};
use gainsign::instance::InstanceFile;
use gainsign::linalg::{exact_rank, verify_rank_theorem, RationalField, SubsetMode};
use gainsign::matroid::{check_rank_axioms, rank_table, AxiomMode, Budget};
use gainsign::verify::{check_closure, check_minors, check_taxonomy, random_switching, CheckOutcome, VerifyOptions};

const KNOWN_FAILURES: &[usize] = &[2];

type Z = GainSignedGraph<Integers>;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn text<G: gainsign::group::AbelianGroup>(u: &GainSignedGraph<G>) -> String {
    InstanceFile::from_graph(u).map(|f| f.to_json().replace('\n', " ")).unwrap_or_default()
}

fn exhaustive_corpus() -> Vec<Z> {
    exhaustive(3, 4, 1)
}

fn random_corpus(seed: u64, count: usize, m_max: usize) -> Vec<Z> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_instance(&mut rng, &Integers, 4, m_max, 2)).collect()
}

/// Run a per-instance battery check, stopping at the first failure.
fn battery(corpus: &[Z], check: impl Fn(&Z) -> CheckOutcome + Sync) -> (usize, Option<(String, String)>) {
    let results: Vec<CheckOutcome> = corpus.par_iter().map(&check).collect();
    let checked = results.iter().map(|c| c.checked).sum();
    let fail = results
        .iter()
        .zip(corpus)
        .find(|(c, _)| c.failed())
        .map(|(c, u)| (c.witness.clone().unwrap_or_default(), text(u)));
    (checked, fail)
}

fn rank_theorem(corpus: &[Z], random: &[Z]) -> Outcome {
    let all: Vec<&Z> = corpus.iter().chain(random).collect();
    let reports: Vec<_> = all.par_iter().map(|u| verify_rank_theorem(*u, &RationalField, SubsetMode::All).unwrap()).collect();
    let subsets: usize = reports.iter().map(|r| r.checked).sum();
    match reports.iter().zip(&all).find(|(r, _)| !r.passed()) {
        None => outcome(true, format!("{} exhaustive + {} random instances, {subsets} subsets of E∞", corpus.len(), random.len())),
        Some((r, u)) => {
            let x = &r.mismatches[0];
            outcome(false, format!("S = {}: rank {} vs matrix {} in {}", x.subset, x.combinatorial, x.matrix, text(*u)))
        }
    }
}

fn zmod4_axioms() -> Outcome {
    let z4 = IntegersMod::new(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let instances: Vec<_> = (0..200).map(|_| random_instance(&mut rng, &z4, 4, 6, 3)).collect();
    let reports: Vec<_> = instances.par_iter().map(|u| check_rank_axioms(u, AxiomMode::Exhaustive)).collect();
    let bad: Vec<_> = reports.iter().zip(&instances).filter(|(r, _)| !r.passed()).collect();
    match bad.iter().min_by_key(|(_, u)| u.m()) {
        None => outcome(true, format!("{} instances", instances.len())),
        Some((r, u)) => {
            let v = r.violation.as_ref().unwrap();
            outcome(
                false,
                format!(
                    "{} of {} instances violate the axioms; smallest: {} at S = {}, e = {}, f = {} ({}) in {}",
                    bad.len(),
                    instances.len(),
                    v.axiom,
                    v.set,
                    v.e.unwrap_or_default(),
                    v.f.unwrap_or_default(),
                    v.detail,
                    text(*u)
                ),
            )
        }
    }
}

fn report_battery(name: &str, n: usize, (checked, fail): (usize, Option<(String, String)>)) -> Outcome {
    match fail {
        None => outcome(true, format!("{n} instances, {checked} comparisons of {name}")),
        Some((w, u)) => outcome(false, format!("{w} in {u}")),
    }
}

fn minor_commutation(corpus: &[Z], random: &[Z]) -> Outcome {
    let opts = VerifyOptions::default();
    let small: Vec<Z> = corpus.iter().chain(random).filter(|u| u.m() <= 6).cloned().collect();
    let over_z = battery(&small, |u| check_minors(u, &opts).unwrap());
    if over_z.1.is_some() {
        return report_battery("minor ranks", small.len(), over_z);
    }
    // Over ℚ no contraction is refused for want of halves.
    let lifted: Vec<GainSignedGraph<Rationals>> =
        small.iter().map(|u| u.map_gains(Rationals, |g| num_rational::BigRational::from_integer(g.clone()))).collect();
    let results: Vec<CheckOutcome> = lifted.par_iter().map(|u| check_minors(u, &opts).unwrap()).collect();
    let checked: usize = results.iter().map(|c| c.checked).sum();
    match results.iter().zip(&lifted).find(|(c, _)| c.failed()) {
        None => outcome(true, format!("{} instances over Z ({} comparisons) and over Q ({checked})", small.len(), over_z.0)),
        Some((c, u)) => outcome(false, format!("{} in {}", c.witness.clone().unwrap_or_default(), text(u))),
    }
}

fn switching() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut triples = 0;
    for _ in 0..300 {
        let u = random_instance(&mut rng, &Integers, 4, 6, 2).extended();
        let v = random_switching(&u, &mut rng);
        triples += 1;
        let (a, b) = (rank_table(&u), rank_table(&v));
        let indep = |t: &[u8], mask: usize| t[mask] as u32 == mask.count_ones();
        if let Some(mask) = (0..a.len()).find(|&s| indep(&a, s) != indep(&b, s)) {
            return outcome(false, format!("{} changes independence in {}", EdgeSet::from_mask(mask as u64), text(&u)));
        }
    }
    outcome(true, format!("{triples} (instance, ζ, θ, ρ) triples"))
}

fn regions() -> Outcome {
    let budget = Budget::default();
    let cases = [(Family::Shi, 2, 3), (Family::Shi, 3, 16), (Family::Catalan, 2, 4), (Family::Catalan, 3, 30), (Family::Linial, 2, 2)];
    let mut seen = Vec::new();
    for (f, n, expected) in cases {
        let u = generate_family(&FamilySpec::new(f, n)).unwrap();
        let r = count_regions(&u, &budget).unwrap().regions;
        if r != expected {
            return outcome(false, format!("{f} n={n}: {r} regions, expected {expected}"));
        }
        if n == 2 {
            let cells = enumerate_cells(&build_arrangement(&u), n).unwrap().regions as i128;
            if cells != r {
                return outcome(false, format!("{f} n={n}: formula {r}, cell enumeration {cells}"));
            }
        }
        seen.push(format!("{f}({n})={r}"));
    }
    outcome(true, seen.join(" "))
}

fn bipartite(u: &Z) -> bool {
    let n = u.n();
    let mut adj = vec![Vec::new(); n];
    for e in 0..u.m() {
        if let Some((a, b)) = u.kind(e).endpoints() {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut color = vec![None; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                match color[w] {
                    None => {
                        color[w] = Some(!color[v].unwrap());
                        queue.push_back(w);
                    }
                    Some(c) if c == color[v].unwrap() => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn polytopes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut bip, mut odd) = (0, 0);
    for _ in 0..50 {
        let u = random_connected_graph(&mut rng, 7);
        let n = u.n() as i64;
        let b = bipartite(&u);
        let expected = if b { n - 2 } else { n - 1 };
        let d = polytope_dimension(&u, PointFamily::Edge).unwrap();
        let oracle = exact_rank(&RationalField, &polytope_points(&u, PointFamily::Edge).unwrap()) as i64 - 1;
        if d != expected || oracle != expected {
            return outcome(false, format!("edge points: {d} (oracle {oracle}), expected {expected} in {}", text(&u)));
        }
        if b {
            bip += 1;
        } else {
            odd += 1;
        }
        for family in [PointFamily::Arc, PointFamily::DoubleArc] {
            let d = polytope_dimension(&u, family).unwrap();
            let r = exact_rank(&RationalField, &polytope_points(&u, family).unwrap()) as i64;
            if d != r {
                return outcome(false, format!("{family:?}: {d} vs exact rank {r} in {}", text(&u)));
            }
        }
    }
    outcome(true, format!("50 connected graphs ({bip} bipartite, {odd} not)"))
}

fn dual_paths(corpus: &[Z]) -> Outcome {
    let budget = Budget::default();
    let extra = random_corpus(9, 300, 8);
    let all: Vec<&Z> = corpus.iter().chain(&extra).collect();
    let bad = all.par_iter().find_first(|u| {
        chromatic_polynomials(**u, &budget).unwrap() != chromatic_polynomials_by_flats(**u, &budget).unwrap()
    });
    match bad {
        None => outcome(true, format!("{} instances with |E| <= 8", all.len())),
        Some(u) => outcome(false, format!("paths disagree on {}", text(*u))),
    }
}

fn main() {
    let start = Instant::now();
    let corpus = exhaustive_corpus();
    let random = random_corpus(1, 500, 6);
    let opts = VerifyOptions::default();

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("rank theorem over Q", Box::new(|| rank_theorem(&corpus, &random))),
        ("rank axioms over Z/4", Box::new(zmod4_axioms)),
        ("circuit taxonomy", Box::new(|| report_battery("circuit lists", corpus.len(), battery(&corpus, |u| check_taxonomy(u, &opts).unwrap())))),
        ("closure equivalence", Box::new(|| report_battery("closures", corpus.len(), battery(&corpus, |u| check_closure(u, &opts).unwrap())))),
        ("minor commutation", Box::new(|| minor_commutation(&corpus, &random))),
        ("switching invariance", Box::new(switching)),
        ("region counts", Box::new(regions)),
        ("polytope dimensions", Box::new(polytopes)),
        ("chromatic dual paths", Box::new(|| dual_paths(&corpus))),
    ];

    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let k = i + 1;
        let t = Instant::now();
        let o = run();
        let known = KNOWN_FAILURES.contains(&k);
        let tag = match (o.passed, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("{tag} {k} {name}: {} [{:.1}s]", o.detail, t.elapsed().as_secs_f64());
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
