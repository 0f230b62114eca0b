//! The oracle battery: every check compares two independent computations of
//! the same matroid data and reports the smallest disagreement it finds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::gain::{GainSignedGraph, GainSwitcher};
use crate::group::{is_probable_odd_prime, AbelianGroup, Integers, IntegersMod, Rationals};
use crate::instance::{AnyGraph, InstanceFile};
use crate::linalg::{verify_rank_theorem, PrimeField, RankReport, RationalField, SubsetMode};
use crate::matroid::{
    check_rank_axioms, circuits, closure, closure_by_rank, contract, delete, minor, rank, rank_table, AxiomMode, Budget,
    Minor,
};
use crate::signed::{Sign, SignSwitcher};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub status: Status,
    /// How many comparisons were made.
    pub checked: usize,
    /// The first disagreement, or why the check was skipped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckOutcome {
    fn new(check: &'static str, checked: usize, witness: Option<String>) -> Self {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        CheckOutcome { check, status, checked, witness }
    }

    fn skip(check: &'static str, why: impl Into<String>) -> Self {
        CheckOutcome { check, status: Status::Skip, checked: 0, witness: Some(why.into()) }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub budget: Budget,
    /// Random (ζ, θ, ρ) triples per instance.
    pub switch_trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: Budget::default(), switch_trials: 4, seed: 0 }
    }
}

/// Groups that know which exact field (if any) represents their matroid.
pub trait RankOracle: AbelianGroup {
    /// `None` when there is no field to compare against.
    fn rank_theorem(u: &GainSignedGraph<Self>, mode: SubsetMode) -> Result<Option<RankReport>>;
}

impl RankOracle for Integers {
    fn rank_theorem(u: &GainSignedGraph<Self>, mode: SubsetMode) -> Result<Option<RankReport>> {
        verify_rank_theorem(u, &RationalField, mode).map(Some)
    }
}

impl RankOracle for Rationals {
    fn rank_theorem(u: &GainSignedGraph<Self>, mode: SubsetMode) -> Result<Option<RankReport>> {
        verify_rank_theorem(u, &RationalField, mode).map(Some)
    }
}

impl RankOracle for IntegersMod {
    fn rank_theorem(u: &GainSignedGraph<Self>, mode: SubsetMode) -> Result<Option<RankReport>> {
        let p = u.group().modulus();
        if !is_probable_odd_prime(p) {
            return Ok(None);
        }
        verify_rank_theorem(u, &PrimeField::new(p)?, mode).map(Some)
    }
}

/// Sets in order of size, then encoding, so the first hit is a smallest one.
fn by_size(m: usize) -> Vec<EdgeSet> {
    let mut masks: Vec<u64> = (0u64..1 << m).collect();
    masks.sort_by_key(|x| (x.count_ones(), *x));
    masks.into_iter().map(EdgeSet::from_mask).collect()
}

pub fn check_rank_theorem<G: RankOracle>(u: &GainSignedGraph<G>, opts: &VerifyOptions) -> Result<CheckOutcome> {
    const NAME: &str = "rank-theorem";
    let m = u.m() + 1;
    let mode = if m <= opts.budget.max_edges { SubsetMode::All } else { SubsetMode::Sample { count: 4096, seed: opts.seed } };
    let Some(report) = G::rank_theorem(u, mode)? else {
        return Ok(CheckOutcome::skip(NAME, format!("{} does not embed in a field", u.group().name())));
    };
    let witness = report.mismatches.iter().min_by_key(|x| (x.subset.len(), x.subset.clone())).map(|x| {
        format!("S = {} (e{} is the extra point): combinatorial rank {}, matrix rank {}", x.subset, u.m(), x.combinatorial, x.matrix)
    });
    Ok(CheckOutcome::new(NAME, report.checked, witness))
}

/// R1, R2 and R3′ on M∞(Υ).
pub fn check_axioms<G: AbelianGroup>(u: &GainSignedGraph<G>, opts: &VerifyOptions) -> Result<CheckOutcome> {
    let x = u.extended();
    opts.budget.check("rank axioms (edges)", x.m(), opts.budget.max_edges)?;
    let report = check_rank_axioms(&x, AxiomMode::Exhaustive);
    let witness = report.violation.map(|v| {
        let mut s = format!("{} fails at S = {}", v.axiom, v.set);
        for (name, e) in [("e", v.e), ("f", v.f)] {
            if let Some(e) = e {
                s += &format!(", {name} = {e}");
            }
        }
        format!("{s}: {}", v.detail)
    });
    Ok(CheckOutcome::new("rank-axioms", report.checked, witness))
}

/// Brute-force minimal dependent sets against the classified circuit list.
pub fn check_taxonomy<G: AbelianGroup>(u: &GainSignedGraph<G>, opts: &VerifyOptions) -> Result<CheckOutcome> {
    const NAME: &str = "circuit-taxonomy";
    let classified = match circuits(u, &opts.budget) {
        Ok(c) => c,
        Err(Error::Taxonomy(why)) => return Ok(CheckOutcome::new(NAME, 0, Some(why))),
        Err(e) => return Err(e),
    };
    let table = rank_table(u);
    let dependent = |s: &EdgeSet| (table[s.to_mask().expect("small ground set") as usize] as usize) < s.len();
    let brute: Vec<EdgeSet> = by_size(u.m())
        .into_iter()
        .filter(|s| dependent(s) && s.iter().all(|e| !dependent(&s.without(e))))
        .collect();
    let listed: Vec<&EdgeSet> = classified.iter().map(|c| &c.0).collect();
    let missing = brute.iter().find(|c| !listed.contains(c)).map(|c| format!("{c} is a circuit but was not listed"));
    let extra = || listed.iter().find(|c| !brute.contains(c)).map(|c| format!("{c} was listed but is not a circuit"));
    Ok(CheckOutcome::new(NAME, brute.len(), missing.or_else(extra)))
}

/// Structural closure against rank closure, on every subset of E∞.
pub fn check_closure<G: AbelianGroup>(u: &GainSignedGraph<G>, opts: &VerifyOptions) -> Result<CheckOutcome> {
    let x = u.extended();
    opts.budget.check("closure subsets (edges)", x.m(), opts.budget.max_edges)?;
    let sets = by_size(x.m());
    let witness = sets.iter().find_map(|s| {
        let (a, b) = (closure(&x, s), closure_by_rank(&x, s));
        (a != b).then(|| format!("S = {s}: structural closure {a}, rank closure {b}"))
    });
    Ok(CheckOutcome::new("closure", sets.len(), witness))
}

fn minor_text<G: AbelianGroup>(g: &GainSignedGraph<G>, erased: bool) -> String {
    let f = InstanceFile::from_graph(g).expect("minors of real graphs serialize");
    format!("{}erased={erased}", f.to_json())
}

/// Ranks in Υ/S against rk(A ∪ S) − rk(S), and both orders of deletion and
/// contraction compared as instance files.
pub fn check_minors<G: AbelianGroup>(u: &GainSignedGraph<G>, opts: &VerifyOptions) -> Result<CheckOutcome> {
    const NAME: &str = "minor-commutation";
    let m = u.m();
    opts.budget.check("minor subsets (edges)", m, opts.budget.max_edges)?;
    // Disjoint pairs (S, A), all of them while 3^m stays small.
    let pairs: Vec<(EdgeSet, EdgeSet)> = if m <= 8 {
        let mut out = Vec::new();
        for s in by_size(m) {
            let rest: Vec<usize> = (0..m).filter(|&e| !s.contains(e)).collect();
            for mask in 0u64..1 << rest.len() {
                let a = rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                out.push((s.clone(), a));
            }
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..512)
            .map(|_| {
                let side: Vec<u8> = (0..m).map(|_| rng.gen_range(0..3)).collect();
                let pick = |k| (0..m).filter(|&e| side[e] == k).collect();
                (pick(1), pick(2))
            })
            .collect()
    };
    let mut checked = 0;
    let mut last: Option<(EdgeSet, Result<Minor<G>>)> = None;
    for (s, a) in &pairs {
        if last.as_ref().map_or(true, |l| &l.0 != s) {
            last = Some((s.clone(), contract(u, s)));
        }
        let Some((_, c)) = &last else { unreachable!() };
        // A contraction refused for lack of halves says nothing about ranks.
        let Ok(c) = c else { continue };
        let lhs = rank(&c.graph, &c.map_edges(a));
        let rhs = rank(u, &a.union(s)) - rank(u, s);
        checked += 1;
        if lhs != rhs {
            return Ok(CheckOutcome::new(
                NAME,
                checked,
                Some(format!("S = {s}, A = {a}: rank of A in the contraction is {lhs}, rk(A∪S) − rk(S) = {rhs}")),
            ));
        }
        // File-level order independence, with S contracted and A deleted.
        if m <= 6 || checked % 8 == 0 {
            let first = minor(u, a, s);
            let second = delete(&c.graph, &c.map_edges(a));
            checked += 1;
            match (first, second) {
                (Ok(x), Ok(y)) if minor_text(&x.graph, x.gains_erased) == minor_text(&y.graph, c.gains_erased) => {}
                (Err(e), _) => {
                    return Ok(CheckOutcome::new(NAME, checked, Some(format!("delete {a} then contract {s} failed: {e}"))))
                }
                _ => {
                    return Ok(CheckOutcome::new(
                        NAME,
                        checked,
                        Some(format!("deleting {a} and contracting {s} depends on the order")),
                    ))
                }
            }
        }
    }
    Ok(CheckOutcome::new(NAME, checked, None))
}

/// A random sign switching, gain switching and reorientation.
pub fn random_switching<G: AbelianGroup, R: Rng>(u: &GainSignedGraph<G>, rng: &mut R) -> GainSignedGraph<G> {
    let g = u.group();
    let zeta = SignSwitcher((0..u.n()).map(|_| if rng.gen_bool(0.5) { Sign::Minus } else { Sign::Plus }).collect());
    let theta = GainSwitcher((0..u.n()).map(|_| g.from_int(rng.gen_range(-3..=3))).collect());
    let mut out = u.switch_signs(&zeta).switch_gains(&theta);
    for e in u.real_edges().iter() {
        if rng.gen_bool(0.5) {
            out = out.reorient(e).expect("real edges can be reoriented");
        }
    }
    out
}

/// Independent sets of M∞ before and after random switchings.
pub fn check_switching<G: AbelianGroup>(u: &GainSignedGraph<G>, opts: &VerifyOptions) -> Result<CheckOutcome> {
    let x = u.extended();
    opts.budget.check("switching subsets (edges)", x.m(), opts.budget.max_edges)?;
    let before = rank_table(&x);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5157);
    let sets = by_size(x.m());
    for trial in 0..opts.switch_trials {
        let after = rank_table(&random_switching(&x, &mut rng));
        let independent = |t: &[u8], s: &EdgeSet| t[s.to_mask().expect("small") as usize] as usize == s.len();
        if let Some(s) = sets.iter().find(|s| independent(&before, s) != independent(&after, s)) {
            let was = if independent(&before, s) { "independent" } else { "dependent" };
            return Ok(CheckOutcome::new(
                "switching",
                (trial + 1) * sets.len(),
                Some(format!("trial {trial}: {s} was {was} before switching and not after")),
            ));
        }
    }
    Ok(CheckOutcome::new("switching", opts.switch_trials * sets.len(), None))
}

/// Every check on one graph, in a fixed order.
pub fn verify<G: RankOracle>(u: &GainSignedGraph<G>, opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        check_rank_theorem(u, opts)?,
        check_axioms(u, opts)?,
        check_taxonomy(u, opts)?,
        check_closure(u, opts)?,
        check_minors(u, opts)?,
        check_switching(u, opts)?,
    ])
}

pub fn verify_any(g: &AnyGraph, opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    crate::with_graph!(g, u => verify(u, opts))
}
