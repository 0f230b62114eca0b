//! The matroid M(Υ): rank, independence, closure, flats, bases, cocircuits
//! and axiom checks. Pass `u.extended()` to work in M∞(Υ).

mod circuits;
mod minor;

pub use circuits::{circles, circuits, classify_circuit, HypercircuitClass};
pub use minor::{contract, delete, minor, Minor};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::gain::{gain_potential, potential_neutral_edges, GainPotential, GainSignedGraph};
use crate::graph::{components, cyclomatic, EdgeId, EdgeKind, Graph, VertexId};
use crate::group::AbelianGroup;
use crate::signed::{balanced_components, SignSwitcher};

/// Limits for the exponential enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest ground set for subset-based enumerations (flats, bases,
    /// cocircuits, exhaustive axiom checks).
    pub max_edges: usize,
    /// Largest ground set for circuit enumeration.
    pub max_circuit_edges: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_edges: 16, max_circuit_edges: 20 }
    }
}

impl Budget {
    pub(crate) fn check(&self, what: &'static str, m: usize, limit: usize) -> Result<()> {
        if m > limit {
            return Err(Error::Budget { what, needed: m, limit });
        }
        Ok(())
    }
}

/// rk(S) = n − b_Σ(S) + δ(S), with δ = 1 exactly when S is hyperfrustrated.
pub fn rank<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> usize {
    let p = gain_potential(u, s);
    u.n() - p.balance.count() + usize::from(p.theta.is_none())
}

pub fn nullity<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> usize {
    s.len() - rank(u, s)
}

/// Ranks of all 2^m subsets, indexed by bit mask.
pub fn rank_table<G: AbelianGroup>(u: &GainSignedGraph<G>) -> Vec<u8> {
    let m = u.m();
    assert!(m < 32, "rank table needs m < 32");
    (0u64..1 << m).into_par_iter().map(|mask| rank(u, &EdgeSet::from_mask(mask)) as u8).collect()
}

/// Shape of one edge component of a set, as in the independence theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentShape {
    Tree,
    UnbalancedUnicycle,
    BalancedUnicycle,
    LooseEdge,
    /// Sign-unbalanced theta graph or handcuff (cyclomatic number 2).
    UnbalancedBicycle,
    Other,
}

impl ComponentShape {
    fn is_special(self) -> bool {
        matches!(self, ComponentShape::BalancedUnicycle | ComponentShape::LooseEdge | ComponentShape::UnbalancedBicycle)
    }
}

/// Structural certificate for independence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    pub components: Vec<(EdgeSet, ComponentShape)>,
    /// Index into `components` of the hyperfrustrated component S0.
    pub special: Option<usize>,
}

/// Edge components of `s`: the edge sets of vertex components that carry
/// edges, and each loose edge alone; ordered by smallest edge id.
pub fn edge_components(g: &Graph, s: &EdgeSet) -> Vec<EdgeSet> {
    let comps = components(g, s);
    let mut by_label: BTreeMap<usize, EdgeSet> = BTreeMap::new();
    let mut out = Vec::new();
    for e in s.iter() {
        match g.kind(e).end(0) {
            Some(end) => {
                by_label.entry(comps.label[end.vertex]).or_default().insert(e);
            }
            None => out.push(EdgeSet::from_iter([e])),
        }
    }
    out.extend(by_label.into_values());
    out.sort_by_key(|c| c.first());
    out
}

/// Independence test with the structural classification of its components.
///
/// Panics if the structure and the nullity disagree, which would be a bug.
pub fn is_independent<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> Independence {
    let g = u.graph();
    let mut comps = Vec::new();
    for c in edge_components(g, s) {
        let shape = if c.len() == 1 && g.kind(c.first().unwrap()).is_loose() {
            ComponentShape::LooseEdge
        } else {
            let balanced = balanced_components(u.signed(), &c).unbalanced_vertices().is_empty();
            match (cyclomatic(g, &c), balanced) {
                (0, _) => ComponentShape::Tree,
                (1, false) => ComponentShape::UnbalancedUnicycle,
                (1, true) => ComponentShape::BalancedUnicycle,
                (2, false) => ComponentShape::UnbalancedBicycle,
                _ => ComponentShape::Other,
            }
        };
        comps.push((c, shape));
    }
    let specials: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].1.is_special()).collect();
    let ordinary = comps.iter().all(|(_, sh)| sh.is_special() || matches!(sh, ComponentShape::Tree | ComponentShape::UnbalancedUnicycle));
    let independent = ordinary
        && match specials.as_slice() {
            [] => true,
            [i] => gain_potential(u, &comps[*i].0).theta.is_none(),
            _ => false,
        };
    assert_eq!(independent, nullity(u, s) == 0, "structural independence disagrees with rank on {s}");
    let special = if independent { specials.first().copied() } else { None };
    Independence { independent, components: comps, special }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlatKind {
    Hyperbalanced,
    Hyperfrustrated,
}

/// The data (U, π, ζ, θ) that determines a flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatDescriptor<E> {
    pub unbalanced: Vec<VertexId>,
    pub partition: Vec<Vec<VertexId>>,
    /// Sign potential; only its values on the blocks of `partition` matter.
    pub zeta: SignSwitcher,
    /// Gain potential, present for hyperbalanced flats.
    pub theta: Option<GainPotential<E>>,
    pub kind: FlatKind,
}

/// Canonical descriptor of the closure of `s`: U = U_Σ(S), π = π_b(S).
pub fn descriptor<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> FlatDescriptor<G::Elem> {
    let p = gain_potential(u, s);
    let kind = if p.theta.is_some() { FlatKind::Hyperbalanced } else { FlatKind::Hyperfrustrated };
    FlatDescriptor {
        unbalanced: p.balance.unbalanced_vertices(),
        partition: p.balance.pib(),
        zeta: p.balance.potential.clone(),
        theta: p.theta,
        kind,
    }
}

/// The edge set a descriptor stands for.
pub fn regenerate<G: AbelianGroup>(u: &GainSignedGraph<G>, d: &FlatDescriptor<G::Elem>) -> EdgeSet {
    let mut block = vec![None; u.n()];
    for (i, b) in d.partition.iter().enumerate() {
        for &v in b {
            block[v] = Some(i);
        }
    }
    let mut in_u = vec![false; u.n()];
    for &v in &d.unbalanced {
        in_u[v] = true;
    }
    let neutral = d.theta.as_ref().map(|t| potential_neutral_edges(u, t));
    (0..u.m())
        .filter(|&e| {
            let ok_gain = neutral.as_ref().map_or(true, |n| n.contains(e));
            match u.kind(e) {
                EdgeKind::Loose => match &neutral {
                    Some(_) => ok_gain,
                    None => true,
                },
                EdgeKind::Half(v) => in_u[v] && ok_gain,
                EdgeKind::Link(a, b) | EdgeKind::Loop(a @ b) => {
                    let inside = if in_u[a] && in_u[b] {
                        true
                    } else {
                        matches!((block[a], block[b]), (Some(x), Some(y)) if x == y)
                            && u.sign(e) == d.zeta.at(a) * d.zeta.at(b)
                    };
                    inside && ok_gain
                }
            }
        })
        .collect()
}

/// Structural closure.
pub fn closure<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> EdgeSet {
    regenerate(u, &descriptor(u, s))
}

/// {e : rk(S ∪ e) = rk(S)}, straight from the rank function.
pub fn closure_by_rank<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> EdgeSet {
    let r = rank(u, s);
    (0..u.m()).filter(|&e| s.contains(e) || rank(u, &s.with(e)) == r).collect()
}

/// All flats with their canonical descriptors, sorted by edge-set encoding.
pub fn flats<G: AbelianGroup>(
    u: &GainSignedGraph<G>,
    hyperbalanced_only: bool,
    budget: &Budget,
) -> Result<Vec<(EdgeSet, FlatDescriptor<G::Elem>)>> {
    budget.check("flat enumeration (edges)", u.m(), budget.max_edges)?;
    let start = closure(u, &EdgeSet::new());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for e in 0..u.m() {
            if !f.contains(e) {
                let g = closure(u, &f.with(e));
                if seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
    }
    Ok(seen
        .into_iter()
        .map(|f| {
            let d = descriptor(u, &f);
            (f, d)
        })
        .filter(|(_, d)| !hyperbalanced_only || d.kind == FlatKind::Hyperbalanced)
        .collect())
}

/// All bases, sorted by encoding.
pub fn bases<G: AbelianGroup>(u: &GainSignedGraph<G>, budget: &Budget) -> Result<Vec<EdgeSet>> {
    budget.check("basis enumeration (edges)", u.m(), budget.max_edges)?;
    let r = rank(u, &u.ground());
    let mut out: Vec<EdgeSet> = (0u64..1 << u.m())
        .into_par_iter()
        .filter(|mask| mask.count_ones() as usize == r)
        .map(EdgeSet::from_mask)
        .filter(|b| is_independent(u, b).independent)
        .collect();
    out.sort();
    Ok(out)
}

/// Cocircuits: complements of the flats of rank rk(E) − 1.
pub fn cocircuits<G: AbelianGroup>(u: &GainSignedGraph<G>, budget: &Budget) -> Result<Vec<EdgeSet>> {
    let ground = u.ground();
    let r = rank(u, &ground);
    if r == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<EdgeSet> = flats(u, false, budget)?
        .into_iter()
        .filter(|(f, _)| rank(u, f) == r - 1)
        .map(|(f, _)| ground.difference(&f))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub set: EdgeSet,
    pub e: Option<EdgeId>,
    pub f: Option<EdgeId>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: usize,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Check R1 (r(∅) = 0), R2 (unit increase) and R3′ (local submodularity) for
/// an arbitrary rank function on `m` elements.
pub fn check_rank_function(m: usize, rank_fn: impl Fn(&EdgeSet) -> usize, mode: AxiomMode) -> AxiomReport {
    let sets: Vec<EdgeSet> = match mode {
        AxiomMode::Exhaustive => {
            assert!(m < 63);
            (0u64..1 << m).map(EdgeSet::from_mask).collect()
        }
        AxiomMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| (0..m).filter(|_| rng.gen_bool(0.5)).collect()).collect()
        }
    };
    let violation = |axiom, set: &EdgeSet, e, f, detail: String| AxiomViolation { axiom, set: set.clone(), e, f, detail };
    let r0 = rank_fn(&EdgeSet::new());
    if r0 != 0 {
        return AxiomReport { checked: 1, violation: Some(violation("R1", &EdgeSet::new(), None, None, format!("r(∅) = {r0}"))) };
    }
    let mut checked = 1;
    for s in &sets {
        let r = rank_fn(s);
        let outside: Vec<EdgeId> = (0..m).filter(|&e| !s.contains(e)).collect();
        let mut plus = Vec::with_capacity(outside.len());
        for &e in &outside {
            let re = rank_fn(&s.with(e));
            checked += 1;
            if re < r || re > r + 1 {
                return AxiomReport {
                    checked,
                    violation: Some(violation("R2", s, Some(e), None, format!("r(S) = {r}, r(S+e) = {re}"))),
                };
            }
            plus.push(re);
        }
        for i in 0..outside.len() {
            for j in i + 1..outside.len() {
                if plus[i] == r && plus[j] == r {
                    let (e, f) = (outside[i], outside[j]);
                    let ref_ = rank_fn(&s.with(e).with(f));
                    checked += 1;
                    if ref_ != r {
                        return AxiomReport {
                            checked,
                            violation: Some(violation("R3'", s, Some(e), Some(f), format!("r(S) = r(S+e) = r(S+f) = {r}, r(S+e+f) = {ref_}"))),
                        };
                    }
                }
            }
        }
    }
    AxiomReport { checked, violation: None }
}

pub fn check_rank_axioms<G: AbelianGroup>(u: &GainSignedGraph<G>, mode: AxiomMode) -> AxiomReport {
    if mode == AxiomMode::Exhaustive && u.m() < 24 {
        let table = rank_table(u);
        return check_rank_function(u.m(), |s| table[s.to_mask().unwrap() as usize] as usize, mode);
    }
    check_rank_function(u.m(), |s| rank(u, s), mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::SignCircuit;
    use crate::gain::{is_hyperbalanced, is_neutral};
    use crate::group::Integers;
    use crate::testutil::{all_masks, gain_graph_strategy, int, zmod4_counterexample, zmod_graph_strategy};
    use proptest::prelude::*;
    use crate::signed::Sign::{self, *};

    fn cycle(n: usize, sign: Sign, gain: i64) -> GainSignedGraph<Integers> {
        let mut u = GainSignedGraph::new(Integers, n);
        for i in 0..n {
            u.add_link(i, (i + 1) % n, sign, int(gain)).unwrap();
        }
        u
    }

    #[test]
    fn rank_examples() {
        let t = cycle(3, Minus, 1);
        assert_eq!(rank(&t, &t.ground()), 3);
        let c4 = cycle(4, Minus, 1);
        assert_eq!(rank(&c4, &c4.ground()), 3);
        let x = GainSignedGraph::new(Integers, 2).extended();
        assert_eq!(rank(&x, &x.ground()), 1);
    }

    #[test]
    fn nullity_examples() {
        let mut d = GainSignedGraph::new(Integers, 2);
        d.add_link(0, 1, Plus, int(1)).unwrap();
        d.add_link(0, 1, Plus, int(1)).unwrap();
        assert_eq!(nullity(&d, &d.ground()), 1);
        let mut l = GainSignedGraph::new(Integers, 2);
        l.add_link(0, 0, Plus, int(1)).unwrap();
        l.add_link(1, 1, Plus, int(2)).unwrap();
        assert_eq!(nullity(&l, &l.ground()), 1);
        assert_eq!(nullity(&l, &EdgeSet::from_iter([0])), 0);
    }

    #[test]
    fn independence_certificates() {
        let mut u = cycle(3, Plus, 1);
        u.add_link(0, 3 - 1, Plus, int(0)).unwrap();
        let tri = EdgeSet::from_iter([0, 1, 2]);
        let cert = is_independent(&u, &tri);
        assert!(cert.independent);
        assert_eq!(cert.special, Some(0));
        assert_eq!(cert.components[0].1, ComponentShape::BalancedUnicycle);
        let neutral = cycle(3, Plus, 0);
        assert!(!is_independent(&neutral, &neutral.ground()).independent);
        assert!(is_independent(&u, &EdgeSet::from_iter([0, 1])).independent);
    }

    #[test]
    fn closure_examples() {
        let mut u = GainSignedGraph::new(Integers, 2);
        u.add_link(0, 0, Plus, int(0)).unwrap();
        u.add_loose(int(0)).unwrap();
        u.add_loose(int(3)).unwrap();
        u.add_link(0, 1, Plus, int(2)).unwrap();
        assert_eq!(closure(&u, &EdgeSet::new()).to_vec(), vec![0, 1]);
        let x = u.extended();
        let inf = x.extra_point().unwrap();
        assert!(!closure(&x, &EdgeSet::from_iter([3])).contains(inf));
        assert!(closure(&x, &EdgeSet::from_iter([2])).contains(inf));
    }

    #[test]
    fn flat_examples() {
        let empty = GainSignedGraph::new(Integers, 3);
        let f = flats(&empty, false, &Budget::default()).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].0.is_empty());
        let mut l = GainSignedGraph::new(Integers, 1);
        l.add_loose(int(1)).unwrap();
        let f = flats(&l, false, &Budget::default()).unwrap();
        assert_eq!(f.iter().map(|x| x.0.to_vec()).collect::<Vec<_>>(), vec![vec![], vec![0]]);
        assert_eq!(flats(&l, true, &Budget::default()).unwrap().len(), 1);
    }

    #[test]
    fn basis_and_cocircuit_examples() {
        let mut tree = GainSignedGraph::new(Integers, 3);
        tree.add_link(0, 1, Plus, int(0)).unwrap();
        tree.add_link(1, 2, Plus, int(0)).unwrap();
        assert_eq!(bases(&tree, &Budget::default()).unwrap(), vec![tree.ground()]);
        let t = cycle(3, Minus, 1);
        assert_eq!(bases(&t, &Budget::default()).unwrap(), vec![t.ground()]);
        let mut l = GainSignedGraph::new(Integers, 1);
        l.add_link(0, 0, Plus, int(1)).unwrap();
        assert_eq!(cocircuits(&l, &Budget::default()).unwrap(), vec![EdgeSet::from_iter([0])]);
        let mut n = GainSignedGraph::new(Integers, 1);
        n.add_link(0, 0, Plus, int(0)).unwrap();
        assert!(cocircuits(&n, &Budget::default()).unwrap().is_empty());
    }

    #[test]
    fn corrupted_rank_fails() {
        let u = cycle(3, Plus, 1);
        let bad = |s: &EdgeSet| rank(&u, s) + usize::from(s.len() == 3);
        let rep = check_rank_function(3, bad, AxiomMode::Exhaustive);
        assert!(!rep.passed());
        let good = check_rank_axioms(&u, AxiomMode::Sampled { count: 20, seed: 7 });
        assert!(good.passed());
    }

    #[test]
    fn budget_is_enforced() {
        let u = cycle(3, Plus, 1);
        let b = Budget { max_edges: 2, max_circuit_edges: 2 };
        assert!(matches!(flats(&u, false, &b), Err(Error::Budget { .. })));
    }

    #[test]
    fn zmod4_is_not_a_matroid() {
        let r = check_rank_axioms(&zmod4_counterexample(), AxiomMode::Exhaustive);
        let v = r.violation.expect("axioms fail over Z/4");
        println!("{v:?}");
        assert_eq!(v.axiom, "R3'");
    }

    proptest! {
        #[test]
        fn closure_matches_rank(u in gain_graph_strategy(4, 6, 2)) {
            let x = u.extended();
            for s in all_masks(x.m()) {
                prop_assert_eq!(closure(&x, &s), closure_by_rank(&x, &s), "{}", s);
            }
        }

        #[test]
        fn closure_matches_rank_mod4(u in zmod_graph_strategy(4, 6, 4)) {
            for s in all_masks(u.m()) {
                prop_assert_eq!(closure(&u, &s), closure_by_rank(&u, &s), "{}", s);
            }
        }

        #[test]
        fn rank_axioms_hold(u in gain_graph_strategy(4, 6, 2)) {
            prop_assert!(check_rank_axioms(&u.extended(), AxiomMode::Exhaustive).passed());
        }

        #[test]
        fn extra_point_detects_hyperbalance(u in gain_graph_strategy(4, 6, 2)) {
            let x = u.extended();
            let inf = x.extra_point().unwrap();
            for s in all_masks(u.m()) {
                prop_assert_eq!(is_hyperbalanced(&u, &s), !closure(&x, &s).contains(inf));
            }
        }

        #[test]
        fn descriptors_regenerate_flats(u in gain_graph_strategy(4, 5, 2)) {
            for (f, d) in flats(&u.extended(), false, &Budget::default()).unwrap() {
                prop_assert_eq!(regenerate(&u.extended(), &d), f);
            }
        }

        #[test]
        fn flats_are_the_closures(u in gain_graph_strategy(3, 5, 1)) {
            let found: BTreeSet<EdgeSet> = flats(&u, false, &Budget::default()).unwrap().into_iter().map(|x| x.0).collect();
            let all: BTreeSet<EdgeSet> = all_masks(u.m()).map(|s| closure_by_rank(&u, &s)).collect();
            prop_assert_eq!(found, all);
        }

        #[test]
        fn independent_sets_avoid_circuits(u in gain_graph_strategy(4, 6, 2)) {
            let cs: Vec<EdgeSet> = circuits(&u, &Budget::default()).unwrap().into_iter().map(|c| c.0).collect();
            for s in all_masks(u.m()) {
                let contains = cs.iter().any(|c| c.is_subset(&s));
                prop_assert_eq!(is_independent(&u, &s).independent, !contains);
            }
        }

        #[test]
        fn bases_are_maximal_independent(u in gain_graph_strategy(4, 6, 2)) {
            let b = bases(&u, &Budget::default()).unwrap();
            let r = rank(&u, &u.ground());
            prop_assert!(!b.is_empty());
            for s in &b {
                prop_assert_eq!(s.len(), r);
                for e in 0..u.m() {
                    if !s.contains(e) {
                        prop_assert!(!is_independent(&u, &s.with(e)).independent);
                    }
                }
            }
        }

        #[test]
        fn cocircuits_meet_every_basis(u in gain_graph_strategy(4, 6, 2)) {
            let b = bases(&u, &Budget::default()).unwrap();
            let cc = cocircuits(&u, &Budget::default()).unwrap();
            for d in &cc {
                prop_assert!(b.iter().all(|s| !s.is_disjoint(d)));
                for e in d.iter() {
                    let smaller = d.without(e);
                    prop_assert!(b.iter().any(|s| s.is_disjoint(&smaller)));
                }
            }
        }

        #[test]
        fn hyperbalanced_matroid_is_frame(u in gain_graph_strategy(4, 6, 2)) {
            if is_hyperbalanced(&u, &u.ground()) {
                for s in all_masks(u.m()) {
                    prop_assert_eq!(rank(&u, &s), crate::signed::frame_rank(u.signed(), &s));
                }
            }
        }

        #[test]
        fn zmod_sign_circuits_of_rank(u in zmod_graph_strategy(3, 5, 4)) {
            for s in all_masks(u.m()) {
                if let Some(c) = SignCircuit::from_edges(u.signed(), &s) {
                    prop_assert_eq!(nullity(&u, &s) == 1, is_neutral(&u, &c).unwrap());
                }
            }
        }
    }
}
