use std::fmt;

use crate::circuit::SignCircuit;
use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::gain::{is_neutral, GainSignedGraph};
use crate::graph::{cyclomatic, spanning_forest, Graph};
use crate::group::AbelianGroup;
use crate::signed::{balanced_components, forest_adjacency, forest_path, Sign};

use super::{edge_components, rank_table, Budget};

/// Which kind of hypercircuit a circuit of M(Υ) is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HypercircuitClass {
    /// A neutral sign circuit.
    NeutralSignCircuit,
    /// Two disjoint non-neutral sign circuits.
    DisjointPair,
    /// Three negative figures linked together, no positive circle.
    ContrabalancedTriple,
    /// A theta with one positive circle plus a negative lollipop.
    ThetaPlusLollipop,
    /// Linked circles with exactly one positive circle and no shared edges.
    LinkedCircles,
    /// A balanced theta graph.
    BalancedTheta,
    /// Two positive circles meeting in one vertex.
    TightPositivePair,
    /// Four internally disjoint paths between two vertices.
    QuadruplePath,
    /// A subdivided K4 whose triangles are negative.
    AntibalancedK4,
    /// A theta with two positive circles and an extra ear.
    ThetaWithEar,
}

impl HypercircuitClass {
    pub fn name(self) -> &'static str {
        match self {
            HypercircuitClass::NeutralSignCircuit => "neutral-sign-circuit",
            HypercircuitClass::DisjointPair => "disjoint-pair",
            HypercircuitClass::ContrabalancedTriple => "contrabalanced-triple",
            HypercircuitClass::ThetaPlusLollipop => "theta-plus-lollipop",
            HypercircuitClass::LinkedCircles => "linked-circles",
            HypercircuitClass::BalancedTheta => "balanced-theta",
            HypercircuitClass::TightPositivePair => "tight-positive-pair",
            HypercircuitClass::QuadruplePath => "quadruple-path",
            HypercircuitClass::AntibalancedK4 => "antibalanced-k4",
            HypercircuitClass::ThetaWithEar => "theta-with-ear",
        }
    }

    pub const ALL: [HypercircuitClass; 10] = [
        HypercircuitClass::NeutralSignCircuit,
        HypercircuitClass::DisjointPair,
        HypercircuitClass::ContrabalancedTriple,
        HypercircuitClass::ThetaPlusLollipop,
        HypercircuitClass::LinkedCircles,
        HypercircuitClass::BalancedTheta,
        HypercircuitClass::TightPositivePair,
        HypercircuitClass::QuadruplePath,
        HypercircuitClass::AntibalancedK4,
        HypercircuitClass::ThetaWithEar,
    ];
}

impl fmt::Display for HypercircuitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Degree of every vertex in `s`; loops count twice.
fn degrees(g: &Graph, s: &EdgeSet) -> Vec<usize> {
    let mut deg = vec![0; g.n()];
    for e in s.iter() {
        for end in g.kind(e).ends() {
            deg[end.vertex] += 1;
        }
    }
    deg
}

/// All circles (connected 2-regular edge sets, loops included) inside `s`,
/// found among the sums of fundamental cycles.
pub fn circles(g: &Graph, s: &EdgeSet) -> Vec<EdgeSet> {
    let links: EdgeSet = s.iter().filter(|&e| g.kind(e).is_link() || g.kind(e).is_loop()).collect();
    let forest = spanning_forest(g, &links);
    let adj = forest_adjacency(g, &forest);
    let fundamental: Vec<EdgeSet> = links
        .difference(&forest)
        .iter()
        .map(|e| {
            let (a, b) = g.kind(e).endpoints().unwrap();
            let (path, _, _) = forest_path(&adj, &[a], &[b]).expect("chord endpoints share a tree");
            path.into_iter().chain([e]).collect()
        })
        .collect();
    assert!(fundamental.len() < 16, "cycle space too large to enumerate");
    let mut out = Vec::new();
    for mask in 1u32..1 << fundamental.len() {
        let c = (0..fundamental.len())
            .filter(|i| mask >> i & 1 == 1)
            .fold(EdgeSet::new(), |acc, i| acc.symmetric_difference(&fundamental[i]));
        if degrees(g, &c).iter().all(|&d| d == 0 || d == 2) && edge_components(g, &c).len() == 1 {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// Match a circuit of M(Υ) against the hypercircuit taxonomy.
pub fn classify_circuit<G: AbelianGroup>(u: &GainSignedGraph<G>, c: &EdgeSet) -> Result<HypercircuitClass> {
    let g = u.graph();
    let bad = |why: &str| Err(Error::Taxonomy(format!("{c}: {why}")));
    if let Some(sc) = SignCircuit::from_edges(u.signed(), c) {
        return if is_neutral(u, &sc)? {
            Ok(HypercircuitClass::NeutralSignCircuit)
        } else {
            bad("a non-neutral sign circuit is independent")
        };
    }
    let comps = edge_components(g, c);
    match comps.len() {
        1 => {}
        2 => {
            for part in &comps {
                match SignCircuit::from_edges(u.signed(), part) {
                    Some(sc) if !is_neutral(u, &sc)? => {}
                    _ => return bad("a component is not a non-neutral sign circuit"),
                }
            }
            return Ok(HypercircuitClass::DisjointPair);
        }
        _ => return bad("more than two edge components"),
    }
    let xi = cyclomatic(g, c);
    let balanced = balanced_components(u.signed(), c).unbalanced_vertices().is_empty();
    let deg = degrees(g, c);
    let count = |d: usize| deg.iter().filter(|&&x| x == d).count();
    let has_half = c.iter().any(|e| g.kind(e).is_half());
    if balanced {
        if xi != 2 {
            return bad("balanced but cyclomatic number is not 2");
        }
        return match (count(3), count(4)) {
            (2, 0) => Ok(HypercircuitClass::BalancedTheta),
            (0, 1) => Ok(HypercircuitClass::TightPositivePair),
            _ => bad("balanced shape is neither a theta nor a tight handcuff"),
        };
    }
    if xi != 3 {
        return bad("unbalanced but cyclomatic number is not 3");
    }
    let circ = circles(g, c);
    let sign = |s: &EdgeSet| u.signed().sign_of_set(s);
    let positive = circ.iter().filter(|s| sign(s) == Sign::Plus).count();
    match positive {
        0 => Ok(HypercircuitClass::ContrabalancedTriple),
        1 => {
            let shared = (0..circ.len()).any(|i| (i + 1..circ.len()).any(|j| !circ[i].is_disjoint(&circ[j])));
            Ok(if shared { HypercircuitClass::ThetaPlusLollipop } else { HypercircuitClass::LinkedCircles })
        }
        2 if !has_half && count(4) == 2 && count(4) + count(2) == deg.iter().filter(|&&d| d > 0).count() => {
            Ok(HypercircuitClass::QuadruplePath)
        }
        2 => Ok(HypercircuitClass::ThetaWithEar),
        3 => Ok(HypercircuitClass::AntibalancedK4),
        _ => bad("too many positive circles"),
    }
}

/// All circuits of M(Υ), each with its class, sorted by encoding.
pub fn circuits<G: AbelianGroup>(u: &GainSignedGraph<G>, budget: &Budget) -> Result<Vec<(EdgeSet, HypercircuitClass)>> {
    budget.check("circuit enumeration (edges)", u.m(), budget.max_circuit_edges)?;
    let table = rank_table(u);
    let nul = |mask: u64| mask.count_ones() as usize - table[mask as usize] as usize;
    let mut out = Vec::new();
    for mask in 1u64..1 << u.m() {
        if nul(mask) == 1 && (0..u.m()).all(|e| mask >> e & 1 == 0 || nul(mask & !(1 << e)) == 0) {
            let c = EdgeSet::from_mask(mask);
            let class = classify_circuit(u, &c)?;
            out.push((c, class));
        }
    }
    Ok(out)
}
