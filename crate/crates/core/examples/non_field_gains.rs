//! Gains of order 2 break the matroid: a graph over ℤ/4 whose rank function
//! fails local submodularity.

use gainsign::gain::GainSignedGraph;
use gainsign::graph::EdgeKind;
use gainsign::group::IntegersMod;
use gainsign::matroid::{check_rank_axioms, AxiomMode};
use gainsign::signed::Sign::{Minus, Plus};

fn main() {
    let mut u = GainSignedGraph::new(IntegersMod::new(4).unwrap(), 2);
    u.add_edge(EdgeKind::Loop(1), Minus, [Plus, Plus], 0).unwrap();
    u.add_edge(EdgeKind::Link(0, 1), Plus, [Plus, Minus], 0).unwrap();
    u.add_half(0, 0).unwrap();
    u.add_edge(EdgeKind::Link(0, 1), Plus, [Plus, Minus], 2).unwrap();

    // The loop forces 2θ(v1) = 0, so θ(v1) ∈ {0, 2}; e1 wants 0 and e3 wants 2.
    match check_rank_axioms(&u, AxiomMode::Exhaustive).violation {
        Some(v) => println!("{} fails at S = {}, e = {:?}, f = {:?}: {}", v.axiom, v.set, v.e, v.f, v.detail),
        None => println!("no violation"),
    }
}
