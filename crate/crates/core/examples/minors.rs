//! Deletion and contraction, and their order independence.

use gainsign::edge_set::EdgeSet;
use gainsign::gain::GainSignedGraph;
use gainsign::group::Integers;
use gainsign::instance::InstanceFile;
use gainsign::matroid::{contract, delete, minor, rank};
use gainsign::signed::Sign;

fn main() {
    let mut u = GainSignedGraph::new(Integers, 3);
    u.add_link(0, 1, Sign::Plus, 0.into()).unwrap();
    u.add_link(1, 2, Sign::Minus, 3.into()).unwrap();
    u.add_link(0, 2, Sign::Plus, 1.into()).unwrap();
    u.add_half(2, 5.into()).unwrap();

    // A neutral positive link merges its ends.
    let s: EdgeSet = [0].into_iter().collect();
    let c = contract(&u, &s).unwrap();
    println!("contracting {s}: n {} -> {}", u.n(), c.graph.n());

    // Ranks in the contraction: rk_{Υ/S}(A) = rk(A ∪ S) − rk(S).
    let a: EdgeSet = [1, 2].into_iter().collect();
    println!("rk(A in Υ/S) = {}, rk(A∪S) − rk(S) = {}", rank(&c.graph, &c.map_edges(&a)), rank(&u, &a.union(&s)) - rank(&u, &s));

    // Delete then contract, or contract then delete: same file.
    let t: EdgeSet = [3].into_iter().collect();
    let first = minor(&u, &t, &s).unwrap();
    let second = delete(&c.graph, &c.map_edges(&t)).unwrap();
    let text = InstanceFile::from_graph(&first.graph).unwrap().to_json();
    assert_eq!(text, InstanceFile::from_graph(&second.graph).unwrap().to_json());
    print!("{text}");

    // A non-neutral loose edge is hyperfrustrated: contracting it erases gains.
    let mut l = GainSignedGraph::new(Integers, 1);
    l.add_loose(2.into()).unwrap();
    l.add_half(0, 1.into()).unwrap();
    let e = contract(&l, &[0].into_iter().collect()).unwrap();
    println!("gains erased: {}", e.gains_erased);
}
