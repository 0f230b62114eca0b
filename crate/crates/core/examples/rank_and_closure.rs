//! Rank, independence and closure on a small gain signed graph.

use gainsign::edge_set::EdgeSet;
use gainsign::gain::GainSignedGraph;
use gainsign::group::Integers;
use gainsign::matroid::{closure, descriptor, is_independent, rank};
use gainsign::signed::Sign;

fn main() {
    // A negative triangle with gain 1 on every edge, plus a neutral loose edge.
    let mut u = GainSignedGraph::new(Integers, 3);
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        u.add_link(a, b, Sign::Minus, 1.into()).unwrap();
    }
    u.add_loose(0.into()).unwrap();

    let all = u.ground();
    println!("rk(E) = {}", rank(&u, &all));
    let triangle: EdgeSet = [0, 1, 2].into_iter().collect();
    println!("triangle independent: {}", is_independent(&u, &triangle).independent);

    // A neutral loose edge is a loop of the matroid, so it sits in cl(∅).
    println!("cl(∅) = {}", closure(&u, &EdgeSet::new()));

    // In M∞ the extra point is one more element; the triangle spans it.
    let x = u.extended();
    let d = descriptor(&x, &triangle);
    println!("cl∞(triangle) = {} ({:?})", closure(&x, &triangle), d.kind);
}
