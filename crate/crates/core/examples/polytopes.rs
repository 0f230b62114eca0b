//! Affine dimensions of edge, arc and bidirected point configurations.

use gainsign::arrangement::{polytope_dimension, polytope_points, PointFamily};
use gainsign::gain::GainSignedGraph;
use gainsign::group::Integers;
use gainsign::linalg::{exact_rank, RationalField};
use gainsign::signed::Sign;

fn cycle(n: usize) -> GainSignedGraph<Integers> {
    let mut u = GainSignedGraph::new(Integers, n);
    for i in 0..n {
        u.add_link(i, (i + 1) % n, Sign::Plus, 0.into()).unwrap();
    }
    u
}

fn main() {
    for n in [3, 4, 5] {
        let u = cycle(n);
        for family in [PointFamily::Edge, PointFamily::Arc, PointFamily::DoubleArc, PointFamily::Bidirected] {
            let d = polytope_dimension(&u, family).unwrap();
            let r = exact_rank(&RationalField, &polytope_points(&u, family).unwrap());
            println!("C{n} {family:?}: dimension {d}, homogenized point rank {r}");
        }
    }
}
