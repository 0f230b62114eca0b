//! The vector representation: edge vectors over ℚ or 𝔽_p whose column ranks
//! match the combinatorial rank on every subset of E∞.

use gainsign::gain::GainSignedGraph;
use gainsign::group::{AbelianGroup, Integers, IntegersMod};
use gainsign::linalg::{edge_vector, exact_rank, incidence_matrix, verify_rank_theorem, PrimeField, RationalField, SubsetMode};
use gainsign::signed::Sign;

fn main() {
    let mut u = GainSignedGraph::new(Integers, 2);
    u.add_link(0, 1, Sign::Plus, 1.into()).unwrap();
    u.add_link(0, 1, Sign::Minus, (-2).into()).unwrap();
    u.add_half(1, 3.into()).unwrap();
    u.add_loose(0.into()).unwrap();

    let x = u.extended();
    for e in 0..x.m() {
        let z = edge_vector(&x, e, &RationalField).unwrap();
        println!("z(e{e}) = [{}]", z.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", "));
    }
    println!("matrix rank {}", exact_rank(&RationalField, &incidence_matrix(&x, &RationalField).unwrap()));
    let report = verify_rank_theorem(&u, &RationalField, SubsetMode::All).unwrap();
    println!("over Q: {} subsets checked, {} mismatches", report.checked, report.mismatches.len());

    // The same graph with gains in ℤ/5 is represented over 𝔽_5.
    let z5 = IntegersMod::new(5).unwrap();
    let v = u.map_gains(z5, |g| z5.parse(&g.to_string()).unwrap());
    let report = verify_rank_theorem(&v, &PrimeField::new(5).unwrap(), SubsetMode::All).unwrap();
    println!("over F5: {} subsets checked, {} mismatches", report.checked, report.mismatches.len());
}
