//! Circuits, bases and cocircuits, with the hypercircuit class of each circuit.

use gainsign::gain::GainSignedGraph;
use gainsign::group::Integers;
use gainsign::matroid::{bases, circuits, cocircuits, Budget};
use gainsign::signed::Sign;

fn main() {
    // Two half edges joined by a link form a handcuff; a parallel positive
    // link with the same gain closes a neutral digon.
    let mut u = GainSignedGraph::new(Integers, 2);
    u.add_half(0, 1.into()).unwrap();
    u.add_link(0, 1, Sign::Plus, 2.into()).unwrap();
    u.add_link(0, 1, Sign::Plus, 2.into()).unwrap();
    u.add_half(1, 0.into()).unwrap();

    let budget = Budget::default();
    for (c, class) in circuits(&u, &budget).unwrap() {
        println!("circuit {c}: {}", class.name());
    }
    println!("{} bases", bases(&u, &budget).unwrap().len());
    for c in cocircuits(&u, &budget).unwrap() {
        println!("cocircuit {c}");
    }
}
