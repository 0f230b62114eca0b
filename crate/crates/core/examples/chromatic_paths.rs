//! The chromatic polynomials two ways: subset expansion and Möbius inversion
//! over the lattice of flats.

use gainsign::arrangement::{chromatic_polynomials, chromatic_polynomials_by_flats};
use gainsign::gain::GainSignedGraph;
use gainsign::group::Integers;
use gainsign::matroid::Budget;
use gainsign::signed::Sign;

fn main() {
    let mut u = GainSignedGraph::new(Integers, 3);
    u.add_link(0, 1, Sign::Plus, 1.into()).unwrap();
    u.add_link(1, 2, Sign::Minus, 0.into()).unwrap();
    u.add_link(0, 2, Sign::Plus, 2.into()).unwrap();
    u.add_half(0, 0.into()).unwrap();
    u.add_link(2, 2, Sign::Minus, 1.into()).unwrap();

    let budget = Budget::default();
    let a = chromatic_polynomials(&u, &budget).unwrap();
    let b = chromatic_polynomials_by_flats(&u, &budget).unwrap();
    println!("χ   = {}", a.chi);
    println!("χ^b = {}", a.chi_balanced);
    println!("χ∞  = {}", a.chi_infinity);
    assert_eq!(a, b);
    println!("both paths agree");
}
