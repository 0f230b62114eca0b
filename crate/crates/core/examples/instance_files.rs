//! Reading and writing instance files.

use gainsign::arrangement::{generate_family, Family, FamilySpec};
use gainsign::instance::{AnyGraph, InstanceFile};
use gainsign::matroid::rank;
use gainsign::with_graph;

fn main() {
    let u = generate_family(&FamilySpec::new(Family::LinialThreshold, 2)).unwrap();
    let text = InstanceFile::from_graph(&u).unwrap().to_json();
    print!("{text}");

    let g = AnyGraph::parse(&text).unwrap();
    assert_eq!(g.to_instance().unwrap().to_json(), text);
    let r = with_graph!(&g, u => rank(u, &u.ground()));
    println!("group {}, rank {r}", g.group_name());

    let bad = text.replacen("\"sign\":-1", "\"sign\":1", 1);
    println!("edited file: {}", AnyGraph::parse(&bad).unwrap_err());
}
