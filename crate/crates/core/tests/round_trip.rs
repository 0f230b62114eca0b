use std::path::PathBuf;

use gainsign::corpus::{exhaustive, load_dir, random_instance};
use gainsign::group::{IntegersMod, Rationals};
use gainsign::instance::{AnyGraph, InstanceFile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn bundled_files_are_canonical() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    for dir in ["corpus", "instances", "corrupted"] {
        for (name, g) in load_dir(&root.join(dir)).unwrap() {
            let text = std::fs::read_to_string(root.join(dir).join(&name)).unwrap();
            assert_eq!(g.to_instance().unwrap().to_json(), text, "{dir}/{name}");
        }
    }
}

#[test]
fn exhaustive_corpus_round_trips() {
    for u in exhaustive(2, 3, 1) {
        let text = InstanceFile::from_graph(&u).unwrap().to_json();
        let back = AnyGraph::parse(&text).unwrap();
        assert_eq!(back, AnyGraph::Z(u));
        assert_eq!(back.to_instance().unwrap().to_json(), text);
    }
}

#[test]
fn other_groups_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let z7 = IntegersMod::new(7).unwrap();
    for _ in 0..100 {
        let u = random_instance(&mut rng, &z7, 4, 6, 10);
        let text = InstanceFile::from_graph(&u).unwrap().to_json();
        assert_eq!(AnyGraph::parse(&text).unwrap(), AnyGraph::Zmod(u));
        let q = random_instance(&mut rng, &Rationals, 4, 6, 5);
        let text = InstanceFile::from_graph(&q).unwrap().to_json();
        assert_eq!(AnyGraph::parse(&text).unwrap(), AnyGraph::Q(q));
    }
}
