//! Shared proptest strategies for unit tests.

use num_bigint::BigInt;
use proptest::prelude::*;

use crate::edge_set::EdgeSet;
use crate::gain::GainSignedGraph;
use crate::graph::EdgeKind;
use crate::group::{AbelianGroup, Integers, IntegersMod};
use crate::signed::{Sign, SignedGraph};

pub fn int(k: i64) -> BigInt {
    BigInt::from(k)
}

pub fn all_masks(m: usize) -> impl Iterator<Item = EdgeSet> {
    assert!(m < 63);
    (0u64..1 << m).map(EdgeSet::from_mask)
}

/// (kind selector, endpoint, endpoint, negative?, flip τ?, gain)
type RawEdge = (u8, usize, usize, bool, bool, i64);

fn raw_edges(n_max: usize, m_max: usize, g: i64) -> impl Strategy<Value = (usize, Vec<RawEdge>)> {
    (1..=n_max, proptest::collection::vec((0u8..10, 0..n_max, 0..n_max, any::<bool>(), any::<bool>(), -g..=g), 0..=m_max))
}

fn build<G: AbelianGroup>(group: G, n: usize, raw: &[RawEdge], gain: impl Fn(&G, i64) -> G::Elem) -> GainSignedGraph<G> {
    let mut u = GainSignedGraph::new(group.clone(), n);
    for &(k, a, b, neg, flip, x) in raw {
        let (a, b) = (a % n, b % n);
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        let t0 = if flip { Sign::Minus } else { Sign::Plus };
        let kind = match k {
            0..=5 if a != b => EdgeKind::Link(a, b),
            0..=6 => EdgeKind::Loop(a),
            7 | 8 => EdgeKind::Half(a),
            _ => EdgeKind::Loose,
        };
        let sign = match kind {
            EdgeKind::Half(_) => Sign::Minus,
            EdgeKind::Loose => Sign::Plus,
            _ => sign,
        };
        u.add_edge(kind, sign, [t0, -(sign * t0)], gain(&group, x)).unwrap();
    }
    u
}

pub fn gain_graph_strategy(n_max: usize, m_max: usize, g: i64) -> impl Strategy<Value = GainSignedGraph<Integers>> {
    raw_edges(n_max, m_max, g).prop_map(|(n, raw)| build(Integers, n, &raw, |_, x| int(x)))
}

pub fn zmod_graph_strategy(n_max: usize, m_max: usize, modulus: u64) -> impl Strategy<Value = GainSignedGraph<IntegersMod>> {
    raw_edges(n_max, m_max, modulus as i64).prop_map(move |(n, raw)| {
        let group = IntegersMod::new(modulus).unwrap();
        build(group, n, &raw, |g, x| g.from_int(x))
    })
}

pub fn signed_graph_strategy(n_max: usize, m_max: usize) -> impl Strategy<Value = SignedGraph> {
    raw_edges(n_max, m_max, 0).prop_map(|(n, raw)| build(Integers, n, &raw, |_, x| int(x)).signed().clone())
}

/// Gains of order 2 break the rank function: this graph over ℤ/4 has
/// S, e, f with r(S) = r(S+e) = r(S+f) < r(S+e+f).
pub fn zmod4_counterexample() -> GainSignedGraph<IntegersMod> {
    let mut u = GainSignedGraph::new(IntegersMod::new(4).unwrap(), 2);
    u.add_edge(EdgeKind::Loop(1), Sign::Minus, [Sign::Plus, Sign::Plus], 0).unwrap();
    u.add_edge(EdgeKind::Link(0, 1), Sign::Plus, [Sign::Plus, Sign::Minus], 0).unwrap();
    u.add_half(0, 0).unwrap();
    u.add_edge(EdgeKind::Link(0, 1), Sign::Plus, [Sign::Plus, Sign::Minus], 2).unwrap();
    u
}
