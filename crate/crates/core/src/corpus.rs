//! Instance corpora: exhaustive small graphs, seeded random graphs, and
//! directories of instance files.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gain::GainSignedGraph;
use crate::graph::{EdgeKind, VertexId};
use crate::group::{AbelianGroup, Integers};
use crate::instance::AnyGraph;
use crate::signed::Sign;

/// An edge in the reference orientation: (kind code, end, end, negative, gain).
/// Kind codes: 0 link (a < b), 1 loop, 2 half, 3 loose.
type EdgeType = (u8, VertexId, VertexId, bool, i64);

fn edge_types(n: usize, gain_max: i64) -> Vec<EdgeType> {
    let gains = -gain_max..=gain_max;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for neg in [false, true] {
                out.extend(gains.clone().map(|g| (0, a, b, neg, g)));
            }
        }
    }
    for a in 0..n {
        for neg in [false, true] {
            out.extend(gains.clone().map(|g| (1, a, a, neg, g)));
        }
        out.extend(gains.clone().map(|g| (2, a, a, true, g)));
    }
    out.extend(gains.map(|g| (3, 0, 0, false, g)));
    out
}

/// Relabel vertices. Swapping the ends of a positive link or loop reverses
/// its direction, which negates the gain; negative edges are symmetric.
fn relabel(t: EdgeType, p: &[VertexId]) -> EdgeType {
    let (k, a, b, neg, g) = t;
    match k {
        0 => {
            let (x, y) = (p[a], p[b]);
            match (x < y, neg) {
                (true, _) => (0, x, y, neg, g),
                (false, true) => (0, y, x, neg, g),
                (false, false) => (0, y, x, neg, -g),
            }
        }
        3 => t,
        _ => (k, p[a], p[a], neg, g),
    }
}

fn permutations(n: usize) -> Vec<Vec<VertexId>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn realize(n: usize, types: &[EdgeType]) -> GainSignedGraph<Integers> {
    let mut u = GainSignedGraph::new(Integers, n);
    for &(k, a, b, neg, g) in types {
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        match k {
            0 | 1 => u.add_link(a, b, sign, g.into()),
            2 => u.add_half(a, g.into()),
            _ => u.add_loose(g.into()),
        }
        .expect("corpus edges are valid");
    }
    u
}

/// Every gain signed graph with 1 ≤ n ≤ `n_max` vertices, at most `m_max`
/// edges of any kind, both signs and integer gains in [−gain_max, gain_max],
/// one per class under vertex relabeling. Edges are in reference orientation.
pub fn exhaustive(n_max: usize, m_max: usize, gain_max: i64) -> Vec<GainSignedGraph<Integers>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let types = edge_types(n, gain_max);
        let perms = permutations(n);
        let canonical = |chosen: &[EdgeType]| {
            perms.iter().all(|p| {
                let mut q: Vec<EdgeType> = chosen.iter().map(|&t| relabel(t, p)).collect();
                q.sort_unstable();
                q.as_slice() >= chosen
            })
        };
        // Nondecreasing index sequences give sorted multisets.
        let mut stack: Vec<usize> = Vec::new();
        loop {
            let chosen: Vec<EdgeType> = stack.iter().map(|&i| types[i]).collect();
            if canonical(&chosen) {
                out.push(realize(n, &chosen));
            }
            if stack.len() < m_max {
                stack.push(stack.last().copied().unwrap_or(0));
                continue;
            }
            while let Some(top) = stack.pop() {
                if top + 1 < types.len() {
                    stack.push(top + 1);
                    break;
                }
            }
            if stack.is_empty() {
                break;
            }
        }
    }
    out
}

/// A random instance: 1..=n_max vertices, 0..=m_max edges, random end signs,
/// gains drawn from the integers in [−gain_max, gain_max].
pub fn random_instance<G: AbelianGroup, R: Rng>(
    rng: &mut R,
    group: &G,
    n_max: usize,
    m_max: usize,
    gain_max: i64,
) -> GainSignedGraph<G> {
    let n = rng.gen_range(1..=n_max);
    let m = rng.gen_range(0..=m_max);
    let mut u = GainSignedGraph::new(group.clone(), n);
    for _ in 0..m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let kind = match rng.gen_range(0..20) {
            0..=11 if a != b => EdgeKind::Link(a, b),
            0..=13 => EdgeKind::Loop(a),
            14..=17 => EdgeKind::Half(a),
            _ => EdgeKind::Loose,
        };
        let sign = match kind {
            EdgeKind::Half(_) => Sign::Minus,
            EdgeKind::Loose => Sign::Plus,
            _ if rng.gen_bool(0.5) => Sign::Minus,
            _ => Sign::Plus,
        };
        let t0 = if rng.gen_bool(0.5) { Sign::Minus } else { Sign::Plus };
        let gain = group.from_int(rng.gen_range(-gain_max..=gain_max));
        u.add_edge(kind, sign, [t0, -(sign * t0)], gain).expect("random edges are valid");
    }
    u
}

/// A random connected simple graph on 2..=n_max vertices: a random spanning
/// tree plus random extra links. Every link is positive with gain 0 and a
/// random direction, so it doubles as a digraph.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n_max: usize) -> GainSignedGraph<Integers> {
    let n = rng.gen_range(2..=n_max.max(2));
    let mut pairs = BTreeSet::new();
    for v in 1..n {
        let w = rng.gen_range(0..v);
        pairs.insert((w, v));
    }
    let density: f64 = rng.gen_range(0.0..0.6);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                pairs.insert((a, b));
            }
        }
    }
    let mut u = GainSignedGraph::new(Integers, n);
    for (a, b) in pairs {
        let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        u.add_link(a, b, Sign::Plus, 0.into()).expect("tree links are valid");
    }
    u
}

/// Every `*.json` instance in a directory, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<(String, AnyGraph)>> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", dir.display()));
    let mut names: Vec<String> = fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|entry| entry.ok())
        .map(|entry| entry.file_name().to_string_lossy().into_owned())
        .filter(|name| name.ends_with(".json"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let text = fs::read_to_string(dir.join(&name)).map_err(io)?;
            let g = AnyGraph::parse(&text).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
            Ok((name, g))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::graph::components;
    use crate::instance::InstanceFile;

    #[test]
    fn tiny_exhaustive_counts() {
        // n = 1, one edge: 2 loops + half + loose, times 3 gains; plus the edgeless graph.
        assert_eq!(exhaustive(1, 1, 1).len(), 1 + 12);
        // n = 2, gain 0 only, one edge: links ±, loops ± and halves up to relabeling, loose.
        let two: Vec<_> = exhaustive(2, 1, 0).into_iter().filter(|u| u.n() == 2).collect();
        assert_eq!(two.len(), 1 + 2 + 2 + 1 + 1);
    }

    #[test]
    fn relabeling_is_an_isomorphism() {
        // A positive link 1 -> 0 with gain 1 equals 0 -> 1 with gain -1.
        assert_eq!(relabel((0, 0, 1, false, 1), &[1, 0]), (0, 0, 1, false, -1));
        assert_eq!(relabel((0, 0, 1, true, 1), &[1, 0]), (0, 0, 1, true, 1));
        assert_eq!(permutations(3).len(), 6);
    }

    #[test]
    fn exhaustive_is_deduplicated() {
        let all = exhaustive(2, 2, 1);
        let texts: BTreeSet<String> = all.iter().map(|u| InstanceFile::from_graph(u).unwrap().to_json()).collect();
        assert_eq!(texts.len(), all.len());
    }

    #[test]
    fn random_graphs_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let u = random_connected_graph(&mut rng, 7);
            assert_eq!(components(u.graph(), &u.ground()).parts.len(), 1);
            let v = random_instance(&mut rng, &Integers, 4, 6, 2);
            assert!(v.n() <= 4 && v.m() <= 6);
        }
    }
}
