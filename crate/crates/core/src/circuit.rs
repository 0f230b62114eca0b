//! Sign circuits: positive circles, loose edges and handcuffs.

use crate::edge_set::EdgeSet;
use crate::error::Result;
use crate::graph::{spanning_forest, EdgeId, Graph, VertexId, Walk};
use crate::signed::{forest_adjacency, forest_path, Sign, SignedGraph};

/// A negative circle with a root vertex, or a half edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NegativeFigure {
    Half { edge: EdgeId, vertex: VertexId },
    Circle { edges: Vec<EdgeId>, root: VertexId },
}

impl NegativeFigure {
    pub fn root(&self) -> VertexId {
        match self {
            NegativeFigure::Half { vertex, .. } => *vertex,
            NegativeFigure::Circle { root, .. } => *root,
        }
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        match self {
            NegativeFigure::Half { edge, .. } => vec![*edge],
            NegativeFigure::Circle { edges, .. } => edges.clone(),
        }
    }

    fn min_edge(&self) -> EdgeId {
        self.edges().into_iter().min().unwrap_or(EdgeId::MAX)
    }
}

/// A circuit of the frame matroid.
///
/// Handcuff figures are ordered so that `fig1` holds the smaller edge id; the
/// path runs from the root of `fig1` to the root of `fig2`, and the roots are
/// the path's endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SignCircuit {
    PositiveCircle { edges: Vec<EdgeId> },
    LooseEdge(EdgeId),
    Handcuff { fig1: NegativeFigure, fig2: NegativeFigure, path: Walk },
}

fn vertices_of(g: &Graph, edges: &[EdgeId]) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = edges.iter().flat_map(|&e| g.kind(e).ends()).map(|x| x.vertex).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// Traverse a circle from `root`, leaving along its lowest-id edge at `root`.
pub fn circle_walk(g: &Graph, edges: &[EdgeId], root: VertexId) -> Result<Walk> {
    let mut left: Vec<EdgeId> = edges.to_vec();
    left.sort_unstable();
    let mut w = Walk::trivial(root);
    while !left.is_empty() {
        let at = w.end();
        let i = left
            .iter()
            .position(|&e| g.kind(e).ends().iter().any(|x| x.vertex == at))
            .ok_or_else(|| crate::error::Error::MalformedWalk("edges do not form a circle".into()))?;
        w.push(g, left.remove(i))?;
    }
    if w.end() != root {
        return Err(crate::error::Error::MalformedWalk("edges do not form a circle".into()));
    }
    Ok(w)
}

impl SignCircuit {
    pub fn edges(&self) -> EdgeSet {
        match self {
            SignCircuit::PositiveCircle { edges } => edges.iter().collect(),
            SignCircuit::LooseEdge(e) => EdgeSet::from_iter([*e]),
            SignCircuit::Handcuff { fig1, fig2, path } => {
                fig1.edges().into_iter().chain(fig2.edges()).chain(path.edges()).collect()
            }
        }
    }

    /// Recognize `s` as a sign circuit; `None` if it is not one.
    pub fn from_edges(sg: &SignedGraph, s: &EdgeSet) -> Option<SignCircuit> {
        let g = sg.graph();
        let edges = s.to_vec();
        if edges.is_empty() {
            return None;
        }
        if edges.iter().any(|&e| g.kind(e).is_loose()) {
            return match edges.as_slice() {
                [e] => Some(SignCircuit::LooseEdge(*e)),
                _ => None,
            };
        }
        let halves: Vec<EdgeId> = edges.iter().copied().filter(|&e| g.kind(e).is_half()).collect();
        let links: EdgeSet = edges.iter().copied().filter(|&e| !g.kind(e).is_half()).collect();
        let forest = spanning_forest(g, &links);
        let adj = forest_adjacency(g, &forest);
        let chords = links.difference(&forest).to_vec();
        let is_circle = halves.is_empty() && chords.len() == 1;
        if !is_circle && halves.len() + chords.len() != 2 {
            return None;
        }
        let cycle = |x: EdgeId| -> Vec<EdgeId> {
            let (u, v) = g.kind(x).endpoints().expect("chord is a link or loop");
            let mut c = forest_path(&adj, &[u], &[v]).map(|p| p.0).unwrap_or_default();
            c.push(x);
            c.sort_unstable();
            c
        };
        let sign = |c: &[EdgeId]| c.iter().fold(Sign::Plus, |acc, &e| acc * sg.sign(e));

        if is_circle {
            let c = cycle(chords[0]);
            return (c.len() == edges.len() && sign(&c) == Sign::Plus)
                .then_some(SignCircuit::PositiveCircle { edges: c });
        }

        struct Fig {
            edges: Vec<EdgeId>,
            vertices: Vec<VertexId>,
            half: bool,
        }
        let mut figs: Vec<Fig> = halves
            .iter()
            .map(|&h| Fig { edges: vec![h], vertices: vertices_of(g, &[h]), half: true })
            .collect();
        for &x in &chords {
            let c = cycle(x);
            if sign(&c) != Sign::Minus {
                return None;
            }
            figs.push(Fig { vertices: vertices_of(g, &c), edges: c, half: false });
        }
        let (f1, f2) = (&figs[0], &figs[1]);
        if f1.edges.iter().any(|e| f2.edges.contains(e)) {
            return None;
        }
        let shared: Vec<VertexId> = f1.vertices.iter().copied().filter(|v| f2.vertices.contains(v)).collect();
        let used: EdgeSet = f1.edges.iter().chain(&f2.edges).collect();
        let path_edges = links.difference(&used).to_vec();
        let (r1, r2, path) = match shared.as_slice() {
            [v] if path_edges.is_empty() => (*v, *v, Walk::trivial(*v)),
            [] => {
                let (r1, r2, path) = trace_path(g, &path_edges, &f1.vertices, &f2.vertices)?;
                (r1, r2, path)
            }
            _ => return None,
        };
        let make = |f: &Fig, root: VertexId| {
            if f.half {
                NegativeFigure::Half { edge: f.edges[0], vertex: root }
            } else {
                NegativeFigure::Circle { edges: f.edges.clone(), root }
            }
        };
        let (a, b) = (make(f1, r1), make(f2, r2));
        Some(if a.min_edge() <= b.min_edge() {
            SignCircuit::Handcuff { fig1: a, fig2: b, path }
        } else {
            SignCircuit::Handcuff { fig1: b, fig2: a, path: path.reversed() }
        })
    }

    /// The closed walk (or half-to-half ultrawalk) whose gain is the
    /// circuit's gain.
    ///
    /// Positive circles start at their lowest vertex. Handcuffs with a half
    /// edge start with it; two-circle handcuffs start at the root of `fig1`.
    pub fn circuit_walk(&self, g: &Graph) -> Option<Walk> {
        match self {
            SignCircuit::LooseEdge(_) => None,
            SignCircuit::PositiveCircle { edges } => {
                let root = vertices_of(g, edges)[0];
                circle_walk(g, edges, root).ok()
            }
            SignCircuit::Handcuff { fig1, fig2, path } => {
                let (first, second, path) = match (fig1, fig2) {
                    (NegativeFigure::Circle { .. }, NegativeFigure::Half { .. }) => (fig2, fig1, path.reversed()),
                    _ => (fig1, fig2, path.clone()),
                };
                let around = |f: &NegativeFigure| match f {
                    NegativeFigure::Circle { edges, root } => circle_walk(g, edges, *root).ok(),
                    NegativeFigure::Half { vertex, .. } => Some(Walk::trivial(*vertex)),
                };
                let w = match (first, second) {
                    (NegativeFigure::Half { edge: h1, .. }, NegativeFigure::Half { edge: h2, .. }) => {
                        path.with_initial_half(g, *h1).ok()?.with_terminal_half(g, *h2).ok()?
                    }
                    (NegativeFigure::Half { edge: h1, .. }, c) => path
                        .concat(&around(c)?)
                        .ok()?
                        .concat(&path.reversed())
                        .ok()?
                        .with_initial_half(g, *h1)
                        .ok()?
                        .with_terminal_half(g, *h1)
                        .ok()?,
                    (c1, c2) => around(c1)?.concat(&path).ok()?.concat(&around(c2)?).ok()?.concat(&path.reversed()).ok()?,
                };
                Some(w)
            }
        }
    }
}

/// Follow `edges` as a simple path from a vertex of `a` to a vertex of `b`,
/// meeting `a` and `b` only at its ends.
fn trace_path(g: &Graph, edges: &[EdgeId], a: &[VertexId], b: &[VertexId]) -> Option<(VertexId, VertexId, Walk)> {
    if edges.is_empty() {
        return None;
    }
    let touches = |set: &[VertexId], e: EdgeId| g.kind(e).ends().iter().any(|x| set.contains(&x.vertex));
    let starts: Vec<VertexId> = a
        .iter()
        .copied()
        .filter(|&v| edges.iter().any(|&e| g.kind(e).ends().iter().any(|x| x.vertex == v)))
        .collect();
    let [start] = starts.as_slice() else { return None };
    let mut left = edges.to_vec();
    let mut w = Walk::trivial(*start);
    while !left.is_empty() {
        let at = w.end();
        if w.len() > 0 && (a.contains(&at) || b.contains(&at)) {
            return None;
        }
        let next: Vec<usize> = (0..left.len())
            .filter(|&i| g.kind(left[i]).ends().iter().any(|x| x.vertex == at))
            .collect();
        let [i] = next.as_slice() else { return None };
        let e = left.remove(*i);
        if !g.kind(e).is_link() {
            return None;
        }
        w.push(g, e).ok()?;
    }
    let end = w.end();
    if !b.contains(&end) || a.contains(&end) || edges.iter().filter(|&&e| touches(b, e)).count() != 1 {
        return None;
    }
    Some((*start, end, w))
}
