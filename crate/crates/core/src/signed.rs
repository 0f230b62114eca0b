//! Signs, orientations, balance and the frame matroid of a signed graph.

use std::collections::VecDeque;
use std::fmt;
use std::ops::{Mul, Neg};

use crate::circuit::SignCircuit;
use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{components, spanning_forest, Components, EdgeId, EdgeKind, Graph, VertexId, Walk};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_plus() { "+" } else { "-" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    graph: Graph,
    signs: Vec<Sign>,
}

impl SignedGraph {
    pub fn new(n: usize) -> Self {
        SignedGraph { graph: Graph::new(n), signs: Vec::new() }
    }

    /// Half edges must be negative and loose edges positive.
    pub fn add_edge(&mut self, kind: EdgeKind, sign: Sign) -> Result<EdgeId> {
        let id = self.graph.m();
        match (kind, sign) {
            (EdgeKind::Half(_), Sign::Plus) => {
                return Err(Error::InvalidEdge { edge: id, reason: "half edges are negative".into() })
            }
            (EdgeKind::Loose, Sign::Minus) => {
                return Err(Error::InvalidEdge { edge: id, reason: "loose edges are positive".into() })
            }
            _ => {}
        }
        self.graph.add_edge(kind)?;
        self.signs.push(sign);
        Ok(id)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn kind(&self, e: EdgeId) -> EdgeKind {
        self.graph.kind(e)
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.signs[e]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Product of the edge signs in `s`.
    pub fn sign_of_set(&self, s: &EdgeSet) -> Sign {
        s.iter().fold(Sign::Plus, |acc, e| acc * self.signs[e])
    }
}

/// Per-end values τ(v,e), indexed by edge and end slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    tau: Vec<[Sign; 2]>,
}

impl Orientation {
    /// Positive edges point from slot 0 to slot 1, negative links and loops
    /// are extraverted, half edges point away from their vertex.
    pub fn reference(sg: &SignedGraph) -> Self {
        let tau = (0..sg.m())
            .map(|e| match (sg.kind(e), sg.sign(e)) {
                (EdgeKind::Link(..) | EdgeKind::Loop(_), Sign::Plus) => [Sign::Minus, Sign::Plus],
                _ => [Sign::Plus, Sign::Plus],
            })
            .collect();
        Orientation { tau }
    }

    pub fn from_values(tau: Vec<[Sign; 2]>) -> Self {
        Orientation { tau }
    }

    pub fn tau(&self, e: EdgeId, slot: u8) -> Sign {
        self.tau[e][slot as usize]
    }

    pub fn values(&self, e: EdgeId) -> [Sign; 2] {
        self.tau[e]
    }

    pub(crate) fn set(&mut self, e: EdgeId, values: [Sign; 2]) {
        self.tau[e] = values;
    }

    pub(crate) fn push(&mut self, values: [Sign; 2]) {
        self.tau.push(values);
    }

    /// Checks τ(v,e)τ(w,e) = −σ(e) on links and loops.
    pub fn validate(&self, sg: &SignedGraph) -> Result<()> {
        if self.tau.len() != sg.m() {
            return Err(Error::Invalid("orientation length differs from edge count".into()));
        }
        for e in 0..sg.m() {
            let k = sg.kind(e);
            if (k.is_link() || k.is_loop()) && self.tau[e][0] * self.tau[e][1] != -sg.sign(e) {
                return Err(Error::InvalidEdge { edge: e, reason: "end signs must multiply to minus the edge sign".into() });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignSwitcher(pub Vec<Sign>);

impl SignSwitcher {
    pub fn identity(n: usize) -> Self {
        SignSwitcher(vec![Sign::Plus; n])
    }

    pub fn at(&self, v: VertexId) -> Sign {
        self.0[v]
    }
}

pub fn sign_of_walk(sg: &SignedGraph, w: &Walk) -> Result<Sign> {
    w.validate(sg.graph())?;
    Ok(w.edges().into_iter().fold(Sign::Plus, |acc, e| acc * sg.sign(e)))
}

pub fn switch_signs(sg: &SignedGraph, or: &Orientation, zeta: &SignSwitcher) -> (SignedGraph, Orientation) {
    let mut signs = sg.signs.clone();
    let mut tau = or.tau.clone();
    for e in 0..sg.m() {
        let kind = sg.kind(e);
        for end in kind.ends() {
            tau[e][end.slot as usize] = zeta.at(end.vertex) * tau[e][end.slot as usize];
        }
        if let Some((u, v)) = kind.endpoints() {
            signs[e] = zeta.at(u) * signs[e] * zeta.at(v);
        }
    }
    (SignedGraph { graph: sg.graph.clone(), signs }, Orientation { tau })
}

/// Balance structure of the spanning subgraph `(V, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Balance {
    pub components: Components,
    /// Whether each component (indexed like `components.parts`) is balanced.
    pub balanced: Vec<bool>,
    /// A switching making the spanning forest positive; on a balanced
    /// component it makes every edge of `s` positive.
    pub potential: SignSwitcher,
    /// The spanning forest of links used to build `potential`.
    pub forest: EdgeSet,
}

impl Balance {
    pub fn count(&self) -> usize {
        self.balanced.iter().filter(|&&b| b).count()
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.components.label[v]
    }

    pub fn vertex_balanced(&self, v: VertexId) -> bool {
        self.balanced[self.components.label[v]]
    }

    /// π_b(S): vertex sets of the balanced components.
    pub fn pib(&self) -> Vec<Vec<VertexId>> {
        self.components
            .parts
            .iter()
            .zip(&self.balanced)
            .filter(|(_, &b)| b)
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// U_Σ(S): vertices of unbalanced components.
    pub fn unbalanced_vertices(&self) -> Vec<VertexId> {
        (0..self.components.label.len()).filter(|&v| !self.vertex_balanced(v)).collect()
    }

    /// Sign of a link or loop after switching by `potential`.
    pub fn switched_sign(&self, sg: &SignedGraph, e: EdgeId) -> Option<Sign> {
        let (u, v) = sg.kind(e).endpoints()?;
        Some(self.potential.at(u) * sg.sign(e) * self.potential.at(v))
    }
}

pub(crate) fn forest_adjacency(g: &Graph, forest: &EdgeSet) -> Vec<Vec<(VertexId, EdgeId)>> {
    let mut adj = vec![Vec::new(); g.n()];
    for e in forest.iter() {
        if let EdgeKind::Link(u, v) = g.kind(e) {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    adj
}

pub fn balanced_components(sg: &SignedGraph, s: &EdgeSet) -> Balance {
    let g = sg.graph();
    let comps = components(g, s);
    let forest = spanning_forest(g, s);
    let adj = forest_adjacency(g, &forest);
    let mut zeta = vec![Sign::Plus; g.n()];
    let mut seen = vec![false; g.n()];
    for part in &comps.parts {
        let root = part[0];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    zeta[y] = zeta[x] * sg.sign(e);
                    queue.push_back(y);
                }
            }
        }
    }
    let mut balanced = vec![true; comps.parts.len()];
    for e in s.iter() {
        match sg.kind(e) {
            EdgeKind::Half(v) => balanced[comps.label[v]] = false,
            EdgeKind::Link(u, v) if zeta[u] * sg.sign(e) * zeta[v] == Sign::Minus => balanced[comps.label[u]] = false,
            EdgeKind::Loop(v) if sg.sign(e) == Sign::Minus => balanced[comps.label[v]] = false,
            _ => {}
        }
    }
    Balance { components: comps, balanced, potential: SignSwitcher(zeta), forest }
}

pub fn frame_rank(sg: &SignedGraph, s: &EdgeSet) -> usize {
    sg.n() - balanced_components(sg, s).count()
}

/// A frame-matroid basis of `s`: the spanning forest plus, in each unbalanced
/// component, the lowest-id edge closing a negative figure.
pub fn frame_basis(sg: &SignedGraph, s: &EdgeSet) -> EdgeSet {
    let bal = balanced_components(sg, s);
    let mut basis = bal.forest.clone();
    let mut closed = vec![false; bal.balanced.len()];
    for e in s.difference(&bal.forest).iter() {
        let (v, frustrating) = match sg.kind(e) {
            EdgeKind::Half(v) => (v, true),
            EdgeKind::Link(u, _) | EdgeKind::Loop(u) => (u, bal.switched_sign(sg, e) == Some(Sign::Minus)),
            EdgeKind::Loose => continue,
        };
        let c = bal.component_of(v);
        if frustrating && !closed[c] {
            closed[c] = true;
            basis.insert(e);
        }
    }
    basis
}

/// [E:U] ∪ [E(ζ):π_b] ∪ E⁰ for the balance structure of `s`.
pub fn frame_closure(sg: &SignedGraph, s: &EdgeSet) -> EdgeSet {
    let bal = balanced_components(sg, s);
    (0..sg.m())
        .filter(|&e| match sg.kind(e) {
            EdgeKind::Loose => true,
            EdgeKind::Half(v) => !bal.vertex_balanced(v),
            EdgeKind::Link(u, v) | EdgeKind::Loop(u @ v) => {
                match (bal.vertex_balanced(u), bal.vertex_balanced(v)) {
                    (false, false) => true,
                    (true, true) => {
                        bal.component_of(u) == bal.component_of(v) && bal.switched_sign(sg, e) == Some(Sign::Plus)
                    }
                    _ => false,
                }
            }
        })
        .collect()
}

/// Edges of the forest path between vertex sets `from` and `to`, together
/// with its two endpoints. Empty when the sets meet.
pub(crate) fn forest_path(
    adj: &[Vec<(VertexId, EdgeId)>],
    from: &[VertexId],
    to: &[VertexId],
) -> Option<(Vec<EdgeId>, VertexId, VertexId)> {
    if let Some(&v) = from.iter().find(|v| to.contains(v)) {
        return Some((Vec::new(), v, v));
    }
    let mut prev: Vec<Option<(VertexId, EdgeId)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::new();
    for &v in from {
        seen[v] = true;
        queue.push_back(v);
    }
    while let Some(x) = queue.pop_front() {
        if to.contains(&x) {
            let mut edges = Vec::new();
            let mut y = x;
            while let Some((p, e)) = prev[y] {
                edges.push(e);
                y = p;
            }
            edges.reverse();
            return Some((edges, y, x));
        }
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    None
}

/// The unique sign circuit in `b ∪ {e}` for a frame-independent `b`, if any.
pub fn fundamental_sign_circuit(sg: &SignedGraph, b: &EdgeSet, e: EdgeId) -> Result<Option<SignCircuit>> {
    if b.contains(e) {
        return Err(Error::EdgeInBasis(e));
    }
    sg.graph().check_edges(&b.with(e))?;
    let Some(edges) = fundamental_circuit_edges(sg, b, e) else {
        return Ok(None);
    };
    let circuit = SignCircuit::from_edges(sg, &edges)
        .unwrap_or_else(|| panic!("fundamental circuit {edges} of edge {e} is not a sign circuit"));
    Ok(Some(circuit))
}

struct Figure {
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
}

fn fundamental_circuit_edges(sg: &SignedGraph, b: &EdgeSet, e: EdgeId) -> Option<EdgeSet> {
    let g = sg.graph();
    if g.kind(e).is_loose() {
        return Some(EdgeSet::from_iter([e]));
    }
    let bal = balanced_components(sg, b);
    let adj = forest_adjacency(g, &bal.forest);
    let tree_path = |u: VertexId, v: VertexId| forest_path(&adj, &[u], &[v]).map(|p| p.0).unwrap_or_default();
    let cycle_of = |x: EdgeId| -> Figure {
        match g.kind(x) {
            EdgeKind::Half(v) | EdgeKind::Loop(v) => Figure { edges: vec![x], vertices: vec![v] },
            EdgeKind::Link(u, v) => {
                let mut edges = tree_path(u, v);
                edges.push(x);
                let mut vertices: Vec<VertexId> = edges.iter().flat_map(|&f| g.kind(f).ends()).map(|x| x.vertex).collect();
                vertices.sort_unstable();
                vertices.dedup();
                Figure { edges, vertices }
            }
            EdgeKind::Loose => unreachable!(),
        }
    };
    let mut figure: Vec<Option<Figure>> = (0..bal.balanced.len()).map(|_| None).collect();
    for x in b.difference(&bal.forest).iter() {
        if let Some(v) = g.kind(x).ends().first().map(|end| end.vertex) {
            figure[bal.component_of(v)] = Some(cycle_of(x));
        }
    }
    let join = |a: &Figure, b: &Figure, extra: &[EdgeId]| -> EdgeSet {
        let path = forest_path(&adj, &a.vertices, &b.vertices).map(|p| p.0).unwrap_or_default();
        a.edges.iter().chain(&b.edges).chain(&path).chain(extra).collect()
    };
    match g.kind(e) {
        EdgeKind::Half(v) => {
            let f = figure[bal.component_of(v)].as_ref()?;
            Some(join(f, &Figure { edges: vec![e], vertices: vec![v] }, &[]))
        }
        EdgeKind::Link(u, v) | EdgeKind::Loop(u @ v) => {
            let (cu, cv) = (bal.component_of(u), bal.component_of(v));
            if cu != cv {
                let fu = figure[cu].as_ref()?;
                let fv = figure[cv].as_ref()?;
                let to_u = forest_path(&adj, &fu.vertices, &[u])?.0;
                let to_v = forest_path(&adj, &[v], &fv.vertices)?.0;
                return Some(fu.edges.iter().chain(&fv.edges).chain(&to_u).chain(&to_v).chain([&e]).collect());
            }
            let ce = cycle_of(e);
            if bal.switched_sign(sg, e) == Some(Sign::Plus) {
                return Some(ce.edges.into_iter().collect());
            }
            let f = figure[cu].as_ref()?;
            let fe: EdgeSet = f.edges.iter().collect();
            let cs: EdgeSet = ce.edges.iter().collect();
            if !fe.is_disjoint(&cs) {
                Some(fe.symmetric_difference(&cs))
            } else {
                Some(join(f, &ce, &[]))
            }
        }
        EdgeKind::Loose => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{all_masks, signed_graph_strategy};
    use proptest::prelude::*;

    fn sg(n: usize, edges: &[(EdgeKind, Sign)]) -> SignedGraph {
        let mut g = SignedGraph::new(n);
        for &(k, s) in edges {
            g.add_edge(k, s).unwrap();
        }
        g
    }

    use EdgeKind::*;
    use Sign::*;

    fn negative_triangle() -> SignedGraph {
        sg(3, &[(Link(0, 1), Minus), (Link(1, 2), Minus), (Link(0, 2), Minus)])
    }

    #[test]
    fn kind_sign_constraints() {
        let mut g = SignedGraph::new(1);
        assert!(g.add_edge(Half(0), Plus).is_err());
        assert!(g.add_edge(Loose, Minus).is_err());
    }

    #[test]
    fn walk_signs() {
        let g = sg(2, &[(Half(0), Minus), (Link(0, 1), Plus), (Half(1), Minus), (Link(0, 1), Minus)]);
        assert_eq!(sign_of_walk(&g, &Walk::trivial(0)).unwrap(), Plus);
        let w = Walk::from_edges(g.graph(), 0, &[1]).unwrap();
        let u = w.with_initial_half(g.graph(), 0).unwrap().with_terminal_half(g.graph(), 2).unwrap();
        assert_eq!(sign_of_walk(&g, &u).unwrap(), Plus);
        let neg = sg(3, &[(Link(0, 1), Minus), (Link(1, 2), Minus)]);
        assert_eq!(sign_of_walk(&neg, &Walk::from_edges(neg.graph(), 0, &[0, 1]).unwrap()).unwrap(), Plus);
    }

    #[test]
    fn switching_examples() {
        let g = sg(2, &[(Link(0, 1), Minus)]);
        let or = Orientation::reference(&g);
        let (same, or2) = switch_signs(&g, &or, &SignSwitcher::identity(2));
        assert_eq!((&same, &or2), (&g, &or));
        let (h, or3) = switch_signs(&g, &or, &SignSwitcher(vec![Minus, Plus]));
        assert_eq!(h.sign(0), Plus);
        or3.validate(&h).unwrap();
    }

    #[test]
    fn balance_examples() {
        let tree = sg(4, &[(Link(0, 1), Plus), (Link(1, 2), Plus), (Link(1, 3), Plus)]);
        assert_eq!(balanced_components(&tree, &tree.graph().edge_ids()).count(), 1);
        let half = sg(1, &[(Half(0), Minus)]);
        let b = balanced_components(&half, &half.graph().edge_ids());
        assert_eq!((b.count(), b.unbalanced_vertices()), (0, vec![0]));
        let t = negative_triangle();
        assert_eq!(balanced_components(&t, &t.graph().edge_ids()).count(), 0);
    }

    #[test]
    fn frame_rank_examples() {
        let t = negative_triangle();
        assert_eq!(frame_rank(&t, &EdgeSet::new()), 0);
        assert_eq!(frame_rank(&t, &t.graph().edge_ids()), 3);
        let tree = sg(4, &[(Link(0, 1), Plus), (Link(1, 2), Minus), (Link(1, 3), Plus)]);
        assert_eq!(frame_rank(&tree, &tree.graph().edge_ids()), 3);
    }

    #[test]
    fn frame_basis_examples() {
        let t = negative_triangle();
        assert_eq!(frame_basis(&t, &t.graph().edge_ids()).len(), 3);
        let half = sg(1, &[(Half(0), Minus)]);
        assert_eq!(frame_basis(&half, &half.graph().edge_ids()).to_vec(), vec![0]);
        let bal = sg(3, &[(Link(0, 1), Plus), (Link(1, 2), Minus), (Link(0, 2), Minus)]);
        assert_eq!(frame_basis(&bal, &bal.graph().edge_ids()).to_vec(), vec![0, 1]);
    }

    #[test]
    fn fundamental_circuit_examples() {
        let g = sg(3, &[(Link(0, 1), Plus), (Link(1, 2), Plus), (Link(0, 2), Plus), (Loose, Plus)]);
        let b = EdgeSet::from_iter([0, 1]);
        let c = fundamental_sign_circuit(&g, &b, 2).unwrap().unwrap();
        assert_eq!(c.edges().to_vec(), vec![0, 1, 2]);
        assert!(matches!(c, SignCircuit::PositiveCircle { .. }));
        assert!(matches!(fundamental_sign_circuit(&g, &b, 3).unwrap(), Some(SignCircuit::LooseEdge(3))));
        assert_eq!(fundamental_sign_circuit(&g, &b, 0), Err(Error::EdgeInBasis(0)));

        let h = sg(1, &[(Half(0), Minus), (Half(0), Minus)]);
        let c = fundamental_sign_circuit(&h, &EdgeSet::from_iter([0]), 1).unwrap().unwrap();
        match c {
            SignCircuit::Handcuff { path, .. } => assert!(path.is_empty()),
            other => panic!("expected a tight handcuff, got {other:?}"),
        }
    }

    #[test]
    fn frame_closure_examples() {
        let g = sg(3, &[(Link(0, 1), Plus), (Loose, Plus), (Link(1, 2), Plus)]);
        assert_eq!(frame_closure(&g, &EdgeSet::new()).to_vec(), vec![1]);
        let mut k3 = SignedGraph::new(3);
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            k3.add_edge(Link(u, v), Minus).unwrap();
            k3.add_edge(Link(u, v), Plus).unwrap();
        }
        let neg: EdgeSet = [0, 2, 4].iter().collect();
        assert_eq!(frame_closure(&k3, &neg), k3.graph().edge_ids());
    }

    fn rank_closure(g: &SignedGraph, s: &EdgeSet) -> EdgeSet {
        let r = frame_rank(g, s);
        (0..g.m()).filter(|&e| frame_rank(g, &s.with(e)) == r).collect()
    }

    fn is_frame_circuit(g: &SignedGraph, c: &EdgeSet) -> bool {
        frame_rank(g, c) < c.len() && c.iter().all(|e| frame_rank(g, &c.without(e)) == c.len() - 1)
    }

    proptest! {
        #[test]
        fn orientation_reference_is_valid(g in signed_graph_strategy(4, 6)) {
            Orientation::reference(&g).validate(&g).unwrap();
        }

        #[test]
        fn closure_matches_rank_oracle(g in signed_graph_strategy(4, 6)) {
            for s in all_masks(g.m()) {
                prop_assert_eq!(frame_closure(&g, &s), rank_closure(&g, &s));
            }
        }

        #[test]
        fn frame_rank_axioms(g in signed_graph_strategy(4, 6)) {
            let r = crate::matroid::check_rank_function(g.m(), |s| frame_rank(&g, s), crate::matroid::AxiomMode::Exhaustive);
            prop_assert!(r.violation.is_none(), "{:?}", r.violation);
        }

        #[test]
        fn basis_is_a_basis(g in signed_graph_strategy(4, 6)) {
            let all = g.graph().edge_ids();
            let b = frame_basis(&g, &all);
            prop_assert_eq!(frame_rank(&g, &b), b.len());
            prop_assert_eq!(b.len(), frame_rank(&g, &all));
        }

        #[test]
        fn switching_preserves_circle_signs(g in signed_graph_strategy(4, 6), z in proptest::collection::vec(any::<bool>(), 4)) {
            let zeta = SignSwitcher(z.iter().take(g.n()).map(|&b| if b { Minus } else { Plus }).collect());
            let (h, or) = switch_signs(&g, &Orientation::reference(&g), &zeta);
            or.validate(&h).unwrap();
            for s in all_masks(g.m()) {
                prop_assert_eq!(frame_rank(&g, &s), frame_rank(&h, &s));
                if let Some(SignCircuit::PositiveCircle { .. }) = SignCircuit::from_edges(&g, &s) {
                    prop_assert_eq!(h.sign_of_set(&s), Plus);
                }
            }
        }

        #[test]
        fn recognized_circuits_are_minimal_dependent(g in signed_graph_strategy(4, 6)) {
            for s in all_masks(g.m()) {
                prop_assert_eq!(SignCircuit::from_edges(&g, &s).is_some(), is_frame_circuit(&g, &s), "{}", s);
            }
        }

        #[test]
        fn fundamental_circuits_are_unique_circuits(g in signed_graph_strategy(4, 6)) {
            let b = frame_basis(&g, &g.graph().edge_ids());
            for e in 0..g.m() {
                if b.contains(e) {
                    continue;
                }
                let c = fundamental_sign_circuit(&g, &b, e).unwrap().expect("basis spans");
                let be = b.with(e);
                let expected: EdgeSet = be.iter().filter(|&f| frame_rank(&g, &be.without(f)) == b.len()).collect();
                prop_assert_eq!(c.edges(), expected);
            }
        }
    }
}
