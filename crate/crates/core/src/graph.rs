//! Graphs with links, loops, half edges and loose edges, plus walks.

use smallvec::{smallvec, SmallVec};

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Link(VertexId, VertexId),
    Loop(VertexId),
    Half(VertexId),
    Loose,
}

/// One end of an edge. Loop ends are told apart by their slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub vertex: VertexId,
    pub slot: u8,
}

impl EdgeKind {
    pub fn ends(&self) -> SmallVec<[End; 2]> {
        match *self {
            EdgeKind::Link(u, v) => smallvec![End { vertex: u, slot: 0 }, End { vertex: v, slot: 1 }],
            EdgeKind::Loop(v) => smallvec![End { vertex: v, slot: 0 }, End { vertex: v, slot: 1 }],
            EdgeKind::Half(v) => smallvec![End { vertex: v, slot: 0 }],
            EdgeKind::Loose => SmallVec::new(),
        }
    }

    pub fn end(&self, slot: u8) -> Option<End> {
        self.ends().into_iter().find(|x| x.slot == slot)
    }

    /// Endpoints of a link or loop (equal for a loop).
    pub fn endpoints(&self) -> Option<(VertexId, VertexId)> {
        match *self {
            EdgeKind::Link(u, v) => Some((u, v)),
            EdgeKind::Loop(v) => Some((v, v)),
            _ => None,
        }
    }

    pub fn is_link(&self) -> bool {
        matches!(self, EdgeKind::Link(..))
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, EdgeKind::Loop(_))
    }

    pub fn is_half(&self) -> bool {
        matches!(self, EdgeKind::Half(_))
    }

    pub fn is_loose(&self) -> bool {
        matches!(self, EdgeKind::Loose)
    }

    pub fn name(&self) -> &'static str {
        match self {
            EdgeKind::Link(..) => "link",
            EdgeKind::Loop(_) => "loop",
            EdgeKind::Half(_) => "half",
            EdgeKind::Loose => "loose",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    kinds: Vec<EdgeKind>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, kinds: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, e: EdgeId) -> EdgeKind {
        self.kinds[e]
    }

    pub fn kinds(&self) -> &[EdgeKind] {
        &self.kinds
    }

    pub fn edge_ids(&self) -> EdgeSet {
        EdgeSet::full(self.m())
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn add_edge(&mut self, kind: EdgeKind) -> Result<EdgeId> {
        match kind {
            EdgeKind::Link(u, v) => {
                self.check_vertex(u)?;
                self.check_vertex(v)?;
                if u == v {
                    return Err(Error::DegenerateLink(u));
                }
            }
            EdgeKind::Loop(v) | EdgeKind::Half(v) => self.check_vertex(v)?,
            EdgeKind::Loose => {}
        }
        self.kinds.push(kind);
        Ok(self.kinds.len() - 1)
    }

    pub fn check_edges(&self, s: &EdgeSet) -> Result<()> {
        match s.iter().find(|&e| e >= self.m()) {
            Some(e) => Err(Error::EdgeOutOfRange(e)),
            None => Ok(()),
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined. The smaller root wins.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Vertex components of the spanning subgraph `(V, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Component index of every vertex.
    pub label: Vec<usize>,
    /// Vertex sets, ordered by smallest vertex, each sorted.
    pub parts: Vec<Vec<VertexId>>,
    /// Loose edges of `s`; they belong to no vertex component.
    pub loose: Vec<EdgeId>,
}

pub fn components(g: &Graph, s: &EdgeSet) -> Components {
    let mut uf = UnionFind::new(g.n());
    let mut loose = Vec::new();
    for e in s.iter() {
        match g.kind(e) {
            EdgeKind::Link(u, v) => {
                uf.union(u, v);
            }
            EdgeKind::Loose => loose.push(e),
            _ => {}
        }
    }
    let mut label = vec![usize::MAX; g.n()];
    let mut parts: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..g.n() {
        let r = uf.find(v);
        if label[r] == usize::MAX {
            label[r] = parts.len();
            parts.push(Vec::new());
        }
        label[v] = label[r];
        parts[label[v]].push(v);
    }
    Components { label, parts, loose }
}

/// ξ(S) = |S| − n + c(S); every loose edge adds one.
pub fn cyclomatic(g: &Graph, s: &EdgeSet) -> usize {
    let c = components(g, s).parts.len();
    s.len() + c - g.n()
}

/// A maximal acyclic set of links in `s`, chosen greedily by edge id.
pub fn spanning_forest(g: &Graph, s: &EdgeSet) -> EdgeSet {
    let mut uf = UnionFind::new(g.n());
    s.iter()
        .filter(|&e| match g.kind(e) {
            EdgeKind::Link(u, v) => uf.union(u, v),
            _ => false,
        })
        .collect()
}

/// One traversal of an edge, from one end to the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub edge: EdgeId,
    pub from: End,
    pub to: End,
}

impl Step {
    pub fn reversed(self) -> Step {
        Step { edge: self.edge, from: self.to, to: self.from }
    }
}

/// A walk `u0 e1 u1 … el ul`, optionally with an initial and a terminal half
/// edge (an ultrawalk).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    start: VertexId,
    initial: Option<EdgeId>,
    steps: Vec<Step>,
    terminal: Option<EdgeId>,
}

impl Walk {
    pub fn trivial(v: VertexId) -> Self {
        Walk { start: v, initial: None, steps: Vec::new(), terminal: None }
    }

    /// Follow `edges` from `start`; loops are traversed from slot 0 to slot 1.
    pub fn from_edges(g: &Graph, start: VertexId, edges: &[EdgeId]) -> Result<Self> {
        let mut w = Walk::trivial(start);
        for &e in edges {
            w.push(g, e)?;
        }
        Ok(w)
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.steps.last().map_or(self.start, |s| s.to.vertex)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn initial(&self) -> Option<EdgeId> {
        self.initial
    }

    pub fn terminal(&self) -> Option<EdgeId> {
        self.terminal
    }

    /// Number of link and loop steps, not counting half edges.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.initial.is_none() && self.terminal.is_none() && self.start == self.end()
    }

    pub fn is_half_to_half(&self) -> bool {
        self.initial.is_some() && self.terminal.is_some()
    }

    pub fn push(&mut self, g: &Graph, e: EdgeId) -> Result<()> {
        if self.terminal.is_some() {
            return Err(Error::MalformedWalk("step after terminal half edge".into()));
        }
        let at = self.end();
        let step = match g.kinds.get(e) {
            Some(EdgeKind::Link(u, v)) if *u == at => Step {
                edge: e,
                from: End { vertex: *u, slot: 0 },
                to: End { vertex: *v, slot: 1 },
            },
            Some(EdgeKind::Link(u, v)) if *v == at => Step {
                edge: e,
                from: End { vertex: *v, slot: 1 },
                to: End { vertex: *u, slot: 0 },
            },
            Some(EdgeKind::Loop(v)) if *v == at => Step {
                edge: e,
                from: End { vertex: at, slot: 0 },
                to: End { vertex: at, slot: 1 },
            },
            _ => return Err(Error::MalformedWalk(format!("edge {e} cannot be traversed from vertex {at}"))),
        };
        self.steps.push(step);
        Ok(())
    }

    pub fn push_step(&mut self, g: &Graph, step: Step) -> Result<()> {
        if self.terminal.is_some() || step.from.vertex != self.end() {
            return Err(Error::MalformedWalk(format!("step on edge {} does not continue the walk", step.edge)));
        }
        self.steps.push(step);
        let r = self.validate(g);
        if r.is_err() {
            self.steps.pop();
        }
        r
    }

    pub fn with_initial_half(mut self, g: &Graph, e: EdgeId) -> Result<Self> {
        match g.kinds.get(e) {
            Some(EdgeKind::Half(v)) if *v == self.start => {
                self.initial = Some(e);
                Ok(self)
            }
            _ => Err(Error::MalformedWalk(format!("edge {e} is not a half edge at {}", self.start))),
        }
    }

    pub fn with_terminal_half(mut self, g: &Graph, e: EdgeId) -> Result<Self> {
        match g.kinds.get(e) {
            Some(EdgeKind::Half(v)) if *v == self.end() => {
                self.terminal = Some(e);
                Ok(self)
            }
            _ => Err(Error::MalformedWalk(format!("edge {e} is not a half edge at {}", self.end()))),
        }
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        std::iter::once(self.start)
            .chain(self.steps.iter().map(|s| s.to.vertex))
            .collect()
    }

    /// All edges in traversal order, half edges included.
    pub fn edges(&self) -> Vec<EdgeId> {
        self.initial
            .into_iter()
            .chain(self.steps.iter().map(|s| s.edge))
            .chain(self.terminal)
            .collect()
    }

    pub fn reversed(&self) -> Walk {
        Walk {
            start: self.end(),
            initial: self.terminal,
            steps: self.steps.iter().rev().map(|s| s.reversed()).collect(),
            terminal: self.initial,
        }
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn concat(&self, other: &Walk) -> Result<Walk> {
        if self.terminal.is_some() || other.initial.is_some() || self.end() != other.start {
            return Err(Error::MalformedWalk("walks do not concatenate".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Walk { start: self.start, initial: self.initial, steps, terminal: other.terminal })
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.start >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: self.start, n: g.n() });
        }
        let bad = |msg: String| Err(Error::MalformedWalk(msg));
        if let Some(e) = self.initial {
            if g.kinds.get(e) != Some(&EdgeKind::Half(self.start)) {
                return bad(format!("initial edge {e} is not a half edge at {}", self.start));
            }
        }
        let mut at = self.start;
        for s in &self.steps {
            let Some(kind) = g.kinds.get(s.edge) else {
                return Err(Error::EdgeOutOfRange(s.edge));
            };
            if !(kind.is_link() || kind.is_loop()) {
                return bad(format!("edge {} is not a link or loop", s.edge));
            }
            if s.from.vertex != at
                || s.from.slot == s.to.slot
                || kind.end(s.from.slot) != Some(s.from)
                || kind.end(s.to.slot) != Some(s.to)
            {
                return bad(format!("step on edge {} does not match its ends", s.edge));
            }
            at = s.to.vertex;
        }
        if let Some(e) = self.terminal {
            if g.kinds.get(e) != Some(&EdgeKind::Half(at)) {
                return bad(format!("terminal edge {e} is not a half edge at {at}"));
            }
        }
        Ok(())
    }
}
