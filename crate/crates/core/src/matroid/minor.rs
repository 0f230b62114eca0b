use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::gain::{gain_potential, GainSignedGraph, GainSwitcher, Shift};
use crate::graph::{EdgeId, EdgeKind, VertexId};
use crate::group::AbelianGroup;
use crate::signed::Sign;

/// A minor together with how it was cut out of its parent.
#[derive(Clone, Debug, PartialEq)]
pub struct Minor<G: AbelianGroup> {
    pub graph: GainSignedGraph<G>,
    /// Set when a hyperfrustrated set was contracted: every gain is then 0
    /// and the result stands for a signed graph with trivial gains.
    pub gains_erased: bool,
    /// Parent vertex to minor vertex; `None` for removed vertices.
    pub vertex_map: Vec<Option<VertexId>>,
    /// Parent edge to minor edge; `None` for deleted or contracted edges.
    pub edge_map: Vec<Option<EdgeId>>,
}

impl<G: AbelianGroup> Minor<G> {
    /// Image of a parent edge set; edges that are gone are dropped.
    pub fn map_edges(&self, s: &EdgeSet) -> EdgeSet {
        s.iter().filter_map(|e| self.edge_map[e]).collect()
    }
}

/// Υ ∖ S: the edges of `s` are removed, vertices stay.
pub fn delete<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> Result<Minor<G>> {
    u.graph().check_edges(s)?;
    let mut out = GainSignedGraph::new(u.group().clone(), u.n());
    let mut edge_map = vec![None; u.m()];
    let mut extra = None;
    for e in (0..u.m()).filter(|&e| !s.contains(e)) {
        let id = out.add_edge(u.kind(e), u.sign(e), u.orientation().values(e), u.gain(e).clone())?;
        edge_map[e] = Some(id);
        if u.is_extra(e) {
            extra = Some(id);
        }
    }
    out.set_extra(extra);
    Ok(Minor { graph: out, gains_erased: false, vertex_map: (0..u.n()).map(Some).collect(), edge_map })
}

/// Υ / S.
///
/// A hyperbalanced S is first switched so that its balanced components are
/// positive and every edge of S is neutral. A hyperfrustrated S (including
/// any S holding e∞) erases all gains. Vertices of the result are the blocks
/// of π_b(S), ordered by their smallest vertex.
pub fn contract<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> Result<Minor<G>> {
    u.graph().check_edges(s)?;
    let group = u.group();
    let p = gain_potential(u, s);
    let zeta = &p.balance.potential;
    let switched = u.switch_signs(zeta);
    let (work, erased) = match &p.theta {
        Some(theta) => {
            let th = theta.resolve(group).ok_or_else(|| {
                let halves: Vec<String> = theta
                    .shift
                    .iter()
                    .filter_map(|x| match x {
                        Shift::Half(h) if group.halve(h).is_none() => Some(group.format(h)),
                        _ => None,
                    })
                    .collect();
                Error::ContractionObstruction(format!("{} has no half of {}", group.name(), halves.join(", ")))
            })?;
            let th = (0..u.n()).map(|v| group.signed(zeta.at(v), &th.0[v])).collect();
            (switched.switch_gains(&GainSwitcher(th)), false)
        }
        None => (switched, true),
    };
    debug_assert!(erased || s.iter().all(|e| group.is_zero(work.gain(e))));

    let blocks = p.balance.pib();
    let mut vertex_map = vec![None; u.n()];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            vertex_map[v] = Some(i);
        }
    }
    let mut out = GainSignedGraph::new(group.clone(), blocks.len());
    let mut edge_map = vec![None; u.m()];
    let mut extra = None;
    for e in (0..u.m()).filter(|&e| !s.contains(e)) {
        let tau = work.orientation().values(e);
        let gain = if erased { group.zero() } else { work.gain(e).clone() };
        let half = |x: VertexId, t: Sign| (EdgeKind::Half(x), Sign::Minus, [t, Sign::Plus]);
        let loose = (EdgeKind::Loose, Sign::Plus, [Sign::Plus, Sign::Plus]);
        let (kind, sign, tau) = match work.kind(e) {
            EdgeKind::Link(a, b) | EdgeKind::Loop(a @ b) => match (vertex_map[a], vertex_map[b]) {
                (Some(x), Some(y)) if x == y => (EdgeKind::Loop(x), work.sign(e), tau),
                (Some(x), Some(y)) => (EdgeKind::Link(x, y), work.sign(e), tau),
                (Some(x), None) => half(x, tau[0]),
                (None, Some(y)) => half(y, tau[1]),
                (None, None) => loose,
            },
            EdgeKind::Half(a) => match vertex_map[a] {
                Some(x) => half(x, tau[0]),
                None => loose,
            },
            EdgeKind::Loose => loose,
        };
        let id = out.add_edge(kind, sign, tau, gain)?;
        edge_map[e] = Some(id);
        if u.is_extra(e) && !erased {
            extra = Some(id);
        }
    }
    out.set_extra(extra);
    Ok(Minor { graph: out, gains_erased: erased, vertex_map, edge_map })
}

/// Υ ∖ T / S, computed as a deletion followed by a contraction.
pub fn minor<G: AbelianGroup>(u: &GainSignedGraph<G>, delete_set: &EdgeSet, contract_set: &EdgeSet) -> Result<Minor<G>> {
    if !delete_set.is_disjoint(contract_set) {
        return Err(Error::Invalid("deleted and contracted edges must be disjoint".into()));
    }
    let d = delete(u, delete_set)?;
    let c = contract(&d.graph, &d.map_edges(contract_set))?;
    let edge_map = d.edge_map.iter().map(|x| x.and_then(|e| c.edge_map[e])).collect();
    Ok(Minor { graph: c.graph, gains_erased: c.gains_erased, vertex_map: c.vertex_map, edge_map })
}
