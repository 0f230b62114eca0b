//! Gain signed graphs: gains on oriented edges, walk and circuit gains,
//! switching, and hyperbalance.

use std::collections::VecDeque;

use smallvec::SmallVec;

use crate::circuit::SignCircuit;
use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{spanning_forest, EdgeId, EdgeKind, Graph, VertexId, Walk};
use crate::group::AbelianGroup;
use crate::signed::{balanced_components, forest_adjacency, switch_signs, Balance, Orientation, Sign, SignSwitcher, SignedGraph};

/// Υ = (Γ, σ, φ) with a stored reference orientation.
///
/// The gain of an edge is the gain in the stored orientation. The optional
/// extra point e∞ is kept as a loose edge that is never neutral.
#[derive(Clone, Debug, PartialEq)]
pub struct GainSignedGraph<G: AbelianGroup> {
    group: G,
    signed: SignedGraph,
    orientation: Orientation,
    gains: Vec<G::Elem>,
    extra: Option<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GainSwitcher<E>(pub Vec<E>);

impl<G: AbelianGroup> GainSignedGraph<G> {
    pub fn new(group: G, n: usize) -> Self {
        GainSignedGraph {
            group,
            signed: SignedGraph::new(n),
            orientation: Orientation::from_values(Vec::new()),
            gains: Vec::new(),
            extra: None,
        }
    }

    pub fn from_parts(group: G, signed: SignedGraph, orientation: Orientation, gains: Vec<G::Elem>) -> Result<Self> {
        orientation.validate(&signed)?;
        if gains.len() != signed.m() {
            return Err(Error::Invalid("one gain per edge is required".into()));
        }
        Ok(GainSignedGraph { group, signed, orientation, gains, extra: None })
    }

    /// Add an edge with explicit end signs (`tau[0]` for slot 0).
    pub fn add_edge(&mut self, kind: EdgeKind, sign: Sign, tau: [Sign; 2], gain: G::Elem) -> Result<EdgeId> {
        if self.extra.is_some() {
            return Err(Error::Invalid("edges cannot be added after the extra point".into()));
        }
        let id = self.signed.m();
        if (kind.is_link() || kind.is_loop()) && tau[0] * tau[1] != -sign {
            return Err(Error::InvalidEdge { edge: id, reason: "end signs must multiply to minus the edge sign".into() });
        }
        self.signed.add_edge(kind, sign)?;
        let tau = match kind {
            EdgeKind::Half(_) => [tau[0], Sign::Plus],
            EdgeKind::Loose => [Sign::Plus, Sign::Plus],
            _ => tau,
        };
        self.orientation.push(tau);
        self.gains.push(gain);
        Ok(id)
    }

    /// A link or loop in the reference orientation: positive edges point
    /// from `u` to `v`, negative ones are extraverted.
    pub fn add_link(&mut self, u: VertexId, v: VertexId, sign: Sign, gain: G::Elem) -> Result<EdgeId> {
        let kind = if u == v { EdgeKind::Loop(u) } else { EdgeKind::Link(u, v) };
        let tau = match sign {
            Sign::Plus => [Sign::Minus, Sign::Plus],
            Sign::Minus => [Sign::Plus, Sign::Plus],
        };
        self.add_edge(kind, sign, tau, gain)
    }

    /// A half edge with τ = +1.
    pub fn add_half(&mut self, v: VertexId, gain: G::Elem) -> Result<EdgeId> {
        self.add_edge(EdgeKind::Half(v), Sign::Minus, [Sign::Plus, Sign::Plus], gain)
    }

    pub fn add_loose(&mut self, gain: G::Elem) -> Result<EdgeId> {
        self.add_edge(EdgeKind::Loose, Sign::Plus, [Sign::Plus, Sign::Plus], gain)
    }

    /// The graph with e∞ appended as its last edge.
    pub fn extended(&self) -> Self {
        if self.extra.is_some() {
            return self.clone();
        }
        let mut u = self.clone();
        let e = u.add_loose(u.group.zero()).expect("loose edges are always valid");
        u.extra = Some(e);
        u
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn signed(&self) -> &SignedGraph {
        &self.signed
    }

    pub fn graph(&self) -> &Graph {
        self.signed.graph()
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn n(&self) -> usize {
        self.signed.n()
    }

    pub fn m(&self) -> usize {
        self.signed.m()
    }

    pub fn kind(&self, e: EdgeId) -> EdgeKind {
        self.signed.kind(e)
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.signed.sign(e)
    }

    pub fn tau(&self, e: EdgeId, slot: u8) -> Sign {
        self.orientation.tau(e, slot)
    }

    pub fn gain(&self, e: EdgeId) -> &G::Elem {
        &self.gains[e]
    }

    pub fn gains(&self) -> &[G::Elem] {
        &self.gains
    }

    pub fn extra_point(&self) -> Option<EdgeId> {
        self.extra
    }

    pub fn is_extra(&self, e: EdgeId) -> bool {
        self.extra == Some(e)
    }

    /// Ground set: all edges, including e∞ when present.
    pub fn ground(&self) -> EdgeSet {
        EdgeSet::full(self.m())
    }

    /// Ids of the real edges (everything except e∞).
    pub fn real_edges(&self) -> EdgeSet {
        let mut s = self.ground();
        if let Some(x) = self.extra {
            s.remove(x);
        }
        s
    }

    /// Whether a loose edge is neutral; e∞ never is.
    pub fn loose_is_neutral(&self, e: EdgeId) -> bool {
        !self.is_extra(e) && self.group.is_zero(&self.gains[e])
    }

    /// Reorient one edge: both end signs and the gain are negated.
    pub fn reorient(&self, e: EdgeId) -> Result<Self> {
        if e >= self.m() {
            return Err(Error::EdgeOutOfRange(e));
        }
        if self.is_extra(e) {
            return Err(Error::ExtraPoint);
        }
        let mut u = self.clone();
        let [a, b] = u.orientation.values(e);
        match u.kind(e) {
            EdgeKind::Link(..) | EdgeKind::Loop(_) => u.orientation.set(e, [-a, -b]),
            EdgeKind::Half(_) => u.orientation.set(e, [-a, b]),
            EdgeKind::Loose => {}
        }
        u.gains[e] = u.group.neg(&u.gains[e]);
        Ok(u)
    }

    /// Sign switching; gains are unchanged.
    pub fn switch_signs(&self, zeta: &SignSwitcher) -> Self {
        let (signed, orientation) = switch_signs(&self.signed, &self.orientation, zeta);
        GainSignedGraph { signed, orientation, ..self.clone() }
    }

    /// φ^θ(e).
    pub fn switched_gain(&self, theta: &GainSwitcher<G::Elem>, e: EdgeId) -> G::Elem {
        let g = &self.group;
        self.kind(e).ends().iter().fold(self.gains[e].clone(), |acc, end| {
            g.add(&acc, &g.signed(self.tau(e, end.slot), &theta.0[end.vertex]))
        })
    }

    pub fn switch_gains(&self, theta: &GainSwitcher<G::Elem>) -> Self {
        let mut u = self.clone();
        u.gains = (0..self.m()).map(|e| self.switched_gain(theta, e)).collect();
        u
    }

    /// Replace the gain group, mapping every gain.
    pub fn map_gains<H: AbelianGroup>(&self, group: H, f: impl Fn(&G::Elem) -> H::Elem) -> GainSignedGraph<H> {
        GainSignedGraph {
            gains: self.gains.iter().map(f).collect(),
            group,
            signed: self.signed.clone(),
            orientation: self.orientation.clone(),
            extra: self.extra,
        }
    }

    pub(crate) fn set_extra(&mut self, e: Option<EdgeId>) {
        self.extra = e;
    }
}

/// φ(W), accumulated left to right with the running sign σ(W_{0,i−1}).
pub fn walk_gain<G: AbelianGroup>(u: &GainSignedGraph<G>, w: &Walk) -> Result<G::Elem> {
    w.validate(u.graph())?;
    let g = u.group();
    let mut acc = g.zero();
    if let Some(e) = w.initial() {
        acc = g.signed(u.tau(e, 0), u.gain(e));
    }
    let mut running = Sign::Plus;
    for step in w.steps() {
        let e = step.edge;
        let term = g.signed(-(running * u.tau(e, step.from.slot)), u.gain(e));
        acc = g.add(&acc, &term);
        running = running * u.sign(e);
    }
    if let Some(e) = w.terminal() {
        let term = g.signed(-(running * u.tau(e, 0)), u.gain(e));
        acc = g.add(&acc, &term);
    }
    Ok(acc)
}

/// The gain of a sign circuit: the gain of its circuit walk (see
/// [`SignCircuit::circuit_walk`]), or the gain of a loose edge.
pub fn circuit_gain<G: AbelianGroup>(u: &GainSignedGraph<G>, c: &SignCircuit) -> Result<G::Elem> {
    if SignCircuit::from_edges(u.signed(), &c.edges()).as_ref() != Some(c) {
        return Err(Error::NotSignCircuit);
    }
    match c {
        SignCircuit::LooseEdge(e) if u.is_extra(*e) => Err(Error::ExtraPoint),
        SignCircuit::LooseEdge(e) => Ok(u.gain(*e).clone()),
        _ => walk_gain(u, &c.circuit_walk(u.graph()).ok_or(Error::NotSignCircuit)?),
    }
}

pub fn is_neutral<G: AbelianGroup>(u: &GainSignedGraph<G>, c: &SignCircuit) -> Result<bool> {
    match c {
        SignCircuit::LooseEdge(e) if u.is_extra(*e) => Ok(false),
        _ => Ok(u.group().is_zero(&circuit_gain(u, c)?)),
    }
}

/// The constant by which an unbalanced component is shifted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shift<E> {
    Whole(E),
    /// Some x with 2x equal to this element, which the group may lack.
    Half(E),
}

/// θ(v) = base(v) + ζ(v)·shift[component(v)], kept symbolic so that halves
/// which do not exist in the group can still be reasoned about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainPotential<E> {
    pub base: Vec<E>,
    pub zeta: SignSwitcher,
    pub component: Vec<usize>,
    pub shift: Vec<Shift<E>>,
}

impl<E: Clone + PartialEq> GainPotential<E> {
    /// Whether φ^θ(e) = 0. The extra point is never neutral.
    pub fn neutralizes<G: AbelianGroup<Elem = E>>(&self, u: &GainSignedGraph<G>, e: EdgeId) -> bool {
        if u.is_extra(e) {
            return false;
        }
        let g = u.group();
        let mut whole = u.gain(e).clone();
        let mut coeff: SmallVec<[(usize, i64); 2]> = SmallVec::new();
        for end in u.kind(e).ends() {
            let t = u.tau(e, end.slot);
            whole = g.add(&whole, &g.signed(t, &self.base[end.vertex]));
            let k = (t * self.zeta.at(end.vertex)).value();
            let c = self.component[end.vertex];
            match coeff.iter_mut().find(|x| x.0 == c) {
                Some(x) => x.1 += k,
                None => coeff.push((c, k)),
            }
        }
        let mut odd: Option<E> = None;
        for (c, k) in coeff {
            match &self.shift[c] {
                Shift::Whole(x) => whole = g.add(&whole, &g.scale(k, x)),
                Shift::Half(h) if k % 2 == 0 => whole = g.add(&whole, &g.scale(k / 2, h)),
                Shift::Half(h) => {
                    let term = g.scale(k, h);
                    odd = Some(odd.map_or(term.clone(), |o| g.add(&o, &term)));
                }
            }
        }
        match odd {
            None => g.is_zero(&whole),
            Some(h) => g.is_zero(&g.add(&g.double(&whole), &h)),
        }
    }

    /// An actual switcher, halving where needed.
    pub fn resolve<G: AbelianGroup<Elem = E>>(&self, g: &G) -> Option<GainSwitcher<E>> {
        let shifts: Option<Vec<E>> = self
            .shift
            .iter()
            .map(|s| match s {
                Shift::Whole(x) => Some(x.clone()),
                Shift::Half(h) => g.halve(h),
            })
            .collect();
        let shifts = shifts?;
        Some(GainSwitcher(
            (0..self.base.len())
                .map(|v| g.add(&self.base[v], &g.signed(self.zeta.at(v), &shifts[self.component[v]])))
                .collect(),
        ))
    }
}

/// A gain potential for an edge set, built by neutralizing a spanning forest
/// and then shifting each unbalanced component by a constant.
#[derive(Clone, Debug)]
pub struct Potential<G: AbelianGroup> {
    pub balance: Balance,
    /// θ with every edge of the set neutral under φ^θ; `None` when the set
    /// is hyperfrustrated.
    pub theta: Option<GainPotential<G::Elem>>,
}

/// Tree-neutralizing switcher on the forest of `bal`, rooted at the smallest
/// vertex of each component.
fn forest_switcher<G: AbelianGroup>(u: &GainSignedGraph<G>, bal: &Balance) -> Vec<G::Elem> {
    let g = u.group();
    let adj = forest_adjacency(u.graph(), &bal.forest);
    let mut theta = vec![g.zero(); u.n()];
    let mut seen = vec![false; u.n()];
    for part in &bal.components.parts {
        let mut queue = VecDeque::from([part[0]]);
        seen[part[0]] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                let slot = if u.kind(e).end(0).map(|end| end.vertex) == Some(x) { 0 } else { 1 };
                let inner = g.add(&theta[x], &g.signed(u.tau(e, slot), u.gain(e)));
                theta[y] = g.signed(u.sign(e), &inner);
                queue.push_back(y);
            }
        }
    }
    theta
}

pub fn gain_potential<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> Potential<G> {
    let g = u.group();
    let bal = balanced_components(u.signed(), s);
    let theta1 = GainSwitcher(forest_switcher(u, &bal));
    let zeta = &bal.potential;
    let ncomp = bal.balanced.len();
    let mut phi0: Vec<Option<G::Elem>> = vec![None; ncomp];
    let mut phi1: Vec<Option<G::Elem>> = vec![None; ncomp];
    let frustrated = Potential { balance: bal.clone(), theta: None };
    for e in s.difference(&bal.forest).iter() {
        let kind = u.kind(e);
        if kind.is_loose() {
            if !u.loose_is_neutral(e) {
                return frustrated;
            }
            continue;
        }
        let x = u.switched_gain(&theta1, e);
        let end = kind.end(0).expect("edge has an end");
        let scaled = g.signed(-(u.tau(e, 0) * zeta.at(end.vertex)), &x);
        let c = bal.component_of(end.vertex);
        let slot = match (kind, bal.switched_sign(u.signed(), e)) {
            (EdgeKind::Half(_), _) => &mut phi1[c],
            (_, Some(Sign::Minus)) => &mut phi0[c],
            _ => {
                if !g.is_zero(&x) {
                    return frustrated;
                }
                continue;
            }
        };
        match slot {
            Some(prev) if *prev != scaled => return frustrated,
            Some(_) => {}
            None => *slot = Some(scaled),
        }
    }
    let mut shift = Vec::with_capacity(ncomp);
    for c in 0..ncomp {
        shift.push(match (&phi0[c], &phi1[c]) {
            (Some(p0), Some(p1)) if g.double(p1) != *p0 => return frustrated,
            (_, Some(p1)) => Shift::Whole(p1.clone()),
            (Some(p0), None) => Shift::Half(p0.clone()),
            (None, None) => Shift::Whole(g.zero()),
        });
    }
    let theta = GainPotential {
        base: theta1.0,
        zeta: zeta.clone(),
        component: bal.components.label.clone(),
        shift,
    };
    Potential { balance: bal, theta: Some(theta) }
}

pub fn is_hyperbalanced<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> bool {
    gain_potential(u, s).theta.is_some()
}

/// Switchers making every edge of `s` neutral: apply `zeta` with sign
/// switching first, then `theta` with gain switching. `None` when the group
/// cannot halve the element the construction needs.
pub fn hyperbalance_witness<G: AbelianGroup>(
    u: &GainSignedGraph<G>,
    s: &EdgeSet,
) -> Result<Option<(SignSwitcher, GainSwitcher<G::Elem>)>> {
    let p = gain_potential(u, s);
    let theta = p.theta.ok_or(Error::NotHyperbalanced)?;
    let g = u.group();
    let zeta = p.balance.potential;
    Ok(theta.resolve(g).map(|t| {
        let out = (0..u.n()).map(|v| g.signed(zeta.at(v), &t.0[v])).collect();
        (zeta, GainSwitcher(out))
    }))
}

/// θ making every edge of the pseudoforest `t` neutral, with
/// θ(w) = σ(T_rw)[θ0 − φ(T_rw)] from the lowest vertex r of each component.
pub fn neutralize_pseudoforest<G: AbelianGroup>(u: &GainSignedGraph<G>, t: &EdgeSet) -> Result<GainSwitcher<G::Elem>> {
    let graph = u.graph();
    graph.check_edges(t)?;
    let links: EdgeSet = t.iter().filter(|&e| u.kind(e).is_link()).collect();
    if let Some(e) = t.iter().find(|&e| u.kind(e).is_loop() || u.kind(e).is_loose()) {
        return Err(Error::NotPseudoforest(format!("edge {e} is a {}", u.kind(e).name())));
    }
    if spanning_forest(graph, &links) != links {
        return Err(Error::NotPseudoforest("the links contain a circle".into()));
    }
    let bal = balanced_components(u.signed(), t);
    let mut half_at: Vec<Option<EdgeId>> = vec![None; bal.balanced.len()];
    for e in t.iter() {
        if let EdgeKind::Half(v) = u.kind(e) {
            let c = bal.component_of(v);
            if half_at[c].replace(e).is_some() {
                return Err(Error::NotPseudoforest(format!("two half edges in the component of vertex {v}")));
            }
        }
    }
    let g = u.group();
    let adj = forest_adjacency(graph, &links);
    // walk gain φ(T_rv) and sign σ(T_rv) along the tree
    let mut gain = vec![g.zero(); u.n()];
    let mut sign = vec![Sign::Plus; u.n()];
    let mut seen = vec![false; u.n()];
    let mut theta = vec![g.zero(); u.n()];
    for (c, part) in bal.components.parts.iter().enumerate() {
        let r = part[0];
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                let slot = if u.kind(e).end(0).map(|end| end.vertex) == Some(x) { 0 } else { 1 };
                let step = g.signed(-u.tau(e, slot), u.gain(e));
                gain[y] = g.add(&gain[x], &g.signed(sign[x], &step));
                sign[y] = sign[x] * u.sign(e);
                queue.push_back(y);
            }
        }
        let theta0 = match half_at[c] {
            Some(h) => {
                let EdgeKind::Half(v) = u.kind(h) else { unreachable!() };
                g.add(&gain[v], &g.signed(-(sign[v] * u.tau(h, 0)), u.gain(h)))
            }
            None => g.zero(),
        };
        for &w in part {
            theta[w] = g.signed(sign[w], &g.sub(&theta0, &gain[w]));
        }
    }
    Ok(GainSwitcher(theta))
}

/// E(θ): edges neutral under φ^θ. Always contains the neutral loose edges.
pub fn neutral_edges<G: AbelianGroup>(u: &GainSignedGraph<G>, theta: &GainSwitcher<G::Elem>) -> EdgeSet {
    (0..u.m())
        .filter(|&e| !u.is_extra(e) && u.group().is_zero(&u.switched_gain(theta, e)))
        .collect()
}

/// E(θ) for a symbolic potential.
pub fn potential_neutral_edges<G: AbelianGroup>(u: &GainSignedGraph<G>, theta: &GainPotential<G::Elem>) -> EdgeSet {
    (0..u.m()).filter(|&e| theta.neutralizes(u, e)).collect()
}

/// E(ζ): links and loops whose sign is ζ(v)ζ(w).
pub fn sign_potential_edges<G: AbelianGroup>(u: &GainSignedGraph<G>, zeta: &SignSwitcher) -> EdgeSet {
    (0..u.m())
        .filter(|&e| match u.kind(e).endpoints() {
            Some((a, b)) => u.sign(e) == zeta.at(a) * zeta.at(b),
            None => false,
        })
        .collect()
}

/// E(θ), or E(θ,ζ) = E(θ) ∩ E(ζ) when `zeta` is given.
pub fn edge_sets_of_potentials<G: AbelianGroup>(
    u: &GainSignedGraph<G>,
    theta: &GainSwitcher<G::Elem>,
    zeta: Option<&SignSwitcher>,
) -> EdgeSet {
    let e_theta = neutral_edges(u, theta);
    match zeta {
        Some(z) => e_theta.intersection(&sign_potential_edges(u, z)),
        None => e_theta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::NegativeFigure;
    use crate::group::{Integers, IntegersMod, Rationals};
    use crate::testutil::{all_masks, gain_graph_strategy, int, zmod_graph_strategy};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use Sign::*;

    fn z(k: i64) -> BigInt {
        BigInt::from(k)
    }

    fn negative_cycle(group_n: usize) -> GainSignedGraph<Integers> {
        let mut u = GainSignedGraph::new(Integers, group_n);
        for i in 0..group_n {
            u.add_link(i, (i + 1) % group_n, Minus, z(1)).unwrap();
        }
        u
    }

    #[test]
    fn reorient_twice_is_identity() {
        let mut u = GainSignedGraph::new(Integers, 2);
        u.add_link(0, 1, Plus, z(3)).unwrap();
        u.add_half(1, z(2)).unwrap();
        let once = u.reorient(0).unwrap();
        assert_eq!(once.gain(0), &z(-3));
        assert_eq!(once.tau(0, 0), Plus);
        assert_eq!(once.reorient(0).unwrap(), u);
        assert_eq!(u.reorient(1).unwrap().reorient(1).unwrap(), u);
    }

    #[test]
    fn switch_gains_examples() {
        let mut u = GainSignedGraph::new(Integers, 2);
        u.add_link(0, 1, Plus, z(5)).unwrap();
        u.add_link(0, 1, Minus, z(5)).unwrap();
        let zero = GainSwitcher(vec![z(0), z(0)]);
        assert_eq!(u.switch_gains(&zero), u);
        let v = u.switch_gains(&GainSwitcher(vec![z(2), z(7)]));
        assert_eq!(v.gain(0), &z(-2 + 5 + 7));
        let c = u.switch_gains(&GainSwitcher(vec![z(4), z(4)]));
        assert_eq!(c.gain(1), &z(5 + 8));
    }

    #[test]
    fn walk_gain_examples() {
        let mut u = GainSignedGraph::new(Integers, 2);
        u.add_link(0, 1, Plus, z(7)).unwrap();
        let h = u.add_half(0, z(4)).unwrap();
        let w = Walk::from_edges(u.graph(), 0, &[0]).unwrap();
        assert_eq!(walk_gain(&u, &w).unwrap(), z(7));
        let uw = Walk::trivial(0).with_initial_half(u.graph(), h).unwrap();
        assert_eq!(walk_gain(&u, &uw).unwrap(), z(4));
    }

    #[test]
    fn circuit_gain_examples() {
        let mut u = GainSignedGraph::new(Integers, 2);
        let l = u.add_loose(z(0)).unwrap();
        let a = u.add_half(0, z(3)).unwrap();
        let b = u.add_half(0, z(5)).unwrap();
        u.add_link(0, 1, Plus, z(0)).unwrap();
        u.add_link(0, 1, Plus, z(1)).unwrap();
        assert_eq!(circuit_gain(&u, &SignCircuit::LooseEdge(l)).unwrap(), z(0));
        let hc = SignCircuit::from_edges(u.signed(), &EdgeSet::from_iter([a, b])).unwrap();
        let g = circuit_gain(&u, &hc).unwrap();
        assert!(g == z(-2) || g == z(2));
        let digon = SignCircuit::from_edges(u.signed(), &EdgeSet::from_iter([3, 4])).unwrap();
        let g = circuit_gain(&u, &digon).unwrap();
        assert!(g == z(1) || g == z(-1));
        assert!(!is_neutral(&u, &digon).unwrap());
    }

    #[test]
    fn neutrality_over_z2() {
        let z2 = IntegersMod::new(2).unwrap();
        let mut u = GainSignedGraph::new(z2, 2);
        u.add_link(0, 1, Plus, 0).unwrap();
        u.add_link(0, 1, Plus, z2.from_int(2)).unwrap();
        let c = SignCircuit::from_edges(u.signed(), &EdgeSet::from_iter([0, 1])).unwrap();
        assert!(is_neutral(&u, &c).unwrap());
    }

    #[test]
    fn pseudoforest_examples() {
        let mut u = GainSignedGraph::new(Integers, 2);
        u.add_link(0, 1, Plus, z(6)).unwrap();
        let theta = neutralize_pseudoforest(&u, &EdgeSet::from_iter([0])).unwrap();
        assert_eq!(theta.0, vec![z(0), z(-6)]);
        assert_eq!(u.switched_gain(&theta, 0), z(0));

        let mut t = GainSignedGraph::new(Integers, 3);
        t.add_link(0, 1, Minus, z(2)).unwrap();
        t.add_link(2, 1, Plus, z(-5)).unwrap();
        t.add_half(2, z(9)).unwrap();
        let theta = neutralize_pseudoforest(&t, &t.ground()).unwrap();
        for e in 0..3 {
            assert_eq!(t.switched_gain(&theta, e), z(0));
        }
        let mut bad = t.clone();
        bad.add_half(0, z(1)).unwrap();
        assert!(matches!(neutralize_pseudoforest(&bad, &bad.ground()), Err(Error::NotPseudoforest(_))));
    }

    #[test]
    fn hyperbalance_examples() {
        let t = negative_cycle(3);
        assert!(is_hyperbalanced(&t, &t.ground()));
        let c4 = negative_cycle(4);
        assert!(is_hyperbalanced(&c4, &c4.ground()));
        let mut l = GainSignedGraph::new(Integers, 1);
        l.add_link(0, 0, Plus, z(1)).unwrap();
        assert!(!is_hyperbalanced(&l, &l.ground()));
    }

    #[test]
    fn witness_examples() {
        let c3 = negative_cycle(3);
        assert_eq!(hyperbalance_witness(&c3, &c3.ground()).unwrap(), None);
        let q = c3.map_gains(Rationals, |x| BigRational::from_integer(x.clone()));
        let (zeta, theta) = hyperbalance_witness(&q, &q.ground()).unwrap().unwrap();
        let neutral = q.switch_signs(&zeta).switch_gains(&theta);
        assert!(neutral.gains().iter().all(|x| *x == BigRational::from_integer(z(0))));
        assert!(theta.0.iter().any(|x| !x.is_integer()));
        let mut l = GainSignedGraph::new(Integers, 1);
        l.add_link(0, 0, Plus, z(1)).unwrap();
        assert_eq!(hyperbalance_witness(&l, &l.ground()), Err(Error::NotHyperbalanced));
    }

    #[test]
    fn potential_edge_sets() {
        let mut u = GainSignedGraph::new(Integers, 2);
        u.add_link(0, 1, Plus, z(0)).unwrap();
        u.add_link(0, 1, Minus, z(0)).unwrap();
        u.add_link(0, 1, Plus, z(2)).unwrap();
        u.add_loose(z(0)).unwrap();
        let zero = GainSwitcher(vec![z(0), z(0)]);
        assert_eq!(neutral_edges(&u, &zero).to_vec(), vec![0, 1, 3]);
        assert_eq!(sign_potential_edges(&u, &SignSwitcher::identity(2)).to_vec(), vec![0, 2]);
        let both = edge_sets_of_potentials(&u, &zero, Some(&SignSwitcher::identity(2)));
        assert!(both.is_subset(&neutral_edges(&u, &zero)));
        assert_eq!(both.to_vec(), vec![0]);
    }

    /// Independent oracle: enumerate every frame circuit in `s` by rank
    /// minimality and test its gain.
    fn brute_hyperbalanced<G: AbelianGroup>(u: &GainSignedGraph<G>, s: &EdgeSet) -> bool {
        let sub: Vec<EdgeId> = s.to_vec();
        (1u64..1 << sub.len()).all(|mask| {
            let c: EdgeSet = (0..sub.len()).filter(|i| mask >> i & 1 == 1).map(|i| sub[i]).collect();
            match SignCircuit::from_edges(u.signed(), &c) {
                Some(circ) => is_neutral(u, &circ).unwrap(),
                None => true,
            }
        })
    }

    /// The handcuff closed forms, written for an arbitrary connecting-path
    /// sign; they agree with the circuit-walk gain up to negation.
    fn closed_form<G: AbelianGroup>(u: &GainSignedGraph<G>, c: &SignCircuit) -> Option<G::Elem> {
        let g = u.group();
        let SignCircuit::Handcuff { fig1, fig2, path } = c else { return None };
        let fig_gain = |f: &NegativeFigure| match f {
            NegativeFigure::Half { edge, vertex } => {
                let w = Walk::trivial(*vertex).with_terminal_half(u.graph(), *edge).unwrap();
                walk_gain(u, &w).unwrap()
            }
            NegativeFigure::Circle { edges, root } => walk_gain(u, &crate::circuit::circle_walk(u.graph(), edges, *root).unwrap()).unwrap(),
        };
        let p = walk_gain(u, path).unwrap();
        let sp = crate::signed::sign_of_walk(u.signed(), path).unwrap();
        let (c1, c2) = (fig_gain(fig1), fig_gain(fig2));
        Some(match (fig1, fig2) {
            (NegativeFigure::Circle { .. }, NegativeFigure::Circle { .. }) => {
                g.sub(&g.sub(&c1, &g.signed(sp, &c2)), &g.double(&p))
            }
            (NegativeFigure::Half { .. }, NegativeFigure::Half { .. }) => g.sub(&g.sub(&c1, &g.signed(sp, &c2)), &p),
            (NegativeFigure::Half { .. }, _) => g.sub(&g.sub(&g.double(&c1), &g.signed(sp, &c2)), &g.double(&p)),
            (_, NegativeFigure::Half { .. }) => {
                let rp = walk_gain(u, &path.reversed()).unwrap();
                g.sub(&g.sub(&g.double(&c2), &g.signed(sp, &c1)), &g.double(&rp))
            }
        })
    }

    proptest! {
        #[test]
        fn hyperbalance_matches_brute_force(u in gain_graph_strategy(4, 6, 2)) {
            for s in all_masks(u.m()) {
                prop_assert_eq!(is_hyperbalanced(&u, &s), brute_hyperbalanced(&u, &s), "{}", s);
            }
        }

        #[test]
        fn hyperbalance_matches_brute_force_mod4(u in zmod_graph_strategy(4, 6, 4)) {
            for s in all_masks(u.m()) {
                prop_assert_eq!(is_hyperbalanced(&u, &s), brute_hyperbalanced(&u, &s), "{}", s);
            }
        }

        #[test]
        fn potential_neutralizes_the_set(u in gain_graph_strategy(4, 6, 2)) {
            for s in all_masks(u.m()) {
                if let Some(theta) = gain_potential(&u, &s).theta {
                    prop_assert!(s.is_subset(&potential_neutral_edges(&u, &theta)));
                }
            }
        }

        #[test]
        fn witnesses_neutralize(u in gain_graph_strategy(4, 6, 2)) {
            let q = u.map_gains(Rationals, |x| BigRational::from_integer(x.clone()));
            for s in all_masks(u.m()) {
                match hyperbalance_witness(&q, &s) {
                    Ok(Some((zeta, theta))) => {
                        let w = q.switch_signs(&zeta).switch_gains(&theta);
                        prop_assert!(s.iter().all(|e| q.group().is_zero(w.gain(e))));
                    }
                    Ok(None) => prop_assert!(false, "rationals can always halve"),
                    Err(_) => prop_assert!(!is_hyperbalanced(&q, &s)),
                }
            }
        }

        #[test]
        fn walk_gain_lemmas(u in gain_graph_strategy(4, 6, 3), start in 0usize..4, picks in proptest::collection::vec(0usize..6, 0..6), cut in 0usize..6) {
            let mut w = Walk::trivial(start % u.n());
            for p in picks {
                let at = w.end();
                let options: Vec<EdgeId> = (0..u.m()).filter(|&e| match u.kind(e) {
                    EdgeKind::Link(a, b) => a == at || b == at,
                    EdgeKind::Loop(a) => a == at,
                    _ => false,
                }).collect();
                if options.is_empty() { break; }
                w.push(u.graph(), options[p % options.len()]).unwrap();
            }
            let g = u.group();
            let phi = walk_gain(&u, &w).unwrap();
            let sigma = crate::signed::sign_of_walk(u.signed(), &w).unwrap();
            prop_assert_eq!(walk_gain(&u, &w.reversed()).unwrap(), g.signed(-sigma, &phi));
            let k = cut.min(w.len());
            let first = Walk::from_edges(u.graph(), w.start(), &w.edges()[..k]).ok();
            if let Some(first) = first {
                if first.steps() == &w.steps()[..k] {
                    let mut second = Walk::trivial(first.end());
                    for s in &w.steps()[k..] { second.push_step(u.graph(), *s).unwrap(); }
                    let s1 = crate::signed::sign_of_walk(u.signed(), &first).unwrap();
                    let joined = g.add(&walk_gain(&u, &first).unwrap(), &g.signed(s1, &walk_gain(&u, &second).unwrap()));
                    prop_assert_eq!(joined, phi.clone());
                }
            }
            for e in 0..u.m() {
                prop_assert_eq!(walk_gain(&u.reorient(e).unwrap(), &w).unwrap(), phi.clone());
            }
        }

        #[test]
        fn switching_and_circuits(u in gain_graph_strategy(4, 6, 3), t in proptest::collection::vec(-3i64..3, 4), zs in proptest::collection::vec(any::<bool>(), 4)) {
            let g = u.group();
            let theta = GainSwitcher(t.iter().take(u.n()).map(|&x| int(x)).collect());
            let zeta = SignSwitcher(zs.iter().take(u.n()).map(|&b| if b { Minus } else { Plus }).collect());
            let switched = u.switch_gains(&theta);
            let flipped = u.switch_signs(&zeta);
            let theta_z = GainSwitcher((0..u.n()).map(|v| g.signed(zeta.at(v), &theta.0[v])).collect());
            let lhs = u.switch_signs(&zeta).switch_gains(&theta_z);
            let rhs = u.switch_gains(&theta).switch_signs(&zeta);
            prop_assert_eq!(lhs.gains(), rhs.gains());
            for s in all_masks(u.m()) {
                if let Some(c) = SignCircuit::from_edges(u.signed(), &s) {
                    let n = is_neutral(&u, &c).unwrap();
                    prop_assert_eq!(is_neutral(&switched, &c).unwrap(), n);
                    let cz = SignCircuit::from_edges(flipped.signed(), &s).unwrap();
                    prop_assert_eq!(is_neutral(&flipped, &cz).unwrap(), n);
                    if let Some(f) = closed_form(&u, &c) {
                        let gain = circuit_gain(&u, &c).unwrap();
                        prop_assert!(f == gain || f == g.neg(&gain), "{:?}: {:?} vs {:?}", c, f, gain);
                    }
                    if let Some(w) = c.circuit_walk(u.graph()) {
                        if w.is_closed() || w.is_half_to_half() {
                            let sign = crate::signed::sign_of_walk(u.signed(), &w).unwrap();
                            if sign == Plus || w.is_half_to_half() {
                                prop_assert_eq!(walk_gain(&switched, &w).unwrap(), walk_gain(&u, &w).unwrap());
                            }
                        }
                    }
                }
            }
        }

        #[test]
        fn pseudoforests_neutralize(u in gain_graph_strategy(5, 6, 3)) {
            let mut t = spanning_forest(u.graph(), &u.ground());
            let mut used = vec![false; u.n()];
            let bal = balanced_components(u.signed(), &t);
            for e in 0..u.m() {
                if let EdgeKind::Half(v) = u.kind(e) {
                    let c = bal.component_of(v);
                    if !used[c] { used[c] = true; t.insert(e); }
                }
            }
            let theta = neutralize_pseudoforest(&u, &t).unwrap();
            for e in t.iter() {
                prop_assert_eq!(u.switched_gain(&theta, e), int(0));
            }
        }
    }
}
