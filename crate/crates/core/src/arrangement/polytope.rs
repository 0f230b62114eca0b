//! Affine dimensions of point sets coming from oriented edges.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::gain::{is_hyperbalanced, GainSignedGraph};
use crate::graph::{components, EdgeKind, Walk};
use crate::group::{AbelianGroup, Integers};
use crate::linalg::ExactMatrix;
use crate::matroid::rank;
use crate::signed::{balanced_components, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointFamily {
    /// e_i + e_j for every edge of an undirected graph.
    Edge,
    /// τ(vi,e)e_i + τ(vj,e)e_j for every edge of a bidirected graph.
    Bidirected,
    /// e_j − e_i for every arc (i, j) of a digraph.
    Arc,
    /// (−e_i, e_j) ∈ ℝ^{2n} for every arc (i, j).
    DoubleArc,
}

impl FromStr for PointFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge" => Ok(PointFamily::Edge),
            "bidirected" => Ok(PointFamily::Bidirected),
            "arc" => Ok(PointFamily::Arc),
            "double-arc" => Ok(PointFamily::DoubleArc),
            _ => Err(Error::Invalid(format!("unknown point family {s:?}"))),
        }
    }
}

/// Arcs `(tail, head)` read from positive links and loops: the tail is the
/// end with τ = −1.
fn arcs<G: AbelianGroup>(u: &GainSignedGraph<G>) -> Result<Vec<(usize, usize)>> {
    (0..u.m())
        .map(|e| match u.kind(e) {
            EdgeKind::Link(a, b) | EdgeKind::Loop(a @ b) if u.sign(e) == Sign::Plus => {
                Ok(if u.tau(e, 0) == Sign::Minus { (a, b) } else { (b, a) })
            }
            k => Err(Error::Invalid(format!("edge {e}: a digraph has only positive links and loops, found {}", k.name()))),
        })
        .collect()
}

/// Every edge becomes −e_ij with gain 1, so that z(e) = e0 + e_i + e_j.
pub fn edge_points_graph<G: AbelianGroup>(u: &GainSignedGraph<G>) -> Result<GainSignedGraph<Integers>> {
    let mut out = GainSignedGraph::new(Integers, u.n());
    for e in 0..u.m() {
        match u.kind(e) {
            EdgeKind::Link(a, b) | EdgeKind::Loop(a @ b) => {
                let kind = if a == b { EdgeKind::Loop(a) } else { EdgeKind::Link(a, b) };
                out.add_edge(kind, Sign::Minus, [Sign::Plus, Sign::Plus], 1.into())?;
            }
            k => return Err(Error::Invalid(format!("edge {e}: edge points need links and loops, found {}", k.name()))),
        }
    }
    Ok(out)
}

/// The same bidirected graph with every gain 1.
pub fn unit_gain_graph<G: AbelianGroup>(u: &GainSignedGraph<G>) -> GainSignedGraph<Integers> {
    let real = u.real_edges();
    let mut out = GainSignedGraph::new(Integers, u.n());
    for e in real.iter() {
        out.add_edge(u.kind(e), u.sign(e), u.orientation().values(e), 1.into()).expect("edge was valid");
    }
    out
}

/// The vertex doubling: V− = 0..n, V+ = n..2n, and arc (i, j) becomes the
/// arc (i−, j+) with gain 1.
pub fn double_arc_graph<G: AbelianGroup>(u: &GainSignedGraph<G>) -> Result<GainSignedGraph<Integers>> {
    let n = u.n();
    let mut out = GainSignedGraph::new(Integers, 2 * n);
    for (i, j) in arcs(u)? {
        out.add_edge(EdgeKind::Link(i, n + j), Sign::Plus, [Sign::Minus, Sign::Plus], 1.into())?;
    }
    Ok(out)
}

/// Homogenized points (1, x) as columns, built from coordinates alone.
pub fn polytope_points<G: AbelianGroup>(u: &GainSignedGraph<G>, family: PointFamily) -> Result<ExactMatrix<BigRational>> {
    let n = u.n();
    let q = |k: i64| BigRational::from_integer(k.into());
    let point = |dim: usize, entries: &[(usize, i64)]| {
        let mut col = vec![BigRational::zero(); 1 + dim];
        col[0] = q(1);
        for &(v, c) in entries {
            col[1 + v] += q(c);
        }
        col
    };
    let columns: Vec<Vec<BigRational>> = match family {
        PointFamily::Edge => (0..u.m())
            .map(|e| match u.kind(e) {
                EdgeKind::Link(a, b) | EdgeKind::Loop(a @ b) => Ok(point(n, &[(a, 1), (b, 1)])),
                k => Err(Error::Invalid(format!("edge {e}: edge points need links and loops, found {}", k.name()))),
            })
            .collect::<Result<_>>()?,
        PointFamily::Bidirected => u
            .real_edges()
            .iter()
            .map(|e| {
                let ends: Vec<(usize, i64)> =
                    u.kind(e).ends().iter().map(|x| (x.vertex, u.tau(e, x.slot).value())).collect();
                point(n, &ends)
            })
            .collect(),
        PointFamily::Arc => arcs(u)?.into_iter().map(|(i, j)| point(n, &[(i, -1), (j, 1)])).collect(),
        PointFamily::DoubleArc => arcs(u)?.into_iter().map(|(i, j)| point(2 * n, &[(i, -1), (n + j, 1)])).collect(),
    };
    let rows = if family == PointFamily::DoubleArc { 1 + 2 * n } else { 1 + n };
    Ok(ExactMatrix::from_columns(rows, columns))
}

/// Whether every circle of the digraph has as many arcs each way: true iff
/// some potential p has p(head) − p(tail) = 1 on every arc.
fn all_circles_poised(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in arcs {
        adj[i].push((j, 1i64));
        adj[j].push((i, -1i64));
    }
    let mut pot: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if pot[root].is_some() {
            continue;
        }
        pot[root] = Some(0);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let pv = pot[v].expect("visited");
            for &(w, d) in &adj[v] {
                match pot[w] {
                    None => {
                        pot[w] = Some(pv + d);
                        stack.push(w);
                    }
                    Some(pw) if pw != pv + d => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

fn vertex_components(n: usize, arcs: &[(usize, usize)]) -> usize {
    let mut g = crate::graph::Graph::new(n);
    let mut s = EdgeSet::new();
    for &(i, j) in arcs {
        let kind = if i == j { EdgeKind::Loop(i) } else { EdgeKind::Link(i, j) };
        s.insert(g.add_edge(kind).expect("endpoints in range"));
    }
    components(&g, &s).parts.len()
}

/// Dimension of the point set of `family`.
///
/// Edge points give the affine dimension rk − 1 of the all-negative, gain 1
/// graph. The other families give n − b + δ, the rank of the homogenized
/// points: bidirected via balance and neutrality with gain 1, arcs via
/// n − c(Γ) plus one if some circle is unpoised, double arcs via 2n − c(Γ̃).
/// An empty edge point set has dimension −1.
pub fn polytope_dimension<G: AbelianGroup>(u: &GainSignedGraph<G>, family: PointFamily) -> Result<i64> {
    let n = u.n() as i64;
    Ok(match family {
        PointFamily::Edge => {
            let x = edge_points_graph(u)?;
            rank(&x, &x.ground()) as i64 - 1
        }
        PointFamily::Bidirected => {
            let x = unit_gain_graph(u);
            let all = x.ground();
            let b = balanced_components(x.signed(), &all).count() as i64;
            n - b + i64::from(!is_hyperbalanced(&x, &all))
        }
        PointFamily::Arc => {
            let a = arcs(u)?;
            n - vertex_components(u.n(), &a) as i64 + i64::from(!all_circles_poised(u.n(), &a))
        }
        PointFamily::DoubleArc => {
            let a: Vec<(usize, usize)> = arcs(u)?.into_iter().map(|(i, j)| (i, u.n() + j)).collect();
            2 * n - vertex_components(2 * u.n(), &a) as i64
        }
    })
}

/// Poise of a closed walk or a walk between half edges: split the edges into
/// A and B, starting with A and switching sets at each incoherent vertex
/// (where τ(u, e_i)τ(u, e_{i+1}) = +1). Poised iff the split is consistent,
/// including around the closing vertex, and |A| = |B|.
pub fn is_poised<G: AbelianGroup>(u: &GainSignedGraph<G>, w: &Walk) -> Result<bool> {
    w.validate(u.graph())?;
    let closed = w.is_closed() && !w.is_empty();
    if !closed && !w.is_half_to_half() {
        return Err(Error::MalformedWalk("poise needs a closed walk or a walk between half edges".into()));
    }
    // (edge, τ where the walk enters it, τ where it leaves it)
    let mut seq: Vec<(usize, Sign, Sign)> = Vec::new();
    if let Some(e) = w.initial() {
        seq.push((e, u.tau(e, 0), u.tau(e, 0)));
    }
    for s in w.steps() {
        seq.push((s.edge, u.tau(s.edge, s.from.slot), u.tau(s.edge, s.to.slot)));
    }
    if let Some(e) = w.terminal() {
        seq.push((e, u.tau(e, 0), u.tau(e, 0)));
    }
    let mut side: Vec<Option<bool>> = vec![None; u.m()];
    let (mut count_a, mut count_b) = (0usize, 0usize);
    let mut current = true;
    for (k, &(e, enter, _)) in seq.iter().enumerate() {
        if k > 0 {
            let leave_prev = seq[k - 1].2;
            if leave_prev * enter == Sign::Plus {
                current = !current;
            }
        }
        match side[e] {
            Some(s) if s != current => return Ok(false),
            Some(_) => {}
            None => side[e] = Some(current),
        }
        if current {
            count_a += 1;
        } else {
            count_b += 1;
        }
    }
    if closed {
        let (last, first) = (seq[seq.len() - 1].2, seq[0].1);
        let next = if last * first == Sign::Plus { !current } else { current };
        if !next {
            return Ok(false);
        }
    }
    Ok(count_a == count_b)
}
