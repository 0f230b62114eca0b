//! Affinographic hyperplane arrangements of gain signed graphs.

mod cells;
mod family;
mod polynomial;
mod polytope;

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::gain::GainSignedGraph;
use crate::graph::{EdgeId, VertexId};
use crate::group::{rational_to_string, RationalEmbedding};

pub use cells::{affine_characteristic_polynomial, cone_characteristic_polynomial, enumerate_cells, CellCount};
pub use family::{generate_family, Family, FamilySpec, SignPattern};
pub use polynomial::{
    chromatic_polynomials, chromatic_polynomials_by_flats, count_regions, ChromaticPolynomials, IntPolynomial,
    RegionCounts,
};
pub use polytope::{
    double_arc_graph, edge_points_graph, is_poised, polytope_dimension, polytope_points, unit_gain_graph,
    PointFamily,
};

/// h(e): τ(vi,e)xi + τ(vj,e)xj = −φ(e), or one of the honorary hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hyperplane {
    /// `Σ coeffs[k].1 · x[coeffs[k].0] = constant`, coefficients nonzero.
    Proper {
        edge: EdgeId,
        coeffs: Vec<(VertexId, i64)>,
        constant: BigRational,
    },
    /// 0 = 0: the whole space.
    Degenerate { edge: EdgeId },
    /// 0 = c ≠ 0: empty in affine space, the ideal hyperplane projectively.
    Phantom { edge: EdgeId },
    /// h∞, the hyperplane of the extra point.
    Infinity,
}

impl Hyperplane {
    pub fn edge(&self) -> Option<EdgeId> {
        match self {
            Hyperplane::Proper { edge, .. } | Hyperplane::Degenerate { edge } | Hyperplane::Phantom { edge } => Some(*edge),
            Hyperplane::Infinity => None,
        }
    }

    /// Coefficient row over x_0..x_{n-1} and the right-hand side.
    pub fn equation(&self, n: usize) -> Option<(Vec<BigRational>, BigRational)> {
        let one = |c: i64| BigRational::from_integer(c.into());
        match self {
            Hyperplane::Proper { coeffs, constant, .. } => {
                let mut row = vec![BigRational::zero(); n];
                for &(v, c) in coeffs {
                    row[v] = one(c);
                }
                Some((row, constant.clone()))
            }
            Hyperplane::Degenerate { .. } => Some((vec![BigRational::zero(); n], BigRational::zero())),
            Hyperplane::Phantom { .. } => Some((vec![BigRational::zero(); n], one(1))),
            Hyperplane::Infinity => None,
        }
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hyperplane::Proper { coeffs, constant, .. } => {
                for (k, &(v, c)) in coeffs.iter().enumerate() {
                    let sign = match (k, c < 0) {
                        (0, true) => "-",
                        (0, false) => "",
                        (_, true) => " - ",
                        (_, false) => " + ",
                    };
                    let mag = c.abs();
                    if mag == 1 {
                        write!(f, "{sign}x{v}")?;
                    } else {
                        write!(f, "{sign}{mag}x{v}")?;
                    }
                }
                write!(f, " = {}", rational_to_string(constant))
            }
            Hyperplane::Degenerate { .. } => f.write_str("0 = 0"),
            Hyperplane::Phantom { .. } => f.write_str("phantom"),
            Hyperplane::Infinity => f.write_str("infinity"),
        }
    }
}

/// A[Υ], one hyperplane per edge; the extra point (if present) gives h∞.
pub fn build_arrangement<G: RationalEmbedding>(u: &GainSignedGraph<G>) -> Vec<Hyperplane> {
    (0..u.m())
        .map(|e| {
            if u.is_extra(e) {
                return Hyperplane::Infinity;
            }
            let mut coeffs: Vec<(VertexId, i64)> = Vec::with_capacity(2);
            for end in u.kind(e).ends() {
                let t = u.tau(e, end.slot).value();
                match coeffs.iter_mut().find(|x| x.0 == end.vertex) {
                    Some(x) => x.1 += t,
                    None => coeffs.push((end.vertex, t)),
                }
            }
            coeffs.retain(|x| x.1 != 0);
            coeffs.sort_unstable();
            let constant = -u.group().to_rational(u.gain(e));
            match (coeffs.is_empty(), constant.is_zero()) {
                (false, _) => Hyperplane::Proper { edge: e, coeffs, constant },
                (true, true) => Hyperplane::Degenerate { edge: e },
                (true, false) => Hyperplane::Phantom { edge: e },
            }
        })
        .collect()
}
