//! Geometric oracles that look only at hyperplane equations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{exact_rank, ExactMatrix, RationalField};

use super::{Hyperplane, IntPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellCount {
    pub regions: usize,
    pub bounded: usize,
}

type Line = (Vec<BigRational>, BigRational);

/// Count regions of a real arrangement in dimension 1 or 2 by collecting the
/// sign vectors of sample points, one in every cell of the complement.
///
/// In the plane, every region meets a vertical line through a sample x lying
/// strictly between consecutive critical abscissae (vertices and vertical
/// lines), so sampling each gap between the lines crossing those verticals
/// finds them all. A region is unbounded exactly when some sample of it lies
/// in an outermost column or at the top or bottom of a column.
pub fn enumerate_cells(hyperplanes: &[Hyperplane], n: usize) -> Result<CellCount> {
    let mut lines: Vec<Line> = Vec::new();
    for h in hyperplanes {
        match h {
            Hyperplane::Degenerate { edge } => return Err(Error::DegenerateArrangement(*edge)),
            Hyperplane::Phantom { .. } | Hyperplane::Infinity => {}
            Hyperplane::Proper { .. } => lines.push(h.equation(n).expect("proper hyperplanes have equations")),
        }
    }
    match n {
        1 => Ok(cells_on_line(&lines)),
        2 => Ok(cells_in_plane(&lines)),
        _ => Err(Error::Invalid(format!("cell enumeration needs n = 1 or 2, got {n}"))),
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Points strictly between consecutive values, plus one beyond each end.
/// Returns `(point, outermost)`.
fn gaps(mut xs: Vec<BigRational>) -> Vec<(BigRational, bool)> {
    xs.sort();
    xs.dedup();
    if xs.is_empty() {
        return vec![(BigRational::zero(), true)];
    }
    let one = BigRational::one();
    let mut out = vec![(&xs[0] - &one, true)];
    for w in xs.windows(2) {
        out.push(((&w[0] + &w[1]) * half(), false));
    }
    out.push((xs.last().expect("nonempty") + &one, true));
    out
}

fn sign_vector(lines: &[Line], p: &[BigRational]) -> Vec<bool> {
    lines
        .iter()
        .map(|(a, c)| {
            let v: BigRational = a.iter().zip(p).map(|(x, y)| x * y).sum::<BigRational>() - c;
            debug_assert!(!v.is_zero(), "sample point on a hyperplane");
            v.is_positive()
        })
        .collect()
}

fn count(samples: Vec<(Vec<bool>, bool)>) -> CellCount {
    let all: BTreeSet<Vec<bool>> = samples.iter().map(|s| s.0.clone()).collect();
    let unbounded: BTreeSet<Vec<bool>> = samples.into_iter().filter(|s| s.1).map(|s| s.0).collect();
    CellCount { regions: all.len(), bounded: all.len() - unbounded.len() }
}

fn cells_on_line(lines: &[Line]) -> CellCount {
    let roots = lines.iter().map(|(a, c)| c / &a[0]).collect();
    count(gaps(roots).into_iter().map(|(x, out)| (sign_vector(lines, &[x]), out)).collect())
}

fn cells_in_plane(lines: &[Line]) -> CellCount {
    let mut critical = Vec::new();
    for (i, (a, c)) in lines.iter().enumerate() {
        if a[1].is_zero() {
            critical.push(c / &a[0]);
        }
        for (b, d) in &lines[i + 1..] {
            let det = &a[0] * &b[1] - &a[1] * &b[0];
            if !det.is_zero() {
                critical.push((c * &b[1] - &a[1] * d) / det);
            }
        }
    }
    let mut samples = Vec::new();
    for (x, outer_column) in gaps(critical) {
        let ys = lines
            .iter()
            .filter(|(a, _)| !a[1].is_zero())
            .map(|(a, c)| (c - &a[0] * &x) / &a[1])
            .collect();
        for (y, outer_row) in gaps(ys) {
            samples.push((sign_vector(lines, &[x.clone(), y]), outer_column || outer_row));
        }
    }
    count(samples)
}

fn rank_of_rows(rows: &[Vec<BigRational>], width: usize) -> usize {
    let columns = (0..width).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
    exact_rank(&RationalField, &ExactMatrix::from_columns(rows.len(), columns))
}

/// p(A; λ) = Σ over subsets with nonempty intersection of (−1)^|S| λ^{dim},
/// solving each linear system exactly. h∞ is skipped.
pub fn affine_characteristic_polynomial(hyperplanes: &[Hyperplane], n: usize) -> Result<IntPolynomial> {
    let eqs: Vec<Line> = hyperplanes.iter().filter_map(|h| h.equation(n)).collect();
    if eqs.len() > 20 {
        return Err(Error::Budget { what: "intersection subsets (hyperplanes)", needed: eqs.len(), limit: 20 });
    }
    let mut p = IntPolynomial::zero();
    for mask in 0u32..1 << eqs.len() {
        let chosen: Vec<&Line> = (0..eqs.len()).filter(|i| mask >> i & 1 == 1).map(|i| &eqs[i]).collect();
        let a: Vec<Vec<BigRational>> = chosen.iter().map(|(row, _)| row.clone()).collect();
        let aug: Vec<Vec<BigRational>> =
            chosen.iter().map(|(row, c)| row.iter().cloned().chain([c.clone()]).collect()).collect();
        let r = rank_of_rows(&a, n);
        if r == rank_of_rows(&aug, n + 1) {
            p.add_term((n - r) as i32, if chosen.len() % 2 == 0 { 1 } else { -1 });
        }
    }
    Ok(p)
}

/// Characteristic polynomial of the central arrangement in ℝ^{1+n} obtained by
/// homogenizing every hyperplane and adding x_0 = 0 for h∞ and phantoms.
pub fn cone_characteristic_polynomial(hyperplanes: &[Hyperplane], n: usize) -> Result<IntPolynomial> {
    if hyperplanes.len() > 20 {
        return Err(Error::Budget { what: "intersection subsets (hyperplanes)", needed: hyperplanes.len(), limit: 20 });
    }
    let normals: Vec<Vec<BigRational>> = hyperplanes
        .iter()
        .map(|h| {
            let (row, c) = h.equation(n).unwrap_or_else(|| (vec![BigRational::zero(); n], BigRational::one()));
            std::iter::once(-c).chain(row).collect()
        })
        .collect();
    let mut p = IntPolynomial::zero();
    for mask in 0u32..1 << normals.len() {
        let rows: Vec<Vec<BigRational>> =
            (0..normals.len()).filter(|i| mask >> i & 1 == 1).map(|i| normals[i].clone()).collect();
        let r = rank_of_rows(&rows, n + 1);
        p.add_term((n + 1 - r) as i32, if rows.len() % 2 == 0 { 1 } else { -1 });
    }
    Ok(p)
}
