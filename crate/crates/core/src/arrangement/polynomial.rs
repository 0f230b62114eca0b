use std::fmt;

use rayon::prelude::*;

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::gain::{gain_potential, GainSignedGraph};
use crate::group::{AbelianGroup, RationalEmbedding};
use crate::matroid::{closure, flats, rank, Budget};

use super::{build_arrangement, Hyperplane};

/// A polynomial in λ with integer coefficients. Negative powers are allowed
/// because χ_Υ can pick up a λ^−1 term from subsets of rank n + 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    /// Exponent of `coeffs[0]`.
    low: i32,
    coeffs: Vec<i128>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn monomial(c: i128, exp: i32) -> Self {
        let mut p = IntPolynomial::zero();
        p.add_term(exp, c);
        p
    }

    /// Build from `(exponent, coefficient)` pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i128)>) -> Self {
        let mut p = IntPolynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, c: i128) {
        if c == 0 {
            return;
        }
        if self.coeffs.is_empty() {
            self.low = exp;
            self.coeffs.push(c);
            return;
        }
        if exp < self.low {
            let pad = (self.low - exp) as usize;
            self.coeffs.splice(0..0, std::iter::repeat(0).take(pad));
            self.low = exp;
        }
        let k = (exp - self.low) as usize;
        if k >= self.coeffs.len() {
            self.coeffs.resize(k + 1, 0);
        }
        self.coeffs[k] += c;
        self.trim();
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i128 {
        if exp < self.low {
            return 0;
        }
        self.coeffs.get((exp - self.low) as usize).copied().unwrap_or(0)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// `(exponent, coefficient)` for every nonzero term, lowest first.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.coeffs.iter().enumerate().filter(|x| *x.1 != 0).map(|(k, &c)| (self.low + k as i32, c))
    }

    /// Value at an integer. Negative powers are only defined at ±1.
    pub fn eval(&self, x: i128) -> i128 {
        assert!(self.low >= 0 || x.abs() == 1, "negative power at {x}");
        self.terms()
            .map(|(e, c)| {
                let p = if x.abs() == 1 { x.pow(e.unsigned_abs() % 2) } else { x.pow(e as u32) };
                c * p
            })
            .sum()
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<_> = self.terms().collect();
        for (k, &(e, c)) in terms.iter().rev().enumerate() {
            let sign = match (k, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = c.abs();
            let var = match e {
                0 => String::new(),
                1 => "λ".into(),
                _ => format!("λ^{e}"),
            };
            match (mag, var.is_empty()) {
                (1, false) => write!(f, "{sign}{var}")?,
                _ => write!(f, "{sign}{mag}{var}")?,
            }
        }
        Ok(())
    }
}

/// χ_Υ, χ^b_Υ and χ_Υ∞. The last counts λ^{n+1−rk}: A∞ lives in a space of
/// dimension 1 + n, which makes it equal to (λ − 1)·χ^b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticPolynomials {
    pub chi: IntPolynomial,
    pub chi_balanced: IntPolynomial,
    pub chi_infinity: IntPolynomial,
}

fn sign(k: usize) -> i128 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Subset expansion over E∞ (2^{|E|+1} rank evaluations).
pub fn chromatic_polynomials<G: AbelianGroup>(u: &GainSignedGraph<G>, budget: &Budget) -> Result<ChromaticPolynomials> {
    let plain = real_part(u);
    budget.check("chromatic polynomial subsets (edges)", plain.m(), budget.max_edges)?;
    let x = plain.extended();
    let inf = x.extra_point().expect("extended graph has e∞");
    let n = x.n() as i32;
    let terms: Vec<(Option<i32>, Option<i32>, i32, i128)> = (0u64..1 << x.m())
        .into_par_iter()
        .map(|mask| {
            let s = EdgeSet::from_mask(mask);
            let p = gain_potential(&x, &s);
            let rk = (x.n() - p.balance.count() + usize::from(p.theta.is_none())) as i32;
            let c = sign(s.len());
            if s.contains(inf) {
                (None, None, n + 1 - rk, c)
            } else {
                (Some(n - rk), p.theta.is_some().then_some(n - rk), n + 1 - rk, c)
            }
        })
        .collect();
    let mut out = ChromaticPolynomials {
        chi: IntPolynomial::zero(),
        chi_balanced: IntPolynomial::zero(),
        chi_infinity: IntPolynomial::zero(),
    };
    for (chi, bal, inf_exp, c) in terms {
        if let Some(e) = chi {
            out.chi.add_term(e, c);
        }
        if let Some(e) = bal {
            out.chi_balanced.add_term(e, c);
        }
        out.chi_infinity.add_term(inf_exp, c);
    }
    Ok(out)
}

/// `u` without its extra point, if it has one.
fn real_part<G: AbelianGroup>(u: &GainSignedGraph<G>) -> GainSignedGraph<G> {
    match u.extra_point() {
        None => u.clone(),
        Some(e) => crate::matroid::delete(u, &EdgeSet::from_iter([e])).expect("extra point exists").graph,
    }
}

/// Σ over flats of μ(cl ∅, F) λ^{top − rk F}, or 0 when cl ∅ is nonempty.
fn mobius_sum<G: AbelianGroup>(
    u: &GainSignedGraph<G>,
    top: i32,
    keep: impl Fn(&EdgeSet) -> bool,
    budget: &Budget,
) -> Result<IntPolynomial> {
    if !closure(u, &EdgeSet::new()).is_empty() {
        return Ok(IntPolynomial::zero());
    }
    let mut fl: Vec<(usize, EdgeSet)> = flats(u, false, budget)?.into_iter().map(|(f, _)| (rank(u, &f), f)).collect();
    fl.sort();
    let mut mu: Vec<i128> = Vec::with_capacity(fl.len());
    let mut out = IntPolynomial::zero();
    for (i, (r, f)) in fl.iter().enumerate() {
        let m = if i == 0 { 1 } else { -(0..i).filter(|&j| fl[j].1.is_subset(f)).map(|j| mu[j]).sum::<i128>() };
        mu.push(m);
        if keep(f) {
            out.add_term(top - *r as i32, m);
        }
    }
    Ok(out)
}

/// The same polynomials from the Möbius function of the lattice of flats.
pub fn chromatic_polynomials_by_flats<G: AbelianGroup>(
    u: &GainSignedGraph<G>,
    budget: &Budget,
) -> Result<ChromaticPolynomials> {
    let plain = real_part(u);
    let n = plain.n() as i32;
    let hb = |f: &EdgeSet| gain_potential(&plain, f).theta.is_some();
    Ok(ChromaticPolynomials {
        chi: mobius_sum(&plain, n, |_| true, budget)?,
        chi_balanced: mobius_sum(&plain, n, hb, budget)?,
        chi_infinity: mobius_sum(&plain.extended(), n + 1, |_| true, budget)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionCounts {
    /// Regions of A[Υ]: (−1)^n χ^b(−1).
    pub regions: i128,
    /// Bounded regions; 0 unless the arrangement is essential.
    pub bounded: i128,
    /// Regions bounded modulo the lineality space: (−1)^r χ^b(1), where r is
    /// the rank of the arrangement. Equals `bounded` when r = n.
    pub relatively_bounded: i128,
    /// Regions of A∞ in ℝ^{1+n}: (−1)^{n+1} χ_Υ∞(−1).
    pub regions_infinity: i128,
    /// Rank of the arrangement, the largest rank of a hyperbalanced set.
    pub rank: usize,
}

/// Region counts of the real arrangement A[Υ]. Fails on degenerate
/// hyperplanes (neutral loose edges, neutral positive loops).
pub fn count_regions<G: RationalEmbedding>(u: &GainSignedGraph<G>, budget: &Budget) -> Result<RegionCounts> {
    let plain = real_part(u);
    if let Some(h) = build_arrangement(&plain).iter().find(|h| matches!(h, Hyperplane::Degenerate { .. })) {
        return Err(Error::DegenerateArrangement(h.edge().expect("degenerate hyperplanes come from edges")));
    }
    let polys = chromatic_polynomials(&plain, budget)?;
    let n = plain.n() as i32;
    let r = n - polys.chi_balanced.low_degree().unwrap_or(n);
    let rank = (0u64..1 << plain.m())
        .into_par_iter()
        .filter_map(|mask| {
            let s = EdgeSet::from_mask(mask);
            let p = gain_potential(&plain, &s);
            p.theta.is_some().then(|| plain.n() - p.balance.count())
        })
        .max()
        .unwrap_or(0);
    debug_assert_eq!(rank as i32, r);
    let parity = |k: i32| if k % 2 == 0 { 1 } else { -1 };
    let relatively_bounded = parity(rank as i32) * polys.chi_balanced.eval(1);
    Ok(RegionCounts {
        regions: parity(n) * polys.chi_balanced.eval(-1),
        bounded: if rank as i32 == n { relatively_bounded } else { 0 },
        relatively_bounded,
        regions_infinity: parity(n + 1) * polys.chi_infinity.eval(-1),
        rank,
    })
}
