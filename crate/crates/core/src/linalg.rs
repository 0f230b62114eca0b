//! Exact vector representation of a gain signed graph and a rank oracle.
//!
//! Row 0 of every vector is the gain coordinate; row `1 + v` belongs to
//! vertex `v`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::edge_set::EdgeSet;
use crate::error::{Error, Result};
use crate::gain::GainSignedGraph;
use crate::graph::{EdgeId, Walk};
use crate::group::{is_probable_odd_prime, AbelianGroup, Integers, IntegersMod, Rationals};
use crate::matroid::rank;
use crate::signed::Sign;

/// A field with exact arithmetic and characteristic other than 2.
pub trait ExactField: Clone + Debug + Send + Sync {
    type Scalar: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Scalar;
    fn from_i64(&self, k: i64) -> Self::Scalar;
    fn add(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;
    fn neg(&self, a: &Self::Scalar) -> Self::Scalar;
    fn mul(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;
    /// `None` for zero.
    fn inv(&self, a: &Self::Scalar) -> Option<Self::Scalar>;
    /// 0 for ℚ.
    fn characteristic(&self) -> u64;
    fn name(&self) -> String;
    fn format(&self, a: &Self::Scalar) -> String;

    fn is_zero(&self, a: &Self::Scalar) -> bool {
        *a == self.zero()
    }

    fn signed(&self, s: Sign, a: &Self::Scalar) -> Self::Scalar {
        match s {
            Sign::Plus => a.clone(),
            Sign::Minus => self.neg(a),
        }
    }

    fn rank(&self, m: &ExactMatrix<Self::Scalar>) -> usize {
        gauss_rank(self, m)
    }
}

/// ℚ with arbitrary precision; ranks are computed fraction-free.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl ExactField for RationalField {
    type Scalar = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, k: i64) -> BigRational {
        BigRational::from_integer(k.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "Q".into()
    }
    fn format(&self, a: &BigRational) -> String {
        Rationals.format(a)
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn rank(&self, m: &ExactMatrix<BigRational>) -> usize {
        rational_rank(m)
    }
}

/// 𝔽_p for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::UnsupportedField("characteristic 2".into()));
        }
        if !is_probable_odd_prime(p) {
            return Err(Error::UnsupportedField(format!("{p} is not an odd prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut a: u64, mut k: u64) -> u64 {
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &a);
            }
            a = self.mul(&a, &a);
            k >>= 1;
        }
        acc
    }
}

impl ExactField for PrimeField {
    type Scalar = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, k: i64) -> u64 {
        k.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a % self.p != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// Gain groups whose elements can be read as scalars of `F`.
pub trait EmbedsIn<F: ExactField>: AbelianGroup {
    /// Fails when the group does not embed in `field`.
    fn check_field(&self, field: &F) -> Result<()>;
    fn embed(&self, field: &F, a: &Self::Elem) -> F::Scalar;
}

impl EmbedsIn<RationalField> for Integers {
    fn check_field(&self, _: &RationalField) -> Result<()> {
        Ok(())
    }
    fn embed(&self, _: &RationalField, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
}

impl EmbedsIn<RationalField> for Rationals {
    fn check_field(&self, _: &RationalField) -> Result<()> {
        Ok(())
    }
    fn embed(&self, _: &RationalField, a: &BigRational) -> BigRational {
        a.clone()
    }
}

impl EmbedsIn<PrimeField> for IntegersMod {
    fn check_field(&self, field: &PrimeField) -> Result<()> {
        if self.modulus() == field.prime() {
            Ok(())
        } else {
            Err(Error::NotEmbeddable(format!("{} in {}", self.name(), field.name())))
        }
    }
    fn embed(&self, _: &PrimeField, a: &u64) -> u64 {
        *a
    }
}

/// A matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<S> {
    rows: usize,
    columns: Vec<Vec<S>>,
}

impl<S: Clone> ExactMatrix<S> {
    pub fn from_columns(rows: usize, columns: Vec<Vec<S>>) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length differs from row count");
        ExactMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[S] {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.columns[j][i]
    }

    /// The submatrix on the columns in `s`.
    pub fn select(&self, s: &EdgeSet) -> Self {
        ExactMatrix { rows: self.rows, columns: s.iter().map(|e| self.columns[e].clone()).collect() }
    }

    /// The matrix with row `r` dropped.
    pub fn without_row(&self, r: usize) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().enumerate().filter(|&(i, _)| i != r).map(|(_, x)| x.clone()).collect())
            .collect();
        ExactMatrix { rows: self.rows - 1, columns }
    }

    fn row_major(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.columns.iter().map(|c| c[i].clone()).collect()).collect()
    }
}

pub fn exact_rank<F: ExactField>(field: &F, m: &ExactMatrix<F::Scalar>) -> usize {
    field.rank(m)
}

/// Plain Gaussian elimination with field inverses.
fn gauss_rank<F: ExactField + ?Sized>(f: &F, m: &ExactMatrix<F::Scalar>) -> usize {
    let mut a = m.row_major();
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&a[i][c])) else { continue };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]).expect("pivot is nonzero");
        for i in r + 1..rows {
            if f.is_zero(&a[i][c]) {
                continue;
            }
            let k = f.neg(&f.mul(&a[i][c], &inv));
            for j in c..cols {
                let t = f.mul(&k, &a[r][j]);
                a[i][j] = f.add(&a[i][j], &t);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Scale each column by the lcm of its denominators, then run Bareiss
/// elimination, first in i128 and in BigInt if that overflows.
fn rational_rank(m: &ExactMatrix<BigRational>) -> usize {
    let columns: Vec<Vec<BigInt>> = m
        .columns
        .iter()
        .map(|c| {
            let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            c.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let int = ExactMatrix { rows: m.rows, columns };
    let small: Option<Vec<Vec<i128>>> =
        int.row_major().iter().map(|row| row.iter().map(|x| x.to_i128()).collect()).collect();
    if let Some(a) = small {
        if let Some(r) = bareiss_i128(a) {
            return r;
        }
    }
    bareiss_big(int.row_major())
}

fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let (mut r, mut prev) = (0, 1i128);
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let x = a[r][c].checked_mul(a[i][j])?.checked_sub(a[i][c].checked_mul(a[r][j])?)?;
                a[i][j] = x / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    Some(r)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let (mut r, mut prev) = (0, BigInt::one());
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let x = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = x / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// z(e). A negative loop gives ±2 in its row, a positive loop 0; the extra
/// point is e0.
pub fn edge_vector<G, F>(u: &GainSignedGraph<G>, e: EdgeId, field: &F) -> Result<Vec<F::Scalar>>
where
    G: EmbedsIn<F>,
    F: ExactField,
{
    u.group().check_field(field)?;
    if e >= u.m() {
        return Err(Error::EdgeOutOfRange(e));
    }
    Ok(edge_vector_unchecked(u, e, field))
}

fn edge_vector_unchecked<G: EmbedsIn<F>, F: ExactField>(u: &GainSignedGraph<G>, e: EdgeId, field: &F) -> Vec<F::Scalar> {
    let mut z = vec![field.zero(); 1 + u.n()];
    if u.is_extra(e) {
        z[0] = field.from_i64(1);
        return z;
    }
    z[0] = u.group().embed(field, u.gain(e));
    for end in u.kind(e).ends() {
        let t = field.from_i64(u.tau(e, end.slot).value());
        z[1 + end.vertex] = field.add(&z[1 + end.vertex], &t);
    }
    z
}

/// The (1+n) × |E| matrix whose column e is z(e).
pub fn incidence_matrix<G, F>(u: &GainSignedGraph<G>, field: &F) -> Result<ExactMatrix<F::Scalar>>
where
    G: EmbedsIn<F>,
    F: ExactField,
{
    u.group().check_field(field)?;
    Ok(ExactMatrix::from_columns(1 + u.n(), (0..u.m()).map(|e| edge_vector_unchecked(u, e, field)).collect()))
}

/// z(W), the signed sum of edge vectors along the walk; each edge is
/// weighted by the sign of the walk before it and its τ at the end the walk
/// leaves from.
pub fn walk_vector<G, F>(u: &GainSignedGraph<G>, w: &Walk, field: &F) -> Result<Vec<F::Scalar>>
where
    G: EmbedsIn<F>,
    F: ExactField,
{
    u.group().check_field(field)?;
    w.validate(u.graph())?;
    let mut acc = vec![field.zero(); 1 + u.n()];
    let mut add = |e: EdgeId, s: Sign| {
        for (a, x) in acc.iter_mut().zip(edge_vector_unchecked(u, e, field)) {
            *a = field.add(a, &field.signed(s, &x));
        }
    };
    if let Some(e) = w.initial() {
        add(e, u.tau(e, 0));
    }
    let mut running = Sign::Plus;
    for step in w.steps() {
        add(step.edge, -(running * u.tau(step.edge, step.from.slot)));
        running = running * u.sign(step.edge);
    }
    if let Some(e) = w.terminal() {
        add(e, -(running * u.tau(e, 0)));
    }
    Ok(acc)
}

/// Which subsets of E∞ to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetMode {
    All,
    Sample { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankMismatch {
    pub subset: EdgeSet,
    pub combinatorial: usize,
    pub matrix: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankReport {
    pub checked: usize,
    pub mismatches: Vec<RankMismatch>,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare the combinatorial rank with the rank of the column submatrix for
/// subsets of E∞ (the extra point is appended if `u` lacks it).
pub fn verify_rank_theorem<G, F>(u: &GainSignedGraph<G>, field: &F, mode: SubsetMode) -> Result<RankReport>
where
    G: EmbedsIn<F>,
    F: ExactField,
{
    let x = u.extended();
    let m = x.m();
    let matrix = incidence_matrix(&x, field)?;
    let subsets: Vec<EdgeSet> = match mode {
        SubsetMode::All => {
            if m > 24 {
                return Err(Error::Budget { what: "rank theorem subsets (edges)", needed: m, limit: 24 });
            }
            (0u64..1 << m).map(EdgeSet::from_mask).collect()
        }
        SubsetMode::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let k = rand::Rng::gen_range(&mut rng, 0..=m);
                    sample(&mut rng, m, k).into_iter().collect()
                })
                .collect()
        }
    };
    let mut mismatches: Vec<RankMismatch> = subsets
        .par_iter()
        .filter_map(|s| {
            let combinatorial = rank(&x, s);
            let matrix = field.rank(&matrix.select(s));
            (combinatorial != matrix).then(|| RankMismatch { subset: s.clone(), combinatorial, matrix })
        })
        .collect();
    mismatches.sort_by(|a, b| a.subset.cmp(&b.subset));
    Ok(RankReport { checked: subsets.len(), mismatches })
}
