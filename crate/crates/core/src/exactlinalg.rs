//! Exact sparse linear algebra over the rationals.
//!
//! Everything here works on `BigRational` entries so ranks and kernels are
//! exact. Two independent elimination routes exist:
//!
//! * [`SparseMatrix::rank`] clears denominators and runs fraction-free integer
//!   elimination on primitive sparse rows (dense Bareiss below 64×64).
//! * [`Rref`] is rational Gauss-Jordan; it produces kernels, coordinates in a
//!   subspace basis, and membership tests.
//!
//! Pivots are always taken at the lowest available column, rows are consumed
//! in index order, so every run is bit-reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

const DENSE_CUTOFF: usize = 64;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("image escapes codomain subspace (domain vector {column})")]
    ImageEscapes { column: usize },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// `x - f * y`, merged.
fn sub_scaled(x: &[(usize, Rational)], f: &Rational, y: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, -(f * &y[j].1)));
            j += 1;
        } else {
            let v = &x[i].1 - f * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Collects `(index, value)` pairs into a canonical sparse vector.
pub fn sparse_from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> SparseVec {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, v) in pairs {
        *acc.entry(i).or_insert_with(Rational::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

fn check_indices(v: &[(usize, Rational)], dim: usize) -> Result<(), LinalgError> {
    match v.iter().find(|(i, _)| *i >= dim) {
        Some(&(index, _)) => Err(LinalgError::IndexOutOfRange { index, dim }),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        SparseMatrix { nrows: n, ncols: n, rows }
    }

    /// Duplicate positions are summed; zeros are dropped.
    ///
    /// Panics if an index is out of range.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) outside {nrows}x{ncols}");
            *acc[r].entry(c).or_insert_with(Rational::zero) += v;
        }
        let rows = acc.into_iter().map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            nrows,
            ncols,
            rows.iter().enumerate().flat_map(|(r, row)| {
                assert_eq!(row.len(), ncols, "ragged dense matrix");
                row.iter().enumerate().map(move |(c, &v)| (r, c, rat(v)))
            }),
        )
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col {
                assert!(*i < nrows, "column entry {i} outside {nrows} rows");
                if !v.is_zero() {
                    rows[*i].push((j, v.clone()));
                }
            }
        }
        SparseMatrix { nrows, ncols: cols.len(), rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Rational> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |(j, _)| *j).ok().map(|k| &row[k].1)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    pub fn scale(&self, f: &Rational) -> SparseMatrix {
        if f.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let rows = self.rows.iter().map(|row| row.iter().map(|(c, v)| (*c, v * f)).collect()).collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        self.add_scaled(&-Rational::one(), other)
    }

    /// `self + f * other`.
    pub fn add_scaled(&self, f: &Rational, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let neg = -f;
        let rows = self.rows.iter().zip(&other.rows).map(|(x, y)| sub_scaled(x, &neg, y)).collect();
        Ok(SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows })
    }

    /// Matrix product `self · rhs`, i.e. the map "first `rhs`, then `self`".
    pub fn compose(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.ncols != rhs.nrows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &rhs.rows[*k] {
                        *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix { nrows: self.nrows, ncols: rhs.ncols, rows })
    }

    pub fn mul_vec(&self, v: &[(usize, Rational)]) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let (mut i, mut j) = (0, 0);
                let mut acc = Rational::zero();
                while i < row.len() && j < v.len() {
                    match row[i].0.cmp(&v[j].0) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            acc += &row[i].1 * &v[j].1;
                            i += 1;
                            j += 1;
                        }
                    }
                }
                (!acc.is_zero()).then_some((r, acc))
            })
            .collect()
    }

    /// Images of several vectors at once.
    pub fn apply(&self, vs: &[SparseVec]) -> Vec<SparseVec> {
        let cols = self.columns();
        vs.iter()
            .map(|v| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in v {
                    for (i, b) in &cols[*k] {
                        *acc.entry(*i).or_insert_with(Rational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect()
    }

    /// Exact rank, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        if self.nrows < DENSE_CUTOFF && self.ncols < DENSE_CUTOFF {
            rank_dense_bareiss(&self.rows, self.ncols)
        } else {
            rank_fraction_free(&self.rows, self.ncols)
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.ncols - self.rank()
    }

    pub fn rref(&self) -> Rref {
        Rref::from_rows(self.rows.iter().cloned(), self.ncols)
    }

    pub fn kernel(&self) -> SubspaceBasis {
        SubspaceBasis { ambient_dim: self.ncols, vectors: self.rref().kernel_vectors() }
    }

    /// Basis of the column space.
    pub fn image(&self) -> SubspaceBasis {
        let rref = Rref::from_rows(self.columns(), self.nrows);
        SubspaceBasis { ambient_dim: self.nrows, vectors: rref.into_rows() }
    }

    /// Writes `row col numerator/denominator` lines.
    pub fn write_triples<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (r, c, v) in self.triplets() {
            writeln!(w, "{} {} {}/{}", r, c, v.numer(), v.denom())?;
        }
        Ok(())
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.nrows {
            let cells: Vec<String> =
                (0..self.ncols).map(|c| self.get(r, c).map_or_else(|| "0".to_string(), |v| v.to_string())).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn primitive_int_row(row: &[(usize, Rational)]) -> IntRow {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out: IntRow = row.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
}

/// `p * x - q * y` with both inputs sharing their leading column, which cancels.
fn int_combine(p: &BigInt, x: &IntRow, q: &BigInt, y: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push((x[i].0, p * &x[i].1));
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, -(q * &y[j].1)));
            j += 1;
        } else {
            let v = p * &x[i].1 - q * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sparse fraction-free echelon: rows are kept primitive over the integers
/// and each incoming row is reduced on its leading entry until it either
/// vanishes or opens a new pivot column.
pub fn rank_fraction_free(rows: &[SparseVec], ncols: usize) -> usize {
    let mut pivots: Vec<Option<IntRow>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        let mut v = primitive_int_row(row);
        while let Some((c, lead)) = v.first().cloned() {
            match &pivots[c] {
                Some(p) => {
                    let g = lead.gcd(&p[0].1);
                    let pm = &p[0].1 / &g;
                    let vm = &lead / &g;
                    v = int_combine(&pm, &v, &vm, p);
                    make_primitive(&mut v);
                }
                None => {
                    pivots[c] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Dense Bareiss elimination with column skipping.
pub fn rank_dense_bareiss(rows: &[SparseVec], ncols: usize) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let ints = primitive_int_row(row);
            let mut dense = vec![BigInt::zero(); ncols];
            for (c, v) in ints {
                dense[c] = v;
            }
            dense
        })
        .collect();
    let m = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            for j in c + 1..ncols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of a family of vectors in a space of dimension `dim`.
pub fn rank_of_vectors(vs: &[SparseVec], dim: usize) -> usize {
    rank_fraction_free(vs, dim)
}

/// Reduced row echelon form over the rationals: monic pivot rows, each pivot
/// column cleared in every other row.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    rows: Vec<(usize, SparseVec)>,
}

impl Rref {
    pub fn from_rows<I: IntoIterator<Item = SparseVec>>(rows: I, ncols: usize) -> Rref {
        let mut table: Vec<Option<SparseVec>> = vec![None; ncols];
        for mut v in rows {
            while let Some((c, lead)) = v.first().cloned() {
                match &table[c] {
                    Some(p) => v = sub_scaled(&v, &lead, p),
                    None => {
                        let inv = lead.recip();
                        for (_, x) in v.iter_mut() {
                            *x *= &inv;
                        }
                        table[c] = Some(v);
                        break;
                    }
                }
            }
        }
        // back-substitution, highest pivot first so later rows are already reduced
        for c in (0..ncols).rev() {
            let Some(mut row) = table[c].take() else { continue };
            let hits: Vec<(usize, Rational)> =
                row.iter().skip(1).filter(|(j, _)| table[*j].is_some()).cloned().collect();
            for (j, f) in hits {
                row = sub_scaled(&row, &f, table[j].as_ref().unwrap());
            }
            table[c] = Some(row);
        }
        let rows = table.into_iter().enumerate().filter_map(|(c, r)| r.map(|r| (c, r))).collect();
        Rref { ncols, rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows.into_iter().map(|(_, r)| r).collect()
    }

    /// Fully reduces `v`; the result is zero iff `v` lies in the row space.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut v: SparseVec = v.to_vec();
        for (c, row) in &self.rows {
            if let Ok(k) = v.binary_search_by_key(c, |(j, _)| *j) {
                let f = v[k].1.clone();
                v = sub_scaled(&v, &f, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// One null-space vector per free column, in column order.
    pub fn kernel_vectors(&self) -> Vec<SparseVec> {
        let mut is_pivot = vec![false; self.ncols];
        for (c, _) in &self.rows {
            is_pivot[*c] = true;
        }
        let mut kernel: Vec<SparseVec> =
            (0..self.ncols).map(|f| if is_pivot[f] { Vec::new() } else { vec![(f, Rational::one())] }).collect();
        for (p, row) in &self.rows {
            for (f, v) in row.iter().skip(1) {
                kernel[*f].push((*p, -v));
            }
        }
        kernel
            .into_iter()
            .enumerate()
            .filter(|(f, _)| !is_pivot[*f])
            .map(|(_, mut v)| {
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect()
    }
}

/// A linearly independent family of vectors in `Q^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<SparseVec>,
}

impl SubspaceBasis {
    pub fn new(ambient_dim: usize, vectors: Vec<SparseVec>) -> Result<Self, LinalgError> {
        for v in &vectors {
            check_indices(v, ambient_dim)?;
        }
        if rank_of_vectors(&vectors, ambient_dim) != vectors.len() {
            return Err(LinalgError::Dependent);
        }
        Ok(SubspaceBasis { ambient_dim, vectors })
    }

    /// Basis of the span of arbitrary (possibly dependent) vectors.
    pub fn spanned_by(ambient_dim: usize, vectors: Vec<SparseVec>) -> Result<Self, LinalgError> {
        for v in &vectors {
            check_indices(v, ambient_dim)?;
        }
        let rref = Rref::from_rows(vectors, ambient_dim);
        Ok(SubspaceBasis { ambient_dim, vectors: rref.into_rows() })
    }

    pub fn full(dim: usize) -> Self {
        Self::coordinate(dim, 0..dim)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis { ambient_dim, vectors: Vec::new() }
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate<I: IntoIterator<Item = usize>>(ambient_dim: usize, indices: I) -> Self {
        let vectors = indices
            .into_iter()
            .map(|i| {
                assert!(i < ambient_dim);
                vec![(i, Rational::one())]
            })
            .collect();
        SubspaceBasis { ambient_dim, vectors }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    /// The `ambient_dim × dim` matrix with the basis vectors as columns.
    pub fn to_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient_dim, &self.vectors)
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        Rref::from_rows(self.vectors.iter().cloned(), self.ambient_dim).contains(v)
    }

    /// Coordinates of each target in this basis. Fails with
    /// [`LinalgError::ImageEscapes`] on the first target outside the span.
    pub fn coordinates(&self, targets: &[SparseVec]) -> Result<Vec<SparseVec>, LinalgError> {
        let k = self.dim();
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.ambient_dim];
        for (j, v) in self.vectors.iter().chain(targets).enumerate() {
            check_indices(v, self.ambient_dim)?;
            for (i, x) in v {
                rows[*i].push((j, x.clone()));
            }
        }
        let rref = Rref::from_rows(rows, k + targets.len());
        let pivots = rref.pivot_columns();
        if let Some(&p) = pivots.iter().find(|&&p| p >= k) {
            return Err(LinalgError::ImageEscapes { column: p - k });
        }
        if pivots.len() != k {
            return Err(LinalgError::Dependent);
        }
        let mut coords: Vec<SparseVec> = vec![Vec::new(); targets.len()];
        for (i, row) in rref.rows().enumerate() {
            for (c, v) in row.iter().skip(1) {
                coords[c - k].push((i, v.clone()));
            }
        }
        Ok(coords)
    }

    /// Direct sum of the two spans (as a spanning set reduced to a basis).
    pub fn join(&self, other: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let all = self.vectors.iter().chain(&other.vectors).cloned().collect();
        Self::spanned_by(self.ambient_dim, all)
    }
}

/// Whether two subspaces have the same span, by rank of the union.
pub fn subspace_equal(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<bool, LinalgError> {
    if a.ambient_dim != b.ambient_dim {
        return Err(LinalgError::AmbientMismatch(a.ambient_dim, b.ambient_dim));
    }
    let ra = rank_of_vectors(&a.vectors, a.ambient_dim);
    let rb = rank_of_vectors(&b.vectors, b.ambient_dim);
    if ra != rb {
        return Ok(false);
    }
    let union: Vec<SparseVec> = a.vectors.iter().chain(&b.vectors).cloned().collect();
    Ok(rank_of_vectors(&union, a.ambient_dim) == ra)
}

/// The matrix of `m` on `dom`, written in `cod` coordinates.
pub fn restrict(m: &SparseMatrix, dom: &SubspaceBasis, cod: &SubspaceBasis) -> Result<SparseMatrix, LinalgError> {
    if m.ncols() != dom.ambient_dim() || m.nrows() != cod.ambient_dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{}x{} map between ambient spaces of dims {} and {}",
            m.nrows(),
            m.ncols(),
            dom.ambient_dim(),
            cod.ambient_dim()
        )));
    }
    let images = m.apply(dom.vectors());
    let coords = cod.coordinates(&images)?;
    Ok(SparseMatrix::from_columns(cod.dim(), &coords))
}
