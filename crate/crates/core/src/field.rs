//! Exact dense linear algebra over GF(p) and the rationals.
//!
//! Everything downstream (boundary ranks, infimum/supremum subcomplexes,
//! homology bases, induced maps) goes through Gaussian elimination in this
//! module. Pivots are always the first nonzero entry in column order, so the
//! bases returned here are reproducible for a fixed input.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unknown field '{0}' (expected gf2, gfp:<p> or rational)")]
    UnknownField(String),
}

/// The coefficient field of every chain complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Gf2,
    /// Prime field of order `p`, `2 <= p < 2^31`.
    Gfp(u32),
    Rational,
}

/// A field element. Modular values are always reduced into `0..p`,
/// rationals are kept in lowest terms by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u32),
    Rat(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn gfp(p: u64) -> Result<Self, LinalgError> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(if p == 2 {
            FieldSpec::Gf2
        } else {
            FieldSpec::Gfp(p as u32)
        })
    }

    /// The characteristic, 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Gf2 => 2,
            FieldSpec::Gfp(p) => *p,
            FieldSpec::Rational => 0,
        }
    }

    fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Gf2 => Some(2),
            FieldSpec::Gfp(p) => Some(*p as u64),
            FieldSpec::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.modulus() {
            Some(_) => Scalar::Mod(0),
            None => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self.modulus() {
            Some(_) => Scalar::Mod(1),
            None => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.modulus() {
            Some(p) => Scalar::Mod((v.rem_euclid(p as i64)) as u32),
            None => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self.modulus() {
            Some(_) => {
                let d = self.from_i64(den);
                let inv = self
                    .inv(&d)
                    .expect("denominator divisible by the characteristic");
                self.mul(&self.from_i64(num), &inv)
            }
            None => Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                let p = self.modulus().expect("modular scalar in rational field");
                Scalar::Mod(((*x as u64 + *y as u64) % p) as u32)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Mod(x) => {
                let p = self.modulus().expect("modular scalar in rational field");
                Scalar::Mod(((p - *x as u64) % p) as u32)
            }
            Scalar::Rat(x) => Scalar::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                let p = self.modulus().expect("modular scalar in rational field");
                Scalar::Mod(((*x as u64 * *y as u64) % p) as u32)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed scalar kinds"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Scalar::Mod(x) => {
                let p = self.modulus().expect("modular scalar in rational field");
                // Fermat: x^(p-2)
                let mut result = 1u64;
                let mut base = *x as u64 % p;
                let mut e = p - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        result = result * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Some(Scalar::Mod(result as u32))
            }
            Scalar::Rat(x) => Some(Scalar::Rat(x.recip())),
        }
    }

    /// `a + c * b`, the elimination workhorse.
    fn axpy(&self, a: &Scalar, c: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.mul(c, b))
    }

    pub fn zero_vector(&self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    pub fn unit_vector(&self, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector(n);
        v[i] = self.one();
        v
    }

    pub fn is_zero_vector(&self, v: &[Scalar]) -> bool {
        v.iter().all(|a| self.is_zero(a))
    }

    /// Renders a scalar compactly, e.g. `3`, `-1/2`.
    pub fn display(&self, a: &Scalar) -> String {
        match a {
            Scalar::Mod(v) => v.to_string(),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Sign of a rational scalar (`None` in positive characteristic).
    pub fn signum(&self, a: &Scalar) -> Option<i32> {
        match a {
            Scalar::Rat(r) if r.is_positive() => Some(1),
            Scalar::Rat(r) if r.is_negative() => Some(-1),
            Scalar::Rat(_) => Some(0),
            Scalar::Mod(_) => None,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Gf2 => write!(f, "gf2"),
            FieldSpec::Gfp(p) => write!(f, "gfp:{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "gf2" => Ok(FieldSpec::Gf2),
            "rational" | "q" => Ok(FieldSpec::Rational),
            _ => match s.strip_prefix("gfp:") {
                Some(p) => {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| LinalgError::UnknownField(s.clone()))?;
                    FieldSpec::gfp(p)
                }
                None => Err(LinalgError::UnknownField(s)),
            },
        }
    }
}

/// Dense row-major matrix of field scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl FieldMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from integer rows (reduced into the field).
    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero_vector(&self.entries)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.axpy(&acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let f = self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let v = f.axpy(out.get(i, j), a, b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.entries.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                for j in c..m.cols {
                    let v = f.axpy(m.get(i, j), &neg, m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }
}

/// Dimension of the column space.
pub fn rank(m: &FieldMatrix) -> usize {
    m.rref().1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column of the RREF.
pub fn kernel_basis(m: &FieldMatrix) -> SubspaceBasis {
    let f = m.field;
    let (r, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = f.unit_vector(m.cols, free);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            v
        })
        .collect();
    SubspaceBasis {
        field: f,
        ambient_dim: m.cols,
        vectors,
    }
}

/// The original pivot columns of `m`, a basis of its column space.
pub fn image_basis(m: &FieldMatrix) -> SubspaceBasis {
    let (_, pivots) = m.rref();
    SubspaceBasis {
        field: m.field,
        ambient_dim: m.rows,
        vectors: pivots.iter().map(|&c| m.column(c)).collect(),
    }
}

/// Basis of `span(a) ∩ span(b)`.
pub fn subspace_intersect(
    a: &SubspaceBasis,
    b: &SubspaceBasis,
) -> Result<SubspaceBasis, LinalgError> {
    a.check_compatible(b)?;
    a.intersect(b)
}

/// Basis of `{x : m x ∈ span(s)}`.
pub fn preimage_basis(m: &FieldMatrix, s: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
    if s.ambient_dim != m.rows {
        return Err(LinalgError::AmbientMismatch {
            left: m.rows,
            right: s.ambient_dim,
        });
    }
    if s.field != m.field {
        return Err(LinalgError::FieldMismatch {
            left: m.field,
            right: s.field,
        });
    }
    let f = m.field;
    // kernel of [m | -S]; project onto the first m.cols coordinates.
    let mut columns: Vec<Vec<Scalar>> = (0..m.cols).map(|j| m.column(j)).collect();
    columns.extend(
        s.vectors
            .iter()
            .map(|v| v.iter().map(|x| f.neg(x)).collect()),
    );
    let stacked = FieldMatrix::from_columns(f, m.rows, &columns);
    let k = kernel_basis(&stacked);
    let projected = k.vectors.into_iter().map(|v| v[..m.cols].to_vec());
    // Projection is injective because the vectors of s are independent.
    Ok(SubspaceBasis::from_spanning(f, m.cols, projected))
}

/// A linearly independent list of vectors in `F^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    field: FieldSpec,
    ambient_dim: usize,
    vectors: Vec<Vec<Scalar>>,
}

impl SubspaceBasis {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        SubspaceBasis {
            field,
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Self::coordinate(field, ambient_dim, 0..ambient_dim)
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(
        field: FieldSpec,
        ambient_dim: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        SubspaceBasis {
            field,
            ambient_dim,
            vectors: idx
                .into_iter()
                .map(|i| field.unit_vector(ambient_dim, i))
                .collect(),
        }
    }

    /// Keeps, in order, each vector independent of the ones kept before it.
    pub fn from_spanning(
        field: FieldSpec,
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = Vec<Scalar>>,
    ) -> Self {
        let mut elim = Eliminator::new(field, ambient_dim);
        let mut kept = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
            if elim.insert(&v) {
                kept.push(v);
            }
        }
        SubspaceBasis {
            field,
            ambient_dim,
            vectors: kept,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<Scalar>> {
        self.vectors
    }

    fn check_compatible(&self, other: &SubspaceBasis) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    fn eliminator(&self) -> Eliminator {
        let mut e = Eliminator::new(self.field, self.ambient_dim);
        for v in &self.vectors {
            e.insert(v);
        }
        e
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.eliminator().reduces_to_zero(v)
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        if self.check_compatible(other).is_err() {
            return false;
        }
        let e = other.eliminator();
        self.vectors.iter().all(|v| e.reduces_to_zero(v))
    }

    /// Span equality by mutual containment.
    pub fn span_eq(&self, other: &SubspaceBasis) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// Basis of `span(self) + span(other)`: self's vectors followed by the
    /// independent remainder of other's.
    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
        self.check_compatible(other)?;
        Ok(SubspaceBasis::from_spanning(
            self.field,
            self.ambient_dim,
            self.vectors.iter().chain(other.vectors.iter()).cloned(),
        ))
    }

    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
        self.check_compatible(other)?;
        let f = self.field;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(SubspaceBasis::zero(f, self.ambient_dim));
        }
        // Solve A x = B y via the kernel of [A | -B]; A x spans the intersection.
        let mut columns = self.vectors.clone();
        columns.extend(
            other
                .vectors
                .iter()
                .map(|v| v.iter().map(|x| f.neg(x)).collect()),
        );
        let stacked = FieldMatrix::from_columns(f, self.ambient_dim, &columns);
        let k = kernel_basis(&stacked);
        let a = FieldMatrix::from_columns(f, self.ambient_dim, &self.vectors);
        let vectors = k.vectors.iter().map(|x| a.mul_vec(&x[..self.dim()]));
        Ok(SubspaceBasis::from_spanning(f, self.ambient_dim, vectors))
    }

    /// Image of the subspace under `m`.
    pub fn image_under(&self, m: &FieldMatrix) -> SubspaceBasis {
        assert_eq!(m.cols(), self.ambient_dim, "matrix/subspace mismatch");
        SubspaceBasis::from_spanning(
            self.field,
            m.rows(),
            self.vectors.iter().map(|v| m.mul_vec(v)),
        )
    }

    /// Coefficients of `v` in this basis, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        Solver::new(self.field, self.ambient_dim, &self.vectors).solve(v)
    }

    /// Extends this basis (kept first) by standard basis vectors to a basis of
    /// the whole space; returns only the added coordinate indices.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut e = self.eliminator();
        (0..self.ambient_dim)
            .filter(|&i| e.insert(&self.field.unit_vector(self.ambient_dim, i)))
            .collect()
    }
}

/// Incremental echelon form used for membership and independence tests.
#[derive(Clone, Debug)]
pub(crate) struct Eliminator {
    field: FieldSpec,
    dim: usize,
    /// (pivot column, row with a 1 in the pivot column)
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Eliminator {
    pub(crate) fn new(field: FieldSpec, dim: usize) -> Self {
        Eliminator {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if f.is_zero(&w[*p]) {
                continue;
            }
            let c = f.neg(&w[*p]);
            for (wi, ri) in w.iter_mut().zip(row) {
                if !f.is_zero(ri) {
                    *wi = f.axpy(wi, &c, ri);
                }
            }
        }
        w
    }

    pub(crate) fn reduces_to_zero(&self, v: &[Scalar]) -> bool {
        self.field.is_zero_vector(&self.reduce(v))
    }

    /// Adds `v` if independent; returns whether it was added.
    pub(crate) fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field;
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|a| !f.is_zero(a)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero pivot");
        let w: Vec<Scalar> = w.iter().map(|a| f.mul(a, &inv)).collect();
        self.rows.push((p, w));
        true
    }
}

/// Expresses vectors in a fixed independent list by elimination with
/// coefficient tracking.
#[derive(Clone, Debug)]
pub(crate) struct Solver {
    field: FieldSpec,
    n_basis: usize,
    /// (pivot, reduced row, combination of basis vectors giving the row)
    rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
}

impl Solver {
    pub(crate) fn new(field: FieldSpec, dim: usize, basis: &[Vec<Scalar>]) -> Self {
        let f = field;
        let n = basis.len();
        let mut rows: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::with_capacity(n);
        for (k, b) in basis.iter().enumerate() {
            debug_assert_eq!(b.len(), dim);
            let mut w = b.clone();
            let mut combo = f.unit_vector(n, k);
            for (p, row, rc) in &rows {
                if f.is_zero(&w[*p]) {
                    continue;
                }
                let c = f.neg(&w[*p]);
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = f.axpy(wi, &c, ri);
                }
                for (ci, ri) in combo.iter_mut().zip(rc) {
                    *ci = f.axpy(ci, &c, ri);
                }
            }
            let p = w
                .iter()
                .position(|a| !f.is_zero(a))
                .expect("solver basis must be linearly independent");
            let inv = f.inv(&w[p]).expect("nonzero pivot");
            let w = w.iter().map(|a| f.mul(a, &inv)).collect();
            let combo = combo.iter().map(|a| f.mul(a, &inv)).collect();
            rows.push((p, w, combo));
        }
        Solver {
            field,
            n_basis: n,
            rows,
        }
    }

    pub(crate) fn solve(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = self.field;
        let mut w = v.to_vec();
        let mut coeffs = f.zero_vector(self.n_basis);
        for (p, row, combo) in &self.rows {
            if f.is_zero(&w[*p]) {
                continue;
            }
            let c = w[*p].clone();
            let neg = f.neg(&c);
            for (wi, ri) in w.iter_mut().zip(row) {
                if !f.is_zero(ri) {
                    *wi = f.axpy(wi, &neg, ri);
                }
            }
            for (ci, ri) in coeffs.iter_mut().zip(combo) {
                if !f.is_zero(ri) {
                    *ci = f.axpy(ci, &c, ri);
                }
            }
        }
        if f.is_zero_vector(&w) {
            Some(coeffs)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2(rows: &[Vec<i64>]) -> FieldMatrix {
        FieldMatrix::from_i64_rows(FieldSpec::Gf2, rows)
    }

    /// All vectors of GF(2)^n, for exhaustive oracles.
    fn all_gf2(n: usize) -> Vec<Vec<Scalar>> {
        (0..1u32 << n)
            .map(|mask| (0..n).map(|i| Scalar::Mod((mask >> i) & 1)).collect())
            .collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&FieldMatrix::zeros(FieldSpec::Gf2, 0, 0)), 0);
        assert_eq!(rank(&FieldMatrix::identity(FieldSpec::Gf2, 3)), 3);
        let m = gf2(&[vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_example_matches_column_subset_oracle() {
        // largest independent column subset, by exhaustive check
        let m = gf2(&[vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        let cols: Vec<Vec<Scalar>> = (0..3).map(|j| m.column(j)).collect();
        let mut best = 0;
        for mask in 0u32..8 {
            let chosen: Vec<&Vec<Scalar>> = (0..3)
                .filter(|j| mask >> j & 1 == 1)
                .map(|j| &cols[j])
                .collect();
            // independent iff no nonempty sub-multiset sums to zero
            let k = chosen.len();
            let independent = (1u32..1 << k).all(|sub| {
                let mut acc = [0u32; 3];
                for (t, c) in chosen.iter().enumerate() {
                    if sub >> t & 1 == 1 {
                        for (a, s) in acc.iter_mut().zip(c.iter()) {
                            if let Scalar::Mod(x) = s {
                                *a ^= x;
                            }
                        }
                    }
                }
                acc.iter().any(|&a| a != 0)
            });
            if independent {
                best = best.max(k);
            }
        }
        assert_eq!(best, 2);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            kernel_basis(&FieldMatrix::identity(FieldSpec::Gf2, 4)).dim(),
            0
        );
        assert_eq!(
            kernel_basis(&FieldMatrix::zeros(FieldSpec::Gf2, 2, 3)).dim(),
            3
        );
        let k = kernel_basis(&gf2(&[vec![1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.vectors()[0], vec![Scalar::Mod(1), Scalar::Mod(1)]);
        // exhaustive: exactly 2 solutions in GF(2)^2, namely 0 and (1,1)
        let m = gf2(&[vec![1, 1]]);
        let sols: Vec<_> = all_gf2(2)
            .into_iter()
            .filter(|x| m.mul_vec(x)[0] == Scalar::Mod(0))
            .collect();
        assert_eq!(sols.len(), 1 << k.dim());
        assert!(sols.iter().all(|s| k.contains(s)));
    }

    #[test]
    fn image_examples() {
        assert_eq!(
            image_basis(&FieldMatrix::zeros(FieldSpec::Rational, 3, 2)).dim(),
            0
        );
        let id = image_basis(&FieldMatrix::identity(FieldSpec::Rational, 3));
        assert!(id.span_eq(&SubspaceBasis::full(FieldSpec::Rational, 3)));
        let q = FieldSpec::Rational;
        let m = FieldMatrix::from_i64_rows(q, &[vec![2, 4], vec![1, 2]]);
        let im = image_basis(&m);
        assert_eq!(im.dim(), 1);
        // (2,1) and the basis vector are proportional: cross-multiplication vanishes
        let v = &im.vectors()[0];
        let cross = q.sub(&q.mul(&v[0], &q.from_i64(1)), &q.mul(&v[1], &q.from_i64(2)));
        assert!(q.is_zero(&cross));
    }

    #[test]
    fn intersect_examples() {
        let f = FieldSpec::Gf2;
        let full = SubspaceBasis::full(f, 3);
        let b = SubspaceBasis::from_spanning(
            f,
            3,
            vec![vec![Scalar::Mod(1), Scalar::Mod(1), Scalar::Mod(0)]],
        );
        assert!(subspace_intersect(&full, &b).unwrap().span_eq(&b));
        let e1 = SubspaceBasis::coordinate(f, 3, [0]);
        let e2 = SubspaceBasis::coordinate(f, 3, [1]);
        assert_eq!(subspace_intersect(&e1, &e2).unwrap().dim(), 0);

        let m = |v: [u32; 3]| v.iter().map(|&x| Scalar::Mod(x)).collect::<Vec<_>>();
        // (1,1,0) + (0,0,1) = (1,1,1), so the intersection is the line it spans
        let a = SubspaceBasis::from_spanning(f, 3, vec![m([1, 1, 0]), m([0, 0, 1])]);
        let c = SubspaceBasis::from_spanning(f, 3, vec![m([1, 1, 1])]);
        let i = subspace_intersect(&a, &c).unwrap();
        let common = all_gf2(3)
            .into_iter()
            .filter(|v| a.contains(v) && c.contains(v))
            .count();
        assert_eq!(common, 1 << i.dim());
        assert!(i.span_eq(&c));

        let d = SubspaceBasis::from_spanning(f, 3, vec![m([1, 0, 1])]);
        let j = subspace_intersect(&SubspaceBasis::from_spanning(f, 3, vec![m([1, 1, 0])]), &d)
            .unwrap();
        assert_eq!(j.dim(), 0);
    }

    #[test]
    fn intersect_errors_on_mismatch() {
        let a = SubspaceBasis::full(FieldSpec::Gf2, 2);
        let b = SubspaceBasis::full(FieldSpec::Gf2, 3);
        assert!(matches!(
            subspace_intersect(&a, &b),
            Err(LinalgError::AmbientMismatch { .. })
        ));
        let c = SubspaceBasis::full(FieldSpec::Rational, 2);
        assert!(matches!(
            subspace_intersect(&a, &c),
            Err(LinalgError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn preimage_examples() {
        let f = FieldSpec::Gf2;
        let m = gf2(&[vec![1, 0, 1], vec![0, 1, 1]]);
        let full = preimage_basis(&m, &SubspaceBasis::full(f, 2)).unwrap();
        assert_eq!(full.dim(), 3);
        let zero = preimage_basis(&m, &SubspaceBasis::zero(f, 2)).unwrap();
        assert!(zero.span_eq(&kernel_basis(&m)));

        let id = FieldMatrix::identity(f, 2);
        let s = SubspaceBasis::from_spanning(f, 2, vec![vec![Scalar::Mod(1), Scalar::Mod(1)]]);
        let p = preimage_basis(&id, &s).unwrap();
        let members: Vec<_> = all_gf2(2)
            .into_iter()
            .filter(|x| s.contains(&id.mul_vec(x)))
            .collect();
        assert_eq!(members.len(), 1 << p.dim());
        assert!(p.span_eq(&s));
        assert!(preimage_basis(&id, &SubspaceBasis::full(f, 3)).is_err());
    }

    #[test]
    fn gfp_arithmetic() {
        let f = FieldSpec::gfp(7).unwrap();
        let three = f.from_i64(3);
        let inv = f.inv(&three).unwrap();
        assert_eq!(f.mul(&three, &inv), f.one());
        assert_eq!(f.from_i64(-1), Scalar::Mod(6));
        assert!(FieldSpec::gfp(9).is_err());
        assert_eq!(FieldSpec::gfp(2).unwrap(), FieldSpec::Gf2);
        assert_eq!("gfp:5".parse::<FieldSpec>().unwrap(), FieldSpec::Gfp(5));
        assert_eq!(FieldSpec::Gfp(5).to_string(), "gfp:5");
    }

    #[test]
    fn coordinates_roundtrip() {
        let q = FieldSpec::Rational;
        let b = SubspaceBasis::from_spanning(
            q,
            3,
            vec![
                vec![q.from_i64(1), q.from_i64(2), q.from_i64(0)],
                vec![q.from_i64(0), q.from_i64(1), q.from_i64(1)],
            ],
        );
        let v = vec![q.from_i64(2), q.from_i64(1), q.from_i64(-3)];
        let c = b.coordinates(&v).unwrap();
        assert_eq!(c, vec![q.from_i64(2), q.from_i64(-3)]);
        assert!(b
            .coordinates(&[q.from_i64(0), q.from_i64(0), q.from_i64(1)])
            .is_none());
    }
}
