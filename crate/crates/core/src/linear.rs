//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Matrices are
//! dense and row-major; vectors are treated as columns when a matrix acts on
//! them (`A·v`).

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A point of the lattice `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Coordinates as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// True iff the coordinates have gcd 1. The zero vector is not primitive.
    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The primitive lattice vector on the ray through `self`.
    pub fn primitivize(&self) -> Result<IntVector> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(IntVector(self.0.iter().map(|c| c / &g).collect()))
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Serialized as a sequence of JSON numbers; coordinates outside the `i64`
/// range are written as decimal strings.
impl serde::Serialize for IntVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            match c.to_i64() {
                Some(x) => seq.serialize_element(&x)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// Free function form of [`IntVector::is_primitive`].
pub fn is_primitive(v: &IntVector) -> bool {
    v.is_primitive()
}

/// Free function form of [`IntVector::primitivize`].
pub fn primitivize(v: &IntVector) -> Result<IntVector> {
    v.primitivize()
}

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntMatrix {
    /// Builds a matrix from rows. Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix rows");
        IntMatrix { rows, ncols }
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_vectors(rows: &[IntVector]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.coords().to_vec()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[IntVector]) -> Self {
        Self::from_vectors(cols).transpose()
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            rows: vec![vec![BigInt::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector::new(self.rows[i].clone())
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector::new(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMatrix {
            rows,
            ncols: self.nrows(),
        }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, rhs.nrows(), "matrix product shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..rhs.ncols)
                    .map(|j| r.iter().zip(&rhs.rows).map(|(a, b)| a * &b[j]).sum())
                    .collect()
            })
            .collect();
        IntMatrix {
            rows,
            ncols: rhs.ncols,
        }
    }

    /// `A·v` with `v` a column vector.
    pub fn apply(&self, v: &IntVector) -> IntVector {
        assert_eq!(self.ncols, v.dim(), "matrix-vector shape mismatch");
        IntVector::new(
            self.rows
                .iter()
                .map(|r| r.iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn trace(&self) -> BigInt {
        (0..self.nrows().min(self.ncols))
            .map(|i| self.rows[i][i].clone())
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.rows.iter().enumerate().all(|(i, r)| {
                r.iter()
                    .enumerate()
                    .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                expected: self.nrows(),
                rows: self.nrows(),
                cols: self.ncols,
            });
        }
        let n = self.nrows();
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let mut a = self.rows.clone();
        let (n, m) = (a.len(), self.ncols);
        let mut rank = 0;
        for col in 0..m {
            let Some(p) = (rank..n).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..n {
                if a[i][col].is_zero() {
                    continue;
                }
                let (f, g) = (a[rank][col].clone(), a[i][col].clone());
                for j in col..m {
                    a[i][j] = &a[i][j] * &f - &a[rank][j] * &g;
                }
                let c = a[i].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                if !c.is_zero() && !c.is_one() {
                    for x in &mut a[i] {
                        *x /= &c;
                    }
                }
            }
            rank += 1;
            if rank == n {
                break;
            }
        }
        rank
    }

    /// Classical adjugate of a square matrix, so that `A·adj(A) = det(A)·I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                expected: self.nrows(),
                rows: self.nrows(),
                cols: self.ncols,
            });
        }
        let n = self.nrows();
        if n == 1 {
            return Ok(IntMatrix::identity(1));
        }
        let mut adj = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = IntMatrix::from_rows(
                    (0..n)
                        .filter(|&r| r != i)
                        .map(|r| {
                            (0..n)
                                .filter(|&c| c != j)
                                .map(|c| self.rows[r][c].clone())
                                .collect()
                        })
                        .collect(),
                );
                let d = minor.det()?;
                adj.rows[j][i] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        Ok(adj)
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        let d = self.det().ok()?;
        if !d.abs().is_one() {
            return None;
        }
        let adj = self.adjugate().ok()?;
        Some(IntMatrix::from_rows(
            adj.rows
                .into_iter()
                .map(|r| r.into_iter().map(|x| x * &d).collect())
                .collect(),
        ))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.rows {
            r.swap(i, j);
        }
    }

    /// row_i -= q·row_j
    fn sub_row_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let src = self.rows[j].clone();
        for (x, s) in self.rows[i].iter_mut().zip(&src) {
            *x -= q * s;
        }
    }

    /// col_i -= q·col_j
    fn sub_col_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in &mut self.rows {
            let s = q * &r[j];
            r[i] -= s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.rows[i] {
            *x = -std::mem::take(x);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

/// Exact determinant of a 3×3 matrix.
pub fn det3(m: &IntMatrix) -> Result<BigInt> {
    if m.nrows() != 3 || m.ncols() != 3 {
        return Err(Error::NotSquare {
            expected: 3,
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let r = &m.rows;
    Ok(&r[0][0] * (&r[1][1] * &r[2][2] - &r[1][2] * &r[2][1])
        - &r[0][1] * (&r[1][0] * &r[2][2] - &r[1][2] * &r[2][0])
        + &r[0][2] * (&r[1][0] * &r[2][1] - &r[1][1] * &r[2][0]))
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `H = U·m` in row echelon form, positive pivots, and entries above each
/// pivot reduced into `[0, pivot)`. Pivot rows are chosen by smallest
/// absolute value, ties broken by smallest row index.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(nr);
    let mut prow = 0;
    for col in 0..nc {
        if prow == nr {
            break;
        }
        loop {
            let best = (prow..nr)
                .filter(|&i| !h.rows[i][col].is_zero())
                .min_by(|&a, &b| h.rows[a][col].abs().cmp(&h.rows[b][col].abs()).then(a.cmp(&b)));
            let Some(best) = best else { break };
            h.swap_rows(prow, best);
            u.swap_rows(prow, best);
            let mut done = true;
            for i in prow + 1..nr {
                if h.rows[i][col].is_zero() {
                    continue;
                }
                let q = h.rows[i][col].div_floor(&h.rows[prow][col]);
                h.sub_row_multiple(i, prow, &q);
                u.sub_row_multiple(i, prow, &q);
                if !h.rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.rows[prow][col].is_zero() {
            continue;
        }
        if h.rows[prow][col].is_negative() {
            h.negate_row(prow);
            u.negate_row(prow);
        }
        for i in 0..prow {
            let q = h.rows[i][col].div_floor(&h.rows[prow][col]);
            h.sub_row_multiple(i, prow, &q);
            u.sub_row_multiple(i, prow, &q);
        }
        prow += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(D, U, V)` with `U`, `V` unimodular,
/// `D = U·m·V` diagonal, nonnegative, and `d_1 | d_2 | ...`.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(nr);
    let mut v = IntMatrix::identity(nc);
    for t in 0..nr.min(nc) {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nr {
                for j in t..nc {
                    let x = &d.rows[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < d.rows[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'pivot };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..nr {
                let q = d.rows[i][t].div_floor(&d.rows[t][t]);
                d.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                clean &= d.rows[i][t].is_zero();
            }
            for j in t + 1..nc {
                let q = d.rows[t][j].div_floor(&d.rows[t][t]);
                d.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                clean &= d.rows[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility by folding an offending row into row t.
            let pivot = d.rows[t][t].clone();
            let offending = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !d.rows[i][j].is_multiple_of(&pivot)));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break 'pivot,
            }
        }
        if d.rows[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Diagonal entries of the Smith normal form.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = snf(m);
    (0..d.nrows().min(d.ncols()))
        .map(|i| d.get(i, i).clone())
        .collect()
}

/// Solves `X·B = C` for square `B` over the rationals, returning `X` only
/// when it is integral.
pub fn integral_right_solve(b: &IntMatrix, c: &IntMatrix) -> Option<IntMatrix> {
    let det = b.det().ok()?;
    if det.is_zero() {
        return None;
    }
    let num = c.mul(&b.adjugate().ok()?);
    let rows = num
        .rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    let (q, rem) = x.div_rem(&det);
                    rem.is_zero().then_some(q)
                })
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()?;
    Some(IntMatrix::from_rows(rows))
}

/// Exact rational determinant of a 3×3 matrix given by rows.
pub fn rational_det3(r: &[Vec<Rational>]) -> Rational {
    &r[0][0] * (&r[1][1] * &r[2][2] - &r[1][2] * &r[2][1])
        - &r[0][1] * (&r[1][0] * &r[2][2] - &r[1][2] * &r[2][0])
        + &r[0][2] * (&r[1][0] * &r[2][1] - &r[1][1] * &r[2][0])
}
