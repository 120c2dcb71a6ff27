//! Exact scalars and the integer/rational linear algebra everything else is
//! built on: Hermite normal form, Bareiss determinant and inverse, and
//! canonical bases for full-rank rational lattices.
//!
//! Lattices are stored row-wise: each row of a basis matrix is one lattice
//! vector in standard coordinates.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let d: Int = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `"p/q"` with `q > 0`, or `"p"` when the value is an integer.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Exact square root of a nonnegative rational, if it is a square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(Rat::new(n, d))
}

pub fn int_sqrt_exact(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, r| acc.lcm(r.denom()))
}

/// Serde adapter writing a value through `Display` and reading it back
/// through `FromStr`, so numbers travel as JSON strings.
pub mod as_string {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RatMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rat> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn try_mul(&self, other: &RatMat) -> Result<RatMat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.rows {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .fold(Rat::zero(), |acc, (i, x)| acc + x * &self[(i, j)])
            })
            .collect())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(is_integer)
    }

    /// Scales each row by the lcm of its denominators. Returns the integer
    /// rows and the per-row multipliers.
    fn cleared_rows(&self) -> (Vec<Vec<Int>>, Vec<Int>) {
        (0..self.rows)
            .map(|i| {
                let d = lcm_of_denominators(self.row(i));
                let row = self
                    .row(i)
                    .iter()
                    .map(|x| (x * Rat::from_integer(d.clone())).to_integer())
                    .collect();
                (row, d)
            })
            .unzip()
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<Rat> {
        if !self.is_square() {
            return Err(Error::Dimension("det of non-square matrix".into()));
        }
        let (mut m, scales) = self.cleared_rows();
        let d = bareiss_forward(&mut m, self.cols);
        let denom = scales.iter().fold(Int::one(), |acc, s| acc * s);
        Ok(match d {
            Some((det, _)) => Rat::new(det, denom),
            None => Rat::zero(),
        })
    }

    /// Exact inverse: Bareiss elimination on `[M | I]` followed by rational
    /// back substitution.
    pub fn inverse(&self) -> Result<RatMat> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let (cleared, scales) = self.cleared_rows();
        let mut aug: Vec<Vec<Int>> = cleared
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| if i == j { Int::one() } else { Int::zero() }));
                row
            })
            .collect();
        if bareiss_forward(&mut aug, n).is_none() {
            return Err(Error::SingularMatrix);
        }
        let mut x = RatMat::zeros(n, n);
        for i in (0..n).rev() {
            let pivot = Rat::from_integer(aug[i][i].clone());
            for col in 0..n {
                let mut acc = Rat::from_integer(aug[i][n + col].clone());
                for k in i + 1..n {
                    acc -= Rat::from_integer(aug[i][k].clone()) * &x[(k, col)];
                }
                x[(i, col)] = acc / &pivot;
            }
        }
        // (D M)^-1 = M^-1 D^-1, so M^-1 = (D M)^-1 D.
        for i in 0..n {
            for j in 0..n {
                x[(i, j)] *= Rat::from_integer(scales[j].clone());
            }
        }
        Ok(x)
    }

    /// Solves `M x = v` for a column vector `x`.
    pub fn solve(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let inv = self.inverse()?;
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(Rat::zero(), |acc, j| acc + &inv[(i, j)] * &v[j]))
            .collect())
    }
}

/// Forward Bareiss elimination over the first `n` columns, applied to every
/// column of `m`. Returns the determinant of the leading `n x n` block and the
/// row-swap parity, or `None` if that block is singular.
fn bareiss_forward(m: &mut [Vec<Int>], n: usize) -> Option<(Int, bool)> {
    let width = m.first().map_or(0, Vec::len);
    let mut prev = Int::one();
    let mut odd_swaps = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero())?;
            m.swap(k, swap);
            odd_swaps = !odd_swaps;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return Some((Int::one(), false));
    }
    let det = if odd_swaps { -prev } else { prev };
    Some((det, odd_swaps))
}

impl Index<(usize, usize)> for RatMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMat {
    type Output = RatMat;
    fn mul(self, rhs: &RatMat) -> RatMat {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i).iter().map(fmt_rat).collect::<Vec<_>>()))
            .finish()
    }
}

impl fmt::Display for RatMat {
    /// One row per line, space-separated exact rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(fmt_rat).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the whitespace-separated text form produced by `Display`: one row
/// per non-empty line.
pub fn parse_rat_matrix(text: &str) -> Result<RatMat> {
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(parse_rat)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    RatMat::from_rows(rows).map_err(|_| Error::Parse("rows have different lengths".into()))
}

/// Row-style Hermite normal form `H = U * M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: Vec<Vec<Int>>,
    pub u: Vec<Vec<Int>>,
    pub rank: usize,
}

/// Hermite normal form of an integer matrix: nonzero rows first, each pivot
/// positive and strictly to the right of the pivot above, entries above a
/// pivot reduced into `[0, pivot)`.
pub fn hnf(m: &[Vec<Int>]) -> Hnf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut h = m.to_vec();
    let mut u: Vec<Vec<Int>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();

    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[i][c].is_zero() {
                continue;
            }
            if h[r][c].is_zero() {
                h.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let a = h[r][c].clone();
            let b = h[i][c].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = if e.gcd.is_negative() {
                (-e.gcd, -e.x, -e.y)
            } else {
                (e.gcd, e.x, e.y)
            };
            let p = &a / &g;
            let q = &b / &g;
            combine_rows(&mut h, r, i, &s, &t, &q, &p);
            combine_rows(&mut u, r, i, &s, &t, &q, &p);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h[r]);
            negate_row(&mut u[r]);
        }
        for k in 0..r {
            let q = h[k][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                sub_multiple(&mut h, k, r, &q);
                sub_multiple(&mut u, k, r, &q);
            }
        }
        r += 1;
    }
    Hnf { h, u, rank: r }
}

/// (row_r, row_i) <- (s row_r + t row_i, -q row_r + p row_i); determinant
/// `s p + t q = 1`.
fn combine_rows(m: &mut [Vec<Int>], r: usize, i: usize, s: &Int, t: &Int, q: &Int, p: &Int) {
    for col in 0..m[r].len() {
        let x = m[r][col].clone();
        let y = m[i][col].clone();
        m[r][col] = s * &x + t * &y;
        m[i][col] = p * &y - q * &x;
    }
}

fn negate_row(row: &mut [Int]) {
    for x in row.iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn sub_multiple(m: &mut [Vec<Int>], target: usize, src: usize, q: &Int) {
    for col in 0..m[target].len() {
        let v = q * &m[src][col];
        m[target][col] -= v;
    }
}

/// Canonical basis of the lattice generated by the rows of `gens`.
///
/// Clears denominators by their lcm `d`, takes the HNF of the integer
/// matrix, keeps the nonzero rows and divides by `d`. The result depends
/// only on the lattice. Fails unless the lattice has full rank `gens.cols()`.
pub fn canonical_lattice_basis(gens: &RatMat) -> Result<RatMat> {
    let d = lcm_of_denominators(gens.entries());
    let dr = Rat::from_integer(d.clone());
    let scaled: Vec<Vec<Int>> = (0..gens.rows())
        .map(|i| gens.row(i).iter().map(|x| (x * &dr).to_integer()).collect())
        .collect();
    let Hnf { h, rank, .. } = hnf(&scaled);
    if rank < gens.cols() {
        return Err(Error::SingularBasis {
            rank,
            expected: gens.cols(),
        });
    }
    RatMat::from_rows(
        h.into_iter()
            .take(rank)
            .map(|row| row.into_iter().map(|x| Rat::new(x, d.clone())).collect())
            .collect(),
    )
}

/// Canonical form of a 4x4 lattice basis.
pub fn rat_lattice_canonicalize(basis: &RatMat) -> Result<RatMat> {
    if basis.rows() != 4 || basis.cols() != 4 {
        return Err(Error::Dimension("expected a 4x4 basis".into()));
    }
    canonical_lattice_basis(basis)
}

/// Whether `v` is an integer combination of the rows of the square, nonsingular `basis`.
pub fn lattice_contains(basis: &RatMat, v: &[Rat]) -> bool {
    match basis.inverse() {
        Ok(inv) => inv
            .left_apply(v)
            .map(|c| c.iter().all(is_integer))
            .unwrap_or(false),
        Err(_) => false,
    }
}

/// Basis of the dual lattice under the standard dot product: rows of `(B^-1)^T`.
pub fn dual_basis(basis: &RatMat) -> Result<RatMat> {
    Ok(basis.inverse()?.transpose())
}

pub fn lattice_sum(a: &RatMat, b: &RatMat) -> Result<RatMat> {
    let mut rows = a.row_vecs();
    rows.extend(b.row_vecs());
    canonical_lattice_basis(&RatMat::from_rows(rows)?)
}

/// Intersection of full-rank lattices, computed as the dual of the sum of duals.
pub fn lattice_intersection(lattices: &[RatMat]) -> Result<RatMat> {
    let mut rows = Vec::new();
    for l in lattices {
        rows.extend(dual_basis(l)?.row_vecs());
    }
    let sum = canonical_lattice_basis(&RatMat::from_rows(rows)?)?;
    canonical_lattice_basis(&dual_basis(&sum)?)
}
