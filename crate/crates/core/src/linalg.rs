//! Exact rational linear algebra.
//!
//! Everything here works over [`Rational`] (arbitrary precision), so every
//! identity checked elsewhere in the crate is an exact equality.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Bit length of numerator plus denominator; used to pick pivots that keep
/// coefficients small.
fn height(r: &Rational) -> u64 {
    r.numer().bits() + r.denom().bits()
}

/// Inertia of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Signature { positive, negative, zero }
    }

    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }

    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RatMatrix { rows: r, cols: c, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == -self[(j, i)].clone()))
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

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        RatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Matrix commutator `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        RatMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and the pivot columns.
    ///
    /// Column order is preserved so the result is canonical; within a column
    /// the pivot row is the candidate of smallest height.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !m[(i, c)].is_zero())
                .min_by_key(|&i| height(&m[(i, c)]));
            let Some(p) = best else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one basis vector per column.
    pub fn kernel(&self) -> RatMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = RatMatrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -r[(row, f)].clone();
            }
        }
        basis
    }

    /// One solution of `self * x = b`, with free variables set to zero.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        let aug = RatMatrix::from_columns(self.rows, &{
            let mut cols = self.columns();
            cols.push(b.to_vec());
            cols
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Ok(x)
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut cols = self.columns();
        cols.extend(RatMatrix::identity(n).columns());
        let (r, pivots) = RatMatrix::from_columns(n, &cols).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Inertia by Lagrange congruence reduction.
    pub fn symmetric_signature(&self) -> Result<Signature, LinalgError> {
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        let mut m = self.clone();
        let mut active: Vec<usize> = (0..m.rows).collect();
        let (mut pos, mut neg) = (0, 0);
        loop {
            let diag = active
                .iter()
                .copied()
                .filter(|&i| !m[(i, i)].is_zero())
                .min_by_key(|&i| height(&m[(i, i)]));
            let pivot = match diag {
                Some(i) => i,
                None => {
                    // all remaining diagonal entries vanish: x_i <- x_i + x_j
                    let off = active.iter().copied().find_map(|i| {
                        active.iter().copied().find(|&j| j != i && !m[(i, j)].is_zero()).map(|j| (i, j))
                    });
                    let Some((i, j)) = off else { break };
                    for k in 0..m.cols {
                        let v = m[(j, k)].clone();
                        m[(i, k)] += v;
                    }
                    for k in 0..m.rows {
                        let v = m[(k, j)].clone();
                        m[(k, i)] += v;
                    }
                    i
                }
            };
            let d = m[(pivot, pivot)].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != pivot);
            for &j in &active {
                if m[(j, pivot)].is_zero() {
                    continue;
                }
                let f = &m[(j, pivot)] / &d;
                for &k in &active {
                    let v = &m[(pivot, k)] * &f;
                    m[(j, k)] -= v;
                }
            }
        }
        Ok(Signature::new(pos, neg, self.rows - pos - neg))
    }

    /// Entries as integers, or `None` if any entry is fractional.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_integer()).collect(),
        })
    }
}

/// Dense integer matrix for the lattice computations, where every entry is
/// known to be integral and rational arithmetic would only cost time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Bilinear form `uᵀ M v`.
    pub fn pairing(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        let mv = self.mul_vec(v);
        u.iter().zip(&mv).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rational::from_integer(x.clone())).collect(),
        }
    }
}

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= c * &f;
            }
            quot[shift] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Evaluates the polynomial at a square matrix.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        self.coeffs
            .iter()
            .rev()
            .fold(RatMatrix::zeros(n, n), |acc, c| acc.mul(m).add(&RatMatrix::identity(n).scale(c)))
    }

    fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let k = seq.len();
            let (_, r) = seq[k - 2].div_rem(&seq[k - 1]);
            seq.push(Poly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        seq.pop();
        seq
    }

    /// All rational roots of a squarefree polynomial, in increasing order.
    ///
    /// Real roots are isolated with a Sturm sequence and bisection; a rational
    /// root of the primitive integer form has denominator dividing the leading
    /// coefficient, which bounds how far the bisection must go.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let Some(deg) = self.degree() else { return Vec::new() };
        if deg == 0 {
            return Vec::new();
        }
        let denom_lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &denom_lcm).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lead = (&ints[deg] / &content).abs();
        let lead_r = Rational::from_integer(lead.clone());

        let sturm = self.sturm_sequence();
        let changes = |x: &Rational| -> usize {
            let signs: Vec<i32> = sturm
                .iter()
                .map(|p| {
                    let v = p.eval(x);
                    if v.is_zero() {
                        0
                    } else if v.is_positive() {
                        1
                    } else {
                        -1
                    }
                })
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };

        let top = &self.coeffs[deg];
        let bound = self.coeffs[..deg].iter().fold(Rational::zero(), |acc, c| acc.max((c / top).abs()))
            + Rational::one();
        let min_width = lead_r.recip();
        let mut roots = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let count = changes(&lo) - changes(&hi);
            if count == 0 {
                continue;
            }
            if count == 1 && &hi - &lo < min_width {
                // candidates are k / lead with lo < k / lead <= hi
                let k_lo: BigInt = (&lo * &lead_r).floor().to_integer() + 1;
                let k_hi: BigInt = (&hi * &lead_r).floor().to_integer();
                let mut k = k_lo;
                while k <= k_hi {
                    let cand = Rational::new(k.clone(), lead.clone());
                    if self.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                    k += 1;
                }
                continue;
            }
            let mid = (&lo + &hi) / rat(2);
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

/// Minimal polynomial of a square matrix, found as the first linear
/// dependence among its powers.
pub fn minimal_polynomial(m: &RatMatrix) -> Poly {
    assert!(m.is_square());
    let n = m.rows();
    let mut powers: Vec<Vec<Rational>> = vec![RatMatrix::identity(n).entries().to_vec()];
    let mut current = RatMatrix::identity(n);
    loop {
        current = current.mul(m);
        let target = current.entries().to_vec();
        let basis = RatMatrix::from_columns(n * n, &powers);
        if let Ok(x) = basis.solve(&target) {
            let mut coeffs: Vec<Rational> = x.into_iter().map(|c| -c).collect();
            coeffs.push(Rational::one());
            return Poly::new(coeffs);
        }
        powers.push(target);
    }
}

/// Lossy conversion used only for display of small integers.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}
