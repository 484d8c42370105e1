//! The irreducible representations of `SL(2)`, the integral Heisenberg lattice
//! group, and their semidirect products, all in integer coordinates.
//!
//! The representation is conjugated by `D = diag(α_1, …, α_m)` with
//! `α_j² = C(m-1, j-1)`, which removes every square root: for integral `A`
//! the matrix `Z'(A)` is integral. Heisenberg points are stored as
//! `(w, m) = (D u, N t)`, so lattice membership is plain integrality.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{IntMatrix, RatMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("determinant is {0}, expected 1")]
    NotUnimodular(BigInt),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parameter must be at least 1")]
    ZeroParameter,
}

/// An element of `SL(2,Z)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Element {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl fmt::Debug for Sl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for Sl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Sl2Element {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, GroupError> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(GroupError::NotUnimodular(det));
        }
        Ok(Sl2Element { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self, GroupError> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Sl2Element { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    /// `[[0, -1], [1, 0]]`
    pub fn s() -> Self {
        Self::from_i64(0, -1, 1, 0).unwrap()
    }

    /// `[[1, 1], [0, 1]]`
    pub fn t() -> Self {
        Self::from_i64(1, 1, 0, 1).unwrap()
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn mul(&self, o: &Self) -> Self {
        Sl2Element {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Sl2Element { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        self.mul(o) == o.mul(self)
    }

    pub fn apply(&self, v: &[BigInt; 2]) -> [BigInt; 2] {
        [&self.a * &v[0] + &self.b * &v[1], &self.c * &v[0] + &self.d * &v[1]]
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn rat_pow(x: &Rational, e: i64) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// `Z'(A)` for a matrix `[[a, b], [c, d]]` with rational entries:
/// `Z'_{ij} = Σ_l C(j-1,l) C(m-j, m-i-l) a^{m-i-l} b^l c^{i+l-j} d^{j-l-1}`,
/// keeping only terms whose exponents are all nonnegative.
pub fn rep_matrix_entries(m: usize, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> RatMatrix {
    let mi = m as i64;
    let mut out = RatMatrix::zeros(m, m);
    for i in 1..=mi {
        for j in 1..=mi {
            let mut sum = Rational::zero();
            for l in 0..j {
                let (ea, eb, ec, ed) = (mi - i - l, l, i + l - j, j - l - 1);
                if ea < 0 || ec < 0 || ed < 0 || ea > mi - j {
                    continue;
                }
                let coeff = binomial((j - 1) as u64, l as u64) * binomial((mi - j) as u64, ea as u64);
                if coeff.is_zero() {
                    continue;
                }
                let term = rat_pow(a, ea) * rat_pow(b, eb) * rat_pow(c, ec) * rat_pow(d, ed);
                sum += term * Rational::from_integer(coeff);
            }
            out[((i - 1) as usize, (j - 1) as usize)] = sum;
        }
    }
    out
}

/// `Z'(A)` for `A ∈ SL(2,Z)`; every entry is an integer.
pub fn rep_matrix(m: usize, g: &Sl2Element) -> RatMatrix {
    let [a, b, c, d] = g.entries().map(|x| Rational::from_integer(x.clone()));
    rep_matrix_entries(m, &a, &b, &c, &d)
}

/// Integer form of [`rep_matrix`].
pub fn rep_matrix_int(m: usize, g: &Sl2Element) -> IntMatrix {
    rep_matrix(m, g).to_integer().expect("Z'(A) is integral for integral A")
}

/// `α_j² = C(2n-1, j-1)` for `j = 1..2n`, and their product `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaData {
    pub n: usize,
    pub alpha_sq: Vec<BigInt>,
    pub big_n: BigInt,
}

impl AlphaData {
    pub fn new(n: usize) -> Self {
        let alpha_sq: Vec<BigInt> = (0..2 * n as u64).map(|k| binomial(2 * n as u64 - 1, k)).collect();
        let big_n = alpha_sq.iter().product();
        AlphaData { n, alpha_sq, big_n }
    }
}

/// `J'` with `J'_{ij} = (N / α_j²)(-1)^j` when `i + j = 2n+1`, else 0.
/// Satisfies `N⟨u₁, J u₂⟩ = w₁ᵀ J' w₂` for `w = D u`.
pub fn rescaled_symplectic(n: usize) -> IntMatrix {
    let alpha = AlphaData::new(n);
    let size = 2 * n;
    let mut m = RatMatrix::zeros(size, size);
    for j in 1..=size {
        let i = size + 1 - j;
        let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let v = &alpha.big_n / &alpha.alpha_sq[j - 1] * sign;
        m[(i - 1, j - 1)] = Rational::from_integer(v);
    }
    m.to_integer().unwrap()
}

/// A point of `Γ_{2n+1}` in rescaled coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisenbergLatticePoint {
    pub w: Vec<BigInt>,
    pub m: BigInt,
}

impl HeisenbergLatticePoint {
    pub fn new(w: Vec<BigInt>, m: BigInt) -> Self {
        HeisenbergLatticePoint { w, m }
    }

    pub fn from_i64(w: &[i64], m: i64) -> Self {
        HeisenbergLatticePoint { w: w.iter().map(|&x| x.into()).collect(), m: m.into() }
    }

    pub fn is_central(&self) -> bool {
        self.w.iter().all(Zero::is_zero)
    }

    /// `(w, m)` flattened to `w ++ [m]`.
    pub fn to_vec(&self) -> Vec<BigInt> {
        let mut v = self.w.clone();
        v.push(self.m.clone());
        v
    }

    pub fn from_vec(v: &[BigInt]) -> Self {
        let (m, w) = v.split_last().expect("nonempty");
        HeisenbergLatticePoint { w: w.to_vec(), m: m.clone() }
    }
}

/// `Γ_{2n+1}` with multiplication `(w₁,m₁)(w₂,m₂) = (w₁+w₂, m₁+m₂+w₁ᵀJ'w₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisenbergGroup {
    n: usize,
    jprime: IntMatrix,
}

impl HeisenbergGroup {
    pub fn new(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroParameter);
        }
        Ok(HeisenbergGroup { n, jprime: rescaled_symplectic(n) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn jprime(&self) -> &IntMatrix {
        &self.jprime
    }

    fn check(&self, p: &HeisenbergLatticePoint) -> Result<(), GroupError> {
        if p.w.len() == 2 * self.n {
            Ok(())
        } else {
            Err(GroupError::DimensionMismatch { expected: 2 * self.n, got: p.w.len() })
        }
    }

    pub fn identity(&self) -> HeisenbergLatticePoint {
        HeisenbergLatticePoint { w: vec![BigInt::zero(); 2 * self.n], m: BigInt::zero() }
    }

    pub fn central_generator(&self) -> HeisenbergLatticePoint {
        HeisenbergLatticePoint { w: vec![BigInt::zero(); 2 * self.n], m: BigInt::one() }
    }

    /// `(e_j, 0)` for `j = 0..2n`.
    pub fn generator(&self, j: usize) -> HeisenbergLatticePoint {
        let mut w = vec![BigInt::zero(); 2 * self.n];
        w[j] = BigInt::one();
        HeisenbergLatticePoint { w, m: BigInt::zero() }
    }

    pub fn pairing(&self, w1: &[BigInt], w2: &[BigInt]) -> BigInt {
        self.jprime.pairing(w1, w2)
    }

    pub fn mul(&self, p: &HeisenbergLatticePoint, q: &HeisenbergLatticePoint) -> Result<HeisenbergLatticePoint, GroupError> {
        self.check(p)?;
        self.check(q)?;
        let w = p.w.iter().zip(&q.w).map(|(a, b)| a + b).collect();
        let m = &p.m + &q.m + self.pairing(&p.w, &q.w);
        Ok(HeisenbergLatticePoint { w, m })
    }

    /// `(-w, -m)`, valid because `wᵀJ'w = 0`.
    pub fn inverse(&self, p: &HeisenbergLatticePoint) -> HeisenbergLatticePoint {
        HeisenbergLatticePoint { w: p.w.iter().map(|x| -x).collect(), m: -&p.m }
    }

    /// `p q p⁻¹ q⁻¹`.
    pub fn commutator(&self, p: &HeisenbergLatticePoint, q: &HeisenbergLatticePoint) -> Result<HeisenbergLatticePoint, GroupError> {
        let pq = self.mul(p, q)?;
        let pqp = self.mul(&pq, &self.inverse(p))?;
        self.mul(&pqp, &self.inverse(q))
    }

    /// `(w, m) ↦ (Z'(A) w, m)`.
    pub fn act(&self, a: &Sl2Element, p: &HeisenbergLatticePoint) -> Result<HeisenbergLatticePoint, GroupError> {
        self.check(p)?;
        let z = rep_matrix_int(2 * self.n, a);
        Ok(HeisenbergLatticePoint { w: z.mul_vec(&p.w), m: p.m.clone() })
    }

    /// `Z'(A)ᵀ J' Z'(A) = J'`.
    pub fn preserves_form(&self, a: &Sl2Element) -> bool {
        let z = rep_matrix(2 * self.n, a);
        let j = self.jprime.to_rational();
        z.transpose().mul(&j).mul(&z) == j
    }
}

/// Translation part of a semidirect product element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Translation {
    Lattice(Vec<BigInt>),
    Heisenberg(HeisenbergLatticePoint),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemidirectElement {
    pub translation: Translation,
    pub matrix: Sl2Element,
}

/// `Z^m ⋊ SL(2,Z)` or `Γ_{2n+1} ⋊ SL(2,Z)`, with
/// `(v, A)(w, B) = (v · A.w, AB)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemidirectGroup {
    Lattice { m: usize },
    Heisenberg(HeisenbergGroup),
}

impl SemidirectGroup {
    pub fn lattice(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::ZeroParameter);
        }
        Ok(SemidirectGroup::Lattice { m })
    }

    pub fn heisenberg(n: usize) -> Result<Self, GroupError> {
        Ok(SemidirectGroup::Heisenberg(HeisenbergGroup::new(n)?))
    }

    pub fn identity(&self) -> SemidirectElement {
        let translation = match self {
            SemidirectGroup::Lattice { m } => Translation::Lattice(vec![BigInt::zero(); *m]),
            SemidirectGroup::Heisenberg(h) => Translation::Heisenberg(h.identity()),
        };
        SemidirectElement { translation, matrix: Sl2Element::identity() }
    }

    fn act(&self, a: &Sl2Element, t: &Translation) -> Result<Translation, GroupError> {
        match (self, t) {
            (SemidirectGroup::Lattice { m }, Translation::Lattice(v)) => {
                if v.len() != *m {
                    return Err(GroupError::DimensionMismatch { expected: *m, got: v.len() });
                }
                Ok(Translation::Lattice(rep_matrix_int(*m, a).mul_vec(v)))
            }
            (SemidirectGroup::Heisenberg(h), Translation::Heisenberg(p)) => Ok(Translation::Heisenberg(h.act(a, p)?)),
            _ => Err(GroupError::DimensionMismatch { expected: 0, got: 0 }),
        }
    }

    fn combine(&self, s: &Translation, t: &Translation) -> Result<Translation, GroupError> {
        match (self, s, t) {
            (SemidirectGroup::Lattice { .. }, Translation::Lattice(v), Translation::Lattice(w)) => {
                Ok(Translation::Lattice(v.iter().zip(w).map(|(a, b)| a + b).collect()))
            }
            (SemidirectGroup::Heisenberg(h), Translation::Heisenberg(p), Translation::Heisenberg(q)) => {
                Ok(Translation::Heisenberg(h.mul(p, q)?))
            }
            _ => Err(GroupError::DimensionMismatch { expected: 0, got: 0 }),
        }
    }

    pub fn mul(&self, x: &SemidirectElement, y: &SemidirectElement) -> Result<SemidirectElement, GroupError> {
        let moved = self.act(&x.matrix, &y.translation)?;
        Ok(SemidirectElement { translation: self.combine(&x.translation, &moved)?, matrix: x.matrix.mul(&y.matrix) })
    }

    /// `(v, A)⁻¹ = (A⁻¹.v⁻¹, A⁻¹)`.
    pub fn inverse(&self, x: &SemidirectElement) -> Result<SemidirectElement, GroupError> {
        let inv_a = x.matrix.inverse();
        let neg = match (&self, &x.translation) {
            (SemidirectGroup::Lattice { .. }, Translation::Lattice(v)) => Translation::Lattice(v.iter().map(|a| -a).collect()),
            (SemidirectGroup::Heisenberg(h), Translation::Heisenberg(p)) => Translation::Heisenberg(h.inverse(p)),
            _ => return Err(GroupError::DimensionMismatch { expected: 0, got: 0 }),
        };
        Ok(SemidirectElement { translation: self.act(&inv_a, &neg)?, matrix: inv_a })
    }
}

/// Sign pattern helper for tests and reports: `true` when every entry of the
/// antidiagonal alternates in sign.
pub fn antidiagonal_alternates(m: &IntMatrix) -> bool {
    let n = m.rows();
    (0..n.saturating_sub(1)).all(|k| {
        let x = m.get(k, n - 1 - k);
        let y = m.get(k + 1, n - 2 - k);
        x.is_positive() != y.is_positive() && !x.is_zero() && !y.is_zero()
    })
}
