use num_traits::Zero;

use crate::linalg::{RatMatrix, Rational};

/// A linear subspace of `Q^n`, held in reduced echelon form so that equal
/// subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    /// Columns are the basis vectors; as rows they form an RREF matrix.
    basis: RatMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: RatMatrix::zeros(ambient, 0), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &RatMatrix::identity(ambient).columns())
    }

    /// Span of arbitrary (possibly dependent) vectors of length `ambient`.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let nonzero: Vec<Vec<Rational>> =
            vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
        if nonzero.is_empty() {
            return Self::zero(ambient);
        }
        let rows = RatMatrix::from_columns(ambient, &nonzero).transpose();
        let (r, pivots) = rows.rref();
        let basis: Vec<Vec<Rational>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis: RatMatrix::from_columns(ambient, &basis), pivots }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &RatMatrix) -> Self {
        Self::span(m.rows(), &m.columns())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.columns()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = self.basis.mul_vec(&coords);
        (recon == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Self::span(self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        // a·x = b·y  <=>  [a | -b] (x, y) = 0
        let mut cols = self.vectors();
        cols.extend(other.vectors().into_iter().map(|v| v.into_iter().map(|x| -x).collect()));
        let k = RatMatrix::from_columns(self.ambient, &cols).kernel();
        let vs: Vec<Vec<Rational>> = k
            .columns()
            .into_iter()
            .map(|c| self.basis.mul_vec(&c[..self.dim()]))
            .collect();
        Self::span(self.ambient, &vs)
    }

    /// Vectors extending a basis of `self` to a basis of `outer`, chosen
    /// greedily from the basis of `outer`.
    pub fn complement_in(&self, outer: &Subspace) -> Vec<Vec<Rational>> {
        let mut acc = self.clone();
        let mut extra = Vec::new();
        for v in outer.vectors() {
            if !acc.contains(&v) {
                acc = acc.sum(&Subspace::span(self.ambient, std::slice::from_ref(&v)));
                extra.push(v);
            }
        }
        extra
    }
}
