//! Finite-dimensional Lie algebras given by rational structure constants.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{format_rational, RatMatrix, Rational};
use crate::subspace::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("antisymmetry_violation({i},{j})")]
    Antisymmetry { i: usize, j: usize },
    #[error("{}", format_jacobi(.0))]
    Jacobi(Vec<JacobiViolation>),
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("expected {expected} basis names, got {got}")]
    BasisNames { expected: usize, got: usize },
}

/// A basis triple on which the Jacobi identity fails, with the defect vector
/// `[[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub defect: Vec<Rational>,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        let d: Vec<String> = self.defect.iter().map(format_rational).collect();
        write!(f, "jacobi_violation({i},{j},{k}) defect [{}]", d.join(", "))
    }
}

fn format_jacobi(vs: &[JacobiViolation]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Dense structure-constant tensor `c[i][j][k]`, unvalidated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    dim: usize,
    data: Vec<Rational>,
}

impl StructureTable {
    pub fn zeros(dim: usize) -> Self {
        StructureTable { dim, data: vec![Rational::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.dim + j) * self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &[Rational] {
        let o = self.offset(i, j);
        &self.data[o..o + self.dim]
    }

    /// Sets `[x_i, x_j]` only; pair with [`StructureTable::set_bracket`] to keep antisymmetry.
    pub fn set_raw(&mut self, i: usize, j: usize, v: &[Rational]) {
        assert_eq!(v.len(), self.dim);
        let o = self.offset(i, j);
        self.data[o..o + self.dim].clone_from_slice(v);
    }

    /// Sets `[x_i, x_j] = v` and `[x_j, x_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[Rational]) {
        self.set_raw(i, j, v);
        let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
        self.set_raw(j, i, &neg);
    }

    /// Convenience for sparse integer tables: `[x_i, x_j] = Σ coeff · x_k`.
    pub fn set_terms(&mut self, i: usize, j: usize, terms: &[(usize, Rational)]) {
        let mut v = vec![Rational::zero(); self.dim];
        for (k, c) in terms {
            v[*k] += c;
        }
        self.set_bracket(i, j, &v);
    }
}

/// A validated Lie algebra over the rationals.
///
/// Antisymmetry and the Jacobi identity are checked at construction, so every
/// value of this type is a genuine Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    table: StructureTable,
}

impl LieAlgebra {
    pub fn new(names: Vec<String>, table: StructureTable) -> Result<Self, LieError> {
        let n = table.dim();
        if names.len() != n {
            return Err(LieError::BasisNames { expected: n, got: names.len() });
        }
        for i in 0..n {
            for j in i..n {
                let ok = table.get(i, j).iter().zip(table.get(j, i)).all(|(a, b)| *a == -b.clone());
                if !ok {
                    return Err(LieError::Antisymmetry { i, j });
                }
            }
        }
        let g = LieAlgebra { names, table };
        let violations = g.jacobi_violations();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(LieError::Jacobi(violations))
        }
    }

    /// Basis named `x0, x1, …`.
    pub fn with_default_names(table: StructureTable) -> Result<Self, LieError> {
        let names = (0..table.dim()).map(|i| format!("x{i}")).collect();
        Self::new(names, table)
    }

    fn jacobi_violations(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let defect = self.jacobi_residual(&ei, &ej, &ek);
                    if defect.iter().any(|x| !x.is_zero()) {
                        out.push(JacobiViolation { triple: (i, j, k), defect });
                    }
                }
            }
        }
        out
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`.
    pub fn jacobi_residual(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let a = self.bracket_unchecked(&self.bracket_unchecked(x, y), z);
        let b = self.bracket_unchecked(&self.bracket_unchecked(y, z), x);
        let c = self.bracket_unchecked(&self.bracket_unchecked(z, x), y);
        a.iter().zip(&b).zip(&c).map(|((a, b), c)| a + b + c).collect()
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::from_integer(1.into());
        v
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        self.table.get(i, j)
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() == self.dim() {
            Ok(())
        } else {
            Err(LieError::DimensionMismatch { expected: self.dim(), got: v.len() })
        }
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = self.table.get(i, j);
                let f = xi * yj;
                for (o, ck) in out.iter_mut().zip(c) {
                    if !ck.is_zero() {
                        *o += ck * &f;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)`: column `j` is `[x, x_j]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> Result<RatMatrix, LieError> {
        self.check_len(x)?;
        let cols: Vec<Vec<Rational>> = (0..self.dim()).map(|j| self.bracket_unchecked(x, &self.unit(j))).collect();
        Ok(RatMatrix::from_columns(self.dim(), &cols))
    }

    pub fn killing(&self, x: &[Rational], y: &[Rational]) -> Result<Rational, LieError> {
        Ok(self.ad_matrix(x)?.mul(&self.ad_matrix(y)?).trace())
    }

    /// Gram matrix of the Killing form in the standard basis.
    pub fn killing_matrix(&self) -> RatMatrix {
        let n = self.dim();
        let ads: Vec<RatMatrix> = (0..n).map(|i| self.ad_matrix(&self.unit(i)).unwrap()).collect();
        let mut k = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = ads[i].mul(&ads[j]).trace();
                k[(i, j)] = v.clone();
                k[(j, i)] = v;
            }
        }
        k
    }

    /// Span of all brackets `[a, b]` with `a ∈ A`, `b ∈ B`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for x in a.vectors() {
            for y in b.vectors() {
                vs.push(self.bracket_unchecked(&x, &y));
            }
        }
        Subspace::span(self.dim(), &vs)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.dim())
    }

    pub fn is_subalgebra(&self, v: &Subspace) -> bool {
        v.contains_subspace(&self.bracket_span(v, v))
    }

    pub fn is_ideal(&self, v: &Subspace) -> bool {
        v.contains_subspace(&self.bracket_span(&self.full(), v))
    }

    /// `D⁰ = V`, `Dⁿ⁺¹ = [Dⁿ, Dⁿ]`, until the chain stabilizes.
    pub fn derived_series(&self, v: &Subspace) -> Result<Vec<Subspace>, LieError> {
        if !self.is_subalgebra(v) {
            return Err(LieError::NotSubalgebra);
        }
        let mut chain = vec![v.clone()];
        loop {
            let last = chain.last().unwrap();
            let next = self.bracket_span(last, last);
            if next.dim() == last.dim() {
                return Ok(chain);
            }
            let done = next.is_zero();
            chain.push(next);
            if done {
                return Ok(chain);
            }
        }
    }

    pub fn is_solvable_subalgebra(&self, v: &Subspace) -> Result<bool, LieError> {
        Ok(self.derived_series(v)?.last().unwrap().is_zero())
    }

    pub fn is_solvable(&self) -> bool {
        self.is_solvable_subalgebra(&self.full()).unwrap()
    }

    /// `C⁰ = g`, `Cⁿ⁺¹ = [g, Cⁿ]`, until the chain stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let g = self.full();
        let mut chain = vec![g.clone()];
        loop {
            let last = chain.last().unwrap();
            let next = self.bracket_span(&g, last);
            if next.dim() == last.dim() {
                return chain;
            }
            let done = next.is_zero();
            chain.push(next);
            if done {
                return chain;
            }
        }
    }

    /// Nilpotency class (number of steps for the lower central series to reach
    /// zero), or `None` if the algebra is not nilpotent. The zero algebra has class 0.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let chain = self.lower_central_series();
        chain.last().unwrap().is_zero().then(|| chain.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    /// Smallest ideal containing `seed`.
    pub fn ideal_closure(&self, seed: &Subspace) -> Subspace {
        let g = self.full();
        let mut v = seed.clone();
        loop {
            let next = v.sum(&self.bracket_span(&g, &v));
            if next.dim() == v.dim() {
                return v;
            }
            v = next;
        }
    }

    /// `{x : [x, v] = 0 for all v ∈ V}`.
    pub fn centralizer(&self, v: &Subspace) -> Subspace {
        let n = self.dim();
        if v.is_zero() {
            return self.full();
        }
        let mut stacked = RatMatrix::zeros(0, n);
        for w in v.vectors() {
            stacked = stacked.vstack(&self.ad_matrix(&w).unwrap());
        }
        Subspace::column_span(&stacked.kernel())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full())
    }

    /// The subalgebra `V` as a Lie algebra in its own right, in the echelon
    /// basis of `V`. Basis names are `<prefix>0, <prefix>1, …`.
    pub fn restrict(&self, v: &Subspace, prefix: &str) -> Result<LieAlgebra, LieError> {
        let basis = v.vectors();
        let d = basis.len();
        let mut table = StructureTable::zeros(d);
        for i in 0..d {
            for j in i + 1..d {
                let b = self.bracket_unchecked(&basis[i], &basis[j]);
                let coords = v.coordinates(&b).ok_or(LieError::NotSubalgebra)?;
                table.set_bracket(i, j, &coords);
            }
        }
        let names = (0..d).map(|i| format!("{prefix}{i}")).collect();
        LieAlgebra::new(names, table)
    }

    /// Same algebra in the basis given by the columns of an invertible matrix `p`.
    pub fn change_basis(&self, p: &RatMatrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(LieError::DimensionMismatch { expected: n, got: p.rows() });
        }
        let inv = p.inverse().map_err(|_| LieError::DimensionMismatch { expected: n, got: p.rank() })?;
        let cols = p.columns();
        let mut table = StructureTable::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket_unchecked(&cols[i], &cols[j]);
                table.set_bracket(i, j, &inv.mul_vec(&b));
            }
        }
        let names = (0..n).map(|i| format!("y{i}")).collect();
        LieAlgebra::new(names, table)
    }

    /// Relabels the basis: new basis vector `k` is old basis vector `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> LieAlgebra {
        let n = self.dim();
        assert_eq!(perm.len(), n);
        let mut inv = vec![0; n];
        for (k, &p) in perm.iter().enumerate() {
            inv[p] = k;
        }
        let mut table = StructureTable::zeros(n);
        for a in 0..n {
            for b in 0..n {
                let old = self.table.get(perm[a], perm[b]);
                let mut v = vec![Rational::zero(); n];
                for (k, c) in old.iter().enumerate() {
                    v[inv[k]] = c.clone();
                }
                table.set_raw(a, b, &v);
            }
        }
        let names = perm.iter().map(|&p| self.names[p].clone()).collect();
        LieAlgebra { names, table }
    }
}
