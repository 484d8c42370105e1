//! Solvable radical, Levi decomposition, splitting of a semisimple algebra
//! into simple ideals, and identification of each simple ideal's real form.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::catalog::{Catalog, RealFormRecord, WaConstant};
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{minimal_polynomial, rat, Poly, RatMatrix, Rational, Signature};
use crate::subspace::Subspace;

/// Seed used for every pseudo-random choice in this module, so results are
/// reproducible run to run.
pub const DEFAULT_SEED: u64 = 0x5eed_1e71;

/// Number of random elements sampled by [`cartan_dimension`].
pub const CARTAN_SAMPLES: usize = 24;

const SPLIT_ATTEMPTS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("not_semisimple: Killing form is degenerate")]
    NotSemisimple,
    #[error("lifting_inconsistent at derived-series step {0}")]
    LiftingInconsistent(usize),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("unrecognized_real_form({dim}, {signature}, {cartan_dim})")]
    UnrecognizedRealForm { dim: usize, signature: Signature, cartan_dim: usize },
    #[error("subspace is not simple: splits into {0} ideals")]
    NotSimple(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `g = radical ⋊ levi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviDecomposition {
    pub radical: Subspace,
    pub levi: Subspace,
}

/// The solvable radical, computed as the Killing-orthogonal complement of `[g, g]`.
pub fn radical(g: &LieAlgebra) -> Result<Subspace, StructureError> {
    let n = g.dim();
    let derived = g.bracket_span(&g.full(), &g.full());
    if derived.is_zero() {
        return Ok(g.full());
    }
    let k = g.killing_matrix();
    let rows = derived.basis().transpose().mul(&k);
    let r = Subspace::column_span(&rows.kernel());
    debug_assert_eq!(r.ambient_dim(), n);
    if !g.is_ideal(&r) || !g.is_solvable_subalgebra(&r)? {
        return Err(StructureError::Internal("Killing complement of [g,g] is not a solvable ideal".into()));
    }
    Ok(r)
}

/// Coordinates in the basis formed by the columns of `basis_inv⁻¹`.
fn coords(basis_inv: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    basis_inv.mul_vec(v)
}

/// Levi decomposition by successive lifting along the derived series of the
/// radical: at each step the complement is corrected by a linear map into
/// `R⁽ⁱ⁾` so that it closes under the bracket modulo `R⁽ⁱ⁺¹⁾`.
pub fn levi(g: &LieAlgebra) -> Result<LeviDecomposition, StructureError> {
    let n = g.dim();
    let r = radical(g)?;
    if r.is_zero() {
        return Ok(LeviDecomposition { radical: r, levi: g.full() });
    }
    if r.dim() == n {
        return Ok(LeviDecomposition { radical: r, levi: Subspace::zero(n) });
    }
    let series = g.derived_series(&r)?;
    let mut s_basis = r.complement_in(&g.full());
    let ds = s_basis.len();

    for step in 0..series.len() - 1 {
        let (ri, next) = (&series[step], &series[step + 1]);
        let q = next.complement_in(ri);
        let t = q.len();
        if t == 0 {
            continue;
        }
        let w = ri.complement_in(&r);
        let mut cols = s_basis.clone();
        cols.extend(w.iter().cloned());
        cols.extend(q.iter().cloned());
        cols.extend(next.vectors());
        let basis = RatMatrix::from_columns(n, &cols);
        let inv = basis.inverse().map_err(|_| StructureError::Internal("lifting basis is singular".into()))?;
        let q_off = ds + w.len();

        // m_a[p][p'] = Q-coordinate p of [x_a, q_p']
        let m: Vec<RatMatrix> = s_basis
            .iter()
            .map(|xa| {
                let columns: Vec<Vec<Rational>> = q
                    .iter()
                    .map(|qp| coords(&inv, &g.bracket(xa, qp).unwrap())[q_off..q_off + t].to_vec())
                    .collect();
                RatMatrix::from_columns(t, &columns)
            })
            .collect();

        let unknowns = ds * t;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        for a in 0..ds {
            for b in a + 1..ds {
                let br = coords(&inv, &g.bracket(&s_basis[a], &s_basis[b])?);
                if br[ds..q_off].iter().any(|x| !x.is_zero()) {
                    return Err(StructureError::Internal("complement left the radical filtration".into()));
                }
                for p in 0..t {
                    let mut row = vec![Rational::zero(); unknowns];
                    for pp in 0..t {
                        row[b * t + pp] += &m[a][(p, pp)];
                        row[a * t + pp] -= &m[b][(p, pp)];
                    }
                    for c in 0..ds {
                        if !br[c].is_zero() {
                            row[c * t + p] -= &br[c];
                        }
                    }
                    rows.push(row);
                    rhs.push(-br[q_off + p].clone());
                }
            }
        }
        if rows.is_empty() {
            continue;
        }
        let y = RatMatrix::from_rows(rows).solve(&rhs).map_err(|_| StructureError::LiftingInconsistent(step))?;
        for (a, xa) in s_basis.iter_mut().enumerate() {
            for (p, qp) in q.iter().enumerate() {
                let coef = &y[a * t + p];
                if coef.is_zero() {
                    continue;
                }
                for (x, qv) in xa.iter_mut().zip(qp) {
                    *x += coef * qv;
                }
            }
        }
    }

    let levi = Subspace::span(n, &s_basis);
    if levi.dim() != ds || !g.is_subalgebra(&levi) {
        return Err(StructureError::Internal("lifted complement is not a subalgebra".into()));
    }
    Ok(LeviDecomposition { radical: r, levi })
}

impl LeviDecomposition {
    /// Checks every structural contract exactly; returns the first failure.
    pub fn verify(&self, g: &LieAlgebra) -> Result<(), String> {
        if self.radical.dim() + self.levi.dim() != g.dim() {
            return Err("dim(radical) + dim(levi) != dim(g)".into());
        }
        if !self.radical.intersection(&self.levi).is_zero() {
            return Err("radical and levi intersect".into());
        }
        if !g.is_ideal(&self.radical) {
            return Err("radical is not an ideal".into());
        }
        if !g.is_solvable_subalgebra(&self.radical).map_err(|e| e.to_string())? {
            return Err("radical is not solvable".into());
        }
        if !g.is_subalgebra(&self.levi) {
            return Err("levi is not a subalgebra".into());
        }
        let s = g.restrict(&self.levi, "s").map_err(|e| e.to_string())?;
        let sig = s.killing_matrix().symmetric_signature().map_err(|e| e.to_string())?;
        if !sig.is_nondegenerate() {
            return Err("levi Killing form is degenerate".into());
        }
        Ok(())
    }
}

/// Basis of the centroid `{T : T ad(x) = ad(x) T for all x}`.
fn centroid(a: &LieAlgebra) -> Vec<RatMatrix> {
    let d = a.dim();
    let ads: Vec<RatMatrix> = (0..d).map(|i| a.ad_matrix(&a.unit(i)).unwrap()).collect();
    let mut rows = Vec::new();
    for ad in &ads {
        for p in 0..d {
            for q in 0..d {
                // (T ad - ad T)_{pq} = Σ_r T_{pr} ad_{rq} - ad_{pr} T_{rq}
                let mut row = vec![Rational::zero(); d * d];
                for r in 0..d {
                    if !ad[(r, q)].is_zero() {
                        row[p * d + r] += &ad[(r, q)];
                    }
                    if !ad[(p, r)].is_zero() {
                        row[r * d + q] -= &ad[(p, r)];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() { RatMatrix::identity(d * d) } else { RatMatrix::from_rows(rows).kernel() };
    kernel
        .columns()
        .into_iter()
        .map(|v| {
            let mut m = RatMatrix::zeros(d, d);
            for p in 0..d {
                for q in 0..d {
                    m[(p, q)] = v[p * d + q].clone();
                }
            }
            m
        })
        .collect()
}

/// Splits the ideal `w` of the semisimple algebra `s` (coordinates of `s`)
/// into smaller ideals using kernels of centroid elements.
fn split_ideal(s: &LieAlgebra, w: &Subspace, rng: &mut ChaCha8Rng) -> Result<Vec<Subspace>, StructureError> {
    let a = s.restrict(w, "w")?;
    let cent = centroid(&a);
    if cent.len() <= 1 {
        return Ok(vec![w.clone()]);
    }
    let d = a.dim();
    for _ in 0..SPLIT_ATTEMPTS {
        let t = cent.iter().fold(RatMatrix::zeros(d, d), |acc, c| acc.add(&c.scale(&rat(rng.gen_range(-3..=3)))));
        let p = minimal_polynomial(&t);
        let roots = p.rational_roots();
        let mut pieces: Vec<Subspace> = Vec::new();
        let mut rest = p.clone();
        for root in &roots {
            let shifted = t.sub(&RatMatrix::identity(d).scale(root));
            pieces.push(Subspace::column_span(&shifted.kernel()));
            let (q, _) = rest.div_rem(&Poly::new(vec![-root.clone(), Rational::from_integer(1.into())]));
            rest = q;
        }
        if rest.degree().unwrap_or(0) > 0 {
            pieces.push(Subspace::column_span(&rest.eval_matrix(&t).kernel()));
        }
        if pieces.len() < 2 {
            continue;
        }
        if pieces.iter().map(Subspace::dim).sum::<usize>() != d {
            return Err(StructureError::Internal("centroid pieces do not span the ideal".into()));
        }
        let mut out = Vec::new();
        for piece in pieces {
            let lifted: Vec<Vec<Rational>> = piece.vectors().iter().map(|v| w.basis().mul_vec(v)).collect();
            let sub = Subspace::span(s.dim(), &lifted);
            out.extend(split_ideal(s, &sub, rng)?);
        }
        return Ok(out);
    }
    Ok(vec![w.clone()])
}

/// Simple ideals of the semisimple subalgebra `s` of `g`, as subspaces of `g`.
pub fn split_semisimple(g: &LieAlgebra, s: &Subspace) -> Result<Vec<Subspace>, StructureError> {
    if s.is_zero() {
        return Ok(Vec::new());
    }
    let alg = g.restrict(s, "s")?;
    let sig = alg.killing_matrix().symmetric_signature().expect("Killing form is symmetric");
    if !sig.is_nondegenerate() {
        return Err(StructureError::NotSemisimple);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let ideals = split_ideal(&alg, &alg.full(), &mut rng)?;
    let mut out: Vec<Subspace> = ideals
        .iter()
        .map(|i| {
            let vs: Vec<Vec<Rational>> = i.vectors().iter().map(|v| s.basis().mul_vec(v)).collect();
            Subspace::span(g.dim(), &vs)
        })
        .collect();
    // canonical order: by dimension, then by echelon basis
    out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| b.vectors().cmp(&a.vectors())));
    Ok(out)
}

/// Dimension of the generalized null space of `ad(x)` for generic `x`,
/// estimated as the minimum over pseudo-random samples.
pub fn cartan_dimension(a: &LieAlgebra, samples: usize, seed: u64) -> usize {
    let d = a.dim();
    if d == 0 {
        return 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = d;
    for _ in 0..samples.max(1) {
        let x: Vec<Rational> = (0..d).map(|_| rat(rng.gen_range(-5..=5))).collect();
        let ad = a.ad_matrix(&x).unwrap();
        let nullity = d - ad.pow(d as u32).rank();
        best = best.min(nullity);
    }
    best
}

/// Real form of a simple subalgebra, from the catalog unless the Killing form
/// is negative definite (compact, real rank 0).
pub fn identify_real_form(a: &LieAlgebra, catalog: &Catalog) -> Result<RealFormRecord, StructureError> {
    let dim = a.dim();
    let signature = a.killing_matrix().symmetric_signature().expect("Killing form is symmetric");
    let cartan_dim = cartan_dimension(a, CARTAN_SAMPLES, DEFAULT_SEED);
    if signature.is_negative_definite() {
        return Ok(RealFormRecord {
            name: format!("compact({dim})"),
            dim,
            signature,
            cartan_dim,
            real_rank: 0,
            lambda_wa: WaConstant::one(),
        });
    }
    catalog
        .lookup(dim, signature, cartan_dim)
        .cloned()
        .ok_or(StructureError::UnrecognizedRealForm { dim, signature, cartan_dim })
}

/// [`identify_real_form`] for a subspace of `g`, after confirming it is simple.
pub fn identify_real_form_of(g: &LieAlgebra, s: &Subspace, catalog: &Catalog) -> Result<RealFormRecord, StructureError> {
    let parts = split_semisimple(g, s)?;
    if parts.len() != 1 {
        return Err(StructureError::NotSimple(parts.len()));
    }
    identify_real_form(&g.restrict(s, "s")?, catalog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    #[test]
    fn radical_of_semisimple_and_solvable() {
        assert!(radical(&sl2()).unwrap().is_zero());
        let a = abelian(3).unwrap();
        assert_eq!(radical(&a).unwrap(), a.full());
        let h = heisenberg(1).unwrap();
        assert_eq!(radical(&h).unwrap(), h.full());
    }

    #[test]
    fn radical_of_v3_sl2_is_the_module() {
        let g = v_sl2(3).unwrap();
        let r = radical(&g).unwrap();
        assert_eq!(r, leading_span(6, 3));
        assert!(g.is_ideal(&r));
        assert!(g.is_solvable_subalgebra(&r).unwrap());
    }

    #[test]
    fn levi_trivial_cases() {
        let s = levi(&sl2()).unwrap();
        assert!(s.radical.is_zero());
        assert_eq!(s.levi.dim(), 3);
        let h = levi(&heisenberg(2).unwrap()).unwrap();
        assert!(h.levi.is_zero());
    }

    #[test]
    fn levi_of_h3_sl2_is_sl2() {
        let g = h_sl2(1).unwrap();
        let d = levi(&g).unwrap();
        d.verify(&g).unwrap();
        assert_eq!(d.levi.dim(), 3);
        let s = g.restrict(&d.levi, "s").unwrap();
        assert_eq!(s.killing_matrix().symmetric_signature().unwrap(), Signature::new(2, 1, 0));
    }

    #[test]
    fn levi_after_scrambling_basis() {
        for seed in 0..6 {
            let g = random_semidirect(seed);
            let d = levi(&g).unwrap();
            d.verify(&g).unwrap();
            assert_eq!(d.levi.dim(), 3, "seed {seed}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = h_sl2(2).unwrap();
        let p = random_unimodular(g.dim(), &mut rng);
        let g2 = g.change_basis(&p).unwrap();
        levi(&g2).unwrap().verify(&g2).unwrap();
    }

    #[test]
    fn split_direct_sum_sl2_so3() {
        let g = direct_sum(&sl2(), &so3());
        let ideals = split_semisimple(&g, &g.full()).unwrap();
        assert_eq!(ideals.len(), 2);
        let mut sigs: Vec<Signature> = ideals
            .iter()
            .map(|i| g.restrict(i, "s").unwrap().killing_matrix().symmetric_signature().unwrap())
            .collect();
        sigs.sort();
        assert_eq!(sigs, vec![Signature::new(0, 3, 0), Signature::new(2, 1, 0)]);
    }

    #[test]
    fn split_so4_presentation() {
        // so(4) = su(2) ⊕ su(2), presented in a scrambled basis
        let g = direct_sum(&so3(), &so3());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_unimodular(6, &mut rng);
        let g = g.change_basis(&p).unwrap();
        let ideals = split_semisimple(&g, &g.full()).unwrap();
        assert_eq!(ideals.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![3, 3]);
        assert!(g.bracket_span(&ideals[0], &ideals[1]).is_zero());
    }

    #[test]
    fn split_rejects_degenerate() {
        let h = heisenberg(1).unwrap();
        assert_eq!(split_semisimple(&h, &h.full()), Err(StructureError::NotSemisimple));
    }

    #[test]
    fn simple_complex_type_is_not_split() {
        let g = sl2c_real();
        assert_eq!(split_semisimple(&g, &g.full()).unwrap().len(), 1);
    }

    #[test]
    fn cartan_dimensions() {
        assert_eq!(cartan_dimension(&sl2(), CARTAN_SAMPLES, DEFAULT_SEED), 1);
        assert_eq!(cartan_dimension(&so3(), CARTAN_SAMPLES, DEFAULT_SEED), 1);
        assert_eq!(cartan_dimension(&sl2c_real(), CARTAN_SAMPLES, DEFAULT_SEED), 2);
        assert_eq!(cartan_dimension(&sl3r(), CARTAN_SAMPLES, DEFAULT_SEED), 2);
    }

    #[test]
    fn real_form_identification() {
        let cat = Catalog::builtin();
        let so3r = identify_real_form(&so3(), &cat).unwrap();
        assert_eq!((so3r.real_rank, so3r.lambda_wa.clone()), (0, WaConstant::one()));
        assert_eq!(cat.lookup_count(), 0);
        let s = identify_real_form(&sl2(), &cat).unwrap();
        assert_eq!((s.name.as_str(), s.real_rank), ("sl(2,R)", 1));
        let s3 = identify_real_form(&sl3r(), &cat).unwrap();
        assert_eq!((s3.real_rank, s3.lambda_wa), (2, WaConstant::Infinite));
    }

    #[test]
    fn identify_requires_simple() {
        let cat = Catalog::builtin();
        let g = direct_sum(&sl2(), &sl2());
        assert_eq!(identify_real_form_of(&g, &g.full(), &cat), Err(StructureError::NotSimple(2)));
    }
}
