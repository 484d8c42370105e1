//! Builders for the algebras used throughout the crate: the classical simple
//! algebras, Heisenberg algebras, and the semidirect products of `sl2` with
//! its irreducible modules.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError, StructureTable};
use crate::linalg::{rat, RatMatrix, Rational};
use crate::subspace::Subspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown builder '{0}'")]
    UnknownBuilder(String),
    #[error("not_derivation({0})")]
    NotDerivation(usize),
    #[error("not_homomorphism({0},{1})")]
    NotHomomorphism(usize, usize),
    #[error("no_invariant_form")]
    NoInvariantForm,
    #[error("not_unique: invariant form space has dimension {0}")]
    NotUnique(usize),
    #[error("matrices do not close under the commutator")]
    NotClosed,
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Action of `sl2` on `Q^m` in the weight basis `v_0 … v_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2ModuleAction {
    pub m: usize,
    pub e: RatMatrix,
    pub f: RatMatrix,
    pub h: RatMatrix,
}

impl Sl2ModuleAction {
    /// Matrices in the order of the `sl2` basis `h, e, f`.
    pub fn matrices(&self) -> [RatMatrix; 3] {
        [self.h.clone(), self.e.clone(), self.f.clone()]
    }

    pub fn satisfies_relations(&self) -> bool {
        self.h.commutator(&self.e) == self.e.scale(&rat(2))
            && self.h.commutator(&self.f) == self.f.scale(&rat(-2))
            && self.e.commutator(&self.f) == self.h
    }
}

/// The `m`-dimensional irreducible module: `H v_k = (m-1-2k) v_k`,
/// `F v_k = v_{k+1}`, `E v_k = k(m-k) v_{k-1}`.
pub fn irreducible_sl2_module(m: usize) -> Sl2ModuleAction {
    let mut e = RatMatrix::zeros(m, m);
    let mut f = RatMatrix::zeros(m, m);
    let mut h = RatMatrix::zeros(m, m);
    let mi = m as i64;
    for k in 0..m {
        let ki = k as i64;
        h[(k, k)] = rat(mi - 1 - 2 * ki);
        if k + 1 < m {
            f[(k + 1, k)] = Rational::one();
        }
        if k > 0 {
            e[(k - 1, k)] = rat(ki * (mi - ki));
        }
    }
    Sl2ModuleAction { m, e, f, h }
}

/// The invariant skew form of an even-dimensional irreducible module, scaled
/// so that the first nonzero entry of the first row is 1.
pub fn invariant_symplectic(action: &Sl2ModuleAction) -> Result<RatMatrix, BuildError> {
    let m = action.m;
    // unknowns: ω_{pq} for p < q
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|p| (p + 1..m).map(move |q| (p, q))).collect();
    let index = |p: usize, q: usize| -> (usize, i64) {
        if p < q {
            (pairs.iter().position(|&x| x == (p, q)).unwrap(), 1)
        } else {
            (pairs.iter().position(|&x| x == (q, p)).unwrap(), -1)
        }
    };
    // (Xᵀω + ωX)_{pq} = Σ_r X_{rp} ω_{rq} + ω_{pr} X_{rq}
    let mut rows = Vec::new();
    for x in action.matrices() {
        for p in 0..m {
            for q in 0..m {
                let mut row = vec![Rational::zero(); pairs.len()];
                for r in 0..m {
                    if r != q && !x[(r, p)].is_zero() {
                        let (k, s) = index(r, q);
                        row[k] += &x[(r, p)] * rat(s);
                    }
                    if p != r && !x[(r, q)].is_zero() {
                        let (k, s) = index(p, r);
                        row[k] += &x[(r, q)] * rat(s);
                    }
                }
                rows.push(row);
            }
        }
    }
    if pairs.is_empty() {
        return Err(BuildError::NoInvariantForm);
    }
    let kernel = RatMatrix::from_rows(rows).kernel();
    match kernel.cols() {
        0 => return Err(BuildError::NoInvariantForm),
        1 => {}
        d => return Err(BuildError::NotUnique(d)),
    }
    let sol = kernel.column(0);
    let mut omega = RatMatrix::zeros(m, m);
    for (k, &(p, q)) in pairs.iter().enumerate() {
        omega[(p, q)] = sol[k].clone();
        omega[(q, p)] = -sol[k].clone();
    }
    let first = omega.row(0).iter().find(|x| !x.is_zero()).cloned().ok_or(BuildError::NoInvariantForm)?;
    Ok(omega.scale(&first.recip()))
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn abelian(m: usize) -> Result<LieAlgebra, BuildError> {
    if m == 0 {
        return Err(BuildError::InvalidParams("abelian dimension must be at least 1".into()));
    }
    Ok(LieAlgebra::new(names("a", m), StructureTable::zeros(m))?)
}

/// Heisenberg algebra of dimension `2n+1`: basis `e1 … e2n, z` with
/// `[e_i, e_j] = ω(e_i, e_j) z` for the `sl2`-invariant form `ω` of the
/// `2n`-dimensional irreducible module.
pub fn heisenberg(n: usize) -> Result<LieAlgebra, BuildError> {
    if n == 0 {
        return Err(BuildError::InvalidParams("heisenberg needs n >= 1".into()));
    }
    let omega = invariant_symplectic(&irreducible_sl2_module(2 * n))?;
    let d = 2 * n + 1;
    let mut t = StructureTable::zeros(d);
    for i in 0..2 * n {
        for j in i + 1..2 * n {
            if !omega[(i, j)].is_zero() {
                t.set_terms(i, j, &[(2 * n, omega[(i, j)].clone())]);
            }
        }
    }
    let mut nm: Vec<String> = (1..=2 * n).map(|i| format!("e{i}")).collect();
    nm.push("z".into());
    Ok(LieAlgebra::new(nm, t)?)
}

pub fn sl2() -> LieAlgebra {
    let mut t = StructureTable::zeros(3);
    t.set_terms(0, 1, &[(1, rat(2))]);
    t.set_terms(0, 2, &[(2, rat(-2))]);
    t.set_terms(1, 2, &[(0, rat(1))]);
    LieAlgebra::new(vec!["h".into(), "e".into(), "f".into()], t).expect("sl2 constants")
}

pub fn so3() -> LieAlgebra {
    let mut t = StructureTable::zeros(3);
    t.set_terms(0, 1, &[(2, rat(1))]);
    t.set_terms(1, 2, &[(0, rat(1))]);
    t.set_terms(2, 0, &[(1, rat(1))]);
    LieAlgebra::new(vec!["lx".into(), "ly".into(), "lz".into()], t).expect("so3 constants")
}

/// `sl(2,C)` as a 6-dimensional real algebra with basis `h, e, f, ih, ie, if`.
pub fn sl2c_real() -> LieAlgebra {
    let base = sl2();
    let mut t = StructureTable::zeros(6);
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let c = base.basis_bracket(i, j);
            let mut real = vec![Rational::zero(); 6];
            let mut imag = vec![Rational::zero(); 6];
            let mut neg_real = vec![Rational::zero(); 6];
            for k in 0..3 {
                real[k] = c[k].clone();
                imag[k + 3] = c[k].clone();
                neg_real[k] = -c[k].clone();
            }
            t.set_raw(i, j, &real);
            t.set_raw(i + 3, j, &imag);
            t.set_raw(i, j + 3, &imag);
            t.set_raw(i + 3, j + 3, &neg_real);
        }
    }
    let nm = ["h", "e", "f", "ih", "ie", "if"].iter().map(|s| s.to_string()).collect();
    LieAlgebra::new(nm, t).expect("sl2(C) constants")
}

/// Lie algebra spanned by the given matrices, which must close under the commutator.
pub fn from_matrix_basis(nm: Vec<String>, mats: &[RatMatrix]) -> Result<LieAlgebra, BuildError> {
    let d = mats.len();
    let flat: Vec<Vec<Rational>> = mats.iter().map(|m| m.entries().to_vec()).collect();
    let len = flat.first().map_or(0, Vec::len);
    let basis = RatMatrix::from_columns(len, &flat);
    if basis.rank() != d {
        return Err(BuildError::InvalidParams("matrix basis is linearly dependent".into()));
    }
    let mut t = StructureTable::zeros(d);
    for i in 0..d {
        for j in i + 1..d {
            let c = mats[i].commutator(&mats[j]);
            let coeffs = basis.solve(c.entries()).map_err(|_| BuildError::NotClosed)?;
            t.set_bracket(i, j, &coeffs);
        }
    }
    Ok(LieAlgebra::new(nm, t)?)
}

/// Basis of `{X ∈ gl(n) : constraint(X) = 0}` for a linear constraint.
fn matrix_solution_space(n: usize, constraint: impl Fn(&RatMatrix) -> Vec<Rational>) -> Vec<RatMatrix> {
    let mut cols = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let mut unit = RatMatrix::zeros(n, n);
            unit[(p, q)] = Rational::one();
            cols.push(constraint(&unit));
        }
    }
    let rows = cols[0].len();
    let k = RatMatrix::from_columns(rows, &cols).kernel();
    k.columns()
        .into_iter()
        .map(|v| {
            let mut m = RatMatrix::zeros(n, n);
            for p in 0..n {
                for q in 0..n {
                    m[(p, q)] = v[p * n + q].clone();
                }
            }
            m
        })
        .collect()
}

fn preserving(form: &RatMatrix) -> impl Fn(&RatMatrix) -> Vec<Rational> + '_ {
    move |x| x.transpose().mul(form).add(&form.mul(x)).entries().to_vec()
}

pub fn sl3r() -> LieAlgebra {
    let mats = matrix_solution_space(3, |x| vec![x.trace()]);
    let d = mats.len();
    from_matrix_basis(names("m", d), &mats).expect("sl3 closes")
}

/// `su(2,1)` realized as real 6×6 matrices.
pub fn su21() -> LieAlgebra {
    let eta = RatMatrix::diagonal(&[rat(1), rat(1), rat(-1), rat(1), rat(1), rat(-1)]);
    let mut j = RatMatrix::zeros(6, 6);
    for i in 0..3 {
        j[(i, i + 3)] = rat(-1);
        j[(i + 3, i)] = rat(1);
    }
    let mats = matrix_solution_space(6, |x| {
        let mut c = preserving(&eta)(x);
        c.extend(x.commutator(&j).entries().iter().cloned());
        c.push(x.trace());
        c.push((0..3).fold(Rational::zero(), |acc, i| acc + &x[(i + 3, i)]));
        c
    });
    let d = mats.len();
    from_matrix_basis(names("m", d), &mats).expect("su(2,1) closes")
}

pub fn so41() -> LieAlgebra {
    let eta = RatMatrix::diagonal(&[rat(1), rat(1), rat(1), rat(1), rat(-1)]);
    let mats = matrix_solution_space(5, preserving(&eta));
    let d = mats.len();
    from_matrix_basis(names("m", d), &mats).expect("so(4,1) closes")
}

/// `sp(4,R)`, the real-rank-two symplectic algebra.
pub fn sp4r() -> LieAlgebra {
    let mut omega = RatMatrix::zeros(4, 4);
    for i in 0..2 {
        omega[(i, i + 2)] = rat(1);
        omega[(i + 2, i)] = rat(-1);
    }
    let mats = matrix_solution_space(4, preserving(&omega));
    let d = mats.len();
    from_matrix_basis(names("m", d), &mats).expect("sp(4) closes")
}

pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let d = da + db;
    let mut t = StructureTable::zeros(d);
    for i in 0..da {
        for j in 0..da {
            let mut v = vec![Rational::zero(); d];
            v[..da].clone_from_slice(a.basis_bracket(i, j));
            t.set_raw(i, j, &v);
        }
    }
    for i in 0..db {
        for j in 0..db {
            let mut v = vec![Rational::zero(); d];
            v[da..].clone_from_slice(b.basis_bracket(i, j));
            t.set_raw(da + i, da + j, &v);
        }
    }
    let mut nm: Vec<String> = a.names().to_vec();
    for n in b.names() {
        let mut candidate = n.clone();
        while nm.contains(&candidate) {
            candidate.push('\'');
        }
        nm.push(candidate);
    }
    LieAlgebra::new(nm, t).expect("direct sum of Lie algebras")
}

/// `g ⊗ C` viewed as a real algebra. Basis: `x_k`, then `i·x_k`.
pub fn complexify(g: &LieAlgebra) -> LieAlgebra {
    let n = g.dim();
    let mut t = StructureTable::zeros(2 * n);
    for a in 0..n {
        for b in 0..n {
            let c = g.basis_bracket(a, b);
            let mut re = vec![Rational::zero(); 2 * n];
            let mut im = vec![Rational::zero(); 2 * n];
            re[..n].clone_from_slice(c);
            im[n..].clone_from_slice(c);
            let neg: Vec<Rational> = re.iter().map(|x| -x).collect();
            t.set_raw(a, b, &re);
            t.set_raw(a, n + b, &im);
            t.set_raw(n + a, b, &im);
            t.set_raw(n + a, n + b, &neg);
        }
    }
    let mut nm: Vec<String> = g.names().to_vec();
    nm.extend(g.names().iter().map(|x| format!("i{x}")));
    LieAlgebra::new(nm, t).expect("complexification of a Lie algebra")
}

/// `r ⋊ s` where `action[a]` is the derivation of `r` by which the `a`-th
/// basis vector of `s` acts. Basis: `r` first, then `s`.
pub fn semidirect(r: &LieAlgebra, s: &LieAlgebra, action: &[RatMatrix]) -> Result<LieAlgebra, BuildError> {
    let (dr, ds) = (r.dim(), s.dim());
    if action.len() != ds || action.iter().any(|m| m.rows() != dr || m.cols() != dr) {
        return Err(BuildError::InvalidParams("one dr×dr action matrix per basis vector of s".into()));
    }
    for (a, da) in action.iter().enumerate() {
        for i in 0..dr {
            for j in i + 1..dr {
                let (ei, ej) = (r.unit(i), r.unit(j));
                let lhs = da.mul_vec(r.basis_bracket(i, j));
                let t1 = r.bracket(&da.mul_vec(&ei), &ej)?;
                let t2 = r.bracket(&ei, &da.mul_vec(&ej))?;
                let rhs: Vec<Rational> = t1.iter().zip(&t2).map(|(x, y)| x + y).collect();
                if lhs != rhs {
                    return Err(BuildError::NotDerivation(a));
                }
            }
        }
    }
    for a in 0..ds {
        for b in a + 1..ds {
            let c = s.basis_bracket(a, b);
            let expected = c
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .fold(RatMatrix::zeros(dr, dr), |acc, (k, x)| acc.add(&action[k].scale(x)));
            if action[a].commutator(&action[b]) != expected {
                return Err(BuildError::NotHomomorphism(a, b));
            }
        }
    }
    let d = dr + ds;
    let mut t = StructureTable::zeros(d);
    for i in 0..dr {
        for j in i + 1..dr {
            let mut v = vec![Rational::zero(); d];
            v[..dr].clone_from_slice(r.basis_bracket(i, j));
            t.set_bracket(i, j, &v);
        }
    }
    for (a, act) in action.iter().enumerate() {
        for b in a + 1..ds {
            let mut v = vec![Rational::zero(); d];
            v[dr..].clone_from_slice(s.basis_bracket(a, b));
            t.set_bracket(dr + a, dr + b, &v);
        }
        for i in 0..dr {
            // [s_a, r_i] = D_a r_i
            let mut v = vec![Rational::zero(); d];
            for (k, vk) in v.iter_mut().enumerate().take(dr) {
                *vk = act[(k, i)].clone();
            }
            t.set_bracket(dr + a, i, &v);
        }
    }
    let mut nm: Vec<String> = r.names().to_vec();
    for n in s.names() {
        let mut candidate = n.clone();
        while nm.contains(&candidate) {
            candidate.push('\'');
        }
        nm.push(candidate);
    }
    Ok(LieAlgebra::new(nm, t)?)
}

/// `v_m ⋊ sl2` for the `m`-dimensional irreducible module.
pub fn v_sl2(m: usize) -> Result<LieAlgebra, BuildError> {
    if m == 0 {
        return Err(BuildError::InvalidParams("module dimension must be at least 1".into()));
    }
    let module = irreducible_sl2_module(m);
    let r = LieAlgebra::new(names("v", m), StructureTable::zeros(m))?;
    semidirect(&r, &sl2(), &module.matrices())
}

/// `h_{2n+1} ⋊ sl2`, with `sl2` acting irreducibly on `e1 … e2n` and fixing `z`.
pub fn h_sl2(n: usize) -> Result<LieAlgebra, BuildError> {
    let r = heisenberg(n)?;
    let module = irreducible_sl2_module(2 * n);
    let extended: Vec<RatMatrix> = module
        .matrices()
        .iter()
        .map(|x| {
            let mut y = RatMatrix::zeros(2 * n + 1, 2 * n + 1);
            for p in 0..2 * n {
                for q in 0..2 * n {
                    y[(p, q)] = x[(p, q)].clone();
                }
            }
            y
        })
        .collect();
    semidirect(&r, &sl2(), &extended)
}

/// `so3 ⋉ R³` with the standard action.
pub fn so3_r3() -> LieAlgebra {
    let s = so3();
    let action: Vec<RatMatrix> = (0..3).map(|i| s.ad_matrix(&s.unit(i)).unwrap()).collect();
    let r = LieAlgebra::new(vec!["t1".into(), "t2".into(), "t3".into()], StructureTable::zeros(3)).unwrap();
    semidirect(&r, &s, &action).expect("standard action is a homomorphism")
}

/// Parsed builder invocation, e.g. `direct_sum sl2 heisenberg 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builder {
    Abelian(usize),
    /// Parameter is the dimension `2n+1`.
    Heisenberg(usize),
    Sl2,
    So3,
    Sl2cReal,
    Sl3r,
    Su21,
    So41,
    Sp4r,
    So3R3,
    VSl2(usize),
    HSl2(usize),
    DirectSum(Box<Builder>, Box<Builder>),
    Complexify(Box<Builder>),
}

impl Builder {
    /// Parses a token stream; returns the builder and the unconsumed tokens.
    pub fn parse<'a>(tokens: &'a [&'a str]) -> Result<(Builder, &'a [&'a str]), BuildError> {
        let (head, rest) = tokens.split_first().ok_or_else(|| BuildError::InvalidParams("missing builder name".into()))?;
        let param = |rest: &'a [&'a str]| -> Result<(usize, &'a [&'a str]), BuildError> {
            let (p, tail) = rest
                .split_first()
                .ok_or_else(|| BuildError::InvalidParams(format!("{head} needs a numeric parameter")))?;
            let v = p.parse().map_err(|_| BuildError::InvalidParams(format!("bad parameter '{p}' for {head}")))?;
            Ok((v, tail))
        };
        Ok(match *head {
            "abelian" => {
                let (m, t) = param(rest)?;
                (Builder::Abelian(m), t)
            }
            "heisenberg" => {
                let (d, t) = param(rest)?;
                (Builder::Heisenberg(d), t)
            }
            "v_sl2" => {
                let (m, t) = param(rest)?;
                (Builder::VSl2(m), t)
            }
            "h_sl2" => {
                let (n, t) = param(rest)?;
                (Builder::HSl2(n), t)
            }
            "sl2" => (Builder::Sl2, rest),
            "so3" => (Builder::So3, rest),
            "sl2C_real" => (Builder::Sl2cReal, rest),
            "sl3R" => (Builder::Sl3r, rest),
            "su21" => (Builder::Su21, rest),
            "so41" => (Builder::So41, rest),
            "sp4R" => (Builder::Sp4r, rest),
            "so3_r3" => (Builder::So3R3, rest),
            "direct_sum" => {
                let (a, rest) = Builder::parse(rest)?;
                let (b, rest) = Builder::parse(rest)?;
                (Builder::DirectSum(Box::new(a), Box::new(b)), rest)
            }
            "complexify" => {
                let (a, rest) = Builder::parse(rest)?;
                (Builder::Complexify(Box::new(a)), rest)
            }
            other => return Err(BuildError::UnknownBuilder(other.to_string())),
        })
    }

    /// Parses a whole token stream, rejecting trailing tokens.
    pub fn parse_all(tokens: &[&str]) -> Result<Builder, BuildError> {
        let (b, rest) = Builder::parse(tokens)?;
        if !rest.is_empty() {
            return Err(BuildError::InvalidParams(format!("unexpected trailing arguments: {}", rest.join(" "))));
        }
        Ok(b)
    }

    pub fn build(&self) -> Result<LieAlgebra, BuildError> {
        match self {
            Builder::Abelian(m) => abelian(*m),
            Builder::Heisenberg(d) => {
                if *d < 3 || d % 2 == 0 {
                    return Err(BuildError::InvalidParams(format!("heisenberg dimension must be odd and >= 3, got {d}")));
                }
                heisenberg((d - 1) / 2)
            }
            Builder::Sl2 => Ok(sl2()),
            Builder::So3 => Ok(so3()),
            Builder::Sl2cReal => Ok(sl2c_real()),
            Builder::Sl3r => Ok(sl3r()),
            Builder::Su21 => Ok(su21()),
            Builder::So41 => Ok(so41()),
            Builder::Sp4r => Ok(sp4r()),
            Builder::So3R3 => Ok(so3_r3()),
            Builder::VSl2(m) => v_sl2(*m),
            Builder::HSl2(n) => h_sl2(*n),
            Builder::DirectSum(a, b) => Ok(direct_sum(&a.build()?, &b.build()?)),
            Builder::Complexify(a) => Ok(complexify(&a.build()?)),
        }
    }
}

impl std::fmt::Display for Builder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Builder::Abelian(m) => write!(f, "abelian {m}"),
            Builder::Heisenberg(d) => write!(f, "heisenberg {d}"),
            Builder::Sl2 => write!(f, "sl2"),
            Builder::So3 => write!(f, "so3"),
            Builder::Sl2cReal => write!(f, "sl2C_real"),
            Builder::Sl3r => write!(f, "sl3R"),
            Builder::Su21 => write!(f, "su21"),
            Builder::So41 => write!(f, "so41"),
            Builder::Sp4r => write!(f, "sp4R"),
            Builder::So3R3 => write!(f, "so3_r3"),
            Builder::VSl2(m) => write!(f, "v_sl2 {m}"),
            Builder::HSl2(n) => write!(f, "h_sl2 {n}"),
            Builder::DirectSum(a, b) => write!(f, "direct_sum {a} {b}"),
            Builder::Complexify(a) => write!(f, "complexify {a}"),
        }
    }
}

/// Builds `name` with whitespace-separated parameters, e.g. `build_named("v_sl2 3")`.
pub fn build_named(spec: &str) -> Result<LieAlgebra, BuildError> {
    let tokens: Vec<&str> = spec.split_whitespace().collect();
    Builder::parse_all(&tokens)?.build()
}

/// The seven algebras used for product-law and dichotomy checks.
pub fn corpus() -> Vec<(Builder, LieAlgebra)> {
    let builders = vec![
        Builder::Sl2,
        Builder::So3,
        Builder::Heisenberg(3),
        Builder::So3R3,
        Builder::VSl2(2),
        Builder::HSl2(1),
        Builder::Sl3r,
    ];
    builders
        .into_iter()
        .map(|b| {
            let g = b.build().expect("corpus builders are valid");
            (b, g)
        })
        .collect()
}

/// Random invertible integer matrix: a product of elementary row operations.
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> RatMatrix {
    let mut p = RatMatrix::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rat(rng.gen_range(-2..=2));
        for k in 0..n {
            let v = &p[(j, k)] * &c;
            p[(i, k)] += v;
        }
    }
    p
}

/// `R^m ⋊ sl2` for a random direct sum of irreducible modules (total
/// dimension at most 6), presented in a random integer basis.
pub fn random_semidirect(seed: u64) -> LieAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dims = Vec::new();
    let mut total = 0;
    loop {
        let d = rng.gen_range(1..=4usize);
        if total + d > 6 {
            break;
        }
        dims.push(d);
        total += d;
        if rng.gen_bool(0.4) {
            break;
        }
    }
    let mut blocks = [RatMatrix::zeros(total, total), RatMatrix::zeros(total, total), RatMatrix::zeros(total, total)];
    let mut offset = 0;
    for &d in &dims {
        let module = irreducible_sl2_module(d);
        for (blk, x) in blocks.iter_mut().zip(module.matrices()) {
            for p in 0..d {
                for q in 0..d {
                    blk[(offset + p, offset + q)] = x[(p, q)].clone();
                }
            }
        }
        offset += d;
    }
    let r = LieAlgebra::new(names("v", total), StructureTable::zeros(total)).unwrap();
    let g = semidirect(&r, &sl2(), &blocks).expect("direct sum of modules is a module");
    let p = random_unimodular(g.dim(), &mut rng);
    g.change_basis(&p).expect("unimodular change of basis")
}

/// Span of the first `k` standard basis vectors of `Q^n`.
pub fn leading_span(n: usize, k: usize) -> Subspace {
    let vs: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        })
        .collect();
    Subspace::span(n, &vs)
}
