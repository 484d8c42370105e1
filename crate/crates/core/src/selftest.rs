//! Seeded runtime property suites behind `liewa selftest` and `liewa rep`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::constructions::{corpus, direct_sum, random_semidirect, random_unimodular};
use crate::groups::{
    rep_matrix, rescaled_symplectic, AlphaData, HeisenbergGroup, HeisenbergLatticePoint, SemidirectElement,
    SemidirectGroup, Sl2Element, Translation,
};
use crate::lie::LieAlgebra;
use crate::linalg::{rat, RatMatrix, Rational};
use crate::orbit::{Ball, BallAction, Space};
use crate::report::SCHEMA_VERSION;
use crate::structure::levi;
use crate::verdict::decide;

/// Radius of the ball random `SL(2,Z)` elements are drawn from.
pub const SAMPLE_RADIUS: usize = 6;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-r..=r))).collect()
}

fn random_ints(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.gen_range(-r..=r))).collect()
}

/// Uniform sample from `ball(SAMPLE_RADIUS)`.
pub fn random_sl2(rng: &mut impl Rng, ball: &Ball) -> Sl2Element {
    ball.elements().choose(rng).expect("nonempty ball").clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepCheck {
    /// `Z'(AB) = Z'(A) Z'(B)`.
    Hom,
    /// `Z'(A)ᵀ J' Z'(A) = J'` (even `m`).
    Sympl,
    /// `Γ_{m+1}` closure, pairing integrality against a rational oracle, and
    /// the automorphism property (even `m`).
    Lattice,
    /// Associativity and inverses in `Z^m ⋊ SL(2,Z)` and, for even `m`, in
    /// `Γ_{m+1} ⋊ SL(2,Z)`.
    Assoc,
}

impl RepCheck {
    pub const ALL: [RepCheck; 4] = [RepCheck::Hom, RepCheck::Sympl, RepCheck::Lattice, RepCheck::Assoc];
}

impl FromStr for RepCheck {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "hom" => Ok(RepCheck::Hom),
            "sympl" => Ok(RepCheck::Sympl),
            "lattice" => Ok(RepCheck::Lattice),
            "assoc" => Ok(RepCheck::Assoc),
            other => Err(format!("unknown check '{other}' (expected hom, sympl, lattice or assoc)")),
        }
    }
}

impl fmt::Display for RepCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepCheck::Hom => "hom",
            RepCheck::Sympl => "sympl",
            RepCheck::Lattice => "lattice",
            RepCheck::Assoc => "assoc",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: impl Into<String>) -> Self {
        SuiteResult { name: name.into(), trials: 0, passed: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < 5 {
            self.failures.push(describe());
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<28} {:>4}/{:<4} {}", self.name, self.passed, self.trials, if self.ok() { "ok" } else { "FAILED" })?;
        for e in &self.failures {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

/// `N⟨u₁, J u₂⟩` for `u = D⁻¹w`, with `J_{ij} = (-1)^j` on the antidiagonal.
/// Each term divides by `α_i α_j = sqrt(α_i² α_j²)`, which is an integer.
pub fn pairing_oracle(n: usize, w1: &[BigInt], w2: &[BigInt]) -> Rational {
    let alpha = AlphaData::new(n);
    let size = 2 * n;
    let mut sum = Rational::zero();
    for j in 1..=size {
        let i = size + 1 - j;
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        let product = &alpha.alpha_sq[i - 1] * &alpha.alpha_sq[j - 1];
        let root = product.sqrt();
        assert_eq!(&root * &root, product, "alpha_i alpha_j is not an integer");
        let denom = Rational::from_integer(root);
        let term = Rational::from_integer(&w1[i - 1] * &w2[j - 1]) / denom;
        sum += sign * term;
    }
    sum * Rational::from_integer(alpha.big_n)
}

pub fn run_rep_check(check: RepCheck, m: usize, trials: usize, seed: u64) -> SuiteResult {
    let mut out = SuiteResult::new(format!("rep/{check}/m={m}"));
    let ball = Ball::new(SAMPLE_RADIUS);
    let mut rng = rng(seed);
    let even = m >= 2 && m.is_multiple_of(2);
    for _ in 0..trials {
        let a = random_sl2(&mut rng, &ball);
        let b = random_sl2(&mut rng, &ball);
        match check {
            RepCheck::Hom => {
                let ok = rep_matrix(m, &a.mul(&b)) == rep_matrix(m, &a).mul(&rep_matrix(m, &b));
                out.record(ok, || format!("A = {a}, B = {b}"));
            }
            RepCheck::Sympl => {
                if !even {
                    out.record(false, || format!("m = {m} is not even"));
                    break;
                }
                let z = rep_matrix(m, &a);
                let j = rescaled_symplectic(m / 2).to_rational();
                out.record(z.transpose().mul(&j).mul(&z) == j, || format!("A = {a}"));
            }
            RepCheck::Lattice => {
                if !even {
                    out.record(false, || format!("m = {m} is not even"));
                    break;
                }
                let n = m / 2;
                let h = HeisenbergGroup::new(n).unwrap();
                let p = HeisenbergLatticePoint::new(random_ints(&mut rng, m, 6), BigInt::from(rng.gen_range(-6..=6)));
                let q = HeisenbergLatticePoint::new(random_ints(&mut rng, m, 6), BigInt::from(rng.gen_range(-6..=6)));
                let pq = h.mul(&p, &q).unwrap();
                let pairing = h.pairing(&p.w, &q.w);
                let oracle = pairing_oracle(n, &p.w, &q.w);
                let ok = oracle.is_integer()
                    && oracle == Rational::from_integer(pairing)
                    && h.mul(&p, &h.inverse(&p)).unwrap() == h.identity()
                    && h.mul(&h.inverse(&q), &q).unwrap() == h.identity()
                    && h.act(&a, &pq).unwrap() == h.mul(&h.act(&a, &p).unwrap(), &h.act(&a, &q).unwrap()).unwrap();
                out.record(ok, || format!("A = {a}, p = {p:?}, q = {q:?}"));
            }
            RepCheck::Assoc => {
                let c = random_sl2(&mut rng, &ball);
                let mut groups = vec![SemidirectGroup::lattice(m.max(1)).unwrap()];
                if even {
                    groups.push(SemidirectGroup::heisenberg(m / 2).unwrap());
                }
                let mut ok = true;
                for g in &groups {
                    let el = |rng: &mut ChaCha8Rng, mat: &Sl2Element| -> SemidirectElement {
                        let translation = match g {
                            SemidirectGroup::Lattice { m } => Translation::Lattice(random_ints(rng, *m, 4)),
                            SemidirectGroup::Heisenberg(h) => Translation::Heisenberg(HeisenbergLatticePoint::new(
                                random_ints(rng, 2 * h.n(), 4),
                                BigInt::from(rng.gen_range(-4..=4)),
                            )),
                        };
                        SemidirectElement { translation, matrix: mat.clone() }
                    };
                    let (x, y, z) = (el(&mut rng, &a), el(&mut rng, &b), el(&mut rng, &c));
                    let left = g.mul(&g.mul(&x, &y).unwrap(), &z).unwrap();
                    let right = g.mul(&x, &g.mul(&y, &z).unwrap()).unwrap();
                    ok &= left == right;
                    ok &= g.mul(&x, &g.inverse(&x).unwrap()).unwrap() == g.identity();
                    ok &= g.mul(&g.inverse(&y).unwrap(), &y).unwrap() == g.identity();
                }
                out.record(ok, || format!("A = {a}, B = {b}, C = {c}"));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub schema_version: u32,
    pub seed: u64,
    pub trials: usize,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(f, "{s}")?;
        }
        let failed = self.suites.iter().filter(|s| !s.ok()).count();
        write!(f, "{} suites, {} failed (seed {}, {} trials)", self.suites.len(), failed, self.seed, self.trials)
    }
}

fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
    let data: Vec<Vec<Rational>> = (0..rows).map(|_| random_vector(rng, cols, 3)).collect();
    RatMatrix::from_rows(data)
}

fn suite_kernel(trials: usize, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut out = SuiteResult::new("linalg/kernel");
    for _ in 0..trials {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=6));
        let m = random_int_matrix(rng, r, c);
        let k = m.kernel();
        let ok = m.mul(&k).is_zero() && k.cols() + m.rank() == c && k.rank() == k.cols();
        out.record(ok, || format!("{m:?}"));
    }
    out
}

fn suite_congruence(trials: usize, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut out = SuiteResult::new("linalg/congruence");
    for _ in 0..trials {
        let n = rng.gen_range(1..=5);
        let a = random_int_matrix(rng, n, n);
        let s = a.add(&a.transpose());
        let p = random_unimodular(n, rng);
        let ok = s.symmetric_signature() == p.transpose().mul(&s).mul(&p).symmetric_signature();
        out.record(ok, || format!("S = {s:?}, P = {p:?}"));
    }
    out
}

fn suite_lie_identities(trials: usize, rng: &mut ChaCha8Rng, algebras: &[(String, LieAlgebra)]) -> [SuiteResult; 2] {
    let mut jacobi = SuiteResult::new("lie/jacobi");
    let mut killing = SuiteResult::new("lie/killing-invariance");
    for _ in 0..trials {
        let (name, g) = algebras.choose(rng).unwrap();
        let n = g.dim();
        let (x, y, z) = (random_vector(rng, n, 3), random_vector(rng, n, 3), random_vector(rng, n, 3));
        jacobi.record(g.jacobi_residual(&x, &y, &z).iter().all(Zero::is_zero), || name.clone());
        let xy = g.bracket(&x, &y).unwrap();
        let yz = g.bracket(&y, &z).unwrap();
        killing.record(g.killing(&xy, &z).unwrap() == g.killing(&x, &yz).unwrap(), || name.clone());
    }
    [jacobi, killing]
}

fn suite_levi(trials: usize, seed: u64) -> SuiteResult {
    let mut out = SuiteResult::new("structure/levi-contracts");
    for t in 0..trials {
        let g = random_semidirect(seed.wrapping_add(t as u64));
        let ok = match levi(&g) {
            Ok(d) => d.verify(&g).is_ok(),
            Err(_) => false,
        };
        out.record(ok, || format!("random_semidirect({})", seed.wrapping_add(t as u64)));
    }
    out
}

fn suite_permutation(trials: usize, rng: &mut ChaCha8Rng, catalog: &Catalog, algebras: &[(String, LieAlgebra)]) -> SuiteResult {
    let mut out = SuiteResult::new("verdict/permutation");
    for _ in 0..trials {
        let (name, g) = algebras.choose(rng).unwrap();
        let mut perm: Vec<usize> = (0..g.dim()).collect();
        perm.shuffle(rng);
        let (a, b) = (decide(g, catalog), decide(&g.permute(&perm), catalog));
        let ok = match (a, b) {
            (Ok(a), Ok(b)) => a.weakly_amenable == b.weakly_amenable && a.constant == b.constant && a.dichotomy == b.dichotomy,
            _ => false,
        };
        out.record(ok, || format!("{name} permuted by {perm:?}"));
    }
    out
}

fn suite_product_law(trials: usize, rng: &mut ChaCha8Rng, catalog: &Catalog, algebras: &[(String, LieAlgebra)]) -> SuiteResult {
    let mut out = SuiteResult::new("verdict/product-law");
    for _ in 0..trials {
        let (n1, g1) = algebras.choose(rng).unwrap();
        let (n2, g2) = algebras.choose(rng).unwrap();
        let ok = match (decide(g1, catalog), decide(g2, catalog), decide(&direct_sum(g1, g2), catalog)) {
            (Ok(a), Ok(b), Ok(c)) => c.constant == a.constant * b.constant,
            _ => false,
        };
        out.record(ok, || format!("{n1} + {n2}"));
    }
    out
}

fn suite_orbits(trials: usize, rng: &mut ChaCha8Rng) -> [SuiteResult; 2] {
    let mut coherence = SuiteResult::new("orbit/stabilizer-coherence");
    let mut equivariance = SuiteResult::new("orbit/equivariance");
    let big = Ball::new(5);
    let actions: Vec<BallAction> = [Space::Lattice { m: 2 }, Space::Lattice { m: 3 }, Space::Heisenberg { n: 1 }]
        .into_iter()
        .map(|s| BallAction::from_ball(s, big.clone()))
        .collect();
    for _ in 0..trials {
        let action = actions.choose(rng).unwrap();
        let space = action.space();
        let x = random_ints(rng, space.point_dim(), 3);
        let l = rng.gen_range(0..=3);
        let small = BallAction::from_ball(space, big.truncate(l));
        let next = BallAction::from_ball(space, big.truncate(l + 1));
        let expected: Vec<Sl2Element> = next.stabilizer(&x).into_iter().filter(|g| small.ball().contains(g)).collect();
        coherence.record(small.stabilizer(&x) == expected, || format!("{space} x = {x:?}, L = {l}"));

        let l = rng.gen_range(0..=2);
        let b = random_sl2(rng, &big.truncate(5 - l));
        let len = big.word_length(&b).unwrap();
        let bx = space.action_matrix(&b).mul_vec(&x);
        let lhs = BallAction::from_ball(space, big.truncate(l)).orbit(&bx);
        let rhs = BallAction::from_ball(space, big.truncate(l + len)).orbit(&x);
        equivariance.record(lhs.is_subset(&rhs), || format!("{space} x = {x:?}, B = {b}, L = {l}"));
    }
    [coherence, equivariance]
}

/// Runs every suite with `trials` trials each. Deterministic in `seed`.
pub fn run_selftest(trials: usize, seed: u64, catalog: &Catalog) -> SelftestReport {
    let mut rng = rng(seed);
    let algebras: Vec<(String, LieAlgebra)> = corpus().into_iter().map(|(b, g)| (b.to_string(), g)).collect();
    let mut suites = vec![suite_kernel(trials, &mut rng), suite_congruence(trials, &mut rng)];
    suites.extend(suite_lie_identities(trials, &mut rng, &algebras));
    suites.push(suite_levi(trials, seed));
    suites.push(suite_permutation(trials, &mut rng, catalog, &algebras));
    suites.push(suite_product_law(trials, &mut rng, catalog, &algebras));
    for m in [2, 3, 4, 5, 6, 8] {
        for check in RepCheck::ALL {
            if m % 2 == 1 && matches!(check, RepCheck::Sympl | RepCheck::Lattice) {
                continue;
            }
            suites.push(run_rep_check(check, m, trials, rng.gen()));
        }
    }
    suites.extend(suite_orbits(trials, &mut rng));
    SelftestReport { schema_version: SCHEMA_VERSION, seed, trials, suites }
}
