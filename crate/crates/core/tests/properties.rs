use liewa_core::catalog::Catalog;
use liewa_core::constructions::*;
use liewa_core::format::{emit, parse};
use liewa_core::groups::*;
use liewa_core::lie::LieAlgebra;
use liewa_core::linalg::*;
use liewa_core::orbit::*;
use liewa_core::subspace::Subspace;
use liewa_core::verdict::decide;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| {
        RatMatrix::from_rows(v.chunks(cols).map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    })
}

fn any_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| small_matrix(r, c))
}

fn square(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RatMatrix> {
    n.prop_flat_map(|k| small_matrix(k, k))
}

fn word() -> impl Strategy<Value = Sl2Element> {
    prop::collection::vec(prop::sample::select(Generator::ALL.to_vec()), 0..=6).prop_map(|w| evaluate_word(&w))
}

fn corpus_algebras() -> &'static [(String, LieAlgebra)] {
    static C: OnceLock<Vec<(String, LieAlgebra)>> = OnceLock::new();
    C.get_or_init(|| corpus().into_iter().map(|(b, g)| (b.to_string(), g)).collect())
}

fn rvec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=3), n).prop_map(|v| v.into_iter().map(|(p, q)| ratio(p, q)).collect())
}

fn algebra_and_vectors(k: usize) -> impl Strategy<Value = (usize, Vec<Vec<Rational>>)> {
    (0..corpus_algebras().len()).prop_flat_map(move |i| {
        let n = corpus_algebras()[i].1.dim();
        (Just(i), prop::collection::vec(rvec(n), k))
    })
}

fn ints(n: usize, r: i64) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-r..=r, n).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_is_annihilated(m in any_matrix()) {
        let k = m.kernel();
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.cols() + m.rank(), m.cols());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn solve_recovers_a_solution(m in any_matrix(), x in prop::collection::vec(-5i64..=5, 5)) {
        let x: Vec<Rational> = x[..m.cols()].iter().map(|&v| rat(v)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn rref_is_idempotent(m in any_matrix()) {
        let (r, p) = m.rref();
        prop_assert_eq!(r.rref(), (r.clone(), p));
    }

    #[test]
    fn signature_is_a_congruence_invariant(a in square(1..=5), seed in any::<u64>()) {
        let s = a.add(&a.transpose());
        let p = random_unimodular(s.rows(), &mut ChaCha8Rng::seed_from_u64(seed));
        let sig = s.symmetric_signature().unwrap();
        prop_assert_eq!(p.transpose().mul(&s).mul(&p).symmetric_signature().unwrap(), sig);
        prop_assert_eq!(sig.dim(), s.rows());
        prop_assert_eq!(sig.positive + sig.negative, s.rank());
    }

    #[test]
    fn determinant_is_multiplicative(a in square(3..=3), b in square(3..=3)) {
        prop_assert_eq!(a.mul(&b).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn minimal_polynomial_annihilates(a in square(1..=4)) {
        let p = minimal_polynomial(&a);
        prop_assert!(p.eval_matrix(&a).is_zero());
        prop_assert!(p.degree().unwrap() <= a.rows());
    }

    #[test]
    fn rational_roots_are_found(roots in prop::collection::btree_set((-8i64..=8, 1i64..=4), 1..=4)) {
        let mut expected: Vec<Rational> = roots.iter().map(|&(p, q)| ratio(p, q)).collect();
        expected.sort();
        expected.dedup();
        let poly = expected.iter().fold(Poly::new(vec![Rational::one()]), |acc, r| {
            let factor = Poly::new(vec![-r.clone(), Rational::one()]);
            let mut c = vec![Rational::zero(); acc.coeffs().len() + 1];
            for (i, a) in acc.coeffs().iter().enumerate() {
                for (j, b) in factor.coeffs().iter().enumerate() {
                    c[i + j] += a * b;
                }
            }
            Poly::new(c)
        });
        prop_assert_eq!(poly.rational_roots(), expected);
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = ratio(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)), Some(r));
    }

    #[test]
    fn subspace_dimension_formula(u in small_matrix(5, 3), v in small_matrix(5, 2)) {
        let (u, v) = (Subspace::column_span(&u), Subspace::column_span(&v));
        let (s, i) = (u.sum(&v), u.intersection(&v));
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(u.contains_subspace(&i) && v.contains_subspace(&i));
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&v));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn jacobi_and_killing_invariance((i, vs) in algebra_and_vectors(3)) {
        let g = &corpus_algebras()[i].1;
        let (x, y, z) = (&vs[0], &vs[1], &vs[2]);
        prop_assert!(g.jacobi_residual(x, y, z).iter().all(Zero::is_zero));
        let lhs = g.killing(&g.bracket(x, y).unwrap(), z).unwrap();
        prop_assert_eq!(lhs, g.killing(x, &g.bracket(y, z).unwrap()).unwrap());
    }

    #[test]
    fn ad_is_a_homomorphism((i, vs) in algebra_and_vectors(2)) {
        let g = &corpus_algebras()[i].1;
        let (x, y) = (&vs[0], &vs[1]);
        let lhs = g.ad_matrix(&g.bracket(x, y).unwrap()).unwrap();
        prop_assert_eq!(lhs, g.ad_matrix(x).unwrap().commutator(&g.ad_matrix(y).unwrap()));
    }

    #[test]
    fn verdict_is_invariant_under_basis_permutation(i in 0usize..7, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let g = &corpus_algebras()[i].1;
        let mut perm: Vec<usize> = (0..g.dim()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = Catalog::builtin();
        let (a, b) = (decide(g, &c).unwrap(), decide(&g.permute(&perm), &c).unwrap());
        prop_assert_eq!(a.weakly_amenable, b.weakly_amenable);
        prop_assert_eq!(a.constant, b.constant);
        prop_assert_eq!(a.dichotomy, b.dichotomy);
    }

    #[test]
    fn product_law(i in 0usize..7, j in 0usize..7) {
        let c = Catalog::builtin();
        let (g1, g2) = (&corpus_algebras()[i].1, &corpus_algebras()[j].1);
        let sum = decide(&direct_sum(g1, g2), &c).unwrap().constant;
        prop_assert_eq!(sum, decide(g1, &c).unwrap().constant * decide(g2, &c).unwrap().constant);
    }

    #[test]
    fn random_semidirect_levi_contracts(seed in any::<u64>()) {
        let g = random_semidirect(seed);
        let d = liewa_core::structure::levi(&g).unwrap();
        prop_assert_eq!(d.verify(&g), Ok(()));
        prop_assert_eq!(d.levi.dim(), 3);
        prop_assert_eq!(parse(&emit(&g)).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rep_is_a_homomorphism(m in 1usize..=8, a in word(), b in word()) {
        let (za, zb) = (rep_matrix(m, &a), rep_matrix(m, &b));
        prop_assert_eq!(rep_matrix(m, &a.mul(&b)), za.mul(&zb));
        prop_assert!(za.is_integral());
        prop_assert_eq!(rep_matrix(m, &a.inverse()), za.inverse().unwrap());
    }

    #[test]
    fn rep_has_determinant_one(m in 1usize..=5, a in word()) {
        prop_assert_eq!(rep_matrix(m, &a).determinant(), Rational::one());
    }

    #[test]
    fn diagonal_rep_matches_module_weights(m in 1usize..=8, p in 1i64..=5, q in 1i64..=5) {
        let a = ratio(p, q);
        let z = rep_matrix_entries(m, &a, &rat(0), &rat(0), &a.recip());
        let h = irreducible_sl2_module(m).h;
        for k in 0..m {
            let weight = to_i64(&h[(k, k)]).unwrap() as i32;
            prop_assert_eq!(&z[(k, k)], &a.pow(weight));
        }
        prop_assert_eq!(z.clone(), RatMatrix::diagonal(&(0..m).map(|k| z[(k, k)].clone()).collect::<Vec<_>>()));
    }

    #[test]
    fn rescaled_form_is_invariant(n in 1usize..=4, a in word()) {
        let z = rep_matrix(2 * n, &a);
        let j = rescaled_symplectic(n).to_rational();
        prop_assert_eq!(z.transpose().mul(&j).mul(&z), j);
    }

    #[test]
    fn heisenberg_group_laws(n in 1usize..=2, seed in any::<u64>(), a in word()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = HeisenbergGroup::new(n).unwrap();
        let mut point = || HeisenbergLatticePoint::new(
            (0..2 * n).map(|_| BigInt::from(rng.gen_range(-7..=7))).collect(),
            BigInt::from(rng.gen_range(-7..=7)),
        );
        let (p, q, r) = (point(), point(), point());
        let pq = h.mul(&p, &q).unwrap();
        prop_assert_eq!(h.mul(&pq, &r).unwrap(), h.mul(&p, &h.mul(&q, &r).unwrap()).unwrap());
        prop_assert_eq!(h.mul(&p, &h.inverse(&p)).unwrap(), h.identity());
        prop_assert_eq!(h.pairing(&p.w, &p.w), BigInt::zero());
        let act = |x: &HeisenbergLatticePoint| h.act(&a, x).unwrap();
        prop_assert_eq!(act(&pq), h.mul(&act(&p), &act(&q)).unwrap());
        prop_assert!(h.commutator(&p, &q).unwrap().is_central());
    }

    #[test]
    fn semidirect_group_laws(m in 1usize..=4, v in ints(4, 5), w in ints(4, 5), a in word(), b in word(), c in word()) {
        let g = SemidirectGroup::lattice(m).unwrap();
        let el = |t: &[BigInt], mat: &Sl2Element| SemidirectElement {
            translation: Translation::Lattice(t[..m].to_vec()),
            matrix: mat.clone(),
        };
        let (x, y, z) = (el(&v, &a), el(&w, &b), el(&v, &c));
        prop_assert_eq!(g.mul(&g.mul(&x, &y).unwrap(), &z).unwrap(), g.mul(&x, &g.mul(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(g.mul(&x, &g.inverse(&x).unwrap()).unwrap(), g.identity());
    }

    #[test]
    fn alpha_is_a_palindrome(n in 1usize..=8) {
        let a = AlphaData::new(n);
        for j in 0..2 * n {
            prop_assert_eq!(&a.alpha_sq[j], &a.alpha_sq[2 * n - 1 - j]);
        }
        prop_assert_eq!(a.alpha_sq.iter().product::<BigInt>(), a.big_n);
    }
}

fn shared_ball() -> &'static Ball {
    static B: OnceLock<Ball> = OnceLock::new();
    B.get_or_init(|| Ball::new(5))
}

fn space() -> impl Strategy<Value = Space> {
    prop_oneof![
        (2usize..=4).prop_map(|m| Space::Lattice { m }),
        Just(Space::Heisenberg { n: 1 }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn stabilizer_coherence(s in space(), x in ints(5, 3), l in 0usize..=3) {
        let x = &x[..s.point_dim()];
        let small = BallAction::from_ball(s, shared_ball().truncate(l));
        let next = BallAction::from_ball(s, shared_ball().truncate(l + 1));
        let filtered: Vec<Sl2Element> = next.stabilizer(x).into_iter().filter(|g| small.ball().contains(g)).collect();
        prop_assert_eq!(small.stabilizer(x), filtered);
    }

    #[test]
    fn orbit_equivariance(s in space(), x in ints(5, 3), l in 0usize..=2, b in 0usize..160) {
        let x = &x[..s.point_dim()];
        let ball = shared_ball().truncate(3);
        let b = &ball.elements()[b % ball.len()];
        let len = ball.word_length(b).unwrap();
        let bx = s.action_matrix(b).mul_vec(x);
        let lhs = BallAction::from_ball(s, shared_ball().truncate(l)).orbit(&bx);
        let rhs = BallAction::from_ball(s, shared_ball().truncate(l + len)).orbit(x);
        prop_assert!(lhs.is_subset(&rhs));
    }

    #[test]
    fn stabilizers_of_nonzero_points_commute(s in space(), x in ints(5, 3)) {
        let x = &x[..s.point_dim()];
        prop_assume!(!s.in_n0(x));
        let action = BallAction::from_ball(s, shared_ball().clone());
        prop_assert!(commutativity_witness(&action.stabilizer(x)).commutes);
    }
}

#[test]
fn orbit_fragments_grow() {
    let x = [BigInt::one(), BigInt::zero()];
    let sizes: Vec<usize> = (0..=5).map(|l| orbit(Space::Lattice { m: 2 }, &x, l).len()).collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    assert!(sizes[4] > sizes[2]);
}

#[test]
fn balls_are_nested() {
    let b = shared_ball();
    for l in 0..5 {
        let inner = b.truncate(l);
        let outer = b.truncate(l + 1);
        assert!(inner.elements().iter().all(|g| outer.contains(g)));
        assert!(inner.len() < outer.len());
    }
}
