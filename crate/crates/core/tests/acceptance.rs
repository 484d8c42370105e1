//! Release acceptance criteria. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use liewa_core::catalog::{Catalog, WaConstant};
use liewa_core::constructions::*;
use liewa_core::format::{emit, parse};
use liewa_core::groups::{rep_matrix, rescaled_symplectic, HeisenbergGroup, HeisenbergLatticePoint};
use liewa_core::lie::LieAlgebra;
use liewa_core::linalg::{rat, Rational};
use liewa_core::orbit::{
    box_points, commutativity_witness, free_pair_witness, nilpotency_witness, partition_check, Ball, BallAction, Space,
};
use liewa_core::report::{analyze, NOT_WEAKLY_AMENABLE, WEAKLY_AMENABLE};
use liewa_core::selftest::random_sl2;
use liewa_core::structure::levi;
use liewa_core::verdict::{dichotomy_case, Dichotomy};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verdict_of(g: &LieAlgebra, c: &Catalog) -> Result<(String, WaConstant), String> {
    let r = analyze("", g, c).map_err(|e| e.to_string())?;
    Ok((r.verdict, r.constant))
}

fn c1(c: &Catalog) -> Outcome {
    let mut algebras = Vec::new();
    for m in 2..=5 {
        algebras.push((format!("v_sl2 {m}"), v_sl2(m).unwrap()));
    }
    for n in 1..=2 {
        algebras.push((format!("h_sl2 {n}"), h_sl2(n).unwrap()));
    }
    for (name, g) in &algebras {
        let (v, k) = verdict_of(g, c)?;
        ensure(v == NOT_WEAKLY_AMENABLE && k == WaConstant::Infinite, || format!("{name}: {v}, {k}"))?;
    }
    Ok(format!("{} algebras not weakly amenable", algebras.len()))
}

fn c2(c: &Catalog) -> Outcome {
    let cases = [
        ("so3_r3", so3_r3()),
        ("sl2 + heisenberg 3", direct_sum(&sl2(), &heisenberg(1).unwrap())),
        ("heisenberg 3", heisenberg(1).unwrap()),
    ];
    for (name, g) in &cases {
        let (v, k) = verdict_of(g, c)?;
        ensure(v == WEAKLY_AMENABLE && k == WaConstant::Finite(rat(1)), || format!("{name}: {v}, {k}"))?;
    }
    Ok("3 algebras weakly amenable with constant 1".into())
}

fn c3(c: &Catalog) -> Outcome {
    let (v, k) = verdict_of(&sl3r(), c)?;
    ensure(v == NOT_WEAKLY_AMENABLE && k.is_infinite(), || format!("sl3R: {v}, {k}"))?;
    Ok("sl3R not weakly amenable".into())
}

fn c4(c: &Catalog) -> Outcome {
    let corpus = corpus();
    let constants: Vec<WaConstant> = corpus.iter().map(|(_, g)| verdict_of(g, c).map(|x| x.1)).collect::<Result<_, _>>()?;
    let mut pairs = 0;
    for i in 0..corpus.len() {
        for j in i + 1..corpus.len() {
            let sum = direct_sum(&corpus[i].1, &corpus[j].1);
            let (_, k) = verdict_of(&sum, c)?;
            let expected = constants[i].clone() * constants[j].clone();
            ensure(k == expected, || format!("{} + {}: {k} != {expected}", corpus[i].0, corpus[j].0))?;
            pairs += 1;
        }
    }
    ensure(pairs == 21, || format!("{pairs} pairs"))?;
    Ok("21 pairs".into())
}

fn c5() -> Outcome {
    let ball = Ball::new(6);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in [2, 4, 6, 8] {
        let j = rescaled_symplectic(m / 2).to_rational();
        for t in 0..100 {
            let a = random_sl2(&mut rng, &ball);
            let b = random_sl2(&mut rng, &ball);
            let za = rep_matrix(m, &a);
            ensure(rep_matrix(m, &a.mul(&b)) == za.mul(&rep_matrix(m, &b)), || format!("hom m={m} trial {t}"))?;
            ensure(za.transpose().mul(&j).mul(&za) == j, || format!("sympl m={m} trial {t}"))?;
        }
    }
    Ok("400 pairs, m = 2, 4, 6, 8".into())
}

/// `N Σ_{i+j=2n+1} (-1)^j w1_i w2_j / (α_i α_j)`, using `α_i α_j = α_j²` on the
/// antidiagonal and Pascal's triangle for the binomials.
fn pairing_oracle(n: usize, w1: &[BigInt], w2: &[BigInt]) -> Rational {
    let mut row = vec![BigInt::one()];
    for _ in 0..2 * n - 1 {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for k in 1..row.len() {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
    let big_n: BigInt = row.iter().product();
    let mut sum = Rational::zero();
    for j in 1..=2 * n {
        let i = 2 * n + 1 - j;
        let term = Rational::new(&w1[i - 1] * &w2[j - 1], row[j - 1].clone());
        sum += if j % 2 == 0 { term } else { -term };
    }
    sum * Rational::from_integer(big_n)
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=2 {
        let h = HeisenbergGroup::new(n).unwrap();
        let point = |rng: &mut ChaCha8Rng| {
            let w = (0..2 * n).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect();
            HeisenbergLatticePoint::new(w, BigInt::from(rng.gen_range(-9..=9)))
        };
        for t in 0..100 {
            let (p, q) = (point(&mut rng), point(&mut rng));
            let oracle = pairing_oracle(n, &p.w, &q.w);
            ensure(oracle.is_integer(), || format!("n={n} trial {t}: pairing {oracle} not integral"))?;
            ensure(oracle == Rational::from_integer(h.pairing(&p.w, &q.w)), || format!("n={n} trial {t}: J' pairing"))?;
            let pq = h.mul(&p, &q).map_err(|e| e.to_string())?;
            let expected_m = &p.m + &q.m + oracle.to_integer();
            ensure(pq.m == expected_m, || format!("n={n} trial {t}: product"))?;
            ensure(h.mul(&p, &h.inverse(&p)).unwrap() == h.identity(), || format!("n={n} trial {t}: inverse"))?;
        }
    }
    Ok("200 pairs, n = 1, 2".into())
}

fn c7() -> Outcome {
    ensure(free_pair_witness(6), || "free pair relation of length <= 6".into())?;
    ensure(nilpotency_witness(1) && nilpotency_witness(2), || "nilpotency".into())?;
    let ball = Ball::new(5);
    let mut checked = 0;
    for space in [Space::Lattice { m: 2 }, Space::Lattice { m: 3 }, Space::Heisenberg { n: 1 }] {
        let action = BallAction::from_ball(space, ball.clone());
        for p in box_points(space.point_dim(), 3) {
            if space.in_n0(&p) {
                continue;
            }
            let w = commutativity_witness(&action.stabilizer(&p));
            ensure(w.commutes, || format!("{space} {p:?}: {:?}", w.failing_pair))?;
            checked += 1;
        }
        let part = partition_check(space, 3, 3);
        ensure(part.n0_invariant && part.is_consistent(), || format!("{space}: partition"))?;
    }
    Ok(format!("{checked} stabilizers commute, N0 invariant"))
}

fn c8() -> Outcome {
    let mut algebras: Vec<(String, LieAlgebra)> = corpus().into_iter().map(|(b, g)| (b.to_string(), g)).collect();
    for seed in 0..10 {
        algebras.push((format!("random_semidirect({seed})"), random_semidirect(seed)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (name, g) in &algebras {
        let d = levi(g).map_err(|e| format!("{name}: {e}"))?;
        d.verify(g).map_err(|e| format!("{name}: {e}"))?;
        let n = g.dim();
        for _ in 0..100 {
            let mut v = || (0..n).map(|_| rat(rng.gen_range(-4..=4))).collect::<Vec<Rational>>();
            let (x, y, z) = (v(), v(), v());
            let lhs = g.killing(&g.bracket(&x, &y).unwrap(), &z).unwrap();
            let rhs = g.killing(&x, &g.bracket(&y, &z).unwrap()).unwrap();
            ensure(lhs == rhs, || format!("{name}: Killing invariance"))?;
        }
    }
    Ok(format!("{} algebras", algebras.len()))
}

fn c9(c: &Catalog) -> Outcome {
    let expected = [
        ("sl2", Dichotomy::CaseA),
        ("so3", Dichotomy::CaseA),
        ("heisenberg 3", Dichotomy::CaseA),
        ("so3_r3", Dichotomy::CaseA),
        ("v_sl2 2", Dichotomy::CaseB),
        ("h_sl2 1", Dichotomy::CaseB),
        ("sl3R", Dichotomy::CaseA),
    ];
    let corpus = corpus();
    ensure(corpus.len() == expected.len(), || "corpus size".into())?;
    for ((b, g), (name, want)) in corpus.iter().zip(expected) {
        ensure(b.to_string() == name, || format!("corpus order: {b}"))?;
        let got = dichotomy_case(g, c).map_err(|e| e.to_string())?;
        // each corpus Levi factor is zero or simple; it is non-compact iff its
        // Killing form has a positive direction
        let d = levi(g).unwrap();
        let killing = g.killing_matrix();
        let s_noncompact = d.levi.vectors().iter().any(|x| {
            let kx: Rational = (0..g.dim()).map(|i| (0..g.dim()).map(|j| &x[i] * &killing[(i, j)] * &x[j]).sum::<Rational>()).sum();
            kx > Rational::zero()
        });
        let commutes = g.bracket_span(&d.radical, &d.levi).is_zero();
        let oracle = if !s_noncompact || commutes { Dichotomy::CaseA } else { Dichotomy::CaseB };
        ensure(got == want && got == oracle, || format!("{name}: got {got}, expected {want}, oracle {oracle}"))?;
    }
    Ok("7 algebras".into())
}

fn c10(c: &Catalog) -> Outcome {
    let builders = [
        "sl2", "so3", "heisenberg 3", "heisenberg 5", "so3_r3", "v_sl2 2", "v_sl2 3", "h_sl2 1", "h_sl2 2", "sl3R",
        "sl2C_real", "su21", "so41", "sp4R", "abelian 2", "direct_sum sl2 heisenberg 3", "direct_sum so3 v_sl2 2",
    ];
    for name in builders {
        let g = build_named(name).map_err(|e| e.to_string())?;
        let memory = analyze(name, &g, c).map_err(|e| format!("{name}: {e}"))?.to_json();
        let text = emit(&g);
        let parsed = parse(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure(parsed == g && emit(&parsed) == text, || format!("{name}: emit/parse"))?;
        let from_file = analyze(name, &parsed, c).map_err(|e| format!("{name}: {e}"))?.to_json();
        let again = analyze(name, &build_named(name).unwrap(), c).unwrap().to_json();
        ensure(memory == from_file && memory == again, || format!("{name}: reports differ"))?;
    }
    Ok(format!("{} builders byte-identical", builders.len()))
}

type Criterion<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let catalog = Catalog::builtin();
    let c = &catalog;
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 verdicts for the sl2 semidirect products", Some(Duration::from_secs(5)), Box::new(move || c1(c))),
        ("2 positive verdicts", None, Box::new(move || c2(c))),
        ("3 rank-two exclusion", None, Box::new(move || c3(c))),
        ("4 product law", None, Box::new(move || c4(c))),
        ("5 representation identities", Some(Duration::from_secs(30)), Box::new(c5)),
        ("6 Heisenberg lattice", None, Box::new(c6)),
        ("7 orbit criterion witnesses", Some(Duration::from_secs(60)), Box::new(c7)),
        ("8 structure contracts", None, Box::new(c8)),
        ("9 dichotomy", None, Box::new(move || c9(c))),
        ("10 determinism and round-trip", None, Box::new(move || c10(c))),
    ];
    let mut failed = 0;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > *l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({elapsed:.2?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name}: {e} ({elapsed:.2?})");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
