//! Finite experiments with `SL(2,Z)` acting on `Z^m` and on `Γ_{2n+1}`:
//! Cayley balls, orbit and stabilizer fragments, and the witnesses used to
//! check the hypotheses of the orbit criterion on boxes.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::groups::{rep_matrix_int, HeisenbergGroup, HeisenbergLatticePoint, Sl2Element};
use crate::linalg::{IntMatrix, RatMatrix, Rational};

/// Default hard cap on ball radii.
pub const DEFAULT_MAX_RADIUS: usize = 8;

/// A point of `Z^m`, or a flattened Heisenberg point `w ++ [m]`.
pub type Point = Vec<BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    S,
    SInv,
    T,
    TInv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::S, Generator::SInv, Generator::T, Generator::TInv];

    pub fn matrix(self) -> Sl2Element {
        match self {
            Generator::S => Sl2Element::s(),
            Generator::SInv => Sl2Element::s().inverse(),
            Generator::T => Sl2Element::t(),
            Generator::TInv => Sl2Element::t().inverse(),
        }
    }

    pub fn inverse(self) -> Generator {
        match self {
            Generator::S => Generator::SInv,
            Generator::SInv => Generator::S,
            Generator::T => Generator::TInv,
            Generator::TInv => Generator::T,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::S => "S",
            Generator::SInv => "S^-1",
            Generator::T => "T",
            Generator::TInv => "T^-1",
        })
    }
}

/// Evaluates a word left to right.
pub fn evaluate_word(word: &[Generator]) -> Sl2Element {
    word.iter().fold(Sl2Element::identity(), |acc, g| acc.mul(&g.matrix()))
}

/// Elements of word length at most `radius`, each with a shortest word.
/// Elements are stored in breadth-first order, so `ball(L)` is a prefix of
/// `ball(L+1)`.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: usize,
    elements: Vec<Sl2Element>,
    words: Vec<Vec<Generator>>,
    layer_ends: Vec<usize>,
    index: HashMap<Sl2Element, usize>,
}

impl Ball {
    pub fn new(radius: usize) -> Self {
        let id = Sl2Element::identity();
        let mut elements = vec![id.clone()];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::from([(id, 0)]);
        let mut layer_ends = vec![1];
        let mut frontier = 0..1;
        for _ in 0..radius {
            for i in frontier.clone() {
                for g in Generator::ALL {
                    let next = elements[i].mul(&g.matrix());
                    if index.contains_key(&next) {
                        continue;
                    }
                    let mut w = words[i].clone();
                    w.push(g);
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    words.push(w);
                }
            }
            frontier = frontier.end..elements.len();
            layer_ends.push(elements.len());
        }
        Ball { radius, elements, words, layer_ends, index }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Sl2Element] {
        &self.elements
    }

    pub fn word(&self, i: usize) -> &[Generator] {
        &self.words[i]
    }

    /// Number of elements of word length at most `l`.
    pub fn size_at(&self, l: usize) -> usize {
        self.layer_ends[l.min(self.radius)]
    }

    pub fn contains(&self, g: &Sl2Element) -> bool {
        self.index.contains_key(g)
    }

    pub fn word_length(&self, g: &Sl2Element) -> Option<usize> {
        self.index.get(g).map(|&i| self.words[i].len())
    }

    /// The sub-ball of radius `l ≤ radius`.
    pub fn truncate(&self, l: usize) -> Ball {
        let l = l.min(self.radius);
        let end = self.size_at(l);
        Ball {
            radius: l,
            elements: self.elements[..end].to_vec(),
            words: self.words[..end].to_vec(),
            layer_ends: self.layer_ends[..=l].to_vec(),
            index: self.index.iter().filter(|(_, &i)| i < end).map(|(g, &i)| (g.clone(), i)).collect(),
        }
    }
}

pub fn ball(radius: usize) -> Ball {
    Ball::new(radius)
}

/// The module acted on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    /// `Z^m` via `Z'`.
    Lattice { m: usize },
    /// `Γ_{2n+1}` via `(w, m) ↦ (Z'(A) w, m)`.
    Heisenberg { n: usize },
}

impl Space {
    pub fn point_dim(&self) -> usize {
        match *self {
            Space::Lattice { m } => m,
            Space::Heisenberg { n } => 2 * n + 1,
        }
    }

    /// Membership in `N₀`: `{0}` for `Z^m`, the center for `Γ`.
    pub fn in_n0(&self, p: &[BigInt]) -> bool {
        match *self {
            Space::Lattice { .. } => p.iter().all(Zero::is_zero),
            Space::Heisenberg { .. } => p[..p.len() - 1].iter().all(Zero::is_zero),
        }
    }

    /// The matrix by which `g` acts on flattened points.
    pub fn action_matrix(&self, g: &Sl2Element) -> IntMatrix {
        match *self {
            Space::Lattice { m } => rep_matrix_int(m, g),
            Space::Heisenberg { n } => {
                let z = crate::groups::rep_matrix(2 * n, g);
                let mut block = RatMatrix::zeros(2 * n + 1, 2 * n + 1);
                for i in 0..2 * n {
                    for j in 0..2 * n {
                        block[(i, j)] = z[(i, j)].clone();
                    }
                }
                block[(2 * n, 2 * n)] = Rational::one();
                block.to_integer().expect("integral")
            }
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Lattice { m } => write!(f, "Z^{m}"),
            Space::Heisenberg { n } => write!(f, "Gamma_{}", 2 * n + 1),
        }
    }
}

/// A ball together with its action matrices on a fixed space.
#[derive(Clone, Debug)]
pub struct BallAction {
    space: Space,
    ball: Ball,
    matrices: Vec<IntMatrix>,
}

impl BallAction {
    pub fn new(space: Space, radius: usize) -> Self {
        Self::from_ball(space, Ball::new(radius))
    }

    pub fn from_ball(space: Space, ball: Ball) -> Self {
        let matrices = ball.elements().iter().map(|g| space.action_matrix(g)).collect();
        BallAction { space, ball, matrices }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn apply(&self, i: usize, x: &[BigInt]) -> Point {
        self.matrices[i].mul_vec(x)
    }

    pub fn orbit(&self, x: &[BigInt]) -> BTreeSet<Point> {
        (0..self.ball.len()).map(|i| self.apply(i, x)).collect()
    }

    pub fn stabilizer(&self, x: &[BigInt]) -> Vec<Sl2Element> {
        (0..self.ball.len()).filter(|&i| self.apply(i, x) == x).map(|i| self.ball.elements()[i].clone()).collect()
    }
}

pub fn orbit(space: Space, x: &[BigInt], radius: usize) -> BTreeSet<Point> {
    BallAction::new(space, radius).orbit(x)
}

pub fn stabilizer_fragment(space: Space, x: &[BigInt], radius: usize) -> Vec<Sl2Element> {
    BallAction::new(space, radius).stabilizer(x)
}

/// `(true, None)` when all pairs commute, otherwise the first failing pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutativityWitness {
    pub commutes: bool,
    pub failing_pair: Option<(Sl2Element, Sl2Element)>,
}

pub fn commutativity_witness(fragment: &[Sl2Element]) -> CommutativityWitness {
    for (i, a) in fragment.iter().enumerate() {
        for b in &fragment[i + 1..] {
            if !a.commutes_with(b) {
                return CommutativityWitness { commutes: false, failing_pair: Some((a.clone(), b.clone())) };
            }
        }
    }
    CommutativityWitness { commutes: true, failing_pair: None }
}

/// A letter of a word in `a^±1, b^±1`: `(0, _)` is `a`, `(1, _)` is `b`, the
/// flag marks an inverse.
pub type Letter = (u8, bool);

/// First nonempty reduced word of length at most `max_len` in `a^±1, b^±1`
/// that evaluates to the identity, searched by increasing length.
pub fn find_relation(a: &Sl2Element, b: &Sl2Element, max_len: usize) -> Option<Vec<Letter>> {
    let letters: [(Letter, Sl2Element); 4] =
        [((0, false), a.clone()), ((0, true), a.inverse()), ((1, false), b.clone()), ((1, true), b.inverse())];
    let mut layer: Vec<(Vec<Letter>, Sl2Element)> = vec![(Vec::new(), Sl2Element::identity())];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for (word, value) in &layer {
            for (letter, m) in &letters {
                if word.last().is_some_and(|&(g, inv)| g == letter.0 && inv != letter.1) {
                    continue;
                }
                let v = value.mul(m);
                let mut w = word.clone();
                w.push(*letter);
                if v.is_identity() {
                    return Some(w);
                }
                next.push((w, v));
            }
        }
        layer = next;
    }
    None
}

pub fn free_pair_witness_for(a: &Sl2Element, b: &Sl2Element, max_len: usize) -> bool {
    find_relation(a, b, max_len).is_none()
}

/// The ping-pong pair `[[1,2],[0,1]]`, `[[1,0],[2,1]]` has no relation of
/// length at most `max_len`.
pub fn free_pair_witness(max_len: usize) -> bool {
    let a = Sl2Element::from_i64(1, 2, 0, 1).unwrap();
    let b = Sl2Element::from_i64(1, 0, 2, 1).unwrap();
    free_pair_witness_for(&a, &b, max_len)
}

/// Commutators of the standard generators of `Γ_{2n+1}` are central and
/// commute with every generator.
pub fn nilpotency_witness(n: usize) -> bool {
    let Ok(h) = HeisenbergGroup::new(n) else { return false };
    let mut gens: Vec<HeisenbergLatticePoint> = (0..2 * n).map(|j| h.generator(j)).collect();
    gens.push(h.central_generator());
    for p in &gens {
        for q in &gens {
            let Ok(c) = h.commutator(p, q) else { return false };
            if !c.is_central() {
                return false;
            }
            if gens.iter().any(|g| h.commutator(&c, g).map(|k| k != h.identity()).unwrap_or(true)) {
                return false;
            }
        }
    }
    true
}

/// `Z^m` is abelian, so every commutator of its unit vectors vanishes.
pub fn lattice_nilpotency_witness(m: usize) -> bool {
    let unit = |j: usize| -> Point { (0..m).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }).collect() };
    let add = |x: &Point, y: &Point| -> Point { x.iter().zip(y).map(|(a, b)| a + b).collect() };
    (0..m).all(|i| (0..m).all(|j| add(&unit(i), &unit(j)) == add(&unit(j), &unit(i))))
}

/// All integer points of `[-r, r]^d`, in lexicographic order.
pub fn box_points(d: usize, r: i64) -> Vec<Point> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p: Point| {
                (-r..=r).map(move |k| {
                    let mut q = p.clone();
                    q.push(BigInt::from(k));
                    q
                })
            })
            .collect();
    }
    out
}

/// A box cut into the `N₀` part and ball-connected classes of the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub space: Space,
    pub box_radius: i64,
    pub radius: usize,
    pub base_size: usize,
    pub n0_class: Vec<Point>,
    /// Every ball element maps each `N₀` point into `N₀`.
    pub n0_invariant: bool,
    /// Every ball element fixes each `N₀` point.
    pub n0_fixed: bool,
    pub classes: Vec<Vec<Point>>,
    pub representatives: Vec<Point>,
    /// The in-box orbit fragments of distinct representatives are disjoint.
    pub fragments_disjoint: bool,
    /// `N₀` and the classes are disjoint and cover the box.
    pub covers: bool,
}

impl OrbitPartition {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_of(&self, p: &[BigInt]) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search_by(|q| q.as_slice().cmp(p)).is_ok())
    }

    pub fn is_consistent(&self) -> bool {
        self.n0_invariant && self.fragments_disjoint && self.covers
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Partitions `[-r, r]^d` under the ball: `N₀` separately, the rest by
/// connectivity through single ball elements whose image stays in the box.
pub fn partition_check(space: Space, box_radius: i64, radius: usize) -> OrbitPartition {
    let action = BallAction::new(space, radius);
    let points = box_points(space.point_dim(), box_radius);
    let pos: BTreeMap<Point, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

    let mut n0_class = Vec::new();
    let mut n0_invariant = true;
    let mut n0_fixed = true;
    let mut parent: Vec<usize> = (0..points.len()).collect();
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for (i, p) in points.iter().enumerate() {
        let in_n0 = space.in_n0(p);
        if in_n0 {
            n0_class.push(p.clone());
        }
        for k in 0..action.ball().len() {
            let q = action.apply(k, p);
            if in_n0 {
                n0_invariant &= space.in_n0(&q);
                n0_fixed &= &q == p;
                continue;
            }
            if let Some(&j) = pos.get(&q) {
                images[i].push(j);
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }

    let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        if !space.in_n0(p) {
            let root = find(&mut parent, i);
            grouped.entry(root).or_default().push(i);
        }
    }
    let classes: Vec<Vec<Point>> = grouped.values().map(|c| c.iter().map(|&i| points[i].clone()).collect()).collect();
    let representatives: Vec<Point> = classes.iter().map(|c| c[0].clone()).collect();

    let mut owner: HashMap<usize, usize> = HashMap::new();
    let mut fragments_disjoint = true;
    for (c, members) in grouped.values().enumerate() {
        for &j in &images[members[0]] {
            if space.in_n0(&points[j]) {
                fragments_disjoint = false;
            }
            if *owner.entry(j).or_insert(c) != c {
                fragments_disjoint = false;
            }
        }
    }

    let covered = n0_class.len() + classes.iter().map(Vec::len).sum::<usize>();
    OrbitPartition {
        space,
        box_radius,
        radius,
        base_size: points.len(),
        n0_class,
        n0_invariant,
        n0_fixed,
        classes,
        representatives,
        fragments_disjoint,
        covers: covered == points.len(),
    }
}

/// Stabilizer fragments of every point of `[-r, r]^d` outside `N₀` are
/// commutative. Returns the first counterexample.
pub fn stabilizers_commute_on_box(
    space: Space,
    box_radius: i64,
    radius: usize,
) -> Result<(), Box<(Point, CommutativityWitness)>> {
    let action = BallAction::new(space, radius);
    for p in box_points(space.point_dim(), box_radius) {
        if space.in_n0(&p) {
            continue;
        }
        let w = commutativity_witness(&action.stabilizer(&p));
        if !w.commutes {
            return Err(Box::new((p, w)));
        }
    }
    Ok(())
}

pub fn parse_point(s: &str) -> Option<Point> {
    s.split(',').map(|t| t.trim().parse::<BigInt>().ok()).collect()
}

pub fn format_point(p: &[BigInt]) -> String {
    p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(xs: &[i64]) -> Point {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ball_sizes() {
        let b = Ball::new(6);
        assert_eq!(Ball::new(0).len(), 1);
        assert_eq!(b.size_at(1), 5);
        for l in 0..6 {
            assert!(b.size_at(l) < b.size_at(l + 1));
        }
        for (i, g) in b.elements().iter().enumerate() {
            assert_eq!(&evaluate_word(b.word(i)), g);
        }
        let t = b.truncate(3);
        assert_eq!(t.len(), b.size_at(3));
        assert!(t.elements().iter().all(|g| b.contains(g)));
    }

    #[test]
    fn small_orbits() {
        let z2 = Space::Lattice { m: 2 };
        assert_eq!(orbit(z2, &pt(&[0, 0]), 3), BTreeSet::from([pt(&[0, 0])]));
        assert_eq!(orbit(z2, &pt(&[1, 0]), 1), BTreeSet::from([pt(&[1, 0]), pt(&[0, 1]), pt(&[0, -1])]));
        let g = Space::Heisenberg { n: 1 };
        assert_eq!(orbit(g, &pt(&[0, 0, 5]), 3), BTreeSet::from([pt(&[0, 0, 5])]));
    }

    #[test]
    fn stabilizer_of_first_basis_vector() {
        let z2 = Space::Lattice { m: 2 };
        let b = Ball::new(4);
        let stab = stabilizer_fragment(z2, &pt(&[1, 0]), 4);
        let expected: Vec<Sl2Element> = b
            .elements()
            .iter()
            .filter(|g| {
                let [a, _, c, d] = g.entries();
                a.is_one() && c.is_zero() && d.is_one()
            })
            .cloned()
            .collect();
        assert_eq!(stab, expected);
        assert!(!stab.contains(&Sl2Element::from_i64(-1, 0, 0, -1).unwrap()));
        assert_eq!(stabilizer_fragment(z2, &pt(&[0, 0]), 4).len(), b.len());
    }

    #[test]
    fn commutativity() {
        assert!(commutativity_witness(&[Sl2Element::identity()]).commutes);
        let w = commutativity_witness(&[Sl2Element::s(), Sl2Element::t()]);
        assert!(!w.commutes);
        assert_eq!(w.failing_pair, Some((Sl2Element::s(), Sl2Element::t())));
    }

    #[test]
    fn free_pair() {
        assert!(free_pair_witness(1));
        assert!(free_pair_witness(6));
        let t = Sl2Element::t();
        assert_eq!(find_relation(&t, &t, 6), Some(vec![(0, false), (1, true)]));
    }

    #[test]
    fn nilpotency() {
        assert!(nilpotency_witness(1));
        assert!(nilpotency_witness(2));
        assert!(!nilpotency_witness(0));
        assert!(lattice_nilpotency_witness(3));
    }

    #[test]
    fn partitions() {
        let p = partition_check(Space::Lattice { m: 2 }, 0, 3);
        assert_eq!(p.n0_class, vec![pt(&[0, 0])]);
        assert!(p.classes.is_empty());
        let p = partition_check(Space::Lattice { m: 2 }, 3, 3);
        assert!(p.is_consistent());
        assert_eq!(p.n0_class, vec![pt(&[0, 0])]);
        // (1,1) = T·(1,0), so both lie in one class
        assert_eq!(p.class_of(&pt(&[1, 0])), p.class_of(&pt(&[1, 1])));
        assert_ne!(p.class_of(&pt(&[1, 0])), p.class_of(&pt(&[2, 0])));
        let g = partition_check(Space::Heisenberg { n: 1 }, 1, 2);
        assert!(g.is_consistent() && g.n0_fixed);
        assert_eq!(g.n0_class.len(), 3);
    }
}
