//! Normal forms against independent oracles: a string-rewriting system for
//! the Heisenberg group and faithful matrix representations.

use std::collections::BTreeSet;

use gammadyn_core::group::{Group, GroupElement};
use gammadyn_core::linalg::IntMatrix;
use gammadyn_core::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Letters: x X y Y z Z as 1 -1 2 -2 3 -3.
//
// Rewriting rules (z central, yx = x y z^-1):
//   a a^-1 -> e
//   z^±1 a -> a z^±1                 for a in {x, X, y, Y}
//   y x -> x y Z     Y x -> x Y z
//   y X -> X y z     Y X -> X Y Z
fn rewrite_step(word: &[i64], pos: usize) -> Option<Vec<i64>> {
    let (a, b) = (word[pos], word[pos + 1]);
    let replacement: Vec<i64> = if a == -b {
        vec![]
    } else if a.abs() == 3 && b.abs() != 3 {
        vec![b, a]
    } else if a.abs() == 2 && b.abs() == 1 {
        let z = if a.signum() == b.signum() { -3 } else { 3 };
        vec![b, a, z]
    } else {
        return None;
    };
    let mut out = word[..pos].to_vec();
    out.extend(replacement);
    out.extend(&word[pos + 2..]);
    Some(out)
}

/// Rewrites at a random applicable position until none applies, then reads
/// off `x^a y^b z^c`.
fn collect_randomly(word: &[i64], rng: &mut ChaCha8Rng) -> [i64; 3] {
    let mut w = word.to_vec();
    loop {
        let positions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&p| rewrite_step(&w, p).is_some())
            .collect();
        let Some(&p) = positions.choose(rng) else { break };
        w = rewrite_step(&w, p).unwrap();
    }
    let mut exps = [0i64; 3];
    let mut last = 0;
    for &l in &w {
        let idx = l.unsigned_abs() as usize;
        assert!(idx >= last, "irreducible word is not collected: {w:?}");
        last = idx;
        exps[idx - 1] += l.signum();
    }
    exps
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<i64> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let l = rng.gen_range(1..=3);
            if rng.gen_bool(0.5) {
                l
            } else {
                -l
            }
        })
        .collect()
}

fn heisenberg_gens(h: &Group) -> Vec<GroupElement> {
    h.standard_generators()
}

fn as_i64(g: &GroupElement) -> Vec<i64> {
    g.exponents().iter().map(|x| i64::try_from(x).unwrap()).collect()
}

#[test]
fn heisenberg_rewriting_is_confluent_and_matches_collection() {
    let h = Group::heisenberg();
    let gens = heisenberg_gens(&h);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let w = random_word(&mut rng, 6);
        let first = collect_randomly(&w, &mut rng);
        for _ in 0..4 {
            assert_eq!(collect_randomly(&w, &mut rng), first, "order dependence on {w:?}");
        }
        let g = h.evaluate_word(&gens, &w).unwrap();
        assert_eq!(as_i64(&g), first.to_vec(), "word {w:?}");
    }
}

#[test]
fn commutator_is_central_generator() {
    let h = Group::heisenberg();
    let gens = heisenberg_gens(&h);
    let z = h.evaluate_word(&gens, &[1, 2, -1, -2]).unwrap();
    assert_eq!(z, gens[2]);
}

#[test]
fn heisenberg_ball_matches_word_enumeration() {
    let h = Group::heisenberg();
    let gens: Vec<GroupElement> = heisenberg_gens(&h)[..2].to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut oracle: BTreeSet<[i64; 3]> = BTreeSet::new();
    let letters = [1i64, -1, 2, -2];
    let mut words: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..=2 {
        let mut next = Vec::new();
        for w in &words {
            oracle.insert(collect_randomly(w, &mut rng));
            for &l in &letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        words = next;
    }
    let ball = h.ball(&gens, 2).unwrap();
    let computed: BTreeSet<[i64; 3]> = ball.iter().map(|g| as_i64(g).try_into().unwrap()).collect();
    assert_eq!(computed, oracle);
    assert_eq!(ball.len(), 17);
    // yx = (1, 1, -1) has length 2, the commutator z needs four letters
    assert!(ball.contains(&h.element([1, 1, -1]).unwrap()));
    assert!(!ball.contains(&h.element([0, 0, 1]).unwrap()));
    assert!(!ball.contains(&h.element([0, 0, -1]).unwrap()));
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn free_abelian_ball_is_l1_ball() {
    for d in 0..=3usize {
        let g = Group::free_abelian(d);
        let gens = g.standard_generators();
        let mut previous: Option<BTreeSet<GroupElement>> = None;
        for r in 0..=4usize {
            let ball = g.ball(&gens, r).unwrap();
            // points of Z^d with l1 norm <= r
            let expected: u64 = (0..=d as u64)
                .map(|k| (1 << k) * binomial(d as u64, k) * binomial(r as u64, k))
                .sum();
            assert_eq!(ball.len() as u64, expected, "d = {d}, r = {r}");
            if let Some(p) = previous {
                assert!(p.is_subset(&ball));
            }
            for x in &ball {
                assert!(ball.contains(&g.inverse(x).unwrap()));
            }
            previous = Some(ball);
        }
    }
}

#[test]
fn radius_zero_is_identity() {
    for g in [Group::free_abelian(2), Group::heisenberg(), Group::cat_map_semidirect()] {
        let gens = g.standard_generators();
        let ball = g.ball(&gens, 0).unwrap();
        assert_eq!(ball.into_iter().collect::<Vec<_>>(), vec![g.identity()]);
    }
}

fn random_element(g: &Group, rng: &mut ChaCha8Rng, bound: i64) -> GroupElement {
    let e: Vec<i64> = (0..g.arity()).map(|_| rng.gen_range(-bound..=bound)).collect();
    g.element(e).unwrap()
}

#[test]
fn representations_are_faithful_homomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let other = Group::semidirect(IntMatrix::from_rows([[0, 1, 0], [0, 0, 1], [1, -1, 0]]).unwrap()).unwrap();
    for g in [Group::heisenberg(), Group::cat_map_semidirect(), other] {
        for _ in 0..100 {
            let a = random_element(&g, &mut rng, 3);
            let b = random_element(&g, &mut rng, 3);
            let ab = g.multiply(&a, &b).unwrap();
            let ra = g.matrix_representation(&a).unwrap();
            let rb = g.matrix_representation(&b).unwrap();
            assert_eq!(g.matrix_representation(&ab).unwrap(), &ra * &rb);
            let inv = g.matrix_representation(&g.inverse(&a).unwrap()).unwrap();
            assert!((&ra * &inv).is_identity());
            assert_eq!(ra == rb, a == b);
        }
        assert!(g.matrix_representation(&g.identity()).unwrap().is_identity());
    }
    let z2 = Group::free_abelian(2);
    assert!(z2.matrix_representation(&z2.identity()).is_err());
}

#[test]
fn mixing_groups_is_an_error() {
    let h = Group::heisenberg();
    let z3 = Group::free_abelian(3);
    let a = h.element([1, 0, 0]).unwrap();
    let b = z3.element([1, 0, 0]).unwrap();
    assert!(h.multiply(&a, &b).is_err());
    assert!(z3.inverse(&a).is_err());
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    let base = Group::cat_map_semidirect();
    // A has order 3 modulo 2
    let moduli: Vec<BigInt> = [3, 2, 2].iter().map(|&m| BigInt::from(m)).collect();
    let q = Group::quotient(base.spec().clone(), moduli).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let a = random_element(&base, &mut rng, 4);
        let b = random_element(&base, &mut rng, 4);
        let lhs = q.project(&base, &base.multiply(&a, &b).unwrap()).unwrap();
        let rhs = q
            .multiply(&q.project(&base, &a).unwrap(), &q.project(&base, &b).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
    assert_eq!(q.enumerate().unwrap().len(), 12);
}
