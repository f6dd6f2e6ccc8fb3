//! Finite-quotient models of principal actions.

use gammadyn_core::group::{Group, GroupSpec};
use gammadyn_core::linalg::IntMatrix;
use gammadyn_core::ring::{is_lopsided, GroupRingElement};
use gammadyn_core::shift::{
    approx_structure, determinant_count, homoclinic_point, regular_rep_matrix, saturation_structure,
};
use gammadyn_core::{BigInt, BigRational};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn n(x: i64) -> BigInt {
    BigInt::from(x)
}

fn quotients() -> Vec<(GroupSpec, Group)> {
    let z2 = GroupSpec::FreeAbelian { rank: 2 };
    let cat = Group::cat_map_semidirect().spec().clone();
    vec![
        (z2.clone(), Group::quotient(z2.clone(), vec![n(2), n(3)]).unwrap()),
        (z2.clone(), Group::quotient(z2, vec![n(3), n(3)]).unwrap()),
        (
            cat.clone(),
            Group::quotient(cat.clone(), vec![n(3), n(2), n(2)]).unwrap(),
        ),
        (cat.clone(), Group::quotient(cat, vec![n(6), n(2), n(2)]).unwrap()),
    ]
}

fn random_element(rng: &mut ChaCha8Rng, group: &Group, terms: usize, coeff: i64) -> GroupRingElement {
    let terms: Vec<_> = (0..terms)
        .map(|_| {
            let e: Vec<i64> = (0..group.arity()).map(|_| rng.gen_range(-2..=2)).collect();
            (group.element(e).unwrap(), n(rng.gen_range(-coeff..=coeff)))
        })
        .collect();
    GroupRingElement::from_terms(group, terms).unwrap()
}

/// `|c_0| = 4S + r` against the other coefficients, `S` their l1 norm.
fn random_lopsided(rng: &mut ChaCha8Rng, group: &Group) -> GroupRingElement {
    let terms = rng.gen_range(1..=3);
    let rest = random_element(rng, group, terms, 2);
    let c = rest.coefficient(&group.identity());
    let rest = rest
        .sub(&GroupRingElement::monomial(group, group.identity(), c).unwrap())
        .unwrap();
    let s = rest.l1_norm();
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let c0 = (n(4) * s + n(rng.gen_range(1..=3))) * sign;
    rest.add(&GroupRingElement::monomial(group, group.identity(), c0).unwrap())
        .unwrap()
}

fn is_abelian(group: &Group) -> bool {
    let elems = group.enumerate().unwrap();
    elems.iter().all(|a| {
        elems
            .iter()
            .all(|b| group.multiply(a, b).unwrap() == group.multiply(b, a).unwrap())
    })
}

#[test]
fn right_regular_representation_reverses_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    for (base, q) in quotients() {
        let base = Group::new(base).unwrap();
        let abelian = is_abelian(&q);
        for _ in 0..20 {
            let f = random_element(&mut rng, &base, 3, 3);
            let g = random_element(&mut rng, &base, 3, 3);
            let rf = regular_rep_matrix(&f, &q).unwrap().rep_matrix;
            let rg = regular_rep_matrix(&g, &q).unwrap().rep_matrix;
            let rfg = regular_rep_matrix(&f.mul(&g).unwrap(), &q).unwrap().rep_matrix;
            assert_eq!(rfg, &rg * &rf);
            if abelian {
                assert_eq!(rfg, &rf * &rg);
            }
            let sum = regular_rep_matrix(&f.add(&g).unwrap(), &q).unwrap().rep_matrix;
            assert_eq!(sum, rf.add(&rg));
        }
        assert!(regular_rep_matrix(&GroupRingElement::one(&base), &q)
            .unwrap()
            .rep_matrix
            .is_identity());
    }
    assert!(!is_abelian(&quotients()[2].1));
}

#[test]
fn lopsided_components_equal_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for (base, q) in quotients() {
        let base = Group::new(base).unwrap();
        for _ in 0..15 {
            let f = random_lopsided(&mut rng, &base);
            assert!(is_lopsided(&f).unwrap().is_some());
            let approx = regular_rep_matrix(&f, &q).unwrap();
            let s = approx_structure(&approx);
            let det = determinant_count(&approx).unwrap();
            assert!(!det.is_zero());
            assert_eq!(s.dimension, 0);
            assert_eq!(s.components, det);
            assert!(saturation_structure(&approx).unwrap().is_trivial());
        }
    }
}

#[test]
fn saturation_is_torsion_free_of_the_right_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    for (base, q) in quotients() {
        let base = Group::new(base).unwrap();
        for _ in 0..20 {
            let mut f = random_element(&mut rng, &base, 3, 2);
            if rng.gen_bool(0.5) {
                // force augmentation zero so the constants are solutions
                let a = f.augmentation();
                f = f
                    .sub(&GroupRingElement::monomial(&base, base.identity(), a).unwrap())
                    .unwrap();
            }
            let approx = regular_rep_matrix(&f, &q).unwrap();
            let s = approx_structure(&approx);
            let sat = saturation_structure(&approx).unwrap();
            assert!(sat.torsion.is_empty());
            assert_eq!(sat.free_rank, s.dimension);
            let m = approx.elements.len();
            assert_eq!(s.dimension, m - rank(&approx.rep_matrix));
            if f.augmentation().is_zero() {
                assert!(s.dimension >= 1);
            }
        }
    }
}

fn rank(m: &IntMatrix) -> usize {
    gammadyn_core::linalg::smith_normal_form(m).rank()
}

#[test]
fn homoclinic_points_have_small_defect() {
    let mut rng = ChaCha8Rng::seed_from_u64(204);
    let eps = BigRational::new(n(1), n(1_000_000));
    for group in [Group::free_abelian(2), Group::heisenberg(), Group::cat_map_semidirect()] {
        for _ in 0..5 {
            let f = random_lopsided(&mut rng, &group);
            let h = homoclinic_point(&f, &eps).unwrap();
            assert!(h.max_defect <= h.residual_bound);
            assert_eq!(h.residual_bound, &eps * BigRational::from_integer(f.l1_norm()));
            for c in h.point.values() {
                assert!(c.is_positive() && *c < BigRational::one());
            }
        }
    }
}
