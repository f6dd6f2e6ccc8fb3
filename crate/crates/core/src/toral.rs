//! Matrix-group actions on tori.
//!
//! A [`ToralActionSpec`] lists generators in `GL(n, Z)`. The group acts on
//! `T^n = R^n / Z^n` through the matrices and on the character group `Z^n`
//! through their transposes. Every verdict returned here carries data that
//! [`verify_expansiveness`] and [`verify_ergodicity`] can re-check from
//! scratch.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{
    cokernel_structure, integer_kernel, saturate_lattice, smith_normal_form, AbelianGroupStructure, IntMatrix, Lattice,
};
use crate::poly::{
    characteristic_polynomial, count_real_roots, isolate_real_roots, ratio, split_cyclotomic, trace_polynomial,
    CyclotomicFactor, Poly,
};
use crate::{Error, Result};

/// Matrix groups found while searching a ball are capped at this size.
const BALL_ELEMENT_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureHint {
    /// A single generator.
    Cyclic,
    /// Every generator has the shape `[[B, b], [0, I_m]]` with `B` of size
    /// `block_split`.
    SemidirectTranslationBlock {
        block_split: usize,
    },
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToralActionSpec {
    n: usize,
    generators: Vec<IntMatrix>,
    hint: StructureHint,
}

impl ToralActionSpec {
    pub fn new(n: usize, generators: Vec<IntMatrix>, hint: StructureHint) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("the torus dimension must be at least 1"));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::domain(format!(
                    "generator {} is {}x{}, expected {n}x{n}",
                    i + 1,
                    g.rows(),
                    g.cols()
                )));
            }
            if g.determinant()?.abs() != BigInt::one() {
                return Err(Error::domain(format!(
                    "generator {} does not have determinant ±1",
                    i + 1
                )));
            }
        }
        match hint {
            StructureHint::Cyclic if generators.len() != 1 => {
                return Err(Error::domain("the cyclic hint needs exactly one generator"));
            }
            StructureHint::SemidirectTranslationBlock { block_split } => {
                if block_split == 0 || block_split >= n {
                    return Err(Error::domain(format!("block split {block_split} must lie in 1..{n}")));
                }
                for (i, g) in generators.iter().enumerate() {
                    if !has_block_shape(g, block_split) {
                        return Err(Error::domain(format!(
                            "generator {} is not of the form [[B, b], [0, I]] with B of size {block_split}",
                            i + 1
                        )));
                    }
                }
            }
            _ => {}
        }
        Ok(ToralActionSpec { n, generators, hint })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn hint(&self) -> StructureHint {
        self.hint
    }

    /// Transposed generators: the dual action on characters.
    pub fn dual_generators(&self) -> Vec<IntMatrix> {
        self.generators.iter().map(IntMatrix::transpose).collect()
    }
}

fn has_block_shape(g: &IntMatrix, k: usize) -> bool {
    let n = g.rows();
    (k..n).all(|i| {
        (0..n).all(|j| {
            if i == j {
                g[(i, j)].is_one()
            } else {
                g[(i, j)].is_zero()
            }
        })
    })
}

/// Stacks `M_i - I` vertically; an empty list gives a `0 x n` matrix.
fn stacked_minus_identity(n: usize, mats: &[IntMatrix]) -> IntMatrix {
    if mats.is_empty() {
        return IntMatrix::zeros(0, n);
    }
    let blocks: Vec<IntMatrix> = mats.iter().map(IntMatrix::minus_identity).collect();
    IntMatrix::vstack(&blocks).expect("square blocks of equal size")
}

fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

/// Structure of the group of points fixed by every generator: the dual of
/// `Z^n / sum_i (M_i^T - I) Z^n`.
pub fn fixed_point_group(spec: &ToralActionSpec) -> AbelianGroupStructure {
    let blocks: Vec<IntMatrix> = spec.dual_generators().iter().map(IntMatrix::minus_identity).collect();
    let m = IntMatrix::hstack(spec.n, &blocks).expect("square blocks of equal size");
    cokernel_structure(&m)
}

/// All common fixed points as vectors of rationals in `[0, 1)`, sorted.
///
/// Fails when the fixed-point group is infinite or has more than `limit`
/// elements.
pub fn fixed_points(spec: &ToralActionSpec, limit: usize) -> Result<Vec<Vec<BigRational>>> {
    let s = stacked_minus_identity(spec.n, &spec.generators);
    let snf = smith_normal_form(&s);
    let diag = snf.diagonal();
    if diag.len() < spec.n || diag.iter().any(Zero::is_zero) {
        return Err(Error::domain("the action has infinitely many fixed points"));
    }
    let count: BigInt = diag.iter().product();
    if count > BigInt::from(limit) {
        return Err(Error::domain(format!("{count} fixed points exceed the limit {limit}")));
    }
    // U S V = D, so x = V y is fixed exactly when D y is integral
    let mut ys: Vec<Vec<BigRational>> = vec![Vec::new()];
    for d in &diag {
        let d_u = d.to_usize().expect("bounded by the limit");
        let mut next = Vec::with_capacity(ys.len() * d_u);
        for prefix in &ys {
            for t in 0..d_u {
                let mut y = prefix.clone();
                y.push(BigRational::new(BigInt::from(t), d.clone()));
                next.push(y);
            }
        }
        ys = next;
    }
    let mut points: Vec<Vec<BigRational>> = ys
        .into_iter()
        .map(|y| {
            (0..spec.n)
                .map(|i| {
                    let x: BigRational = (0..spec.n)
                        .map(|j| BigRational::from_integer(snf.v[(i, j)].clone()) * &y[j])
                        .sum();
                    frac(&x)
                })
                .collect()
        })
        .collect();
    points.sort();
    Ok(points)
}

/// Which step of the unit-circle test settled the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpectrumDecision {
    /// `gcd(p, x^n p(1/x))` is constant: no root is paired with its inverse.
    NoReciprocalFactor,
    /// A root of unity is an eigenvalue.
    CyclotomicFactor,
    /// Real roots of the trace polynomial in `[-2, 2]` were counted.
    SturmCount,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCircleSpectrum {
    pub has_unit_modulus_eigenvalue: bool,
    pub characteristic_polynomial: Poly,
    pub cyclotomic_factors: Vec<CyclotomicFactor>,
    /// Monic `gcd(p, x^n p(1/x))`.
    pub reciprocal_part: Poly,
    /// `q` with `r(x) = x^m q(x + 1/x)` for the reciprocal part `r`; only set
    /// when the Sturm step runs.
    pub trace_polynomial: Option<Poly>,
    /// Isolating intervals for the roots of `q` in `[-2, 2]`.
    pub unit_circle_roots: Vec<(BigRational, BigRational)>,
    pub decided_by: SpectrumDecision,
}

/// Decides whether `M` has an eigenvalue of modulus one, exactly.
pub fn unit_circle_spectrum(m: &IntMatrix) -> Result<UnitCircleSpectrum> {
    if !m.is_square() {
        return Err(Error::domain("the matrix must be square"));
    }
    let p = characteristic_polynomial(m);
    let reciprocal_part = p.gcd(&p.reversed()).monic();
    let (cyclotomic_factors, _) = split_cyclotomic(&p);
    let mut out = UnitCircleSpectrum {
        has_unit_modulus_eigenvalue: false,
        characteristic_polynomial: p,
        cyclotomic_factors,
        reciprocal_part,
        trace_polynomial: None,
        unit_circle_roots: Vec::new(),
        decided_by: SpectrumDecision::NoReciprocalFactor,
    };
    if out.reciprocal_part.degree() == 0 {
        return Ok(out);
    }
    if !out.cyclotomic_factors.is_empty() {
        out.has_unit_modulus_eigenvalue = true;
        out.decided_by = SpectrumDecision::CyclotomicFactor;
        return Ok(out);
    }
    // without roots at ±1 the reciprocal part is palindromic of even degree
    let q = trace_polynomial(&out.reciprocal_part)
        .ok_or_else(|| Error::internal("reciprocal factor is not palindromic"))?;
    let (lo, hi) = (ratio(-2, 1), ratio(2, 1));
    out.unit_circle_roots = isolate_real_roots(&q, &lo, &hi, &ratio(1, 1024));
    out.has_unit_modulus_eigenvalue = !out.unit_circle_roots.is_empty();
    out.trace_polynomial = Some(q);
    out.decided_by = SpectrumDecision::SturmCount;
    Ok(out)
}

/// `x^m q(x + 1/x)` for a trace polynomial `q` of degree `m`.
pub fn palindromic_from_trace(q: &Poly) -> Poly {
    let m = q.degree();
    let x2_plus_1 = Poly::from_integers([1, 0, 1]);
    let mut power = Poly::one();
    let mut out = Poly::zero();
    for j in 0..=m {
        let term = power.mul(&Poly::monomial(m - j)).scale(&q.coeff(j));
        out = out.add(&term);
        power = power.mul(&x2_plus_1);
    }
    out
}

fn is_hyperbolic(m: &IntMatrix) -> Result<bool> {
    Ok(!unit_circle_spectrum(m)?.has_unit_modulus_eigenvalue)
}

/// The coordinates a translation stage forces to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationStage {
    /// Size of the upper-left block `B`; coordinates `block_split..n` are
    /// eliminated.
    pub block_split: usize,
    /// 1-based indices of generators with `B = I`.
    pub translation_generators: Vec<usize>,
    /// Rank of their stacked translation blocks; equals `n - block_split`.
    pub translation_rank: usize,
    /// The blocks `B` of all generators, in order.
    pub block_generators: Vec<IntMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansiveCertificate {
    /// The word (signed 1-based letters in the generators) evaluates to a
    /// matrix without eigenvalues of modulus one.
    Hyperbolic {
        word: Vec<i64>,
        matrix: IntMatrix,
        characteristic_polynomial: Poly,
    },
    /// Translation-coupled coordinates of a bounded orbit vanish; the
    /// remaining block action is expansive by `block`, whose words refer to
    /// `stage.block_generators`.
    Staged {
        stage: EliminationStage,
        block: Box<ExpansiveCertificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedOrbitWitness {
    /// Nonzero vectors fixed by every generator.
    FixedVectors { basis: Vec<Vec<BigInt>> },
    /// The only non-trivial generator, `word`, satisfies `M^period v = v` on
    /// the basis.
    PeriodicVectors {
        word: Vec<i64>,
        period: u64,
        basis: Vec<Vec<BigInt>>,
    },
    /// The only non-trivial generator has an eigenvalue `e^{it}` with
    /// `2 cos t` in `interval`, a root of the trace polynomial.
    UnitCircleEigenvalue {
        word: Vec<i64>,
        trace_polynomial: Poly,
        interval: (BigRational, BigRational),
    },
    /// The generated matrix group is finite, so every orbit is bounded.
    FiniteImage { order: usize },
    /// A witness for the block action, lifted to vectors `(u, 0)`.
    Block {
        stage: EliminationStage,
        inner: Box<BoundedOrbitWitness>,
    },
}

impl BoundedOrbitWitness {
    /// Integer vectors in `Z^n` with bounded orbits, where the witness
    /// provides them.
    pub fn bounded_vectors(&self, n: usize) -> Vec<Vec<BigInt>> {
        match self {
            BoundedOrbitWitness::FixedVectors { basis } | BoundedOrbitWitness::PeriodicVectors { basis, .. } => {
                basis.clone()
            }
            BoundedOrbitWitness::UnitCircleEigenvalue { .. } => Vec::new(),
            BoundedOrbitWitness::FiniteImage { .. } => (0..n).map(|i| unit_vector(n, i)).collect(),
            BoundedOrbitWitness::Block { stage, inner } => inner
                .bounded_vectors(stage.block_split)
                .into_iter()
                .map(|mut v| {
                    v.resize(n, BigInt::zero());
                    v
                })
                .collect(),
        }
    }
}

fn unit_vector(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansivenessVerdict {
    Expansive(ExpansiveCertificate),
    NonExpansive(BoundedOrbitWitness),
    Unknown { search_depth: usize },
}

/// Decides expansiveness: every nonzero `p` in `R^n` must have an unbounded
/// orbit.
///
/// Cyclic and translation-block actions are decided; for general actions a
/// common fixed vector, a hyperbolic element within `search_depth` letters,
/// or a finite group image settles the question, and otherwise the verdict
/// is `Unknown`.
pub fn expansiveness(spec: &ToralActionSpec, search_depth: usize) -> Result<ExpansivenessVerdict> {
    if search_depth == 0 {
        return Err(Error::domain("search depth must be at least 1"));
    }
    match spec.hint {
        StructureHint::Cyclic => cyclic_verdict(&spec.generators[0], 1),
        StructureHint::SemidirectTranslationBlock { block_split } => {
            staged_verdict(&spec.generators, spec.n, block_split, search_depth)
        }
        StructureHint::General => group_verdict(&spec.generators, spec.n, search_depth),
    }
}

fn cyclic_verdict(m: &IntMatrix, letter: i64) -> Result<ExpansivenessVerdict> {
    let s = unit_circle_spectrum(m)?;
    if !s.has_unit_modulus_eigenvalue {
        return Ok(ExpansivenessVerdict::Expansive(ExpansiveCertificate::Hyperbolic {
            word: vec![letter],
            matrix: m.clone(),
            characteristic_polynomial: s.characteristic_polynomial,
        }));
    }
    if !s.cyclotomic_factors.is_empty() {
        let period = s.cyclotomic_factors.iter().fold(1u64, |acc, f| acc.lcm(&f.order));
        let basis = integer_kernel(&m.pow(period).minus_identity());
        if basis.is_empty() {
            return Err(Error::internal("a cyclotomic factor left no periodic vectors"));
        }
        return Ok(ExpansivenessVerdict::NonExpansive(
            BoundedOrbitWitness::PeriodicVectors {
                word: vec![letter],
                period,
                basis,
            },
        ));
    }
    let q = s.trace_polynomial.expect("set by the Sturm step");
    Ok(ExpansivenessVerdict::NonExpansive(
        BoundedOrbitWitness::UnitCircleEigenvalue {
            word: vec![letter],
            trace_polynomial: q,
            interval: s.unit_circle_roots[0].clone(),
        },
    ))
}

fn group_verdict(gens: &[IntMatrix], n: usize, depth: usize) -> Result<ExpansivenessVerdict> {
    let fixed = integer_kernel(&stacked_minus_identity(n, gens));
    if !fixed.is_empty() {
        return Ok(ExpansivenessVerdict::NonExpansive(BoundedOrbitWitness::FixedVectors {
            basis: fixed,
        }));
    }
    let mut distinct: Vec<(usize, &IntMatrix)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if !g.is_identity() && !distinct.iter().any(|(_, h)| *h == g) {
            distinct.push((i, g));
        }
    }
    if distinct.len() == 1 {
        let (i, g) = distinct[0];
        return cyclic_verdict(g, i as i64 + 1);
    }
    for &(i, g) in &distinct {
        if is_hyperbolic(g)? {
            return cyclic_verdict(g, i as i64 + 1);
        }
    }
    let mut steps: Vec<(i64, IntMatrix)> = Vec::new();
    for &(i, g) in &distinct {
        steps.push((i as i64 + 1, g.clone()));
        steps.push((-(i as i64 + 1), g.inverse_unimodular()?));
    }
    let mut seen: BTreeSet<IntMatrix> = BTreeSet::new();
    seen.insert(IntMatrix::identity(n));
    let mut frontier: Vec<(IntMatrix, Vec<i64>)> = vec![(IntMatrix::identity(n), Vec::new())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (m, word) in &frontier {
            for (letter, s) in &steps {
                let p = m * s;
                if seen.contains(&p) {
                    continue;
                }
                let mut w = word.clone();
                w.push(*letter);
                if is_hyperbolic(&p)? {
                    let characteristic_polynomial = characteristic_polynomial(&p);
                    return Ok(ExpansivenessVerdict::Expansive(ExpansiveCertificate::Hyperbolic {
                        word: w,
                        matrix: p,
                        characteristic_polynomial,
                    }));
                }
                seen.insert(p.clone());
                next.push((p, w));
            }
        }
        if next.is_empty() {
            return Ok(ExpansivenessVerdict::NonExpansive(BoundedOrbitWitness::FiniteImage {
                order: seen.len(),
            }));
        }
        if seen.len() > BALL_ELEMENT_CAP {
            break;
        }
        frontier = next;
    }
    Ok(ExpansivenessVerdict::Unknown { search_depth: depth })
}

/// Translation rank of the generators with `B = I`, with their 1-based
/// indices.
fn translation_rank(gens: &[IntMatrix], n: usize, k: usize) -> (Vec<usize>, usize) {
    let mut indices = Vec::new();
    let mut blocks = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.submatrix(0, k, 0, k).is_identity() {
            indices.push(i + 1);
            blocks.push(g.submatrix(0, k, k, n));
        }
    }
    if blocks.is_empty() {
        return (indices, 0);
    }
    let stacked = IntMatrix::vstack(&blocks).expect("blocks share a width");
    (indices, smith_normal_form(&stacked).rank())
}

fn staged_verdict(gens: &[IntMatrix], n: usize, k: usize, depth: usize) -> Result<ExpansivenessVerdict> {
    let (translation_generators, rank) = translation_rank(gens, n, k);
    if rank < n - k {
        return group_verdict(gens, n, depth);
    }
    let block_generators: Vec<IntMatrix> = gens.iter().map(|g| g.submatrix(0, k, 0, k)).collect();
    let inner = group_verdict(&block_generators, k, depth)?;
    let stage = EliminationStage {
        block_split: k,
        translation_generators,
        translation_rank: rank,
        block_generators,
    };
    Ok(match inner {
        ExpansivenessVerdict::Expansive(c) => ExpansivenessVerdict::Expansive(ExpansiveCertificate::Staged {
            stage,
            block: Box::new(c),
        }),
        ExpansivenessVerdict::NonExpansive(w) => ExpansivenessVerdict::NonExpansive(BoundedOrbitWitness::Block {
            stage,
            inner: Box::new(w),
        }),
        unknown => unknown,
    })
}

/// Product of a word in the matrices; letters are signed and 1-based.
pub fn evaluate_matrix_word(gens: &[IntMatrix], n: usize, word: &[i64]) -> Result<IntMatrix> {
    let mut acc = IntMatrix::identity(n);
    for &letter in word {
        let idx = letter.unsigned_abs() as usize;
        if letter == 0 || idx > gens.len() {
            return Err(Error::domain(format!("letter {letter} out of range")));
        }
        let g = &gens[idx - 1];
        acc = if letter < 0 {
            &acc * &g.inverse_unimodular()?
        } else {
            &acc * g
        };
    }
    Ok(acc)
}

/// Re-checks the certificate or witness carried by a verdict against the
/// generators. `Unknown` carries nothing and passes.
pub fn verify_expansiveness(spec: &ToralActionSpec, verdict: &ExpansivenessVerdict) -> bool {
    match verdict {
        ExpansivenessVerdict::Expansive(c) => verify_certificate(&spec.generators, spec.n, c),
        ExpansivenessVerdict::NonExpansive(w) => verify_witness(&spec.generators, spec.n, w),
        ExpansivenessVerdict::Unknown { .. } => true,
    }
}

fn stage_holds(gens: &[IntMatrix], n: usize, stage: &EliminationStage) -> bool {
    let k = stage.block_split;
    if k == 0 || k >= n || !gens.iter().all(|g| has_block_shape(g, k)) {
        return false;
    }
    let (indices, rank) = translation_rank(gens, n, k);
    let blocks: Vec<IntMatrix> = gens.iter().map(|g| g.submatrix(0, k, 0, k)).collect();
    rank == n - k
        && indices == stage.translation_generators
        && rank == stage.translation_rank
        && blocks == stage.block_generators
}

fn verify_certificate(gens: &[IntMatrix], n: usize, cert: &ExpansiveCertificate) -> bool {
    match cert {
        ExpansiveCertificate::Hyperbolic {
            word,
            matrix,
            characteristic_polynomial: p,
        } => {
            evaluate_matrix_word(gens, n, word).is_ok_and(|m| m == *matrix)
                && characteristic_polynomial(matrix) == *p
                && is_hyperbolic(matrix).unwrap_or(false)
        }
        ExpansiveCertificate::Staged { stage, block } => {
            stage_holds(gens, n, stage) && verify_certificate(&stage.block_generators, stage.block_split, block)
        }
    }
}

/// Every generator other than the one named by a single-letter word is the
/// identity.
fn only_nontrivial(gens: &[IntMatrix], word: &[i64]) -> Option<usize> {
    let [letter] = word else { return None };
    let idx = letter.unsigned_abs() as usize;
    if *letter <= 0 || idx > gens.len() {
        return None;
    }
    gens.iter()
        .enumerate()
        .all(|(i, g)| i + 1 == idx || g.is_identity() || *g == gens[idx - 1])
        .then_some(idx - 1)
}

fn verify_witness(gens: &[IntMatrix], n: usize, witness: &BoundedOrbitWitness) -> bool {
    match witness {
        BoundedOrbitWitness::FixedVectors { basis } => {
            !basis.is_empty()
                && basis
                    .iter()
                    .all(|v| v.len() == n && v.iter().any(|x| !x.is_zero()) && gens.iter().all(|g| g.mul_vec(v) == *v))
        }
        BoundedOrbitWitness::PeriodicVectors { word, period, basis } => {
            let Some(i) = only_nontrivial(gens, word) else {
                return false;
            };
            let mp = gens[i].pow(*period);
            !basis.is_empty()
                && basis
                    .iter()
                    .all(|v| v.len() == n && v.iter().any(|x| !x.is_zero()) && mp.mul_vec(v) == *v)
        }
        BoundedOrbitWitness::UnitCircleEigenvalue {
            word,
            trace_polynomial: q,
            interval: (lo, hi),
        } => {
            let Some(i) = only_nontrivial(gens, word) else {
                return false;
            };
            let (two, minus_two) = (ratio(2, 1), ratio(-2, 1));
            let lo = if *lo < minus_two { minus_two } else { lo.clone() };
            let hi = if *hi > two { two } else { hi.clone() };
            q.degree() > 0
                && count_real_roots(q, &lo, &hi) > 0
                && palindromic_from_trace(q).divides(&characteristic_polynomial(&gens[i]))
        }
        BoundedOrbitWitness::FiniteImage { order } => {
            matrix_group_closure(gens, n, order.saturating_add(1)).is_some_and(|g| g.len() == *order)
        }
        BoundedOrbitWitness::Block { stage, inner } => {
            stage_holds(gens, n, stage) && verify_witness(&stage.block_generators, stage.block_split, inner)
        }
    }
}

/// All elements of the generated matrix group, if there are at most `cap`.
fn matrix_group_closure(gens: &[IntMatrix], n: usize, cap: usize) -> Option<BTreeSet<IntMatrix>> {
    let mut seen = BTreeSet::new();
    seen.insert(IntMatrix::identity(n));
    let mut queue = VecDeque::from([IntMatrix::identity(n)]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let p = &m * g;
            if seen.insert(p.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(p);
            }
        }
    }
    Some(seen)
}

/// A character whose orbit under the dual action closed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteOrbitCharacter {
    pub character: Vec<BigInt>,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitOutcome {
    /// The orbit, sorted.
    Closed(Vec<Vec<BigInt>>),
    /// An orbit element fell outside the admissible lattice, so the orbit is
    /// infinite.
    LeftLattice,
    CapExceeded,
}

/// Orbit of `chi` under the monoid generated by `dual_generators`; when it
/// is finite it is the group orbit.
pub fn character_orbit(
    dual_generators: &[IntMatrix],
    chi: &[BigInt],
    cap: usize,
    within: Option<&Lattice>,
) -> OrbitOutcome {
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    seen.insert(chi.to_vec());
    let mut queue = VecDeque::from([chi.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for g in dual_generators {
            let y = g.mul_vec(&x);
            if seen.contains(&y) {
                continue;
            }
            if within.is_some_and(|w| !w.contains(&y)) {
                return OrbitOutcome::LeftLattice;
            }
            seen.insert(y.clone());
            if seen.len() > cap {
                return OrbitOutcome::CapExceeded;
            }
            queue.push_back(y);
        }
    }
    OrbitOutcome::Closed(seen.into_iter().collect())
}

/// Lattice containing every character with a finite orbit:
/// `∩_i ker((M_i^T)^{L_i} - I)` where `L_i` is the lcm of the orders of the
/// cyclotomic factors of `M_i`. It is zero as soon as one generator has no
/// cyclotomic factor.
pub fn cyclotomic_kernel(spec: &ToralActionSpec) -> Lattice {
    let mut blocks = Vec::with_capacity(spec.generators.len());
    for g in spec.dual_generators() {
        if g.is_identity() {
            continue;
        }
        let (factors, _) = split_cyclotomic(&characteristic_polynomial(&g));
        if factors.is_empty() {
            return Lattice::zero(spec.n);
        }
        let period = factors.iter().fold(1u64, |acc, f| acc.lcm(&f.order));
        blocks.push(g.pow(period));
    }
    let kernel = integer_kernel(&stacked_minus_identity(spec.n, &blocks));
    Lattice::from_generators(kernel, spec.n).expect("kernel vectors have length n")
}

fn sup_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(Signed::abs).max().unwrap_or_else(BigInt::zero)
}

/// Nonzero points of `lattice` with sup-norm at most `bound`, ordered by
/// sup-norm and then lexicographically.
pub fn lattice_points_in_box(lattice: &Lattice, bound: &BigInt) -> Vec<Vec<BigInt>> {
    let n = lattice.dim();
    let basis = lattice.basis();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero"))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<BigInt>)> = vec![(0, vec![BigInt::zero(); n])];
    while let Some((level, v)) = stack.pop() {
        // coordinates before the next pivot are final
        let settled = pivots.get(level).copied().unwrap_or(n);
        if v[..settled].iter().any(|x| x.abs() > *bound) {
            continue;
        }
        if level == basis.len() {
            if v.iter().any(|x| !x.is_zero()) {
                out.push(v);
            }
            continue;
        }
        let row = &basis[level];
        let p = pivots[level];
        let h = &row[p];
        let lo = (-bound - &v[p]).div_ceil(h);
        let hi = (bound - &v[p]).div_floor(h);
        let mut c = lo;
        while c <= hi {
            let w: Vec<BigInt> = v.iter().zip(row).map(|(a, b)| a + &c * b).collect();
            stack.push((level + 1, w));
            c += 1;
        }
    }
    out.sort_by(|a, b| sup_norm(a).cmp(&sup_norm(b)).then_with(|| a.cmp(b)));
    out
}

/// Candidates for finite-orbit characters with sup-norm at most
/// `norm_bound`, in search order.
pub fn candidate_characters(spec: &ToralActionSpec, norm_bound: u64) -> (Lattice, Vec<Vec<BigInt>>) {
    let w = cyclotomic_kernel(spec);
    let pts = lattice_points_in_box(&w, &BigInt::from(norm_bound));
    (w, pts)
}

fn check_bounds(norm_bound: u64, orbit_cap: usize) -> Result<()> {
    if norm_bound == 0 || orbit_cap == 0 {
        return Err(Error::domain("norm bound and orbit cap must be at least 1"));
    }
    Ok(())
}

/// Every nonzero character with sup-norm at most `norm_bound` whose orbit
/// closes within `orbit_cap` elements, with its orbit size; ordered by
/// sup-norm, then lexicographically. Complete within these bounds.
pub fn finite_orbit_characters(
    spec: &ToralActionSpec,
    norm_bound: u64,
    orbit_cap: usize,
) -> Result<Vec<FiniteOrbitCharacter>> {
    check_bounds(norm_bound, orbit_cap)?;
    let (w, candidates) = candidate_characters(spec, norm_bound);
    let dual = spec.dual_generators();
    let mut known: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for chi in candidates {
        if let Some(&size) = known.get(&chi) {
            out.push(FiniteOrbitCharacter {
                character: chi,
                orbit_size: size,
            });
            continue;
        }
        if let OrbitOutcome::Closed(orbit) = character_orbit(&dual, &chi, orbit_cap, Some(&w)) {
            let size = orbit.len();
            known.extend(orbit.into_iter().map(|x| (x, size)));
            out.push(FiniteOrbitCharacter {
                character: chi,
                orbit_size: size,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErgodicReason {
    /// This generator (1-based) has no root of unity among its eigenvalues.
    NoCyclotomicFactor { generator: usize },
    /// The cyclotomic kernel of all generators is zero.
    TrivialCyclotomicKernel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErgodicityVerdict {
    Ergodic(ErgodicReason),
    NonErgodic { character: Vec<BigInt>, orbit_size: usize },
    Unknown { norm_bound: u64, orbit_cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErgodicityReport {
    pub verdict: ErgodicityVerdict,
    /// Saturated basis of characters with certified finite orbits.
    pub finite_orbit_lattice: Vec<Vec<BigInt>>,
    /// Whether `finite_orbit_lattice` is the whole finite-orbit module rather
    /// than the part found within the search bounds.
    pub lattice_exact: bool,
    /// Dual of the finite-orbit module: the torus the invariant sets live on.
    pub sigma_algebra: AbelianGroupStructure,
    /// Basis of the cyclotomic kernel, which contains the module.
    pub cyclotomic_kernel: Vec<Vec<BigInt>>,
    pub norm_bound: u64,
    pub orbit_cap: usize,
}

/// Ergodicity through finite-orbit characters.
pub fn ergodicity(spec: &ToralActionSpec, norm_bound: u64, orbit_cap: usize) -> Result<ErgodicityReport> {
    ergodicity_with_search(spec, norm_bound, orbit_cap, finite_orbit_characters)
}

/// [`ergodicity`] with the character search supplied by the caller, which
/// must return the same list as [`finite_orbit_characters`].
pub fn ergodicity_with_search<F>(
    spec: &ToralActionSpec,
    norm_bound: u64,
    orbit_cap: usize,
    search: F,
) -> Result<ErgodicityReport>
where
    F: FnOnce(&ToralActionSpec, u64, usize) -> Result<Vec<FiniteOrbitCharacter>>,
{
    check_bounds(norm_bound, orbit_cap)?;
    let n = spec.n;
    let dual = spec.dual_generators();
    let w = cyclotomic_kernel(spec);
    let mut report = ErgodicityReport {
        verdict: ErgodicityVerdict::Unknown { norm_bound, orbit_cap },
        finite_orbit_lattice: Vec::new(),
        lattice_exact: false,
        sigma_algebra: AbelianGroupStructure::trivial(),
        cyclotomic_kernel: w.basis().to_vec(),
        norm_bound,
        orbit_cap,
    };
    if w.rank() == 0 {
        let reason = spec
            .generators
            .iter()
            .position(|g| split_cyclotomic(&characteristic_polynomial(g)).0.is_empty())
            .map_or(ErgodicReason::TrivialCyclotomicKernel, |i| {
                ErgodicReason::NoCyclotomicFactor { generator: i + 1 }
            });
        report.verdict = ErgodicityVerdict::Ergodic(reason);
        report.lattice_exact = true;
        return Ok(report);
    }
    let fixed = integer_kernel(&stacked_minus_identity(n, &dual));
    let commuting = dual
        .iter()
        .enumerate()
        .all(|(i, a)| dual[i + 1..].iter().all(|b| a * b == b * a));
    let exact_orbit = |chi: &[BigInt]| match character_orbit(&dual, chi, usize::MAX, None) {
        OrbitOutcome::Closed(o) => Ok(o.len()),
        _ => Err(Error::internal("a certified orbit did not close")),
    };
    if commuting || fixed.len() == w.rank() {
        // every character of the kernel has a finite orbit
        let character = fixed.first().unwrap_or(&w.basis()[0]).clone();
        let orbit_size = exact_orbit(&character)?;
        report.verdict = ErgodicityVerdict::NonErgodic { character, orbit_size };
        report.finite_orbit_lattice = w.basis().to_vec();
        report.lattice_exact = true;
    } else {
        let found = search(spec, norm_bound, orbit_cap)?;
        if let Some(first) = fixed.first() {
            report.verdict = ErgodicityVerdict::NonErgodic {
                character: first.clone(),
                orbit_size: 1,
            };
        } else if let Some(c) = found.first() {
            report.verdict = ErgodicityVerdict::NonErgodic {
                character: c.character.clone(),
                orbit_size: c.orbit_size,
            };
        }
        let gens: Vec<Vec<BigInt>> = fixed
            .iter()
            .cloned()
            .chain(found.into_iter().map(|c| c.character))
            .collect();
        report.finite_orbit_lattice = saturate_lattice(&gens, n)?;
        report.lattice_exact = report.finite_orbit_lattice.len() == w.rank();
    }
    report.sigma_algebra = AbelianGroupStructure::free(report.finite_orbit_lattice.len());
    Ok(report)
}

/// Re-checks an ergodicity verdict: the certificate orbit is re-enumerated,
/// an ergodic claim recomputes the cyclotomic kernel.
pub fn verify_ergodicity(spec: &ToralActionSpec, report: &ErgodicityReport) -> bool {
    match &report.verdict {
        ErgodicityVerdict::Ergodic(reason) => {
            let kernel_trivial = cyclotomic_kernel(spec).rank() == 0;
            match reason {
                ErgodicReason::NoCyclotomicFactor { generator } => {
                    kernel_trivial
                        && spec
                            .generators
                            .get(generator.wrapping_sub(1))
                            .is_some_and(|g| split_cyclotomic(&characteristic_polynomial(g)).0.is_empty())
                }
                ErgodicReason::TrivialCyclotomicKernel => kernel_trivial,
            }
        }
        ErgodicityVerdict::NonErgodic { character, orbit_size } => {
            character.len() == spec.n
                && character.iter().any(|x| !x.is_zero())
                && matches!(
                    character_orbit(&spec.dual_generators(), character, *orbit_size, None),
                    OrbitOutcome::Closed(o) if o.len() == *orbit_size
                )
        }
        ErgodicityVerdict::Unknown { .. } => true,
    }
}

/// The action of `Z^2 ⋊_A Z`, `A = [[2, 1], [1, 1]]`, on `T^3` through
/// `blockdiag(A, 1)` and the translations `I + E_13`, `I + E_23`.
pub fn paper_example_spec() -> ToralActionSpec {
    let a = IntMatrix::from_rows([[2, 1, 0], [1, 1, 0], [0, 0, 1]]).expect("literal");
    let t1 = IntMatrix::from_rows([[1, 0, 1], [0, 1, 0], [0, 0, 1]]).expect("literal");
    let t2 = IntMatrix::from_rows([[1, 0, 0], [0, 1, 1], [0, 0, 1]]).expect("literal");
    ToralActionSpec::new(
        3,
        vec![a, t1, t2],
        StructureHint::SemidirectTranslationBlock { block_split: 2 },
    )
    .expect("valid by construction")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperExample {
    pub spec: ToralActionSpec,
    pub expansiveness: ExpansivenessVerdict,
    pub ergodicity: ErgodicityReport,
}

/// Expansive but not ergodic: both verdicts are exact, so the bounds only
/// appear in the report.
pub fn paper_example(search_depth: usize, norm_bound: u64, orbit_cap: usize) -> Result<PaperExample> {
    let spec = paper_example_spec();
    let expansiveness = expansiveness(&spec, search_depth)?;
    let ergodicity = ergodicity(&spec, norm_bound, orbit_cap)?;
    Ok(PaperExample {
        spec,
        expansiveness,
        ergodicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m<const N: usize>(rows: [[i64; N]; N]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn cyclic(a: IntMatrix) -> ToralActionSpec {
        let n = a.rows();
        ToralActionSpec::new(n, vec![a], StructureHint::Cyclic).unwrap()
    }

    fn cat() -> IntMatrix {
        m([[2, 1], [1, 1]])
    }

    fn rot() -> IntMatrix {
        m([[0, -1], [1, 0]])
    }

    fn translations() -> ToralActionSpec {
        let g = paper_example_spec().generators().to_vec();
        ToralActionSpec::new(
            3,
            g[1..].to_vec(),
            StructureHint::SemidirectTranslationBlock { block_split: 2 },
        )
        .unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(ToralActionSpec::new(2, vec![m([[2, 0], [0, 1]])], StructureHint::General).is_err());
        assert!(ToralActionSpec::new(2, vec![cat(), rot()], StructureHint::Cyclic).is_err());
        assert!(ToralActionSpec::new(
            3,
            vec![m([[1, 0, 0], [0, 1, 0], [1, 0, 1]])],
            StructureHint::SemidirectTranslationBlock { block_split: 2 }
        )
        .is_err());
        assert!(ToralActionSpec::new(2, vec![m([[1, 0, 0], [0, 1, 0], [0, 0, 1]])], StructureHint::General).is_err());
    }

    #[test]
    fn fixed_point_examples() {
        assert!(fixed_point_group(&cyclic(cat())).is_trivial());
        let r = cyclic(rot());
        assert_eq!(fixed_point_group(&r).torsion, v(&[2]));
        assert_eq!(
            fixed_points(&r, 10).unwrap(),
            vec![vec![ratio(0, 1), ratio(0, 1)], vec![ratio(1, 2), ratio(1, 2)]]
        );
        let id = ToralActionSpec::new(3, vec![IntMatrix::identity(3)], StructureHint::General).unwrap();
        assert_eq!(fixed_point_group(&id), AbelianGroupStructure::free(3));
        assert!(fixed_points(&id, 10).is_err());
        // the translations move every point whose last coordinate is not integral
        assert!(fixed_point_group(&paper_example_spec()).is_trivial());
        assert_eq!(
            fixed_points(&paper_example_spec(), 10).unwrap(),
            vec![vec![ratio(0, 1); 3]]
        );
    }

    #[test]
    fn spectrum_examples() {
        let s = unit_circle_spectrum(&cat()).unwrap();
        assert!(!s.has_unit_modulus_eigenvalue);
        // every 2x2 determinant-one polynomial is reciprocal; q = y - 3
        assert_eq!(s.decided_by, SpectrumDecision::SturmCount);
        assert_eq!(s.trace_polynomial, Some(Poly::from_integers([-3, 1])));

        let s = unit_circle_spectrum(&m([[2, 1], [1, 0]])).unwrap();
        assert!(!s.has_unit_modulus_eigenvalue);
        assert_eq!(s.decided_by, SpectrumDecision::NoReciprocalFactor);

        let s = unit_circle_spectrum(&rot()).unwrap();
        assert!(s.has_unit_modulus_eigenvalue);
        assert_eq!(s.cyclotomic_factors.len(), 1);
        assert_eq!(s.cyclotomic_factors[0].polynomial, Poly::from_integers([1, 0, 1]));

        // companion matrix of x^4 - 3x^3 + 3x^2 - 3x + 1
        let salem = m([[0, 0, 0, -1], [1, 0, 0, 3], [0, 1, 0, -3], [0, 0, 1, 3]]);
        let s = unit_circle_spectrum(&salem).unwrap();
        assert_eq!(s.characteristic_polynomial, Poly::from_integers([1, -3, 3, -3, 1]));
        assert!(s.cyclotomic_factors.is_empty());
        assert_eq!(s.decided_by, SpectrumDecision::SturmCount);
        assert_eq!(s.trace_polynomial, Some(Poly::from_integers([1, -3, 1])));
        assert!(s.has_unit_modulus_eigenvalue);
        assert_eq!(s.unit_circle_roots.len(), 1);
        let (lo, hi) = &s.unit_circle_roots[0];
        // (3 - sqrt 5) / 2 = 0.3819...
        assert!(*lo <= ratio(382, 1000) && *hi >= ratio(381, 1000));
    }

    #[test]
    fn reciprocal_pair_off_the_circle() {
        // x^4 - 5x^2 + 1 is reciprocal but q = y^2 - 7 has no root in [-2, 2]
        let c = m([[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 5], [0, 0, 1, 0]]);
        let s = unit_circle_spectrum(&c).unwrap();
        assert_eq!(s.decided_by, SpectrumDecision::SturmCount);
        assert!(!s.has_unit_modulus_eigenvalue);
    }

    #[test]
    fn palindromic_round_trip() {
        let r = Poly::from_integers([1, -3, 3, -3, 1]);
        let q = trace_polynomial(&r).unwrap();
        assert_eq!(palindromic_from_trace(&q), r);
    }

    #[test]
    fn expansiveness_examples() {
        let ex = paper_example_spec();
        let verdict = expansiveness(&ex, 8).unwrap();
        match &verdict {
            ExpansivenessVerdict::Expansive(ExpansiveCertificate::Staged { stage, block }) => {
                assert_eq!(stage.translation_generators, vec![2, 3]);
                assert_eq!(stage.translation_rank, 1);
                assert!(matches!(**block, ExpansiveCertificate::Hyperbolic { .. }));
            }
            other => panic!("unexpected verdict {other:?}"),
        }
        assert!(verify_expansiveness(&ex, &verdict));

        let t = translations();
        let verdict = expansiveness(&t, 8).unwrap();
        let ExpansivenessVerdict::NonExpansive(w) = &verdict else {
            panic!("{verdict:?}")
        };
        assert_eq!(w.bounded_vectors(3), vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert!(verify_expansiveness(&t, &verdict));

        let general = ToralActionSpec::new(3, t.generators().to_vec(), StructureHint::General).unwrap();
        let verdict = expansiveness(&general, 8).unwrap();
        assert_eq!(
            verdict,
            ExpansivenessVerdict::NonExpansive(BoundedOrbitWitness::FixedVectors {
                basis: vec![v(&[1, 0, 0]), v(&[0, 1, 0])]
            })
        );

        let r = cyclic(rot());
        let verdict = expansiveness(&r, 1).unwrap();
        assert!(matches!(
            verdict,
            ExpansivenessVerdict::NonExpansive(BoundedOrbitWitness::PeriodicVectors { period: 4, .. })
        ));
        assert!(verify_expansiveness(&r, &verdict));
        assert!(expansiveness(&r, 0).is_err());
    }

    #[test]
    fn general_search_outcomes() {
        // two rotations generate a finite group with no common fixed vector
        let flip = m([[0, 1], [1, 0]]);
        let spec = ToralActionSpec::new(2, vec![rot(), flip.clone()], StructureHint::General).unwrap();
        let verdict = expansiveness(&spec, 8).unwrap();
        assert_eq!(
            verdict,
            ExpansivenessVerdict::NonExpansive(BoundedOrbitWitness::FiniteImage { order: 8 })
        );
        assert!(verify_expansiveness(&spec, &verdict));

        // a product of unipotents is hyperbolic
        let u = m([[1, 1], [0, 1]]);
        let l = m([[1, 0], [1, 1]]);
        let spec = ToralActionSpec::new(2, vec![u, l], StructureHint::General).unwrap();
        let verdict = expansiveness(&spec, 2).unwrap();
        assert!(matches!(
            verdict,
            ExpansivenessVerdict::Expansive(ExpansiveCertificate::Hyperbolic { .. })
        ));
        assert!(verify_expansiveness(&spec, &verdict));

        // a forged certificate fails
        let forged = ExpansivenessVerdict::Expansive(ExpansiveCertificate::Hyperbolic {
            word: vec![1],
            matrix: rot(),
            characteristic_polynomial: characteristic_polynomial(&rot()),
        });
        assert!(!verify_expansiveness(&cyclic(rot()), &forged));
    }

    #[test]
    fn finite_orbit_examples() {
        assert!(finite_orbit_characters(&cyclic(cat()), 10, 1000).unwrap().is_empty());

        let id = ToralActionSpec::new(1, vec![IntMatrix::identity(1)], StructureHint::General).unwrap();
        let found = finite_orbit_characters(&id, 2, 10).unwrap();
        let chars: Vec<_> = found.iter().map(|c| (c.character.clone(), c.orbit_size)).collect();
        assert_eq!(chars, vec![(v(&[-1]), 1), (v(&[1]), 1), (v(&[-2]), 1), (v(&[2]), 1)]);

        let found = finite_orbit_characters(&paper_example_spec(), 3, 100).unwrap();
        let chars: Vec<_> = found.iter().map(|c| (c.character.clone(), c.orbit_size)).collect();
        let expected: Vec<_> = [-1, 1, -2, 2, -3, 3].iter().map(|&k| (v(&[0, 0, k]), 1)).collect();
        assert_eq!(chars, expected);

        let r = finite_orbit_characters(&cyclic(rot()), 1, 100).unwrap();
        assert_eq!(r.len(), 8);
        assert!(r.iter().all(|c| c.orbit_size == 4));
        assert!(finite_orbit_characters(&cyclic(rot()), 0, 100).is_err());
    }

    #[test]
    fn box_enumeration_matches_brute_force() {
        let w = Lattice::from_generators([v(&[2, 1, 0]), v(&[0, 3, 1])], 3).unwrap();
        let got = lattice_points_in_box(&w, &BigInt::from(4));
        let mut brute = Vec::new();
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                for c in -4i64..=4 {
                    let x = v(&[a, b, c]);
                    if (a, b, c) != (0, 0, 0) && w.contains(&x) {
                        brute.push(x);
                    }
                }
            }
        }
        brute.sort_by(|a, b| sup_norm(a).cmp(&sup_norm(b)).then_with(|| a.cmp(b)));
        assert_eq!(got, brute);
    }

    #[test]
    fn ergodicity_examples() {
        let r = ergodicity(&cyclic(cat()), 20, 100).unwrap();
        assert_eq!(
            r.verdict,
            ErgodicityVerdict::Ergodic(ErgodicReason::NoCyclotomicFactor { generator: 1 })
        );
        assert!(r.sigma_algebra.is_trivial());

        let ex = paper_example_spec();
        let r = ergodicity(&ex, 20, 100).unwrap();
        assert_eq!(
            r.verdict,
            ErgodicityVerdict::NonErgodic {
                character: v(&[0, 0, 1]),
                orbit_size: 1
            }
        );
        assert_eq!(r.sigma_algebra, AbelianGroupStructure::free(1));
        assert!(r.lattice_exact);
        assert!(verify_ergodicity(&ex, &r));

        let id = ToralActionSpec::new(1, vec![IntMatrix::identity(1)], StructureHint::Cyclic).unwrap();
        let r = ergodicity(&id, 1, 1).unwrap();
        assert_eq!(
            r.verdict,
            ErgodicityVerdict::NonErgodic {
                character: v(&[1]),
                orbit_size: 1
            }
        );

        let r = ergodicity(&cyclic(rot()), 5, 100).unwrap();
        assert_eq!(
            r.verdict,
            ErgodicityVerdict::NonErgodic {
                character: v(&[1, 0]),
                orbit_size: 4
            }
        );
        assert_eq!(r.sigma_algebra, AbelianGroupStructure::free(2));
    }

    #[test]
    fn paper_example_verdicts() {
        let ex = paper_example(8, 20, 10_000).unwrap();
        assert_eq!(ex.spec.generators().len(), 3);
        assert!(matches!(ex.expansiveness, ExpansivenessVerdict::Expansive(_)));
        assert!(matches!(ex.ergodicity.verdict, ErgodicityVerdict::NonErgodic { .. }));
    }
}
