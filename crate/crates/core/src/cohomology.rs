//! First cohomology of group actions on finite modules.
//!
//! A finitely presented group acts on a finite module `M = Z^k / Λ` through
//! one integer matrix per generator. A 1-cocycle is fixed by its values on
//! the generators, and each relator `s_1 ... s_l` imposes
//!
//! ```text
//! c(s_1 ... s_l) = Σ_j α(s_1 ... s_{j-1}) c(s_j) = 0,   c(g^-1) = -α(g^-1) c(g).
//! ```
//!
//! With `R` the stacked matrix of these relator conditions, everything is a
//! lattice computation in `Z^{gk}`:
//!
//! * cocycles: `L_C = {c : R c ∈ Λ^r}`, and `C(α) = L_C / Λ^g`;
//! * coboundaries: `L_B = δ Z^k + Λ^g` with `δ x = ((A_i - I) x)_i`;
//! * `H^1(α) = L_C / L_B` and `F(α) = δ^{-1}(Λ^g) / Λ`.
//!
//! The usual modules `(Z/N)^k` take `Λ = N Z^k`. General `Λ` is what makes
//! submodules and quotient modules exact: a submodule `K = L_K / Λ` becomes
//! `Z^k / P^{-1} Λ` in the coordinates of a basis `P` of `L_K`, and the
//! quotient is `Z^k / L_K`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::{smith_normal_form, AbelianGroupStructure, IntMatrix, Lattice};
use crate::{Error, Result};

/// Generators `1..=generators` and relators written as signed 1-based
/// letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Vec<i64>>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Vec<i64>>) -> Result<Self> {
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::domain(format!("relator {} is empty", i + 1)));
            }
            if let Some(&bad) = r.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > generators) {
                return Err(Error::domain(format!("relator {} uses letter {bad}", i + 1)));
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    /// `Z^d = <a_1..a_d | [a_i, a_j]>`.
    pub fn free_abelian(rank: usize) -> Self {
        let mut relators = Vec::new();
        for i in 1..=rank as i64 {
            for j in i + 1..=rank as i64 {
                relators.push(vec![i, j, -i, -j]);
            }
        }
        GroupPresentation {
            generators: rank,
            relators,
        }
    }

    /// `<x, y, z | z^-1 x y x^-1 y^-1, z x z^-1 x^-1, z y z^-1 y^-1>`.
    pub fn heisenberg() -> Self {
        GroupPresentation {
            generators: 3,
            relators: vec![vec![-3, 1, 2, -1, -2], vec![3, 1, -3, -1], vec![3, 2, -3, -2]],
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<i64>] {
        &self.relators
    }
}

/// A group acting on `Z^k / Λ` by integer matrices, one per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModuleAction {
    relations: Lattice,
    matrices: Vec<IntMatrix>,
    inverses: Vec<IntMatrix>,
}

impl FiniteModuleAction {
    /// `(Z/N)^rank` with the given matrices, read modulo `N`.
    pub fn new(modulus: &BigInt, rank: usize, matrices: Vec<IntMatrix>) -> Result<Self> {
        if *modulus < BigInt::from(2) {
            return Err(Error::domain("the modulus must be at least 2"));
        }
        let matrices = matrices.iter().map(|m| m.reduce_mod(modulus)).collect();
        Self::with_relations(Lattice::scaled(rank, modulus), matrices)
    }

    /// `Z^k / relations` for a full-rank relation lattice; each matrix must
    /// preserve it and induce a bijection of the quotient.
    pub fn with_relations(relations: Lattice, matrices: Vec<IntMatrix>) -> Result<Self> {
        let k = relations.dim();
        if !relations.is_full_rank() {
            return Err(Error::domain("the relation lattice must have full rank"));
        }
        let basis = relations.column_matrix();
        let mut inverses = Vec::with_capacity(matrices.len());
        for (i, a) in matrices.iter().enumerate() {
            if a.rows() != k || a.cols() != k {
                return Err(Error::domain(format!("matrix {} is not {k}x{k}", i + 1)));
            }
            if !relations.contains_lattice(&relations.image(a)?) {
                return Err(Error::domain(format!(
                    "matrix {} does not preserve the relations",
                    i + 1
                )));
            }
            inverses.push(
                inverse_modulo(a, &basis, &relations)
                    .ok_or_else(|| Error::domain(format!("matrix {} is not invertible on the module", i + 1)))?,
            );
        }
        Ok(FiniteModuleAction {
            relations,
            matrices,
            inverses,
        })
    }

    pub fn rank(&self) -> usize {
        self.relations.dim()
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    /// `|M|`.
    pub fn order(&self) -> BigInt {
        self.relations.index().expect("full rank")
    }

    /// Canonical representative of `v` in the module.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.relations.reduce(v)
    }

    /// Canonical representatives of every element, in lexicographic order of
    /// their coordinates. Only sensible for small modules.
    pub fn elements(&self) -> Result<Vec<Vec<BigInt>>> {
        let k = self.rank();
        // full-rank HNF: pivot i sits in column i, representatives range over [0, h_i)
        let mut out = vec![Vec::new()];
        for i in 0..k {
            let h = self.relations.basis()[i][i]
                .to_usize()
                .ok_or_else(|| Error::domain("module too large to enumerate"))?;
            out = out
                .into_iter()
                .flat_map(|p: Vec<BigInt>| {
                    (0..h).map(move |t| {
                        let mut q = p.clone();
                        q.push(BigInt::from(t));
                        q
                    })
                })
                .collect();
        }
        let mut reps: Vec<Vec<BigInt>> = out.into_iter().map(|v| self.reduce(&v)).collect();
        reps.sort();
        reps.dedup();
        Ok(reps)
    }

    /// `α(w)` as an integer matrix, for a word in signed 1-based letters.
    pub fn word_matrix(&self, word: &[i64]) -> Result<IntMatrix> {
        let mut acc = IntMatrix::identity(self.rank());
        for &l in word {
            acc = &acc * self.letter(l)?;
        }
        Ok(acc)
    }

    fn letter(&self, l: i64) -> Result<&IntMatrix> {
        let i = l.unsigned_abs() as usize;
        if l == 0 || i > self.matrices.len() {
            return Err(Error::domain(format!("letter {l} out of range")));
        }
        Ok(if l > 0 {
            &self.matrices[i - 1]
        } else {
            &self.inverses[i - 1]
        })
    }

    /// Value of the cocycle with the given generator values on a word.
    pub fn cocycle_value(&self, values: &[Vec<BigInt>], word: &[i64]) -> Result<Vec<BigInt>> {
        if values.len() != self.matrices.len() {
            return Err(Error::domain("one value per generator is required"));
        }
        let mut prefix = IntMatrix::identity(self.rank());
        let mut acc = vec![BigInt::zero(); self.rank()];
        for &l in word {
            let a = self.letter(l)?;
            let i = l.unsigned_abs() as usize - 1;
            // c(g^-1) = -α(g^-1) c(g), so the prefix already includes g^-1
            let (m, sign) = if l > 0 { (prefix.clone(), 1) } else { (&prefix * a, -1) };
            for (s, t) in acc.iter_mut().zip(m.mul_vec(&values[i])) {
                *s += t * sign;
            }
            prefix = &prefix * a;
        }
        Ok(self.reduce(&acc))
    }

    fn check_presentation(&self, pres: &GroupPresentation) -> Result<()> {
        if pres.generators != self.matrices.len() {
            return Err(Error::domain(format!(
                "{} generators but {} matrices",
                pres.generators,
                self.matrices.len()
            )));
        }
        for (i, r) in pres.relators.iter().enumerate() {
            let w = self.word_matrix(r)?.minus_identity();
            let cols: Vec<Vec<BigInt>> = (0..w.cols()).map(|j| w.column(j)).collect();
            if !cols.iter().all(|c| self.relations.contains(c)) {
                return Err(Error::domain(format!("relator {} does not act trivially", i + 1)));
            }
        }
        Ok(())
    }
}

/// Inverse of `a` on `Z^k / L` where `basis` holds the columns of `L`.
fn inverse_modulo(a: &IntMatrix, basis: &IntMatrix, relations: &Lattice) -> Option<IntMatrix> {
    let k = a.rows();
    let c = IntMatrix::hstack(k, &[a.clone(), basis.clone()]).ok()?;
    let snf = smith_normal_form(&c);
    if snf.diagonal().iter().any(|d| !d.is_one()) {
        return None;
    }
    // C z = e_j has the solution z = V [I; 0] U e_j; keep its first k entries
    let vu = &snf.v.submatrix(0, k, 0, k) * &snf.u;
    let cols: Vec<Vec<BigInt>> = (0..k).map(|j| relations.reduce(&vu.column(j))).collect();
    IntMatrix::from_columns(k, &cols).ok()
}

/// `Λ^copies` inside `Z^{copies * k}`.
fn block_lattice(relations: &Lattice, copies: usize) -> Lattice {
    let k = relations.dim();
    let gens = (0..copies).flat_map(|i| {
        relations.basis().iter().map(move |v| {
            let mut w = vec![BigInt::zero(); copies * k];
            w[i * k..(i + 1) * k].clone_from_slice(v);
            w
        })
    });
    Lattice::from_generators(gens, copies * k).expect("blocks have the right length")
}

/// The stacked relator conditions `R`, one `k x gk` block row per relator.
pub fn relator_matrix(pres: &GroupPresentation, act: &FiniteModuleAction) -> Result<IntMatrix> {
    let k = act.rank();
    let g = pres.generators;
    let mut r = IntMatrix::zeros(k * pres.relators.len(), k * g);
    for (ri, word) in pres.relators.iter().enumerate() {
        let mut prefix = IntMatrix::identity(k);
        for &l in word {
            let a = act.letter(l)?;
            let gi = l.unsigned_abs() as usize - 1;
            let (m, sign) = if l > 0 { (prefix.clone(), 1) } else { (&prefix * a, -1) };
            for i in 0..k {
                for j in 0..k {
                    r[(ri * k + i, gi * k + j)] += &m[(i, j)] * sign;
                }
            }
            prefix = &prefix * a;
        }
    }
    Ok(r)
}

/// A subgroup `L / Λ^g` of `M^g`: the lattice `L` and the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSubgroup {
    pub lattice: Lattice,
    pub structure: AbelianGroupStructure,
    pub size: BigInt,
}

fn subgroup(lattice: Lattice, ambient: &Lattice) -> Result<ModuleSubgroup> {
    let structure = lattice.quotient_structure(ambient)?;
    let size = structure
        .cardinality()
        .ok_or_else(|| Error::internal("a subgroup of a finite module is infinite"))?;
    Ok(ModuleSubgroup {
        lattice,
        structure,
        size,
    })
}

fn coboundary_map(act: &FiniteModuleAction) -> IntMatrix {
    let k = act.rank();
    if act.matrices.is_empty() {
        return IntMatrix::zeros(0, k);
    }
    let blocks: Vec<IntMatrix> = act.matrices.iter().map(IntMatrix::minus_identity).collect();
    IntMatrix::vstack(&blocks).expect("square blocks")
}

/// `C(α)`: cocycles as a lattice of generator values modulo `Λ^g`.
pub fn cocycle_space(pres: &GroupPresentation, act: &FiniteModuleAction) -> Result<ModuleSubgroup> {
    act.check_presentation(pres)?;
    let g = pres.generators;
    let r = relator_matrix(pres, act)?;
    let target = block_lattice(&act.relations, pres.relators.len());
    let lc = Lattice::preimage(&r, &target)?;
    subgroup(lc, &block_lattice(&act.relations, g))
}

/// `B(α)`: the coboundaries `x ↦ ((A_i - I) x)_i` modulo `Λ^g`.
pub fn coboundary_space(act: &FiniteModuleAction) -> Result<ModuleSubgroup> {
    let g = act.matrices.len();
    let ambient = block_lattice(&act.relations, g);
    let image = Lattice::full(act.rank()).image(&coboundary_map(act))?;
    subgroup(image.sum(&ambient)?, &ambient)
}

/// `F(α)`: points fixed by every generator.
pub fn fixed_points(act: &FiniteModuleAction) -> Result<AbelianGroupStructure> {
    let target = block_lattice(&act.relations, act.matrices.len());
    Lattice::preimage(&coboundary_map(act), &target)?.quotient_structure(&act.relations)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub module_size: BigInt,
    pub c_size: BigInt,
    pub b_size: BigInt,
    pub h1: AbelianGroupStructure,
    pub f_alpha: AbelianGroupStructure,
}

impl CohomologyReport {
    pub fn h1_size(&self) -> BigInt {
        self.h1.cardinality().expect("finite")
    }

    pub fn f_size(&self) -> BigInt {
        self.f_alpha.cardinality().expect("finite")
    }
}

pub fn h1(pres: &GroupPresentation, act: &FiniteModuleAction) -> Result<CohomologyReport> {
    let c = cocycle_space(pres, act)?;
    let b = coboundary_space(act)?;
    if !c.lattice.contains_lattice(&b.lattice) {
        return Err(Error::internal("coboundaries are not cocycles"));
    }
    let h1 = c.lattice.quotient_structure(&b.lattice)?;
    let f_alpha = fixed_points(act)?;
    let report = CohomologyReport {
        module_size: act.order(),
        c_size: c.size,
        b_size: b.size,
        h1,
        f_alpha,
    };
    if report.c_size != &report.b_size * report.h1_size() || &report.b_size * report.f_size() != report.module_size {
        return Err(Error::internal("cohomology cardinalities are inconsistent"));
    }
    Ok(report)
}

/// Restriction to an invariant submodule `K` and the induced action on the
/// quotient `M / K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleSplit {
    pub restricted: FiniteModuleAction,
    pub quotient: FiniteModuleAction,
}

/// Builds `α|_K` and `β` on `M / K` for the submodule generated by
/// `generators`; fails unless `K` is invariant.
pub fn split_by_submodule(act: &FiniteModuleAction, generators: &[Vec<BigInt>]) -> Result<SubmoduleSplit> {
    let k = act.rank();
    if generators.iter().any(|v| v.len() != k) {
        return Err(Error::domain(format!("submodule generators must have length {k}")));
    }
    let lk = Lattice::from_generators(generators.iter().cloned(), k)?.sum(&act.relations)?;
    for (i, a) in act.matrices.iter().enumerate() {
        if !lk.contains_lattice(&lk.image(a)?) {
            return Err(Error::domain(format!(
                "the submodule is not invariant under generator {}",
                i + 1
            )));
        }
    }
    let coords = |v: &[BigInt]| {
        lk.coordinates(v)
            .ok_or_else(|| Error::internal("vector left the submodule"))
    };
    let p = lk.column_matrix();
    let mut restricted = Vec::with_capacity(act.matrices.len());
    for a in &act.matrices {
        let ap = a * &p;
        let cols = (0..k).map(|j| coords(&ap.column(j))).collect::<Result<Vec<_>>>()?;
        restricted.push(IntMatrix::from_columns(k, &cols)?);
    }
    let rel = act
        .relations
        .basis()
        .iter()
        .map(|v| coords(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(SubmoduleSplit {
        restricted: FiniteModuleAction::with_relations(Lattice::from_generators(rel, k)?, restricted)?,
        quotient: FiniteModuleAction::with_relations(lk, act.matrices.clone())?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    /// `|H^1(α)| <= |H^1(β)| |H^1(α|_K)|`.
    pub extension_ok: bool,
    /// `|F(β)| <= |F(α)| |H^1(α|_K)|`.
    pub dichotomy_ok: bool,
    pub h1_alpha: BigInt,
    pub h1_beta: BigInt,
    pub h1_restricted: BigInt,
    pub f_alpha: BigInt,
    pub f_beta: BigInt,
    pub f_restricted: BigInt,
}

/// Checks the two cardinality inequalities coming from the exact sequences
/// `H^1(α|_K) → H^1(α) → H^1(β)` and `F(α) → F(β) → H^1(α|_K)`.
pub fn lemma_inequalities(
    pres: &GroupPresentation,
    act: &FiniteModuleAction,
    submodule: &[Vec<BigInt>],
) -> Result<LemmaCheck> {
    let split = split_by_submodule(act, submodule)?;
    let a = h1(pres, act)?;
    let b = h1(pres, &split.quotient)?;
    let r = h1(pres, &split.restricted)?;
    let (h1_alpha, h1_beta, h1_restricted) = (a.h1_size(), b.h1_size(), r.h1_size());
    let (f_alpha, f_beta, f_restricted) = (a.f_size(), b.f_size(), r.f_size());
    Ok(LemmaCheck {
        extension_ok: h1_alpha <= &h1_beta * &h1_restricted,
        dichotomy_ok: f_beta <= &f_alpha * &h1_restricted,
        h1_alpha,
        h1_beta,
        h1_restricted,
        f_alpha,
        f_beta,
        f_restricted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn n(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn mat<const K: usize>(rows: [[i64; K]; K]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| n(x)).collect()
    }

    fn cyclic() -> GroupPresentation {
        GroupPresentation::free_abelian(1)
    }

    /// Enumerates every generator assignment and keeps those killing all
    /// relators; counts distinct coboundaries.
    fn brute_force(pres: &GroupPresentation, act: &FiniteModuleAction) -> (usize, usize) {
        let elems = act.elements().unwrap();
        let g = pres.generator_count();
        let mut assignments: Vec<Vec<Vec<BigInt>>> = vec![Vec::new()];
        for _ in 0..g {
            assignments = assignments
                .into_iter()
                .flat_map(|a| {
                    elems.iter().map(move |e| {
                        let mut b = a.clone();
                        b.push(e.clone());
                        b
                    })
                })
                .collect();
        }
        let zero = vec![BigInt::zero(); act.rank()];
        let c = assignments
            .iter()
            .filter(|vals| {
                pres.relators()
                    .iter()
                    .all(|r| act.cocycle_value(vals, r).unwrap() == zero)
            })
            .count();
        let b: BTreeSet<Vec<Vec<BigInt>>> = elems
            .iter()
            .map(|x| {
                act.matrices()
                    .iter()
                    .map(|a| act.reduce(&a.minus_identity().mul_vec(x)))
                    .collect()
            })
            .collect();
        (c, b.len())
    }

    #[test]
    fn cyclic_examples() {
        let times2 = FiniteModuleAction::new(&n(5), 1, vec![mat([[2]])]).unwrap();
        let r = h1(&cyclic(), &times2).unwrap();
        assert_eq!((r.c_size.clone(), r.b_size.clone(), r.h1_size()), (n(5), n(5), n(1)));
        assert_eq!(brute_force(&cyclic(), &times2), (5, 5));

        let trivial = FiniteModuleAction::new(&n(3), 1, vec![mat([[1]])]).unwrap();
        let r = h1(&cyclic(), &trivial).unwrap();
        assert_eq!((r.c_size.clone(), r.b_size.clone()), (n(3), n(1)));
        assert_eq!(r.h1.torsion, v(&[3]));

        let times3 = FiniteModuleAction::new(&n(4), 1, vec![mat([[3]])]).unwrap();
        assert_eq!(coboundary_space(&times3).unwrap().size, n(2));
    }

    #[test]
    fn heisenberg_trivial_mod_two() {
        let act = FiniteModuleAction::new(&n(2), 1, vec![mat([[1]]); 3]).unwrap();
        let pres = GroupPresentation::heisenberg();
        let r = h1(&pres, &act).unwrap();
        assert_eq!(r.c_size, n(4));
        assert_eq!(r.h1.torsion, v(&[2, 2]));
        assert_eq!(brute_force(&pres, &act), (4, 1));
    }

    #[test]
    fn inconsistent_action_rejected() {
        // x and y do not commute mod 3, so Z^2 cannot act this way
        let act = FiniteModuleAction::new(&n(3), 2, vec![mat([[1, 1], [0, 1]]), mat([[1, 0], [1, 1]])]).unwrap();
        assert!(h1(&GroupPresentation::free_abelian(2), &act).is_err());
        assert!(FiniteModuleAction::new(&n(4), 1, vec![mat([[2]])]).is_err());
        assert!(GroupPresentation::new(2, vec![vec![1, 3]]).is_err());
        assert!(GroupPresentation::new(2, vec![vec![]]).is_err());
    }

    #[test]
    fn unipotent_mod_two_inequalities() {
        let act = FiniteModuleAction::new(&n(2), 2, vec![mat([[1, 1], [0, 1]])]).unwrap();
        let check = lemma_inequalities(&cyclic(), &act, &[v(&[1, 0])]).unwrap();
        assert!(check.extension_ok && check.dichotomy_ok);
        let r = h1(&cyclic(), &act).unwrap();
        let (c, b) = brute_force(&cyclic(), &act);
        assert_eq!((n(c as i64), n(b as i64)), (r.c_size.clone(), r.b_size.clone()));
        assert_eq!(check.h1_alpha, r.h1_size());

        let zero = lemma_inequalities(&cyclic(), &act, &[]).unwrap();
        assert_eq!(
            (zero.h1_beta.clone(), zero.h1_restricted.clone()),
            (zero.h1_alpha.clone(), n(1))
        );
        let all = lemma_inequalities(&cyclic(), &act, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(
            (all.h1_beta.clone(), all.h1_restricted.clone()),
            (n(1), all.h1_alpha.clone())
        );

        assert!(lemma_inequalities(&cyclic(), &act, &[v(&[0, 1])]).is_err());
    }

    #[test]
    fn submodule_of_cyclic_group() {
        // K = 2 Z/8 inside Z/8 with x -> 3x: K is Z/4, the quotient Z/2
        let act = FiniteModuleAction::new(&n(8), 1, vec![mat([[3]])]).unwrap();
        let split = split_by_submodule(&act, &[v(&[2])]).unwrap();
        assert_eq!(split.restricted.order(), n(4));
        assert_eq!(split.quotient.order(), n(2));
        assert_eq!(split.restricted.matrices()[0], mat([[3]]));
        let (c, b) = brute_force(&cyclic(), &split.restricted);
        let r = h1(&cyclic(), &split.restricted).unwrap();
        assert_eq!((n(c as i64), n(b as i64)), (r.c_size, r.b_size));
    }
}
