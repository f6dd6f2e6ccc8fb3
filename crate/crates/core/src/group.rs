//! Finitely generated groups with computable normal forms.
//!
//! Elements are exponent vectors:
//!
//! * free abelian `Z^d`: `(e_1, ..., e_d)`;
//! * discrete Heisenberg group: `(a, b, c)` meaning `x^a y^b z^c` with
//!   `z = x y x^-1 y^-1` central, so `y x = z^-1 x y` and
//!   `(a,b,c)(a',b',c') = (a+a', b+b', c+c' - a'b)`;
//! * `Z^k ⋊_A Z`: `(n, b)` standing for the block matrix `[[A^n, b], [0, 1]]`,
//!   so `(n,b)(n',b') = (n+n', b + A^n b')`;
//! * finite quotients of the free abelian and semidirect groups by the
//!   subgroup of exponent vectors divisible by the given moduli; elements
//!   are kept reduced.
//!
//! Every element carries a fingerprint of its group, so mixing elements of
//! different groups is reported instead of silently producing garbage.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::IntMatrix;
use crate::{Error, Result};

/// Which group, with its defining data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    FreeAbelian {
        rank: usize,
    },
    Heisenberg,
    /// `Z^k ⋊_A Z` with `k` the size of `matrix`.
    SemidirectZ {
        matrix: IntMatrix,
    },
    /// Quotient by `moduli`: one per coordinate of the base's normal form
    /// (for `SemidirectZ` the first modulus applies to `n`).
    FiniteQuotient {
        base: Box<GroupSpec>,
        moduli: Vec<BigInt>,
    },
}

impl GroupSpec {
    /// Number of exponents in a normal form.
    pub fn arity(&self) -> usize {
        match self {
            GroupSpec::FreeAbelian { rank } => *rank,
            GroupSpec::Heisenberg => 3,
            GroupSpec::SemidirectZ { matrix } => matrix.rows() + 1,
            GroupSpec::FiniteQuotient { base, .. } => base.arity(),
        }
    }

    fn encode(&self, out: &mut String) {
        match self {
            GroupSpec::FreeAbelian { rank } => out.push_str(&format!("F{rank};")),
            GroupSpec::Heisenberg => out.push_str("H;"),
            GroupSpec::SemidirectZ { matrix } => out.push_str(&format!("S{matrix};")),
            GroupSpec::FiniteQuotient { base, moduli } => {
                out.push_str("Q(");
                base.encode(out);
                for m in moduli {
                    out.push_str(&format!("{m},"));
                }
                out.push(')');
            }
        }
    }

    fn fingerprint(&self) -> u64 {
        let mut s = String::new();
        self.encode(&mut s);
        // FNV-1a
        s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::FreeAbelian { rank } => write!(f, "Z^{rank}"),
            GroupSpec::Heisenberg => write!(f, "Heisenberg"),
            GroupSpec::SemidirectZ { matrix } => write!(f, "Z^{} x| Z via {matrix}", matrix.rows()),
            GroupSpec::FiniteQuotient { base, moduli } => {
                write!(f, "({base}) mod (")?;
                for (i, m) in moduli.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A group element in normal form.
///
/// Ordering is by group fingerprint, then lexicographic on exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    group: u64,
    exponents: Vec<BigInt>,
}

impl GroupElement {
    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug)]
struct GroupData {
    spec: GroupSpec,
    fingerprint: u64,
    /// `A` and `A^-1` for semidirect bases.
    action: Option<(IntMatrix, IntMatrix)>,
}

/// A validated group; cheap to clone.
#[derive(Clone, Debug)]
pub struct Group {
    inner: Arc<GroupData>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.inner.fingerprint == other.inner.fingerprint && self.inner.spec == other.inner.spec
    }
}

impl Eq for Group {}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let action = validate(&spec)?;
        let fingerprint = spec.fingerprint();
        Ok(Group {
            inner: Arc::new(GroupData {
                spec,
                fingerprint,
                action,
            }),
        })
    }

    pub fn free_abelian(rank: usize) -> Self {
        Self::new(GroupSpec::FreeAbelian { rank }).expect("free abelian groups are always valid")
    }

    pub fn heisenberg() -> Self {
        Self::new(GroupSpec::Heisenberg).expect("the Heisenberg group is always valid")
    }

    pub fn semidirect(matrix: IntMatrix) -> Result<Self> {
        Self::new(GroupSpec::SemidirectZ { matrix })
    }

    /// `Z^2 ⋊ Z` with `A = [[2, 1], [1, 1]]`.
    pub fn cat_map_semidirect() -> Self {
        let a = IntMatrix::from_rows([[2, 1], [1, 1]]).expect("2x2");
        Self::semidirect(a).expect("det A = 1")
    }

    pub fn quotient(base: GroupSpec, moduli: Vec<BigInt>) -> Result<Self> {
        Self::new(GroupSpec::FiniteQuotient {
            base: Box::new(base),
            moduli,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.inner.spec
    }

    pub fn arity(&self) -> usize {
        self.inner.spec.arity()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.inner.spec, GroupSpec::FiniteQuotient { .. })
    }

    /// Builds an element from exponents, reducing them in a finite quotient.
    pub fn element<T: Into<BigInt>>(&self, exponents: impl IntoIterator<Item = T>) -> Result<GroupElement> {
        let exps: Vec<BigInt> = exponents.into_iter().map(Into::into).collect();
        if exps.len() != self.arity() {
            return Err(Error::domain(format!(
                "{} expects {} exponents, got {}",
                self.inner.spec,
                self.arity(),
                exps.len()
            )));
        }
        Ok(self.wrap(self.reduce(exps)))
    }

    fn wrap(&self, exponents: Vec<BigInt>) -> GroupElement {
        GroupElement {
            group: self.inner.fingerprint,
            exponents,
        }
    }

    fn reduce(&self, mut exps: Vec<BigInt>) -> Vec<BigInt> {
        if let GroupSpec::FiniteQuotient { moduli, .. } = &self.inner.spec {
            for (e, m) in exps.iter_mut().zip(moduli) {
                *e = e.mod_floor(m);
            }
        }
        exps
    }

    pub fn identity(&self) -> GroupElement {
        self.wrap(vec![BigInt::zero(); self.arity()])
    }

    pub fn owns(&self, g: &GroupElement) -> bool {
        g.group == self.inner.fingerprint
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.owns(g) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "element {g} does not belong to {}",
                self.inner.spec
            )))
        }
    }

    /// Standard generators: unit vectors for `Z^d`, `x, y, z` for Heisenberg,
    /// `t = (1, 0)` followed by the translations for the semidirect product.
    pub fn standard_generators(&self) -> Vec<GroupElement> {
        (0..self.arity())
            .map(|i| {
                let mut e = vec![BigInt::zero(); self.arity()];
                e[i] = BigInt::one();
                self.wrap(self.reduce(e))
            })
            .filter(|g| !(self.is_finite() && g.is_identity()))
            .collect()
    }

    fn power(&self, n: &BigInt) -> Result<IntMatrix> {
        let (a, a_inv) = self.inner.action.as_ref().expect("semidirect action present");
        let k = n
            .abs()
            .to_u64()
            .ok_or_else(|| Error::domain("exponent of the acting matrix is too large"))?;
        Ok(if n.is_negative() { a_inv.pow(k) } else { a.pow(k) })
    }

    fn raw_multiply(&self, spec: &GroupSpec, g: &[BigInt], h: &[BigInt]) -> Result<Vec<BigInt>> {
        Ok(match spec {
            GroupSpec::FreeAbelian { .. } => g.iter().zip(h).map(|(a, b)| a + b).collect(),
            GroupSpec::Heisenberg => vec![&g[0] + &h[0], &g[1] + &h[1], &g[2] + &h[2] - &h[0] * &g[1]],
            GroupSpec::SemidirectZ { .. } => {
                let an = self.power(&g[0])?;
                let moved = an.mul_vec(&h[1..]);
                let mut out = Vec::with_capacity(g.len());
                out.push(&g[0] + &h[0]);
                out.extend(g[1..].iter().zip(moved).map(|(a, b)| a + b));
                out
            }
            GroupSpec::FiniteQuotient { base, .. } => self.raw_multiply(base, g, h)?,
        })
    }

    fn raw_inverse(&self, spec: &GroupSpec, g: &[BigInt]) -> Result<Vec<BigInt>> {
        Ok(match spec {
            GroupSpec::FreeAbelian { .. } => g.iter().map(|a| -a).collect(),
            GroupSpec::Heisenberg => vec![-&g[0], -&g[1], -&g[2] - &g[0] * &g[1]],
            GroupSpec::SemidirectZ { .. } => {
                let n = -&g[0];
                let back = self.power(&n)?.mul_vec(&g[1..]);
                let mut out = Vec::with_capacity(g.len());
                out.push(n);
                out.extend(back.into_iter().map(|x| -x));
                out
            }
            GroupSpec::FiniteQuotient { base, .. } => self.raw_inverse(base, g)?,
        })
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        let raw = self.raw_multiply(&self.inner.spec, &g.exponents, &h.exponents)?;
        Ok(self.wrap(self.reduce(raw)))
    }

    /// `g h` for every `h` in `hs`, computing the action of `g` once.
    pub fn multiply_all(&self, g: &GroupElement, hs: &[&GroupElement]) -> Result<Vec<GroupElement>> {
        self.check(g)?;
        let an = match self.base_spec() {
            GroupSpec::SemidirectZ { .. } => Some(self.power(&g.exponents[0])?),
            _ => None,
        };
        hs.iter()
            .map(|h| {
                self.check(h)?;
                let raw = match &an {
                    Some(an) => {
                        let (g, h) = (&g.exponents, &h.exponents);
                        let mut out = Vec::with_capacity(g.len());
                        out.push(&g[0] + &h[0]);
                        out.extend(g[1..].iter().zip(an.mul_vec(&h[1..])).map(|(a, b)| a + b));
                        out
                    }
                    None => self.raw_multiply(&self.inner.spec, &g.exponents, &h.exponents)?,
                };
                Ok(self.wrap(self.reduce(raw)))
            })
            .collect()
    }

    fn base_spec(&self) -> &GroupSpec {
        match &self.inner.spec {
            GroupSpec::FiniteQuotient { base, .. } => base,
            spec => spec,
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let raw = self.raw_inverse(&self.inner.spec, &g.exponents)?;
        Ok(self.wrap(self.reduce(raw)))
    }

    /// Product of a word in the given generators; letters are signed 1-based
    /// indices, negative meaning the inverse.
    pub fn evaluate_word(&self, generators: &[GroupElement], word: &[i64]) -> Result<GroupElement> {
        let mut acc = self.identity();
        for &letter in word {
            let idx = letter.unsigned_abs() as usize;
            if letter == 0 || idx > generators.len() {
                return Err(Error::domain(format!("letter {letter} out of range")));
            }
            let g = &generators[idx - 1];
            let factor = if letter < 0 { self.inverse(g)? } else { g.clone() };
            acc = self.multiply(&acc, &factor)?;
        }
        Ok(acc)
    }

    /// All products of at most `radius` factors from `generators` and their
    /// inverses.
    pub fn ball(&self, generators: &[GroupElement], radius: usize) -> Result<BTreeSet<GroupElement>> {
        let mut steps = Vec::with_capacity(2 * generators.len());
        for g in generators {
            self.check(g)?;
            steps.push(g.clone());
            steps.push(self.inverse(g)?);
        }
        let mut seen = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &steps {
                    let p = self.multiply(g, s)?;
                    if seen.insert(p.clone()) {
                        next.push(p);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(seen)
    }

    /// Faithful integer matrix: `[[A^n, b], [0, 1]]` for the semidirect
    /// product, the unitriangular `[[1, a, ab + c], [0, 1, b], [0, 0, 1]]` for
    /// Heisenberg. Other groups have no representation here.
    pub fn matrix_representation(&self, g: &GroupElement) -> Result<IntMatrix> {
        self.check(g)?;
        let e = &g.exponents;
        match &self.inner.spec {
            GroupSpec::Heisenberg => {
                let mut m = IntMatrix::identity(3);
                m[(0, 1)] = e[0].clone();
                m[(0, 2)] = &e[0] * &e[1] + &e[2];
                m[(1, 2)] = e[1].clone();
                Ok(m)
            }
            GroupSpec::SemidirectZ { matrix } => {
                let k = matrix.rows();
                let an = self.power(&e[0])?;
                let mut m = IntMatrix::identity(k + 1);
                for i in 0..k {
                    for j in 0..k {
                        m[(i, j)] = an[(i, j)].clone();
                    }
                    m[(i, k)] = e[i + 1].clone();
                }
                Ok(m)
            }
            other => Err(Error::domain(format!("no matrix representation for {other}"))),
        }
    }

    /// All elements of a finite quotient, lexicographically ordered.
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        let GroupSpec::FiniteQuotient { moduli, .. } = &self.inner.spec else {
            return Err(Error::domain("only finite quotients can be enumerated"));
        };
        let mut out = vec![Vec::new()];
        for m in moduli {
            let m = m
                .to_u64()
                .ok_or_else(|| Error::domain("quotient too large to enumerate"))?;
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for prefix in &out {
                for r in 0..m {
                    let mut p: Vec<BigInt> = prefix.clone();
                    p.push(BigInt::from(r));
                    next.push(p);
                }
            }
            out = next;
        }
        Ok(out.into_iter().map(|e| self.wrap(e)).collect())
    }

    /// Position of every element of a finite quotient in [`Group::enumerate`].
    pub fn index_map(&self) -> Result<BTreeMap<GroupElement, usize>> {
        Ok(self.enumerate()?.into_iter().enumerate().map(|(i, g)| (g, i)).collect())
    }

    /// For a finite quotient: the image of an element of its base group.
    pub fn project(&self, base: &Group, g: &GroupElement) -> Result<GroupElement> {
        match &self.inner.spec {
            GroupSpec::FiniteQuotient { base: b, .. } if **b == base.inner.spec => {
                base.check(g)?;
                Ok(self.wrap(self.reduce(g.exponents.clone())))
            }
            _ => Err(Error::domain(format!(
                "{} is not a quotient of {}",
                self.inner.spec, base.inner.spec
            ))),
        }
    }
}

fn validate(spec: &GroupSpec) -> Result<Option<(IntMatrix, IntMatrix)>> {
    match spec {
        GroupSpec::FreeAbelian { .. } | GroupSpec::Heisenberg => Ok(None),
        GroupSpec::SemidirectZ { matrix } => {
            if !matrix.is_square() || matrix.rows() == 0 {
                return Err(Error::domain("the acting matrix must be square and nonempty"));
            }
            let det = matrix.determinant()?;
            if det.abs() != BigInt::one() {
                return Err(Error::domain(format!(
                    "the acting matrix has determinant {det}, not ±1"
                )));
            }
            Ok(Some((matrix.clone(), matrix.inverse_unimodular()?)))
        }
        GroupSpec::FiniteQuotient { base, moduli } => {
            if moduli.len() != base.arity() {
                return Err(Error::domain("one modulus per normal-form coordinate is required"));
            }
            if moduli.iter().any(|m| *m < BigInt::one()) {
                return Err(Error::domain("moduli must be at least 1"));
            }
            match &**base {
                GroupSpec::FreeAbelian { .. } => Ok(None),
                GroupSpec::SemidirectZ { matrix } => {
                    let action = validate(base)?;
                    check_semidirect_quotient(matrix, moduli)?;
                    Ok(action)
                }
                other => Err(Error::domain(format!("finite quotients of {other} are not supported"))),
            }
        }
    }
}

/// The subgroup `m_0 Z ⋉ L`, `L = ⊕ m_i Z`, is normal exactly when
/// `A L = L` and `A^{m_0}` acts trivially on `Z^k / L`.
fn check_semidirect_quotient(a: &IntMatrix, moduli: &[BigInt]) -> Result<()> {
    let k = a.rows();
    let (m0, lattice) = (&moduli[0], &moduli[1..]);
    for i in 0..k {
        for j in 0..k {
            if !(&a[(i, j)] * &lattice[j] % &lattice[i]).is_zero() {
                return Err(Error::domain(format!(
                    "the matrix does not preserve the translation moduli (entry {i},{j})"
                )));
            }
        }
    }
    let e = m0
        .to_u64()
        .ok_or_else(|| Error::domain("modulus of the cyclic factor is too large"))?;
    let twist = a.pow(e).minus_identity();
    for i in 0..k {
        if twist.row(i).iter().any(|x| !(x % &lattice[i]).is_zero()) {
            return Err(Error::domain(
                "A^m0 does not act trivially modulo the translation moduli; the quotient is not a group",
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(g: &Group, e: &[i64]) -> GroupElement {
        g.element(e.iter().copied()).unwrap()
    }

    #[test]
    fn free_abelian_multiply_and_inverse() {
        let g = Group::free_abelian(2);
        assert_eq!(g.multiply(&el(&g, &[1, 0]), &el(&g, &[0, 1])).unwrap(), el(&g, &[1, 1]));
        let z = Group::free_abelian(1);
        assert_eq!(z.inverse(&el(&z, &[5])).unwrap(), el(&z, &[-5]));
    }

    #[test]
    fn heisenberg_collection() {
        let h = Group::heisenberg();
        let x = el(&h, &[1, 0, 0]);
        let y = el(&h, &[0, 1, 0]);
        assert_eq!(h.multiply(&x, &y).unwrap(), el(&h, &[1, 1, 0]));
        assert_eq!(h.multiply(&y, &x).unwrap(), el(&h, &[1, 1, -1]));
        // x y x^-1 y^-1 = z
        let comm = h.evaluate_word(&[x.clone(), y.clone()], &[1, 2, -1, -2]).unwrap();
        assert_eq!(comm, el(&h, &[0, 0, 1]));
        assert_eq!(h.inverse(&el(&h, &[1, 1, 0])).unwrap(), el(&h, &[-1, -1, -1]));
    }

    #[test]
    fn semidirect_examples() {
        let g = Group::cat_map_semidirect();
        let t = el(&g, &[1, 0, 0]);
        let e1 = el(&g, &[0, 1, 0]);
        assert_eq!(g.multiply(&t, &e1).unwrap(), el(&g, &[1, 2, 1]));
        assert_eq!(g.inverse(&el(&g, &[1, 1, 0])).unwrap(), el(&g, &[-1, -1, 1]));
        assert_eq!(
            g.matrix_representation(&t).unwrap(),
            IntMatrix::from_rows([[2, 1, 0], [1, 1, 0], [0, 0, 1]]).unwrap()
        );
        assert_eq!(
            g.matrix_representation(&e1).unwrap(),
            IntMatrix::from_rows([[1, 0, 1], [0, 1, 0], [0, 0, 1]]).unwrap()
        );
    }

    #[test]
    fn heisenberg_identity_representation() {
        let h = Group::heisenberg();
        assert!(h.matrix_representation(&h.identity()).unwrap().is_identity());
        let z = Group::free_abelian(2);
        assert!(z.matrix_representation(&z.identity()).is_err());
    }

    #[test]
    fn rejects_bad_specs() {
        let bad = IntMatrix::from_rows([[2, 0], [0, 1]]).unwrap();
        assert!(Group::semidirect(bad).is_err());
        assert!(Group::quotient(GroupSpec::Heisenberg, vec![BigInt::from(2); 3]).is_err());
        assert!(Group::quotient(
            GroupSpec::FreeAbelian { rank: 2 },
            vec![BigInt::from(0), BigInt::from(2)]
        )
        .is_err());
        let cat = Group::cat_map_semidirect().spec().clone();
        // A has order 3 mod 2: the quotient needs the cyclic modulus to be a multiple of 3
        assert!(Group::quotient(cat.clone(), vec![BigInt::from(2), BigInt::from(2), BigInt::from(2)]).is_err());
        assert!(Group::quotient(cat, vec![BigInt::from(3), BigInt::from(2), BigInt::from(2)]).is_ok());
    }

    #[test]
    fn mixing_groups_is_an_error() {
        let a = Group::free_abelian(3);
        let h = Group::heisenberg();
        assert!(h.multiply(&a.identity(), &h.identity()).is_err());
        assert!(a.inverse(&h.identity()).is_err());
    }

    #[test]
    fn ball_examples() {
        let z = Group::free_abelian(1);
        let b = z.ball(&[el(&z, &[1])], 2).unwrap();
        let got: Vec<_> = b.iter().map(|g| g.exponents()[0].clone()).collect();
        assert_eq!(got, [-2, -1, 0, 1, 2].map(BigInt::from).to_vec());
        let h = Group::heisenberg();
        assert_eq!(h.ball(&h.standard_generators(), 0).unwrap().len(), 1);
    }

    #[test]
    fn finite_quotient_arithmetic() {
        let q = Group::quotient(
            GroupSpec::FreeAbelian { rank: 2 },
            vec![BigInt::from(2), BigInt::from(3)],
        )
        .unwrap();
        assert_eq!(q.enumerate().unwrap().len(), 6);
        assert_eq!(el(&q, &[3, -1]), el(&q, &[1, 2]));
        let base = Group::free_abelian(2);
        assert_eq!(q.project(&base, &el(&base, &[5, 5])).unwrap(), el(&q, &[1, 2]));
    }

    fn any_group() -> impl Strategy<Value = Group> {
        prop_oneof![
            Just(Group::free_abelian(3)),
            Just(Group::heisenberg()),
            Just(Group::cat_map_semidirect()),
            Just(
                Group::quotient(
                    Group::cat_map_semidirect().spec().clone(),
                    vec![BigInt::from(3), BigInt::from(2), BigInt::from(2)]
                )
                .unwrap()
            ),
        ]
    }

    proptest! {
        #[test]
        fn associativity_and_inverses(
            g in any_group(),
            a in proptest::collection::vec(-4i64..=4, 3),
            b in proptest::collection::vec(-4i64..=4, 3),
            c in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let (a, b, c) = (el(&g, &a), el(&g, &b), el(&g, &c));
            let left = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
            let right = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let inv = g.inverse(&a).unwrap();
            prop_assert!(g.multiply(&a, &inv).unwrap().is_identity());
            prop_assert!(g.multiply(&inv, &a).unwrap().is_identity());
        }
    }
}
