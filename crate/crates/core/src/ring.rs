//! The integral group ring `Z[G]` and finite-support pieces of `l^1(G)`.
//!
//! An element `f = Σ c_g δ_g` is *lopsided* when one coefficient strictly
//! dominates the absolute sum of all the others. Writing
//! `f = c_0 δ_{g_0} (δ_e - h)` with `‖h‖_1 < 1`, the Neumann series
//! `Σ h^k` converges in `l^1` and gives the inverse
//! `f^-1 = (Σ h^k) δ_{g_0^-1} / c_0`. [`invert_lopsided`] truncates the
//! series at the first order whose a-priori tail is below the requested
//! tolerance, and reports that tail exactly.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::group::{Group, GroupElement};
use crate::{Error, Result};

/// Finite-support integer combination of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    group: Group,
    terms: BTreeMap<GroupElement, BigInt>,
}

impl GroupRingElement {
    pub fn zero(group: &Group) -> Self {
        GroupRingElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `c δ_g`.
    pub fn monomial(group: &Group, g: GroupElement, c: impl Into<BigInt>) -> Result<Self> {
        Self::from_terms(group, [(g, c.into())])
    }

    /// `δ_e`.
    pub fn one(group: &Group) -> Self {
        Self::monomial(group, group.identity(), 1).expect("identity belongs to its group")
    }

    /// Sums the given terms; repeated elements add up and zeros are dropped.
    pub fn from_terms<I>(group: &Group, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, BigInt)>,
    {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            if !group.owns(&g) {
                return Err(Error::domain(format!(
                    "element {g} does not belong to {}",
                    group.spec()
                )));
            }
            out.add_term(g, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, g: GroupElement, c: BigInt) {
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, g: &GroupElement) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn l1_norm(&self) -> BigInt {
        self.terms.values().map(Signed::abs).sum()
    }

    /// Sum of the coefficients (the augmentation).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "group ring elements over {} and {}",
                self.group.spec(),
                other.group.spec()
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.group);
        }
        GroupRingElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c * k)).collect(),
        }
    }

    /// Convolution: the coefficient at `g` is `Σ_{g1 g2 = g} f(g1) h(g2)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut acc: BTreeMap<GroupElement, BigInt> = BTreeMap::new();
        let right: Vec<&GroupElement> = other.terms.keys().collect();
        for (g1, c1) in &self.terms {
            let products = self.group.multiply_all(g1, &right)?;
            for (g, c2) in products.into_iter().zip(other.terms.values()) {
                *acc.entry(g).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(GroupRingElement {
            group: self.group.clone(),
            terms: acc,
        })
    }

    /// Exact rational view of this element, with zero tail.
    pub fn to_l1(&self) -> L1Element {
        L1Element {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), BigRational::from_integer(c.clone())))
                .collect(),
            tail_bound: BigRational::zero(),
        }
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*d{g}")?;
        }
        Ok(())
    }
}

/// The pivot `g_0` with `|c_{g_0}| > Σ_{g ≠ g_0} |c_g|`, if any.
///
/// Such a pivot is unique whenever it exists.
pub fn is_lopsided(f: &GroupRingElement) -> Result<Option<GroupElement>> {
    if f.is_zero() {
        return Err(Error::domain("the zero element has no lopsidedness"));
    }
    let total = f.l1_norm();
    let (g, c) = f
        .terms
        .iter()
        .max_by(|a, b| a.1.abs().cmp(&b.1.abs()))
        .expect("nonzero element has a term");
    let top = c.abs();
    Ok((&top + &top > total).then(|| g.clone()))
}

/// Finite-support rational function on a group together with an `l^1`
/// bound on the mass it omits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1Element {
    group: Group,
    terms: BTreeMap<GroupElement, BigRational>,
    tail_bound: BigRational,
}

impl L1Element {
    pub fn new(group: &Group, terms: BTreeMap<GroupElement, BigRational>, tail_bound: BigRational) -> Result<Self> {
        if tail_bound.is_negative() {
            return Err(Error::domain("tail bound must be nonnegative"));
        }
        if let Some(g) = terms.keys().find(|g| !group.owns(g)) {
            return Err(Error::domain(format!(
                "element {g} does not belong to {}",
                group.spec()
            )));
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(L1Element {
            group: group.clone(),
            terms,
            tail_bound,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<GroupElement, BigRational> {
        &self.terms
    }

    pub fn tail_bound(&self) -> &BigRational {
        &self.tail_bound
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, g: &GroupElement) -> BigRational {
        self.terms.get(g).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `l^1` norm of the stored finite part.
    pub fn l1_norm(&self) -> BigRational {
        self.terms.values().map(Signed::abs).sum()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::domain("l1 elements over different groups"))
        }
    }

    /// Sum; tails add.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut terms = self.terms.clone();
        for (g, c) in &other.terms {
            *terms.entry(g.clone()).or_insert_with(BigRational::zero) += c;
        }
        L1Element::new(&self.group, terms, &self.tail_bound + &other.tail_bound)
    }

    /// Convolution. With stored parts `a, b` and tails `s, t` the product of
    /// the true elements is within `‖a‖ t + ‖b‖ s + s t` of `a b`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let terms = convolve(&self.group, &self.terms, &other.terms)?;
        let tail = self.l1_norm() * &other.tail_bound
            + other.l1_norm() * &self.tail_bound
            + &self.tail_bound * &other.tail_bound;
        L1Element::new(&self.group, terms, tail)
    }

    /// Exact `‖f r - δ_e‖_1` for the stored part `r`.
    pub fn right_residual(&self, f: &GroupRingElement) -> Result<BigRational> {
        let prod = f.to_l1().mul(&self.without_tail())?;
        Ok(distance_from_identity(&prod))
    }

    /// Exact `‖r f - δ_e‖_1` for the stored part `r`.
    pub fn left_residual(&self, f: &GroupRingElement) -> Result<BigRational> {
        let prod = self.without_tail().mul(&f.to_l1())?;
        Ok(distance_from_identity(&prod))
    }

    fn without_tail(&self) -> Self {
        L1Element {
            tail_bound: BigRational::zero(),
            ..self.clone()
        }
    }
}

fn distance_from_identity(x: &L1Element) -> BigRational {
    let e = x.group.identity();
    let mut total = (x.coefficient(&e) - BigRational::one()).abs();
    for (g, c) in &x.terms {
        if *g != e {
            total += c.abs();
        }
    }
    total
}

fn convolve<C>(
    group: &Group,
    a: &BTreeMap<GroupElement, C>,
    b: &BTreeMap<GroupElement, C>,
) -> Result<BTreeMap<GroupElement, C>>
where
    C: Clone + Zero + for<'x> core::ops::AddAssign<&'x C>,
    for<'x> &'x C: core::ops::Mul<&'x C, Output = C>,
{
    let mut acc: BTreeMap<GroupElement, C> = BTreeMap::new();
    for (g1, c1) in a {
        for (g2, c2) in b {
            let g = group.multiply(g1, g2)?;
            let p = c1 * c2;
            *acc.entry(g).or_insert_with(C::zero) += &p;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(acc)
}

/// Truncated Neumann-series inverse of a lopsided element.
///
/// The truncation order `K` is the least with
/// `ρ^{K+1} / ((1 - ρ)|c_0|) <= ε`, `ρ = ‖h‖_1`; that quantity becomes the
/// tail bound. Both residuals `‖f r - δ_e‖_1` and `‖r f - δ_e‖_1` are at most
/// `ρ^{K+1} <= ε ‖f‖_1`.
pub fn invert_lopsided(f: &GroupRingElement, epsilon: &BigRational) -> Result<L1Element> {
    if !epsilon.is_positive() {
        return Err(Error::domain("epsilon must be positive"));
    }
    let pivot = is_lopsided(f)?.ok_or_else(|| Error::domain("element is not lopsided"))?;
    let group = f.group().clone();
    let c0 = f.coefficient(&pivot);
    let abs_c0 = c0.abs();
    let rho = BigRational::new(f.l1_norm() - &abs_c0, abs_c0.clone());
    let order = truncation_order(&rho, &abs_c0, epsilon);
    let tail = if rho.is_zero() {
        BigRational::zero()
    } else {
        pow(&rho, order + 1) / ((BigRational::one() - &rho) * BigRational::from_integer(abs_c0.clone()))
    };

    // h = -g / c0 with g = δ_{g0^-1} (f - c0 δ_{g0}); accumulate
    // S = Σ_k c0^{K-k} (-g)^k in integers by Horner's rule, then
    // r = S δ_{g0^-1} / c0^{K+1}.
    let pivot_inv = group.inverse(&pivot)?;
    let shift = GroupRingElement::monomial(&group, pivot_inv.clone(), 1)?;
    let rest = f.sub(&GroupRingElement::monomial(&group, pivot, c0.clone())?)?;
    let minus_g = shift.mul(&rest)?.neg();
    let mut sum = GroupRingElement::one(&group);
    let mut c0_power = BigInt::one();
    for _ in 0..order {
        c0_power *= &c0;
        sum = sum.mul(&minus_g)?;
        *sum.terms.entry(group.identity()).or_insert_with(BigInt::zero) += &c0_power;
        sum.terms.retain(|_, c| !c.is_zero());
    }
    let numer = sum.mul(&shift)?;
    let denom = pow_int(&c0, order + 1);
    let terms = numer
        .terms
        .into_iter()
        .map(|(h, c)| (h, BigRational::new(c, denom.clone())))
        .collect();
    L1Element::new(&group, terms, tail)
}

fn truncation_order(rho: &BigRational, abs_c0: &BigInt, epsilon: &BigRational) -> usize {
    if rho.is_zero() {
        return 0;
    }
    let scale = (BigRational::one() - rho) * BigRational::from_integer(abs_c0.clone()) * epsilon;
    let mut p = rho.clone();
    let mut k = 0;
    while p > scale {
        p *= rho;
        k += 1;
    }
    k
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

fn pow_int(x: &BigInt, e: usize) -> BigInt {
    (0..e).fold(BigInt::one(), |acc, _| acc * x)
}
