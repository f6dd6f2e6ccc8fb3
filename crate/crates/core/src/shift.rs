//! Principal algebraic actions `X_f`, dual to `Z[Γ] / Z[Γ] f`.
//!
//! On a finite quotient `G` of `Γ` the module `Z[G] / Z[G] f̄` is an integer
//! cokernel, so the points, components and dimension of the quotient model
//! are read off a Smith normal form. Group-ring elements act on `Z[G]` by
//! right multiplication, and elements of `G` are ordered as in
//! [`Group::enumerate`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::group::{Group, GroupElement, GroupSpec};
use crate::linalg::{cokernel_structure, saturate_lattice, AbelianGroupStructure, IntMatrix, Lattice};
use crate::ring::{invert_lopsided, is_lopsided, GroupRingElement, L1Element};
use crate::{Error, Result};

/// `f` pushed to a finite quotient, with the matrix of `v ↦ v f̄` on `Z[G]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuotientApprox {
    pub quotient: Group,
    pub elements: Vec<GroupElement>,
    pub image: GroupRingElement,
    pub rep_matrix: IntMatrix,
}

/// Pushes `f` to the finite quotient `quotient` (or takes it as is when `f`
/// already lives there) and builds the right regular representation.
pub fn regular_rep_matrix(f: &GroupRingElement, quotient: &Group) -> Result<FiniteQuotientApprox> {
    if !matches!(quotient.spec(), GroupSpec::FiniteQuotient { .. }) {
        return Err(Error::domain(format!("{} is not a finite quotient", quotient.spec())));
    }
    let image = if f.group() == quotient {
        f.clone()
    } else {
        let mut terms = Vec::with_capacity(f.support_size());
        for (g, c) in f.terms() {
            terms.push((quotient.project(f.group(), g)?, c.clone()));
        }
        GroupRingElement::from_terms(quotient, terms)?
    };
    let elements = quotient.enumerate()?;
    let index = quotient.index_map()?;
    let m = elements.len();
    let mut rep = IntMatrix::zeros(m, m);
    for (j, g) in elements.iter().enumerate() {
        for (h, c) in image.terms() {
            let i = index[&quotient.multiply(g, h)?];
            rep[(i, j)] += c;
        }
    }
    Ok(FiniteQuotientApprox {
        quotient: quotient.clone(),
        elements,
        image,
        rep_matrix: rep,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxStructure {
    /// Dimension of the solution group `{x ∈ T^G : x f̄ = 0}`.
    pub dimension: usize,
    /// Its number of connected components; the number of points when the
    /// dimension is zero.
    pub components: BigInt,
    /// Structure of the dual module `coker(rep^T)`.
    pub dual_module: AbelianGroupStructure,
}

pub fn approx_structure(approx: &FiniteQuotientApprox) -> ApproxStructure {
    let dual_module = cokernel_structure(&approx.rep_matrix.transpose());
    ApproxStructure {
        dimension: dual_module.free_rank,
        components: dual_module.torsion.iter().product(),
        dual_module,
    }
}

/// `Z[G] / (Z[G] f̄)*`, the quotient by the saturated ideal; torsion free.
pub fn saturation_structure(approx: &FiniteQuotientApprox) -> Result<AbelianGroupStructure> {
    let m = approx.elements.len();
    let columns: Vec<Vec<BigInt>> = (0..m).map(|j| approx.rep_matrix.column(j)).collect();
    let saturated = Lattice::from_generators(saturate_lattice(&columns, m)?, m)?;
    Lattice::full(m).quotient_structure(&saturated)
}

/// The mod-1 reduction of an approximate inverse of a lopsided element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomoclinicCandidate {
    /// Nonzero coordinates, each in `(0, 1)`.
    pub point: BTreeMap<GroupElement, BigRational>,
    /// `ε ‖f‖_1`.
    pub residual_bound: BigRational,
    /// Exact `max_g dist(f ⋆ point (g), Z)` over the support of `f ⋆ point`.
    pub max_defect: BigRational,
    pub inverse_support: usize,
}

fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

fn distance_to_integer(q: &BigRational) -> BigRational {
    let r = frac(q);
    let s = BigRational::one() - &r;
    if r < s {
        r
    } else {
        s
    }
}

pub fn homoclinic_point(f: &GroupRingElement, epsilon: &BigRational) -> Result<HomoclinicCandidate> {
    let inverse = invert_lopsided(f, epsilon)?;
    let point: BTreeMap<GroupElement, BigRational> = inverse
        .terms()
        .iter()
        .map(|(g, c)| (g.clone(), frac(c)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let residual_bound = epsilon * BigRational::from_integer(f.l1_norm());
    let as_l1 = L1Element::new(f.group(), point.clone(), BigRational::zero())?;
    let product = f.to_l1().mul(&as_l1)?;
    let max_defect = product
        .terms()
        .values()
        .map(distance_to_integer)
        .max()
        .unwrap_or_else(BigRational::zero);
    if max_defect > residual_bound {
        return Err(Error::internal("homoclinic defect exceeds the residual bound"));
    }
    Ok(HomoclinicCandidate {
        point,
        residual_bound,
        max_defect,
        inverse_support: inverse.support_size(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrincipalExpansiveness {
    /// `f` is lopsided at `pivot`, hence invertible in `l^1`.
    Expansive { pivot: GroupElement },
    /// Not lopsided; invertibility is not decided.
    Unknown,
}

pub fn expansive_principal(f: &GroupRingElement) -> Result<PrincipalExpansiveness> {
    Ok(match is_lopsided(f)? {
        Some(pivot) => PrincipalExpansiveness::Expansive { pivot },
        None => PrincipalExpansiveness::Unknown,
    })
}

/// `|det rep|` as an independent count for nonsingular representations.
pub fn determinant_count(approx: &FiniteQuotientApprox) -> Result<BigInt> {
    Ok(approx.rep_matrix.determinant()?.abs())
}
