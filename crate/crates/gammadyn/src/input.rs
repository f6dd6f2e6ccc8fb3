//! JSON input formats.
//!
//! Integers are accepted as JSON numbers or decimal strings; anything that
//! does not fit in 64 bits must be a string. Rationals are accepted as
//! `"p/q"`, decimal strings such as `"0.001"`, or integers.

use std::fmt;

use gammadyn_core::cohomology::{FiniteModuleAction, GroupPresentation};
use gammadyn_core::group::{Group, GroupSpec};
use gammadyn_core::linalg::{IntMatrix, Lattice};
use gammadyn_core::ring::GroupRingElement;
use gammadyn_core::toral::{StructureHint, ToralActionSpec};
use gammadyn_core::{BigInt, BigRational};
use num_traits::Zero;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::RunError;

/// An arbitrary-precision integer; serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Int, E> {
                Err(E::custom(format!(
                    "{v} is not an exact integer; large integers must be strings"
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.trim()
                    .parse()
                    .map(Int)
                    .map_err(|_| E::custom(format!("invalid integer {v:?}")))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

/// An exact rational; serialized as `"p/q"` or `"p"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{frac}", whole.trim_start_matches(['-', '+']));
        let mut value = BigRational::new(digits.parse().ok()?, BigInt::from(10u32).pow(frac.len() as u32));
        if negative {
            value = -value;
        }
        return Some(value);
    }
    t.parse::<BigInt>().ok().map(BigRational::from_integer)
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl Visitor<'_> for RationalVisitor {
            type Value = Rational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p/q\", a decimal string, or an integer")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
                Ok(Rational(BigRational::from_integer(v.into())))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
                parse_rational(v)
                    .map(Rational)
                    .ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
            }
        }

        d.deserialize_any(RationalVisitor)
    }
}

pub type MatrixJson = Vec<Vec<Int>>;

pub fn to_matrix(rows: &MatrixJson) -> Result<IntMatrix, RunError> {
    let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
    IntMatrix::from_rows(rows).map_err(RunError::from)
}

pub fn from_matrix(m: &IntMatrix) -> MatrixJson {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(Int).collect())
        .collect()
}

pub fn to_vector(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpecJson {
    FreeAbelian {
        rank: usize,
    },
    Heisenberg,
    SemidirectZ {
        matrix: MatrixJson,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rank: Option<usize>,
    },
    FiniteQuotient {
        base: Box<GroupSpecJson>,
        moduli: Vec<Int>,
    },
}

impl GroupSpecJson {
    pub fn to_spec(&self) -> Result<GroupSpec, RunError> {
        Ok(match self {
            GroupSpecJson::FreeAbelian { rank } => GroupSpec::FreeAbelian { rank: *rank },
            GroupSpecJson::Heisenberg => GroupSpec::Heisenberg,
            GroupSpecJson::SemidirectZ { matrix, rank } => {
                let matrix = to_matrix(matrix)?;
                if let Some(k) = rank {
                    if *k != matrix.rows() {
                        return Err(RunError::bad_input(format!(
                            "semidirect_z rank {k} does not match a {}x{} matrix",
                            matrix.rows(),
                            matrix.cols()
                        )));
                    }
                }
                GroupSpec::SemidirectZ { matrix }
            }
            GroupSpecJson::FiniteQuotient { base, moduli } => GroupSpec::FiniteQuotient {
                base: Box::new(base.to_spec()?),
                moduli: to_vector(moduli),
            },
        })
    }

    pub fn to_group(&self) -> Result<Group, RunError> {
        Group::new(self.to_spec()?).map_err(RunError::from)
    }

    pub fn from_spec(spec: &GroupSpec) -> Self {
        match spec {
            GroupSpec::FreeAbelian { rank } => GroupSpecJson::FreeAbelian { rank: *rank },
            GroupSpec::Heisenberg => GroupSpecJson::Heisenberg,
            GroupSpec::SemidirectZ { matrix } => GroupSpecJson::SemidirectZ {
                matrix: from_matrix(matrix),
                rank: Some(matrix.rows()),
            },
            GroupSpec::FiniteQuotient { base, moduli } => GroupSpecJson::FiniteQuotient {
                base: Box::new(Self::from_spec(base)),
                moduli: moduli.iter().cloned().map(Int).collect(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub g: Vec<Int>,
    pub c: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub spec: GroupSpecJson,
    pub terms: Vec<TermJson>,
}

impl ElementJson {
    pub fn to_element(&self) -> Result<GroupRingElement, RunError> {
        let group = self.spec.to_group()?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push((group.element(to_vector(&t.g))?, t.c.0.clone()));
        }
        Ok(GroupRingElement::from_terms(&group, terms)?)
    }

    pub fn from_element(f: &GroupRingElement) -> Self {
        ElementJson {
            spec: GroupSpecJson::from_spec(f.group().spec()),
            terms: f
                .terms()
                .iter()
                .map(|(g, c)| TermJson {
                    g: g.exponents().iter().cloned().map(Int).collect(),
                    c: Int(c.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HintJson {
    Cyclic,
    SemidirectTranslationBlock,
    #[default]
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToralJson {
    pub n: usize,
    pub generators: Vec<MatrixJson>,
    #[serde(default)]
    pub hint: HintJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_split: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_depth: Option<usize>,
}

impl ToralJson {
    pub fn to_spec(&self) -> Result<ToralActionSpec, RunError> {
        let hint = match (self.hint, self.block_split) {
            (HintJson::Cyclic, _) => StructureHint::Cyclic,
            (HintJson::General, _) => StructureHint::General,
            (HintJson::SemidirectTranslationBlock, Some(block_split)) => {
                StructureHint::SemidirectTranslationBlock { block_split }
            }
            (HintJson::SemidirectTranslationBlock, None) => {
                return Err(RunError::bad_input("semidirect_translation_block needs block_split"))
            }
        };
        let gens = self.generators.iter().map(to_matrix).collect::<Result<Vec<_>, _>>()?;
        Ok(ToralActionSpec::new(self.n, gens, hint)?)
    }

    pub fn from_spec(spec: &ToralActionSpec) -> Self {
        let (hint, block_split) = match spec.hint() {
            StructureHint::Cyclic => (HintJson::Cyclic, None),
            StructureHint::General => (HintJson::General, None),
            StructureHint::SemidirectTranslationBlock { block_split } => {
                (HintJson::SemidirectTranslationBlock, Some(block_split))
            }
        };
        ToralJson {
            n: spec.dimension(),
            generators: spec.generators().iter().map(from_matrix).collect(),
            hint,
            block_split,
            norm_bound: None,
            orbit_cap: None,
            search_depth: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub generators: usize,
    pub relators: Vec<Vec<i64>>,
}

impl PresentationJson {
    pub fn to_presentation(&self) -> Result<GroupPresentation, RunError> {
        Ok(GroupPresentation::new(self.generators, self.relators.clone())?)
    }
}

/// `(Z/modulus)^rank`, or `Z^rank / relations` when the relation lattice is
/// given by generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<Int>>>,
    pub rank: usize,
    pub matrices: Vec<MatrixJson>,
}

impl ActionJson {
    pub fn to_action(&self) -> Result<FiniteModuleAction, RunError> {
        let matrices = self.matrices.iter().map(to_matrix).collect::<Result<Vec<_>, _>>()?;
        match (&self.modulus, &self.relations) {
            (Some(n), None) => Ok(FiniteModuleAction::new(&n.0, self.rank, matrices)?),
            (None, Some(rel)) => {
                let lattice = Lattice::from_generators(rel.iter().map(|v| to_vector(v)), self.rank)?;
                Ok(FiniteModuleAction::with_relations(lattice, matrices)?)
            }
            _ => Err(RunError::bad_input("give exactly one of modulus and relations")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H1Json {
    pub presentation: PresentationJson,
    pub action: ActionJson,
    /// Generators of an invariant submodule; when present the two
    /// cardinality inequalities are checked as well.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub submodule: Option<Vec<Vec<Int>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvertJson {
    pub f: ElementJson,
    #[serde(default, skip_serializing)]
    pub epsilon: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftJson {
    pub f: ElementJson,
    pub quotient: GroupSpecJson,
    #[serde(default, skip_serializing)]
    pub epsilon: Option<Rational>,
}
