//! JSON encodings of analysis results. Integers and rationals become
//! strings so that nothing is rounded.

use gammadyn_core::group::GroupElement;
use gammadyn_core::linalg::{AbelianGroupStructure, IntMatrix};
use gammadyn_core::poly::Poly;
use gammadyn_core::toral::{
    BoundedOrbitWitness, EliminationStage, ErgodicReason, ExpansiveCertificate, SpectrumDecision, UnitCircleSpectrum,
};
use gammadyn_core::{BigInt, BigRational};
use serde_json::{json, Value};

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn rational(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn vectors(vs: &[Vec<BigInt>]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v)).collect())
}

pub fn rational_vector(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    vectors(&m.to_rows())
}

pub fn element(g: &GroupElement) -> Value {
    vector(g.exponents())
}

/// Coefficients from the constant term up.
pub fn poly(p: &Poly) -> Value {
    json!({
        "coefficients": Value::Array(p.coeffs().iter().map(rational).collect()),
        "text": p.to_string(),
    })
}

pub fn structure(s: &AbelianGroupStructure) -> Value {
    json!({
        "free_rank": s.free_rank,
        "torsion": Value::Array(s.torsion.iter().map(int).collect()),
        "order": s.cardinality().map_or(Value::Null, |c| int(&c)),
    })
}

pub fn spectrum(s: &UnitCircleSpectrum) -> Value {
    json!({
        "unit_modulus_eigenvalue": s.has_unit_modulus_eigenvalue,
        "characteristic_polynomial": poly(&s.characteristic_polynomial),
        "cyclotomic_factors": s.cyclotomic_factors.iter().map(|f| json!({
            "order": f.order,
            "multiplicity": f.multiplicity,
        })).collect::<Vec<_>>(),
        "reciprocal_part": poly(&s.reciprocal_part),
        "trace_polynomial": s.trace_polynomial.as_ref().map_or(Value::Null, poly),
        "unit_circle_roots": s.unit_circle_roots.iter().map(|(a, b)| json!([rational(a), rational(b)])).collect::<Vec<_>>(),
        "decided_by": match s.decided_by {
            SpectrumDecision::NoReciprocalFactor => "no_reciprocal_factor",
            SpectrumDecision::CyclotomicFactor => "cyclotomic_factor",
            SpectrumDecision::SturmCount => "sturm_count",
        },
    })
}

fn stage(s: &EliminationStage) -> Value {
    json!({
        "block_split": s.block_split,
        "translation_generators": s.translation_generators,
        "translation_rank": s.translation_rank,
        "block_generators": s.block_generators.iter().map(matrix).collect::<Vec<_>>(),
    })
}

/// `(kind, data)` of an expansiveness certificate.
pub fn expansive_certificate(c: &ExpansiveCertificate) -> (&'static str, Value) {
    match c {
        ExpansiveCertificate::Hyperbolic {
            word,
            matrix: m,
            characteristic_polynomial,
        } => (
            "hyperbolic_element",
            json!({
                "word": word,
                "matrix": matrix(m),
                "characteristic_polynomial": poly(characteristic_polynomial),
            }),
        ),
        ExpansiveCertificate::Staged { stage: s, block } => {
            let (kind, data) = expansive_certificate(block);
            (
                "staged_elimination",
                json!({
                    "stage": stage(s),
                    "block": {"kind": kind, "data": data},
                }),
            )
        }
    }
}

pub fn bounded_witness(w: &BoundedOrbitWitness) -> (&'static str, Value) {
    match w {
        BoundedOrbitWitness::FixedVectors { basis } => ("fixed_vectors", json!({"basis": vectors(basis)})),
        BoundedOrbitWitness::PeriodicVectors { word, period, basis } => (
            "periodic_vectors",
            json!({"word": word, "period": period, "basis": vectors(basis)}),
        ),
        BoundedOrbitWitness::UnitCircleEigenvalue {
            word,
            trace_polynomial,
            interval,
        } => (
            "unit_circle_eigenvalue",
            json!({
                "word": word,
                "trace_polynomial": poly(trace_polynomial),
                "interval": [rational(&interval.0), rational(&interval.1)],
            }),
        ),
        BoundedOrbitWitness::FiniteImage { order } => ("finite_image", json!({"order": order})),
        BoundedOrbitWitness::Block { stage: s, inner } => {
            let (kind, data) = bounded_witness(inner);
            (
                "block_witness",
                json!({
                    "stage": stage(s),
                    "inner": {"kind": kind, "data": data},
                }),
            )
        }
    }
}

pub fn ergodic_reason(r: &ErgodicReason) -> (&'static str, Value) {
    match r {
        ErgodicReason::NoCyclotomicFactor { generator } => ("no_cyclotomic_factor", json!({"generator": generator})),
        ErgodicReason::TrivialCyclotomicKernel => ("trivial_cyclotomic_kernel", json!({})),
    }
}
