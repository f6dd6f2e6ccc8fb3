use gammadyn_core::cohomology::{h1, lemma_inequalities, CohomologyReport};
use gammadyn_core::group::GroupSpec;
use gammadyn_core::ring::{invert_lopsided, GroupRingElement};
use gammadyn_core::shift::{
    approx_structure, determinant_count, expansive_principal, homoclinic_point, regular_rep_matrix,
    saturation_structure, PrincipalExpansiveness,
};
use gammadyn_core::toral::{
    character_orbit, expansiveness, fixed_point_group, fixed_points, paper_example_spec, unit_circle_spectrum,
    verify_ergodicity, verify_expansiveness, ErgodicityVerdict, ExpansivenessVerdict, OrbitOutcome, StructureHint,
    ToralActionSpec,
};
use gammadyn_core::{BigInt, BigRational};
use num_traits::Signed;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::encode;
use crate::input::{ElementJson, GroupSpecJson, H1Json, InvertJson, ShiftJson, ToralJson};
use crate::parallel;
use crate::report::AnalysisReport;
use crate::{AnalysisRequest, Command, OptionOverrides, Options, Rational, RunError};

const FIXED_POINT_LISTING: usize = 64;
const ORBIT_LISTING: usize = 1000;
const REP_MATRIX_LISTING: usize = 32;

type Hasher = fn(Command, &Option<Value>, &Options) -> String;

/// Payload-level bounds, consulted after explicit overrides.
#[derive(Default)]
struct PayloadBounds {
    norm_bound: Option<u64>,
    orbit_cap: Option<usize>,
    search_depth: Option<usize>,
    epsilon: Option<BigRational>,
}

fn resolve(explicit: &OptionOverrides, payload: PayloadBounds) -> Options {
    let d = Options::default();
    Options {
        norm_bound: explicit.norm_bound.or(payload.norm_bound).unwrap_or(d.norm_bound),
        orbit_cap: explicit.orbit_cap.or(payload.orbit_cap).unwrap_or(d.orbit_cap),
        search_depth: explicit.search_depth.or(payload.search_depth).unwrap_or(d.search_depth),
        epsilon: explicit
            .epsilon
            .clone()
            .or(payload.epsilon)
            .map(Rational)
            .unwrap_or(d.epsilon),
    }
}

fn parse<T: DeserializeOwned>(request: &AnalysisRequest) -> Result<T, RunError> {
    let payload = request
        .payload
        .clone()
        .ok_or_else(|| RunError::bad_input(format!("{} needs a JSON payload", request.command.name())))?;
    Ok(serde_json::from_value(payload)?)
}

pub(crate) fn dispatch(request: &AnalysisRequest, hash: Hasher) -> Result<AnalysisReport, RunError> {
    let start = |options: Options| {
        let digest = hash(request.command, &request.payload, &options);
        AnalysisReport::new(request.command.name(), digest, options)
    };
    match request.command {
        Command::Toral => {
            let p: ToralJson = parse(request)?;
            let options = resolve(
                &request.options,
                PayloadBounds {
                    norm_bound: p.norm_bound,
                    orbit_cap: p.orbit_cap,
                    search_depth: p.search_depth,
                    epsilon: None,
                },
            );
            let spec = p.to_spec()?;
            let mut report = start(options);
            toral(&spec, &mut report)?;
            Ok(report)
        }
        Command::PaperExample => {
            let options = resolve(&request.options, PayloadBounds::default());
            let mut report = start(options);
            paper_example(&mut report)?;
            Ok(report)
        }
        Command::H1 => {
            let p: H1Json = parse(request)?;
            let mut report = start(resolve(&request.options, PayloadBounds::default()));
            cohomology(&p, &mut report)?;
            Ok(report)
        }
        Command::Invert => {
            let p: InvertJson = parse(request)?;
            let bounds = PayloadBounds {
                epsilon: p.epsilon.clone().map(|e| e.0),
                ..PayloadBounds::default()
            };
            let mut report = start(resolve(&request.options, bounds));
            invert(&p.f.to_element()?, &mut report)?;
            Ok(report)
        }
        Command::Shift => {
            let p: ShiftJson = parse(request)?;
            let bounds = PayloadBounds {
                epsilon: p.epsilon.clone().map(|e| e.0),
                ..PayloadBounds::default()
            };
            let mut report = start(resolve(&request.options, bounds));
            shift(&p, &mut report)?;
            Ok(report)
        }
    }
}

fn expansiveness_verdict(report: &mut AnalysisReport, key: &str, verdict: &ExpansivenessVerdict) {
    match verdict {
        ExpansivenessVerdict::Expansive(c) => {
            let (kind, data) = encode::expansive_certificate(c);
            report.certified(key, "expansive", kind, data);
        }
        ExpansivenessVerdict::NonExpansive(w) => {
            let (kind, data) = encode::bounded_witness(w);
            report.certified(key, "non_expansive", kind, data);
        }
        ExpansivenessVerdict::Unknown { search_depth } => {
            report.bounded(key, "unknown", json!({"search_depth": search_depth}));
        }
    }
}

fn toral(spec: &ToralActionSpec, report: &mut AnalysisReport) -> Result<(), RunError> {
    let opts = report.options.clone();
    report.result("action", serde_json::to_value(ToralJson::from_spec(spec))?);

    let fixed = fixed_point_group(spec);
    report.result("fixed_point_group", encode::structure(&fixed));
    if let Ok(points) = fixed_points(spec, FIXED_POINT_LISTING) {
        let points: Vec<Value> = points.iter().map(|p| encode::rational_vector(p)).collect();
        report.result("fixed_points", Value::Array(points));
    }
    let spectra = spec
        .generators()
        .iter()
        .map(|g| unit_circle_spectrum(g).map(|s| encode::spectrum(&s)))
        .collect::<Result<Vec<_>, _>>()?;
    report.result("spectra", Value::Array(spectra));

    let e = expansiveness(spec, opts.search_depth)?;
    if !verify_expansiveness(spec, &e) {
        return Err(RunError::internal("expansiveness certificate failed re-verification"));
    }
    expansiveness_verdict(report, "expansiveness", &e);

    let erg = parallel::with_threads(parallel::thread_cap(), || {
        parallel::ergodicity(spec, opts.norm_bound, opts.orbit_cap)
    })?;
    if !verify_ergodicity(spec, &erg) {
        return Err(RunError::internal("ergodicity certificate failed re-verification"));
    }
    match &erg.verdict {
        ErgodicityVerdict::Ergodic(reason) => {
            let (kind, data) = encode::ergodic_reason(reason);
            report.certified("ergodicity", "ergodic", kind, data);
        }
        ErgodicityVerdict::NonErgodic { character, orbit_size } => {
            let mut data = json!({
                "character": encode::vector(character),
                "orbit_size": orbit_size,
            });
            if *orbit_size <= ORBIT_LISTING {
                if let OrbitOutcome::Closed(orbit) =
                    character_orbit(&spec.dual_generators(), character, *orbit_size, None)
                {
                    data["orbit"] = encode::vectors(&orbit.into_iter().collect::<Vec<_>>());
                }
            }
            report.certified("ergodicity", "non_ergodic", "finite_orbit_character", data);
        }
        ErgodicityVerdict::Unknown { .. } => {}
    }
    let bounds = json!({"norm_bound": erg.norm_bound, "orbit_cap": erg.orbit_cap});
    if let ErgodicityVerdict::Unknown { .. } = erg.verdict {
        report.bounded("ergodicity", "unknown", bounds);
    } else if !erg.lattice_exact {
        // the verdict is certified, the lattice only covers the search box
        report.attach_bounds("ergodicity", bounds);
    }
    report.result("finite_orbit_lattice", encode::vectors(&erg.finite_orbit_lattice));
    report.result("lattice_exact", json!(erg.lattice_exact));
    report.result("sigma_algebra", encode::structure(&erg.sigma_algebra));
    report.result("cyclotomic_kernel", encode::vectors(&erg.cyclotomic_kernel));
    Ok(())
}

fn paper_example(report: &mut AnalysisReport) -> Result<(), RunError> {
    let spec = paper_example_spec();
    toral(&spec, report)?;
    // the translations alone fix the first two coordinates
    let translations = ToralActionSpec::new(3, spec.generators()[1..].to_vec(), StructureHint::General)?;
    let e = expansiveness(&translations, report.options.search_depth)?;
    if !verify_expansiveness(&translations, &e) {
        return Err(RunError::internal(
            "translation subgroup certificate failed re-verification",
        ));
    }
    expansiveness_verdict(report, "translation_subgroup_expansiveness", &e);
    report.result(
        "translation_subgroup",
        serde_json::to_value(ToralJson::from_spec(&translations))?,
    );
    Ok(())
}

fn cohomology_json(r: &CohomologyReport) -> Value {
    json!({
        "module_order": encode::int(&r.module_size),
        "cocycles_order": encode::int(&r.c_size),
        "coboundaries_order": encode::int(&r.b_size),
        "h1": encode::structure(&r.h1),
        "fixed_points": encode::structure(&r.f_alpha),
    })
}

fn cohomology(p: &H1Json, report: &mut AnalysisReport) -> Result<(), RunError> {
    let pres = p.presentation.to_presentation()?;
    let act = p.action.to_action()?;
    let r = h1(&pres, &act)?;
    report.result("module_order", encode::int(&r.module_size));
    report.result("cocycles_order", encode::int(&r.c_size));
    report.result("coboundaries_order", encode::int(&r.b_size));
    report.result("h1", encode::structure(&r.h1));
    report.result("fixed_points", encode::structure(&r.f_alpha));
    if let Some(sub) = &p.submodule {
        let gens: Vec<Vec<BigInt>> = sub.iter().map(|v| crate::input::to_vector(v)).collect();
        let check = lemma_inequalities(&pres, &act, &gens)?;
        if !check.extension_ok || !check.dichotomy_ok {
            return Err(RunError::internal(format!(
                "cardinality inequality violated: {check:?}"
            )));
        }
        let sizes = json!({
            "h1_alpha": encode::int(&check.h1_alpha),
            "h1_quotient": encode::int(&check.h1_beta),
            "h1_submodule": encode::int(&check.h1_restricted),
            "f_alpha": encode::int(&check.f_alpha),
            "f_quotient": encode::int(&check.f_beta),
            "f_submodule": encode::int(&check.f_restricted),
        });
        report.certified("extension_inequality", "holds", "cardinalities", sizes.clone());
        report.certified("dichotomy_inequality", "holds", "cardinalities", sizes);
        let split = gammadyn_core::cohomology::split_by_submodule(&act, &gens)?;
        report.result("submodule", cohomology_json(&h1(&pres, &split.restricted)?));
        report.result("quotient", cohomology_json(&h1(&pres, &split.quotient)?));
    }
    Ok(())
}

fn terms_json(terms: impl Iterator<Item = (Value, Value)>) -> Value {
    Value::Array(terms.map(|(g, c)| json!({"g": g, "c": c})).collect())
}

fn invert(f: &GroupRingElement, report: &mut AnalysisReport) -> Result<(), RunError> {
    let eps = report.options.epsilon.0.clone();
    let inverse = invert_lopsided(f, &eps)?;
    let right = inverse.right_residual(f)?;
    let left = inverse.left_residual(f)?;
    let bound = &eps * BigRational::from_integer(f.l1_norm());
    if right > bound || left > bound {
        return Err(RunError::internal("residual of the inverse exceeds its bound"));
    }
    let pivot = gammadyn_core::ring::is_lopsided(f)?.ok_or_else(|| RunError::internal("pivot vanished"))?;
    report.result("f", serde_json::to_value(ElementJson::from_element(f))?);
    report.result("support_size", json!(inverse.support_size()));
    report.result("l1_norm", encode::int(&f.l1_norm()));
    report.result("residual_bound", encode::rational(&bound));
    report.certified(
        "invertibility",
        "invertible",
        "neumann_series",
        json!({
            "pivot": encode::element(&pivot),
            "pivot_coefficient": encode::int(&f.coefficient(&pivot)),
            "inverse": terms_json(inverse.terms().iter().map(|(g, c)| (encode::element(g), encode::rational(c)))),
            "tail_bound": encode::rational(inverse.tail_bound()),
            "right_residual": encode::rational(&right),
            "left_residual": encode::rational(&left),
            "residual_bound": encode::rational(&bound),
        }),
    );
    Ok(())
}

fn shift(p: &ShiftJson, report: &mut AnalysisReport) -> Result<(), RunError> {
    let f = p.f.to_element()?;
    let quotient = p.quotient.to_group()?;
    if !matches!(quotient.spec(), GroupSpec::FiniteQuotient { .. }) {
        return Err(RunError::bad_input("quotient must be a finite_quotient group"));
    }
    let approx = regular_rep_matrix(&f, &quotient)?;
    let s = approx_structure(&approx);
    let saturation = saturation_structure(&approx)?;
    let m = approx.elements.len();
    report.result(
        "quotient",
        serde_json::to_value(GroupSpecJson::from_spec(quotient.spec()))?,
    );
    report.result("quotient_order", json!(m));
    report.result("dimension", json!(s.dimension));
    report.result("components", encode::int(&s.components));
    report.result("saturation", encode::structure(&saturation));
    report.result("dual_module", encode::structure(&s.dual_module));
    let det = determinant_count(&approx)?;
    report.result("abs_determinant", encode::int(&det));
    if s.dimension == 0 && det != s.components {
        return Err(RunError::internal("point count differs from |det|"));
    }
    if m <= REP_MATRIX_LISTING {
        report.result(
            "elements",
            Value::Array(approx.elements.iter().map(encode::element).collect()),
        );
        report.result("rep_matrix", encode::matrix(&approx.rep_matrix));
    }
    match expansive_principal(&f)? {
        PrincipalExpansiveness::Expansive { pivot } => {
            let c0 = f.coefficient(&pivot);
            let others = f.l1_norm() - c0.abs();
            report.certified(
                "expansiveness",
                "expansive",
                "lopsided",
                json!({
                    "pivot": encode::element(&pivot),
                    "pivot_coefficient": encode::int(&c0),
                    "others_l1": encode::int(&others),
                }),
            );
            let eps = report.options.epsilon.0.clone();
            let h = homoclinic_point(&f, &eps)?;
            report.result(
                "homoclinic",
                json!({
                    "point": terms_json(h.point.iter().map(|(g, c)| (encode::element(g), encode::rational(c)))),
                    "residual_bound": encode::rational(&h.residual_bound),
                    "max_defect": encode::rational(&h.max_defect),
                    "inverse_support": h.inverse_support,
                }),
            );
        }
        PrincipalExpansiveness::Unknown => {
            report.bounded("expansiveness", "unknown", json!({"criterion": "lopsided"}));
        }
    }
    Ok(())
}
