//! Rayon versions of the character search.
//!
//! `GAMMADYN_THREADS` caps the number of worker threads; without it rayon's
//! global pool is used.

use gammadyn_core::toral::{
    candidate_characters, character_orbit, ergodicity_with_search, ErgodicityReport, FiniteOrbitCharacter,
    OrbitOutcome, ToralActionSpec,
};
use gammadyn_core::{Error, Result};
use rayon::prelude::*;

pub const THREADS_VAR: &str = "GAMMADYN_THREADS";

/// Thread cap from `GAMMADYN_THREADS`; unset, empty or zero means no cap.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_VAR).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs `f` on a pool of at most `threads` workers.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// Same result as [`gammadyn_core::toral::finite_orbit_characters`], with
/// the orbits explored in parallel.
pub fn finite_orbit_characters(
    spec: &ToralActionSpec,
    norm_bound: u64,
    orbit_cap: usize,
) -> Result<Vec<FiniteOrbitCharacter>> {
    if norm_bound == 0 || orbit_cap == 0 {
        return Err(Error::Domain("norm bound and orbit cap must be at least 1".into()));
    }
    let (w, candidates) = candidate_characters(spec, norm_bound);
    let dual = spec.dual_generators();
    let sizes: Vec<Option<usize>> = candidates
        .par_iter()
        .map(|chi| match character_orbit(&dual, chi, orbit_cap, Some(&w)) {
            OrbitOutcome::Closed(orbit) => Some(orbit.len()),
            _ => None,
        })
        .collect();
    Ok(candidates
        .into_iter()
        .zip(sizes)
        .filter_map(|(character, size)| size.map(|orbit_size| FiniteOrbitCharacter { character, orbit_size }))
        .collect())
}

pub fn ergodicity(spec: &ToralActionSpec, norm_bound: u64, orbit_cap: usize) -> Result<ErgodicityReport> {
    ergodicity_with_search(spec, norm_bound, orbit_cap, finite_orbit_characters)
}
