//! Exhaustive theorem checking over a registry of small finite rings.
//!
//! Each theorem id maps to one routine that iterates its quantifier
//! domain in deterministic order (or a seeded sample), applies the
//! theorem's preconditions, and checks the conclusion through the brute
//! force oracles in `inverses` / `structure`. Conclusion checks never
//! reuse the formula under test as their own oracle.

mod theorems;

use crate::ring::{FiniteRing, RingError, RingSpec};
use crate::structure::StructureCache;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};
use thiserror::Error;

/// Per-theorem cap for pair-quantified theorems.
pub const DEFAULT_PAIR_CAP: usize = 256;
/// Per-theorem cap for corner theorems, which quantify over
/// idempotents x elements and rebuild a corner ring per idempotent.
pub const DEFAULT_CORNER_CAP: usize = 64;

#[derive(Debug, Error)]
pub enum VerifierError {
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("ring order {order} exceeds the per-theorem cap {cap} (use --force to override)")]
    CapExceeded { order: usize, cap: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TheoremId {
    JacobsonLemma,
    ClineD,
    ClineGd,
    ClinePd,
    StronglyCleanTransfer,
    OneMinusClean,
    PseudoOneMinus,
    CornerClean,
    CornerPiRegular,
    CornerQuasipolar,
    CornerPseudopolar,
    DecompEquiv11,
    DecompEquiv12,
    DecompEquiv13,
    LemmaSSharp,
    Uniqueness,
    RadicalChain,
}

impl TheoremId {
    pub const ALL: [TheoremId; 17] = [
        TheoremId::JacobsonLemma,
        TheoremId::ClineD,
        TheoremId::ClineGd,
        TheoremId::ClinePd,
        TheoremId::StronglyCleanTransfer,
        TheoremId::OneMinusClean,
        TheoremId::PseudoOneMinus,
        TheoremId::CornerClean,
        TheoremId::CornerPiRegular,
        TheoremId::CornerQuasipolar,
        TheoremId::CornerPseudopolar,
        TheoremId::DecompEquiv11,
        TheoremId::DecompEquiv12,
        TheoremId::DecompEquiv13,
        TheoremId::LemmaSSharp,
        TheoremId::Uniqueness,
        TheoremId::RadicalChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::JacobsonLemma => "JACOBSON_LEMMA",
            TheoremId::ClineD => "CLINE_D",
            TheoremId::ClineGd => "CLINE_GD",
            TheoremId::ClinePd => "CLINE_PD",
            TheoremId::StronglyCleanTransfer => "STRONGLY_CLEAN_TRANSFER",
            TheoremId::OneMinusClean => "ONE_MINUS_CLEAN",
            TheoremId::PseudoOneMinus => "PSEUDO_ONE_MINUS",
            TheoremId::CornerClean => "CORNER_CLEAN",
            TheoremId::CornerPiRegular => "CORNER_PI_REGULAR",
            TheoremId::CornerQuasipolar => "CORNER_QUASIPOLAR",
            TheoremId::CornerPseudopolar => "CORNER_PSEUDOPOLAR",
            TheoremId::DecompEquiv11 => "DECOMP_EQUIV_1_1",
            TheoremId::DecompEquiv12 => "DECOMP_EQUIV_1_2",
            TheoremId::DecompEquiv13 => "DECOMP_EQUIV_1_3",
            TheoremId::LemmaSSharp => "LEMMA_S_SHARP",
            TheoremId::Uniqueness => "UNIQUENESS",
            TheoremId::RadicalChain => "RADICAL_CHAIN",
        }
    }

    /// Corner theorems get a tighter cap than pair-quantified ones.
    pub fn is_corner(self) -> bool {
        matches!(
            self,
            TheoremId::CornerClean
                | TheoremId::CornerPiRegular
                | TheoremId::CornerQuasipolar
                | TheoremId::CornerPseudopolar
        )
    }
}

impl FromStr for TheoremId {
    type Err = VerifierError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name() == upper)
            .ok_or_else(|| VerifierError::UnknownTheorem(s.to_string()))
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample { n: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub pair_cap: usize,
    pub corner_cap: usize,
    pub force: bool,
    /// Probe mode: also assert the corner P3 => P1 converse for
    /// non-central idempotents, which the paper does not claim. Failures
    /// under this flag are the interesting output of a counterexample
    /// search, not refutations of the paper.
    pub weaken_corner_converse: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            pair_cap: DEFAULT_PAIR_CAP,
            corner_cap: DEFAULT_CORNER_CAP,
            force: false,
            weaken_corner_converse: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub ring: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub cases_total: usize,
    pub cases_checked: usize,
    pub cases_not_applicable: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    /// Timing is reported in human output only; it is excluded from the
    /// JSON document so that identical inputs produce byte-identical
    /// reports.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Outcome of one quantifier-domain case.
pub(crate) enum CaseResult {
    Pass,
    PassNote(String),
    Fail(String),
    NotApplicable,
}

/// A theorem routine: domain size, a case evaluator, and a case describer.
pub(crate) struct Routine<'a> {
    pub domain: usize,
    pub describe: Box<dyn Fn(usize) -> String + 'a>,
    pub case: Box<dyn Fn(usize) -> CaseResult + 'a>,
}

fn run_routine(
    routine: &Routine<'_>,
    mode: Mode,
    limit: Option<usize>,
) -> (usize, usize, usize, Vec<Failure>, Vec<String>) {
    let indices: Vec<usize> = match mode {
        Mode::Exhaustive => {
            let n = limit.map_or(routine.domain, |l| l.min(routine.domain));
            (0..n).collect()
        }
        Mode::Sample { n, seed } => {
            let n = limit.map_or(n, |l| l.min(n));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| {
                    if routine.domain == 0 {
                        0
                    } else {
                        rng.gen_range(0..routine.domain)
                    }
                })
                .collect()
        }
    };
    let total = match mode {
        Mode::Exhaustive => routine.domain.min(limit.unwrap_or(usize::MAX)),
        Mode::Sample { .. } => indices.len(),
    };
    let mut checked = 0;
    let mut not_applicable = 0;
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for &i in &indices {
        if routine.domain == 0 {
            break;
        }
        match (routine.case)(i) {
            CaseResult::Pass => checked += 1,
            CaseResult::PassNote(n) => {
                checked += 1;
                notes.push(n);
            }
            CaseResult::Fail(detail) => {
                checked += 1;
                failures.push(Failure {
                    case: (routine.describe)(i),
                    detail,
                });
            }
            CaseResult::NotApplicable => not_applicable += 1,
        }
    }
    (total, checked, not_applicable, failures, notes)
}

fn check_cap(id: TheoremId, order: usize, opts: &RunOptions) -> Result<(), VerifierError> {
    let cap = if id.is_corner() {
        opts.corner_cap
    } else {
        opts.pair_cap
    };
    if order > cap && !opts.force {
        return Err(VerifierError::CapExceeded { order, cap });
    }
    Ok(())
}

/// Run one theorem over one ring.
pub fn run_theorem(
    id: TheoremId,
    ring: &Arc<FiniteRing>,
    mode: Mode,
    opts: &RunOptions,
) -> Result<VerificationReport, VerifierError> {
    run_theorem_limited(id, ring, mode, opts, None)
}

pub(crate) fn run_theorem_limited(
    id: TheoremId,
    ring: &Arc<FiniteRing>,
    mode: Mode,
    opts: &RunOptions,
    limit: Option<usize>,
) -> Result<VerificationReport, VerifierError> {
    check_cap(id, ring.order(), opts)?;
    let start = Instant::now();
    let cache = StructureCache::compute(ring);
    let routine = theorems::routine(id, ring, &cache, opts)?;
    let (total, checked, not_applicable, failures, notes) = run_routine(&routine, mode, limit);
    let (mode_name, sample_n, seed) = match mode {
        Mode::Exhaustive => ("exhaustive", None, None),
        Mode::Sample { n, seed } => ("sample", Some(n), Some(seed)),
    };
    Ok(VerificationReport {
        theorem_id: id.name().to_string(),
        ring: ring.spec().to_string(),
        mode: mode_name.to_string(),
        sample_n,
        seed,
        cases_total: total,
        cases_checked: checked,
        cases_not_applicable: not_applicable,
        failures,
        notes,
        wall_time: start.elapsed(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub theorem_id: String,
    pub cases_run: usize,
    pub exhausted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_ring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

/// Run `id` over `rings` in order until the first failure or until
/// `budget` cases have been evaluated.
pub fn search_counterexample(
    id: TheoremId,
    rings: &[Arc<FiniteRing>],
    budget: usize,
    opts: &RunOptions,
) -> Result<SearchOutcome, VerifierError> {
    let mut remaining = budget;
    for ring in rings {
        if remaining == 0 {
            break;
        }
        let report =
            run_theorem_limited(id, ring, Mode::Exhaustive, opts, Some(remaining))?;
        let used = report.cases_checked + report.cases_not_applicable;
        remaining = remaining.saturating_sub(used);
        if let Some(first) = report.failures.into_iter().next() {
            return Ok(SearchOutcome {
                theorem_id: id.name().to_string(),
                cases_run: budget - remaining,
                exhausted: false,
                failure_ring: Some(ring.spec().to_string()),
                failure: Some(first),
            });
        }
    }
    Ok(SearchOutcome {
        theorem_id: id.name().to_string(),
        cases_run: budget - remaining,
        exhausted: true,
        failure_ring: None,
        failure: None,
    })
}

/// The structural self-consistency suite: radical chain, uniqueness,
/// decomposition equivalences, the classify-vs-inverse equivalences and
/// the finite-ring coincidence of the three Drazin variants, merged into
/// one report.
pub fn consistency_suite(
    ring: &Arc<FiniteRing>,
    opts: &RunOptions,
) -> Result<VerificationReport, VerifierError> {
    let start = Instant::now();
    let sub_ids = [
        TheoremId::RadicalChain,
        TheoremId::Uniqueness,
        TheoremId::DecompEquiv11,
        TheoremId::DecompEquiv12,
        TheoremId::DecompEquiv13,
        TheoremId::LemmaSSharp,
    ];
    let mut total = 0;
    let mut checked = 0;
    let mut not_applicable = 0;
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for id in sub_ids {
        let r = run_theorem(id, ring, Mode::Exhaustive, opts)?;
        total += r.cases_total;
        checked += r.cases_checked;
        not_applicable += r.cases_not_applicable;
        failures.extend(r.failures.into_iter().map(|f| Failure {
            case: format!("{}: {}", id.name(), f.case),
            detail: f.detail,
        }));
        notes.extend(r.notes);
    }

    let cache = StructureCache::compute(ring);
    for routine in [
        theorems::classify_equivalence_routine(ring, &cache),
        theorems::finite_coincidence_routine(ring, &cache),
    ] {
        let (t, c, na, fs, ns) = run_routine(&routine, Mode::Exhaustive, None);
        total += t;
        checked += c;
        not_applicable += na;
        failures.extend(fs);
        notes.extend(ns);
    }

    Ok(VerificationReport {
        theorem_id: "CONSISTENCY_SUITE".to_string(),
        ring: ring.spec().to_string(),
        mode: "exhaustive".to_string(),
        sample_n: None,
        seed: None,
        cases_total: total,
        cases_checked: checked,
        cases_not_applicable: not_applicable,
        failures,
        notes,
        wall_time: start.elapsed(),
    })
}

/// The default ring registry: commutative and noncommutative rings with
/// zero and nonzero radical, plus one corner ring, all small enough for
/// seconds-scale exhaustive loops.
pub fn registry_specs() -> Vec<RingSpec> {
    let mut specs: Vec<RingSpec> = (1..=12).map(RingSpec::ZMod).collect();
    for extra in [
        "prod:zmod:2,zmod:4",
        "tri:2:zmod:2",
        "tri:2:zmod:3",
        "mat:2:zmod:2",
        "corner:mat:2:zmod:2:[[1,0],[0,0]]",
    ] {
        specs.push(extra.parse().expect("registry specs parse"));
    }
    specs
}

pub fn build_registry(cap: usize) -> Result<Vec<Arc<FiniteRing>>, RingError> {
    registry_specs().iter().map(|s| s.build(cap)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DEFAULT_ORDER_CAP;

    fn build(spec: &str) -> Arc<FiniteRing> {
        spec.parse::<RingSpec>().unwrap().build(DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn theorem_ids_round_trip_case_insensitively() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
            assert_eq!(id.name().to_lowercase().parse::<TheoremId>().unwrap(), id);
        }
        assert!(matches!(
            "NO_SUCH_THEOREM".parse::<TheoremId>(),
            Err(VerifierError::UnknownTheorem(_))
        ));
    }

    #[test]
    fn cline_over_zmod_eight_is_sixty_four_cases() {
        let r = build("zmod:8");
        let report =
            run_theorem(TheoremId::ClineD, &r, Mode::Exhaustive, &RunOptions::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.cases_total, 64);
        assert_eq!(report.cases_checked, 64);
        assert_eq!(report.cases_not_applicable, 0);
    }

    #[test]
    fn jacobson_over_m2_f2_is_two_hundred_fifty_six_cases() {
        let r = build("mat:2:zmod:2");
        let report = run_theorem(
            TheoremId::JacobsonLemma,
            &r,
            Mode::Exhaustive,
            &RunOptions::default(),
        )
        .unwrap();
        assert!(report.passed());
        assert_eq!(report.cases_total, 256);
        // pairs with 1 + ab not a unit are precondition misses
        assert_eq!(report.cases_checked + report.cases_not_applicable, 256);
    }

    #[test]
    fn uniqueness_over_the_zero_ring_is_one_case() {
        let r = build("zmod:1");
        let report = run_theorem(
            TheoremId::Uniqueness,
            &r,
            Mode::Exhaustive,
            &RunOptions::default(),
        )
        .unwrap();
        assert!(report.passed());
        assert_eq!(report.cases_total, 1);
        assert_eq!(report.cases_checked, 1);
    }

    #[test]
    fn every_theorem_passes_exhaustively_on_the_registry() {
        let opts = RunOptions::default();
        for ring in build_registry(DEFAULT_ORDER_CAP).unwrap() {
            for id in TheoremId::ALL {
                let report = run_theorem(id, &ring, Mode::Exhaustive, &opts).unwrap();
                assert!(
                    report.passed(),
                    "{} on {}: {:?}",
                    id,
                    ring.spec(),
                    report.failures.first()
                );
            }
        }
    }

    #[test]
    fn sampled_runs_are_seed_deterministic() {
        let r = build("tri:2:zmod:3");
        let opts = RunOptions::default();
        let mode = Mode::Sample { n: 100, seed: 42 };
        let a = run_theorem(TheoremId::ClinePd, &r, mode, &opts).unwrap();
        let b = run_theorem(TheoremId::ClinePd, &r, mode, &opts).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(a.passed());
        assert_eq!(a.cases_total, 100);
        assert_eq!(a.sample_n, Some(100));
        assert_eq!(a.seed, Some(42));
        // a different seed picks a different case multiset in general
        let c = run_theorem(
            TheoremId::ClinePd,
            &r,
            Mode::Sample { n: 100, seed: 43 },
            &opts,
        )
        .unwrap();
        assert_eq!(c.cases_total, 100);
    }

    #[test]
    fn caps_are_enforced_and_forceable() {
        let r = build("zmod:12");
        let tight = RunOptions {
            pair_cap: 8,
            ..RunOptions::default()
        };
        assert!(matches!(
            run_theorem(TheoremId::ClineD, &r, Mode::Exhaustive, &tight),
            Err(VerifierError::CapExceeded { order: 12, cap: 8 })
        ));
        let forced = RunOptions {
            pair_cap: 8,
            force: true,
            ..RunOptions::default()
        };
        let report = run_theorem(TheoremId::ClineD, &r, Mode::Exhaustive, &forced).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn counterexample_search_exhausts_the_registry() {
        let rings: Vec<Arc<FiniteRing>> =
            (2..=12).map(|n| build(&format!("zmod:{n}"))).collect();
        let opts = RunOptions::default();
        let out = search_counterexample(TheoremId::JacobsonLemma, &rings, 1_000_000, &opts)
            .unwrap();
        assert!(out.exhausted);
        assert!(out.failure.is_none());
        // sum of n^2 for n = 2..=12
        assert_eq!(out.cases_run, (2..=12usize).map(|n| n * n).sum::<usize>());

        let none = search_counterexample(TheoremId::JacobsonLemma, &rings, 0, &opts).unwrap();
        assert!(none.exhausted);
        assert_eq!(none.cases_run, 0);
    }

    #[test]
    fn weakened_corner_probe_finds_no_counterexample_here() {
        // in these rings every element has the polar properties, so even
        // the unclaimed converse holds vacuously
        let r = build("mat:2:zmod:2");
        let opts = RunOptions {
            weaken_corner_converse: true,
            ..RunOptions::default()
        };
        let weakened =
            run_theorem(TheoremId::CornerQuasipolar, &r, Mode::Exhaustive, &opts).unwrap();
        let claimed_only = run_theorem(
            TheoremId::CornerQuasipolar,
            &r,
            Mode::Exhaustive,
            &RunOptions::default(),
        )
        .unwrap();
        assert!(weakened.passed());
        assert!(claimed_only.passed());
        assert_eq!(weakened.cases_total, claimed_only.cases_total);
    }

    #[test]
    fn consistency_suite_passes_on_representative_rings() {
        let opts = RunOptions::default();
        for spec in ["zmod:1", "zmod:12", "tri:2:zmod:2"] {
            let report = consistency_suite(&build(spec), &opts).unwrap();
            assert!(report.passed(), "{spec}: {:?}", report.failures.first());
            assert_eq!(report.theorem_id, "CONSISTENCY_SUITE");
            assert!(report.cases_checked > 0);
        }
    }

    #[test]
    fn registry_has_the_expected_shape() {
        let rings = build_registry(DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(rings.len(), 17);
        assert_eq!(rings.iter().map(|r| r.order()).max(), Some(27));
        // mixes commutative and noncommutative, zero and nonzero radical
        let caches: Vec<StructureCache> =
            rings.iter().map(|r| StructureCache::compute(r)).collect();
        assert!(caches.iter().any(|c| c.jacobson().len() > 1));
        assert!(caches.iter().any(|c| c.jacobson().len() == 1));
    }
}
