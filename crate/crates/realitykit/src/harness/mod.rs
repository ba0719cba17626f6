//! Randomized property harness for the channel, divergence, and reality layers.
//!
//! The harness is organized as a flat registry of named checks.  Each check
//! draws its own private PRNG stream from the master seed and the check id,
//! runs a batch of sampled instances, and reports the worst violation it saw
//! together with the per-sample seed that produced it.  Re-running a check
//! with the same `(seed, batch)` pair reproduces the verdict bit for bit.
//!
//! Check ids ending in `.probe` are informational: they record the outcome
//! of a search outside the ranges where a property is claimed, and their
//! `pass` field never feeds into [`suite_passes`].  Ids ending in `.witness`
//! assert that a stored counterexample still exhibits the failure it was
//! recorded for.

mod checks_axioms;
mod checks_channels;
mod checks_divergence;
mod checks_reality;
mod support;

use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::state::seeded_rng;

/// Master configuration for a harness run.
#[derive(Debug, Clone)]
pub struct HarnessConfig {
    /// Master seed from which every per-check stream is derived.
    pub seed: u64,
    /// Overrides the per-check default batch size when set.
    pub batch: Option<usize>,
    /// Substring filter on check ids; `None` runs everything.
    pub filter: Option<String>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self { seed: 7, batch: None, filter: None }
    }
}

/// Outcome of one named check over a batch of sampled instances.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    /// Registry id of the check.
    pub id: String,
    /// Whether the worst violation stayed within the check's tolerance.
    pub pass: bool,
    /// Largest violation observed over the batch.  Equality checks report
    /// absolute deviations; inequality checks report the signed excess, so a
    /// comfortable margin shows up as a negative number.
    pub worst_violation: f64,
    /// Per-sample seed that produced the worst violation.
    pub worst_case_seed: u64,
    /// Number of sampled instances inspected.
    pub samples: usize,
    /// Wall-clock time spent in the check.
    pub elapsed_ms: u64,
}

impl PropertyReport {
    /// Serializes the report as a single JSON line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report fields are plain scalars")
    }

    /// Whether this check is informational rather than asserted.
    pub fn is_probe(&self) -> bool {
        self.id.ends_with(".probe")
    }
}

/// Raw result handed back by a check body.
pub(crate) struct CheckData {
    pub(crate) worst: f64,
    pub(crate) worst_seed: u64,
    pub(crate) samples: usize,
    pub(crate) tolerance: f64,
}

/// Tracks the worst violation across a batch.
pub(crate) struct Tracker {
    worst: f64,
    worst_seed: u64,
    samples: usize,
}

impl Tracker {
    pub(crate) fn new() -> Self {
        Self { worst: f64::NEG_INFINITY, worst_seed: 0, samples: 0 }
    }

    /// Records one sampled instance and the violation it produced.
    pub(crate) fn sample(&mut self, seed: u64, violation: f64) {
        self.samples += 1;
        if violation > self.worst {
            self.worst = violation;
            self.worst_seed = seed;
        }
    }

    pub(crate) fn into_data(self, tolerance: f64) -> CheckData {
        CheckData {
            worst: if self.samples == 0 { 0.0 } else { self.worst },
            worst_seed: self.worst_seed,
            samples: self.samples,
            tolerance,
        }
    }
}

/// A named check together with its default batch size.
pub struct CheckDef {
    /// Registry id, dot-separated from coarse to fine.
    pub id: &'static str,
    /// Batch size used when the config does not override it.
    pub default_batch: usize,
    run: Box<dyn Fn(u64, usize) -> CheckData>,
}

impl CheckDef {
    pub(crate) fn new(
        id: &'static str,
        default_batch: usize,
        run: impl Fn(u64, usize) -> CheckData + 'static,
    ) -> Self {
        Self { id, default_batch, run: Box::new(run) }
    }
}

/// FNV-1a hash of a byte string, used to derive per-check PRNG streams and
/// to fingerprint configurations in file headers.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Derives the private stream seed for a check from the master seed.
fn stream_seed(master: u64, id: &str) -> u64 {
    fnv1a64(id.as_bytes()) ^ master.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Draws the next per-sample seed from a check's stream.
pub(crate) fn next_sample_seed(stream: &mut ChaCha8Rng) -> u64 {
    stream.gen()
}

/// Builds the full check registry.
pub fn registry() -> Vec<CheckDef> {
    let mut defs = Vec::new();
    defs.extend(checks_channels::defs());
    defs.extend(checks_divergence::defs());
    defs.extend(checks_axioms::defs());
    defs.extend(checks_reality::defs());
    defs
}

/// Runs a single check definition under the given configuration.
fn run_def(def: &CheckDef, config: &HarnessConfig) -> PropertyReport {
    let batch = config.batch.unwrap_or(def.default_batch);
    let seed = stream_seed(config.seed, def.id);
    let started = Instant::now();
    let data = (def.run)(seed, batch);
    PropertyReport {
        id: def.id.to_string(),
        pass: data.worst <= data.tolerance,
        worst_violation: data.worst,
        worst_case_seed: data.worst_seed,
        samples: data.samples,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

/// Runs every check whose id contains the configured filter substring.
pub fn run_all(config: &HarnessConfig) -> Vec<PropertyReport> {
    registry()
        .iter()
        .filter(|def| match &config.filter {
            Some(needle) => def.id.contains(needle.as_str()),
            None => true,
        })
        .map(|def| run_def(def, config))
        .collect()
}

/// Runs one check by exact id.
pub fn run_check(id: &str, config: &HarnessConfig) -> Option<PropertyReport> {
    registry().iter().find(|def| def.id == id).map(|def| run_def(def, config))
}

/// Whether a set of reports passes overall.  Probe reports are ignored.
pub fn suite_passes(reports: &[PropertyReport]) -> bool {
    reports.iter().filter(|r| !r.is_probe()).all(|r| r.pass)
}

/// Merges several reports into one, keeping the worst violation.
fn merge_reports(id: &str, reports: Vec<PropertyReport>) -> PropertyReport {
    let mut merged = PropertyReport {
        id: id.to_string(),
        pass: true,
        worst_violation: f64::NEG_INFINITY,
        worst_case_seed: 0,
        samples: 0,
        elapsed_ms: 0,
    };
    for report in reports {
        merged.pass &= report.pass;
        merged.samples += report.samples;
        merged.elapsed_ms += report.elapsed_ms;
        if report.worst_violation > merged.worst_violation {
            merged.worst_violation = report.worst_violation;
            merged.worst_case_seed = report.worst_case_seed;
        }
    }
    merged
}

/// Runs the information-flow checks for the dilation circuit and folds them
/// into a single verdict covering every divergence family on its valid range.
pub fn check_axiom1_flow(batch: usize, seed: u64) -> PropertyReport {
    let config = HarnessConfig { seed, batch: Some(batch), filter: None };
    let reports: Vec<PropertyReport> = registry()
        .iter()
        .filter(|def| def.id.starts_with("axiom1.flow"))
        .map(|def| run_def(def, &config))
        .collect();
    merge_reports("axiom1.flow", reports)
}

/// Registry id fragment associated with each reality quantifier.
fn kind_fragment(kind: crate::reality::RealityKind) -> &'static str {
    use crate::reality::RealityKind as K;
    match kind {
        K::VonNeumann => ".vn",
        K::RenyiDown(_) | K::RenyiUp(_) | K::RenyiBar(_) => ".renyi",
        K::MinRelative => ".min-rel",
        K::MaxRelative => ".max-rel",
        K::Sandwiched(_) => ".sandwiched",
        K::Tsallis(_) => ".tsallis",
    }
}

/// Runs the axiom checks relevant to the requested quantifiers, one report
/// per `(axiom, quantifier)` cell, including the stored witnesses and the
/// out-of-range probes attached to those quantifiers.
pub fn check_axiom_suite(
    kinds: &[crate::reality::RealityKind],
    batch: usize,
    seed: u64,
) -> Vec<PropertyReport> {
    let config = HarnessConfig { seed, batch: Some(batch), filter: None };
    let fragments: Vec<&'static str> = kinds.iter().map(|&k| kind_fragment(k)).collect();
    registry()
        .iter()
        .filter(|def| def.id.starts_with("axiom"))
        .filter(|def| fragments.iter().any(|f| def.id.contains(f)))
        .map(|def| run_def(def, &config))
        .collect()
}

/// Runs the supporting lemma checks and the dilation fixed-point check.
pub fn check_lemmas_and_theorem(batch: usize, seed: u64) -> Vec<PropertyReport> {
    let config = HarnessConfig { seed, batch: Some(batch), filter: None };
    registry()
        .iter()
        .filter(|def| def.id.starts_with("lemma") || def.id.starts_with("stinespring.theorem1"))
        .map(|def| run_def(def, &config))
        .collect()
}

/// Runs the closed-form identity check for the optimized conditional
/// information against the direct numerical optimization.
pub fn check_sibson_identity(batch: usize, seed: u64) -> PropertyReport {
    let config = HarnessConfig { seed, batch: Some(batch), filter: None };
    run_check("sibson.identity", &config).expect("registry always contains sibson.identity")
}

pub(crate) fn stream_for(seed: u64) -> ChaCha8Rng {
    seeded_rng(seed)
}
