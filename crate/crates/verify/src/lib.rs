//! Runs the full verification chain on a worker pool and assembles the JSON
//! certificate.

pub mod json;
pub mod show;

use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use cuboid_core::cuboid::{lemma_noadmissible_report, verify_identity};
use cuboid_core::curve::{certify_points, completeness_record, finish_point_set, search_denominators};
use cuboid_core::sweep::{check_pair, coprime_pairs, validate_bound, ControlCase, PairOutcome};
use cuboid_core::{CheckId, CheckResult, CheckStatus, CurvePoint, ExternalCertificate, IdentityName, SweepReport};
use rayon::prelude::*;

pub use json::{Certificate, PointJson, SweepJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub height: u64,
    pub sweep_bound: u64,
    pub threads: usize,
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.height == 0 {
            bail!("--height must be at least 1");
        }
        validate_bound(self.sweep_bound)?;
        if self.threads == 0 {
            bail!("--threads must be at least 1");
        }
        Ok(())
    }
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().context("building worker pool")
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Curve points of height at most `height`, one task per denominator.
/// The result is sorted, so it does not depend on scheduling.
pub fn search(height: u64, threads: usize) -> Result<Vec<CurvePoint>> {
    if height == 0 {
        bail!("--height must be at least 1");
    }
    let found = pool(threads)?.install(|| {
        (1..=height).into_par_iter().flat_map_iter(|b| search_denominators(b..=b, height, true)).collect()
    });
    Ok(finish_point_set(found))
}

/// The root sweep over coprime pairs up to `bound`, one task per pair.
pub fn sweep(bound: u64, threads: usize) -> Result<SweepReport> {
    validate_bound(bound)?;
    let outcomes: Vec<PairOutcome> =
        pool(threads)?.install(|| coprime_pairs(bound).par_iter().map(check_pair).collect());
    Ok(SweepReport::assemble(bound, &outcomes, ControlCase::compute()))
}

fn sweep_check(report: &SweepReport) -> CheckResult {
    let status = if report.confirmed() { CheckStatus::Pass } else { CheckStatus::Fail };
    let control = &report.control_case;
    let roots: Vec<String> = control.ps_roots.iter().map(|x| x.to_string()).collect();
    let mut witness = format!(
        "{} coprime pairs p != q <= {}: {} violations; control p = q = 1: P_1 roots {{{}}}, t^2 + 1 divides Q_{{1,1}}: {}",
        report.pairs_checked,
        report.bound,
        report.violations.len(),
        roots.join(", "),
        control.quotient.is_some(),
    );
    for v in &report.violations {
        witness.push_str(&format!("; ({}, {}) {}: {}", v.p, v.q, v.kind.as_str(), v.detail));
    }
    CheckResult::new(
        CheckId::RootSweep,
        status,
        "root sweep: for coprime p != q neither P_s nor Q_{p,q} has a rational root",
        witness,
    )
}

/// Runs every check in proof order: identities, the curve, parameter
/// admissibility, then the sweep.
pub fn run_all(config: &Config) -> Result<Certificate> {
    config.validate()?;
    let workers = pool(config.threads)?;
    let mut timing = BTreeMap::new();

    let identities: Vec<(CheckResult, f64)> = workers.install(|| {
        IdentityName::ALL
            .par_iter()
            .map(|&name| {
                let start = Instant::now();
                let result = verify_identity(name);
                (result, millis(start))
            })
            .collect()
    });
    let mut checks = Vec::new();
    for (result, ms) in identities {
        timing.insert(result.check.as_str().to_string(), ms);
        checks.push(result);
    }

    let start = Instant::now();
    let points = search(config.height, config.threads)?;
    let ext = ExternalCertificate::from_transcript();
    checks.push(certify_points(&points, &ext, config.height));
    timing.insert(CheckId::CurvePoints.as_str().to_string(), millis(start));
    checks.push(completeness_record(&ext));

    let start = Instant::now();
    checks.push(lemma_noadmissible_report());
    timing.insert(CheckId::NoAdmissibleParameter.as_str().to_string(), millis(start));

    let start = Instant::now();
    let report = sweep(config.sweep_bound, config.threads)?;
    checks.push(sweep_check(&report));
    timing.insert(CheckId::RootSweep.as_str().to_string(), millis(start));

    checks.sort_by_key(|c| c.check);

    let external: Vec<json::ExternalJson> = checks
        .iter()
        .filter(|c| c.status == CheckStatus::ExternalAssumption)
        .map(|c| json::ExternalJson::new(c.check.as_str(), &ext))
        .collect();
    let summary = json::Summary {
        checks: checks.len(),
        passes: checks.iter().filter(|c| c.status == CheckStatus::Pass).count(),
        failures: checks.iter().filter(|c| c.status == CheckStatus::Fail).count(),
        external_assumptions: external.len(),
    };
    let externals_listed =
        external.len() == checks.iter().filter(|c| c.status == CheckStatus::ExternalAssumption).count();
    let status = if summary.failures == 0 && externals_listed { "pass" } else { "fail" };

    Ok(Certificate {
        schema: json::SCHEMA_ID.to_string(),
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        status: status.to_string(),
        config: json::ConfigJson { height: config.height, sweep_bound: config.sweep_bound },
        summary,
        checks: checks.iter().map(json::CheckJson::from).collect(),
        external_assumptions: external,
        curve_points: json::points_json(&points),
        sweep: SweepJson::from(&report),
        timing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cuboid_core::curve::search_points;

    #[test]
    fn parallel_search_matches_sequential() {
        assert_eq!(search(300, 3).unwrap(), search_points(300).unwrap());
    }

    #[test]
    fn parallel_sweep_matches_sequential() {
        assert_eq!(sweep(9, 3).unwrap(), cuboid_core::sweep::sweep(9).unwrap());
    }

    #[test]
    fn config_rejects_degenerate_values() {
        assert!(Config { height: 0, sweep_bound: 30, threads: 1 }.validate().is_err());
        assert!(Config { height: 1, sweep_bound: 1, threads: 1 }.validate().is_err());
        assert!(Config { height: 1, sweep_bound: 2, threads: 0 }.validate().is_err());
        assert!(run_all(&Config { height: 0, sweep_bound: 2, threads: 1 }).is_err());
    }
}
