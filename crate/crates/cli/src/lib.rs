//! Verification runner over the core engine.

pub mod config;
pub mod report;
pub mod suites;

use std::time::Instant;

use rayon::prelude::*;

use config::SuiteConfig;
use report::{Report, Status};

/// Runs every selected suite. Returns the report and the process exit code.
pub fn run(cfg: &SuiteConfig) -> (Report, i32) {
    if let Some(cap) = cfg.degree_cap {
        vbol_core::uea::set_default_degree_cap(cap);
    }
    let jobs = suites::jobs(cfg);
    let work = || {
        jobs.par_iter()
            .flat_map_iter(|job| {
                let t = Instant::now();
                let mut recs = job.run();
                let dt = t.elapsed();
                for r in &mut recs {
                    r.elapsed = dt;
                }
                recs
            })
            .collect::<Vec<_>>()
    };
    let checks = match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map(|pool| pool.install(work))
            .unwrap_or_else(|_| work()),
        None => work(),
    };
    let name = cfg.suites.iter().map(|s| s.name()).collect::<Vec<_>>().join(",");
    let report = Report::new(name, cfg.params(), checks);
    let code = if report.checks.iter().any(|c| c.status == Status::Fail) { 1 } else { 0 };
    (report, code)
}
