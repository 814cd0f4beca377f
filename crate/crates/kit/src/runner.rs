//! Parallel fan-out of identity checks with wall-clock timing.

use std::time::Instant;

use daehee_core::combinat::StirlingSource;
use daehee_core::verify::{Grid, IdentityId, VerificationReport, Verifier};
use rayon::prelude::*;

use crate::error::Result;

/// Checks `ids` on `grid`, optionally on a pool of `jobs` threads. Reports come
/// back in the order of `ids` regardless of scheduling.
pub fn run_verification<S: StirlingSource + Sync>(
    verifier: &Verifier<S>,
    ids: &[IdentityId],
    grid: &Grid,
    jobs: Option<usize>,
) -> Result<Vec<VerificationReport>> {
    let check = |&id: &IdentityId| {
        let start = Instant::now();
        let mut report = verifier.check_identity(id, grid)?;
        report.elapsed = start.elapsed();
        Ok(report)
    };
    match jobs {
        Some(1) => ids.iter().map(check).collect(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            pool.install(|| ids.par_iter().map(check).collect())
        }
        None => ids.par_iter().map(check).collect(),
    }
}
