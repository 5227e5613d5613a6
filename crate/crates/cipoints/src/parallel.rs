//! Parallel drivers over disjoint index ranges.
//!
//! Work is cut into a fixed number of chunks that does not depend on the
//! worker count, and partial results are merged in chunk order, so every
//! result is identical for any number of workers.

use std::ops::Range;

use rayon::prelude::*;

use cipoints_core::sections::{
    BertiniScan, HooleyCensus, MomentContext, ScanMode, ScanReport, ScanTally, SecondMoment,
};
use cipoints_core::space::split_range;
use cipoints_core::{Error, VarietyDescriptor};

use crate::error::Result;

const CHUNKS: usize = 256;

pub struct Workers {
    pool: rayon::ThreadPool,
}

impl Workers {
    pub fn new(workers: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build()?;
        Ok(Workers { pool })
    }

    fn map_chunks<T: Send>(&self, total: u64, f: impl Fn(Range<u64>) -> T + Sync) -> Vec<T> {
        let chunks = split_range(0..total, CHUNKS);
        self.pool
            .install(|| chunks.into_par_iter().map(&f).collect())
    }

    /// `|V(F_{q^e})|`
    pub fn count_points(&self, v: &VarietyDescriptor, e: u32) -> Result<u64> {
        let space = v.point_space(e)?;
        Ok(self
            .map_chunks(space.len(), |r| v.count_points_in(&space, r))
            .into_iter()
            .sum())
    }

    pub fn bertini_scan(
        &self,
        v: &VarietyDescriptor,
        s: i64,
        max_ext: u32,
        mode: ScanMode,
    ) -> Result<ScanReport> {
        let scan = BertiniScan::new(v, s, max_ext, mode)?;
        let tally = self
            .map_chunks(scan.total(), |r| scan.scan_range(r))
            .into_iter()
            .fold(ScanTally::default(), ScanTally::merge);
        Ok(scan.report(tally)?)
    }

    pub fn second_moment(&self, v: &VarietyDescriptor, s: i64) -> Result<SecondMoment> {
        let ctx = MomentContext::new(v, s)?;
        let mut computed = 0u128;
        for part in self.map_chunks(ctx.total(), |r| ctx.moment_partial(r)) {
            computed = computed
                .checked_add(part?)
                .ok_or(Error::ArithmeticOverflow("second moment"))?;
        }
        Ok(ctx.finish_moment(computed)?)
    }

    pub fn hooley_census(&self, v: &VarietyDescriptor, s: i64) -> Result<HooleyCensus> {
        let ctx = MomentContext::new(v, s)?;
        let mut satisfying = 0u64;
        for part in self.map_chunks(ctx.total(), |r| ctx.census_partial(r)) {
            satisfying += part?;
        }
        Ok(ctx.finish_census(satisfying))
    }
}
