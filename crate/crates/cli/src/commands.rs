use std::ops::RangeInclusive;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;

use higgs_betti_core::mellit::{self, APoly};
use higgs_betti_core::specialization::{
    self, check_coprime, complex_betti_from, real_betti_from, BettiResult, CurveTopology, Pipeline,
};
use higgs_betti_core::verify;

use crate::cache::Cache;
use crate::format::{ReportParams, ReportRecord, ReportWitness};
use crate::record::OutputRecord;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PipelineArg {
    /// Specialize the (cached) generic `A_{g,r}`.
    Generic,
    /// Specialize before the logarithm; bypasses the cache.
    Fast,
    /// The explicit rank-two formula.
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputeRequest {
    pub g: usize,
    pub b: Option<usize>,
    pub r: usize,
    pub d: Option<i64>,
    pub field: Field,
    pub pipeline: PipelineArg,
}

/// Failed table cells, labelled by their parameters.
pub type CellErrors = Vec<(String, CliError)>;

/// Settings shared by all subcommands.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub cache: Option<Cache>,
    /// Worker threads; `None` lets rayon decide.
    pub jobs: Option<usize>,
    /// Record `wall_ms = 0` so output is byte-stable.
    pub no_timing: bool,
}

/// Parses `a`, `a..b` or `a..=b` (both inclusive); `a > b` is empty.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a non-negative integer"))
    };
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        Ok(num(a)?..=num(b)?)
    } else {
        let a = num(s)?;
        Ok(a..=a)
    }
}

impl Context {
    fn millis(&self, start: Instant) -> u64 {
        if self.no_timing {
            0
        } else {
            start.elapsed().as_millis() as u64
        }
    }

    fn in_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = self.jobs {
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(|e| CliError::Internal(e.to_string()))?;
        Ok(pool.install(f))
    }

    /// `A_{g,r}` for `r = 1..=max_r`, from the cache where possible.
    ///
    /// All ranks come out of one logarithm, so a single miss recomputes
    /// (and stores) the whole list.
    pub fn a_polys(&self, g: usize, max_r: usize) -> Result<Vec<APoly>, CliError> {
        if let Some(cache) = &self.cache {
            let mut hits = Vec::with_capacity(max_r);
            for r in 1..=max_r {
                match cache.load(g, r) {
                    Ok(Some(a)) => hits.push(a),
                    Ok(None) => break,
                    Err(e) => {
                        eprintln!("warning: {e}; recomputing");
                        break;
                    }
                }
            }
            if hits.len() == max_r {
                return Ok(hits);
            }
        }
        let all = mellit::a_polys(g, max_r)?;
        if let Some(cache) = &self.cache {
            for a in &all {
                if let Err(e) = cache.store(a) {
                    eprintln!("warning: could not write cache entry: {e}");
                }
            }
        }
        Ok(all)
    }

    pub fn compute(&self, req: &ComputeRequest) -> Result<OutputRecord, CliError> {
        let start = Instant::now();
        if let Some(d) = req.d {
            check_coprime(req.r, d)?;
        }
        let res = match req.field {
            Field::Real => {
                let b = req
                    .b
                    .ok_or_else(|| CliError::Invalid("--b is required for the real field".into()))?;
                CurveTopology::circles(req.g, b).validated_b()?;
                match req.pipeline {
                    PipelineArg::Generic => self.real_cell(req.g, b, req.r)?,
                    PipelineArg::Fast => specialization::real_betti_with(req.g, b, req.r, Pipeline::FastSpecialized)?,
                    PipelineArg::ClosedForm => {
                        specialization::real_betti_with(req.g, b, req.r, Pipeline::ClosedFormR2)?
                    }
                }
            }
            Field::Complex => {
                if req.pipeline != PipelineArg::Generic {
                    return Err(CliError::Invalid(
                        "the complex field only supports the generic pipeline".into(),
                    ));
                }
                self.complex_cell(req.g, req.r)?
            }
        };
        let res = match req.d {
            Some(d) => res.with_degree(d)?,
            None => res,
        };
        Ok(OutputRecord::new(&res, self.millis(start)))
    }

    fn a_poly(&self, g: usize, r: usize) -> Result<APoly, CliError> {
        if r == 0 {
            return Err(mellit::MellitError::InvalidRank.into());
        }
        Ok(self.a_polys(g, r)?.pop().expect("one entry per rank"))
    }

    fn real_cell(&self, g: usize, b: usize, r: usize) -> Result<BettiResult, CliError> {
        CurveTopology::circles(g, b).validated_b()?;
        Ok(real_betti_from(&self.a_poly(g, r)?, b)?)
    }

    fn complex_cell(&self, g: usize, r: usize) -> Result<BettiResult, CliError> {
        Ok(complex_betti_from(&self.a_poly(g, r)?))
    }

    /// Every cell of the grid, in `(g, b, r)` order. A failing cell does not
    /// stop the others; its error is returned alongside the records.
    pub fn table(
        &self,
        gs: RangeInclusive<usize>,
        b: Option<usize>,
        rs: RangeInclusive<usize>,
        d: Option<i64>,
        field: Field,
    ) -> Result<(Vec<OutputRecord>, CellErrors), CliError> {
        let gs: Vec<usize> = gs.collect();
        let rs: Vec<usize> = rs.collect();
        let per_genus = self.in_pool(|| {
            gs.par_iter()
                .map(|&g| self.table_genus(g, b, &rs, d, field))
                .collect::<Vec<_>>()
        })?;
        let mut records = Vec::new();
        let mut errors = Vec::new();
        for cells in per_genus {
            for (label, cell) in cells {
                match cell {
                    Ok(rec) => records.push(rec),
                    Err(e) => errors.push((label, e)),
                }
            }
        }
        Ok((records, errors))
    }

    fn table_genus(
        &self,
        g: usize,
        b: Option<usize>,
        rs: &[usize],
        d: Option<i64>,
        field: Field,
    ) -> Vec<(String, Result<OutputRecord, CliError>)> {
        let bs: Vec<Option<usize>> = match (field, b) {
            (Field::Complex, _) => vec![None],
            (Field::Real, Some(b)) => vec![Some(b)],
            (Field::Real, None) => (0..=g).map(Some).collect(),
        };
        let start = Instant::now();
        let max_r = rs.iter().copied().max().unwrap_or(0);
        let a_polys = if max_r == 0 {
            Ok(Vec::new())
        } else {
            self.a_polys(g, max_r)
        };
        let fetch_ms = self.millis(start);
        let mut out = Vec::new();
        for b in bs {
            for &r in rs {
                let label = format!("g={g} b={} r={r}", b.map_or("-".to_string(), |b| b.to_string()));
                let cell = (|| {
                    let start = Instant::now();
                    if let Some(d) = d {
                        check_coprime(r, d)?;
                    }
                    let a = match &a_polys {
                        Ok(v) => v
                            .get(r.wrapping_sub(1))
                            .ok_or(CliError::Invalid("rank must be at least 1".into()))?,
                        Err(e) => return Err(CliError::Invalid(e.to_string())),
                    };
                    let res = match b {
                        Some(b) => real_betti_from(a, b)?,
                        None => complex_betti_from(a),
                    };
                    let res = match d {
                        Some(d) => res.with_degree(d)?,
                        None => res,
                    };
                    Ok(OutputRecord::new(&res, fetch_ms + self.millis(start)))
                })();
                out.push((label, cell));
            }
        }
        out
    }

    /// The verification suite over `g ≤ max_g`, `r ≤ max_r`; with
    /// `recompute_cache`, every cache entry is also recomputed and compared.
    pub fn verify(&self, max_g: usize, max_r: usize, recompute_cache: bool) -> Result<Vec<ReportRecord>, CliError> {
        let mut reports = self.in_pool(|| {
            (1..=max_g)
                .into_par_iter()
                .flat_map_iter(|g| verify::genus_task(g, max_r))
                .collect::<Vec<_>>()
        })?;
        verify::sort_reports(&mut reports);
        let mut out: Vec<ReportRecord> = reports.iter().map(ReportRecord::from_check).collect();
        if recompute_cache {
            if let Some(cache) = &self.cache {
                out.extend(self.in_pool(|| recheck_cache(cache))?);
            }
        }
        Ok(out)
    }
}

fn cache_report(g: usize, r: Option<usize>, witness: Option<ReportWitness>) -> ReportRecord {
    ReportRecord {
        check: "cache-entry".to_string(),
        params: ReportParams { g, b: None, r },
        status: if witness.is_none() { "pass" } else { "fail" }.to_string(),
        witness,
        detail: None,
    }
}

fn recheck_cache(cache: &Cache) -> Vec<ReportRecord> {
    cache
        .list()
        .into_par_iter()
        .map(|entry| {
            let fail = |left: String, right: String, note: &str| {
                Some(ReportWitness {
                    left,
                    right,
                    note: note.to_string(),
                })
            };
            let entry = match entry {
                Ok(e) => e,
                Err(e) => return cache_report(0, None, fail(e.to_string(), String::new(), "unreadable entry")),
            };
            if !entry.is_current() {
                return cache_report(entry.g, Some(entry.r), None);
            }
            let witness = match (entry.a_poly(), mellit::a_poly(entry.g, entry.r)) {
                (Ok(stored), Ok(fresh)) if stored == fresh => None,
                (Ok(stored), Ok(fresh)) => fail(
                    stored.value.to_canonical(),
                    fresh.value.to_canonical(),
                    "stored entry differs from recomputation",
                ),
                (Err(e), _) => fail(e.to_string(), String::new(), "unparsable entry"),
                (_, Err(e)) => fail(String::new(), e.to_string(), "recomputation failed"),
            };
            cache_report(entry.g, Some(entry.r), witness)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..3"), Ok(2..=3));
        assert_eq!(parse_range("2..=3"), Ok(2..=3));
        assert_eq!(parse_range("4"), Ok(4..=4));
        assert!(parse_range("3..2").unwrap().is_empty());
        assert!(parse_range("x").is_err());
    }

    #[test]
    #[allow(clippy::reversed_empty_ranges)]
    fn table_row_count() {
        let ctx = Context::default();
        let (recs, errs) = ctx.table(2..=3, None, 2..=2, Some(1), Field::Real).unwrap();
        assert!(errs.is_empty());
        assert_eq!(recs.len(), 7);
        let (recs, errs) = ctx.table(3..=2, None, 1..=2, None, Field::Real).unwrap();
        assert!(recs.is_empty() && errs.is_empty());
    }

    #[test]
    fn compute_errors() {
        let ctx = Context::default();
        let req = ComputeRequest {
            g: 2,
            b: Some(3),
            r: 2,
            d: Some(1),
            field: Field::Real,
            pipeline: PipelineArg::Generic,
        };
        assert_eq!(ctx.compute(&req).unwrap_err().exit_code(), 2);
        let req = ComputeRequest {
            b: Some(1),
            d: Some(2),
            ..req
        };
        assert_eq!(ctx.compute(&req).unwrap_err().exit_code(), 2);
    }
}
