use std::path::PathBuf;

use crate::network::DEFAULT_MIN_CITY_PAPERS;
use crate::null_model::DEFAULT_RUNS;
use crate::overlay::GeoFormat;
use crate::power_law::DEFAULT_K_MIN;

use super::PipelineError;

/// Inclusive range of publication years.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YearRange {
    pub first: i32,
    pub last: i32,
}

impl YearRange {
    pub fn new(first: i32, last: i32) -> Result<Self, PipelineError> {
        if first > last {
            return Err(PipelineError::Usage(format!(
                "empty year range {first}:{last}"
            )));
        }
        Ok(Self { first, last })
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.first..=self.last).contains(&year)
    }

    pub fn years(&self) -> impl Iterator<Item = i32> {
        self.first..=self.last
    }
}

impl std::str::FromStr for YearRange {
    type Err = PipelineError;

    /// `1998:2009`, or a single year.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PipelineError::Usage(format!("invalid year range `{s}` (expected FIRST:LAST)"));
        let (a, b) = s.split_once(':').unwrap_or((s, s));
        let first = a.trim().parse().map_err(|_| bad())?;
        let last = b.trim().parse().map_err(|_| bad())?;
        YearRange::new(first, last)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub gazetteer: PathBuf,
    pub basemap: PathBuf,
    /// Years to report; defaults to the span of years in the corpus.
    pub years: Option<YearRange>,
    pub min_city_papers: u32,
    pub k_min: usize,
    pub er_runs: usize,
    pub seed: Option<u64>,
    pub out_dir: PathBuf,
    pub geo_formats: Vec<GeoFormat>,
    /// Also write Pajek files for networks and science overlays.
    pub pajek: bool,
    /// Worker thread cap; `None` lets the pool size itself.
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(
        inputs: Vec<PathBuf>,
        gazetteer: impl Into<PathBuf>,
        basemap: impl Into<PathBuf>,
        out_dir: impl Into<PathBuf>,
    ) -> Self {
        Self {
            inputs,
            gazetteer: gazetteer.into(),
            basemap: basemap.into(),
            years: None,
            min_city_papers: DEFAULT_MIN_CITY_PAPERS,
            k_min: DEFAULT_K_MIN,
            er_runs: DEFAULT_RUNS,
            seed: None,
            out_dir: out_dir.into(),
            geo_formats: vec![GeoFormat::GeoJson],
            pajek: false,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.inputs.is_empty() {
            return Err(PipelineError::Usage("no input files given".into()));
        }
        if self.er_runs > 0 && self.seed.is_none() {
            return Err(PipelineError::Usage(
                "a seed is required when simulation runs are requested".into(),
            ));
        }
        if self.min_city_papers == 0 {
            return Err(PipelineError::Usage("min-city-papers must be at least 1".into()));
        }
        if self.threads == Some(0) {
            return Err(PipelineError::Usage("thread cap must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        assert_eq!("1998:2009".parse::<YearRange>().unwrap(), YearRange { first: 1998, last: 2009 });
        assert_eq!("2001".parse::<YearRange>().unwrap(), YearRange { first: 2001, last: 2001 });
        assert!("2009:1998".parse::<YearRange>().is_err());
        assert!("abc".parse::<YearRange>().is_err());
    }

    #[test]
    fn seed_required_for_simulation() {
        let mut cfg = RunConfig::new(vec!["a.txt".into()], "g.csv", "map", "out");
        assert!(matches!(cfg.validate(), Err(PipelineError::Usage(_))));
        cfg.er_runs = 0;
        assert!(cfg.validate().is_ok());
        cfg.er_runs = 10;
        cfg.seed = Some(1);
        assert!(cfg.validate().is_ok());
    }
}
