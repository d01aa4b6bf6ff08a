//! End-to-end yearly indicator run.
//!
//! Parses the export files, builds one city network per year, computes every
//! indicator and writes the artifact tree:
//!
//! ```text
//! <out>/indicators.csv
//! <out>/geo/<year>.geojson   (and .kml, .net on request)
//! <out>/sci/<year>.csv       (and .unmatched.csv, .net/.vec)
//! <out>/manifest.json
//! <out>/report.txt
//! ```
//!
//! Years are independent work units computed on a thread pool; files are
//! written afterwards by a single collector, so identical inputs produce a
//! byte-identical tree.

mod config;
mod indicators;
mod report;

pub use config::{RunConfig, YearRange};
pub use indicators::{indicators_csv, IndicatorRow, COLUMNS};
pub use report::{RunReport, YearReport};

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::basemap::{Basemap, BasemapError};
use crate::diversity::{category_mass, geographic_diversity, rao_stirling};
use crate::gazetteer::{load_gazetteer, Gazetteer, GazetteerError};
use crate::metrics::{degree_histogram, NetworkMetrics};
use crate::network::{build_network_with_threshold, to_pajek, CityYearNetwork};
use crate::null_model::{analytic_baseline, simulate_baseline, walsh_ratio};
use crate::overlay::{emit_geo, SciOverlay};
use crate::power_law::fit_power_law;
use crate::records::{parse_records, ParseError, PublicationRecord};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}")]
    Usage(String),
    #[error("input file {} not found", .0.display())]
    MissingInput(PathBuf),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: {source}", path.display())]
    Gazetteer {
        path: PathBuf,
        source: GazetteerError,
    },
    #[error(transparent)]
    Basemap(BasemapError),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

impl PipelineError {
    /// Process exit status: 2 for usage and input problems, 3 for an
    /// inconsistent basemap, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Usage(_)
            | PipelineError::MissingInput(_)
            | PipelineError::Read { .. }
            | PipelineError::Parse { .. }
            | PipelineError::Gazetteer { .. }
            | PipelineError::Basemap(BasemapError::NotFound(_)) => 2,
            PipelineError::Basemap(BasemapError::Inconsistent(_)) => 3,
            PipelineError::Write { .. } | PipelineError::Pool(_) => 1,
        }
    }
}

/// Everything computed for one year, before anything is written.
#[derive(Debug, Clone)]
pub struct YearOutcome {
    pub row: IndicatorRow,
    pub network: CityYearNetwork,
    pub sci: SciOverlay,
    pub runs_without_distance: usize,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub rows: Vec<IndicatorRow>,
    pub report: RunReport,
    /// Paths written, relative to the output directory, sorted.
    pub files: Vec<String>,
}

/// Settings that shape per-year computation.
#[derive(Debug, Clone, Copy)]
pub struct YearSettings {
    pub min_city_papers: u32,
    pub k_min: usize,
    pub er_runs: usize,
    pub seed: u64,
}

impl From<&RunConfig> for YearSettings {
    fn from(cfg: &RunConfig) -> Self {
        Self {
            min_city_papers: cfg.min_city_papers,
            k_min: cfg.k_min,
            er_runs: cfg.er_runs,
            seed: cfg.seed.unwrap_or(0),
        }
    }
}

/// Computes the indicators of one year from that year's records.
pub fn process_year(
    year: i32,
    records: &[PublicationRecord],
    gazetteer: &Gazetteer,
    basemap: &Basemap,
    settings: YearSettings,
) -> YearOutcome {
    let network = build_network_with_threshold(records, year, gazetteer, settings.min_city_papers);
    let graph = network.graph();
    let metrics = NetworkMetrics::compute(graph);

    let mut row = IndicatorRow {
        year,
        n: metrics.n,
        m: metrics.m,
        density: metrics.density,
        z: metrics.z,
        cc: metrics.cc,
        d_mean: metrics.d_mean,
        largest_component_fraction: metrics.largest_component_fraction,
        ..IndicatorRow::empty(year)
    };

    if let Some(z) = metrics.z {
        let analytic = analytic_baseline(metrics.n, z);
        row.cc_rg_analytic = analytic.cc_rg;
        row.d_rg_analytic = analytic.d_rg;
        row.w_analytic = walsh_ratio(metrics.cc, metrics.d_mean, analytic.cc_rg, analytic.d_rg);
    }

    let mut runs_without_distance = 0;
    if settings.er_runs > 0 && metrics.n >= 2 {
        let sim = simulate_baseline(metrics.n, metrics.m, settings.er_runs, settings.seed);
        row.cc_rg_sim = sim.cc_rg;
        row.d_rg_sim = sim.d_rg;
        row.w_sim = walsh_ratio(metrics.cc, metrics.d_mean, sim.cc_rg, sim.d_rg);
        runs_without_distance = sim.runs_without_distance;
    }

    if let Ok(fit) = fit_power_law(&degree_histogram(graph), settings.k_min) {
        row.gamma = Some(fit.gamma);
        row.r2 = Some(fit.r2);
    }

    if let Some(geo) = geographic_diversity(&network) {
        row.d_geo = Some(geo.diversity);
        row.c_geo = Some(geo.globalization);
        row.coherence_geo = geo.coherence;
    }

    let year_records: Vec<PublicationRecord> =
        records.iter().filter(|r| r.year == year).cloned().collect();
    let mass = category_mass(&year_records, basemap.labels());
    if !mass.is_empty() {
        row.d_cog = rao_stirling(&mass, &basemap.distances()).ok();
    }

    let sci = SciOverlay::from_records(&year_records, basemap, year);
    YearOutcome {
        row,
        network,
        sci,
        runs_without_distance,
    }
}

fn read_inputs(paths: &[PathBuf]) -> Result<Vec<(PathBuf, crate::records::ParseOutcome)>, PipelineError> {
    for path in paths {
        if !path.is_file() {
            return Err(PipelineError::MissingInput(path.clone()));
        }
    }
    paths
        .par_iter()
        .map(|path| {
            let bytes = fs::read(path).map_err(|source| PipelineError::Read {
                path: path.clone(),
                source,
            })?;
            let outcome = parse_records(&bytes).map_err(|source| PipelineError::Parse {
                path: path.clone(),
                source,
            })?;
            Ok((path.clone(), outcome))
        })
        .collect()
}

struct Collector<'a> {
    root: &'a Path,
    files: Vec<String>,
}

impl Collector<'_> {
    fn write(&mut self, rel: &str, bytes: &[u8]) -> Result<(), PipelineError> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|source| PipelineError::Write {
                path: parent.to_path_buf(),
                source,
            })?;
        }
        fs::write(&path, bytes).map_err(|source| PipelineError::Write { path, source })?;
        self.files.push(rel.to_string());
        Ok(())
    }
}

/// Runs the whole pipeline and writes the artifact tree.
pub fn run(config: &RunConfig) -> Result<RunSummary, PipelineError> {
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(threads) = config.threads {
        builder = builder.num_threads(threads);
    }
    let pool = builder
        .build()
        .map_err(|e| PipelineError::Pool(e.to_string()))?;
    pool.install(|| run_in_pool(config))
}

fn run_in_pool(config: &RunConfig) -> Result<RunSummary, PipelineError> {
    let gazetteer_file = fs::File::open(&config.gazetteer).map_err(|source| {
        if source.kind() == io::ErrorKind::NotFound {
            PipelineError::MissingInput(config.gazetteer.clone())
        } else {
            PipelineError::Read {
                path: config.gazetteer.clone(),
                source,
            }
        }
    })?;
    let gazetteer =
        load_gazetteer(io::BufReader::new(gazetteer_file)).map_err(|source| PipelineError::Gazetteer {
            path: config.gazetteer.clone(),
            source,
        })?;
    let basemap = Basemap::load(&config.basemap).map_err(PipelineError::Basemap)?;
    let parsed = read_inputs(&config.inputs)?;

    let mut report = RunReport {
        input_files: parsed.len(),
        gazetteer_rejected: gazetteer.rejected.len(),
        gazetteer_duplicates: gazetteer.duplicates.len(),
        ..RunReport::default()
    };
    let mut records: Vec<PublicationRecord> = Vec::new();
    for (_, outcome) in parsed {
        report.blocks += outcome.blocks();
        report.missing_year += outcome.missing_year;
        report.invalid_year += outcome.invalid_year;
        records.extend(outcome.records);
    }

    let range = match config.years {
        Some(r) => Some(r),
        None => {
            let first = records.iter().map(|r| r.year).min();
            let last = records.iter().map(|r| r.year).max();
            first.zip(last).map(|(a, b)| YearRange { first: a, last: b })
        }
    };

    let mut by_year: std::collections::BTreeMap<i32, Vec<PublicationRecord>> = Default::default();
    for mut record in records {
        if !range.is_some_and(|r| r.contains(record.year)) {
            report.outside_years += 1;
            continue;
        }
        if record.categories.is_empty() {
            record.categories = basemap.categories_for(&record);
        }
        tally_record(&record, &gazetteer, &mut report);
        by_year.entry(record.year).or_default().push(record);
    }

    let years: Vec<i32> = range.map(|r| r.years().collect()).unwrap_or_default();
    let settings = YearSettings::from(config);
    let outcomes: Vec<YearOutcome> = years
        .par_iter()
        .map(|&year| {
            let recs = by_year.get(&year).map(Vec::as_slice).unwrap_or(&[]);
            process_year(year, recs, &gazetteer, &basemap, settings)
        })
        .collect();

    let mut collector = Collector {
        root: &config.out_dir,
        files: Vec::new(),
    };
    let mut frames = Vec::new();
    for outcome in &outcomes {
        let year = outcome.row.year;
        let mut geo_files = Vec::new();
        for format in &config.geo_formats {
            let rel = format!("geo/{year}.{}", format.extension());
            collector.write(&rel, &emit_geo(&outcome.network, *format))?;
            geo_files.push(rel);
        }
        let sci_rel = format!("sci/{year}.csv");
        collector.write(&sci_rel, &outcome.sci.to_csv())?;
        let mut extra = Vec::new();
        if !outcome.sci.unmatched.is_empty() {
            let rel = format!("sci/{year}.unmatched.csv");
            collector.write(&rel, &outcome.sci.unmatched_csv())?;
            extra.push(rel);
        }
        if config.pajek {
            for (rel, text) in [
                (format!("geo/{year}.net"), to_pajek(&outcome.network)),
                (format!("sci/{year}.net"), outcome.sci.to_pajek_net()),
                (format!("sci/{year}.vec"), outcome.sci.to_pajek_vec()),
            ] {
                collector.write(&rel, text.as_bytes())?;
                extra.push(rel);
            }
        }
        frames.push(json!({
            "year": year,
            "geo": geo_files,
            "sci": sci_rel,
            "extra": extra,
        }));

        report.years.push(YearReport {
            year,
            records: outcome.network.stats.records,
            excluded_cities: outcome.network.stats.excluded_cities,
            ungeocoded_cities: outcome.network.stats.ungeocoded_cities,
            unmatched_categories: outcome.sci.unmatched.values().sum(),
            runs_without_distance: outcome.runs_without_distance,
        });
    }

    let rows: Vec<IndicatorRow> = outcomes.iter().map(|o| o.row).collect();
    collector.write("indicators.csv", indicators_csv(&rows).as_bytes())?;
    collector.write("report.txt", report.render().as_bytes())?;

    let manifest = json!({
        "basemap": basemap.id,
        "indicators": "indicators.csv",
        "report": "report.txt",
        "settings": {
            "min_city_papers": config.min_city_papers,
            "k_min": config.k_min,
            "er_runs": config.er_runs,
            "seed": config.seed,
            "geo_formats": config.geo_formats.iter().map(|f| f.extension()).collect::<Vec<_>>(),
        },
        "frames": frames,
    });
    let mut manifest_bytes = serde_json::to_vec_pretty(&manifest).expect("JSON values serialize");
    manifest_bytes.push(b'\n');
    collector.write("manifest.json", &manifest_bytes)?;

    let mut files = collector.files;
    files.sort();
    Ok(RunSummary {
        rows,
        report,
        files,
    })
}

fn tally_record(record: &PublicationRecord, gazetteer: &Gazetteer, report: &mut RunReport) {
    report.unresolved_addresses += record.unresolved_addresses();
    let cities = record.cities();
    if cities.is_empty() {
        report.no_city += 1;
    } else if cities.iter().any(|c| gazetteer.get(c).is_some()) {
        report.used += 1;
    } else {
        report.ungeocoded += 1;
    }
    if record.categories.is_empty() {
        report.uncategorized += 1;
    } else {
        report.categorized += 1;
    }
}
