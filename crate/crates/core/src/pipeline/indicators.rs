use std::fmt::Write as _;

/// Column order of `indicators.csv`. Stable across versions.
pub const COLUMNS: [&str; 20] = [
    "year",
    "n",
    "m",
    "density",
    "z",
    "cc",
    "d_mean",
    "largest_component_fraction",
    "cc_rg_analytic",
    "d_rg_analytic",
    "cc_rg_sim",
    "d_rg_sim",
    "w_analytic",
    "w_sim",
    "gamma",
    "r2",
    "D_geo",
    "C_geo",
    "coherence_geo",
    "D_cog",
];

/// One year of indicators. Undefined values are `None` and serialize as
/// empty cells.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IndicatorRow {
    pub year: i32,
    pub n: usize,
    pub m: usize,
    pub density: Option<f64>,
    pub z: Option<f64>,
    pub cc: Option<f64>,
    pub d_mean: Option<f64>,
    pub largest_component_fraction: Option<f64>,
    pub cc_rg_analytic: Option<f64>,
    pub d_rg_analytic: Option<f64>,
    pub cc_rg_sim: Option<f64>,
    pub d_rg_sim: Option<f64>,
    pub w_analytic: Option<f64>,
    pub w_sim: Option<f64>,
    pub gamma: Option<f64>,
    pub r2: Option<f64>,
    /// Kilometers.
    pub d_geo: Option<f64>,
    /// Kilometers.
    pub c_geo: Option<f64>,
    pub coherence_geo: Option<f64>,
    pub d_cog: Option<f64>,
}

impl IndicatorRow {
    pub fn empty(year: i32) -> Self {
        Self {
            year,
            ..Self::default()
        }
    }

    fn cells(&self) -> [String; 20] {
        let f = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.year.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            f(self.density),
            f(self.z),
            f(self.cc),
            f(self.d_mean),
            f(self.largest_component_fraction),
            f(self.cc_rg_analytic),
            f(self.d_rg_analytic),
            f(self.cc_rg_sim),
            f(self.d_rg_sim),
            f(self.w_analytic),
            f(self.w_sim),
            f(self.gamma),
            f(self.r2),
            f(self.d_geo),
            f(self.c_geo),
            f(self.coherence_geo),
            f(self.d_cog),
        ]
    }
}

/// Renders rows as comma-separated, LF-terminated CSV with a header.
pub fn indicators_csv(rows: &[IndicatorRow]) -> String {
    let mut out = COLUMNS.join(",");
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "{}", row.cells().join(","));
    }
    out
}
