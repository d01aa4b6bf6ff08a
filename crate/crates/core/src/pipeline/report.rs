use std::fmt::Write as _;

/// Where every parsed block ended up. The geographic tallies partition all
/// blocks; the category tallies partition the in-range records.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunReport {
    pub input_files: usize,
    pub blocks: usize,
    pub missing_year: usize,
    pub invalid_year: usize,
    pub outside_years: usize,
    /// In-range records without any resolvable address.
    pub no_city: usize,
    /// In-range records whose resolved cities all lack coordinates.
    pub ungeocoded: usize,
    /// In-range records with at least one geocoded city.
    pub used: usize,
    pub categorized: usize,
    pub uncategorized: usize,
    pub unresolved_addresses: usize,
    pub gazetteer_rejected: usize,
    pub gazetteer_duplicates: usize,
    pub years: Vec<YearReport>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct YearReport {
    pub year: i32,
    pub records: usize,
    pub excluded_cities: usize,
    pub ungeocoded_cities: usize,
    pub unmatched_categories: u64,
    pub runs_without_distance: usize,
}

impl RunReport {
    pub fn dropped(&self) -> usize {
        self.missing_year + self.invalid_year
    }

    /// True when the geographic and category tallies both add up.
    pub fn reconciles(&self) -> bool {
        let in_range = self.no_city + self.ungeocoded + self.used;
        self.blocks == self.dropped() + self.outside_years + in_range
            && in_range == self.categorized + self.uncategorized
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k}: {v}");
        };
        line("input_files", &self.input_files);
        line("record_blocks", &self.blocks);
        line("dropped_missing_year", &self.missing_year);
        line("dropped_invalid_year", &self.invalid_year);
        line("outside_year_range", &self.outside_years);
        line("no_resolvable_address", &self.no_city);
        line("no_geocoded_city", &self.ungeocoded);
        line("used", &self.used);
        line("categorized", &self.categorized);
        line("uncategorized", &self.uncategorized);
        line("unresolved_addresses", &self.unresolved_addresses);
        line("gazetteer_rejected_rows", &self.gazetteer_rejected);
        line("gazetteer_duplicate_keys", &self.gazetteer_duplicates);
        line("reconciled", &if self.reconciles() { "yes" } else { "no" });
        out.push('\n');
        out.push_str(
            "year,records,excluded_cities,ungeocoded_cities,unmatched_categories,sim_runs_without_distance\n",
        );
        for y in &self.years {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                y.year,
                y.records,
                y.excluded_cities,
                y.ungeocoded_cities,
                y.unmatched_categories,
                y.runs_without_distance
            );
        }
        out
    }
}
