//! Deterministic synthetic inputs for the benchmarks.

use std::fmt::Write as _;

const CITIES: &[(&str, &str)] = &[
    ("Boston", "MA 02115 USA"),
    ("London", "England"),
    ("Paris", "France"),
    ("Tokyo", "Japan"),
    ("Berlin", "Germany"),
    ("Madrid", "Spain"),
    ("Rome", "Italy"),
    ("Seoul", "South Korea"),
    ("Toronto", "ON M5S 1A8 Canada"),
    ("Sydney", "NSW 2006 Australia"),
    ("Zurich", "CH-8092 Switzerland"),
    ("Beijing", "Peoples R China"),
];

/// SplitMix64, enough to vary the corpus without a RNG dependency.
fn next(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A tagged export with `records` records spread over three years.
pub fn synthetic_export(records: usize, seed: u64) -> String {
    let mut state = seed;
    let mut out = String::from("FN Thomson Reuters Web of Science\nVR 1.0\n");
    for i in 0..records {
        let year = 2001 + (next(&mut state) % 3);
        let authors = 1 + next(&mut state) % 4;
        let _ = writeln!(out, "PT J\nUT WOS:{i:09}\nSO JOURNAL {}", i % 7);
        for a in 0..authors {
            let (city, rest) = CITIES[(next(&mut state) % CITIES.len() as u64) as usize];
            let tag = if a == 0 { "C1" } else { "  " };
            let _ = writeln!(out, "{tag} [Author {a}] Univ {city}, Dept Biol, {city}, {rest}.");
        }
        let _ = writeln!(out, "WC Biology; Chemistry\nPY {year}\nER\n");
    }
    out.push_str("EF\n");
    out
}
