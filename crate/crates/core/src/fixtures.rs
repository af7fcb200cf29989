//! Reference data shipped with the crate.

use crate::evolve::GrowthRow;

/// Cumulative papers and authors of the 1988-2007 library and information
/// science coauthorship corpus, one row per year.
pub const LIS_GROWTH_1988_2007: [GrowthRow; 20] = [
    row(1988, 392, 545),
    row(1989, 797, 1012),
    row(1990, 1201, 1462),
    row(1991, 1638, 1890),
    row(1992, 2039, 2262),
    row(1993, 2428, 2671),
    row(1994, 2835, 3066),
    row(1995, 3281, 3486),
    row(1996, 3750, 3913),
    row(1997, 4234, 4357),
    row(1998, 4724, 4832),
    row(1999, 5271, 5338),
    row(2000, 5802, 5884),
    row(2001, 6322, 6378),
    row(2002, 6891, 6941),
    row(2003, 7456, 7461),
    row(2004, 8073, 8106),
    row(2005, 8773, 8843),
    row(2006, 9535, 9713),
    row(2007, 10344, 10579),
];

const fn row(year: i32, papers: u64, authors: u64) -> GrowthRow {
    GrowthRow { year, papers, authors }
}

/// `(t, value)` points with `t = 1` for the first row, ready for
/// [`crate::stats::power_fit`].
pub fn growth_points(rows: &[GrowthRow], value: impl Fn(&GrowthRow) -> u64) -> Vec<(f64, f64)> {
    let Some(first) = rows.first() else { return Vec::new() };
    rows.iter()
        .map(|r| (f64::from(r.year - first.year + 1), value(r) as f64))
        .collect()
}
