//! Cumulative time-slice networks and growth series.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{build_graph, largest_component, mean_degree, mean_distance, CoauthGraph};
use crate::ingest::BiblioRecord;

/// Network of all records published in `[start_year, end_year]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSlice {
    pub start_year: i32,
    pub end_year: i32,
    pub graph: CoauthGraph,
    pub records_in_slice: usize,
}

/// One slice per boundary, each covering `start_year` through the boundary.
/// Boundaries must be strictly increasing and not before `start_year`.
pub fn cumulative_slices(records: &[BiblioRecord], start_year: i32, boundaries: &[i32]) -> Result<Vec<TimeSlice>> {
    if boundaries.is_empty() {
        return Err(Error::domain("no slice boundaries given"));
    }
    if boundaries[0] < start_year {
        return Err(Error::domain(format!(
            "slice boundary {} precedes start year {start_year}",
            boundaries[0]
        )));
    }
    if let Some(w) = boundaries.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::domain(format!(
            "slice boundaries not strictly increasing at {}, {}",
            w[0], w[1]
        )));
    }
    let slices = boundaries
        .par_iter()
        .map(|&end_year| {
            let in_slice: Vec<BiblioRecord> = records
                .iter()
                .filter(|r| (start_year..=end_year).contains(&r.year))
                .cloned()
                .collect();
            TimeSlice {
                start_year,
                end_year,
                graph: build_graph(&in_slice),
                records_in_slice: in_slice.len(),
            }
        })
        .collect();
    Ok(slices)
}

/// Records falling outside `[start_year, end_year]`.
pub fn count_out_of_range(records: &[BiblioRecord], start_year: i32, end_year: i32) -> usize {
    records
        .iter()
        .filter(|r| !(start_year..=end_year).contains(&r.year))
        .count()
}

/// Network statistics of one slice.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceReport {
    pub start_year: i32,
    pub end_year: i32,
    pub authors: u64,
    pub papers: u64,
    pub mean_collaborators: f64,
    pub largest_size: u64,
    pub largest_ratio: f64,
    /// `None` when the largest component is a single vertex.
    pub largest_avg_distance: Option<f64>,
}

pub fn slice_report(slice: &TimeSlice) -> Result<SliceReport> {
    let g = &slice.graph;
    if g.is_empty() {
        return Err(Error::domain(format!(
            "slice {}-{} is empty",
            slice.start_year, slice.end_year
        )));
    }
    let (largest, ratio) = largest_component(g)?;
    let largest_avg_distance = match mean_distance(&largest) {
        Ok(d) => Some(d),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SliceReport {
        start_year: slice.start_year,
        end_year: slice.end_year,
        authors: g.vertex_count() as u64,
        papers: slice.records_in_slice as u64,
        mean_collaborators: mean_degree(g),
        largest_size: largest.vertex_count() as u64,
        largest_ratio: ratio,
        largest_avg_distance,
    })
}

/// One row of a cumulative growth table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthRow {
    pub year: i32,
    pub papers: u64,
    pub authors: u64,
}

/// Cumulative papers and distinct authors for every year from `start_year`
/// to `end_year`. Records after `end_year` are ignored; an author counts
/// from the year of their first paper.
pub fn growth_series(records: &[BiblioRecord], start_year: i32, end_year: i32) -> Vec<GrowthRow> {
    if start_year > end_year {
        return Vec::new();
    }
    let span = (end_year - start_year) as usize + 1;
    let mut first_year: BTreeMap<&str, i32> = BTreeMap::new();
    for r in records.iter().filter(|r| r.year <= end_year) {
        for a in &r.authors {
            first_year
                .entry(a.as_str())
                .and_modify(|y| *y = (*y).min(r.year))
                .or_insert(r.year);
        }
    }
    let slot = |year: i32| (year.max(start_year) - start_year) as usize;

    let mut new_papers = vec![0u64; span];
    for r in records.iter().filter(|r| r.year <= end_year) {
        new_papers[slot(r.year)] += 1;
    }
    let mut new_authors = vec![0u64; span];
    for &y in first_year.values() {
        new_authors[slot(y)] += 1;
    }

    let (mut papers, mut authors) = (0, 0);
    (0..span)
        .map(|i| {
            papers += new_papers[i];
            authors += new_authors[i];
            GrowthRow {
                year: start_year + i as i32,
                papers,
                authors,
            }
        })
        .collect()
}
