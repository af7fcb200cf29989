//! Text and CSV serialization of analysis results.
//!
//! Real numbers are printed in scientific notation with 17 significant
//! digits, which round-trips every `f64`. Missing values are empty fields.
//! All writers emit `\n` line endings and deterministic row order.

use std::io::{Read, Write};

use crate::centrality::{CentralityVector, RankTable};
use crate::error::{Error, Result};
use crate::evolve::{GrowthRow, SliceReport};
use crate::graph::{CoauthGraph, SummaryStats};
use crate::stats::{CorrelationReport, Histogram, PowerFit, RankingProfile};

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_real).unwrap_or_default()
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// One `author_a<TAB>author_b<TAB>weight` line per edge, sorted.
pub fn write_edge_list<W: Write>(g: &CoauthGraph, mut out: W) -> Result<()> {
    for (a, b, w) in g.edges() {
        writeln!(out, "{}\t{}\t{}", g.key(a), g.key(b), w)?;
    }
    Ok(())
}

/// One line per isolated vertex, sorted.
pub fn write_isolated_vertices<W: Write>(g: &CoauthGraph, mut out: W) -> Result<()> {
    for v in (0..g.vertex_count()).filter(|&v| g.degree(v) == 0) {
        writeln!(out, "{}", g.key(v))?;
    }
    Ok(())
}

pub fn write_summary<W: Write>(s: &SummaryStats, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record([
        "papers",
        "authors",
        "papers_per_author",
        "authors_per_paper",
        "avg_collaborators",
        "largest_component_ratio",
        "mean_distance",
        "clustering_coefficient",
    ])?;
    w.write_record([
        s.papers.to_string(),
        s.authors.to_string(),
        format_real(s.papers_per_author),
        format_real(s.authors_per_paper),
        format_real(s.avg_collaborators),
        format_real(s.largest_component_ratio),
        format_opt(s.mean_distance),
        format_real(s.clustering_coefficient),
    ])?;
    w.flush()?;
    Ok(())
}

pub fn write_centrality<W: Write>(cv: &CentralityVector, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["author", "measure", "score"])?;
    for (key, score) in cv.iter() {
        w.write_record([key.as_str(), cv.measure().name(), &format_real(score)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_rank_table<W: Write>(t: &RankTable, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["rank", "author", "score"])?;
    for row in &t.rows {
        w.write_record([row.rank.to_string(), row.author.to_string(), format_real(row.score)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_slice_reports<W: Write>(reports: &[SliceReport], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record([
        "start",
        "end",
        "authors",
        "papers",
        "mean_collaborators",
        "largest_size",
        "largest_ratio",
        "largest_avg_distance",
    ])?;
    for r in reports {
        w.write_record([
            r.start_year.to_string(),
            r.end_year.to_string(),
            r.authors.to_string(),
            r.papers.to_string(),
            format_real(r.mean_collaborators),
            r.largest_size.to_string(),
            format_real(r.largest_ratio),
            format_opt(r.largest_avg_distance),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_growth_series<W: Write>(rows: &[GrowthRow], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["year", "papers", "authors"])?;
    for r in rows {
        w.write_record([r.year.to_string(), r.papers.to_string(), r.authors.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a `year,papers,authors` table with header, as written by
/// [`write_growth_series`]. Years must be consecutive.
pub fn read_growth_series<R: Read>(input: R) -> Result<Vec<GrowthRow>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = reader.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_owned()))
    };
    let (year_col, papers_col, authors_col) = (col("year")?, col("papers")?, col("authors")?);
    let mut rows: Vec<GrowthRow> = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let field = |c: usize| rec.get(c).unwrap_or("");
        let bad = |what: &str, raw: &str| Error::Row {
            line,
            message: format!("invalid {what} {raw:?}"),
        };
        let row = GrowthRow {
            year: field(year_col).parse().map_err(|_| bad("year", field(year_col)))?,
            papers: field(papers_col).parse().map_err(|_| bad("paper count", field(papers_col)))?,
            authors: field(authors_col).parse().map_err(|_| bad("author count", field(authors_col)))?,
        };
        if let Some(prev) = rows.last() {
            if row.year != prev.year + 1 {
                return Err(Error::Row {
                    line,
                    message: format!("year {} does not follow {}", row.year, prev.year),
                });
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn write_power_fits<W: Write>(fits: &[(String, PowerFit)], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["series", "coefficient", "exponent", "r_squared", "n"])?;
    for (name, f) in fits {
        w.write_record([
            name.clone(),
            format_real(f.coefficient),
            format_real(f.exponent),
            format_real(f.r_squared),
            f.n_points.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_degree_distribution<W: Write>(dist: &[(usize, f64)], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["degree", "probability"])?;
    for &(k, p) in dist {
        w.write_record([k.to_string(), format_real(p)])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the rho matrix to `rho_out` and the 0/1 significance matrix to
/// `sig_out`, both with label header row and label first column.
pub fn write_correlation<W1: Write, W2: Write>(report: &CorrelationReport, rho_out: W1, sig_out: W2) -> Result<()> {
    let mut header = vec![String::new()];
    header.extend(report.labels.iter().cloned());

    let mut w = csv_writer(rho_out);
    w.write_record(&header)?;
    for (label, row) in report.labels.iter().zip(&report.rho) {
        let mut rec = vec![label.clone()];
        rec.extend(row.iter().map(|&x| format_real(x)));
        w.write_record(&rec)?;
    }
    w.flush()?;

    let mut w = csv_writer(sig_out);
    w.write_record(&header)?;
    for (label, row) in report.labels.iter().zip(&report.significant_01) {
        let mut rec = vec![label.clone()];
        rec.extend(row.iter().map(|&s| if s { "1" } else { "0" }.to_owned()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_histogram<W: Write>(h: &Histogram, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["bin_lo", "bin_hi", "count"])?;
    for (i, &c) in h.counts.iter().enumerate() {
        w.write_record([format_real(h.bin_edges[i]), format_real(h.bin_edges[i + 1]), c.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_ranking_profile<W: Write>(p: &RankingProfile, out: W) -> Result<()> {
    let mut w = csv_writer(out);
    let mut header = vec!["author".to_owned()];
    header.extend(p.columns.iter().cloned());
    w.write_record(&header)?;
    for (key, ranks) in &p.rows {
        let mut rec = vec![key.to_string()];
        rec.extend(ranks.iter().map(usize::to_string));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
