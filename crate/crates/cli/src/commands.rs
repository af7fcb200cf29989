use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use coauthnet_core::centrality::{self, rank_table, Measure, PageRankParams};
use coauthnet_core::evolve::{count_out_of_range, cumulative_slices, growth_series, slice_report};
use coauthnet_core::fixtures::growth_points;
use coauthnet_core::graph::{build_graph, largest_component, summary_stats};
use coauthnet_core::ingest::{
    apply_merge_map, author_citations, filter_documents, normalize_records, parse_records, AuthorMergeMap,
};
use coauthnet_core::stats::{correlation_matrix, degree_distribution, histogram, power_fit, ranking_profile};
use coauthnet_core::{export, AuthorKey, BiblioRecord, CentralityVector, CoauthGraph, GrowthRow, PowerFit};
use serde::Serialize;

use crate::args::{Command, RunArgs};
use crate::CliError;

type CliResult<T> = Result<T, CliError>;

/// Fully resolved configuration, recorded next to the outputs.
#[derive(Debug, Serialize)]
struct RunConfig<'a> {
    command: &'a str,
    input_path: Option<&'a Path>,
    merge_map_path: Option<&'a Path>,
    series_path: Option<&'a Path>,
    allowed_doc_types: &'a [String],
    start_year: Option<i32>,
    slice_boundaries: Vec<i32>,
    damping: f64,
    tol: f64,
    max_iter: usize,
    top_n: usize,
    restrict_to_largest: bool,
    bins: usize,
    output_dir: &'a Path,
}

impl<'a> RunConfig<'a> {
    fn new(command: &'a str, args: &'a RunArgs) -> Self {
        RunConfig {
            command,
            input_path: args.input.as_deref(),
            merge_map_path: args.merge_map.as_deref(),
            series_path: args.series.as_deref(),
            allowed_doc_types: &args.doc_types,
            start_year: args.start_year,
            slice_boundaries: args.slices.clone(),
            damping: args.damping,
            tol: args.tol,
            max_iter: args.max_iter,
            top_n: args.top_n,
            restrict_to_largest: !args.whole_graph,
            bins: args.bins,
            output_dir: &args.output_dir,
        }
    }
}

struct OutputDir(PathBuf);

impl OutputDir {
    fn create(path: &Path) -> CliResult<Self> {
        fs::create_dir_all(path)
            .map_err(|e| CliError::usage(format!("cannot create output directory {}: {e}", path.display())))?;
        Ok(OutputDir(path.to_owned()))
    }

    /// Writes `name` through a temporary file renamed into place.
    fn write<F>(&self, name: &str, body: F) -> CliResult<()>
    where
        F: FnOnce(&mut BufWriter<File>) -> coauthnet_core::Result<()>,
    {
        let tmp = self.0.join(format!(".{name}.tmp"));
        let mut out = BufWriter::new(File::create(&tmp)?);
        body(&mut out)?;
        out.flush()?;
        drop(out);
        fs::rename(&tmp, self.0.join(name))?;
        Ok(())
    }

    fn manifest(&self, config: &RunConfig<'_>) -> CliResult<()> {
        let text = serde_json::to_string_pretty(config).map_err(|e| CliError::data(e.to_string()))?;
        self.write(&format!("run_{}.json", config.command), |w| {
            writeln!(w, "{text}")?;
            Ok(())
        })
    }
}

fn validate(args: &RunArgs) -> CliResult<()> {
    if args.doc_types.iter().all(|t| t.trim().is_empty()) {
        return Err(CliError::usage("--doc-types must name at least one document type"));
    }
    PageRankParams {
        damping: args.damping,
        tol: args.tol,
        max_iter: args.max_iter,
    }
    .validate()
    .map_err(|e| CliError::usage(e.to_string()))?;
    if args.top_n == 0 {
        return Err(CliError::usage("--top-n must be at least 1"));
    }
    if args.bins == 0 {
        return Err(CliError::usage("--bins must be at least 1"));
    }
    if let Some(w) = args.slices.windows(2).find(|w| w[0] >= w[1]) {
        return Err(CliError::usage(format!(
            "--slices must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    for path in [&args.input, &args.merge_map, &args.series].into_iter().flatten() {
        if !path.is_file() {
            return Err(CliError::usage(format!("no such file: {}", path.display())));
        }
    }
    Ok(())
}

fn require_input(args: &RunArgs) -> CliResult<&Path> {
    args.input
        .as_deref()
        .ok_or_else(|| CliError::usage("--input is required for this command"))
}

/// Parses, filters, normalizes and merges the input corpus.
fn load_corpus(path: &Path, args: &RunArgs) -> CliResult<Vec<BiblioRecord>> {
    let parsed = parse_records(BufReader::new(File::open(path)?))?;
    for line in &parsed.anonymous_rows {
        eprintln!("warning: line {line}: no authors, record skipped");
    }
    let kept = filter_documents(&parsed.records, &args.doc_types);
    eprintln!(
        "{} records read, {} dropped by document type, {} anonymous rows rejected",
        parsed.records.len(),
        parsed.records.len() - kept.len(),
        parsed.anonymous_rows.len()
    );
    if kept.is_empty() {
        return Err(CliError::data("no records after filtering"));
    }
    let normalized = normalize_records(&kept)?;
    match &args.merge_map {
        Some(map_path) => {
            let map = AuthorMergeMap::from_csv(File::open(map_path)?)?;
            Ok(apply_merge_map(&normalized, &map))
        }
        None => Ok(normalized),
    }
}

fn analysis_graph(records: &[BiblioRecord], args: &RunArgs) -> CliResult<CoauthGraph> {
    let g = build_graph(records);
    if args.whole_graph {
        Ok(g)
    } else {
        Ok(largest_component(&g)?.0)
    }
}

fn year_span(records: &[BiblioRecord]) -> (i32, i32) {
    let min = records.iter().map(|r| r.year).min().unwrap_or_default();
    let max = records.iter().map(|r| r.year).max().unwrap_or_default();
    (min, max)
}

fn pagerank_params(args: &RunArgs) -> PageRankParams {
    PageRankParams {
        damping: args.damping,
        tol: args.tol,
        max_iter: args.max_iter,
    }
}

fn all_measures(g: &CoauthGraph, args: &RunArgs) -> CliResult<Vec<CentralityVector>> {
    Measure::ALL
        .iter()
        .map(|&m| centrality::compute(g, m, pagerank_params(args)).map_err(CliError::from))
        .collect()
}

/// Runs one subcommand.
pub fn run(command: &Command) -> CliResult<()> {
    let args = command.args();
    validate(args)?;
    let out = OutputDir::create(&args.output_dir)?;
    let mut config = RunConfig::new(command.name(), args);
    match command {
        Command::Stats(_) => cmd_stats(args, &out)?,
        Command::Centrality(_) => cmd_centrality(args, &out)?,
        Command::Evolve(_) => {
            let (start, slices) = cmd_evolve(args, &out)?;
            config.start_year = Some(start);
            config.slice_boundaries = slices;
        }
        Command::Correlate(_) => cmd_correlate(args, &out)?,
        Command::Fit(_) => cmd_fit(args, &out)?,
    }
    out.manifest(&config)
}

fn cmd_stats(args: &RunArgs, out: &OutputDir) -> CliResult<()> {
    let records = load_corpus(require_input(args)?, args)?;
    let g = build_graph(&records);
    let summary = summary_stats(&records, &g)?;
    out.write("summary.csv", |w| export::write_summary(&summary, w))?;
    out.write("edges.tsv", |w| export::write_edge_list(&g, w))?;
    out.write("isolated_vertices.txt", |w| export::write_isolated_vertices(&g, w))?;
    Ok(())
}

fn cmd_centrality(args: &RunArgs, out: &OutputDir) -> CliResult<()> {
    let records = load_corpus(require_input(args)?, args)?;
    let g = analysis_graph(&records, args)?;
    for cv in all_measures(&g, args)? {
        let name = cv.measure().name();
        out.write(&format!("centrality_{name}.csv"), |w| export::write_centrality(&cv, w))?;
        let table = rank_table(&cv, args.top_n);
        out.write(&format!("rank_{name}.csv"), |w| export::write_rank_table(&table, w))?;
        let hist = histogram(cv.scores(), args.bins, false)?;
        out.write(&format!("histogram_{name}.csv"), |w| export::write_histogram(&hist, w))?;
    }
    Ok(())
}

/// Returns the resolved start year and slice boundaries.
fn cmd_evolve(args: &RunArgs, out: &OutputDir) -> CliResult<(i32, Vec<i32>)> {
    let records = load_corpus(require_input(args)?, args)?;
    let (first, last) = year_span(&records);
    let start = args.start_year.unwrap_or(first);
    let boundaries = if args.slices.is_empty() {
        vec![last.max(start)]
    } else {
        args.slices.clone()
    };
    if boundaries[0] < start {
        return Err(CliError::usage(format!(
            "slice boundary {} precedes start year {start}",
            boundaries[0]
        )));
    }
    let end = *boundaries.last().expect("non-empty");
    let excluded = count_out_of_range(&records, start, end);
    if excluded > 0 {
        eprintln!("warning: {excluded} records outside {start}-{end} excluded");
    }
    let in_range: Vec<BiblioRecord> = records
        .into_iter()
        .filter(|r| (start..=end).contains(&r.year))
        .collect();

    let growth = growth_series(&in_range, start, end);
    out.write("growth.csv", |w| export::write_growth_series(&growth, w))?;

    let slices = cumulative_slices(&in_range, start, &boundaries)?;
    let reports = slices.iter().map(slice_report).collect::<Result<Vec<_>, _>>()?;
    out.write("slices.csv", |w| export::write_slice_reports(&reports, w))?;
    Ok((start, boundaries))
}

const CORRELATION_ORDER: [Measure; 4] = [Measure::Closeness, Measure::Betweenness, Measure::Degree, Measure::PageRank];

fn cmd_correlate(args: &RunArgs, out: &OutputDir) -> CliResult<()> {
    let records = load_corpus(require_input(args)?, args)?;
    let g = analysis_graph(&records, args)?;
    if g.vertex_count() < 3 {
        return Err(CliError::data(format!(
            "correlation undefined: {} authors analysed, at least 3 needed",
            g.vertex_count()
        )));
    }
    let all_citations = author_citations(&records);
    let citations: BTreeMap<AuthorKey, u64> = g
        .keys()
        .iter()
        .map(|k| (k.clone(), all_citations.get(k.as_str()).copied().unwrap_or(0)))
        .collect();

    let mut measures: BTreeMap<Measure, CentralityVector> =
        all_measures(&g, args)?.into_iter().map(|cv| (cv.measure(), cv)).collect();

    let mut series = vec![("citations".to_owned(), citations.values().map(|&c| c as f64).collect())];
    for m in CORRELATION_ORDER {
        series.push((m.name().to_owned(), measures[&m].scores().to_vec()));
    }
    let report = correlation_matrix(&series)?;
    let mut rho = Vec::new();
    let mut sig = Vec::new();
    export::write_correlation(&report, &mut rho, &mut sig)?;
    out.write("correlation_rho.csv", |w| Ok(w.write_all(&rho)?))?;
    out.write("correlation_sig.csv", |w| Ok(w.write_all(&sig)?))?;

    let baseline = measures.remove(&Measure::PageRank).expect("computed");
    let others: Vec<CentralityVector> = CORRELATION_ORDER[..3].iter().map(|m| measures[m].clone()).collect();
    let profile = ranking_profile(&baseline, &others, &citations)?;
    out.write("ranking_profile.csv", |w| export::write_ranking_profile(&profile, w))?;
    Ok(())
}

fn cmd_fit(args: &RunArgs, out: &OutputDir) -> CliResult<()> {
    if args.series.is_none() && args.input.is_none() {
        return Err(CliError::usage("fit needs --series, --input, or both"));
    }
    let records = match &args.input {
        Some(path) => Some(load_corpus(path, args)?),
        None => None,
    };

    let growth: Vec<GrowthRow> = match (&args.series, &records) {
        (Some(path), _) => export::read_growth_series(File::open(path)?)?,
        (None, Some(recs)) => {
            let (first, last) = year_span(recs);
            growth_series(recs, args.start_year.unwrap_or(first), last)
        }
        (None, None) => unreachable!(),
    };

    let mut fits: Vec<(String, PowerFit)> = vec![
        ("papers".to_owned(), power_fit(&growth_points(&growth, |r| r.papers))?),
        ("authors".to_owned(), power_fit(&growth_points(&growth, |r| r.authors))?),
    ];

    if let Some(recs) = &records {
        let g = analysis_graph(recs, args)?;
        let dist = degree_distribution(&g)?;
        out.write("degree_distribution.csv", |w| export::write_degree_distribution(&dist, w))?;
        let points: Vec<(f64, f64)> = dist.iter().map(|&(k, p)| (k as f64, p)).collect();
        match power_fit(&points) {
            Ok(fit) => fits.push(("degree".to_owned(), fit)),
            Err(e) => eprintln!("warning: degree distribution not fitted: {e}"),
        }
    }
    out.write("fits.csv", |w| export::write_power_fits(&fits, w))?;
    Ok(())
}
