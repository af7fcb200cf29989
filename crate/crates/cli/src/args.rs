use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "coauthnet", version, about = "Coauthorship network analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Summary statistics and graph export
    Stats(RunArgs),
    /// Degree, closeness, betweenness and PageRank with ranking tables
    Centrality(RunArgs),
    /// Cumulative growth series and time-slice reports
    Evolve(RunArgs),
    /// Spearman correlations of centralities against citation counts
    Correlate(RunArgs),
    /// Power-law fits of growth curves and the degree distribution
    Fit(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Stats(_) => "stats",
            Command::Centrality(_) => "centrality",
            Command::Evolve(_) => "evolve",
            Command::Correlate(_) => "correlate",
            Command::Fit(_) => "fit",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Stats(a) | Command::Centrality(a) | Command::Evolve(a) | Command::Correlate(a) | Command::Fit(a) => a,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunArgs {
    /// Tab-delimited bibliographic export (UT, AU, PY, DT, TC, SO columns)
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Directory receiving all output files
    #[arg(long)]
    pub output_dir: PathBuf,

    /// CSV of `variant,canonical` author names
    #[arg(long)]
    pub merge_map: Option<PathBuf>,

    /// Document types to keep (case-insensitive)
    #[arg(long, value_delimiter = ',', default_values_t = ["Article".to_owned(), "Review".to_owned()])]
    pub doc_types: Vec<String>,

    /// First year of the cumulative slices and growth series [default: earliest year in the corpus]
    #[arg(long)]
    pub start_year: Option<i32>,

    /// Slice end years, e.g. 1992,1997,2002,2007 [default: latest year in the corpus]
    #[arg(long, value_delimiter = ',')]
    pub slices: Vec<i32>,

    #[arg(long, default_value_t = 0.85)]
    pub damping: f64,

    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,

    #[arg(long, default_value_t = 1000)]
    pub max_iter: usize,

    /// Rows per ranking table
    #[arg(long, default_value_t = 30)]
    pub top_n: usize,

    /// Analyse the whole graph instead of its largest component
    #[arg(long)]
    pub whole_graph: bool,

    /// Pre-tabulated `year,papers,authors` growth series (fit only)
    #[arg(long)]
    pub series: Option<PathBuf>,

    /// Bins for the centrality frequency histograms
    #[arg(long, default_value_t = 20)]
    pub bins: usize,
}
