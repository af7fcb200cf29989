//! Coauthorship network analysis.
//!
//! The crate is organised as a pipeline:
//!
//! - [`ingest`] reads tab-delimited bibliographic exports, filters document
//!   types, normalizes author names, applies merge maps and aggregates
//!   per-author citation counts.
//! - [`graph`] builds the undirected coauthorship graph and computes
//!   structural statistics (components, distances, clustering).
//! - [`centrality`] computes degree, closeness (reciprocal-distance sum),
//!   betweenness and PageRank, plus ranking tables.
//! - [`evolve`] builds cumulative time slices and growth series.
//! - [`stats`] fits power laws, tabulates distributions and computes
//!   Spearman rank correlations.
//! - [`export`] writes every result type in its CSV/text format.
//!
//! All distance and centrality computations treat the graph as unweighted.
//! Parallel kernels reduce in a fixed order, so results are bit-identical
//! regardless of the size of the rayon thread pool.

pub mod centrality;
pub mod error;
pub mod evolve;
pub mod export;
pub mod fixtures;
pub mod graph;
pub mod ingest;
pub mod stats;

pub use centrality::{CentralityVector, Measure, PageRankParams, RankRow, RankTable};
pub use error::{Error, Result};
pub use evolve::{GrowthRow, SliceReport, TimeSlice};
pub use graph::{CoauthGraph, ComponentPartition, SummaryStats, VertexId};
pub use ingest::{AuthorKey, AuthorMergeMap, BiblioRecord, ParsedCorpus};
pub use stats::{CorrelationReport, Histogram, PowerFit, RankingProfile, Spearman};
