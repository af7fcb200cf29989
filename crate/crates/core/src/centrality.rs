//! Degree, closeness, betweenness and PageRank centrality, and ranking tables.
//!
//! Every measure treats the coauthorship graph as a simple unweighted graph.
//! Closeness is the sum of reciprocal hop distances to all reachable
//! vertices, so disconnected graphs need no special case. Betweenness is
//! unnormalized and counts each unordered vertex pair once.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{bfs, CoauthGraph, VertexId, UNREACHED};
use crate::ingest::AuthorKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Degree,
    Closeness,
    Betweenness,
    PageRank,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::Degree, Measure::Closeness, Measure::Betweenness, Measure::PageRank];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Closeness => "closeness",
            Measure::Betweenness => "betweenness",
            Measure::PageRank => "pagerank",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Scores of one measure, one per vertex, in ascending key order.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    measure: Measure,
    keys: Vec<AuthorKey>,
    scores: Vec<f64>,
}

impl CentralityVector {
    /// Builds a vector from arbitrary `(key, score)` entries.
    pub fn new(measure: Measure, mut entries: Vec<(AuthorKey, f64)>) -> Result<Self> {
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::domain(format!("duplicate vertex `{}`", w[0].0)));
        }
        let (keys, scores) = entries.into_iter().unzip();
        Ok(CentralityVector { measure, keys, scores })
    }

    fn from_graph(measure: Measure, g: &CoauthGraph, scores: Vec<f64>) -> Self {
        CentralityVector {
            measure,
            keys: g.keys().to_vec(),
            scores,
        }
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn keys(&self) -> &[AuthorKey] {
        &self.keys
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.keys
            .binary_search_by(|k| k.as_str().cmp(key))
            .ok()
            .map(|i| self.scores[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AuthorKey, f64)> {
        self.keys.iter().zip(self.scores.iter().copied())
    }
}

/// Number of distinct neighbors.
pub fn degree_centrality(g: &CoauthGraph) -> CentralityVector {
    let scores = (0..g.vertex_count()).map(|v| g.degree(v) as f64).collect();
    CentralityVector::from_graph(Measure::Degree, g, scores)
}

/// Sum of `1 / d(v, u)` over every vertex `u` reachable from `v`.
pub fn closeness_centrality(g: &CoauthGraph) -> CentralityVector {
    let n = g.vertex_count();
    let scores = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![UNREACHED; n], Vec::new(), Vec::new()),
            |(dist, order, per_level): &mut (Vec<u32>, Vec<VertexId>, Vec<u64>), s| {
                bfs(g, s, dist, order);
                per_level.clear();
                for &v in order.iter() {
                    let d = dist[v] as usize;
                    if per_level.len() <= d {
                        per_level.resize(d + 1, 0);
                    }
                    per_level[d] += 1;
                }
                per_level
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(d, &count)| count as f64 / d as f64)
                    .sum::<f64>()
            },
        )
        .collect();
    CentralityVector::from_graph(Measure::Closeness, g, scores)
}

/// Sources handled per task. Partial sums are formed per block and then
/// added in block order, so the result does not depend on thread count.
const BETWEENNESS_BLOCK: usize = 32;

struct BrandesScratch {
    dist: Vec<u32>,
    order: Vec<VertexId>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
}

impl BrandesScratch {
    fn new(n: usize) -> Self {
        BrandesScratch {
            dist: vec![UNREACHED; n],
            order: Vec::with_capacity(n),
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
        }
    }

    /// Adds the pair dependencies of source `s` to `acc`.
    fn accumulate(&mut self, g: &CoauthGraph, s: VertexId, acc: &mut [f64]) {
        bfs(g, s, &mut self.dist, &mut self.order);
        for &v in &self.order {
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
        }
        self.sigma[s] = 1.0;
        // BFS order visits every predecessor before its successors
        for &v in &self.order {
            let dv = self.dist[v];
            for &w in g.neighbors(v) {
                if self.dist[w] == dv + 1 {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }
        for &w in self.order.iter().rev() {
            let dw = self.dist[w];
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in g.neighbors(w) {
                if dw > 0 && self.dist[v] == dw - 1 {
                    self.delta[v] += self.sigma[v] * coeff;
                }
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}

/// Exact betweenness by Brandes' dependency accumulation.
pub fn betweenness_centrality(g: &CoauthGraph) -> CentralityVector {
    let n = g.vertex_count();
    let blocks: Vec<Vec<f64>> = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(BETWEENNESS_BLOCK)
        .map(|sources| {
            let mut scratch = BrandesScratch::new(n);
            let mut partial = vec![0.0; n];
            for &s in sources {
                scratch.accumulate(g, s, &mut partial);
            }
            partial
        })
        .collect();
    let mut scores = vec![0.0; n];
    for partial in &blocks {
        for (total, x) in scores.iter_mut().zip(partial) {
            *total += x;
        }
    }
    // every unordered pair was counted from both endpoints
    for x in &mut scores {
        *x /= 2.0;
    }
    CentralityVector::from_graph(Measure::Betweenness, g, scores)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankParams {
    pub damping: f64,
    /// Stop once the L1 change between iterations drops below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        PageRankParams {
            damping: 0.85,
            tol: 1e-12,
            max_iter: 1000,
        }
    }
}

impl PageRankParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::domain(format!("damping {} not in (0, 1)", self.damping)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::domain(format!("tolerance {} not positive", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::domain("max_iter must be at least 1"));
        }
        Ok(())
    }
}

/// PageRank by power iteration, with every undirected edge used as two arcs.
/// Isolated vertices spread their mass uniformly over all vertices.
pub fn pagerank(g: &CoauthGraph, params: PageRankParams) -> Result<CentralityVector> {
    params.validate()?;
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::domain("pagerank of an empty graph"));
    }
    let d = params.damping;
    let inv_n = 1.0 / n as f64;
    let mut rank = vec![inv_n; n];
    let mut share = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for _ in 0..params.max_iter {
        let mut dangling = 0.0;
        for v in 0..n {
            match g.degree(v) {
                0 => {
                    dangling += rank[v];
                    share[v] = 0.0;
                }
                k => share[v] = rank[v] / k as f64,
            }
        }
        let base = (1.0 - d) * inv_n + d * dangling * inv_n;
        next.par_iter_mut().enumerate().for_each(|(v, out)| {
            let inflow: f64 = g.neighbors(v).iter().map(|&u| share[u]).sum();
            *out = base + d * inflow;
        });
        residual = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if residual < params.tol {
            let total: f64 = rank.iter().sum();
            for x in &mut rank {
                *x /= total;
            }
            return Ok(CentralityVector::from_graph(Measure::PageRank, g, rank));
        }
    }
    Err(Error::Convergence {
        iterations: params.max_iter,
        residual,
    })
}

/// Computes any measure; `params` only affects PageRank.
pub fn compute(g: &CoauthGraph, measure: Measure, params: PageRankParams) -> Result<CentralityVector> {
    Ok(match measure {
        Measure::Degree => degree_centrality(g),
        Measure::Closeness => closeness_centrality(g),
        Measure::Betweenness => betweenness_centrality(g),
        Measure::PageRank => pagerank(g, params)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieRule {
    /// Equal scores are ordered by ascending author key.
    AuthorKeyAscending,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankRow {
    pub rank: usize,
    pub author: AuthorKey,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    pub measure: Measure,
    pub rows: Vec<RankRow>,
    pub tie_rule: TieRule,
}

/// Vertex indices of `cv` from highest to lowest score.
pub(crate) fn ranked_order(cv: &CentralityVector) -> Vec<usize> {
    let mut order: Vec<usize> = (0..cv.len()).collect();
    // keys are stored sorted, so a stable sort on score alone breaks ties by key
    order.sort_by(|&a, &b| cv.scores[b].total_cmp(&cv.scores[a]));
    order
}

/// Ordinal rank (1-based) of every vertex, aligned with [`CentralityVector::keys`].
pub fn ordinal_ranks(cv: &CentralityVector) -> Vec<usize> {
    let mut ranks = vec![0; cv.len()];
    for (pos, idx) in ranked_order(cv).into_iter().enumerate() {
        ranks[idx] = pos + 1;
    }
    ranks
}

pub fn rank_table(cv: &CentralityVector, top_n: usize) -> RankTable {
    let rows = ranked_order(cv)
        .into_iter()
        .take(top_n)
        .enumerate()
        .map(|(pos, i)| RankRow {
            rank: pos + 1,
            author: cv.keys[i].clone(),
            score: cv.scores[i],
        })
        .collect();
    RankTable {
        measure: cv.measure,
        rows,
        tie_rule: TieRule::AuthorKeyAscending,
    }
}
