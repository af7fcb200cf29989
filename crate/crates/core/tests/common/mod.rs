//! Random inputs and brute-force oracles shared by the integration suites.
//! Nothing here calls into the library's algorithms.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use coauthnet_core::ingest::BiblioRecord;
use rand::seq::SliceRandom;
use rand::Rng;

pub const INF: usize = usize::MAX;

pub fn label(i: usize) -> String {
    format!("V{i:03}, X")
}

/// Simple undirected graph as an adjacency matrix.
#[derive(Debug, Clone)]
pub struct Dense {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Dense {
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.adj[v][u]).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    /// One record per edge plus a single-author record per vertex, so every
    /// vertex exists and edges carry weight 1. Labels sort in index order.
    pub fn to_records(&self) -> Vec<BiblioRecord> {
        let mut recs = Vec::new();
        for v in 0..self.n {
            recs.push(record(recs.len(), 2000, &[label(v)]));
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adj[a][b] {
                    recs.push(record(recs.len(), 2000, &[label(a), label(b)]));
                }
            }
        }
        recs
    }
}

pub fn record(id: usize, year: i32, authors: &[String]) -> BiblioRecord {
    BiblioRecord {
        record_id: format!("R{id:05}"),
        authors: authors.to_vec(),
        year,
        doc_type: "Article".to_owned(),
        times_cited: 0,
        source: "SRC".to_owned(),
    }
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Dense {
    let mut adj = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    Dense { n, adj }
}

/// Random graph guaranteed connected: a random spanning tree plus extra edges.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Dense {
    let mut g = random_graph(rng, n, p);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let child = order[i];
        g.adj[parent][child] = true;
        g.adj[child][parent] = true;
    }
    g
}

pub fn floyd_warshall(g: &Dense) -> Vec<Vec<usize>> {
    let n = g.n;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if g.adj[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// All geodesics between `s` and `t`, each as a vertex sequence.
pub fn all_geodesics(g: &Dense, dist: &[Vec<usize>], s: usize, t: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Dense, dist: &[Vec<usize>], t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        for w in g.neighbors(v) {
            if dist[w][t] != INF && dist[w][t] + 1 == dist[v][t] {
                path.push(w);
                extend(g, dist, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if dist[s][t] != INF {
        extend(g, dist, t, &mut vec![s], &mut out);
    }
    out
}

/// Betweenness by enumerating every geodesic of every unordered pair.
pub fn betweenness_oracle(g: &Dense) -> Vec<f64> {
    let dist = floyd_warshall(g);
    let mut score = vec![0.0; g.n];
    for j in 0..g.n {
        for k in j + 1..g.n {
            let paths = all_geodesics(g, &dist, j, k);
            if paths.is_empty() {
                continue;
            }
            let total = paths.len() as f64;
            for i in 0..g.n {
                if i == j || i == k {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&i)).count() as f64;
                score[i] += through / total;
            }
        }
    }
    score
}

pub fn closeness_oracle(g: &Dense) -> Vec<f64> {
    let dist = floyd_warshall(g);
    (0..g.n)
        .map(|v| {
            (0..g.n)
                .filter(|&u| u != v && dist[v][u] != INF)
                .map(|u| 1.0 / dist[v][u] as f64)
                .sum()
        })
        .collect()
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// PageRank as the solution of `(I - d M) x = (1 - d)/n`, where column `u`
/// of `M` is `1/deg(u)` on neighbors, or uniform `1/n` for isolated `u`.
pub fn pagerank_oracle(g: &Dense, damping: f64) -> Vec<f64> {
    let n = g.n;
    let mut a = vec![vec![0.0; n]; n];
    for v in 0..n {
        a[v][v] = 1.0;
    }
    for u in 0..n {
        let deg = g.degree(u);
        for v in 0..n {
            let m = if deg == 0 {
                1.0 / n as f64
            } else if g.adj[u][v] {
                1.0 / deg as f64
            } else {
                0.0
            };
            a[v][u] -= damping * m;
        }
    }
    solve_dense(a, vec![(1.0 - damping) / n as f64; n])
}

/// Component labels by repeated min-label diffusion until nothing changes.
pub fn label_propagation(g: &Dense) -> Vec<usize> {
    let mut label: Vec<usize> = (0..g.n).collect();
    loop {
        let mut changed = false;
        for v in 0..g.n {
            for u in g.neighbors(v) {
                if label[u] < label[v] {
                    label[v] = label[u];
                    changed = true;
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

/// Vertices of the largest component (ties: the one with the smallest vertex).
pub fn largest_component_oracle(g: &Dense) -> Vec<usize> {
    let labels = label_propagation(g);
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &l) in labels.iter().enumerate() {
        groups.entry(l).or_default().push(v);
    }
    let mut best: Vec<usize> = Vec::new();
    for members in groups.into_values() {
        if members.len() > best.len() {
            best = members;
        }
    }
    best
}

pub fn mean_distance_oracle(g: &Dense) -> f64 {
    let comp = largest_component_oracle(g);
    let dist = floyd_warshall(g);
    let mut total = 0usize;
    let mut pairs = 0usize;
    for (i, &a) in comp.iter().enumerate() {
        for &b in &comp[i + 1..] {
            total += dist[a][b];
            pairs += 1;
        }
    }
    total as f64 / pairs as f64
}

pub fn clustering_oracle(g: &Dense) -> f64 {
    let mut locals = Vec::new();
    for v in 0..g.n {
        let nb = g.neighbors(v);
        if nb.len() < 2 {
            continue;
        }
        let mut closed = 0;
        let mut pairs = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                pairs += 1;
                if g.adj[a][b] {
                    closed += 1;
                }
            }
        }
        locals.push(closed as f64 / pairs as f64);
    }
    if locals.is_empty() {
        0.0
    } else {
        locals.iter().sum::<f64>() / locals.len() as f64
    }
}

pub fn bfs_row(g: &Dense, s: usize) -> Vec<usize> {
    let mut d = vec![INF; g.n];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for w in g.neighbors(v) {
            if d[w] == INF {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// Average ranks by counting: rank = #smaller + (#equal + 1) / 2.
pub fn rank_oracle(xs: &[f64]) -> Vec<f64> {
    xs.iter()
        .map(|&x| {
            let less = xs.iter().filter(|&&y| y < x).count() as f64;
            let equal = xs.iter().filter(|&&y| y == x).count() as f64;
            less + (equal + 1.0) / 2.0
        })
        .collect()
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(ys).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = xs.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

pub fn spearman_oracle(xs: &[f64], ys: &[f64]) -> f64 {
    pearson(&rank_oracle(xs), &rank_oracle(ys))
}

/// Random corpus of already-normalized records.
pub fn random_corpus<R: Rng>(rng: &mut R, papers: usize, pool: usize, years: (i32, i32), max_authors: usize) -> Vec<BiblioRecord> {
    (0..papers)
        .map(|i| {
            let k = rng.gen_range(1..=max_authors);
            let mut authors: Vec<String> = Vec::new();
            while authors.len() < k.min(pool) {
                let a = label(rng.gen_range(0..pool));
                if !authors.contains(&a) {
                    authors.push(a);
                }
            }
            let mut r = record(i, rng.gen_range(years.0..=years.1), &authors);
            r.times_cited = rng.gen_range(0..500);
            r
        })
        .collect()
}

/// Pair co-occurrence counts by scanning every record.
pub fn pair_counts(records: &[BiblioRecord]) -> BTreeMap<(String, String), u32> {
    let mut counts = BTreeMap::new();
    for r in records {
        let authors: BTreeSet<&String> = r.authors.iter().collect();
        let authors: Vec<&String> = authors.into_iter().collect();
        for i in 0..authors.len() {
            for j in i + 1..authors.len() {
                *counts.entry((authors[i].clone(), authors[j].clone())).or_insert(0) += 1;
            }
        }
    }
    counts
}
