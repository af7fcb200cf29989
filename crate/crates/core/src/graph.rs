//! Undirected coauthorship graph and its structural statistics.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ingest::{AuthorKey, BiblioRecord};

/// Index of a vertex. Vertices are numbered in ascending [`AuthorKey`] order.
pub type VertexId = usize;

pub(crate) const UNREACHED: u32 = u32::MAX;

/// Coauthorship graph. Edge weight counts the papers two authors share.
///
/// The representation is canonical: two graphs built from the same set of
/// records compare equal regardless of record order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoauthGraph {
    keys: Vec<AuthorKey>,
    adjacency: Vec<Vec<VertexId>>,
    edges: BTreeMap<(VertexId, VertexId), u32>,
    /// Papers per author.
    authorships: Vec<u32>,
    /// Papers whose smallest-key author is this vertex; summing over a
    /// component counts the component's papers exactly once.
    anchored_papers: Vec<u32>,
}

impl CoauthGraph {
    pub fn vertex_count(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn keys(&self) -> &[AuthorKey] {
        &self.keys
    }

    pub fn key(&self, v: VertexId) -> &AuthorKey {
        &self.keys[v]
    }

    pub fn index_of(&self, key: &str) -> Option<VertexId> {
        self.keys.binary_search_by(|k| k.as_str().cmp(key)).ok()
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn weight(&self, a: VertexId, b: VertexId) -> Option<u32> {
        self.edges.get(&(a.min(b), a.max(b))).copied()
    }

    /// Edges as `(a, b, weight)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.edges.iter().map(|(&(a, b), &w)| (a, b, w))
    }

    pub fn papers_of(&self, v: VertexId) -> u32 {
        self.authorships[v]
    }

    pub fn paper_count(&self) -> u64 {
        self.anchored_papers.iter().map(|&c| u64::from(c)).sum()
    }

    /// Total author-paper incidences.
    pub fn authorship_count(&self) -> u64 {
        self.authorships.iter().map(|&c| u64::from(c)).sum()
    }

    /// Vertex-induced subgraph on a whole connected component. Paper counts
    /// carry over because every paper lies inside a single component.
    pub fn component_subgraph(&self, partition: &ComponentPartition, id: usize) -> CoauthGraph {
        let members = partition.members(id);
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in members.iter().enumerate() {
            remap[old] = new;
        }
        let edges: BTreeMap<_, _> = self
            .edges
            .iter()
            .filter(|(&(a, _), _)| remap[a] != usize::MAX)
            .map(|(&(a, b), &w)| ((remap[a], remap[b]), w))
            .collect();
        CoauthGraph {
            keys: members.iter().map(|&v| self.keys[v].clone()).collect(),
            adjacency: adjacency_from_edges(members.len(), &edges),
            edges,
            authorships: members.iter().map(|&v| self.authorships[v]).collect(),
            anchored_papers: members.iter().map(|&v| self.anchored_papers[v]).collect(),
        }
    }
}

fn adjacency_from_edges(n: usize, edges: &BTreeMap<(VertexId, VertexId), u32>) -> Vec<Vec<VertexId>> {
    let mut adjacency = vec![Vec::new(); n];
    // lexicographic edge order leaves every list sorted
    for &(a, b) in edges.keys() {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    adjacency
}

/// Builds the coauthorship graph by clique expansion of each record's
/// author list. Author names must already be normalized and merged.
pub fn build_graph(records: &[BiblioRecord]) -> CoauthGraph {
    let names: BTreeSet<&str> = records.iter().flat_map(|r| r.authors.iter().map(String::as_str)).collect();
    let keys: Vec<AuthorKey> = names.iter().map(|n| AuthorKey::from_normalized(n)).collect();
    let n = keys.len();
    let mut authorships = vec![0u32; n];
    let mut anchored_papers = vec![0u32; n];
    let mut edges: BTreeMap<(VertexId, VertexId), u32> = BTreeMap::new();

    for r in records {
        let mut ids: Vec<VertexId> = r
            .authors
            .iter()
            .map(|a| keys.binary_search_by(|k| k.as_str().cmp(a)).expect("author indexed"))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let Some(&first) = ids.first() else { continue };
        anchored_papers[first] += 1;
        for (i, &a) in ids.iter().enumerate() {
            authorships[a] += 1;
            for &b in &ids[i + 1..] {
                *edges.entry((a, b)).or_default() += 1;
            }
        }
    }

    CoauthGraph {
        adjacency: adjacency_from_edges(n, &edges),
        keys,
        edges,
        authorships,
        anchored_papers,
    }
}

/// Assignment of vertices to connected components. Component 0 is the
/// largest; ties go to the component holding the smaller author key.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComponentPartition {
    assignment: Vec<usize>,
    sizes: Vec<usize>,
}

impl ComponentPartition {
    pub fn component_of(&self, v: VertexId) -> usize {
        self.assignment[v]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn members(&self, id: usize) -> Vec<VertexId> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == id)
            .map(|(v, _)| v)
            .collect()
    }
}

pub fn connected_components(g: &CoauthGraph) -> ComponentPartition {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    // scanning in vertex order labels components by their smallest member
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        label[start] = id;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in g.neighbors(v) {
                if label[w] == usize::MAX {
                    label[w] = id;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }

    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
    let mut rename = vec![0; sizes.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new;
    }
    ComponentPartition {
        assignment: label.iter().map(|&l| rename[l]).collect(),
        sizes: order.iter().map(|&old| sizes[old]).collect(),
    }
}

/// The largest component and its share of all vertices.
pub fn largest_component(g: &CoauthGraph) -> Result<(CoauthGraph, f64)> {
    if g.is_empty() {
        return Err(Error::domain("largest component of an empty graph"));
    }
    let partition = connected_components(g);
    let sub = g.component_subgraph(&partition, 0);
    let ratio = sub.vertex_count() as f64 / g.vertex_count() as f64;
    Ok((sub, ratio))
}

/// Breadth-first hop distances from `source` into `dist`, which must have
/// one slot per vertex. Unreached vertices hold [`UNREACHED`]. Returns the
/// visit order.
pub(crate) fn bfs(g: &CoauthGraph, source: VertexId, dist: &mut [u32], order: &mut Vec<VertexId>) {
    dist.fill(UNREACHED);
    order.clear();
    dist[source] = 0;
    order.push(source);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        let next = dist[v] + 1;
        for &w in g.neighbors(v) {
            if dist[w] == UNREACHED {
                dist[w] = next;
                order.push(w);
            }
        }
    }
}

/// Hop distances from `source` to every vertex reachable from it.
pub fn shortest_path_lengths(g: &CoauthGraph, source: &str) -> Result<BTreeMap<AuthorKey, u32>> {
    let s = g
        .index_of(source)
        .ok_or_else(|| Error::domain(format!("unknown vertex `{source}`")))?;
    let mut dist = vec![UNREACHED; g.vertex_count()];
    let mut order = Vec::new();
    bfs(g, s, &mut dist, &mut order);
    Ok(order.iter().map(|&v| (g.key(v).clone(), dist[v])).collect())
}

/// Mean hop distance over all vertex pairs of the largest component.
pub fn mean_distance(g: &CoauthGraph) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::domain("mean distance of an empty graph"));
    }
    let partition = connected_components(g);
    let members = partition.members(0);
    let n = members.len() as u64;
    if n < 2 {
        return Err(Error::domain("largest component has no vertex pairs"));
    }
    // integer totals keep the parallel reduction exact
    let total: u64 = members
        .par_iter()
        .map_init(
            || (vec![UNREACHED; g.vertex_count()], Vec::new()),
            |(dist, order), &s| {
                bfs(g, s, dist, order);
                order.iter().map(|&v| u64::from(dist[v])).sum::<u64>()
            },
        )
        .sum();
    Ok(total as f64 / (n * (n - 1)) as f64)
}

/// Fraction of a vertex's neighbor pairs that are adjacent, or `None` below
/// degree 2.
pub fn local_clustering(g: &CoauthGraph, v: VertexId) -> Option<f64> {
    let nbrs = g.neighbors(v);
    let k = nbrs.len();
    if k < 2 {
        return None;
    }
    let mut closed = 0u64;
    for (i, &a) in nbrs.iter().enumerate() {
        let adj_a = g.neighbors(a);
        closed += nbrs[i + 1..].iter().filter(|b| adj_a.binary_search(b).is_ok()).count() as u64;
    }
    let pairs = (k * (k - 1) / 2) as u64;
    Some(closed as f64 / pairs as f64)
}

/// Average local clustering over vertices of degree at least 2; 0 when
/// there are none.
pub fn clustering_coefficient(g: &CoauthGraph) -> f64 {
    let locals: Vec<f64> = (0..g.vertex_count())
        .into_par_iter()
        .filter_map(|v| local_clustering(g, v))
        .collect();
    if locals.is_empty() {
        0.0
    } else {
        locals.iter().sum::<f64>() / locals.len() as f64
    }
}

/// Whole-network summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStats {
    pub papers: u64,
    pub authors: u64,
    pub papers_per_author: f64,
    pub authors_per_paper: f64,
    pub avg_collaborators: f64,
    pub largest_component_ratio: f64,
    /// `None` when the largest component is a single vertex.
    pub mean_distance: Option<f64>,
    pub clustering_coefficient: f64,
}

/// Mean unweighted degree.
pub fn mean_degree(g: &CoauthGraph) -> f64 {
    if g.is_empty() {
        return 0.0;
    }
    2.0 * g.edge_count() as f64 / g.vertex_count() as f64
}

pub fn summary_stats(records: &[BiblioRecord], g: &CoauthGraph) -> Result<SummaryStats> {
    let papers = records.iter().filter(|r| !r.authors.is_empty()).count() as u64;
    if papers == 0 || g.is_empty() {
        return Err(Error::domain("summary statistics need at least one paper"));
    }
    let authorships: u64 = records
        .iter()
        .map(|r| r.authors.iter().collect::<BTreeSet<_>>().len() as u64)
        .sum();
    let authors = g.vertex_count() as u64;
    let (_, ratio) = largest_component(g)?;
    let mean_distance = match mean_distance(g) {
        Ok(d) => Some(d),
        Err(Error::Domain(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SummaryStats {
        papers,
        authors,
        papers_per_author: authorships as f64 / authors as f64,
        authors_per_paper: authorships as f64 / papers as f64,
        avg_collaborators: mean_degree(g),
        largest_component_ratio: ratio,
        mean_distance,
        clustering_coefficient: clustering_coefficient(g),
    })
}
