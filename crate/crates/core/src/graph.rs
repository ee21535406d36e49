//! Immutable weighted undirected graphs and the set primitives built on them.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    /// Smaller endpoint.
    pub u: usize,
    /// Larger endpoint.
    pub v: usize,
    pub weight: f64,
}

/// Undirected graph with non-negative weights, stored once per edge.
///
/// Duplicate edges are merged by summing weights, zero-weight edges are
/// dropped and self-loops are rejected, so `assoc(C)` is exactly twice the
/// internal edge weight of `C`.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    degree: Vec<f64>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl Graph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::Invalid("edge endpoint out of range"));
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if !w.is_finite() {
                return Err(Error::Invalid("edge weight is not finite"));
            }
            if w < 0.0 {
                return Err(Error::NegativeWeight { u: a, v: b, weight: w });
            }
            *merged.entry((a.min(b), a.max(b))).or_insert(0.0) += w;
        }
        let edges: Vec<Edge> = merged
            .into_iter()
            .filter(|&(_, w)| w > 0.0)
            .map(|((u, v), weight)| Edge { u, v, weight })
            .collect();
        let mut degree = vec![0.0; n];
        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            degree[e.u] += e.weight;
            degree[e.v] += e.weight;
            adjacency[e.u].push((e.v, e.weight));
            adjacency[e.v].push((e.u, e.weight));
        }
        Ok(Graph { n, edges, degree, adjacency })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), degree: vec![0.0; n], adjacency: vec![Vec::new(); n] }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn degree(&self) -> &[f64] {
        &self.degree
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    /// `vol_d(V)`, twice the total edge weight.
    pub fn total_volume(&self) -> f64 {
        self.degree.iter().sum()
    }

    /// Induced subgraph on `keep`; vertex `keep[i]` becomes vertex `i`.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut position = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            position[v] = i;
        }
        let edges = self.edges.iter().filter_map(|e| {
            let (a, b) = (position[e.u], position[e.v]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b, e.weight))
        });
        // endpoints are distinct and in range, weights already validated
        Graph::from_edges(keep.len(), edges).expect("induced subgraph of a valid graph")
    }
}

/// Per-vertex non-negative weights (the `g` and `h` of generalized volumes).
#[derive(Clone, Debug, PartialEq)]
pub struct VertexWeights(Vec<f64>);

impl VertexWeights {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Invalid("vertex weights must be finite and non-negative"));
        }
        Ok(VertexWeights(values))
    }

    pub fn ones(n: usize) -> Self {
        VertexWeights(vec![1.0; n])
    }

    pub fn degrees(g: &Graph) -> Self {
        VertexWeights(g.degree().to_vec())
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for VertexWeights {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Membership mask of length `n` for the listed vertices.
pub fn mask(n: usize, members: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in members {
        m[v] = true;
    }
    m
}

/// Sorted member list of a mask.
pub fn members(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter_map(|(i, &b)| b.then_some(i)).collect()
}

/// `cut(C, V\C)`: weight of edges with exactly one endpoint in `set`.
pub fn cut_value(g: &Graph, set: &[bool]) -> f64 {
    g.edges.iter().filter(|e| set[e.u] != set[e.v]).map(|e| e.weight).sum()
}

/// `assoc(C)`: ordered-pair internal weight, twice the internal edge weight.
pub fn assoc_value(g: &Graph, set: &[bool]) -> f64 {
    2.0 * g.edges.iter().filter(|e| set[e.u] && set[e.v]).map(|e| e.weight).sum::<f64>()
}

/// `cut(A, B)` for disjoint `A`, `B`.
pub fn cut_between(g: &Graph, a: &[bool], b: &[bool]) -> f64 {
    g.edges
        .iter()
        .filter(|e| (a[e.u] && b[e.v]) || (a[e.v] && b[e.u]))
        .map(|e| e.weight)
        .sum()
}

/// `vol_w(C) = sum of w_i over C`.
pub fn volume(weights: &[f64], set: &[bool]) -> f64 {
    weights.iter().zip(set).filter(|(_, &b)| b).map(|(w, _)| w).sum()
}

/// Result of [`restrict_ball`]: the subgraph and the id maps in both directions.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub graph: Graph,
    /// `to_original[new] = old`.
    pub to_original: Vec<usize>,
    /// `from_original[old] = Some(new)` for retained vertices.
    pub from_original: Vec<Option<usize>>,
}

impl Restriction {
    pub fn map_weights(&self, weights: &[f64]) -> Vec<f64> {
        self.to_original.iter().map(|&v| weights[v]).collect()
    }
}

/// Induced subgraph on the vertices within `radius` hops of `seeds`.
///
/// When `filter = Some((attribute, min))`, non-seed vertices with
/// `attribute[v] < min` are dropped. Distances are measured in the full graph.
pub fn restrict_ball(
    g: &Graph,
    seeds: &[usize],
    radius: usize,
    filter: Option<(&[u32], u32)>,
) -> Result<Restriction> {
    if seeds.is_empty() {
        return Err(Error::Invalid("seed set is empty"));
    }
    if seeds.iter().any(|&s| s >= g.n) {
        return Err(Error::Invalid("seed vertex out of range"));
    }
    if let Some((attr, _)) = filter {
        if attr.len() != g.n {
            return Err(Error::Invalid("attribute vector length differs from vertex count"));
        }
    }
    let mut dist = vec![usize::MAX; g.n];
    let mut queue = VecDeque::new();
    for &s in seeds {
        if dist[s] == usize::MAX {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        if dist[u] == radius {
            continue;
        }
        for &(v, _) in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let keep: Vec<usize> = (0..g.n)
        .filter(|&v| {
            dist[v] != usize::MAX
                && (dist[v] == 0 || filter.is_none_or(|(attr, min)| attr[v] >= min))
        })
        .collect();
    if keep.is_empty() {
        return Err(Error::Invalid("restriction left no vertices"));
    }
    let mut from_original = vec![None; g.n];
    for (i, &v) in keep.iter().enumerate() {
        from_original[v] = Some(i);
    }
    Ok(Restriction { graph: g.induced_subgraph(&keep), to_original: keep, from_original })
}

/// Co-authorship graph: `w_ij = sum over shared publications l of 1/|A_l|`.
///
/// Repeated authors within one publication are counted once.
pub fn coauthor_graph(num_authors: usize, publications: &[Vec<usize>]) -> Result<Graph> {
    let mut edges = Vec::new();
    for authors in publications {
        let mut a = authors.clone();
        a.sort_unstable();
        a.dedup();
        if a.is_empty() {
            return Err(Error::Invalid("publication without authors"));
        }
        if a.iter().any(|&x| x >= num_authors) {
            return Err(Error::Invalid("author id out of range"));
        }
        let w = 1.0 / a.len() as f64;
        for (i, &x) in a.iter().enumerate() {
            for &y in &a[i + 1..] {
                edges.push((x, y, w));
            }
        }
    }
    Graph::from_edges(num_authors, edges)
}
