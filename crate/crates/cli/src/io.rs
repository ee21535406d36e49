//! Text formats: edge lists, per-vertex value files and publication lists.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use cfsp_core::Graph;

/// Original vertex IDs in sorted order; index `i` is compact vertex `i`.
#[derive(Clone, Debug)]
pub struct IdMap {
    ids: Vec<u64>,
}

impl IdMap {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn original(&self, v: usize) -> u64 {
        self.ids[v]
    }

    pub fn compact(&self, id: u64) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }
}

#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub ids: IdMap,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        (!line.is_empty() && !line.starts_with('#')).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn parse<T: FromStr>(token: &str, what: &str, path: &Path, line: usize) -> Result<T> {
    token.parse().map_err(|_| anyhow!("{}:{line}: cannot parse {what} {token:?}", path.display()))
}

/// Parses `u v [w]` lines. Without `weighted` a third column is an error and
/// repeated pairs keep weight 1; with it, repeated pairs sum.
pub fn parse_edge_list(text: &str, weighted: bool, path: &Path) -> Result<LoadedGraph> {
    let mut raw: Vec<(u64, u64, f64, usize)> = Vec::new();
    for (line, tokens) in records(text) {
        let w = match (tokens.len(), weighted) {
            (2, false) => 1.0,
            (3, true) => parse::<f64>(tokens[2], "weight", path, line)?,
            (2, true) => bail!("{}:{line}: expected \"u v w\" in a weighted edge list", path.display()),
            (3, false) => bail!("{}:{line}: weight column in an unweighted edge list (use --weighted)", path.display()),
            _ => bail!("{}:{line}: expected \"u v [w]\", found {} fields", path.display(), tokens.len()),
        };
        let u = parse::<u64>(tokens[0], "vertex id", path, line)?;
        let v = parse::<u64>(tokens[1], "vertex id", path, line)?;
        if u == v {
            bail!("{}:{line}: self-loop on vertex {u}", path.display());
        }
        if !(w.is_finite() && w >= 0.0) {
            bail!("{}:{line}: weight must be finite and non-negative, found {w}", path.display());
        }
        raw.push((u, v, w, line));
    }
    let ids: Vec<u64> = raw.iter().flat_map(|e| [e.0, e.1]).collect::<BTreeSet<_>>().into_iter().collect();
    let ids = IdMap { ids };
    let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (u, v, w, _) in raw {
        let (a, b) = (ids.compact(u).unwrap(), ids.compact(v).unwrap());
        let key = (a.min(b), a.max(b));
        if weighted {
            *merged.entry(key).or_insert(0.0) += w;
        } else {
            merged.insert(key, 1.0);
        }
    }
    let graph = Graph::from_edges(ids.len(), merged.into_iter().map(|((a, b), w)| (a, b, w)))
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok(LoadedGraph { graph, ids })
}

pub fn load_edge_list(path: &Path, weighted: bool) -> Result<LoadedGraph> {
    parse_edge_list(&read(path)?, weighted, path)
}

/// Per-vertex values: either one value per line in compact (sorted ID)
/// order, or `id value` lines covering every vertex.
pub fn parse_vertex_values<T>(text: &str, ids: &IdMap, path: &Path) -> Result<Vec<T>>
where
    T: FromStr + Copy,
{
    let rows: Vec<(usize, Vec<&str>)> = records(text).collect();
    let n = ids.len();
    if rows.iter().all(|(_, t)| t.len() == 1) {
        if rows.len() != n {
            bail!("{}: expected {n} values, found {}", path.display(), rows.len());
        }
        return rows.iter().map(|(line, t)| parse(t[0], "value", path, *line)).collect();
    }
    let mut out: Vec<Option<T>> = vec![None; n];
    for (line, t) in &rows {
        if t.len() != 2 {
            bail!("{}:{line}: expected \"id value\"", path.display());
        }
        let id: u64 = parse(t[0], "vertex id", path, *line)?;
        let value: T = parse(t[1], "value", path, *line)?;
        // ids absent from the graph are ignored
        if let Some(v) = ids.compact(id) {
            if out[v].is_some() {
                bail!("{}:{line}: vertex {id} listed twice", path.display());
            }
            out[v] = Some(value);
        }
    }
    out.iter()
        .enumerate()
        .map(|(v, x)| x.ok_or_else(|| anyhow!("{}: no value for vertex {}", path.display(), ids.original(v))))
        .collect()
}

pub fn load_weights(path: &Path, ids: &IdMap) -> Result<Vec<f64>> {
    let w: Vec<f64> = parse_vertex_values(&read(path)?, ids, path)?;
    if let Some(x) = w.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
        bail!("{}: vertex weights must be finite and non-negative, found {x}", path.display());
    }
    Ok(w)
}

pub fn load_attribute(path: &Path, ids: &IdMap) -> Result<Vec<u32>> {
    parse_vertex_values(&read(path)?, ids, path)
}

/// One publication per line, whitespace-separated author IDs.
pub fn parse_publications(text: &str, path: &Path) -> Result<Vec<Vec<u64>>> {
    records(text)
        .map(|(line, t)| t.iter().map(|a| parse::<u64>(a, "author id", path, line)).collect())
        .collect()
}

pub fn load_publications(path: &Path) -> Result<Vec<Vec<u64>>> {
    parse_publications(&read(path)?, path)
}

/// `u v w` lines with original IDs, `u < v`.
pub fn write_edge_list(out: &mut impl Write, g: &Graph, ids: &IdMap) -> std::io::Result<()> {
    for e in g.edges() {
        let (a, b) = (ids.original(e.u), ids.original(e.v));
        writeln!(out, "{} {} {}", a.min(b), a.max(b), e.weight)?;
    }
    Ok(())
}

/// Compacts author IDs over all publications.
pub fn author_ids(publications: &[Vec<u64>]) -> IdMap {
    IdMap { ids: publications.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect() }
}
