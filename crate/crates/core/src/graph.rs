//! Immutable simple undirected graphs with sorted adjacency.
//!
//! Vertices are contiguous `u32` ids. Every neighbourhood is a strictly
//! ascending slice, so intersections are linear merges and adjacency tests
//! are binary searches.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// Ascending, duplicate-free set of internal vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    /// Caller guarantees `members` is strictly ascending.
    pub(crate) fn from_sorted_unchecked(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn all(n: usize) -> Self {
        VertexSet((0..n as Vertex).collect())
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    /// Original id of each internal vertex, when the graph came from a file.
    labels: Option<Vec<u64>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            labels: None,
        }
    }

    /// Builds a graph on exactly `n` vertices. Self-loops are dropped and
    /// repeated or reversed edges collapse to one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: x as u64, n });
                }
            }
            if u == v {
                continue;
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        Ok(Self::from_adjacency(adjacency))
    }

    fn from_adjacency(mut adjacency: Vec<Vec<Vertex>>) -> Self {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Graph {
            offsets,
            targets,
            labels: None,
        }
    }

    /// Attaches original labels, one per vertex.
    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + Clone {
        0..self.n() as Vertex
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        let (small, other) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(small).binary_search(&other).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// Original label of `v`, or `v` itself for unlabelled graphs.
    pub fn label(&self, v: Vertex) -> u64 {
        match &self.labels {
            Some(l) => l[v as usize],
            None => v as u64,
        }
    }

    /// Reverse lookup from original label to internal id.
    pub fn label_index(&self) -> HashMap<u64, Vertex> {
        self.vertices().map(|v| (self.label(v), v)).collect()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v as u64,
                n: self.n(),
            })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.as_slice().last() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// Common neighbours of `u` and `v`.
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Result<VertexSet> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidArgument(format!(
                "common_neighbors needs two distinct vertices, got {u} twice"
            )));
        }
        let mut out = Vec::new();
        intersect_into(self.neighbors(u), self.neighbors(v), &mut out);
        Ok(VertexSet::from_sorted_unchecked(out))
    }

    /// Size of `N(u) ∩ N(v)` without allocating.
    pub fn codegree(&self, u: Vertex, v: Vertex) -> usize {
        intersection_size(self.neighbors(u), self.neighbors(v))
    }

    /// `G[S]`, relabelled to `0..|S|` in ascending order of `S`. The new
    /// graph's labels are the labels the members carried in `self`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        let members = s.as_slice();
        let mut adjacency = Vec::with_capacity(members.len());
        for &v in members {
            let mut row = Vec::new();
            // Both lists ascending, so positions in `members` come out ascending.
            let (mut i, mut j) = (0, 0);
            let nb = self.neighbors(v);
            while i < nb.len() && j < members.len() {
                match nb[i].cmp(&members[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        row.push(j as Vertex);
                        i += 1;
                        j += 1;
                    }
                }
            }
            adjacency.push(row);
        }
        let labels = members.iter().map(|&v| self.label(v)).collect();
        let g = Graph::from_adjacency(adjacency);
        Ok(Graph {
            labels: Some(labels),
            ..g
        })
    }

    /// Writes the edge-list text format: a `# Nodes: n Edges: m` header and
    /// one `u v` line per edge over internal ids, ascending.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# Nodes: {} Edges: {}", self.n(), self.m())?;
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }
}

/// Parses a whitespace-separated edge list.
///
/// Ids are remapped to `0..n` in order of first appearance and the original
/// ids are kept as labels. Lines starting with `#` are comments. When a
/// `# Nodes: N ...` header is present and every id seen is below `N`, the ids
/// in `0..N` that never occur in an edge are appended as isolated vertices,
/// which lets files written by [`Graph::write_edge_list`] keep isolated
/// vertices.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut index: HashMap<u64, Vertex> = HashMap::new();
    let mut labels: Vec<u64> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut declared_nodes: Option<u64> = None;

    let mut intern = |id: u64, labels: &mut Vec<u64>| -> Vertex {
        *index.entry(id).or_insert_with(|| {
            labels.push(id);
            (labels.len() - 1) as Vertex
        })
    };

    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| match e.kind() {
            std::io::ErrorKind::InvalidData => Error::Parse {
                line: lineno,
                message: "input is not valid UTF-8".into(),
            },
            _ => Error::Io(e),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if declared_nodes.is_none() {
                declared_nodes = parse_nodes_header(comment);
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut endpoint = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected two vertex ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("`{tok}` is not a nonnegative integer"),
            })
        };
        let a = endpoint()?;
        let b = endpoint()?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("unexpected third token `{extra}`"),
            });
        }
        let u = intern(a, &mut labels);
        let v = intern(b, &mut labels);
        edges.push((u, v));
    }

    if let Some(declared) = declared_nodes {
        let seen = labels.len() as u64;
        if declared > seen && labels.iter().all(|&l| l < declared) {
            let present: std::collections::HashSet<u64> = labels.iter().copied().collect();
            for id in 0..declared {
                if !present.contains(&id) {
                    labels.push(id);
                }
            }
        }
    }

    Graph::from_edges(labels.len(), edges)?.with_labels(labels)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    load_edge_list(text.as_bytes())
}

pub fn load_edge_list_path<P: AsRef<std::path::Path>>(path: P) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    load_edge_list(std::io::BufReader::new(file))
}

fn parse_nodes_header(comment: &str) -> Option<u64> {
    let mut tokens = comment.split_whitespace();
    while let Some(tok) = tokens.next() {
        if tok.eq_ignore_ascii_case("nodes:") {
            return tokens.next()?.parse().ok();
        }
    }
    None
}

/// Appends `a ∩ b` (both ascending) to `out`.
pub(crate) fn intersect_into(a: &[Vertex], b: &[Vertex], out: &mut Vec<Vertex>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

pub(crate) fn intersection_size(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                k += 1;
                i += 1;
                j += 1;
            }
        }
    }
    k
}

/// Number of connected components, isolated vertices included.
pub fn connected_components(g: &Graph) -> usize {
    let mut seen = vec![false; g.n()];
    let mut stack = Vec::new();
    let mut count = 0;
    for s in g.vertices() {
        if seen[s as usize] {
            continue;
        }
        count += 1;
        seen[s as usize] = true;
        stack.push(s);
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// Length of the shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![Vertex::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in g.vertices() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s as usize] = 0;
        parent[s as usize] = Vertex::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            if let Some(b) = best {
                if 2 * dx + 1 >= b {
                    break;
                }
            }
            for &y in g.neighbors(x) {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dx + 1;
                    parent[y as usize] = x;
                    queue.push_back(y);
                } else if parent[x as usize] != y {
                    let len = dx + dist[y as usize] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}
