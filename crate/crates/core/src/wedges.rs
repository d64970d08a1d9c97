//! Wedges (induced 2-paths) and the per-endpoint index over them.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Induced 2-path `end_u - center - end_v` with `end_u < end_v` and the
/// endpoints non-adjacent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wedge {
    pub end_u: Vertex,
    pub center: Vertex,
    pub end_v: Vertex,
}

#[derive(Debug, Clone, Copy)]
struct Group {
    other: Vertex,
    start: usize,
    len: usize,
}

/// For each vertex, its wedges grouped by the opposite endpoint. Every wedge
/// is referenced from both of its endpoints.
#[derive(Debug, Clone)]
pub struct WedgeIndex {
    group_offsets: Vec<usize>,
    groups: Vec<Group>,
    centers: Vec<Vertex>,
}

pub fn enumerate_wedges(g: &Graph) -> WedgeIndex {
    let per_vertex: Vec<Vec<(Vertex, Vertex)>> = g
        .vertices()
        .collect::<Vec<_>>()
        .par_iter()
        .map_init(
            || vec![false; g.n()],
            |is_nb, &v| {
                for &w in g.neighbors(v) {
                    is_nb[w as usize] = true;
                }
                let mut pairs = Vec::new();
                for &w in g.neighbors(v) {
                    for &u in g.neighbors(w) {
                        if u != v && !is_nb[u as usize] {
                            pairs.push((u, w));
                        }
                    }
                }
                for &w in g.neighbors(v) {
                    is_nb[w as usize] = false;
                }
                pairs.sort_unstable();
                pairs
            },
        )
        .collect();

    let mut group_offsets = Vec::with_capacity(g.n() + 1);
    let mut groups = Vec::new();
    let mut centers = Vec::with_capacity(per_vertex.iter().map(Vec::len).sum());
    group_offsets.push(0);
    for pairs in per_vertex {
        for chunk in pairs.chunk_by(|a, b| a.0 == b.0) {
            groups.push(Group {
                other: chunk[0].0,
                start: centers.len(),
                len: chunk.len(),
            });
            centers.extend(chunk.iter().map(|&(_, w)| w));
        }
        group_offsets.push(groups.len());
    }
    WedgeIndex {
        group_offsets,
        groups,
        centers,
    }
}

impl WedgeIndex {
    fn groups_of(&self, v: Vertex) -> &[Group] {
        let v = v as usize;
        &self.groups[self.group_offsets[v]..self.group_offsets[v + 1]]
    }

    /// `(other endpoint, centres)` for every wedge with `v` as an endpoint,
    /// ascending by other endpoint; centres ascending.
    pub fn by_endpoint(&self, v: Vertex) -> impl Iterator<Item = (Vertex, &[Vertex])> + '_ {
        self.groups_of(v)
            .iter()
            .map(move |grp| (grp.other, &self.centers[grp.start..grp.start + grp.len]))
    }

    /// Centres of the wedges joining `v` and `u`, empty when there are none.
    pub fn centers_between(&self, v: Vertex, u: Vertex) -> &[Vertex] {
        let groups = self.groups_of(v);
        match groups.binary_search_by_key(&u, |grp| grp.other) {
            Ok(i) => &self.centers[groups[i].start..groups[i].start + groups[i].len],
            Err(_) => &[],
        }
    }

    pub fn wedge_count(&self) -> usize {
        self.centers.len() / 2
    }

    /// Number of stored endpoint references, twice the wedge count.
    pub fn reference_count(&self) -> usize {
        self.centers.len()
    }

    /// Canonical wedges, sorted by `(end_u, center, end_v)`.
    pub fn wedges(&self) -> Vec<Wedge> {
        let n = self.group_offsets.len() - 1;
        let mut out = Vec::with_capacity(self.wedge_count());
        for v in 0..n as Vertex {
            for (u, cs) in self.by_endpoint(v).filter(|(u, _)| *u > v) {
                out.extend(cs.iter().map(|&c| Wedge {
                    end_u: v,
                    center: c,
                    end_v: u,
                }));
            }
        }
        out.sort_unstable();
        out
    }

    /// Tab-separated `end_u center end_v` lines over internal ids, sorted.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for w in self.wedges() {
            writeln!(out, "{}\t{}\t{}", w.end_u, w.center, w.end_v)?;
        }
        Ok(())
    }
}

/// `N(u) ∩ N(v)` for a non-adjacent pair, read from the wedge index.
pub fn co_neighborhood_of(idx: &WedgeIndex, g: &Graph, v: Vertex, u: Vertex) -> Result<VertexSet> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidArgument(format!(
            "co-neighbourhood needs two distinct vertices, got {u} twice"
        )));
    }
    if g.is_adjacent(u, v) {
        return Err(Error::AdjacentPair { u, v });
    }
    Ok(VertexSet::from_sorted_unchecked(
        idx.centers_between(v, u).to_vec(),
    ))
}

/// Triangle count by forward intersection over ascending ids.
pub fn triangle_count(g: &Graph) -> u64 {
    g.vertices()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&u| {
            let nu = g.neighbors(u);
            let hi = &nu[nu.partition_point(|&x| x <= u)..];
            hi.iter()
                .map(|&v| {
                    let nv = g.neighbors(v);
                    let above = &nv[nv.partition_point(|&x| x <= v)..];
                    crate::graph::intersection_size(hi, above) as u64
                })
                .sum::<u64>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn counts_on_small_families() {
        assert_eq!(enumerate_wedges(&generators::complete(6)).wedge_count(), 0);
        let c5 = generators::cycle(5).unwrap();
        let idx = enumerate_wedges(&c5);
        assert_eq!(idx.wedge_count(), 5);
        assert_eq!(idx.reference_count(), 10);
        assert_eq!(co_neighborhood_of(&idx, &c5, 0, 2).unwrap().as_slice(), &[1]);
        assert_eq!(enumerate_wedges(&generators::petersen()).wedge_count(), 30);
    }

    #[test]
    fn clique_minus_edge_pair() {
        let g = generators::clique_minus_edge(5).unwrap();
        let idx = enumerate_wedges(&g);
        assert_eq!(
            co_neighborhood_of(&idx, &g, 3, 4).unwrap().as_slice(),
            &[0, 1, 2]
        );
        assert!(matches!(
            co_neighborhood_of(&idx, &g, 0, 1),
            Err(Error::AdjacentPair { .. })
        ));
    }

    #[test]
    fn canonical_orientation_and_tsv() {
        let c5 = generators::cycle(5).unwrap();
        let ws = enumerate_wedges(&c5).wedges();
        assert!(ws.iter().all(|w| w.end_u < w.end_v));
        let mut buf = Vec::new();
        enumerate_wedges(&c5).write_tsv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next(), Some("0\t1\t2"));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn triangles() {
        assert_eq!(triangle_count(&generators::complete(5)), 10);
        assert_eq!(triangle_count(&generators::petersen()), 0);
    }
}
