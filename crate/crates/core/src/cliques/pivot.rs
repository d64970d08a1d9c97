//! Pivoting Bron–Kerbosch (Tomita–Tanaka–Takahashi pivot rule) on dense
//! bitset subgraphs, plus a degeneracy-ordered driver for whole graphs.

use rayon::prelude::*;

use super::forest::{CliqueForest, DfsPathInserter};
use crate::graph::{Graph, Vertex};

/// Adjacency bit matrix over a small vertex list. Pairs of vertices that
/// both lie at or after `tail` are left unset; the search never reads them.
struct Dense {
    words: usize,
    rows: Vec<u64>,
}

impl Dense {
    fn build(g: &Graph, verts: &[Vertex], tail: usize) -> Self {
        let k = verts.len();
        let words = k.div_ceil(64).max(1);
        let mut rows = vec![0u64; k * words];
        for i in 0..tail.min(k) {
            for j in i + 1..k {
                if g.is_adjacent(verts[i], verts[j]) {
                    rows[i * words + j / 64] |= 1 << (j % 64);
                    rows[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        Dense { words, rows }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }
}

fn is_empty(s: &[u64]) -> bool {
    s.iter().all(|&w| w == 0)
}

fn and_count(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

fn ones(s: &[u64]) -> impl Iterator<Item = usize> + '_ {
    s.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}

/// Recursion state; `r` holds global ids in insertion order.
struct Search<'a, F: FnMut(&[Vertex])> {
    dense: &'a Dense,
    verts: &'a [Vertex],
    r: Vec<Vertex>,
    emit: F,
}

impl<F: FnMut(&[Vertex])> Search<'_, F> {
    fn expand(&mut self, p: &mut [u64], x: &mut [u64]) {
        if is_empty(p) {
            if is_empty(x) {
                (self.emit)(&self.r);
            }
            return;
        }
        let dense = self.dense;
        let pivot = ones(p)
            .chain(ones(x))
            .max_by_key(|&u| (and_count(p, dense.row(u)), std::cmp::Reverse(u)))
            .expect("p is non-empty");
        let branch: Vec<usize> = p
            .iter()
            .zip(dense.row(pivot))
            .enumerate()
            .flat_map(|(wi, (&pw, &nw))| {
                let mut w = pw & !nw;
                std::iter::from_fn(move || {
                    if w == 0 {
                        return None;
                    }
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                })
            })
            .collect();
        for w in branch {
            let nw = dense.row(w);
            let mut p2: Vec<u64> = p.iter().zip(nw).map(|(a, b)| a & b).collect();
            let mut x2: Vec<u64> = x.iter().zip(nw).map(|(a, b)| a & b).collect();
            self.r.push(self.verts[w]);
            self.expand(&mut p2, &mut x2);
            self.r.pop();
            p[w / 64] &= !(1 << (w % 64));
            x[w / 64] |= 1 << (w % 64);
        }
    }
}

/// Maximal cliques of `G[candidates ∪ excluded]` that contain `prefix`,
/// avoid `excluded`, and are maximal with `excluded` taken into account.
/// `prefix` must be adjacent to every candidate and excluded vertex.
/// Cliques are emitted as `prefix` followed by the branch order.
pub(crate) fn enumerate_local<F: FnMut(&[Vertex])>(
    g: &Graph,
    prefix: &[Vertex],
    candidates: &[Vertex],
    excluded: &[Vertex],
    emit: F,
) {
    let verts: Vec<Vertex> = candidates.iter().chain(excluded).copied().collect();
    let dense = Dense::build(g, &verts, candidates.len());
    let mut p = vec![0u64; dense.words];
    let mut x = vec![0u64; dense.words];
    for i in 0..candidates.len() {
        p[i / 64] |= 1 << (i % 64);
    }
    for i in candidates.len()..verts.len() {
        x[i / 64] |= 1 << (i % 64);
    }
    let mut search = Search {
        dense: &dense,
        verts: &verts,
        r: prefix.to_vec(),
        emit,
    };
    search.expand(&mut p, &mut x);
}

/// Maximal cliques of `G[s]`, each in branch order.
pub fn maximal_cliques_of_subset(g: &Graph, s: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    enumerate_local(g, &[], s, &[], |k| out.push(k.to_vec()));
    out
}

/// Smallest-last (degeneracy) ordering: repeatedly remove a vertex of
/// minimum remaining degree, smallest id first.
pub fn degeneracy_ordering(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let max = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<std::collections::BTreeSet<Vertex>> = vec![Default::default(); max + 1];
    for v in g.vertices() {
        buckets[deg[v as usize]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut lo: usize = 0;
    for _ in 0..n {
        // removals lower neighbour degrees by one, so the minimum drops by at most one
        lo = lo.saturating_sub(1);
        while buckets[lo].is_empty() {
            lo += 1;
        }
        let v = buckets[lo].pop_first().expect("non-empty bucket");
        removed[v as usize] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w as usize] {
                let d = &mut deg[w as usize];
                buckets[*d].remove(&w);
                *d -= 1;
                buckets[*d].insert(w);
            }
        }
    }
    order
}

fn per_vertex_subproblems(g: &Graph) -> Vec<(Vertex, Vec<Vertex>, Vec<Vertex>)> {
    let order = degeneracy_ordering(g);
    let mut position = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v as usize] = i;
    }
    order
        .iter()
        .map(|&v| {
            let (later, earlier): (Vec<Vertex>, Vec<Vertex>) = g
                .neighbors(v)
                .iter()
                .partition(|&&w| position[w as usize] > position[v as usize]);
            (v, later, earlier)
        })
        .collect()
}

/// All maximal cliques of `g` as a forest, one tree per degeneracy-order
/// vertex that starts at least one clique.
pub fn cliques_pivot(g: &Graph) -> CliqueForest {
    let subproblems = per_vertex_subproblems(g);
    let batches: Vec<Vec<Vec<Vertex>>> = subproblems
        .par_iter()
        .map(|(v, later, earlier)| {
            let mut out = Vec::new();
            enumerate_local(g, &[*v], later, earlier, |k| out.push(k.to_vec()));
            out
        })
        .collect();
    let mut forest = CliqueForest::new();
    for batch in batches {
        let mut ins = DfsPathInserter::new(None);
        for path in batch {
            ins.insert(&mut forest, &path);
        }
    }
    forest
}

/// Number of maximal cliques without building the forest.
pub fn count_pivot(g: &Graph) -> u64 {
    per_vertex_subproblems(g)
        .par_iter()
        .map(|(v, later, earlier)| {
            let mut c = 0u64;
            enumerate_local(g, &[*v], later, earlier, |_| c += 1);
            c
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn complete_graph_has_one_clique() {
        let f = cliques_pivot(&generators::complete(5));
        assert_eq!(f.leaf_count(), 1);
        assert_eq!(f.paths()[0].len(), 5);
    }

    #[test]
    fn moon_moser_count() {
        let g = generators::moon_moser(9).unwrap();
        assert_eq!(count_pivot(&g), 27);
        assert_eq!(cliques_pivot(&g).to_clique_set().len(), 27);
    }

    #[test]
    fn isolated_vertices_are_singletons() {
        let g = Graph::empty(6);
        assert_eq!(count_pivot(&g), 6);
        assert_eq!(cliques_pivot(&g).leaf_count(), 6);
    }

    #[test]
    fn subset_enumeration() {
        let g = generators::moon_moser(6).unwrap();
        // parts {0,1,2} and {3,4,5}; the subset {0,1,3} spans edges 0-3, 1-3
        let mut cl = maximal_cliques_of_subset(&g, &[0, 1, 3]);
        cl.iter_mut().for_each(|k| k.sort());
        cl.sort();
        assert_eq!(cl, vec![vec![0, 3], vec![1, 3]]);
        assert!(maximal_cliques_of_subset(&g, &[]).len() == 1);
    }

    #[test]
    fn wide_subsets_cross_word_boundaries() {
        // K_70 needs two words per row
        let g = generators::complete(70);
        let all: Vec<Vertex> = g.vertices().collect();
        let cl = maximal_cliques_of_subset(&g, &all);
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].len(), 70);
    }

    #[test]
    fn degeneracy_order_is_permutation() {
        let g = generators::petersen();
        let mut o = degeneracy_ordering(&g);
        o.sort();
        assert_eq!(o, (0..10).collect::<Vec<_>>());
    }
}
