//! Closure-parameterized maximal clique enumeration.
//!
//! Vertices are peeled in the supplied order; iteratively this means the
//! suffix graphs are rebuilt from the back, adding one vertex `v` per step.
//! Each step keeps the current forest and
//!
//! * hangs `v` below every leaf whose clique lies inside `N(v)`,
//! * for every surviving non-neighbour `u`, enumerates the maximal cliques
//!   of `G[N(u) ∩ N(v)]` (read off the wedge index) and roots each under a
//!   fresh `v` node.
//!
//! Superset mode keeps every such clique. Exact mode passes the rest of
//! `N(v)` to the subcall as an excluded set, so only cliques that stay
//! maximal in the current suffix graph come back; the forest is then exact
//! after every step and hanging `v` below a leaf can never repeat a
//! type-3 clique.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;

use super::forest::{CliqueForest, CliqueSet, DfsPathInserter, NodeId};
use super::pivot::enumerate_local;
use crate::closure::check_permutation;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::wedges::{enumerate_wedges, WedgeIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Superset,
    Exact,
}

#[derive(Debug, Clone)]
pub struct CClosedOptions {
    pub mode: Mode,
    /// Largest common neighbourhood handed to the pivot subcall.
    pub max_subcall: usize,
    /// Keep every type-3 emission in [`RunStats::type3`].
    pub record_type3: bool,
    pub deadline: Option<Instant>,
}

impl Default for CClosedOptions {
    fn default() -> Self {
        CClosedOptions {
            mode: Mode::Exact,
            max_subcall: 40,
            record_type3: false,
            deadline: None,
        }
    }
}

/// A clique produced from the common neighbourhood of `v` and `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type3Emission {
    pub v: Vertex,
    pub u: Vertex,
    /// Clique members other than `v`, ascending.
    pub members: Vec<Vertex>,
}

#[derive(Debug, Clone, Default)]
pub struct RunStats {
    pub subcalls: u64,
    pub largest_subcall: usize,
    pub type2_extensions: u64,
    pub type3_kept: u64,
    pub type3_duplicates: u64,
    pub type3: Vec<Type3Emission>,
}

#[derive(Debug, Clone)]
pub struct CClosedRun {
    pub forest: CliqueForest,
    pub stats: RunStats,
}

pub fn cclosed_cliques_superset(g: &Graph, ordering: &[Vertex]) -> Result<CliqueForest> {
    let opts = CClosedOptions {
        mode: Mode::Superset,
        ..Default::default()
    };
    Ok(run(g, ordering, &opts)?.forest)
}

pub fn cclosed_cliques_exact(g: &Graph, ordering: &[Vertex]) -> Result<CliqueSet> {
    Ok(run(g, ordering, &CClosedOptions::default())?.forest.to_clique_set())
}

pub fn run(g: &Graph, ordering: &[Vertex], opts: &CClosedOptions) -> Result<CClosedRun> {
    check_permutation(g, ordering)?;
    let idx = enumerate_wedges(g);
    Engine::new(g, &idx, opts).run(ordering)
}

/// Same as [`run`] with a prebuilt wedge index.
pub fn run_with_index(
    g: &Graph,
    idx: &WedgeIndex,
    ordering: &[Vertex],
    opts: &CClosedOptions,
) -> Result<CClosedRun> {
    check_permutation(g, ordering)?;
    Engine::new(g, idx, opts).run(ordering)
}

struct Engine<'a> {
    g: &'a Graph,
    idx: &'a WedgeIndex,
    opts: &'a CClosedOptions,
    forest: CliqueForest,
    roots_by_vertex: Vec<Vec<NodeId>>,
    alive: Vec<bool>,
    in_nbhd: Vec<bool>,
    stats: RunStats,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Graph, idx: &'a WedgeIndex, opts: &'a CClosedOptions) -> Self {
        Engine {
            g,
            idx,
            opts,
            forest: CliqueForest::new(),
            roots_by_vertex: vec![Vec::new(); g.n()],
            alive: vec![false; g.n()],
            in_nbhd: vec![false; g.n()],
            stats: RunStats::default(),
        }
    }

    fn run(mut self, ordering: &[Vertex]) -> Result<CClosedRun> {
        for &v in ordering.iter().rev() {
            if let Some(d) = self.opts.deadline {
                if Instant::now() >= d {
                    return Err(Error::BudgetExceeded("clique enumeration".into()));
                }
            }
            self.step(v)?;
        }
        Ok(CClosedRun {
            forest: self.forest,
            stats: self.stats,
        })
    }

    fn add_root(&mut self, v: Vertex) -> NodeId {
        let id = self.forest.add_root(v);
        self.roots_by_vertex[v as usize].push(id);
        id
    }

    fn step(&mut self, v: Vertex) -> Result<()> {
        let g = self.g;
        self.alive[v as usize] = true;
        let nbrs: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.alive[w as usize])
            .collect();
        if nbrs.is_empty() {
            self.add_root(v);
            return Ok(());
        }

        for &w in &nbrs {
            self.in_nbhd[w as usize] = true;
        }
        let prepared = self.type3_candidates(v);
        let (leaves, extended) = match &prepared {
            Ok(candidates) if self.opts.mode == Mode::Superset => {
                let pending: HashSet<Vec<Vertex>> = candidates
                    .iter()
                    .flat_map(|(_, cl)| cl.iter())
                    .map(|k| {
                        let mut key = k.clone();
                        key.sort_unstable();
                        key
                    })
                    .collect();
                self.leaves_inside_neighbourhood(&nbrs, Some(&pending))
            }
            _ => self.leaves_inside_neighbourhood(&nbrs, None),
        };
        for &w in &nbrs {
            self.in_nbhd[w as usize] = false;
        }
        let candidates = prepared?;
        self.stats.type2_extensions += leaves.len() as u64;
        for leaf in leaves {
            self.forest.add_child(leaf, v);
        }

        let mut seen = extended;
        for (u, cliques) in candidates {
            let mut kept: Vec<Vec<Vertex>> = Vec::new();
            for k in cliques {
                let mut key = k.clone();
                key.sort_unstable();
                if seen.contains(&key) {
                    self.stats.type3_duplicates += 1;
                    continue;
                }
                if self.opts.record_type3 {
                    self.stats.type3.push(Type3Emission {
                        v,
                        u,
                        members: key.clone(),
                    });
                }
                seen.insert(key);
                kept.push(k);
            }
            if kept.is_empty() {
                continue;
            }
            self.stats.type3_kept += kept.len() as u64;
            let root = self.add_root(v);
            let mut ins = DfsPathInserter::new(Some(root));
            for k in &kept {
                ins.insert(&mut self.forest, k);
            }
        }
        Ok(())
    }

    /// Pivot enumeration on `G[N(u) ∩ N(v)]` restricted to the suffix, for
    /// every surviving non-neighbour `u` sharing a neighbour with `v`.
    fn type3_candidates(&mut self, v: Vertex) -> Result<Vec<(Vertex, Vec<Vec<Vertex>>)>> {
        let alive = &self.alive;
        let mut subsets: Vec<(Vertex, Vec<Vertex>, Vec<Vertex>)> = Vec::new();
        for (u, centers) in self.idx.by_endpoint(v) {
            if !alive[u as usize] {
                continue;
            }
            let s: Vec<Vertex> = centers
                .iter()
                .copied()
                .filter(|&c| alive[c as usize])
                .collect();
            if s.is_empty() {
                continue;
            }
            if s.len() > self.opts.max_subcall {
                return Err(Error::SubcallTooLarge {
                    u: v,
                    v: u,
                    size: s.len(),
                    limit: self.opts.max_subcall,
                });
            }
            let excluded = match self.opts.mode {
                Mode::Superset => Vec::new(),
                Mode::Exact => self.extenders(&s),
            };
            subsets.push((u, s, excluded));
        }
        self.stats.subcalls += subsets.len() as u64;
        if let Some(m) = subsets.iter().map(|(_, s, _)| s.len()).max() {
            self.stats.largest_subcall = self.stats.largest_subcall.max(m);
        }
        let g = self.g;
        Ok(subsets
            .into_par_iter()
            .map(|(u, s, x)| {
                let mut out = Vec::new();
                enumerate_local(g, &[], &s, &x, |k| out.push(k.to_vec()));
                (u, out)
            })
            .collect())
    }

    /// Leaves whose root path stays inside the marked neighbourhood, and the
    /// members of `pending` that such a path spells.
    fn leaves_inside_neighbourhood(
        &self,
        nbrs: &[Vertex],
        pending: Option<&HashSet<Vec<Vertex>>>,
    ) -> (Vec<NodeId>, HashSet<Vec<Vertex>>) {
        let sizes: HashSet<usize> = pending.into_iter().flatten().map(Vec::len).collect();
        let mut leaves = Vec::new();
        let mut keys = HashSet::new();
        let mut key = Vec::new();
        let mut path: Vec<Vertex> = Vec::new();
        // (node, depth) pairs; depth is the path length above the node
        let mut stack: Vec<(NodeId, usize)> = Vec::new();
        for &x in nbrs {
            for &root in &self.roots_by_vertex[x as usize] {
                stack.push((root, 0));
                while let Some((node, depth)) = stack.pop() {
                    path.truncate(depth);
                    path.push(self.forest.vertex(node));
                    if self.forest.is_leaf(node) {
                        leaves.push(node);
                        if sizes.contains(&path.len()) {
                            key.clone_from(&path);
                            key.sort_unstable();
                            if pending.is_some_and(|p| p.contains(&key)) {
                                keys.insert(key.clone());
                            }
                        }
                        continue;
                    }
                    for child in self.forest.children(node) {
                        if self.in_nbhd[self.forest.vertex(child) as usize] {
                            stack.push((child, depth + 1));
                        }
                    }
                }
            }
        }
        (leaves, keys)
    }

    /// Marked neighbours of `v` outside `s` adjacent to some member of `s`.
    /// Excluding them from the subcall leaves exactly the cliques `K` for
    /// which `K ∪ {v}` is maximal in the suffix graph.
    fn extenders(&self, s: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = s
            .iter()
            .flat_map(|&x| self.g.neighbors(x).iter().copied())
            .filter(|&z| self.in_nbhd[z as usize] && s.binary_search(&z).is_err())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::pivot::cliques_pivot;
    use crate::generators;

    fn id_order(g: &Graph) -> Vec<Vertex> {
        g.vertices().collect()
    }

    #[test]
    fn complete_graph_any_order() {
        let g = generators::complete(5);
        for order in [vec![0, 1, 2, 3, 4], vec![4, 2, 0, 3, 1]] {
            let f = cclosed_cliques_superset(&g, &order).unwrap();
            assert_eq!(f.leaf_count(), 1);
            assert_eq!(f.paths()[0].len(), 5);
        }
    }

    #[test]
    fn edgeless_graph() {
        let g = Graph::empty(6);
        let s = cclosed_cliques_exact(&g, &id_order(&g)).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.iter().all(|k| k.len() == 1));
    }

    #[test]
    fn moon_moser_twelve_exact() {
        let g = generators::moon_moser(12).unwrap();
        let s = cclosed_cliques_exact(&g, &id_order(&g)).unwrap();
        assert_eq!(s.len(), 81);
        assert!(s.iter().all(|k| k.len() == 4));
        assert_eq!(s, cliques_pivot(&g).to_clique_set());
    }

    #[test]
    fn superset_contains_exact() {
        let g = generators::erdos_renyi(30, 0.4, 5).unwrap();
        let order = crate::closure::weak_closure(&g).ordering;
        let sup = cclosed_cliques_superset(&g, &order).unwrap().to_clique_set();
        let exact = cclosed_cliques_exact(&g, &order).unwrap();
        assert!(exact.is_subset_of(&sup));
        assert_eq!(exact, cliques_pivot(&g).to_clique_set());
    }

    #[test]
    fn guard_names_the_pair() {
        let g = generators::clique_minus_edge(8).unwrap();
        let opts = CClosedOptions {
            max_subcall: 3,
            ..Default::default()
        };
        // processing 6 first leaves 7 alive with codegree 6
        let order: Vec<Vertex> = vec![6, 7, 0, 1, 2, 3, 4, 5];
        match run(&g, &order, &opts) {
            Err(Error::SubcallTooLarge { u, v, size, limit }) => {
                assert_eq!((u, v, size, limit), (6, 7, 6, 3));
            }
            other => panic!("expected guard error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_permutation() {
        let g = generators::complete(3);
        assert!(cclosed_cliques_exact(&g, &[0, 1]).is_err());
    }
}
