//! Closure parameters: c-closure, weak c-closure with its elimination
//! ordering, the greedy A-bound and the codegree histogram.
//!
//! Everything is driven by a [`CodegreeTable`] holding, for every vertex, the
//! non-adjacent partners it shares at least one neighbour with. The weak
//! closure and the A-bound are greedy eliminations that keep the table
//! current as vertices are deleted.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{intersection_size, Graph, Vertex};

/// A non-adjacent pair together with its number of common neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPair {
    pub u: Vertex,
    pub v: Vertex,
    pub codegree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub c_closure: u32,
    pub weak_c_closure: u32,
    /// Elimination ordering, first-removed vertex first.
    pub ordering: Vec<Vertex>,
    pub witness: Option<BadPair>,
}

/// `p[i]` = number of non-adjacent pairs with exactly `i` common neighbours,
/// for `i` in `0..=n-2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodegreeStats {
    pub p: Vec<u64>,
}

impl CodegreeStats {
    pub fn max_codegree(&self) -> Option<usize> {
        self.p
            .iter()
            .enumerate()
            .rev()
            .find(|(i, &c)| *i > 0 && c > 0)
            .map(|(i, _)| i)
    }

    pub fn nonadjacent_pairs(&self) -> u64 {
        self.p.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ABound {
    pub value: f64,
    pub ordering: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodegreeMethod {
    /// Merge-intersect every non-adjacent pair.
    AllPairs,
    /// Accumulate over wedge centres; cost follows `Σ deg²`.
    Wedges,
}

#[derive(Debug, Clone)]
pub struct ClosureOptions {
    /// Graphs with more vertex pairs than this use the wedge accumulation.
    pub pair_threshold: u64,
    /// Forces a method regardless of the threshold.
    pub method: Option<CodegreeMethod>,
    pub deadline: Option<Instant>,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            pair_threshold: 1 << 20,
            method: None,
            deadline: None,
        }
    }
}

impl ClosureOptions {
    pub fn method_for(&self, g: &Graph) -> CodegreeMethod {
        self.method.unwrap_or_else(|| {
            let n = g.n() as u64;
            if n * n.saturating_sub(1) / 2 > self.pair_threshold {
                CodegreeMethod::Wedges
            } else {
                CodegreeMethod::AllPairs
            }
        })
    }

    fn check_deadline(&self, what: &str) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::BudgetExceeded(what.to_string())),
            _ => Ok(()),
        }
    }
}

/// Codegrees of all non-adjacent pairs with at least one common neighbour.
/// Each pair is stored under both endpoints; rows are sorted by partner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodegreeTable {
    rows: Vec<Vec<(Vertex, u32)>>,
}

impl CodegreeTable {
    pub fn build(g: &Graph, method: CodegreeMethod) -> Self {
        let rows = match method {
            CodegreeMethod::AllPairs => g
                .vertices()
                .collect::<Vec<_>>()
                .par_iter()
                .map(|&a| {
                    let mut row = Vec::new();
                    let nb = g.neighbors(a);
                    let mut next_nb = 0;
                    for b in g.vertices() {
                        // skip a itself and its neighbours
                        while next_nb < nb.len() && nb[next_nb] < b {
                            next_nb += 1;
                        }
                        if b == a || (next_nb < nb.len() && nb[next_nb] == b) {
                            continue;
                        }
                        let k = intersection_size(nb, g.neighbors(b));
                        if k > 0 {
                            row.push((b, k as u32));
                        }
                    }
                    row
                })
                .collect(),
            CodegreeMethod::Wedges => g
                .vertices()
                .collect::<Vec<_>>()
                .par_iter()
                .map_init(
                    || (vec![0u32; g.n()], vec![false; g.n()], Vec::new()),
                    |(count, is_nb, touched), &a| {
                        for &w in g.neighbors(a) {
                            is_nb[w as usize] = true;
                        }
                        for &w in g.neighbors(a) {
                            for &b in g.neighbors(w) {
                                if b == a || is_nb[b as usize] {
                                    continue;
                                }
                                if count[b as usize] == 0 {
                                    touched.push(b);
                                }
                                count[b as usize] += 1;
                            }
                        }
                        touched.sort_unstable();
                        let row = touched
                            .iter()
                            .map(|&b| (b, std::mem::take(&mut count[b as usize])))
                            .collect();
                        touched.clear();
                        for &w in g.neighbors(a) {
                            is_nb[w as usize] = false;
                        }
                        row
                    },
                )
                .collect(),
        };
        CodegreeTable { rows }
    }

    pub fn row(&self, v: Vertex) -> &[(Vertex, u32)] {
        &self.rows[v as usize]
    }

    /// Number of distinct pairs stored.
    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// The pair of maximum codegree, ties to the lexicographically smallest.
    pub fn max_pair(&self) -> Option<BadPair> {
        let mut best: Option<BadPair> = None;
        for (u, row) in self.rows.iter().enumerate() {
            let u = u as Vertex;
            for &(v, k) in row.iter().filter(|(v, _)| *v > u) {
                if best.is_none_or(|b| k > b.codegree) {
                    best = Some(BadPair { u, v, codegree: k });
                }
            }
        }
        best
    }
}

/// Minimum `c` such that `g` is c-closed, with a maximising pair.
pub fn c_closure(g: &Graph) -> (u32, Option<BadPair>) {
    c_closure_with(g, &ClosureOptions::default())
}

pub fn c_closure_with(g: &Graph, opts: &ClosureOptions) -> (u32, Option<BadPair>) {
    let table = CodegreeTable::build(g, opts.method_for(g));
    closure_from_table(&table)
}

fn closure_from_table(table: &CodegreeTable) -> (u32, Option<BadPair>) {
    match table.max_pair() {
        Some(p) => (p.codegree + 1, Some(p)),
        None => (1, None),
    }
}

pub fn codegree_stats(g: &Graph) -> CodegreeStats {
    codegree_stats_with(g, &ClosureOptions::default())
}

pub fn codegree_stats_with(g: &Graph, opts: &ClosureOptions) -> CodegreeStats {
    let table = CodegreeTable::build(g, opts.method_for(g));
    stats_from_table(g, &table)
}

pub fn stats_from_table(g: &Graph, table: &CodegreeTable) -> CodegreeStats {
    let n = g.n();
    if n < 2 {
        return CodegreeStats { p: Vec::new() };
    }
    let mut p = vec![0u64; n - 1];
    for (u, row) in table.rows.iter().enumerate() {
        for &(_, k) in row.iter().filter(|(v, _)| *v as usize > u) {
            p[k as usize] += 1;
        }
    }
    let total = (n as u64) * (n as u64 - 1) / 2 - g.m() as u64;
    p[0] = total - table.pair_count() as u64;
    CodegreeStats { p }
}

/// Greedy weak closure: repeatedly delete the vertex whose worst non-neighbour
/// codegree is smallest (ties to the smallest id).
pub fn weak_closure(g: &Graph) -> ClosureReport {
    weak_closure_with(g, &ClosureOptions::default()).expect("no deadline set")
}

pub fn weak_closure_with(g: &Graph, opts: &ClosureOptions) -> Result<ClosureReport> {
    let table = CodegreeTable::build(g, opts.method_for(g));
    let (c_closure, witness) = closure_from_table(&table);
    let mut state = Elimination::new(g, table);

    let mut queue: BTreeSet<(u32, Vertex)> =
        g.vertices().map(|v| (state.top_codegree(v), v)).collect();
    let mut key: Vec<u32> = g.vertices().map(|v| state.top_codegree(v)).collect();
    let mut ordering = Vec::with_capacity(g.n());
    let mut worst = 0u32;
    let mut changed = Vec::new();

    while let Some((w, x)) = queue.pop_first() {
        if ordering.len() % 1024 == 0 {
            opts.check_deadline("weak closure elimination")?;
        }
        worst = worst.max(w);
        ordering.push(x);
        state.delete(x, &mut changed);
        for &y in &changed {
            let new = state.top_codegree(y);
            if new != key[y as usize] {
                queue.remove(&(key[y as usize], y));
                key[y as usize] = new;
                queue.insert((new, y));
            }
        }
    }

    Ok(ClosureReport {
        c_closure,
        weak_c_closure: worst + 1,
        ordering,
        witness,
    })
}

/// True iff every `ordering[i]` has fewer than `c` common neighbours with
/// each of its non-neighbours among `ordering[i..]`.
pub fn is_valid_ordering(g: &Graph, c: u32, ordering: &[Vertex]) -> Result<bool> {
    check_permutation(g, ordering)?;
    let n = g.n();
    let mut alive = vec![true; n];
    let mut count = vec![0u32; n];
    let mut touched = Vec::new();
    for &v in ordering {
        // common alive neighbours of v with every alive vertex two steps away
        for &w in g.neighbors(v) {
            if !alive[w as usize] {
                continue;
            }
            for &u in g.neighbors(w) {
                if u == v || !alive[u as usize] {
                    continue;
                }
                if count[u as usize] == 0 {
                    touched.push(u);
                }
                count[u as usize] += 1;
            }
        }
        let bad = touched
            .iter()
            .any(|&u| count[u as usize] >= c && !g.is_adjacent(u, v));
        for &u in &touched {
            count[u as usize] = 0;
        }
        touched.clear();
        if bad {
            return Ok(false);
        }
        alive[v as usize] = false;
    }
    Ok(true)
}

pub(crate) fn check_permutation(g: &Graph, ordering: &[Vertex]) -> Result<()> {
    if ordering.len() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "ordering has {} entries, graph has {} vertices",
            ordering.len(),
            g.n()
        )));
    }
    let mut seen = vec![false; g.n()];
    for &v in ordering {
        g.check_vertex(v)?;
        if std::mem::replace(&mut seen[v as usize], true) {
            return Err(Error::InvalidArgument(format!(
                "vertex {v} repeats in ordering"
            )));
        }
    }
    Ok(())
}

/// Greedy A-bound: at each step delete the vertex minimising
/// `Σ 3^{codeg/3}` over its remaining non-neighbours; `A` is the largest
/// selected sum.
pub fn a_bound(g: &Graph) -> ABound {
    a_bound_with(g, &ClosureOptions::default()).expect("no deadline set")
}

pub fn a_bound_with(g: &Graph, opts: &ClosureOptions) -> Result<ABound> {
    let table = CodegreeTable::build(g, opts.method_for(g));
    let mut state = Elimination::new(g, table);
    let max_k = state.hist.iter().map(Vec::len).max().unwrap_or(0);
    // weight of a codegree-k partner relative to a codegree-0 non-neighbour
    let excess: Vec<f64> = (0..max_k.max(1))
        .map(|k| 3f64.powf(k as f64 / 3.0) - 1.0)
        .collect();

    // The non-neighbour sum is base(v) + (alive - 1); the second term is shared.
    let base = |state: &Elimination, v: Vertex| -> TotalF64 {
        let hist = &state.hist[v as usize];
        let s: f64 = hist
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &cnt)| cnt as f64 * excess[k])
            .sum();
        TotalF64(s - state.alive_degree[v as usize] as f64)
    };

    let mut key: Vec<TotalF64> = g.vertices().map(|v| base(&state, v)).collect();
    let mut queue: BTreeSet<(TotalF64, Vertex)> =
        g.vertices().map(|v| (key[v as usize], v)).collect();
    let mut ordering = Vec::with_capacity(g.n());
    let mut value = 0f64;
    let mut changed = Vec::new();
    let mut alive = g.n();

    while let Some((k, x)) = queue.pop_first() {
        if ordering.len() % 1024 == 0 {
            opts.check_deadline("A-bound elimination")?;
        }
        let sum = k.0 + (alive - 1) as f64;
        value = value.max(sum);
        ordering.push(x);
        state.delete(x, &mut changed);
        alive -= 1;
        for &y in &changed {
            let new = base(&state, y);
            if new != key[y as usize] {
                queue.remove(&(key[y as usize], y));
                key[y as usize] = new;
                queue.insert((new, y));
            }
        }
    }
    // complete graphs give exact zeros; clean up any -0.0 or rounding residue
    if value.abs() < 1e-9 {
        value = 0.0;
    }
    Ok(ABound { value, ordering })
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct TotalF64(f64);

impl Eq for TotalF64 {}

impl PartialOrd for TotalF64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TotalF64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Vertex deletion with incremental codegree maintenance. Deleting `x`
/// decrements the codegree of every non-adjacent pair of its surviving
/// neighbours and retires every pair containing `x`.
struct Elimination<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    alive_degree: Vec<u32>,
    table: CodegreeTable,
    /// `hist[v][k]`: alive partners of `v` with codegree exactly `k >= 1`.
    hist: Vec<Vec<u32>>,
    top: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'g> Elimination<'g> {
    fn new(g: &'g Graph, table: CodegreeTable) -> Self {
        let hist: Vec<Vec<u32>> = table
            .rows
            .iter()
            .map(|row| {
                let max = row.iter().map(|&(_, k)| k).max().unwrap_or(0) as usize;
                let mut h = vec![0u32; max + 1];
                for &(_, k) in row {
                    h[k as usize] += 1;
                }
                h
            })
            .collect();
        let top = hist.iter().map(|h| (h.len() - 1) as u32).collect();
        Elimination {
            g,
            alive: vec![true; g.n()],
            alive_degree: g.vertices().map(|v| g.degree(v) as u32).collect(),
            table,
            hist,
            top,
            stamp: vec![0; g.n()],
            epoch: 0,
        }
    }

    fn top_codegree(&mut self, v: Vertex) -> u32 {
        let h = &self.hist[v as usize];
        let t = &mut self.top[v as usize];
        while *t > 0 && h[*t as usize] == 0 {
            *t -= 1;
        }
        *t
    }

    fn mark(&mut self, v: Vertex, changed: &mut Vec<Vertex>) {
        if self.stamp[v as usize] != self.epoch {
            self.stamp[v as usize] = self.epoch;
            changed.push(v);
        }
    }

    fn decrement(&mut self, a: Vertex, b: Vertex) {
        let row = &mut self.table.rows[a as usize];
        let idx = row
            .binary_search_by_key(&b, |&(p, _)| p)
            .expect("pair with a common neighbour is in the table");
        let k = row[idx].1 as usize;
        row[idx].1 -= 1;
        let h = &mut self.hist[a as usize];
        h[k] -= 1;
        if k > 1 {
            h[k - 1] += 1;
        }
    }

    fn delete(&mut self, x: Vertex, changed: &mut Vec<Vertex>) {
        changed.clear();
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = u32::MAX);
            self.epoch = 1;
        }
        self.alive[x as usize] = false;

        let row = std::mem::take(&mut self.table.rows[x as usize]);
        for &(u, k) in &row {
            if self.alive[u as usize] && k > 0 {
                self.hist[u as usize][k as usize] -= 1;
                self.mark(u, changed);
            }
        }
        self.table.rows[x as usize] = row;

        let g = self.g;
        let nbrs: Vec<Vertex> = g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&w| self.alive[w as usize])
            .collect();
        for &w in &nbrs {
            self.alive_degree[w as usize] -= 1;
            self.mark(w, changed);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !g.is_adjacent(a, b) {
                    self.decrement(a, b);
                    self.decrement(b, a);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n as Vertex).map(|i| (i, (i + 1) % n as Vertex))).unwrap()
    }

    #[test]
    fn complete_graph_is_one_closed() {
        let k7 = generators::complete(7);
        assert_eq!(c_closure(&k7), (1, None));
        let r = weak_closure(&k7);
        assert_eq!(r.weak_c_closure, 1);
        assert_eq!(a_bound(&k7).value, 0.0);
    }

    #[test]
    fn moon_moser_nine() {
        let g = generators::moon_moser(9).unwrap();
        let (c, w) = c_closure(&g);
        assert_eq!(c, 7);
        assert_eq!(w.unwrap().codegree, 6);
        assert_eq!(weak_closure(&g).weak_c_closure, 7);
        assert!((a_bound(&g).value - 18.0).abs() < 1e-9);
        let stats = codegree_stats(&g);
        assert_eq!(stats.p[6], 9);
        assert_eq!(stats.nonadjacent_pairs(), 9);
    }

    #[test]
    fn clique_minus_edge_is_weakly_one_closed() {
        let g = generators::clique_minus_edge(5).unwrap();
        let r = weak_closure(&g);
        assert_eq!(r.c_closure, 4);
        assert_eq!(r.weak_c_closure, 1);
        assert!(is_valid_ordering(&g, 1, &r.ordering).unwrap());
        // the missing edge is (3, 4)
        assert_eq!(&r.ordering[3..], &[3, 4]);
        assert!(is_valid_ordering(&g, 1, &[0, 1, 2, 3, 4]).unwrap());
        assert!(!is_valid_ordering(&g, 1, &[3, 0, 1, 2, 4]).unwrap());
    }

    #[test]
    fn cycle_five_values() {
        let c5 = cycle(5);
        assert_eq!(c_closure(&c5).0, 2);
        let stats = codegree_stats(&c5);
        assert_eq!(stats.p, vec![0, 5, 0, 0]);
        assert!((a_bound(&c5).value - 2.0 * 3f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn ordering_validation_errors() {
        let c5 = cycle(5);
        assert!(is_valid_ordering(&c5, 2, &[0, 1, 2]).is_err());
        assert!(is_valid_ordering(&c5, 2, &[0, 1, 2, 3, 3]).is_err());
        assert!(is_valid_ordering(&c5, 2, &[0, 1, 2, 3, 9]).is_err());
        // c = n-1 always passes
        assert!(is_valid_ordering(&c5, 4, &[4, 2, 0, 1, 3]).unwrap());
    }

    #[test]
    fn table_methods_agree() {
        let g = generators::erdos_renyi(40, 0.3, 11).unwrap();
        assert_eq!(
            CodegreeTable::build(&g, CodegreeMethod::AllPairs),
            CodegreeTable::build(&g, CodegreeMethod::Wedges)
        );
    }

    #[test]
    fn expired_deadline_is_reported() {
        let g = generators::erdos_renyi(30, 0.3, 1).unwrap();
        let opts = ClosureOptions {
            deadline: Some(Instant::now()),
            ..Default::default()
        };
        assert!(matches!(
            weak_closure_with(&g, &opts),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1);
        let r = weak_closure(&g);
        assert_eq!((r.c_closure, r.weak_c_closure), (1, 1));
        assert_eq!(r.ordering, vec![0]);
        assert!(codegree_stats(&g).p.is_empty());
    }
}
