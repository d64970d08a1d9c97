//! Invariant corpus run by `cclosed verify`.
//!
//! The corpus mixes seeded random graphs with every generator family at
//! small parameters. Each check walks the corpus and records failures with
//! the generator spec (and sample seed where one is drawn) that reproduces
//! them.

use std::cell::OnceCell;
use std::collections::HashSet;
use std::hash::{DefaultHasher, Hash, Hasher};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{bound_improved, bound_init, evaluate, CertifyOptions, Magnitude};
use crate::cliques::{cclosed, cliques_pivot, CClosedOptions, CClosedRun, CliqueForest, CliqueSet, Mode};
use crate::closure::{c_closure, codegree_stats, is_valid_ordering, weak_closure, ClosureReport};
use crate::error::{Error, Result};
use crate::generators::{self, BaseGraph, GeneratorSpec};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::report::{analyze, ClosureJson};
use crate::wedges::{co_neighborhood_of, enumerate_wedges, triangle_count, Wedge};

pub const CHECKS: [&str; 11] = [
    "hereditarity",
    "ordering-validity",
    "wedge-oracle",
    "oracle-equivalence",
    "superset-containment",
    "forest-paths",
    "type3-structure",
    "determinism",
    "bound-dominance",
    "bound-formulas",
    "neighbourhood-closure",
];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Run a single check from [`CHECKS`].
    pub only: Option<String>,
    /// Largest vertex count admitted to the corpus.
    pub n_max: usize,
    pub seed: u64,
    /// Random induced subgraphs drawn for the hereditarity check.
    pub samples: usize,
    /// Seeded G(n,p) graphs in the corpus.
    pub random_graphs: usize,
    /// Drops one clique from every exact result. Used to confirm that the
    /// harness notices a broken enumerator.
    #[doc(hidden)]
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            only: None,
            n_max: 200,
            seed: 1,
            samples: 500,
            random_graphs: 200,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub spec: String,
    pub seed: Option<u64>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: u64,
    pub failures: Vec<Failure>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub corpus_size: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("corpus: {} graphs\n", self.corpus_size);
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            s += &format!("{status} {:<22} {} cases, {} failures\n", c.name, c.cases, c.failures.len());
            for f in c.failures.iter().take(10) {
                match f.seed {
                    Some(seed) => s += &format!("    {} (sample seed {seed}): {}\n", f.spec, f.detail),
                    None => s += &format!("    {}: {}\n", f.spec, f.detail),
                }
            }
        }
        s
    }
}

/// A corpus graph with the spec that rebuilds it.
pub struct Case {
    pub spec: String,
    pub graph: Graph,
}

/// Seeded random graphs followed by the generator families.
pub fn corpus(opts: &VerifyOptions) -> Result<Vec<Case>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut specs = Vec::new();
    let random_max = opts.n_max.min(60);
    if random_max >= 1 {
        for i in 0..opts.random_graphs {
            // a quarter of the random graphs are tiny so that every shape appears
            let hi = if i % 4 == 0 { random_max.min(8) } else { random_max };
            let n = rng.random_range(1..=hi);
            let p = rng.random_range(1..=9u32) as f64 / 10.0;
            specs.push(GeneratorSpec::ErdosRenyi { n, p, seed: rng.random() });
        }
    }
    for n in 3..=18 {
        specs.push(GeneratorSpec::MoonMoser { n });
    }
    for (n, c) in [(12, 1), (12, 2), (20, 3), (30, 4), (40, 7)] {
        specs.push(GeneratorSpec::MoonMoserUnion { n, c });
    }
    for k in 2..=10 {
        specs.push(GeneratorSpec::CliqueMinusEdge { k });
    }
    for p in [2, 3, 5, 7] {
        specs.push(GeneratorSpec::ProjectiveIncidence { p });
    }
    for (base, c) in [
        (BaseGraph::C5, 4),
        (BaseGraph::C5, 6),
        (BaseGraph::C5, 8),
        (BaseGraph::Petersen, 4),
        (BaseGraph::Petersen, 6),
        (BaseGraph::Greedy { v: 12, seed: opts.seed }, 4),
    ] {
        specs.push(GeneratorSpec::Blowup { base, c });
    }
    for v in [10, 20, 40] {
        specs.push(GeneratorSpec::Girth5Greedy { v, seed: opts.seed });
    }
    let mut out = Vec::new();
    for spec in specs {
        let graph = spec.build()?;
        if graph.n() <= opts.n_max {
            out.push(Case {
                spec: spec.to_string(),
                graph,
            });
        }
    }
    for (name, graph) in [
        ("petersen", generators::petersen()),
        ("complete n=5", generators::complete(5)),
        ("cycle n=5", generators::cycle(5)?),
        ("empty n=6", Graph::empty(6)),
    ] {
        if graph.n() <= opts.n_max {
            out.push(Case {
                spec: name.to_string(),
                graph,
            });
        }
    }
    Ok(out)
}

pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    if let Some(name) = &opts.only {
        if !CHECKS.contains(&name.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "unknown check {name:?}; expected one of {}",
                CHECKS.join(", ")
            )));
        }
    }
    let cases = corpus(opts)?;
    let mut checks: Vec<CheckResult> = CHECKS
        .iter()
        .filter(|&&name| opts.only.as_deref().is_none_or(|o| o == name))
        .map(|&name| CheckResult {
            name,
            cases: 0,
            failures: Vec::new(),
        })
        .collect();
    let pools = [pool(4)?, pool(1)?];
    for case in &cases {
        let fingerprints = pools[0].install(|| {
            let ctx = Ctx::new(&case.graph, opts);
            let mut fp = None;
            for r in checks.iter_mut() {
                if r.name == "determinism" {
                    fp = Some(fingerprint(&ctx));
                } else if PER_GRAPH.contains(&r.name) {
                    r.cases += 1;
                    if let Err(detail) = per_graph(r.name, &ctx) {
                        r.failures.push(Failure {
                            spec: case.spec.clone(),
                            seed: None,
                            detail,
                        });
                    }
                }
            }
            fp
        });
        if let Some(wide) = fingerprints {
            let single = pools[1].install(|| fingerprint(&Ctx::new(&case.graph, opts)));
            let detail = match (wide, single) {
                (Ok(a), Ok(b)) if a == b => None,
                (Ok(_), Ok(_)) => Some("outputs differ between 1 and 4 workers".to_string()),
                (Err(e), _) | (_, Err(e)) => Some(e),
            };
            let r = checks.iter_mut().find(|r| r.name == "determinism").expect("selected");
            r.cases += 1;
            if let Some(detail) = detail {
                r.failures.push(Failure {
                    spec: case.spec.clone(),
                    seed: None,
                    detail,
                });
            }
        }
    }
    for r in checks.iter_mut() {
        match r.name {
            "hereditarity" => hereditarity(&cases, opts, r),
            "bound-formulas" => bound_formulas(r),
            _ => {}
        }
    }
    Ok(VerifyReport {
        corpus_size: cases.len(),
        checks,
    })
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))
}

const PER_GRAPH: [&str; 8] = [
    "ordering-validity",
    "wedge-oracle",
    "oracle-equivalence",
    "superset-containment",
    "forest-paths",
    "type3-structure",
    "bound-dominance",
    "neighbourhood-closure",
];

type Check = std::result::Result<(), String>;

fn per_graph(name: &str, ctx: &Ctx) -> Check {
    match name {
        "ordering-validity" => ordering_validity(ctx),
        "wedge-oracle" => wedge_oracle(ctx.g),
        "oracle-equivalence" => oracle_equivalence(ctx),
        "superset-containment" => superset_containment(ctx),
        "forest-paths" => forest_paths(ctx),
        "type3-structure" => type3_structure(ctx),
        "bound-dominance" => bound_dominance(ctx.g),
        "neighbourhood-closure" => neighbourhood_closure(ctx),
        _ => unreachable!("not a per-graph check"),
    }
}

fn err<T: std::fmt::Display>(e: T) -> String {
    e.to_string()
}

/// Options that never trip the subcall guard; the corpus is small.
fn unguarded(g: &Graph, mode: Mode) -> CClosedOptions {
    CClosedOptions {
        mode,
        max_subcall: g.n().max(1),
        record_type3: mode == Mode::Superset,
        deadline: None,
    }
}

/// Per-graph results shared between checks, computed on first use.
struct Ctx<'a> {
    g: &'a Graph,
    opts: &'a VerifyOptions,
    closure: OnceCell<u32>,
    weak: OnceCell<ClosureReport>,
    pivot: OnceCell<CliqueForest>,
    superset: OnceCell<std::result::Result<CClosedRun, String>>,
    exact: OnceCell<std::result::Result<CliqueForest, String>>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a Graph, opts: &'a VerifyOptions) -> Self {
        Ctx {
            g,
            opts,
            closure: OnceCell::new(),
            weak: OnceCell::new(),
            pivot: OnceCell::new(),
            superset: OnceCell::new(),
            exact: OnceCell::new(),
        }
    }

    fn c(&self) -> u32 {
        *self.closure.get_or_init(|| c_closure(self.g).0)
    }

    fn weak(&self) -> &ClosureReport {
        self.weak.get_or_init(|| weak_closure(self.g))
    }

    fn pivot(&self) -> &CliqueForest {
        self.pivot.get_or_init(|| cliques_pivot(self.g))
    }

    fn run(&self, mode: Mode) -> std::result::Result<CClosedRun, String> {
        cclosed::run(self.g, &self.weak().ordering, &unguarded(self.g, mode)).map_err(err)
    }

    fn superset(&self) -> std::result::Result<&CClosedRun, String> {
        self.superset.get_or_init(|| self.run(Mode::Superset)).as_ref().map_err(Clone::clone)
    }

    fn exact(&self) -> std::result::Result<&CliqueForest, String> {
        self.exact
            .get_or_init(|| self.run(Mode::Exact).map(|r| r.forest))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn exact_set(&self) -> std::result::Result<CliqueSet, String> {
        let set = self.exact()?.to_clique_set();
        if self.opts.inject_fault && !set.is_empty() {
            return Ok(CliqueSet::from_cliques(set.iter().skip(1).map(|k| k.as_slice().to_vec())));
        }
        Ok(set)
    }
}

fn brute_codegree_closure(g: &Graph) -> u32 {
    let mut best = 0;
    for u in g.vertices() {
        for v in g.vertices().filter(|&v| v > u && !g.is_adjacent(u, v)) {
            best = best.max(g.codegree(u, v));
        }
    }
    best as u32 + 1
}

fn hereditarity(cases: &[Case], opts: &VerifyOptions, r: &mut CheckResult) {
    let params: Vec<(u32, u32)> = cases
        .iter()
        .map(|c| (c_closure(&c.graph).0, weak_closure(&c.graph).weak_c_closure))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    for _ in 0..opts.samples {
        if cases.is_empty() {
            break;
        }
        let i = rng.random_range(0..cases.len());
        let sample_seed: u64 = rng.random();
        r.cases += 1;
        let g = &cases[i].graph;
        let mut srng = ChaCha8Rng::seed_from_u64(sample_seed);
        let keep: Vec<Vertex> = g.vertices().filter(|_| srng.random_bool(0.5)).collect();
        let h = match g.induced_subgraph(&VertexSet::from_unsorted(keep)) {
            Ok(h) => h,
            Err(e) => {
                r.failures.push(Failure {
                    spec: cases[i].spec.clone(),
                    seed: Some(sample_seed),
                    detail: err(e),
                });
                continue;
            }
        };
        let (c, wc) = params[i];
        let (hc, hwc) = (c_closure(&h).0, weak_closure(&h).weak_c_closure);
        if hc > c || hwc > wc {
            r.failures.push(Failure {
                spec: cases[i].spec.clone(),
                seed: Some(sample_seed),
                detail: format!("subgraph on {} vertices has c={hc} weak={hwc}, parent c={c} weak={wc}", h.n()),
            });
        }
    }
}

fn ordering_validity(ctx: &Ctx) -> Check {
    let g = ctx.g;
    let c = ctx.c();
    let brute = brute_codegree_closure(g);
    if c != brute {
        return Err(format!("c-closure {c}, brute force {brute}"));
    }
    let r = ctx.weak();
    if r.weak_c_closure > c {
        return Err(format!("weak {} exceeds c {c}", r.weak_c_closure));
    }
    if !is_valid_ordering(g, r.weak_c_closure, &r.ordering).map_err(err)? {
        return Err(format!("ordering not valid for weak c={}", r.weak_c_closure));
    }
    if r.weak_c_closure > 1 && is_valid_ordering(g, r.weak_c_closure - 1, &r.ordering).map_err(err)? {
        return Err(format!("ordering already valid for {}", r.weak_c_closure - 1));
    }
    Ok(())
}

fn wedge_oracle(g: &Graph) -> Check {
    let idx = enumerate_wedges(g);
    let mut brute = Vec::new();
    for u in g.vertices() {
        for v in g.vertices().filter(|&v| v > u && !g.is_adjacent(u, v)) {
            let centers = g.common_neighbors(u, v).map_err(err)?;
            let via_index = co_neighborhood_of(&idx, g, u, v).map_err(err)?;
            if via_index != centers {
                return Err(format!("co-neighbourhood of ({u},{v}) differs"));
            }
            brute.extend(centers.iter().map(|center| Wedge {
                end_u: u,
                center,
                end_v: v,
            }));
        }
    }
    brute.sort();
    let listed = idx.wedges();
    if listed != brute {
        return Err(format!("{} wedges listed, {} by brute force", listed.len(), brute.len()));
    }
    let binom: u64 = g.vertices().map(|v| (g.degree(v) * g.degree(v).saturating_sub(1) / 2) as u64).sum();
    if binom - 3 * triangle_count(g) != listed.len() as u64 {
        return Err("wedge count disagrees with the triangle identity".into());
    }
    Ok(())
}

fn oracle_equivalence(ctx: &Ctx) -> Check {
    let g = ctx.g;
    let oracle = ctx.pivot().to_clique_set().to_lines(g);
    let exact = ctx.exact_set()?.to_lines(g);
    if oracle != exact {
        let o: HashSet<&String> = oracle.iter().collect();
        let e: HashSet<&String> = exact.iter().collect();
        let missing = o.difference(&e).next();
        let extra = e.difference(&o).next();
        return Err(format!(
            "exact {} cliques vs oracle {}; first missing {missing:?}, first extra {extra:?}",
            exact.len(),
            oracle.len()
        ));
    }
    Ok(())
}

fn superset_containment(ctx: &Ctx) -> Check {
    let forest = &ctx.superset()?.forest;
    let paths = forest.to_clique_set();
    let exact = ctx.exact_set()?;
    if !exact.is_subset_of(&paths) {
        return Err("superset paths miss an exact clique".into());
    }
    let n = ctx.g.n() as u64;
    if n > 0 {
        let allowance = bound_init(n, ctx.weak().weak_c_closure) + Magnitude::from_value(n as f64);
        if !allowance.dominates(forest.leaf_count() as u64) {
            return Err(format!("{} paths exceed {allowance}", forest.leaf_count()));
        }
    }
    Ok(())
}

fn check_forest(g: &Graph, f: &CliqueForest, what: &str) -> Check {
    let mut keys = Vec::with_capacity(f.leaf_count());
    for leaf in f.leaves() {
        let mut key = f.path(leaf);
        key.sort_unstable();
        if key.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("{what} path {:?} repeats a vertex", f.path(leaf)));
        }
        for (i, &a) in key.iter().enumerate() {
            if key[i + 1..].iter().any(|&b| !g.is_adjacent(a, b)) {
                return Err(format!("{what} path {:?} is not a clique", f.path(leaf)));
            }
        }
        keys.push(key);
    }
    keys.sort_unstable();
    if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
        return Err(format!("{what} path {:?} appears twice", w[0]));
    }
    Ok(())
}

fn forest_paths(ctx: &Ctx) -> Check {
    check_forest(ctx.g, ctx.pivot(), "pivot")?;
    check_forest(ctx.g, &ctx.superset()?.forest, "superset")?;
    check_forest(ctx.g, ctx.exact()?, "exact")
}

fn type3_structure(ctx: &Ctx) -> Check {
    let g = ctx.g;
    let c = ctx.c();
    for e in &ctx.superset()?.stats.type3 {
        if g.is_adjacent(e.u, e.v) {
            return Err(format!("type-3 clique from adjacent pair ({},{})", e.v, e.u));
        }
        let common = g.common_neighbors(e.u, e.v).map_err(err)?;
        if e.members.iter().any(|&w| !common.contains(w)) {
            return Err(format!("type-3 clique {:?} leaves N({})∩N({})", e.members, e.v, e.u));
        }
        if e.members.len() + 1 > c as usize {
            return Err(format!("type-3 clique {:?} exceeds c-1={} members", e.members, c - 1));
        }
    }
    Ok(())
}

fn bound_dominance(g: &Graph) -> Check {
    if g.n() == 0 {
        return Ok(());
    }
    let r = evaluate(g, &CertifyOptions::default()).map_err(err)?;
    if r.observed_maximal_cliques.is_none() {
        return Err("count unavailable".into());
    }
    if r.violations.is_empty() {
        Ok(())
    } else {
        Err(r.violations.join("; "))
    }
}

fn bound_formulas(r: &mut CheckResult) {
    let mut fail = |detail: String| {
        r.failures.push(Failure {
            spec: "bound grid".into(),
            seed: None,
            detail,
        })
    };
    for n in 1..=64u64 {
        let one = bound_improved(n, 1).value();
        if (one - n as f64).abs() > 1e-9 * n as f64 {
            fail(format!("improved({n},1) = {one}"));
        }
        let init = bound_init(n, 1).value();
        if (init - (n * n) as f64).abs() > 1e-9 * (n * n) as f64 {
            fail(format!("init({n},1) = {init}"));
        }
        for c in 1..=12u32 {
            for (name, f) in [("init", bound_init as fn(u64, u32) -> Magnitude), ("improved", bound_improved)] {
                let here = f(n, c).ln();
                if f(n + 1, c).ln() < here || f(n, c + 1).ln() < here {
                    fail(format!("{name} decreases at n={n} c={c}"));
                }
            }
        }
    }
    r.cases = 64 * 12 * 2;
}

fn neighbourhood_closure(ctx: &Ctx) -> Check {
    let g = ctx.g;
    let c = ctx.c();
    for v in g.vertices() {
        let nb = VertexSet::from_unsorted(g.neighbors(v).to_vec());
        let h = g.induced_subgraph(&nb).map_err(err)?;
        let (hc, _) = c_closure(&h);
        if hc > c.saturating_sub(1).max(1) {
            return Err(format!("G[N({v})] has closure {hc}, graph has {c}"));
        }
    }
    Ok(())
}

fn hash_forest<H: Hasher>(f: &CliqueForest, h: &mut H) {
    for leaf in f.leaves() {
        f.path(leaf).hash(h);
    }
}

/// Digest of every parallel stage's serialized output.
fn fingerprint(ctx: &Ctx) -> std::result::Result<u64, String> {
    let g = ctx.g;
    let mut h = DefaultHasher::new();
    serde_json::to_string(&analyze("g", g, &Default::default())).map_err(err)?.hash(&mut h);
    serde_json::to_string(&ClosureJson::new(g, ctx.weak())).map_err(err)?.hash(&mut h);
    codegree_stats(g).p.hash(&mut h);
    let mut wedges = Vec::new();
    enumerate_wedges(g).write_tsv(&mut wedges).map_err(err)?;
    wedges.hash(&mut h);
    hash_forest(ctx.pivot(), &mut h);
    hash_forest(&ctx.superset()?.forest, &mut h);
    hash_forest(ctx.exact()?, &mut h);
    Ok(h.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyOptions {
        VerifyOptions {
            n_max: 30,
            samples: 50,
            random_graphs: 20,
            ..Default::default()
        }
    }

    #[test]
    fn small_corpus_passes() {
        let r = run(&small()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.checks.len(), CHECKS.len());
    }

    #[test]
    fn only_restricts() {
        let opts = VerifyOptions {
            only: Some("oracle-equivalence".into()),
            ..small()
        };
        let r = run(&opts).unwrap();
        assert_eq!(r.checks.len(), 1);
        assert!(r.passed());
        let bad = VerifyOptions {
            only: Some("nope".into()),
            ..small()
        };
        assert!(run(&bad).is_err());
    }

    #[test]
    fn injected_fault_is_reported() {
        let opts = VerifyOptions {
            only: Some("oracle-equivalence".into()),
            inject_fault: true,
            ..small()
        };
        let r = run(&opts).unwrap();
        assert!(!r.passed());
        assert!(r.to_text().contains("erdos_renyi"));
    }
}
