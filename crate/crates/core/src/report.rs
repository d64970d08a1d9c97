//! Serializable summaries for the command-line front end.
//!
//! Vertex ids are translated back to the labels of the input file, so the
//! JSON documents can be compared against other tools directly.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::bounds::BoundReport;
use crate::closure::{
    a_bound_with, stats_from_table, weak_closure_with, BadPair, ClosureOptions, ClosureReport,
    CodegreeStats, CodegreeTable,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledPair {
    pub u: u64,
    pub v: u64,
    pub codegree: u32,
}

impl LabeledPair {
    pub fn new(g: &Graph, p: &BadPair) -> Self {
        LabeledPair {
            u: g.label(p.u),
            v: g.label(p.v),
            codegree: p.codegree,
        }
    }
}

/// [`ClosureReport`] with labels in place of internal ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureJson {
    pub c_closure: u32,
    pub weak_c_closure: u32,
    pub ordering: Vec<u64>,
    pub witness: Option<LabeledPair>,
}

impl ClosureJson {
    pub fn new(g: &Graph, r: &ClosureReport) -> Self {
        ClosureJson {
            c_closure: r.c_closure,
            weak_c_closure: r.weak_c_closure,
            ordering: r.ordering.iter().map(|&v| g.label(v)).collect(),
            witness: r.witness.as_ref().map(|p| LabeledPair::new(g, p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
    pub median: f64,
    pub isolated: usize,
}

impl DegreeStats {
    pub fn of(g: &Graph) -> Self {
        let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        d.sort_unstable();
        let n = d.len();
        let median = match n {
            0 => 0.0,
            _ if n % 2 == 1 => d[n / 2] as f64,
            _ => (d[n / 2 - 1] + d[n / 2]) as f64 / 2.0,
        };
        DegreeStats {
            min: d.first().copied().unwrap_or(0),
            max: d.last().copied().unwrap_or(0),
            mean: if n == 0 { 0.0 } else { 2.0 * g.m() as f64 / n as f64 },
            median,
            isolated: d.iter().take_while(|&&x| x == 0).count(),
        }
    }
}

/// Output of `cclosed analyze`. Fields left `None` were not reached before
/// the budget ran out; `incomplete` is then set and `missing` names them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub c_closure: Option<u32>,
    pub weak_c_closure: Option<u32>,
    pub a_bound: Option<f64>,
    pub degree: DegreeStats,
    pub witness: Option<LabeledPair>,
    pub ordering: Option<Vec<u64>>,
    pub codegree_stats: Option<CodegreeStats>,
    pub incomplete: bool,
    pub missing: Vec<&'static str>,
}

const STAGES: [&str; 4] = ["c_closure", "codegree_stats", "weak_c_closure", "a_bound"];

/// Runs every closure computation in turn, stopping at the first stage that
/// hits `opts.deadline`.
pub fn analyze(name: &str, g: &Graph, opts: &ClosureOptions) -> AnalyzeReport {
    let mut out = AnalyzeReport {
        name: name.to_string(),
        n: g.n(),
        m: g.m(),
        c_closure: None,
        weak_c_closure: None,
        a_bound: None,
        degree: DegreeStats::of(g),
        witness: None,
        ordering: None,
        codegree_stats: None,
        incomplete: false,
        missing: Vec::new(),
    };
    let reached = analyze_stages(g, opts, &mut out);
    if reached < STAGES.len() {
        out.incomplete = true;
        out.missing = STAGES[reached..].to_vec();
    }
    out
}

fn expired(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

fn analyze_stages(g: &Graph, opts: &ClosureOptions, out: &mut AnalyzeReport) -> usize {
    if expired(opts.deadline) {
        return 0;
    }
    let table = CodegreeTable::build(g, opts.method_for(g));
    let witness = table.max_pair();
    out.c_closure = Some(witness.map_or(1, |p| p.codegree + 1));
    out.witness = witness.as_ref().map(|p| LabeledPair::new(g, p));
    if expired(opts.deadline) {
        return 1;
    }
    out.codegree_stats = Some(stats_from_table(g, &table));
    drop(table);
    match weak_closure_with(g, opts) {
        Ok(r) => {
            out.weak_c_closure = Some(r.weak_c_closure);
            out.ordering = Some(r.ordering.iter().map(|&v| g.label(v)).collect());
        }
        Err(_) => return 2,
    }
    match a_bound_with(g, opts) {
        Ok(a) => out.a_bound = Some(a.value),
        Err(_) => return 3,
    }
    4
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl AnalyzeReport {
    /// Header plus one row in the layout of the usual closure table.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<24} {:>10} {:>12} {:>10} {:>15} {:>14}",
            "graph", "n", "m", "c-closure", "weak c-closure", "A-bound"
        );
        let a = self.a_bound.map_or_else(|| "-".to_string(), |a| format!("{a:.4}"));
        let _ = writeln!(
            s,
            "{:<24} {:>10} {:>12} {:>10} {:>15} {:>14}",
            self.name,
            self.n,
            self.m,
            opt(&self.c_closure),
            opt(&self.weak_c_closure),
            a
        );
        let d = &self.degree;
        let _ = writeln!(
            s,
            "degree: min {} max {} mean {:.4} median {} isolated {}",
            d.min, d.max, d.mean, d.median, d.isolated
        );
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness: {} {} share {} neighbours", w.u, w.v, w.codegree);
        }
        if self.incomplete {
            let _ = writeln!(s, "INCOMPLETE: budget exceeded before {}", self.missing.join(", "));
        }
        s
    }
}

/// Fixed-width rendering of a [`BoundReport`], one row for the graph.
pub fn bounds_table(name: &str, r: &BoundReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<20} {:>8} {:>10} {:>4} {:>6} {:>10} {:>12} {:>14} {:>14} {:>14} {:>14}",
        "graph", "n", "m", "c", "weak c", "A", "observed", "init", "improved", "n*A", "stats"
    );
    let observed = opt(&r.observed_maximal_cliques);
    let _ = writeln!(
        s,
        "{:<20} {:>8} {:>10} {:>4} {:>6} {:>10.4} {:>12} {:>14} {:>14} {:>14} {:>14}",
        name,
        r.n,
        r.m,
        r.c_closure,
        r.weak_c_closure,
        r.a_bound,
        observed,
        r.bound_init.to_string(),
        r.bound_improved.to_string(),
        r.bound_abound_certified.to_string(),
        r.bound_stats_certified.to_string()
    );
    if r.abound_clamped {
        let _ = writeln!(s, "note: n*A = {} raised to the component count {}", r.bound_abound, r.components);
    }
    if r.stats_clamped {
        let _ = writeln!(s, "note: stats sum {} below the component count; isolation term added", r.bound_stats);
    }
    if !r.count_available {
        let _ = writeln!(s, "note: count unavailable");
    }
    for v in &r.violations {
        let _ = writeln!(s, "VIOLATION: {v}");
    }
    s
}

/// `Err` if `deadline` has passed, naming `what`.
pub fn check_deadline(deadline: Option<Instant>, what: &str) -> Result<()> {
    if expired(deadline) {
        return Err(Error::BudgetExceeded(what.to_string()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::weak_closure;
    use crate::generators;

    #[test]
    fn analyze_moon_moser() {
        let g = generators::moon_moser(9).unwrap();
        let r = analyze("mm9", &g, &ClosureOptions::default());
        assert!(!r.incomplete);
        assert_eq!(r.c_closure, Some(7));
        assert_eq!(r.weak_c_closure, Some(7));
        assert_eq!(r.a_bound, Some(18.0));
        assert_eq!(r.codegree_stats.as_ref().unwrap().p[6], 9);
        assert_eq!(r.degree.min, 6);
        assert!(r.to_table().contains("mm9"));
    }

    #[test]
    fn expired_budget_marks_everything_missing() {
        let g = generators::petersen();
        let opts = ClosureOptions {
            deadline: Some(Instant::now()),
            ..Default::default()
        };
        let r = analyze("p", &g, &opts);
        assert!(r.incomplete);
        assert_eq!(r.missing, STAGES.to_vec());
        assert!(r.to_table().contains("INCOMPLETE"));
    }

    #[test]
    fn closure_json_uses_labels() {
        let g = crate::graph::parse_edge_list("10 20\n20 30\n").unwrap();
        let j = ClosureJson::new(&g, &weak_closure(&g));
        let w = j.witness.unwrap();
        assert_eq!((w.u, w.v, w.codegree), (10, 30, 1));
        let mut o = j.ordering.clone();
        o.sort();
        assert_eq!(o, vec![10, 20, 30]);
        let text = serde_json::to_string(&ClosureJson::new(&g, &weak_closure(&g))).unwrap();
        assert!(text.contains("\"weak_c_closure\":1"));
    }
}
