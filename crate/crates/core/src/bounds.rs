//! Closed-form upper bounds on the number of maximal cliques and their
//! certification against observed counts.
//!
//! Bounds are held as natural logarithms; `4^{(c+4)(c-1)/2}` leaves the
//! `f64` range around `c = 25`.

use std::time::Instant;

use serde::{Deserialize, Serialize, Serializer};

use crate::closure::{a_bound_with, weak_closure_with, ClosureOptions, CodegreeStats};
use crate::cliques::{cclosed, count_pivot, CClosedOptions};
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};

/// Non-negative quantity stored as its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Magnitude {
    ln: f64,
}

/// Relative slack for comparing an exact count with a floating bound.
const COMPARE_SLACK: f64 = 1e-9;

impl Magnitude {
    pub const ZERO: Magnitude = Magnitude {
        ln: f64::NEG_INFINITY,
    };

    pub fn from_ln(ln: f64) -> Self {
        Magnitude { ln }
    }

    pub fn from_value(x: f64) -> Self {
        assert!(x >= 0.0, "magnitudes are non-negative");
        Magnitude { ln: x.ln() }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    pub fn log10(self) -> f64 {
        self.ln / std::f64::consts::LN_10
    }

    /// The value as `f64`; `inf` once it leaves the range.
    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    pub fn is_zero(self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    pub fn max(self, other: Magnitude) -> Magnitude {
        if self.ln >= other.ln {
            self
        } else {
            other
        }
    }

    /// Whether `count <= self`, exactly for counts up to 2^53 when the bound
    /// is in range.
    pub fn dominates(self, count: u64) -> bool {
        if count == 0 {
            return true;
        }
        let v = self.value();
        if v.is_finite() && v < 9.0e15 {
            (count as f64) <= v * (1.0 + COMPARE_SLACK)
        } else {
            (count as f64).ln() <= self.ln + COMPARE_SLACK
        }
    }
}

impl std::ops::Add for Magnitude {
    type Output = Magnitude;

    fn add(self, other: Magnitude) -> Magnitude {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.ln >= other.ln {
            (self.ln, other.ln)
        } else {
            (other.ln, self.ln)
        };
        Magnitude {
            ln: hi + (lo - hi).exp().ln_1p(),
        }
    }
}

impl std::fmt::Display for Magnitude {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let l = self.log10();
        if l < 12.0 {
            write!(f, "{:.4}", self.value())
        } else {
            let exp = l.floor();
            write!(f, "{:.4}e{}", 10f64.powf(l - exp), exp as i64)
        }
    }
}

impl Serialize for Magnitude {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            log10: Option<f64>,
            value: Option<f64>,
            display: String,
        }
        let v = self.value();
        Repr {
            log10: (!self.is_zero()).then(|| self.log10()),
            value: v.is_finite().then_some(v),
            display: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Magnitude {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            log10: Option<f64>,
        }
        let r = Repr::deserialize(d)?;
        Ok(match r.log10 {
            Some(l) => Magnitude::from_ln(l * std::f64::consts::LN_10),
            None => Magnitude::ZERO,
        })
    }
}

/// `3^{(c-1)/3} · n²`, valid for weakly c-closed graphs.
pub fn bound_init(n: u64, c: u32) -> Magnitude {
    assert!(n >= 1 && c >= 1);
    Magnitude::from_ln((c as f64 - 1.0) / 3.0 * 3f64.ln() + 2.0 * (n as f64).ln())
}

/// `4^{(c+4)(c-1)/2} · n^{2 - 2^{1-c}}`, valid for c-closed graphs.
pub fn bound_improved(n: u64, c: u32) -> Magnitude {
    assert!(n >= 1 && c >= 1);
    let c = c as f64;
    let exponent = 2.0 - 2f64.powf(1.0 - c);
    Magnitude::from_ln((c + 4.0) * (c - 1.0) / 2.0 * 4f64.ln() + exponent * (n as f64).ln())
}

/// `n · A` for an A-bounded graph.
pub fn bound_abound(n: u64, a: f64) -> Magnitude {
    assert!(a >= 0.0);
    if n == 0 || a == 0.0 {
        return Magnitude::ZERO;
    }
    Magnitude::from_ln((n as f64).ln() + a.ln())
}

/// `Σ_{i>0} 8 p(i) 3^{i/3} / (i+2)`.
pub fn bound_stats(stats: &CodegreeStats) -> Magnitude {
    stats
        .p
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &cnt)| cnt > 0)
        .map(|(i, &cnt)| {
            let i = i as f64;
            Magnitude::from_ln((8.0 * cnt as f64).ln() + i / 3.0 * 3f64.ln() - (i + 2.0).ln())
        })
        .fold(Magnitude::ZERO, |a, b| a + b)
}

/// Expected number of vertices that come after all their neighbours in a
/// uniformly random order, `Σ_v 1/(deg(v)+1)`. Each such vertex is a
/// maximal clique of its suffix graph that the pair sum does not see.
pub fn isolation_term(g: &Graph) -> f64 {
    g.vertices().map(|v| 1.0 / (g.degree(v) as f64 + 1.0)).sum()
}

pub const PEELING_BOUND: &str = "peeling bound 3^((c-1)/3)*n^2 at the weak closure";
pub const HIGH_DEGREE_BOUND: &str = "high-degree bound 4^((c+4)(c-1)/2)*n^(2-2^(1-c)) at the closure";
pub const A_BOUND: &str = "A-bound n*A";
pub const STATS_BOUND: &str = "codegree-statistics bound sum 8p(i)3^(i/3)/(i+2)";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub c_closure: u32,
    pub weak_c_closure: u32,
    pub a_bound: f64,
    pub components: usize,
    pub observed_maximal_cliques: Option<u64>,
    pub count_available: bool,
    pub bound_init: Magnitude,
    pub bound_improved: Magnitude,
    pub bound_abound: Magnitude,
    pub bound_stats: Magnitude,
    /// `max(n·A, components)`.
    pub bound_abound_certified: Magnitude,
    /// Pair sum plus [`isolation_term`].
    pub bound_stats_certified: Magnitude,
    pub abound_clamped: bool,
    pub stats_clamped: bool,
    pub violations: Vec<String>,
}

impl BoundReport {
    /// The smallest certified bound.
    pub fn tightest(&self) -> Magnitude {
        [
            self.bound_init,
            self.bound_improved,
            self.bound_abound_certified,
            self.bound_stats_certified,
        ]
        .into_iter()
        .fold(Magnitude::from_ln(f64::INFINITY), |a, b| {
            if b.ln < a.ln {
                b
            } else {
                a
            }
        })
    }

    pub fn bounds(&self) -> [(&'static str, Magnitude); 4] {
        [
            (PEELING_BOUND, self.bound_init),
            (HIGH_DEGREE_BOUND, self.bound_improved),
            (A_BOUND, self.bound_abound_certified),
            (STATS_BOUND, self.bound_stats_certified),
        ]
    }
}

#[derive(Debug, Clone, Default)]
pub struct CertifyOptions {
    pub skip_count: bool,
    pub deadline: Option<Instant>,
    pub closure: ClosureOptions,
    pub max_subcall: Option<usize>,
}

/// Computes every parameter and bound and compares them with the exact
/// maximal clique count. Never fails on a violated bound; see [`certify`].
pub fn evaluate(g: &Graph, opts: &CertifyOptions) -> Result<BoundReport> {
    if g.n() == 0 {
        return Err(Error::InvalidArgument("bounds need at least one vertex".into()));
    }
    let closure_opts = ClosureOptions {
        deadline: opts.deadline,
        ..opts.closure.clone()
    };
    let report = weak_closure_with(g, &closure_opts)?;
    let a = a_bound_with(g, &closure_opts)?;
    let stats = crate::closure::codegree_stats_with(g, &closure_opts);
    let n = g.n() as u64;
    let components = connected_components(g);

    let observed = if opts.skip_count {
        None
    } else {
        let cc_opts = CClosedOptions {
            max_subcall: opts.max_subcall.unwrap_or(40),
            deadline: opts.deadline,
            ..Default::default()
        };
        match cclosed::run(g, &report.ordering, &cc_opts) {
            Ok(run) => Some(run.forest.leaf_count() as u64),
            Err(Error::SubcallTooLarge { .. }) if opts.deadline.is_none() => Some(count_pivot(g)),
            Err(Error::SubcallTooLarge { .. }) | Err(Error::BudgetExceeded(_)) => None,
            Err(e) => return Err(e),
        }
    };

    let bound_abound_raw = bound_abound(n, a.value);
    let comp = Magnitude::from_value(components as f64);
    let bound_stats_raw = bound_stats(&stats);
    let mut out = BoundReport {
        n: g.n(),
        m: g.m(),
        c_closure: report.c_closure,
        weak_c_closure: report.weak_c_closure,
        a_bound: a.value,
        components,
        observed_maximal_cliques: observed,
        count_available: observed.is_some(),
        bound_init: bound_init(n, report.weak_c_closure),
        bound_improved: bound_improved(n, report.c_closure),
        bound_abound: bound_abound_raw,
        bound_stats: bound_stats_raw,
        bound_abound_certified: bound_abound_raw.max(comp),
        bound_stats_certified: bound_stats_raw + Magnitude::from_value(isolation_term(g)),
        abound_clamped: bound_abound_raw < comp,
        stats_clamped: bound_stats_raw < comp,
        violations: Vec::new(),
    };
    if let Some(count) = observed {
        out.violations = out
            .bounds()
            .iter()
            .filter(|(_, b)| !b.dominates(count))
            .map(|(name, b)| format!("{name}: observed {count} > {b}"))
            .collect();
    }
    Ok(out)
}

/// [`evaluate`], failing with the first violated bound.
pub fn certify(g: &Graph, opts: &CertifyOptions) -> Result<BoundReport> {
    let report = evaluate(g, opts)?;
    if let Some(count) = report.observed_maximal_cliques {
        if let Some((name, b)) = report.bounds().into_iter().find(|(_, b)| !b.dominates(count)) {
            return Err(Error::BoundViolation {
                bound_name: name,
                observed: count,
                bound: b.to_string(),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::codegree_stats;
    use crate::generators;

    #[test]
    fn init_values() {
        assert!((bound_init(1, 1).value() - 1.0).abs() < 1e-12);
        assert!((bound_init(9, 7).value() - 729.0).abs() < 1e-9);
        assert!((bound_init(10, 2).value() - 144.224_957_030_740_8).abs() < 1e-9);
        assert!((bound_init(10, 2).ln() - (100f64.ln() + 3f64.ln() / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn improved_values() {
        for n in [1u64, 2, 7, 1000] {
            assert!((bound_improved(n, 1).value() - n as f64).abs() < 1e-9 * n as f64);
            assert!((bound_init(n, 1).value() - (n * n) as f64).abs() < 1e-9 * (n * n) as f64);
        }
        let expect = 16384.0 * 100f64.powf(1.75);
        assert!((bound_improved(100, 3).value() / expect - 1.0).abs() < 1e-12);
        assert!(bound_improved(9, 7).dominates(27));
        // far outside f64 range yet still ordered
        assert!(bound_improved(1000, 40).ln() > 700.0);
        assert!(bound_improved(1000, 40).dominates(u64::MAX));
    }

    #[test]
    fn abound_and_stats_values() {
        assert!(bound_abound(7, 0.0).is_zero());
        let c5a = 2.0 * 3f64.powf(1.0 / 3.0);
        assert!((bound_abound(5, c5a).value() - 14.422_495_703_074_08).abs() < 1e-9);
        assert!((bound_abound(9, 18.0).value() - 162.0).abs() < 1e-9);
        let mm9 = codegree_stats(&generators::moon_moser(9).unwrap());
        assert!((bound_stats(&mm9).value() - 81.0).abs() < 1e-9);
        assert!(bound_stats(&codegree_stats(&generators::complete(6))).is_zero());
    }

    #[test]
    fn stats_bound_ratio_on_moon_moser() {
        for k in [5usize, 10, 20, 40] {
            let n = 3 * k;
            let g = generators::moon_moser(n).unwrap();
            let ratio = bound_stats(&codegree_stats(&g)).value() / 3f64.powf(k as f64);
            let expected = 8.0 / 3.0 * n as f64 / (n as f64 - 1.0);
            assert!((ratio / expected - 1.0).abs() < 1e-9, "n={n} ratio={ratio}");
        }
    }

    #[test]
    fn certify_moon_moser() {
        let r = certify(&generators::moon_moser(9).unwrap(), &Default::default()).unwrap();
        assert_eq!(r.observed_maximal_cliques, Some(27));
        assert!(r.violations.is_empty());
        for (_, b) in r.bounds() {
            assert!(b.dominates(27));
        }
        assert!((r.a_bound - 18.0).abs() < 1e-9);
    }

    #[test]
    fn complete_graph_clamps() {
        let r = certify(&generators::complete(6), &Default::default()).unwrap();
        assert!(r.abound_clamped && r.stats_clamped);
        assert!((r.bound_abound_certified.value() - 1.0).abs() < 1e-12);
        assert!((r.bound_stats_certified.value() - 1.0).abs() < 1e-12);
        assert_eq!(r.observed_maximal_cliques, Some(1));
    }

    #[test]
    fn path_plus_isolated_vertices() {
        // P3 plus three isolated vertices: 5 maximal cliques against a raw
        // pair sum of 8·3^{1/3}/3 ≈ 3.85 and only 4 components
        let g = Graph::from_edges(6, [(0, 1), (1, 2)]).unwrap();
        let r = certify(&g, &Default::default()).unwrap();
        assert_eq!(r.observed_maximal_cliques, Some(5));
        assert!(r.bound_stats.value() < 4.0);
        assert!(r.bound_stats_certified.dominates(5));
    }

    #[test]
    fn skip_count() {
        let opts = CertifyOptions {
            skip_count: true,
            ..Default::default()
        };
        let r = evaluate(&generators::cycle(5).unwrap(), &opts).unwrap();
        assert!(!r.count_available);
        assert!((r.bound_init.value() - 3f64.powf(1.0 / 3.0) * 25.0).abs() < 1e-9);
    }

    #[test]
    fn magnitude_arithmetic() {
        let a = Magnitude::from_value(3.0);
        let b = Magnitude::from_value(4.0);
        assert!(((a + b).value() - 7.0).abs() < 1e-12);
        assert_eq!(Magnitude::ZERO + a, a);
        assert!(Magnitude::from_value(5.0).dominates(5));
        assert!(!Magnitude::from_value(4.999).dominates(5));
        let json = serde_json::to_string(&bound_improved(1000, 40)).unwrap();
        assert!(json.contains("\"value\":null"));
    }
}
