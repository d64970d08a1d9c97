//! Maximal clique enumeration: the pivot baseline and the
//! closure-parameterized peeling algorithm.

pub mod cclosed;
pub mod forest;
pub mod pivot;

pub use cclosed::{
    cclosed_cliques_exact, cclosed_cliques_superset, CClosedOptions, CClosedRun, Mode, RunStats,
    Type3Emission,
};
pub use forest::{CliqueForest, CliqueSet, NodeId};
pub use pivot::{cliques_pivot, count_pivot, degeneracy_ordering, maximal_cliques_of_subset};

use crate::closure::weak_closure;
use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Pivot,
    CClosed,
}

/// Number of distinct maximal cliques. The closure algorithm runs in exact
/// mode over the weak-closure ordering.
pub fn count_maximal_cliques(g: &Graph, algorithm: Algorithm) -> Result<u64> {
    match algorithm {
        Algorithm::Pivot => Ok(count_pivot(g)),
        Algorithm::CClosed => {
            let ordering = weak_closure(g).ordering;
            let run = cclosed::run(g, &ordering, &CClosedOptions::default())?;
            Ok(run.forest.leaf_count() as u64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn counts_agree() {
        for (g, expected) in [
            (generators::cycle(5).unwrap(), 5),
            (generators::moon_moser(15).unwrap(), 243),
            (generators::clique_minus_edge(5).unwrap(), 2),
        ] {
            assert_eq!(count_maximal_cliques(&g, Algorithm::Pivot).unwrap(), expected);
            assert_eq!(count_maximal_cliques(&g, Algorithm::CClosed).unwrap(), expected);
        }
    }
}
