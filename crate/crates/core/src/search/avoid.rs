//! Avoidance search: exhaustive pruned DFS for a coloring containing none of
//! the forbidden structures.
//!
//! A branch is cut the moment a forbidden structure is present in the
//! partial coloring, so a returned coloring is a verified witness and
//! exhaustion of the tree proves absence. Budget exhaustion is reported as
//! an error, never as absence.

use crate::bigraph::ColoredBigraph;
use crate::search::engine::{run_harvest, EngineConfig, Harvest};
use crate::search::partial::{mono_pruner, rainbow_pruner, PartialColoring};
use crate::search::{SearchError, SearchStats};
use crate::target::{RainbowPattern, TargetGraph};

#[derive(Debug, Clone)]
pub struct AvoidSpec {
    pub n: usize,
    pub k: u16,
    pub forbid_rainbow: Option<RainbowPattern>,
    pub forbid_mono: Option<TargetGraph>,
    pub require_exact: bool,
}

struct FirstWitness;

impl Harvest for FirstWitness {
    type Acc = Option<ColoredBigraph>;

    fn new_acc(&self) -> Self::Acc {
        None
    }

    fn visit(&self, acc: &mut Self::Acc, g: &ColoredBigraph) -> Result<bool, SearchError> {
        *acc = Some(g.clone());
        Ok(false)
    }
}

/// Search K_{n,n} for a coloring avoiding the forbidden structures. Returns
/// the first witness in DFS order, or `None` after a complete search.
pub fn exists_avoiding(
    spec: &AvoidSpec,
    node_budget: u64,
    jobs: usize,
) -> Result<(Option<ColoredBigraph>, SearchStats), SearchError> {
    let rainbow = spec.forbid_rainbow.map(rainbow_pruner);
    let mono = spec.forbid_mono.clone().map(mono_pruner);
    let pruner = move |p: &PartialColoring| {
        if let Some(r) = &rainbow {
            if r(p) {
                return true;
            }
        }
        if let Some(m) = &mono {
            if m(p) {
                return true;
            }
        }
        false
    };
    let cfg = EngineConfig {
        n: spec.n,
        k: spec.k,
        pruner: &pruner,
        require_exact: spec.require_exact,
        orbit_filter: false,
        node_budget,
        jobs,
    };
    let (accs, stats, _) = run_harvest(&cfg, &FirstWitness)?;
    let witness = accs.into_iter().flatten().next();
    Ok((witness, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{find_monochromatic, find_rainbow};

    fn spec(n: usize, k: u16, mono: &str) -> AvoidSpec {
        let target = match mono {
            "P4" => TargetGraph::path(4).unwrap(),
            "P5" => TargetGraph::path(5).unwrap(),
            "P6" => TargetGraph::path(6).unwrap(),
            _ => unreachable!(),
        };
        AvoidSpec { n, k, forbid_rainbow: None, forbid_mono: Some(target), require_exact: true }
    }

    #[test]
    fn k22_admits_a_mono_p4_free_2_coloring() {
        let (witness, _) = exists_avoiding(&spec(2, 2, "P4"), 1 << 20, 1).unwrap();
        let g = witness.expect("br_2(P_4) = 3, so K_{2,2} has a witness");
        assert!(find_monochromatic(&g, &TargetGraph::path(4).unwrap()).is_none());
        assert!(g.is_exact());
    }

    #[test]
    fn k33_forces_a_mono_p4() {
        let (witness, _) = exists_avoiding(&spec(3, 2, "P4"), 1 << 24, 1).unwrap();
        assert!(witness.is_none());
    }

    #[test]
    fn witnesses_pass_both_detectors() {
        let s = AvoidSpec {
            n: 3,
            k: 3,
            forbid_rainbow: Some(RainbowPattern::K13),
            forbid_mono: Some(TargetGraph::path(5).unwrap()),
            require_exact: true,
        };
        let (witness, _) = exists_avoiding(&s, 1 << 24, 1).unwrap();
        if let Some(g) = witness {
            assert!(find_rainbow(&g, RainbowPattern::K13).is_none());
            assert!(find_monochromatic(&g, &TargetGraph::path(5).unwrap()).is_none());
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        for jobs in [1, 4] {
            let (w, _) = exists_avoiding(&spec(3, 2, "P5"), 1 << 24, jobs).unwrap();
            let w1 = exists_avoiding(&spec(3, 2, "P5"), 1 << 24, 1).unwrap().0;
            assert_eq!(w, w1, "jobs={jobs}");
        }
    }

    #[test]
    fn tiny_budget_reports_inconclusive() {
        let r = exists_avoiding(&spec(3, 2, "P6"), 10, 1);
        assert!(matches!(r, Err(SearchError::BudgetExceeded { .. })));
    }
}
