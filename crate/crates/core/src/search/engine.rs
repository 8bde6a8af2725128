//! The enumeration core: restricted-growth DFS over color matrices with
//! pluggable pruning, optional canonical-orbit filtering, and a worker pool
//! that splits the tree at the first two rows into independent subtree tasks.
//!
//! Symmetry breaking: the first cell is always color 1 and a new color may
//! only be introduced as (max so far)+1, so every coloring appears exactly
//! once per color-relabeling class. Task results merge in task order, which
//! keeps parallel runs byte-identical to sequential ones.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{mpsc, Mutex};

use crate::bigraph::ColoredBigraph;
use crate::search::canonical::canonical_form;
use crate::search::partial::{PartialColoring, Pruner};
use crate::search::{SearchError, SearchStats, MAX_SEARCH_SIDE};

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    /// Deliver one representative per canonical orbit (sequential only).
    pub orbit_filter: bool,
    /// Deliver only colorings using all k colors.
    pub require_exact: bool,
    pub node_budget: u64,
}

impl Default for EnumerateOptions {
    fn default() -> EnumerateOptions {
        EnumerateOptions { orbit_filter: false, require_exact: false, node_budget: 1_000_000_000 }
    }
}

/// Per-leaf folding for the internal (possibly parallel) engine.
pub(crate) trait Harvest: Sync {
    type Acc: Send;
    fn new_acc(&self) -> Self::Acc;
    /// Visit a complete coloring; `false` requests a global stop.
    fn visit(&self, acc: &mut Self::Acc, g: &ColoredBigraph) -> Result<bool, SearchError>;
}

pub(crate) struct EngineConfig<'a> {
    pub n: usize,
    pub k: u16,
    pub pruner: Pruner<'a>,
    pub require_exact: bool,
    pub orbit_filter: bool,
    pub node_budget: u64,
    pub jobs: usize,
}

enum Interrupt {
    Budget,
    Aborted,
    Error(SearchError),
}

struct Shared<'a> {
    cfg: &'a EngineConfig<'a>,
    spent: AtomicU64,
    break_at: AtomicUsize,
    orbit_seen: Mutex<HashSet<crate::search::canonical::CanonicalCode>>,
}

impl Shared<'_> {
    fn spend(&self) -> Result<(), Interrupt> {
        let used = self.spent.fetch_add(1, Ordering::Relaxed);
        if used >= self.cfg.node_budget {
            Err(Interrupt::Budget)
        } else {
            Ok(())
        }
    }
}

struct TaskRun<'a, 'h, H: Harvest> {
    shared: &'a Shared<'a>,
    harvest: &'h H,
    task_idx: usize,
    acc: H::Acc,
    nodes: u64,
    leaves: u64,
    orbits: u64,
    stopped: bool,
}

impl<H: Harvest> TaskRun<'_, '_, H> {
    fn dfs(&mut self, p: &mut PartialColoring) -> Result<(), Interrupt> {
        if self.stopped {
            return Ok(());
        }
        if p.is_complete() {
            return self.leaf(p);
        }
        let cfg = self.shared.cfg;
        let cells_left = p.n() * p.n() - p.filled();
        for c in 1..=p.next_color_limit() {
            self.shared.spend()?;
            self.nodes += 1;
            if self.nodes % 1024 == 0
                && self.task_idx > self.shared.break_at.load(Ordering::Relaxed)
            {
                return Err(Interrupt::Aborted);
            }
            p.push(c);
            let missing = u64::from(cfg.k) - u64::from(p.used_count());
            let dead_exact = cfg.require_exact && (cells_left as u64 - 1) < missing;
            if !dead_exact && !(cfg.pruner)(p) {
                self.dfs(p)?;
            }
            p.pop();
            if self.stopped {
                return Ok(());
            }
        }
        Ok(())
    }

    fn leaf(&mut self, p: &PartialColoring) -> Result<(), Interrupt> {
        let cfg = self.shared.cfg;
        if cfg.require_exact && p.used_count() != cfg.k {
            return Ok(());
        }
        if p.used_count() == 0 {
            return Ok(());
        }
        let g = p.to_bigraph();
        if cfg.orbit_filter {
            let code = canonical_form(&g).map_err(Interrupt::Error)?;
            let mut seen = self.shared.orbit_seen.lock().expect("orbit set");
            if !seen.insert(code) {
                return Ok(());
            }
            self.orbits += 1;
        }
        self.leaves += 1;
        match self.harvest.visit(&mut self.acc, &g) {
            Ok(true) => Ok(()),
            Ok(false) => {
                self.stopped = true;
                self.shared.break_at.fetch_min(self.task_idx, Ordering::SeqCst);
                Ok(())
            }
            Err(e) => Err(Interrupt::Error(e)),
        }
    }
}

/// Collect the surviving prefixes at the split depth, sequentially.
fn collect_tasks(
    shared: &Shared<'_>,
    depth: usize,
    nodes: &mut u64,
) -> Result<Vec<PartialColoring>, SearchError> {
    let cfg = shared.cfg;
    let mut tasks = Vec::new();
    let mut p = PartialColoring::empty(cfg.n, cfg.k);
    fn rec(
        shared: &Shared<'_>,
        p: &mut PartialColoring,
        depth: usize,
        nodes: &mut u64,
        tasks: &mut Vec<PartialColoring>,
    ) -> Result<(), SearchError> {
        if p.filled() == depth {
            tasks.push(p.clone());
            return Ok(());
        }
        for c in 1..=p.next_color_limit() {
            shared.spend().map_err(|_| SearchError::BudgetExceeded {
                budget: shared.cfg.node_budget,
                visited: shared.spent.load(Ordering::Relaxed),
            })?;
            *nodes += 1;
            p.push(c);
            if !(shared.cfg.pruner)(p) {
                rec(shared, p, depth, nodes, tasks)?;
            }
            p.pop();
        }
        Ok(())
    }
    rec(shared, &mut p, depth, nodes, &mut tasks)?;
    Ok(tasks)
}

/// Run the engine; accumulators come back in task order, truncated at the
/// first task that requested a stop.
pub(crate) fn run_harvest<H: Harvest>(
    cfg: &EngineConfig<'_>,
    harvest: &H,
) -> Result<(Vec<H::Acc>, SearchStats, bool), SearchError> {
    if cfg.n == 0 || cfg.n > MAX_SEARCH_SIDE {
        return Err(SearchError::SizeGuard(cfg.n, cfg.n));
    }
    if cfg.k == 0 {
        return Err(SearchError::NoColors(cfg.k));
    }
    if cfg.orbit_filter && cfg.jobs > 1 {
        return Err(SearchError::OrbitFilterParallel);
    }
    let start = std::time::Instant::now();
    let shared = Shared {
        cfg,
        spent: AtomicU64::new(0),
        break_at: AtomicUsize::new(usize::MAX),
        orbit_seen: Mutex::new(HashSet::new()),
    };
    let mut stats = SearchStats::default();
    let jobs = cfg.jobs.max(1);
    let split_depth = if jobs == 1 { 0 } else { (2 * cfg.n).min(cfg.n * cfg.n) };
    let mut prefix_nodes = 0u64;
    let tasks = collect_tasks(&shared, split_depth, &mut prefix_nodes)?;
    stats.nodes += prefix_nodes;

    type TaskResult<A> = (usize, Option<(A, u64, u64, u64, bool)>);
    let (tx, rx) = mpsc::channel::<TaskResult<H::Acc>>();
    let next = AtomicUsize::new(0);
    let budget_hit = AtomicUsize::new(0);
    let run_error: Mutex<Option<SearchError>> = Mutex::new(None);

    std::thread::scope(|scope| {
        for _ in 0..jobs.min(tasks.len()).max(1) {
            let tx = tx.clone();
            let shared = &shared;
            let tasks = &tasks;
            let next = &next;
            let budget_hit = &budget_hit;
            let run_error = &run_error;
            scope.spawn(move || loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= tasks.len() || budget_hit.load(Ordering::SeqCst) != 0 {
                    return;
                }
                if idx > shared.break_at.load(Ordering::SeqCst) {
                    let _ = tx.send((idx, None));
                    continue;
                }
                let mut run = TaskRun {
                    shared,
                    harvest,
                    task_idx: idx,
                    acc: harvest.new_acc(),
                    nodes: 0,
                    leaves: 0,
                    orbits: 0,
                    stopped: false,
                };
                let mut p = tasks[idx].clone();
                match run.dfs(&mut p) {
                    Ok(()) => {
                        let _ = tx.send((
                            idx,
                            Some((run.acc, run.nodes, run.leaves, run.orbits, run.stopped)),
                        ));
                    }
                    Err(Interrupt::Aborted) => {
                        let _ = tx.send((idx, None));
                    }
                    Err(Interrupt::Budget) => {
                        budget_hit.store(1, Ordering::SeqCst);
                        let _ = tx.send((idx, None));
                    }
                    Err(Interrupt::Error(e)) => {
                        *run_error.lock().expect("error slot") = Some(e);
                        budget_hit.store(2, Ordering::SeqCst);
                        let _ = tx.send((idx, None));
                    }
                }
            });
        }
        drop(tx);
    });

    if let Some(e) = run_error.lock().expect("error slot").take() {
        return Err(e);
    }
    if budget_hit.load(Ordering::SeqCst) == 1 {
        return Err(SearchError::BudgetExceeded {
            budget: cfg.node_budget,
            visited: shared.spent.load(Ordering::Relaxed),
        });
    }

    let mut results: Vec<TaskResult<H::Acc>> = rx.into_iter().collect();
    results.sort_by_key(|(idx, _)| *idx);
    let break_at = shared.break_at.load(Ordering::SeqCst);
    let mut accs = Vec::new();
    let mut stopped = false;
    for (idx, payload) in results {
        if idx > break_at {
            continue;
        }
        let Some((acc, nodes, leaves, orbits, task_stopped)) = payload else {
            return Err(SearchError::Internal(format!("task {idx} below the stop point was dropped")));
        };
        stats.nodes += nodes;
        stats.leaves += leaves;
        if cfg.orbit_filter {
            stats.orbits = Some(stats.orbits.unwrap_or(0) + orbits);
        }
        stopped |= task_stopped;
        accs.push(acc);
    }
    stats.wall_ms = start.elapsed().as_millis() as u64;
    Ok((accs, stats, stopped))
}

struct FnHarvest<F>(Mutex<F>);

impl<F: FnMut(&ColoredBigraph) -> bool + Send> Harvest for FnHarvest<F> {
    type Acc = ();

    fn new_acc(&self) {}

    fn visit(&self, _: &mut (), g: &ColoredBigraph) -> Result<bool, SearchError> {
        Ok((self.0.lock().expect("visitor"))(g))
    }
}

/// DFS over all colorings of K_{n,n} with colors introduced in order,
/// cutting branches the pruner rejects, and feeding every surviving complete
/// coloring to the visitor (once per canonical orbit when `orbit_filter`).
/// The visitor returns `false` to stop early.
pub fn enumerate_colorings(
    n: usize,
    k: u16,
    pruner: Pruner<'_>,
    visitor: impl FnMut(&ColoredBigraph) -> bool + Send,
    opts: &EnumerateOptions,
) -> Result<SearchStats, SearchError> {
    let cfg = EngineConfig {
        n,
        k,
        pruner,
        require_exact: opts.require_exact,
        orbit_filter: opts.orbit_filter,
        node_budget: opts.node_budget,
        jobs: 1,
    };
    let harvest = FnHarvest(Mutex::new(visitor));
    let (_, stats, _) = run_harvest(&cfg, &harvest)?;
    Ok(stats)
}
