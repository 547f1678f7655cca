//! Exhaustive search over k-colorings of `K_n`: witness finding,
//! unavoidability certificates, and small Ramsey / Gallai-Ramsey values.

mod engine;
pub mod pin;
mod values;

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::detect::{find_mono_copy, find_rainbow_triangle};
use crate::graph::{color, ColoredCompleteGraph, MAX_COLORS};
use crate::pattern::TargetGraph;

use engine::{CompiledPattern, Engine, Problem, Step, MAX_N};

pub use pin::{pin_presets, PinConfig, PinReport};
pub use values::{compute_gr, compute_r2, SearchBound};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search supports 1 <= n <= {MAX_N}, got {0}")]
    BadOrder(usize),
    #[error("search supports 1 <= k <= {MAX_COLORS}, got {0}")]
    BadColors(usize),
    #[error("forbidding nothing: set rainbow_k3 or give at least one pattern")]
    EmptyForbid,
    #[error("pattern {0} has no edges")]
    EdgelessPattern(String),
}

/// What a coloring must avoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forbid {
    pub rainbow_k3: bool,
    pub mono: Vec<TargetGraph>,
}

impl Forbid {
    pub fn mono(patterns: Vec<TargetGraph>) -> Forbid {
        Forbid {
            rainbow_k3: false,
            mono: patterns,
        }
    }

    pub fn gallai(patterns: Vec<TargetGraph>) -> Forbid {
        Forbid {
            rainbow_k3: true,
            mono: patterns,
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if !self.rainbow_k3 && self.mono.is_empty() {
            return Err(SearchError::EmptyForbid);
        }
        if let Some(h) = self.mono.iter().find(|h| h.edge_count() == 0) {
            return Err(SearchError::EdgelessPattern(h.to_string()));
        }
        Ok(())
    }

    /// True iff `g` violates none of the constraints (checked with `detect`).
    pub fn admits(&self, g: &ColoredCompleteGraph) -> bool {
        if self.rainbow_k3 && find_rainbow_triangle(g).is_some() {
            return false;
        }
        self.mono
            .iter()
            .all(|h| h.order() > g.n() || find_mono_copy(g, h, None).ok().flatten().is_none())
    }
}

impl fmt::Display for Forbid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.mono.iter().map(|h| h.to_string()).collect();
        write!(
            f,
            "rainbow_k3={} mono=[{}]",
            self.rainbow_k3,
            names.join(",")
        )
    }
}

/// Search knobs. Budgets count nodes (color assignments tried), not time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: u64,
    pub threads: usize,
    /// Number of edges colored before the tree is split into tasks
    /// (only used when `threads > 1`).
    pub split_depth: usize,
    pub vertex_pruning: bool,
}

impl SearchConfig {
    /// Defaults for witness hunts: vertex pruning off.
    pub fn witness(budget: u64) -> SearchConfig {
        SearchConfig {
            budget,
            threads: 1,
            split_depth: 10,
            vertex_pruning: false,
        }
    }

    /// Defaults for unavoidability proofs: vertex pruning on.
    pub fn proof(budget: u64) -> SearchConfig {
        SearchConfig {
            vertex_pruning: true,
            ..SearchConfig::witness(budget)
        }
    }

    pub fn threads(mut self, threads: usize) -> SearchConfig {
        self.threads = threads.max(1);
        self
    }
}

impl fmt::Display for SearchConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "budget={} threads={} split_depth={} vertex_pruning={}",
            self.budget, self.threads, self.split_depth, self.vertex_pruning
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A coloring violating nothing.
    Found(ColoredCompleteGraph),
    /// Every canonical branch visited; no such coloring exists.
    Exhausted { nodes: u64, max_depth: usize },
    /// The node budget ran out first.
    Budget { nodes: u64 },
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub n: usize,
    pub k: usize,
    pub forbid: Forbid,
    pub config: SearchConfig,
    pub verdict: Verdict,
    pub nodes: u64,
    /// Nodes per subtree task (one entry when run unsplit); the prefix
    /// enumeration is reported separately.
    pub prefix_nodes: u64,
    pub subtree_nodes: Vec<u64>,
    pub elapsed: Duration,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&ColoredCompleteGraph> {
        match &self.verdict {
            Verdict::Found(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self.verdict, Verdict::Exhausted { .. })
    }

    pub fn is_budget(&self) -> bool {
        matches!(self.verdict, Verdict::Budget { .. })
    }

    /// Line-oriented certificate text with the configuration echoed.
    /// Timing is omitted so certificates are reproducible byte for byte.
    pub fn certificate(&self) -> String {
        let mut out = String::from("grlab-certificate v1\n");
        out.push_str(&format!("n {}\nk {}\n", self.n, self.k));
        out.push_str(&format!("forbid {}\n", self.forbid));
        out.push_str(&format!("config {}\n", self.config));
        match &self.verdict {
            Verdict::Found(g) => {
                out.push_str(&format!("verdict found nodes={}\n", self.nodes));
                let text = String::from_utf8(crate::gcg::encode_gcg(g)).expect("ascii");
                for line in text.lines() {
                    out.push_str(&format!("coloring {line}\n"));
                }
            }
            Verdict::Exhausted { nodes, max_depth } => {
                out.push_str(&format!(
                    "verdict exhausted nodes={nodes} max_depth={max_depth}\n"
                ));
            }
            Verdict::Budget { nodes } => {
                out.push_str(&format!("verdict budget nodes={nodes}\n"));
            }
        }
        if self.subtree_nodes.len() > 1 {
            out.push_str(&format!("prefix_nodes {}\n", self.prefix_nodes));
            for (i, s) in self.subtree_nodes.iter().enumerate() {
                out.push_str(&format!("subtree {i} nodes={s}\n"));
            }
        }
        out
    }
}

fn compile(n: usize, k: usize, f: &Forbid, vertex_pruning: bool) -> Result<Problem, SearchError> {
    if !(1..=MAX_N).contains(&n) {
        return Err(SearchError::BadOrder(n));
    }
    if !(1..=MAX_COLORS).contains(&k) {
        return Err(SearchError::BadColors(k));
    }
    f.validate()?;
    Ok(Problem {
        n,
        k,
        rainbow: f.rainbow_k3,
        patterns: f
            .mono
            .iter()
            .filter(|h| h.order() <= n)
            .map(CompiledPattern::new)
            .collect(),
        vertex_pruning,
    })
}

fn to_graph(n: usize, k: usize, assignment: &[u8]) -> ColoredCompleteGraph {
    let edges = engine::edge_order(n);
    let mut lookup = vec![0u8; n * n];
    for (&(u, v), &c) in edges.iter().zip(assignment) {
        lookup[u * n + v] = c;
    }
    ColoredCompleteGraph::from_fn(n, k, |u, v| color(lookup[u * n + v] as usize))
        .expect("complete assignment")
}

/// Searches for a k-coloring of `K_n` violating nothing in `f`.
pub fn find_free_coloring(
    n: usize,
    k: usize,
    f: &Forbid,
    budget: u64,
) -> Result<SearchOutcome, SearchError> {
    search(n, k, f, &SearchConfig::witness(budget))
}

/// Dual of [`find_free_coloring`]: `Exhausted` certifies that every
/// k-coloring of `K_n` hits `f`; `Found` is a counterexample.
pub fn prove_unavoidable(
    n: usize,
    k: usize,
    f: &Forbid,
    budget: u64,
) -> Result<SearchOutcome, SearchError> {
    search(n, k, f, &SearchConfig::proof(budget))
}

/// Runs the search with an explicit configuration.
pub fn search(
    n: usize,
    k: usize,
    f: &Forbid,
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let problem = compile(n, k, f, config.vertex_pruning)?;
    let start = Instant::now();
    let (verdict, nodes, prefix_nodes, subtree_nodes) = if config.threads <= 1 {
        run_sequential(&problem, config.budget)
    } else {
        run_parallel(&problem, config)
    };
    if let Verdict::Found(g) = &verdict {
        assert!(f.admits(g), "search returned a coloring that violates {f}");
    }
    Ok(SearchOutcome {
        n,
        k,
        forbid: f.clone(),
        config: config.clone(),
        verdict,
        nodes,
        prefix_nodes,
        subtree_nodes,
        elapsed: start.elapsed(),
    })
}

fn run_sequential(p: &Problem, budget: u64) -> (Verdict, u64, u64, Vec<u64>) {
    let mut eng = Engine::new(p, budget);
    let total = eng.edge_count();
    let step = eng.run(0, total, &mut |_| true);
    let verdict = match step {
        Step::Found => Verdict::Found(to_graph(p.n, p.k, &eng.assignment())),
        Step::Exhausted => Verdict::Exhausted {
            nodes: eng.nodes,
            max_depth: eng.max_depth,
        },
        Step::Budget => Verdict::Budget { nodes: eng.nodes },
    };
    (verdict, eng.nodes, 0, vec![eng.nodes])
}

struct TaskResult {
    step: Step,
    nodes: u64,
    max_depth: usize,
    assignment: Option<Vec<u8>>,
}

fn run_parallel(p: &Problem, config: &SearchConfig) -> (Verdict, u64, u64, Vec<u64>) {
    let total = engine::edge_order(p.n).len();
    let split = config.split_depth.min(total);

    // enumerate surviving prefixes in DFS order
    let mut prefixes: Vec<Vec<u8>> = Vec::new();
    let mut eng = Engine::new(p, config.budget);
    let step = eng.run(0, split, &mut |e| {
        prefixes.push(e.assignment()[..split].to_vec());
        false
    });
    let prefix_nodes = eng.nodes;
    let prefix_depth = eng.max_depth;
    if matches!(step, Step::Budget) {
        return (Verdict::Budget { nodes: prefix_nodes }, prefix_nodes, prefix_nodes, vec![]);
    }

    let spent = AtomicU64::new(prefix_nodes);
    let stop = AtomicBool::new(false);
    // lowest task index that found a coloring
    let found_at = AtomicUsize::new(usize::MAX);
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<TaskResult>>> =
        Mutex::new((0..prefixes.len()).map(|_| None).collect());
    let budget = config.budget;

    std::thread::scope(|scope| {
        for _ in 0..config.threads {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= prefixes.len() || stop.load(Ordering::SeqCst) {
                    break;
                }
                if found_at.load(Ordering::SeqCst) < idx {
                    continue;
                }
                let poll = |delta: u64| {
                    let now = spent.fetch_add(delta, Ordering::SeqCst) + delta;
                    if now > budget {
                        stop.store(true, Ordering::SeqCst);
                    }
                    !stop.load(Ordering::SeqCst) && found_at.load(Ordering::SeqCst) >= idx
                };
                let mut eng = Engine::new(p, u64::MAX).with_poll(&poll);
                eng.replay(&prefixes[idx]);
                let step = eng.run(split, total, &mut |_| true);
                spent.fetch_add(eng.unpolled(), Ordering::SeqCst);
                let assignment = match step {
                    Step::Found => {
                        found_at.fetch_min(idx, Ordering::SeqCst);
                        Some(eng.assignment())
                    }
                    _ => None,
                };
                results.lock().expect("no poisoned workers")[idx] = Some(TaskResult {
                    step,
                    nodes: eng.nodes,
                    max_depth: eng.max_depth,
                    assignment,
                });
            });
        }
    });

    let results = results.into_inner().expect("no poisoned workers");
    let subtree_nodes: Vec<u64> = results
        .iter()
        .map(|r| r.as_ref().map_or(0, |r| r.nodes))
        .collect();
    let nodes = prefix_nodes + subtree_nodes.iter().sum::<u64>();
    let mut max_depth = prefix_depth;
    for r in &results {
        match r {
            Some(TaskResult {
                step: Step::Found,
                assignment: Some(a),
                ..
            }) => {
                return (
                    Verdict::Found(to_graph(p.n, p.k, a)),
                    nodes,
                    prefix_nodes,
                    subtree_nodes,
                )
            }
            Some(TaskResult {
                step: Step::Exhausted,
                max_depth: d,
                ..
            }) => max_depth = max_depth.max(*d),
            // an earlier task was cut short: no verdict can be certified
            _ => return (Verdict::Budget { nodes }, nodes, prefix_nodes, subtree_nodes),
        }
    }
    if nodes > budget {
        return (Verdict::Budget { nodes }, nodes, prefix_nodes, subtree_nodes);
    }
    (
        Verdict::Exhausted { nodes, max_depth },
        nodes,
        prefix_nodes,
        subtree_nodes,
    )
}
