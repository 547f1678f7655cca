//! Pins the `f9`, `f10`, `f12`, `f13` aliases to concrete catalog graphs.
//!
//! Candidates are the catalog graphs with a triangle and five or six edges.
//! An assignment must satisfy every containment that the lower- and
//! upper-bound arguments rely on, plus the two-color Ramsey values
//! 9, 9, 10, 10, which are computed here by search.

use std::collections::BTreeMap;

use super::values::{compute_r2, SearchBound};
use super::{SearchConfig, SearchError, Verdict};
use crate::catalog::{catalog_graph_with, CatalogId, Named, PresetTable};
use crate::pattern::{is_isomorphic, is_subgraph, TargetGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PinConfig {
    /// Node budget for each single-order search.
    pub budget: u64,
    pub threads: usize,
    /// Largest order scanned per candidate.
    pub n_max: usize,
}

impl Default for PinConfig {
    fn default() -> PinConfig {
        PinConfig {
            budget: 2_000_000_000,
            threads: 1,
            n_max: 10,
        }
    }
}

/// A host graph that some alias must embed into.
#[derive(Clone, Debug)]
pub struct Host {
    pub name: &'static str,
    pub graph: TargetGraph,
    pub aliases: &'static [u8],
}

#[derive(Clone, Debug)]
pub struct PinReport {
    pub config: PinConfig,
    pub r2: BTreeMap<Named, SearchBound>,
    pub hosts: Vec<Host>,
    /// Consistent `(f9, f10, f12, f13)` assignments in lexicographic order.
    pub assignments: Vec<[Named; 4]>,
    pub table: PresetTable,
}

const ALIASES: [u8; 4] = [9, 10, 12, 13];
const REQUIRED_R2: [usize; 4] = [9, 9, 10, 10];

pub fn candidates() -> Vec<Named> {
    Named::ALL
        .into_iter()
        .filter(|n| *n != Named::Banner)
        .filter(|n| {
            let g = n.graph();
            (5..=6).contains(&g.edge_count()) && g.contains_triangle()
        })
        .collect()
}

fn graph(order: usize, edges: &[(usize, usize)]) -> TargetGraph {
    TargetGraph::new(order, edges).expect("static host")
}

pub fn hosts() -> Vec<Host> {
    let k133 = catalog_graph_with(
        &CatalogId::CompleteMultipartite(vec![1, 3, 3]),
        &PresetTable::certain(),
    )
    .expect("k133");
    // {0,1,2} | {3,4} complete bipartite plus the edge 01
    let k23e = graph(
        5,
        &[(0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4), (0, 1)],
    );
    // {0,1,2} | {3,4,5} complete bipartite plus the edge 01
    let k33e = graph(
        6,
        &[
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
            (0, 1),
        ],
    );
    // apex 0 over the path 1-2-3-4
    let gem = graph(
        5,
        &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)],
    );
    // apex 0 over the path 1-2-3 and the vertex 4
    let apex_p3 = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3)]);
    vec![
        Host {
            name: "k133",
            graph: k133,
            aliases: &[10, 12],
        },
        Host {
            name: "apex_over_p4",
            graph: gem,
            aliases: &[10, 12, 13],
        },
        Host {
            name: "k23_plus_edge",
            graph: k23e,
            aliases: &[10, 13],
        },
        Host {
            name: "k33_plus_edge",
            graph: k33e,
            aliases: &[12, 13],
        },
        Host {
            name: "apex_over_p3_k1",
            graph: apex_p3,
            aliases: &[12],
        },
    ]
}

fn structural_ok(assign: &[Named; 4], hosts: &[Host]) -> bool {
    let [f9, f10, ..] = *assign;
    for i in 0..4 {
        for j in i + 1..4 {
            if assign[i] == assign[j] {
                return false;
            }
        }
    }
    if !is_subgraph(&f9.graph(), &f10.graph()) || is_isomorphic(&f9.graph(), &f10.graph()) {
        return false;
    }
    hosts.iter().all(|h| {
        h.aliases.iter().all(|a| {
            let idx = ALIASES.iter().position(|x| x == a).expect("known alias");
            is_subgraph(&assign[idx].graph(), &h.graph)
        })
    })
}

/// Runs the pinning procedure. Deterministic for a fixed configuration.
pub fn pin_presets(config: &PinConfig) -> Result<PinReport, SearchError> {
    let cands = candidates();
    let search = SearchConfig::proof(config.budget).threads(config.threads);
    let mut r2 = BTreeMap::new();
    for &c in &cands {
        r2.insert(c, compute_r2(&c.graph(), config.n_max, &search)?);
    }
    let hosts = hosts();
    let r2_matches = |named: Named, want: usize| {
        let b = &r2[&named];
        b.lo <= want && b.hi.is_none_or(|hi| want <= hi)
    };
    let mut assignments = Vec::new();
    for &a in &cands {
        for &b in &cands {
            for &c in &cands {
                for &d in &cands {
                    let assign = [a, b, c, d];
                    if assign
                        .iter()
                        .zip(REQUIRED_R2)
                        .all(|(&n, want)| r2_matches(n, want))
                        && structural_ok(&assign, &hosts)
                    {
                        assignments.push(assign);
                    }
                }
            }
        }
    }
    let mut table = PresetTable::certain();
    for (i, alias) in ALIASES.iter().enumerate() {
        let mut names: Vec<Named> = assignments.iter().map(|a| a[i]).collect();
        names.sort();
        names.dedup();
        if !names.is_empty() {
            table.set(*alias, names);
        }
    }
    Ok(PinReport {
        config: config.clone(),
        r2,
        hosts,
        assignments,
        table,
    })
}

impl PinReport {
    /// True when exactly one assignment survived.
    pub fn is_unique(&self) -> bool {
        self.assignments.len() == 1
    }

    /// Preset file contents.
    pub fn preset_text(&self) -> String {
        let mut out = String::from("# f-alias preset table; regenerate with `grlab pin`.\n");
        if !self.is_unique() {
            out.push_str(&format!(
                "# {} consistent assignments; aliases list every candidate\n",
                self.assignments.len()
            ));
        }
        out.push_str(&self.table.to_text());
        out
    }

    /// Evidence text. Contains no timings, so reruns with the same
    /// configuration reproduce it byte for byte.
    pub fn evidence(&self) -> String {
        let mut out = String::from("grlab-pin-evidence v1\n");
        out.push_str(&format!(
            "config budget={} n_max={}\n",
            self.config.budget, self.config.n_max
        ));
        for (named, bound) in &self.r2 {
            let g = named.graph();
            out.push_str(&format!(
                "r2 {} edges={} value={}\n",
                named.label(),
                g.edge_count(),
                bound
            ));
            for o in &bound.outcomes {
                let v = match &o.verdict {
                    Verdict::Found(_) => "found".to_string(),
                    Verdict::Exhausted { max_depth, .. } => format!("exhausted max_depth={max_depth}"),
                    Verdict::Budget { .. } => "budget".to_string(),
                };
                out.push_str(&format!("  n={} {} nodes={}\n", o.n, v, o.nodes));
            }
        }
        for h in &self.hosts {
            let aliases: Vec<String> = h.aliases.iter().map(|a| format!("f{a}")).collect();
            let inside: Vec<&str> = self
                .r2
                .keys()
                .filter(|n| is_subgraph(&n.graph(), &h.graph))
                .map(|n| n.label())
                .collect();
            out.push_str(&format!(
                "host {} for {} contains [{}]\n",
                h.name,
                aliases.join(","),
                inside.join(",")
            ));
        }
        out.push_str(&format!("assignments {}\n", self.assignments.len()));
        for a in &self.assignments {
            out.push_str(&format!(
                "  f9={} f10={} f12={} f13={}\n",
                a[0].label(),
                a[1].label(),
                a[2].label(),
                a[3].label()
            ));
        }
        out.push_str("table\n");
        for line in self.table.to_text().lines() {
            out.push_str(&format!("  {line}\n"));
        }
        out
    }
}
