//! Checks structural consequences of monochromatic-`H`-freeness on a Gallai
//! partition, for `H` among the f9/f10 and f12/f13 presets.

use std::fmt;

use thiserror::Error;

use crate::catalog::{Named, PresetTable};
use crate::detect::find_mono_copy_within;
use crate::gallai::{verify_partition, GallaiPartition, ValidationReport};
use crate::graph::{ColorId, ColoredCompleteGraph};
use crate::pattern::{is_isomorphic, TargetGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactError {
    #[error("invalid partition: {0}")]
    InvalidPartition(ValidationReport),
    #[error("pattern {0} is not an f9, f10, f12 or f13 preset candidate")]
    UnsupportedPattern(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactId {
    F3_1_1,
    F3_1_2,
    F3_1_3,
    F4_1_1,
    F4_1_2,
    F4_1_3,
    F4_1_4,
    F4_1_5,
    F4_2_1,
    F4_2_2,
}

impl FactId {
    pub fn label(self) -> &'static str {
        match self {
            FactId::F3_1_1 => "F3.1.1",
            FactId::F3_1_2 => "F3.1.2",
            FactId::F3_1_3 => "F3.1.3",
            FactId::F4_1_1 => "F4.1.1",
            FactId::F4_1_2 => "F4.1.2",
            FactId::F4_1_3 => "F4.1.3",
            FactId::F4_1_4 => "F4.1.4",
            FactId::F4_1_5 => "F4.1.5",
            FactId::F4_2_1 => "F4.2.1",
            FactId::F4_2_2 => "F4.2.2",
        }
    }
}

impl fmt::Display for FactId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where a fact failed: the part pair, the offending vertices, the color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub parts: (usize, usize),
    pub vertices: Vec<usize>,
    pub color: ColorId,
}

impl Counterexample {
    /// Re-checks the witness against `g`: the listed vertices are joined by
    /// edges of `color` in the pattern the fact forbids.
    pub fn check(&self, fact: FactId, g: &ColoredCompleteGraph, p: &GallaiPartition) -> bool {
        let (i, j) = self.parts;
        if i >= p.m() || j >= p.m() || p.pair(i, j) != Some(self.color) {
            return false;
        }
        let c = self.color;
        let vs = &self.vertices;
        let in_part = |k: usize| vs.iter().all(|v| p.parts[k].contains(v));
        let path = |len: usize| {
            vs.len() == len && in_part(i) && vs.windows(2).all(|w| g.color(w[0], w[1]) == c)
        };
        match fact {
            FactId::F3_1_1 | FactId::F4_1_1 => path(4),
            FactId::F4_1_3 | FactId::F4_2_1 => path(3),
            FactId::F3_1_2 | FactId::F4_1_2 | FactId::F4_2_2 => path(2),
            FactId::F4_1_4 => {
                vs.len() == 3
                    && in_part(i)
                    && g.color(vs[0], vs[1]) == c
                    && g.color(vs[1], vs[2]) == c
                    && g.color(vs[0], vs[2]) == c
            }
            FactId::F3_1_3 | FactId::F4_1_5 => {
                vs.len() == 1
                    && !p.parts[i].contains(&vs[0])
                    && !p.parts[j].contains(&vs[0])
                    && p.parts[i].iter().chain(&p.parts[j]).all(|&u| g.color(u, vs[0]) == c)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactReport {
    pub fact: FactId,
    pub holds: bool,
    /// No part pair met the size hypothesis.
    pub vacuous: bool,
    /// Part pairs meeting the hypothesis.
    pub instances: usize,
    pub counterexample: Option<Counterexample>,
    pub note: Option<&'static str>,
}

impl fmt::Display for FactReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fact {} holds={} vacuous={} instances={}",
            self.fact, self.holds, self.vacuous, self.instances
        )?;
        if let Some(cx) = &self.counterexample {
            write!(
                f,
                " parts=({},{}) vertices={:?} color={}",
                cx.parts.0, cx.parts.1, cx.vertices, cx.color
            )?;
        }
        if let Some(n) = self.note {
            write!(f, " note=\"{n}\"")?;
        }
        Ok(())
    }
}

/// Which facts apply to `h`, judged against the preset candidates.
pub fn facts_for(h: &TargetGraph, presets: &PresetTable) -> Option<Vec<FactId>> {
    let is = |alias: u8| {
        presets
            .candidates(alias)
            .iter()
            .any(|n: &Named| is_isomorphic(&n.graph(), h))
    };
    let general = [
        FactId::F4_1_1,
        FactId::F4_1_2,
        FactId::F4_1_3,
        FactId::F4_1_4,
        FactId::F4_1_5,
    ];
    if is(9) || is(10) {
        Some(vec![FactId::F3_1_1, FactId::F3_1_2, FactId::F3_1_3])
    } else if is(12) {
        let mut v = general.to_vec();
        v.push(FactId::F4_2_1);
        Some(v)
    } else if is(13) {
        let mut v = general.to_vec();
        v.push(FactId::F4_2_2);
        Some(v)
    } else {
        None
    }
}

/// Audits `(g, p)` against the facts for `h` under the committed presets.
pub fn audit_facts(
    g: &ColoredCompleteGraph,
    p: &GallaiPartition,
    h: &TargetGraph,
) -> Result<Vec<FactReport>, FactError> {
    audit_facts_with(g, p, h, &PresetTable::committed())
}

pub fn audit_facts_with(
    g: &ColoredCompleteGraph,
    p: &GallaiPartition,
    h: &TargetGraph,
    presets: &PresetTable,
) -> Result<Vec<FactReport>, FactError> {
    let report = verify_partition(g, p);
    if !report.holds() {
        return Err(FactError::InvalidPartition(report));
    }
    let facts = facts_for(h, presets).ok_or_else(|| FactError::UnsupportedPattern(h.to_string()))?;
    Ok(facts.into_iter().map(|f| evaluate(f, g, p)).collect())
}

fn path(len: usize) -> TargetGraph {
    let e: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
    TargetGraph::new(len, &e).expect("path")
}

fn triangle() -> TargetGraph {
    TargetGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).expect("triangle")
}

fn evaluate(fact: FactId, g: &ColoredCompleteGraph, p: &GallaiPartition) -> FactReport {
    let size = |i: usize| p.parts[i].len();
    let mut instances = 0;
    let mut counterexample = None;
    let m = p.m();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            // the outside-vertex facts are symmetric in (i, j)
            let symmetric = matches!(fact, FactId::F3_1_3 | FactId::F4_1_5);
            if symmetric && j < i {
                continue;
            }
            let alpha = p.pair(i, j).expect("valid partition");
            let (applies, found) = match fact {
                FactId::F3_1_1 | FactId::F4_1_1 => (size(i) >= 4, inside(g, p, i, alpha, &path(4))),
                FactId::F3_1_2 | FactId::F4_2_2 => {
                    (size(i) >= 3 && size(j) >= 2, color_edge(g, p, i, alpha))
                }
                FactId::F4_1_2 => (size(i) >= 3 && size(j) >= 3, color_edge(g, p, i, alpha)),
                FactId::F4_1_3 => (size(i) >= 3 && size(j) >= 2, inside(g, p, i, alpha, &path(3))),
                FactId::F4_1_4 => (size(i) >= 4, inside(g, p, i, alpha, &triangle())),
                FactId::F4_2_1 => (size(i) >= 4, inside(g, p, i, alpha, &path(3))),
                FactId::F3_1_3 | FactId::F4_1_5 => (
                    size(i) >= 2 && size(j) >= 2,
                    (0..m)
                        .filter(|&l| l != i && l != j)
                        .find(|&l| p.pair(l, i) == Some(alpha) && p.pair(l, j) == Some(alpha))
                        .map(|l| vec![p.parts[l][0]]),
                ),
            };
            if !applies {
                continue;
            }
            instances += 1;
            if counterexample.is_none() {
                counterexample = found.map(|vertices| Counterexample {
                    parts: (i, j),
                    vertices,
                    color: alpha,
                });
            }
        }
    }
    FactReport {
        fact,
        holds: counterexample.is_none(),
        vacuous: instances == 0,
        instances,
        counterexample,
        note: (fact == FactId::F4_1_2)
            .then_some("second clause read as: alpha is not in C(V_j)"),
    }
}

/// A monochromatic copy of `h` in `alpha` inside part `i`, as vertices in
/// path order (pattern vertex order).
fn inside(
    g: &ColoredCompleteGraph,
    p: &GallaiPartition,
    i: usize,
    alpha: ColorId,
    h: &TargetGraph,
) -> Option<Vec<usize>> {
    find_mono_copy_within(g, h, Some(alpha), &p.parts[i]).map(|e| e.image)
}

fn color_edge(
    g: &ColoredCompleteGraph,
    p: &GallaiPartition,
    i: usize,
    alpha: ColorId,
) -> Option<Vec<usize>> {
    let part = &p.parts[i];
    for (a, &u) in part.iter().enumerate() {
        for &v in &part[a + 1..] {
            if g.color(u, v) == alpha {
                return Some(vec![u, v]);
            }
        }
    }
    None
}
