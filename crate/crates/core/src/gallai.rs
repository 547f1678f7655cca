//! Gallai partitions: every rainbow-triangle-free coloring of a complete graph
//! splits into `m >= 2` parts with one color between each pair of parts and at
//! most two colors between parts overall.
//!
//! Partitions are found by scanning color pairs `{i, j}`: the graph of edges
//! colored neither `i` nor `j` is formed, and when it is disconnected its
//! components are the parts. Between two components all edges lie in `{i, j}`,
//! and a mixed pair would close a rainbow triangle along a path inside one
//! component, so each pair of components is joined in a single color.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detect::find_rainbow_triangle;
use crate::graph::{ColorId, ColoredCompleteGraph, GraphBuilder, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GallaiError {
    #[error("need at least two vertices, got {0}")]
    TooSmall(usize),
    #[error("rainbow triangle ({0}, {1}, {2}) present")]
    RainbowTriangle(usize, usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(ValidationReport),
    #[error("substitution needs one part per base vertex ({expected}), got {found}")]
    PartCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A partition of the vertex set with a single color between each pair of parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GallaiPartition {
    /// Sorted vertex lists, ordered by decreasing size then smallest member.
    pub parts: Vec<Vec<usize>>,
    /// The colors used between parts (at most two in a valid partition).
    pub between_colors: BTreeSet<ColorId>,
    /// Color between parts `i < j`.
    pub pair_color: BTreeMap<(usize, usize), ColorId>,
}

impl GallaiPartition {
    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn pair(&self, i: usize, j: usize) -> Option<ColorId> {
        self.pair_color.get(&(i.min(j), i.max(j))).copied()
    }

    /// Number of parts with at least three vertices.
    pub fn large_parts(&self) -> usize {
        self.parts.iter().filter(|p| p.len() >= 3).count()
    }

    /// Builds a partition by reading pair colors off `g` (taking the color of
    /// the first cross edge). The result still needs [`verify_partition`].
    pub fn from_parts(g: &ColoredCompleteGraph, parts: Vec<Vec<usize>>) -> GallaiPartition {
        let mut parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        canonical_order(&mut parts);
        let mut pair_color = BTreeMap::new();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if let (Some(&a), Some(&b)) = (parts[i].first(), parts[j].first()) {
                    if a < g.n() && b < g.n() && a != b {
                        pair_color.insert((i, j), g.color(a, b));
                    }
                }
            }
        }
        let between_colors = pair_color.values().copied().collect();
        GallaiPartition {
            parts,
            between_colors,
            pair_color,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PartitionJson::from(self)).expect("partition serializes")
    }

    pub fn from_json(text: &str) -> Result<GallaiPartition, serde_json::Error> {
        let j: PartitionJson = serde_json::from_str(text)?;
        j.try_into().map_err(serde::de::Error::custom)
    }
}

fn canonical_order(parts: &mut [Vec<usize>]) {
    parts.sort_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then_with(|| a.first().cmp(&b.first()))
    });
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    parts: Vec<Vec<usize>>,
    between_colors: Vec<usize>,
    pair_colors: Vec<[usize; 3]>,
}

impl From<&GallaiPartition> for PartitionJson {
    fn from(p: &GallaiPartition) -> Self {
        PartitionJson {
            parts: p.parts.clone(),
            between_colors: p.between_colors.iter().map(|c| c.get()).collect(),
            pair_colors: p
                .pair_color
                .iter()
                .map(|(&(i, j), c)| [i, j, c.get()])
                .collect(),
        }
    }
}

impl TryFrom<PartitionJson> for GallaiPartition {
    type Error = String;

    fn try_from(j: PartitionJson) -> Result<Self, String> {
        let color = |c: usize| ColorId::new(c).ok_or_else(|| format!("bad color {c}"));
        Ok(GallaiPartition {
            parts: j.parts,
            between_colors: j
                .between_colors
                .into_iter()
                .map(color)
                .collect::<Result<_, _>>()?,
            pair_color: j
                .pair_colors
                .into_iter()
                .map(|[i, j, c]| Ok(((i.min(j), i.max(j)), color(c)?)))
                .collect::<Result<_, String>>()?,
        })
    }
}

/// One clause of the partition contract that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewParts { m: usize },
    EmptyPart { part: usize },
    VertexOutOfRange { vertex: usize },
    VertexRepeated { vertex: usize },
    VertexMissing { vertex: usize },
    MixedPair { parts: (usize, usize), colors: Vec<ColorId> },
    PairColorMismatch { parts: (usize, usize), recorded: Option<ColorId>, actual: ColorId },
    TooManyBetweenColors { colors: Vec<ColorId>, extra: ColorId },
    BetweenColorsMismatch { recorded: Vec<ColorId>, actual: Vec<ColorId> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |cs: &[ColorId]| cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Violation::TooFewParts { m } => write!(f, "m>=2 required, got {m}"),
            Violation::EmptyPart { part } => write!(f, "part {part} is empty"),
            Violation::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            Violation::VertexRepeated { vertex } => write!(f, "vertex {vertex} in several parts"),
            Violation::VertexMissing { vertex } => write!(f, "vertex {vertex} in no part"),
            Violation::MixedPair { parts, colors } => write!(
                f,
                "parts {} and {} joined by colors {}",
                parts.0,
                parts.1,
                list(colors)
            ),
            Violation::PairColorMismatch {
                parts,
                recorded,
                actual,
            } => write!(
                f,
                "parts {} and {}: recorded color {}, actual {actual}",
                parts.0,
                parts.1,
                recorded.map_or("none".to_string(), |c| c.to_string())
            ),
            Violation::TooManyBetweenColors { colors, extra } => write!(
                f,
                "between-part colors {} exceed two; color {extra} is extra",
                list(colors)
            ),
            Violation::BetweenColorsMismatch { recorded, actual } => write!(
                f,
                "recorded between colors {} but pairs use {}",
                list(recorded),
                list(actual)
            ),
        }
    }
}

/// Verdict of [`verify_partition`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks every clause of the partition contract against `g`.
pub fn verify_partition(g: &ColoredCompleteGraph, p: &GallaiPartition) -> ValidationReport {
    let mut violations = Vec::new();
    if p.m() < 2 {
        violations.push(Violation::TooFewParts { m: p.m() });
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (i, part) in p.parts.iter().enumerate() {
        if part.is_empty() {
            violations.push(Violation::EmptyPart { part: i });
        }
        for &v in part {
            if v >= g.n() {
                violations.push(Violation::VertexOutOfRange { vertex: v });
            } else if owner[v] != usize::MAX {
                violations.push(Violation::VertexRepeated { vertex: v });
            } else {
                owner[v] = i;
            }
        }
    }
    for (v, &o) in owner.iter().enumerate() {
        if o == usize::MAX {
            violations.push(Violation::VertexMissing { vertex: v });
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }

    let mut actual_between = BTreeSet::new();
    for i in 0..p.m() {
        for j in i + 1..p.m() {
            let colors = g.colors_between(&p.parts[i], &p.parts[j]);
            if colors.len() > 1 {
                violations.push(Violation::MixedPair {
                    parts: (i, j),
                    colors: colors.iter().copied().collect(),
                });
            }
            let actual = *colors.iter().next().expect("nonempty parts");
            actual_between.extend(colors.iter().copied());
            let recorded = p.pair(i, j);
            if colors.len() == 1 && recorded != Some(actual) {
                violations.push(Violation::PairColorMismatch {
                    parts: (i, j),
                    recorded,
                    actual,
                });
            }
        }
    }
    if actual_between.len() > 2 {
        let colors: Vec<ColorId> = actual_between.iter().copied().collect();
        violations.push(Violation::TooManyBetweenColors {
            extra: colors[2],
            colors,
        });
    }
    let recorded: BTreeSet<ColorId> = p.between_colors.clone();
    let used: BTreeSet<ColorId> = p.pair_color.values().copied().collect();
    if recorded.len() > 2 || !used.is_subset(&recorded) {
        violations.push(Violation::BetweenColorsMismatch {
            recorded: recorded.into_iter().collect(),
            actual: actual_between.into_iter().collect(),
        });
    }
    ValidationReport { violations }
}

/// Connected components of the graph of edges whose color is not in `skip`.
fn components_avoiding(g: &ColoredCompleteGraph, skip: &[ColorId]) -> Vec<Vec<usize>> {
    let n = g.n();
    let skip_raw: Vec<u8> = skip.iter().map(|c| c.raw()).collect();
    let mut comp = vec![usize::MAX; n];
    let mut parts = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = parts.len();
        comp[s] = id;
        stack.push(s);
        let mut members = Vec::new();
        while let Some(u) = stack.pop() {
            members.push(u);
            for v in 0..n {
                if comp[v] == usize::MAX && v != u && !skip_raw.contains(&g.raw(u, v)) {
                    comp[v] = id;
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        parts.push(members);
    }
    parts
}

fn check_input(g: &ColoredCompleteGraph) -> Result<(), GallaiError> {
    if g.n() < 2 {
        return Err(GallaiError::TooSmall(g.n()));
    }
    if let Some((u, v, w)) = find_rainbow_triangle(g) {
        return Err(GallaiError::RainbowTriangle(u, v, w));
    }
    Ok(())
}

fn singletons(g: &ColoredCompleteGraph) -> GallaiPartition {
    GallaiPartition::from_parts(g, (0..g.n()).map(|v| vec![v]).collect())
}

/// The color pairs scanned, lexicographically; degenerate single-color
/// entries `(i, i)` are included when `with_degenerate` is set.
fn color_pairs(used: &[ColorId], with_degenerate: bool) -> Vec<Vec<ColorId>> {
    let mut out = Vec::new();
    for (a, &i) in used.iter().enumerate() {
        if with_degenerate {
            out.push(vec![i]);
        }
        for &j in &used[a + 1..] {
            out.push(vec![i, j]);
        }
    }
    out
}

/// A Gallai partition of a rainbow-triangle-free `g`: the first color pair in
/// lexicographic order whose complement graph is disconnected. With at most
/// two colors in use, all singletons.
pub fn find_gallai_partition(g: &ColoredCompleteGraph) -> Result<GallaiPartition, GallaiError> {
    check_input(g)?;
    let used = g.colors_used();
    if used.len() <= 2 {
        return Ok(singletons(g));
    }
    for pair in color_pairs(&used, false) {
        let comps = components_avoiding(g, &pair);
        if comps.len() >= 2 {
            return Ok(GallaiPartition::from_parts(g, comps));
        }
    }
    unreachable!("rainbow-triangle-free colorings always admit a Gallai partition")
}

/// The partition with fewest parts among all single colors and color pairs
/// (ties broken by scan order). Minimal within that family only.
pub fn minimize_parts(g: &ColoredCompleteGraph) -> Result<GallaiPartition, GallaiError> {
    check_input(g)?;
    let used = g.colors_used();
    let mut best: Option<Vec<Vec<usize>>> = None;
    for pair in color_pairs(&used, true) {
        let comps = components_avoiding(g, &pair);
        if comps.len() >= 2 && best.as_ref().is_none_or(|b| comps.len() < b.len()) {
            best = Some(comps);
        }
    }
    Ok(match best {
        Some(parts) => GallaiPartition::from_parts(g, parts),
        None => singletons(g),
    })
}

/// A colored complete graph on the parts, vertex `i` standing for `parts[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGraph(pub ColoredCompleteGraph);

pub fn reduce(g: &ColoredCompleteGraph, p: &GallaiPartition) -> Result<ReducedGraph, GallaiError> {
    let report = verify_partition(g, p);
    if !report.holds() {
        return Err(GallaiError::InvalidPartition(report));
    }
    let mut b = GraphBuilder::new(p.m(), g.k())?;
    for (&(i, j), &c) in &p.pair_color {
        b.set(i, j, c)?;
    }
    Ok(ReducedGraph(b.build()?))
}

/// Blow-up: vertex `i` of `base` is replaced by a copy of `parts[i]`; edges
/// between copies `i` and `j` take `base`'s color of `ij`.
pub fn substitute(
    base: &ColoredCompleteGraph,
    parts: &[ColoredCompleteGraph],
) -> Result<ColoredCompleteGraph, GallaiError> {
    if parts.len() != base.n() {
        return Err(GallaiError::PartCount {
            expected: base.n(),
            found: parts.len(),
        });
    }
    let mut offset = Vec::with_capacity(parts.len());
    let mut total = 0;
    for p in parts {
        offset.push(total);
        total += p.n();
    }
    let mut owner = Vec::with_capacity(total);
    for (i, p) in parts.iter().enumerate() {
        owner.extend(std::iter::repeat_n(i, p.n()));
    }
    let max_used = std::iter::once(base)
        .chain(parts)
        .filter_map(|g| g.colors_used().last().map(|c| c.get()))
        .max()
        .unwrap_or(1);
    let g = ColoredCompleteGraph::from_fn(total, max_used, |u, v| {
        let (a, b) = (owner[u], owner[v]);
        if a == b {
            parts[a].color(u - offset[a], v - offset[a])
        } else {
            base.color(a, b)
        }
    })?;
    Ok(g)
}
