//! The pattern catalog: parametric families, the thirteen connected graphs on
//! five vertices with at most six edges, and the `f1..f13` alias table.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::pattern::{TargetGraph, MAX_PATTERN_ORDER};

/// The connected five-vertex graphs with at most six edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Named {
    P5,
    K14,
    Chair,
    C5,
    Banner,
    Tadpole32,
    Bull,
    Cricket,
    House,
    Bowtie,
    /// Diamond with a pendant at a degree-2 vertex (kite).
    DiamondPendant2,
    /// Diamond with a pendant at a degree-3 vertex (dart).
    DiamondPendant3,
    K23,
}

impl Named {
    pub const ALL: [Named; 13] = [
        Named::P5,
        Named::K14,
        Named::Chair,
        Named::C5,
        Named::Banner,
        Named::Tadpole32,
        Named::Bull,
        Named::Cricket,
        Named::House,
        Named::Bowtie,
        Named::DiamondPendant2,
        Named::DiamondPendant3,
        Named::K23,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Named::P5 => "p5",
            Named::K14 => "k14",
            Named::Chair => "chair",
            Named::C5 => "c5",
            Named::Banner => "banner",
            Named::Tadpole32 => "tadpole32",
            Named::Bull => "bull",
            Named::Cricket => "cricket",
            Named::House => "house",
            Named::Bowtie => "bowtie",
            Named::DiamondPendant2 => "diamond_pendant2",
            Named::DiamondPendant3 => "diamond_pendant3",
            Named::K23 => "k23",
        }
    }

    pub fn from_label(s: &str) -> Option<Named> {
        Named::ALL.into_iter().find(|n| n.label() == s)
    }

    fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Named::P5 => &[(0, 1), (1, 2), (2, 3), (3, 4)],
            Named::K14 => &[(0, 1), (0, 2), (0, 3), (0, 4)],
            Named::Chair => &[(0, 1), (0, 2), (0, 3), (3, 4)],
            Named::C5 => &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)],
            Named::Banner => &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)],
            Named::Tadpole32 => &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)],
            Named::Bull => &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)],
            Named::Cricket => &[(0, 1), (1, 2), (0, 2), (0, 3), (0, 4)],
            Named::House => &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4)],
            Named::Bowtie => &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)],
            Named::DiamondPendant2 => &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 4)],
            Named::DiamondPendant3 => &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4)],
            Named::K23 => &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        }
    }

    pub fn graph(self) -> TargetGraph {
        TargetGraph::new(5, self.edges())
            .expect("static catalog entry")
            .named(self.label())
    }
}

/// Identifies a catalog pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CatalogId {
    /// Path on `m` vertices.
    Path(usize),
    /// `K_{1,m}`.
    Star(usize),
    Cycle(usize),
    Complete(usize),
    CompleteMultipartite(Vec<usize>),
    /// `C_4` with `n - 2` pendant edges at one vertex.
    F2n(usize),
    Named(Named),
    /// `f1..f13`, resolved through a [`PresetTable`].
    Alias(u8),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog label `{0}`")]
    UnknownLabel(String),
    #[error("f2n requires n >= 3, got {0}")]
    F2nTooSmall(usize),
    #[error("invalid parameter for {family}: {detail}")]
    BadParameter { family: &'static str, detail: String },
    #[error("alias f{0} is not pinned in the preset table")]
    UnpinnedAlias(u8),
    #[error("alias f{alias} is ambiguous; candidates: {}", candidates.join(", "))]
    AmbiguousAlias { alias: u8, candidates: Vec<String> },
    #[error("preset table line {line}: {detail}")]
    PresetSyntax { line: usize, detail: String },
}

impl CatalogId {
    /// The alias `f11`, which is always the banner.
    pub const F11: CatalogId = CatalogId::Alias(11);

    /// Canonical text form, accepted back by `FromStr`.
    pub fn label(&self) -> String {
        match self {
            CatalogId::Path(m) => format!("path:{m}"),
            CatalogId::Star(m) => format!("star:{m}"),
            CatalogId::Cycle(m) => format!("cycle:{m}"),
            CatalogId::Complete(m) => format!("complete:{m}"),
            CatalogId::CompleteMultipartite(p) => format!(
                "multipartite:{}",
                p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ),
            CatalogId::F2n(n) => format!("f2n:{n}"),
            CatalogId::Named(n) => n.label().to_string(),
            CatalogId::Alias(a) => format!("f{a}"),
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn parse_count(family: &'static str, s: &str) -> Result<usize, CatalogError> {
    s.trim().parse().map_err(|_| CatalogError::BadParameter {
        family,
        detail: format!("`{s}` is not a count"),
    })
}

impl FromStr for CatalogId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<CatalogId, CatalogError> {
        let s = s.trim().to_ascii_lowercase();
        if let Some((family, arg)) = s.split_once(':') {
            return Ok(match family {
                "path" => CatalogId::Path(parse_count("path", arg)?),
                "star" => CatalogId::Star(parse_count("star", arg)?),
                "cycle" => CatalogId::Cycle(parse_count("cycle", arg)?),
                "complete" | "k" => CatalogId::Complete(parse_count("complete", arg)?),
                "f2n" => CatalogId::F2n(parse_count("f2n", arg)?),
                "multipartite" => CatalogId::CompleteMultipartite(
                    arg.split(',')
                        .map(|p| parse_count("multipartite", p))
                        .collect::<Result<_, _>>()?,
                ),
                _ => return Err(CatalogError::UnknownLabel(s)),
            });
        }
        if let Some(named) = Named::from_label(&s) {
            return Ok(CatalogId::Named(named));
        }
        if let Some(rest) = s.strip_prefix('f') {
            if let Ok(a) = rest.parse::<u8>() {
                if (1..=13).contains(&a) {
                    return Ok(CatalogId::Alias(a));
                }
            }
        }
        if let Some(rest) = s.strip_prefix('k') {
            if let Ok(m) = rest.parse::<usize>() {
                return Ok(CatalogId::Complete(m));
            }
        }
        Err(CatalogError::UnknownLabel(s))
    }
}

/// Resolution of the `f1..f13` aliases to named graphs.
///
/// An alias with several candidates is kept (so evidence survives) but
/// resolving it is an error.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PresetTable {
    entries: BTreeMap<u8, Vec<Named>>,
}

const COMMITTED_PRESETS: &str = include_str!("../data/presets.txt");

impl PresetTable {
    /// Only the alias that needs no search: `f11 = banner`.
    pub fn certain() -> PresetTable {
        let mut t = PresetTable::default();
        t.entries.insert(11, vec![Named::Banner]);
        t
    }

    /// The table committed under `data/presets.txt`.
    pub fn committed() -> PresetTable {
        PresetTable::parse(COMMITTED_PRESETS).expect("committed preset table parses")
    }

    /// Parses lines of the form `f9 bull [tadpole32 ...]`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<PresetTable, CatalogError> {
        let mut t = PresetTable::certain();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |detail: String| CatalogError::PresetSyntax {
                line: i + 1,
                detail,
            };
            let mut tokens = line.split_whitespace();
            let alias = tokens.next().unwrap_or_default();
            let a = match alias.parse::<CatalogId>() {
                Ok(CatalogId::Alias(a)) => a,
                _ => return Err(syntax(format!("`{alias}` is not an alias"))),
            };
            let mut names = Vec::new();
            for tok in tokens {
                names.push(
                    Named::from_label(tok)
                        .ok_or_else(|| syntax(format!("unknown graph `{tok}`")))?,
                );
            }
            if names.is_empty() {
                return Err(syntax(format!("f{a} has no candidates")));
            }
            if a == 11 && names != [Named::Banner] {
                return Err(syntax("f11 must be banner".to_string()));
            }
            t.entries.insert(a, names);
        }
        Ok(t)
    }

    pub fn set(&mut self, alias: u8, candidates: Vec<Named>) {
        self.entries.insert(alias, candidates);
    }

    pub fn candidates(&self, alias: u8) -> &[Named] {
        self.entries.get(&alias).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn resolve(&self, alias: u8) -> Result<Named, CatalogError> {
        match self.candidates(alias) {
            [] => Err(CatalogError::UnpinnedAlias(alias)),
            [one] => Ok(*one),
            many => Err(CatalogError::AmbiguousAlias {
                alias,
                candidates: many.iter().map(|n| n.label().to_string()).collect(),
            }),
        }
    }

    /// Text form accepted by [`PresetTable::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (a, names) in &self.entries {
            out.push_str(&format!("f{a}"));
            for n in names {
                out.push(' ');
                out.push_str(n.label());
            }
            out.push('\n');
        }
        out
    }
}

/// Resolves `id` against the committed preset table.
pub fn catalog_graph(id: &CatalogId) -> Result<TargetGraph, CatalogError> {
    catalog_graph_with(id, &PresetTable::committed())
}

pub fn catalog_graph_with(id: &CatalogId, presets: &PresetTable) -> Result<TargetGraph, CatalogError> {
    let too_large = |family: &'static str, order: usize| CatalogError::BadParameter {
        family,
        detail: format!("order {order} exceeds {MAX_PATTERN_ORDER}"),
    };
    let at_least = |family: &'static str, min: usize, got: usize| CatalogError::BadParameter {
        family,
        detail: format!("needs at least {min}, got {got}"),
    };
    let build = |order: usize, edges: Vec<(usize, usize)>, label: String| {
        TargetGraph::new(order, &edges)
            .map(|g| g.named(label))
            .map_err(|e| CatalogError::BadParameter {
                family: "pattern",
                detail: e.to_string(),
            })
    };
    match id {
        CatalogId::Path(m) => {
            if *m < 1 {
                return Err(at_least("path", 1, *m));
            }
            if *m > MAX_PATTERN_ORDER {
                return Err(too_large("path", *m));
            }
            build(*m, (1..*m).map(|i| (i - 1, i)).collect(), id.label())
        }
        CatalogId::Star(m) => {
            if *m < 1 {
                return Err(at_least("star", 1, *m));
            }
            if m + 1 > MAX_PATTERN_ORDER {
                return Err(too_large("star", m + 1));
            }
            build(m + 1, (1..=*m).map(|i| (0, i)).collect(), id.label())
        }
        CatalogId::Cycle(m) => {
            if *m < 3 {
                return Err(at_least("cycle", 3, *m));
            }
            if *m > MAX_PATTERN_ORDER {
                return Err(too_large("cycle", *m));
            }
            build(*m, (0..*m).map(|i| (i, (i + 1) % m)).collect(), id.label())
        }
        CatalogId::Complete(m) => {
            if *m < 1 {
                return Err(at_least("complete", 1, *m));
            }
            if *m > MAX_PATTERN_ORDER {
                return Err(too_large("complete", *m));
            }
            let e = (0..*m).flat_map(|u| (u + 1..*m).map(move |v| (u, v))).collect();
            build(*m, e, id.label())
        }
        CatalogId::CompleteMultipartite(parts) => {
            if parts.is_empty() || parts.contains(&0) {
                return Err(CatalogError::BadParameter {
                    family: "multipartite",
                    detail: "part sizes must be positive".into(),
                });
            }
            let order: usize = parts.iter().sum();
            if order > MAX_PATTERN_ORDER {
                return Err(too_large("multipartite", order));
            }
            let mut owner = Vec::with_capacity(order);
            for (i, &p) in parts.iter().enumerate() {
                owner.extend(std::iter::repeat_n(i, p));
            }
            let e = (0..order)
                .flat_map(|u| (u + 1..order).map(move |v| (u, v)))
                .filter(|&(u, v)| owner[u] != owner[v])
                .collect();
            build(order, e, id.label())
        }
        CatalogId::F2n(n) => {
            if *n < 3 {
                return Err(CatalogError::F2nTooSmall(*n));
            }
            if n + 2 > MAX_PATTERN_ORDER {
                return Err(too_large("f2n", n + 2));
            }
            // center 0 on the 4-cycle 0-1-2-3, pendants 4..=n+1 on the center
            let mut e = vec![(0, 1), (1, 2), (2, 3), (0, 3)];
            e.extend((4..n + 2).map(|p| (0, p)));
            build(n + 2, e, id.label())
        }
        CatalogId::Named(named) => Ok(named.graph()),
        CatalogId::Alias(a) => {
            let named = presets.resolve(*a)?;
            Ok(named.graph().named(format!("f{a}={}", named.label())))
        }
    }
}

/// Parses and resolves a label in one step.
pub fn parse_pattern(label: &str, presets: &PresetTable) -> Result<TargetGraph, CatalogError> {
    catalog_graph_with(&label.parse()?, presets)
}
