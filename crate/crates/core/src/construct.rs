//! Lower-bound witness colorings: pentagon towers, cones, and the circulant
//! star witness, each available as an evaluable [`WitnessRecipe`].

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::catalog::{catalog_graph_with, CatalogError, CatalogId, Named, PresetTable};
use crate::gallai::{substitute, GallaiError};
use crate::gcg::{decode_gcg, encode_gcg_with_comments, GcgError};
use crate::graph::{color, ColorId, ColoredCompleteGraph, GraphError};
use crate::pattern::TargetGraph;
use crate::search::{find_free_coloring, Forbid, Verdict};

/// Environment variable overriding where fixtures are read from.
pub const DATA_DIR_ENV: &str = "GRLAB_DATA_DIR";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("k must be at least 1, got {0}")]
    BadK(usize),
    #[error("n must be at least 3, got {0}")]
    BadN(usize),
    #[error("pentagon colors must differ, got {0} twice")]
    EqualColors(ColorId),
    #[error("fixture {name}: {detail}")]
    Fixture { name: &'static str, detail: String },
    #[error("recipe step {step}: {detail}")]
    Recipe { step: usize, detail: String },
    #[error("no witness construction for {0}")]
    UnsupportedTarget(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gallai(#[from] GallaiError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// `K_5` with color `c1` on the cycle 0-1-2-3-4 and `c2` on its complement.
pub fn pentagon_base(c1: ColorId, c2: ColorId) -> Result<ColoredCompleteGraph, ConstructError> {
    if c1 == c2 {
        return Err(ConstructError::EqualColors(c1));
    }
    let k = c1.get().max(c2.get());
    Ok(ColoredCompleteGraph::from_fn(5, k, |u, v| {
        if matches!(v - u, 1 | 4) {
            c1
        } else {
            c2
        }
    })?)
}

/// Adds a vertex (numbered last) joined to everything in color `c`.
pub fn cone(g: &ColoredCompleteGraph, c: ColorId) -> ColoredCompleteGraph {
    let n = g.n();
    ColoredCompleteGraph::from_fn(n + 1, g.k().max(c.get()), |u, v| {
        if v == n {
            c
        } else {
            g.color(u, v)
        }
    })
    .expect("cone of a valid graph")
}

/// Two-coloring of `K_{2n-1-e}` (e = 1 iff n even) with every color degree
/// at most `n - 1`, so neither color contains `K_{1,n}`.
pub fn witness_star(n: usize) -> Result<ColoredCompleteGraph, ConstructError> {
    if n < 3 {
        return Err(ConstructError::BadN(n));
    }
    let order = if n % 2 == 0 { 2 * n - 2 } else { 2 * n - 1 };
    // color 1: distances 1..=d, plus the antipodal matching when order is even
    let d = if n % 2 == 0 { (n - 2) / 2 } else { (n - 1) / 2 };
    Ok(ColoredCompleteGraph::from_fn(order, 2, |u, v| {
        let diff = v - u;
        let dist = diff.min(order - diff);
        if dist <= d || 2 * dist == order {
            color(1)
        } else {
            color(2)
        }
    })?)
}

/// One step of a [`WitnessRecipe`]. Each step appends a graph to the
/// recipe's registry; later steps refer to earlier ones by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecipeStep {
    Base {
        label: String,
        graph: ColoredCompleteGraph,
    },
    Substitute {
        base: usize,
        parts: Vec<usize>,
    },
    Cone {
        of: usize,
        color: ColorId,
    },
}

/// A declarative lower-bound construction; the last registry entry is the
/// witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRecipe {
    pub target: CatalogId,
    pub k: usize,
    pub steps: Vec<RecipeStep>,
    pub claimed_order: usize,
    pub claimed_colors: usize,
}

/// One evaluated step: sizes and the colors it introduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: usize,
    pub description: String,
    pub order: usize,
    /// Colors this step puts on new edges that its inner graphs do not use
    /// (base colors absent from every part, or a cone's color).
    pub fresh_colors: Vec<ColorId>,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fresh: Vec<String> = self.fresh_colors.iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "step {} {} order={} fresh=[{}]",
            self.step,
            self.description,
            self.order,
            fresh.join(",")
        )
    }
}

struct RecipeBuilder {
    steps: Vec<RecipeStep>,
}

impl RecipeBuilder {
    fn new() -> Self {
        RecipeBuilder { steps: Vec::new() }
    }

    fn base(&mut self, label: impl Into<String>, graph: ColoredCompleteGraph) -> usize {
        self.steps.push(RecipeStep::Base {
            label: label.into(),
            graph,
        });
        self.steps.len() - 1
    }

    fn substitute(&mut self, base: usize, parts: Vec<usize>) -> usize {
        self.steps.push(RecipeStep::Substitute { base, parts });
        self.steps.len() - 1
    }

    fn cone(&mut self, of: usize, c: usize) -> usize {
        self.steps.push(RecipeStep::Cone { of, color: color(c) });
        self.steps.len() - 1
    }

    fn pentagon(&mut self, c1: usize, c2: usize) -> Result<usize, ConstructError> {
        let g = pentagon_base(color(c1), color(c2))?;
        Ok(self.base(format!("pentagon({c1},{c2})"), g))
    }

    /// Five copies of `inner` substituted into a fresh pentagon.
    fn blow_up(&mut self, inner: usize, c1: usize, c2: usize) -> Result<usize, ConstructError> {
        let p = self.pentagon(c1, c2)?;
        Ok(self.substitute(p, vec![inner; 5]))
    }

    fn finish(self, target: CatalogId, k: usize, order: usize, colors: usize) -> WitnessRecipe {
        WitnessRecipe {
            target,
            k,
            steps: self.steps,
            claimed_order: order,
            claimed_colors: colors,
        }
    }
}

impl WitnessRecipe {
    /// Evaluates the recipe, checking the claimed order and color count.
    pub fn evaluate(&self) -> Result<(ColoredCompleteGraph, Vec<TraceEntry>), ConstructError> {
        let mut built: Vec<ColoredCompleteGraph> = Vec::with_capacity(self.steps.len());
        let mut trace = Vec::with_capacity(self.steps.len());
        for (i, step) in self.steps.iter().enumerate() {
            let fetch = |idx: usize| {
                built.get(idx).ok_or_else(|| ConstructError::Recipe {
                    step: i,
                    detail: format!("refers to step {idx}, which is not earlier"),
                })
            };
            let unused_by = |g: &ColoredCompleteGraph, others: &[&ColoredCompleteGraph]| -> Vec<ColorId> {
                g.colors_used()
                    .into_iter()
                    .filter(|c| others.iter().all(|o| !o.colors_used().contains(c)))
                    .collect()
            };
            let (g, description, fresh) = match step {
                RecipeStep::Base { label, graph } => {
                    (graph.clone(), format!("base {label}"), graph.colors_used())
                }
                RecipeStep::Substitute { base, parts } => {
                    let b = fetch(*base)?;
                    let ps = parts
                        .iter()
                        .map(|&p| fetch(p).cloned())
                        .collect::<Result<Vec<_>, _>>()?;
                    let g = substitute(b, &ps)?;
                    let refs: Vec<&ColoredCompleteGraph> = ps.iter().collect();
                    let fresh = unused_by(b, &refs);
                    let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                    (g, format!("substitute base={base} parts=[{}]", names.join(",")), fresh)
                }
                RecipeStep::Cone { of, color } => {
                    let inner = fetch(*of)?;
                    let fresh = if inner.colors_used().contains(color) {
                        vec![]
                    } else {
                        vec![*color]
                    };
                    (cone(inner, *color), format!("cone of={of} color={color}"), fresh)
                }
            };
            trace.push(TraceEntry {
                step: i,
                description,
                order: g.n(),
                fresh_colors: fresh,
            });
            built.push(g);
        }
        let g = built.pop().ok_or(ConstructError::Recipe {
            step: 0,
            detail: "empty recipe".into(),
        })?;
        if g.n() != self.claimed_order {
            return Err(ConstructError::Recipe {
                step: self.steps.len() - 1,
                detail: format!("order {} but {} claimed", g.n(), self.claimed_order),
            });
        }
        let used = g.colors_used().len();
        if used != self.claimed_colors {
            return Err(ConstructError::Recipe {
                step: self.steps.len() - 1,
                detail: format!("{used} colors used but {} claimed", self.claimed_colors),
            });
        }
        let g = g.with_k(self.k.max(g.k()))?;
        Ok((g, trace))
    }

    pub fn build(&self) -> Result<ColoredCompleteGraph, ConstructError> {
        self.evaluate().map(|(g, _)| g)
    }
}

fn check_k(k: usize) -> Result<(), ConstructError> {
    if k == 0 {
        Err(ConstructError::BadK(k))
    } else {
        Ok(())
    }
}

fn mono_clique(n: usize) -> ColoredCompleteGraph {
    ColoredCompleteGraph::monochromatic(n, color(1)).expect("n >= 1")
}

/// Pentagon tower over a two-colored base for even `k`, over `odd_base`
/// (one color) for odd `k`.
fn tower(
    target: CatalogId,
    k: usize,
    even_base: impl FnOnce() -> Result<(String, ColoredCompleteGraph), ConstructError>,
    odd_base: (String, ColoredCompleteGraph),
) -> Result<WitnessRecipe, ConstructError> {
    check_k(k)?;
    let mut r = RecipeBuilder::new();
    let (mut cur, mut next_color) = if k % 2 == 0 {
        let (label, g) = even_base()?;
        (r.base(label, g), 3)
    } else {
        (r.base(odd_base.0, odd_base.1), 2)
    };
    while next_color < k {
        cur = r.blow_up(cur, next_color, next_color + 1)?;
        next_color += 2;
    }
    let g_order = match &r.steps[0] {
        RecipeStep::Base { graph, .. } => graph.n(),
        _ => unreachable!("first step is a base"),
    };
    let order = g_order * 5usize.pow(((k - 1) / 2) as u32);
    Ok(r.finish(target, k, order, k))
}

pub fn recipe_f9_f10(k: usize) -> Result<WitnessRecipe, ConstructError> {
    tower(
        CatalogId::Alias(9),
        k,
        || Ok(("fixture f9_f10_k8".into(), load_fixture(Fixture::F9F10)?)),
        ("mono K4".into(), mono_clique(4)),
    )
}

pub fn recipe_f12_f13(k: usize) -> Result<WitnessRecipe, ConstructError> {
    tower(
        CatalogId::Alias(12),
        k,
        || Ok(("fixture f12_f13_k9".into(), load_fixture(Fixture::F12F13)?)),
        ("mono K4".into(), mono_clique(4)),
    )
}

pub fn recipe_k3(k: usize) -> Result<WitnessRecipe, ConstructError> {
    check_k(k)?;
    let mut r = RecipeBuilder::new();
    let (mut cur, mut next_color) = if k % 2 == 0 {
        (r.base("K1", mono_clique(1)), 1)
    } else {
        (r.base("mono K2", mono_clique(2)), 2)
    };
    while next_color < k {
        cur = r.blow_up(cur, next_color, next_color + 1)?;
        next_color += 2;
    }
    let order = if k % 2 == 0 {
        5usize.pow((k / 2) as u32)
    } else {
        2 * 5usize.pow(((k - 1) / 2) as u32)
    };
    let _ = cur;
    Ok(r.finish(CatalogId::Complete(3), k, order, k))
}

pub fn recipe_f2n(k: usize, n: usize) -> Result<WitnessRecipe, ConstructError> {
    check_k(k)?;
    if n < 3 {
        return Err(ConstructError::BadN(n));
    }
    let target = CatalogId::F2n(n);
    let mut r = RecipeBuilder::new();
    if k == 1 {
        r.base(format!("mono K{}", n + 1), mono_clique(n + 1));
        return Ok(r.finish(target, k, n + 1, 1));
    }
    if n <= 4 {
        let fixture = if n == 3 { Fixture::F2n3 } else { Fixture::F2n4 };
        let mut cur = r.base(format!("fixture {}", fixture.name()), load_fixture(fixture)?);
        for c in 3..=k {
            cur = r.cone(cur, c);
        }
        let r2 = if n == 3 { 6 } else { 7 };
        let _ = cur;
        return Ok(r.finish(target, k, r2 + k - 3, k));
    }
    if k == 2 {
        let g = witness_star(n)?;
        let order = g.n();
        r.base(format!("star witness {n}"), g);
        return Ok(r.finish(target, k, order, 2));
    }
    let sizes: [usize; 5] = if n % 2 == 0 {
        [n / 2, n / 2 - 1, n / 2 - 1, n / 2 - 1, n / 2 - 1]
    } else {
        [(n - 1) / 2; 5]
    };
    let p = r.pentagon(2, 3)?;
    let parts: Vec<usize> = sizes
        .iter()
        .map(|&s| r.base(format!("mono K{s}"), mono_clique(s)))
        .collect();
    let mut cur = r.substitute(p, parts);
    let mut order: usize = sizes.iter().sum();
    for c in 4..=k {
        cur = r.cone(cur, c);
        order += 1;
    }
    if n == 5 {
        r.cone(cur, 1);
        order += 1;
    }
    Ok(r.finish(target, k, order, k))
}

pub fn witness_f9_f10(k: usize) -> Result<ColoredCompleteGraph, ConstructError> {
    recipe_f9_f10(k)?.build()
}

pub fn witness_f12_f13(k: usize) -> Result<ColoredCompleteGraph, ConstructError> {
    recipe_f12_f13(k)?.build()
}

pub fn witness_k3(k: usize) -> Result<ColoredCompleteGraph, ConstructError> {
    recipe_k3(k)?.build()
}

pub fn witness_f2n(k: usize, n: usize) -> Result<ColoredCompleteGraph, ConstructError> {
    recipe_f2n(k, n)?.build()
}

/// The recipe for a CLI-style target: an alias (`f9`..`f13`), `f2n:n`,
/// `k3`, or `star:n` (which ignores `k`).
pub fn recipe_for(target: &CatalogId, k: usize) -> Result<WitnessRecipe, ConstructError> {
    match target {
        CatalogId::Alias(9 | 10) => recipe_f9_f10(k).map(|r| retarget(r, target)),
        CatalogId::Alias(12 | 13) => recipe_f12_f13(k).map(|r| retarget(r, target)),
        CatalogId::Alias(11) | CatalogId::Named(Named::Banner) => recipe_f2n(k, 3),
        CatalogId::F2n(n) => recipe_f2n(k, *n),
        CatalogId::Complete(3) | CatalogId::Cycle(3) => recipe_k3(k),
        CatalogId::Star(n) => {
            let g = witness_star(*n)?;
            let mut r = RecipeBuilder::new();
            let order = g.n();
            r.base(format!("star witness {n}"), g);
            Ok(r.finish(target.clone(), 2, order, 2))
        }
        other => Err(ConstructError::UnsupportedTarget(other.label())),
    }
}

fn retarget(mut r: WitnessRecipe, target: &CatalogId) -> WitnessRecipe {
    r.target = target.clone();
    r
}

/// Two-colored base witnesses produced by search and committed under `data/`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fixture {
    /// `K_8` without a monochromatic copy of any f9/f10 candidate.
    F9F10,
    /// `K_9` without a monochromatic copy of any f12/f13 candidate.
    F12F13,
    /// `K_5` without a monochromatic banner.
    F2n3,
    /// `K_6` without a monochromatic `F_{2,4}`.
    F2n4,
}

/// Node budget used when (re)generating fixtures.
pub const FIXTURE_BUDGET: u64 = 100_000_000;

impl Fixture {
    pub const ALL: [Fixture; 4] = [Fixture::F9F10, Fixture::F12F13, Fixture::F2n3, Fixture::F2n4];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::F9F10 => "f9_f10_k8",
            Fixture::F12F13 => "f12_f13_k9",
            Fixture::F2n3 => "f2n3_k5",
            Fixture::F2n4 => "f2n4_k6",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.gcg", self.name())
    }

    pub fn order(self) -> usize {
        match self {
            Fixture::F9F10 => 8,
            Fixture::F12F13 => 9,
            Fixture::F2n3 => 5,
            Fixture::F2n4 => 6,
        }
    }

    /// Patterns the fixture must avoid in both colors.
    pub fn forbidden(self) -> Vec<TargetGraph> {
        let presets = PresetTable::committed();
        let aliases: &[u8] = match self {
            Fixture::F9F10 => &[9, 10],
            Fixture::F12F13 => &[12, 13],
            Fixture::F2n3 => &[11],
            Fixture::F2n4 => &[],
        };
        if self == Fixture::F2n4 {
            let g = catalog_graph_with(&CatalogId::F2n(4), &presets).expect("f2n(4)");
            return vec![g];
        }
        let mut names: Vec<Named> = aliases
            .iter()
            .flat_map(|a| presets.candidates(*a).to_vec())
            .collect();
        names.sort();
        names.dedup();
        names.into_iter().map(Named::graph).collect()
    }

    fn embedded(self) -> &'static [u8] {
        match self {
            Fixture::F9F10 => include_bytes!("../data/f9_f10_k8.gcg"),
            Fixture::F12F13 => include_bytes!("../data/f12_f13_k9.gcg"),
            Fixture::F2n3 => include_bytes!("../data/f2n3_k5.gcg"),
            Fixture::F2n4 => include_bytes!("../data/f2n4_k6.gcg"),
        }
    }

    fn error(self, detail: impl Into<String>) -> ConstructError {
        ConstructError::Fixture {
            name: self.name(),
            detail: detail.into(),
        }
    }
}

/// Directory fixtures are read from when the environment overrides it.
pub fn data_dir_override() -> Option<PathBuf> {
    std::env::var_os(DATA_DIR_ENV).map(PathBuf::from)
}

/// The preset table: `$GRLAB_DATA_DIR/presets.txt` when that file exists,
/// else the committed table.
pub fn load_presets() -> Result<PresetTable, ConstructError> {
    if let Some(dir) = data_dir_override() {
        let path = dir.join("presets.txt");
        if path.exists() {
            let text = std::fs::read_to_string(&path).map_err(|e| ConstructError::Fixture {
                name: "presets",
                detail: format!("{}: {e}", path.display()),
            })?;
            return Ok(PresetTable::parse(&text)?);
        }
    }
    Ok(PresetTable::committed())
}

/// Loads a fixture (from `$GRLAB_DATA_DIR` if set, else the embedded copy)
/// and checks it avoids everything it should.
pub fn load_fixture(f: Fixture) -> Result<ColoredCompleteGraph, ConstructError> {
    let bytes = match data_dir_override() {
        Some(dir) => {
            let path = dir.join(f.file_name());
            std::fs::read(&path).map_err(|e| f.error(format!("{}: {e}", path.display())))?
        }
        None => f.embedded().to_vec(),
    };
    let g = decode_gcg(&bytes).map_err(|e: GcgError| f.error(e.to_string()))?;
    if g.n() != f.order() || g.k() != 2 {
        return Err(f.error(format!("expected a 2-coloring of K{}, got n={} k={}", f.order(), g.n(), g.k())));
    }
    if !Forbid::mono(f.forbidden()).admits(&g) {
        return Err(f.error("contains a forbidden monochromatic pattern"));
    }
    Ok(g)
}

/// Regenerates a fixture by search; returns the file contents including
/// the provenance header.
pub fn generate_fixture(f: Fixture) -> Result<Vec<u8>, ConstructError> {
    let patterns = f.forbidden();
    let names: Vec<String> = patterns.iter().map(|p| p.to_string()).collect();
    let forbid = Forbid::mono(patterns);
    let out = find_free_coloring(f.order(), 2, &forbid, FIXTURE_BUDGET)
        .map_err(|e| f.error(e.to_string()))?;
    let g = match out.verdict {
        Verdict::Found(g) => g,
        other => return Err(f.error(format!("search did not find a witness: {other:?}"))),
    };
    let comments = vec![
        format!("fixture {}", f.name()),
        format!(
            "generated by `grlab fixtures`: find_free_coloring n={} k=2 mono=[{}]",
            f.order(),
            names.join(",")
        ),
        format!("config {} nodes={}", out.config, out.nodes),
    ];
    Ok(encode_gcg_with_comments(&g, &comments))
}
