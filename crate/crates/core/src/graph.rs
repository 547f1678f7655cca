//! Edge-colorings of complete graphs.
//!
//! A [`ColoredCompleteGraph`] is immutable once built. Construction goes
//! through [`GraphBuilder`] (or the `.gcg` decoder), which checks that every
//! pair received exactly one color in `1..=k`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::bits;

/// Largest supported color count; colors are stored as bytes.
pub const MAX_COLORS: usize = 255;

/// A 1-based edge color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(u8);

impl ColorId {
    /// Returns `None` unless `1 <= value <= 255`.
    pub fn new(value: usize) -> Option<ColorId> {
        if (1..=MAX_COLORS).contains(&value) {
            Some(ColorId(value as u8))
        } else {
            None
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn raw(self) -> u8 {
        self.0
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shorthand used throughout tests and constructions; panics on 0 or >255.
pub fn color(value: usize) -> ColorId {
    ColorId::new(value).unwrap_or_else(|| panic!("invalid color id {value}"))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a complete graph needs at least one vertex")]
    NoVertices,
    #[error("color count must be between 1 and {MAX_COLORS}, got {0}")]
    BadColorCount(usize),
    #[error("color {color} out of range 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("vertex pair ({0}, {1}) is not a valid edge")]
    BadPair(usize, usize),
    #[error("edge ({0}, {1}) colored twice")]
    DuplicateAssignment(usize, usize),
    #[error("edge ({0}, {1}) left uncolored")]
    Uncolored(usize, usize),
}

/// Builder for a [`ColoredCompleteGraph`]; single owner, mutable.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    k: usize,
    matrix: Vec<u8>,
}

impl GraphBuilder {
    pub fn new(n: usize, k: usize) -> Result<GraphBuilder, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if !(1..=MAX_COLORS).contains(&k) {
            return Err(GraphError::BadColorCount(k));
        }
        Ok(GraphBuilder {
            n,
            k,
            matrix: vec![0; n * n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Colors the edge `uv`, overwriting any previous color.
    pub fn set(&mut self, u: usize, v: usize, c: ColorId) -> Result<&mut Self, GraphError> {
        self.check(u, v, c)?;
        self.matrix[u * self.n + v] = c.raw();
        self.matrix[v * self.n + u] = c.raw();
        Ok(self)
    }

    /// Colors the edge `uv`; an edge may be assigned only once.
    pub fn assign(&mut self, u: usize, v: usize, c: ColorId) -> Result<&mut Self, GraphError> {
        self.check(u, v, c)?;
        if self.matrix[u * self.n + v] != 0 {
            return Err(GraphError::DuplicateAssignment(u.min(v), u.max(v)));
        }
        self.set(u, v, c)
    }

    pub fn get(&self, u: usize, v: usize) -> Option<ColorId> {
        match self.matrix.get(u * self.n + v) {
            Some(&c) if c != 0 && u != v => Some(ColorId(c)),
            _ => None,
        }
    }

    fn check(&self, u: usize, v: usize, c: ColorId) -> Result<(), GraphError> {
        if u == v || u >= self.n || v >= self.n {
            return Err(GraphError::BadPair(u, v));
        }
        if c.get() > self.k {
            return Err(GraphError::ColorOutOfRange {
                color: c.get(),
                k: self.k,
            });
        }
        Ok(())
    }

    pub fn build(self) -> Result<ColoredCompleteGraph, GraphError> {
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.matrix[u * self.n + v] == 0 {
                    return Err(GraphError::Uncolored(u, v));
                }
            }
        }
        Ok(ColoredCompleteGraph {
            n: self.n,
            k: self.k,
            matrix: self.matrix,
            classes: OnceLock::new(),
        })
    }
}

/// Per-color neighborhood bitsets, derived lazily from the color matrix.
#[derive(Debug)]
pub(crate) struct ColorClasses {
    words: usize,
    n: usize,
    // index: ((c - 1) * n + v) * words
    adj: Vec<u64>,
    degree: Vec<u32>,
}

impl ColorClasses {
    fn build(g: &ColoredCompleteGraph) -> ColorClasses {
        let n = g.n;
        let words = bits::words_for(n);
        let mut adj = vec![0u64; g.k * n * words];
        let mut degree = vec![0u32; g.k * n];
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let c = g.matrix[u * n + v] as usize - 1;
                let row = (c * n + u) * words;
                bits::set(&mut adj[row..row + words], v);
                degree[c * n + u] += 1;
            }
        }
        ColorClasses {
            words,
            n,
            adj,
            degree,
        }
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub(crate) fn neighbors(&self, c: ColorId, v: usize) -> &[u64] {
        let row = ((c.get() - 1) * self.n + v) * self.words;
        &self.adj[row..row + self.words]
    }

    #[inline]
    pub(crate) fn degree(&self, c: ColorId, v: usize) -> usize {
        self.degree[(c.get() - 1) * self.n + v] as usize
    }
}

/// A complete graph on `n` vertices with a color in `1..=k` on every edge.
pub struct ColoredCompleteGraph {
    n: usize,
    k: usize,
    matrix: Vec<u8>,
    classes: OnceLock<ColorClasses>,
}

impl Clone for ColoredCompleteGraph {
    fn clone(&self) -> Self {
        ColoredCompleteGraph {
            n: self.n,
            k: self.k,
            matrix: self.matrix.clone(),
            classes: OnceLock::new(),
        }
    }
}

impl PartialEq for ColoredCompleteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.matrix == other.matrix
    }
}

impl Eq for ColoredCompleteGraph {}

impl fmt::Debug for ColoredCompleteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredCompleteGraph(n={}, k={}", self.n, self.k)?;
        if self.n <= 12 {
            write!(f, ", rows=[")?;
            for u in 0..self.n.saturating_sub(1) {
                if u > 0 {
                    write!(f, " | ")?;
                }
                for v in u + 1..self.n {
                    write!(f, "{}", self.matrix[u * self.n + v])?;
                }
            }
            write!(f, "]")?;
        }
        write!(f, ")")
    }
}

impl ColoredCompleteGraph {
    /// Every edge colored `c`.
    pub fn monochromatic(n: usize, c: ColorId) -> Result<ColoredCompleteGraph, GraphError> {
        let mut b = GraphBuilder::new(n, c.get())?;
        for u in 0..n {
            for v in u + 1..n {
                b.set(u, v, c)?;
            }
        }
        b.build()
    }

    /// Builds from a closure giving the color of each pair `u < v`.
    pub fn from_fn(
        n: usize,
        k: usize,
        mut f: impl FnMut(usize, usize) -> ColorId,
    ) -> Result<ColoredCompleteGraph, GraphError> {
        let mut b = GraphBuilder::new(n, k)?;
        for u in 0..n {
            for v in u + 1..n {
                b.set(u, v, f(u, v))?;
            }
        }
        b.build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Declared color count.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Color of the edge `uv`. Panics if `u == v` or either is out of range.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> ColorId {
        assert!(u != v && u < self.n && v < self.n, "no edge ({u}, {v})");
        ColorId(self.matrix[u * self.n + v])
    }

    #[inline]
    pub(crate) fn raw(&self, u: usize, v: usize) -> u8 {
        self.matrix[u * self.n + v]
    }

    /// The distinct colors appearing on at least one edge.
    pub fn colors_used(&self) -> Vec<ColorId> {
        let mut seen = [false; MAX_COLORS + 1];
        for u in 0..self.n {
            for v in u + 1..self.n {
                seen[self.matrix[u * self.n + v] as usize] = true;
            }
        }
        (1..=MAX_COLORS)
            .filter(|&c| seen[c])
            .map(|c| ColorId(c as u8))
            .collect()
    }

    /// Colors on edges inside `set`.
    pub fn colors_within(&self, set: &[usize]) -> BTreeSet<ColorId> {
        let mut out = BTreeSet::new();
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                out.insert(self.color(u, v));
            }
        }
        out
    }

    /// Colors on edges between two disjoint sets.
    pub fn colors_between(&self, a: &[usize], b: &[usize]) -> BTreeSet<ColorId> {
        let mut out = BTreeSet::new();
        for &u in a {
            for &v in b {
                out.insert(self.color(u, v));
            }
        }
        out
    }

    /// All edges `(u, v, color)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, ColorId)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v, self.color(u, v))))
    }

    /// The subgraph induced on `vertices`, relabeled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<ColoredCompleteGraph, GraphError> {
        let m = vertices.len();
        let mut b = GraphBuilder::new(m, self.k)?;
        for i in 0..m {
            for j in i + 1..m {
                b.set(i, j, self.color(vertices[i], vertices[j]))?;
            }
        }
        b.build()
    }

    /// Same coloring with a larger declared color count.
    pub fn with_k(&self, k: usize) -> Result<ColoredCompleteGraph, GraphError> {
        if !(1..=MAX_COLORS).contains(&k) {
            return Err(GraphError::BadColorCount(k));
        }
        if let Some(max) = self.colors_used().last() {
            if max.get() > k {
                return Err(GraphError::ColorOutOfRange {
                    color: max.get(),
                    k,
                });
            }
        }
        Ok(ColoredCompleteGraph {
            n: self.n,
            k,
            matrix: self.matrix.clone(),
            classes: OnceLock::new(),
        })
    }

    /// Applies `map` to every edge color; the result declares `k` colors.
    pub fn recolor(
        &self,
        k: usize,
        map: impl Fn(ColorId) -> ColorId,
    ) -> Result<ColoredCompleteGraph, GraphError> {
        ColoredCompleteGraph::from_fn(self.n, k, |u, v| map(self.color(u, v)))
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<ColoredCompleteGraph, GraphError> {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut b = GraphBuilder::new(self.n, self.k)?;
        for (u, v, c) in self.edges() {
            b.assign(perm[u], perm[v], c)?;
        }
        b.build()
    }

    pub(crate) fn classes(&self) -> &ColorClasses {
        self.classes.get_or_init(|| ColorClasses::build(self))
    }

    /// Number of edges of color `c` at `v`.
    pub fn color_degree(&self, c: ColorId, v: usize) -> usize {
        if c.get() > self.k {
            return 0;
        }
        self.classes().degree(c, v)
    }

    /// Neighbors of `v` along edges of color `c`, in increasing order.
    pub fn color_neighbors(&self, c: ColorId, v: usize) -> Vec<usize> {
        if c.get() > self.k {
            return Vec::new();
        }
        bits::iter(self.classes().neighbors(c, v)).collect()
    }
}
