//! Small uncolored pattern graphs and subgraph containment between them.

use std::fmt;

use thiserror::Error;

/// Largest pattern order; adjacency rows are single `u64` masks.
pub const MAX_PATTERN_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern order {0} exceeds {MAX_PATTERN_ORDER}")]
    TooLarge(usize),
    #[error("pattern edge ({0}, {1}) is a loop or out of range")]
    BadEdge(usize, usize),
}

/// A simple undirected graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TargetGraph {
    order: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
    name: Option<String>,
}

impl TargetGraph {
    /// Builds a pattern; duplicate edges (in either orientation) collapse.
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<TargetGraph, PatternError> {
        if order > MAX_PATTERN_ORDER {
            return Err(PatternError::TooLarge(order));
        }
        let mut norm = Vec::with_capacity(edges.len());
        let mut adj = vec![0u64; order];
        for &(u, v) in edges {
            if u == v || u >= order || v >= order {
                return Err(PatternError::BadEdge(u, v));
            }
            let (a, b) = (u.min(v), u.max(v));
            norm.push((a, b));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(TargetGraph {
            order,
            edges: norm,
            adj,
            name: None,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> TargetGraph {
        self.name = Some(name.into());
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn adjacency(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Degrees sorted in decreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen.count_ones() as usize == self.order
    }

    pub fn contains_triangle(&self) -> bool {
        self.edges
            .iter()
            .any(|&(u, v)| self.adj[u] & self.adj[v] != 0)
    }

    /// A vertex order in which every vertex after the first of its component
    /// is adjacent to an earlier one; components start at a max-degree vertex.
    pub(crate) fn search_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.order);
        let mut placed = 0u64;
        while order.len() < self.order {
            let start = (0..self.order)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| (self.degree(v), std::cmp::Reverse(v)))
                .expect("unplaced vertex");
            order.push(start);
            placed |= 1 << start;
            loop {
                // next: most connections into the placed set, then degree
                let next = (0..self.order)
                    .filter(|&v| placed >> v & 1 == 0 && self.adj[v] & placed != 0)
                    .max_by_key(|&v| {
                        (
                            (self.adj[v] & placed).count_ones(),
                            self.degree(v),
                            std::cmp::Reverse(v),
                        )
                    });
                match next {
                    Some(v) => {
                        order.push(v);
                        placed |= 1 << v;
                    }
                    None => break,
                }
            }
        }
        order
    }
}

impl fmt::Debug for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TargetGraph(")?;
        if let Some(n) = &self.name {
            write!(f, "{n}, ")?;
        }
        write!(f, "order={}, edges={:?})", self.order, self.edges)
    }
}

impl fmt::Display for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "graph[{}; {} edges]", self.order, self.edges.len()),
        }
    }
}

/// Finds an injective map from `h1` into `h2` carrying edges to edges.
/// Returns `map[v]` = image of `h1`'s vertex `v`.
pub fn find_embedding(h1: &TargetGraph, h2: &TargetGraph) -> Option<Vec<usize>> {
    find_embedding_with(h1, h2, &[])
}

/// As [`find_embedding`], with some vertices of `h1` pinned to fixed images.
pub(crate) fn find_embedding_with(
    h1: &TargetGraph,
    h2: &TargetGraph,
    pinned: &[(usize, usize)],
) -> Option<Vec<usize>> {
    if h1.order > h2.order || h1.edge_count() > h2.edge_count() {
        return None;
    }
    let mut map = vec![usize::MAX; h1.order];
    let mut used = 0u64;
    for &(a, b) in pinned {
        if used >> b & 1 == 1 || h1.degree(a) > h2.degree(b) {
            return None;
        }
        map[a] = b;
        used |= 1 << b;
    }
    for &(a, _) in pinned {
        for &(x, _) in pinned {
            if h1.has_edge(a, x) && !h2.has_edge(map[a], map[x]) {
                return None;
            }
        }
    }
    let order: Vec<usize> = h1
        .search_order()
        .into_iter()
        .filter(|&v| map[v] == usize::MAX)
        .collect();
    if extend(h1, h2, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    h1: &TargetGraph,
    h2: &TargetGraph,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    let mut cand = if h2.order == 64 {
        u64::MAX
    } else {
        (1u64 << h2.order) - 1
    };
    cand &= !*used;
    let mut nb = h1.adj[x];
    while nb != 0 {
        let y = nb.trailing_zeros() as usize;
        nb &= nb - 1;
        if map[y] != usize::MAX {
            cand &= h2.adj[map[y]];
        }
    }
    let need = h1.degree(x);
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if h2.degree(w) < need {
            continue;
        }
        map[x] = w;
        *used |= 1 << w;
        if extend(h1, h2, order, depth + 1, map, used) {
            return true;
        }
        *used &= !(1 << w);
        map[x] = usize::MAX;
    }
    false
}

/// True iff `h1` is (isomorphic to) a subgraph of `h2`.
pub fn is_subgraph(h1: &TargetGraph, h2: &TargetGraph) -> bool {
    find_embedding(h1, h2).is_some()
}

/// Isomorphism test: equal order and edge count plus containment.
pub fn is_isomorphic(h1: &TargetGraph, h2: &TargetGraph) -> bool {
    h1.order == h2.order
        && h1.edge_count() == h2.edge_count()
        && h1.degree_sequence() == h2.degree_sequence()
        && is_subgraph(h1, h2)
}

/// Representatives of the directed edges `(a, b)` of `h` up to automorphism.
pub(crate) fn directed_edge_orbit_reps(h: &TargetGraph) -> Vec<(usize, usize)> {
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for &(u, v) in h.edges() {
        for (a, b) in [(u, v), (v, u)] {
            let covered = reps
                .iter()
                .any(|&(x, y)| find_embedding_with(h, h, &[(x, a), (y, b)]).is_some());
            if !covered {
                reps.push((a, b));
            }
        }
    }
    reps
}
