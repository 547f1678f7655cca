//! Depth-first branch-and-prune over colorings of `K_n`.
//!
//! Edges are colored vertex by vertex: all of `(0, v), (1, v), .., (v-1, v)`
//! before vertex `v + 1`, so every check after an assignment only concerns
//! structures through the newest edge. Colors are canonical under
//! permutation (a color may be used only once all smaller colors have
//! appeared). Optionally, when a vertex row is complete the prefix must not
//! become lexicographically smaller under any transposition of vertices,
//! which keeps at least the lex-least member of every isomorphism class.

use crate::pattern::TargetGraph;

pub(crate) const MAX_N: usize = 64;

/// A forbidden monochromatic pattern compiled into anchored search plans,
/// one per orbit of directed pattern edges.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPattern {
    anchors: Vec<AnchorPlan>,
    edge_count: usize,
}

#[derive(Clone, Debug)]
struct AnchorPlan {
    /// Required color degree at each plan position.
    degree: Vec<u32>,
    /// Plan positions (< own position) adjacent to each position; entries 0
    /// and 1 are the anchored edge endpoints.
    back: Vec<Vec<usize>>,
}

impl CompiledPattern {
    pub(crate) fn new(h: &TargetGraph) -> CompiledPattern {
        let anchors = crate::pattern::directed_edge_orbit_reps(h)
            .into_iter()
            .map(|(a, b)| AnchorPlan::new(h, a, b))
            .collect();
        CompiledPattern {
            anchors,
            edge_count: h.edge_count(),
        }
    }
}

impl AnchorPlan {
    fn new(h: &TargetGraph, a: usize, b: usize) -> AnchorPlan {
        let mut order = vec![a, b];
        let mut placed = (1u64 << a) | (1u64 << b);
        while order.len() < h.order() {
            let next = (0..h.order())
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    (
                        (h.adjacency(v) & placed).count_ones(),
                        h.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("unplaced vertex");
            order.push(next);
            placed |= 1 << next;
        }
        let mut pos = vec![0; h.order()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                (0..h.order())
                    .filter(|&w| h.has_edge(v, w) && pos[w] < i)
                    .map(|w| pos[w])
                    .collect()
            })
            .collect();
        AnchorPlan {
            degree: order.iter().map(|&v| h.degree(v) as u32).collect(),
            back,
        }
    }
}

/// Static description of one search.
#[derive(Clone, Debug)]
pub(crate) struct Problem {
    pub n: usize,
    pub k: usize,
    pub rainbow: bool,
    pub patterns: Vec<CompiledPattern>,
    pub vertex_pruning: bool,
}

pub(crate) enum Step {
    Found,
    Exhausted,
    Budget,
}

/// Mutable search state for one worker.
pub(crate) struct Engine<'p> {
    p: &'p Problem,
    edges: Vec<(usize, usize)>,
    /// `color[u * n + v]`, 0 when unassigned.
    color: Vec<u8>,
    /// `adj[(c - 1) * n + v]`: neighbors of `v` through assigned edges of color `c`.
    adj: Vec<u64>,
    deg: Vec<u32>,
    /// Largest color used by the first `e` edges, indexed by `e`.
    max_color: Vec<u8>,
    pub nodes: u64,
    pub max_depth: usize,
    budget: u64,
    /// Called every few thousand nodes; returning false aborts the search.
    poll: Option<&'p (dyn Fn(u64) -> bool + Sync)>,
    polled: u64,
    aborted: bool,
    used: [usize; 64],
}

pub(crate) fn edge_order(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

impl<'p> Engine<'p> {
    pub(crate) fn new(p: &'p Problem, budget: u64) -> Engine<'p> {
        let n = p.n;
        let edges = edge_order(n);
        let max_color = vec![0; edges.len() + 1];
        Engine {
            p,
            edges,
            color: vec![0; n * n],
            adj: vec![0; p.k * n],
            deg: vec![0; p.k * n],
            max_color,
            nodes: 0,
            max_depth: 0,
            budget,
            poll: None,
            polled: 0,
            aborted: false,
            used: [0; 64],
        }
    }

    pub(crate) fn with_poll(mut self, poll: &'p (dyn Fn(u64) -> bool + Sync)) -> Self {
        self.poll = Some(poll);
        self
    }

    pub(crate) fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Colors of all edges in search order (valid after `Found`).
    pub(crate) fn assignment(&self) -> Vec<u8> {
        self.edges
            .iter()
            .map(|&(u, v)| self.color[u * self.p.n + v])
            .collect()
    }

    #[inline]
    fn assign(&mut self, u: usize, v: usize, c: u8) {
        let n = self.p.n;
        self.color[u * n + v] = c;
        self.color[v * n + u] = c;
        let base = (c as usize - 1) * n;
        self.adj[base + u] |= 1 << v;
        self.adj[base + v] |= 1 << u;
        self.deg[base + u] += 1;
        self.deg[base + v] += 1;
    }

    #[inline]
    fn unassign(&mut self, u: usize, v: usize) {
        let n = self.p.n;
        let c = self.color[u * n + v];
        self.color[u * n + v] = 0;
        self.color[v * n + u] = 0;
        let base = (c as usize - 1) * n;
        self.adj[base + u] &= !(1 << v);
        self.adj[base + v] &= !(1 << u);
        self.deg[base + u] -= 1;
        self.deg[base + v] -= 1;
    }

    /// Replays a prefix that already passed all checks.
    pub(crate) fn replay(&mut self, prefix: &[u8]) {
        for (e, &c) in prefix.iter().enumerate() {
            let (u, v) = self.edges[e];
            self.assign(u, v, c);
            self.max_color[e + 1] = self.max_color[e].max(c);
        }
    }

    /// Runs the search from edge `start` (edges before it already assigned),
    /// stopping at `stop` edges; `on_leaf` sees each surviving state at
    /// depth `stop` and returns true to stop the search.
    pub(crate) fn run(
        &mut self,
        start: usize,
        stop: usize,
        on_leaf: &mut dyn FnMut(&Engine) -> bool,
    ) -> Step {
        self.max_depth = self.max_depth.max(start);
        match self.dfs(start, stop, on_leaf) {
            true => Step::Found,
            false if self.aborted => Step::Budget,
            false => Step::Exhausted,
        }
    }

    fn dfs(&mut self, e: usize, stop: usize, on_leaf: &mut dyn FnMut(&Engine) -> bool) -> bool {
        if e == stop {
            return on_leaf(self);
        }
        let (u, v) = self.edges[e];
        let prev_max = self.max_color[e];
        let top = (prev_max as usize + 1).min(self.p.k) as u8;
        for c in 1..=top {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.aborted = true;
                return false;
            }
            if let Some(poll) = self.poll {
                if self.nodes - self.polled >= 4096 {
                    let delta = self.nodes - self.polled;
                    self.polled = self.nodes;
                    if !poll(delta) {
                        self.aborted = true;
                        return false;
                    }
                }
            }
            self.assign(u, v, c);
            self.max_color[e + 1] = prev_max.max(c);
            let ok = !(self.p.rainbow && self.rainbow_through(u, v, c))
                && !self.mono_through(u, v, c)
                && !(self.p.vertex_pruning && u + 1 == v && self.row_not_minimal(v));
            if ok {
                self.max_depth = self.max_depth.max(e + 1);
                if self.dfs(e + 1, stop, on_leaf) {
                    return true;
                }
                if self.aborted {
                    self.unassign(u, v);
                    return false;
                }
            }
            self.unassign(u, v);
        }
        false
    }

    /// Nodes counted but not yet reported through `poll`.
    pub(crate) fn unpolled(&self) -> u64 {
        self.nodes - self.polled
    }

    #[inline]
    fn rainbow_through(&self, u: usize, v: usize, c: u8) -> bool {
        let n = self.p.n;
        let cu = (c as usize - 1) * n;
        for b in 1..=self.p.k {
            if b == c as usize {
                continue;
            }
            let bb = (b - 1) * n;
            // w with c(v,w) = b, c(u,w) assigned and not in {b, c}
            if self.adj[bb + v] & !self.adj[bb + u] & !self.adj[cu + u] & ((1u64 << u) - 1) != 0 {
                return true;
            }
        }
        false
    }

    fn mono_through(&mut self, u: usize, v: usize, c: u8) -> bool {
        let n = self.p.n;
        let base = (c as usize - 1) * n;
        let p = self.p;
        for pat in &p.patterns {
            if pat.edge_count > self.count_color_edges_bound(base, v) {
                continue;
            }
            for anchor in &pat.anchors {
                if self.deg[base + u] < anchor.degree[0] || self.deg[base + v] < anchor.degree[1] {
                    continue;
                }
                self.used[0] = u;
                self.used[1] = v;
                if self.extend_anchor(anchor, base, 2, (1u64 << u) | (1u64 << v)) {
                    return true;
                }
            }
        }
        false
    }

    /// Cheap upper bound on color-`c` edges among assigned ones (sum of
    /// degrees over `0..=v`, halved).
    #[inline]
    fn count_color_edges_bound(&self, base: usize, v: usize) -> usize {
        let s: u32 = self.deg[base..=base + v].iter().sum();
        s as usize / 2
    }

    fn extend_anchor(&mut self, plan: &AnchorPlan, base: usize, depth: usize, taken: u64) -> bool {
        if depth == plan.degree.len() {
            return true;
        }
        let n = self.p.n;
        let mut cand = if n == 64 { u64::MAX } else { (1u64 << n) - 1 } & !taken;
        for &q in &plan.back[depth] {
            cand &= self.adj[base + self.used[q]];
        }
        let need = plan.degree[depth];
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if self.deg[base + w] < need {
                continue;
            }
            self.used[depth] = w;
            if self.extend_anchor(plan, base, depth + 1, taken | (1u64 << w)) {
                return true;
            }
        }
        false
    }

    /// True if swapping two vertices of the completed prefix on `0..=v`
    /// yields a lexicographically smaller color-canonical string.
    fn row_not_minimal(&self, v: usize) -> bool {
        for j in 1..=v {
            for i in 0..j {
                if self.swap_is_smaller(i, j, v) {
                    return true;
                }
            }
        }
        false
    }

    fn swap_is_smaller(&self, i: usize, j: usize, v: usize) -> bool {
        let n = self.p.n;
        let perm = |x: usize| {
            if x == i {
                j
            } else if x == j {
                i
            } else {
                x
            }
        };
        // rows y < i are untouched; their colors are 1..=prefix max, mapped to themselves
        let first_row = i.max(1);
        let start_edge = first_row * (first_row - 1) / 2;
        let seen_max = self.max_color[start_edge];
        let mut map = [0u8; 256];
        for c in 1..=seen_max {
            map[c as usize] = c;
        }
        let mut next = seen_max + 1;
        for y in first_row..=v {
            let py = perm(y);
            for x in 0..y {
                let orig = self.color[x * n + y];
                let c = self.color[perm(x) * n + py] as usize;
                let m = if map[c] == 0 {
                    map[c] = next;
                    next += 1;
                    next - 1
                } else {
                    map[c]
                };
                if m != orig {
                    return m < orig;
                }
            }
        }
        false
    }
}
