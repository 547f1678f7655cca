//! Rainbow-triangle and monochromatic-pattern detection.

use thiserror::Error;

use crate::bits;
use crate::graph::{ColorId, ColoredCompleteGraph};
use crate::pattern::TargetGraph;

pub use crate::facts::{audit_facts, FactId, FactReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetectError {
    #[error("pattern has {pattern} vertices but the host has only {host}")]
    PatternTooLarge { pattern: usize, host: usize },
}

/// A monochromatic copy of `pattern`: vertex `i` of the pattern sits at `image[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub pattern: TargetGraph,
    pub image: Vec<usize>,
    pub color: ColorId,
}

impl Embedding {
    /// Re-checks injectivity and that every pattern edge has `self.color` in `g`.
    pub fn validate(&self, g: &ColoredCompleteGraph) -> bool {
        if self.image.len() != self.pattern.order() || self.image.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut sorted = self.image.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.image.len() {
            return false;
        }
        self.pattern
            .edges()
            .iter()
            .all(|&(a, b)| g.color(self.image[a], self.image[b]) == self.color)
    }
}

/// First triangle `(u, v, w)`, `u < v < w`, whose three edges have distinct
/// colors; `None` iff `g` is a Gallai coloring.
pub fn find_rainbow_triangle(g: &ColoredCompleteGraph) -> Option<(usize, usize, usize)> {
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            let a = g.raw(u, v);
            for w in v + 1..n {
                let b = g.raw(u, w);
                let c = g.raw(v, w);
                if a != b && a != c && b != c {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

/// Searches for a copy of `h` inside one color class of `g` (the given color,
/// else every used color in increasing order).
pub fn find_mono_copy(
    g: &ColoredCompleteGraph,
    h: &TargetGraph,
    color: Option<ColorId>,
) -> Result<Option<Embedding>, DetectError> {
    if h.order() > g.n() {
        return Err(DetectError::PatternTooLarge {
            pattern: h.order(),
            host: g.n(),
        });
    }
    let all = bits::full(g.n());
    Ok(find_mono_copy_in(g, h, color, &all))
}

/// As [`find_mono_copy`] with the image restricted to `vertices`.
pub fn find_mono_copy_within(
    g: &ColoredCompleteGraph,
    h: &TargetGraph,
    color: Option<ColorId>,
    vertices: &[usize],
) -> Option<Embedding> {
    if h.order() > vertices.len() {
        return None;
    }
    let allowed = bits::from_indices(g.n(), vertices.iter().copied());
    find_mono_copy_in(g, h, color, &allowed)
}

fn find_mono_copy_in(
    g: &ColoredCompleteGraph,
    h: &TargetGraph,
    color: Option<ColorId>,
    allowed: &[u64],
) -> Option<Embedding> {
    let colors = match color {
        Some(c) if c.get() <= g.k() => vec![c],
        Some(_) => return None,
        None => g.colors_used(),
    };
    if h.order() == 0 {
        return colors.first().map(|&c| Embedding {
            pattern: h.clone(),
            image: Vec::new(),
            color: c,
        });
    }
    if h.edge_count() == 0 {
        // edgeless patterns embed in any color class with enough vertices
        let image: Vec<usize> = bits::iter(allowed).take(h.order()).collect();
        return (image.len() == h.order())
            .then(|| colors.first().copied())
            .flatten()
            .map(|c| Embedding {
                pattern: h.clone(),
                image,
                color: c,
            });
    }
    let plan = Plan::new(h);
    for c in colors {
        let mut m = ClassMatcher::new(g, c, &plan, allowed);
        if let Some(image) = m.run() {
            return Some(Embedding {
                pattern: h.clone(),
                image,
                color: c,
            });
        }
    }
    None
}

/// Pattern vertices in search order with, for each, its earlier neighbors.
struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    fn new(h: &TargetGraph) -> Plan {
        let order = h.search_order();
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
        let degree = order.iter().map(|&v| h.degree(v)).collect();
        Plan {
            order,
            back,
            degree,
        }
    }
}

struct ClassMatcher<'a> {
    g: &'a ColoredCompleteGraph,
    color: ColorId,
    plan: &'a Plan,
    allowed: &'a [u64],
    words: usize,
    used: Vec<u64>,
    image: Vec<usize>,
    scratch: Vec<u64>,
}

impl<'a> ClassMatcher<'a> {
    fn new(g: &'a ColoredCompleteGraph, color: ColorId, plan: &'a Plan, allowed: &'a [u64]) -> Self {
        let words = g.classes().words();
        ClassMatcher {
            g,
            color,
            plan,
            allowed,
            words,
            used: vec![0; words],
            image: vec![usize::MAX; plan.order.len()],
            scratch: vec![0; words * plan.order.len()],
        }
    }

    fn run(&mut self) -> Option<Vec<usize>> {
        if self.extend(0) {
            let mut out = vec![0; self.plan.order.len()];
            for (i, &v) in self.plan.order.iter().enumerate() {
                out[v] = self.image[i];
            }
            Some(out)
        } else {
            None
        }
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.plan.order.len() {
            return true;
        }
        let w = self.words;
        let classes = self.g.classes();
        let (lo, hi) = (depth * w, (depth + 1) * w);
        {
            let cand = &mut self.scratch[lo..hi];
            for i in 0..w {
                cand[i] = self.allowed[i] & !self.used[i];
            }
            for &p in &self.plan.back[depth] {
                let nb = classes.neighbors(self.color, self.image[p]);
                for i in 0..w {
                    cand[i] &= nb[i];
                }
            }
        }
        let need = self.plan.degree[depth];
        for wi in 0..w {
            let mut word = self.scratch[lo + wi];
            while word != 0 {
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                let v = wi * bits::WORD + t;
                if classes.degree(self.color, v) < need {
                    continue;
                }
                self.image[depth] = v;
                bits::set(&mut self.used, v);
                if self.extend(depth + 1) {
                    return true;
                }
                bits::clear(&mut self.used, v);
            }
        }
        self.image[depth] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Named;
    use crate::graph::color;

    fn k3() -> TargetGraph {
        TargetGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn monochromatic_graph_has_no_rainbow_triangle() {
        let g = ColoredCompleteGraph::monochromatic(10, color(1)).unwrap();
        assert_eq!(find_rainbow_triangle(&g), None);
    }

    #[test]
    fn rainbow_k3_is_found() {
        let g = ColoredCompleteGraph::from_fn(3, 3, |u, v| color(u + v)).unwrap();
        assert_eq!(find_rainbow_triangle(&g), Some((0, 1, 2)));
    }

    #[test]
    fn mono_k5_contains_all_five_vertex_patterns() {
        let g = ColoredCompleteGraph::monochromatic(5, color(1)).unwrap();
        for named in Named::ALL {
            let e = find_mono_copy(&g, &named.graph(), None).unwrap().unwrap();
            assert!(e.validate(&g));
        }
    }

    #[test]
    fn pattern_larger_than_host_errors() {
        let g = ColoredCompleteGraph::monochromatic(4, color(1)).unwrap();
        assert_eq!(
            find_mono_copy(&g, &Named::Bull.graph(), None),
            Err(DetectError::PatternTooLarge { pattern: 5, host: 4 })
        );
    }

    #[test]
    fn pentagon_has_no_mono_triangle() {
        let g = ColoredCompleteGraph::from_fn(5, 2, |u, v| {
            let d = (v - u).min(5 - (v - u));
            color(d)
        })
        .unwrap();
        assert_eq!(find_mono_copy(&g, &k3(), None).unwrap(), None);
        let c5 = crate::catalog::Named::C5.graph();
        for c in 1..=2 {
            assert!(find_mono_copy(&g, &c5, Some(color(c))).unwrap().is_some());
        }
    }

    #[test]
    fn restricted_search_respects_vertex_set() {
        // color 1 triangle on {0,1,2}, everything else color 2
        let g = ColoredCompleteGraph::from_fn(6, 2, |_u, v| color(if v < 3 { 1 } else { 2 })).unwrap();
        assert!(find_mono_copy_within(&g, &k3(), Some(color(1)), &[0, 1, 2]).is_some());
        assert!(find_mono_copy_within(&g, &k3(), Some(color(1)), &[0, 1, 3, 4]).is_none());
        assert!(find_mono_copy_within(&g, &k3(), Some(color(2)), &[0, 3, 4]).is_some());
    }

    #[test]
    fn large_host_crosses_word_boundary() {
        // color 1 only on a triangle {10, 70, 100}
        let tri = [10, 70, 100];
        let g = ColoredCompleteGraph::from_fn(110, 2, |u, v| {
            color(if tri.contains(&u) && tri.contains(&v) { 1 } else { 2 })
        })
        .unwrap();
        let e = find_mono_copy(&g, &k3(), Some(color(1))).unwrap().unwrap();
        let mut img = e.image.clone();
        img.sort_unstable();
        assert_eq!(img, tri);
    }
}
