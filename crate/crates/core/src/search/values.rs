use std::fmt;

use super::{search, Forbid, SearchConfig, SearchError, SearchOutcome, Verdict};
use crate::pattern::TargetGraph;

/// What a scan over `n` established about a Ramsey-type value.
#[derive(Clone, Debug)]
pub struct SearchBound {
    /// Every coloring below `lo` avoids the constraints for some choice.
    pub lo: usize,
    /// `Some(hi)`: every coloring of `K_hi` hits the constraints.
    pub hi: Option<usize>,
    /// One outcome per order tried, in increasing order.
    pub outcomes: Vec<SearchOutcome>,
}

impl SearchBound {
    pub fn exact(&self) -> Option<usize> {
        (self.hi == Some(self.lo)).then_some(self.lo)
    }
}

impl fmt::Display for SearchBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(hi) if hi == self.lo => write!(f, "exact {hi}"),
            Some(hi) => write!(f, "range {}..={}", self.lo, hi),
            None => write!(f, "at least {}", self.lo),
        }
    }
}

/// `r_2(h)` by scanning `n` upward from the order of `h`.
pub fn compute_r2(
    h: &TargetGraph,
    n_max: usize,
    config: &SearchConfig,
) -> Result<SearchBound, SearchError> {
    scan(2, &Forbid::mono(vec![h.clone()]), h.order(), n_max, config)
}

/// `gr_k(K_3 : h)` by scanning `n` upward.
pub fn compute_gr(
    h: &TargetGraph,
    k: usize,
    n_max: usize,
    config: &SearchConfig,
) -> Result<SearchBound, SearchError> {
    let start = if k == 1 { h.order() } else { h.order().max(3) };
    scan(k, &Forbid::gallai(vec![h.clone()]), start, n_max, config)
}

fn scan(
    k: usize,
    forbid: &Forbid,
    start: usize,
    n_max: usize,
    config: &SearchConfig,
) -> Result<SearchBound, SearchError> {
    let mut outcomes = Vec::new();
    // below `start` nothing can be forced, so lo starts there
    let mut lo = start;
    for n in start..=n_max {
        let out = search(n, k, forbid, config)?;
        let verdict = out.verdict.clone();
        outcomes.push(out);
        match verdict {
            Verdict::Found(_) => lo = n + 1,
            Verdict::Exhausted { .. } => {
                return Ok(SearchBound {
                    lo,
                    hi: Some(n),
                    outcomes,
                })
            }
            Verdict::Budget { .. } => break,
        }
    }
    Ok(SearchBound {
        lo,
        hi: None,
        outcomes,
    })
}
