//! Brute-force oracles and random generators shared by the integration tests.

#![allow(dead_code)]

use grlab::catalog::Named;
use grlab::detect::{find_mono_copy, find_rainbow_triangle};
use grlab::gallai::{find_gallai_partition, minimize_parts, reduce, substitute, verify_partition};
use grlab::graph::{color, ColoredCompleteGraph};
use grlab::pattern::TargetGraph;
use grlab::search::{search, Forbid, SearchConfig, Verdict};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_coloring(rng: &mut ChaCha8Rng, n: usize, k: usize) -> ColoredCompleteGraph {
    ColoredCompleteGraph::from_fn(n, k, |_, _| color(rng.gen_range(1..=k))).unwrap()
}

/// All injective maps of `0..m` into `0..n`.
pub fn injections(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) {
                cur.push(v);
                go(m, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, n, &mut Vec::new(), &mut out);
    out
}

pub fn naive_mono(g: &ColoredCompleteGraph, h: &TargetGraph, maps: &[Vec<usize>]) -> bool {
    let edges = h.edges();
    maps.iter().any(|img| {
        let (a, b) = edges[0];
        let c = g.color(img[a], img[b]);
        edges.iter().all(|&(x, y)| g.color(img[x], img[y]) == c)
    })
}

pub fn naive_rainbow(g: &ColoredCompleteGraph) -> bool {
    let n = g.n();
    (0..n).any(|u| {
        (u + 1..n).any(|v| {
            (v + 1..n).any(|w| {
                let (a, b, c) = (g.color(u, v), g.color(u, w), g.color(v, w));
                a != b && a != c && b != c
            })
        })
    })
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Rainbow detector against a triple loop on `samples` random colorings.
pub fn check_rainbow(samples: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    for _ in 0..samples {
        let n = rng.gen_range(1..=15);
        let k = rng.gen_range(1..=4);
        let g = random_coloring(&mut rng, n, k);
        let found = find_rainbow_triangle(&g);
        ensure(found.is_some() == naive_rainbow(&g), || format!("rainbow mismatch on {g:?}"))?;
        if let Some((u, v, w)) = found {
            let (a, b, c) = (g.color(u, v), g.color(u, w), g.color(v, w));
            ensure(a != b && a != c && b != c, || format!("bogus triangle on {g:?}"))?;
            hits += 1;
        }
    }
    Ok(format!("{samples} colorings, {hits} with a rainbow triangle"))
}

/// Mono detector against injective-map enumeration, all catalog patterns.
pub fn check_mono(samples: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps: Vec<Vec<Vec<usize>>> = (0..=12).map(|n| injections(5.min(n), n)).collect();
    let mut hits = 0;
    for _ in 0..samples {
        let n = rng.gen_range(5..=12);
        // two or three colors keep both outcomes common
        let k = rng.gen_range(2..=3);
        let g = random_coloring(&mut rng, n, k);
        for named in Named::ALL {
            let h = named.graph();
            let got = find_mono_copy(&g, &h, None).map_err(|e| e.to_string())?;
            ensure(got.is_some() == naive_mono(&g, &h, &maps[n]), || {
                format!("{named:?} mismatch on {g:?}")
            })?;
            if let Some(e) = got {
                ensure(e.validate(&g), || format!("{named:?}: invalid embedding on {g:?}"))?;
                hits += 1;
            }
        }
    }
    Ok(format!("{samples} colorings x 13 patterns, {hits} copies"))
}

fn edge_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; n]; n];
    let mut e = 0;
    for v in 1..n {
        for u in 0..v {
            idx[u][v] = e;
            idx[v][u] = e;
            e += 1;
        }
    }
    idx
}

/// Every labeled copy of `h` in `K_n` as an edge mask.
fn copies(h: &TargetGraph, n: usize, idx: &[Vec<usize>]) -> Vec<u32> {
    if h.order() > n {
        return Vec::new();
    }
    let mut masks: Vec<u32> = injections(h.order(), n)
        .into_iter()
        .map(|img| {
            h.edges()
                .iter()
                .fold(0u32, |m, &(a, b)| m | 1 << idx[img[a]][img[b]])
        })
        .collect();
    masks.sort_unstable();
    masks.dedup();
    masks
}

fn small_patterns() -> Vec<TargetGraph> {
    let g = |n, e: &[(usize, usize)]| TargetGraph::new(n, e).unwrap();
    vec![
        g(3, &[(0, 1), (1, 2), (0, 2)]),
        g(3, &[(0, 1), (1, 2)]),
        g(4, &[(0, 1), (1, 2), (2, 3)]),
        g(4, &[(0, 1), (0, 2), (0, 3)]),
        g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
        Named::Banner.graph(),
        Named::Bull.graph(),
    ]
}

/// Search verdicts (both configurations) against full enumeration of every
/// k-coloring of `K_n`, n <= 6, k <= 3.
pub fn check_search_enumeration() -> Result<String, String> {
    let graphs = small_patterns();
    // (rainbow, pattern indices)
    let mut instances: Vec<(bool, Vec<usize>)> = Vec::new();
    for rainbow in [false, true] {
        for i in 0..graphs.len() {
            instances.push((rainbow, vec![i]));
        }
        instances.push((rainbow, vec![0, 3]));
    }
    instances.push((true, vec![]));
    let mut decided = 0;
    for n in 2..=6 {
        let idx = edge_index(n);
        let triangles: Vec<[usize; 3]> = (0..n)
            .flat_map(|u| (u + 1..n).flat_map(move |v| (v + 1..n).map(move |w| (u, v, w))))
            .map(|(u, v, w)| [idx[u][v], idx[u][w], idx[v][w]])
            .collect();
        let edges = n * (n - 1) / 2;
        // contains[p][mask]: the edge set `mask` holds a copy of pattern p
        let contains: Vec<Vec<bool>> = graphs
            .iter()
            .map(|h| {
                let cs = copies(h, n, &idx);
                (0..1u32 << edges)
                    .map(|m| cs.iter().any(|&c| c & m == c))
                    .collect()
            })
            .collect();
        for k in 1..=3usize {
            let mut avoidable = vec![false; instances.len()];
            let mut colors = vec![0u8; edges];
            for code in 0..(k as u64).pow(edges as u32) {
                let mut c = code;
                let mut masks = [0u32; 3];
                for (e, slot) in colors.iter_mut().enumerate() {
                    let col = (c % k as u64) as usize;
                    c /= k as u64;
                    *slot = col as u8;
                    masks[col] |= 1 << e;
                }
                let rainbow = triangles.iter().any(|t| {
                    let (a, b, d) = (colors[t[0]], colors[t[1]], colors[t[2]]);
                    a != b && a != d && b != d
                });
                for (slot, (forbid_rainbow, ps)) in avoidable.iter_mut().zip(&instances) {
                    if *slot || (*forbid_rainbow && rainbow) {
                        continue;
                    }
                    if ps.iter().all(|&p| masks[..k].iter().all(|&m| !contains[p][m as usize])) {
                        *slot = true;
                    }
                }
            }
            for ((forbid_rainbow, ps), &expect) in instances.iter().zip(&avoidable) {
                let f = Forbid {
                    rainbow_k3: *forbid_rainbow,
                    mono: ps.iter().map(|&p| graphs[p].clone()).collect(),
                };
                for config in [SearchConfig::witness(u64::MAX), SearchConfig::proof(u64::MAX)] {
                    let out = search(n, k, &f, &config).map_err(|e| e.to_string())?;
                    match &out.verdict {
                        Verdict::Found(g) => {
                            ensure(expect, || format!("n={n} k={k} {f}: found {g:?}, none exist"))?;
                            ensure(f.admits(g), || format!("n={n} k={k} {f}: bad witness"))?;
                        }
                        Verdict::Exhausted { .. } => {
                            ensure(!expect, || format!("n={n} k={k} {f}: exhausted, one exists"))?
                        }
                        Verdict::Budget { .. } => return Err("unbounded search hit budget".into()),
                    }
                    decided += 1;
                }
            }
        }
    }
    Ok(format!("{decided} search runs agree with enumeration"))
}

/// A rainbow-triangle-free coloring on `n` vertices with colors from `1..=k`,
/// built by substituting into random 2-colored bases.
pub fn gallai_coloring(rng: &mut ChaCha8Rng, n: usize, k: usize) -> ColoredCompleteGraph {
    if n == 1 {
        return ColoredCompleteGraph::monochromatic(1, color(1)).unwrap().with_k(k).unwrap();
    }
    let m = rng.gen_range(2..=n.min(6));
    let mut pal: Vec<usize> = (1..=k).collect();
    pal.shuffle(rng);
    let (a, b) = (pal[0], pal[pal.len().min(2) - 1]);
    let base = ColoredCompleteGraph::from_fn(m, k, |_, _| color(if rng.gen() { a } else { b })).unwrap();
    // split n into m positive sizes
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts[..m - 1].to_vec();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(n);
    let parts: Vec<ColoredCompleteGraph> = cuts
        .windows(2)
        .map(|w| gallai_coloring(rng, w[1] - w[0], k))
        .collect();
    substitute(&base, &parts).unwrap().with_k(k).unwrap()
}

/// Partition, reduction and re-substitution on random Gallai colorings.
pub fn check_gallai(samples: usize, seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total_parts = 0;
    for _ in 0..samples {
        let n = rng.gen_range(2..=60);
        let k = rng.gen_range(1..=6);
        let g = gallai_coloring(&mut rng, n, k);
        ensure(find_rainbow_triangle(&g).is_none(), || format!("generator made {g:?}"))?;
        let p = find_gallai_partition(&g).map_err(|e| format!("{e} on {g:?}"))?;
        let report = verify_partition(&g, &p);
        ensure(report.holds(), || format!("{report} on {g:?}"))?;
        let r = reduce(&g, &p).map_err(|e| e.to_string())?;
        ensure(r.0.colors_used().len() <= 2 && r.0.n() == p.m(), || {
            format!("reduced graph {:?} of {g:?}", r.0)
        })?;
        for i in 0..p.m() {
            for j in i + 1..p.m() {
                let between: Vec<_> = g.colors_between(&p.parts[i], &p.parts[j]).into_iter().collect();
                ensure(between == vec![p.pair(i, j).unwrap()], || {
                    format!("parts {i},{j} of {g:?}")
                })?;
            }
        }
        // substituting the parts back into the reduced graph gives g again
        let inner: Vec<ColoredCompleteGraph> =
            p.parts.iter().map(|s| g.induced(s).unwrap()).collect();
        let rebuilt = substitute(&r.0, &inner).map_err(|e| e.to_string())?;
        let order: Vec<usize> = p.parts.iter().flatten().copied().collect();
        for u in 0..n {
            for v in u + 1..n {
                ensure(rebuilt.color(u, v) == g.color(order[u], order[v]), || {
                    format!("re-substitution differs at {u},{v} of {g:?}")
                })?;
            }
        }
        let q = minimize_parts(&g).map_err(|e| e.to_string())?;
        ensure(verify_partition(&g, &q).holds() && q.m() <= p.m(), || {
            format!("minimized partition of {g:?}")
        })?;
        total_parts += p.m();
    }
    Ok(format!("{samples} colorings, {total_parts} parts in total"))
}
