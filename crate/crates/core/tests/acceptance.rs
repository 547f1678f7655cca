//! Acceptance run: one PASS/FAIL line per criterion, with timings.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use grlab::catalog::{catalog_graph, CatalogId, Named, PresetTable};
use grlab::construct::{witness_f12_f13, witness_f2n, witness_f9_f10, witness_k3};
use grlab::detect::{find_mono_copy, find_rainbow_triangle};
use grlab::facts::audit_facts_with;
use grlab::formulas::gr_value;
use grlab::gallai::{find_gallai_partition, minimize_parts, verify_partition};
use grlab::graph::ColoredCompleteGraph;
use grlab::pattern::{is_isomorphic, is_subgraph, TargetGraph};
use grlab::search::pin::hosts;
use grlab::search::{
    compute_gr, compute_r2, pin_presets, prove_unavoidable, Forbid, PinConfig, SearchConfig,
};

mod common;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, t: Instant, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e <= limit, || format!("{what} took {e:.2?}, limit {limit:?}"))
}

fn candidates(aliases: &[u8]) -> Vec<Named> {
    let presets = PresetTable::committed();
    let mut v: Vec<Named> = aliases
        .iter()
        .flat_map(|a| presets.candidates(*a).to_vec())
        .collect();
    v.sort();
    v.dedup();
    v
}

/// No rainbow triangle and no monochromatic copy of any pattern.
fn check_free(g: &ColoredCompleteGraph, patterns: &[TargetGraph], label: &str) -> Result<(), String> {
    if let Some(t) = find_rainbow_triangle(g) {
        return Err(format!("{label}: rainbow triangle {t:?}"));
    }
    for h in patterns {
        if h.order() > g.n() {
            continue;
        }
        if let Some(e) = find_mono_copy(g, h, None).map_err(|e| e.to_string())? {
            return Err(format!("{label}: mono {} at {:?}", h, e.image));
        }
    }
    Ok(())
}

fn tower_suite(
    aliases: &[u8],
    ks: std::ops::RangeInclusive<usize>,
    expected: &[usize],
    build: fn(usize) -> Result<ColoredCompleteGraph, grlab::construct::ConstructError>,
) -> Outcome {
    let pats: Vec<TargetGraph> = candidates(aliases).into_iter().map(Named::graph).collect();
    let mut orders = Vec::new();
    let mut last = Duration::ZERO;
    for (k, &want) in ks.zip(expected) {
        let t = Instant::now();
        let g = build(k).map_err(|e| e.to_string())?;
        let formula = gr_value(&CatalogId::Alias(aliases[0]), k).map_err(|e| e.to_string())?;
        ensure(g.n() == want && (g.n() as u64) + 1 == formula.lo(), || {
            format!("k={k}: order {} expected {want}, formula {formula}", g.n())
        })?;
        ensure(g.colors_used().len() <= k, || format!("k={k}: too many colors"))?;
        check_free(&g, &pats, &format!("k={k}"))?;
        last = t.elapsed();
        within(Duration::from_secs(60), t, &format!("k={k} verification"))?;
        orders.push(g.n());
    }
    let names: Vec<String> = pats.iter().map(|h| h.to_string()).collect();
    Ok(format!(
        "orders {orders:?}, free of rainbow K3 and mono [{}]; largest verified in {last:.2?}",
        names.join(", ")
    ))
}

fn criterion_1() -> Outcome {
    tower_suite(&[9, 10], 1..=4, &[4, 8, 20, 40], witness_f9_f10)
}

fn criterion_2() -> Outcome {
    tower_suite(&[12, 13], 2..=4, &[9, 20, 45], witness_f12_f13)
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for n in [3usize, 4, 5, 6, 8] {
        let h = catalog_graph(&CatalogId::F2n(n)).map_err(|e| e.to_string())?;
        for k in 3..=6usize {
            let want = match n {
                3 => k + 3,
                4 => k + 4,
                5 => k + 8,
                // 5n/2 + k - 7 for even n
                6 => k + 8,
                8 => k + 13,
                _ => unreachable!(),
            };
            let g = witness_f2n(k, n).map_err(|e| e.to_string())?;
            ensure(g.n() == want, || format!("(k={k}, n={n}): order {} expected {want}", g.n()))?;
            ensure(g.colors_used().len() <= k, || format!("(k={k}, n={n}): too many colors"))?;
            check_free(&g, std::slice::from_ref(&h), &format!("(k={k}, n={n})"))?;
            checked += 1;
        }
    }
    let spot = (witness_f2n(3, 5).unwrap().n(), witness_f2n(4, 8).unwrap().n());
    ensure(spot == (11, 17), || format!("spot orders {spot:?}"))?;
    within(Duration::from_secs(30), t, "suite")?;
    Ok(format!("{checked} witnesses, (3,5)->{} (4,8)->{}", spot.0, spot.1))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    let t = Instant::now();
    let banner = compute_r2(&Named::Banner.graph(), 8, &SearchConfig::proof(1_000_000_000))
        .map_err(|e| e.to_string())?;
    ensure(banner.exact() == Some(6), || format!("r2(banner) = {banner}"))?;
    within(Duration::from_secs(1), t, "r2(banner)")?;
    notes.push(format!("r2(banner)=6 in {:.2?}", t.elapsed()));

    let t = Instant::now();
    let f24 = catalog_graph(&CatalogId::F2n(4)).map_err(|e| e.to_string())?;
    let b = compute_r2(&f24, 9, &SearchConfig::proof(1_000_000_000)).map_err(|e| e.to_string())?;
    ensure(b.exact() == Some(7), || format!("r2(f2n:4) = {b}"))?;
    within(Duration::from_secs(10), t, "r2(f2n:4)")?;
    notes.push(format!("r2(f2n:4)=7 in {:.2?}", t.elapsed()));

    for named in candidates(&[9]) {
        let t = Instant::now();
        let out = prove_unavoidable(9, 2, &Forbid::mono(vec![named.graph()]), 1_000_000_000)
            .map_err(|e| e.to_string())?;
        ensure(out.is_exhausted(), || format!("n=9 f9={}: {:?}", named.label(), out.verdict))?;
        within(Duration::from_secs(1800), t, "f9 proof")?;
        notes.push(format!(
            "n=9 f9={} exhausted ({} nodes, {:.2?})",
            named.label(),
            out.nodes,
            t.elapsed()
        ));
    }

    let t = Instant::now();
    let f25 = catalog_graph(&CatalogId::F2n(5)).map_err(|e| e.to_string())?;
    let b = compute_r2(&f25, 11, &SearchConfig::proof(1_000_000_000)).map_err(|e| e.to_string())?;
    match b.exact() {
        Some(10) => notes.push(format!("stretch r2(f2n:5)=10 in {:.2?}", t.elapsed())),
        Some(v) => return Err(format!("r2(f2n:5) = {v}")),
        None => {
            ensure(b.lo >= 10, || format!("r2(f2n:5) bound {b}"))?;
            notes.push(format!("stretch r2(f2n:5): {b} (witness side only)"));
        }
    }
    Ok(notes.join("; "))
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    let cases: [(&str, TargetGraph, usize, usize); 3] = [
        ("banner", Named::Banner.graph(), 3, 7),
        ("banner", Named::Banner.graph(), 4, 8),
        ("k3", catalog_graph(&CatalogId::Complete(3)).map_err(|e| e.to_string())?, 3, 11),
    ];
    for (name, h, k, want) in cases {
        let t = Instant::now();
        let b = compute_gr(&h, k, want + 1, &SearchConfig::proof(1_000_000_000))
            .map_err(|e| e.to_string())?;
        ensure(b.exact() == Some(want), || format!("gr_{k}({name}) = {b}"))?;
        within(Duration::from_secs(600), t, name)?;
        notes.push(format!("gr_{k}({name})={want} in {:.2?}", t.elapsed()));
    }
    Ok(notes.join("; "))
}

fn criterion_6() -> Outcome {
    let table: [(&str, [u64; 10]); 6] = [
        ("f9", [5, 9, 21, 41, 101, 201, 501, 1001, 2501, 5001]),
        ("f10", [5, 9, 21, 41, 101, 201, 501, 1001, 2501, 5001]),
        ("f12", [5, 10, 21, 46, 101, 226, 501, 1126, 2501, 5626]),
        ("f13", [5, 10, 21, 46, 101, 226, 501, 1126, 2501, 5626]),
        ("f11", [5, 6, 7, 8, 9, 10, 11, 12, 13, 14]),
        ("k3", [3, 6, 11, 26, 51, 126, 251, 626, 1251, 3126]),
    ];
    for (fam, values) in table {
        let id: CatalogId = fam.parse().map_err(|e| format!("{e}"))?;
        for (i, &want) in values.iter().enumerate() {
            let k = i + 1;
            let got = gr_value(&id, k).map_err(|e| e.to_string())?;
            ensure(got.exact() == Some(want), || format!("{fam}@k={k}: {got}, expected {want}"))?;
        }
    }
    Ok("60 values equal, f9@5=101 f12@5=101 f12@6=226 f11@10=14".into())
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let r = common::check_gallai(1000, 2024)?;
    within(Duration::from_secs(60), t, "suite")?;
    Ok(r)
}

fn criterion_8() -> Outcome {
    let a = common::check_rainbow(500, 11)?;
    let b = common::check_mono(500, 12)?;
    let c = common::check_search_enumeration()?;
    Ok(format!("{a}; {b}; {c}"))
}

fn criterion_9() -> Outcome {
    let presets = PresetTable::committed();
    let mut notes = Vec::new();
    let towers: [(&str, &[u8], Vec<usize>, fn(usize) -> _); 2] = [
        ("f9/f10", &[9, 10], vec![1, 2, 3, 4], witness_f9_f10 as fn(usize) -> _),
        ("f12/f13", &[12, 13], vec![2, 3, 4], witness_f12_f13),
    ];
    for (label, aliases, ks, build) in towers {
        for k in ks {
            let g: ColoredCompleteGraph = build(k).map_err(|e: grlab::construct::ConstructError| e.to_string())?;
            let partitions = [
                find_gallai_partition(&g).map_err(|e| e.to_string())?,
                minimize_parts(&g).map_err(|e| e.to_string())?,
            ];
            let mut instances = 0;
            for p in &partitions {
                for named in candidates(aliases) {
                    let reports = audit_facts_with(&g, p, &named.graph(), &presets)
                        .map_err(|e| e.to_string())?;
                    for r in reports {
                        ensure(r.holds, || format!("{label} k={k} {}: {r}", named.label()))?;
                        instances += r.instances;
                    }
                }
            }
            // a two-colored witness may have only the all-singleton partition
            let layered = g.colors_used().len() >= 3;
            ensure(!layered || instances > 0, || format!("{label} k={k}: every fact vacuous"))?;
            notes.push(format!("{label} k={k}: {instances}"));
        }
    }
    let mut others = 0;
    let extra = (1..=5)
        .map(witness_k3)
        .chain((2..=6).flat_map(|k| [3, 4, 5, 6, 8].map(|n| witness_f2n(k, n))));
    for g in extra {
        let g = g.map_err(|e| e.to_string())?;
        if g.n() < 2 {
            continue;
        }
        let p = find_gallai_partition(&g).map_err(|e| e.to_string())?;
        let report = verify_partition(&g, &p);
        ensure(report.holds(), || format!("partition of order-{} witness: {report}", g.n()))?;
        others += 1;
    }
    Ok(format!(
        "all facts hold; non-vacuous instances {}; {others} further witnesses decompose",
        notes.join(", ")
    ))
}

fn criterion_10() -> Outcome {
    let config = PinConfig::default();
    let a = pin_presets(&config).map_err(|e| e.to_string())?;
    ensure(!a.assignments.is_empty(), || "no consistent assignment".into())?;
    let host_list = hosts();
    for assign in &a.assignments {
        let [f9, f10, f12, f13] = *assign;
        ensure(
            is_subgraph(&f9.graph(), &f10.graph()) && !is_isomorphic(&f9.graph(), &f10.graph()),
            || format!("{assign:?}: f9 not inside f10"),
        )?;
        for (named, want) in [(f9, 9), (f10, 9), (f12, 10), (f13, 10)] {
            let got = a.r2[&named].exact();
            ensure(got == Some(want), || format!("r2({}) = {got:?}", named.label()))?;
        }
        for h in &host_list {
            for &alias in h.aliases {
                let named = match alias {
                    9 => f9,
                    10 => f10,
                    12 => f12,
                    _ => f13,
                };
                ensure(is_subgraph(&named.graph(), &h.graph), || {
                    format!("{} not inside {}", named.label(), h.name)
                })?;
            }
        }
    }
    let committed = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/presets.txt"))
        .map_err(|e| e.to_string())?;
    ensure(committed == a.preset_text(), || "committed presets differ from pinning".into())?;
    let b = pin_presets(&config).map_err(|e| e.to_string())?;
    ensure(a.evidence() == b.evidence(), || "evidence differs between runs".into())?;
    let shown: Vec<String> = a
        .assignments
        .iter()
        .map(|s| s.iter().map(|n| n.label()).collect::<Vec<_>>().join("/"))
        .collect();
    Ok(format!(
        "{} assignments [{}]; evidence identical ({} bytes)",
        a.assignments.len(),
        shown.join("; "),
        a.evidence().len()
    ))
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = 0;
    for (i, run) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS [{secs:.2}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL [{secs:.2}s] {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
