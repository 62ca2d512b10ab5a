//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use speuler::oracle::{admissible_descriptions, description_from_bits, search_monotone, Verdict, DEFAULT_BUDGET};
use speuler::pipeline::render_verified;
use speuler::render::smooth_curve;
use speuler::verify::{compactness, zone_area_cv};
use speuler::{
    build_dual, extract_faces, fixtures, layout_circular, run, venn_dual, AbstractDescription, BuildOptions, Point,
    Style,
};

const BIN: &str = env!("CARGO_BIN_EXE_speuler");

struct Report {
    failed: Vec<usize>,
}

impl Report {
    fn record(&mut self, id: usize, pass: bool, detail: String) {
        println!("{} criterion {id}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failed.push(id);
        }
    }
}

fn speuler(args: &[&str]) -> std::process::Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

/// 1. `census 4` reports admissible = 3152 and monotone = 125.
fn census_reproduction(r: &mut Report) {
    let out = speuler(&["census", "4"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let summary = text.lines().last().unwrap_or_default().to_string();
    let field = |name: &str| -> Option<usize> {
        summary.split_whitespace().find_map(|kv| kv.strip_prefix(name)?.strip_prefix('=')?.parse().ok())
    };
    let (admissible, monotone) = (field("admissible"), field("monotone"));
    r.record(
        1,
        out.status.success() && admissible == Some(3152) && monotone == Some(125),
        format!("census n=4 `{summary}` (expected admissible=3152 monotone=125)"),
    );
}

/// 2. Full Venn n = 2..6 through the whole pipeline: 2^n labels, no
///    well-formedness violations, every dual face monotone, < 30 s.
fn venn_correctness(r: &mut Report) {
    let start = Instant::now();
    let mut problems = Vec::new();
    for n in 2..=6 {
        let d = AbstractDescription::full_venn(n).unwrap();
        let dual = venn_dual(n).unwrap();
        let layout = layout_circular::<f64>(&dual);
        let v = render_verified(&d, &dual, &layout, &Style::default()).unwrap();
        let labels: BTreeSet<_> = v.arrangement.faces.iter().map(|f| f.label).collect();
        if labels.len() != 1 << n || !v.metrics.matching.well_matched {
            problems.push(format!("n={n}: {} labels", labels.len()));
        }
        if v.metrics.wf_violations.total() != 0 {
            problems.push(format!("n={n}: {:?}", v.metrics.wf_violations));
        }
        if !dual.is_fully_monotone() {
            problems.push(format!("n={n}: non-monotone dual face"));
        }
    }
    let elapsed = start.elapsed();
    r.record(
        2,
        problems.is_empty() && elapsed < Duration::from_secs(30),
        format!("venn n=2..6 in {:.2}s; problems: {:?}", elapsed.as_secs_f64(), problems),
    );
}

fn census_descriptions(max_n: usize) -> Vec<AbstractDescription> {
    (1..=max_n)
        .flat_map(|n| admissible_descriptions(n).into_iter().map(move |bits| description_from_bits(n, bits).unwrap()))
        .collect()
}

/// 3. 200 random admissible census descriptions with n ≤ 4 are well-matched
///    end to end.
fn well_matched_suite(r: &mut Report, all: &[AbstractDescription]) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let sample: Vec<_> = all.choose_multiple(&mut rng, 200).collect();
    let failures: Vec<String> = sample
        .iter()
        .filter(|d| {
            let out = run::<f64>(d, BuildOptions::default(), &Style::default()).unwrap();
            !out.verified.metrics.matching.well_matched
        })
        .map(|d| d.to_text().unwrap_or_default().replace('\n', " "))
        .collect();
    r.record(
        3,
        sample.len() == 200 && failures.is_empty(),
        format!("{} sampled, P1 failures: {:?}", sample.len(), failures),
    );
}

/// 4. On every oracle-monotone description with n ≤ 4 the greedy dual is
///    planar and the rendering well-matched; the fully monotone fraction is
///    reported.
fn greedy_vs_oracle(r: &mut Report, all: &[AbstractDescription]) {
    let monotone: Vec<_> =
        all.iter().filter(|d| matches!(search_monotone(d, DEFAULT_BUDGET).verdict, Verdict::Monotone(_))).collect();
    let (mut ok, mut fully) = (0, 0);
    for d in &monotone {
        let Ok(dual) = build_dual(d) else { continue };
        fully += usize::from(dual.is_fully_monotone());
        let out = run::<f64>(d, BuildOptions::default(), &Style::default()).unwrap();
        if dual.validate().is_ok() && out.verified.metrics.matching.well_matched {
            ok += 1;
        }
    }
    let total = monotone.len();
    r.record(
        4,
        total > 0 && ok == total,
        format!(
            "{ok}/{total} planar and well-matched; greedy fully monotone on {fully}/{total} ({:.1}%)",
            100.0 * fully as f64 / total.max(1) as f64
        ),
    );
}

/// 5. The no-sink fixture has exactly one non-pairwise point, at the center.
fn no_sink_fallback(r: &mut Report) {
    let d = fixtures::NO_SINK.description().unwrap();
    let out = run::<f64>(&d, BuildOptions::default(), &Style::default()).unwrap();
    let a = &out.verified.arrangement;
    let centered = a.nonpairwise_at.iter().all(|p| p.norm() < 1e-6);
    r.record(
        5,
        a.nonpairwise_points == 1 && centered && out.verified.metrics.matching.well_matched,
        format!("non-pairwise points {} at {:?}", a.nonpairwise_points, a.nonpairwise_at),
    );
}

/// 6. The Caribbean fixture renders with exactly one concurrency bundle and
///    is well-matched, including the written SVG.
fn caribbean_concurrency(r: &mut Report) {
    let d = fixtures::CARIBBEAN.description().unwrap();
    let out = run::<f64>(&d, BuildOptions::default(), &Style::default()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("caribbean.svg");
    let svg = svg.to_str().unwrap();
    let generated = speuler(&["generate", "fixture:caribbean", "-o", svg]).status.success();
    let svg_checked = speuler(&["metrics", "fixture:caribbean", "--diagram", svg]).status.success();
    let bundles = out.verified.diagram.bundles.len();
    let concurrent = out.verified.metrics.wf_violations.concurrent_segments;
    r.record(
        6,
        bundles == 1 && concurrent == 1 && out.verified.metrics.matching.well_matched && generated && svg_checked,
        format!(
            "bundles={bundles} concurrent_segments={concurrent} P1={} svg P1={}",
            out.verified.metrics.matching.well_matched, svg_checked
        ),
    );
}

/// 7. The curve through 16 circle control points has compactness ≥ 0.99; an equal-area diagram has
///    zone area CV 0 ± 1e-9.
fn geometry_sanity(r: &mut Report) {
    let control: Vec<Point<f64>> =
        (0..16).map(|i| Point::polar(std::f64::consts::TAU * i as f64 / 16.0, 1.0)).collect();
    let c = compactness(&[smooth_curve(&control, Style::default().samples_per_span)]);
    // Three unit zones a, ab, b from two overlapping 2×1 rectangles.
    let rect = |x0: f64| {
        vec![vec![
            Point::new(x0, 0.0),
            Point::new(x0 + 2.0, 0.0),
            Point::new(x0 + 2.0, 1.0),
            Point::new(x0, 1.0),
            Point::new(x0, 0.0),
        ]]
    };
    let arrangement = extract_faces(&[rect(0.0), rect(1.0)]).unwrap();
    let cv = zone_area_cv(&arrangement.faces);
    r.record(
        7,
        c >= 0.99 && cv.abs() <= 1e-9,
        format!("16-point circle curve compactness {c:.5}; equal-area zone_area_cv {cv:e}"),
    );
}

/// 8. Dual construction: 1024 nodes in < 120 s, 64 nodes in < 2 s.
fn performance(r: &mut Report) {
    let time = |n: usize| {
        let d = AbstractDescription::full_venn(n).unwrap();
        let start = Instant::now();
        let dual = build_dual(&d).unwrap();
        (start.elapsed(), dual.zones().len())
    };
    let (large, large_nodes) = time(10);
    let (small, small_nodes) = time(6);
    r.record(
        8,
        large_nodes == 1024 && small_nodes == 64 && large < Duration::from_secs(120) && small < Duration::from_secs(2),
        format!(
            "{large_nodes} nodes in {:.3}s, {small_nodes} nodes in {:.4}s",
            large.as_secs_f64(),
            small.as_secs_f64()
        ),
    );
}

/// 9. Two runs of every command give byte-identical output.
fn determinism(r: &mut Report) {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("venn4.svg");
    std::fs::write(&svg, speuler(&["generate", "--venn", "4"]).stdout).unwrap();
    let svg = svg.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["generate", "fixture:xkcd"],
        vec!["generate", "fixture:caribbean", "--stage", "dual"],
        vec!["generate", "fixture:topic_modeling", "--stage", "layout"],
        vec!["generate", "--venn", "5"],
        vec!["metrics", "fixture:venn4", "--json"],
        vec!["metrics", "fixture:venn4", "--diagram", svg],
        vec!["validate", "fixture:no_sink"],
        vec!["census", "3", "--jobs", "2"],
    ];
    let digest = |args: &[&str]| {
        let out = speuler(args);
        let mut h = Sha256::new();
        h.update(&out.stdout);
        h.update(&out.stderr);
        h.update(out.status.code().unwrap_or(-1).to_le_bytes());
        h.finalize()
    };
    let differing: Vec<String> =
        commands.iter().filter(|args| digest(args) != digest(args)).map(|args| args.join(" ")).collect();
    r.record(9, differing.is_empty(), format!("{} commands hashed twice; differing: {:?}", commands.len(), differing));
}

#[test]
fn acceptance() {
    let mut r = Report { failed: Vec::new() };
    let all = census_descriptions(4);
    census_reproduction(&mut r);
    venn_correctness(&mut r);
    well_matched_suite(&mut r, &all);
    greedy_vs_oracle(&mut r, &all);
    no_sink_fallback(&mut r);
    caribbean_concurrency(&mut r);
    geometry_sanity(&mut r);
    performance(&mut r);
    determinism(&mut r);
    assert!(r.failed.is_empty(), "failed criteria: {:?}", r.failed);
}
