//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `--nocapture`). Criteria 6 and 7 share the two greedy runs
//! to 50,000 boxes, so expect several minutes of wall time for the pair.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;

use youngdim::analysis::{differences, fit_limit, level_report};
use youngdim::config::derive_stream_seed;
use youngdim::diagram::{Diagram, Mode, StrictDiagram};
use youngdim::dimension::{dim, dim_strict, plancherel_weight, Ratio};
use youngdim::growth::{greedy_sequence, merge_experiment, plancherel_sample, transition_probs_exact, GrowthSequence};
use youngdim::io::{sequence_from_str, sequence_to_string};
use youngdim::search::{exhaustive_max_with_cap, improved_search, level_dims, SearchConfig};

fn criterion(k: u32, name: &str, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    match body() {
        Ok(detail) => {
            println!(
                "ACCEPTANCE {k} ({name}): PASS — {detail} [{:.1}s]",
                start.elapsed().as_secs_f64()
            );
        }
        Err(msg) => {
            println!(
                "ACCEPTANCE {k} ({name}): FAIL — {msg} [{:.1}s]",
                start.elapsed().as_secs_f64()
            );
            panic!("acceptance criterion {k} failed: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !($cond) {
            return Err(format!($($arg)+));
        }
    };
}

fn factorials(n: u64) -> Vec<BigUint> {
    let mut f = vec![BigUint::one()];
    for i in 1..=n {
        let next = f.last().unwrap() * i;
        f.push(next);
    }
    f
}

/// Criterion 1: closed formulas equal path-count DP values exactly for every
/// standard diagram up to 20 boxes and strict diagram up to 30.
#[test]
fn acceptance_1_formula_oracle_equivalence() {
    criterion(1, "formula/oracle equivalence", || {
        let mut checked = 0u64;
        for (mode, n_max) in [(Mode::Standard, 20u64), (Mode::Strict, 30u64)] {
            let mut mismatch = None;
            level_dims(n_max, mode, n_max, |n, map| {
                for (d, by_dp) in map {
                    let by_formula = dim(d, mode).expect("valid diagram");
                    if by_formula != *by_dp && mismatch.is_none() {
                        mismatch = Some(format!("{mode} level {n} diagram {d}"));
                    }
                    checked += 1;
                }
            })
            .map_err(|e| e.to_string())?;
            ensure!(mismatch.is_none(), "mismatch at {}", mismatch.unwrap());
        }
        Ok(format!("{checked} diagrams agree"))
    });
}

/// Criterion 2: Σ dim² = n! (standard) and Σ dim²·2^(n-l) = n! (strict) for
/// all n ≤ 25, in exact integer arithmetic.
#[test]
fn acceptance_2_exact_level_identities() {
    criterion(2, "exact level identities", || {
        let facts = factorials(25);
        let mut bad = None;
        level_dims(25, Mode::Standard, 60, |n, map| {
            let total: BigUint = map.values().map(|v| v * v).sum();
            if total != facts[n as usize] && bad.is_none() {
                bad = Some(format!("standard level {n}"));
            }
        })
        .map_err(|e| e.to_string())?;
        level_dims(25, Mode::Strict, 100, |n, map| {
            let total: BigUint = map
                .iter()
                .map(|(d, v)| v * v * (BigUint::one() << (n - d.width() as u64) as usize))
                .sum();
            if total != facts[n as usize] && bad.is_none() {
                bad = Some(format!("strict level {n}"));
            }
        })
        .map_err(|e| e.to_string())?;
        ensure!(bad.is_none(), "identity violated at {}", bad.unwrap());
        Ok("both identities hold exactly for n ≤ 25".into())
    });
}

/// Criterion 3: the sampler's exact level-n law equals the Plancherel
/// measure for n ≤ 10, and transition rows sum to 1 for n ≤ 12.
#[test]
fn acceptance_3_plancherel_sampler_law() {
    criterion(3, "Plancherel sampler law", || {
        for mode in [Mode::Standard, Mode::Strict] {
            let facts = factorials(10);
            let mut measure: HashMap<Diagram, Ratio> = HashMap::new();
            measure.insert(Diagram::empty(), Ratio::one());
            for n in 1..=10u64 {
                let mut next: HashMap<Diagram, Ratio> = HashMap::new();
                for (v, mass) in &measure {
                    for (step, p) in transition_probs_exact(v, mode).map_err(|e| e.to_string())? {
                        let s = v.apply(step);
                        let add = mass.mul(&p);
                        next.entry(s).and_modify(|acc| *acc = acc.add(&add)).or_insert(add);
                    }
                }
                for (v, mass) in &next {
                    let expect = match mode {
                        Mode::Strict => plancherel_weight(&StrictDiagram::new(v.clone()).unwrap())
                            .map_err(|e| e.to_string())?,
                        Mode::Standard => {
                            let dm = dim(v, mode).map_err(|e| e.to_string())?;
                            Ratio::new(&dm * &dm, facts[n as usize].clone())
                        }
                    };
                    ensure!(*mass == expect, "{mode} level {n}: law mismatch at {v}");
                }
                measure = next;
            }
        }
        // transition rows sum to one, n ≤ 12, both modes
        for mode in [Mode::Standard, Mode::Strict] {
            let mut level = vec![Diagram::empty()];
            for n in 1..=12u64 {
                let mut next: Vec<Diagram> = Vec::new();
                for v in &level {
                    let mut total = Ratio::zero();
                    for (_, p) in transition_probs_exact(v, mode).map_err(|e| e.to_string())? {
                        total = total.add(&p);
                    }
                    ensure!(total.is_one(), "{mode} row at {v} sums to {total}");
                    for (s, _) in v.successors(mode) {
                        if !next.contains(&s) {
                            next.push(s);
                        }
                    }
                }
                let _ = n;
                level = next;
            }
        }
        Ok("exact law equality (n ≤ 10) and unit row sums (n ≤ 12)".into())
    });
}

fn search_cfg() -> SearchConfig {
    SearchConfig { rng_seed: derive_stream_seed(20_160_101, "acceptance-search", 0), ..SearchConfig::default() }
}

/// Criterion 4: the improvement search reproduces the published maximum
/// strict partitions at 200 and 250 boxes exactly.
#[test]
fn acceptance_4_published_max_partitions() {
    criterion(4, "max partitions at 200/250", || {
        let best = improved_search(&[Diagram::empty()], 250, Mode::Strict, &search_cfg())
            .map_err(|e| e.to_string())?;
        let want200: Diagram = "34,30,26,23,20,17,14,11,9,7,5,3,1".parse().unwrap();
        let want250: Diagram = "38,34,30,27,24,21,18,15,13,10,8,6,4,2".parse().unwrap();
        let got200 = &best.level(200).unwrap().diagram;
        let got250 = &best.level(250).unwrap().diagram;
        ensure!(*got200 == want200, "level 200: got {got200}, want {want200}");
        ensure!(*got250 == want250, "level 250: got {got250}, want {want250}");
        Ok("both published partitions reproduced".into())
    });
}

/// Criterion 5: the improvement search agrees with the exhaustive DP maxima
/// at every level (strict to 100, standard to 60).
#[test]
fn acceptance_5_ground_truth_agreement() {
    criterion(5, "ground-truth agreement", || {
        for (mode, n_max) in [(Mode::Strict, 100u64), (Mode::Standard, 60u64)] {
            let table = exhaustive_max_with_cap(n_max, mode, n_max).map_err(|e| e.to_string())?;
            let best = improved_search(&[Diagram::empty()], n_max, mode, &search_cfg())
                .map_err(|e| e.to_string())?;
            for lm in &table.levels {
                let bl = best.level(lm.n).unwrap();
                let found = dim(&bl.diagram, mode).map_err(|e| e.to_string())?;
                ensure!(
                    found == lm.dim,
                    "{mode} level {}: search found dim {found}, DP max {}",
                    lm.n,
                    lm.dim
                );
            }
        }
        Ok("search matches DP maxima (strict ≤ 100, standard ≤ 60)".into())
    });
}

static STRICT_RUN: OnceLock<GrowthSequence> = OnceLock::new();
static STANDARD_RUN: OnceLock<GrowthSequence> = OnceLock::new();
const RUN_TARGET: u64 = 50_000;

fn strict_run() -> &'static GrowthSequence {
    STRICT_RUN.get_or_init(|| greedy_sequence(Diagram::empty(), RUN_TARGET, Mode::Strict).unwrap())
}

fn standard_run() -> &'static GrowthSequence {
    STANDARD_RUN
        .get_or_init(|| greedy_sequence(Diagram::empty(), RUN_TARGET, Mode::Standard).unwrap())
}

/// Criterion 6: limit fits at desk scale. Greedy to 50,000 boxes, window
/// [10^4, 5·10^4]: standard C = 0.700281 ± 0.005, a = 4.29412 ± 0.3;
/// strict C = 0.182837 ± 0.005, a = 3.19579 ± 0.3.
#[test]
fn acceptance_6_limit_fits() {
    criterion(6, "limit fits", || {
        let window = (10_000u64, RUN_TARGET);
        let mut report = Vec::new();
        for (mode, want_c, want_a) in [
            (Mode::Standard, 0.700281, 4.29412),
            (Mode::Strict, 0.182837, 3.19579),
        ] {
            let run = match mode {
                Mode::Standard => standard_run(),
                Mode::Strict => strict_run(),
            };
            let points: Vec<(u64, f64)> =
                run.samples().iter().filter(|s| s.n > 0).map(|s| (s.n, s.c)).collect();
            let fit = fit_limit(&points, window).map_err(|e| e.to_string())?;
            ensure!(
                (fit.limit - want_c).abs() <= 0.005,
                "{mode}: C = {:.6}, want {want_c} ± 0.005",
                fit.limit
            );
            ensure!(
                (fit.coeff - want_a).abs() <= 0.3,
                "{mode}: a = {:.5}, want {want_a} ± 0.3",
                fit.coeff
            );
            report.push(format!("{mode}: C = {:.6}, a = {:.5}", fit.limit, fit.coeff));
        }
        Ok(report.join("; "))
    });
}

/// Criterion 7: oscillation range and attribution over the strict run:
/// s = (c(n)-c(n-1))√n ∈ [-0.45, 0.31] for n ∈ [1.1·10^4, 5·10^4], the
/// minimizing step adds to row 7, and the second-lowest band is row 2.
#[test]
fn acceptance_7_oscillation_bands() {
    criterion(7, "oscillation range and rows", || {
        let run = strict_run();
        let series = differences(run).map_err(|e| e.to_string())?;
        let window = (11_000u64, RUN_TARGET);
        let report = level_report(&series, window).map_err(|e| e.to_string())?;
        ensure!(
            report.global_min >= -0.45 && report.global_max <= 0.31,
            "scaled differences range [{:.4}, {:.4}] outside [-0.45, 0.31]",
            report.global_min,
            report.global_max
        );
        ensure!(report.min_is_row7, "deepest fall at row {}, want 7", report.argmin_row);
        let bands = report.bands_by_min();
        ensure!(bands.len() >= 2, "only {} bands", bands.len());
        ensure!(bands[1].0 == 2, "second-lowest band is row {}, want 2", bands[1].0);
        Ok(format!(
            "s ∈ [{:.4}, {:.4}], lowest bands rows {} and {}",
            report.global_min, report.global_max, bands[0].0, bands[1].0
        ))
    });
}

/// Criterion 8: 100 pairs of strict Plancherel samples at n = 500 with a
/// budget of 1000 added boxes; at least 99 pairs merge.
#[test]
fn acceptance_8_merge_batch() {
    criterion(8, "merge batch", || {
        let base = derive_stream_seed(20_160_101, "acceptance-merge", 0);
        let mut merged = 0u32;
        let mut max_steps = 0u64;
        for i in 0..100u64 {
            let a = plancherel_sample(Mode::Strict, 500, derive_stream_seed(base, "pair-a", i));
            let b = plancherel_sample(Mode::Strict, 500, derive_stream_seed(base, "pair-b", i));
            let r = merge_experiment(a, b, Mode::Strict, 1000).map_err(|e| e.to_string())?;
            if r.merged_at_size.is_some() {
                merged += 1;
                max_steps = max_steps.max(r.steps_a).max(r.steps_b);
            }
        }
        ensure!(merged >= 99, "only {merged}/100 pairs merged within 1000 boxes");
        Ok(format!("{merged}/100 merged; max steps to merge = {max_steps}"))
    });
}

/// Criterion 9: property suites — greedy determinism, resume soundness,
/// telescoping, synthetic-fit exactness, serialization round trips, and
/// strict-formula integrality on 10³ random diagrams up to 200 boxes.
#[test]
fn acceptance_9_property_suites() {
    criterion(9, "property suites", || {
        // greedy determinism
        let a = greedy_sequence(Diagram::empty(), 400, Mode::Strict).map_err(|e| e.to_string())?;
        let b = greedy_sequence(Diagram::empty(), 400, Mode::Strict).map_err(|e| e.to_string())?;
        ensure!(
            sequence_to_string(&a) == sequence_to_string(&b),
            "greedy runs not byte-identical"
        );

        // resume soundness: continue a 200-box prefix to 400 and compare
        let prefix = greedy_sequence(Diagram::empty(), 200, Mode::Strict).map_err(|e| e.to_string())?;
        let mut resumed =
            sequence_from_str(&sequence_to_string(&prefix)).map_err(|e| e.to_string())?;
        resumed.grow_greedy_to(400).map_err(|e| e.to_string())?;
        ensure!(
            sequence_to_string(&resumed) == sequence_to_string(&a),
            "resumed run differs from fresh run"
        );

        // telescoping of differences
        let series = differences(&a).map_err(|e| e.to_string())?;
        let mut total = youngdim::hp::ZERO;
        for r in series.records.iter().filter(|r| r.n >= 50 && r.n <= 350) {
            total = total.add(r.d);
        }
        let want = a.samples()[350].c_dd.sub(a.samples()[49].c_dd);
        ensure!(
            total.sub(want).to_f64().abs() < 1e-24,
            "telescoping residual {:e}",
            total.sub(want).to_f64()
        );

        // synthetic fit exactness
        let points: Vec<(u64, f64)> =
            (100..5000u64).map(|n| (n, 0.31 - 2.5 / (n as f64).sqrt())).collect();
        let fit = fit_limit(&points, (100, 4999)).map_err(|e| e.to_string())?;
        ensure!(
            (fit.limit - 0.31).abs() < 1e-12 && (fit.coeff + 2.5).abs() < 1e-12,
            "synthetic fit C = {}, a = {}",
            fit.limit,
            fit.coeff
        );

        // serialize/parse round trips
        for text in ["", "1", "5,4,2,1", "34,30,26,23,20,17,14,11,9,7,5,3,1"] {
            let d: Diagram = text.parse().unwrap();
            ensure!(d.to_string() == text, "round trip failed for {text:?}");
        }
        ensure!("2,3".parse::<Diagram>().is_err(), "order violation accepted");

        // strict formula integrality on 1000 random diagrams, n ≤ 200
        let base = derive_stream_seed(20_160_101, "acceptance-integrality", 0);
        for i in 0..1000u64 {
            let n = 1 + (derive_stream_seed(base, "size", i) % 200);
            let d = plancherel_sample(Mode::Strict, n, derive_stream_seed(base, "walk", i));
            let s = StrictDiagram::new(d).unwrap();
            ensure!(dim_strict(&s).is_ok(), "non-integral dimension at sample {i}");
        }

        Ok("determinism, resume, telescoping, fit, round trips, integrality".into())
    });
}

/// The improvement property underlying criterion 5: the searched sequence is
/// never lexicographically worse than a plain greedy run.
#[test]
fn acceptance_improvement_vs_greedy() {
    let best = improved_search(&[Diagram::empty()], 80, Mode::Strict, &search_cfg()).unwrap();
    let greedy = greedy_sequence(Diagram::empty(), 80, Mode::Strict).unwrap();
    let mut cur = Diagram::empty();
    let mut worse = false;
    let mut better = 0u32;
    for (i, step) in greedy.steps().iter().enumerate() {
        cur = cur.apply(*step);
        let n = cur.size();
        let bl = best.level(n).unwrap();
        let d_best = dim(&bl.diagram, Mode::Strict).unwrap();
        let d_greedy = dim(&cur, Mode::Strict).unwrap();
        match d_best.cmp(&d_greedy) {
            Ordering::Less => worse = true,
            Ordering::Greater => better += 1,
            Ordering::Equal => {}
        }
        let _ = i;
    }
    assert!(!worse, "improved search fell below greedy");
    assert!(better > 0, "improvement search never beat plain greedy up to 80 boxes");
}
