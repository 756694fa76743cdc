//! Maximum-dimension diagrams: exact level tables by dynamic programming at
//! small sizes, and a multi-start greedy improvement search for large sizes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::config::derive_stream_seed;
use crate::diagram::{Diagram, Mode, StrictDiagram};
use crate::dimension::{dim, DimensionError, DimensionState};
use crate::growth::{choose_greedy, plancherel_sample};
use crate::hp::Dd;

pub const DEFAULT_DP_CAP_STANDARD: u64 = 60;
pub const DEFAULT_DP_CAP_STRICT: u64 = 100;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("level {requested} exceeds the configured DP capacity {cap}")]
    CapacityExceeded { requested: u64, cap: u64 },
    #[error("no seed diagrams given")]
    EmptySeeds,
    #[error("seed {partition:?} is invalid for {mode} mode or larger than the target")]
    InvalidSeed { partition: String, mode: Mode },
    #[error("sequences have different modes")]
    ModeMismatch,
    #[error("sequences cover disjoint level ranges")]
    DisjointRanges,
    #[error(transparent)]
    Dimension(#[from] DimensionError),
}

// ---------------------------------------------------------------------------
// Exhaustive DP
// ---------------------------------------------------------------------------

/// Runs the path-count DP `dim(λ) = Σ dim(predecessors)` level by level,
/// holding only one level at a time, and hands each level's full
/// diagram-to-dimension map to `visit`.
pub fn level_dims<F>(n_max: u64, mode: Mode, cap: u64, mut visit: F) -> Result<(), SearchError>
where
    F: FnMut(u64, &HashMap<Diagram, BigUint>),
{
    if n_max > cap {
        return Err(SearchError::CapacityExceeded { requested: n_max, cap });
    }
    let mut cur: HashMap<Diagram, BigUint> = HashMap::new();
    cur.insert(Diagram::empty(), BigUint::from(1u32));
    for n in 1..=n_max {
        let mut next: HashMap<Diagram, BigUint> = HashMap::with_capacity(cur.len() * 2);
        for (d, dm) in &cur {
            for (s, _) in d.successors(mode) {
                next.entry(s)
                    .and_modify(|v| *v += dm)
                    .or_insert_with(|| dm.clone());
            }
        }
        visit(n, &next);
        cur = next;
    }
    Ok(())
}

fn default_cap(mode: Mode) -> u64 {
    match mode {
        Mode::Standard => DEFAULT_DP_CAP_STANDARD,
        Mode::Strict => DEFAULT_DP_CAP_STRICT,
    }
}

/// One level of the ground-truth table: all co-maximal diagrams and their
/// shared exact dimension.
#[derive(Clone, Debug)]
pub struct LevelMax {
    pub n: u64,
    /// Every diagram attaining the maximum, lexicographically sorted.
    pub argmaxes: Vec<Diagram>,
    pub dim: BigUint,
}

#[derive(Clone, Debug)]
pub struct LevelMaxTable {
    pub mode: Mode,
    pub levels: Vec<LevelMax>,
}

impl LevelMaxTable {
    pub fn level(&self, n: u64) -> Option<&LevelMax> {
        self.levels.iter().find(|l| l.n == n)
    }
}

/// Ground-truth maxima for every level up to `n_max` by exhaustive DP,
/// within the default per-mode capacity.
pub fn exhaustive_max(n_max: u64, mode: Mode) -> Result<LevelMaxTable, SearchError> {
    exhaustive_max_with_cap(n_max, mode, default_cap(mode))
}

pub fn exhaustive_max_with_cap(
    n_max: u64,
    mode: Mode,
    cap: u64,
) -> Result<LevelMaxTable, SearchError> {
    let mut levels = Vec::with_capacity(n_max as usize);
    level_dims(n_max, mode, cap, |n, map| {
        let best = map.values().max().expect("non-empty level");
        let mut argmaxes: Vec<Diagram> =
            map.iter().filter(|(_, v)| *v == best).map(|(d, _)| d.clone()).collect();
        argmaxes.sort();
        levels.push(LevelMax { n, argmaxes, dim: best.clone() });
    })?;
    Ok(LevelMaxTable { mode, levels })
}

// ---------------------------------------------------------------------------
// Best sequences and their order relation
// ---------------------------------------------------------------------------

/// Best-known diagram at one level, with provenance of the greedy start
/// that produced it.
#[derive(Clone, Debug)]
pub struct BestLevel {
    pub n: u64,
    /// Lexicographically smallest diagram among the co-maximal ones found.
    pub diagram: Diagram,
    /// Other diagrams found with exactly the same dimension.
    pub co_max: Vec<Diagram>,
    pub ln_dim: Dd,
    pub c: f64,
    pub provenance: String,
    /// Best strictly-smaller-dimension diagram seen at this level. Seeding
    /// aid only: maxima sometimes jump between shape families (odd- vs
    /// even-tailed), and the runner-up keeps the losing family reachable.
    pub runner_up: Option<(Diagram, Dd)>,
}

/// Per-level best-known diagrams over a contiguous size range.
#[derive(Clone, Debug)]
pub struct BestSequence {
    pub mode: Mode,
    pub levels: Vec<BestLevel>,
}

impl BestSequence {
    pub fn level(&self, n: u64) -> Option<&BestLevel> {
        let first = self.levels.first()?.n;
        if n < first {
            return None;
        }
        self.levels.get((n - first) as usize)
    }

    pub fn range(&self) -> Option<(u64, u64)> {
        Some((self.levels.first()?.n, self.levels.last()?.n))
    }
}

/// Lexicographic order on exact dimensions over the common level range:
/// the first level whose dimensions differ decides.
pub fn compare_sequences(x: &BestSequence, y: &BestSequence) -> Result<Ordering, SearchError> {
    if x.mode != y.mode {
        return Err(SearchError::ModeMismatch);
    }
    let (x0, x1) = x.range().ok_or(SearchError::DisjointRanges)?;
    let (y0, y1) = y.range().ok_or(SearchError::DisjointRanges)?;
    let lo = x0.max(y0);
    let hi = x1.min(y1);
    if lo > hi {
        return Err(SearchError::DisjointRanges);
    }
    for n in lo..=hi {
        let dx = dim(&x.level(n).expect("contiguous range").diagram, x.mode)?;
        let dy = dim(&y.level(n).expect("contiguous range").diagram, y.mode)?;
        match dx.cmp(&dy) {
            Ordering::Equal => {}
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

// ---------------------------------------------------------------------------
// Improvement search
// ---------------------------------------------------------------------------

/// Knobs of the multi-start improvement search; all of them are exposed on
/// the CLI.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Plancherel samples added to the best diagram at each restart.
    pub seed_count: usize,
    /// Perturbed copies of the best-known diagram added at each restart.
    /// Plancherel samples bring far-away shapes; these explore the
    /// neighbourhood of the incumbent, which is where co-maximal branchings
    /// live.
    pub anchor_count: usize,
    /// Cap on the exhaustively enumerated one-box-move neighbours of the
    /// best diagram at each restart. Maxima can sit on a different shape
    /// branch than the incumbent (odd- vs even-tailed partitions), and the
    /// bridge diagrams are almost always a single remove+add away.
    pub neighbor_cap: usize,
    /// Restart level factor: after a batch merges at level m, the next batch
    /// starts at ceil(alpha * m).
    pub restart_factor: f64,
    /// Random remove/add pairs applied to each restart sample.
    pub perturb_depth: u32,
    /// Full restart sweeps over the level range.
    pub sweeps: u32,
    /// Hard cap on the number of batches, as a termination guard.
    pub max_batches: u64,
    /// Base RNG seed; all sampling streams derive from it.
    pub rng_seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed_count: 8,
            anchor_count: 12,
            neighbor_cap: 64,
            restart_factor: 0.9,
            perturb_depth: 4,
            sweeps: 6,
            max_batches: 1_000_000,
            rng_seed: 1,
        }
    }
}

/// Compares two candidates for the same level: the double-double logs decide
/// unless they agree to 1e-6, in which case the exact dimensions do.
/// Co-maximal diagrams genuinely occur, so the exact fallback matters.
fn cmp_candidates(
    a: &Diagram,
    a_ln: Dd,
    b: &Diagram,
    b_ln: Dd,
    mode: Mode,
) -> Result<Ordering, SearchError> {
    let diff = a_ln.sub(b_ln).to_f64();
    if diff.abs() > 1e-6 {
        return Ok(if diff > 0.0 { Ordering::Greater } else { Ordering::Less });
    }
    Ok(dim(a, mode)?.cmp(&dim(b, mode)?))
}

fn update_best(
    best: &mut BTreeMap<u64, BestLevel>,
    state: &DimensionState,
    provenance: &str,
    mode: Mode,
) -> Result<(), SearchError> {
    let n = state.size();
    if n == 0 {
        return Ok(());
    }
    let cand = state.diagram();
    match best.get_mut(&n) {
        None => {
            best.insert(
                n,
                BestLevel {
                    n,
                    diagram: cand.clone(),
                    co_max: Vec::new(),
                    ln_dim: state.ln_dim(),
                    c: state.c(),
                    provenance: provenance.to_string(),
                    runner_up: None,
                },
            );
        }
        Some(cur) => match cmp_candidates(cand, state.ln_dim(), &cur.diagram, cur.ln_dim, mode)? {
            Ordering::Greater => {
                let old = std::mem::replace(
                    cur,
                    BestLevel {
                        n,
                        diagram: cand.clone(),
                        co_max: Vec::new(),
                        ln_dim: state.ln_dim(),
                        c: state.c(),
                        provenance: provenance.to_string(),
                        runner_up: None,
                    },
                );
                cur.runner_up = Some((old.diagram, old.ln_dim));
            }
            Ordering::Equal => {
                if *cand != cur.diagram && !cur.co_max.contains(cand) {
                    if *cand < cur.diagram {
                        let old = std::mem::replace(&mut cur.diagram, cand.clone());
                        cur.co_max.push(old);
                        cur.ln_dim = state.ln_dim();
                        cur.c = state.c();
                        cur.provenance = provenance.to_string();
                    } else {
                        cur.co_max.push(cand.clone());
                    }
                    cur.co_max.sort();
                }
            }
            Ordering::Less => {
                // Track the best of the losers; lnDim ordering is plenty
                // for a seeding heuristic.
                let replace = match &cur.runner_up {
                    None => true,
                    Some((d, ln)) => {
                        d != cand && state.ln_dim().sub(*ln).to_f64() > 0.0
                    }
                };
                if replace {
                    cur.runner_up = Some((cand.clone(), state.ln_dim()));
                }
            }
        },
    }
    Ok(())
}

struct Runner {
    state: DimensionState,
    provenance: String,
}

/// Advances a set of greedy sequences in lockstep of size, folding each
/// visited diagram into the per-level maxima. Returns the level at which all
/// sequences first became identical (or the level reached, when they never
/// merged). With `stop_on_merge` the batch ends at the merge point.
fn run_batch(
    mut runners: Vec<Runner>,
    target: u64,
    stop_on_merge: bool,
    mode: Mode,
    best: &mut BTreeMap<u64, BestLevel>,
) -> Result<u64, SearchError> {
    for r in &runners {
        update_best(best, &r.state, &r.provenance, mode)?;
    }
    // Ragged starts: grow everyone to a common size first.
    let common = runners.iter().map(|r| r.state.size()).max().expect("non-empty batch");
    for r in &mut runners {
        while r.state.size() < common {
            let (step, _) = choose_greedy(r.state.diagram(), mode);
            r.state = r.state.clone().advance(step, mode)?;
            update_best(best, &r.state, &r.provenance, mode)?;
        }
    }
    dedupe_runners(&mut runners);
    let mut size = common;
    let mut merged_at = if runners.len() == 1 { Some(size) } else { None };
    while size < target && !(stop_on_merge && merged_at.is_some()) {
        for r in &mut runners {
            let (step, _) = choose_greedy(r.state.diagram(), mode);
            r.state = r.state.clone().advance(step, mode)?;
            update_best(best, &r.state, &r.provenance, mode)?;
        }
        size += 1;
        dedupe_runners(&mut runners);
        if runners.len() == 1 && merged_at.is_none() {
            merged_at = Some(size);
        }
    }
    Ok(merged_at.unwrap_or(size))
}

/// Merged sequences stay identical forever (greedy determinism), so one
/// representative is enough.
fn dedupe_runners(runners: &mut Vec<Runner>) {
    let mut i = 0;
    while i < runners.len() {
        let mut j = i + 1;
        while j < runners.len() {
            if runners[i].state.diagram() == runners[j].state.diagram() {
                runners.remove(j);
            } else {
                j += 1;
            }
        }
        i += 1;
    }
}

/// All one-box-move (remove then add) neighbours of a diagram, evenly
/// thinned to `cap`, the diagram itself excluded.
fn one_move_neighbors(d: &Diagram, mode: Mode, cap: usize) -> Vec<Diagram> {
    let mut neighbors: Vec<Diagram> = Vec::new();
    for pred in d.predecessors(mode) {
        for (s, _) in pred.successors(mode) {
            if s != *d && !neighbors.contains(&s) {
                neighbors.push(s);
            }
        }
    }
    let stride = (neighbors.len() / cap.max(1)).max(1);
    neighbors.into_iter().step_by(stride).take(cap).collect()
}

/// `depth` random remove/add pairs, keeping the size fixed.
fn perturb(mut d: Diagram, depth: u32, mode: Mode, rng: &mut ChaCha8Rng) -> Diagram {
    for _ in 0..depth {
        let preds = d.predecessors(mode);
        let shrunk = preds[rng.gen_range(0..preds.len())].clone();
        let steps = shrunk.growth_steps(mode);
        d = shrunk.apply(steps[rng.gen_range(0..steps.len())]);
    }
    d
}

/// Restart seeds at level `r`: the best diagram(s) known there, perturbed
/// copies of the best, and perturbed Plancherel samples of the same size.
fn restart_runners(
    best: &BTreeMap<u64, BestLevel>,
    r: u64,
    mode: Mode,
    cfg: &SearchConfig,
    sweep: u32,
    batch: u64,
) -> Result<Vec<Runner>, SearchError> {
    let level = best.get(&r).expect("restart level covered");
    let mut diagrams: Vec<(Diagram, String)> =
        Vec::with_capacity(cfg.seed_count + cfg.anchor_count + 2 * cfg.neighbor_cap + 2);
    diagrams.push((level.diagram.clone(), format!("s{sweep}.b{batch}.best")));
    for (j, co) in level.co_max.iter().take(4).enumerate() {
        diagrams.push((co.clone(), format!("s{sweep}.b{batch}.comax{j}")));
    }
    for (j, nb) in one_move_neighbors(&level.diagram, mode, cfg.neighbor_cap).into_iter().enumerate() {
        diagrams.push((nb, format!("s{sweep}.b{batch}.nb{j}")));
    }
    if let Some((runner, _)) = &level.runner_up {
        diagrams.push((runner.clone(), format!("s{sweep}.b{batch}.ru")));
        for (j, nb) in one_move_neighbors(runner, mode, cfg.neighbor_cap / 2).into_iter().enumerate()
        {
            diagrams.push((nb, format!("s{sweep}.b{batch}.runb{j}")));
        }
    }
    // Perturbation depths cycle through 1..=perturb_depth: single-box moves
    // catch co-maximal branchings next door, deeper ones reach further.
    for i in 0..cfg.anchor_count {
        let stream = derive_stream_seed(
            cfg.rng_seed,
            "search-restart-anchor",
            (u64::from(sweep) << 48) | (batch << 16) | i as u64,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let depth = 1 + (i as u32) % cfg.perturb_depth.max(1);
        let d = perturb(level.diagram.clone(), depth, mode, &mut rng);
        diagrams.push((d, format!("s{sweep}.b{batch}.an{i}")));
    }
    for i in 0..cfg.seed_count {
        let stream = derive_stream_seed(
            cfg.rng_seed,
            "search-restart",
            (u64::from(sweep) << 48) | (batch << 16) | i as u64,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let sample = plancherel_sample(mode, r, rng.gen());
        let depth = 1 + (i as u32) % cfg.perturb_depth.max(1);
        let d = perturb(sample, depth, mode, &mut rng);
        diagrams.push((d, format!("s{sweep}.b{batch}.pl{i}")));
    }
    let mut runners = Vec::with_capacity(diagrams.len());
    for (d, provenance) in diagrams {
        runners.push(Runner { state: DimensionState::initial(d, mode)?, provenance });
    }
    Ok(runners)
}

/// Multi-start improvement search.
///
/// A first batch grows greedy sequences from the given seeds all the way to
/// `target`, remembering the maximum-dimension diagram at every level. Then
/// restart sweeps walk up the levels: each batch starts at level r from the
/// best-known diagram plus perturbed Plancherel samples, runs until all its
/// sequences merge, and the next batch restarts at `ceil(alpha * merge)`.
/// The result is never worse than any single greedy run from the seeds.
pub fn improved_search(
    seeds: &[Diagram],
    target: u64,
    mode: Mode,
    cfg: &SearchConfig,
) -> Result<BestSequence, SearchError> {
    if seeds.is_empty() {
        return Err(SearchError::EmptySeeds);
    }
    for s in seeds {
        if !s.validate(mode) || s.size() > target {
            return Err(SearchError::InvalidSeed { partition: s.to_string(), mode });
        }
    }
    let mut best: BTreeMap<u64, BestLevel> = BTreeMap::new();
    let mut runners = Vec::with_capacity(seeds.len());
    for (i, s) in seeds.iter().enumerate() {
        runners.push(Runner {
            state: DimensionState::initial(s.clone(), mode)?,
            provenance: format!("seed{i}"),
        });
    }
    run_batch(runners, target, false, mode, &mut best)?;
    let min_level = best.keys().next().copied().unwrap_or(1).max(1);

    let alpha = cfg.restart_factor;
    let mut batch: u64 = 0;
    'sweeps: for sweep in 0..cfg.sweeps {
        let mut r = min_level;
        while r < target {
            batch += 1;
            if batch > cfg.max_batches {
                break 'sweeps;
            }
            let runners = restart_runners(&best, r, mode, cfg, sweep, batch)?;
            let m = run_batch(runners, target, true, mode, &mut best)?;
            // Restart above ceil(alpha*m), but never skip levels near the
            // target: every level below it gets its own restart window.
            r = ((alpha * m as f64).ceil() as u64).min(target - 1).max(r + 1);
        }
    }

    let levels: Vec<BestLevel> = best.into_values().collect();
    debug_assert!(levels.windows(2).all(|w| w[1].n == w[0].n + 1));
    Ok(BestSequence { mode, levels })
}

// ---------------------------------------------------------------------------
// Regular tails
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailParity {
    Odd,
    Even,
}

/// Longest partition suffix of consecutive odd parts `(..., 5, 3, 1)` or
/// consecutive even parts `(..., 6, 4, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularTail {
    pub length: usize,
    /// `None` iff `length == 0` (last part is neither 1 nor 2).
    pub parity: Option<TailParity>,
}

pub fn regular_tail(d: &StrictDiagram) -> RegularTail {
    let cols = d.as_diagram().cols();
    let Some(&last) = cols.last() else {
        return RegularTail { length: 0, parity: None };
    };
    let parity = match last {
        1 => TailParity::Odd,
        2 => TailParity::Even,
        _ => return RegularTail { length: 0, parity: None },
    };
    let mut length = 1;
    let mut expect = last + 2;
    for &h in cols.iter().rev().skip(1) {
        if h != expect {
            break;
        }
        length += 1;
        expect += 2;
    }
    RegularTail { length, parity: Some(parity) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::greedy_sequence;
    use num_traits::One;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    fn sd(s: &str) -> StrictDiagram {
        StrictDiagram::new(d(s)).unwrap()
    }

    #[test]
    fn exhaustive_examples() {
        let t = exhaustive_max(5, Mode::Strict).unwrap();
        let l5 = t.level(5).unwrap();
        assert_eq!(l5.argmaxes, vec![d("4,1")]);
        assert_eq!(l5.dim, BigUint::from(3u32));

        let l3 = t.level(3).unwrap();
        assert_eq!(l3.argmaxes, vec![d("2,1"), d("3")]);
        assert_eq!(l3.dim, BigUint::one());

        let t = exhaustive_max(4, Mode::Standard).unwrap();
        let l4 = t.level(4).unwrap();
        assert_eq!(l4.dim, BigUint::from(3u32));
        assert_eq!(l4.argmaxes, vec![d("2,1,1"), d("3,1")]);
    }

    #[test]
    fn exhaustive_capacity_error() {
        match exhaustive_max(101, Mode::Strict) {
            Err(SearchError::CapacityExceeded { requested: 101, cap: 100 }) => {}
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    /// Exact level identities tie the DP to the factorial: sum of dim^2 is
    /// n! on the Young graph, sum of dim^2 2^(n-l) on the Schur graph.
    #[test]
    fn level_identities_small() {
        let mut fact = BigUint::one();
        let mut facts = vec![BigUint::one()];
        for i in 1..=12u64 {
            fact *= i;
            facts.push(fact.clone());
        }
        level_dims(12, Mode::Standard, 60, |n, map| {
            let total: BigUint = map.values().map(|v| v * v).sum();
            assert_eq!(total, facts[n as usize], "standard level {n}");
        })
        .unwrap();
        level_dims(12, Mode::Strict, 100, |n, map| {
            let total: BigUint = map
                .iter()
                .map(|(dg, v)| v * v * (BigUint::one() << (n - dg.width() as u64) as usize))
                .sum();
            assert_eq!(total, facts[n as usize], "strict level {n}");
        })
        .unwrap();
    }

    fn best_of_growth(seq: &crate::growth::GrowthSequence) -> BestSequence {
        let mut cur = seq.initial().clone();
        let mut levels = Vec::new();
        let samples = seq.samples();
        if !cur.is_empty() {
            levels.push(BestLevel {
                n: cur.size(),
                diagram: cur.clone(),
                co_max: Vec::new(),
                ln_dim: samples[0].ln_dim,
                c: samples[0].c,
                provenance: "greedy".into(),
            });
        }
        for (i, step) in seq.steps().iter().enumerate() {
            cur = cur.apply(*step);
            levels.push(BestLevel {
                n: cur.size(),
                diagram: cur.clone(),
                co_max: Vec::new(),
                ln_dim: samples[i + 1].ln_dim,
                c: samples[i + 1].c,
                provenance: "greedy".into(),
            });
        }
        BestSequence { mode: seq.mode(), levels }
    }

    #[test]
    fn improved_search_matches_dp_small() {
        let cfg = SearchConfig { rng_seed: 3, ..SearchConfig::default() };
        for (mode, n_max) in [(Mode::Strict, 30u64), (Mode::Standard, 25u64)] {
            let table = exhaustive_max(n_max, mode).unwrap();
            let best = improved_search(&[Diagram::empty()], n_max, mode, &cfg).unwrap();
            for lm in &table.levels {
                let bl = best.level(lm.n).unwrap();
                assert_eq!(dim(&bl.diagram, mode).unwrap(), lm.dim, "{mode} level {}", lm.n);
            }
        }
    }

    #[test]
    fn improvement_property() {
        let cfg = SearchConfig { rng_seed: 5, ..SearchConfig::default() };
        let seeds = [Diagram::empty(), d("5,4,2,1"), d("10")];
        let improved = improved_search(&seeds, 40, Mode::Strict, &cfg).unwrap();
        for seed in &seeds {
            let greedy = greedy_sequence(seed.clone(), 40, Mode::Strict).unwrap();
            let as_best = best_of_growth(&greedy);
            let ord = compare_sequences(&improved, &as_best).unwrap();
            assert_ne!(ord, Ordering::Less, "improved search lost to greedy from {seed}");
        }
    }

    #[test]
    fn compare_sequences_examples() {
        let cfg = SearchConfig::default();
        let x = improved_search(&[Diagram::empty()], 12, Mode::Strict, &cfg).unwrap();
        assert_eq!(compare_sequences(&x, &x).unwrap(), Ordering::Equal);

        // dims x = (1,1,2) vs y = (1,1,1) on the Young graph: greater at k=3
        let mk = |parts: &[&str]| BestSequence {
            mode: Mode::Standard,
            levels: parts
                .iter()
                .enumerate()
                .map(|(i, p)| BestLevel {
                    n: (i + 1) as u64,
                    diagram: d(p),
                    co_max: Vec::new(),
                    ln_dim: crate::hp::ZERO,
                    c: 0.0,
                    provenance: String::new(),
                })
                .collect(),
        };
        let xs = mk(&["1", "2", "2,1"]);
        let ys = mk(&["1", "2", "3"]);
        assert_eq!(compare_sequences(&xs, &ys).unwrap(), Ordering::Greater);
        assert_eq!(compare_sequences(&ys, &xs).unwrap(), Ordering::Less);

        // exhaustive table dominates any constructed sequence on its range
        let table = exhaustive_max(12, Mode::Strict).unwrap();
        let as_best = BestSequence {
            mode: Mode::Strict,
            levels: table
                .levels
                .iter()
                .map(|lm| BestLevel {
                    n: lm.n,
                    diagram: lm.argmaxes[0].clone(),
                    co_max: lm.argmaxes[1..].to_vec(),
                    ln_dim: crate::hp::ZERO,
                    c: 0.0,
                    provenance: "dp".into(),
                })
                .collect(),
        };
        assert_ne!(compare_sequences(&as_best, &x).unwrap(), Ordering::Less);

        // disjoint ranges are a domain error
        let lo = mk(&["1"]);
        let hi = BestSequence { mode: Mode::Standard, levels: xs.levels[2..].to_vec() };
        assert!(matches!(compare_sequences(&lo, &hi), Err(SearchError::DisjointRanges)));
    }

    #[test]
    fn regular_tail_examples() {
        let t = regular_tail(&sd("34,30,26,23,20,17,14,11,9,7,5,3,1"));
        assert_eq!(t, RegularTail { length: 6, parity: Some(TailParity::Odd) });

        let t = regular_tail(&sd("38,34,30,27,24,21,18,15,13,10,8,6,4,2"));
        assert_eq!(t, RegularTail { length: 5, parity: Some(TailParity::Even) });

        let t = regular_tail(&sd("5,4,2,1"));
        assert_eq!(t, RegularTail { length: 1, parity: Some(TailParity::Odd) });

        let t = regular_tail(&sd("7,4"));
        assert_eq!(t, RegularTail { length: 0, parity: None });

        // (2,1) is not a consecutive-odd suffix: only (1) counts
        let t = regular_tail(&sd("3,2,1"));
        assert_eq!(t, RegularTail { length: 1, parity: Some(TailParity::Odd) });

        let t = regular_tail(&sd("9,7,5,3,1"));
        assert_eq!(t, RegularTail { length: 5, parity: Some(TailParity::Odd) });
    }
}
