//! Growth processes on the Young and Schur graphs: greedy sequences,
//! Plancherel sampling, and merge experiments between greedy sequences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{Diagram, GrowthStep, Mode};
use crate::dimension::{step_ratio_factors, DimensionError, DimensionState};
use crate::hp::Dd;

#[derive(Debug, Error)]
pub enum GrowthError {
    #[error("start diagram {partition:?} is not valid for {mode} mode")]
    InvalidStart { partition: String, mode: Mode },
    #[error("start size {start} exceeds target size {target}")]
    StartBeyondTarget { start: u64, target: u64 },
    #[error(transparent)]
    Dimension(#[from] DimensionError),
}

/// Per-level record of a growth sequence.
#[derive(Clone, Copy, Debug)]
pub struct Sample {
    pub n: u64,
    pub ln_dim: Dd,
    pub c_dd: Dd,
    pub c: f64,
}

/// A path in the chosen graph: initial diagram, ordered steps, and one
/// sample per level (the initial level included).
#[derive(Clone, Debug)]
pub struct GrowthSequence {
    mode: Mode,
    initial: Diagram,
    steps: Vec<GrowthStep>,
    samples: Vec<Sample>,
    state: DimensionState,
    tie_count: u64,
}

impl GrowthSequence {
    pub fn new(start: Diagram, mode: Mode) -> Result<Self, GrowthError> {
        if !start.validate(mode) {
            return Err(GrowthError::InvalidStart { partition: start.to_string(), mode });
        }
        let state = DimensionState::initial(start.clone(), mode)?;
        let samples = vec![sample_of(&state, mode)];
        Ok(GrowthSequence { mode, initial: start, steps: Vec::new(), samples, state, tie_count: 0 })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn initial(&self) -> &Diagram {
        &self.initial
    }

    pub fn steps(&self) -> &[GrowthStep] {
        &self.steps
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn current(&self) -> &Diagram {
        self.state.diagram()
    }

    pub fn size(&self) -> u64 {
        self.state.size()
    }

    pub fn state(&self) -> &DimensionState {
        &self.state
    }

    /// Number of greedy steps whose winner was an exact dimension tie.
    pub fn tie_count(&self) -> u64 {
        self.tie_count
    }

    /// Applies one explicit step (replay, sampling).
    pub fn push_step(&mut self, step: GrowthStep) -> Result<(), GrowthError> {
        self.state = self.state.clone().advance(step, self.mode)?;
        self.steps.push(step);
        self.samples.push(sample_of(&self.state, self.mode));
        Ok(())
    }

    /// Greedy steps until the diagram has `target` boxes.
    pub fn grow_greedy_to(&mut self, target: u64) -> Result<(), GrowthError> {
        if self.size() > target {
            return Err(GrowthError::StartBeyondTarget { start: self.size(), target });
        }
        while self.size() < target {
            let (step, tie) = choose_greedy(self.state.diagram(), self.mode);
            if tie {
                self.tie_count += 1;
            }
            self.push_step(step)?;
        }
        Ok(())
    }
}

fn sample_of(state: &DimensionState, mode: Mode) -> Sample {
    Sample {
        n: state.size(),
        ln_dim: state.ln_dim(),
        c_dd: state.c_dd(mode),
        c: state.c(),
    }
}

/// Margin under which the float pre-filter refuses to decide and the exact
/// rational comparison takes over. Conservative: the accumulated rounding
/// error of a candidate's summed f64 logs stays below ~1e-10 at any size
/// this library reaches.
const LN_PREFILTER_MARGIN: f64 = 1e-7;

/// Picks the growth step leading to the successor of maximal dimension.
/// Candidates are pruned by f64 log-ratios; anything within the safety
/// margin of the best is re-compared with exact rationals. Ties are broken
/// by the smallest column index. Returns the step and whether the winner was
/// an exact tie.
pub(crate) fn choose_greedy(d: &Diagram, mode: Mode) -> (GrowthStep, bool) {
    let steps = d.growth_steps(mode);
    debug_assert!(!steps.is_empty());
    if steps.len() == 1 {
        return (steps[0], false);
    }
    let factors: Vec<_> = steps.iter().map(|&s| step_ratio_factors(d, s, mode)).collect();
    let lns: Vec<f64> = factors.iter().map(|f| f.ln_f64()).collect();
    let best_ln = lns.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let near: Vec<usize> =
        (0..steps.len()).filter(|&i| lns[i] >= best_ln - LN_PREFILTER_MARGIN).collect();
    if near.len() == 1 {
        return (steps[near[0]], false);
    }
    // Exact comparison among the near-maximal candidates. All ratios share
    // the same base dimension, so ratio order is dimension order.
    let mut best = near[0];
    let mut best_ratio = factors[near[0]].to_ratio();
    let mut tie = false;
    for &i in &near[1..] {
        let r = factors[i].to_ratio();
        match r.cmp(&best_ratio) {
            std::cmp::Ordering::Greater => {
                best = i;
                best_ratio = r;
                tie = false;
            }
            std::cmp::Ordering::Equal => {
                // Keep the earlier (smaller column) candidate.
                tie = true;
            }
            std::cmp::Ordering::Less => {}
        }
    }
    (steps[best], tie)
}

/// One greedy step: the successor with maximal dimension, decided exactly.
pub fn greedy_step(d: &Diagram, mode: Mode) -> (Diagram, GrowthStep) {
    let (step, _) = choose_greedy(d, mode);
    (d.apply(step), step)
}

/// Greedy sequence from `start` up to `target` boxes, with per-level samples.
pub fn greedy_sequence(start: Diagram, target: u64, mode: Mode) -> Result<GrowthSequence, GrowthError> {
    let mut seq = GrowthSequence::new(start, mode)?;
    seq.grow_greedy_to(target)?;
    Ok(seq)
}

/// One Plancherel transition: probabilities proportional to
/// `f * dim(successor)` with `f = 2` for strict steps that grow an existing
/// column and `f = 1` otherwise (standard mode always has `f = 1`).
fn plancherel_step(d: &Diagram, mode: Mode, rng: &mut ChaCha8Rng) -> GrowthStep {
    let steps = d.growth_steps(mode);
    if steps.len() == 1 {
        return steps[0];
    }
    let k = d.width();
    let mut weights: Vec<f64> = Vec::with_capacity(steps.len());
    let mut max_ln = f64::NEG_INFINITY;
    let lns: Vec<f64> = steps
        .iter()
        .map(|&s| {
            let ln = step_ratio_factors(d, s, mode).ln_f64();
            max_ln = max_ln.max(ln);
            ln
        })
        .collect();
    for (i, &s) in steps.iter().enumerate() {
        let doubling =
            mode == Mode::Strict && (s.column as usize) <= k && !d.cols().is_empty();
        let f = if doubling { 2.0 } else { 1.0 };
        weights.push(f * (lns[i] - max_ln).exp());
    }
    let total: f64 = weights.iter().sum();
    let mut u = rng.gen::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        if u < w || i + 1 == weights.len() {
            return steps[i];
        }
        u -= w;
    }
    unreachable!()
}

/// Samples a size-`n` diagram from the Plancherel process, deterministically
/// in `seed`.
pub fn plancherel_sample(mode: Mode, n: u64, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = Diagram::empty();
    while d.size() < n {
        let step = plancherel_step(&d, mode, &mut rng);
        d = d.apply(step);
    }
    d
}

/// Exact transition probabilities out of `d`, as rationals. Test/diagnostic
/// route for the sampler; rows must sum to one.
pub fn transition_probs_exact(
    d: &Diagram,
    mode: Mode,
) -> Result<Vec<(GrowthStep, crate::dimension::Ratio)>, DimensionError> {
    use num_bigint::BigUint;
    let n = d.size();
    let k = d.width();
    let mut out = Vec::new();
    for (_, step) in d.successors(mode) {
        let r = crate::dimension::step_ratio(d, step, mode)?;
        let doubling = mode == Mode::Strict && (step.column as usize) <= k && k > 0;
        let f: u64 = if doubling { 2 } else { 1 };
        let p = crate::dimension::Ratio::new(
            r.numer() * f,
            r.denom() * BigUint::from(n + 1),
        );
        out.push((step, p));
    }
    Ok(out)
}

/// Outcome of a merge experiment between two greedy sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MergeResult {
    /// First size at which both sequences hold the identical diagram.
    pub merged_at_size: Option<u64>,
    /// Boxes added to the sequence started from `a`.
    pub steps_a: u64,
    /// Boxes added to the sequence started from `b`.
    pub steps_b: u64,
    /// Set iff the budget ran out before the sequences merged.
    pub budget_exhausted: bool,
}

/// Advances greedy sequences from `a` and `b` in lockstep of size and
/// reports the first size at which they coincide. Each sequence adds at
/// most `budget` boxes. Once merged, greedy determinism keeps the sequences
/// identical; debug builds assert this for 50 extra steps.
pub fn merge_experiment(
    a: Diagram,
    b: Diagram,
    mode: Mode,
    budget: u64,
) -> Result<MergeResult, GrowthError> {
    assert!(budget >= 1);
    for (d, name) in [(&a, "a"), (&b, "b")] {
        if !d.validate(mode) {
            let _ = name;
            return Err(GrowthError::InvalidStart { partition: d.to_string(), mode });
        }
    }
    let (size_a0, size_b0) = (a.size(), b.size());
    let size_cap = size_a0.min(size_b0) + budget;
    let mut da = a;
    let mut db = b;
    // Bring both to a common size first.
    let common = size_a0.max(size_b0);
    while da.size() < common.min(size_cap) {
        da = greedy_step(&da, mode).0;
    }
    while db.size() < common.min(size_cap) {
        db = greedy_step(&db, mode).0;
    }
    let mut size = da.size().max(db.size());
    loop {
        if da.size() == db.size() && da == db {
            let result = MergeResult {
                merged_at_size: Some(size),
                steps_a: size - size_a0,
                steps_b: size - size_b0,
                budget_exhausted: false,
            };
            #[cfg(debug_assertions)]
            {
                let mut xa = da.clone();
                let mut xb = db.clone();
                for _ in 0..50 {
                    xa = greedy_step(&xa, mode).0;
                    xb = greedy_step(&xb, mode).0;
                    debug_assert_eq!(xa, xb, "sequences diverged after merging");
                }
            }
            return Ok(result);
        }
        if size >= size_cap {
            return Ok(MergeResult {
                merged_at_size: None,
                steps_a: da.size() - size_a0,
                steps_b: db.size() - size_b0,
                budget_exhausted: true,
            });
        }
        da = greedy_step(&da, mode).0;
        db = greedy_step(&db, mode).0;
        size += 1;
    }
}
