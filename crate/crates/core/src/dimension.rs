//! Exact and log-domain dimension computation.
//!
//! The dimension of a diagram is the number of root paths in its graph. Two
//! closed routes compute it exactly: the hook length formula (Young graph)
//! and the strict product formula (Schur graph)
//!
//! ```text
//! dim(λ) = Π_{i<j} (l_i - l_j)/(l_i + l_j) · n!/Π l_i!
//! ```
//!
//! Growth steps change only O(width) factors of either formula, so a step's
//! dimension ratio is available as a short list of integer factors. The
//! `DimensionState` accumulates ln-ratios in double-double precision and
//! carries the normalized dimension
//!
//! ```text
//! strict:   c(λ) = -(ln dim - ln √(n!) + (ln 2 / 2) n) / √n
//! standard: c(λ) = -(ln dim - ln √(n!)) / √n
//! ```

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::{Diagram, GrowthStep, Mode, StrictDiagram};
use crate::hp::{self, Dd};

#[derive(Debug, Error)]
pub enum DimensionError {
    #[error("diagram {partition:?} is not valid for {mode} mode")]
    InvalidDiagram { partition: String, mode: Mode },
    #[error("step (column {column}, row {row}) is not a valid {mode} extension of {partition:?}")]
    InvalidStep { partition: String, mode: Mode, column: u32, row: u32 },
    #[error("strict dimension formula produced a non-integer for {partition:?}")]
    NonIntegral { partition: String },
}

fn factorial(n: u64) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=n {
        f *= i;
    }
    f
}

/// ln n! in double-double precision, by direct summation (never an
/// asymptotic series, so it stays consistent with the exact cross-checks).
pub fn ln_factorial_dd(n: u64) -> Dd {
    let mut acc = hp::ZERO;
    for i in 2..=n {
        acc = acc.add(ln_u64_cached(i));
    }
    acc
}

const LN_CACHE_CAP: u64 = 1 << 21;

thread_local! {
    static LN_DD_CACHE: RefCell<Vec<Dd>> = const { RefCell::new(Vec::new()) };
}

/// Cached double-double ln of small integers; growth-step factors are
/// bounded by ~2n, so nearly every lookup hits.
pub fn ln_u64_cached(v: u64) -> Dd {
    debug_assert!(v > 0);
    if v < LN_CACHE_CAP {
        LN_DD_CACHE.with(|cache| {
            let mut cache = cache.borrow_mut();
            let i = v as usize;
            if i >= cache.len() {
                let new_len = (i + 1).next_power_of_two().max(1024);
                cache.resize(new_len, Dd { hi: f64::NAN, lo: 0.0 });
            }
            if cache[i].hi.is_nan() {
                cache[i] = hp::ln_u64(v);
            }
            cache[i]
        })
    } else {
        hp::ln_u64(v)
    }
}

// ---------------------------------------------------------------------------
// Exact dimensions
// ---------------------------------------------------------------------------

/// Hook length of the box in (1-based) column `c`, row `j`, under the column
/// convention: boxes above in the column plus boxes to the right in the row
/// plus the box itself.
fn hook_length(cols: &[u32], c: usize, j: u32) -> u64 {
    let leg = u64::from(cols[c] - j);
    // Columns right of c are non-increasing; count those with height >= j.
    let suffix = &cols[c + 1..];
    let arm = suffix.partition_point(|&h| h >= j) as u64;
    leg + arm + 1
}

/// Exact Young-graph dimension via the hook length formula `n! / Π h(i,j)`.
pub fn dim_standard(d: &Diagram) -> Result<BigUint, DimensionError> {
    let cols = d.cols();
    let mut hook_product = BigUint::one();
    for c in 0..cols.len() {
        for j in 1..=cols[c] {
            hook_product *= hook_length(cols, c, j);
        }
    }
    let (q, r) = factorial(d.size()).div_rem(&hook_product);
    if !r.is_zero() {
        return Err(DimensionError::NonIntegral { partition: d.to_string() });
    }
    Ok(q)
}

/// Exact Schur-graph dimension via the strict product formula.
pub fn dim_strict(d: &StrictDiagram) -> Result<BigUint, DimensionError> {
    let cols = d.as_diagram().cols();
    let mut num = factorial(d.as_diagram().size());
    let mut den = BigUint::one();
    for i in 0..cols.len() {
        den *= factorial(u64::from(cols[i]));
        for j in i + 1..cols.len() {
            num *= u64::from(cols[i] - cols[j]);
            den *= u64::from(cols[i] + cols[j]);
        }
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(DimensionError::NonIntegral { partition: d.as_diagram().to_string() });
    }
    Ok(q)
}

/// Mode-dispatched exact dimension. `dim(empty) = 1`.
pub fn dim(d: &Diagram, mode: Mode) -> Result<BigUint, DimensionError> {
    match mode {
        Mode::Standard => dim_standard(d),
        Mode::Strict => {
            let s = StrictDiagram::new(d.clone()).map_err(|_| DimensionError::InvalidDiagram {
                partition: d.to_string(),
                mode,
            })?;
            dim_strict(&s)
        }
    }
}

/// ln dim from scratch in double-double precision, summing the logarithms of
/// the closed-formula factors. Used to seed states at non-empty diagrams.
pub fn ln_dim_dd(d: &Diagram, mode: Mode) -> Dd {
    let cols = d.cols();
    let mut acc = ln_factorial_dd(d.size());
    match mode {
        Mode::Standard => {
            for c in 0..cols.len() {
                for j in 1..=cols[c] {
                    acc = acc.sub(ln_u64_cached(hook_length(cols, c, j)));
                }
            }
        }
        Mode::Strict => {
            debug_assert!(d.is_strict());
            for i in 0..cols.len() {
                acc = acc.sub(ln_factorial_dd(u64::from(cols[i])));
                for j in i + 1..cols.len() {
                    acc = acc.add(ln_u64_cached(u64::from(cols[i] - cols[j])));
                    acc = acc.sub(ln_u64_cached(u64::from(cols[i] + cols[j])));
                }
            }
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Exact rationals
// ---------------------------------------------------------------------------

/// A non-negative exact rational. Kept unreduced internally; reduction is
/// lazy because comparisons go through cross-multiplication anyway.
#[derive(Clone, Debug)]
pub struct Ratio {
    num: BigUint,
    den: BigUint,
}

impl Ratio {
    pub fn new(num: BigUint, den: BigUint) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Ratio { num, den }
    }

    pub fn one() -> Self {
        Ratio { num: BigUint::one(), den: BigUint::one() }
    }

    pub fn zero() -> Self {
        Ratio { num: BigUint::zero(), den: BigUint::one() }
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Fully reduced numerator/denominator pair.
    pub fn reduced(&self) -> (BigUint, BigUint) {
        let g = self.num.gcd(&self.den);
        (&self.num / &g, &self.den / &g)
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn mul(&self, other: &Ratio) -> Ratio {
        Ratio { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn add(&self, other: &Ratio) -> Ratio {
        Ratio {
            num: &self.num * &other.den + &other.num * &self.den,
            den: &self.den * &other.den,
        }
    }

    /// Exact value by integer division; errors if the ratio is not integral.
    pub fn to_integer(&self) -> Option<BigUint> {
        let (q, r) = self.num.div_rem(&self.den);
        r.is_zero().then_some(q)
    }

    pub fn to_f64(&self) -> f64 {
        // Accurate enough for diagnostics; exact paths never use this.
        let ln = hp::ln_biguint(&self.num).sub(hp::ln_biguint(&self.den));
        ln.to_f64().exp()
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.reduced();
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

// ---------------------------------------------------------------------------
// Step ratios
// ---------------------------------------------------------------------------

/// The integer factor lists of `dim(d + step) / dim(d)`: only O(width)
/// factors of the closed formulas change per step.
#[derive(Clone, Debug, Default)]
pub struct RatioFactors {
    pub num: Vec<u64>,
    pub den: Vec<u64>,
}

impl RatioFactors {
    /// Fast approximate log of the ratio, used to prune greedy candidates.
    pub fn ln_f64(&self) -> f64 {
        let pos: f64 = self.num.iter().map(|&v| (v as f64).ln()).sum();
        let neg: f64 = self.den.iter().map(|&v| (v as f64).ln()).sum();
        pos - neg
    }

    /// Double-double log of the ratio.
    pub fn ln_dd(&self) -> Dd {
        let mut acc = hp::ZERO;
        for &v in &self.num {
            acc = acc.add(ln_u64_cached(v));
        }
        for &v in &self.den {
            acc = acc.sub(ln_u64_cached(v));
        }
        acc
    }

    pub fn to_ratio(&self) -> Ratio {
        let mut num = BigUint::one();
        for &v in &self.num {
            num *= v;
        }
        let mut den = BigUint::one();
        for &v in &self.den {
            den *= v;
        }
        Ratio::new(num, den)
    }
}

fn check_step(d: &Diagram, step: GrowthStep, mode: Mode) -> Result<(), DimensionError> {
    let cols = d.cols();
    let k = cols.len();
    let c = step.column as usize;
    let bad = || DimensionError::InvalidStep {
        partition: d.to_string(),
        mode,
        column: step.column,
        row: step.row,
    };
    if c == k + 1 {
        let ok = step.row == 1 && (mode == Mode::Standard || k == 0 || cols[k - 1] > 1);
        return ok.then_some(()).ok_or_else(bad);
    }
    if c < 1 || c > k || step.row != cols[c - 1] + 1 {
        return Err(bad());
    }
    let ok = c == 1
        || match mode {
            Mode::Standard => cols[c - 2] >= step.row,
            Mode::Strict => cols[c - 2] > step.row,
        };
    ok.then_some(()).ok_or_else(bad)
}

/// Factor lists of the step's dimension ratio. `step` must be a valid
/// extension of `d` under `mode`.
pub fn step_ratio_factors(d: &Diagram, step: GrowthStep, mode: Mode) -> RatioFactors {
    debug_assert!(check_step(d, step, mode).is_ok());
    let cols = d.cols();
    let k = cols.len();
    let n = d.size();
    let c = step.column as usize; // 1-based
    let mut f = RatioFactors {
        num: Vec::with_capacity(2 * k + 2),
        den: Vec::with_capacity(2 * k + 2),
    };
    f.num.push(n + 1);
    match mode {
        Mode::Strict => {
            if c == k + 1 {
                // New column of height 1: pairwise factors against every
                // existing column; the phantom height-0 terms cancel.
                for &l in cols {
                    f.num.push(u64::from(l) - 1);
                    f.den.push(u64::from(l) + 1);
                }
            } else {
                let h = u64::from(cols[c - 1]);
                f.den.push(h + 1); // factorial of the grown column
                for (j, &ljx) in cols.iter().enumerate() {
                    if j == c - 1 {
                        continue;
                    }
                    let lj = u64::from(ljx);
                    f.num.push((h + 1).abs_diff(lj));
                    f.num.push(h + lj);
                    f.den.push(h.abs_diff(lj));
                    f.den.push(h + 1 + lj);
                }
            }
        }
        Mode::Standard => {
            let r = step.row;
            if c <= k {
                // Hooks of the boxes below the new one in column c grow by 1.
                for j in 1..r {
                    let h = hook_length(cols, c - 1, j);
                    f.num.push(h);
                    f.den.push(h + 1);
                }
            }
            // Hooks of the boxes to the left in row r grow by 1. Every
            // column left of c reaches row r when the step is valid, and no
            // column right of c does, so their arms are index differences.
            for i in 1..c {
                let h = (c - 1 - i) as u64 + u64::from(cols[i - 1] - r) + 1;
                f.num.push(h);
                f.den.push(h + 1);
            }
        }
    }
    f
}

/// Exact dimension ratio `dim(d + step) / dim(d)` with step validation.
pub fn step_ratio(d: &Diagram, step: GrowthStep, mode: Mode) -> Result<Ratio, DimensionError> {
    check_step(d, step, mode)?;
    Ok(step_ratio_factors(d, step, mode).to_ratio())
}

// ---------------------------------------------------------------------------
// Log-domain state
// ---------------------------------------------------------------------------

/// A diagram together with high-precision `ln dim`, `ln n!`, and the
/// normalized dimension for the mode it is advanced under.
#[derive(Clone, Debug)]
pub struct DimensionState {
    diagram: Diagram,
    ln_dim: Dd,
    ln_factorial: Dd,
    c: f64,
}

impl DimensionState {
    /// State for an arbitrary valid diagram, seeding the accumulators from
    /// the closed formulas.
    pub fn initial(d: Diagram, mode: Mode) -> Result<Self, DimensionError> {
        if !d.validate(mode) {
            return Err(DimensionError::InvalidDiagram { partition: d.to_string(), mode });
        }
        let ln_dim = if d.is_empty() { hp::ZERO } else { ln_dim_dd(&d, mode) };
        let ln_factorial = ln_factorial_dd(d.size());
        let mut s = DimensionState { diagram: d, ln_dim, ln_factorial, c: 0.0 };
        s.c = s.c_dd(mode).to_f64();
        Ok(s)
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn size(&self) -> u64 {
        self.diagram.size()
    }

    pub fn ln_dim(&self) -> Dd {
        self.ln_dim
    }

    pub fn ln_factorial(&self) -> Dd {
        self.ln_factorial
    }

    /// Normalized dimension of the current diagram; 0 for the empty diagram.
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn c_dd(&self, mode: Mode) -> Dd {
        normalized_dim_dd(self.ln_dim, self.ln_factorial, self.size(), mode)
    }

    /// Applies one growth step: `ln dim` gains the ratio's log, `ln n!`
    /// gains `ln(n+1)`, and `c` is recomputed.
    pub fn advance(mut self, step: GrowthStep, mode: Mode) -> Result<Self, DimensionError> {
        check_step(&self.diagram, step, mode)?;
        let factors = step_ratio_factors(&self.diagram, step, mode);
        self.ln_dim = self.ln_dim.add(factors.ln_dd());
        self.ln_factorial = self.ln_factorial.add(ln_u64_cached(self.size() + 1));
        self.diagram = self.diagram.apply(step);
        self.c = self.c_dd(mode).to_f64();
        Ok(self)
    }
}

/// Normalized dimension from the log accumulators.
pub fn normalized_dim_dd(ln_dim: Dd, ln_factorial: Dd, n: u64, mode: Mode) -> Dd {
    if n == 0 {
        return hp::ZERO;
    }
    let mut t = ln_dim.sub(ln_factorial.mul_pow2(0.5));
    if mode == Mode::Strict {
        t = t.add(hp::LN2.mul_pow2(0.5).mul_f64(n as f64));
    }
    t.neg().div(Dd::from_u64(n).sqrt())
}

/// Normalized dimension recomputed from an exact dimension; cross-check
/// route for the incremental accumulators.
pub fn normalized_dim_from_exact(dim: &BigUint, n: u64, mode: Mode) -> f64 {
    let ln_dim = if dim.is_one() { hp::ZERO } else { hp::ln_biguint(dim) };
    normalized_dim_dd(ln_dim, ln_factorial_dd(n), n, mode).to_f64()
}

/// Plancherel weight of a strict diagram: `dim(λ)² / n! · 2^(n - width)`.
pub fn plancherel_weight(d: &StrictDiagram) -> Result<Ratio, DimensionError> {
    let n = d.as_diagram().size();
    let dim = dim_strict(d)?;
    let num = &dim * &dim * (BigUint::one() << (n - d.as_diagram().width() as u64) as usize);
    Ok(Ratio::new(num, factorial(n)))
}
