//! Analysis of normalized-dimension growth: finite differences, the √n
//! scaling of their oscillations, per-row level bands, and least-squares
//! estimation of the limit constant.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::Mode;
use crate::growth::GrowthSequence;
use crate::hp::{Dd, ZERO};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("sequence has {0} samples; differences need at least 2")]
    TooShort(usize),
    #[error("window [{0}, {1}] selects no records")]
    EmptyWindow(u64, u64),
    #[error("fit window is degenerate: fewer than 2 distinct sizes")]
    DegenerateWindow,
}

/// One step's difference record: `d = c(n) - c(n-1)`, its √n scaling
/// `s = d·√n`, and the row the box was added to.
#[derive(Clone, Copy, Debug)]
pub struct DiffRecord {
    pub n: u64,
    pub d: Dd,
    pub s: Dd,
    /// Row number of the box added at step n.
    pub row: u32,
    /// Column the box was added to (the standard-mode level structure keys
    /// on row - column).
    pub column: u32,
}

#[derive(Clone, Debug)]
pub struct DifferenceSeries {
    pub mode: Mode,
    pub records: Vec<DiffRecord>,
}

/// Differences of normalized dimensions between neighbouring diagrams of a
/// growth sequence, with row attribution taken from the recorded steps.
pub fn differences(seq: &GrowthSequence) -> Result<DifferenceSeries, AnalysisError> {
    let samples = seq.samples();
    if samples.len() < 2 {
        return Err(AnalysisError::TooShort(samples.len()));
    }
    let mut records = Vec::with_capacity(samples.len() - 1);
    for (i, pair) in samples.windows(2).enumerate() {
        let n = pair[1].n;
        let d = pair[1].c_dd.sub(pair[0].c_dd);
        let s = d.mul(Dd::from_u64(n).sqrt());
        let step = seq.steps()[i];
        records.push(DiffRecord { n, d, s, row: step.row, column: step.column });
    }
    Ok(DifferenceSeries { mode: seq.mode(), records })
}

/// Range of scaled differences observed for one row.
#[derive(Clone, Copy, Debug)]
pub struct RowBand {
    pub count: u64,
    pub min_s: f64,
    pub max_s: f64,
}

/// Per-row bands of the scaled differences over a window, plus the global
/// range and the row attaining the minimum.
#[derive(Clone, Debug)]
pub struct LevelReport {
    pub window: (u64, u64),
    pub rows: BTreeMap<u32, RowBand>,
    pub global_min: f64,
    pub global_max: f64,
    /// Row of the step minimizing s in the window.
    pub argmin_row: u32,
    /// Whether the deepest fall is a row-7 addition.
    pub min_is_row7: bool,
}

impl LevelReport {
    /// Rows sorted by ascending band minimum: the paper's "levels", lowest
    /// band first.
    pub fn bands_by_min(&self) -> Vec<(u32, RowBand)> {
        let mut v: Vec<(u32, RowBand)> = self.rows.iter().map(|(r, b)| (*r, *b)).collect();
        v.sort_by(|a, b| a.1.min_s.total_cmp(&b.1.min_s));
        v
    }
}

pub fn level_report(
    series: &DifferenceSeries,
    window: (u64, u64),
) -> Result<LevelReport, AnalysisError> {
    let (lo, hi) = window;
    let mut rows: BTreeMap<u32, RowBand> = BTreeMap::new();
    let mut global_min = f64::INFINITY;
    let mut global_max = f64::NEG_INFINITY;
    let mut argmin_row = 0u32;
    let mut seen = false;
    for rec in series.records.iter().filter(|r| r.n >= lo && r.n <= hi) {
        seen = true;
        let s = rec.s.to_f64();
        let band = rows.entry(rec.row).or_insert(RowBand {
            count: 0,
            min_s: f64::INFINITY,
            max_s: f64::NEG_INFINITY,
        });
        band.count += 1;
        band.min_s = band.min_s.min(s);
        band.max_s = band.max_s.max(s);
        if s < global_min {
            global_min = s;
            argmin_row = rec.row;
        }
        global_max = global_max.max(s);
    }
    if !seen {
        return Err(AnalysisError::EmptyWindow(lo, hi));
    }
    Ok(LevelReport {
        window,
        rows,
        global_min,
        global_max,
        argmin_row,
        min_is_row7: argmin_row == 7,
    })
}

/// Least-squares fit of `c(n) ~ C + a/√n` over a window.
#[derive(Clone, Copy, Debug)]
pub struct FitResult {
    /// Estimated limit of c(n).
    pub limit: f64,
    /// Coefficient of 1/√n.
    pub coeff: f64,
    /// Root-mean-square residual over the window.
    pub rms: f64,
    pub window: (u64, u64),
}

/// Ordinary least squares of `c` against the regressors {1, 1/√n} by the
/// closed-form normal equations, summed in double-double so that noiseless
/// synthetic inputs are recovered to full double precision.
pub fn fit_limit(points: &[(u64, f64)], window: (u64, u64)) -> Result<FitResult, AnalysisError> {
    let (lo, hi) = window;
    let selected: Vec<(f64, f64)> = points
        .iter()
        .filter(|(n, _)| *n >= lo && *n <= hi)
        .map(|&(n, c)| (1.0 / (n as f64).sqrt(), c))
        .collect();
    if selected.is_empty() {
        return Err(AnalysisError::EmptyWindow(lo, hi));
    }
    let m = selected.len() as f64;
    let mut sx = ZERO;
    let mut sxx = ZERO;
    let mut sy = ZERO;
    let mut sxy = ZERO;
    for &(x, y) in &selected {
        sx = sx.add_f64(x);
        sxx = sxx.add(Dd::from_f64(x).mul_f64(x));
        sy = sy.add_f64(y);
        sxy = sxy.add(Dd::from_f64(x).mul_f64(y));
    }
    let det = sxx.mul_f64(m).sub(sx.mul(sx));
    // Relative test: with a single distinct n the determinant is zero up to
    // double-double rounding of the m^2 x^2 cancellation.
    if det.to_f64().abs() <= 1e-20 * sxx.mul_f64(m).to_f64().abs() {
        return Err(AnalysisError::DegenerateWindow);
    }
    let coeff = sxy.mul_f64(m).sub(sx.mul(sy)).div(det);
    let limit = sy.sub(coeff.mul(sx)).div_f64(m);
    let mut ss = ZERO;
    for &(x, y) in &selected {
        let r = Dd::from_f64(y).sub(limit).sub(coeff.mul_f64(x));
        ss = ss.add(r.mul(r));
    }
    Ok(FitResult {
        limit: limit.to_f64(),
        coeff: coeff.to_f64(),
        rms: ss.div_f64(m).sqrt().to_f64(),
        window,
    })
}

// ---------------------------------------------------------------------------
// Plot-data emission (CSV)
// ---------------------------------------------------------------------------

/// 18 significant digits, '.' decimal point.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.17e}")
}

/// CSV of a difference series: `n,d,s,row`.
pub fn diff_csv(series: &DifferenceSeries) -> String {
    let mut out = String::from("n,d,s,row\n");
    for r in &series.records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            fmt_real(r.d.to_f64()),
            fmt_real(r.s.to_f64()),
            r.row
        ));
    }
    out
}

/// CSV of the (n, c) samples of a sequence: `n,c`.
pub fn samples_csv(seq: &GrowthSequence) -> String {
    let mut out = String::from("n,c\n");
    for s in seq.samples().iter().filter(|s| s.n > 0) {
        out.push_str(&format!("{},{}\n", s.n, fmt_real(s.c)));
    }
    out
}

/// CSV of a level report: `row,count,min_s,max_s`.
pub fn level_report_csv(report: &LevelReport) -> String {
    let mut out = String::from("row,count,min_s,max_s\n");
    for (row, band) in &report.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row,
            band.count,
            fmt_real(band.min_s),
            fmt_real(band.max_s)
        ));
    }
    out
}

/// CSV pairing the data with the fitted model: `n,c,model`.
pub fn fit_csv(points: &[(u64, f64)], fit: &FitResult) -> String {
    let mut out = String::from("n,c,model\n");
    let (lo, hi) = fit.window;
    for &(n, c) in points.iter().filter(|(n, _)| *n >= lo && *n <= hi) {
        let model = fit.limit + fit.coeff / (n as f64).sqrt();
        out.push_str(&format!("{},{},{}\n", n, fmt_real(c), fmt_real(model)));
    }
    out
}
