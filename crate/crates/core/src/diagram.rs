//! Young diagrams as column-height partitions and their one-box growth moves
//! on the Young graph (non-increasing columns) and the Schur graph (strictly
//! decreasing columns).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Which graded graph the validity and growth rules refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Young graph: columns non-increasing.
    Standard,
    /// Schur graph: columns strictly decreasing.
    Strict,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Standard => "standard",
            Mode::Strict => "strict",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(Mode::Standard),
            "strict" => Ok(Mode::Strict),
            other => Err(DiagramError::Format(format!(
                "unknown mode {other:?}, expected \"standard\" or \"strict\""
            ))),
        }
    }
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("partition format error: {0}")]
    Format(String),
    #[error("columns are not strictly decreasing: not a strict diagram")]
    NotStrict,
    #[error("invalid growth step: column {column}, row {row}")]
    InvalidStep { column: u32, row: u32 },
}

/// One box addition: the 1-based column receiving the box (`width + 1` means
/// a new column) and the resulting height of that column, i.e. the row number
/// of the added box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrowthStep {
    pub column: u32,
    pub row: u32,
}

/// A Young diagram stored as column heights `l1 >= l2 >= ... >= lk >= 1`.
/// The empty diagram (the graph root) is the empty list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    cols: Vec<u32>,
}

impl Diagram {
    pub fn empty() -> Self {
        Diagram { cols: Vec::new() }
    }

    /// Builds a diagram from column heights, enforcing the base invariant
    /// (positive, non-increasing).
    pub fn from_columns(cols: Vec<u32>) -> Result<Self, DiagramError> {
        for w in cols.windows(2) {
            if w[0] < w[1] {
                return Err(DiagramError::Format(format!(
                    "columns must be non-increasing, got {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if cols.iter().any(|&c| c == 0) {
            return Err(DiagramError::Format("zero column height".into()));
        }
        Ok(Diagram { cols })
    }

    #[inline]
    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    /// Number of boxes.
    #[inline]
    pub fn size(&self) -> u64 {
        self.cols.iter().map(|&c| u64::from(c)).sum()
    }

    /// Number of columns.
    #[inline]
    pub fn width(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.cols.windows(2).all(|w| w[0] > w[1])
    }

    /// True iff the column list satisfies the mode's invariant. Total: any
    /// constructed diagram is a valid Young-graph vertex, so `Standard`
    /// always holds.
    pub fn validate(&self, mode: Mode) -> bool {
        match mode {
            Mode::Standard => true,
            Mode::Strict => self.is_strict(),
        }
    }

    /// The growth steps valid under `mode`, ascending by column index; the
    /// new-column extension, when valid, comes last.
    pub fn growth_steps(&self, mode: Mode) -> Vec<GrowthStep> {
        debug_assert!(self.validate(mode));
        let k = self.cols.len();
        let mut steps = Vec::with_capacity(k + 1);
        for c in 0..k {
            let ok = if c == 0 {
                true
            } else {
                match mode {
                    Mode::Standard => self.cols[c - 1] > self.cols[c],
                    Mode::Strict => self.cols[c - 1] > self.cols[c] + 1,
                }
            };
            if ok {
                steps.push(GrowthStep { column: (c + 1) as u32, row: self.cols[c] + 1 });
            }
        }
        let new_col_ok = match mode {
            Mode::Standard => true,
            Mode::Strict => k == 0 || self.cols[k - 1] > 1,
        };
        if new_col_ok {
            steps.push(GrowthStep { column: (k + 1) as u32, row: 1 });
        }
        steps
    }

    /// Applies a growth step without validity checks beyond debug assertions.
    /// `step` must come from `growth_steps` for the same diagram and mode.
    pub fn apply(&self, step: GrowthStep) -> Diagram {
        let mut cols = self.cols.clone();
        let c = step.column as usize;
        if c == cols.len() + 1 {
            debug_assert_eq!(step.row, 1);
            cols.push(1);
        } else {
            debug_assert!(c >= 1 && c <= cols.len());
            debug_assert_eq!(step.row, cols[c - 1] + 1);
            cols[c - 1] += 1;
        }
        Diagram { cols }
    }

    /// Checked step application, used when replaying persisted sequences.
    pub fn apply_checked(&self, step: GrowthStep, mode: Mode) -> Result<Diagram, DiagramError> {
        let valid = self
            .growth_steps(mode)
            .iter()
            .any(|s| s.column == step.column && s.row == step.row);
        if !valid {
            return Err(DiagramError::InvalidStep { column: step.column, row: step.row });
        }
        Ok(self.apply(step))
    }

    /// All valid one-box extensions with their steps.
    pub fn successors(&self, mode: Mode) -> Vec<(Diagram, GrowthStep)> {
        self.growth_steps(mode)
            .into_iter()
            .map(|s| (self.apply(s), s))
            .collect()
    }

    /// All valid diagrams obtained by removing one box. Equal-height column
    /// runs contribute a single predecessor (the box comes off the last
    /// column of the run), so the list is duplicate-free.
    pub fn predecessors(&self, mode: Mode) -> Vec<Diagram> {
        debug_assert!(self.validate(mode));
        let k = self.cols.len();
        let mut out = Vec::new();
        for c in 0..k {
            let h = self.cols[c] - 1;
            // The last column is always removable (dropping to zero removes it).
            let ok = if c + 1 == k {
                true
            } else {
                match mode {
                    Mode::Standard => h >= self.cols[c + 1],
                    Mode::Strict => h > self.cols[c + 1],
                }
            };
            if ok {
                let mut cols = self.cols.clone();
                if h == 0 {
                    cols.pop();
                } else {
                    cols[c] = h;
                }
                out.push(Diagram { cols });
            }
        }
        out
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.cols {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    /// Parses the text partition format `"l1,l2,...,lk"`; the empty string is
    /// the empty diagram.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(Diagram::empty());
        }
        let mut cols = Vec::new();
        for part in s.split(',') {
            let v: u32 = part
                .parse()
                .map_err(|_| DiagramError::Format(format!("invalid column height {part:?}")))?;
            if v == 0 {
                return Err(DiagramError::Format("column height must be positive".into()));
            }
            cols.push(v);
        }
        Diagram::from_columns(cols)
    }
}

/// A diagram with pairwise distinct column heights: a Schur graph vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictDiagram(Diagram);

impl StrictDiagram {
    pub fn new(d: Diagram) -> Result<Self, DiagramError> {
        if d.is_strict() {
            Ok(StrictDiagram(d))
        } else {
            Err(DiagramError::NotStrict)
        }
    }

    #[inline]
    pub fn as_diagram(&self) -> &Diagram {
        &self.0
    }

    pub fn into_diagram(self) -> Diagram {
        self.0
    }
}

impl TryFrom<Diagram> for StrictDiagram {
    type Error = DiagramError;

    fn try_from(d: Diagram) -> Result<Self, Self::Error> {
        StrictDiagram::new(d)
    }
}

impl fmt::Display for StrictDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The triangle diagram with columns `(k, k-1, ..., 1)`, size `k(k+1)/2`.
pub fn staircase(k: u32) -> StrictDiagram {
    assert!(k >= 1);
    StrictDiagram(Diagram { cols: (1..=k).rev().collect() })
}
