//! Persistence formats.
//!
//! Growth sequences: a header line `mode;initial-partition`, then one line
//! per step `n;column;row;lnDim;c` with reals printed to 18 significant
//! digits. Sequences are restored by replaying the steps through the
//! dimension engine, so a resumed run is bit-identical to a fresh one; the
//! printed accumulator values are outputs, not inputs.
//!
//! Search artifacts: semicolon CSV `n;partition;lnDim;c;provenance`, one row
//! per retained diagram (co-maximal diagrams repeat the level). Merge
//! batches: `id;size_a;size_b;merged_at_size;steps_a;steps_b;budget_exhausted`
//! with a final `max` summary row.

use thiserror::Error;

use crate::analysis::fmt_real;
use crate::diagram::{Diagram, GrowthStep, Mode};
use crate::dimension::{dim, normalized_dim_from_exact};
use crate::growth::{GrowthError, GrowthSequence, MergeResult};
use crate::hp;
use crate::search::{BestSequence, LevelMaxTable, SearchError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: {source}")]
    BadPartition {
        line: usize,
        #[source]
        source: crate::diagram::DiagramError,
    },
    #[error("replay failed at line {line}: {source}")]
    Replay {
        line: usize,
        #[source]
        source: GrowthError,
    },
    #[error("stored accumulator diverges from replay at line {line}: {stored} vs {replayed}")]
    Inconsistent { line: usize, stored: f64, replayed: f64 },
}

/// Serializes a growth sequence to the step-per-line text format.
pub fn sequence_to_string(seq: &GrowthSequence) -> String {
    let mut out = String::with_capacity(64 * (seq.steps().len() + 1));
    out.push_str(&format!("{};{}\n", seq.mode(), seq.initial()));
    for (i, step) in seq.steps().iter().enumerate() {
        let sample = &seq.samples()[i + 1];
        out.push_str(&format!(
            "{};{};{};{};{}\n",
            sample.n,
            step.column,
            step.row,
            fmt_real(sample.ln_dim.to_f64()),
            fmt_real(sample.c)
        ));
    }
    out
}

/// Parses and replays a sequence file. The recorded steps drive a fresh
/// `GrowthSequence`; each line's stored lnDim must agree with the replayed
/// accumulator to 1e-9, which catches corrupted or mismatched files.
pub fn sequence_from_str(text: &str) -> Result<GrowthSequence, FormatError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(FormatError::Malformed {
        line: 1,
        msg: "empty sequence file".into(),
    })?;
    let (mode_str, initial_str) = header.split_once(';').ok_or(FormatError::Malformed {
        line: 1,
        msg: "header must be mode;initial-partition".into(),
    })?;
    let mode: Mode = mode_str
        .parse()
        .map_err(|source| FormatError::BadPartition { line: 1, source })?;
    let initial: Diagram = initial_str
        .trim_end()
        .parse()
        .map_err(|source| FormatError::BadPartition { line: 1, source })?;
    let mut seq = GrowthSequence::new(initial, mode)
        .map_err(|source| FormatError::Replay { line: 1, source })?;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(';').collect();
        if fields.len() != 5 {
            return Err(FormatError::Malformed {
                line: lineno,
                msg: format!("expected 5 fields, got {}", fields.len()),
            });
        }
        let parse_u64 = |s: &str, what: &str| -> Result<u64, FormatError> {
            s.parse().map_err(|_| FormatError::Malformed {
                line: lineno,
                msg: format!("bad {what}: {s:?}"),
            })
        };
        let n = parse_u64(fields[0], "size")?;
        let column = parse_u64(fields[1], "column")? as u32;
        let row = parse_u64(fields[2], "row")? as u32;
        let stored_ln: f64 = fields[3].parse().map_err(|_| FormatError::Malformed {
            line: lineno,
            msg: format!("bad lnDim: {:?}", fields[3]),
        })?;
        seq.push_step(GrowthStep { column, row })
            .map_err(|source| FormatError::Replay { line: lineno, source })?;
        if seq.size() != n {
            return Err(FormatError::Malformed {
                line: lineno,
                msg: format!("size field {n} does not match replayed size {}", seq.size()),
            });
        }
        let replayed = seq.state().ln_dim().to_f64();
        if (replayed - stored_ln).abs() > 1e-9 * replayed.abs().max(1.0) {
            return Err(FormatError::Inconsistent { line: lineno, stored: stored_ln, replayed });
        }
    }
    Ok(seq)
}

/// CSV rows `n;partition;lnDim;c;provenance` for a best sequence; co-maximal
/// diagrams repeat the level with provenance `comax`.
pub fn best_sequence_csv(best: &BestSequence) -> String {
    let mut out = String::from("n;partition;lnDim;c;provenance\n");
    for level in &best.levels {
        out.push_str(&format!(
            "{};{};{};{};{}\n",
            level.n,
            level.diagram,
            fmt_real(level.ln_dim.to_f64()),
            fmt_real(level.c),
            level.provenance
        ));
        for co in &level.co_max {
            out.push_str(&format!(
                "{};{};{};{};comax\n",
                level.n,
                co,
                fmt_real(level.ln_dim.to_f64()),
                fmt_real(level.c)
            ));
        }
    }
    out
}

/// Same schema as [`best_sequence_csv`] for the exhaustive ground-truth
/// table; provenance is `dp`.
pub fn level_max_table_csv(table: &LevelMaxTable) -> Result<String, SearchError> {
    let mut out = String::from("n;partition;lnDim;c;provenance\n");
    for level in &table.levels {
        let ln_dim = hp::ln_biguint(&level.dim).to_f64();
        let c = normalized_dim_from_exact(&level.dim, level.n, table.mode);
        for argmax in &level.argmaxes {
            debug_assert_eq!(dim(argmax, table.mode)?, level.dim);
            out.push_str(&format!(
                "{};{};{};{};dp\n",
                level.n,
                argmax,
                fmt_real(ln_dim),
                fmt_real(c)
            ));
        }
    }
    Ok(out)
}

/// Merge batch CSV: one row per pair and a `max` summary row.
pub fn merge_batch_csv(results: &[(u64, u64, MergeResult)]) -> String {
    let mut out = String::from("id;size_a;size_b;merged_at_size;steps_a;steps_b;budget_exhausted\n");
    let mut max_steps = 0u64;
    let mut merged_count = 0u64;
    for (i, (size_a, size_b, r)) in results.iter().enumerate() {
        let merged = r.merged_at_size.map(|m| m.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{};{};{};{};{};{};{}\n",
            i,
            size_a,
            size_b,
            merged,
            r.steps_a,
            r.steps_b,
            u8::from(r.budget_exhausted)
        ));
        if r.merged_at_size.is_some() {
            merged_count += 1;
            max_steps = max_steps.max(r.steps_a).max(r.steps_b);
        }
    }
    out.push_str(&format!("max;;;merged={merged_count}/{};{max_steps};{max_steps};\n", results.len()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::greedy_sequence;
    use crate::search::{improved_search, SearchConfig};

    #[test]
    fn sequence_round_trip_and_replay() {
        let seq = greedy_sequence(Diagram::empty(), 40, Mode::Strict).unwrap();
        let text = sequence_to_string(&seq);
        assert!(text.starts_with("strict;\n"));
        let back = sequence_from_str(&text).unwrap();
        assert_eq!(back.steps(), seq.steps());
        assert_eq!(back.current(), seq.current());
        // byte-identical re-serialization
        assert_eq!(sequence_to_string(&back), text);
    }

    #[test]
    fn sequence_with_nonempty_start() {
        let seq = greedy_sequence("5,4,2,1".parse().unwrap(), 30, Mode::Strict).unwrap();
        let text = sequence_to_string(&seq);
        assert!(text.starts_with("strict;5,4,2,1\n"));
        let back = sequence_from_str(&text).unwrap();
        assert_eq!(back.current(), seq.current());
    }

    #[test]
    fn sequence_rejects_corruption() {
        let seq = greedy_sequence(Diagram::empty(), 10, Mode::Strict).unwrap();
        let text = sequence_to_string(&seq);

        // header garbage
        assert!(sequence_from_str("sideways;\n").is_err());
        // wrong field count
        let mut broken: Vec<String> = text.lines().map(str::to_string).collect();
        broken[3] = "3;1".into();
        assert!(sequence_from_str(&broken.join("\n")).is_err());
        // invalid step
        let mut broken: Vec<String> = text.lines().map(str::to_string).collect();
        broken[1] = "1;9;9;0.0e0;0.0e0".into();
        assert!(sequence_from_str(&broken.join("\n")).is_err());
        // accumulator mismatch
        let mut broken: Vec<String> = text.lines().map(str::to_string).collect();
        let fields: Vec<&str> = broken[5].split(';').collect();
        broken[5] = format!("{};{};{};{};{}", fields[0], fields[1], fields[2], "9.9e9", fields[4]);
        assert!(matches!(
            sequence_from_str(&broken.join("\n")),
            Err(FormatError::Inconsistent { .. })
        ));
    }

    #[test]
    fn best_sequence_csv_schema() {
        let best =
            improved_search(&[Diagram::empty()], 10, Mode::Strict, &SearchConfig::default()).unwrap();
        let csv = best_sequence_csv(&best);
        assert!(csv.starts_with("n;partition;lnDim;c;provenance\n"));
        // level 3 has the co-maximal pair (2,1) and (3)
        let rows: Vec<&str> = csv.lines().filter(|l| l.starts_with("3;")).collect();
        assert_eq!(rows.len(), 2, "{csv}");
        assert!(rows[0].starts_with("3;2,1;"));
        assert!(rows[1].starts_with("3;3;"));
        assert!(rows[1].ends_with(";comax"));
    }

    #[test]
    fn merge_csv_schema() {
        let r = MergeResult {
            merged_at_size: Some(12),
            steps_a: 3,
            steps_b: 5,
            budget_exhausted: false,
        };
        let none = MergeResult {
            merged_at_size: None,
            steps_a: 9,
            steps_b: 9,
            budget_exhausted: true,
        };
        let csv = merge_batch_csv(&[(9, 7, r), (9, 9, none)]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "id;size_a;size_b;merged_at_size;steps_a;steps_b;budget_exhausted");
        assert_eq!(lines[1], "0;9;7;12;3;5;0");
        assert_eq!(lines[2], "1;9;9;;9;9;1");
        assert!(lines[3].starts_with("max;;;merged=1/2;5;5;"));
    }
}
