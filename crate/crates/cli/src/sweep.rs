//! Population sweeps: one row of statistics per object size.

use std::fmt::{self, Display};
use std::path::PathBuf;

use assembly_chains::addition_chains::shortest_length;
use assembly_chains::assembly_core::{MemoCache, Solver, SolverConfig};
use assembly_chains::bounds::coarse_bounds;
use assembly_chains::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::spaces::{CliSpace, SpaceSpec};
use crate::Format;

pub const CSV_HEADER: &str =
    "size,count,ai_min,ai_max,ell,ma_paper_literal,ma_derived_count,coarse_lo,coarse_hi,status";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub space: SpaceSpec,
    pub min_size: usize,
    pub max_size: usize,
    /// Solve every object exactly; otherwise report bounds and counts only.
    pub exact: bool,
    pub node_budget: u64,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub timestamp: bool,
}

impl SweepConfig {
    pub fn check(&self) -> Result<()> {
        if self.min_size == 0 || self.min_size > self.max_size {
            return Err(Error::InvalidArgument(format!(
                "empty size range {}..{}",
                self.min_size, self.max_size
            )));
        }
        if self.node_budget == 0 {
            return Err(Error::InvalidArgument("node budget must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Exact,
    /// Some objects ran out of budget; min/max cover the solved ones only.
    Partial,
    BoundsOnly,
    Violation,
}

impl Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Exact => "exact",
            RowStatus::Partial => "partial",
            RowStatus::BoundsOnly => "bounds-only",
            RowStatus::Violation => "violation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub size: usize,
    pub count: Option<u128>,
    pub ai_min: Option<usize>,
    pub ai_max: Option<usize>,
    pub ell: u64,
    pub ma_paper_literal: Option<u64>,
    pub ma_derived_count: Option<u64>,
    pub coarse_lo: u64,
    pub coarse_hi: u64,
    pub status: RowStatus,
}

fn cell<T: Display>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

impl SweepRow {
    /// A row without exact indices.
    pub fn bounds<S: CliSpace>(space: &S, size: usize, count: Option<u128>) -> Result<Self>
    where
        S::Object: Display,
    {
        let (coarse_lo, coarse_hi) = coarse_bounds(size as u64)?;
        let ma = space.ma_values(size as u64)?;
        Ok(Self {
            size,
            count,
            ai_min: None,
            ai_max: None,
            ell: shortest_length(size as u64)? as u64,
            ma_paper_literal: ma.paper_literal,
            ma_derived_count: ma.derived_count,
            coarse_lo,
            coarse_hi,
            status: RowStatus::BoundsOnly,
        })
    }

    /// `ell <= ai_min` and `ai_max <= min(Ma_derived, size - 1)`.
    ///
    /// The paper-literal value is reported but not enforced: for graphs and
    /// polyominoes it undercounts the size-2 pieces.
    pub fn check(&self) -> std::result::Result<(), String> {
        if let Some(lo) = self.ai_min {
            if (lo as u64) < self.ell {
                return Err(format!("size {}: ai_min {lo} < ell {}", self.size, self.ell));
            }
        }
        if let Some(hi) = self.ai_max {
            let cap = self.ma_derived_count.unwrap_or(self.coarse_hi).min(self.coarse_hi);
            if hi as u64 > cap {
                return Err(format!("size {}: ai_max {hi} > {cap}", self.size));
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.size,
            cell(&self.count),
            cell(&self.ai_min),
            cell(&self.ai_max),
            self.ell,
            cell(&self.ma_paper_literal),
            cell(&self.ma_derived_count),
            self.coarse_lo,
            self.coarse_hi,
            self.status
        )
    }
}

/// Runs the sweep; rows come out in increasing size regardless of scheduling.
pub fn run<S: CliSpace>(space: &S, cfg: &SweepConfig, memo: Option<&MemoCache>) -> Result<Vec<SweepRow>>
where
    S::Object: Display,
{
    cfg.check()?;
    let solver_cfg = SolverConfig {
        node_budget: cfg.node_budget,
        ..SolverConfig::default()
    };
    let mut rows = Vec::new();
    for size in cfg.min_size..=cfg.max_size {
        if !cfg.exact {
            rows.push(SweepRow::bounds(space, size, space.level_cardinality(size))?);
            continue;
        }
        let objects = space.enumerate(size)?;
        let results: Vec<Result<usize>> = objects
            .par_iter()
            .map_init(
                || {
                    let s = Solver::with_config(space, solver_cfg.clone());
                    match memo {
                        Some(m) => s.with_memo(m),
                        None => s,
                    }
                },
                |solver, t| solver.solve(t).map(|sol| sol.index),
            )
            .collect();
        let mut row = SweepRow::bounds(space, size, Some(objects.len() as u128))?;
        row.status = RowStatus::Exact;
        for r in results {
            match r {
                Ok(a) => {
                    row.ai_min = Some(row.ai_min.map_or(a, |m| m.min(a)));
                    row.ai_max = Some(row.ai_max.map_or(a, |m| m.max(a)));
                }
                Err(Error::BudgetExceeded { .. }) => row.status = RowStatus::Partial,
                Err(e) => return Err(e),
            }
        }
        if row.check().is_err() {
            row.status = RowStatus::Violation;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Renders rows; `timestamp` adds a leading `# generated_at_unix=` line to CSV.
pub fn render(rows: &[SweepRow], format: Format, timestamp: Option<u64>) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            s
        }
        Format::Csv | Format::Text => {
            let mut out = String::new();
            if let Some(t) = timestamp {
                out.push_str(&format!("# generated_at_unix={t}\n"));
            }
            out.push_str(CSV_HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&r.to_csv());
                out.push('\n');
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceKind;
    use assembly_chains::space_polyominoes::PolyominoSpace;
    use assembly_chains::space_strings::StringSpace;

    fn config(min_size: usize, max_size: usize, exact: bool) -> SweepConfig {
        SweepConfig {
            space: SpaceSpec::default(),
            min_size,
            max_size,
            exact,
            node_budget: 1_000_000,
            output: None,
            format: Format::Csv,
            timestamp: false,
        }
    }

    #[test]
    fn exact_string_sweep() {
        let space = StringSpace::directed(2);
        let rows = run(&space, &config(2, 10, true), None).unwrap();
        assert_eq!(rows.len(), 9);
        let eight = &rows[6];
        assert_eq!(eight.size, 8);
        assert_eq!(eight.count, Some(256));
        assert_eq!(eight.ai_min, Some(3));
        assert_eq!(eight.ell, 3);
        for r in &rows {
            assert_eq!(r.status, RowStatus::Exact);
            r.check().unwrap();
        }
    }

    #[test]
    fn bounds_only_poly_counts() {
        let space = PolyominoSpace::new(1);
        let rows = run(&space, &config(3, 6, false), None).unwrap();
        let counts: Vec<_> = rows.iter().map(|r| r.count).collect();
        assert_eq!(counts, vec![Some(2), Some(5), Some(12), Some(35)]);
        assert!(rows.iter().all(|r| r.status == RowStatus::BoundsOnly && r.ai_min.is_none()));
    }

    #[test]
    fn saw_tooth_in_bounds_only_rows() {
        let space = StringSpace::directed(2);
        let rows = run(&space, &config(2, 64, false), None).unwrap();
        let first_dip = rows
            .iter()
            .position(|r| r.ma_derived_count.unwrap() < r.coarse_hi)
            .unwrap();
        assert!(first_dip > 0);
        assert!(rows[..first_dip].iter().all(|r| r.ma_derived_count == Some(r.coarse_hi)));
        assert!(rows[first_dip..].iter().all(|r| r.ma_derived_count < Some(r.coarse_hi)));
    }

    #[test]
    fn exhausted_budget_marks_rows_partial() {
        let space = StringSpace::directed(2);
        let mut cfg = config(9, 9, true);
        cfg.node_budget = 1;
        let rows = run(&space, &cfg, None).unwrap();
        assert_eq!(rows[0].status, RowStatus::Partial);
    }

    #[test]
    fn config_checks() {
        assert!(config(3, 2, true).check().is_err());
        assert!(config(0, 2, true).check().is_err());
        let mut c = config(1, 2, true);
        c.node_budget = 0;
        assert!(c.check().is_err());
        assert_eq!(c.space.kind, SpaceKind::Strings);
    }

    #[test]
    fn csv_rendering() {
        let space = StringSpace::directed(2);
        let rows = run(&space, &config(1, 2, true), None).unwrap();
        let text = render(&rows, Format::Csv, Some(7));
        assert_eq!(
            text,
            format!("# generated_at_unix=7\n{CSV_HEADER}\n1,2,0,0,0,0,0,0,0,exact\n2,4,1,1,1,1,1,1,1,exact\n")
        );
        let json: serde_json::Value = serde_json::from_str(&render(&rows, Format::Json, None)).unwrap();
        assert_eq!(json[1]["status"], "exact");
    }
}
