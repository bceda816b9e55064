use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::spec::ExperimentSpec;
use super::PolicyRuns;
use crate::bandit::BanditInstance;
use crate::error::{Error, Result};
use crate::policies::lower_bound_curve;

pub const RESULTS_FIXED_COLUMNS: [&str; 7] = [
    "policy_id",
    "replication",
    "t",
    "regret",
    "draws_total",
    "draws_optimal",
    "draws_suboptimal",
];
pub const SUMMARY_HEADER: &str =
    "policy_id,final_regret_mean,final_regret_se,draws_total_mean,pct_draws_optimal_mean";
pub const LOWER_BOUND_HEADER: &str = "t,lower_bound";

/// Decimal rendering with 17 significant digits; parses back to the same
/// `f64`.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = mantissa
        .strip_prefix('-')
        .map_or(("", mantissa), |m| ("-", m));
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let out = if exp >= 0 {
        let (int, frac) = digits.split_at(exp as usize + 1);
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    } else {
        format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{out}")
}

/// Per-policy aggregate over replications.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolicySummary {
    pub policy_id: String,
    pub final_regret_mean: f64,
    pub final_regret_se: f64,
    /// Mean logical posterior draws over the whole episode.
    pub draws_total_mean: f64,
    /// Mean over replications of 100 · optimal-arm draws / all draws; NaN
    /// for policies that draw nothing.
    pub pct_draws_optimal_mean: f64,
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn summarize(runs: &[PolicyRuns]) -> Vec<PolicySummary> {
    runs.iter()
        .map(|p| {
            let finals: Vec<_> = p.runs.iter().map(|m| m.final_checkpoint()).collect();
            let regrets: Vec<f64> = finals.iter().map(|c| c.regret).collect();
            let draws: Vec<f64> = finals.iter().map(|c| c.draws_total as f64).collect();
            let pct: Vec<f64> = finals
                .iter()
                .map(|c| {
                    if c.draws_total == 0 {
                        f64::NAN
                    } else {
                        100.0 * c.draws_optimal as f64 / c.draws_total as f64
                    }
                })
                .collect();
            let (final_regret_mean, final_regret_se) = mean_se(&regrets);
            PolicySummary {
                policy_id: p.policy_id.clone(),
                final_regret_mean,
                final_regret_se,
                draws_total_mean: mean_se(&draws).0,
                pct_draws_optimal_mean: mean_se(&pct).0,
            }
        })
        .collect()
}

pub(crate) fn results_csv(arms: usize, runs: &[PolicyRuns]) -> String {
    let mut s = RESULTS_FIXED_COLUMNS.join(",");
    for i in 0..arms {
        write!(s, ",pulls_arm_{i}").unwrap();
    }
    s.push('\n');
    for p in runs {
        for (r, m) in p.runs.iter().enumerate() {
            for c in &m.checkpoints {
                write!(
                    s,
                    "{},{},{},{},{},{},{}",
                    p.policy_id,
                    r,
                    c.t,
                    fmt_real(c.regret),
                    c.draws_total,
                    c.draws_optimal,
                    c.draws_suboptimal
                )
                .unwrap();
                for n in &c.pulls {
                    write!(s, ",{n}").unwrap();
                }
                s.push('\n');
            }
        }
    }
    s
}

fn summary_csv(summaries: &[PolicySummary]) -> String {
    let mut s = format!("{SUMMARY_HEADER}\n");
    for p in summaries {
        writeln!(
            s,
            "{},{},{},{},{}",
            p.policy_id,
            fmt_real(p.final_regret_mean),
            fmt_real(p.final_regret_se),
            fmt_real(p.draws_total_mean),
            fmt_real(p.pct_draws_optimal_mean)
        )
        .unwrap();
    }
    s
}

fn lower_bound_csv(instance: &BanditInstance, grid: &[u64]) -> Result<String> {
    let mut s = format!("{LOWER_BOUND_HEADER}\n");
    for (t, v) in lower_bound_curve(instance, grid)? {
        writeln!(s, "{t},{}", fmt_real(v)).unwrap();
    }
    Ok(s)
}

#[derive(Serialize)]
struct Manifest<'a> {
    crate_name: &'static str,
    crate_version: &'static str,
    spec: &'a ExperimentSpec,
    policy_ids: Vec<&'a str>,
    files: Vec<&'static str>,
}

/// Paths of everything one experiment wrote, plus the summary rows.
#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub dir: PathBuf,
    pub results_csv: PathBuf,
    pub summary_csv: PathBuf,
    pub lower_bound_csv: PathBuf,
    pub manifest: PathBuf,
    pub summaries: Vec<PolicySummary>,
}

struct Staged {
    written: Vec<PathBuf>,
}

impl Staged {
    fn put(&mut self, dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
        let tmp = dir.join(format!(".{name}.partial"));
        let dst = dir.join(name);
        fs::write(&tmp, body).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            Error::io(tmp.clone(), e)
        })?;
        fs::rename(&tmp, &dst).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            Error::io(dst.clone(), e)
        })?;
        self.written.push(dst.clone());
        Ok(dst)
    }

    fn rollback(&self) {
        for p in &self.written {
            let _ = fs::remove_file(p);
        }
    }
}

/// Write results.csv, summary.csv, lower_bound.csv and manifest.json into
/// `dir`. On failure every file written by this call is removed.
pub fn write_outputs(
    spec: &ExperimentSpec,
    instance: &BanditInstance,
    runs: &[PolicyRuns],
    dir: &Path,
) -> Result<ExperimentOutput> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir.to_path_buf(), e))?;
    let summaries = summarize(runs);
    let mut staged = Staged {
        written: Vec::new(),
    };
    let attempt = (|| -> Result<ExperimentOutput> {
        let results_csv = staged.put(dir, "results.csv", &results_csv(instance.arms(), runs))?;
        let summary_csv = staged.put(dir, "summary.csv", &summary_csv(&summaries))?;
        let lb = lower_bound_csv(instance, &spec.checkpoints.grid(spec.horizon))?;
        let lower_bound_csv = staged.put(dir, "lower_bound.csv", &lb)?;
        let manifest = Manifest {
            crate_name: env!("CARGO_PKG_NAME"),
            crate_version: env!("CARGO_PKG_VERSION"),
            spec,
            policy_ids: runs.iter().map(|p| p.policy_id.as_str()).collect(),
            files: vec!["results.csv", "summary.csv", "lower_bound.csv"],
        };
        let manifest = staged.put(
            dir,
            "manifest.json",
            &serde_json::to_string_pretty(&manifest)?,
        )?;
        Ok(ExperimentOutput {
            dir: dir.to_path_buf(),
            results_csv,
            summary_csv,
            lower_bound_csv,
            manifest,
            summaries: summaries.clone(),
        })
    })();
    if attempt.is_err() {
        staged.rollback();
    }
    attempt
}
