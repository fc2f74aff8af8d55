//! Grid audits: sweep interior points of the unit square and check every
//! enclosure (or asymptotic bracket) against the reference value.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baseline::{cg1, cg2};
use crate::error::{Error, Result};
use crate::point::{EvalPoint, Quality};
use crate::series_one::{coefficient_argument as s_argument, expansion_one_with, SnCache};
use crate::series_two::{coefficient_argument as a_argument, expansion_two_with, AnCache};
use crate::special::reference_f;
use crate::tables::Method;

/// Rounding allowance, relative to `|F| + |value|`, when testing an
/// enclosure computed in double precision.
pub const ROUNDING_MARGIN: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, PartialEq)]
pub struct AuditConfig {
    pub step: f64,
    pub methods: Vec<Method>,
    /// Truncation orders for the series methods; the baseline methods have
    /// fixed order and are checked once per point.
    pub orders: Vec<usize>,
    pub quality: Quality,
}

impl AuditConfig {
    pub fn new(
        step: f64,
        methods: Vec<Method>,
        orders: Vec<usize>,
        quality: Quality,
    ) -> Result<Self> {
        if !(step > 0.0 && step <= 0.5) {
            return Err(Error::domain(format!("grid step {step} outside (0, 0.5]")));
        }
        if orders.contains(&0) {
            return Err(Error::domain("truncation orders must be positive"));
        }
        Ok(AuditConfig {
            step,
            methods,
            orders,
            quality,
        })
    }

    /// Interior grid coordinates `i · step` in (0, 1).
    pub fn axis(&self) -> Vec<f64> {
        (1..)
            .map(|i| i as f64 * self.step)
            .take_while(|&v| v < 1.0 - 1e-12)
            .collect()
    }

    /// Row-major interior grid: λ outer, k inner.
    pub fn grid(&self) -> Vec<(f64, f64)> {
        let axis = self.axis();
        axis.iter()
            .flat_map(|&l| axis.iter().map(move |&k| (l, k)))
            .collect()
    }

    fn cases(&self) -> Vec<(Method, usize)> {
        let mut out = Vec::new();
        for &m in &self.methods {
            match m {
                Method::SeriesOne | Method::SeriesTwo => {
                    out.extend(self.orders.iter().map(|&n| (m, n)))
                }
                Method::Cg1 => out.push((m, 1)),
                Method::Cg2 => out.push((m, 2)),
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Outcome {
    Skipped,
    Checked {
        sound: bool,
        /// Distance to the nearer bracket end, relative to |F| (negative when violated).
        slack: f64,
        /// Error sign resolved beyond rounding (series methods only).
        resolved_negative: bool,
    },
}

/// Per-(method, order) summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodAudit {
    pub method: Method,
    pub order: usize,
    pub sound: usize,
    pub violated: usize,
    pub skipped: usize,
    /// Points where `F − value < −margin`, i.e. the negative sign is resolved.
    pub resolved_negative: usize,
    /// Smallest relative slack seen and where; `None` if nothing was checked.
    pub worst_slack: Option<f64>,
    pub worst_lambda: Option<f64>,
    pub worst_k: Option<f64>,
}

impl MethodAudit {
    pub fn total(&self) -> usize {
        self.sound + self.violated + self.skipped
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub step: f64,
    pub points: usize,
    pub entries: Vec<MethodAudit>,
}

impl AuditReport {
    pub fn violations(&self) -> usize {
        self.entries.iter().map(|e| e.violated).sum()
    }
}

fn check_point(l: f64, k: f64, cases: &[(Method, usize)], q: Quality) -> Result<Vec<Outcome>> {
    let p = EvalPoint::new(l, k)?;
    let f = reference_f(p, q)?;
    let mut s_cache = SnCache::new(s_argument(p))?;
    let mut a_cache = if k < 1.0 {
        Some(AnCache::new(a_argument(p))?)
    } else {
        None
    };
    let mut out = Vec::with_capacity(cases.len());
    for &(method, order) in cases {
        let enclosure = match method {
            Method::SeriesOne => Some(expansion_one_with(p, order, &mut s_cache)),
            Method::SeriesTwo => a_cache.as_mut().map(|c| expansion_two_with(p, order, c, q)),
            Method::Cg1 | Method::Cg2 => {
                let c = if method == Method::Cg1 {
                    cg1(p)
                } else {
                    cg2(p)
                };
                out.push(match c {
                    Ok(c) => {
                        let theta = c.realized(f);
                        let slack = (theta - c.bracket_lo).min(c.bracket_hi - theta);
                        Outcome::Checked {
                            sound: slack >= 0.0,
                            slack,
                            resolved_negative: false,
                        }
                    }
                    Err(Error::Domain(_)) | Err(Error::Region { .. }) => Outcome::Skipped,
                    Err(e) => return Err(e),
                });
                continue;
            }
        };
        out.push(match enclosure {
            None | Some(Err(Error::Domain(_))) | Some(Err(Error::Region { .. })) => {
                Outcome::Skipped
            }
            Some(Err(e)) => return Err(e),
            Some(Ok(e)) => {
                let margin = ROUNDING_MARGIN * (f.abs() + e.value.abs());
                let err = f - e.value;
                let slack = (err - e.err_lo).min(e.err_hi - err);
                Outcome::Checked {
                    sound: slack >= -margin,
                    slack: slack / f.abs(),
                    resolved_negative: err < -margin,
                }
            }
        });
    }
    Ok(out)
}

/// Runs the audit; points are evaluated in parallel, results are reported
/// in row-major grid order.
pub fn run_audit(config: &AuditConfig) -> Result<AuditReport> {
    let grid = config.grid();
    let cases = config.cases();
    let results: Vec<Vec<Outcome>> = grid
        .par_iter()
        .map(|&(l, k)| check_point(l, k, &cases, config.quality))
        .collect::<Result<_>>()?;

    let mut entries: Vec<MethodAudit> = cases
        .iter()
        .map(|&(method, order)| MethodAudit {
            method,
            order,
            sound: 0,
            violated: 0,
            skipped: 0,
            resolved_negative: 0,
            worst_slack: None,
            worst_lambda: None,
            worst_k: None,
        })
        .collect();
    for (&(l, k), outcomes) in grid.iter().zip(&results) {
        for (entry, outcome) in entries.iter_mut().zip(outcomes) {
            match *outcome {
                Outcome::Skipped => entry.skipped += 1,
                Outcome::Checked {
                    sound,
                    slack,
                    resolved_negative,
                } => {
                    if sound {
                        entry.sound += 1;
                    } else {
                        entry.violated += 1;
                    }
                    if resolved_negative {
                        entry.resolved_negative += 1;
                    }
                    if entry.worst_slack.is_none_or(|w| slack < w) {
                        entry.worst_slack = Some(slack);
                        entry.worst_lambda = Some(l);
                        entry.worst_k = Some(k);
                    }
                }
            }
        }
    }
    Ok(AuditReport {
        step: config.step,
        points: grid.len(),
        entries,
    })
}

const CSV_HEADER: [&str; 9] = [
    "method",
    "order",
    "sound",
    "violated",
    "skipped",
    "resolved_negative",
    "worst_slack",
    "worst_lambda",
    "worst_k",
];

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:e}"))
}

/// One CSV line per (method, order), floats in `e` notation.
pub fn report_to_csv(report: &AuditReport) -> Result<String> {
    let io = |e: csv::Error| Error::domain(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(io)?;
    for e in &report.entries {
        w.write_record([
            e.method.to_string(),
            e.order.to_string(),
            e.sound.to_string(),
            e.violated.to_string(),
            e.skipped.to_string(),
            e.resolved_negative.to_string(),
            opt(e.worst_slack),
            opt(e.worst_lambda),
            opt(e.worst_k),
        ])
        .map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::domain(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::domain(format!("csv: {e}")))
}

/// The entries as a flat JSON array.
pub fn report_to_json(report: &AuditReport) -> Result<String> {
    serde_json::to_string_pretty(&report.entries).map_err(|e| Error::domain(format!("json: {e}")))
}
