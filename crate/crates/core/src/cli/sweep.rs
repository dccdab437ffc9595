//! Formula-versus-search sweep over a box of product specs.
//!
//! For every spec with `r <= max_r`, `m_i <= max_part`, `m <= n <= max_n`
//! and every `k in 1..=mn`, the closed forms are compared with the exact
//! oracle (up to `oracle_cap` vertices) and with the constructive colorer.
//! The structural checks on color classes and the inductive chain are run
//! on the same instances.

use rayon::prelude::*;
use serde::Serialize;

use crate::closedform::{equitable_threshold_product_with, Case1Reading, ProductSpec, ThresholdCase, ThresholdReport};
use crate::colorer::{color_multipartite, color_product, increment_chain, Construction};
use crate::error::{Error, Result};
use crate::graphs::{
    build_multipartite, build_product, classify_class, critical_class_sizes_ok, verify_coloring, ClassKind, Coloring,
};
use crate::oracle::{k_colorable, thresholds_from_profile, OracleResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_r: usize,
    pub max_part: usize,
    pub max_n: usize,
    /// Largest vertex count handed to the oracle.
    pub oracle_cap: usize,
    pub budget: u64,
    pub reading: Case1Reading,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_r: 3,
            max_part: 2,
            max_n: 5,
            oracle_cap: 18,
            budget: crate::oracle::DEFAULT_BUDGET,
            reading: Case1Reading::Floor,
        }
    }
}

/// Every spec in the box, ordered by `r`, then parts lexicographically,
/// then `n`. Parts are ordered tuples, so `(1,2)` and `(2,1)` both appear.
pub fn enumerate_specs(cfg: &SweepConfig) -> Vec<ProductSpec> {
    let mut out = Vec::new();
    for r in 1..=cfg.max_r {
        let mut parts = vec![1; r];
        loop {
            let m: usize = parts.iter().sum();
            for n in m.max(1)..=cfg.max_n {
                out.push(ProductSpec::new(parts.clone(), n).expect("positive parameters"));
            }
            // Odometer increment over [1, max_part]^r.
            let Some(pos) = parts.iter().rposition(|&p| p < cfg.max_part) else {
                break;
            };
            parts[pos] += 1;
            parts[pos + 1..].iter_mut().for_each(|p| *p = 1);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Checker {
    Oracle,
    Colorer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub parts: Vec<usize>,
    pub n: usize,
    pub k: usize,
    /// What the closed forms say about `k`: feasible at `chi_eq` and from
    /// `chi_eq_star` on, infeasible below `chi_eq` and at `chi_eq_star - 1`,
    /// silent elsewhere. When the two clash at `chi_eq` the row says feasible
    /// and the clash shows up as a threshold mismatch.
    pub formula_feasible: Option<bool>,
    /// `None` above the oracle cap or when the budget ran out.
    pub oracle_feasible: Option<bool>,
    pub colorer_feasible: Option<bool>,
    pub checked_by: Option<Checker>,
    /// `None` when neither search finished.
    pub agree: Option<bool>,
    pub budget_exceeded: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReadingSupport {
    Floor,
    Ceiling,
    Both,
    Neither,
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecSummary {
    pub parts: Vec<usize>,
    pub n: usize,
    pub chi_eq: usize,
    pub chi_eq_star: usize,
    pub chi_eq_star_ceiling: usize,
    pub case: ThresholdCase,
    pub h: usize,
    pub h_star: Option<usize>,
    pub lin_chang_bound: usize,
    pub oracle_chi_eq: Option<usize>,
    pub oracle_chi_eq_star: Option<usize>,
    /// Thresholds read off the colorer's exact decisions.
    pub colorer_chi_eq: Option<usize>,
    pub colorer_chi_eq_star: Option<usize>,
    pub reading_support: ReadingSupport,
    /// Whether `(chi_eq, chi_eq_star)` equals the exact pair, taken from the
    /// oracle when it ran and from the colorer otherwise.
    pub thresholds_match: Option<bool>,
    /// Classes of colorings below `ceil(mn/(m+1))` that are not blocks.
    pub block_violations: usize,
    pub block_checked_colorings: usize,
    /// `floor(mn/(m+1))`-colorings of the companion graph with a class size
    /// outside `{m+1, m+2}`.
    pub size_violations: usize,
    pub size_checked_colorings: usize,
    /// `None` outside the second case.
    pub chain_ok: Option<bool>,
    pub chain_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub specs: Vec<SpecSummary>,
    /// Rows whose prediction contradicts the exact answer.
    pub disagreements: usize,
    /// Specs whose closed-form thresholds differ from the exact ones.
    pub threshold_mismatches: usize,
    pub budget_exceeded_rows: usize,
}

impl SweepReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements == 0 && self.threshold_mismatches == 0
    }
}

fn finished<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn non_block_classes(spec: &ProductSpec, c: &Coloring) -> Result<usize> {
    let mut bad = 0;
    for class in c.classes().into_iter().filter(|cl| !cl.is_empty()) {
        if !matches!(classify_class(spec, &class)?, ClassKind::Block(_)) {
            bad += 1;
        }
    }
    Ok(bad)
}

fn thresholds(feasible: &[Option<bool>]) -> Option<(usize, usize)> {
    let known: Option<Vec<bool>> = feasible.iter().copied().collect();
    let known = known?;
    let chi = known.iter().position(|&f| f).map_or(1, |i| i + 1);
    let star = known.iter().rposition(|&f| !f).map_or(1, |i| i + 2);
    Some((chi, star))
}

fn formula_prediction(report: &ThresholdReport, k: usize) -> Option<bool> {
    if k == report.chi_eq || k >= report.chi_eq_star {
        Some(true)
    } else if k < report.chi_eq || k + 1 == report.chi_eq_star {
        Some(false)
    } else {
        None
    }
}

struct SpecOutcome {
    rows: Vec<SweepRow>,
    summary: SpecSummary,
}

fn sweep_spec(spec: &ProductSpec, cfg: &SweepConfig) -> Result<SpecOutcome> {
    let report: ThresholdReport = equitable_threshold_product_with(spec, cfg.reading)?;
    let ceiling = equitable_threshold_product_with(spec, Case1Reading::Ceiling)?;
    let floor = equitable_threshold_product_with(spec, Case1Reading::Floor)?;
    let mn = spec.vertex_count();
    let m = spec.m();
    let graph = build_product(spec);
    let use_oracle = mn <= cfg.oracle_cap;

    let oracle: Vec<Option<OracleResult>> = if use_oracle {
        (1..=mn)
            .map(|k| finished(k_colorable(&graph, k, cfg.budget)))
            .collect::<Result<_>>()?
    } else {
        vec![None; mn]
    };
    let colorer: Vec<Option<Construction>> = (1..=mn)
        .map(|k| finished(color_product(spec, k, cfg.budget)))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(mn);
    for k in 1..=mn {
        let oracle_feasible = oracle[k - 1].as_ref().map(|r| r.feasible);
        let colorer_feasible = colorer[k - 1].as_ref().map(|c| c.coloring().is_some());
        let formula_feasible = formula_prediction(&report, k);
        let (checked_by, truth) = match (oracle_feasible, colorer_feasible) {
            (Some(f), _) => (Some(Checker::Oracle), Some(f)),
            (None, Some(f)) => (Some(Checker::Colorer), Some(f)),
            (None, None) => (None, None),
        };
        let budget_exceeded = (use_oracle && oracle_feasible.is_none()) || colorer_feasible.is_none();
        rows.push(SweepRow {
            parts: spec.parts().to_vec(),
            n: spec.n(),
            k,
            formula_feasible,
            oracle_feasible,
            colorer_feasible,
            checked_by,
            agree: truth.zip(formula_feasible).map(|(t, f)| t == f),
            budget_exceeded,
        });
    }

    let oracle_thresholds = if use_oracle {
        let done: Option<Vec<OracleResult>> = oracle.iter().cloned().collect();
        done.map(|p| thresholds_from_profile(&p))
    } else {
        None
    };
    let colorer_thresholds = thresholds(
        &colorer
            .iter()
            .map(|c| c.as_ref().map(|c| c.coloring().is_some()))
            .collect::<Vec<_>>(),
    );
    let reading_support = match oracle_thresholds {
        None => ReadingSupport::Unchecked,
        Some((_, star)) => match (floor.chi_eq_star == star, ceiling.chi_eq_star == star) {
            (true, true) => ReadingSupport::Both,
            (true, false) => ReadingSupport::Floor,
            (false, true) => ReadingSupport::Ceiling,
            (false, false) => ReadingSupport::Neither,
        },
    };

    // Classes below ceil(mn/(m+1)) must all be blocks.
    let mut block_violations = 0;
    let mut block_checked = 0;
    for k in 1..report.lin_chang_bound.min(mn + 1) {
        let witnesses = [
            oracle[k - 1].as_ref().and_then(|r| r.witness.as_ref()),
            colorer[k - 1].as_ref().and_then(|c| c.coloring()),
        ];
        for w in witnesses.into_iter().flatten() {
            block_checked += 1;
            block_violations += non_block_classes(spec, w)?;
        }
    }

    // Companion colorings at floor(mn/(m+1)) have classes of m+1 or m+2.
    let mut size_violations = 0;
    let mut size_checked = 0;
    let critical = mn / (m + 1);
    if critical >= 1 {
        let sizes = spec.block_sizes();
        let companion = build_multipartite(&sizes)?;
        let mut witnesses: Vec<Coloring> = color_multipartite(&sizes, critical)?.into_iter().collect();
        if use_oracle {
            if let Some(r) = finished(k_colorable(&companion, critical, cfg.budget))? {
                witnesses.extend(r.witness);
            }
        }
        for w in &witnesses {
            size_checked += 1;
            if !verify_coloring(&companion, w)?.is_ok() || !critical_class_sizes_ok(spec, w)? {
                size_violations += 1;
            }
        }
    }

    let (chain_ok, chain_len) = if report.case == ThresholdCase::Case2 {
        match increment_chain(spec, &report) {
            Ok(chain) => {
                let companion = build_multipartite(&spec.block_sizes())?;
                let mut ok = true;
                for sp in &chain {
                    let c = sp.to_coloring();
                    ok &= verify_coloring(&companion, &c)?.is_ok() && verify_coloring(&graph, &c)?.is_ok();
                }
                (Some(ok), chain.len())
            }
            Err(_) => (Some(false), 0),
        }
    } else {
        (None, 0)
    };

    Ok(SpecOutcome {
        rows,
        summary: SpecSummary {
            parts: spec.parts().to_vec(),
            n: spec.n(),
            chi_eq: report.chi_eq,
            chi_eq_star: report.chi_eq_star,
            chi_eq_star_ceiling: ceiling.chi_eq_star,
            case: report.case,
            h: report.h,
            h_star: report.h_star,
            lin_chang_bound: report.lin_chang_bound,
            oracle_chi_eq: oracle_thresholds.map(|t| t.0),
            oracle_chi_eq_star: oracle_thresholds.map(|t| t.1),
            colorer_chi_eq: colorer_thresholds.map(|t| t.0),
            colorer_chi_eq_star: colorer_thresholds.map(|t| t.1),
            reading_support,
            thresholds_match: oracle_thresholds
                .or(colorer_thresholds)
                .map(|t| t == (report.chi_eq, report.chi_eq_star)),
            block_violations,
            block_checked_colorings: block_checked,
            size_violations,
            size_checked_colorings: size_checked,
            chain_ok,
            chain_len,
        },
    })
}

/// Runs the sweep over `specs`; specs are processed in parallel but the
/// report keeps their order.
pub fn run_sweep(specs: &[ProductSpec], cfg: &SweepConfig) -> Result<SweepReport> {
    let outcomes: Vec<SpecOutcome> = specs.par_iter().map(|s| sweep_spec(s, cfg)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for o in outcomes {
        rows.extend(o.rows);
        summaries.push(o.summary);
    }
    let disagreements = rows.iter().filter(|r| r.agree == Some(false)).count();
    let threshold_mismatches = summaries.iter().filter(|s| s.thresholds_match == Some(false)).count();
    let budget_exceeded_rows = rows.iter().filter(|r| r.budget_exceeded).count();
    Ok(SweepReport {
        rows,
        specs: summaries,
        disagreements,
        threshold_mismatches,
        budget_exceeded_rows,
    })
}
