//! Invariant sweeps over every constructed graph up to a size bound.

use serde::Serialize;

use crate::connectivity::certify_theorem4;
use crate::constructor::{construct_plan, select_case, Case};
use crate::energy::{erdos_gallai_feasible, is_min_energy, laplacian_energy, min_energy_value, optimal_degree_pattern};
use crate::error::VerifyError;
use crate::search::matching_table;
use crate::spectral::{
    algebraic_connectivity, corollary2_predicate, corollary3_guarantee, lemma7_bounds, thm5_check_from,
    thm5_closed_form, Thm5Discrepancy, BOUND_TOL,
};

pub const VERIFY_N_MAX: usize = 60;

/// Check names, in report order.
pub const CHECKS: [&str; 8] = [
    "min_energy",
    "construction",
    "tree_energy",
    "connectivity",
    "spectral_bound",
    "closed_form_sandwich",
    "sparse_lattice",
    "dense_floor",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub search: bool,
    /// Worker threads; results do not depend on it.
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureRecord {
    pub check: &'static str,
    pub n: usize,
    pub m: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableSummary {
    pub n: usize,
    pub rows: usize,
    pub non_matching: Vec<usize>,
    pub matching_fraction: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub pass: bool,
    pub checks: Vec<CheckTally>,
    pub failures: Vec<FailureRecord>,
    /// Expected equality misses on `C2_1`; never failures.
    pub discrepancies: Vec<Thm5Discrepancy>,
    pub tables: Vec<TableSummary>,
}

#[derive(Default)]
struct Partial {
    tallies: [(u64, u64); CHECKS.len()],
    failures: Vec<FailureRecord>,
    discrepancies: Vec<Thm5Discrepancy>,
}

impl Partial {
    fn record(&mut self, check: usize, n: usize, m: Option<usize>, ok: bool, detail: impl FnOnce() -> String) {
        self.tallies[check].0 += 1;
        if !ok {
            self.tallies[check].1 += 1;
            self.failures.push(FailureRecord { check: CHECKS[check], n, m, detail: detail() });
        }
    }
}

fn sweep_n(n: usize) -> Partial {
    let mut acc = Partial::default();
    for m in n - 1..=n * (n - 1) / 2 {
        let plan = select_case(n, m).expect("m in constructor range");
        let g = construct_plan(&plan);
        let energy = laplacian_energy(&g).0;
        let expected = min_energy_value(n, m).expect("m in range").0;
        let pattern_graphic = erdos_gallai_feasible(&optimal_degree_pattern(n, m).expect("m in range").degree_sequence());
        acc.record(0, n, Some(m), energy == expected && is_min_energy(&g) && pattern_graphic, || {
            format!("energy {energy}, expected {expected}, pattern graphic {pattern_graphic}")
        });
        acc.record(1, n, Some(m), g.m() == m && g.is_connected(), || format!("m = {}, connected {}", g.m(), g.is_connected()));
        if m == n - 1 {
            acc.record(2, n, Some(m), energy as usize == 6 * n - 8, || format!("energy {energy}, expected {}", 6 * n - 8));
        }
        match certify_theorem4(n, m) {
            Ok(c) => acc.record(3, n, Some(m), c.pass, || {
                format!(
                    "expected {}, vertex {}, edge {}, removal {:?}",
                    c.expected, c.report.vertex_connectivity, c.report.edge_connectivity, c.removal
                )
            }),
            Err(e) => acc.record(3, n, Some(m), false, || e.to_string()),
        }

        let a = algebraic_connectivity(&g);
        if m >= n {
            let bound = thm5_closed_form(n, plan.k).expect("k >= 2 when m >= n");
            let check = thm5_check_from(&plan, a, bound);
            let ok = check.holds && check.equality != Some(false);
            acc.record(4, n, Some(m), ok, || format!("case {}, measured {a}, closed form {bound}", plan.case));
            acc.discrepancies.extend(check.discrepancy);
        }
        if plan.case == Case::C1_1 && corollary2_predicate(n, m) {
            acc.record(6, n, Some(m), a < 1.0, || format!("measured {a} >= 1"));
        }
        if let Some(floor) = corollary3_guarantee(n, m) {
            acc.record(7, n, Some(m), a >= floor - BOUND_TOL, || format!("measured {a} below floor {floor}"));
        }
    }
    for kbar in (3..=n).step_by(2) {
        let b = lemma7_bounds(n, kbar).expect("odd kbar in range");
        acc.record(5, n, None, b.holds, || format!("kbar {kbar}: {} < {} < {} fails", b.lo, b.closed_form, b.hi));
    }
    acc
}

pub fn verify(opts: VerifyOptions) -> Result<VerifyReport, VerifyError> {
    if opts.n_max > VERIFY_N_MAX {
        return Err(VerifyError::NMaxTooLarge { n_max: opts.n_max, limit: VERIFY_N_MAX });
    }
    let ns: Vec<usize> = (3..=opts.n_max).collect();
    let workers = opts.threads.max(1).min(ns.len().max(1));
    let mut parts: Vec<(usize, Partial)> = if workers == 1 {
        ns.iter().map(|&n| (n, sweep_n(n))).collect()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let ns = &ns;
                    s.spawn(move || ns.iter().skip(w).step_by(workers).map(|&n| (n, sweep_n(n))).collect::<Vec<_>>())
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("verify worker panicked")).collect()
        })
    };
    parts.sort_by_key(|(n, _)| *n);

    let mut tallies = [(0u64, 0u64); CHECKS.len()];
    let mut failures = Vec::new();
    let mut discrepancies = Vec::new();
    for (_, p) in parts {
        for (t, (c, f)) in tallies.iter_mut().zip(p.tallies) {
            t.0 += c;
            t.1 += f;
        }
        failures.extend(p.failures);
        discrepancies.extend(p.discrepancies);
    }

    let mut tables = Vec::new();
    if opts.search {
        for n in 4..=opts.n_max.min(7) {
            let t = matching_table(n).expect("table range");
            let last_matched = t.rows.last().map_or(false, |r| r.matched);
            let pass = t.sparsest_non_matching && last_matched && t.matching_fraction > 0.5 && t.energy_consistent();
            if !pass {
                failures.push(FailureRecord {
                    check: "matching_table",
                    n,
                    m: None,
                    detail: format!("non-matching rows {:?}, fraction {}", t.non_matching, t.matching_fraction),
                });
            }
            tables.push(TableSummary {
                n,
                rows: t.rows.len(),
                non_matching: t.non_matching,
                matching_fraction: t.matching_fraction,
                pass,
            });
        }
    }

    let checks = CHECKS
        .iter()
        .zip(tallies)
        .map(|(&name, (cases, failures))| CheckTally { name, cases, failures })
        .collect();
    Ok(VerifyReport { n_max: opts.n_max, pass: failures.is_empty(), checks, failures, discrepancies, tables })
}
