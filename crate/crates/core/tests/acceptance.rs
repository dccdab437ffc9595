//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with a short summary; the binary exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use eqcolor::cli::{enumerate_specs, run_sweep, SweepConfig};
use eqcolor::closedform::{
    equitable_number_product, equitable_threshold_multipartite, equitable_threshold_product,
    equitable_threshold_product_with, Case1Reading, ProductSpec, ThresholdCase,
};
use eqcolor::colorer::{color_multipartite, color_product, increment_chain, Construction};
use eqcolor::graphs::{
    build_multipartite, build_product, classify_class, critical_class_sizes_ok, verify_coloring, ClassKind, Coloring,
};
use eqcolor::oracle::{feasibility_profile, k_colorable, thresholds_from_profile, DEFAULT_BUDGET};
use eqcolor::partitions::{
    addend_count_bounds, enumerate_q_partitions, maximal_q_partition, minimal_q_partition, q_partition_exists,
    q_partition_exists_by_ceiling,
};

const ORACLE_CAP: usize = 18;

struct Outcome {
    failures: Vec<String>,
    checked: usize,
    limit: Duration,
}

impl Outcome {
    fn new(limit_secs: u64) -> Self {
        Outcome {
            failures: Vec::new(),
            checked: 0,
            limit: Duration::from_secs(limit_secs),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn product_sweep_specs() -> Vec<ProductSpec> {
    enumerate_specs(&SweepConfig::default())
}

fn partition_suite() -> Outcome {
    let mut o = Outcome::new(5);
    for n in 1..=200usize {
        for q in 1..=n {
            let all = enumerate_q_partitions(n, q).unwrap();
            let exists = q_partition_exists(n, q).unwrap();
            o.check(
                exists == q_partition_exists_by_ceiling(n, q).unwrap() && exists == !all.is_empty(),
                || format!("existence disagrees at n={n} q={q}"),
            );

            let minimal: Vec<_> = all.iter().filter(|p| p.a < q + 1).collect();
            let maximal: Vec<_> = all.iter().filter(|p| p.b < q).collect();
            let min = minimal_q_partition(n, q).unwrap();
            let max = maximal_q_partition(n, q).unwrap();
            if exists {
                o.check(
                    minimal.len() == 1 && Some(*minimal[0]) == min && min == all.first().copied(),
                    || format!("minimal partition at n={n} q={q}"),
                );
                o.check(
                    maximal.len() == 1 && Some(*maximal[0]) == max && max == all.last().copied(),
                    || format!("maximal partition at n={n} q={q}"),
                );
                let (lo, hi) = addend_count_bounds(n, q).unwrap().unwrap();
                o.check(lo == n.div_ceil(q + 1) && hi == n / q, || {
                    format!("count bounds at n={n} q={q}")
                });
                o.check(min.unwrap().count() == lo && max.unwrap().count() == hi, || {
                    format!("extreme counts at n={n} q={q}")
                });
                let counts: Vec<usize> = all.iter().map(|p| p.count()).collect();
                o.check(counts == (lo..=hi).collect::<Vec<_>>(), || {
                    format!("count range gaps at n={n} q={q}")
                });
            } else {
                o.check(
                    min.is_none() && max.is_none() && addend_count_bounds(n, q).unwrap().is_none(),
                    || format!("phantom partition at n={n} q={q}"),
                );
            }

            // Maximal q-partition against minimal (q-1)-partition.
            if q >= 2 {
                if let (Some(big), Some(small)) = (max, minimal_q_partition(n, q - 1).unwrap()) {
                    let expected = if n % q == 0 { big.count() } else { big.count() + 1 };
                    o.check(small.count() == expected, || format!("count relation at n={n} q={q}"));
                }
            }
        }
    }
    o
}

fn size_tuples(max_r: usize, max_size: usize, max_sum: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for r in 1..=max_r {
        let mut t = vec![1; r];
        loop {
            if t.iter().sum::<usize>() <= max_sum {
                out.push(t.clone());
            }
            let Some(pos) = t.iter().rposition(|&s| s < max_size) else {
                break;
            };
            t[pos] += 1;
            t[pos + 1..].iter_mut().for_each(|s| *s = 1);
        }
    }
    out
}

fn multipartite_thresholds() -> Outcome {
    let mut o = Outcome::new(120);
    for sizes in size_tuples(3, 5, 14) {
        let g = build_multipartite(&sizes).unwrap();
        let (_, exact) = thresholds_from_profile(&feasibility_profile(&g, DEFAULT_BUDGET).unwrap());
        let formula = equitable_threshold_multipartite(&sizes).unwrap();
        o.check(formula == exact, || {
            format!("{sizes:?}: formula {formula}, exact {exact}")
        });
    }
    o
}

fn exact_profile(spec: &ProductSpec) -> Option<(usize, usize)> {
    (spec.vertex_count() <= ORACLE_CAP)
        .then(|| thresholds_from_profile(&feasibility_profile(&build_product(spec), DEFAULT_BUDGET).unwrap()))
}

fn product_sweep(reading: Case1Reading) -> Outcome {
    let mut o = Outcome::new(600);
    for spec in product_sweep_specs() {
        let Some((chi, star)) = exact_profile(&spec) else {
            continue;
        };
        let report = equitable_threshold_product_with(&spec, reading).unwrap();
        o.check((report.chi_eq, report.chi_eq_star) == (chi, star), || {
            format!(
                "{:?} n={}: formula {}/{}, exact {}/{}",
                spec.parts(),
                spec.n(),
                report.chi_eq,
                report.chi_eq_star,
                chi,
                star
            )
        });
    }
    o
}

fn complete_graph_identity() -> Outcome {
    let mut o = Outcome::new(1);
    for n in 1..=8 {
        for m in 1..=n {
            let spec = ProductSpec::new(vec![1; m], n).unwrap();
            let v = equitable_number_product(&spec).unwrap().value;
            o.check(v == m.min(n), || format!("m={m} n={n}: {v}"));
        }
    }
    o
}

fn witness_completeness() -> Outcome {
    let mut o = Outcome::new(600);
    for spec in product_sweep_specs() {
        let report = equitable_threshold_product(&spec).unwrap();
        let g = build_product(&spec);
        let mn = spec.vertex_count();
        for k in report.chi_eq_star..=mn {
            let ok = match color_product(&spec, k, DEFAULT_BUDGET).unwrap() {
                Construction::Witness { coloring, .. } => {
                    coloring.k() == k && verify_coloring(&g, &coloring).unwrap().is_ok()
                }
                Construction::Infeasible => false,
            };
            o.check(ok, || {
                format!("{:?} n={} k={k}: no verified witness", spec.parts(), spec.n())
            });
        }
        for k in 1..report.chi_eq {
            let colorer = color_product(&spec, k, DEFAULT_BUDGET).unwrap() == Construction::Infeasible;
            let oracle = mn > ORACLE_CAP || !k_colorable(&g, k, DEFAULT_BUDGET).unwrap().feasible;
            o.check(colorer && oracle, || {
                format!("{:?} n={} k={k}: found below chi_eq", spec.parts(), spec.n())
            });
        }
    }
    o
}

fn structural_checks() -> Outcome {
    let mut o = Outcome::new(600);
    for spec in product_sweep_specs() {
        let report = equitable_threshold_product(&spec).unwrap();
        let g = build_product(&spec);
        let mn = spec.vertex_count();
        let m = spec.m();
        for k in 1..report.lin_chang_bound.min(mn + 1) {
            let mut found: Vec<Coloring> = color_product(&spec, k, DEFAULT_BUDGET)
                .unwrap()
                .coloring()
                .cloned()
                .into_iter()
                .collect();
            if mn <= ORACLE_CAP {
                found.extend(k_colorable(&g, k, DEFAULT_BUDGET).unwrap().witness);
            }
            for c in &found {
                let all_blocks = c
                    .classes()
                    .iter()
                    .filter(|cl| !cl.is_empty())
                    .all(|cl| matches!(classify_class(&spec, cl).unwrap(), ClassKind::Block(_)));
                o.check(all_blocks, || {
                    format!("{:?} n={} k={k}: non-block class", spec.parts(), spec.n())
                });
            }
        }

        let critical = mn / (m + 1);
        if critical >= 1 {
            let sizes = spec.block_sizes();
            let companion = build_multipartite(&sizes).unwrap();
            let mut found: Vec<Coloring> = color_multipartite(&sizes, critical).unwrap().into_iter().collect();
            if mn <= ORACLE_CAP {
                found.extend(k_colorable(&companion, critical, DEFAULT_BUDGET).unwrap().witness);
            }
            for c in &found {
                let ok = verify_coloring(&companion, c).unwrap().is_ok() && critical_class_sizes_ok(&spec, c).unwrap();
                o.check(ok, || {
                    format!(
                        "{:?} n={}: companion class sizes {:?}",
                        spec.parts(),
                        spec.n(),
                        c.census()
                    )
                });
            }
        }
    }
    o
}

fn chain_suite() -> Outcome {
    let mut o = Outcome::new(60);
    for spec in product_sweep_specs() {
        let report = equitable_threshold_product(&spec).unwrap();
        if report.case != ThresholdCase::Case2 {
            continue;
        }
        let label = format!("{:?} n={}", spec.parts(), spec.n());
        match increment_chain(&spec, &report) {
            Err(_) => o.check(false, || format!("{label}: chain stalled")),
            Ok(chain) => {
                let wanted: Vec<usize> = (report.chi_eq_star..report.lin_chang_bound).collect();
                let got: Vec<usize> = chain.iter().map(|sp| sp.total_count).collect();
                o.check(got == wanted, || {
                    format!("{label}: chain counts {got:?}, wanted {wanted:?}")
                });
                let companion = build_multipartite(&spec.block_sizes()).unwrap();
                let g = build_product(&spec);
                for sp in &chain {
                    let c = sp.to_coloring();
                    let ok =
                        verify_coloring(&companion, &c).unwrap().is_ok() && verify_coloring(&g, &c).unwrap().is_ok();
                    o.check(ok, || format!("{label}: step {} fails to verify", sp.total_count));
                }
            }
        }
    }
    o
}

fn determinism() -> Outcome {
    let mut o = Outcome::new(600);
    let cfg = SweepConfig::default();
    let specs = enumerate_specs(&cfg);
    let first = serde_json::to_string(&run_sweep(&specs, &cfg).unwrap()).unwrap();
    let second = serde_json::to_string(&run_sweep(&specs, &cfg).unwrap()).unwrap();
    o.check(first == second, || "sweep JSON differs between runs".into());
    o
}

fn report(number: usize, title: &str, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = run();
    let elapsed = start.elapsed();
    let slow = elapsed > o.limit;
    let pass = o.failures.is_empty() && !slow;
    println!(
        "criterion {number} {}: {title} ({} checks, {} failures, {:.2?} of {:?})",
        if pass { "PASS" } else { "FAIL" },
        o.checked,
        o.failures.len(),
        elapsed,
        o.limit
    );
    for f in o.failures.iter().take(10) {
        println!("    {f}");
    }
    if o.failures.len() > 10 {
        println!("    ... {} more", o.failures.len() - 10);
    }
    if slow {
        println!("    over the time limit");
    }
    pass
}

fn main() {
    let results = [
        report(1, "q-partition facts for 1 <= q <= n <= 200", partition_suite),
        report(
            2,
            "multipartite threshold formula vs exact search",
            multipartite_thresholds,
        ),
        report(3, "product thresholds vs exact search (floor reading)", || {
            product_sweep(Case1Reading::Floor)
        }),
        report(
            4,
            "chi_eq(K_m x K_n) = min(m, n) for m <= n <= 8",
            complete_graph_identity,
        ),
        report(
            5,
            "witnesses from chi_eq_star to mn, none below chi_eq",
            witness_completeness,
        ),
        report(
            6,
            "block classes below ceil(mn/(m+1)), companion class sizes",
            structural_checks,
        ),
        report(7, "increment chain from chi_eq_star to ceil(mn/(m+1)) - 1", chain_suite),
        report(8, "sweep JSON is byte-identical across runs", determinism),
    ];
    // Informational rerun of criterion 3 under the ceiling reading.
    let ceiling = product_sweep(Case1Reading::Ceiling);
    println!(
        "note: criterion 3 under the ceiling reading: {} of {} specs disagree",
        ceiling.failures.len(),
        ceiling.checked
    );
    for f in &ceiling.failures {
        println!("    {f}");
    }
    let failed = results.iter().filter(|&&p| !p).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
