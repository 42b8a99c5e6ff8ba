//! End-to-end self-checks on one poset: every structured result is
//! recomputed by brute force where budgets allow and the two are
//! compared. Produces a report of named checks rather than stopping at
//! the first failure.

use num::BigInt;

use crate::error::Error;
use crate::forest::{component_descent_tables, enumerate_pforests, forest_to_mis, verify_decomposition};
use crate::genfun::{count_linear_extensions, factored_fpx, fpq, fpx_duplication_path};
use crate::ideal_graph::{ideal_graph, ideals_adjacent, IdealGraph};
use crate::mis::{component_mis_lists, global_mis_from_lists, MaxIndSet};
use crate::oracle;
use crate::poset::Poset;
use crate::series::expand_factored;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
    pub millis: u64,
}

/// Resource limits for the verification passes.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub max_ideals: u64,
    pub max_mis: u64,
    pub max_extensions: u64,
    pub series_degree: u32,
    pub series_terms: usize,
    /// Cap on the number of global extensions tried per component when
    /// checking that component descents do not depend on the extension.
    pub descent_extensions: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_ideals: 1_000_000,
            max_mis: 100_000,
            max_extensions: 5_000_000,
            series_degree: 6,
            series_terms: 200_000,
            descent_extensions: 2_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            out.push_str(&format!("{tag} {}: {} ({} ms)\n", c.name, c.detail, c.millis));
        }
        out
    }
}

fn run(
    checks: &mut Vec<CheckResult>,
    name: &'static str,
    f: impl FnOnce() -> crate::error::Result<String>,
) {
    let start = std::time::Instant::now();
    let outcome = f();
    let millis = start.elapsed().as_millis() as u64;
    let result = match outcome {
        Ok(detail) => CheckResult {
            name,
            status: CheckStatus::Pass,
            detail,
            millis,
        },
        Err(e @ Error::CapExceeded { .. }) => CheckResult {
            name,
            status: CheckStatus::Skipped,
            detail: e.to_string(),
            millis,
        },
        Err(e) => CheckResult {
            name,
            status: CheckStatus::Fail,
            detail: e.to_string(),
            millis,
        },
    };
    checks.push(result);
}

fn counted(n: impl std::fmt::Display, noun: &str) -> String {
    let n = n.to_string();
    if n == "1" {
        format!("{n} {noun}")
    } else if let Some(stem) = noun.strip_suffix('y') {
        format!("{n} {stem}ies")
    } else {
        format!("{n} {noun}s")
    }
}

fn skip(checks: &mut Vec<CheckResult>, name: &'static str, why: &str) {
    checks.push(CheckResult {
        name,
        status: CheckStatus::Skipped,
        detail: why.to_string(),
        millis: 0,
    });
}

fn mismatch(check: &'static str, details: String) -> Error {
    Error::TheoremViolation { check, details }
}

fn binomial_at_most(n: u64, k: u64, cap: u128) -> bool {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap {
            return false;
        }
    }
    acc <= cap
}

/// Runs every check the budgets allow on the given poset. Inputs that
/// are not naturally labeled are relabeled first; the counting checks
/// are unaffected and the labeled ones then apply to the relabeled
/// poset.
pub fn verify_poset(input: &Poset, budgets: &Budgets) -> VerificationReport {
    let mut checks = Vec::new();

    let (p, relab) = input.natural_relabel();
    checks.push(CheckResult {
        name: "natural labeling",
        status: CheckStatus::Pass,
        detail: if relab.is_identity() {
            "input is naturally labeled".to_string()
        } else {
            "input relabeled along its first linear extension".to_string()
        },
        millis: 0,
    });

    // Connected ideal enumeration, cross-checked by subset scan.
    let mut graph: Option<IdealGraph> = None;
    run(&mut checks, "ideal enumeration", || {
        let g = ideal_graph(&p, budgets.max_ideals)?;
        let detail = if p.n() <= 20 {
            let scanned = oracle::oracle_connected_ideals(&p)?;
            let structured: Vec<_> = g.ideals().iter().map(|j| j.members().clone()).collect();
            if scanned != structured {
                return Err(mismatch(
                    "ideal enumeration",
                    format!(
                        "subset scan found {} ideals, structured enumeration {}",
                        scanned.len(),
                        structured.len()
                    ),
                ));
            }
            format!("{}, confirmed by subset scan", counted(g.vertex_count(), "ideal"))
        } else {
            format!("{}, subset scan skipped for n > 20", counted(g.vertex_count(), "ideal"))
        };
        graph = Some(g);
        Ok(detail)
    });
    let Some(g) = graph else {
        checks.sort_by_key(|c| c.name);
        return VerificationReport { checks };
    };

    run(&mut checks, "intersection adjacency", || {
        let v = g.vertex_count();
        if v > 2000 {
            return Err(Error::CapExceeded {
                stage: "adjacency re-check",
                limit: 2000,
                reached: v as u64,
            });
        }
        let mut edges = Vec::new();
        for a in 0..v as u32 {
            for b in (a + 1)..v as u32 {
                if ideals_adjacent(g.ideal(a).members(), g.ideal(b).members()) {
                    edges.push((a, b));
                }
            }
        }
        if edges != g.edges() {
            return Err(mismatch(
                "intersection adjacency",
                format!("{} edges from pair scan, {} in graph", edges.len(), g.edges().len()),
            ));
        }
        Ok(format!("{} confirmed by pair scan", counted(edges.len(), "edge")))
    });

    let lists = match component_mis_lists(&g, budgets.max_mis) {
        Ok(lists) => Some(lists),
        Err(e) => {
            run(&mut checks, "independent set sizes", || Err(e));
            None
        }
    };
    let mut globals: Option<Vec<MaxIndSet>> = None;
    if let Some(lists) = &lists {
        run(&mut checks, "independent set sizes", || {
            let gs = global_mis_from_lists(&g, lists, budgets.max_mis)?;
            let detail = format!(
                "{}, each with {}",
                counted(gs.len(), "global set"),
                counted(p.n(), "member")
            );
            globals = Some(gs);
            Ok(detail)
        });
    }

    match (&globals, g.vertex_count() <= 20) {
        (Some(gs), true) => run(&mut checks, "independent set oracle", || {
            let scanned = oracle::oracle_global_mis(&g)?;
            if &scanned != gs {
                return Err(mismatch(
                    "independent set oracle",
                    format!("subset scan found {} sets, structured {}", scanned.len(), gs.len()),
                ));
            }
            Ok(format!("{} confirmed by subset scan", counted(scanned.len(), "set")))
        }),
        (Some(_), false) => skip(
            &mut checks,
            "independent set oracle",
            "subset scan skipped for more than 20 vertices",
        ),
        (None, _) => skip(&mut checks, "independent set oracle", "no global sets available"),
    }

    if let Some(gs) = &globals {
        run(&mut checks, "bijection round trip", || {
            let forests = enumerate_pforests(&p, &g, budgets.max_mis)?;
            if forests.len() != gs.len() {
                return Err(mismatch(
                    "bijection round trip",
                    format!("{} forests from {} sets", forests.len(), gs.len()),
                ));
            }
            let mut images: Vec<MaxIndSet> = forests
                .iter()
                .map(|f| forest_to_mis(&g, f))
                .collect::<crate::error::Result<_>>()?;
            images.sort();
            if &images != gs {
                return Err(mismatch(
                    "bijection round trip",
                    "forest images do not recover the independent sets".to_string(),
                ));
            }
            if p.n() <= 8 {
                let scanned = oracle::oracle_pforests(&p)?;
                if scanned != forests {
                    return Err(mismatch(
                        "bijection round trip",
                        format!(
                            "parent-map scan found {} forests, structured {}",
                            scanned.len(),
                            forests.len()
                        ),
                    ));
                }
                Ok(format!("{}, confirmed by parent-map scan", counted(forests.len(), "forest")))
            } else {
                Ok(format!("{}, parent-map scan skipped for n > 8", counted(forests.len(), "forest")))
            }
        });
    } else {
        skip(&mut checks, "bijection round trip", "no global sets available");
    }

    let mut tables = None;
    if let Some(lists) = &lists {
        run(&mut checks, "descent tables", || {
            let t = component_descent_tables(&p, &g, lists, Some(budgets.descent_extensions))
                .or_else(|e| match e {
                    // Too many extension combinations to try them all:
                    // fall back to the unverified tables.
                    Error::CapExceeded { .. } => component_descent_tables(&p, &g, lists, None),
                    other => Err(other),
                })?;
            let entries: usize = t.iter().map(|c| c.len()).sum();
            tables = Some(t);
            Ok(format!(
                "both characterizations agree on {}",
                counted(entries, "descent entry")
            ))
        });
    } else {
        skip(&mut checks, "descent tables", "no component sets available");
    }

    let gf = match (&lists, &tables) {
        (Some(lists), Some(tables)) => factored_fpx(&p, &g, lists, tables).ok(),
        _ => None,
    };

    let mut extension_count: Option<BigInt> = None;
    if let Some(lists) = &lists {
        run(&mut checks, "count formula", || {
            let count = count_linear_extensions(&g, lists)?;
            let detail = if count <= BigInt::from(budgets.max_extensions) {
                let direct = oracle::oracle_extension_count(&p, budgets.max_extensions)?;
                if BigInt::from(direct) != count {
                    return Err(mismatch(
                        "count formula",
                        format!("product formula gives {count}, direct enumeration {direct}"),
                    ));
                }
                format!("{}, confirmed by direct enumeration", counted(&count, "extension"))
            } else {
                format!("{}, too many to enumerate directly", counted(&count, "extension"))
            };
            extension_count = Some(count);
            Ok(detail)
        });
    } else {
        skip(&mut checks, "count formula", "no component sets available");
    }

    if let Some(gf) = &gf {
        run(&mut checks, "q-polynomial vs extensions", || {
            let poly = fpq(gf)?;
            if let Some(count) = &extension_count {
                if &poly.eval_one() != count {
                    return Err(mismatch(
                        "q-polynomial vs extensions",
                        format!(
                            "value at q = 1 is {}, count formula gives {count}",
                            poly.eval_one()
                        ),
                    ));
                }
            }
            let feasible = extension_count
                .as_ref()
                .is_some_and(|c| c <= &BigInt::from(budgets.max_extensions));
            if feasible {
                let direct = oracle::oracle_maj_polynomial(&p, budgets.max_extensions)?;
                if direct != poly {
                    return Err(mismatch(
                        "q-polynomial vs extensions",
                        "major-index distribution differs from direct enumeration".to_string(),
                    ));
                }
                Ok("matches the major-index distribution over all extensions".to_string())
            } else {
                Ok("value at q = 1 matches the count formula".to_string())
            }
        });
    } else {
        skip(&mut checks, "q-polynomial vs extensions", "no factored form available");
    }

    if let Some(gf) = &gf {
        let feasible = binomial_at_most(
            (p.n() + budgets.series_degree) as u64,
            budgets.series_degree as u64,
            2_000_000,
        );
        if feasible {
            run(&mut checks, "series expansion", || {
                let expanded = expand_factored(gf, budgets.series_degree, budgets.series_terms)?;
                let scanned = oracle::oracle_ppartition_series(&p, budgets.series_degree)?;
                if expanded != scanned {
                    return Err(mismatch(
                        "series expansion",
                        "expanded coefficients differ from value-vector counts".to_string(),
                    ));
                }
                Ok(format!(
                    "{} up to total degree {} confirmed",
                    counted(expanded.term_count(), "coefficient"),
                    budgets.series_degree
                ))
            });
        } else {
            skip(
                &mut checks,
                "series expansion",
                "too many value vectors at this degree",
            );
        }
    } else {
        skip(&mut checks, "series expansion", "no factored form available");
    }

    if g.is_forest_with_duplications() {
        if let Some(gf) = &gf {
            run(&mut checks, "duplication-path form", || {
                let alt = fpx_duplication_path(&p, &g)?;
                let a = fpq(&alt)?;
                let b = fpq(gf)?;
                if a != b {
                    return Err(mismatch(
                        "duplication-path form",
                        "the two factored forms specialize differently".to_string(),
                    ));
                }
                let sa = expand_factored(&alt, budgets.series_degree.min(4), budgets.series_terms)?;
                let sb = expand_factored(gf, budgets.series_degree.min(4), budgets.series_terms)?;
                if sa != sb {
                    return Err(mismatch(
                        "duplication-path form",
                        "the two factored forms expand differently".to_string(),
                    ));
                }
                Ok("agrees with the component-sum form".to_string())
            });
        } else {
            skip(&mut checks, "duplication-path form", "no factored form available");
        }
    } else {
        skip(
            &mut checks,
            "duplication-path form",
            "graph has a vertex of degree 2 or more",
        );
    }

    let small_count = extension_count
        .as_ref()
        .is_some_and(|c| c <= &BigInt::from(budgets.max_extensions));
    if small_count {
        run(&mut checks, "extension decomposition", || {
            let report = verify_decomposition(
                &p,
                budgets.max_ideals,
                budgets.max_mis,
                budgets.max_extensions,
            )?;
            Ok(format!(
                "{} split across {}",
                counted(report.total, "extension"),
                counted(report.forests.len(), "forest")
            ))
        });
    } else {
        skip(
            &mut checks,
            "extension decomposition",
            "too many extensions to enumerate",
        );
    }

    checks.sort_by_key(|c| c.name);
    VerificationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::sample6;

    #[test]
    fn all_checks_pass_on_small_posets() {
        for p in [
            sample6(),
            Poset::new(1, &[]).unwrap(),
            Poset::new(4, &[]).unwrap(),
            Poset::new(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]).unwrap(),
            Poset::new(4, &[(2, 1), (3, 1), (4, 1)]).unwrap(),
        ] {
            let report = verify_poset(&p, &Budgets::default());
            assert!(report.passed(), "{}", report.render());
            assert!(report
                .checks
                .iter()
                .any(|c| c.status == CheckStatus::Pass));
        }
    }

    #[test]
    fn report_is_sorted_and_renders_every_check() {
        let report = verify_poset(&sample6(), &Budgets::default());
        let names: Vec<_> = report.checks.iter().map(|c| c.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        let text = report.render();
        for name in names {
            assert!(text.contains(name));
        }
    }

    #[test]
    fn seeded_posets_verify() {
        for seed in 0..10u64 {
            let p = oracle::random_poset(6, 0.3, seed);
            let report = verify_poset(&p, &Budgets::default());
            assert!(report.passed(), "seed {seed}:\n{}", report.render());
        }
    }
}
