//! Cross-checks of the four counting routes: exhaustive search, extension
//! tables, functional-equation iteration and closed forms.

use std::fmt::Write;

use num_bigint::BigUint;

use crate::closed::{length_series_closed, triangular_box_formula};
use crate::equations::length_series;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{enumerate_counts_with, enumerate_tri_by_box_with, WalkClass};
use crate::sampler::{l_children, ExtTable, Label, Rule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    BruteForce,
    ExtTable,
    Iteration,
    ClosedForm,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::BruteForce => "brute-force",
            Route::ExtTable => "ext-table",
            Route::Iteration => "iteration",
            Route::ClosedForm => "closed-form",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RouteCounts {
    pub route: Route,
    /// Counts for lengths `0..values.len()`.
    pub values: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Divergence {
    pub class: WalkClass,
    pub n: usize,
    pub values: Vec<(Route, BigUint)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassReport {
    pub class: WalkClass,
    pub routes: Vec<RouteCounts>,
    pub divergence: Option<Divergence>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxCheck {
    pub k: usize,
    pub agree: bool,
    pub oracle_total: BigUint,
    pub formula_total: BigUint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub classes: Vec<ClassReport>,
    pub boxes: Vec<BoxCheck>,
}

impl VerifyReport {
    pub fn all_agree(&self) -> bool {
        self.classes.iter().all(|c| c.divergence.is_none()) && self.boxes.iter().all(|b| b.agree)
    }

    pub fn first_divergence(&self) -> Option<&Divergence> {
        self.classes.iter().find_map(|c| c.divergence.as_ref())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.classes {
            let ranges: Vec<String> =
                c.routes.iter().map(|r| format!("{} n<={}", r.route.name(), r.values.len() as i64 - 1)).collect();
            let status = match &c.divergence {
                None => "agree".to_string(),
                Some(d) => {
                    let v: Vec<String> = d.values.iter().map(|(r, x)| format!("{}={x}", r.name())).collect();
                    format!("MISMATCH at n={}: {}", d.n, v.join(", "))
                }
            };
            let _ = writeln!(s, "{:<12} {:<60} {status}", c.class.name(), ranges.join(", "));
        }
        for b in &self.boxes {
            let _ = writeln!(
                s,
                "triangular box k={} oracle={} formula={} {}",
                b.k,
                b.oracle_total,
                b.formula_total,
                if b.agree { "agree" } else { "MISMATCH" }
            );
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let classes: Vec<_> = self
            .classes
            .iter()
            .map(|c| {
                let routes: serde_json::Map<String, serde_json::Value> = c
                    .routes
                    .iter()
                    .map(|r| (r.route.name().to_string(), r.values.iter().map(|v| v.to_string()).collect()))
                    .collect();
                serde_json::json!({
                    "class": c.class.name(),
                    "agree": c.divergence.is_none(),
                    "routes": routes,
                    "first_divergence": c.divergence.as_ref().map(|d| serde_json::json!({
                        "n": d.n,
                        "values": d.values.iter().map(|(r, v)| (r.name().to_string(), serde_json::Value::from(v.to_string()))).collect::<serde_json::Map<_, _>>(),
                    })),
                })
            })
            .collect();
        let boxes: Vec<_> = self
            .boxes
            .iter()
            .map(|b| serde_json::json!({"k": b.k, "agree": b.agree, "oracle": b.oracle_total.to_string(), "formula": b.formula_total.to_string()}))
            .collect();
        serde_json::json!({ "all_agree": self.all_agree(), "classes": classes, "triangular_boxes": boxes })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest length for exhaustive search.
    pub oracle_n: usize,
    /// Largest length for extension-table totals.
    pub table_n: usize,
    /// Truncation order for iteration and closed forms.
    pub series_order: usize,
    /// Largest length for the Prudent4 iteration, which is the costliest route.
    pub prudent4_order: usize,
    /// Largest box size for the triangular box check.
    pub box_k: usize,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle_n: 12,
            table_n: 40,
            series_order: 60,
            prudent4_order: 60,
            box_k: 4,
            exec: Execution::default(),
        }
    }
}

/// First length at which the routes disagree on their common range.
pub fn first_divergence(class: WalkClass, routes: &[RouteCounts]) -> Option<Divergence> {
    let max = routes.iter().map(|r| r.values.len()).max().unwrap_or(0);
    for n in 0..max {
        let vals: Vec<(Route, BigUint)> =
            routes.iter().filter_map(|r| r.values.get(n).map(|v| (r.route, v.clone()))).collect();
        if vals.windows(2).any(|w| w[0].1 != w[1].1) {
            return Some(Divergence { class, n, values: vals });
        }
    }
    None
}

fn series_counts(s: &crate::series::TSeries<crate::series::Int>) -> Result<Vec<BigUint>> {
    s.coeffs().iter().map(|c| c.to_biguint().ok_or_else(|| Error::invalid("negative count"))).collect()
}

/// Extension-table root totals for lengths `0..=n` under a given L-rule.
pub fn table_counts(class: WalkClass, n: usize, exec: Execution, rule: &Rule) -> Result<Vec<BigUint>> {
    (0..=n).map(|m| ExtTable::build_with_rule(class, m, exec, u64::MAX, rule).map(|t| t.total().clone())).collect()
}

/// All four routes for one class, with the table route driven by `rule`.
pub fn verify_class_with_rule(class: WalkClass, opts: &VerifyOptions, rule: &Rule) -> Result<ClassReport> {
    let exec = opts.exec;
    let order =
        if class == WalkClass::Prudent4 { opts.series_order.min(opts.prudent4_order) } else { opts.series_order };
    let oracle_n = match class {
        WalkClass::Prudent4 | WalkClass::Triangular => opts.oracle_n.min(12),
        _ => opts.oracle_n,
    };
    let mut routes = vec![
        RouteCounts { route: Route::BruteForce, values: enumerate_counts_with(class, oracle_n, exec) },
        RouteCounts { route: Route::ExtTable, values: table_counts(class, opts.table_n, exec, rule)? },
        RouteCounts { route: Route::Iteration, values: series_counts(&length_series(class, order)?)? },
    ];
    match length_series_closed(class, opts.series_order) {
        Ok(s) => routes.push(RouteCounts { route: Route::ClosedForm, values: series_counts(&s)? }),
        Err(Error::NotAvailable(_)) => {}
        Err(e) => return Err(e),
    }
    let divergence = first_divergence(class, &routes);
    Ok(ClassReport { class, routes, divergence })
}

pub fn verify_class(class: WalkClass, opts: &VerifyOptions) -> Result<ClassReport> {
    verify_class_with_rule(class, opts, &move |l: &Label| l_children(class, l))
}

/// Exhaustive box-spanning counts against the closed formula.
pub fn verify_boxes(k_max: usize, exec: Execution) -> Vec<BoxCheck> {
    (0..=k_max)
        .map(|k| {
            let oracle = enumerate_tri_by_box_with(k, exec);
            let formula = triangular_box_formula(k);
            BoxCheck {
                k,
                agree: oracle.total == formula.total && oracle.right_edge == formula.right_edge,
                oracle_total: oracle.total,
                formula_total: formula.total,
            }
        })
        .collect()
}

/// Runs every cross-check.
pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let classes = WalkClass::ALL.iter().map(|&c| verify_class(c, opts)).collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { classes, boxes: verify_boxes(opts.box_k, opts.exec) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::Kind;

    fn small() -> VerifyOptions {
        VerifyOptions { oracle_n: 9, table_n: 12, series_order: 14, prudent4_order: 12, box_k: 3, ..Default::default() }
    }

    #[test]
    fn small_verify_agrees() {
        let r = run_verify(&small()).unwrap();
        assert!(r.all_agree(), "{}", r.to_text());
        assert_eq!(r.classes.len(), 5);
        assert!(r.to_json()["all_agree"].as_bool().unwrap());
    }

    #[test]
    fn corrupted_rule_is_caught_at_first_affected_length() {
        // Drops the C child of 2-sided labels (I;i) with i >= 1. (I;1) first appears at depth 2,
        // so counts change from length 3 on.
        let class = WalkClass::TwoSided;
        let rule = move |l: &Label| -> Result<Vec<Label>> {
            let mut ch = l_children(class, l)?;
            if l.kind == Kind::I && l.i >= 1 {
                ch.retain(|c| c.kind != Kind::C);
            }
            Ok(ch)
        };
        let r = verify_class_with_rule(class, &small(), &rule).unwrap();
        let d = r.divergence.unwrap();
        assert_eq!(d.n, 3);
        assert!(d.values.iter().any(|(route, v)| *route == Route::ExtTable && v < &BigUint::from(26u32)));
    }

    #[test]
    fn box_formula_matches_oracle() {
        assert!(verify_boxes(4, Execution::default()).iter().all(|b| b.agree));
    }
}
