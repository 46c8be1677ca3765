//! Built-in invariant suites, surfaced by the CLI `selftest` subcommand.

use crate::dendriform::{dend_left_names, dend_right_names, star, star_names};
use crate::error::{Error, Result};
use crate::freeprob::{
    composition_chain, evaluate_partition, fold_chain, generator_word, FormalSystem, FreeFamily,
};
use crate::grove::Grove;
use crate::name::{dagger, enumerate_names, is_name, name_of, tree_of, vee, CandidateVec, Name};
use crate::ncp::{enumerate_nc, from_partition, to_partition};
use crate::tamari::{leq, mobius_closed, mobius_poset};
use crate::tree::graft_trees;
use std::fmt;

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub detail: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub degree: usize,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(|s| s.pass)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(
                f,
                "{} {} ({})",
                if s.pass { "pass" } else { "FAIL" },
                s.name,
                s.detail
            )?;
        }
        let passed = self.suites.iter().filter(|s| s.pass).count();
        write!(
            f,
            "{}/{} suites passed up to degree {}",
            passed,
            self.suites.len(),
            self.degree
        )
    }
}

fn catalan(n: usize) -> u64 {
    let mut c = vec![1u64];
    for d in 1..=n {
        c.push((0..d).map(|i| c[i] * c[d - 1 - i]).sum());
    }
    c[n]
}

fn all_candidates(n: usize) -> Vec<CandidateVec> {
    let mut out = vec![Vec::new()];
    for i in 1..=n as u32 {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=i).map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|v| CandidateVec::new(v).expect("bounds hold"))
        .collect()
}

/// Runs the invariant suites up to the given degree (capped at 8 to keep
/// the run desk-sized).
pub fn run(max_degree: usize) -> Result<SelftestReport> {
    if max_degree > 8 {
        return Err(Error::Parse(format!(
            "selftest degree {max_degree} exceeds the supported bound 8"
        )));
    }
    let mut suites: Vec<SuiteResult> = Vec::new();

    suites.push(suite("catalan census", {
        let mut count = 0usize;
        let mut failure = None;
        for n in 0..=max_degree {
            let names = enumerate_names(n);
            count += names.len();
            if names.len() as u64 != catalan(n) {
                failure = Some(format!("wrong count at degree {n}"));
            }
        }
        failure.map_or(
            Ok(format!("{count} names across degrees 0..={max_degree}")),
            Err,
        )
    }));

    suites.push(suite("coding round trip", {
        let cap = max_degree.min(6);
        let mut decoded = 0usize;
        let mut failure = None;
        for n in 0..=cap {
            for v in enumerate_names(n) {
                if name_of(&tree_of(&v.as_candidate())) != v {
                    failure = Some(format!("round trip broke at {v}"));
                }
            }
            for c in all_candidates(n) {
                decoded += 1;
                let v = name_of(&tree_of(&c));
                if !is_name(&v.as_candidate()) {
                    failure = Some(format!("decode of {c} gave a non-name"));
                }
            }
        }
        failure.map_or(
            Ok(format!(
                "{decoded} candidate vectors decoded, degrees 0..={cap}"
            )),
            Err,
        )
    }));

    suites.push(suite("grafting morphism", {
        let cap = max_degree.min(4);
        let mut pairs = 0usize;
        let mut failure = None;
        for a in 0..=cap {
            for b in 0..=cap - a {
                for l in enumerate_names(a) {
                    for r in enumerate_names(b) {
                        pairs += 1;
                        let grafted =
                            graft_trees(tree_of(&l.as_candidate()), tree_of(&r.as_candidate()));
                        if name_of(&grafted) != vee(&l, &r) {
                            failure = Some(format!("graft mismatch at {l}, {r}"));
                        }
                    }
                }
            }
        }
        failure.map_or(Ok(format!("{pairs} grafts checked")), Err)
    }));

    suites.push(suite("involution", {
        let mut checked = 0usize;
        let mut failure = None;
        for n in 0..=max_degree {
            for v in enumerate_names(n) {
                checked += 1;
                if dagger(&dagger(&v)) != v {
                    failure = Some(format!("dagger not involutive at {v}"));
                }
            }
        }
        let cap = max_degree.min(5);
        for n in 1..=cap {
            let names = enumerate_names(n);
            for v in &names {
                for w in &names {
                    let forward = leq(v, w).expect("equal degrees");
                    let reversed = leq(&dagger(w), &dagger(v)).expect("equal degrees");
                    if forward != reversed {
                        failure = Some(format!("anti-automorphism broke at {v}, {w}"));
                    }
                }
            }
        }
        failure.map_or(
            Ok(format!(
                "{checked} names, order reversal up to degree {cap}"
            )),
            Err,
        )
    }));

    suites.push(suite("möbius closed form", {
        let cap = max_degree.min(5);
        let mut checked = 0usize;
        let mut failure = None;
        for n in 0..=cap {
            let min = Name::left_comb(n);
            for v in enumerate_names(n) {
                checked += 1;
                match mobius_poset(&min, &v) {
                    Ok(mu) if mu == mobius_closed(&v) => {}
                    _ => failure = Some(format!("closed form disagrees at {v}")),
                }
            }
        }
        failure.map_or(
            Ok(format!("{checked} values against the poset recursion")),
            Err,
        )
    }));

    suites.push(suite("grove addition", {
        let total_cap = max_degree.saturating_sub(1).min(5);
        let mut failure = None;
        for n in 0..=total_cap {
            if star(&Grove::total(n), &Grove::total(1)) != Grove::total(n + 1) {
                failure = Some(format!("total grove recursion broke at degree {n}"));
            }
        }
        let split_cap = max_degree.min(4);
        let mut splits = 0usize;
        for a in 1..split_cap.max(2) {
            for b in 1..=(split_cap - a).max(1) {
                for v in enumerate_names(a) {
                    for w in enumerate_names(b) {
                        splits += 1;
                        let left = dend_left_names(&v, &w).expect("nonzero degrees");
                        let right = dend_right_names(&v, &w).expect("nonzero degrees");
                        let sum = star_names(&v, &w);
                        let disjoint = left.len() + right.len() == sum.len();
                        if !disjoint || left.union(&right).expect("one degree") != sum {
                            failure = Some(format!("split broke at {v}, {w}"));
                        }
                    }
                }
            }
        }
        failure.map_or(
            Ok(format!(
                "total groves to degree {}, {splits} splits",
                total_cap + 1
            )),
            Err,
        )
    }));

    suites.push(suite("noncrossing bijection", {
        let mut checked = 0usize;
        let mut failure = None;
        for n in 1..=max_degree {
            match enumerate_nc(n) {
                Ok(all) if all.len() as u64 == catalan(n) => {}
                _ => failure = Some(format!("partition census broke at {n}")),
            }
            for v in enumerate_names(n) {
                checked += 1;
                let t = tree_of(&v.as_candidate());
                match to_partition(&t) {
                    Ok(p) if from_partition(&p) == t => {}
                    _ => failure = Some(format!("bijection broke at {v}")),
                }
            }
        }
        failure.map_or(
            Ok(format!("{checked} trees through the partition round trip")),
            Err,
        )
    }));

    suites.push(suite("operad chains", {
        let cap = max_degree.min(5);
        let mut checked = 0usize;
        let mut failure = None;
        let sys = FormalSystem;
        let fam = FreeFamily;
        for n in 1..=cap {
            let word = generator_word(n);
            for p in enumerate_nc(n).unwrap_or_default() {
                checked += 1;
                let direct = evaluate_partition(&sys, &fam, &p, &word);
                let chained =
                    fold_chain(&composition_chain(&p)).and_then(|c| c.apply(&sys, &fam, &word));
                if direct.is_err() || direct.ok() != chained.ok() {
                    failure = Some(format!("chain disagreed at {p}"));
                }
            }
        }
        failure.map_or(
            Ok(format!("{checked} partitions, chains match evaluation")),
            Err,
        )
    }));

    Ok(SelftestReport {
        degree: max_degree,
        suites,
    })
}

fn suite(name: &'static str, outcome: std::result::Result<String, String>) -> SuiteResult {
    match outcome {
        Ok(detail) => SuiteResult {
            name,
            detail,
            pass: true,
        },
        Err(detail) => SuiteResult {
            name,
            detail,
            pass: false,
        },
    }
}
