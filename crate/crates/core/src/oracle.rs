// Copyright 2026 The fumine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Reference miners used to verify the pattern-growth search.
//!
//! [`brute_force_mine`] walks every f-sequence contained somewhere in the
//! database and evaluates it with the definitional engine in
//! [`crate::fuzzy`]. [`pfus_like_mine`] is a level-wise generate-and-test
//! baseline in the AprioriAll style that prunes only with the
//! sum-of-MFSU bound; it evaluates patterns with its own dynamic program over
//! the f-matrices. Neither touches fuzzy utility chains.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyEngine;
use crate::miner::{meets, validate_xi, MiningResult, MiningStats, Pattern};
use crate::model::{FItem, FSequence, MembershipFunction, QDatabase};
use crate::structures::{build_fmatrix_set, FMatrix, FMatrixSet};

pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    pub xi: f64,
    /// Longest pattern enumerated.
    pub max_length: usize,
    /// Abort after this many evaluated patterns.
    pub node_budget: u64,
}

impl OracleConfig {
    pub fn new(xi: f64, max_length: usize) -> Self {
        OracleConfig {
            xi,
            max_length,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    /// A length cap that can never cut a contained pattern.
    pub fn complete(xi: f64, db: &QDatabase) -> Self {
        let longest = db.sequences().iter().map(|s| s.length()).max().unwrap_or(1);
        OracleConfig::new(xi, longest.max(1))
    }

    fn validate(&self) -> Result<()> {
        validate_xi(self.xi)?;
        if self.max_length == 0 {
            return Err(Error::Config("max_length must be at least 1".into()));
        }
        Ok(())
    }
}

/// F-items with a positive degree in at least one q-item of `db`.
fn fuzzy_alphabet(db: &QDatabase, mf: &MembershipFunction) -> Vec<FItem> {
    let mut seen = HashSet::new();
    for qs in db.sequences() {
        for (_, _, q) in qs.flat() {
            let u = crate::model::utility_of_qitem(q, db.utility_table()).unwrap_or(0.0);
            for (r, &d) in mf.fuzzify(u).degrees().iter().enumerate() {
                if d > 0.0 {
                    seen.insert(FItem::new(q.item, r));
                }
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

/// Exhaustive enumeration; the only pruning is that a pattern contained in
/// no sequence (and hence every extension of it) is skipped.
pub fn brute_force_mine(
    db: &QDatabase,
    mf: &MembershipFunction,
    cfg: &OracleConfig,
) -> Result<MiningResult> {
    cfg.validate()?;
    let start = Instant::now();
    let eng = FuzzyEngine::for_database(db, mf);
    let alphabet = fuzzy_alphabet(db, mf);
    let threshold = db.total_utility() * cfg.xi;
    let all: Vec<usize> = (0..db.len()).collect();

    let mut result = MiningResult::default();
    let mut stack: Vec<(FSequence, Vec<usize>)> = alphabet
        .iter()
        .rev()
        .map(|&f| (FSequence::single(f), all.clone()))
        .collect();
    while let Some((fs, parents)) = stack.pop() {
        let mut containing = Vec::new();
        let mut fu = 0.0;
        for &s in &parents {
            let v = eng.fu_in_sequence(&fs, &db.sequences()[s]);
            if v > 0.0 {
                containing.push(s);
                fu += v;
            }
        }
        if containing.is_empty() {
            continue;
        }
        result.stats.candidates += 1;
        if result.stats.candidates > cfg.node_budget {
            return Err(Error::BudgetExceeded(cfg.node_budget));
        }
        if meets(fu, threshold) {
            result.patterns.push(Pattern {
                sequence: fs.clone(),
                fu,
            });
        }
        if fs.len() >= cfg.max_length {
            continue;
        }
        let last = fs.last_item().item;
        for &f in alphabet.iter().rev() {
            stack.push((fs.s_extend(f), containing.clone()));
            if f.item > last {
                stack.push((fs.i_extend(f).unwrap(), containing.clone()));
            }
        }
    }
    result.sort();
    result.stats.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(result)
}

/// Best instance utility of `fs` in one f-matrix by dynamic programming over
/// itemsets; 0 when not contained.
fn dp_fu(fs: &FSequence, m: &FMatrix) -> f64 {
    let n = m.itemset_count();
    let mut prev = vec![0.0f64; n + 1];
    for (v, fx) in fs.itemsets().iter().enumerate() {
        let mut cur = vec![f64::NEG_INFINITY; n + 1];
        // best over itemsets < j of the previous layer
        let mut carry = if v == 0 { 0.0 } else { f64::NEG_INFINITY };
        for j in 1..=n {
            if v > 0 {
                carry = carry.max(prev[j - 1]);
            }
            let mut here = 0.0;
            let mut ok = carry > f64::NEG_INFINITY;
            for fi in fx.items() {
                if !ok {
                    break;
                }
                match m.cell(fi.item, j as u32) {
                    Some(c) if c.degrees.degree(fi.region()) > 0.0 => here += c.fu(fi.region()),
                    _ => ok = false,
                }
            }
            if ok {
                cur[j] = carry + here;
            }
        }
        prev = cur;
    }
    let best = prev[1..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if best.is_finite() {
        best
    } else {
        0.0
    }
}

struct Evaluated {
    containing: Vec<u32>,
    fu: f64,
    bound: f64,
}

fn evaluate(fs: &FSequence, among: &[u32], fms: &FMatrixSet) -> Evaluated {
    let mut e = Evaluated {
        containing: Vec::new(),
        fu: 0.0,
        bound: 0.0,
    };
    for &s in among {
        let v = dp_fu(fs, fms.matrix(s));
        if v > 0.0 {
            e.containing.push(s);
            e.fu += v;
            e.bound += fms.mfsu(s);
        }
    }
    e
}

/// Level-wise baseline. Level `k` candidates join a surviving
/// `(k-1)`-pattern with a surviving f-item and must have every one-item
/// deletion among the `(k-1)`-survivors; survivors are candidates whose
/// sum-of-MFSU bound reaches the threshold.
pub fn pfus_like_mine(
    db: &QDatabase,
    mf: &MembershipFunction,
    xi: f64,
    node_budget: u64,
) -> Result<MiningResult> {
    validate_xi(xi)?;
    let start = Instant::now();
    let fms = build_fmatrix_set(db, mf);
    let threshold = db.total_utility() * xi;
    let all: Vec<u32> = (0..fms.len() as u32).collect();
    let mut stats = MiningStats::default();
    let mut patterns = Vec::new();

    let charge = |stats: &mut MiningStats| -> Result<()> {
        stats.candidates += 1;
        if stats.candidates > node_budget {
            return Err(Error::BudgetExceeded(node_budget));
        }
        Ok(())
    };

    let mut level: HashMap<FSequence, Vec<u32>> = HashMap::new();
    let mut singles = Vec::new();
    for f in fuzzy_alphabet(db, mf) {
        let fs = FSequence::single(f);
        charge(&mut stats)?;
        let e = evaluate(&fs, &all, &fms);
        if meets(e.fu, threshold) && e.fu > 0.0 {
            patterns.push(Pattern {
                sequence: fs.clone(),
                fu: e.fu,
            });
        }
        if meets(e.bound, threshold) && !e.containing.is_empty() {
            singles.push(f);
            level.insert(fs, e.containing);
        }
    }

    while !level.is_empty() {
        let mut parents: Vec<_> = level.keys().cloned().collect();
        parents.sort();
        let mut next = HashMap::new();
        for p in &parents {
            let among = &level[p];
            let last = p.last_item().item;
            for &f in &singles {
                let mut kids = vec![p.s_extend(f)];
                if f.item > last {
                    kids.push(p.i_extend(f).unwrap());
                }
                for c in kids {
                    if !c.one_deletions().iter().all(|d| level.contains_key(d)) {
                        continue;
                    }
                    charge(&mut stats)?;
                    let e = evaluate(&c, among, &fms);
                    if e.containing.is_empty() {
                        continue;
                    }
                    if meets(e.fu, threshold) {
                        patterns.push(Pattern {
                            sequence: c.clone(),
                            fu: e.fu,
                        });
                    }
                    if meets(e.bound, threshold) {
                        next.insert(c, e.containing);
                    }
                }
            }
        }
        level = next;
    }

    let mut result = MiningResult { patterns, stats };
    result.sort();
    result.stats.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(result)
}

/// Differences between two mining results.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComparisonReport {
    pub only_in_a: Vec<FSequence>,
    pub only_in_b: Vec<FSequence>,
    /// Largest |fu_a - fu_b| over the common patterns.
    pub max_delta: f64,
    pub tolerance: f64,
}

impl ComparisonReport {
    pub fn agrees(&self) -> bool {
        self.only_in_a.is_empty() && self.only_in_b.is_empty() && self.max_delta <= self.tolerance
    }
}

pub fn compare_results(a: &MiningResult, b: &MiningResult, tol: f64) -> ComparisonReport {
    let fa: HashMap<&FSequence, f64> = a.patterns.iter().map(|p| (&p.sequence, p.fu)).collect();
    let fb: HashMap<&FSequence, f64> = b.patterns.iter().map(|p| (&p.sequence, p.fu)).collect();
    let mut report = ComparisonReport {
        tolerance: tol,
        ..Default::default()
    };
    for p in &a.patterns {
        match fb.get(&p.sequence) {
            Some(v) => report.max_delta = report.max_delta.max((p.fu - v).abs()),
            None => report.only_in_a.push(p.sequence.clone()),
        }
    }
    for p in &b.patterns {
        if !fa.contains_key(&p.sequence) {
            report.only_in_b.push(p.sequence.clone());
        }
    }
    report.only_in_a.sort();
    report.only_in_b.sort();
    report
}
