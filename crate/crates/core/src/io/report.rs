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

//! Plain `key: value` statistics reports.

use std::fmt::Write as _;

use crate::miner::MiningStats;
use crate::model::QDatabase;

/// Shape of a database, recomputed from its content.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetDescriptors {
    /// |D|
    pub sequences: usize,
    /// |I|, items occurring at least once.
    pub distinct_items: usize,
    /// avg(S): q-items per sequence.
    pub avg_seq_length: f64,
    /// max(S)
    pub max_seq_length: usize,
    pub avg_itemsets_per_seq: f64,
    pub avg_items_per_itemset: f64,
}

impl DatasetDescriptors {
    pub fn of(db: &QDatabase) -> Self {
        let mut seen = vec![false; db.utility_table().len()];
        let (mut qitems, mut itemsets, mut longest) = (0usize, 0usize, 0usize);
        for qs in db.sequences() {
            qitems += qs.length();
            itemsets += qs.size();
            longest = longest.max(qs.length());
            for qx in qs.itemsets() {
                for q in qx.items() {
                    seen[q.item.index()] = true;
                }
            }
        }
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        DatasetDescriptors {
            sequences: db.len(),
            distinct_items: seen.iter().filter(|&&s| s).count(),
            avg_seq_length: ratio(qitems, db.len()),
            max_seq_length: longest,
            avg_itemsets_per_seq: ratio(itemsets, db.len()),
            avg_items_per_itemset: ratio(qitems, itemsets),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsReport {
    pub stats: MiningStats,
    pub dataset: DatasetDescriptors,
    /// Echo of the run configuration, rendered in order.
    pub config: Vec<(String, String)>,
    pub patterns: usize,
}

impl StatsReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k}: {v}");
        };
        for (k, v) in &self.config {
            kv(k, v);
        }
        let d = &self.dataset;
        kv("sequences", &d.sequences);
        kv("distinct_items", &d.distinct_items);
        kv("avg_seq_length", &format!("{:.4}", d.avg_seq_length));
        kv("max_seq_length", &d.max_seq_length);
        kv(
            "avg_itemsets_per_seq",
            &format!("{:.4}", d.avg_itemsets_per_seq),
        );
        kv(
            "avg_items_per_itemset",
            &format!("{:.4}", d.avg_items_per_itemset),
        );
        let s = &self.stats;
        kv("patterns", &self.patterns);
        kv("candidates", &s.candidates);
        kv("chains_built", &s.chains_built);
        kv("pruned_ppo", &s.pruned_ppo);
        kv("pruned_eud", &s.pruned_eud);
        kv("pruned_pes", &s.pruned_pes);
        kv("peak_live_elements", &s.peak_live_elements);
        kv("runtime_ms", &s.runtime_ms);
        out
    }
}

/// Report text with the `runtime_ms` line removed, for comparing runs.
pub fn without_runtime(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.starts_with("runtime_ms:"))
        .map(|l| format!("{l}\n"))
        .collect()
}
