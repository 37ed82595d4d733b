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

//! Pattern-growth search over the fuzzy extension tree.
//!
//! Every 1-f-sequence is a root. A node's children are its I- and
//! S-extensions, discovered by scanning the node's fuzzy utility chain.
//! Three bounds gate the search:
//!
//! * HFSUUB (sum of MFSU over containing sequences) cuts whole roots,
//! * EIFU (prefix SDFU over sequences holding the extension) skips an
//!   extension before its chain is built,
//! * SDFU (best fu + remaining per sequence) stops descending below a node.
//!
//! The result never depends on which gates are enabled; only the amount of
//! work does.

mod bounds;

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{FItem, FSequence, MembershipFunction, QDatabase};
use crate::structures::{
    build_fmatrix_set, build_initial_chains, project_unchecked, ExtensionKind, FMatrixSet,
    FuzzyUtilityChain,
};

pub use bounds::{eifu_of_extensions, enumerate_extensions, hfsuub, sdfu, ExtensionScan};
pub(crate) use bounds::{hfsuub_of_chain, scan_extensions_with, ScanScratch};

/// Absolute tolerance of every threshold comparison.
pub const TOLERANCE: f64 = 1e-9;

/// `value >= threshold` up to [`TOLERANCE`].
#[inline]
pub fn meets(value: f64, threshold: f64) -> bool {
    value >= threshold - TOLERANCE
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiningConfig {
    /// Minimum fuzzy utility ratio, in (0, 1].
    pub xi: f64,
    pub enable_ppo: bool,
    pub enable_eud: bool,
    pub enable_pes: bool,
    pub max_length: Option<usize>,
    /// Worker threads for root subtrees; 0 mines sequentially.
    pub parallel_width: usize,
}

impl MiningConfig {
    pub fn new(xi: f64) -> Self {
        MiningConfig {
            xi,
            enable_ppo: true,
            enable_eud: true,
            enable_pes: true,
            max_length: None,
            parallel_width: 0,
        }
    }

    pub fn with_pruning(mut self, ppo: bool, eud: bool, pes: bool) -> Self {
        self.enable_ppo = ppo;
        self.enable_eud = eud;
        self.enable_pes = pes;
        self
    }

    pub fn validate(&self) -> Result<()> {
        validate_xi(self.xi)?;
        if self.max_length == Some(0) {
            return Err(Error::Config("max_length must be at least 1".into()));
        }
        Ok(())
    }
}

pub(crate) fn validate_xi(xi: f64) -> Result<()> {
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::Config(format!(
            "minimum fuzzy utility ratio must lie in (0, 1], got {xi}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    pub sequence: FSequence,
    pub fu: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MiningStats {
    /// Patterns whose fuzzy utility was evaluated.
    pub candidates: u64,
    pub chains_built: u64,
    pub pruned_ppo: u64,
    pub pruned_eud: u64,
    pub pruned_pes: u64,
    pub peak_live_elements: u64,
    pub runtime_ms: u64,
}

impl MiningStats {
    fn absorb(&mut self, o: &MiningStats) {
        self.candidates += o.candidates;
        self.chains_built += o.chains_built;
        self.pruned_ppo += o.pruned_ppo;
        self.pruned_eud += o.pruned_eud;
        self.pruned_pes += o.pruned_pes;
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MiningResult {
    pub patterns: Vec<Pattern>,
    pub stats: MiningStats,
}

impl MiningResult {
    pub(crate) fn sort(&mut self) {
        self.patterns.sort_by(|a, b| a.sequence.cmp(&b.sequence));
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn get(&self, fs: &FSequence) -> Option<f64> {
        self.patterns
            .binary_search_by(|p| p.sequence.cmp(fs))
            .ok()
            .map(|k| self.patterns[k].fu)
    }
}

/// Discovers every f-sequence whose fuzzy utility reaches `u(D) * xi`.
pub fn mine(db: &QDatabase, mf: &MembershipFunction, cfg: &MiningConfig) -> Result<MiningResult> {
    cfg.validate()?;
    let start = Instant::now();
    let fms = build_fmatrix_set(db, mf);
    let roots: Vec<(FItem, FuzzyUtilityChain)> = build_initial_chains(&fms).into_iter().collect();
    let search = Search {
        fms: &fms,
        cfg,
        threshold: db.total_utility() * cfg.xi,
        max_length: cfg.max_length.unwrap_or(usize::MAX),
    };

    let branches: Vec<Branch> = if cfg.parallel_width == 0 {
        let mut scratch = ScanScratch::new(&fms);
        roots
            .iter()
            .map(|(fi, ch)| search.root(*fi, ch, &mut scratch))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel_width)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
        pool.install(|| {
            roots
                .par_iter()
                .map_init(
                    || ScanScratch::new(&fms),
                    |scratch, (fi, ch)| search.root(*fi, ch, scratch),
                )
                .collect()
        })
    };

    let mut result = MiningResult::default();
    result.stats.chains_built = roots.len() as u64;
    let base: u64 = roots.iter().map(|(_, c)| c.element_count() as u64).sum();
    let mut deepest = 0;
    for b in branches {
        result.stats.absorb(&b.stats);
        deepest = deepest.max(b.peak);
        result.patterns.extend(b.patterns);
    }
    result.stats.peak_live_elements = base + deepest;
    result.sort();
    result.stats.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(result)
}

/// Output and counters of one root subtree.
#[derive(Default)]
struct Branch {
    patterns: Vec<Pattern>,
    stats: MiningStats,
    live: u64,
    peak: u64,
}

struct Search<'a> {
    fms: &'a FMatrixSet,
    cfg: &'a MiningConfig,
    threshold: f64,
    max_length: usize,
}

impl Search<'_> {
    fn root(&self, fi: FItem, chain: &FuzzyUtilityChain, scratch: &mut ScanScratch) -> Branch {
        let mut b = Branch::default();
        if self.cfg.enable_ppo && !meets(hfsuub_of_chain(chain, self.fms), self.threshold) {
            b.stats.pruned_ppo += 1;
            return b;
        }
        let prefix = FSequence::single(fi);
        b.stats.candidates += 1;
        let fu = chain.fu();
        if meets(fu, self.threshold) {
            b.patterns.push(Pattern {
                sequence: prefix.clone(),
                fu,
            });
        }
        self.descend(&prefix, chain, &mut b, scratch);
        b
    }

    /// EUD gate, then recursion.
    fn descend(
        &self,
        prefix: &FSequence,
        chain: &FuzzyUtilityChain,
        b: &mut Branch,
        scratch: &mut ScanScratch,
    ) {
        if prefix.len() >= self.max_length {
            return;
        }
        if self.cfg.enable_eud && !meets(chain.sdfu(), self.threshold) {
            b.stats.pruned_eud += 1;
            return;
        }
        self.recursive_mining(prefix, chain, b, scratch);
    }

    fn recursive_mining(
        &self,
        prefix: &FSequence,
        chain: &FuzzyUtilityChain,
        b: &mut Branch,
        scratch: &mut ScanScratch,
    ) {
        let scan = scan_extensions_with(chain, self.fms, scratch);
        let kinds = [
            (ExtensionKind::Itemset, scan.itemset),
            (ExtensionKind::Sequence, scan.sequence),
        ];
        for (kind, list) in kinds {
            for (fi, eifu) in list {
                if self.cfg.enable_pes && !meets(eifu, self.threshold) {
                    b.stats.pruned_pes += 1;
                    continue;
                }
                let child = project_unchecked(chain, fi, kind, self.fms);
                let pattern = match kind {
                    ExtensionKind::Itemset => prefix
                        .i_extend(fi)
                        .expect("itemset extensions follow the anchor"),
                    ExtensionKind::Sequence => prefix.s_extend(fi),
                };
                let size = child.element_count() as u64;
                b.live += size;
                b.peak = b.peak.max(b.live);
                b.stats.chains_built += 1;
                b.stats.candidates += 1;

                let fu = child.fu();
                if meets(fu, self.threshold) {
                    b.patterns.push(Pattern {
                        sequence: pattern.clone(),
                        fu,
                    });
                }
                self.descend(&pattern, &child, b, scratch);
                b.live -= size;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::FuzzyEngine;
    use crate::model::tests::example_db;

    fn run(xi: f64, f: impl Fn(MiningConfig) -> MiningConfig) -> MiningResult {
        let db = example_db();
        let mf = MembershipFunction::reference();
        mine(&db, &mf, &f(MiningConfig::new(xi))).unwrap()
    }

    #[test]
    fn rejects_bad_ratio() {
        let db = example_db();
        let mf = MembershipFunction::reference();
        for xi in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(
                mine(&db, &mf, &MiningConfig::new(xi)),
                Err(Error::Config(_))
            ));
        }
        let mut cfg = MiningConfig::new(0.1);
        cfg.max_length = Some(0);
        assert!(mine(&db, &mf, &cfg).is_err());
    }

    #[test]
    fn nothing_above_total_mfsu() {
        let r = run(0.99, |c| c);
        assert!(r.is_empty());
    }

    #[test]
    fn pruning_toggles_do_not_change_output() {
        let reference = run(0.10, |c| c.with_pruning(false, false, false));
        assert!(!reference.is_empty());
        for mask in 0..8u8 {
            let r = run(0.10, |c| {
                c.with_pruning(mask & 1 != 0, mask & 2 != 0, mask & 4 != 0)
            });
            assert_eq!(r.patterns, reference.patterns, "mask {mask}");
            assert!(r.stats.candidates <= reference.stats.candidates);
            assert!(r.stats.candidates >= r.patterns.len() as u64);
        }
        let on = run(0.10, |c| c);
        let no_pes = run(0.10, |c| c.with_pruning(true, true, false));
        assert!(on.stats.candidates <= no_pes.stats.candidates);
    }

    #[test]
    fn contains_running_example_pattern_when_threshold_allows() {
        let db = example_db();
        let mf = MembershipFunction::reference();
        let t = db.utility_table();
        let am = FItem::new(t.item("a").unwrap(), 1);
        let em = FItem::new(t.item("e").unwrap(), 1);
        let fs = FSequence::single(am).s_extend(em);
        // 21.2 >= 171 * 0.12 = 20.52, but not 171 * 0.13 = 22.23
        let r = mine(&db, &mf, &MiningConfig::new(0.12)).unwrap();
        assert!((r.get(&fs).unwrap() - 21.2).abs() < 1e-9);
        let r = mine(&db, &mf, &MiningConfig::new(0.13)).unwrap();
        assert!(r.get(&fs).is_none());
    }

    #[test]
    fn max_length_one_yields_qualifying_singletons() {
        let db = example_db();
        let mf = MembershipFunction::reference();
        let eng = FuzzyEngine::for_database(&db, &mf);
        let mut cfg = MiningConfig::new(0.05);
        cfg.max_length = Some(1);
        let r = mine(&db, &mf, &cfg).unwrap();
        let thr = db.total_utility() * 0.05;
        let mut want = Vec::new();
        for (item, _, _) in db.utility_table().iter() {
            for region in 0..mf.region_count() {
                let fs = FSequence::single(FItem::new(item, region));
                let fu = eng.fu_in_database(&fs, &db);
                if fu > 0.0 && meets(fu, thr) {
                    want.push(fs);
                }
            }
        }
        want.sort();
        let got: Vec<_> = r.patterns.iter().map(|p| p.sequence.clone()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn parallel_matches_sequential() {
        let seq = run(0.05, |c| c);
        let par = run(0.05, |mut c| {
            c.parallel_width = 3;
            c
        });
        assert_eq!(seq.patterns, par.patterns);
        let mut a = seq.stats.clone();
        let mut b = par.stats.clone();
        a.runtime_ms = 0;
        b.runtime_ms = 0;
        assert_eq!(a, b);
    }

    #[test]
    fn every_pattern_meets_threshold() {
        let r = run(0.02, |c| c);
        let thr = 171.0 * 0.02;
        assert!(r.patterns.iter().all(|p| p.fu >= thr - TOLERANCE));
        assert!(r.patterns.windows(2).all(|w| w[0].sequence < w[1].sequence));
    }
}
