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

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{FItem, FSequence};
use crate::structures::{ExtensionKind, FMatrixSet, FuzzyUtilityChain};

/// Sum of MFSU over the sequences containing the 1-f-sequence `fs`.
pub fn hfsuub(fs: &FSequence, fms: &FMatrixSet) -> Result<f64> {
    if fs.len() != 1 {
        return Err(Error::Config(format!(
            "HFSUUB is defined on 1-f-sequences, got length {}",
            fs.len()
        )));
    }
    let fi = fs.first_item();
    let mut total = 0.0;
    for (s, m) in fms.matrices().iter().enumerate() {
        let contained = m.row(fi.item).is_some_and(|row| {
            row.iter()
                .any(|&idx| m.cell_at(idx).degrees.degree(fi.region()) > 0.0)
        });
        if contained {
            total += fms.mfsu(s as u32);
        }
    }
    Ok(total)
}

/// HFSUUB read off an initial chain, whose heads are exactly the containing
/// sequences.
pub(crate) fn hfsuub_of_chain(chain: &FuzzyUtilityChain, fms: &FMatrixSet) -> f64 {
    chain.heads().iter().map(|h| fms.mfsu(h.seq)).sum()
}

pub fn sdfu(chain: &FuzzyUtilityChain) -> f64 {
    chain.sdfu()
}

/// Candidate extensions of a pattern with their EIFU, gathered in one scan
/// of its chain. Both lists are ordered by `(item, region)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExtensionScan {
    pub itemset: Vec<(FItem, f64)>,
    pub sequence: Vec<(FItem, f64)>,
}

/// Reusable dense buffers for [`scan_extensions_with`], one slot per
/// `(item, region)`.
#[derive(Debug, Default)]
pub(crate) struct ScanScratch {
    itemset: Accumulator,
    sequence: Accumulator,
}

impl ScanScratch {
    pub(crate) fn new(fms: &FMatrixSet) -> Self {
        let slots = fms.item_count() * fms.region_count();
        ScanScratch {
            itemset: Accumulator::with_slots(slots),
            sequence: Accumulator::with_slots(slots),
        }
    }
}

#[derive(Debug, Default)]
struct Accumulator {
    /// summed bound and the tag of the last sequence that added to it;
    /// tag 0 marks an untouched slot
    slots: Vec<(f64, u32)>,
    touched: Vec<FItem>,
}

impl Accumulator {
    fn with_slots(n: usize) -> Self {
        Accumulator {
            slots: vec![(0.0, 0); n],
            touched: Vec::new(),
        }
    }

    /// Adds `bound` once per sequence, identified by `tag`.
    #[inline]
    fn bump(&mut self, slot: usize, fi: FItem, tag: u32, bound: f64) {
        let e = &mut self.slots[slot];
        if e.1 != tag {
            if e.1 == 0 {
                self.touched.push(fi);
            }
            e.0 += bound;
            e.1 = tag;
        }
    }

    /// Drains the touched slots in `(item, region)` order and resets them.
    fn take_sorted(&mut self, regions: usize) -> Vec<(FItem, f64)> {
        self.touched.sort_unstable();
        let slots = &mut self.slots;
        self.touched
            .drain(..)
            .map(|fi| {
                let e = &mut slots[fi.item.index() * regions + fi.region()];
                let b = e.0;
                *e = (0.0, 0);
                (fi, b)
            })
            .collect()
    }
}

fn scan_extensions(chain: &FuzzyUtilityChain, fms: &FMatrixSet) -> ExtensionScan {
    scan_extensions_with(chain, fms, &mut ScanScratch::new(fms))
}

pub(crate) fn scan_extensions_with(
    chain: &FuzzyUtilityChain,
    fms: &FMatrixSet,
    scratch: &mut ScanScratch,
) -> ExtensionScan {
    let regions = fms.region_count();
    let ScanScratch {
        itemset: i_acc,
        sequence: s_acc,
    } = scratch;
    for (n, (h, list)) in chain.iter().enumerate() {
        let m = fms.matrix(h.seq);
        let tag = n as u32 + 1;
        for e in list {
            for c in m.cells_after_in_itemset(e.cell) {
                let base = c.item.index() * regions;
                for (r, &d) in c.degrees.degrees().iter().enumerate() {
                    if d > 0.0 {
                        i_acc.bump(base + r, FItem::new(c.item, r), tag, h.sdfu);
                    }
                }
            }
        }
        let first = list[0].anchor.itemset as u32;
        for c in m.cells_after_itemset(first) {
            let base = c.item.index() * regions;
            for (r, &d) in c.degrees.degrees().iter().enumerate() {
                if d > 0.0 {
                    s_acc.bump(base + r, FItem::new(c.item, r), tag, h.sdfu);
                }
            }
        }
    }
    ExtensionScan {
        itemset: i_acc.take_sorted(regions),
        sequence: s_acc.take_sorted(regions),
    }
}

/// I- and S-extension f-items of the pattern owning `chain`.
pub fn enumerate_extensions(
    chain: &FuzzyUtilityChain,
    fms: &FMatrixSet,
) -> (Vec<FItem>, Vec<FItem>) {
    let scan = scan_extensions(chain, fms);
    (
        scan.itemset.into_iter().map(|(f, _)| f).collect(),
        scan.sequence.into_iter().map(|(f, _)| f).collect(),
    )
}

/// EIFU of every extension of the pattern owning `prefix_chain`: the sum of
/// the prefix's per-sequence SDFU over sequences that also contain the
/// extension.
pub fn eifu_of_extensions(
    prefix_chain: &FuzzyUtilityChain,
    fms: &FMatrixSet,
) -> BTreeMap<(FItem, ExtensionKind), f64> {
    let scan = scan_extensions(prefix_chain, fms);
    scan.itemset
        .into_iter()
        .map(|(f, b)| ((f, ExtensionKind::Itemset), b))
        .chain(
            scan.sequence
                .into_iter()
                .map(|(f, b)| ((f, ExtensionKind::Sequence), b)),
        )
        .collect()
}
