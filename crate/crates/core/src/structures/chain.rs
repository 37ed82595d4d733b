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

use std::collections::{BTreeMap, HashMap};

use super::fmatrix::FMatrixSet;
use crate::error::{Error, Result};
use crate::fuzzy::ExtensionAnchor;
use crate::model::{FItem, FSequence};

/// How a pattern grows by one f-item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtensionKind {
    /// Append to the last f-itemset.
    Itemset,
    /// Start a new trailing f-itemset.
    Sequence,
}

/// One extension position of a pattern in a q-sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainElement {
    pub anchor: ExtensionAnchor,
    /// Cell index of the anchor in the sequence's f-matrix.
    pub cell: u32,
    /// Max fuzzy utility over instances ending at this anchor.
    pub fu: f64,
    pub mrfu: f64,
}

impl ChainElement {
    /// Per-position descendant bound; zero when nothing follows the anchor.
    #[inline]
    pub fn sdfu(&self) -> f64 {
        if self.mrfu > 0.0 {
            self.fu + self.mrfu
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeadEntry {
    pub sid: u32,
    /// Index of the sequence in the f-matrix set.
    pub seq: u32,
    pub sdfu: f64,
    start: u32,
    end: u32,
}

/// Projected database of one pattern: a head table of containing sequences
/// with their SDFU, each indexing its list of extension positions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FuzzyUtilityChain {
    heads: Vec<HeadEntry>,
    elements: Vec<ChainElement>,
}

impl FuzzyUtilityChain {
    pub fn heads(&self) -> &[HeadEntry] {
        &self.heads
    }

    pub fn list(&self, head: &HeadEntry) -> &[ChainElement] {
        &self.elements[head.start as usize..head.end as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HeadEntry, &[ChainElement])> + '_ {
        self.heads.iter().map(|h| (h, self.list(h)))
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    pub fn sids(&self) -> impl Iterator<Item = u32> + '_ {
        self.heads.iter().map(|h| h.sid)
    }

    /// Fuzzy utility of the pattern: per sequence the best element, summed.
    pub fn fu(&self) -> f64 {
        self.iter()
            .map(|(_, l)| l.iter().map(|e| e.fu).fold(0.0, f64::max))
            .sum()
    }

    /// Sum of the per-sequence SDFU values.
    pub fn sdfu(&self) -> f64 {
        self.heads.iter().map(|h| h.sdfu).sum()
    }

    fn push(&mut self, seq: u32, sid: u32, e: ChainElement) {
        let n = self.elements.len() as u32;
        match self.heads.last_mut() {
            Some(h) if h.seq == seq => {
                h.end = n + 1;
                h.sdfu = h.sdfu.max(e.sdfu());
            }
            _ => self.heads.push(HeadEntry {
                sid,
                seq,
                sdfu: e.sdfu(),
                start: n,
                end: n + 1,
            }),
        }
        self.elements.push(e);
    }
}

/// Chains of every 1-f-sequence with a positive degree somewhere.
pub fn build_initial_chains(fms: &FMatrixSet) -> BTreeMap<FItem, FuzzyUtilityChain> {
    let mut chains: HashMap<FItem, FuzzyUtilityChain> = HashMap::new();
    for (s, m) in fms.matrices().iter().enumerate() {
        for (idx, c) in m.cells().iter().enumerate() {
            for (r, &d) in c.degrees.degrees().iter().enumerate() {
                if d <= 0.0 {
                    continue;
                }
                let e = ChainElement {
                    anchor: ExtensionAnchor::new(c.itemset as usize, c.position as usize),
                    cell: idx as u32,
                    fu: c.utility * d,
                    mrfu: c.remaining,
                };
                chains
                    .entry(FItem::new(c.item, r))
                    .or_default()
                    .push(s as u32, m.sid, e);
            }
        }
    }
    chains.into_iter().collect()
}

/// Builds the chain of `prefix` extended by `ext` from the prefix's chain.
pub fn project(
    prefix: &FSequence,
    chain: &FuzzyUtilityChain,
    ext: FItem,
    kind: ExtensionKind,
    fms: &FMatrixSet,
) -> Result<FuzzyUtilityChain> {
    if kind == ExtensionKind::Itemset {
        let last = prefix.last_item().item;
        if ext.item <= last {
            return Err(Error::OrderingViolation {
                last,
                ext: ext.item,
            });
        }
    }
    Ok(project_unchecked(chain, ext, kind, fms))
}

pub(crate) fn project_unchecked(
    chain: &FuzzyUtilityChain,
    ext: FItem,
    kind: ExtensionKind,
    fms: &FMatrixSet,
) -> FuzzyUtilityChain {
    let region = ext.region();
    let mut out = FuzzyUtilityChain::default();
    for (h, list) in chain.iter() {
        let m = fms.matrix(h.seq);
        match kind {
            ExtensionKind::Itemset => {
                for e in list {
                    let Some(idx) = m.find(ext.item, e.anchor.itemset as u32) else {
                        continue;
                    };
                    let c = m.cell_at(idx);
                    let d = c.degrees.degree(region);
                    if d <= 0.0 || (c.position as usize) <= e.anchor.position {
                        continue;
                    }
                    out.push(
                        h.seq,
                        h.sid,
                        ChainElement {
                            anchor: ExtensionAnchor::new(c.itemset as usize, c.position as usize),
                            cell: idx,
                            fu: e.fu + c.utility * d,
                            mrfu: c.remaining,
                        },
                    );
                }
            }
            ExtensionKind::Sequence => {
                let Some(row) = m.row(ext.item) else {
                    continue;
                };
                let mut next = 0;
                let mut best = f64::NEG_INFINITY;
                for &idx in row {
                    let c = m.cell_at(idx);
                    while next < list.len() && list[next].anchor.itemset < c.itemset as usize {
                        best = best.max(list[next].fu);
                        next += 1;
                    }
                    let d = c.degrees.degree(region);
                    if next == 0 || d <= 0.0 {
                        continue;
                    }
                    out.push(
                        h.seq,
                        h.sid,
                        ChainElement {
                            anchor: ExtensionAnchor::new(c.itemset as usize, c.position as usize),
                            cell: idx,
                            fu: best + c.utility * d,
                            mrfu: c.remaining,
                        },
                    );
                }
            }
        }
    }
    out
}
