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

use std::cmp::Ordering;

use super::Item;
use crate::error::{Error, Result};

/// An item paired with one of its linguistic regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FItem {
    pub item: Item,
    pub region: u32,
}

impl FItem {
    pub fn new(item: Item, region: usize) -> Self {
        FItem {
            item,
            region: region as u32,
        }
    }

    #[inline]
    pub fn region(self) -> usize {
        self.region as usize
    }
}

/// Non-empty list of f-items with strictly ascending item ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FItemset(Vec<FItem>);

impl FItemset {
    pub fn new(items: Vec<FItem>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::Invalid("empty f-itemset".into()));
        }
        if items.windows(2).any(|w| w[1].item <= w[0].item) {
            return Err(Error::Invalid(
                "f-itemset items must be strictly ascending and distinct".into(),
            ));
        }
        Ok(FItemset(items))
    }

    pub fn single(fi: FItem) -> Self {
        FItemset(vec![fi])
    }

    pub fn items(&self) -> &[FItem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> FItem {
        self.0[self.0.len() - 1]
    }
}

/// A fuzzy sequential pattern: a non-empty ordered list of f-itemsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FSequence {
    itemsets: Vec<FItemset>,
}

impl FSequence {
    pub fn new(itemsets: Vec<FItemset>) -> Result<Self> {
        if itemsets.is_empty() {
            return Err(Error::Invalid("empty f-sequence".into()));
        }
        Ok(FSequence { itemsets })
    }

    pub fn single(fi: FItem) -> Self {
        FSequence {
            itemsets: vec![FItemset::single(fi)],
        }
    }

    pub fn itemsets(&self) -> &[FItemset] {
        &self.itemsets
    }

    /// Number of f-items.
    pub fn len(&self) -> usize {
        self.itemsets.iter().map(FItemset::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    pub fn last_item(&self) -> FItem {
        self.itemsets[self.itemsets.len() - 1].last()
    }

    pub fn first_item(&self) -> FItem {
        self.itemsets[0].0[0]
    }

    pub fn fitems(&self) -> impl Iterator<Item = FItem> + '_ {
        self.itemsets.iter().flat_map(|x| x.0.iter().copied())
    }

    /// Appends `fi` to the last f-itemset.
    pub fn i_extend(&self, fi: FItem) -> Result<Self> {
        let last = self.last_item();
        if fi.item <= last.item {
            return Err(Error::OrderingViolation {
                last: last.item,
                ext: fi.item,
            });
        }
        let mut next = self.clone();
        next.itemsets.last_mut().unwrap().0.push(fi);
        Ok(next)
    }

    /// Appends `fi` as a new trailing f-itemset.
    pub fn s_extend(&self, fi: FItem) -> Self {
        let mut next = self.clone();
        next.itemsets.push(FItemset::single(fi));
        next
    }

    /// The parent in the extension tree (last f-item removed), `None` for
    /// 1-sequences.
    pub fn parent(&self) -> Option<Self> {
        if self.len() <= 1 {
            return None;
        }
        let mut next = self.clone();
        let last = next.itemsets.last_mut().unwrap();
        if last.len() == 1 {
            next.itemsets.pop();
        } else {
            last.0.pop();
        }
        Some(next)
    }

    /// Every f-sequence obtained by deleting exactly one f-item.
    pub fn one_deletions(&self) -> Vec<Self> {
        let mut out = Vec::with_capacity(self.len());
        for (j, x) in self.itemsets.iter().enumerate() {
            for k in 0..x.len() {
                let mut sets = self.itemsets.clone();
                if x.len() == 1 {
                    sets.remove(j);
                } else {
                    sets[j].0.remove(k);
                }
                if !sets.is_empty() {
                    out.push(FSequence { itemsets: sets });
                }
            }
        }
        out
    }

    /// Sizes of the f-itemsets, which together with the flattened f-items
    /// determine the pattern.
    fn boundaries(&self) -> impl Iterator<Item = usize> + '_ {
        self.itemsets.iter().map(FItemset::len)
    }
}

/// Output order: shorter patterns first, then lexicographic over the
/// flattened `(item, region)` list, then over the itemset sizes.
impl Ord for FSequence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.fitems().cmp(other.fitems()))
            .then_with(|| self.boundaries().cmp(other.boundaries()))
    }
}

impl PartialOrd for FSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
