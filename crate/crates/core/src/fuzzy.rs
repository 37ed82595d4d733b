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

//! Definitional fuzzy-utility evaluation.
//!
//! Everything here works directly on q-sequences by enumerating instances.
//! It is the reference semantics that the compressed structures and the
//! miners are checked against, so it favours clarity over speed.

use crate::error::{Error, PositionDisplay, Result};
use crate::model::{
    utility_of_qitem, FItem, FItemset, FSequence, FuzzySet, Item, MembershipFunction, QDatabase,
    QSequence, UtilityTable,
};

/// Itemset indices (1-based, strictly increasing) of one instance of a
/// pattern, one index per f-itemset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InstancePosition(pub Vec<usize>);

impl InstancePosition {
    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }
}

/// The occurrence of a pattern's last f-item: 1-based itemset index and
/// 0-based position of the q-item inside that itemset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtensionAnchor {
    pub itemset: usize,
    pub position: usize,
}

impl ExtensionAnchor {
    pub fn new(itemset: usize, position: usize) -> Self {
        ExtensionAnchor { itemset, position }
    }
}

pub fn fuzzify(u: f64, mf: &MembershipFunction) -> FuzzySet {
    mf.fuzzify(u)
}

/// Evaluates fuzzy utilities of patterns against q-sequences under one
/// utility table and membership function.
#[derive(Debug, Clone, Copy)]
pub struct FuzzyEngine<'a> {
    pub table: &'a UtilityTable,
    pub mf: &'a MembershipFunction,
}

impl<'a> FuzzyEngine<'a> {
    pub fn new(table: &'a UtilityTable, mf: &'a MembershipFunction) -> Self {
        FuzzyEngine { table, mf }
    }

    pub fn for_database(db: &'a QDatabase, mf: &'a MembershipFunction) -> Self {
        FuzzyEngine::new(db.utility_table(), mf)
    }

    /// Utility and membership degree of `item` in itemset `j`, if present.
    fn occurrence(&self, item: Item, region: usize, j: usize, qs: &QSequence) -> Option<f64> {
        let x = qs.itemset(j)?;
        let k = x.position_of(item)?;
        let u = utility_of_qitem(x.items()[k], self.table).ok()?;
        Some(u * self.mf.membership(region, u))
    }

    /// `fu(i, j, QS) = u(i, X_j) * fz_ik` at the anchored occurrence.
    pub fn fu_fitem(&self, fi: FItem, anchor: ExtensionAnchor, qs: &QSequence) -> Result<f64> {
        let qi = qs
            .itemset(anchor.itemset)
            .and_then(|x| x.items().get(anchor.position))
            .filter(|q| q.item == fi.item)
            .ok_or(Error::AnchorMismatch {
                item: fi.item,
                itemset: anchor.itemset,
                position: anchor.position,
            })?;
        let u = utility_of_qitem(*qi, self.table)?;
        Ok(u * self.mf.membership(fi.region(), u))
    }

    /// True iff every f-item of `fx` occurs in itemset `j` with a positive
    /// degree in its region.
    pub fn contains_itemset(&self, fx: &FItemset, j: usize, qs: &QSequence) -> bool {
        fx.items().iter().all(|fi| {
            self.occurrence(fi.item, fi.region(), j, qs)
                .is_some_and(|fu| fu > 0.0)
        })
    }

    /// All instance positions of `fs` in `qs`, in lexicographic order.
    pub fn find_instances(&self, fs: &FSequence, qs: &QSequence) -> Vec<InstancePosition> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(fs.itemsets().len());
        self.instances_from(fs.itemsets(), 1, qs, &mut stack, &mut out);
        out
    }

    fn instances_from(
        &self,
        rest: &[FItemset],
        from: usize,
        qs: &QSequence,
        stack: &mut Vec<usize>,
        out: &mut Vec<InstancePosition>,
    ) {
        let Some((head, tail)) = rest.split_first() else {
            out.push(InstancePosition(stack.clone()));
            return;
        };
        // leave room for the remaining f-itemsets
        let last = qs.size() + 1 - rest.len().min(qs.size() + 1);
        for j in from..=last {
            if self.contains_itemset(head, j, qs) {
                stack.push(j);
                self.instances_from(tail, j + 1, qs, stack, out);
                stack.pop();
            }
        }
    }

    pub fn fu_fitemset_at(&self, fx: &FItemset, j: usize, qs: &QSequence) -> Result<f64> {
        if !self.contains_itemset(fx, j, qs) {
            return Err(Error::NotContained(j));
        }
        Ok(fx
            .items()
            .iter()
            .map(|fi| self.occurrence(fi.item, fi.region(), j, qs).unwrap_or(0.0))
            .sum())
    }

    pub fn fu_at_position(
        &self,
        fs: &FSequence,
        p: &InstancePosition,
        qs: &QSequence,
    ) -> Result<f64> {
        let invalid = || Error::InvalidPosition(PositionDisplay(p.0.clone()));
        if p.0.len() != fs.itemsets().len() || p.0.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid());
        }
        fs.itemsets()
            .iter()
            .zip(&p.0)
            .map(|(fx, &j)| self.fu_fitemset_at(fx, j, qs).map_err(|_| invalid()))
            .sum()
    }

    /// Maximum over all instances; 0 when `fs` is not contained.
    pub fn fu_in_sequence(&self, fs: &FSequence, qs: &QSequence) -> f64 {
        self.find_instances(fs, qs)
            .iter()
            .map(|p| self.fu_at_position(fs, p, qs).unwrap_or(0.0))
            .fold(0.0, f64::max)
    }

    pub fn fu_in_database(&self, fs: &FSequence, db: &QDatabase) -> f64 {
        db.sequences()
            .iter()
            .map(|qs| self.fu_in_sequence(fs, qs))
            .sum()
    }

    /// Maximum fuzzy utility of `item` over its regions in itemset `j`.
    pub fn mfui(&self, item: Item, j: usize, qs: &QSequence) -> Result<f64> {
        let x = qs
            .itemset(j)
            .ok_or_else(|| Error::InvalidAnchor(format!("no itemset {j}")))?;
        let k = x
            .position_of(item)
            .ok_or_else(|| Error::InvalidAnchor(format!("{item} absent from itemset {j}")))?;
        self.mfui_at(ExtensionAnchor::new(j, k), qs)
    }

    fn mfui_at(&self, at: ExtensionAnchor, qs: &QSequence) -> Result<f64> {
        let qi = qs.itemset(at.itemset).unwrap().items()[at.position];
        let u = utility_of_qitem(qi, self.table)?;
        Ok(u * self.mf.fuzzify(u).max())
    }

    pub fn mfsu(&self, qs: &QSequence) -> f64 {
        qs.flat()
            .map(|(j, k, _)| self.mfui_at(ExtensionAnchor::new(j, k), qs).unwrap_or(0.0))
            .sum()
    }

    /// Sum of MFUI over every q-item strictly after `anchor`, where `anchor`
    /// must be the last-f-item occurrence of some instance of `fs`.
    pub fn mrfu(&self, fs: &FSequence, anchor: ExtensionAnchor, qs: &QSequence) -> Result<f64> {
        let last = fs.last_item();
        self.fu_fitem(last, anchor, qs)
            .map_err(|e| Error::InvalidAnchor(e.to_string()))?;
        let anchored = self
            .find_instances(fs, qs)
            .iter()
            .any(|p| p.last() == anchor.itemset);
        if !anchored {
            return Err(Error::InvalidAnchor(format!(
                "no instance ends at itemset {}",
                anchor.itemset
            )));
        }
        Ok(qs
            .flat()
            .filter(|&(j, k, _)| (j, k) > (anchor.itemset, anchor.position))
            .map(|(j, k, _)| self.mfui_at(ExtensionAnchor::new(j, k), qs).unwrap_or(0.0))
            .sum())
    }
}
