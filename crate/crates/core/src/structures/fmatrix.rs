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

use std::collections::HashMap;

use crate::model::{utility_of_qitem, FuzzySet, Item, MembershipFunction, QDatabase};

/// One present q-item of a q-sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct FMatrixCell {
    pub item: Item,
    /// 1-based itemset index.
    pub itemset: u32,
    /// 0-based position inside the itemset.
    pub position: u32,
    pub utility: f64,
    pub degrees: FuzzySet,
    /// Max-region fuzzy utility of this occurrence (its MFUI).
    pub mfui: f64,
    /// Sum of MFUI over every q-item strictly after this one.
    pub remaining: f64,
}

impl FMatrixCell {
    #[inline]
    pub fn fu(&self, region: usize) -> f64 {
        self.utility * self.degrees.degree(region)
    }
}

/// Sparse f-matrix of one q-sequence. Cells are stored in flattened sequence
/// order; rows index the cells of each item.
#[derive(Debug, Clone, PartialEq)]
pub struct FMatrix {
    pub sid: u32,
    cells: Vec<FMatrixCell>,
    /// `itemset_start[j - 1]..itemset_start[j]` are the cells of itemset `j`.
    itemset_start: Vec<u32>,
    rows: Vec<(Item, Vec<u32>)>,
}

impl FMatrix {
    pub fn cells(&self) -> &[FMatrixCell] {
        &self.cells
    }

    pub fn cell_at(&self, idx: u32) -> &FMatrixCell {
        &self.cells[idx as usize]
    }

    pub fn itemset_count(&self) -> usize {
        self.itemset_start.len() - 1
    }

    /// Index range of the cells of itemset `j` (1-based).
    pub fn itemset_range(&self, j: u32) -> std::ops::Range<usize> {
        self.itemset_start[j as usize - 1] as usize..self.itemset_start[j as usize] as usize
    }

    /// Index of the cell holding `item` in itemset `j`.
    pub fn find(&self, item: Item, j: u32) -> Option<u32> {
        let r = self.itemset_range(j);
        let start = r.start;
        self.cells[r]
            .binary_search_by_key(&item, |c| c.item)
            .ok()
            .map(|k| (start + k) as u32)
    }

    pub fn cell(&self, item: Item, j: u32) -> Option<&FMatrixCell> {
        self.find(item, j).map(|k| &self.cells[k as usize])
    }

    /// Cell indices of `item` in ascending order, or `None` when the item
    /// never occurs in the sequence.
    pub fn row(&self, item: Item) -> Option<&[u32]> {
        self.rows
            .binary_search_by_key(&item, |(i, _)| *i)
            .ok()
            .map(|k| self.rows[k].1.as_slice())
    }

    /// Cells of every itemset after itemset `j`.
    pub fn cells_after_itemset(&self, j: u32) -> &[FMatrixCell] {
        let start = self.itemset_start[j as usize] as usize;
        &self.cells[start..]
    }

    /// Cells sharing itemset with cell `idx` that come after it.
    pub fn cells_after_in_itemset(&self, idx: u32) -> &[FMatrixCell] {
        let j = self.cells[idx as usize].itemset;
        let end = self.itemset_start[j as usize] as usize;
        &self.cells[idx as usize + 1..end]
    }
}

/// The f-matrices of a whole database, ordered by ascending sid.
#[derive(Debug, Clone, PartialEq)]
pub struct FMatrixSet {
    matrices: Vec<FMatrix>,
    mfsu: Vec<f64>,
    by_sid: HashMap<u32, usize>,
    region_count: usize,
    item_count: usize,
}

impl FMatrixSet {
    pub fn matrices(&self) -> &[FMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, idx: u32) -> &FMatrix {
        &self.matrices[idx as usize]
    }

    pub fn by_sid(&self, sid: u32) -> Option<&FMatrix> {
        self.by_sid.get(&sid).map(|&k| &self.matrices[k])
    }

    pub fn mfsu(&self, idx: u32) -> f64 {
        self.mfsu[idx as usize]
    }

    pub fn mfsu_by_sid(&self, sid: u32) -> Option<f64> {
        self.by_sid.get(&sid).map(|&k| self.mfsu[k])
    }

    pub fn total_mfsu(&self) -> f64 {
        self.mfsu.iter().sum()
    }

    pub fn region_count(&self) -> usize {
        self.region_count
    }

    /// One past the largest item index in any matrix.
    pub fn item_count(&self) -> usize {
        self.item_count
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

/// One forward pass per sequence fills utilities and degrees, a backward
/// pass fills the remaining field.
pub fn build_fmatrix_set(db: &QDatabase, mf: &MembershipFunction) -> FMatrixSet {
    let table = db.utility_table();
    let mut seqs: Vec<_> = db.sequences().iter().collect();
    seqs.sort_by_key(|s| s.sid);

    let mut matrices = Vec::with_capacity(seqs.len());
    let mut mfsu = Vec::with_capacity(seqs.len());
    for qs in seqs {
        let mut cells = Vec::with_capacity(qs.length());
        let mut itemset_start = Vec::with_capacity(qs.size() + 1);
        for (j, x) in qs.itemsets().iter().enumerate() {
            itemset_start.push(cells.len() as u32);
            for (k, q) in x.items().iter().enumerate() {
                let utility = utility_of_qitem(*q, table).expect("validated database");
                let degrees = mf.fuzzify(utility);
                let mfui = utility * degrees.max();
                cells.push(FMatrixCell {
                    item: q.item,
                    itemset: j as u32 + 1,
                    position: k as u32,
                    utility,
                    degrees,
                    mfui,
                    remaining: 0.0,
                });
            }
        }
        itemset_start.push(cells.len() as u32);

        let mut acc = 0.0;
        for c in cells.iter_mut().rev() {
            c.remaining = acc;
            acc += c.mfui;
        }

        let mut rows: HashMap<Item, Vec<u32>> = HashMap::new();
        for (idx, c) in cells.iter().enumerate() {
            rows.entry(c.item).or_default().push(idx as u32);
        }
        let mut rows: Vec<_> = rows.into_iter().collect();
        rows.sort_by_key(|(i, _)| *i);

        mfsu.push(acc);
        matrices.push(FMatrix {
            sid: qs.sid,
            cells,
            itemset_start,
            rows,
        });
    }
    let by_sid = matrices
        .iter()
        .enumerate()
        .map(|(k, m)| (m.sid, k))
        .collect();
    let item_count = matrices
        .iter()
        .flat_map(|m| m.cells.iter())
        .map(|c| c.item.index() + 1)
        .max()
        .unwrap_or(0);
    FMatrixSet {
        matrices,
        mfsu,
        by_sid,
        region_count: mf.region_count(),
        item_count,
    }
}
