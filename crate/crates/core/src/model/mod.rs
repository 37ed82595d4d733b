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

//! Input-side domain types: items, quantitative sequences, the external
//! utility table and crisp utility arithmetic.
//!
//! Items are interned. A [`UtilityTable`] owns the alphabet and assigns every
//! item name a dense [`Item`] index in lexicographic order of the names, so
//! comparing two `Item`s compares their ids lexicographically.

mod membership;
mod pattern;

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

pub use membership::{FuzzySet, MembershipFunction, Region};
pub use pattern::{FItem, FItemset, FSequence};

/// Interned item id. Ordering follows the lexicographic order of item names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(pub u32);

impl Item {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// External utilities (unit profits) of every item of the alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityTable {
    names: Vec<String>,
    prices: Vec<f64>,
    index: HashMap<String, Item>,
}

impl UtilityTable {
    /// Builds a table from `(name, external utility)` pairs. Names must be
    /// unique and utilities strictly positive and finite.
    pub fn new<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut pairs: Vec<(String, f64)> =
            entries.into_iter().map(|(n, p)| (n.into(), p)).collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Invalid(format!("duplicate item `{}`", w[0].0)));
            }
        }
        for (name, price) in &pairs {
            validate_item_name(name)?;
            if !(price.is_finite() && *price > 0.0) {
                return Err(Error::Invalid(format!(
                    "external utility of `{name}` must be positive, got {price}"
                )));
            }
        }
        let index = pairs
            .iter()
            .enumerate()
            .map(|(i, (n, _))| (n.clone(), Item(i as u32)))
            .collect();
        let (names, prices) = pairs.into_iter().unzip();
        Ok(UtilityTable {
            names,
            prices,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn item(&self, name: &str) -> Option<Item> {
        self.index.get(name).copied()
    }

    pub fn item_or_err(&self, name: &str) -> Result<Item> {
        self.item(name)
            .ok_or_else(|| Error::UnknownItemName(name.to_string()))
    }

    pub fn name(&self, item: Item) -> &str {
        &self.names[item.index()]
    }

    pub fn price(&self, item: Item) -> Result<f64> {
        self.prices
            .get(item.index())
            .copied()
            .ok_or(Error::UnknownItem(item))
    }

    pub fn contains(&self, item: Item) -> bool {
        item.index() < self.names.len()
    }

    /// `(item, name, external utility)` in item order.
    pub fn iter(&self) -> impl Iterator<Item = (Item, &str, f64)> + '_ {
        self.names
            .iter()
            .zip(&self.prices)
            .enumerate()
            .map(|(i, (n, p))| (Item(i as u32), n.as_str(), *p))
    }
}

/// Item names travel through whitespace separated text formats and the
/// `name.Region` pattern syntax.
pub(crate) fn validate_item_name(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name.starts_with('#')
        || name.starts_with('-')
        || name.chars().any(|c| c.is_whitespace() || c == ':');
    if bad {
        return Err(Error::Invalid(format!("illegal item name `{name}`")));
    }
    Ok(())
}

/// An item together with its purchased quantity (internal utility).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QItem {
    pub item: Item,
    pub quantity: u32,
}

impl QItem {
    pub fn new(item: Item, quantity: u32) -> Self {
        QItem { item, quantity }
    }
}

/// A non-empty set of q-items stored in ascending item order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QItemset {
    items: Vec<QItem>,
}

impl QItemset {
    /// Sorts the q-items by item; rejects empty itemsets, duplicate items and
    /// zero quantities.
    pub fn new(mut items: Vec<QItem>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::Invalid("empty q-itemset".into()));
        }
        items.sort_by_key(|q| q.item);
        for w in items.windows(2) {
            if w[0].item == w[1].item {
                return Err(Error::Invalid(format!(
                    "duplicate item {} in q-itemset",
                    w[0].item
                )));
            }
        }
        if let Some(q) = items.iter().find(|q| q.quantity == 0) {
            return Err(Error::Invalid(format!("zero quantity for item {}", q.item)));
        }
        Ok(QItemset { items })
    }

    pub fn items(&self) -> &[QItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Position of `item` inside the itemset.
    pub fn position_of(&self, item: Item) -> Option<usize> {
        self.items.binary_search_by_key(&item, |q| q.item).ok()
    }
}

/// A q-sequence: an identified, ordered list of q-itemsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSequence {
    pub sid: u32,
    itemsets: Vec<QItemset>,
}

impl QSequence {
    pub fn new(sid: u32, itemsets: Vec<QItemset>) -> Result<Self> {
        if itemsets.is_empty() {
            return Err(Error::Invalid(format!("q-sequence {sid} is empty")));
        }
        Ok(QSequence { sid, itemsets })
    }

    pub fn itemsets(&self) -> &[QItemset] {
        &self.itemsets
    }

    /// 1-based access, matching the itemset numbering of instance positions.
    pub fn itemset(&self, j: usize) -> Option<&QItemset> {
        j.checked_sub(1).and_then(|k| self.itemsets.get(k))
    }

    /// Number of itemsets.
    pub fn size(&self) -> usize {
        self.itemsets.len()
    }

    /// Number of q-items over all itemsets.
    pub fn length(&self) -> usize {
        self.itemsets.iter().map(QItemset::len).sum()
    }

    /// All q-items in flattened order as `(1-based itemset, position, q-item)`.
    pub fn flat(&self) -> impl Iterator<Item = (usize, usize, QItem)> + '_ {
        self.itemsets
            .iter()
            .enumerate()
            .flat_map(|(j, x)| x.items.iter().enumerate().map(move |(k, q)| (j + 1, k, *q)))
    }
}

/// A validated q-sequence database with its cached total utility `u(D)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QDatabase {
    sequences: Vec<QSequence>,
    table: UtilityTable,
    total_utility: f64,
}

impl QDatabase {
    pub fn new(sequences: Vec<QSequence>, table: UtilityTable) -> Result<Self> {
        let mut sids = HashSet::with_capacity(sequences.len());
        let mut total = 0.0;
        for qs in &sequences {
            if !sids.insert(qs.sid) {
                return Err(Error::Invalid(format!("duplicate sid {}", qs.sid)));
            }
            total += utility_of_qsequence(qs, &table)?;
        }
        Ok(QDatabase {
            sequences,
            table,
            total_utility: total,
        })
    }

    pub fn sequences(&self) -> &[QSequence] {
        &self.sequences
    }

    pub fn utility_table(&self) -> &UtilityTable {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Cached `u(D)`.
    pub fn total_utility(&self) -> f64 {
        self.total_utility
    }
}

/// `u(i, QX) = q(i, QX) * p(i)`.
pub fn utility_of_qitem(qi: QItem, table: &UtilityTable) -> Result<f64> {
    Ok(qi.quantity as f64 * table.price(qi.item)?)
}

pub fn utility_of_qitemset(qx: &QItemset, table: &UtilityTable) -> Result<f64> {
    qx.items().iter().map(|q| utility_of_qitem(*q, table)).sum()
}

pub fn utility_of_qsequence(qs: &QSequence, table: &UtilityTable) -> Result<f64> {
    qs.itemsets()
        .iter()
        .map(|x| utility_of_qitemset(x, table))
        .sum()
}

pub fn utility_of_database(db: &QDatabase) -> f64 {
    db.total_utility()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn table() -> UtilityTable {
        UtilityTable::new([
            ("a", 2.0),
            ("b", 1.0),
            ("c", 3.0),
            ("d", 4.0),
            ("e", 2.0),
            ("f", 5.0),
        ])
        .unwrap()
    }

    fn seq(t: &UtilityTable, sid: u32, sets: &[&[(&str, u32)]]) -> QSequence {
        let itemsets = sets
            .iter()
            .map(|s| {
                QItemset::new(
                    s.iter()
                        .map(|(n, q)| QItem::new(t.item(n).unwrap(), *q))
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        QSequence::new(sid, itemsets).unwrap()
    }

    pub(crate) fn example_sequences(t: &UtilityTable) -> Vec<QSequence> {
        vec![
            seq(
                t,
                1,
                &[
                    &[("b", 2), ("d", 3)],
                    &[("a", 3), ("e", 2)],
                    &[("b", 1), ("c", 4), ("e", 3)],
                ],
            ),
            seq(
                t,
                2,
                &[
                    &[("a", 3), ("c", 4)],
                    &[("a", 4), ("d", 1)],
                    &[("a", 4), ("c", 2), ("e", 1)],
                    &[("d", 5)],
                ],
            ),
            seq(
                t,
                3,
                &[
                    &[("a", 1), ("c", 2)],
                    &[("e", 2)],
                    &[("a", 2), ("d", 3), ("e", 1)],
                ],
            ),
            seq(
                t,
                4,
                &[&[("a", 1)], &[("a", 3), ("c", 1)], &[("d", 4)], &[("f", 1)]],
            ),
        ]
    }

    pub(crate) fn example_db() -> QDatabase {
        let t = table();
        QDatabase::new(example_sequences(&t), t).unwrap()
    }

    #[test]
    fn qitem_utility() {
        let t = table();
        let d = QItem::new(t.item("d").unwrap(), 3);
        assert_eq!(utility_of_qitem(d, &t).unwrap(), 12.0);
        let f = QItem::new(t.item("f").unwrap(), 1);
        assert_eq!(utility_of_qitem(f, &t).unwrap(), 5.0);
        let x = UtilityTable::new([("x", 1.0)]).unwrap();
        assert_eq!(utility_of_qitem(QItem::new(Item(0), 1), &x).unwrap(), 1.0);
    }

    #[test]
    fn unknown_item_is_rejected() {
        let t = table();
        let err = utility_of_qitem(QItem::new(Item(42), 1), &t).unwrap_err();
        assert_eq!(err, Error::UnknownItem(Item(42)));
    }

    #[test]
    fn sequence_and_database_utilities() {
        let db = example_db();
        let t = db.utility_table();
        let us: Vec<f64> = db
            .sequences()
            .iter()
            .map(|s| utility_of_qsequence(s, t).unwrap())
            .collect();
        assert_eq!(us, vec![43.0, 66.0, 30.0, 32.0]);
        assert_eq!(utility_of_database(&db), 171.0);

        let only2 = QDatabase::new(vec![db.sequences()[1].clone()], t.clone()).unwrap();
        assert_eq!(utility_of_database(&only2), 66.0);

        let empty = QDatabase::new(vec![], t.clone()).unwrap();
        assert_eq!(utility_of_database(&empty), 0.0);

        let single = UtilityTable::new([("a", 2.0)]).unwrap();
        let s = QSequence::new(
            1,
            vec![QItemset::new(vec![QItem::new(Item(0), 1)]).unwrap()],
        )
        .unwrap();
        assert_eq!(utility_of_qsequence(&s, &single).unwrap(), 2.0);
    }

    #[test]
    fn items_ordered_lexicographically() {
        let t = UtilityTable::new([("b", 1.0), ("a", 1.0), ("10", 1.0), ("9", 1.0)]).unwrap();
        let order: Vec<&str> = t.iter().map(|(_, n, _)| n).collect();
        assert_eq!(order, vec!["10", "9", "a", "b"]);
        assert!(t.item("10").unwrap() < t.item("9").unwrap());
    }

    #[test]
    fn validation_errors() {
        assert!(UtilityTable::new([("a", 0.0)]).is_err());
        assert!(UtilityTable::new([("a", -1.0)]).is_err());
        assert!(UtilityTable::new([("a", 1.0), ("a", 2.0)]).is_err());
        assert!(UtilityTable::new([("a:b", 1.0)]).is_err());
        assert!(QItemset::new(vec![]).is_err());
        assert!(QItemset::new(vec![QItem::new(Item(0), 0)]).is_err());
        assert!(QItemset::new(vec![QItem::new(Item(0), 1), QItem::new(Item(0), 2)]).is_err());
        assert!(QSequence::new(1, vec![]).is_err());
        let t = table();
        let s = example_sequences(&t);
        assert!(QDatabase::new(vec![s[0].clone(), s[0].clone()], t).is_err());
    }

    #[test]
    fn qitemset_sorted_on_construction() {
        let x = QItemset::new(vec![QItem::new(Item(3), 1), QItem::new(Item(1), 2)]).unwrap();
        assert_eq!(x.items()[0].item, Item(1));
        assert_eq!(x.position_of(Item(3)), Some(1));
        assert_eq!(x.position_of(Item(2)), None);
    }
}
