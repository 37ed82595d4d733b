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

//! Seeded synthetic q-sequence databases.
//!
//! Item popularity follows a Zipf law with exponent 1, so a few items recur
//! in most sequences while the tail stays sparse. Prices are uniform in the
//! requested range and rounded to cents; quantities are uniform in
//! `1..=max_quantity`.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};

use super::format::{write_database_str, write_file, write_utility_table_str};
use crate::error::{Error, Result};
use crate::model::{QDatabase, QItem, QItemset, QSequence, UtilityTable};

const ZIPF_EXPONENT: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorParams {
    pub n_sequences: usize,
    pub n_items: usize,
    /// Itemsets per sequence are uniform in `1..=max_seq_itemsets`.
    pub max_seq_itemsets: usize,
    /// Q-items per itemset are uniform in `1..=max_itemset_size`.
    pub max_itemset_size: usize,
    pub max_quantity: u32,
    pub utility_range: (f64, f64),
    pub seed: u64,
}

impl GeneratorParams {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("n_sequences", self.n_sequences),
            ("n_items", self.n_items),
            ("max_seq_itemsets", self.max_seq_itemsets),
            ("max_itemset_size", self.max_itemset_size),
            ("max_quantity", self.max_quantity as usize),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(Error::Config(format!("{name} must be at least 1")));
            }
        }
        let (lo, hi) = self.utility_range;
        if !(lo.is_finite() && hi.is_finite()) || lo < 0.01 || hi < lo {
            return Err(Error::Config(format!(
                "utility range ({lo}, {hi}) must satisfy 0.01 <= min <= max"
            )));
        }
        Ok(())
    }
}

fn cents(x: f64) -> f64 {
    ((x * 100.0).round() / 100.0).max(0.01)
}

pub fn generate_database(params: &GeneratorParams) -> Result<QDatabase> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (lo, hi) = params.utility_range;
    let names: Vec<String> = (1..=params.n_items).map(|i| i.to_string()).collect();
    let prices: Vec<f64> = names
        .iter()
        .map(|_| cents(if hi > lo { rng.gen_range(lo..=hi) } else { lo }))
        .collect();
    let table = UtilityTable::new(names.iter().cloned().zip(prices.iter().copied()))?;

    // popularity rank -> item; the shuffle decouples rank from name order
    let mut by_rank: Vec<usize> = (0..params.n_items).collect();
    by_rank.shuffle(&mut rng);
    let items: Vec<_> = by_rank
        .iter()
        .map(|&i| table.item(&names[i]).unwrap())
        .collect();
    let zipf = Zipf::new(params.n_items as u64, ZIPF_EXPONENT)
        .map_err(|e| Error::Config(e.to_string()))?;
    let width = params.max_itemset_size.min(params.n_items);

    let mut sequences = Vec::with_capacity(params.n_sequences);
    let mut picked = vec![false; params.n_items];
    for sid in 1..=params.n_sequences {
        let n_sets = rng.gen_range(1..=params.max_seq_itemsets);
        let mut itemsets = Vec::with_capacity(n_sets);
        for _ in 0..n_sets {
            let size = rng.gen_range(1..=width);
            let mut ranks = Vec::with_capacity(size);
            let mut tries = 0;
            while ranks.len() < size {
                tries += 1;
                let r = if tries <= 32 * size {
                    zipf.sample(&mut rng) as usize - 1
                } else {
                    rng.gen_range(0..params.n_items)
                };
                if !picked[r] {
                    picked[r] = true;
                    ranks.push(r);
                }
            }
            let qitems = ranks
                .iter()
                .map(|&r| {
                    picked[r] = false;
                    QItem::new(items[r], rng.gen_range(1..=params.max_quantity))
                })
                .collect();
            itemsets.push(QItemset::new(qitems)?);
        }
        sequences.push(QSequence::new(sid as u32, itemsets)?);
    }
    QDatabase::new(sequences, table)
}

/// Generates a database and writes it with its utility table.
pub fn write_synthetic(
    params: &GeneratorParams,
    db_out: &Path,
    utility_out: &Path,
) -> Result<QDatabase> {
    let db = generate_database(params)?;
    write_file(db_out, &write_database_str(&db))?;
    write_file(utility_out, &write_utility_table_str(db.utility_table()))?;
    Ok(db)
}
