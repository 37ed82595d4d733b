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

#![allow(dead_code)]

use fumine_core::io::{generate_database, GeneratorParams};
use fumine_core::QDatabase;
use proptest::prelude::*;

/// Small random databases for property tests.
pub fn arb_db() -> impl Strategy<Value = QDatabase> {
    (
        1usize..8,
        1usize..6,
        1usize..4,
        1usize..4,
        1u32..6,
        any::<u64>(),
    )
        .prop_map(|(n, items, sets, width, qty, seed)| {
            generate_database(&GeneratorParams {
                n_sequences: n,
                n_items: items,
                max_seq_itemsets: sets,
                max_itemset_size: width,
                max_quantity: qty,
                utility_range: (0.5, 3.0),
                seed,
            })
            .unwrap()
        })
}
