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

//! Mining of high fuzzy-utility sequential patterns.
//!
//! Quantitative sequences are turned into fuzzy utilities through a
//! piecewise-linear membership function, and [`mine`] finds every
//! f-sequence whose fuzzy utility reaches a fraction of the database utility.
//! The search grows patterns over fuzzy utility chains and prunes with three
//! upper bounds. [`oracle`] holds slow reference miners for cross-checking.

pub mod error;
pub mod fuzzy;
pub mod io;
pub mod miner;
pub mod model;
pub mod oracle;
pub mod structures;

pub use error::{Error, Result};
pub use fuzzy::FuzzyEngine;
pub use miner::{mine, MiningConfig, MiningResult, MiningStats, Pattern};
pub use model::{
    FItem, FItemset, FSequence, Item, MembershipFunction, QDatabase, QItem, QItemset, QSequence,
    UtilityTable,
};
