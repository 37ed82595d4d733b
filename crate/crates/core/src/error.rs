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

use std::fmt;

use crate::model::Item;

/// Errors raised by the domain model, the fuzzy engine and the miners.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown item {0}")]
    UnknownItem(Item),
    #[error("unknown item name `{0}`")]
    UnknownItemName(String),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("anchor (itemset {itemset}, item {position}) does not address {item}")]
    AnchorMismatch {
        item: Item,
        itemset: usize,
        position: usize,
    },
    #[error("invalid anchor: {0}")]
    InvalidAnchor(String),
    #[error("f-itemset is not contained in q-itemset {0}")]
    NotContained(usize),
    #[error("position {0} is not an instance of the pattern")]
    InvalidPosition(PositionDisplay),
    #[error("I-extension by {ext} does not follow the last f-item {last}")]
    OrderingViolation { last: Item, ext: Item },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("node budget of {0} evaluated patterns exceeded")]
    BudgetExceeded(u64),
    #[error("{source_name}:{line}:{column}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

/// Pretty printer for 1-based itemset index tuples in error messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionDisplay(pub Vec<usize>);

impl fmt::Display for PositionDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ">")
    }
}

pub type Result<T> = std::result::Result<T, Error>;
