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

//! Compressed search structures: the f-matrix set built once per database,
//! and the fuzzy utility chains that serve as per-pattern projected
//! databases.

mod chain;
mod fmatrix;

pub(crate) use chain::project_unchecked;
pub use chain::{
    build_initial_chains, project, ChainElement, ExtensionKind, FuzzyUtilityChain, HeadEntry,
};
pub use fmatrix::{build_fmatrix_set, FMatrix, FMatrixCell, FMatrixSet};
