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

//! Files in and out: text formats, synthetic generation, stats reports.

mod format;
mod generator;
mod report;

pub use format::{
    parse_database, parse_database_str, parse_membership, parse_membership_str, parse_pattern,
    parse_results_str, parse_utility_table_str, render_pattern, write_database, write_database_str,
    write_membership, write_membership_str, write_results, write_results_str,
    write_utility_table_str,
};
pub(crate) use format::{read_file, write_file};
pub use generator::{generate_database, write_synthetic, GeneratorParams};
pub use report::{without_runtime, DatasetDescriptors, StatsReport};

/// Reads a result file back. See [`parse_results_str`].
pub fn parse_results(
    path: &std::path::Path,
    table: &crate::model::UtilityTable,
    mf: &crate::model::MembershipFunction,
) -> crate::error::Result<crate::miner::MiningResult> {
    parse_results_str(&read_file(path)?, &path.display().to_string(), table, mf)
}

/// Writes a file, mapping failures to [`crate::error::Error::Io`].
pub fn write_text(path: &std::path::Path, text: &str) -> crate::error::Result<()> {
    write_file(path, text)
}
