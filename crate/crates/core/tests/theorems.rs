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

//! The three upper bounds dominate the fuzzy utility of every descendant.
//!
//! A full walk of the extension tree records, for each node, the smallest
//! bound seen on its path; the node's fu comes from brute-force evaluation.

mod common;

use std::collections::HashMap;

use fumine_core::miner::{eifu_of_extensions, hfsuub, sdfu};
use fumine_core::oracle::{brute_force_mine, OracleConfig};
use fumine_core::structures::{
    build_fmatrix_set, build_initial_chains, project, ExtensionKind, FMatrixSet, FuzzyUtilityChain,
};
use fumine_core::{FSequence, MembershipFunction, QDatabase};
use proptest::prelude::*;

const EPS: f64 = 1e-9;

#[derive(Clone, Copy)]
struct PathBounds {
    hfsuub: f64,
    /// min SDFU over proper prefixes
    sdfu: f64,
    /// min EIFU over the node and its prefixes that are extensions
    eifu: f64,
}

fn walk(
    fs: &FSequence,
    chain: &FuzzyUtilityChain,
    bounds: PathBounds,
    fms: &FMatrixSet,
    fu: &HashMap<FSequence, f64>,
    checked: &mut usize,
) {
    let v = fu.get(fs).copied().unwrap_or(0.0);
    assert!(v <= bounds.hfsuub + EPS, "HFSUUB");
    assert!(v <= bounds.sdfu + EPS, "SDFU");
    assert!(v <= bounds.eifu + EPS, "EIFU");
    *checked += 1;
    let own = sdfu(chain);
    for ((f, kind), e) in eifu_of_extensions(chain, fms) {
        let child = match kind {
            ExtensionKind::Itemset => fs.i_extend(f).unwrap(),
            ExtensionKind::Sequence => fs.s_extend(f),
        };
        let cc = project(fs, chain, f, kind, fms).unwrap();
        let b = PathBounds {
            hfsuub: bounds.hfsuub,
            sdfu: bounds.sdfu.min(own),
            eifu: bounds.eifu.min(e),
        };
        walk(&child, &cc, b, fms, fu, checked);
    }
}

pub fn check_bounds(db: &QDatabase) -> usize {
    let mf = MembershipFunction::reference();
    let fms = build_fmatrix_set(db, &mf);
    let all = brute_force_mine(db, &mf, &OracleConfig::complete(1e-12, db)).unwrap();
    let fu: HashMap<FSequence, f64> = all
        .patterns
        .into_iter()
        .map(|p| (p.sequence, p.fu))
        .collect();
    let mut checked = 0;
    for (f, chain) in build_initial_chains(&fms) {
        let fs = FSequence::single(f);
        let h = hfsuub(&fs, &fms).unwrap();
        let b = PathBounds {
            hfsuub: h,
            sdfu: f64::INFINITY,
            eifu: f64::INFINITY,
        };
        walk(&fs, &chain, b, &fms, &fu, &mut checked);
    }
    assert_eq!(checked, fu.len());
    checked
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bounds_dominate_descendants(db in common::arb_db()) {
        check_bounds(&db);
    }
}
