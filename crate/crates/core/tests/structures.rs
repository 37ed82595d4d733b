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

//! Chains agree with the definitional engine on every node of the search
//! tree of small random databases.

mod common;

use std::collections::HashMap;

use fumine_core::miner::enumerate_extensions;
use fumine_core::structures::{
    build_fmatrix_set, build_initial_chains, project, ExtensionKind, FMatrixSet, FuzzyUtilityChain,
};
use fumine_core::{FSequence, FuzzyEngine, MembershipFunction, QDatabase, QSequence};
use proptest::prelude::*;

const EPS: f64 = 1e-9;

struct Check<'a> {
    db: &'a QDatabase,
    eng: FuzzyEngine<'a>,
    fms: FMatrixSet,
    by_sid: HashMap<u32, &'a QSequence>,
    nodes: usize,
}

impl Check<'_> {
    fn node(&mut self, fs: &FSequence, chain: &FuzzyUtilityChain, parent_sids: Option<&[u32]>) {
        self.nodes += 1;
        let sids: Vec<u32> = chain.sids().collect();
        if let Some(p) = parent_sids {
            assert!(
                sids.iter().all(|s| p.contains(s)),
                "projection added a sequence"
            );
        }
        let containing: Vec<u32> = self
            .db
            .sequences()
            .iter()
            .filter(|q| !self.eng.find_instances(fs, q).is_empty())
            .map(|q| q.sid)
            .collect();
        assert_eq!(sids, containing);
        assert!((chain.fu() - self.eng.fu_in_database(fs, self.db)).abs() < EPS);

        for (h, list) in chain.iter() {
            let qs = self.by_sid[&h.sid];
            let instances = self.eng.find_instances(fs, qs);
            let mut best_sdfu: f64 = 0.0;
            for e in list {
                // best instance ending at the anchor's itemset
                let want = instances
                    .iter()
                    .filter(|p| p.last() == e.anchor.itemset)
                    .map(|p| self.eng.fu_at_position(fs, p, qs).unwrap())
                    .fold(f64::NEG_INFINITY, f64::max);
                assert!((e.fu - want).abs() < EPS, "element fu {} vs {want}", e.fu);
                let mrfu = self.eng.mrfu(fs, e.anchor, qs).unwrap();
                assert!((e.mrfu - mrfu).abs() < EPS);
                let m = self.fms.by_sid(h.sid).unwrap();
                assert!((m.cell_at(e.cell).remaining - mrfu).abs() < EPS);
                best_sdfu = best_sdfu.max(if mrfu > 0.0 { want + mrfu } else { 0.0 });
            }
            assert!((h.sdfu - best_sdfu).abs() < EPS);
        }

        let (ilist, slist) = enumerate_extensions(chain, &self.fms);
        for (kind, list) in [
            (ExtensionKind::Itemset, ilist),
            (ExtensionKind::Sequence, slist),
        ] {
            for f in list {
                let child = match kind {
                    ExtensionKind::Itemset => fs.i_extend(f).unwrap(),
                    ExtensionKind::Sequence => fs.s_extend(f),
                };
                let cc = project(fs, chain, f, kind, &self.fms).unwrap();
                assert!(!cc.is_empty());
                self.node(&child, &cc, Some(&sids));
            }
        }
    }
}

fn check_db(db: &QDatabase) -> usize {
    let mf = MembershipFunction::reference();
    let fms = build_fmatrix_set(db, &mf);
    let roots = build_initial_chains(&fms);
    let mut c = Check {
        db,
        eng: FuzzyEngine::for_database(db, &mf),
        by_sid: db.sequences().iter().map(|q| (q.sid, q)).collect(),
        fms,
        nodes: 0,
    };
    for (f, chain) in &roots {
        c.node(&FSequence::single(*f), chain, None);
    }
    c.nodes
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chains_agree_with_engine(db in common::arb_db()) {
        check_db(&db);
    }
}

#[test]
fn example_tree_is_fully_checked() {
    let t = fumine_core::UtilityTable::new([
        ("a", 2.0),
        ("b", 1.0),
        ("c", 3.0),
        ("d", 4.0),
        ("e", 2.0),
        ("f", 5.0),
    ])
    .unwrap();
    let db = fumine_core::io::parse_database_str(
        "b:2 d:3 -1 a:3 e:2 -1 b:1 c:4 e:3 -1 -2\n\
         a:3 c:4 -1 a:4 d:1 -1 a:4 c:2 e:1 -1 d:5 -1 -2\n\
         a:1 c:2 -1 e:2 -1 a:2 d:3 e:1 -1 -2\n\
         a:1 -1 a:3 c:1 -1 d:4 -1 f:1 -1 -2\n",
        "example",
        t,
    )
    .unwrap();
    let n = check_db(&db);
    // every pattern with positive fu is a tree node
    let mf = MembershipFunction::reference();
    let all = fumine_core::oracle::brute_force_mine(
        &db,
        &mf,
        &fumine_core::oracle::OracleConfig::complete(1e-12, &db),
    )
    .unwrap();
    assert_eq!(n, all.len());
}
