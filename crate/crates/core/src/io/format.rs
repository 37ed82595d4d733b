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

//! Text formats for databases, utility tables, membership functions and
//! mining results.
//!
//! Database lines hold `item:quantity` tokens, `-1` closes an itemset and
//! `-2` closes the sequence. Lines starting with `#` are comments. SIDs follow
//! line order from 1.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::miner::{MiningResult, Pattern};
use crate::model::{
    FItem, FItemset, FSequence, MembershipFunction, QDatabase, QItem, QItemset, QSequence,
    UtilityTable,
};

pub(crate) fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

struct Cursor<'a> {
    source: &'a str,
    line: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn err(&self, byte: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            source_name: self.source.to_string(),
            line: self.line,
            column: self.text[..byte.min(self.text.len())].chars().count() + 1,
            message: message.into(),
        }
    }

    /// Whitespace separated tokens with their byte offsets.
    fn tokens(&self) -> impl Iterator<Item = (usize, &'a str)> + 'a {
        let text = self.text;
        text.split(' ')
            .scan(0usize, move |off, tok| {
                let start = *off;
                *off += tok.len() + 1;
                Some((start, tok))
            })
            .filter(|(_, t)| !t.is_empty())
    }
}

/// Non-blank, non-comment lines with their 1-based numbers.
fn content_lines<'a>(source: &'a str, text: &'a str) -> impl Iterator<Item = Cursor<'a>> + 'a {
    text.lines().enumerate().filter_map(move |(n, l)| {
        let l = l.trim_end();
        if l.trim_start().is_empty() || l.trim_start().starts_with('#') {
            None
        } else {
            Some(Cursor {
                source,
                line: n + 1,
                text: l,
            })
        }
    })
}

pub fn parse_utility_table_str(text: &str, source: &str) -> Result<UtilityTable> {
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for cur in content_lines(source, text) {
        let toks: Vec<_> = cur.tokens().collect();
        if toks.len() != 2 {
            return Err(cur.err(0, "expected `item price`"));
        }
        let (name_at, name) = toks[0];
        let (price_at, price) = toks[1];
        let p: f64 = price
            .parse()
            .map_err(|_| cur.err(price_at, format!("malformed price `{price}`")))?;
        if !p.is_finite() || p <= 0.0 {
            return Err(cur.err(price_at, format!("price must be positive, got `{price}`")));
        }
        if !seen.insert(name.to_string()) {
            return Err(cur.err(name_at, format!("duplicate item `{name}`")));
        }
        entries.push((name.to_string(), p));
    }
    UtilityTable::new(entries)
}

pub fn parse_database_str(text: &str, source: &str, table: UtilityTable) -> Result<QDatabase> {
    let mut sequences = Vec::new();
    for cur in content_lines(source, text) {
        let mut itemsets = Vec::new();
        let mut current: Vec<QItem> = Vec::new();
        let mut closed = false;
        for (at, tok) in cur.tokens() {
            if closed {
                return Err(cur.err(at, "token after `-2`"));
            }
            match tok {
                "-1" => {
                    if current.is_empty() {
                        return Err(cur.err(at, "empty itemset"));
                    }
                    itemsets.push(QItemset::new(std::mem::take(&mut current))?);
                }
                "-2" => {
                    if !current.is_empty() {
                        itemsets.push(QItemset::new(std::mem::take(&mut current))?);
                    }
                    if itemsets.is_empty() {
                        return Err(cur.err(at, "empty sequence"));
                    }
                    closed = true;
                }
                _ => {
                    let Some((name, qty)) = tok.split_once(':') else {
                        return Err(cur.err(at, format!("malformed token `{tok}`")));
                    };
                    let item = table
                        .item(name)
                        .ok_or_else(|| cur.err(at, format!("unknown item `{name}`")))?;
                    let qat = at + name.len() + 1;
                    let q: i64 = qty
                        .parse()
                        .map_err(|_| cur.err(qat, format!("malformed quantity `{qty}`")))?;
                    if q < 1 || q > u32::MAX as i64 {
                        return Err(cur.err(qat, format!("quantity must be at least 1, got {q}")));
                    }
                    if current.iter().any(|x| x.item == item) {
                        return Err(cur.err(at, format!("duplicate item `{name}` in itemset")));
                    }
                    current.push(QItem::new(item, q as u32));
                }
            }
        }
        if !closed {
            return Err(cur.err(cur.text.len(), "sequence not terminated by `-2`"));
        }
        sequences.push(QSequence::new(sequences.len() as u32 + 1, itemsets)?);
    }
    QDatabase::new(sequences, table)
}

/// Reads a database and its utility table.
pub fn parse_database(db_path: &Path, utility_path: &Path) -> Result<QDatabase> {
    let table = parse_utility_table_str(
        &read_file(utility_path)?,
        &utility_path.display().to_string(),
    )?;
    parse_database_str(&read_file(db_path)?, &db_path.display().to_string(), table)
}

pub fn parse_membership_str(text: &str, source: &str) -> Result<MembershipFunction> {
    let mut curves = Vec::new();
    for cur in content_lines(source, text) {
        let mut toks = cur.tokens();
        match toks.next() {
            Some((_, "region")) => {}
            Some((at, t)) => return Err(cur.err(at, format!("expected `region`, got `{t}`"))),
            None => unreachable!(),
        }
        let Some((_, label)) = toks.next() else {
            return Err(cur.err(cur.text.len(), "missing region label"));
        };
        let mut pts = Vec::new();
        for (at, tok) in toks {
            let parsed = tok
                .split_once(':')
                .and_then(|(u, f)| Some((u.parse::<f64>().ok()?, f.parse::<f64>().ok()?)));
            match parsed {
                Some(p) => pts.push(p),
                None => return Err(cur.err(at, format!("malformed breakpoint `{tok}`"))),
            }
        }
        // validate the line on its own so errors carry its position
        MembershipFunction::new(vec![(label, pts.clone())])
            .map_err(|e| cur.err(0, e.to_string()))?;
        curves.push((label.to_string(), pts));
    }
    MembershipFunction::new(curves)
}

pub fn parse_membership(path: &Path) -> Result<MembershipFunction> {
    parse_membership_str(&read_file(path)?, &path.display().to_string())
}

pub fn write_database_str(db: &QDatabase) -> String {
    let t = db.utility_table();
    let mut out = String::new();
    for qs in db.sequences() {
        for qx in qs.itemsets() {
            for q in qx.items() {
                let _ = write!(out, "{}:{} ", t.name(q.item), q.quantity);
            }
            out.push_str("-1 ");
        }
        out.push_str("-2\n");
    }
    out
}

pub fn write_utility_table_str(table: &UtilityTable) -> String {
    let mut out = String::new();
    for (_, name, p) in table.iter() {
        let _ = writeln!(out, "{name} {p}");
    }
    out
}

pub fn write_membership_str(mf: &MembershipFunction) -> String {
    let mut out = String::new();
    for r in 0..mf.region_count() {
        out.push_str("region ");
        out.push_str(mf.label(r));
        for &(u, f) in mf.curve(r) {
            let _ = write!(out, " {u}:{f:?}");
        }
        out.push('\n');
    }
    out
}

pub fn write_database(db: &QDatabase, db_path: &Path, utility_path: &Path) -> Result<()> {
    write_file(db_path, &write_database_str(db))?;
    write_file(utility_path, &write_utility_table_str(db.utility_table()))
}

pub fn write_membership(mf: &MembershipFunction, path: &Path) -> Result<()> {
    write_file(path, &write_membership_str(mf))
}

/// `a.Middle e.Middle -1 b.Low`: f-items as `item.Region`, `-1` between
/// itemsets.
pub fn render_pattern(fs: &FSequence, table: &UtilityTable, mf: &MembershipFunction) -> String {
    let mut out = String::new();
    for (j, fx) in fs.itemsets().iter().enumerate() {
        if j > 0 {
            out.push_str(" -1");
        }
        for fi in fx.items() {
            if !out.is_empty() {
                out.push(' ');
            }
            let _ = write!(out, "{}.{}", table.name(fi.item), mf.label(fi.region()));
        }
    }
    out
}

/// Inverse of [`render_pattern`]; a trailing `-2` is accepted.
pub fn parse_pattern(s: &str, table: &UtilityTable, mf: &MembershipFunction) -> Result<FSequence> {
    let mut itemsets = Vec::new();
    let mut current = Vec::new();
    for tok in s.split_whitespace() {
        match tok {
            "-1" | "-2" => {
                if !current.is_empty() {
                    itemsets.push(FItemset::new(std::mem::take(&mut current))?);
                }
                if tok == "-2" {
                    break;
                }
            }
            _ => {
                let (name, label) = tok
                    .rsplit_once('.')
                    .ok_or_else(|| Error::Invalid(format!("malformed f-item `{tok}`")))?;
                current.push(FItem::new(
                    table.item_or_err(name)?,
                    mf.region_or_err(label)?,
                ));
            }
        }
    }
    if !current.is_empty() {
        itemsets.push(FItemset::new(current)?);
    }
    FSequence::new(itemsets)
}

pub fn write_results_str(
    result: &MiningResult,
    table: &UtilityTable,
    mf: &MembershipFunction,
) -> String {
    let mut out = String::new();
    for p in &result.patterns {
        let _ = writeln!(
            out,
            "{} -2 #FU: {:.4}",
            render_pattern(&p.sequence, table, mf),
            p.fu
        );
    }
    let _ = writeln!(out, "# patterns: {}", result.patterns.len());
    out
}

pub fn write_results(
    result: &MiningResult,
    table: &UtilityTable,
    mf: &MembershipFunction,
    path: &Path,
) -> Result<()> {
    write_file(path, &write_results_str(result, table, mf))
}

/// Reads a result file back. FU values carry the file's four decimals.
pub fn parse_results_str(
    text: &str,
    source: &str,
    table: &UtilityTable,
    mf: &MembershipFunction,
) -> Result<MiningResult> {
    let mut result = MiningResult::default();
    for cur in content_lines(source, text) {
        let Some((pat, fu)) = cur.text.split_once("#FU:") else {
            return Err(cur.err(0, "missing `#FU:`"));
        };
        let at = pat.len() + 4;
        let fu: f64 = fu
            .trim()
            .parse()
            .map_err(|_| cur.err(at, format!("malformed utility `{}`", fu.trim())))?;
        let sequence = parse_pattern(pat, table, mf).map_err(|e| cur.err(0, e.to_string()))?;
        result.patterns.push(Pattern { sequence, fu });
    }
    result.sort();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::example_db;

    pub(crate) const EXAMPLE_DB: &str = "\
# running example
b:2 d:3 -1 a:3 e:2 -1 b:1 c:4 e:3 -1 -2
a:3 c:4 -1 a:4 d:1 -1 a:4 c:2 e:1 -1 d:5 -1 -2
a:1 c:2 -1 e:2 -1 a:2 d:3 e:1 -1 -2
a:1 -1 a:3 c:1 -1 d:4 -1 f:1 -1 -2
";
    pub(crate) const EXAMPLE_UT: &str = "a 2\nb 1\nc 3\nd 4\ne 2\nf 5\n";
    pub(crate) const MFA: &str =
        "region Low 1:1.0 6:0.0\nregion Middle 1:0.0 6:1.0 11:0.0\nregion High 6:0.0 11:1.0\n";

    fn table() -> UtilityTable {
        parse_utility_table_str(EXAMPLE_UT, "ut").unwrap()
    }

    fn parse_err(text: &str) -> (usize, usize) {
        match parse_database_str(text, "db", table()) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn example_database_parses() {
        let db = parse_database_str(EXAMPLE_DB, "db", table()).unwrap();
        assert_eq!(db, example_db());
        assert_eq!(db.total_utility(), 171.0);
        assert_eq!(db.sequences()[2].sid, 3);
        let t = db.utility_table();
        assert_eq!(t.price(t.item("d").unwrap()).unwrap(), 4.0);
    }

    #[test]
    fn database_round_trip() {
        let db = example_db();
        let text = write_database_str(&db);
        assert_eq!(
            text.lines().next().unwrap(),
            "b:2 d:3 -1 a:3 e:2 -1 b:1 c:4 e:3 -1 -2"
        );
        let back = parse_database_str(&text, "db", table()).unwrap();
        assert_eq!(back, db);
        let ut = write_utility_table_str(db.utility_table());
        assert!(ut.lines().any(|l| l == "d 4"));
        assert_eq!(
            parse_utility_table_str(&ut, "ut").unwrap(),
            *db.utility_table()
        );
    }

    #[test]
    fn database_diagnostics() {
        assert_eq!(parse_err("a:0 -1 -2\n"), (1, 3));
        assert_eq!(parse_err("a:1 -1 -2\n# c\nb:1 z:2 -1 -2\n"), (3, 5));
        assert_eq!(parse_err("a:1 a:2 -1 -2"), (1, 5));
        assert_eq!(parse_err("a:1 -1"), (1, 7));
        assert_eq!(parse_err("a -1 -2"), (1, 1));
        assert_eq!(parse_err("a:1 -1 -2 b:1"), (1, 11));
        assert_eq!(parse_err("-1 -2"), (1, 1));
        assert_eq!(parse_err("a:x -1 -2"), (1, 3));
        // items out of name order are accepted and sorted
        let db = parse_database_str("d:1 a:1 -1 -2", "db", table()).unwrap();
        assert_eq!(write_database_str(&db), "a:1 d:1 -1 -2\n");
    }

    #[test]
    fn utility_diagnostics() {
        assert!(matches!(
            parse_utility_table_str("a 1\na 2\n", "ut"),
            Err(Error::Parse {
                line: 2,
                column: 1,
                ..
            })
        ));
        assert!(matches!(
            parse_utility_table_str("a -1\n", "ut"),
            Err(Error::Parse {
                line: 1,
                column: 3,
                ..
            })
        ));
        assert!(parse_utility_table_str("a\n", "ut").is_err());
        assert!(parse_utility_table_str("a b\n", "ut").is_err());
    }

    #[test]
    fn membership_files() {
        let mf = parse_membership_str(MFA, "mf").unwrap();
        assert_eq!(mf, MembershipFunction::reference());
        assert_eq!(write_membership_str(&mf), MFA);
        assert!(matches!(
            parse_membership_str("region Low 1:1.5\n", "mf"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_membership_str("region A 1:1.0 1:0.0\n", "mf").is_err());
        assert!(parse_membership_str("regio A 1:1.0\n", "mf").is_err());
        assert!(parse_membership_str("region A 1:1.0\nregion A 2:1.0\n", "mf").is_err());
        let one = parse_membership_str("region Any 0:1.0\n", "mf").unwrap();
        assert_eq!(one.region_count(), 1);
    }

    #[test]
    fn result_rendering() {
        let db = example_db();
        let mf = MembershipFunction::reference();
        let t = db.utility_table();
        let fi = |n: &str, r: &str| FItem::new(t.item(n).unwrap(), mf.region_or_err(r).unwrap());
        let s_ext = FSequence::single(fi("a", "Middle")).s_extend(fi("e", "Middle"));
        let i_ext = FSequence::single(fi("a", "Middle"))
            .i_extend(fi("e", "Middle"))
            .unwrap();
        let mut r = MiningResult {
            patterns: vec![
                Pattern {
                    sequence: s_ext.clone(),
                    fu: 21.2,
                },
                Pattern {
                    sequence: i_ext.clone(),
                    fu: 8.4,
                },
            ],
            ..Default::default()
        };
        r.sort();
        let text = write_results_str(&r, t, &mf);
        assert!(text.contains("a.Middle -1 e.Middle -2 #FU: 21.2000\n"));
        assert!(text.contains("a.Middle e.Middle -2 #FU: 8.4000\n"));
        assert!(text.ends_with("# patterns: 2\n"));
        let back = parse_results_str(&text, "r", t, &mf).unwrap();
        assert_eq!(write_results_str(&back, t, &mf), text);
        assert_eq!(back.get(&s_ext), Some(21.2));

        assert_eq!(
            write_results_str(&MiningResult::default(), t, &mf),
            "# patterns: 0\n"
        );
        assert_eq!(
            parse_pattern("a.Middle -1 e.Middle -2", t, &mf).unwrap(),
            s_ext
        );
        assert!(parse_pattern("a.Huge", t, &mf).is_err());
        assert!(parse_pattern("e.Low a.Low", t, &mf).is_err());
    }

    #[test]
    fn fu_rounds_half_even() {
        let t = table();
        let mf = MembershipFunction::reference();
        let fs = FSequence::single(FItem::new(t.item("a").unwrap(), 0));
        let r = MiningResult {
            patterns: vec![Pattern {
                sequence: fs,
                fu: 0.09375,
            }],
            ..Default::default()
        };
        assert!(write_results_str(&r, &t, &mf).starts_with("a.Low -2 #FU: 0.0938"));
        let r = MiningResult {
            patterns: vec![Pattern {
                sequence: r.patterns[0].sequence.clone(),
                fu: 2.03125,
            }],
            ..Default::default()
        };
        assert!(write_results_str(&r, &t, &mf).starts_with("a.Low -2 #FU: 2.0312"));
    }
}
