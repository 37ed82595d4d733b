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

//! The `fumine` command line: `mine`, `gen` and `verify`.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fumine_core::io::{
    parse_database, parse_membership, write_results, write_synthetic, write_text,
    DatasetDescriptors, GeneratorParams, StatsReport,
};
use fumine_core::oracle::{
    brute_force_mine, compare_results, pfus_like_mine, OracleConfig, DEFAULT_NODE_BUDGET,
};
use fumine_core::{mine, MembershipFunction, MiningConfig, MiningResult, QDatabase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Pattern growth over fuzzy utility chains.
    Pgfum,
    /// Level-wise baseline with the sum-of-MFSU bound.
    Pfus,
    /// Exhaustive enumeration.
    Brute,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Pgfum => "pgfum",
            Algorithm::Pfus => "pfus",
            Algorithm::Brute => "brute",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fumine",
    version,
    about = "High fuzzy-utility sequential pattern mining"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mine patterns and write them to a result file.
    Mine(MineArgs),
    /// Write a seeded synthetic database and utility table.
    Gen(GenArgs),
    /// Run two algorithms and compare their results.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct Inputs {
    #[arg(long)]
    db: PathBuf,
    #[arg(long)]
    utility: PathBuf,
    #[arg(long)]
    membership: PathBuf,
    /// Minimum fuzzy utility as a fraction of the database utility, in (0, 1].
    #[arg(long)]
    min_ratio: f64,
    /// Longest pattern, in f-items.
    #[arg(long)]
    max_length: Option<usize>,
}

#[derive(Debug, Args)]
struct MineArgs {
    #[command(flatten)]
    inputs: Inputs,
    #[arg(long, value_enum, default_value_t = Algorithm::Pgfum)]
    algorithm: Algorithm,
    /// Disable pre-pruning of 1-f-sequences (pgfum only).
    #[arg(long)]
    no_ppo: bool,
    /// Disable pruning of unpromising descendants (pgfum only).
    #[arg(long)]
    no_eud: bool,
    /// Disable pruning of extensions (pgfum only).
    #[arg(long)]
    no_pes: bool,
    /// Worker threads over root subtrees; 0 mines sequentially.
    #[arg(long, default_value_t = 0)]
    parallel: usize,
    /// Write a key: value statistics report here.
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    sequences: usize,
    #[arg(long)]
    items: usize,
    /// Maximum itemsets per sequence.
    #[arg(long)]
    max_seq_len: usize,
    /// Maximum q-items per itemset.
    #[arg(long)]
    max_itemset: usize,
    #[arg(long)]
    max_qty: u32,
    #[arg(long)]
    umin: f64,
    #[arg(long)]
    umax: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    db_out: PathBuf,
    #[arg(long)]
    utility_out: PathBuf,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    inputs: Inputs,
    /// Two algorithms, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Algorithm::Pgfum, Algorithm::Brute])]
    algorithms: Vec<Algorithm>,
}

fn load(inputs: &Inputs) -> anyhow::Result<(QDatabase, MembershipFunction)> {
    let db = parse_database(&inputs.db, &inputs.utility)?;
    let mf = parse_membership(&inputs.membership)?;
    Ok((db, mf))
}

/// Runs one algorithm. Pruning switches in `cfg` only affect `Pgfum`.
pub fn run_algorithm(
    algorithm: Algorithm,
    db: &QDatabase,
    mf: &MembershipFunction,
    cfg: &MiningConfig,
) -> anyhow::Result<MiningResult> {
    cfg.validate()?;
    let r = match algorithm {
        Algorithm::Pgfum => mine(db, mf, cfg)?,
        Algorithm::Pfus => {
            if cfg.max_length.is_some() {
                bail!("--max-length is not supported by the pfus baseline");
            }
            pfus_like_mine(db, mf, cfg.xi, DEFAULT_NODE_BUDGET)?
        }
        Algorithm::Brute => {
            let mut oc = OracleConfig::complete(cfg.xi, db);
            if let Some(n) = cfg.max_length {
                oc.max_length = n;
            }
            brute_force_mine(db, mf, &oc)?
        }
    };
    Ok(r)
}

fn mining_config(inputs: &Inputs) -> MiningConfig {
    let mut cfg = MiningConfig::new(inputs.min_ratio);
    cfg.max_length = inputs.max_length;
    cfg
}

fn on_off(b: bool) -> String {
    if b { "on" } else { "off" }.to_string()
}

fn cmd_mine(a: &MineArgs) -> anyhow::Result<()> {
    let mut cfg = mining_config(&a.inputs).with_pruning(!a.no_ppo, !a.no_eud, !a.no_pes);
    cfg.parallel_width = a.parallel;
    cfg.validate()?;
    let (db, mf) = load(&a.inputs)?;
    let result = run_algorithm(a.algorithm, &db, &mf, &cfg)?;
    write_results(&result, db.utility_table(), &mf, &a.output)?;
    if let Some(path) = &a.stats {
        let report = StatsReport {
            stats: result.stats.clone(),
            dataset: DatasetDescriptors::of(&db),
            config: vec![
                ("algorithm".into(), a.algorithm.name().into()),
                ("min_ratio".into(), cfg.xi.to_string()),
                ("total_utility".into(), format!("{:.4}", db.total_utility())),
                (
                    "threshold".into(),
                    format!("{:.4}", db.total_utility() * cfg.xi),
                ),
                ("ppo".into(), on_off(cfg.enable_ppo)),
                ("eud".into(), on_off(cfg.enable_eud)),
                ("pes".into(), on_off(cfg.enable_pes)),
                (
                    "max_length".into(),
                    cfg.max_length.map_or("none".into(), |n| n.to_string()),
                ),
                ("parallel".into(), cfg.parallel_width.to_string()),
            ],
            patterns: result.len(),
        };
        write_text(path, &report.render())?;
    }
    println!(
        "{} patterns written to {}",
        result.len(),
        a.output.display()
    );
    Ok(())
}

fn cmd_gen(a: &GenArgs) -> anyhow::Result<()> {
    let params = GeneratorParams {
        n_sequences: a.sequences,
        n_items: a.items,
        max_seq_itemsets: a.max_seq_len,
        max_itemset_size: a.max_itemset,
        max_quantity: a.max_qty,
        utility_range: (a.umin, a.umax),
        seed: a.seed,
    };
    let db = write_synthetic(&params, &a.db_out, &a.utility_out)?;
    let d = DatasetDescriptors::of(&db);
    println!(
        "sequences: {} distinct_items: {} avg_seq_length: {:.4} max_seq_length: {}",
        d.sequences, d.distinct_items, d.avg_seq_length, d.max_seq_length
    );
    Ok(())
}

fn cmd_verify(a: &VerifyArgs) -> anyhow::Result<bool> {
    let [x, y] = a.algorithms[..] else {
        bail!(
            "--algorithms takes exactly two names, got {}",
            a.algorithms.len()
        );
    };
    let cfg = mining_config(&a.inputs);
    cfg.validate()?;
    let (db, mf) = load(&a.inputs)?;
    let rx = run_algorithm(x, &db, &mf, &cfg).with_context(|| x.name())?;
    let ry = run_algorithm(y, &db, &mf, &cfg).with_context(|| y.name())?;
    let rep = compare_results(&rx, &ry, 1e-9);
    let t = db.utility_table();
    let show = |p| fumine_core::io::render_pattern(p, t, &mf);
    if rep.agrees() {
        println!("MATCH {} patterns, max delta {:e}", rx.len(), rep.max_delta);
    } else {
        println!(
            "MISMATCH only in {}: {}, only in {}: {}, max delta {:e}",
            x.name(),
            rep.only_in_a.len(),
            y.name(),
            rep.only_in_b.len(),
            rep.max_delta
        );
        for p in &rep.only_in_a {
            println!("  {}: {}", x.name(), show(p));
        }
        for p in &rep.only_in_b {
            println!("  {}: {}", y.name(), show(p));
        }
    }
    Ok(rep.agrees())
}

/// Parses `argv` (program name first) and runs the subcommand. Returns the
/// process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match &cli.command {
        Command::Mine(a) => cmd_mine(a).map(|_| true),
        Command::Gen(a) => cmd_gen(a).map(|_| true),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
