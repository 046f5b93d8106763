//! `blocks` — block decompositions of parabolic category O for classical
//! root systems, from the command line.
//!
//! Exit codes: 0 success, 1 cross-pipeline disagreement (a finding), 2 input
//! error.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use blocks_core::blocks::{block_decomposition_oracle, decomposition_from_graph, linkage_graph};
use blocks_core::decomposition::{factorize, render_t_table, FactorTree, System};
use blocks_core::jantzen::jantzen_row;
use blocks_core::partitions::{
    compatible_pairs, count_from_partitions, nonempty_criterion, pi_i, richardson,
};
use blocks_core::separability::{all_separable_pairs, predicted_block_count};
use blocks_core::weights::{
    canonical_dominant, enumerate_coset, is_dominant, singular_set, SingularData, Weight,
};
use blocks_core::{Family, ParabolicData, RootSystem};

// =============================================================================
// Argument parsing
// =============================================================================

#[derive(Parser)]
#[command(
    name = "blocks",
    version,
    about = "Block decomposition of parabolic BGG category O^p (families A, B, C, D)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the coset Wλ̄ ∩ Λ_I^+ with sign parities and T(λ) tables.
    Enumerate(SpecArgs),
    /// Print all Jantzen coefficients c(λ, μ) with witness roots.
    Jantzen(SpecArgs),
    /// Run all pipelines (oracle, separable pairs, partitions, factorization)
    /// and report the block count with an agreement verdict.
    Blocks(SpecArgs),
    /// List the separable pairs 𝒟 with classes and the predicted count.
    Separable(SpecArgs),
    /// Print the partition data: π_I, π_J, duals, Richardson orbit,
    /// nonemptiness, compatible pairs 𝒞, and the predicted count.
    Partitions(SpecArgs),
    /// Factorize into pseudo-indecomposable subsystems and print the tree.
    Factorize(SpecArgs),
    /// Exhaustively verify every I × realizable J of a family up to a rank.
    Sweep(SweepArgs),
}

/// A system specification: family, rank, parabolic subset I, and the
/// infinitesimal character (J or an explicit dominant weight).
#[derive(Args)]
struct SpecArgs {
    /// Family letter: A, B, C or D.
    family: String,
    /// Rank n (number of coordinates).
    rank: usize,
    /// I as comma-separated simple-root indices ("" or "none" for ∅).
    #[arg(long, conflicts_with = "exclude")]
    include: Option<String>,
    /// Δ∖I as comma-separated simple-root indices ("" or "none" for ∅).
    #[arg(long)]
    exclude: Option<String>,
    /// J (the singular set) as comma-separated simple-root indices.
    #[arg(long, conflicts_with = "weight")]
    singular: Option<String>,
    /// Dominant weight λ̄ as comma-separated coordinates (halves as "3/2").
    #[arg(long)]
    weight: Option<String>,
    /// Apply the φ-twist (negate the last coordinate, swap α_{n−1} ↔ α_n in
    /// I) before computing; family D only.
    #[arg(long)]
    nonstandard: bool,
    /// Machine-readable JSON output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Family letter: A, B, C or D.
    family: String,
    /// Largest rank to sweep (every rank from the family minimum up).
    max_rank: usize,
    /// Allow max_rank > 7 (exponentially many cells).
    #[arg(long)]
    force: bool,
    /// Write findings as JSON lines to this path.
    #[arg(long)]
    findings: Option<String>,
}

struct ResolvedSpec {
    rs: RootSystem,
    pd: ParabolicData,
    lambda_bar: Weight,
    sd: SingularData,
}

fn parse_index_list(text: &str) -> Result<Vec<usize>, String> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "none" {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad index {t:?}"))
        })
        .collect()
}

fn parse_weight(text: &str) -> Result<Weight, String> {
    let mut coords2 = Vec::new();
    for t in text.split(',') {
        let t = t.trim();
        let doubled = if let Some(num) = t.strip_suffix("/2") {
            num.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad coordinate {t:?}"))?
        } else {
            2 * t
                .parse::<i64>()
                .map_err(|_| format!("bad coordinate {t:?}"))?
        };
        coords2.push(doubled);
    }
    Ok(Weight::from_doubled(coords2))
}

fn resolve(args: &SpecArgs) -> Result<ResolvedSpec, String> {
    let family = args
        .family
        .chars()
        .next()
        .and_then(Family::from_char)
        .ok_or_else(|| format!("unknown family {:?} (expected A, B, C or D)", args.family))?;
    let rs = RootSystem::new(family, args.rank).map_err(|e| e.to_string())?;
    let ns = rs.num_simple();

    let mut included: Vec<usize> = match (&args.include, &args.exclude) {
        (Some(inc), None) => parse_index_list(inc)?,
        (None, Some(exc)) => {
            let excluded = parse_index_list(exc)?;
            (1..=ns).filter(|i| !excluded.contains(i)).collect()
        }
        (None, None) => return Err("specify the parabolic: --include or --exclude".into()),
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    if let Some(&bad) = included.iter().find(|&&i| i < 1 || i > ns) {
        return Err(format!("simple-root index {bad} out of range 1..={ns}"));
    }

    let mut lambda_bar = match (&args.singular, &args.weight) {
        (Some(j), None) => {
            let j = parse_index_list(j)?;
            if let Some(&bad) = j.iter().find(|&&i| i < 1 || i > ns) {
                return Err(format!("singular index {bad} out of range 1..={ns}"));
            }
            canonical_dominant(&rs, &j).map_err(|e| format!("unrealizable J {j:?}: {e}"))?
        }
        (None, Some(w)) => {
            let w = parse_weight(w)?;
            if w.len() != args.rank {
                return Err(format!(
                    "weight has {} coordinates, expected {}",
                    w.len(),
                    args.rank
                ));
            }
            if !is_dominant(&rs, &w) {
                return Err(format!("weight {w} is not dominant"));
            }
            w
        }
        (None, None) => {
            return Err("specify the infinitesimal character: --singular or --weight".into())
        }
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };

    if args.nonstandard {
        if family != Family::D {
            return Err("--nonstandard only applies to family D".into());
        }
        included = ParabolicData::phi_subset(rs, &included);
        lambda_bar = lambda_bar.phi();
    }

    let pd = ParabolicData::new(rs, &included);
    let sd = singular_set(&rs, &lambda_bar).map_err(|e| e.to_string())?;
    Ok(ResolvedSpec {
        rs,
        pd,
        lambda_bar,
        sd,
    })
}

// =============================================================================
// Subcommands
// =============================================================================

fn header(spec: &ResolvedSpec) -> String {
    format!(
        "{}{} I={:?} (Δ∖I={:?}) J={:?} λ̄={}",
        spec.rs.family.as_char(),
        spec.rs.rank,
        spec.pd.included,
        spec.pd.excluded,
        spec.sd.j_included,
        spec.lambda_bar
    )
}

fn cmd_enumerate(spec: &ResolvedSpec, json: bool) -> ExitCode {
    let coset = enumerate_coset(&spec.pd, &spec.lambda_bar);
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            family: char,
            rank: usize,
            included: &'a [usize],
            j_included: &'a [usize],
            lambda_bar: &'a Weight,
            count: usize,
            coset: Vec<CosetEntry>,
        }
        #[derive(Serialize)]
        struct CosetEntry {
            weight: Weight,
            parity: u8,
        }
        let out = Out {
            family: spec.rs.family.as_char(),
            rank: spec.rs.rank,
            included: &spec.pd.included,
            j_included: &spec.sd.j_included,
            lambda_bar: &spec.lambda_bar,
            count: coset.len(),
            coset: coset
                .into_iter()
                .map(|w| CosetEntry {
                    parity: w.parity(),
                    weight: w,
                })
                .collect(),
        };
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return ExitCode::SUCCESS;
    }
    println!("{}", header(spec));
    println!("coset size {}", coset.len());
    for w in &coset {
        println!("\nλ = {w}   parity {}", w.parity());
        print!("{}", render_t_table(&spec.pd, &spec.sd, w));
    }
    ExitCode::SUCCESS
}

fn cmd_jantzen(spec: &ResolvedSpec, json: bool) -> ExitCode {
    let coset = enumerate_coset(&spec.pd, &spec.lambda_bar);
    #[derive(Serialize)]
    struct Entry {
        source: Weight,
        target: Weight,
        c: i64,
        witnesses: Vec<(String, u8)>,
    }
    let mut entries = Vec::new();
    for lam in &coset {
        for (_, e) in jantzen_row(&spec.pd, lam) {
            entries.push(Entry {
                source: e.source,
                target: e.target,
                c: e.c,
                witnesses: e
                    .witnesses
                    .iter()
                    .map(|(r, p)| (r.to_string(), *p))
                    .collect(),
            });
        }
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&entries).unwrap());
        return ExitCode::SUCCESS;
    }
    println!("{}", header(spec));
    if entries.is_empty() {
        println!("all Jantzen rows empty (semisimple)");
    }
    for e in &entries {
        let wit: Vec<String> = e
            .witnesses
            .iter()
            .map(|(r, p)| format!("{r}({})", if *p == 0 { '+' } else { '-' }))
            .collect();
        println!(
            "c({}, {}) = {}   witnesses: {}",
            e.source,
            e.target,
            e.c,
            wit.join(", ")
        );
    }
    ExitCode::SUCCESS
}

fn cmd_blocks(spec: &ResolvedSpec, json: bool) -> ExitCode {
    let graph = linkage_graph(&spec.pd, &spec.lambda_bar);
    let dec = decomposition_from_graph(&graph);
    let oracle = dec.oracle_count as u64;
    let separability = predicted_block_count(&spec.pd, &spec.sd);
    let partitions = count_from_partitions(&spec.pd, &spec.sd.pd);
    let factorized = if graph.vertices.is_empty() {
        Ok(0u64)
    } else {
        factorize(&spec.pd, &spec.lambda_bar).map(|t| t.block_count_product())
    };

    let mut counts = vec![("oracle", Ok(oracle))];
    counts.push(("separability", separability.map_err(|e| e.to_string())));
    counts.push(("partitions", partitions.map_err(|e| e.to_string())));
    counts.push(("factorize", factorized.map_err(|e| e.to_string())));
    let agree = counts
        .iter()
        .all(|(_, c)| matches!(c, Ok(v) if *v == oracle));

    if json {
        #[derive(Serialize)]
        struct Out {
            header: String,
            oracle: u64,
            separability: Result<u64, String>,
            partitions: Result<u64, String>,
            factorize: Result<u64, String>,
            agree: bool,
            blocks: Vec<Vec<Weight>>,
        }
        let blocks: Vec<Vec<Weight>> = dec
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| graph.vertices[i].clone()).collect())
            .collect();
        let mut it = counts.into_iter();
        it.next();
        let out = Out {
            header: header(spec),
            oracle,
            separability: it.next().unwrap().1,
            partitions: it.next().unwrap().1,
            factorize: it.next().unwrap().1,
            agree,
            blocks,
        };
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("{}", header(spec));
        let summary: Vec<String> = counts
            .iter()
            .map(|(name, c)| match c {
                Ok(v) => format!("{name}={v}"),
                Err(e) => format!("{name}=error({e})"),
            })
            .collect();
        println!(
            "{} {}",
            summary.join(" "),
            if agree { "AGREE" } else { "DISAGREE" }
        );
        for (i, b) in dec.blocks.iter().enumerate() {
            let ws: Vec<String> = b.iter().map(|&v| graph.vertices[v].to_string()).collect();
            println!("block {}: {}", i + 1, ws.join("  "));
        }
    }
    if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_separable(spec: &ResolvedSpec, json: bool) -> ExitCode {
    let classes = match all_separable_pairs(&spec.pd, &spec.sd) {
        Ok(c) => c,
        Err(e) => return input_error(&e.to_string()),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&classes).unwrap());
        return ExitCode::SUCCESS;
    }
    println!("{}", header(spec));
    println!(
        "𝒟: {} pairs, {} classes ({} trivial, {} nontrivial)",
        classes.pairs.len(),
        classes.classes.len(),
        classes.trivial_classes,
        classes.nontrivial_classes
    );
    for p in &classes.pairs {
        let mut flags = vec![if p.strong { "strong" } else { "weak" }];
        if p.trivial {
            flags.push("trivial");
        }
        match p.odd {
            Some(true) => flags.push("odd"),
            Some(false) => flags.push("even"),
            None => {}
        }
        println!("  (S={:?}, S̄={:?})  {}", p.s, p.sbar, flags.join(","));
    }
    match predicted_block_count(&spec.pd, &spec.sd) {
        Ok(c) => println!("predicted block count: {c}"),
        Err(e) => println!("prediction unavailable: {e}"),
    }
    ExitCode::SUCCESS
}

fn cmd_partitions(spec: &ResolvedSpec, json: bool) -> ExitCode {
    let pd_j = &spec.sd.pd;
    let oi = pi_i(&spec.pd);
    let oj = pi_i(pd_j);
    let ri = richardson(&spec.pd);
    let rj = richardson(pd_j);
    let nonempty = nonempty_criterion(&spec.pd, pd_j);
    let cc = compatible_pairs(&spec.pd, pd_j);
    let count = count_from_partitions(&spec.pd, pd_j);
    if json {
        #[derive(Serialize)]
        struct Out<'a> {
            header: String,
            pi_i: &'a blocks_core::partitions::Orbit,
            pi_j: &'a blocks_core::partitions::Orbit,
            richardson_i: &'a blocks_core::partitions::Orbit,
            richardson_j: &'a blocks_core::partitions::Orbit,
            nonempty: Result<bool, String>,
            compatible: &'a blocks_core::partitions::CompatiblePairs,
            count: Result<u64, String>,
        }
        let out = Out {
            header: header(spec),
            pi_i: &oi,
            pi_j: &oj,
            richardson_i: &ri,
            richardson_j: &rj,
            nonempty: nonempty.map_err(|e| e.to_string()),
            compatible: &cc,
            count: count.map_err(|e| e.to_string()),
        };
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return ExitCode::SUCCESS;
    }
    println!("{}", header(spec));
    println!("π_I = {}   R_I = {:?} {}", oi.partition, ri.label, ri.partition);
    println!("π_J = {}   R_J = {:?} {}", oj.partition, rj.label, rj.partition);
    match nonempty {
        Ok(b) => println!("nonempty: {b}"),
        Err(e) => println!("nonempty: error({e})"),
    }
    println!(
        "𝒞 = {:?}  ({} classes, {} trivial, {} nontrivial)",
        cc.pairs,
        cc.classes.len(),
        cc.trivial_classes,
        cc.nontrivial_classes
    );
    match count {
        Ok(c) => println!("predicted block count: {c}"),
        Err(e) => println!("prediction unavailable: {e}"),
    }
    ExitCode::SUCCESS
}

fn print_tree(tree: &FactorTree, indent: usize) {
    let sys = &tree.system;
    let pad = "  ".repeat(indent);
    let kind = if tree.split.is_none() { "leaf" } else { "system" };
    println!(
        "{pad}{kind} {}{} I={:?} λ̄={}{}",
        sys.family.as_char(),
        sys.rank,
        sys.included,
        sys.lambda_bar,
        if sys.phi_normalized { " (φ-normalized)" } else { "" }
    );
    if let Some(sp) = &tree.split {
        let f = &sp.factor;
        println!(
            "{pad}  split (S={:?}, S̄={:?}) H₁={:?} H₂={:?}{}{}",
            f.s,
            f.sbar,
            f.h1,
            f.h2,
            if f.d_odd { " odd" } else { "" },
            if f.d_even_nontrivial {
                " even-nontrivial (⊔)"
            } else {
                ""
            }
        );
        for child in &sp.children {
            print_tree(child, indent + 1);
        }
    }
}

fn cmd_factorize(spec: &ResolvedSpec, json: bool) -> ExitCode {
    let tree = match factorize(&spec.pd, &spec.lambda_bar) {
        Ok(t) => t,
        Err(e) => return input_error(&e.to_string()),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&tree).unwrap());
        return ExitCode::SUCCESS;
    }
    println!("{}", header(spec));
    print_tree(&tree, 0);
    let leaves: Vec<&System> = tree.leaves();
    println!(
        "{} leaves, {} union splits, block count {}",
        leaves.len(),
        tree.union_splits(),
        tree.block_count_product()
    );
    ExitCode::SUCCESS
}

// =============================================================================
// Sweep
// =============================================================================

#[derive(Serialize, Clone)]
struct Finding {
    family: char,
    rank: usize,
    included: Vec<usize>,
    j: Vec<usize>,
    kind: String,
    detail: String,
}

fn sweep_cell(
    rs: RootSystem,
    pd: &ParabolicData,
    j: &[usize],
    lambda_bar: &Weight,
    findings: &mut Vec<Finding>,
) {
    let mut report = |kind: &str, detail: String| {
        findings.push(Finding {
            family: rs.family.as_char(),
            rank: rs.rank,
            included: pd.included.clone(),
            j: j.to_vec(),
            kind: kind.into(),
            detail,
        });
    };
    let coset = enumerate_coset(pd, lambda_bar);
    let pd_j = ParabolicData::new(rs, j);
    match nonempty_criterion(pd, &pd_j) {
        Ok(b) => {
            if b != !coset.is_empty() {
                report(
                    "nonemptiness",
                    format!("criterion {b}, coset size {}", coset.len()),
                );
            }
        }
        Err(e) => report("nonemptiness", format!("error: {e}")),
    }
    let oracle = block_decomposition_oracle(pd, lambda_bar).oracle_count as u64;
    let sd = match singular_set(&rs, lambda_bar) {
        Ok(sd) => sd,
        Err(e) => {
            report("singular-set", format!("error: {e}"));
            return;
        }
    };
    match predicted_block_count(pd, &sd) {
        Ok(c) => {
            if c != oracle {
                report("separability", format!("predicted {c}, oracle {oracle}"));
            }
        }
        Err(e) => report("separability", format!("error: {e}")),
    }
    match count_from_partitions(pd, &pd_j) {
        Ok(c) => {
            if c != oracle {
                report("partitions", format!("predicted {c}, oracle {oracle}"));
            }
        }
        Err(e) => report("partitions", format!("error: {e}")),
    }
    if !coset.is_empty() {
        match factorize(pd, lambda_bar) {
            Ok(t) => {
                let c = t.block_count_product();
                if c != oracle {
                    report("factorize", format!("leaf product {c}, oracle {oracle}"));
                }
            }
            Err(e) => report("factorize", format!("error: {e}")),
        }
        // Power-of-two bound and the type-A collapse.
        if rs.family == Family::A && oracle != 1 {
            report("type-a", format!("{oracle} blocks in type A"));
        }
        if !oracle.is_power_of_two() {
            report("power-of-two", format!("{oracle} is not a power of two"));
        } else {
            let p = oracle.trailing_zeros() as usize;
            let bound = pd.m.min(sd.m_bar());
            if p > 0 && p >= bound {
                report(
                    "power-of-two",
                    format!("2^{p} blocks with min(m, m̄) = {bound}"),
                );
            }
        }
    }
}

fn cmd_sweep(args: &SweepArgs) -> ExitCode {
    let Some(family) = args.family.chars().next().and_then(Family::from_char) else {
        return input_error(&format!("unknown family {:?}", args.family));
    };
    if args.max_rank > 7 && !args.force {
        return input_error("max_rank > 7 needs --force (exponentially many cells)");
    }
    let min_rank = match family {
        Family::A => 2,
        Family::B | Family::C => 1,
        Family::D => 2,
    };
    if args.max_rank < min_rank {
        return input_error(&format!("family {} needs rank ≥ {min_rank}", family.as_char()));
    }

    let mut cell_keys: Vec<(usize, u32)> = Vec::new();
    for rank in min_rank..=args.max_rank {
        let rs = RootSystem::new(family, rank).expect("valid rank");
        for imask in 0..(1u32 << rs.num_simple()) {
            cell_keys.push((rank, imask));
        }
    }
    let results: Vec<(u64, Vec<Finding>)> = cell_keys
        .par_iter()
        .map(|&(rank, imask)| {
            let rs = RootSystem::new(family, rank).expect("valid rank");
            let ns = rs.num_simple();
            let inc: Vec<usize> = (1..=ns).filter(|i| imask & (1 << (i - 1)) != 0).collect();
            let pd = ParabolicData::new(rs, &inc);
            let mut cells = 0u64;
            let mut findings = Vec::new();
            for jmask in 0..(1u32 << ns) {
                let j: Vec<usize> = (1..=ns).filter(|i| jmask & (1 << (i - 1)) != 0).collect();
                let Ok(lambda_bar) = canonical_dominant(&rs, &j) else {
                    continue;
                };
                cells += 1;
                sweep_cell(rs, &pd, &j, &lambda_bar, &mut findings);
            }
            (cells, findings)
        })
        .collect();

    let cells: u64 = results.iter().map(|(c, _)| c).sum();
    let findings: Vec<Finding> = results.into_iter().flat_map(|(_, f)| f).collect();
    if let Some(path) = &args.findings {
        let mut file = match std::fs::File::create(path) {
            Ok(f) => f,
            Err(e) => return input_error(&format!("cannot write {path}: {e}")),
        };
        for f in &findings {
            writeln!(file, "{}", serde_json::to_string(f).unwrap()).ok();
        }
    }
    for f in &findings {
        eprintln!("{}", serde_json::to_string(f).unwrap());
    }
    println!(
        "swept family {} up to rank {}: {} cells, {} findings",
        family.as_char(),
        args.max_rank,
        cells,
        findings.len()
    );
    if findings.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

// =============================================================================
// Entry point
// =============================================================================

fn input_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run_spec(args: &SpecArgs, f: fn(&ResolvedSpec, bool) -> ExitCode) -> ExitCode {
    match resolve(args) {
        Ok(spec) => f(&spec, args.json),
        Err(msg) => input_error(&msg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Enumerate(a) => run_spec(a, cmd_enumerate),
        Command::Jantzen(a) => run_spec(a, cmd_jantzen),
        Command::Blocks(a) => run_spec(a, cmd_blocks),
        Command::Separable(a) => run_spec(a, cmd_separable),
        Command::Partitions(a) => run_spec(a, cmd_partitions),
        Command::Factorize(a) => run_spec(a, cmd_factorize),
        Command::Sweep(a) => cmd_sweep(a),
    }
}
