//! Command-line front end: the criteria battery on catalog or user-supplied
//! groups, the exhaustive exterior-square classifier check, golden example
//! reproductions, decomposition-identity fuzzing, and root-system tables.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cusplab::catalog::{catalog, catalog_names, four_dim_names, DEFAULT_MAX_ORDER};
use cusplab::chars::character_table;
use cusplab::criteria::{classify_gl4_analogue, is_irreducible, kable_classify, KableReport};
use cusplab::groups::{closure, LinearCharacter};
use cusplab::json::group_from_json;
use cusplab::reps::Representation;
use cusplab::satake::{fuzz_identity, IdentityName, PlaceKind};
use cusplab::weyl::w0_for_levi;
use cusplab::{Error, Result};

#[derive(Parser)]
#[command(name = "cusplab", about = "Exact checks for exterior-square irreducibility")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for all randomized checks; results are deterministic per seed.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full criteria battery on a catalog entry or a JSON group file.
    Analyze {
        /// Catalog name or path to a group JSON file.
        #[arg(long)]
        group: String,
        /// Optional path to generator images overriding the group's own
        /// matrices (same JSON schema as a group).
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Exhaustive classifier check over the 4-dimensional catalog.
    Kable {
        /// "all" or a comma-separated list of catalog names.
        #[arg(long, default_value = "all")]
        catalog: String,
    },
    /// Golden reproductions of the worked examples.
    Example {
        /// One of g192, s5chain, asai, intersections.
        which: String,
    },
    /// Fuzz the registered parameter decomposition identities.
    Satake {
        /// Identity name or "all".
        #[arg(long, default_value = "all")]
        identity: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Simple-root action tables for the type-D Levi computation.
    Weyl {
        /// Single table for this n.
        #[arg(long)]
        n: Option<usize>,
        /// Tables for every supported n.
        #[arg(long)]
        all: bool,
    },
}

fn max_order() -> usize {
    std::env::var("CUSPLAB_MAX_ORDER")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

fn character_json(chi: &LinearCharacter) -> Value {
    json!({
        "order": chi.order(),
        "class_values": chi.class_values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    })
}

fn report_json(r: &KableReport) -> Value {
    json!({
        "wedge2_reducible": r.wedge2_reducible,
        "cond_a_symplectic": r.cond_a_symplectic,
        "cond_b_selftwist": r.cond_b_selftwist,
        "cond_c_proper_orthogonal": r.cond_c_proper_orthogonal,
        "equivalence_holds": r.equivalence_holds,
        "selftwist_witness": r.selftwist_witness.as_ref().map(character_json),
        "selfdual_twists": r.selfdual_twists.iter()
            .map(|(chi, t)| json!({"character": character_json(chi), "type": format!("{t:?}")}))
            .collect::<Vec<_>>(),
    })
}

fn print_report_text(name: &str, r: &KableReport) {
    println!("{name}:");
    println!("  exterior square reducible: {}", r.wedge2_reducible);
    println!("  (a) symplectic essentially self-dual: {}", r.cond_a_symplectic);
    println!("  (b) nontrivial quadratic self-twist: {}", r.cond_b_selftwist);
    println!("  (c) proper orthogonal essentially self-dual: {}", r.cond_c_proper_orthogonal);
    println!("  equivalence holds: {}", r.equivalence_holds);
}

fn load_rep(source: &str, rep_path: Option<&PathBuf>) -> Result<(String, Representation)> {
    let cap = max_order();
    if catalog_names().contains(&source) {
        let entry = catalog(source, cap)?;
        return Ok((entry.name, entry.rep));
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Error::BadInput(format!("cannot read {source}: {e}")))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::BadInput(format!("bad JSON in {source}: {e}")))?;
    let (_, gens) = group_from_json(&value)?;
    let group = Arc::new(closure(&gens, cap)?);
    let images = match rep_path {
        None => gens,
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| Error::BadInput(format!("bad JSON in {}: {e}", path.display())))?;
            group_from_json(&value)?.1
        }
    };
    let rep = Representation::from_generator_images(&group, &images)?;
    Ok((source.to_string(), rep))
}

fn run_analyze(group: &str, rep_path: Option<&PathBuf>, format: Format) -> Result<bool> {
    let (name, rep) = load_rep(group, rep_path)?;
    if rep.dim() != 4 {
        return Err(Error::DimMismatch { expected: 4, got: rep.dim() });
    }
    if !is_irreducible(&rep)? {
        return Err(Error::BadInput("the battery needs an irreducible input".into()));
    }
    let report = kable_classify(&rep)?;
    let types = classify_gl4_analogue(&rep)?;
    let type_names: Vec<String> = types.iter().map(|t| format!("{t:?}")).collect();
    match format {
        Format::Text => {
            println!("group order: {}", rep.group().order());
            print_report_text(&name, &report);
            println!("  construction types: {type_names:?}");
        }
        Format::Json => {
            let out = json!({
                "command": "analyze",
                "group": name,
                "order": rep.group().order(),
                "report": report_json(&report),
                "construction_types": type_names,
                "pass": report.equivalence_holds,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
    }
    Ok(report.equivalence_holds)
}

fn run_kable(selection: &str, format: Format) -> Result<bool> {
    let names: Vec<&str> = if selection == "all" {
        four_dim_names().to_vec()
    } else {
        selection.split(',').map(str::trim).collect()
    };
    let cap = max_order();
    let mut rows = Vec::new();
    let mut all_hold = true;
    for name in &names {
        let entry = catalog(name, cap)?;
        let report = kable_classify(&entry.rep)?;
        all_hold &= report.equivalence_holds;
        if format == Format::Text {
            print_report_text(name, &report);
        }
        rows.push(json!({"name": name, "report": report_json(&report)}));
    }
    match format {
        Format::Text => println!("equivalence holds on all {} entries: {all_hold}", names.len()),
        Format::Json => {
            let out = json!({"command": "kable", "entries": rows, "pass": all_hold});
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
    }
    Ok(all_hold)
}

fn run_example(which: &str, seed: u64, format: Format) -> Result<bool> {
    let cap = max_order();
    let (pass, payload) = match which {
        "g192" => {
            let entry = catalog("g192", cap)?;
            let report = kable_classify(&entry.rep)?;
            let wedge_irreducible = is_irreducible(&entry.rep.wedge2())?;
            let pass = entry.group.order() == 192
                && wedge_irreducible
                && !report.wedge2_reducible
                && !report.cond_a_symplectic
                && !report.cond_b_selftwist
                && !report.cond_c_proper_orthogonal
                && report.equivalence_holds;
            (pass, json!({
                "order": entry.group.order(),
                "wedge2_irreducible": wedge_irreducible,
                "report": report_json(&report),
            }))
        }
        "s5chain" => {
            let entry = catalog("s5std", cap)?;
            let wedge = entry.rep.wedge2();
            let norm_full = wedge.character().norm();
            let sub = Arc::new(entry.group.commutator_subgroup());
            let restricted = wedge.restrict(&sub)?;
            let norm_sub = restricted.character().norm();
            let table = character_table(&sub)?;
            let mut degrees: Vec<u32> = table
                .decompose(restricted.character())?
                .iter()
                .map(|&(_, _, d)| d)
                .collect();
            degrees.sort_unstable();
            let pass = norm_full.is_one()
                && norm_sub == cusplab::CycNum::from_int(2)
                && degrees == [3, 3];
            (pass, json!({
                "wedge_norm_on_group": norm_full.to_string(),
                "wedge_norm_on_index2_subgroup": norm_sub.to_string(),
                "constituent_degrees": degrees,
            }))
        }
        "asai" => {
            let cuspidal = catalog("asai(sl23)", cap)?;
            let r1 = kable_classify(&cuspidal.rep)?;
            let dihedral = catalog("asai(d8)", cap)?;
            let r2 = kable_classify(&dihedral.rep)?;
            let pass = !r1.wedge2_reducible
                && r1.equivalence_holds
                && r2.wedge2_reducible
                && r2.cond_b_selftwist
                && r2.equivalence_holds;
            (pass, json!({
                "nondihedral": report_json(&r1),
                "dihedral": report_json(&r2),
            }))
        }
        "intersections" => {
            let entry = catalog("d8xsl23", cap)?;
            let report = kable_classify(&entry.rep)?;
            let flags = [
                report.cond_a_symplectic,
                report.cond_b_selftwist,
                report.cond_c_proper_orthogonal,
            ];
            let flag_count = flags.iter().filter(|&&b| b).count();
            let mut identity_failures = 0usize;
            for id in [IdentityName::S63sym, IdentityName::S63wedge] {
                for kind in [PlaceKind::Split, PlaceKind::Inert] {
                    identity_failures += fuzz_identity(id, kind, 200, seed)?.failures.len();
                }
            }
            let pass = report.equivalence_holds && flag_count >= 2 && identity_failures == 0;
            (pass, json!({
                "report": report_json(&report),
                "conditions_met": flag_count,
                "induced_character_identity_failures": identity_failures,
            }))
        }
        other => return Err(Error::BadInput(format!("unknown example {other:?}"))),
    };
    match format {
        Format::Text => {
            println!("example {which}: {}", if pass { "pass" } else { "FAIL" });
            println!("{}", serde_json::to_string_pretty(&payload).expect("serializable"));
        }
        Format::Json => {
            let out = json!({"command": "example", "which": which, "seed": seed, "results": payload, "pass": pass});
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
    }
    Ok(pass)
}

fn run_satake(selection: &str, trials: u64, seed: u64, format: Format) -> Result<bool> {
    let ids: Vec<IdentityName> = if selection == "all" {
        IdentityName::all().to_vec()
    } else {
        vec![selection.parse()?]
    };
    let mut rows = Vec::new();
    let mut all_clean = true;
    for id in ids {
        let kinds: &[PlaceKind] = if id.place_dependent() {
            &[PlaceKind::Split, PlaceKind::Inert]
        } else {
            &[PlaceKind::Split]
        };
        for &kind in kinds {
            let report = fuzz_identity(id, kind, trials, seed)?;
            all_clean &= report.failures.is_empty();
            if format == Format::Text {
                let tag = if id.convention_dependent(kind) {
                    " (convention-dependent normalization)"
                } else {
                    ""
                };
                println!(
                    "{id} {:?}{tag}: {} trials, failures: {:?}",
                    kind, report.trials, report.failures
                );
            }
            rows.push(json!({
                "identity": id.to_string(),
                "kind": format!("{kind:?}"),
                "trials": report.trials,
                "seed": report.seed,
                "failures": report.failures,
                "convention_dependent": id.convention_dependent(kind),
            }));
        }
    }
    if format == Format::Json {
        let out = json!({"command": "satake", "seed": seed, "runs": rows, "pass": all_clean});
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    }
    Ok(all_clean)
}

fn run_weyl(n: Option<usize>, all: bool, format: Format) -> Result<bool> {
    let ns: Vec<usize> = match (n, all) {
        (Some(k), false) => vec![k],
        (None, true) => (1..=8).collect(),
        _ => return Err(Error::BadInput("pass exactly one of --n and --all".into())),
    };
    let mut rows = Vec::new();
    for k in ns {
        let act = w0_for_levi(k)?;
        if format == Format::Text {
            println!("n = {k} (rank {}):", act.rank);
            for (i, j) in &act.action {
                println!("  a{i} -> a{j}");
            }
            println!("  A3 factor flipped: {}", act.a3_flipped);
            println!("  A factor reversed: {}", act.a_factor_flipped);
            println!("  length of w0: {}", act.length_w0);
        }
        rows.push(json!({
            "n": act.n,
            "rank": act.rank,
            "action": act.action,
            "a3_flipped": act.a3_flipped,
            "a_factor_flipped": act.a_factor_flipped,
            "length_w0": act.length_w0,
        }));
    }
    if format == Format::Json {
        let out = json!({"command": "weyl", "tables": rows, "pass": true});
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Analyze { group, rep } => run_analyze(group, rep.as_ref(), cli.format),
        Command::Kable { catalog } => run_kable(catalog, cli.format),
        Command::Example { which } => run_example(which, cli.seed, cli.format),
        Command::Satake { identity, trials } => run_satake(identity, *trials, cli.seed, cli.format),
        Command::Weyl { n, all } => run_weyl(*n, *all, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
