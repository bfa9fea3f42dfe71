//! Command-line surface for the homnorm toolkit.
//!
//! Exit codes are uniform across subcommands: 0 when the checked property
//! holds (or the construction succeeded), 1 when it fails or the searched
//! structure is absent, 2 on malformed input or configuration.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homnorm::actions::{check_homotopy_action, rigidify, roundtrip_check, DiscreteHomotopyAction};
use homnorm::bar::{bar_of_hom, nerve, segal_check};
use homnorm::catalog;
use homnorm::chains::{homology, normalized_chains};
use homnorm::crossed::{
    decide_normal, equivariant_iso_check, gamma_unchecked, moore_homotopy_table, SearchBudget,
};
use homnorm::files::{
    bar_to_file, gamma_to_file, CrossedModuleFile, FileError, FinSetMapFile, GSetFile, GroupFile,
    HomFile, LevelMapsFile, SimplicialSetFile,
};
use homnorm::groups::describe_group;
use homnorm::simplicial::{cech_power, verify_simplicial, SimplicialMap};
use report::RunReport;
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    File(#[from] FileError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "homnorm",
    about = "Homotopy normality of finite group maps, with the simplicial machinery around it",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct OutputOpts {
    /// report format on stdout
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// write the constructed artifact to this path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide homotopy normality of a homomorphism file; emits a
    /// crossed-module certificate when normal
    NormalCheck {
        hom: PathBuf,
        /// search budget in bits of candidate space
        #[arg(long)]
        budget: Option<f64>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Bar complex of a homomorphism file
    Bar {
        #[arg(long)]
        hom: PathBuf,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Nerve (classifying complex) of a group
    Nerve {
        /// catalog name (e.g. S3, Z/6) or path to a group file
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Iterated fiber power of a finite-set map
    Cech {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        /// also print integral homology up to the top computable degree
        #[arg(long)]
        homology: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Reduced-Segal conditions of a simplicial-set file
    Segal {
        simplicial: PathBuf,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Simplicial group of a crossed-module file, with verification
    Gamma {
        cm: PathBuf,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Moore homotopy groups of the simplicial group of a crossed module
    Homotopy {
        cm: PathBuf,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Rigidify a homotopy action given as two simplicial-set files and a
    /// level-map block
    Rigidify {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        maps: PathBuf,
        /// write the recovered group here
        #[arg(long)]
        out_group: Option<PathBuf>,
        /// write the recovered action here
        #[arg(long)]
        out_gset: Option<PathBuf>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Round-trip a strict action through its bar model and back
    Roundtrip {
        #[arg(long)]
        gset: PathBuf,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Exhaustive normality sweep over the built-in catalog
    Catalog {
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        /// restrict to abelian catalog groups
        #[arg(long)]
        abelian_only: bool,
        #[arg(long)]
        budget: Option<f64>,
        #[command(flatten)]
        output: OutputOpts,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::NormalCheck {
            hom,
            budget,
            output,
        } => cmd_normal_check(&hom, budget, &output),
        Command::Bar {
            hom,
            levels,
            output,
        } => cmd_bar(&hom, levels, &output),
        Command::Nerve {
            group,
            levels,
            output,
        } => cmd_nerve(&group, levels, &output),
        Command::Cech {
            map,
            levels,
            homology,
            output,
        } => cmd_cech(&map, levels, homology, &output),
        Command::Segal { simplicial, output } => cmd_segal(&simplicial, &output),
        Command::Gamma { cm, levels, output } => cmd_gamma(&cm, levels, &output),
        Command::Homotopy { cm, levels, output } => cmd_homotopy(&cm, levels, &output),
        Command::Rigidify {
            source,
            target,
            maps,
            out_group,
            out_gset,
            output,
        } => cmd_rigidify(&source, &target, &maps, out_group, out_gset, &output),
        Command::Roundtrip {
            gset,
            levels,
            output,
        } => cmd_roundtrip(&gset, levels, &output),
        Command::Catalog {
            max_order,
            levels,
            abelian_only,
            budget,
            output,
        } => report::cmd_catalog(max_order, levels, abelian_only, budget, &output),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable value");
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Group references inside a file resolve relative to that file's parent.
fn resolver_for(path: &Path) -> impl Fn(&str) -> Result<GroupFile, FileError> {
    let base = path
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    move |reference: &str| {
        let target = base.join(reference);
        let text = std::fs::read_to_string(&target)
            .map_err(|e| FileError::Unresolved(format!("{}: {e}", target.display())))?;
        serde_json::from_str(&text).map_err(FileError::Json)
    }
}

fn load_group(name_or_path: &str) -> Result<homnorm::groups::FiniteGroup, CliError> {
    if let Some(g) = catalog::by_name(name_or_path) {
        return Ok(g);
    }
    let path = Path::new(name_or_path);
    if path.exists() {
        let file: GroupFile = read_json(path)?;
        return Ok(file.into_group()?);
    }
    let names: Vec<String> = catalog::builtin().into_iter().map(|e| e.name).collect();
    Err(CliError::Usage(format!(
        "unknown group {name_or_path:?}; use a file path or one of: {}",
        names.join(", ")
    )))
}

fn emit_artifact<T: Serialize>(
    value: &T,
    output: &OutputOpts,
    stdout_when_no_out: bool,
) -> Result<(), CliError> {
    if let Some(path) = &output.out {
        write_json(path, value)?;
    } else if stdout_when_no_out {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable value")
        );
    }
    Ok(())
}

fn cmd_normal_check(
    hom_path: &Path,
    budget: Option<f64>,
    output: &OutputOpts,
) -> Result<i32, CliError> {
    let file: HomFile = read_json(hom_path)?;
    let f = file.clone().into_hom(&resolver_for(hom_path))?;
    let budget = budget
        .map(|max_bits| SearchBudget { max_bits })
        .unwrap_or_default();
    let decision =
        decide_normal(&f, &budget).map_err(|e| CliError::Usage(format!("search aborted: {e}")))?;
    let mut run = RunReport::new("normal-check", &file);
    run.verdict(
        "homotopy-normal at pi_0",
        decision.is_normal(),
        format!(
            "{} candidate action(s) examined; Aut(N) has order {}; {} generator(s) of G",
            decision.actions_tried, decision.aut_order, decision.generator_count
        ),
    );
    match &decision.certificate {
        Some(cm) => {
            let cert = CrossedModuleFile::from_cm(cm);
            emit_artifact(&cert, output, output.format == Format::Text)?;
            run.finish(output.format == Format::Json);
            Ok(EXIT_PASS)
        }
        None => {
            if output.format == Format::Text {
                println!("not homotopy-normal at pi_0");
                println!(
                    "  exhausted {} action(s); Aut(N) has order {}, {} generator(s) of G",
                    decision.actions_tried, decision.aut_order, decision.generator_count
                );
            }
            run.finish(output.format == Format::Json);
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_bar(hom_path: &Path, levels: usize, output: &OutputOpts) -> Result<i32, CliError> {
    check_levels(levels, 1)?;
    let file: HomFile = read_json(hom_path)?;
    let f = file.into_hom(&resolver_for(hom_path))?;
    let complex = bar_of_hom(&f, levels);
    let report = verify_simplicial(complex.underlying());
    if !report.is_ok() {
        println!("{report}");
        return Ok(EXIT_FAIL);
    }
    let artifact = bar_to_file(&complex);
    emit_artifact(&artifact, output, true)?;
    Ok(EXIT_PASS)
}

fn cmd_nerve(group: &str, levels: usize, output: &OutputOpts) -> Result<i32, CliError> {
    check_levels(levels, 1)?;
    let g = load_group(group)?;
    let complex = nerve(&g, levels);
    let report = verify_simplicial(complex.underlying());
    if !report.is_ok() {
        println!("{report}");
        return Ok(EXIT_FAIL);
    }
    let artifact = bar_to_file(&complex);
    emit_artifact(&artifact, output, true)?;
    Ok(EXIT_PASS)
}

fn cmd_cech(
    map_path: &Path,
    levels: usize,
    with_homology: bool,
    output: &OutputOpts,
) -> Result<i32, CliError> {
    check_levels(levels, 1)?;
    let file: FinSetMapFile = read_json(map_path)?;
    let f = file.into_map()?;
    let complex = cech_power(&f, levels);
    let report = verify_simplicial(&complex);
    if !report.is_ok() {
        println!("{report}");
        return Ok(EXIT_FAIL);
    }
    if with_homology {
        let chains =
            normalized_chains(&complex).map_err(|e| CliError::Usage(format!("chains: {e}")))?;
        for m in 0..levels {
            let h = homology(&chains, m).map_err(|e| CliError::Usage(format!("homology: {e}")))?;
            println!("H_{m} = {h}");
        }
    }
    let artifact = SimplicialSetFile::from_simplicial(&complex);
    emit_artifact(&artifact, output, !with_homology)?;
    Ok(EXIT_PASS)
}

fn cmd_segal(path: &Path, output: &OutputOpts) -> Result<i32, CliError> {
    let file: SimplicialSetFile = read_json(path)?;
    let s = file.into_simplicial()?;
    if s.truncation() < 2 {
        return Err(CliError::Usage(
            "segal check needs truncation >= 2".to_string(),
        ));
    }
    let report = segal_check(&s);
    match output.format {
        Format::Text => println!("{report}"),
        Format::Json => {
            let mut run = RunReport::new("segal", &SimplicialSetFile::from_simplicial(&s));
            run.verdict(
                "reduced segal conditions",
                report.passed(),
                report.to_string(),
            );
            run.finish(true);
        }
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_gamma(cm_path: &Path, levels: usize, output: &OutputOpts) -> Result<i32, CliError> {
    check_levels(levels, 1)?;
    let file: CrossedModuleFile = read_json(cm_path)?;
    let cm = file.into_cm(&resolver_for(cm_path))?;
    let gamma = gamma_unchecked(&cm, levels);
    let verification = homnorm::crossed::verify_simplicial_group(&gamma);
    let equivariance = equivariant_iso_check(&gamma, &bar_of_hom(cm.boundary(), levels));
    if output.format == Format::Text {
        println!("simplicial group verification: {verification}");
        println!("equivariant comparison with the bar complex: {equivariance}");
    }
    let artifact = gamma_to_file(&gamma, &cm);
    emit_artifact(&artifact, output, false)?;
    let ok = verification.is_ok() && equivariance.is_ok();
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_homotopy(cm_path: &Path, levels: usize, output: &OutputOpts) -> Result<i32, CliError> {
    check_levels(levels, 2)?;
    let file: CrossedModuleFile = read_json(cm_path)?;
    let cm = file.into_cm(&resolver_for(cm_path))?;
    let gamma = gamma_unchecked(&cm, levels);
    let table =
        moore_homotopy_table(&gamma).map_err(|e| CliError::Usage(format!("moore: {e}")))?;
    match output.format {
        Format::Text => {
            for (m, pi) in table.iter().enumerate() {
                println!("pi_{m} = {}", describe_group(pi));
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .iter()
                .enumerate()
                .map(|(m, pi)| {
                    serde_json::json!({
                        "degree": m,
                        "order": pi.order(),
                        "description": describe_group(pi),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&rows).expect("json rows"));
        }
    }
    Ok(EXIT_PASS)
}

fn cmd_rigidify(
    source: &Path,
    target: &Path,
    maps: &Path,
    out_group: Option<PathBuf>,
    out_gset: Option<PathBuf>,
    output: &OutputOpts,
) -> Result<i32, CliError> {
    let a: SimplicialSetFile = read_json(source)?;
    let b: SimplicialSetFile = read_json(target)?;
    let level_maps: LevelMapsFile = read_json(maps)?;
    let pi = SimplicialMap::new(
        a.into_simplicial()?,
        b.into_simplicial()?,
        level_maps.level_maps,
    )
    .map_err(FileError::Simplicial)?;
    let report = check_homotopy_action(&pi)
        .map_err(|e| CliError::Usage(format!("cannot check the action: {e}")))?;
    if !report.is_ok() {
        println!("{report}");
        return Ok(EXIT_FAIL);
    }
    let action = DiscreteHomotopyAction::new(pi)
        .map_err(|e| CliError::Usage(format!("action rejected after checking: {e}")))?;
    match rigidify(&action) {
        Ok(rigid) => {
            let group_file = GroupFile::from_group(&rigid.group);
            let gset_file = GSetFile::from_gset(&rigid.action);
            if let Some(p) = out_group {
                write_json(&p, &group_file)?;
            }
            if let Some(p) = out_gset {
                write_json(&p, &gset_file)?;
            }
            if output.format == Format::Text {
                println!(
                    "rigidified: {} acting on {} point(s)",
                    describe_group(&rigid.group),
                    rigid.action.carrier_size()
                );
            } else {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "group": group_file,
                        "gset": gset_file,
                    }))
                    .expect("json output")
                );
            }
            Ok(EXIT_PASS)
        }
        Err(e) => {
            println!("rigidification failed: {e}");
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_roundtrip(gset_path: &Path, levels: usize, output: &OutputOpts) -> Result<i32, CliError> {
    check_levels(levels, 3)?;
    let file: GSetFile = read_json(gset_path)?;
    let gset = file.into_gset(&resolver_for(gset_path))?;
    let report =
        roundtrip_check(&gset, levels).map_err(|e| CliError::Usage(format!("roundtrip: {e}")))?;
    if output.format == Format::Text {
        println!("{report}");
    }
    Ok(if report.is_ok() { EXIT_PASS } else { EXIT_FAIL })
}

fn check_levels(levels: usize, needed: usize) -> Result<(), CliError> {
    if levels < needed {
        return Err(CliError::Usage(format!(
            "--levels must be at least {needed}"
        )));
    }
    if levels > 6 {
        return Err(CliError::Usage(
            "--levels above 6 is not supported; level sizes grow as |N|^k".to_string(),
        ));
    }
    Ok(())
}
