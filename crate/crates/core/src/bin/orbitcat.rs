//! Command-line surface: scenario loading, example generation, analysis
//! commands, exporters and the all-invariants check runner.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use orbitcat::action::SimplicialAction;
use orbitcat::error::Error;
use orbitcat::group::Subgroup;
use orbitcat::scenario::{self, Scenario};
use orbitcat::strata::{PartitionMode, StrataWhere};
use orbitcat::{checks, export, level, orbit_cat, report, strata};

#[derive(Parser)]
#[command(name = "orbitcat", version, about = "Orbit-type categories of finite simplicial group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Iso,
    Conj,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhereArg {
    Source,
    Quotient,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Summary counts for the scenario
    Analyze { scenario: String },
    /// Orbit-type strata and the frontier poset
    Strata {
        scenario: String,
        #[arg(long, value_enum, default_value = "iso")]
        mode: ModeArg,
        #[arg(long = "where", value_enum, default_value = "quotient")]
        place: WhereArg,
    },
    /// The database category Φ₀ (with --bold, also **Φ**₀ and the comparison)
    Phi0 {
        scenario: String,
        #[arg(long)]
        bold: bool,
    },
    /// The orbit category of the acting group
    OrbitCategory { scenario: String },
    /// The fixed-point groupoid with level structure X(H)
    Xh {
        scenario: String,
        /// group element indices generating H, comma separated
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<usize>,
    },
    /// Run the full invariant suite; exit 0 on all-pass, 1 on any failure
    Check { scenario: String },
    /// Export the quotient stratum poset
    Export {
        scenario: String,
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a built-in scenario as JSON
    Example { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Parse(_) => 2,
        Error::UnknownElement(..) => 4,
        _ => 3,
    }
}

fn resolve(reference: &str) -> Result<Scenario, Error> {
    let path = Path::new(reference);
    if path.exists() {
        scenario::load_scenario(path)
    } else {
        scenario::example(reference)
    }
}

fn regular_action(scenario: &Scenario) -> Result<SimplicialAction, Error> {
    scenario::build_action(scenario)?.regularize()
}

fn print_report(
    command: &str,
    scenario: &Scenario,
    body: serde_json::Value,
) -> Result<(), Error> {
    let rep = report::report(command, scenario, body)?;
    println!("{}", serde_json::to_string_pretty(&rep)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Analyze { scenario } => {
            let sc = resolve(&scenario)?;
            let action = regular_action(&sc)?;
            let quotient = action.quotient()?;
            let phi0 = level::phi0_category(&action)?;
            let body = json!({
                "group_order": action.group().order(),
                "subgroup_iso_classes": phi0.keys.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
                "subdivision_depth": action.subdivision_depth(),
                "points": action.point_count(),
                "orbit_classes": quotient.class_count(),
                "complex_components": action.complex().component_count(),
                "phi0_objects": phi0.objects.len(),
                "phi0_morphisms": phi0.morphisms.len(),
            });
            print_report("analyze", &sc, body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Strata { scenario, mode, place } => {
            let sc = resolve(&scenario)?;
            let action = regular_action(&sc)?;
            let quotient = action.quotient()?;
            let poset = strata::frontier_poset(&action, &quotient, mode.into(), place.into())?;
            print_report("strata", &sc, export::poset_json(&poset))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Phi0 { scenario, bold } => {
            let sc = resolve(&scenario)?;
            let action = regular_action(&sc)?;
            let phi0 = level::phi0_category(&action)?;
            let mut body = json!({
                "objects": phi0
                    .objects
                    .iter()
                    .map(|o| json!({
                        "key": o.h_key.to_string(),
                        "component": o.component,
                        "basepoint": {"point": o.basepoint.0.0, "level": o.basepoint.1},
                    }))
                    .collect::<Vec<_>>(),
                "morphisms": phi0
                    .morphisms
                    .iter()
                    .map(|m| json!({
                        "source": m.source,
                        "target": m.target,
                        "class": m.class.representative.image,
                    }))
                    .collect::<Vec<_>>(),
            });
            if bold {
                let cat = orbit_cat::orbit_category(action.group())?;
                let diagram = orbit_cat::fixed_point_diagram(&action, &cat)?;
                let bold_cat = orbit_cat::bold_phi0(&cat, &diagram)?;
                let cmp = orbit_cat::compare_phi0(&action, &phi0, &cat, &diagram, &bold_cat)?;
                body["bold"] = json!({
                    "objects": bold_cat
                        .objects
                        .iter()
                        .map(|o| json!({
                            "subgroup": cat.lattice.subgroups[o.subgroup].elements,
                            "component": o.component,
                        }))
                        .collect::<Vec<_>>(),
                    "morphisms": bold_cat.morphisms.len(),
                    "kappa": {
                        "object_map": cmp.object_map,
                        "object_surjective": cmp.object_surjective,
                        "object_injective": cmp.object_injective,
                        "essentially_surjective": cmp.essentially_surjective,
                        "functorial": cmp.functorial,
                        "collapse": cmp
                            .collapse
                            .iter()
                            .map(|c| json!({
                                "source": c.source,
                                "target": c.target,
                                "upstream": c.upstream,
                                "distinct_images": c.distinct_images,
                                "downstream": c.downstream,
                            }))
                            .collect::<Vec<_>>(),
                    },
                });
            }
            print_report("phi0", &sc, body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::OrbitCategory { scenario } => {
            let sc = resolve(&scenario)?;
            let action = regular_action(&sc)?;
            let cat = orbit_cat::orbit_category(action.group())?;
            let n = cat.subgroup_count();
            let body = json!({
                "subgroups": cat.lattice.subgroups.iter().map(|s| s.elements.clone()).collect::<Vec<_>>(),
                "hom_set_sizes": (0..n)
                    .map(|h0| (0..n).map(|h1| cat.hom_sets[h0][h1].len()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "morphisms": cat.morphisms.len(),
            });
            print_report("orbit-category", &sc, body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Xh { scenario, subgroup } => {
            let sc = resolve(&scenario)?;
            let action = regular_action(&sc)?;
            let sub = Subgroup::closure(action.group().clone(), &subgroup)?;
            let (h, lg) = level::level_groupoid_of_subgroup(&action, &sub)?;
            let orbit_classes = lg
                .orbit_components(&action)
                .iter()
                .max()
                .map_or(0, |m| m + 1);
            let components = lg.components(&action).iter().max().map_or(0, |m| m + 1);
            let body = json!({
                "subgroup": sub.elements,
                "h_order": h.order(),
                "levels": lg.homs.len(),
                "objects": lg.object_count(),
                "morphisms": lg.object_count() * action.group().order(),
                "orbit_classes": orbit_classes,
                "components": components,
            });
            print_report("xh", &sc, body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { scenario } => {
            let sc = resolve(&scenario)?;
            let outcome = checks::run_checks(&sc)?;
            let rep = report::report("check", &sc, outcome.to_json())?;
            println!("{}", serde_json::to_string_pretty(&rep)?);
            Ok(if outcome.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Export { scenario, format, output } => {
            let sc = resolve(&scenario)?;
            let action = regular_action(&sc)?;
            let quotient = action.quotient()?;
            let poset = strata::frontier_poset(
                &action,
                &quotient,
                PartitionMode::ByIsomorphism,
                StrataWhere::Quotient,
            )?;
            let text = match format {
                FormatArg::Dot => export::poset_dot(&poset),
                FormatArg::Json => serde_json::to_string_pretty(&export::poset_json(&poset))?,
            };
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Example { name } => {
            let sc = scenario::example(&name)?;
            println!("{}", serde_json::to_string_pretty(&sc)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

impl From<ModeArg> for PartitionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Iso => PartitionMode::ByIsomorphism,
            ModeArg::Conj => PartitionMode::ByConjugacy,
        }
    }
}

impl From<WhereArg> for StrataWhere {
    fn from(w: WhereArg) -> Self {
        match w {
            WhereArg::Source => StrataWhere::Source,
            WhereArg::Quotient => StrataWhere::Quotient,
        }
    }
}
