//! Command-line interface: one subcommand per pipeline stage, reading a
//! poset from a file or stdin and writing text, JSON or DOT.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{component_descent_tables, forest_to_mis, mis_descents, enumerate_pforests};
use crate::genfun::{
    count_linear_extensions, factored_fpx, fpq, fpx_duplication_path, render_factored,
};
use crate::ideal_graph::{enumerate_connected_ideals, ideal_graph};
use crate::io;
use crate::mis::{component_mis_lists, global_mis_from_lists};
use crate::oracle::random_poset;
use crate::poset::Poset;
use crate::verify::{verify_poset, Budgets};

#[derive(Parser)]
#[command(name = "pforest", version, about = "Connected order ideals, their intersection graph, and factored P-partition generating functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Poset file; stdin when omitted.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Cap on enumerated down-closed subsets.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_ideals: u64,

    /// Cap on enumerated maximum independent sets.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_mis: u64,

    /// Cap on enumerated linear extensions.
    #[arg(long, global = true, default_value_t = 5_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_extensions: u64,

    /// Total-degree bound for series expansion checks.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(0..=8))]
    pub series_degree: u32,

    /// Relabel the input along its first linear extension before any
    /// label-sensitive computation.
    #[arg(long, global = true)]
    pub relabel: bool,

    /// Seed for the random poset generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Check component descent data against every combination of the
    /// other components' sets instead of trusting one extension.
    #[arg(long, global = true)]
    pub verify_extensions: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
pub enum Command {
    /// List the connected order ideals.
    Ideals,
    /// Intersection graph of the connected order ideals.
    Graph {
        /// Restrict DOT output to the induced subgraph on principal ideals.
        #[arg(long)]
        principal_only: bool,
    },
    /// Maximum independent sets, per component and global.
    Mis,
    /// Forests matching the global maximum independent sets, with descents.
    Forests,
    /// Factored generating function.
    Fpx {
        /// Use the two-term factor per component pair; requires every
        /// vertex to have degree at most one.
        #[arg(long)]
        duplication_path: bool,
    },
    /// Extension count by major index, as a polynomial in q.
    Fpq,
    /// Number of linear extensions.
    Count,
    /// Run the self-check suite.
    Verify,
    /// Emit a random poset.
    Gen {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        size: u32,
        /// Probability of each candidate relation.
        #[arg(long, default_value_t = 0.3)]
        density: f64,
    },
}

#[derive(Debug)]
pub struct CmdOutput {
    pub stdout: String,
    pub code: i32,
}

fn ok(stdout: String) -> Result<CmdOutput> {
    Ok(CmdOutput { stdout, code: 0 })
}

fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

#[derive(Serialize)]
struct CountJson {
    count: String,
}

fn read_input(cli: &Cli) -> Result<Poset> {
    let src = match &cli.input {
        Some(path) => std::fs::read_to_string(path)?,
        None => std::io::read_to_string(std::io::stdin())?,
    };
    if src.trim_start().starts_with('{') {
        let j: io::PosetJson = serde_json::from_str(&src)?;
        return io::poset_from_json(&j);
    }
    let report = io::parse_poset_text(&src)?;
    for &(a, b) in &report.duplicate_pairs {
        eprintln!("warning: duplicate cover {a} {b}");
    }
    for &(a, b) in &report.implied_pairs {
        eprintln!("warning: relation {a} < {b} is already implied and was dropped");
    }
    Ok(report.poset)
}

fn prepare(cli: &Cli, needs_natural: bool) -> Result<Poset> {
    let p = read_input(cli)?;
    if cli.relabel {
        let (q, relab) = p.natural_relabel();
        if !relab.is_identity() {
            eprintln!("note: elements relabeled along the first linear extension");
        }
        return Ok(q);
    }
    if needs_natural && !p.is_naturally_labeled() {
        eprintln!("hint: pass --relabel to relabel the input along a linear extension");
        return Err(Error::NotNaturallyLabeled);
    }
    Ok(p)
}

fn dot_rejected(sub: &str) -> Error {
    Error::Invalid {
        msg: format!("dot output is not available for the {sub} subcommand"),
    }
}

pub fn run(cli: Cli) -> Result<CmdOutput> {
    match &cli.command {
        Command::Gen { size, density } => {
            if !(0.0..=1.0).contains(density) {
                return Err(Error::Invalid {
                    msg: format!("density must lie in [0, 1], got {density}"),
                });
            }
            let p = random_poset(*size, *density, cli.seed);
            match cli.format {
                Format::Text => ok(format!(
                    "# generated: size {size}, density {density}, seed {}\n{}",
                    cli.seed,
                    io::poset_to_text(&p)
                )),
                Format::Json => ok(to_json_pretty(&io::poset_to_json(&p))?),
                Format::Dot => Err(dot_rejected("gen")),
            }
        }

        Command::Ideals => {
            let p = prepare(&cli, false)?;
            let ideals = enumerate_connected_ideals(&p, cli.max_ideals)?;
            match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for j in &ideals {
                        out.push_str(&format!("{}\n", j.members()));
                    }
                    ok(out)
                }
                Format::Json => ok(to_json_pretty(&io::ideals_to_json(p.n(), &ideals))?),
                Format::Dot => Err(dot_rejected("ideals")),
            }
        }

        Command::Graph { principal_only } => {
            let p = prepare(&cli, false)?;
            let g = ideal_graph(&p, cli.max_ideals)?;
            match cli.format {
                Format::Text => {
                    let mut out = format!(
                        "{} vertices, {} edges, {} components\n",
                        g.vertex_count(),
                        g.edges().len(),
                        g.components().len()
                    );
                    for (r, comp) in g.components().iter().enumerate() {
                        let names: Vec<String> =
                            comp.iter().map(|&v| g.ideal(v).members().to_string()).collect();
                        out.push_str(&format!("component {r}: {}\n", names.join(" ")));
                    }
                    for &(a, b) in g.edges() {
                        out.push_str(&format!(
                            "{} -- {}\n",
                            g.ideal(a).members(),
                            g.ideal(b).members()
                        ));
                    }
                    out.push_str("principal subgraph:\n");
                    for &(a, b) in &g.principal().edges {
                        out.push_str(&format!("{a} -- {b}\n"));
                    }
                    ok(out)
                }
                Format::Json => ok(to_json_pretty(&io::graph_to_json(&g))?),
                Format::Dot => {
                    if *principal_only {
                        ok(io::principal_to_dot(&g))
                    } else {
                        ok(io::graph_to_dot(&g))
                    }
                }
            }
        }

        Command::Mis => {
            let p = prepare(&cli, false)?;
            let g = ideal_graph(&p, cli.max_ideals)?;
            let lists = component_mis_lists(&g, cli.max_mis)?;
            let globals = global_mis_from_lists(&g, &lists, cli.max_mis)?;
            match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    let render = |m: &crate::mis::MaxIndSet| -> String {
                        let names: Vec<String> = m
                            .members()
                            .iter()
                            .map(|&v| g.ideal(v).members().to_string())
                            .collect();
                        format!("[{}]", names.join(", "))
                    };
                    let plural = |k: usize| if k == 1 { "set" } else { "sets" };
                    for (r, list) in lists.iter().enumerate() {
                        out.push_str(&format!(
                            "component {r}: {} {}\n",
                            list.len(),
                            plural(list.len())
                        ));
                        for m in list {
                            out.push_str(&format!("  {}\n", render(m)));
                        }
                    }
                    out.push_str(&format!(
                        "global: {} {}\n",
                        globals.len(),
                        plural(globals.len())
                    ));
                    for m in &globals {
                        out.push_str(&format!("  {}\n", render(m)));
                    }
                    ok(out)
                }
                Format::Json => {
                    let components = lists
                        .iter()
                        .map(|list| {
                            list.iter()
                                .map(|m| io::mis_to_json(&p, &g, m))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let global = globals
                        .iter()
                        .map(|m| io::mis_to_json(&p, &g, m))
                        .collect::<Result<Vec<_>>>()?;
                    ok(to_json_pretty(&io::MisListsJson { components, global })?)
                }
                Format::Dot => Err(dot_rejected("mis")),
            }
        }

        Command::Forests => {
            let p = prepare(&cli, true)?;
            let g = ideal_graph(&p, cli.max_ideals)?;
            let forests = enumerate_pforests(&p, &g, cli.max_mis)?;
            let mut entries = Vec::with_capacity(forests.len());
            for f in &forests {
                let m = forest_to_mis(&g, f)?;
                let dd = mis_descents(&p, &g, &m)?;
                entries.push((f, dd));
            }
            match cli.format {
                Format::Text => {
                    let mut out = String::new();
                    for (k, (f, dd)) in entries.iter().enumerate() {
                        let descents: Vec<String> =
                            dd.elements.iter().map(|e| e.to_string()).collect();
                        out.push_str(&format!(
                            "forest {}: parents {:?}, descents {{{}}}\n",
                            k + 1,
                            f.parents(),
                            descents.join(",")
                        ));
                        for line in io::forest_to_text(f).lines() {
                            out.push_str(&format!("  {line}\n"));
                        }
                    }
                    ok(out)
                }
                Format::Json => {
                    let forests = entries
                        .iter()
                        .map(|(f, dd)| io::forest_to_json(f, dd))
                        .collect();
                    ok(to_json_pretty(&io::ForestsJson { n: p.n(), forests })?)
                }
                Format::Dot => Err(dot_rejected("forests")),
            }
        }

        Command::Fpx { duplication_path } => {
            let p = prepare(&cli, true)?;
            let g = ideal_graph(&p, cli.max_ideals)?;
            let gf = if *duplication_path {
                fpx_duplication_path(&p, &g)?
            } else {
                let lists = component_mis_lists(&g, cli.max_mis)?;
                let verify_cap = cli.verify_extensions.then_some(cli.max_extensions);
                let tables = component_descent_tables(&p, &g, &lists, verify_cap)?;
                factored_fpx(&p, &g, &lists, &tables)?
            };
            match cli.format {
                Format::Text => ok(render_factored(&gf) + "\n"),
                Format::Json => ok(to_json_pretty(&io::factored_to_json(&gf))?),
                Format::Dot => Err(dot_rejected("fpx")),
            }
        }

        Command::Fpq => {
            let p = prepare(&cli, true)?;
            let g = ideal_graph(&p, cli.max_ideals)?;
            let lists = component_mis_lists(&g, cli.max_mis)?;
            let verify_cap = cli.verify_extensions.then_some(cli.max_extensions);
            let tables = component_descent_tables(&p, &g, &lists, verify_cap)?;
            let gf = factored_fpx(&p, &g, &lists, &tables)?;
            let poly = fpq(&gf)?;
            match cli.format {
                Format::Text => ok(format!("{poly}\n")),
                Format::Json => ok(to_json_pretty(&io::qpoly_to_json(&poly))?),
                Format::Dot => Err(dot_rejected("fpq")),
            }
        }

        Command::Count => {
            let p = prepare(&cli, false)?;
            let g = ideal_graph(&p, cli.max_ideals)?;
            let lists = component_mis_lists(&g, cli.max_mis)?;
            let count = count_linear_extensions(&g, &lists)?;
            match cli.format {
                Format::Text => ok(format!("{count}\n")),
                Format::Json => ok(to_json_pretty(&CountJson {
                    count: count.to_string(),
                })?),
                Format::Dot => Err(dot_rejected("count")),
            }
        }

        Command::Verify => {
            let p = read_input(&cli)?;
            let budgets = Budgets {
                max_ideals: cli.max_ideals,
                max_mis: cli.max_mis,
                max_extensions: cli.max_extensions,
                series_degree: cli.series_degree,
                series_terms: 200_000,
                descent_extensions: if cli.verify_extensions {
                    cli.max_extensions
                } else {
                    2_000
                },
            };
            let report = verify_poset(&p, &budgets);
            let code = if report.passed() { 0 } else { 3 };
            let stdout = match cli.format {
                Format::Text => report.render(),
                Format::Json => to_json_pretty(&io::verification_to_json(&report))?,
                Format::Dot => return Err(dot_rejected("verify")),
            };
            Ok(CmdOutput { stdout, code })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures")
            .join(name)
    }

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("pforest").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn count_and_fpq_on_fixture() {
        let path = fixture("six.poset");
        let path = path.to_str().unwrap();
        let out = run(cli(&["count", "--input", path])).unwrap();
        assert_eq!(out.stdout, "10\n");
        assert_eq!(out.code, 0);

        // Label-sensitive subcommands refuse the raw input and accept it
        // with --relabel.
        let err = run(cli(&["fpq", "--input", path])).unwrap_err();
        assert!(matches!(err, Error::NotNaturallyLabeled));
        assert_eq!(err.exit_code(), 1);
        let out = run(cli(&["fpq", "--input", path, "--relabel"])).unwrap();
        assert!(out.stdout.starts_with("1 + "));
    }

    #[test]
    fn outputs_are_byte_stable() {
        let path = fixture("six.poset");
        let path = path.to_str().unwrap();
        for args in [
            vec!["ideals", "--input", path, "--format", "json"],
            vec!["graph", "--input", path, "--format", "dot"],
            vec!["mis", "--input", path, "--format", "json"],
            vec!["forests", "--input", path, "--relabel", "--format", "json"],
            vec!["fpx", "--input", path, "--relabel", "--format", "json"],
            vec!["gen", "--seed", "9", "--format", "text"],
        ] {
            let a = run(cli(&args)).unwrap().stdout;
            let b = run(cli(&args)).unwrap().stdout;
            assert_eq!(a, b, "{args:?}");
            assert!(!a.is_empty());
        }
    }

    #[test]
    fn ideal_listing_matches_fixture_poset() {
        let path = fixture("six.poset");
        let out = run(cli(&["ideals", "--input", path.to_str().unwrap()])).unwrap();
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(
            lines,
            [
                "{3}",
                "{6}",
                "{4,6}",
                "{4,5,6}",
                "{1,3,4,6}",
                "{1,2,3,4,6}",
                "{1,3,4,5,6}",
                "{1,2,3,4,5,6}"
            ]
        );
    }

    #[test]
    fn generated_posets_round_trip_through_json() {
        let out = run(cli(&["gen", "--size", "6", "--seed", "3", "--format", "json"])).unwrap();
        let j: io::PosetJson = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(j.n, 6);

        // Feed the JSON back through a temp file.
        let dir = std::env::temp_dir().join("pforest-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("gen3.json");
        std::fs::write(&path, &out.stdout).unwrap();
        let echo = run(cli(&["count", "--input", path.to_str().unwrap()])).unwrap();
        assert!(echo.stdout.trim().parse::<u64>().unwrap() >= 1);
    }

    #[test]
    fn cap_errors_use_their_exit_code() {
        let path = fixture("six.poset");
        let err = run(cli(&[
            "ideals",
            "--input",
            path.to_str().unwrap(),
            "--max-ideals",
            "3",
        ]))
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn verify_reports_pass_on_fixture() {
        let path = fixture("six.poset");
        let out = run(cli(&["verify", "--input", path.to_str().unwrap()])).unwrap();
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("PASS count formula"));
        assert!(!out.stdout.contains("FAIL"));
    }

    #[test]
    fn dot_is_rejected_where_meaningless() {
        let path = fixture("six.poset");
        let err = run(cli(&[
            "count",
            "--input",
            path.to_str().unwrap(),
            "--format",
            "dot",
        ]))
        .unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
