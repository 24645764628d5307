//! `assoc`: command-line front door for commutator-associativity experiments.
//!
//! Exit codes: 0 success / verdict holds, 1 verdict fails, 2 usage error,
//! 3 evaluation budget exceeded. Identical invocations with identical seeds
//! produce byte-identical text reports.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use assoc_core::coloring::{
    min_colors, proof_clique, valid_coloring, verify_lower_bound, ColoringInstance,
    ColoringVerdict, MIN_COLORS_LEAF_CAP,
};
use assoc_core::decide::{
    assoc_survey, eventually_satisfies, levi_check, verify_main_theorem, EventualVerdict,
};
use assoc_core::expr::bp_sequence;
use assoc_core::group::{builtin, catalog, parse_group_file, FiniteGroup};
use assoc_core::pair::parse_pair;
use assoc_core::tree::{Turn, VineSpec};
use assoc_core::vine::{
    check_centralize_propagation, rewrite_to_left_vine, verify_rewrite, vine_expr, Side,
    VinePlacement,
};
use assoc_core::SearchConfig;

#[derive(Parser)]
#[command(name = "assoc", version, about = "Commutator associativity toolkit")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Evaluation cap for satisfaction searches.
    #[arg(long, global = true, default_value_t = 10_000_000_000)]
    budget: u64,
    /// Cap on leaves per tree in surveys.
    #[arg(long, global = true, default_value_t = 7)]
    max_leaves: usize,
    /// Cap on group order when loading groups.
    #[arg(long, global = true, default_value_t = 5040)]
    order_cap: usize,
    /// Write the report to this file as well as stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for surveys (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Group inspection.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Tree-pair arithmetic in Thompson's group F.
    F {
        #[command(subcommand)]
        cmd: FCmd,
    },
    /// Associativity instance checking.
    Assoc {
        #[command(subcommand)]
        cmd: AssocCmd,
    },
    /// Vine rewriting and verification.
    Vine {
        #[command(subcommand)]
        cmd: VineCmd,
    },
    /// Leaf-coloring bounds.
    Color {
        #[command(subcommand)]
        cmd: ColorCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Order, center, derived series, solvability, nilpotency, B_p summary.
    Info {
        /// Builtin name (e.g. "dihedral(4)") or a group file path.
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum FCmd {
    /// Reduce a pair to canonical form.
    Reduce {
        #[arg(long)]
        pair: String,
    },
    /// Multiply pairs left to right.
    Mul {
        #[arg(long, required = true, num_args = 1..)]
        pair: Vec<String>,
    },
    /// Invert a pair.
    Inv {
        #[arg(long)]
        pair: String,
    },
    /// Compare two pairs as elements of F.
    Eq {
        #[arg(long, required = true, num_args = 1..)]
        pair: Vec<String>,
    },
}

#[derive(Subcommand)]
enum AssocCmd {
    /// Decide eventual satisfaction of one instance.
    Check {
        #[arg(long)]
        group: String,
        #[arg(long)]
        pair: String,
    },
    /// Decide all reduced pairs up to --max-leaves.
    Survey {
        #[arg(long)]
        group: String,
    },
    /// Direct associativity versus nilpotency class <= 2.
    Levi {
        #[arg(long)]
        group: String,
    },
    /// Survey the whole catalog: a Yes must imply solvability.
    MainTheorem {
        /// Largest catalog group order to include.
        #[arg(long, default_value_t = 24)]
        max_order: usize,
    },
}

#[derive(Subcommand)]
enum VineCmd {
    /// Rewrite a vine placement into left-vine form with conjugators.
    Rewrite {
        /// Vine height (number of non-distinguished symbols).
        #[arg(long)]
        n: usize,
        /// Turns bottom to top, e.g. "RRLR"; empty for height 1.
        #[arg(long, default_value = "")]
        turns: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Check a rewrite semantically in a group.
    Verify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        /// Specific turns; omit to verify every shape of height n.
        #[arg(long)]
        turns: Option<String>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        /// Samples when exhaustive checking is too large.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Centralizing the bottom left vine propagates to all longer vines.
    Centralize {
        #[arg(long)]
        group: String,
        #[arg(long)]
        j: usize,
        /// Comma-separated multiples q to check (vine height q*j).
        #[arg(long, default_value = "1,2")]
        multiples: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    L,
    R,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::L => Side::Left,
            SideArg::R => Side::Right,
        }
    }
}

#[derive(Subcommand)]
enum ColorCmd {
    /// Clique lower bound 2^n, with the exact minimum on request.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        /// Run the exact branch-and-bound search (<= 64 leaves).
        #[arg(long)]
        exact: bool,
    },
    /// Validate a comma-separated leaf coloring.
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        colors: String,
    },
}

/// Verdict-carrying report: text plus whether the checked property held.
struct Report {
    text: String,
    verdict_ok: bool,
    budget_exceeded: bool,
}

impl Report {
    fn ok(text: String) -> Report {
        Report {
            text,
            verdict_ok: true,
            budget_exceeded: false,
        }
    }
}

fn load_group(source: &str, order_cap: usize) -> Result<FiniteGroup> {
    if let Ok(g) = builtin(source) {
        if g.order() > order_cap {
            bail!("group {} has order {} over the cap {}", source, g.order(), order_cap);
        }
        return Ok(g);
    }
    let path = PathBuf::from(source);
    if path.exists() {
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?;
        let g = parse_group_file(&text)?;
        if g.order() > order_cap {
            bail!("group file {} has order {} over the cap {}", source, g.order(), order_cap);
        }
        return Ok(g);
    }
    bail!("unknown group '{}': not a builtin name and not a file", source)
}

fn parse_turns(text: &str, n: usize) -> Result<VineSpec> {
    let turns: Vec<Turn> = text
        .chars()
        .map(|c| match c {
            'L' | 'l' => Ok(Turn::L),
            'R' | 'r' => Ok(Turn::R),
            other => Err(anyhow!("bad turn character '{}'", other)),
        })
        .collect::<Result<_>>()?;
    VineSpec::new(n, turns).map_err(|e| anyhow!("{}", e))
}

fn subset_names(g: &FiniteGroup, s: &assoc_core::Subset) -> String {
    let names: Vec<&str> = s.iter().map(|i| g.element_name(i)).collect();
    names.join(", ")
}

fn cmd_group_info(g: &FiniteGroup) -> Report {
    let mut out = String::new();
    let _ = writeln!(out, "group {}", g.name());
    let _ = writeln!(out, "order {}", g.order());
    let _ = writeln!(out, "abelian {}", g.is_abelian());
    let center = g.center();
    let _ = writeln!(out, "center order {} [{}]", center.len(), subset_names(g, &center));
    let series = g.derived_series();
    let sizes: Vec<String> = series.iter().map(|s| s.len().to_string()).collect();
    let _ = writeln!(out, "derived series orders {}", sizes.join(" > "));
    let _ = writeln!(out, "solvable {}", g.is_solvable());
    match g.derived_length() {
        Some(l) => {
            let _ = writeln!(out, "derived length {}", l);
        }
        None => {
            let _ = writeln!(out, "derived length none");
        }
    }
    match g.nilpotency_class() {
        Some(c) => {
            let _ = writeln!(out, "nilpotency class {}", c);
        }
        None => {
            let _ = writeln!(out, "nilpotency class none");
        }
    }
    let seq = bp_sequence(g);
    let sizes: Vec<String> = seq.sets.iter().map(|s| s.len().to_string()).collect();
    let _ = writeln!(
        out,
        "derived-set sequence sizes {} (cycles back to index {})",
        sizes.join(" "),
        seq.cycle_start
    );
    Report::ok(out)
}

fn run(cli: &Cli) -> Result<Report> {
    let rc = &cli.run;
    let mut cfg = SearchConfig::with_seed(rc.seed);
    cfg.budget = rc.budget;
    match &cli.command {
        Command::Group { cmd: GroupCmd::Info { group } } => {
            Ok(cmd_group_info(&load_group(group, rc.order_cap)?))
        }

        Command::F { cmd } => {
            let one = |text: &str| parse_pair(text).map_err(|e| anyhow!("{}", e));
            match cmd {
                FCmd::Reduce { pair } => Ok(Report::ok(format!("{}\n", one(pair)?.reduce()))),
                FCmd::Inv { pair } => Ok(Report::ok(format!("{}\n", one(pair)?.invert()))),
                FCmd::Mul { pair } => {
                    let mut acc = assoc_core::TreePair::identity();
                    for p in pair {
                        acc = acc.multiply(&one(p)?);
                    }
                    Ok(Report::ok(format!("{}\n", acc)))
                }
                FCmd::Eq { pair } => {
                    if pair.len() != 2 {
                        bail!("eq needs exactly two pairs, got {}", pair.len());
                    }
                    let eq = one(&pair[0])?.equivalent(&one(&pair[1])?);
                    Ok(Report {
                        text: format!("{}\n", if eq { "equivalent" } else { "different" }),
                        verdict_ok: eq,
                        budget_exceeded: false,
                    })
                }
            }
        }

        Command::Assoc { cmd } => match cmd {
            AssocCmd::Check { group, pair } => {
                let g = load_group(group, rc.order_cap)?;
                let p = parse_pair(pair).map_err(|e| anyhow!("{}", e))?;
                match eventually_satisfies(&g, &p, &cfg) {
                    EventualVerdict::Yes { witness_p } => Ok(Report::ok(format!(
                        "eventually satisfied, witness p={}\n",
                        witness_p
                    ))),
                    EventualVerdict::No { certificate } => {
                        let mut text = String::from("not eventually satisfied\n");
                        for level in &certificate {
                            let parts: Vec<String> = level
                                .counterexample
                                .iter()
                                .map(|(k, v)| format!("{}={}", k, g.element_name(*v)))
                                .collect();
                            let _ = writeln!(
                                text,
                                "level {} (set size {}): counterexample {}",
                                level.level,
                                level.set.len(),
                                parts.join(" ")
                            );
                        }
                        Ok(Report {
                            text,
                            verdict_ok: false,
                            budget_exceeded: false,
                        })
                    }
                    EventualVerdict::BudgetExceeded => Ok(Report {
                        text: "budget exceeded\n".to_string(),
                        verdict_ok: false,
                        budget_exceeded: true,
                    }),
                }
            }
            AssocCmd::Survey { group } => {
                let g = load_group(group, rc.order_cap)?;
                let report = assoc_survey(&g, rc.max_leaves, rc.max_leaves.max(7), &cfg)?;
                let text = match rc.format {
                    Format::Text => report.render_text(),
                    Format::Structured => report.render_structured(),
                };
                Ok(Report {
                    text,
                    verdict_ok: report.count_no() == 0 && report.count_budget() == 0,
                    budget_exceeded: report.count_budget() > 0,
                })
            }
            AssocCmd::Levi { group } => {
                let g = load_group(group, rc.order_cap)?;
                let report = levi_check(&g, &cfg);
                let text = format!(
                    "associative: {}; class <= 2: {}; Levi {}\n",
                    if report.direct_assoc.holds() { "yes" } else { "no" },
                    if report.class_le_2 { "yes" } else { "no" },
                    match report.consistent() {
                        Some(true) => "consistent",
                        Some(false) => "INCONSISTENT",
                        None => "undecided (budget)",
                    }
                );
                Ok(Report {
                    text,
                    verdict_ok: report.consistent() == Some(true),
                    budget_exceeded: report.consistent().is_none(),
                })
            }
            AssocCmd::MainTheorem { max_order } => {
                let groups: Vec<FiniteGroup> = catalog(*max_order)
                    .iter()
                    .map(|n| builtin(n).expect("catalog name"))
                    .collect();
                let report =
                    verify_main_theorem(&groups, rc.max_leaves.min(4), rc.max_leaves.max(7), &cfg)?;
                Ok(Report {
                    text: report.render_text(),
                    verdict_ok: report.pass(),
                    budget_exceeded: report.groups.iter().any(|g| g.any_budget),
                })
            }
        },

        Command::Vine { cmd } => match cmd {
            VineCmd::Rewrite { n, turns, side } => {
                let spec = parse_turns(turns, *n)?;
                let pl = VinePlacement::new(spec, (*side).into());
                let rr = rewrite_to_left_vine(&pl);
                let mut text = format!("{}\n", vine_expr(&pl));
                text.push_str(&rr.render());
                Ok(Report::ok(text))
            }
            VineCmd::Verify { group, n, turns, side, samples } => {
                let g = load_group(group, rc.order_cap)?;
                let placements: Vec<VinePlacement> = match turns {
                    Some(t) => {
                        let spec = parse_turns(t, *n)?;
                        let sides: Vec<Side> = match side {
                            Some(s) => vec![(*s).into()],
                            None => vec![Side::Left, Side::Right],
                        };
                        sides
                            .into_iter()
                            .map(|s| VinePlacement::new(spec.clone(), s))
                            .collect()
                    }
                    None => {
                        let mut out = Vec::new();
                        for bits in 0..(1u32 << (n - 1)) {
                            let t: Vec<Turn> = (0..n - 1)
                                .map(|i| if bits >> i & 1 == 0 { Turn::L } else { Turn::R })
                                .collect();
                            let spec = VineSpec::new(*n, t).map_err(|e| anyhow!("{}", e))?;
                            for s in [Side::Left, Side::Right] {
                                out.push(VinePlacement::new(spec.clone(), s));
                            }
                        }
                        out
                    }
                };
                let mut text = String::new();
                let mut all_ok = true;
                for pl in &placements {
                    match verify_rewrite(&g, pl, *samples, rc.seed) {
                        Ok(checked) => {
                            let _ = writeln!(text, "{}: ok ({} assignments)", vine_expr(pl), checked);
                        }
                        Err(m) => {
                            all_ok = false;
                            let _ = writeln!(
                                text,
                                "{}: MISMATCH at a={} xs={:?} (original {}, bar {}, hat {})",
                                vine_expr(pl), m.a, m.xs, m.original, m.bar, m.hat
                            );
                        }
                    }
                }
                Ok(Report {
                    text,
                    verdict_ok: all_ok,
                    budget_exceeded: false,
                })
            }
            VineCmd::Centralize { group, j, multiples } => {
                let g = load_group(group, rc.order_cap)?;
                let qs: Vec<usize> = multiples
                    .split(',')
                    .map(|s| s.trim().parse().context("bad multiple"))
                    .collect::<Result<_>>()?;
                let report = check_centralize_propagation(&g, *j, &qs);
                let text = match &report.failure {
                    None => format!(
                        "ok: {} hypothesis pairs, {} conclusions checked\n",
                        report.pairs_with_hypothesis, report.conclusions_checked
                    ),
                    Some(f) => format!(
                        "FAIL: a={} b={} q={} side={:?} turns={:?}\n",
                        g.element_name(f.a), g.element_name(f.b), f.q, f.side, f.turns
                    ),
                };
                Ok(Report {
                    text,
                    verdict_ok: report.holds(),
                    budget_exceeded: false,
                })
            }
        },

        Command::Color { cmd } => match cmd {
            ColorCmd::Bound { n, j, exact } => {
                let inst = ColoringInstance::new(*n, *j)
                    .ok_or_else(|| anyhow!("n and j must be at least 1"))?;
                let clique = proof_clique(&inst);
                let bound_ok = verify_lower_bound(&inst);
                let mut text = format!(
                    "height {} leaves {}\nclique size {} (lower bound {}): {}\n",
                    inst.height(),
                    inst.leaf_count(),
                    clique.len(),
                    1usize << n,
                    if bound_ok { "verified" } else { "FAILED" }
                );
                if *exact {
                    if inst.leaf_count() > MIN_COLORS_LEAF_CAP {
                        bail!(
                            "exact search needs <= {} leaves, instance has {}",
                            MIN_COLORS_LEAF_CAP,
                            inst.leaf_count()
                        );
                    }
                    let chi = min_colors(&inst);
                    let _ = writeln!(text, "exact minimum {}", chi);
                }
                Ok(Report {
                    text,
                    verdict_ok: bound_ok,
                    budget_exceeded: false,
                })
            }
            ColorCmd::Check { n, j, colors } => {
                let inst = ColoringInstance::new(*n, *j)
                    .ok_or_else(|| anyhow!("n and j must be at least 1"))?;
                let parsed: Vec<usize> = colors
                    .split(',')
                    .map(|s| s.trim().parse().context("bad color"))
                    .collect::<Result<_>>()?;
                if parsed.len() != inst.leaf_count() {
                    bail!(
                        "expected {} colors, got {}",
                        inst.leaf_count(),
                        parsed.len()
                    );
                }
                match valid_coloring(&inst, &parsed) {
                    ColoringVerdict::Valid => Ok(Report::ok("valid\n".to_string())),
                    ColoringVerdict::Violation { i, k } => Ok(Report {
                        text: format!("invalid: leaves {} and {} share a color\n", i, k),
                        verdict_ok: false,
                        budget_exceeded: false,
                    }),
                }
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.run.workers {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .is_err()
        {
            eprintln!("warning: worker pool already initialized");
        }
    }
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.text);
            if let Some(path) = &cli.run.output {
                if let Err(e) = std::fs::write(path, &report.text) {
                    eprintln!("error writing {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            }
            if report.budget_exceeded {
                ExitCode::from(3)
            } else if report.verdict_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
