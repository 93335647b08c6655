use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use netform::classify::{self, Concept};
use netform::consent::{self, Method, MyersonGame};
use netform::correlated::{self, CorrelationDevice, ObedienceWitness};
use netform::dot;
use netform::game::FiniteGame;
use netform::model::{self, Model, SignalCodec};
use netform::potentials::{self, PotentialFailure};
use netform::report::TheoremReport;
use netform::trade;
use netform::verify::{self, BatchOutcome, TheoremId};
use netform::{Limits, Network, PlayerSet, Rational};

#[derive(Parser)]
#[command(name = "netform", version, about = "Exact stability and equilibrium analysis of network formation models")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Largest player count accepted for enumeration.
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for randomized runs.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EquilibriumGame {
    /// Costless signalling.
    Myerson,
    /// Signals charged with `costs_two_sided`.
    TwoSided,
    /// Initiations charged with `costs_one_sided`.
    OneSided,
    /// Nash profiles that no pair can improve on by adding their link.
    Pairwise,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Conditional,
    ExAnte,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every network of a model under the chosen stability concepts.
    Classify {
        model: PathBuf,
        /// Comma separated concept names, e.g. `ldp,sps,order-2`. Defaults to all.
        #[arg(long, value_delimiter = ',')]
        concepts: Option<Vec<String>>,
    },
    /// Check a theorem on a model file, or on random models with `--random`.
    Verify {
        theorem: String,
        model: Option<PathBuf>,
        /// Number of random instances instead of a model file.
        #[arg(long)]
        random: Option<usize>,
        /// Player count for random instances.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Pure Nash equilibria of a network formation game and the networks they support.
    Equilibria {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = EquilibriumGame::Myerson)]
        game: EquilibriumGame,
    },
    /// Network and game potentials, with the existence claims they imply.
    Potentials { model: PathBuf },
    /// Expected payoffs and enforcement checks for a correlation device.
    Correlated {
        device: PathBuf,
        /// Network model; the device then ranges over signal profiles.
        #[arg(long, conflicts_with = "game", required_unless_present = "game")]
        model: Option<PathBuf>,
        /// Strategic-form game file; the device then ranges over label profiles.
        #[arg(long)]
        game: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Write the trade model on `n` players with per-link cost `c`.
    GenerateTrade {
        n: usize,
        /// Link cost as an exact rational, e.g. `13/25`.
        c: String,
        /// Largest denominator used for square roots.
        #[arg(long, default_value_t = trade::DEFAULT_PRECISION)]
        precision: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// One DOT file per network, labelled with the concepts it satisfies.
    ExportDot {
        model: PathBuf,
        out_dir: PathBuf,
        #[arg(long, value_delimiter = ',')]
        concepts: Option<Vec<String>>,
    },
}

/// Exit status: 0 verified, 1 violated, 2 bad input.
enum Outcome {
    Verified,
    Violated,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Outcome::Verified) => ExitCode::SUCCESS,
        Ok(Outcome::Violated) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let violated = matches!(e.downcast_ref::<netform::Error>(), Some(netform::Error::Inconsistent(_)));
            ExitCode::from(if violated { 1 } else { 2 })
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    match cli.max_n {
        Some(n) => Limits {
            max_network_players: n,
            max_profile_players: n,
        },
        None => Limits::default(),
    }
}

fn load(cli: &Cli, path: &Path) -> anyhow::Result<Model> {
    Model::load(path, limits(cli)).with_context(|| format!("reading model {}", path.display()))
}

fn concepts(names: &Option<Vec<String>>) -> anyhow::Result<Vec<Concept>> {
    match names {
        None => Ok(Concept::ALL.to_vec()),
        Some(v) => v.iter().map(|s| s.parse::<Concept>().map_err(Into::into)).collect(),
    }
}

fn print_json(v: &impl serde::Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Classify { model, concepts: names } => {
            let m = load(cli, model)?;
            let rows = classify::classify(&m, &concepts(names)?)?;
            match cli.format {
                Format::Json => print_json(&rows)?,
                Format::Table => print!("{}", classify::format_table(&rows)),
            }
            Ok(Outcome::Verified)
        }
        Command::Verify { theorem, model, random, n } => {
            let id: TheoremId = theorem.parse()?;
            match (model, random) {
                (Some(_), Some(_)) => Err(anyhow!("give either a model file or --random, not both")),
                (None, None) => Err(anyhow!("a model file or --random K is required")),
                (Some(path), None) => {
                    let rep = verify::run(id, &load(cli, path)?)?;
                    show_report(cli, &rep)?;
                    Ok(if rep.holds() { Outcome::Verified } else { Outcome::Violated })
                }
                (None, Some(k)) => {
                    let ps = PlayerSet::with_limits(*n, limits(cli))?;
                    let out = verify::run_random(id, &ps, *k, cli.seed)?;
                    show_batch(cli, &out)?;
                    Ok(if out.holds() { Outcome::Verified } else { Outcome::Violated })
                }
            }
        }
        Command::Equilibria { model, game } => equilibria(cli, &load(cli, model)?, *game),
        Command::Potentials { model } => potentials_cmd(cli, &load(cli, model)?),
        Command::Correlated { device, model, game, mode } => {
            let text = std::fs::read_to_string(device).with_context(|| format!("reading device {}", device.display()))?;
            if let Some(path) = game {
                let g = model::load_game(path).with_context(|| format!("reading game {}", path.display()))?;
                let d = model::device_from_json(&text, &g, &g)?;
                correlated_cmd(cli, &d, &g, *mode)
            } else {
                let m = load(cli, model.as_ref().expect("clap requires a model or a game"))?;
                let codec = SignalCodec(m.players().n());
                match &m.costs_two_sided {
                    Some(c) => {
                        let g = MyersonGame::two_sided(&m.phi, c)?;
                        let d = model::device_from_json(&text, &codec, &g)?;
                        correlated_cmd(cli, &d, &g, *mode)
                    }
                    None => {
                        let g = MyersonGame::basic(&m.phi);
                        let d = model::device_from_json(&text, &codec, &g)?;
                        correlated_cmd(cli, &d, &g, *mode)
                    }
                }
            }
        }
        Command::GenerateTrade { n, c, precision, output } => {
            let c: Rational = c.parse().map_err(|e| anyhow!("link cost: {e}"))?;
            if c.is_negative() {
                return Err(anyhow!("link cost must be non-negative"));
            }
            let ps = PlayerSet::with_limits(*n, limits(cli))?;
            let m = Model::new(trade::trade_payoffs(&ps, &c, *precision)?);
            match output {
                Some(path) => {
                    m.save(path)?;
                    eprintln!("wrote {}", path.display());
                }
                None => println!("{}", m.to_json()),
            }
            Ok(Outcome::Verified)
        }
        Command::ExportDot { model, out_dir, concepts: names } => {
            let m = load(cli, model)?;
            let ps = m.players().clone();
            let rows = classify::classify(&m, &concepts(names)?)?;
            std::fs::create_dir_all(out_dir)?;
            let mut written = Vec::new();
            for row in &rows {
                let path = out_dir.join(dot::file_name(&ps, row));
                std::fs::write(&path, dot::network_dot(&ps, row))?;
                written.push(path.display().to_string());
            }
            match cli.format {
                Format::Json => print_json(&written)?,
                Format::Table => written.iter().for_each(|p| println!("{p}")),
            }
            Ok(Outcome::Verified)
        }
    }
}

fn violations(rep: &TheoremReport) -> Value {
    json!({
        "theorem": rep.theorem,
        "violations": rep.failures().collect::<Vec<_>>(),
    })
}

fn show_report(cli: &Cli, rep: &TheoremReport) -> anyhow::Result<()> {
    match cli.format {
        Format::Json => print_json(rep)?,
        Format::Table => {
            println!("{}: {}", rep.theorem, if rep.holds() { "verified" } else { "violated" });
            for c in &rep.claims {
                println!("  [{}] {}", if c.holds { "ok" } else { "FAIL" }, c.statement);
                if let (false, Some(w)) = (c.holds, &c.witness) {
                    println!("         {w}");
                }
            }
            for n in &rep.notes {
                println!("  note: {n}");
            }
            if !rep.holds() {
                eprintln!("{}", serde_json::to_string_pretty(&violations(rep))?);
            }
        }
    }
    Ok(())
}

fn show_batch(cli: &Cli, out: &BatchOutcome) -> anyhow::Result<()> {
    match cli.format {
        Format::Json => print_json(out)?,
        Format::Table => {
            println!(
                "{}: {} of {} random instances violated (seed {})",
                out.theorem, out.failures, out.instances, cli.seed
            );
            if let Some(f) = &out.first_failure {
                println!("first failure at instance {}", f.instance);
                eprintln!("{}", serde_json::to_string_pretty(f)?);
            }
        }
    }
    Ok(())
}

fn equilibria(cli: &Cli, m: &Model, which: EquilibriumGame) -> anyhow::Result<Outcome> {
    let ps = m.players();
    let need = |c: &Option<netform::CostStructure>, field: &str| {
        c.clone().ok_or_else(|| anyhow!("this game needs `{field}` in the model"))
    };
    let (networks, profiles): (Vec<Network>, Vec<String>) = match which {
        EquilibriumGame::Myerson => {
            let p = consent::nash_profiles_two_sided(&m.phi, None)?;
            (consent::m_networks(&m.phi, Method::Both)?, p.iter().map(|l| l.to_string()).collect())
        }
        EquilibriumGame::TwoSided => {
            let c = need(&m.costs_two_sided, "costs_two_sided")?;
            let p = consent::nash_profiles_two_sided(&m.phi, Some(&c))?;
            (
                consent::nash_networks_two_sided(&m.phi, &c, Method::Both)?,
                p.iter().map(|l| l.to_string()).collect(),
            )
        }
        EquilibriumGame::OneSided => {
            let g = need(&m.costs_one_sided, "costs_one_sided")?;
            let p = consent::nash_profiles_one_sided(&m.phi, &g)?;
            (consent::nash_networks_one_sided(&m.phi, &g)?, p.iter().map(|d| d.to_string()).collect())
        }
        EquilibriumGame::Pairwise => {
            let p = consent::pairwise_nash_profiles(&m.phi)?;
            (consent::pairwise_nash_networks(&m.phi)?, p.iter().map(|l| l.to_string()).collect())
        }
    };
    let keys: Vec<String> = networks.iter().map(|&g| ps.key(g)).collect();
    match cli.format {
        Format::Json => print_json(&json!({ "networks": keys, "profiles": profiles }))?,
        Format::Table => {
            println!("{} supported networks:", keys.len());
            for &g in &networks {
                println!("  {}", ps.display(g));
            }
            println!("{} equilibrium profiles:", profiles.len());
            for p in &profiles {
                println!("  {p}");
            }
        }
    }
    Ok(Outcome::Verified)
}

fn failure_text(ps: &PlayerSet, f: &PotentialFailure<Network>) -> String {
    f.describe(|&g| ps.display(g))
}

fn potentials_cmd(cli: &Cli, m: &Model) -> anyhow::Result<Outcome> {
    let ps = m.players();
    let flags = potentials::potential_flags(&m.phi, m.costs_two_sided.as_ref())?;
    let exact = potentials::exact_network_potential(&m.phi);
    let ordinal = potentials::ordinal_network_potential(&m.phi);
    let rep = potentials::existence_report(&m.phi, m.costs_two_sided.as_ref())?;
    let side = |r: &Result<potentials::NetworkPotential, PotentialFailure<Network>>| match r {
        Ok(p) => json!({ "potential": p }),
        Err(f) => json!({ "absent": failure_text(ps, f) }),
    };
    match cli.format {
        Format::Json => print_json(&json!({
            "flags": flags,
            "exact": side(&exact),
            "ordinal": side(&ordinal),
            "report": rep,
        }))?,
        Format::Table => {
            for (name, r) in [("exact", &exact), ("ordinal", &ordinal)] {
                match r {
                    Ok(p) => {
                        println!("{name} network potential:");
                        for g in ps.networks() {
                            println!("  {:<12} {}", ps.display(g), p.get(g));
                        }
                    }
                    Err(f) => println!("no {name} network potential: {}", failure_text(ps, f)),
                }
            }
            println!(
                "Myerson game: exact {}, ordinal {}",
                flags.myerson_exact, flags.myerson_ordinal
            );
            if let Some(v) = flags.two_sided_ordinal {
                println!("two-sided game: ordinal {v}");
            }
            show_report(cli, &rep)?;
        }
    }
    Ok(if rep.holds() { Outcome::Verified } else { Outcome::Violated })
}

fn witness_json<G: FiniteGame + ?Sized>(w: &Option<ObedienceWitness>, game: &G) -> Value {
    match w {
        None => json!({ "holds": true }),
        Some(w) => json!({ "holds": false, "witness": w, "explanation": w.describe(game) }),
    }
}

fn correlated_cmd<G: FiniteGame + ?Sized>(cli: &Cli, d: &CorrelationDevice, game: &G, mode: Mode) -> anyhow::Result<Outcome> {
    let pay = correlated::expected_payoffs(d, game);
    let cond = correlated::correlated_violation(d, game);
    let ante = correlated::ex_ante_violation(d, game);
    let failed = match mode {
        Mode::Conditional => cond.is_some(),
        Mode::ExAnte => ante.is_some(),
        Mode::Both => cond.is_some() || ante.is_some(),
    };
    match cli.format {
        Format::Json => print_json(&json!({
            "expected_payoffs": pay,
            "conditional": witness_json(&cond, game),
            "ex_ante": witness_json(&ante, game),
        }))?,
        Format::Table => {
            let shown: Vec<String> = pay.iter().map(|v| v.to_string()).collect();
            println!("expected payoffs: ({})", shown.join(", "));
            for (name, w) in [("correlated equilibrium", &cond), ("ex-ante self-enforcing", &ante)] {
                match w {
                    None => println!("{name}: yes"),
                    Some(w) => println!("{name}: no, {}", w.describe(game)),
                }
            }
        }
    }
    Ok(if failed { Outcome::Violated } else { Outcome::Verified })
}
