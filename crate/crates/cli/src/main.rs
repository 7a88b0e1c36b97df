//! `tensorspace`: flag-driven experiments over the core library.
//!
//! Exit codes: 0 pass, 1 computed mismatch, 2 bad input, 3 cap exceeded.

mod preset;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use tensorspace_core::autgroup::{
    construction_forms, rigidity_certificate, verify_construction, verify_diagonal, ConstructionMode,
};
use tensorspace_core::forms::diagonal_form;
use tensorspace_core::relstruct::orbit_partition;
use tensorspace_core::repthy::{length_report, HypergraphFamily, LineFamily, SearchFamily, TruncationFamily};
use tensorspace_core::{Caps, Error, PermGroup, RelationalStructure};

use preset::{Preset, Source};

#[derive(Parser, Debug)]
#[command(name = "tensorspace", version, about = "Tensor spaces from relational structures")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Largest universe for the permutation search.
    #[arg(long, global = true)]
    cap_perms: Option<usize>,
    /// Largest tuple space enumerated.
    #[arg(long, global = true)]
    cap_tuples: Option<u128>,
    /// Largest group materialised.
    #[arg(long, global = true)]
    cap_group: Option<u128>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a structure and write its JSON.
    Structure {
        #[command(flatten)]
        source: Source,
        /// Edge size for `hypergraph`.
        #[arg(long, default_value_t = 3)]
        m: u32,
    },
    /// Emit the form system of a construction.
    Forms {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Automorphism group of a structure.
    Aut {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        m: u32,
    },
    /// Orbits of a group on k-tuples.
    Orbits {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = GroupChoice::Aut)]
        group: GroupChoice,
        #[arg(long, default_value_t = 3)]
        m: u32,
    },
    /// Check a claim; exit 0 iff it holds.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Orbit-count growth along a truncation family.
    Length {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: usize,
        /// Root order; also the edge size for `hypergraph`.
        #[arg(long, default_value_t = 3)]
        m: u32,
        /// Comma-separated truncation sizes: `n` for most presets, colors
        /// for `hypergraph`.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// `line` defaults to its rotation group.
        #[arg(long, value_enum)]
        group: Option<GroupChoice>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Monomial automorphisms of the diagonal form against `d^n · n!`.
    PropDiag {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// A construction's monomial automorphism group against the prediction.
    Construction {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Directional-derivative criterion on seeded random vectors.
    Rigidity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
struct ModeArgs {
    #[arg(long, value_enum, default_value_t = ModeChoice::Standard)]
    mode: ModeChoice,
    /// Block size for `blowup`; edge size for `hypergraph`.
    #[arg(long, default_value_t = 3)]
    m: u32,
}

impl ModeArgs {
    fn resolve(&self) -> ConstructionMode {
        match self.mode {
            ModeChoice::Standard => ConstructionMode::Standard,
            ModeChoice::Blowup => ConstructionMode::Blowup(self.m),
            ModeChoice::Blowup2 => ConstructionMode::Blowup2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeChoice {
    Standard,
    Blowup,
    Blowup2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GroupChoice {
    /// Full automorphism group by search.
    Aut,
    /// Cyclic rotations of the universe.
    Rotations,
}

enum Failure {
    Mismatch,
    BadInput(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::BadInput(e.to_string())
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::BadInput(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn caps(g: &Global) -> std::result::Result<Caps, Failure> {
    let mut caps = Caps::default();
    if let Ok(overrides) = std::env::var("TENSORSPACE_CAPS") {
        caps = caps.with_overrides(&overrides)?;
    }
    if let Some(v) = g.cap_perms {
        caps.max_search_degree = v;
    }
    if let Some(v) = g.cap_tuples {
        caps.max_tuples = v;
    }
    if let Some(v) = g.cap_group {
        caps.max_group = v;
    }
    Ok(caps)
}

/// Writes `value` to `--out` and `summary` to stdout, or `value` to stdout
/// and `summary` to stderr.
fn emit<T: Serialize>(g: &Global, value: &T, summary: &str) -> Outcome {
    let text = serde_json::to_string(value).map_err(|e| Failure::BadInput(e.to_string()))?;
    match &g.out {
        Some(path) => {
            std::fs::write(path, format!("{text}\n"))
                .map_err(|e| Failure::BadInput(format!("cannot write {}: {e}", path.display())))?;
            println!("{summary}");
        }
        None => {
            println!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let caps = caps(g)?;
    match &cli.command {
        Command::Structure { source, m } => {
            let s = source.load(*m, g.seed, &caps)?;
            let counts: Vec<String> = s.relations().iter().map(|r| r.len().to_string()).collect();
            emit(g, &s.to_data(), &format!("n={} tuples=[{}]", s.n(), counts.join(",")))
        }
        Command::Forms { source, mode } => {
            let s = source.load(mode.m, g.seed, &caps)?;
            let mode = mode.resolve();
            let mut forms = Vec::new();
            let mut lines = Vec::new();
            for (name, f) in construction_forms(&s, mode)? {
                let poly = f.as_polynomial()?.to_string();
                lines.push(format!("{name} = {poly}"));
                forms.push(json!({
                    "name": name,
                    "symmetric": f.is_symmetric(),
                    "polynomial": poly,
                    "form": f.to_data()?,
                }));
            }
            emit(g, &json!({ "mode": mode.to_string(), "forms": forms }), &lines.join("\n"))
        }
        Command::Aut { source, m } => {
            let s = source.load(*m, g.seed, &caps)?;
            let group = s.automorphism_search(&caps)?;
            let order = group.order().expect("search enumerates");
            let value = json!({ "n": s.n(), "order": order, "generators": group.generators() });
            emit(g, &value, &format!("|Aut| = {order}"))
        }
        Command::Orbits { source, k, group, m } => {
            let s = source.load(*m, g.seed, &caps)?;
            let gamma = match group {
                GroupChoice::Aut => s.automorphism_search(&caps)?,
                GroupChoice::Rotations => PermGroup::rotations(s.n()),
            };
            let p = orbit_partition(&gamma, *k, &caps)?;
            emit(g, &p.summary(), &format!("{} orbits on {}^{}", p.orbit_count(), s.n(), k))
        }
        Command::Verify(v) => verify(g, v, &caps),
        Command::Length { source, k, m, sizes, group } => {
            let preset = source.preset.ok_or_else(|| Failure::BadInput("length needs --preset".into()))?;
            let report = match (preset, group) {
                (Preset::Line, None | Some(GroupChoice::Rotations)) => length_report(&LineFamily, *k, *m, sizes, &caps)?,
                (Preset::Hypergraph, _) => {
                    let fam = HypergraphFamily { vertices: source.n.unwrap_or(4), edge_size: *m as usize, p: source.p, seed: g.seed };
                    length_report(&fam, *k, *m, sizes, &caps)?
                }
                (_, Some(GroupChoice::Rotations)) => {
                    return Err(Failure::BadInput("rotation families exist for the line preset only".into()))
                }
                _ => {
                    let build = |n: usize| source.build(preset, Some(n), *m, g.seed, &caps);
                    let fam = SearchFamily { name: format!("{preset:?}"), build };
                    length_report(&fam as &dyn TruncationFamily, *k, *m, sizes, &caps)?
                }
            };
            emit(g, &report, &report.to_string())
        }
    }
}

fn verify(g: &Global, v: &VerifyCommand, caps: &Caps) -> Outcome {
    let (pass, summary) = match v {
        VerifyCommand::PropDiag { n, d } => {
            let r = verify_diagonal(*n, *d, caps)?;
            let line = format!("{}: order {} expected {}", r.mode, r.group_order, r.expected_order.unwrap_or(0));
            emit(g, &r, &line)?;
            (r.matches, line)
        }
        VerifyCommand::Construction { source, mode } => {
            let s: RelationalStructure = source.load(mode.m, g.seed, caps)?;
            let r = verify_construction(&s, mode.resolve(), caps)?;
            let line = format!("{}: order {} expected {}", r.mode, r.group_order, r.expected_order.unwrap_or(0));
            emit(g, &r, &line)?;
            (r.matches, line)
        }
        VerifyCommand::Rigidity { n, d, samples } => {
            let vs = rigidity_samples(*n, *samples, g.seed);
            let r = rigidity_certificate(&diagonal_form(*n, *d), &vs)?;
            let failures = r.samples.iter().filter(|s| !s.pass).count();
            let line = format!("rigidity n={n} d={d}: {} samples, {failures} failures", r.samples.len());
            emit(g, &r, &line)?;
            (r.pass, line)
        }
    };
    if pass {
        Ok(())
    } else {
        eprintln!("mismatch: {summary}");
        Err(Failure::Mismatch)
    }
}

/// Every other sample is supported on at most one coordinate; the rest
/// have a uniformly drawn support size. Entries are small nonzero fractions.
fn rigidity_samples(n: usize, count: usize, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let support = if i % 2 == 0 { rng.random_range(0..=n.min(1)) } else { rng.random_range(0..=n) };
            let mut coords: Vec<usize> = (0..n).collect();
            for j in 0..support {
                let k = rng.random_range(j..n);
                coords.swap(j, k);
            }
            let mut v = vec![BigRational::from_integer(BigInt::from(0)); n];
            for &c in &coords[..support] {
                let num = rng.random_range(1..=9i64) * if rng.random_bool(0.5) { 1 } else { -1 };
                let den = rng.random_range(1..=4i64);
                v[c] = BigRational::new(num.into(), den.into());
            }
            v
        })
        .collect()
}
