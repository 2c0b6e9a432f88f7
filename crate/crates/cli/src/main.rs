mod report;
mod scenarios;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use report::{Check, Report};
use scenarios::{CollectionKind, GroupKind, Params};

#[derive(Parser)]
#[command(name = "isocoset", version, about = "Coset posets of isotropic subspaces and their homology")]
struct Cli {
  #[command(subcommand)]
  scenario: Scenario,
  #[command(flatten)]
  common: Common,
}

#[derive(Args)]
struct Common {
  /// Prime of the ground field.
  #[arg(long, global = true, default_value_t = 2)]
  p: u32,
  /// Witt index of the symplectic space.
  #[arg(long, global = true, default_value_t = 2)]
  r: usize,
  #[arg(long, global = true, value_enum)]
  group: Option<GroupKind>,
  /// Allow r = 3.
  #[arg(long, global = true)]
  long: bool,
  /// Worker threads; defaults to every core.
  #[arg(long, global = true)]
  jobs: Option<usize>,
  /// Write the report here instead of stdout.
  #[arg(long, global = true)]
  out: Option<PathBuf>,
  #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
  format: Format,
  /// Ambient dimension for the subspace scenarios.
  #[arg(long, global = true)]
  dim: Option<usize>,
  #[arg(long, global = true, value_enum, default_value_t = CollectionKind::Isotropic)]
  collection: CollectionKind,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
  Json,
  Csv,
}

#[derive(Clone, Copy, Subcommand)]
enum Scenario {
  /// Homotopy type of C_{H(V)} I(V), or of C_pi A(E) with --group.
  Sphericity,
  /// Fibers of nu-hat: C_E A(E) against C_V I(V).
  Reduction,
  /// Rank identity of the long exact sequence for an index-p subgroup.
  SplitSeq,
  /// theta_v, s_v, theta-bar and s-bar identities.
  Maps,
  /// The image of the fundamental class of J under tau-tilde.
  Tau,
  /// Isotropic counts, Steinberg dimensions and the wedge count.
  Formulas,
  /// The map phi from pi to H(E/[E, E]).
  PiPhi,
  /// q-hat from a degenerate form to its non-degenerate quotient.
  Almost,
}

impl Scenario {
  fn name(self) -> &'static str {
    match self {
      Scenario::Sphericity => "sphericity",
      Scenario::Reduction => "reduction",
      Scenario::SplitSeq => "split-seq",
      Scenario::Maps => "maps",
      Scenario::Tau => "tau",
      Scenario::Formulas => "formulas",
      Scenario::PiPhi => "pi-phi",
      Scenario::Almost => "almost",
    }
  }

  fn run(self, params: &Params) -> isocoset::Result<Vec<Check>> {
    match self {
      Scenario::Sphericity => scenarios::sphericity(params),
      Scenario::Reduction => scenarios::reduction(params),
      Scenario::SplitSeq => scenarios::split_seq(params),
      Scenario::Maps => scenarios::maps(params),
      Scenario::Tau => scenarios::tau(params),
      Scenario::Formulas => scenarios::formulas(params),
      Scenario::PiPhi => scenarios::pi_phi(params),
      Scenario::Almost => scenarios::almost(params),
    }
  }
}

fn params_map(params: &Params) -> BTreeMap<String, Value> {
  let mut m = BTreeMap::new();
  m.insert("p".into(), json!(params.p));
  m.insert("r".into(), json!(params.r));
  m.insert("long".into(), json!(params.long));
  if let Some(g) = params.group {
    m.insert("group".into(), json!(g));
  }
  if let Some(d) = params.dim {
    m.insert("dim".into(), json!(d));
  }
  m.insert("collection".into(), json!(params.collection));
  m
}

fn main() -> ExitCode {
  let cli = Cli::parse();
  let c = cli.common;
  if let Some(jobs) = c.jobs {
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
      eprintln!("isocoset: {e}");
      return ExitCode::from(1);
    }
  }
  let params = Params { p: c.p, r: c.r, dim: c.dim, group: c.group, collection: c.collection, long: c.long };
  let start = Instant::now();
  let name = cli.scenario.name();
  let checks = match scenarios::guard(&params).and_then(|()| cli.scenario.run(&params)) {
    Ok(checks) => checks,
    Err(e) if scenarios::is_refusal(&e) => vec![Check::skipped(name, e.to_string())],
    Err(e) => vec![Check::failed(name, e.to_string())],
  };
  let report = Report {
    scenario: name.into(),
    params: params_map(&params),
    checks,
    elapsed_ms: start.elapsed().as_millis() as u64,
  };
  let text = match c.format {
    Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
    Format::Csv => report.to_csv(),
  };
  match &c.out {
    Some(path) => {
      if let Err(e) = std::fs::write(path, &text) {
        eprintln!("isocoset: {}: {e}", path.display());
        return ExitCode::from(1);
      }
    }
    None => print!("{text}"),
  }
  ExitCode::from(report.exit_code() as u8)
}
