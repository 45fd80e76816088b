//! Command-line front end: exact spectra, Smith normal forms, Smith groups,
//! critical groups and prediction-vs-oracle verification for abelian Cayley
//! graphs.
//!
//! Exit codes: 0 success, 1 verification mismatches, 2 input/parse errors,
//! 3 hypothesis violations (e.g. a prime dividing the group order),
//! 4 resource caps.

mod render;

use cayley_smith::caps::{DEFAULT_NCUBE_CAP, DEFAULT_SNF_CAP, DEFAULT_SPECTRUM_CAP};
use cayley_smith::cayley::{self, ConnectingSet, MatrixCombo};
use cayley_smith::error::Error;
use cayley_smith::reports;
use cayley_smith::snf;
use cayley_smith::spectral::{self, PiMode};
use cayley_smith::{GroupSpec, IntegerMatrix};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::io::Read;

/// Environment variable naming a JSON config file with default caps:
/// `{"cap_spectrum": 1024, "cap_snf": 512, "cap_ncube": 8}`.
const CONFIG_ENV: &str = "CAYLEY_SMITH_CONFIG";

#[derive(Parser)]
#[command(
    name = "cayley-smith",
    about = "Exact spectra, Smith normal forms and critical groups of abelian Cayley graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit a human-readable table instead of JSON where available.
    #[arg(long, global = true)]
    table: bool,

    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,

    /// Cap on |G| for spectra and predictions.
    #[arg(long, global = true)]
    cap_spectrum: Option<u64>,

    /// Cap on |G| for the full Smith normal form oracle.
    #[arg(long, global = true)]
    cap_snf: Option<u64>,

    /// Cap on n for the n-cube experiments.
    #[arg(long, global = true)]
    cap_ncube: Option<u32>,
}

/// Connecting-set / matrix selection, shared by several subcommands.
/// Exactly one of the three must be given.
#[derive(Args, Clone)]
struct SetArgs {
    /// Union of weight classes, e.g. "1" or "1,3".
    #[arg(long)]
    weights: Option<String>,

    /// Explicit element list, e.g. "(1,0),(0,2)".
    #[arg(long)]
    elements: Option<String>,

    /// Integer combination of weight-class matrices and the identity,
    /// e.g. "2*W1-3*I".
    #[arg(long)]
    combo: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact eigenvalues (with multiplicities) via character sums.
    Spectrum {
        /// Group orders, e.g. "2^3" or "2,3,4".
        #[arg(long)]
        group: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Smith normal form of a Cayley matrix or of a matrix file.
    Snf {
        /// Plain-text matrix file ("rows cols" header then entries); "-" for stdin.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        group: Option<String>,
        #[command(flatten)]
        set: SetArgs,
        /// Also return unimodular transforms P, Q with P M Q = S.
        #[arg(long)]
        transforms: bool,
    },
    /// Predict p-elementary divisors from the spectrum (requires p coprime
    /// to |G|).
    Predict {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        prime: u64,
        /// Check every prime over p and insist the profiles coincide.
        #[arg(long)]
        all_pi: bool,
        /// Use a specific prime over p (index into the sorted factor list).
        #[arg(long, conflicts_with = "all_pi")]
        pi_index: Option<usize>,
    },
    /// Run a prediction-vs-oracle grid over groups, weight combos and primes.
    Verify {
        /// Group spec; repeat for several groups.
        #[arg(long = "group", required = true)]
        groups: Vec<String>,
        /// Optional explicit element list (applied to every listed group).
        #[arg(long)]
        elements: Option<String>,
        /// Check all primes up to this bound.
        #[arg(long, default_value_t = 13)]
        max_prime: u64,
    },
    /// Cokernel of the adjacency (or combo) matrix as an abelian group.
    SmithGroup {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Torsion of the Laplacian cokernel, plus the spanning-tree count.
    CriticalGroup {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Spectra, 2-ranks, odd-part divisors and critical-group checks for the
    /// n-cube.
    NcubeReport {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 13)]
        max_prime: u64,
    },
    /// Distance-k matrix of the Hamming scheme H(n,q): closed-form spectrum,
    /// divisor predictions and the oracle.
    Hamming {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 13)]
        max_prime: u64,
    },
    /// Cartesian product of complete graphs: spectra and critical-group
    /// predictions.
    Cartesian {
        /// Orders of the complete-graph factors, e.g. "2,3".
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 13)]
        max_prime: u64,
    },
    /// Evidence table comparing 2-power invariant-factor multiplicities of
    /// the n-cube adjacency matrix with eigenvalue 2-divisibilities.
    Conjecture {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        /// Use the single-prime elimination instead of the full Smith normal
        /// form.
        #[arg(long)]
        padic: bool,
    },
}

#[derive(Clone, Copy)]
struct Caps {
    spectrum: u64,
    snf: u64,
    ncube: u32,
}

fn load_caps(cli: &Cli) -> Result<Caps, Error> {
    let mut caps = Caps {
        spectrum: DEFAULT_SPECTRUM_CAP,
        snf: DEFAULT_SNF_CAP,
        ncube: DEFAULT_NCUBE_CAP,
    };
    if let Ok(path) = std::env::var(CONFIG_ENV) {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Parse(format!("cannot read config {path}: {e}")))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("bad config {path}: {e}")))?;
        if let Some(v) = value.get("cap_spectrum").and_then(Value::as_u64) {
            caps.spectrum = v;
        }
        if let Some(v) = value.get("cap_snf").and_then(Value::as_u64) {
            caps.snf = v;
        }
        if let Some(v) = value.get("cap_ncube").and_then(Value::as_u64) {
            caps.ncube = v as u32;
        }
    }
    if let Some(v) = cli.cap_spectrum {
        caps.spectrum = v;
    }
    if let Some(v) = cli.cap_snf {
        caps.snf = v;
    }
    if let Some(v) = cli.cap_ncube {
        caps.ncube = v;
    }
    Ok(caps)
}

fn check_cap(size: u64, cap: u64, what: &str) -> Result<(), Error> {
    if size > cap {
        return Err(Error::ResourceLimit(format!(
            "|G| = {size} exceeds the {what} cap {cap} (override with --cap-{what} or the config file)"
        )));
    }
    Ok(())
}

fn build_combo(spec: &GroupSpec, set: &SetArgs) -> Result<MatrixCombo, Error> {
    match (&set.weights, &set.elements, &set.combo) {
        (Some(w), None, None) => Ok(MatrixCombo::adjacency(ConnectingSet::parse_weights(
            spec, w,
        )?)),
        (None, Some(e), None) => Ok(MatrixCombo::adjacency(ConnectingSet::parse_elements(
            spec, e,
        )?)),
        (None, None, Some(c)) => MatrixCombo::parse(spec, c),
        (None, None, None) => Err(Error::Parse(
            "no connecting set given: use --weights, --elements or --combo".into(),
        )),
        _ => Err(Error::Parse(
            "give exactly one of --weights, --elements, --combo".into(),
        )),
    }
}

fn build_set(spec: &GroupSpec, set: &SetArgs) -> Result<ConnectingSet, Error> {
    match (&set.weights, &set.elements, &set.combo) {
        (Some(w), None, None) => ConnectingSet::parse_weights(spec, w),
        (None, Some(e), None) => ConnectingSet::parse_elements(spec, e),
        (None, None, Some(_)) => Err(Error::Parse(
            "this command needs a plain connecting set (--weights or --elements), not --combo"
                .into(),
        )),
        (None, None, None) => Err(Error::Parse(
            "no connecting set given: use --weights or --elements".into(),
        )),
        _ => Err(Error::Parse(
            "give exactly one of --weights, --elements".into(),
        )),
    }
}

fn set_label(set: &SetArgs) -> String {
    match (&set.weights, &set.elements, &set.combo) {
        (Some(w), _, _) => format!("weights {w}"),
        (_, Some(e), _) => format!("elements {e}"),
        (_, _, Some(c)) => format!("combo {c}"),
        _ => "unset".into(),
    }
}

fn emit(value: Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let caps = load_caps(cli)?;
    match &cli.command {
        Command::Spectrum { group, set } => {
            let spec = GroupSpec::parse(group)?;
            check_cap(spec.size(), caps.spectrum, "spectrum")?;
            let combo = build_combo(&spec, set)?;
            let spectrum = spectral::spectrum_via_characters(&spec, &combo)?;
            if cli.table {
                print!("{}", render::spectrum_table(&spectrum));
            } else {
                emit(json!({
                    "command": "spectrum",
                    "group": render::group_json(&spec),
                    "input": set_label(set),
                    "spectrum": render::spectrum_json(&spectrum),
                }));
            }
            Ok(0)
        }
        Command::Snf { matrix, group, set, transforms } => {
            let (m, described) = match (matrix, group) {
                (Some(path), None) => {
                    let text = if path == "-" {
                        let mut buf = String::new();
                        std::io::stdin().read_to_string(&mut buf)?;
                        buf
                    } else {
                        std::fs::read_to_string(path)?
                    };
                    (IntegerMatrix::from_text(&text)?, format!("file {path}"))
                }
                (None, Some(g)) => {
                    let spec = GroupSpec::parse(g)?;
                    check_cap(spec.size(), caps.snf, "snf")?;
                    let combo = build_combo(&spec, set)?;
                    (
                        cayley::combo_matrix(&spec, &combo)?,
                        format!("group {g}, {}", set_label(set)),
                    )
                }
                _ => {
                    return Err(Error::Parse(
                        "give either --matrix or --group with a set".into(),
                    ))
                }
            };
            check_cap(m.rows().max(m.cols()) as u64, caps.snf, "snf")?;
            let snf = snf::smith_normal_form(&m, *transforms)?;
            let mut value = render::snf_json(&snf);
            let obj = value.as_object_mut().unwrap();
            obj.insert("command".into(), json!("snf"));
            obj.insert("input".into(), json!(described));
            obj.insert("rows".into(), json!(m.rows()));
            obj.insert("cols".into(), json!(m.cols()));
            emit(value);
            Ok(0)
        }
        Command::Predict { group, set, prime, all_pi, pi_index } => {
            let spec = GroupSpec::parse(group)?;
            check_cap(spec.size(), caps.spectrum, "spectrum")?;
            let combo = build_combo(&spec, set)?;
            let mode = if *all_pi {
                PiMode::All
            } else if let Some(i) = pi_index {
                PiMode::Factor(*i)
            } else {
                PiMode::Default
            };
            let profile = spectral::predict_elementary_divisors(&spec, &combo, *prime, mode)?;
            emit(json!({
                "command": "predict",
                "group": render::group_json(&spec),
                "input": set_label(set),
                "prime": prime,
                "profile": render::predicted_json(&profile),
            }));
            Ok(0)
        }
        Command::Verify { groups, elements, max_prime } => {
            let primes = cayley_smith::arith::primes_upto(*max_prime);
            let mut jobs = Vec::new();
            for g in groups {
                let spec = GroupSpec::parse(g)?;
                check_cap(spec.size(), caps.snf, "snf")?;
                match elements {
                    Some(e) => {
                        let set = ConnectingSet::parse_elements(&spec, e)?;
                        jobs.push(reports::VerificationJob {
                            group: spec.clone(),
                            combo: MatrixCombo::adjacency(set),
                            label: format!("elements {e}"),
                            primes: primes.clone(),
                        });
                    }
                    None => {
                        jobs.extend(reports::weight_class_jobs(&spec, &primes)?);
                    }
                }
            }
            let rows = reports::run_verification(&jobs)?;
            let mismatches = rows
                .iter()
                .filter(|r| r.status == reports::VerificationStatus::Mismatch)
                .count();
            if cli.table {
                print!("{}", render::verification_table(&rows));
            } else {
                let mut value = render::verification_json(&rows);
                let obj = value.as_object_mut().unwrap();
                obj.insert("command".into(), json!("verify"));
                obj.insert("max_prime".into(), json!(max_prime));
                emit(value);
            }
            Ok(if mismatches > 0 { 1 } else { 0 })
        }
        Command::SmithGroup { group, set } => {
            let spec = GroupSpec::parse(group)?;
            check_cap(spec.size(), caps.snf, "snf")?;
            let combo = build_combo(&spec, set)?;
            let matrix = cayley::combo_matrix(&spec, &combo)?;
            let structure = snf::cokernel_structure(&matrix)?;
            emit(json!({
                "command": "smith-group",
                "group": render::group_json(&spec),
                "input": set_label(set),
                "structure": render::structure_json(&structure),
            }));
            Ok(0)
        }
        Command::CriticalGroup { group, set } => {
            let spec = GroupSpec::parse(group)?;
            check_cap(spec.size(), caps.snf, "snf")?;
            let connecting = build_set(&spec, set)?;
            let structure = snf::critical_group(&spec, &connecting)?;
            let mut obj = serde_json::Map::new();
            obj.insert("command".into(), json!("critical-group"));
            obj.insert("group".into(), render::group_json(&spec));
            obj.insert("input".into(), json!(set_label(set)));
            obj.insert("critical_group".into(), render::structure_json(&structure));
            obj.insert("components".into(), json!(connecting.component_count(&spec)));
            if connecting.is_symmetric() && connecting.component_count(&spec) == 1 {
                let trees = snf::spanning_tree_count(&spec, &connecting)?;
                let agrees = structure.torsion_order() == trees;
                obj.insert("spanning_trees".into(), render::big(&trees));
                obj.insert("matrix_tree_agrees".into(), json!(agrees));
            } else {
                obj.insert(
                    "matrix_tree_check".into(),
                    json!("skipped: needs a symmetric connecting set and a connected graph"),
                );
            }
            emit(Value::Object(obj));
            Ok(0)
        }
        Command::NcubeReport { n, max_prime } => {
            if *n > caps.ncube {
                return Err(Error::ResourceLimit(format!(
                    "n = {n} exceeds the n-cube cap {}",
                    caps.ncube
                )));
            }
            let report = reports::ncube_report(*n, *max_prime)?;
            let mut value = render::ncube_json(&report);
            value
                .as_object_mut()
                .unwrap()
                .insert("command".into(), json!("ncube-report"));
            emit(value);
            Ok(0)
        }
        Command::Hamming { n, q, k, max_prime } => {
            let spec = GroupSpec::new(vec![*q; *n as usize])?;
            check_cap(spec.size(), caps.snf, "snf")?;
            let report = reports::hamming_report(*n, *q, *k, *max_prime)?;
            let mut value = render::hamming_json(&report);
            value
                .as_object_mut()
                .unwrap()
                .insert("command".into(), json!("hamming"));
            emit(value);
            Ok(0)
        }
        Command::Cartesian { group, max_prime } => {
            let spec = GroupSpec::parse(group)?;
            check_cap(spec.size(), caps.snf, "snf")?;
            let report = reports::cartesian_report(spec.orders(), *max_prime)?;
            let mut value = render::cartesian_json(&report);
            value
                .as_object_mut()
                .unwrap()
                .insert("command".into(), json!("cartesian"));
            emit(value);
            Ok(0)
        }
        Command::Conjecture { n_max, padic } => {
            if *n_max > caps.ncube {
                return Err(Error::ResourceLimit(format!(
                    "n_max = {n_max} exceeds the n-cube cap {}",
                    caps.ncube
                )));
            }
            let rows = reports::conjecture_table(*n_max, *padic)?;
            if cli.table {
                print!("{}", render::conjecture_text_table(&rows));
            } else {
                let mut value = render::conjecture_json(&rows);
                value
                    .as_object_mut()
                    .unwrap()
                    .insert("command".into(), json!("conjecture"));
                emit(value);
            }
            Ok(0)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidInput(_) | Error::Unsupported(_) | Error::Io(_) => 2,
        Error::HypothesisViolation(_) => 3,
        Error::ResourceLimit(_) => 4,
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
