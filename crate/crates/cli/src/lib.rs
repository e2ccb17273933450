//! The `hhci` command line: every subcommand prints one JSON object on stdout.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hhci_core::abelian::{group_cohomology, group_hh, AbelianGroup};
use hhci_core::algebra::{Presentation, Regularity};
use hhci_core::bar::{bar_cohomology, compare_square, FiniteAlgebra, MAX_BAR_DEGREE};
use hhci_core::calculus::{apply_jacobian, hessian_q, parse_derivation};
use hhci_core::cliffdg::{cup_square_class, hh, hodge, CliffordModel, DEFAULT_MAX_DEGREE};
use hhci_core::coeff::{in_column_span, CoeffRing};
use hhci_core::cyclic::cyclic_hh;
use hhci_core::{Error, Result};

pub const MAX_DEGREE_ENV: &str = "HHCI_MAX_DEGREE";

#[derive(Parser, Debug)]
#[command(name = "hhci", version, about = "Hochschild cohomology of complete intersections")]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// HH^p and its Hodge splitting for a presentation file.
    Hh {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Closed form for one variable over a field.
    Cyclic {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Group cohomology and HH of the group algebra of Z/n1 x Z/n2 x ...
    Group {
        #[arg(value_delimiter = ',', required = true)]
        orders: Vec<u64>,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// The Hessian square q(D) of a derivation and its Clifford class.
    Square {
        file: PathBuf,
        /// Components a1,..,an of D = sum a_i d/dx_i.
        #[arg(long)]
        derivation: String,
    },
    /// Compare the Clifford model with the bar complex.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        derivation: Option<String>,
    },
    /// Complete-intersection and regularity report.
    Check { file: PathBuf },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit code and the JSON text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            return (2, render(&error_json("UsageError", &e.to_string()), false));
        }
    };
    let max_env = std::env::var(MAX_DEGREE_ENV).ok();
    match execute(&cli.command, max_env.as_deref()) {
        Ok(v) => (0, render(&v, cli.pretty)),
        Err(e) => {
            let code = if e.is_input_error() { 2 } else { 3 };
            (code, render(&error_json(e.kind(), &e.to_string()), cli.pretty))
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("serializable")
    } else {
        serde_json::to_string(v).expect("serializable")
    }
}

fn error_json(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

fn max_degree(flag: Option<usize>, env: Option<&str>) -> Result<usize> {
    match (flag, env) {
        (Some(d), _) => Ok(d),
        (None, Some(text)) => text
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{MAX_DEGREE_ENV} must be a non-negative integer, got `{text}`"))),
        (None, None) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn load(path: &Path) -> Result<Presentation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    Presentation::from_json(&text)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn describe(pres: &Presentation) -> Value {
    let relations: Vec<String> = pres.relations().iter().map(|f| pres.display(f)).collect();
    json!({
        "ring": pres.ring().to_string(),
        "vars": pres.vars(),
        "relations": relations,
        "strategy": format!("{:?}", pres.strategy()),
    })
}

fn regularity_label(r: Regularity) -> &'static str {
    match r {
        Regularity::Verified => "verified",
        Regularity::Assumed => "assumed",
    }
}

fn execute(cmd: &Command, env: Option<&str>) -> Result<Value> {
    match cmd {
        Command::Hh { file, max_degree: d } => {
            let pres = load(file)?;
            let d = max_degree(*d, env)?;
            let module = hh(&pres, d)?;
            let table = hodge(&pres, d)?;
            Ok(json!({
                "command": "hh",
                "presentation": describe(&pres),
                "max_degree": d,
                "regularity": regularity_label(pres.regularity()?),
                "degrees": to_value(&module.degrees),
                "assumptions": module.assumptions,
                "hodge": to_value(&table.entries),
            }))
        }
        Command::Cyclic { file, max_degree: d } => {
            let pres = load(file)?;
            let d = max_degree(*d, env)?;
            let report = cyclic_hh(&pres, d)?;
            let mut v = to_value(&report);
            v["command"] = json!("cyclic");
            v["max_degree"] = json!(d);
            Ok(v)
        }
        Command::Group { orders, ring, max_degree: d } => {
            let ring: CoeffRing = ring.parse()?;
            let d = max_degree(*d, env)?;
            let g = AbelianGroup::new(orders)?;
            let hg = group_cohomology(&g, &ring, d)?;
            let hhg = group_hh(&g, &ring, d)?;
            Ok(json!({
                "command": "group",
                "ring": ring.to_string(),
                "input": g.input,
                "invariant_factors": g.invariant_factors,
                "factors": to_value(&g.factors()),
                "max_degree": d,
                "degrees": to_value(&hhg.degrees),
                "group_cohomology": to_value(&hg.degrees),
                "assumptions": hhg.assumptions,
            }))
        }
        Command::Square { file, derivation } => square(&load(file)?, derivation),
        Command::Oracle { file, max_degree: d, derivation } => {
            let pres = load(file)?;
            let d = max_degree(*d, env)?.min(MAX_BAR_DEGREE);
            let alg = FiniteAlgebra::from_presentation(&pres)?;
            let bar = bar_cohomology(&alg, d)?;
            let model = hh(&pres, d)?;
            let mut v = json!({
                "command": "oracle",
                "presentation": describe(&pres),
                "dimension": alg.dim(),
                "max_degree": d,
                "bar": to_value(&bar.degrees),
                "clifford": to_value(&model.degrees),
                "agree": bar.degrees == model.degrees,
            });
            if let Some(text) = derivation {
                let dv = parse_derivation(text, &pres)?;
                v["square"] = to_value(&compare_square(&dv, &pres)?);
            }
            Ok(v)
        }
        Command::Check { file } => check(&load(file)?),
    }
}

fn square(pres: &Presentation, text: &str) -> Result<Value> {
    let d = parse_derivation(text, pres)?;
    let values: Vec<String> = apply_jacobian(&d, pres)?.iter().map(|v| pres.display(v)).collect();
    let q = hessian_q(&d, pres)?;
    let class = cup_square_class(&d, pres)?;
    let model = CliffordModel::from_presentation(pres)?;
    let show = |v: &[hhci_core::poly::Poly], p: &Presentation| -> Vec<String> { v.iter().map(|a| p.display(a)).collect() };
    let mut out = json!({
        "command": "square",
        "presentation": describe(pres),
        "derivation": show(&d, pres),
        "d_of_relations": values,
        "q": show(&q, pres),
        "q_is_zero": q.iter().all(|a| a.is_zero()),
        "class": model.display(&class),
    });
    if pres.ring().is_field() {
        let nonzero = !in_column_span(&model.differential_matrix(1)?, &model.coordinates(&class, 2)?)?;
        out["class_nonzero"] = json!(nonzero);
    }
    // the reduction of q modulo 2 detects classes that are not 2-torsion
    let even = match pres.ring() {
        CoeffRing::Integers => true,
        CoeffRing::IntegersModN(n) => n % 2 == 0,
        _ => false,
    };
    if even {
        let two = pres.change_ring(CoeffRing::PrimeField(2))?;
        let reduced = q
            .iter()
            .map(|a| two.normal_form(&a.change_ring(two.ring())))
            .collect::<Result<Vec<_>>>()?;
        out["q_mod_2"] = json!(show(&reduced, &two));
        out["q_nonzero_mod_2"] = json!(reduced.iter().any(|a| !a.is_zero()));
    }
    Ok(out)
}

fn check(pres: &Presentation) -> Result<Value> {
    let hci = if pres.nvars() == 1 && pres.ncodim() == 1 {
        let s = pres.hci_check_univariate()?;
        json!({ "status": s.label(), "reason": s.reason() })
    } else {
        Value::Null
    };
    let regular = match pres.is_regular_sequence() {
        Ok(true) => json!("verified"),
        Ok(false) => json!("not regular"),
        Err(e) if pres.assume_regular() => json!(format!("assumed ({})", e.kind())),
        Err(e) => json!(format!("unknown ({})", e.kind())),
    };
    let basis = match pres.k_basis() {
        Ok(kb) => json!(kb.len()),
        Err(_) => Value::Null,
    };
    Ok(json!({
        "command": "check",
        "presentation": describe(pres),
        "hci": hci,
        "regular_sequence": regular,
        "k_basis_size": basis,
    }))
}
