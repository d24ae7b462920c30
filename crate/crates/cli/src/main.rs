use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use motivic_core::json::{
    a1_from_json, a1_to_json, class_from_json, class_to_json, datum_from_json, epoly_to_json,
    generator_from_json, int_to_json, point_to_json, presentation_from_json, vanishing_to_json,
};
use motivic_core::{
    assoc_check, chi_c, e_polynomial, phi_measure, point_count_oracle, star, ts_check,
    vanishing_cycles, AtomFactor, Error, MuClass, SymbolicVerdict, DEFAULT_ORACLE_BUDGET,
};
use serde_json::{json, Value};

const BUDGET_VAR: &str = "MOTIVIC_ORACLE_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "motivic", version, about = "Equivariant motivic class calculator")]
struct Cli {
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Print human-readable normal forms instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalize a class.
    Normalize { class: PathBuf },
    /// Convolution product a * b of two classes.
    Convolve { a: PathBuf, b: PathBuf },
    /// Convolution of two classes over the affine line.
    StarA1 { f: PathBuf, g: PathBuf },
    /// Compare (a * b) * c with a * (b * c).
    AssocCheck { a: PathBuf, b: PathBuf, c: PathBuf },
    /// Vanishing cycles of one resolution datum.
    Vanishing { datum: PathBuf },
    /// The vanishing cycles measure of a presentation.
    Measure { presentation: PathBuf },
    /// Compare Phi(V) ⋆ Phi(W) with Phi of the direct sum generator.
    TsCheck { v: PathBuf, w: PathBuf, direct: PathBuf },
    /// Euler characteristic or E-polynomial of a class.
    #[command(group(ArgGroup::new("realization").required(true).args(["chi_c", "e_poly"])))]
    Realize {
        #[arg(long)]
        chi_c: bool,
        #[arg(long)]
        e_poly: bool,
        input: PathBuf,
    },
    /// Count points of a Fermat locus over a finite field by enumeration.
    Oracle {
        #[arg(long, num_args = 2, value_names = ["N", "R"], required = true)]
        fer: Vec<u64>,
        #[arg(long, value_name = "Q")]
        q: u64,
    },
}

enum Output {
    Json(Value),
    Text(String),
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{} is not valid JSON: {e}", path.display())))
}

fn read_class(path: &Path) -> Result<MuClass, Error> {
    class_from_json(&read_json(path)?)
}

/// A class, an `A^1`-class (pushed forward to the point) or `vanishing`
/// output (its `phi` field).
fn read_realizable(path: &Path) -> Result<MuClass, Error> {
    let v = read_json(path)?;
    if let Some(phi) = v.get("phi") {
        class_from_json(phi)
    } else if v.get("support").is_some() {
        Ok(a1_from_json(&v)?.epsilon_push())
    } else {
        class_from_json(&v)
    }
}

fn oracle_budget() -> Result<u64, Error> {
    match std::env::var(BUDGET_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{BUDGET_VAR}='{s}' is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_ORACLE_BUDGET),
    }
}

fn verdict_json(v: &SymbolicVerdict) -> Value {
    match v {
        SymbolicVerdict::Equal => json!(true),
        SymbolicVerdict::NotEqual => json!(false),
        SymbolicVerdict::SkippedOpaque => json!("skipped-opaque"),
    }
}

fn execute(cmd: &Command, pretty: bool) -> Result<Output, Error> {
    let class_out = |c: MuClass| {
        if pretty {
            Output::Text(c.to_string())
        } else {
            Output::Json(class_to_json(&c))
        }
    };
    Ok(match cmd {
        Command::Normalize { class } => class_out(read_class(class)?),
        Command::Convolve { a, b } => class_out(star(&read_class(a)?, &read_class(b)?)),
        Command::StarA1 { f, g } => {
            let h = a1_from_json(&read_json(f)?)?.star(&a1_from_json(&read_json(g)?)?);
            if pretty {
                Output::Text(h.to_string())
            } else {
                Output::Json(a1_to_json(&h))
            }
        }
        Command::AssocCheck { a, b, c } => {
            let r = assoc_check(&read_class(a)?, &read_class(b)?, &read_class(c)?);
            if pretty {
                Output::Text(format!(
                    "(a*b)*c = {}\na*(b*c) = {}\nsymbolic: {}\nchi_consistent: {}",
                    r.left,
                    r.right,
                    verdict_json(&r.symbolic),
                    r.chi_consistent
                ))
            } else {
                Output::Json(json!({
                    "symbolic": verdict_json(&r.symbolic),
                    "chi_consistent": r.chi_consistent,
                }))
            }
        }
        Command::Vanishing { datum } => {
            let v = vanishing_cycles(&datum_from_json(&read_json(datum)?)?)?;
            if pretty {
                Output::Text(format!("phi = {}\nphi_regular = {}", v.phi, v.phi_regular))
            } else {
                Output::Json(vanishing_to_json(&v))
            }
        }
        Command::Measure { presentation } => {
            let m = phi_measure(&presentation_from_json(&read_json(presentation)?)?)?;
            if pretty {
                Output::Text(m.to_string())
            } else {
                Output::Json(a1_to_json(&m))
            }
        }
        Command::TsCheck { v, w, direct } => {
            let load = |p: &PathBuf| read_json(p).and_then(|j| generator_from_json(&j));
            let r = ts_check(&load(v)?, &load(w)?, &load(direct)?)?;
            if pretty {
                Output::Text(format!(
                    "Phi(V) * Phi(W) = {}\nPhi(V (+) W) = {}\nequal: {}",
                    r.lhs, r.rhs, r.equal
                ))
            } else {
                let points: Vec<Value> = r
                    .points
                    .iter()
                    .map(|p| {
                        json!({
                            "point": point_to_json(&p.point),
                            "lhs": class_to_json(&p.lhs),
                            "rhs": class_to_json(&p.rhs),
                            "equal": p.equal,
                        })
                    })
                    .collect();
                Output::Json(json!({
                    "equal": r.equal,
                    "lhs": a1_to_json(&r.lhs),
                    "rhs": a1_to_json(&r.rhs),
                    "points": points,
                }))
            }
        }
        Command::Realize { chi_c: true, input, .. } => {
            let chi = chi_c(&read_realizable(input)?);
            if pretty {
                Output::Text(chi.to_string())
            } else {
                Output::Json(int_to_json(&chi))
            }
        }
        Command::Realize { input, .. } => {
            let e = e_polynomial(&read_realizable(input)?)?;
            if pretty {
                Output::Text(e.to_string())
            } else {
                Output::Json(json!({ "epoly": epoly_to_json(&e) }))
            }
        }
        Command::Oracle { fer, q } => {
            let (n, r) = (fer[0], fer[1]);
            if n < 2 || r < 1 {
                return Err(Error::Validation(format!("fer({n},{r}) needs n >= 2 and r >= 1")));
            }
            let count = point_count_oracle(&AtomFactor::FermatTrivial { n, r }, *q, oracle_budget()?)?;
            if pretty {
                Output::Text(count.to_string())
            } else {
                Output::Json(json!(count))
            }
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        _ => 1,
    }
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (text, code) = match execute(&cli.command, cli.pretty) {
        Ok(Output::Json(v)) => {
            (serde_json::to_string_pretty(&v).expect("values serialize") + "\n", 0)
        }
        Ok(Output::Text(t)) => (t + "\n", 0),
        Err(e) => {
            let v = json!({ "error": e.kind(), "detail": e.detail() });
            // structured errors go to stdout
            let text = serde_json::to_string_pretty(&v).expect("values serialize") + "\n";
            let _ = std::io::stdout().write_all(text.as_bytes());
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Err(e) = emit(cli.out.as_deref(), &text) {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
