//! Command-line front end. `run` turns argv into a JSON report and an exit code;
//! `main.rs` only prints.

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::carlitz::{cyclotomic_poly, CarlitzOp};
use crate::cogalois::{self, SubextSpec};
use crate::cycfield::{subext_degree, Subgroup, UnitGroup};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::kummer;
use crate::poly::{self, Poly};
use crate::suite;

#[derive(Parser, Debug)]
#[command(name = "carlitzlab", version, about = "Carlitz modules, cyclotomic function fields and cogalois orders over F_q(T)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArg {
    /// Size of the constant field
    #[arg(long, default_value_t = 3)]
    pub q: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Φ(M) = |(F_q[T]/M)^*|
    Phi {
        #[command(flatten)]
        field: FieldArg,
        m: String,
    },
    /// Coefficients of the Carlitz polynomial C_M(X)
    Carlitz {
        #[command(flatten)]
        field: FieldArg,
        m: String,
    },
    /// The Carlitz cyclotomic polynomial Ψ_M
    Cycpoly {
        #[command(flatten)]
        field: FieldArg,
        m: String,
    },
    /// Gal(k(Λ_M)/k) ≅ (F_q[T]/M)^*, optionally with its subgroup lattice
    Galois {
        #[command(flatten)]
        field: FieldArg,
        m: String,
        #[arg(long)]
        lattice: bool,
    },
    /// μ of the field fixed by a subgroup
    Mu {
        #[command(flatten)]
        field: FieldArg,
        m: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Is L/K pure? K is fixed by --upper, L by --lower
    Purity(SubextArgs),
    /// |cog(L/K)| with the full subextension report
    CogOrder(SubextArgs),
    /// Is L'/L radical? L is fixed by --lower, L' by --target
    Radical {
        #[command(flatten)]
        field: FieldArg,
        m: String,
        #[arg(long)]
        lower: String,
        #[arg(long)]
        target: String,
    },
    /// [splitting field of X^P - z : k(λ_P)]
    KummerDegree {
        #[command(flatten)]
        field: FieldArg,
        p: String,
        z: String,
    },
    /// Recompute the named worked examples
    VerifyPaper {
        #[arg(long)]
        example: Option<String>,
        #[arg(long)]
        q: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct SubextArgs {
    #[command(flatten)]
    pub field: FieldArg,
    pub m: String,
    #[arg(long)]
    pub upper: String,
    #[arg(long)]
    pub lower: String,
}

/// What the binary prints, and how it exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::ZeroInput | Error::InvalidField(_) => 2,
        Error::TooLarge { .. } => 3,
        _ => 1,
    }
}

/// An order printed exactly, plus (q, exponent) when it is a power of q.
pub fn order_json(n: &BigUint, q: u32) -> Value {
    match cogalois::as_q_power(n, q) {
        Some(e) => json!({ "exact": n.to_string(), "q": q, "exponent": e }),
        None => json!({ "exact": n.to_string() }),
    }
}

fn field(arg: &FieldArg, caps: &Caps) -> Result<Field> {
    Field::with_caps(arg.q, *caps)
}

fn nonzero(f: &Field, text: &str) -> Result<Poly> {
    let m = Poly::parse(f, text)?;
    if m.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(m)
}

fn modulus(f: &Field, text: &str) -> Result<Poly> {
    let m = nonzero(f, text)?.monic();
    if m.is_constant() {
        return Err(Error::HypothesisNotMet(format!("modulus {text} must be nonconstant")));
    }
    Ok(m)
}

/// Comma-separated generators; an empty list means the trivial subgroup.
fn subgroup(g: &UnitGroup, text: &str) -> Result<Subgroup> {
    let gens = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Poly::parse(g.field(), s).and_then(|a| a.rem(g.modulus())))
        .collect::<Result<Vec<_>>>()?;
    g.generated(&gens)
}

fn subgroup_json(h: &Subgroup) -> Value {
    let gens: Vec<String> = h.generators().iter().map(|&i| h.group().elem(i).to_string()).collect();
    json!({ "order": h.order(), "generators": gens, "closure": h.lift_strings() })
}

fn purity_warning(f: &Field) -> Option<String> {
    (f.p() == 2).then(|| "warning: the purity theorems assume odd characteristic; q = 2 results are computed but not covered".into())
}

struct Ran {
    value: Value,
    warning: Option<String>,
    pass: bool,
}

fn ok(value: Value) -> Result<Ran> {
    Ok(Ran { value, warning: None, pass: true })
}

fn dispatch(cmd: &Command, caps: &Caps) -> Result<Ran> {
    match cmd {
        Command::Phi { field: fa, m } => {
            let f = field(fa, caps)?;
            let m = nonzero(&f, m)?;
            let phi = poly::phi(&m)?;
            ok(json!({ "m": m.to_string(), "phi": phi.to_string() }))
        }
        Command::Carlitz { field: fa, m } => {
            let f = field(fa, caps)?;
            let m = nonzero(&f, m)?;
            let op = CarlitzOp::new(&m);
            let coeffs: Vec<String> = op.coeffs().iter().map(Poly::to_string).collect();
            ok(json!({ "m": m.to_string(), "coefficients": coeffs, "polynomial": op.to_string() }))
        }
        Command::Cycpoly { field: fa, m } => {
            let f = field(fa, caps)?;
            let m = modulus(&f, m)?;
            let psi = cyclotomic_poly(&m)?;
            ok(json!({
                "m": m.to_string(),
                "psi": psi.poly.to_string(),
                "degree": psi.poly.deg().unwrap_or(0),
                "phi": poly::phi(&m)?.to_string(),
            }))
        }
        Command::Galois { field: fa, m, lattice } => {
            let f = field(fa, caps)?;
            let m = modulus(&f, m)?;
            let g = UnitGroup::new(&m)?;
            let whole = g.whole();
            let mut out = json!({
                "m": m.to_string(),
                "order": g.order(),
                "cyclic": whole.is_cyclic(),
                "generators": subgroup_json(&whole)["generators"].clone(),
            });
            if *lattice {
                let subs = g.subgroup_lattice()?;
                let rows: Vec<Value> = subs
                    .iter()
                    .map(|h| {
                        let mut v = subgroup_json(h);
                        v["fixed_field_degree"] = json!(subext_degree(&whole, h).expect("every subgroup lies in the whole group"));
                        v["mu"] = json!(cogalois::mu_of_fixed_field(h).to_string());
                        v
                    })
                    .collect();
                out["lattice"] = json!(rows);
            }
            ok(out)
        }
        Command::Mu { field: fa, m, subgroup: gens } => {
            let f = field(fa, caps)?;
            let g = UnitGroup::new(&modulus(&f, m)?)?;
            let h = subgroup(&g, gens)?;
            ok(json!({ "subgroup": subgroup_json(&h), "mu": cogalois::mu_of_fixed_field(&h).to_string() }))
        }
        Command::Purity(a) => {
            let (f, s) = subext(a, caps)?;
            let pure = cogalois::purity_check(&s)?;
            Ok(Ran {
                value: json!({
                    "upper": subgroup_json(&s.upper),
                    "lower": subgroup_json(&s.lower),
                    "degree": s.degree(),
                    "pure": pure,
                }),
                warning: purity_warning(&f),
                pass: true,
            })
        }
        Command::CogOrder(a) => {
            let (f, s) = subext(a, caps)?;
            let order = cogalois::cog_order(&s)?;
            let report = cogalois::subext_report(&s)?;
            Ok(Ran {
                value: json!({ "cog_order": order_json(&order, f.q()), "report": report }),
                warning: purity_warning(&f),
                pass: true,
            })
        }
        Command::Radical { field: fa, m, lower, target } => {
            let f = field(fa, caps)?;
            let g = UnitGroup::new(&modulus(&f, m)?)?;
            let s = SubextSpec::new(&subgroup(&g, lower)?, &subgroup(&g, target)?)?;
            Ok(Ran {
                value: json!({
                    "base": subgroup_json(&s.upper),
                    "target": subgroup_json(&s.lower),
                    "degree": s.degree(),
                    "radical": cogalois::is_radical(&s)?,
                    "radical_cyclotomic": cogalois::is_radical_cyclotomic(&s)?,
                }),
                warning: purity_warning(&f),
                pass: true,
            })
        }
        Command::KummerDegree { field: fa, p, z } => {
            let f = field(fa, caps)?;
            let p = nonzero(&f, p)?;
            let z = Poly::parse(&f, z)?;
            let d = kummer::kummer_splitting_degree(&p, &z)?;
            ok(json!({ "p": p.to_string(), "z": z.to_string(), "degree": order_json(&d, f.q()) }))
        }
        Command::VerifyPaper { example, q } => {
            let reports = match example {
                Some(name) => vec![(name.clone(), suite::run_example(name, *q, caps))],
                None => suite::run_all(*q, caps),
            };
            let mut rows = Vec::new();
            let mut pass = true;
            for (name, r) in reports {
                match r {
                    Ok(r) => {
                        pass &= r.pass;
                        rows.push(serde_json::to_value(&r).expect("serializable"));
                    }
                    // a single named example propagates its error and exit code
                    Err(e) if example.is_some() => return Err(e),
                    Err(e) => {
                        pass = false;
                        rows.push(json!({ "example": name, "error": e.to_string(), "pass": false }));
                    }
                }
            }
            Ok(Ran { value: json!({ "examples": rows, "pass": pass }), warning: None, pass })
        }
    }
}

fn subext(a: &SubextArgs, caps: &Caps) -> Result<(Field, SubextSpec)> {
    let f = field(&a.field, caps)?;
    let g = UnitGroup::new(&modulus(&f, &a.m)?)?;
    let s = SubextSpec::new(&subgroup(&g, &a.upper)?, &subgroup(&g, &a.lower)?)?;
    Ok((f, s))
}

#[derive(Serialize)]
struct Report<'a> {
    command: &'a [String],
    result: &'a Value,
    pass: bool,
}

/// Runs the CLI on `argv` (including the program name) with the given caps.
pub fn run_with_caps(argv: &[String], caps: &Caps) -> Outcome {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match dispatch(&cli.command, caps) {
        Ok(ran) => {
            let report = Report { command: &argv[1..], result: &ran.value, pass: ran.pass };
            let stdout = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            Outcome { stdout, stderr: ran.warning.map(|w| w + "\n").unwrap_or_default(), code: if ran.pass { 0 } else { 1 } }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(&e) },
    }
}

/// Runs the CLI with caps from CARLITZLAB_CAPS.
pub fn run(argv: &[String]) -> Outcome {
    match Caps::from_env() {
        Ok(caps) => run_with_caps(argv, &caps),
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: CARLITZLAB_CAPS: {e}\n"), code: 2 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        let argv: Vec<String> = std::iter::once("carlitzlab").chain(args.iter().copied()).map(String::from).collect();
        run_with_caps(&argv, &Caps::default())
    }

    fn result(out: &Outcome) -> Value {
        assert_eq!(out.code, 0, "{out:?}");
        serde_json::from_str::<Value>(&out.stdout).unwrap()["result"].clone()
    }

    #[test]
    fn phi_and_errors() {
        assert_eq!(result(&call(&["phi", "--q", "3", "T^2"]))["phi"], "6");
        assert_eq!(call(&["phi", "--q", "3", "0"]).code, 2);
        assert_eq!(call(&["phi", "--q", "3", "T^"]).code, 2);
        assert_eq!(call(&["phi", "--q", "6", "T"]).code, 2);
        assert_eq!(call(&["bogus"]).code, 2);
        assert_eq!(call(&["galois", "--q", "3", "T^5", "--lattice"]).code, 3);
    }

    #[test]
    fn carlitz_and_cycpoly() {
        let r = result(&call(&["carlitz", "--q", "3", "T"]));
        assert_eq!(r["polynomial"], "X^3+T*X");
        let r = result(&call(&["cycpoly", "--q", "3", "T^2"]));
        assert_eq!(r["degree"], 6);
    }

    #[test]
    fn subgroup_commands() {
        let r = result(&call(&["mu", "--q", "3", "T^2", "--subgroup", "1+T"]));
        assert_eq!(r["mu"], "T");
        let r = result(&call(&["purity", "--q", "3", "T^2", "--upper", "1+T", "--lower", ""]));
        assert_eq!(r["pure"], true);
        let r = result(&call(&["cog-order", "--q", "3", "T^2", "--upper", "1+T", "--lower", ""]));
        assert_eq!(r["cog_order"]["exact"], "9");
        assert_eq!(r["cog_order"]["exponent"], 2);
        let r = result(&call(&["radical", "--q", "3", "T", "--lower", "2", "--target", ""]));
        assert_eq!(r["radical"], true);
        assert_eq!(r["radical_cyclotomic"], false);
        let out = call(&["purity", "--q", "2", "T^2", "--upper", "1+T", "--lower", ""]);
        assert!(out.stderr.contains("warning"));
        let r = result(&call(&["galois", "--q", "3", "T^2", "--lattice"]));
        assert_eq!(r["lattice"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn kummer_and_examples() {
        let r = result(&call(&["kummer-degree", "--q", "3", "T", "1"]));
        assert_eq!(r["degree"]["exact"], "3");
        assert_eq!(call(&["kummer-degree", "--q", "3", "T", "T^3+T^2"]).code, 1);
        let out = call(&["verify-paper", "--example", "ejemplo_entre_ciclotomicos", "--q", "3"]);
        assert_eq!(result(&out)["pass"], true);
        assert_eq!(call(&["verify-paper", "--example", "nope"]).code, 2);
    }
}
