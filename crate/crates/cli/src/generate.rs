use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_bigint::BigInt;
use quadnewton::closedform;
use quadnewton::newton::{self, NewtonPair, QuadraticCoeffs, DEFAULT_CAP};
use quadnewton::quadfield::{self, QuadExtPoly};
use quadnewton::{MultiPoly, Var, VariableSet};

use crate::{emit, to_json_line, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Recurrence,
    Closed,
    Rootform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = Method::Recurrence)]
    pub method: Method,
    /// Specialize to integer coefficients (required for `rootform`).
    #[arg(long, requires_all = ["b", "c"])]
    pub a: Option<i64>,
    #[arg(long, requires_all = ["a", "c"])]
    pub b: Option<i64>,
    #[arg(long, requires_all = ["a", "b"])]
    pub c: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the (k, j) provenance of every closed-form term as JSON
    /// lines (closed method only).
    #[arg(long)]
    pub audit: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u32,
}

fn to_x_poly(p: &QuadExtPoly) -> Result<MultiPoly, CliError> {
    let vars = VariableSet::single(Var::X);
    let mut terms = Vec::new();
    for (&k, c) in p.coeffs() {
        let r = c.as_rational().filter(|r| r.is_integer()).ok_or_else(|| {
            CliError::Failed(format!(
                "root-form coefficient of x^{k} is not an integer: {c}"
            ))
        })?;
        terms.push((vec![k], r.to_integer()));
    }
    Ok(MultiPoly::from_terms(&vars, terms)?)
}

fn build(args: &GenerateArgs) -> Result<NewtonPair, CliError> {
    let triple = match (args.a, args.b, args.c) {
        (Some(a), Some(b), Some(c)) => Some((a, b, c)),
        _ => None,
    };
    if args.audit.is_some() && args.method != Method::Closed {
        return Err(CliError::Usage("--audit requires --method closed".into()));
    }
    let pair = match args.method {
        Method::Recurrence => newton::iterate_pair_capped(args.n, args.cap)?,
        Method::Closed => closedform::closed_pair_capped(args.n, args.cap)?,
        Method::Rootform => {
            let (a, b, c) = triple.ok_or_else(|| {
                CliError::Usage("--method rootform needs --a, --b and --c".into())
            })?;
            newton::check_cap(args.n, args.cap)?;
            let coeffs = QuadraticCoeffs::from_integers(a, b, c)?;
            let (p, q) = quadfield::root_form_pair(&coeffs, args.n)?;
            return Ok(NewtonPair {
                n: args.n,
                p: to_x_poly(&p)?,
                q: to_x_poly(&q)?,
            });
        }
    };
    match triple {
        Some((a, b, c)) => {
            let (p, q) = pair.specialize(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c))?;
            Ok(NewtonPair { n: args.n, p, q })
        }
        None => Ok(pair),
    }
}

pub fn render(pair: &NewtonPair, format: Format) -> String {
    match format {
        Format::Json => to_json_line(pair),
        Format::Text => format!("P = {}\nQ = {}\n", pair.p, pair.q),
        Format::Latex => format!(
            "P_{{{n}}}(x) = {}\nQ_{{{n}}}(x) = {}\n",
            pair.p.to_latex(),
            pair.q.to_latex(),
            n = pair.n
        ),
    }
}

pub fn run(args: &GenerateArgs) -> Result<(), CliError> {
    let pair = build(args)?;
    if let Some(path) = &args.audit {
        let mut lines = String::new();
        for rec in closedform::audit_capped(args.n, args.cap)? {
            let _ = write!(lines, "{}", to_json_line(&rec));
        }
        std::fs::write(path, lines)?;
    }
    emit(&render(&pair, args.format), args.out.as_ref())
}
