//! Command dispatch shared by `hahnfield run`, the REPL and script mode.
//!
//! Every verb maps to one library operation. Output is the canonical text
//! form plus an exit code: 0 on success, 1 on a domain error, 2 on a syntax
//! error (malformed expression, unknown verb or flag).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::exp_analysis::{
    additive_class, catalog_examples, check_exponential_group, exp_axioms_check, ipa_verdict,
    FieldSpec,
};
use crate::group::GroupElement;
use crate::integer_part::{floor, ip_closure_check};
use crate::series::{Series, Valuation};
use crate::syntax::{
    format_exponent, parse_arch_class, parse_field, parse_group_element, parse_group_spec,
    parse_presentation, parse_series, ParseError, SessionContext,
};
use crate::valuation::{classify, decompose_additive, decompose_multiplicative, residue};
use crate::{FieldClass, GroupPresentation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_SYNTAX: i32 = 2;

/// The carriers a fresh session starts with.
pub const DEFAULT_CARRIERS: &str = "field Rat; group HahnSum(Rationals; Rat)";

#[derive(Debug, Parser)]
#[command(name = "hahnfield", no_binary_name = true, disable_version_flag = true)]
pub struct Invocation {
    #[command(subcommand)]
    pub verb: Verb,
}

/// Optional per-command carriers; unset flags fall back to the session.
#[derive(Debug, Clone, Default, Args)]
pub struct CarrierFlags {
    /// Group presentation, e.g. "HahnSum(Finite(2); Rat, 1:Int)".
    #[arg(long)]
    pub group: Option<String>,
    /// Coefficient field: Rat or Root2.
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
    #[command(flatten)]
    pub carriers: CarrierFlags,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Verb {
    /// Print the canonical form of an expression.
    Eval(SeriesArgs),
    /// Valuation: the least exponent of the support.
    Val(SeriesArgs),
    /// Compare two series: LT, EQ or GT.
    Cmp {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[command(flatten)]
        carriers: CarrierFlags,
    },
    /// Floor in the canonical integer part.
    Floor(SeriesArgs),
    /// Residue of a finite series.
    Residue(SeriesArgs),
    /// Zero, Infinitesimal, FiniteUnit or Infinite.
    Classify(SeriesArgs),
    /// Split into infinite, constant and infinitesimal parts.
    DecompAdd(SeriesArgs),
    /// Split a positive series into monomial, constant and 1-unit.
    DecompMul(SeriesArgs),
    /// Truncated inverse, accurate beyond the exponent `--bound`.
    Inv {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Group element, e.g. "3" or "{(0, 1), (1, -2)}".
        #[arg(long, allow_hyphen_values = true)]
        bound: String,
        #[command(flatten)]
        carriers: CarrierFlags,
    },
    /// Truncated positive n-th root, accurate beyond the exponent `--bound`.
    Root {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        bound: String,
        #[command(flatten)]
        carriers: CarrierFlags,
    },
    /// Randomized integer-part property suite.
    IpCheck {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exponential-group necessary conditions.
    Expgroup {
        #[arg(long)]
        group: Option<String>,
        /// Target component class; defaults to the additive group of the field.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        field: Option<String>,
        /// Also write the record to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certificate on whether the field can carry an integer part modelling PA.
    Ipa {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        target: Option<String>,
        /// The field is all of k((G)) rather than a subfield.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the basic facts about 2^x on the integers up to `--bound`.
    Axioms {
        #[arg(long)]
        bound: u64,
    },
    /// Re-check the built-in corpus of value groups.
    Catalog,
}

/// Rendered output and exit code of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: impl Into<String>) -> Self {
        Outcome {
            text: text.into(),
            code: EXIT_OK,
        }
    }

    fn domain(text: impl Into<String>) -> Self {
        Outcome {
            text: text.into(),
            code: EXIT_DOMAIN,
        }
    }
}

enum Failure {
    Syntax(String),
    Domain(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        if e.is_syntax() {
            Failure::Syntax(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<Failure> for Outcome {
    fn from(f: Failure) -> Self {
        match f {
            Failure::Syntax(m) => Outcome {
                text: format!("error: {m}"),
                code: EXIT_SYNTAX,
            },
            Failure::Domain(m) => Outcome {
                text: format!("error: {m}"),
                code: EXIT_DOMAIN,
            },
        }
    }
}

/// Applies `--field`/`--group` on top of the session carriers. Bindings
/// survive only when the carriers are unchanged.
fn with_carriers(ctx: &SessionContext, flags: &CarrierFlags) -> Result<SessionContext, Failure> {
    if flags.field.is_none() && flags.group.is_none() {
        return Ok(ctx.clone());
    }
    let field = flags.field.as_deref().map(parse_field).transpose()?;
    let group = flags.group.as_deref().map(parse_presentation).transpose()?;
    let field = field.unwrap_or(ctx.field());
    let group = group.unwrap_or_else(|| (**ctx.group()).clone());
    let mut out = ctx.clone();
    if field != ctx.field() || group != **ctx.group() {
        out.set_carriers(field, group);
    }
    Ok(out)
}

fn series_of(args: &SeriesArgs, ctx: &SessionContext) -> Result<Series, Failure> {
    let ctx = with_carriers(ctx, &args.carriers)?;
    Ok(parse_series(&args.expr, &ctx)?)
}

/// `v (at chain point p)` for a single-point valuation, the element
/// otherwise.
pub fn format_valuation(v: &Valuation) -> String {
    match v {
        Valuation::Infinity => "infinity".to_string(),
        Valuation::Finite(g) => format_group_element(g),
    }
}

fn format_group_element(g: &GroupElement) -> String {
    match g.terms() {
        [] => "0".to_string(),
        [(p, v)] => format!("{v} (at chain point {p})"),
        _ => g.to_string(),
    }
}

fn write_out(path: &Option<PathBuf>, record: &str) -> Result<(), Failure> {
    if let Some(path) = path {
        std::fs::write(path, record)
            .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn analysis_carriers(
    ctx: &SessionContext,
    group: &Option<String>,
    field: &Option<String>,
) -> Result<(FieldClass, GroupPresentation), Failure> {
    let field = match field {
        Some(f) => parse_field(f)?,
        None => ctx.field(),
    };
    let group = match group {
        Some(g) => parse_presentation(g)?,
        None => (**ctx.group()).clone(),
    };
    Ok((field, group))
}

fn dispatch(verb: &Verb, ctx: &SessionContext) -> Result<Outcome, Failure> {
    let out = match verb {
        Verb::Eval(a) => Outcome::ok(series_of(a, ctx)?.to_string()),
        Verb::Val(a) => Outcome::ok(format_valuation(&series_of(a, ctx)?.valuation())),
        Verb::Cmp { x, y, carriers } => {
            let c = with_carriers(ctx, carriers)?;
            let (x, y) = (parse_series(x, &c)?, parse_series(y, &c)?);
            let s = match x.try_cmp(&y)? {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            Outcome::ok(s)
        }
        Verb::Floor(a) => Outcome::ok(floor(&series_of(a, ctx)?).to_string()),
        Verb::Residue(a) => Outcome::ok(residue(&series_of(a, ctx)?)?.to_string()),
        Verb::Classify(a) => Outcome::ok(classify(&series_of(a, ctx)?).to_string()),
        Verb::DecompAdd(a) => {
            let d = decompose_additive(&series_of(a, ctx)?);
            Outcome::ok(format!(
                "infinite: {}\nconstant: {}\ninfinitesimal: {}",
                d.infinite_part, d.constant_part, d.infinitesimal_part
            ))
        }
        Verb::DecompMul(a) => {
            let d = decompose_multiplicative(&series_of(a, ctx)?)?;
            let exponent = if d.exponent.is_zero() {
                "0".to_string()
            } else {
                format!("{{{}}}", format_exponent(&d.exponent))
            };
            Outcome::ok(format!(
                "monomial: t^{exponent}\nunit: {}\none-unit: {}",
                d.unit_coeff, d.one_unit
            ))
        }
        Verb::Inv {
            expr,
            bound,
            carriers,
        } => {
            let c = with_carriers(ctx, carriers)?;
            let x = parse_series(expr, &c)?;
            let b = parse_group_element(bound, c.group())?;
            Outcome::ok(x.inv_trunc(&b)?.to_string())
        }
        Verb::Root {
            expr,
            n,
            bound,
            carriers,
        } => {
            let c = with_carriers(ctx, carriers)?;
            let x = parse_series(expr, &c)?;
            let b = parse_group_element(bound, c.group())?;
            Outcome::ok(x.root_trunc(*n, &b)?.to_string())
        }
        Verb::IpCheck { samples, seed } => {
            let report = ip_closure_check(*samples, *seed)?;
            let text = report.to_string().trim_end().to_string();
            if report.passed() {
                Outcome::ok(text)
            } else {
                Outcome::domain(text)
            }
        }
        Verb::Expgroup {
            group,
            target,
            field,
            out,
        } => {
            let (field, group) = analysis_carriers(ctx, group, field)?;
            let target = match target {
                Some(t) => parse_arch_class(t)?,
                None => additive_class(field),
            };
            let record = check_exponential_group(&group, target).to_record(&group, target);
            write_out(out, &record)?;
            Outcome::ok(record.trim_end())
        }
        Verb::Ipa {
            group,
            field,
            target,
            full,
            out,
        } => {
            let (field, group) = analysis_carriers(ctx, group, field)?;
            let target = match target {
                Some(t) => parse_arch_class(t)?,
                None => additive_class(field),
            };
            let spec = FieldSpec {
                field,
                group,
                full_power_series: *full,
            };
            let record = ipa_verdict(&spec, target)?.to_record();
            write_out(out, &record)?;
            Outcome::ok(record.trim_end())
        }
        Verb::Axioms { bound } => {
            let report = exp_axioms_check(*bound)?;
            let text = report.to_string().trim_end().to_string();
            if report.passed() {
                Outcome::ok(text)
            } else {
                Outcome::domain(text)
            }
        }
        Verb::Catalog => {
            let mut text = String::new();
            let mut all = true;
            for e in catalog_examples() {
                all &= e.matches();
                let status = if e.matches() { "OK" } else { "MISMATCH" };
                let verdict = match e.observed.failure() {
                    Some(r) => format!("NotExponential: {r}"),
                    None => "PassesNecessaryConditions".to_string(),
                };
                let _ = writeln!(text, "{status} {} vs {}: {verdict} ({})", e.group, e.target, e.note);
            }
            let text = text.trim_end().to_string();
            if all {
                Outcome::ok(text)
            } else {
                Outcome::domain(text)
            }
        }
    };
    Ok(out)
}

/// Runs one parsed command against the session carriers.
pub fn run_command(verb: &Verb, ctx: &SessionContext) -> Outcome {
    dispatch(verb, ctx).unwrap_or_else(Outcome::from)
}

/// Parses `args` (verb first) and runs the command.
pub fn run_args<I, S>(args: I, ctx: &SessionContext) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Invocation::try_parse_from(args) {
        Ok(inv) => run_command(&inv.verb, ctx),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_OK,
                _ => EXIT_SYNTAX,
            };
            Outcome {
                text: e.render().to_string().trim_end().to_string(),
                code,
            }
        }
    }
}

/// A REPL or script session: carriers, bindings and line handling.
#[derive(Debug, Clone)]
pub struct Session {
    pub ctx: SessionContext,
}

impl Default for Session {
    fn default() -> Self {
        Session {
            ctx: SessionContext::parse_carriers(DEFAULT_CARRIERS).expect("valid default carriers"),
        }
    }
}

impl Session {
    /// Handles one line. Blank lines and `#` comments yield `None`.
    ///
    /// Besides verbs, a line may be a carrier statement
    /// `field Rat; group HahnSum(...)` or a binding `let x = <expr>`.
    pub fn execute_line(&mut self, line: &str) -> Option<Outcome> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        if line.starts_with("field ") {
            return Some(match parse_group_spec(line) {
                Ok((field, group)) => {
                    self.ctx.set_carriers(field, group);
                    Outcome::ok(format!(
                        "carriers: field {}; group {}",
                        self.ctx.field(),
                        self.ctx.group()
                    ))
                }
                Err(e) => Failure::from(e).into(),
            });
        }
        if let Some(rest) = line.strip_prefix("let ") {
            return Some(self.bind(rest));
        }
        let words = match shell_words::split(line) {
            Ok(w) => w,
            Err(e) => return Some(Failure::Syntax(format!("cannot split line: {e}")).into()),
        };
        Some(run_args(words, &self.ctx))
    }

    fn bind(&mut self, rest: &str) -> Outcome {
        let Some((name, expr)) = rest.split_once('=') else {
            return Failure::Syntax("expected `let name = expression`".into()).into();
        };
        let name = name.trim();
        let value = match parse_series(expr.trim(), &self.ctx) {
            Ok(v) => v,
            Err(e) => return Failure::from(e).into(),
        };
        let text = format!("{name} = {value}");
        match self.ctx.bind(name, value) {
            Ok(()) => Outcome::ok(text),
            Err(e) => Failure::Syntax(e.to_string()).into(),
        }
    }

    /// Runs every line; the exit code is the largest one seen.
    pub fn run_script(&mut self, src: &str) -> Outcome {
        let mut text = String::new();
        let mut code = EXIT_OK;
        for line in src.lines() {
            if let Some(out) = self.execute_line(line) {
                text.push_str(&out.text);
                text.push('\n');
                code = code.max(out.code);
            }
        }
        Outcome { text, code }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(line: &str) -> Outcome {
        Session::default().execute_line(line).unwrap()
    }

    #[test]
    fn valuation_output() {
        assert_eq!(run(r#"val "3*t^{-1/2}+2""#), Outcome::ok("-1/2 (at chain point 0)"));
        assert_eq!(run("val 0"), Outcome::ok("infinity"));
        assert_eq!(run("val 7"), Outcome::ok("0"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run("eval '1 +'").code, EXIT_SYNTAX);
        assert_eq!(run("frobnicate").code, EXIT_SYNTAX);
        assert_eq!(run("residue t^{-1}").code, EXIT_DOMAIN);
        assert_eq!(run("axioms --bound 1").code, EXIT_DOMAIN);
        assert_eq!(run("eval '(1+t)*(1-t)'"), Outcome::ok("1 - t^{2}"));
        assert_eq!(run("floor -t"), Outcome::ok("-1"));
        assert_eq!(run("cmp -t -1"), Outcome::ok("GT"));
        assert_eq!(run("inv 1-t --bound -1"), Outcome::ok("0"));
    }

    #[test]
    fn ipa_record() {
        let out = run(r#"ipa --group "HahnSum(Finite(1); Rat)" --field Rat"#);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.text.starts_with("verdict: NoIPA\nrule: value-group-not-exponential\nwitness: RankFinite(points=1)"));
    }

    #[test]
    fn session_statements() {
        let mut s = Session::default();
        assert!(s.execute_line("# comment").is_none());
        let out = s.execute_line("field Rat; group HahnSum(Finite(1); Rat)").unwrap();
        assert_eq!(out.text, "carriers: field Rat; group HahnSum(Finite(1); Rat)");
        assert_eq!(s.execute_line("let x = 1 + t").unwrap().text, "x = 1 + t");
        assert_eq!(s.execute_line("eval x*x").unwrap().text, "1 + 2*t + t^{2}");
        assert_eq!(s.execute_line("let t = 1").unwrap().code, EXIT_SYNTAX);
    }
}
