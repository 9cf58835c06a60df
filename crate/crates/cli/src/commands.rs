use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use permpoly::classify::{classify_trinomial, AmbientField, BinomialContext};
use permpoly::harness::{Bounds, Retention};
use permpoly::perm::{is_pp_brute, is_pp_hermite, wan_lidl, WanLidlInstance, BRUTE_MAX_DEGREE};
use permpoly::{
    audit_literal, classify_binomial, enumerate_binomials, make_field, reduce_binomial,
    verify_suite, verify_trith, BinomialParams, FieldElement, FieldSpec, Mode, SparsePoly,
    TrinomialParams,
};
use serde_json::{json, Value};

use crate::output::{write_report, write_value};
use crate::{
    AuditArgs, BinomialCommand, CheckArgs, Cli, Command, FieldCommand, MethodArg, SuiteArg,
    TrinomialCommand, VerifyArgs,
};

/// Whether the run found a property violation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Clean,
    Violation,
}

impl Status {
    fn from_pass(pass: bool) -> Status {
        if pass {
            Status::Clean
        } else {
            Status::Violation
        }
    }
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        match s {
            Status::Clean => ExitCode::SUCCESS,
            Status::Violation => ExitCode::from(1),
        }
    }
}

pub fn run(cli: &Cli) -> Result<Status> {
    let common = &cli.common;
    let retention = Retention::from(common.cases);
    match &cli.command {
        Command::Field {
            command: FieldCommand::Info { n, modulus },
        } => {
            let field = field(*n, modulus.as_deref())?;
            write_value(common, &serde_json::to_value(&field)?)?;
            Ok(Status::Clean)
        }
        Command::Check(args) => check(cli, args),
        Command::Trinomial {
            command:
                TrinomialCommand::Check {
                    s,
                    t,
                    alpha,
                    mode,
                    oracle,
                },
        } => trinomial_check(cli, *s, *t, alpha, (*mode).into(), *oracle),
        Command::Binomial {
            command:
                BinomialCommand::Check {
                    s,
                    t,
                    a,
                    mode,
                    oracle,
                },
        } => binomial_check(cli, *s, *t, a, (*mode).into(), *oracle),
        Command::Binomial {
            command: BinomialCommand::Enumerate { s, t, oracle },
        } => {
            let report = enumerate_binomials(*s, *t, (*oracle).into(), retention)?;
            let status = Status::from_pass(report.passed());
            write_report(common, report)?;
            Ok(status)
        }
        Command::Verify(args) => verify(cli, args, retention),
        Command::Audit(AuditArgs { s_max, t_max }) => {
            let report = audit_literal(*s_max, *t_max)?;
            let status = Status::from_pass(report.passed());
            write_report(common, report)?;
            Ok(status)
        }
    }
}

fn field(n: u32, modulus: Option<&str>) -> Result<FieldSpec> {
    let modulus = modulus
        .map(|m| {
            let digits = m.trim_start_matches("0x");
            u64::from_str_radix(digits, 16).with_context(|| format!("`{m}` is not a hex modulus"))
        })
        .transpose()?;
    Ok(make_field(n, modulus)?)
}

fn element(text: &str, field: &FieldSpec) -> Result<FieldElement> {
    let x = FieldElement::from_hex(text)?;
    if !field.contains(x) {
        bail!("{text} is not an element of F_(2^{})", field.n());
    }
    Ok(x)
}

fn check(cli: &Cli, args: &CheckArgs) -> Result<Status> {
    let field = field(args.n, args.modulus.as_deref())?;
    let poly = args
        .poly
        .as_deref()
        .map(|p| SparsePoly::parse(&field, p))
        .transpose()?;
    let verdict = match args.method {
        MethodArg::Wanlidl => {
            let (Some(d), Some(r), Some(inner)) = (args.d, args.r, args.inner_poly.as_deref())
            else {
                bail!("--method wanlidl needs --d, --r and --inner-poly");
            };
            let inst = WanLidlInstance::new(r, d, SparsePoly::parse(&field, inner)?)?;
            if let Some(p) = &poly {
                if p.canonicalize() != inst.g() {
                    bail!("--poly {p} is not x^r f(x^((q-1)/d)) = {}", inst.g());
                }
            }
            wan_lidl(&inst)?
        }
        method => {
            if args.d.is_some() || args.r.is_some() || args.inner_poly.is_some() {
                bail!("--d, --r and --inner-poly apply only to --method wanlidl");
            }
            let Some(p) = &poly else {
                bail!("--poly is required");
            };
            if method == MethodArg::Brute {
                is_pp_brute(p)?
            } else {
                is_pp_hermite(p)?
            }
        }
    };
    write_value(&cli.common, &serde_json::to_value(&verdict)?)?;
    Ok(Status::Clean)
}

fn trinomial_check(
    cli: &Cli,
    s: u32,
    t: u32,
    alpha: &str,
    mode: Mode,
    oracle: bool,
) -> Result<Status> {
    let field = make_field(t, None)?;
    let p = TrinomialParams {
        s,
        t,
        alpha: element(alpha, &field)?,
    };
    let poly = p.poly(&field)?;
    let decision = classify_trinomial(&p, mode);
    let mut out = json!({ "input": p, "polynomial": poly.to_string(), "decision": decision });
    let mut status = Status::Clean;
    if oracle {
        let truth = is_pp_brute(&poly)?;
        status = Status::from_pass(truth.is_pp == decision.is_pp);
        out["oracle"] = serde_json::to_value(&truth)?;
        out["agree"] = json!(truth.is_pp == decision.is_pp);
    }
    write_value(&cli.common, &out)?;
    Ok(status)
}

fn binomial_check(cli: &Cli, s: u32, t: u32, a: &str, mode: Mode, oracle: bool) -> Result<Status> {
    let ctx = BinomialContext::new(t)?;
    let p = BinomialParams {
        s,
        t,
        a: element(a, ctx.field())?,
    };
    let decision = classify_binomial(&p, mode)?;
    let reduced = if ctx.tower.in_base(p.a) {
        Value::Null
    } else {
        let (tri, c) = reduce_binomial(&p)?;
        json!({ "trinomial": tri, "c": c })
    };
    let mut out = json!({ "input": p, "n": p.n(), "decision": decision, "reduced": reduced });
    let mut status = Status::Clean;
    if oracle {
        match p.n() {
            Some(n) if n <= BRUTE_MAX_DEGREE as u64 => {
                let truth = is_pp_brute(&AmbientField::new(s, &ctx)?.binomial(p.a))?;
                status = Status::from_pass(truth.is_pp == decision.is_pp);
                out["oracle"] = serde_json::to_value(&truth)?;
                out["agree"] = json!(truth.is_pp == decision.is_pp);
            }
            _ => out["oracle"] = Value::Null,
        }
    }
    write_value(&cli.common, &out)?;
    Ok(status)
}

fn verify(cli: &Cli, args: &VerifyArgs, retention: Retention) -> Result<Status> {
    let mut bounds = Bounds::for_profile(cli.common.profile.into());
    if let Some(t) = args.max_t {
        bounds.max_t = t;
    }
    if let Some(n) = args.max_n {
        bounds.max_n = n;
    }
    if let Some(k) = args.max_k {
        bounds.max_k = k;
    }
    let report = match args.suite {
        SuiteArg::Trith => verify_trith(bounds.max_t, bounds.max_t, retention)?,
        suite => verify_suite(suite.try_into()?, &bounds, retention)?,
    };
    let status = Status::from_pass(report.passed());
    write_report(&cli.common, report)?;
    Ok(status)
}
