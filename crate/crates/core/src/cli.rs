//! Command-line front end: argument grammar, dispatch, text and JSON output,
//! and the exit-code contract.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use std::ffi::OsString;
use std::fmt::Write as _;

use crate::error::Error;
use crate::fields::{root_discriminant, FieldSpec, RootDiscriminant};
use crate::hminus::{h_minus, HMinusResult, QPolicy};
use crate::predict::{
    c1_predict, metsankyla_check, p14_predict, schmidt_predict, scholz_predict, verify, Assertion,
    BaseFieldInvariants, MetsankylaReport, PredictionReport, Verdict,
};
use crate::rayclass::{
    lemma3_check, rayclass_report, Lemma3Report, MatchKind, QuadraticBase, RayClassReport,
    DEFAULT_CAP,
};
use crate::report::canonical_json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_NOT_APPLICABLE: i32 = 2;
pub const EXIT_AMBIGUOUS: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_NOT_CM: i32 = 65;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "cftkit",
    version,
    about = "Class field theory predictions and exact minus class numbers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Significant digits for decimal output.
    #[arg(long, global = true, env = "CFTKIT_PRECISION", default_value_t = crate::decimal::DEFAULT_PRECISION, value_parser = parse_precision)]
    pub precision: usize,
    /// Pin the Hasse unit index for fields where it is undecided.
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub q_policy: Option<u8>,
    /// Largest number of group elements enumerated by brute force.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = parse_cap)]
    pub cap: u64,
}

fn parse_precision(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v < 10 {
        return Err(format!("precision must be at least 10, got {v}"));
    }
    Ok(v)
}

fn parse_cap(s: &str) -> Result<u64, String> {
    let v: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if v < 1000 {
        return Err(format!("cap must be at least 1000, got {v}"));
    }
    Ok(v)
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the predicted subgroup for a claim.
    Predict {
        #[command(subcommand)]
        claim: Claim,
    },
    /// Predict, then check against the minus class number oracle.
    Verify {
        #[command(subcommand)]
        claim: Claim,
    },
    /// Exact minus class number of a CM field given as `m:g1,g2,...`.
    Hminus { spec: FieldSpec },
    /// Ray class group and norm kernel over an imaginary quadratic field.
    Rayclass {
        #[arg(long, default_value = "gaussian")]
        base: QuadraticBase,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
    },
    /// Discriminant and root discriminant of an abelian field.
    Rd { spec: FieldSpec },
    /// Exactness of the component-product sequence on `((Z/m)^*)^n`.
    Lemma3 {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum Claim {
    /// Main theorem for given base-field invariants or a named quadratic base.
    Scholz(ScholzArgs),
    /// Decomposition-field corollary for `Q(zeta_n)` and `p^f`.
    C1 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        f: u32,
    },
    /// Corollary for `Q(zeta_m)` and a prime `p | m`.
    Schmidt {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        p: u64,
    },
    /// Cyclic degree-`p` extension of `Q(i)` of conductor `4p^2`.
    P14 {
        #[arg(long)]
        p: u64,
    },
    /// Product decomposition of `h^-(L1 L2)`.
    Metsankyla {
        #[arg(long)]
        l1: FieldSpec,
        #[arg(long)]
        l2: FieldSpec,
        /// Order to test against `T2`.
        #[arg(long)]
        predicted: Option<BigUint>,
    },
}

#[derive(Debug, Args)]
pub struct ScholzArgs {
    /// Imaginary quadratic base with class number one; replaces the invariants.
    #[arg(long, conflicts_with_all = ["n", "w", "h", "unit_index"])]
    pub base: Option<QuadraticBase>,
    #[arg(long, required_unless_present = "base")]
    pub n: Option<u64>,
    #[arg(long, required_unless_present = "base")]
    pub w: Option<u64>,
    #[arg(long)]
    pub h: Option<u64>,
    #[arg(long)]
    pub unit_index: Option<u64>,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub f: u32,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, message: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: message,
        }
    }
}

pub fn exit_code_for_error(e: &Error) -> i32 {
    match e {
        Error::NotCm(_) => EXIT_NOT_CM,
        Error::NotApplicable(_) => EXIT_NOT_APPLICABLE,
        _ => EXIT_USAGE,
    }
}

pub fn exit_code_for_verdict(v: Verdict) -> i32 {
    match v {
        Verdict::Verified => EXIT_OK,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::OracleAmbiguousBy2 => EXIT_AMBIGUOUS,
        Verdict::NotChecked => EXIT_NOT_APPLICABLE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::error(EXIT_USAGE, text)
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::error(exit_code_for_error(&e), format!("error: {e}\n")),
    }
}

fn policy(cli: &Cli) -> crate::Result<QPolicy> {
    match cli.q_policy {
        Some(q) => QPolicy::pinned(q),
        None => Ok(QPolicy::default()),
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match cli.format {
        Format::Json => canonical_json(value) + "\n",
        Format::Text => text(value),
    }
}

fn dispatch(cli: &Cli) -> crate::Result<(i32, String)> {
    let policy = policy(cli)?;
    match &cli.command {
        Command::Predict { claim } => predict_cmd(cli, claim),
        Command::Verify { claim } => verify_cmd(cli, claim, policy),
        Command::Hminus { spec } => {
            let r = h_minus(spec, policy)?;
            Ok((EXIT_OK, emit(cli, &r, text_hminus)))
        }
        Command::Rayclass { base, p, f } => {
            let r = rayclass_report(base, *p, *f)?;
            let code = if r.match_kind == MatchKind::Fail {
                EXIT_REFUTED
            } else {
                EXIT_OK
            };
            Ok((code, emit(cli, &r, text_rayclass)))
        }
        Command::Rd { spec } => {
            let r = RdOutput::new(root_discriminant(spec)?, cli.precision);
            Ok((EXIT_OK, emit(cli, &r, text_rd)))
        }
        Command::Lemma3 { m, n } => {
            let r = lemma3_check(*m, *n, cli.cap)?;
            let code = if r.pass { EXIT_OK } else { EXIT_REFUTED };
            Ok((code, emit(cli, &r, text_lemma3)))
        }
    }
}

fn scholz_invariants(a: &ScholzArgs) -> crate::Result<BaseFieldInvariants> {
    match (&a.base, a.n, a.w) {
        (Some(b), _, _) => Ok(b.invariants()),
        (None, Some(n), Some(w)) => {
            BaseFieldInvariants::new(n, w, a.h.unwrap_or(1), a.unit_index.unwrap_or(1))
        }
        _ => Err(Error::InvalidArgument(
            "scholz needs --base or both --n and --w".into(),
        )),
    }
}

/// The fields entering the product decomposition, before any oracle call.
#[derive(Clone, Debug, Serialize)]
struct MetsankylaPlan {
    statement: String,
    #[serde(serialize_with = "crate::report::as_string")]
    l: FieldSpec,
    #[serde(serialize_with = "crate::report::as_string")]
    l1: FieldSpec,
    #[serde(serialize_with = "crate::report::as_string")]
    l2: FieldSpec,
    #[serde(serialize_with = "crate::report::as_string")]
    l1_l2_plus: FieldSpec,
    #[serde(serialize_with = "crate::report::as_string")]
    l2_l1_plus: FieldSpec,
}

fn predict_report(claim: &Claim) -> crate::Result<PredictionReport> {
    match claim {
        Claim::Scholz(a) => scholz_predict(&scholz_invariants(a)?, a.p, a.f),
        Claim::C1 { n, p, f } => c1_predict(*n, *p, *f),
        Claim::Schmidt { m, p } => schmidt_predict(*m, *p),
        Claim::P14 { p } => Ok(p14_predict(*p)?.0),
        Claim::Metsankyla { .. } => unreachable!("handled separately"),
    }
}

fn predict_cmd(cli: &Cli, claim: &Claim) -> crate::Result<(i32, String)> {
    if let Claim::Metsankyla { l1, l2, .. } = claim {
        for l in [l1, l2] {
            if !l.is_cm() {
                return Err(Error::NotCm(l.to_string()));
            }
        }
        let plan = MetsankylaPlan {
            statement: "h^-(L) = h^-(L1) h^-(L2) T1 T2 with T1, T2 integers".into(),
            l: l1.compositum(l2)?,
            l1_l2_plus: l1.compositum(&l2.maximal_real_subfield())?,
            l2_l1_plus: l2.compositum(&l1.maximal_real_subfield())?,
            l1: l1.clone(),
            l2: l2.clone(),
        };
        return Ok((EXIT_OK, emit(cli, &plan, text_plan)));
    }
    let r = predict_report(claim)?;
    Ok((EXIT_OK, emit(cli, &r, text_prediction)))
}

/// Verification of the main theorem over an imaginary quadratic base, via
/// the explicit ray class group.
#[derive(Clone, Debug, Serialize)]
struct ScholzVerification {
    prediction: PredictionReport,
    rayclass: RayClassReport,
    verdict: Verdict,
}

fn verify_cmd(cli: &Cli, claim: &Claim, policy: QPolicy) -> crate::Result<(i32, String)> {
    match claim {
        Claim::Metsankyla { l1, l2, predicted } => {
            let r = metsankyla_check(l1, l2, predicted.clone(), policy)?;
            Ok((
                exit_code_for_verdict(r.verdict),
                emit(cli, &r, text_metsankyla),
            ))
        }
        Claim::Scholz(a) => {
            let prediction = predict_report(claim)?;
            let Some(base) = &a.base else {
                return Ok((
                    EXIT_NOT_APPLICABLE,
                    emit(cli, &prediction, |r| {
                        text_prediction(r)
                            + "note: no oracle for user-supplied invariants; use --base\n"
                    }),
                ));
            };
            let rc = rayclass_report(base, a.p, a.f)?;
            let consistent =
                rc.match_kind != MatchKind::Fail && rc.norm_kernel_type.order() == rc.cnf_degree;
            let v = ScholzVerification {
                prediction,
                rayclass: rc,
                verdict: if consistent {
                    Verdict::Verified
                } else {
                    Verdict::Refuted
                },
            };
            Ok((
                exit_code_for_verdict(v.verdict),
                emit(cli, &v, |v| {
                    let mut s = text_prediction(&v.prediction);
                    s += &text_rayclass(&v.rayclass);
                    let _ = writeln!(s, "verdict: {}", v.verdict);
                    s
                }),
            ))
        }
        _ => {
            let r = verify(&predict_report(claim)?, policy)?;
            Ok((
                exit_code_for_verdict(r.verdict),
                emit(cli, &r, text_prediction),
            ))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
struct RdOutput {
    #[serde(flatten)]
    data: RootDiscriminant,
    exact: String,
    factored: String,
    decimal: String,
    below_degree: bool,
}

impl RdOutput {
    fn new(data: RootDiscriminant, digits: usize) -> Self {
        RdOutput {
            exact: data.root_discriminant.to_string(),
            factored: data.factored(),
            decimal: data.root_discriminant.to_decimal(digits),
            below_degree: data.below_degree(),
            data,
        }
    }
}

fn text_hminus(r: &HMinusResult) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field: {}", r.field);
    let _ = writeln!(s, "degree: {}", r.degree);
    let _ = writeln!(s, "w: {}", r.w);
    let certainty = if r.q_certain { "certain" } else { "uncertain" };
    let _ = writeln!(s, "Q: {} ({certainty}, {})", r.q, kebab(&r.q_source));
    let _ = writeln!(s, "h^-: {}", r.h_minus);
    if let Some(alt) = &r.alternate {
        let _ = writeln!(s, "h^- with Q = {}: {alt}", 3 - r.q);
    }
    let _ = writeln!(s, "orbits:");
    for o in &r.orbit_factors {
        let _ = writeln!(
            s,
            "  #{} conductor {} order {} size {}: {}",
            o.id, o.conductor, o.order, o.size, o.contribution
        );
    }
    s
}

fn kebab<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn text_prediction(r: &PredictionReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "claim: {}", r.claim);
    let _ = writeln!(s, "statement: {}", r.statement);
    let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(s, "inputs: {}", inputs.join(" "));
    let _ = writeln!(s, "predicted type: {}", r.predicted_type);
    let _ = writeln!(s, "predicted order: {}", r.predicted_order);
    match r.assertion {
        Assertion::Divides => {
            let _ = writeln!(
                s,
                "assertion: predicted order divides the minus class number"
            );
        }
        Assertion::Coprime(l) => {
            let _ = writeln!(s, "assertion: {l} does not divide the minus class number");
        }
    }
    if let Some(t) = &r.target {
        let _ = writeln!(s, "target: {t}");
    }
    if let Some(k) = &r.relative_to {
        let _ = writeln!(s, "relative to: {k}");
    }
    if let Some(o) = &r.oracle {
        let certainty = if o.q_certain { "certain" } else { "uncertain" };
        let _ = writeln!(
            s,
            "h^-(target): {} (Q = {}, {certainty}, {})",
            o.target_h_minus,
            o.q,
            kebab(&o.q_source)
        );
        if let Some(alt) = &o.target_alternate {
            let _ = writeln!(s, "h^-(target) with Q = {}: {alt}", 3 - o.q);
        }
        let _ = writeln!(s, "oracle value: {}", o.value);
    }
    if r.verdict != Verdict::NotChecked || r.oracle.is_some() {
        let _ = writeln!(s, "verdict: {}", r.verdict);
    }
    s
}

fn text_plan(p: &MetsankylaPlan) -> String {
    format!(
        "claim: metsankyla\nstatement: {}\nL: {}\nL1: {}\nL2: {}\nL1 L2^+: {}\nL2 L1^+: {}\n",
        p.statement, p.l, p.l1, p.l2, p.l1_l2_plus, p.l2_l1_plus
    )
}

fn text_metsankyla(r: &MetsankylaReport) -> String {
    let mut s = String::new();
    for f in &r.fields {
        let certainty = if f.q_certain { "certain" } else { "uncertain" };
        let _ = writeln!(
            s,
            "{}: {} degree {} h^- {} (Q = {}, {certainty})",
            f.role, f.field, f.degree, f.h_minus, f.q
        );
    }
    let _ = writeln!(s, "T1: {} (integral: {})", r.t1, r.t1_integral);
    let _ = writeln!(s, "T2: {} (integral: {})", r.t2, r.t2_integral);
    let _ = writeln!(s, "identity holds: {}", r.identity_holds);
    if let (Some(d), Some(ok)) = (&r.predicted_order, r.t2_divisible_by_prediction) {
        let _ = writeln!(s, "{d} divides T2: {ok}");
    }
    let _ = writeln!(s, "verdict: {}", r.verdict);
    s
}

fn text_rayclass(r: &RayClassReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "base: {} p: {} f: {}", r.base, r.p, r.f);
    let _ = writeln!(
        s,
        "ray class group: {} (order {})",
        r.ray_class_type, r.counts.order
    );
    let _ = writeln!(s, "phi(p^f)^2: {}  w: {}", r.counts.phi2, r.counts.w);
    let _ = writeln!(s, "norm kernel: {}", r.norm_kernel_type);
    let _ = writeln!(s, "predicted C: {}", r.predicted_c);
    let _ = writeln!(s, "class number factor: {}", r.cnf_degree);
    let _ = writeln!(s, "match: {}", r.match_kind);
    s
}

fn text_rd(r: &RdOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "field: {}", r.data.field);
    let _ = writeln!(s, "degree: {}", r.data.degree);
    let _ = writeln!(s, "|disc|: {}", r.data.discriminant);
    let _ = writeln!(s, "rd: {} = {}", r.factored, r.decimal);
    let _ = writeln!(s, "rd < degree: {}", r.below_degree);
    s
}

fn text_lemma3(r: &Lemma3Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "m: {} n: {}", r.m, r.n);
    let _ = writeln!(s, "(Z/m)^*: {}", r.unit_type);
    let _ = writeln!(
        s,
        "kernel: {} (expected {})",
        r.kernel_type, r.expected_kernel_type
    );
    let _ = writeln!(
        s,
        "surjective: {} ({} witnesses)",
        r.surjective, r.witnesses_checked
    );
    let _ = writeln!(s, "completions checked: {}", r.completions_checked);
    if let Some(k) = r.enumerated_kernel_order {
        let _ = writeln!(s, "kernel order by enumeration: {k}");
    }
    let _ = writeln!(s, "result: {}", if r.pass { "pass" } else { "fail" });
    s
}
