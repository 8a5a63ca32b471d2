// Copyright 2026 The abc-core Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `abc`: run committee rules, audit committees, compute bounds, solve the
//! bound LPs, generate worst-case instances and print table or curve data.
//!
//! Exit codes: 0 on success, 1 on usage or input errors, 2 when a
//! computation fails (budget, solver, root finding).

use abc_core::audit::{self, Query, SearchOptions};
use abc_core::bounds::{self, GuaranteeReport};
use abc_core::gen;
use abc_core::lp::{self, HMethod};
use abc_core::rules::{self, EnumOptions, LambdaWeights, TieBreak, DEFAULT_BUDGET};
use abc_core::tables::{self, fmt_sig, CurveKind, TableKind};
use abc_core::{parse_profile, write_profile, Committee, Error, Profile, Rational, Scalar};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "abc",
    version,
    about = "Approval-based committee elections toolkit"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Print rationals as exact `p/q` strings.
    #[arg(long, global = true)]
    exact: bool,
    /// Write the output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a rule on a profile file.
    Elect(ElectArgs),
    /// Audit a committee on a profile file.
    Audit(AuditArgs),
    /// Evaluate a proportionality or efficiency bound.
    Bounds(BoundsArgs),
    /// Solve one of the bound-computing LPs.
    Lp(LpArgs),
    /// Generate a worst-case instance.
    Gen(GenArgs),
    /// Print a table of coefficients.
    Table(TableArgs),
    /// Print curve data.
    Curve(CurveArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RuleName {
    Pav,
    Thiele,
    SeqPav,
    SeqThiele,
    SeqPhragmen,
    SeqPhragmenLoad,
    MaxPhragmen,
}

#[derive(Args, Debug)]
struct ElectArgs {
    /// Rule to run.
    #[arg(long, value_enum)]
    rule: RuleName,
    /// Profile file.
    #[arg(long)]
    file: PathBuf,
    /// Committee size.
    #[arg(short)]
    k: usize,
    /// Weight family for Thiele rules: pav, sqrt, power:p or custom:v,...
    #[arg(long, default_value = "pav")]
    lambda: String,
    /// Tie policy: lexmin, lexmax or adversarial:c1,c2,...
    #[arg(long, default_value = "lexmin")]
    tie: String,
    /// Also print the per-step trace of sequential rules.
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug)]
struct AuditArgs {
    /// Profile file.
    #[arg(long)]
    file: PathBuf,
    /// Committee size used for ℓ-largeness.
    #[arg(short)]
    k: usize,
    /// Committee members, comma separated.
    #[arg(long)]
    committee: String,
    /// Queries `ℓ:g`; defaults to `ℓ:ℓ−1` for every ℓ ≤ k.
    #[arg(long = "query")]
    queries: Vec<String>,
    /// Also check α-EJR for this α.
    #[arg(long)]
    ejr: Option<String>,
    /// Largest number of approval sets intersected by the fallback search.
    #[arg(long, default_value_t = 3)]
    seeds: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundRule {
    Phragmen,
    MaxPhragmen,
    Thiele,
    SeqPav,
    Efficiency,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    /// Rule whose bound is evaluated.
    #[arg(long, value_enum)]
    rule: BoundRule,
    /// Lower bound (guarantee).
    #[arg(long, conflicts_with = "upper")]
    lower: bool,
    /// Upper bound (witness value).
    #[arg(long)]
    upper: bool,
    /// Group size ℓ.
    #[arg(short, default_value_t = 1)]
    l: usize,
    /// Committee size.
    #[arg(short)]
    k: Option<usize>,
    /// Weight family for Thiele rules.
    #[arg(long, default_value = "pav")]
    lambda: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LpKind {
    Exact,
    Relaxed,
    AbstractF,
    AbstractFSubmodular,
}

#[derive(Args, Debug)]
struct LpArgs {
    /// Which LP to solve.
    #[arg(long, value_enum)]
    kind: LpKind,
    /// Committee size.
    #[arg(short)]
    k: usize,
    /// Write the LP in LP text format to this file.
    #[arg(long)]
    write_lp: Option<PathBuf>,
    /// Write the exact LP's optimal profile to this file.
    #[arg(long)]
    profile: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    PartyList,
    PhragmenHard,
    MaxphragmenTie,
    ThieleUpper,
    Efficiency,
    SeqpavHard,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Instance family.
    #[arg(value_enum)]
    family: Family,
    /// Party weights for party-list, comma separated.
    #[arg(long, default_value = "60,30,10")]
    weights: String,
    /// Candidates per party for party-list.
    #[arg(long, default_value_t = 10)]
    per_party: usize,
    /// Group size ℓ.
    #[arg(short, default_value_t = 1)]
    l: usize,
    /// Committee size.
    #[arg(short, default_value_t = 4)]
    k: usize,
    /// Block size for maxphragmen-tie and efficiency.
    #[arg(long, default_value_t = 3)]
    block: usize,
    /// Number of voters for thiele-upper.
    #[arg(short, default_value_t = 16)]
    n: usize,
    /// Weight family for thiele-upper and efficiency.
    #[arg(long, default_value = "pav")]
    lambda: String,
    /// Base profile file for seqpav-hard.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Number of copies L for seqpav-hard.
    #[arg(long, default_value_t = 2)]
    copies: usize,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// seqpav-exact, seqpav-relaxed, abstract-f or abstract-f-submodular.
    #[arg(long)]
    kind: String,
    /// Committee sizes: `a..b`, `a,b,c` or a single value.
    #[arg(short, default_value = "1..12")]
    k: String,
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// seqpav-relaxed-vs-k, phragmen-upper-vs-k or thiele-guarantee-vs-ell.
    #[arg(long)]
    kind: String,
    /// x values: `a..b`, `a,b,c` or a single value.
    #[arg(long, default_value = "1..20")]
    range: String,
    /// Fixed ℓ for phragmen-upper-vs-k.
    #[arg(short, default_value_t = 1)]
    l: usize,
    /// Fixed k for thiele-guarantee-vs-ell.
    #[arg(short, default_value_t = 20)]
    k: usize,
    /// Weight family for thiele-guarantee-vs-ell.
    #[arg(long, default_value = "pav")]
    lambda: String,
}

/// A failure together with its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidInput(_) | Error::LambdaTooShort { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = std::result::Result<String, Failure>;

/// Largest `k` for which `bounds --rule seq-pav` uses the exact LP.
const EXACT_BOUND_K: usize = 12;

/// Largest `k` for which `lp --exact` solves the exact LP over rationals.
const EXACT_RATIONAL_K: usize = 8;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(text) => match &cli.common.output {
            Some(path) => match std::fs::write(path, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    ExitCode::from(1)
                }
            },
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let c = &cli.common;
    match &cli.command {
        Command::Elect(a) => cmd_elect(c, a),
        Command::Audit(a) => cmd_audit(c, a),
        Command::Bounds(a) => cmd_bounds(c, a),
        Command::Lp(a) => cmd_lp(c, a),
        Command::Gen(a) => cmd_gen(a),
        Command::Table(a) => cmd_table(a),
        Command::Curve(a) => cmd_curve(a),
    }
}

/// Enumeration budget, overridable through `ABC_BUDGET`.
fn budget() -> std::result::Result<u128, Failure> {
    match std::env::var("ABC_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("ABC_BUDGET must be an integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn read_profile(path: &PathBuf) -> std::result::Result<Profile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_profile(&text)?)
}

fn fmt_q(c: &Common, x: &Rational) -> String {
    if c.exact {
        x.to_string()
    } else {
        fmt_sig(x.to_f64())
    }
}

/// Parses `a..b`, `a,b,c` or a single integer.
fn parse_range(s: &str) -> std::result::Result<Vec<usize>, Failure> {
    let bad = || Failure::usage(format!("malformed range `{s}`"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}

fn parse_lambda(s: &str) -> std::result::Result<LambdaWeights, Failure> {
    Ok(s.parse::<LambdaWeights>()?)
}

fn cmd_elect(c: &Common, a: &ElectArgs) -> CmdResult {
    let p = read_profile(&a.file)?;
    let tb: TieBreak = a.tie.parse()?;
    let lambda = parse_lambda(&a.lambda)?;
    let opts = EnumOptions {
        budget: budget()?,
        ..EnumOptions::default()
    };
    let (committee, trace, score) = match a.rule {
        RuleName::Pav | RuleName::Thiele => {
            let lambda = if a.rule == RuleName::Pav {
                LambdaWeights::Pav
            } else {
                lambda
            };
            let out = rules::thiele_exact(&p, &lambda, a.k, &tb, &opts)?;
            (out.committee, None, Some(out.score))
        }
        RuleName::SeqPav => {
            let (w, t) = rules::seq_pav(&p, a.k, &tb)?;
            (w, Some(t), None)
        }
        RuleName::SeqThiele => {
            let (w, t) = rules::seq_thiele(&p, &lambda, a.k, &tb)?;
            (w, Some(t), None)
        }
        RuleName::SeqPhragmen => {
            let (w, t) = rules::seq_phragmen_credit(&p, a.k, &tb)?;
            (w, Some(t), None)
        }
        RuleName::SeqPhragmenLoad => {
            let (w, t) = rules::seq_phragmen_load(&p, a.k, &tb)?;
            (w, Some(t), None)
        }
        RuleName::MaxPhragmen => {
            let out = rules::max_phragmen(&p, a.k, &opts)?;
            let w = out
                .optima
                .iter()
                .find(|w| match &tb {
                    TieBreak::Adversarial(t) => *w == t,
                    _ => false,
                })
                .or_else(|| match tb {
                    TieBreak::LexMax => out.optima.last(),
                    _ => out.optima.first(),
                })
                .cloned()
                .ok_or_else(|| Failure::from(Error::InvalidInput("no committee".into())))?;
            (w, None, Some(out.value))
        }
    };
    let order: Vec<usize> = match &trace {
        Some(t) => t.order(),
        None => committee.iter().collect(),
    };
    let mut out = String::new();
    match c.format {
        Format::Csv => {
            out.push_str("position,candidate\n");
            for (i, cand) in order.iter().enumerate() {
                let _ = writeln!(out, "{},{cand}", i + 1);
            }
        }
        Format::Text => {
            let _ = writeln!(out, "committee {committee}");
            let list: Vec<String> = order.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "order {}", list.join(" "));
            if let Some(s) = &score {
                let _ = writeln!(out, "value {}", fmt_q(c, s));
            }
        }
    }
    if a.trace {
        if let Some(t) = &trace {
            out.push_str(&t.to_log());
            if !out.ends_with('\n') {
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn parse_committee(s: &str) -> std::result::Result<Committee, Failure> {
    let members = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Failure::usage(format!("bad committee member `{t}`")))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Committee::new(members))
}

fn parse_rational(s: &str) -> std::result::Result<Rational, Failure> {
    abc_core::scalar::parse_rational(s).ok_or_else(|| Failure::usage(format!("bad number `{s}`")))
}

fn cmd_audit(c: &Common, a: &AuditArgs) -> CmdResult {
    let p = read_profile(&a.file)?;
    let w = parse_committee(&a.committee)?;
    let queries = if a.queries.is_empty() {
        (1..=a.k)
            .map(|ell| Query {
                ell,
                threshold: Rational::from_usize(ell - 1),
            })
            .collect()
    } else {
        a.queries
            .iter()
            .map(|s| {
                let (ell, g) = s
                    .split_once(':')
                    .ok_or_else(|| Failure::usage(format!("query `{s}` is not `ℓ:g`")))?;
                Ok(Query {
                    ell: ell
                        .trim()
                        .parse()
                        .map_err(|_| Failure::usage(format!("bad ℓ in `{s}`")))?,
                    threshold: parse_rational(g)?,
                })
            })
            .collect::<std::result::Result<Vec<_>, Failure>>()?
    };
    let opts = SearchOptions {
        seeds: a.seeds,
        ..SearchOptions::default()
    };
    let report = audit::empirical_prop_degree(&p, &w, a.k, &queries, &opts)?;
    let mut out = match c.format {
        Format::Csv => report.to_csv_with(|x| fmt_q(c, x)),
        Format::Text => {
            let mut s = String::new();
            for r in &report.records {
                let _ = write!(s, "l={} g={}: ", r.query.ell, fmt_q(c, &r.query.threshold));
                match &r.worst {
                    Some(g) => {
                        let _ = writeln!(
                            s,
                            "worst satisfaction {} (weight {}, {} common){}",
                            fmt_q(c, &g.satisfaction),
                            fmt_q(c, &g.weight),
                            g.common,
                            if r.is_violation() { " VIOLATION" } else { "" }
                        );
                    }
                    None => s.push_str("no qualifying group\n"),
                }
            }
            let _ = writeln!(
                s,
                "utilitarian ratio {}",
                fmt_q(c, &report.utilitarian_ratio)
            );
            s
        }
    };
    if let Some(alpha) = &a.ejr {
        let alpha = parse_rational(alpha)?;
        let ejr = audit::check_ejr(&p, &w, a.k, &alpha, &opts)?;
        match &ejr.witness {
            Some(wit) => {
                let _ = writeln!(out, "# ejr,false,l={},group={}", wit.ell, wit.voters);
            }
            None => {
                let _ = writeln!(out, "# ejr,true");
            }
        }
    }
    Ok(out)
}

fn render_bound(c: &Common, r: &GuaranteeReport) -> String {
    match c.format {
        Format::Csv => format!("{}\n{}\n", GuaranteeReport::CSV_HEADER, r.csv_row()),
        Format::Text => format!("{}\n", fmt_sig(r.value)),
    }
}

fn cmd_bounds(c: &Common, a: &BoundsArgs) -> CmdResult {
    let upper = a.upper;
    let need_k = || a.k.ok_or_else(|| Failure::usage("this bound needs -k"));
    let report = match a.rule {
        BoundRule::Phragmen if !upper => bounds::phragmen_lower(a.l),
        BoundRule::Phragmen => {
            let k = need_k()?;
            if c.exact {
                return Ok(format!("{}\n", bounds::phragmen_upper_exact(a.l, k)?));
            }
            bounds::phragmen_upper(a.l, k)?
        }
        BoundRule::MaxPhragmen => {
            if !upper {
                return Err(Failure::usage("max-phragmen has only an upper bound"));
            }
            bounds::maxphragmen_upper(a.l)
        }
        BoundRule::Thiele => {
            let lambda = parse_lambda(&a.lambda)?;
            let k = need_k()?;
            if upper {
                bounds::thiele_upper(&lambda, a.l, k)?
            } else {
                bounds::thiele_guarantee(&lambda, a.l, k)?
            }
        }
        BoundRule::SeqPav => {
            let k = need_k()?;
            let method = if k <= EXACT_BOUND_K {
                HMethod::Exact
            } else {
                HMethod::Relaxed
            };
            let (lo, hi) = lp::h_seqpav(k, method)?.degree(a.l);
            if upper {
                hi
            } else {
                lo
            }
        }
        BoundRule::Efficiency => {
            let lambda = parse_lambda(&a.lambda)?;
            let k = need_k()?;
            let r = if upper {
                bounds::thiele_efficiency_upper(&lambda, k)?
            } else {
                bounds::thiele_efficiency_lower(&lambda, k)?
            };
            return Ok(match c.format {
                Format::Csv => format!(
                    "lambda,k,kind,alpha,value,residual\n{},{},{},{},{},{}\n",
                    r.lambda,
                    r.k,
                    r.kind.as_str(),
                    fmt_sig(r.alpha),
                    fmt_sig(r.guarantee),
                    fmt_sig(r.residual)
                ),
                Format::Text => format!("{}\n", fmt_sig(r.guarantee)),
            });
        }
    };
    Ok(render_bound(c, &report))
}

fn cmd_lp(c: &Common, a: &LpArgs) -> CmdResult {
    if let Some(path) = &a.write_lp {
        let prob = match a.kind {
            LpKind::Exact => lp::build_exact_lp::<f64>(a.k, false)?,
            LpKind::Relaxed => lp::build_relaxed_lp::<f64>(a.k)?,
            LpKind::AbstractF => lp::build_abstract_f_lp::<f64>(a.k, false)?,
            LpKind::AbstractFSubmodular => lp::build_abstract_f_lp::<f64>(a.k, true)?,
        };
        std::fs::write(path, prob.to_lp_format())
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if let Some(path) = &a.profile {
        if a.kind != LpKind::Exact {
            return Err(Failure::usage("--profile needs --kind exact"));
        }
        let prob = lp::build_exact_lp::<f64>(a.k, false)?;
        let sol = lp::solve_lp(&prob)?;
        let p = lp::lp_to_profile(&prob, &sol)?;
        std::fs::write(path, write_profile(&p) + "\n")
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if c.exact && a.kind == LpKind::Exact {
        if a.k > EXACT_RATIONAL_K {
            return Err(Failure::usage(format!(
                "--exact solves the exact LP in rational arithmetic only for k <= {EXACT_RATIONAL_K}"
            )));
        }
        let prob = lp::build_exact_lp::<Rational>(a.k, false)?;
        let h = lp::solve_lp(&prob)?.objective;
        let coefficient = num_traits::Inv::inv(h.clone());
        return Ok(match c.format {
            Format::Csv => format!(
                "k,h,coefficient\n{},{},{}\n",
                a.k,
                fmt_q(c, &h),
                fmt_q(c, &coefficient)
            ),
            Format::Text => format!("{}\n", fmt_q(c, &coefficient)),
        });
    }
    let (h, coefficient) = match a.kind {
        LpKind::Exact | LpKind::Relaxed => {
            let method = if a.kind == LpKind::Exact {
                HMethod::Exact
            } else {
                HMethod::Relaxed
            };
            let r = lp::h_seqpav(a.k, method)?;
            (r.h, r.coefficient)
        }
        LpKind::AbstractF | LpKind::AbstractFSubmodular => {
            let kind = if a.kind == LpKind::AbstractF {
                TableKind::AbstractF
            } else {
                TableKind::AbstractFSubmodular
            };
            let v = tables::table_value(kind, a.k)?;
            (1.0 / v, v)
        }
    };
    Ok(match c.format {
        Format::Csv => format!(
            "k,h,coefficient\n{},{},{}\n",
            a.k,
            fmt_sig(h),
            fmt_sig(coefficient)
        ),
        Format::Text => format!("{}\n", fmt_sig(coefficient)),
    })
}

fn cmd_gen(a: &GenArgs) -> CmdResult {
    let out = |p: &Profile, summary: Option<String>| {
        let mut s = String::new();
        if let Some(summary) = summary {
            for line in summary.lines() {
                let _ = writeln!(s, "# {line}");
            }
        }
        s.push_str(&write_profile(p));
        s.push('\n');
        s
    };
    let lambda = || parse_lambda(&a.lambda);
    Ok(match a.family {
        Family::PartyList => {
            let weights = a
                .weights
                .split(',')
                .map(parse_rational)
                .collect::<std::result::Result<Vec<_>, _>>()?;
            out(&gen::gen_party_list(&weights, a.per_party)?, None)
        }
        Family::PhragmenHard => {
            let (p, spec) = gen::gen_phragmen_hard(a.l, a.k)?;
            out(&p, Some(spec.summary()))
        }
        Family::MaxphragmenTie => {
            let (p, spec) = gen::gen_maxphragmen_tie(a.k, a.block)?;
            out(&p, Some(spec.summary()))
        }
        Family::ThieleUpper => {
            let (p, spec) = gen::gen_thiele_upper_witness(&lambda()?, a.l, a.k, a.n)?;
            out(&p, Some(spec.summary()))
        }
        Family::Efficiency => {
            let (p, spec) = gen::gen_efficiency_witness(&lambda()?, a.k, a.block)?;
            out(&p, Some(spec.summary()))
        }
        Family::SeqpavHard => {
            let path = a
                .base
                .as_ref()
                .ok_or_else(|| Failure::usage("seqpav-hard needs --base"))?;
            let base = read_profile(path)?;
            let (p, spec) = gen::gen_seqpav_hard(&base, a.k, a.copies, a.l)?;
            out(&p, Some(spec.summary()))
        }
    })
}

fn cmd_table(a: &TableArgs) -> CmdResult {
    let kind: TableKind = a.kind.parse()?;
    let ks = parse_range(&a.k)?;
    let rows = tables::table(kind, &ks)?;
    Ok(tables::to_csv("k,coefficient", &rows))
}

fn cmd_curve(a: &CurveArgs) -> CmdResult {
    let xs = parse_range(&a.range)?;
    let kind = match a.kind.as_str() {
        "seqpav-relaxed-vs-k" => CurveKind::SeqPavRelaxedVsK,
        "phragmen-upper-vs-k" => CurveKind::PhragmenUpperVsK { ell: a.l },
        "thiele-guarantee-vs-ell" => CurveKind::ThieleGuaranteeVsEll {
            lambda: parse_lambda(&a.lambda)?,
            k: a.k,
        },
        other => return Err(Failure::usage(format!("unknown curve `{other}`"))),
    };
    Ok(tables::curve(&kind, &xs)?)
}
