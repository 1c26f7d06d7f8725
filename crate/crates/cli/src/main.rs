//! `hbloch`: Bohr-radius tables, seminorm estimates and verification
//! suites from the command line.

mod output;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hbloch::bohr::{
    emit_table, majorant_sum, p_bohr_sum, solve, verify_bohr_membership, BohrEquation, MembershipKind,
};
use hbloch::bounds::{coeff_bound, proven_context};
use hbloch::catalog::{self, HarmonicMap, MapParams};
use hbloch::seminorm::{
    estimate_beta, estimate_beta_star, estimate_pre_schwarzian_norm, pseudo_norm, GridConfig,
};
use num_complex::Complex64;

use output::{Cell, Format, Records, Report};
use verify::Suite;

/// Environment variable overriding the default ladder depth.
const LADDER_DEPTH_ENV: &str = "HBLOCH_LADDER_DEPTH";

#[derive(Debug, Parser)]
#[command(
    name = "hbloch",
    version,
    about = "Harmonic Bloch-type seminorms and Bohr radii"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Seed for random sample points.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Number of ladder rungs (overrides HBLOCH_LADDER_DEPTH).
    #[arg(long, global = true)]
    ladder_depth: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The Bohr-radius table for nu in (0, 3].
    Table,
    /// Solve one radius equation.
    Radius(RadiusArgs),
    /// Estimate a seminorm of a catalog map.
    Seminorm(SeminormArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Taylor coefficients with the coefficient bound.
    Coeffs(CoeffsArgs),
    /// Majorant, p-Bohr or membership sums.
    Sum(SumArgs),
    /// List the catalog.
    Catalog,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "verbatim")]
enum EqKind {
    E5,
    E6,
    E9,
    T7B,
    T8A,
    T8B,
}

#[derive(Debug, Args)]
struct RadiusArgs {
    #[arg(long, value_enum)]
    eq: EqKind,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    w0: Option<f64>,
    /// Bracket width at which bisection stops.
    #[arg(long, default_value_t = 1e-15)]
    tol: f64,
}

/// Catalog entry name and its parameters.
#[derive(Debug, Args)]
struct MapArgs {
    /// Catalog entry (see `hbloch catalog`).
    #[arg(long = "fn")]
    name: String,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    /// Complex parameter as `re` or `re,im`.
    #[arg(long, value_parser = parse_complex)]
    b1: Option<Complex64>,
    /// Which of the two remark34 maps.
    #[arg(long)]
    variant: Option<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Which {
    Beta,
    BetaStar,
    Preschwarzian,
    PseudoNorm,
}

#[derive(Debug, Args)]
struct SeminormArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, value_enum)]
    which: Which,
    /// Seminorm weight; defaults to `--nu`.
    #[arg(long)]
    weight: Option<f64>,
    /// CSV output lists the ladder instead of the summary.
    #[arg(long)]
    ladder: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
}

#[derive(Debug, Args)]
struct CoeffsArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Highest coefficient index.
    #[arg(long = "N", default_value_t = 32)]
    order: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Analytic,
    Harmonic,
    Jacobian,
}

#[derive(Debug, Args)]
struct SumArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Radius; required unless `--membership` is given.
    #[arg(long, required_unless_present = "membership")]
    r: Option<f64>,
    /// Exponent of the p-Bohr sum; without it the majorant of `h` is summed.
    #[arg(long)]
    p: Option<f64>,
    /// Run the membership check of this kind at its theorem radius.
    #[arg(long, value_enum)]
    membership: Option<Kind>,
    /// Seminorm weight for `--membership`; defaults to `--nu`.
    #[arg(long)]
    weight: Option<f64>,
    #[arg(long = "N", default_value_t = 512)]
    order: usize,
}

#[derive(Debug)]
enum Failure {
    /// Bad flags or parameters; exit 2.
    Usage(String),
    /// Runtime or I/O failure; exit 1.
    Run(String),
    /// Verification found failing checks; the report is still written.
    Checks(usize),
}

impl From<hbloch::Error> for Failure {
    fn from(e: hbloch::Error) -> Self {
        match e {
            hbloch::Error::InvalidParameter { .. }
            | hbloch::Error::InvalidGrid(_)
            | hbloch::Error::MissingSeries(_) => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parse = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(s)?, 0.0)),
    }
}

fn grid_config(flag: Option<usize>) -> Result<GridConfig, Failure> {
    let depth = match flag {
        Some(d) => Some(d),
        None => match std::env::var(LADDER_DEPTH_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("{LADDER_DEPTH_ENV}: not an integer: `{v}`")))?,
            ),
            Err(_) => None,
        },
    };
    let mut cfg = GridConfig::default();
    if let Some(d) = depth {
        cfg.ladder_depth = d;
    }
    cfg.validate()?;
    Ok(cfg)
}

impl MapArgs {
    fn build(&self) -> Result<HarmonicMap, Failure> {
        if !catalog::listing().iter().any(|e| e.name == self.name) {
            return Err(Failure::Usage(format!(
                "unknown function `{}`; see `hbloch catalog`",
                self.name
            )));
        }
        let params = MapParams {
            nu: self.nu,
            t: self.t,
            mu: self.mu,
            theta: self.theta,
            b1: self.b1,
            which: self.variant,
            ..MapParams::default()
        };
        Ok(catalog::by_name(&self.name, &params)?)
    }
}

fn need<T>(value: Option<T>, flag: &str, eq: EqKind) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--eq {eq:?} requires --{flag}")))
}

fn cmd_table() -> Result<Report, Failure> {
    let mut r = Records::new(&[
        "interval",
        "k",
        "r1_left",
        "r1_right",
        "r2",
        "r_left",
        "r_right",
        "nu_switch",
    ]);
    let six = |x: f64| Cell::Fixed(x, 6);
    for row in emit_table()? {
        r.push(vec![
            row.interval.into(),
            row.k.into(),
            six(row.r1_left),
            six(row.r1_right),
            six(row.r2),
            six(row.r_left),
            six(row.r_right),
            row.nu_switch.map_or(Cell::Empty, six),
        ]);
    }
    Ok(Report::single("table", r))
}

fn cmd_radius(a: &RadiusArgs) -> Result<Report, Failure> {
    let p = a.p.unwrap_or(1.0);
    let w0 = a.w0.unwrap_or(0.0);
    let eq = match a.eq {
        EqKind::E5 => BohrEquation::E5 {
            nu: need(a.nu, "nu", a.eq)?,
        },
        EqKind::E6 => BohrEquation::E6 {
            k: need(a.k, "k", a.eq)?,
        },
        EqKind::E9 => BohrEquation::E9 {
            nu: need(a.nu, "nu", a.eq)?,
            p,
        },
        EqKind::T7B => BohrEquation::T7B {
            k: need(a.k, "k", a.eq)?,
            p,
        },
        EqKind::T8A => BohrEquation::T8A {
            nu: need(a.nu, "nu", a.eq)?,
            p,
            w0,
        },
        EqKind::T8B => BohrEquation::T8B {
            k: need(a.k, "k", a.eq)?,
            p,
            w0,
        },
    };
    let res = solve(&eq, a.tol)?;
    let mut r = Records::new(&["eq", "root", "residual", "bracket_lo", "bracket_hi", "iterations"]);
    r.push(vec![
        format!("{:?}", a.eq).into(),
        res.root.into(),
        res.residual.into(),
        res.bracket.0.into(),
        res.bracket.1.into(),
        res.iterations.into(),
    ]);
    Ok(Report::single("radius", r))
}

fn cmd_seminorm(a: &SeminormArgs, cfg: &GridConfig) -> Result<Report, Failure> {
    let f = a.map.build()?;
    let weight = match a.which {
        Which::Preschwarzian => None,
        _ => Some(
            a.weight
                .or(a.map.nu)
                .ok_or_else(|| Failure::Usage("the seminorm weight needs --weight or --nu".into()))?,
        ),
    };
    let (est, pseudo) = match (a.which, weight) {
        (Which::Beta, Some(w)) => (estimate_beta(&f, w, cfg)?, None),
        (Which::BetaStar, Some(w)) => (estimate_beta_star(&f, w, cfg)?, None),
        (Which::PseudoNorm, Some(w)) => {
            let (value, est) = pseudo_norm(&f, w, cfg)?;
            (est, Some(value))
        }
        _ => (estimate_pre_schwarzian_norm(&f, cfg)?, None),
    };
    let which = a
        .which
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_owned();
    let mut summary = Records::new(&[
        "function",
        "which",
        "weight",
        "value",
        "verdict",
        "argmax_re",
        "argmax_im",
        "overflow",
        "pseudo_norm",
    ]);
    summary.push(vec![
        f.name().into(),
        which.into(),
        weight.into(),
        est.value.into(),
        format!("{:?}", est.verdict).to_lowercase().into(),
        est.argmax.value().re.into(),
        est.argmax.value().im.into(),
        est.overflow.into(),
        pseudo.into(),
    ]);
    let mut ladder = Records::new(&["rung", "one_minus_r", "value", "argmax_re", "argmax_im"]);
    for (j, rung) in est.ladder.iter().enumerate() {
        ladder.push(vec![
            j.into(),
            rung.one_minus_r.into(),
            rung.value.into(),
            rung.argmax.value().re.into(),
            rung.argmax.value().im.into(),
        ]);
    }
    Ok(if a.ladder {
        Report::single("ladder", ladder).with("summary", summary)
    } else {
        Report::single("summary", summary).with("ladder", ladder)
    })
}

fn cmd_verify(a: &VerifyArgs, seed: u64, cfg: &GridConfig) -> (Report, usize) {
    let checks = verify::run(a.suite, seed, cfg);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut r = Records::new(&["check", "status", "detail"]);
    for c in checks {
        r.push(vec![
            c.name.into(),
            if c.passed { "pass" } else { "fail" }.into(),
            c.detail.into(),
        ]);
    }
    (Report::single("checks", r), failed)
}

fn cmd_coeffs(a: &CoeffsArgs) -> Result<Report, Failure> {
    let f = a.map.build()?;
    let (Some(h), Some(g)) = (f.series_h(a.order), f.series_g(a.order)) else {
        return Err(Failure::Usage(format!("`{}` has no series generator", f.name())));
    };
    let ctx = proven_context(&f);
    let mut r = Records::new(&["n", "abs_a", "abs_b", "bound"]);
    for n in 0..=a.order {
        let bound = ctx.filter(|_| n >= 1).map(|c| coeff_bound(&c, n));
        r.push(vec![
            n.into(),
            h.coeff(n).norm().into(),
            g.coeff(n).norm().into(),
            bound.into(),
        ]);
    }
    Ok(Report::single("coeffs", r))
}

fn cmd_sum(a: &SumArgs, cfg: &GridConfig) -> Result<Report, Failure> {
    let f = a.map.build()?;
    if let Some(kind) = a.membership {
        let weight = a
            .weight
            .or(a.map.nu)
            .ok_or_else(|| Failure::Usage("--membership needs --weight or --nu".into()))?;
        let kind = match kind {
            Kind::Analytic => MembershipKind::Analytic,
            Kind::Harmonic => MembershipKind::Harmonic,
            Kind::Jacobian => MembershipKind::Jacobian,
        };
        let rep = verify_bohr_membership(&f, weight, a.p.unwrap_or(1.0), kind, cfg)?;
        let mut r = Records::new(&[
            "function",
            "kind",
            "weight",
            "p",
            "norm_estimate",
            "verdict",
            "precondition_met",
            "omega0",
            "radius",
            "sum",
            "tail_bound",
            "holds",
            "certified",
            "caveat",
        ]);
        r.push(vec![
            f.name().into(),
            format!("{:?}", rep.kind).to_lowercase().into(),
            rep.nu.into(),
            rep.p.into(),
            rep.norm_estimate.into(),
            format!("{:?}", rep.seminorm_verdict).to_lowercase().into(),
            rep.precondition_met.into(),
            rep.omega0.into(),
            rep.radius.into(),
            rep.sum.into(),
            rep.tail_bound.into(),
            rep.holds.into(),
            rep.certified.into(),
            rep.caveat.into(),
        ]);
        return Ok(Report::single("membership", r));
    }
    let radius = a.r.expect("clap requires --r without --membership");
    if !(0.0..1.0).contains(&radius) {
        return Err(Failure::Usage(format!("--r must lie in [0, 1), got {radius}")));
    }
    let h = f
        .series_h(a.order)
        .ok_or_else(|| hbloch::Error::MissingSeries(f.name().into()))?;
    let (label, s) = match a.p {
        Some(p) if p >= 1.0 => {
            let g = f
                .series_g(a.order)
                .ok_or_else(|| hbloch::Error::MissingSeries(f.name().into()))?;
            ("p_bohr", p_bohr_sum(&h, &g, p, radius, f.envelope()))
        }
        Some(p) => return Err(Failure::Usage(format!("--p must be at least 1, got {p}"))),
        None => ("majorant", majorant_sum(&h, radius, f.envelope())),
    };
    let mut r = Records::new(&["function", "sum_kind", "r", "p", "sum", "tail_bound"]);
    r.push(vec![
        f.name().into(),
        label.into(),
        radius.into(),
        a.p.into(),
        s.sum.into(),
        s.tail_bound.into(),
    ]);
    Ok(Report::single("sum", r))
}

fn cmd_catalog() -> Report {
    let mut r = Records::new(&["name", "params", "description"]);
    for e in catalog::listing() {
        r.push(vec![
            e.name.into(),
            e.params.join(" ").into(),
            e.description.into(),
        ]);
    }
    Report::single("catalog", r)
}

fn write_report(report: &Report, cli: &Cli) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Run(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            report.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            match report.write(cli.format, &mut w).and_then(|()| w.flush()) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let cfg = grid_config(cli.ladder_depth)?;
    let (report, failed) = match &cli.command {
        Command::Table => (cmd_table()?, 0),
        Command::Radius(a) => (cmd_radius(a)?, 0),
        Command::Seminorm(a) => (cmd_seminorm(a, &cfg)?, 0),
        Command::Verify(a) => cmd_verify(a, cli.seed, &cfg),
        Command::Coeffs(a) => (cmd_coeffs(a)?, 0),
        Command::Sum(a) => (cmd_sum(a, &cfg)?, 0),
        Command::Catalog => (cmd_catalog(), 0),
    };
    write_report(&report, cli)?;
    if failed > 0 {
        return Err(Failure::Checks(failed));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Checks(n)) => {
            eprintln!("{n} check(s) failed");
            ExitCode::from(1)
        }
    }
}
