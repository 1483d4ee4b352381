//! Argument parsing and dispatch for the `polylog` binary. `run` never
//! touches the process streams, so tests can drive it directly.

use clap::{Parser, Subcommand, ValueEnum};
use polylog_core::associator::{
    derive_dilog_identities, fixture_path, fixture_phi, verify_landen3, verify_oiueno, verify_two_cycle, Point,
    Side, SideSymbols, MAX_DEGREE,
};
use polylog_core::charconv::{character_forms, integrality_table, CharacterForm, KummerAxioms};
use polylog_core::freelie::{bch, LieElement};
use polylog_core::ncpoly::Letter;
use polylog_core::report::{sort_reports, Intermediate, Report, Residual, Status};
use polylog_core::ring::{ComplexVal, MPoly, Rational, Ring, DEFAULT_PRECISION};
use polylog_core::selftest::{self, SelftestConfig};
use polylog_core::tensorcrit::{error_term, error_term_summands, pipeline_complex_symbolic, pipeline_ladic, verify_tensor_criterion};
use polylog_core::Error;
use polylog_num::{numeric_check, pipeline_complex, sample_points, CheckId, NumericRow};
use std::ffi::OsString;
use std::fmt::Write as _;

#[derive(Parser, Debug)]
#[command(name = "polylog", version, about = "Exact and numeric checks of polylogarithm functional equations")]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Tolerance for numeric residuals.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    /// Seed for the randomized property checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Truncation degree for symbolic series.
    #[arg(long, global = true, default_value_t = 6)]
    pub degree: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one verification.
    #[command(subcommand)]
    Verify(Verify),
    /// Print an associator expansion.
    Expand {
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Print log(e^X e^Y) in the Lyndon basis.
    Bch,
    /// Seeded property checks over every module.
    Selftest {
        /// Number of random exp(Lie) samples.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Landen's trilogarithm equation.
    Landen3 {
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
    },
    /// The Oi-Ueno equation of weight K.
    Oiueno {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
    },
    /// Dilogarithm equations and the character forms.
    DilogForms,
    /// The tensor criterion for the trilogarithm equation.
    TensorCriterion,
    /// The ℓ-adic error term.
    ErrorTerm,
    /// Assembly of the trilogarithm equation from P3 terms.
    Pipeline {
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        /// Kummer relations for composed paths (ℓ-adic side).
        #[arg(long, value_enum, default_value_t = Axioms::Standard)]
        axioms: Axioms,
        /// Number of sample points on the complex side.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// ℤ_ℓ-integrality of each right-hand-side term of a character form.
    Integrality {
        #[arg(long, value_enum)]
        eq: FormArg,
        /// Primes to check; 2, 3, 5 and 7 when omitted.
        #[arg(long, num_args = 1..)]
        ell: Vec<u64>,
    },
    /// Relations forced by the 2-cycle relation of the Drinfeld associator.
    TwoCycle {
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
        /// Degree of the relations; default 4.
        #[arg(long = "max-degree", default_value_t = 4)]
        max_degree: usize,
    },
    /// Numeric residuals as CSV rows.
    Numeric {
        /// Equation ids, e.g. euler-li2 or oi-ueno-k3; all when omitted.
        #[arg(long)]
        eq: Vec<String>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Complex,
    Ladic,
    Both,
}

impl SideArg {
    fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Complex => vec![Side::Complex],
            SideArg::Ladic => vec![Side::Ladic],
            SideArg::Both => vec![Side::Complex, Side::Ladic],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Axioms {
    Standard,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "G0")]
    G0,
    #[value(name = "phi")]
    Phi,
    #[value(name = "f_sigma")]
    FSigma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Chi2Reflection,
    Chi2Landen,
    Chi3Landen,
}

/// Exit code and captured streams of one invocation.
#[derive(Debug)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn usage(msg: impl Into<String>) -> Output {
        Output {
            code: 2,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::InvalidArgument(_) | Error::Domain(_) | Error::UnsupportedPrime(_) => {
                Failure::Usage(format!("error: {e}\n"))
            }
            _ => Failure::Internal(format!("error: {e}\n")),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output::usage(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => Output::usage(m),
        Err(Failure::Internal(m)) => Output {
            code: 1,
            stdout: String::new(),
            stderr: m,
        },
    }
}

fn dispatch(cli: &Cli) -> Run<Output> {
    if cli.degree == 0 || cli.degree > MAX_DEGREE {
        return Err(Failure::Usage(format!("error: --degree must lie in 1..={MAX_DEGREE}\n")));
    }
    match &cli.command {
        Command::Verify(v) => {
            if let Verify::Numeric { eq, samples } = v {
                return numeric_rows(cli, eq, *samples);
            }
            let mut reports = verify(cli, v)?;
            sort_reports(&mut reports);
            Ok(emit_reports(cli, &reports))
        }
        Command::Selftest { samples } => {
            let mut cfg = SelftestConfig::new(cli.seed);
            cfg.group_like_samples = *samples;
            cfg.group_like_degree = cli.degree;
            cfg.bch_degree = cli.degree.min(5);
            let mut reports = selftest::run(&cfg);
            reports.push(mpl_depth_one(cli.tol)?);
            sort_reports(&mut reports);
            Ok(emit_reports(cli, &reports))
        }
        Command::Expand { which } => expand(cli, *which),
        Command::Bch => {
            let n = cli.degree;
            let x = LieElement::<Rational>::generator(Letter::X, n);
            let y = LieElement::<Rational>::generator(Letter::Y, n);
            let z = bch(&x, &y)?;
            let stdout = if cli.json {
                let terms: Vec<(String, String)> = z.terms().map(|(w, c)| (w.to_string(), c.to_string())).collect();
                json(&serde_json::json!({ "degree": n, "lyndon-coefficients": terms }))
            } else {
                z.to_text()
            };
            Ok(Output { code: 0, stdout, stderr: String::new() })
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit_reports(cli: &Cli, reports: &[Report]) -> Output {
    let ok = reports.iter().all(Report::passed);
    let stdout = if cli.json {
        json(&reports)
    } else {
        let mut s = String::new();
        for r in reports {
            s.push_str(&r.to_string());
        }
        let passed = reports.iter().filter(|r| r.passed()).count();
        let _ = writeln!(s, "{passed}/{} checks passed", reports.len());
        s
    };
    Output {
        code: if ok { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}

fn verify(cli: &Cli, v: &Verify) -> Run<Vec<Report>> {
    let mut out = Vec::new();
    match v {
        Verify::Landen3 { side, mode } => match mode {
            Mode::Symbolic => {
                for s in side.sides() {
                    out.push(verify_landen3(s)?);
                }
            }
            Mode::Numeric => {
                complex_only(*side)?;
                out.push(numeric_report(
                    "landen3-complex-numeric",
                    "Landen trilogarithm equation at sample points",
                    CheckId::LandenLi3,
                    10,
                    cli.tol,
                )?);
            }
        },
        Verify::Oiueno { k, side, mode } => match mode {
            Mode::Symbolic => {
                if *k < 2 || *k > MAX_DEGREE {
                    return Err(Failure::Usage(format!(
                        "error: --k must lie in 2..={MAX_DEGREE} for symbolic mode\n"
                    )));
                }
                let trunc = cli.degree.max(*k);
                for s in side.sides() {
                    out.push(verify_oiueno(*k, s, trunc)?);
                }
            }
            Mode::Numeric => {
                complex_only(*side)?;
                if !(2..=5).contains(k) {
                    return Err(Failure::Usage("error: --k must lie in 2..=5 for numeric mode\n".into()));
                }
                out.push(numeric_report(
                    &format!("oiueno-k{k}-complex-numeric"),
                    &format!("Oi-Ueno equation of weight {k} at sample points"),
                    CheckId::OiUeno(*k),
                    5,
                    cli.tol,
                )?);
            }
        },
        Verify::DilogForms => {
            for s in [Side::Complex, Side::Ladic] {
                let syms = SideSymbols::new(s);
                let d = derive_dilog_identities(&syms)?;
                out.push(Report::new(
                    format!("dilog-{s}"),
                    format!("dilogarithm reflection and Landen equations, {s} side"),
                    Residual::Exact("0".into()),
                    true,
                    d.intermediates,
                ));
            }
            let syms = SideSymbols::new(Side::Ladic);
            let forms = character_forms(&syms, &KummerAxioms::standard())?;
            for (f, reference) in character_form_refs(&forms) {
                out.push(f.report(reference));
            }
        }
        Verify::TensorCriterion => out.push(verify_tensor_criterion()),
        Verify::ErrorTerm => out.push(error_term_report()?),
        Verify::Pipeline { side, axioms, samples } => {
            for s in side.sides() {
                match s {
                    Side::Complex => {
                        out.push(pipeline_complex_symbolic()?);
                        out.push(pipeline_complex_numeric(*samples, cli.tol)?);
                    }
                    Side::Ladic => {
                        let ax = match axioms {
                            Axioms::Standard => KummerAxioms::standard(),
                            Axioms::None => KummerAxioms::empty(),
                        };
                        out.push(pipeline_ladic(&ax)?);
                    }
                }
            }
        }
        Verify::Integrality { eq, ell } => {
            let primes = if ell.is_empty() { vec![2, 3, 5, 7] } else { ell.clone() };
            out.push(integrality_report(*eq, &primes)?);
        }
        Verify::TwoCycle { side, max_degree } => {
            if *max_degree < 3 || *max_degree > MAX_DEGREE {
                return Err(Failure::Usage(format!("error: --max-degree must lie in 3..={MAX_DEGREE}\n")));
            }
            for s in side.sides() {
                out.push(verify_two_cycle(s, *max_degree)?);
            }
        }
        Verify::Numeric { .. } => unreachable!("handled by the caller"),
    }
    Ok(out)
}

fn complex_only(side: SideArg) -> Run<()> {
    if side == SideArg::Ladic {
        return Err(Failure::Usage("error: numeric mode exists only on the complex side\n".into()));
    }
    Ok(())
}

fn character_form_refs(f: &polylog_core::charconv::CharacterForms) -> [(&CharacterForm, &'static str); 3] {
    [
        (&f.chi2_reflection, "dilogarithm reflection in characters"),
        (&f.chi2_landen, "dilogarithm Landen equation in characters"),
        (&f.chi3_landen, "trilogarithm Landen equation in characters"),
    ]
}

fn numeric_report(id: &str, reference: &str, check: CheckId, n: usize, tol: f64) -> Run<Report> {
    let (lo, hi) = check.domain();
    let hi = hi.min(0.5);
    let mut steps = Vec::new();
    let mut worst = 0.0f64;
    for z in sample_points(n, lo, hi) {
        let row = numeric_check(check, z, tol * 1e-6)?;
        worst = worst.max(row.residual);
        steps.push(numeric_step(&format!("z = {z}"), reference, &format!("{} series terms", row.terms), row.residual, tol));
    }
    Ok(Report::new(id, reference, Residual::Numeric(worst), worst < tol, steps)
        .with_note(format!("tolerance {tol:e}")))
}

fn numeric_step(label: &str, reference: &str, expression: &str, residual: f64, tol: f64) -> Intermediate {
    Intermediate {
        label: label.into(),
        reference: reference.into(),
        expression: expression.into(),
        residual: Residual::Numeric(residual),
        status: Status::from_bool(residual < tol),
    }
}

fn pipeline_complex_numeric(n: usize, tol: f64) -> Run<Report> {
    let reference = "sum of the three P3 terms";
    let mut steps = Vec::new();
    let mut worst = 0.0f64;
    for z in sample_points(n, 0.05, 0.5) {
        let (r, terms) = pipeline_complex(z, tol * 1e-6)?;
        worst = worst.max(r);
        let shown: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        steps.push(numeric_step(&format!("z = {z}"), reference, &shown.join(" ; "), r, tol));
    }
    Ok(Report::new(
        "pipeline-complex-numeric",
        "complex P3 assembly of the trilogarithm equation",
        Residual::Numeric(worst),
        worst < tol,
        steps,
    )
    .with_note(format!("tolerance {tol:e}")))
}

fn error_term_report() -> Run<Report> {
    let syms = SideSymbols::new(Side::Ladic);
    let e = error_term(&syms)?;
    let lemma = syms.poly("-1/12*rho_1mz + 1/2*tchi2_z + 1/4*rho_z*rho_1mz");
    let residual = &e - &lemma;
    let zero = MPoly::zero();
    let steps = error_term_summands(&syms)?
        .iter()
        .zip(["phi3(L)", "phi3(L(Y,X))", "phi3(L(X,Z))"])
        .map(|(s, l)| Intermediate::exact(l, "summand of the error term", s, &zero))
        .collect();
    Ok(Report::new(
        "error-term",
        "l-adic error term",
        Residual::Exact(residual.to_string()),
        residual.is_zero(),
        steps,
    )
    .with_note(format!("E = {e}")))
}

fn integrality_report(eq: FormArg, primes: &[u64]) -> Run<Report> {
    let syms = SideSymbols::new(Side::Ladic);
    let forms = character_forms(&syms, &KummerAxioms::standard())?;
    let (form, name) = match eq {
        FormArg::Chi2Reflection => (&forms.chi2_reflection, "chi2-reflection"),
        FormArg::Chi2Landen => (&forms.chi2_landen, "chi2-landen"),
        FormArg::Chi3Landen => (&forms.chi3_landen, "chi3-landen"),
    };
    let chi = syms.reg.lookup("chi").expect("registered");
    let rows = integrality_table(&form.rhs_terms, primes, &[chi])?;
    let mut failing = Vec::new();
    let steps = rows
        .iter()
        .map(|r| {
            if !r.integral {
                failing.push(format!("{} at ell = {}", r.term, r.ell));
            }
            Intermediate {
                label: format!("ell = {}: {}", r.ell, r.term),
                reference: format!("residues mod {} ({} cases)", r.modulus, r.cases_checked),
                expression: match &r.witness {
                    Some(w) => format!("not integral at {w:?}"),
                    None => String::new(),
                },
                residual: Residual::Exact(if r.integral { "0".into() } else { "non-integral".into() }),
                status: Status::from_bool(r.integral),
            }
        })
        .collect();
    let residual = if failing.is_empty() { "0".to_string() } else { failing.join("; ") };
    Ok(Report::new(
        format!("integrality-{name}"),
        "Z_l-integrality of each right-hand-side term",
        Residual::Exact(residual),
        failing.is_empty(),
        steps,
    ))
}

fn mpl_depth_one(tol: f64) -> Run<Report> {
    let mut fail = None;
    let mut cases = 0;
    for k in 1..=6 {
        for x in [0.2, 0.5, 0.8] {
            cases += 1;
            let d = depth_one_gap(k, x, tol)?;
            if d >= tol {
                fail.get_or_insert(format!("k = {k}, x = {x}: {d:e}"));
            }
        }
    }
    let mut r = Report::new(
        "prop-mpl-depth-one",
        "depth-one multiple polylogarithm equals the classical one",
        Residual::Exact(if fail.is_none() { "0".into() } else { "nonzero".into() }),
        fail.is_none(),
        Vec::new(),
    )
    .with_note(format!("{cases} cases"));
    if let Some(f) = fail {
        r = r.with_note(f);
    }
    Ok(r)
}

/// `|Li_{(k)}(x) - Li_k(x)|` through the two evaluation entry points.
fn depth_one_gap(k: usize, x: f64, tol: f64) -> polylog_core::Result<f64> {
    let xb = ComplexVal::from_f64(x, DEFAULT_PRECISION).re;
    let a = polylog_num::mpl(&[k], &xb, tol * 1e-6)?;
    let b = polylog_num::polylog(k, &xb, tol * 1e-6)?;
    Ok(a.minus(&b).abs_f64())
}

fn numeric_rows(cli: &Cli, eqs: &[String], n: usize) -> Run<Output> {
    let ids: Vec<CheckId> = if eqs.is_empty() {
        CheckId::all(5)
    } else {
        eqs.iter()
            .map(|s| CheckId::parse(s).ok_or_else(|| Failure::Usage(format!("error: unknown equation id {s}\n"))))
            .collect::<Run<_>>()?
    };
    let mut rows: Vec<NumericRow> = Vec::new();
    for id in ids {
        let (lo, hi) = id.domain();
        for z in sample_points(n, lo, hi) {
            rows.push(numeric_check(id, z, cli.tol * 1e-6)?);
        }
    }
    rows.sort_by(|a, b| a.equation_id.cmp(&b.equation_id).then(a.z.total_cmp(&b.z)));
    let ok = rows.iter().all(|r| r.residual < cli.tol);
    let stdout = if cli.json {
        json(&rows)
    } else {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &rows {
            w.serialize(r).map_err(|e| Failure::Internal(format!("error: {e}\n")))?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Failure::Internal(format!("error: {e}\n")))?)
            .expect("utf-8")
    };
    Ok(Output {
        code: if ok { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    })
}

fn expand(cli: &Cli, which: Which) -> Run<Output> {
    let n = cli.degree;
    let a = match which {
        Which::G0 => fixture_path(&SideSymbols::new(Side::Complex), Point::Z, n)?,
        Which::Phi => fixture_phi(&SideSymbols::new(Side::Complex), n)?,
        Which::FSigma => fixture_path(&SideSymbols::new(Side::Ladic), Point::Z, n)?,
    };
    let stdout = if cli.json {
        let terms: Vec<(String, String)> = a.series.terms().map(|(w, c)| (w.to_string(), c.to_string())).collect();
        json(&serde_json::json!({
            "label": a.label,
            "side": a.side,
            "degree": n,
            "coefficients": terms,
        }))
    } else {
        format!("# {} through degree {n}\n{}", a.label, a.series.to_text())
    };
    Ok(Output { code: 0, stdout, stderr: String::new() })
}
