//! `xmscarf`: tabulate exceptional Jacobi polynomials, Scarf potentials and
//! their spectra, and run the verification suites.
//!
//! Exit status: 0 success, 1 numerical or verification failure, 2 usage error.

mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xmscarf::eop::{admissible, eop_eval, eop_ode_residual_relative, EopIndex};
use xmscarf::jacobi::{jacobi_eval, JacobiParam};
use xmscarf::oracle::{hamiltonian_residual, solve_spectrum_richardson, GridSpec};
use xmscarf::potentials::{
    bound_state, energy, hyperbolic_bound_count, potential_value, Family, PotentialSpec,
};
use xmscarf::suites::{self, Suite, SuiteOptions, UserParams};
use xmscarf::{Complex64, Error};

use table::{Cell, Format, Table};

const QUAD_ORDER_VAR: &str = "XMSCARF_QUAD_ORDER";
/// Largest relative error `spectrum --oracle` accepts.
const ORACLE_TOLERANCE: f64 = 1e-3;
const DEFAULT_TRIG_LEVELS: u32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "xmscarf",
    version,
    about = "Exceptional Jacobi polynomials and rationally extended Scarf potentials"
)]
struct Cli {
    /// Output format: CSV with a header, or one JSON object per line.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,

    /// Write the table to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classical Jacobi polynomial P_n^(a,b) on a grid.
    Poly {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        /// Grid as start:stop:step.
        #[arg(long, allow_hyphen_values = true, default_value = "-1:1:0.1")]
        xs: String,
    },
    /// Exceptional X_m Jacobi polynomial on a grid.
    Eop {
        /// Degree, at least m. Defaults to m.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true, default_value = "-1:1:0.1")]
        xs: String,
        /// Append the relative residual of the second-order ODE.
        #[arg(long)]
        check_ode: bool,
    },
    /// Potential, and optionally one bound state, on a grid.
    Potential {
        #[command(flatten)]
        params: PotentialArgs,
        #[arg(long, allow_hyphen_values = true, default_value = "-1.5:1.5:0.1")]
        xs: String,
        /// Also tabulate the wavefunction of level n.
        #[arg(long)]
        n: Option<u32>,
    },
    /// Bound-state energies, optionally checked against a numerical oracle.
    Spectrum {
        #[command(flatten)]
        params: PotentialArgs,
        /// Number of levels from n = m. Hyperbolic instances stop at the bound count.
        #[arg(long)]
        levels: Option<u32>,
        /// Compare with finite-difference diagonalization (residual check for complex potentials).
        #[arg(long)]
        oracle: bool,
        /// Interior points of the coarse oracle grid.
        #[arg(long, default_value_t = 4000)]
        points: usize,
    },
    /// Run a named verification suite.
    Verify {
        /// identities, orthogonality, ode, shape-invariance, pt, quasi-hermitian, oracle or all.
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum, default_value = "trig")]
        family: FamilyArg,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.3)]
        eps: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Trig,
    Shifted,
    Hyper,
}

#[derive(Args, Debug)]
struct PotentialArgs {
    #[arg(long, value_enum, default_value = "trig")]
    family: FamilyArg,
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long, allow_hyphen_values = true, default_value_t = 4.0)]
    a: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.5)]
    b: f64,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Imaginary shift of the shifted family.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.3)]
    eps: f64,
}

impl FamilyArg {
    fn family(self, eps: f64) -> Family {
        match self {
            FamilyArg::Trig => Family::TrigScarf,
            FamilyArg::Shifted => Family::ShiftedTrigScarf { eps },
            FamilyArg::Hyper => Family::HyperbolicScarf,
        }
    }
}

impl PotentialArgs {
    fn spec(&self) -> Result<PotentialSpec, Failure> {
        Ok(PotentialSpec::new(
            self.family.family(self.eps),
            self.m,
            self.a,
            self.b,
            self.k,
        )?)
    }
}

/// A diagnostic together with its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
    fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_)
            | Error::Inadmissible { .. }
            | Error::OutOfDomain { .. }
            | Error::NoSuchBoundState { .. } => 2,
            Error::SingularPoint { .. }
            | Error::DegenerateParameter(_)
            | Error::ConvergenceFailure(_) => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::numeric(format!("write failed: {e}"))
    }
}

/// Output of a subcommand: the table, and whether every check passed.
struct Outcome {
    table: Table,
    ok: bool,
    summary: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let outcome = match &cli.command {
        Command::Poly { n, a, b, xs } => poly(*n, *a, *b, &parse_grid(xs)?)?,
        Command::Eop {
            n,
            a,
            b,
            m,
            xs,
            check_ode,
        } => eop(n.unwrap_or(*m), *a, *b, *m, &parse_grid(xs)?, *check_ode)?,
        Command::Potential { params, xs, n } => potential(&params.spec()?, &parse_grid(xs)?, *n)?,
        Command::Spectrum {
            params,
            levels,
            oracle,
            points,
        } => spectrum(&params.spec()?, *levels, *oracle, *points)?,
        Command::Verify {
            suite,
            family,
            m,
            a,
            b,
            k,
            eps,
        } => {
            let suite: Suite = suite.parse()?;
            let user = (m.is_some() || a.is_some() || b.is_some()).then(|| UserParams {
                family: family.family(*eps),
                m: m.unwrap_or(0),
                a: a.unwrap_or(4.0),
                b: b.unwrap_or(1.5),
                k: *k,
            });
            if let Some(u) = &user {
                PotentialSpec::new(u.family, u.m, u.a, u.b, u.k)?;
            }
            let opts = SuiteOptions {
                quad_order: quad_order_from_env()?,
                ..SuiteOptions::default()
            };
            verify(suite, user.as_ref(), &opts)
        }
    };
    emit(cli, &outcome.table)?;
    if let Some(s) = outcome.summary {
        eprintln!("{s}");
    }
    Ok(outcome.ok)
}

fn emit(cli: &Cli, table: &Table) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| Failure::usage(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            table.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            table.write(cli.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn quad_order_from_env() -> Result<usize, Failure> {
    match std::env::var(QUAD_ORDER_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(SuiteOptions::default().quad_order),
        Err(e) => Err(Failure::usage(format!("{QUAD_ORDER_VAR}: {e}"))),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(q) if q >= 10 => Ok(q),
            _ => Err(Failure::usage(format!(
                "{QUAD_ORDER_VAR} must be an integer >= 10, got '{s}'"
            ))),
        },
    }
}

/// Parses `start:stop:step` with `step > 0`; the last point is `stop` exactly.
fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let bad = |why: &str| Failure::usage(format!("grid '{s}': {why} (expected start:stop:step)"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("three fields required"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse::<f64>()
            .map_err(|_| bad(&format!("'{p}' is not a number")))?;
        if !slot.is_finite() {
            return Err(bad("fields must be finite"));
        }
    }
    let [start, stop, step] = v;
    if step <= 0.0 {
        return Err(bad("step must be positive"));
    }
    if stop < start {
        return Err(bad("stop must not be below start"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    if count > 10_000_000 {
        return Err(bad("too many points"));
    }
    let mut xs: Vec<f64> = (0..=count).map(|i| start + step * i as f64).collect();
    if let Some(last) = xs.last_mut() {
        if (stop - *last).abs() <= 1e-9 * step {
            *last = stop;
        }
    }
    Ok(xs)
}

fn poly(n: u32, a: f64, b: f64, xs: &[f64]) -> Result<Outcome, Failure> {
    let p = JacobiParam::new(n, a, b)?;
    let mut table = Table::new(&["x", "P"]);
    for &x in xs {
        table.push(vec![
            x.into(),
            jacobi_eval(&p, Complex64::new(x, 0.0)).re.into(),
        ]);
    }
    Ok(Outcome {
        table,
        ok: true,
        summary: None,
    })
}

fn eop(n: u32, a: f64, b: f64, m: u32, xs: &[f64], check_ode: bool) -> Result<Outcome, Failure> {
    if m >= 1 && !admissible(a, b, m) {
        return Err(Error::Inadmissible { a, b, m }.into());
    }
    let idx = EopIndex::new(a, b, m, n)?;
    let columns: &[&'static str] = if check_ode {
        &["x", "P_hat", "ode_residual"]
    } else {
        &["x", "P_hat"]
    };
    let mut table = Table::new(columns);
    for &x in xs {
        let mut row: Vec<Cell> = vec![x.into(), eop_eval(&idx, x)?.into()];
        if check_ode {
            row.push(eop_ode_residual_relative(&idx, x)?.into());
        }
        table.push(row);
    }
    Ok(Outcome {
        table,
        ok: true,
        summary: None,
    })
}

fn potential(spec: &PotentialSpec, xs: &[f64], n: Option<u32>) -> Result<Outcome, Failure> {
    let state = n.map(|n| bound_state(spec, n)).transpose()?;
    let columns: &[&'static str] = if state.is_some() {
        &["x", "V_re", "V_im", "psi_re", "psi_im"]
    } else {
        &["x", "V_re", "V_im"]
    };
    let mut table = Table::new(columns);
    for &x in xs {
        let v = potential_value(spec, x)?;
        let mut row: Vec<Cell> = vec![x.into(), v.re.into(), v.im.into()];
        if let Some(st) = &state {
            let psi = st.psi(x)?;
            row.push(psi.re.into());
            row.push(psi.im.into());
        }
        table.push(row);
    }
    Ok(Outcome {
        table,
        ok: true,
        summary: None,
    })
}

fn spectrum(
    spec: &PotentialSpec,
    levels: Option<u32>,
    oracle: bool,
    points: usize,
) -> Result<Outcome, Failure> {
    let m = spec.m();
    let hyper = spec.family() == Family::HyperbolicScarf;
    let count = if hyper {
        let bound = hyperbolic_bound_count(spec)?;
        levels.map_or(bound, |l| l.min(bound))
    } else {
        levels.unwrap_or(DEFAULT_TRIG_LEVELS)
    };
    if count == 0 && !hyper {
        return Err(Failure::usage("--levels must be at least 1"));
    }
    let analytic = (m..m + count)
        .map(|n| energy(spec, n))
        .collect::<Result<Vec<_>, _>>()?;

    let mut columns = vec!["n", "energy"];
    if oracle {
        columns.extend(["numeric", "rel_error"]);
    }
    if hyper {
        columns.push("bound_count");
    }
    let mut table = Table::new(&columns);

    let numeric = if oracle {
        Some(oracle_levels(spec, count, points)?)
    } else {
        None
    };
    let mut worst: f64 = 0.0;
    for (j, &e) in analytic.iter().enumerate() {
        let mut row: Vec<Cell> = vec![(m + j as u32).into(), e.into()];
        if let Some(num) = &numeric {
            let (value, err) = num[j];
            worst = worst.max(err);
            row.push(value.into());
            row.push(err.into());
        }
        if hyper {
            row.push(count.into());
        }
        table.push(row);
    }
    let ok = worst <= ORACLE_TOLERANCE;
    let summary = oracle.then(|| {
        format!(
            "oracle: max relative error {} ({} {})",
            table::g17(worst),
            if ok { "<=" } else { ">" },
            ORACLE_TOLERANCE
        )
    });
    Ok(Outcome { table, ok, summary })
}

/// `(numeric value, relative error)` per level. Real potentials are
/// diagonalized; complex ones get the Rayleigh quotient of the exact state.
fn oracle_levels(
    spec: &PotentialSpec,
    count: u32,
    points: usize,
) -> Result<Vec<(f64, f64)>, Failure> {
    let m = spec.m();
    let complex = match spec.family() {
        Family::ShiftedTrigScarf { .. } => true,
        Family::HyperbolicScarf => spec.a() != spec.b(),
        Family::TrigScarf => false,
    };
    if complex {
        return (m..m + count)
            .map(|n| {
                let grid = GridSpec::for_state(spec, n, points)?;
                let r = hamiltonian_residual(spec, n, &grid)?;
                Ok((
                    r.rayleigh.re,
                    (r.rayleigh - r.energy).norm() / r.energy.abs(),
                ))
            })
            .collect();
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let grid = GridSpec::for_potential(spec, points)?;
    let result = solve_spectrum_richardson(spec, &grid, count as usize)?;
    (m..m + count)
        .zip(result.eigenvalues)
        .map(|(n, v)| {
            let e = energy(spec, n)?;
            Ok((v, (v - e).abs() / e.abs()))
        })
        .collect()
}

fn verify(suite: Suite, user: Option<&UserParams>, opts: &SuiteOptions) -> Outcome {
    let report = suites::run(suite, user, opts);
    let mut table = Table::new(&[
        "suite",
        "name",
        "measured",
        "tolerance",
        "comparison",
        "passed",
        "detail",
    ]);
    for c in &report.checks {
        let comparison = match c.comparison {
            xmscarf::report::Comparison::AtMost => "at_most",
            xmscarf::report::Comparison::AtLeast => "at_least",
        };
        table.push(vec![
            report.suite.as_str().into(),
            c.name.as_str().into(),
            c.measured.into(),
            c.tolerance.into(),
            comparison.into(),
            c.passed.into(),
            c.detail.as_str().into(),
        ]);
    }
    let failures = report.checks.iter().filter(|c| !c.passed).count();
    let summary = format!("{suite}: {} checks, {failures} failed", report.checks.len());
    Outcome {
        table,
        ok: failures == 0,
        summary: Some(summary),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_stop_exactly() {
        let xs = parse_grid("-1:1:0.1").unwrap();
        assert_eq!(xs.len(), 21);
        assert_eq!(xs[0], -1.0);
        assert_eq!(*xs.last().unwrap(), 1.0);
        assert_eq!(parse_grid("0:0:1").unwrap(), vec![0.0]);
        assert_eq!(parse_grid("0:1:0.3").unwrap().len(), 4);
    }

    #[test]
    fn grid_rejects_bad_syntax() {
        for s in ["0:1", "0:1:0", "0:1:-1", "1:0:0.1", "a:1:0.1", "0:inf:1"] {
            assert_eq!(parse_grid(s).unwrap_err().code, 2, "{s}");
        }
    }

    #[test]
    fn error_codes() {
        assert_eq!(
            Failure::from(Error::Inadmissible {
                a: 1.0,
                b: 1.0,
                m: 1
            })
            .code,
            2
        );
        assert_eq!(
            Failure::from(Error::SingularPoint {
                x: 0.0,
                what: "P".into()
            })
            .code,
            1
        );
    }
}
