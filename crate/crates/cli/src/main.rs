//! `ternary`: evaluate expressions, run the law suite, measure norms and
//! tabulate covariance kernels.

mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ternary_grassmann::berezin::berezin_integral;
use ternary_grassmann::format::TextCoefficient;
use ternary_grassmann::hilbert::{check_vage, h_norm, p_norm, VageReport, WeightProfile};
use ternary_grassmann::index::MultiIndex;
use ternary_grassmann::kernels::{
    differentiability_check, read_density_table, CovarianceGrid, KernelMethod, KernelOptions,
    SpectralDensity,
};
use ternary_grassmann::laws::run_suite;
use ternary_grassmann::{
    parse_element, to_json, Complex64, Element, Error, Exact, ExecutionMode, PhaseRule,
};

use config::Config;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed flags, config or grids.
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] Error),
    /// A check ran and reported a violation.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Engine(Error::Parse { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ternary", version, about = "Ternary Grassmann algebra toolkit")]
struct Cli {
    /// Flat key = value file with defaults for numeric options.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its canonical form.
    Eval {
        expr: String,
        /// Use floating-point coefficients.
        #[arg(long)]
        float: bool,
        /// Print a JSON record instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the seeded law suite.
    Laws {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        sequential: bool,
        #[arg(long, hide = true)]
        inject_sigma_bug: bool,
    },
    /// Norms of an element: `H_{-p}` and optionally the `r`-norm.
    Norm {
        expr: String,
        /// Level `p` of `H_{-p}`; negative values give `H_{|p|}`.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        p: i32,
        /// Also print the coefficient `r`-norm.
        #[arg(long)]
        order: Option<f64>,
        #[arg(long)]
        rate: Option<f64>,
    },
    /// Check `‖fg‖_{H_{-p}} <= C ‖f‖_{H_{-q}} ‖g‖_{H_{-p}}` for both orders.
    VageCheck {
        f: String,
        g: String,
        #[arg(long)]
        p: i32,
        #[arg(long)]
        q: i32,
        #[arg(long)]
        rate: Option<f64>,
    },
    /// Berezin integral `∫ d e^ν g`.
    Berezin {
        /// Monomial `e^ν`, e.g. `e[1]^2*e[3]`.
        #[arg(long)]
        index: String,
        #[arg(long)]
        input: String,
        #[arg(long)]
        float: bool,
    },
    /// Tabulate a covariance kernel as CSV.
    Covariance {
        /// `bm`, `fbm:H=<v>` or `table:<path>`.
        #[arg(long)]
        density: String,
        /// `a,b,c` or `start:end:count`.
        #[arg(long)]
        t: String,
        /// Defaults to the `t` grid.
        #[arg(long)]
        s: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Quadrature)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        kernel: KernelArgs,
    },
    /// Finite-difference derivative check of the truncated process element.
    DiffCheck {
        #[arg(long)]
        density: String,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        p: i32,
        #[arg(long)]
        rate: Option<f64>,
        #[command(flatten)]
        kernel: KernelArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Quadrature,
    Series,
}

#[derive(Args, Debug)]
struct KernelArgs {
    /// Frequency cutoff U.
    #[arg(long)]
    cutoff: Option<f64>,
    #[arg(long)]
    grid_points: Option<usize>,
    /// Hermite truncation N.
    #[arg(long)]
    hermite_terms: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
}

impl KernelArgs {
    fn resolve(&self, cfg: &Config) -> Result<KernelOptions, CliError> {
        let d = KernelOptions::default();
        Ok(KernelOptions {
            cutoff: cfg.pick(self.cutoff, "cutoff", d.cutoff)?,
            grid_points: cfg.pick(self.grid_points, "grid_points", d.grid_points)?,
            hermite_terms: cfg.pick(self.hermite_terms, "hermite_terms", d.hermite_terms)?,
            tolerance: cfg.pick(self.tolerance, "tolerance", d.tolerance)?,
        })
    }
}

fn weights(cfg: &Config, rate: Option<f64>) -> Result<WeightProfile, CliError> {
    Ok(WeightProfile::linear(cfg.pick(rate, "rate", 1.0)?)?)
}

fn exec(sequential: bool) -> ExecutionMode {
    if sequential {
        ExecutionMode::Sequential
    } else {
        ExecutionMode::Parallel
    }
}

fn parse_grid(arg: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Input(format!("bad grid `{arg}`: use a,b,c or start:end:count"));
    let parts: Vec<&str> = arg.split(':').collect();
    let grid = match parts.as_slice() {
        [start, end, count] => {
            let (a, b): (f64, f64) = (start.trim().parse().map_err(|_| bad())?, end.trim().parse().map_err(|_| bad())?);
            let n: usize = count.trim().parse().map_err(|_| bad())?;
            match n {
                0 => return Err(bad()),
                1 => vec![a],
                _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
            }
        }
        [list] => list
            .split(',')
            .map(|v| v.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?,
        _ => return Err(bad()),
    };
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    Ok(grid)
}

fn parse_density(arg: &str) -> Result<SpectralDensity, CliError> {
    if arg == "bm" {
        return Ok(SpectralDensity::brownian());
    }
    if let Some(h) = arg.strip_prefix("fbm:H=") {
        let h: f64 = h
            .parse()
            .map_err(|_| CliError::Input(format!("bad Hurst index in `{arg}`")))?;
        return Ok(SpectralDensity::fbm(h)?);
    }
    if let Some(path) = arg.strip_prefix("table:") {
        let file = File::open(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        return Ok(SpectralDensity::tabulated(&read_density_table(file)?)?);
    }
    Err(CliError::Input(format!(
        "unknown density `{arg}`: expected bm, fbm:H=<v> or table:<path>"
    )))
}

fn monomial(text: &str) -> Result<MultiIndex, CliError> {
    let z = parse_element::<Exact>(text)?;
    let mut terms = z.terms();
    match (terms.next(), terms.next()) {
        (Some((idx, c)), None) if *c == <Exact as ternary_grassmann::Coefficient>::one() => Ok(idx.clone()),
        _ => Err(CliError::Input(format!("`{text}` is not a single monomial e^ν"))),
    }
}

fn render<C: TextCoefficient>(z: &Element<C>, json: bool) -> String {
    if json {
        to_json(z)
    } else {
        z.to_string()
    }
}

fn vage_row(out: &mut impl Write, label: &str, r: &VageReport) -> io::Result<()> {
    writeln!(out, "{label},{:e},{:e},{:e},{:e},{}", r.lhs, r.rhs, r.constant, r.margin, r.holds)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let io = |e: io::Error| CliError::Engine(Error::Io(e.to_string()));
    match cli.command {
        Command::Eval { expr, float, json } => {
            let text = if float {
                render(&parse_element::<Complex64>(&expr)?, json)
            } else {
                render(&parse_element::<Exact>(&expr)?, json)
            };
            writeln!(out, "{text}").map_err(io)?;
        }
        Command::Laws {
            seed,
            trials,
            sequential,
            inject_sigma_bug,
        } => {
            let seed = cfg.pick(seed, "seed", 1)?;
            let trials = cfg.pick(trials, "trials", 100)?;
            let rule = if inject_sigma_bug {
                PhaseRule::PairCountBug
            } else {
                PhaseRule::Canonical
            };
            let outcomes = run_suite(seed, trials, exec(sequential), rule);
            let mut first = None;
            for o in &outcomes {
                match &o.failure {
                    None => writeln!(out, "PASS {} ({} trials)", o.name, o.trials),
                    Some(f) => writeln!(out, "FAIL {}: {f}", o.name),
                }
                .map_err(io)?;
                if first.is_none() && !o.passed() {
                    first = Some(o.name);
                }
            }
            if let Some(name) = first {
                return Err(CliError::Failed(format!("law `{name}` failed (seed {seed})")));
            }
        }
        Command::Norm { expr, p, order, rate } => {
            let w = weights(&cfg, rate)?;
            let z = parse_element::<Exact>(&expr)?;
            writeln!(out, "h_norm(p={p}) = {}", h_norm(&z, -p, &w)?).map_err(io)?;
            if let Some(r) = order {
                writeln!(out, "p_norm(r={r}) = {}", p_norm(&z, r)?).map_err(io)?;
            }
        }
        Command::VageCheck { f, g, p, q, rate } => {
            let w = weights(&cfg, rate)?;
            let (f, g) = (parse_element::<Exact>(&f)?, parse_element::<Exact>(&g)?);
            let check = check_vage(&f, &g, p, q, &w)?;
            writeln!(out, "product,lhs,rhs,constant,margin,holds").map_err(io)?;
            vage_row(out, "fg", &check.forward).map_err(io)?;
            vage_row(out, "gf", &check.mirrored).map_err(io)?;
            if !check.holds() {
                return Err(CliError::Failed("inequality violated".into()));
            }
        }
        Command::Berezin { index, input, float } => {
            let nu = monomial(&index)?;
            let text = if float {
                berezin_integral(&nu, &parse_element::<Complex64>(&input)?).to_string()
            } else {
                berezin_integral(&nu, &parse_element::<Exact>(&input)?).to_string()
            };
            writeln!(out, "{text}").map_err(io)?;
        }
        Command::Covariance {
            density,
            t,
            s,
            mode,
            out: path,
            sequential,
            kernel,
        } => {
            let opts = kernel.resolve(&cfg)?;
            let m = parse_density(&density)?;
            let t = parse_grid(&t)?;
            let s = match s {
                Some(s) => parse_grid(&s)?,
                None => t.clone(),
            };
            let method = match mode {
                Mode::Quadrature => KernelMethod::Quadrature,
                Mode::Series => KernelMethod::Series(opts.hermite_terms),
            };
            let grid = CovarianceGrid::compute(&m, &t, &s, method, &opts, exec(sequential))?;
            if t == s {
                let psd = grid.psd_report()?;
                if !psd.ok {
                    return Err(CliError::Engine(Error::DomainViolation(format!(
                        "kernel grid is not positive semidefinite: {psd:?}"
                    ))));
                }
            }
            match path {
                Some(p) => {
                    let file = File::create(&p).map_err(io)?;
                    grid.write_csv(BufWriter::new(file))?;
                }
                None => grid.write_csv(&mut *out)?,
            }
        }
        Command::DiffCheck {
            density,
            t,
            p,
            rate,
            kernel,
        } => {
            let opts = kernel.resolve(&cfg)?;
            let w = weights(&cfg, rate)?;
            let m = parse_density(&density)?;
            let report = differentiability_check(&m, t, p, &w, opts.hermite_terms, &opts)?;
            let ratios = report.decay_ratios();
            writeln!(out, "h,error,ratio").map_err(io)?;
            for (k, row) in report.rows.iter().enumerate() {
                let ratio = k.checked_sub(1).map(|j| format!("{:e}", ratios[j])).unwrap_or_default();
                writeln!(out, "{:e},{:e},{ratio}", row.h, row.error).map_err(io)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
