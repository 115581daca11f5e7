use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperbolic_cross::classes::ClassSpec;
use hyperbolic_cross::decomposition::{a_beta_norm, a_norm, lp_norm_detailed, sup_norm, DEFAULT_OVERSAMPLE};
use hyperbolic_cross::experiments::{run, AuditFamily, ExperimentConfig, ExperimentKind, ExperimentOutput};
use hyperbolic_cross::kernels::{a_kernel, bernoulli_multiplier, fejer_multi, vdp_multi};
use hyperbolic_cross::spectral::io::{format_coefficients, parse_coefficients};
use hyperbolic_cross::spectral::{MultiIndex, PointFamily, PointSet};
use hyperbolic_cross::witness::{
    box_witness, fooling_function, fooling_report, integration_fooler, FoolingOptions, IntegrationOptions,
    VanishingOptions,
};
use hyperbolic_cross::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "hcross", version, about = "Hyperbolic-cross analysis and fooling-function witnesses")]
#[command(arg_required_else_help = true)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Grid oversampling factor for L_p and sup norms.
    #[arg(long, global = true)]
    oversample: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat TOML experiment configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit kernel coefficients, or evaluate a kernel at a point.
    Kernel(KernelArgs),
    /// Build one witness and print its report.
    Witness(WitnessArgs),
    /// Run a rate experiment and write CSV.
    Rates(RatesArgs),
    /// Run the inequality audits and write CSV.
    Audit(AuditArgs),
    /// Norms of a coefficient file.
    Norms(NormsArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KernelKind {
    Fejer,
    Vdp,
    Band,
    Bernoulli,
}

#[derive(Args, Debug)]
struct KernelArgs {
    /// Kernel to emit or evaluate.
    #[arg(long, value_enum)]
    kind: KernelKind,
    /// Per-axis orders (Fejér, de la Vallée Poussin) or levels (band kernel).
    #[arg(long, value_delimiter = ',', required_unless_present = "frequency")]
    order: Vec<i64>,
    /// Smoothness of the Bernoulli multiplier.
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// Frequency at which to evaluate the Bernoulli multiplier.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    frequency: Vec<i64>,
    /// Evaluate at this point instead of emitting coefficients.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    at: Vec<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Construction {
    Fooling,
    Box,
    Integration,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    /// Block-sum fooling function, single-box witness or integration fooler.
    #[arg(long, value_enum, default_value = "fooling")]
    construction: Construction,
    /// Dimension.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Level sum `n` (box construction: isotropic box size `N`).
    #[arg(long, default_value_t = 6)]
    n: u32,
    /// Number of points; defaults to the largest admissible count.
    #[arg(long)]
    m: Option<usize>,
    /// Class integrability exponent.
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    /// Error norm exponent.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Class smoothness.
    #[arg(long, default_value_t = 1.5)]
    r: f64,
    /// Point family: uniform-random, lattice or tensor-grid.
    #[arg(long, default_value = "uniform-random")]
    family: PointFamily,
}

#[derive(Args, Debug)]
struct RatesArgs {
    /// qpT1, q1P2, ST1, qpL1 or inequalities; overrides the config file.
    #[arg(long)]
    experiment: Option<ExperimentKind>,
    /// Dimension.
    #[arg(long)]
    d: Option<usize>,
    /// Levels `n`, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u32>>,
    /// Smoothness-class integrability exponent.
    #[arg(long)]
    q: Option<f64>,
    /// Error norm exponent.
    #[arg(long)]
    p: Option<f64>,
    /// Smoothness of `H^r_q` and `W^r_q`.
    #[arg(long)]
    r: Option<f64>,
    /// Power weight of the `A_β` classes.
    #[arg(long)]
    a: Option<f64>,
    /// Log weight of the `A_β` classes; may be negative.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Quasi-norm exponent in (0, 1].
    #[arg(long)]
    beta: Option<f64>,
    /// Point family: uniform-random, lattice or tensor-grid.
    #[arg(long)]
    family: Option<PointFamily>,
    /// Add a `# generated` line at the top of the CSV.
    #[arg(long)]
    timestamp: bool,
}

#[derive(Args, Debug)]
struct AuditArgs {
    /// Audit families; repeat or comma separate. Default: all.
    #[arg(long, value_delimiter = ',')]
    family: Vec<AuditFamily>,
    /// Seeded trials per family.
    #[arg(long)]
    trials: Option<usize>,
    /// Dimension.
    #[arg(long)]
    d: Option<usize>,
    /// Integrability exponent where a family takes one.
    #[arg(long)]
    q: Option<f64>,
    /// Add a `# generated` line at the top of the CSV.
    #[arg(long)]
    timestamp: bool,
}

#[derive(Args, Debug)]
struct NormsArgs {
    /// Coefficient file: header `d=<d>`, then lines `k_1 … k_d re im`.
    input: PathBuf,
    /// L_p exponents to report.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    p: Vec<f64>,
    /// A_β exponents to report.
    #[arg(long, value_delimiter = ',', default_value = "1,0.5")]
    beta: Vec<f64>,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_config(cli: &Cli, kind: ExperimentKind) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_path(path).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line,
                message: format!("{}: {message}", path.display()),
            },
            other => other,
        })?,
        None => ExperimentConfig::new(kind),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(o) = cli.oversample {
        cfg.oversample = o;
    }
    if cli.out.is_some() {
        cfg.output = cli.out.clone();
    }
    Ok(cfg)
}

fn finish(cfg: &ExperimentConfig, output: &ExperimentOutput) -> Result<()> {
    emit(&cfg.output, &output.csv(cfg)?)?;
    for fit in &output.fits {
        eprintln!("fit {fit}");
    }
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn kernel(cli: &Cli, args: &KernelArgs) -> Result<()> {
    let orders = || -> Vec<u64> { args.order.iter().map(|&v| v.max(0) as u64).collect() };
    let poly = match args.kind {
        KernelKind::Fejer => fejer_multi(&orders())?,
        KernelKind::Vdp => vdp_multi(&orders())?,
        KernelKind::Band => a_kernel(&args.order)?,
        KernelKind::Bernoulli => {
            if args.frequency.is_empty() {
                return Err(Error::InvalidArgument("--kind bernoulli needs --frequency".into()));
            }
            let v = bernoulli_multiplier(args.r, &MultiIndex::new(args.frequency.clone()));
            return emit(&cli.out, &format!("{:.17e} {:.17e}\n", v.re, v.im));
        }
    };
    if args.at.is_empty() {
        emit(&cli.out, &format_coefficients(&poly))
    } else {
        let v = poly.evaluate(&args.at)?;
        emit(&cli.out, &format!("{:.17e} {:.17e}\n", v.re, v.im))
    }
}

fn witness(cli: &Cli, args: &WitnessArgs) -> Result<()> {
    let seed = cli.seed.unwrap_or(0);
    let oversample = cli.oversample.unwrap_or(DEFAULT_OVERSAMPLE);
    let mut text = String::new();
    match args.construction {
        Construction::Fooling => {
            let m = args.m.unwrap_or(1usize << args.n.saturating_sub(1));
            let xi = PointSet::generate(args.family, m, args.d, seed)?;
            let opts = FoolingOptions {
                oversample,
                ..FoolingOptions::with_seed(seed)
            };
            let ff = fooling_function(&xi, args.n, &opts)?;
            let rep = fooling_report(&ff, ClassSpec::Hrq { r: args.r, q: args.q }, args.p, oversample)?;
            text += &format!("construction = {}\nclass = {}\n", rep.construction, rep.class);
            text += &format!("d = {}\nn = {}\nm = {}\np = {}\n", rep.d, rep.n, rep.m, rep.p);
            text += &format!("norm_p = {:.12e}\ngauge = {:.12e}\nvalue = {:.12e}\n", rep.norm_p, rep.gauge, rep.value);
            text += &format!("class_scale = {:.12e}\nclass_value = {:.12e}\n", rep.class_scale, rep.class_value);
            text += &format!("predicted_term = {:.12e}\nratio = {:.12e}\n", rep.predicted_term, rep.ratio);
            text += &format!("vanishing_residual = {:.3e}\n", rep.vanishing_residual);
            text += &format!(
                "support_in_cross = {}\nblocks_unique = {}\ncutoff_holds = {}\n",
                ff.support_in_cross,
                ff.blocks_unique,
                ff.cutoff_holds()
            );
            for b in &ff.blocks {
                text += &format!(
                    "block {}: peak_ratio = {:.6e} dominant_ratio = {:.6e} null_dim = {}\n",
                    b.level, b.peak_ratio, b.dominant_ratio, b.vanishing.null_dim
                );
            }
            for w in &rep.warnings {
                text += &format!("warning = {w}\n");
            }
        }
        Construction::Box => {
            let n_box = vec![args.n; args.d];
            let theta: u64 = n_box.iter().map(|&v| 2 * v as u64 + 1).product();
            let m = args.m.unwrap_or((theta / 2) as usize);
            let xi = PointSet::generate(args.family, m, args.d, seed)?;
            let opts = VanishingOptions {
                seed,
                ..VanishingOptions::default()
            };
            let w = box_witness(&xi, &n_box, args.q, args.p, &opts)?;
            text += &format!("construction = box\nd = {}\nN = {}\nm = {m}\nq = {}\np = {}\n", args.d, args.n, w.q, w.p);
            text += &format!("box_size = {}\nvalue = {:.12e}\n", w.box_size, w.value);
            text += &format!("predicted_term = {:.12e}\nratio = {:.12e}\n", w.predicted_term, w.ratio);
            text += &format!("vanishing_residual = {:.3e}\n", w.vanishing_residual);
        }
        Construction::Integration => {
            let m = args.m.unwrap_or(1usize << args.n.saturating_sub(1));
            let xi = PointSet::generate(args.family, m, args.d, seed)?;
            let fool = integration_fooler(&xi, args.n, &IntegrationOptions::default())?;
            text += &format!("construction = integration\nd = {}\nn = {}\nm = {m}\n", fool.d, fool.n);
            text += &format!("mean = {:.12e}\npredicted_term = {:.12e}\nratio = {:.12e}\n", fool.mean, fool.predicted, fool.ratio);
            text += &format!("max_audit_sup = {:.6}\n", fool.max_audit_sup);
            for b in &fool.blocks {
                text += &format!(
                    "block {}: mean = {:.6e} audit_sup = {:.6} residual = {:.3e}\n",
                    b.level, b.mean, b.audit_sup, b.residual
                );
            }
            for w in &fool.warnings {
                text += &format!("warning = {w}\n");
            }
        }
    }
    emit(&cli.out, &text)
}

fn rates(cli: &Cli, args: &RatesArgs) -> Result<()> {
    let kind = args.experiment.unwrap_or(ExperimentKind::QpT1);
    let mut cfg = load_config(cli, kind)?;
    if cli.config.is_some() {
        if let Some(k) = args.experiment {
            if k != cfg.experiment {
                return Err(Error::InvalidArgument(format!(
                    "--experiment {k} conflicts with the config's {}",
                    cfg.experiment
                )));
            }
        }
    }
    if cfg.experiment == ExperimentKind::Inequalities {
        return Err(Error::InvalidArgument("use `hcross audit` for the inequality audits".into()));
    }
    macro_rules! set {
        ($($field:ident),*) => { $( if let Some(v) = args.$field.clone() { cfg.$field = v; } )* };
    }
    set!(d, n, q, p, r, a, b, beta, family);
    cfg.timestamp |= args.timestamp;
    cfg.validate()?;
    finish(&cfg, &run(&cfg)?)
}

fn audit(cli: &Cli, args: &AuditArgs) -> Result<()> {
    let mut cfg = load_config(cli, ExperimentKind::Inequalities)?;
    if cfg.experiment != ExperimentKind::Inequalities {
        return Err(Error::InvalidArgument(format!(
            "config names experiment {}, expected inequalities",
            cfg.experiment
        )));
    }
    if !args.family.is_empty() {
        cfg.families = args.family.clone();
    }
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(d) = args.d {
        cfg.d = d;
    }
    if let Some(q) = args.q {
        cfg.q = q;
    }
    cfg.timestamp |= args.timestamp;
    cfg.validate()?;
    let output = run(&cfg)?;
    finish(&cfg, &output)?;
    if output.violations.is_empty() {
        eprintln!("violations: 0");
        Ok(())
    } else {
        for v in &output.violations {
            eprintln!("violation: {v}");
        }
        Err(Error::Solver(format!("{} inequality violations", output.violations.len())))
    }
}

fn norms(cli: &Cli, args: &NormsArgs) -> Result<()> {
    let f = parse_coefficients(&fs::read_to_string(&args.input)?)?;
    let oversample = cli.oversample.unwrap_or(DEFAULT_OVERSAMPLE);
    let mut text = format!("terms = {}\n", f.len());
    for &p in &args.p {
        let est = lp_norm_detailed(&f, p, oversample)?;
        let note = match (est.exact, est.refinement_delta) {
            (true, _) => " (exact)".to_string(),
            (false, Some(delta)) => format!(" (refinement delta {delta:.3e})"),
            (false, None) => String::new(),
        };
        text += &format!("L{p} = {:.15e}{note}\n", est.value);
    }
    let sup = sup_norm(&f, oversample)?;
    text += &format!("sup = {:.15e} (grid {:.15e})\n", sup.value(), sup.grid_max);
    text += &format!("A = {:.15e}\n", a_norm(&f));
    for &b in &args.beta {
        text += &format!("A_{b} = {:.15e}\n", a_beta_norm(&f, b)?);
    }
    emit(&cli.out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Kernel(a) => kernel(&cli, a),
        Command::Witness(a) => witness(&cli, a),
        Command::Rates(a) => rates(&cli, a),
        Command::Audit(a) => audit(&cli, a),
        Command::Norms(a) => norms(&cli, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Parse { .. }) | Err(e @ Error::InvalidArgument(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
