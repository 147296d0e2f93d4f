use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use logit_priors::distributions::{BetaShape, LogisticParams, NormalParams};
use logit_priors::error::Error;
use logit_priors::eta_moments::{eta_mean_var, eta_mean_var_analytic};
use logit_priors::genfunc::{
    genfunc_curves, half_logistic_laplace, logistic_laplace_one_sided, sample_root_logistic,
};
use logit_priors::induced::{induce_beta_density, induce_theta_density, ricker_demo, DensityFn, Pushforward, RickerPriors};
use logit_priors::inference::{logistic_mle, mh_sample, summarize, Dataset, McmcConfig};
use logit_priors::occupancy::{
    fit_occupancy, induced_densities_csv, induced_occupancy_priors, simulate_occupancy, OccupancySettings,
    SPOCC_PRIOR_SD,
};
use logit_priors::output::{write_all, Provenance};
use logit_priors::prior::{
    beta_matched_priors, beta_shapes_from_mean_cv, logistic_matched_priors, vague_priors, weighted_priors,
    PriorSpec, VAGUE_SD,
};
use logit_priors::sim::{run_study, ScenarioSpec};
use logit_priors::stats;

const SIMULATE_HELP: &str = "\
Config files are flat `key = value` lines; `#` starts a comment.
Keys (all optional):
  scenario      scenario1 | scenario23             (default scenario1)
  n             observations per replicate         (default 15)
  replicates    number of replicated datasets      (default 100)
  seed          master seed                        (default 1; --seed overrides)
  intercept     generating intercept
  betas         comma list of generating coefficients, intercept first
  covariates    Gamma covariates as shape:second;shape:second;...
  gamma_param   rate | scale, meaning of `second`  (default rate)
  priors        comma list of vague, logistic, beta_matched, weighted
  vague_sd      sd of the vague prior              (default 1000)
  target_mean, target_cv  or  target_alpha, target_beta
                Beta target for beta_matched / weighted (default Beta(2.633, 1.129))
  k             intercept weight for weighted      (default 0.4)
  chains, iterations, burnin   MCMC settings       (default 4, 5000, 2000)";

#[derive(Parser, Debug)]
#[command(name = "logit-priors", version, about = "Coefficient priors that induce a target distribution on θ")]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Density of θ induced by a coefficient prior, or of β induced by a θ prior.
    Induce(InduceArgs),
    /// Build a coefficient prior specification and write it as JSON.
    BuildPrior(BuildPriorArgs),
    /// Mean and variance of logit(θ) for θ ~ Beta(α, β).
    EtaMoments(TargetArgs),
    /// Draw from the law whose CF is the (p+1)-th root of the Logistic(0,1) CF.
    SampleRoot(SampleRootArgs),
    /// Root MGF and CF curves on a t grid for several p.
    GenfuncCurves(CurvesArgs),
    /// Laplace transform of the half-logistic density.
    LaplaceHalf(LaplaceArgs),
    /// Fit Bayesian logistic regression to a CSV dataset.
    Fit(FitArgs),
    /// Run a replicated simulation study from a config file.
    #[command(after_help = SIMULATE_HELP)]
    Simulate(SimulateArgs),
    /// Simulate and fit a single-season occupancy model.
    Occupancy(OccupancyArgs),
    /// Induced priors for two Ricker model parameterizations.
    RickerDemo(RickerArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    Theta,
    Beta,
}

#[derive(Args, Debug)]
struct InduceArgs {
    #[arg(long, value_enum)]
    direction: Direction,
    /// normal:MEAN,VARIANCE | logistic:MU,S | uniform | beta:ALPHA,BETA
    #[arg(long)]
    prior: String,
    /// Number of grid points.
    #[arg(long, default_value_t = 513)]
    grid: usize,
    /// Half-width of the β grid (beta direction).
    #[arg(long, default_value_t = 10.0)]
    half_width: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Vague,
    Logistic,
    BetaMatched,
    Weighted,
}

#[derive(Args, Debug)]
struct TargetArgs {
    #[arg(long, requires = "cv", conflicts_with_all = ["alpha", "beta"])]
    mean: Option<f64>,
    #[arg(long, requires = "mean")]
    cv: Option<f64>,
    #[arg(long, requires = "beta")]
    alpha: Option<f64>,
    #[arg(long, requires = "alpha")]
    beta: Option<f64>,
}

impl TargetArgs {
    fn shape(&self) -> Result<Option<BetaShape>, CliError> {
        Ok(match (self.mean, self.cv, self.alpha, self.beta) {
            (Some(m), Some(c), _, _) => Some(beta_shapes_from_mean_cv(m, c)?),
            (_, _, Some(a), Some(b)) => Some(BetaShape::new(a, b)?),
            _ => None,
        })
    }
}

#[derive(Args, Debug)]
struct BuildPriorArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Number of covariates.
    #[arg(long)]
    p: usize,
    #[command(flatten)]
    target: TargetArgs,
    /// Intercept share of the η variance (weighted), in (0, 1).
    #[arg(long)]
    k: Option<f64>,
    /// Coefficient sd (vague).
    #[arg(long, default_value_t = VAGUE_SD)]
    sd: f64,
}

#[derive(Args, Debug)]
struct SampleRootArgs {
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 100_000)]
    n: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Args, Debug)]
struct CurvesArgs {
    /// Comma-separated covariate counts.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<usize>,
    #[arg(long, default_value_t = 0.95)]
    tmax: f64,
    /// Grid points on [−tmax, tmax].
    #[arg(long, default_value_t = 191)]
    points: usize,
}

#[derive(Args, Debug)]
struct LaplaceArgs {
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    #[arg(long, default_value_t = 1.0)]
    s: f64,
}

#[derive(Args, Debug)]
struct McmcArgs {
    #[arg(long, default_value_t = 4)]
    chains: usize,
    /// Iterations per chain, burn-in included.
    #[arg(long, default_value_t = 5000)]
    iterations: usize,
    #[arg(long, default_value_t = 2000)]
    burnin: usize,
}

impl McmcArgs {
    fn config(&self) -> McmcConfig {
        McmcConfig {
            chains: self.chains,
            iterations: self.iterations,
            burnin: self.burnin,
        }
    }
}

#[derive(Args, Debug)]
struct FitArgs {
    /// CSV with header y,x1,...; `#` lines are skipped.
    #[arg(long)]
    data: PathBuf,
    /// PriorSpec JSON (as written by build-prior).
    #[arg(long, conflicts_with = "kind")]
    prior: Option<PathBuf>,
    /// Build the prior for the data's covariate count instead.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[command(flatten)]
    target: TargetArgs,
    #[arg(long)]
    k: Option<f64>,
    #[command(flatten)]
    mcmc: McmcArgs,
    #[arg(long)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config's master seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OccPrior {
    Logistic,
    Vague,
    Spocc,
}

#[derive(Args, Debug)]
struct OccupancyArgs {
    #[arg(long, default_value_t = 200)]
    sites: usize,
    #[arg(long, default_value_t = 3)]
    visits: usize,
    /// Occupancy coefficients, intercept first.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0.3,0.8,-0.5,0.2")]
    psi: Vec<f64>,
    /// Detection coefficients, intercept first.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0.2,0.5,-0.4,0.3")]
    det: Vec<f64>,
    #[arg(long, value_enum, default_value = "logistic")]
    prior: OccPrior,
    /// sd for --prior vague.
    #[arg(long, default_value_t = 40.0)]
    vague_sd: f64,
    /// Hold detection probability fixed instead of estimating it.
    #[arg(long)]
    fix_detection: Option<f64>,
    #[arg(long, default_value_t = 100_000)]
    induced_draws: usize,
    /// Only export the induced priors.
    #[arg(long)]
    induced_only: bool,
    #[command(flatten)]
    mcmc: McmcArgs,
    #[arg(long)]
    seed: u64,
}

#[derive(Args, Debug)]
struct RickerArgs {
    #[arg(long, default_value_t = 100_000)]
    n: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::Unsupported(_)
            | Error::InfeasibleVariance { .. }
            | Error::DimensionMismatch { .. }
            | Error::ConstantColumn(_)
            | Error::Precondition(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_input(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

struct Outputs {
    dir: PathBuf,
    prov: Provenance,
    files: Vec<(String, String)>,
}

impl Outputs {
    fn new(dir: &Path, command: &str, seed: Option<u64>, config: &str) -> Self {
        Self {
            dir: dir.to_path_buf(),
            prov: Provenance::new(command, seed, config),
            files: Vec::new(),
        }
    }

    fn csv(&mut self, name: &str, body: &str) {
        self.files.push((name.to_string(), self.prov.stamp(body)));
    }

    fn json(&mut self, name: &str, value: serde_json::Value) {
        let mut value = value;
        if let serde_json::Value::Object(map) = &mut value {
            map.insert("provenance".into(), serde_json::Value::String(self.prov.header()[2..].to_string()));
        }
        let text = serde_json::to_string_pretty(&value).expect("json serializes") + "\n";
        self.files.push((name.to_string(), text));
    }

    fn finish(self) -> CliResult<()> {
        write_all(&self.dir, &self.files)
            .map_err(|e| CliError::Numerical(format!("cannot write to {}: {e}", self.dir.display())))?;
        for (name, _) in &self.files {
            eprintln!("wrote {}", self.dir.join(name).display());
        }
        Ok(())
    }
}

fn parse_prior_description(desc: &str) -> CliResult<DensityFn> {
    const FAMILIES: &str = "normal:MEAN,VARIANCE, logistic:MU,S, uniform, beta:ALPHA,BETA";
    let (family, params) = desc.split_once(':').unwrap_or((desc, ""));
    let nums: Vec<f64> = if params.is_empty() {
        vec![]
    } else {
        params
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Usage(format!("cannot parse parameters in {desc:?}")))?
    };
    let want = |k: usize| -> CliResult<()> {
        if nums.len() == k {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{family} takes {k} parameter(s), got {}", nums.len())))
        }
    };
    match family {
        "normal" => {
            want(2)?;
            Ok(DensityFn::normal(NormalParams::new(nums[0], nums[1])?))
        }
        "logistic" => {
            want(2)?;
            Ok(DensityFn::logistic(LogisticParams::new(nums[0], nums[1])?))
        }
        "uniform" => {
            want(0)?;
            Ok(DensityFn::uniform())
        }
        "beta" => {
            want(2)?;
            Ok(DensityFn::beta(BetaShape::new(nums[0], nums[1])?))
        }
        other => Err(CliError::Usage(format!("unknown prior family {other:?}; expected one of {FAMILIES}"))),
    }
}

fn cmd_induce(a: &InduceArgs, out: &Path) -> CliResult<()> {
    if a.grid < 2 {
        return Err(CliError::Usage("--grid needs at least 2 points".into()));
    }
    let prior = parse_prior_description(&a.prior)?;
    let mut body = String::new();
    match a.direction {
        Direction::Theta => {
            if prior.support() != (f64::NEG_INFINITY, f64::INFINITY) {
                return Err(CliError::Usage("theta direction needs a coefficient prior (normal or logistic)".into()));
            }
            body.push_str("theta,density\n");
            for i in 0..a.grid {
                let t = (i as f64 + 0.5) / a.grid as f64;
                writeln!(body, "{t},{}", induce_theta_density(&prior, t)?).unwrap();
            }
        }
        Direction::Beta => {
            if prior.support() != (0.0, 1.0) {
                return Err(CliError::Usage("beta direction needs a θ prior (uniform or beta)".into()));
            }
            body.push_str("beta,density\n");
            for i in 0..a.grid {
                let b = -a.half_width + 2.0 * a.half_width * i as f64 / (a.grid - 1) as f64;
                writeln!(body, "{b},{}", induce_beta_density(&prior, b)?).unwrap();
            }
        }
    }
    let mut o = Outputs::new(out, "induce", None, &format!("{a:?}"));
    let name = match a.direction {
        Direction::Theta => "induced_theta.csv",
        Direction::Beta => "induced_beta.csv",
    };
    o.csv(name, &body);
    o.finish()
}

fn build_prior(kind: Kind, p: usize, target: Option<BetaShape>, k: Option<f64>, sd: f64) -> CliResult<PriorSpec> {
    let need_target = || target.ok_or_else(|| CliError::Usage("this prior needs --mean/--cv or --alpha/--beta".into()));
    Ok(match kind {
        Kind::Vague => vague_priors(p, sd)?,
        Kind::Logistic => logistic_matched_priors(p),
        Kind::BetaMatched => beta_matched_priors(p, need_target()?)?,
        Kind::Weighted => {
            let k = k.ok_or_else(|| CliError::Usage("weighted prior needs --k in the open interval (0, 1)".into()))?;
            weighted_priors(p, need_target()?, k)?
        }
    })
}

fn prior_table(spec: &PriorSpec) -> String {
    let mut s = format!("{} prior, p = {}\n", spec.kind, spec.p);
    writeln!(s, "{:<6} {:>10} {:>10} {:>10}", "coef", "mean", "variance", "sd").unwrap();
    for (j, c) in spec.coefficients.iter().enumerate() {
        writeln!(s, "{:<6} {:>10.4} {:>10.4} {:>10.4}", format!("b{j}"), c.mean(), c.variance(), c.sd()).unwrap();
    }
    s
}

fn cmd_build_prior(a: &BuildPriorArgs, out: &Path) -> CliResult<()> {
    let spec = build_prior(a.kind, a.p, a.target.shape()?, a.k, a.sd)?;
    print!("{}", prior_table(&spec));
    let mut o = Outputs::new(out, "build-prior", None, &format!("{a:?}"));
    o.json("prior.json", serde_json::to_value(&spec).expect("serializes"));
    o.finish()
}

fn cmd_eta_moments(a: &TargetArgs, out: &Path) -> CliResult<()> {
    let shape = a
        .shape()?
        .ok_or_else(|| CliError::Usage("give --mean and --cv, or --alpha and --beta".into()))?;
    let quad = eta_mean_var(&shape)?;
    let exact = eta_mean_var_analytic(&shape)?;
    println!("Beta({:.4}, {:.4})", shape.alpha(), shape.beta());
    println!("quadrature: E[eta] = {:.6}  Var[eta] = {:.6}", quad.mu_eta, quad.var_eta);
    println!("digamma:    E[eta] = {:.6}  Var[eta] = {:.6}", exact.mu_eta, exact.var_eta);
    let mut o = Outputs::new(out, "eta-moments", None, &format!("{a:?}"));
    o.json(
        "eta_moments.json",
        serde_json::json!({ "alpha": shape.alpha(), "beta": shape.beta(), "quadrature": quad, "analytic": exact }),
    );
    o.finish()
}

fn cmd_sample_root(a: &SampleRootArgs, out: &Path) -> CliResult<()> {
    let xs = sample_root_logistic(a.p, a.n, a.seed)?;
    println!("n = {}  mean = {:.5}  variance = {:.5}", xs.len(), stats::mean(&xs), stats::variance(&xs));
    let mut body = String::with_capacity(xs.len() * 22);
    body.push_str("x\n");
    for x in &xs {
        writeln!(body, "{x}").unwrap();
    }
    let mut o = Outputs::new(out, "sample-root", Some(a.seed), &format!("{a:?}"));
    o.csv("root_samples.csv", &body);
    o.finish()
}

fn cmd_genfunc_curves(a: &CurvesArgs, out: &Path) -> CliResult<()> {
    if a.points < 2 || !(a.tmax > 0.0 && a.tmax.is_finite()) {
        return Err(CliError::Usage("need --points ≥ 2 and a positive --tmax".into()));
    }
    let ts: Vec<f64> = (0..a.points)
        .map(|i| -a.tmax + 2.0 * a.tmax * i as f64 / (a.points - 1) as f64)
        .collect();
    let mut body = String::from("p,t,root_mgf,root_cf\n");
    let mut omitted = 0;
    for c in genfunc_curves(&a.p, &ts) {
        match c.root_mgf {
            Some(m) => writeln!(body, "{},{},{},{}", c.p, c.t, m, c.root_cf).unwrap(),
            None => omitted += 1,
        }
    }
    if omitted > 0 {
        log::warn!("{omitted} rows with t outside the MGF strip |t| < 1 omitted");
    }
    let mut o = Outputs::new(out, "genfunc-curves", None, &format!("{a:?}"));
    o.csv("genfunc_curves.csv", &body);
    o.finish()
}

fn cmd_laplace(a: &LaplaceArgs, out: &Path) -> CliResult<()> {
    let params = LogisticParams::new(a.mu, a.s)?;
    let half = half_logistic_laplace(a.t, &params)?;
    let one = logistic_laplace_one_sided(a.t, &params)?;
    println!("half-logistic Laplace transform  = {half:.6}");
    println!("one-sided logistic integral      = {one:.6}");
    let mut o = Outputs::new(out, "laplace-half", None, &format!("{a:?}"));
    o.json(
        "laplace.json",
        serde_json::json!({ "t": a.t, "mu": a.mu, "s": a.s, "half_logistic": half, "one_sided": one }),
    );
    o.finish()
}

fn cmd_fit(a: &FitArgs, out: &Path) -> CliResult<()> {
    let text = read_input(&a.data)?;
    let data = Dataset::from_csv(&text)?;
    let prior_text;
    let prior = match (&a.prior, a.kind) {
        (Some(path), _) => {
            prior_text = read_input(path)?;
            PriorSpec::from_json(&prior_text).map_err(|e| CliError::Usage(format!("invalid prior spec: {e}")))?
        }
        (None, Some(kind)) => {
            prior_text = String::new();
            build_prior(kind, data.p(), a.target.shape()?, a.k, VAGUE_SD)?
        }
        (None, None) => return Err(CliError::Usage("give --prior FILE or --kind".into())),
    };
    let chains = mh_sample(&data, &prior, &a.mcmc.config(), a.seed)?;
    let summary = summarize(&chains)?;
    let mle = logistic_mle(&data)?;
    print!("{}", prior_table(&prior));
    println!();
    print!("{summary}");
    let mle_str: Vec<String> = mle.coefficients.iter().map(|b| format!("{b:.4}")).collect();
    println!(
        "MLE: {}{}",
        mle_str.join(", "),
        if mle.converged { "" } else { "  (did not converge)" }
    );
    let config = format!("{a:?}\n{text}\n{prior_text}");
    let mut o = Outputs::new(out, "fit", Some(a.seed), &config);
    o.csv("summary.csv", &summary.to_csv());
    o.csv("chains.csv", &chains.to_csv());
    o.finish()
}

fn cmd_simulate(a: &SimulateArgs, out: &Path) -> CliResult<()> {
    let text = read_input(&a.config)?;
    let mut spec = ScenarioSpec::from_config_str(&text)?;
    if let Some(seed) = a.seed {
        spec.master_seed = seed;
    }
    let report = run_study(&spec)?;
    print!("{}", report.to_csv());
    if report.mle_excluded > 0 {
        println!("{} replicate(s) without a converged MLE excluded from MSE*", report.mle_excluded);
    }
    let config = format!("{text}\nseed={}", spec.master_seed);
    let mut o = Outputs::new(out, "simulate", Some(spec.master_seed), &config);
    o.csv("report.csv", &report.to_csv());
    o.csv("summaries.csv", &report.summaries_csv());
    o.json("report.json", serde_json::to_value(&report).expect("serializes"));
    o.finish()
}

fn occupancy_prior(kind: OccPrior, p: usize, vague_sd: f64) -> CliResult<PriorSpec> {
    Ok(match kind {
        OccPrior::Logistic => logistic_matched_priors(p),
        OccPrior::Vague => vague_priors(p, vague_sd)?,
        OccPrior::Spocc => vague_priors(p, SPOCC_PRIOR_SD)?,
    })
}

fn histogram_csv(pf: &Pushforward, column: &str) -> String {
    let mut s = format!("grid,{column}\n");
    for (x, d) in pf.histogram.centers().iter().zip(&pf.histogram.density) {
        writeln!(s, "{x},{d}").unwrap();
    }
    s
}

fn cmd_occupancy(a: &OccupancyArgs, out: &Path) -> CliResult<()> {
    if a.psi.is_empty() || a.det.is_empty() {
        return Err(CliError::Usage("--psi and --det need at least an intercept".into()));
    }
    let psi_prior = occupancy_prior(a.prior, a.psi.len() - 1, a.vague_sd)?;
    let det_prior = occupancy_prior(a.prior, a.det.len() - 1, a.vague_sd)?;
    let mut o = Outputs::new(out, "occupancy", Some(a.seed), &format!("{a:?}"));
    let data = simulate_occupancy(&a.psi, &a.det, a.sites, a.visits, a.seed)?;
    let (psi_pf, det_pf) = induced_occupancy_priors(&psi_prior, &det_prior, Some(&data), a.induced_draws, a.seed)?;
    let tails = |pf: &Pushforward| pf.fraction_where(|x| x <= 0.05 || x >= 0.95);
    println!(
        "induced prior mass in [0,0.05]∪[0.95,1]: psi {:.3}, p {:.3}",
        tails(&psi_pf),
        tails(&det_pf)
    );
    o.csv("induced_priors.csv", &induced_densities_csv(&psi_pf, &det_pf));
    if !a.induced_only {
        let settings = OccupancySettings {
            fix_detection_probability: a.fix_detection,
        };
        let fit = fit_occupancy(&data, &psi_prior, &det_prior, &a.mcmc.config(), &settings, a.seed)?;
        println!("occupancy (psi) coefficients");
        print!("{}", fit.psi_summary);
        o.csv("sites.csv", &data.sites_csv());
        o.csv("detections.csv", &data.detections_csv());
        o.csv("psi_summary.csv", &fit.psi_summary.to_csv());
        if let Some(d) = &fit.det_summary {
            println!("detection (p) coefficients");
            print!("{d}");
            o.csv("det_summary.csv", &d.to_csv());
        }
        if fit.weak_identification {
            println!("warning: weak identification (see log)");
        }
    }
    o.finish()
}

fn cmd_ricker(a: &RickerArgs, out: &Path) -> CliResult<()> {
    let demo = ricker_demo(&RickerPriors::default(), a.n, a.seed)?;
    let mut o = Outputs::new(out, "ricker-demo", Some(a.seed), &format!("{a:?}"));
    for (name, pf) in [
        ("ricker_k_model_a.csv", &demo.k_model_a),
        ("ricker_k_model_b.csv", &demo.k_model_b),
        ("ricker_b_model_b.csv", &demo.b_model_b),
    ] {
        let s = stats::sorted(&pf.draws);
        println!(
            "{name}: median {:.4}, 90% interval ({:.4}, {:.4})",
            stats::quantile_sorted(&s, 0.5),
            stats::quantile_sorted(&s, 0.05),
            stats::quantile_sorted(&s, 0.95)
        );
        o.csv(name, &histogram_csv(pf, "density"));
    }
    o.finish()
}

fn run(cli: &Cli) -> CliResult<()> {
    let out = cli.out.as_path();
    match &cli.command {
        Command::Induce(a) => cmd_induce(a, out),
        Command::BuildPrior(a) => cmd_build_prior(a, out),
        Command::EtaMoments(a) => cmd_eta_moments(a, out),
        Command::SampleRoot(a) => cmd_sample_root(a, out),
        Command::GenfuncCurves(a) => cmd_genfunc_curves(a, out),
        Command::LaplaceHalf(a) => cmd_laplace(a, out),
        Command::Fit(a) => cmd_fit(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Occupancy(a) => cmd_occupancy(a, out),
        Command::RickerDemo(a) => cmd_ricker(a, out),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(1)
        }
    }
}
