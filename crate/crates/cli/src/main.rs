//! `mola`: landscape features and algorithm selection for box-constrained
//! continuous multi-objective problems.

use clap::{Args, Parser, Subcommand};
use mo_landscape::analysis;
use mo_landscape::error::Error;
use mo_landscape::features::{catalog, compute_all_features, pipeline};
use mo_landscape::io;
use mo_landscape::problems::{build_suite, Family, ProblemCatalogEntry, ProblemSpec};
use mo_landscape::sampling::draw_sample;
use mo_landscape::selection::{self, assemble_dataset, train_selector, SelectorModel, TrainParams};
use mo_landscape::solvers::{default_budget, run_solver, SolverConfig, SolverId};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CODES_HELP: &str = "EXIT CODES:
  0  success
  2  usage error (unknown flag or malformed argument)
  3  input/output failure (missing or unwritable file)
  4  schema mismatch (file exists but has the wrong shape)
  5  invalid configuration (unknown problem, bad budget, bad request)
  6  incomplete data (missing solver runs)
  7  degenerate data (labels, reference set or embedding carry no signal)";

#[derive(Parser)]
#[command(name = "mola", version, about, after_help = EXIT_CODES_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect and export the benchmark problem catalog
    Problems {
        #[command(subcommand)]
        command: ProblemsCommand,
    },
    /// Draw, evaluate and scale a Latin hypercube sample of one problem
    Sample(SampleArgs),
    /// Landscape feature computation
    Features {
        #[command(subcommand)]
        command: FeaturesCommand,
    },
    /// Run a solver (or all three) on one problem
    Solve(SolveArgs),
    /// Build the performance dataset (HVN, labels, ranks) from solver runs
    Perf(PerfArgs),
    /// Train or evaluate the algorithm selector
    Select {
        #[command(subcommand)]
        command: SelectCommand,
    },
    /// Per-instance feature stability across sampling seeds
    Stability(StabilityArgs),
    /// Feature cross-correlation matrix
    Corr(CorrArgs),
    /// Two-dimensional PCA embedding of a feature table
    Embed(EmbedArgs),
}

#[derive(Subcommand)]
enum ProblemsCommand {
    /// List matching benchmark instances
    List(ProblemsListArgs),
}

#[derive(Args)]
struct ProblemsListArgs {
    /// Families to include (zdt, dtlz, mpm2, bisphere); default all benchmarks
    #[arg(long, value_delimiter = ',')]
    family: Vec<String>,
    /// Decision space dimensions; default 2,5,10,20
    #[arg(long, value_delimiter = ',')]
    dim: Vec<usize>,
    /// Objective counts; default 2,3
    #[arg(long, value_delimiter = ',')]
    objectives: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    mpm2_seed: u64,
    /// Print the full JSON catalog instead of the table
    #[arg(long)]
    json: bool,
    /// Write the JSON catalog to a file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    size: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1)]
    mpm2_seed: u64,
}

#[derive(Subcommand)]
enum FeaturesCommand {
    /// Compute the feature grid over a problem suite
    Grid(FeaturesGridArgs),
    /// Compute one feature vector from a stored sample
    Compute(FeaturesComputeArgs),
    /// Export the machine-readable feature catalog
    Catalog(FeaturesCatalogArgs),
}

#[derive(Args)]
struct FeaturesGridArgs {
    /// Problem catalog JSON (as written by `problems list --out`)
    #[arg(long)]
    suite: PathBuf,
    /// Sample sizes, e.g. 100,200
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Seeds as a comma list or inclusive range, e.g. 0,1,2 or 0..19
    #[arg(long)]
    seeds: String,
    /// Output CSV; suites mixing 2 and 3 objectives write -m2/-m3 variants
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct FeaturesComputeArgs {
    /// Sample CSV written by `sample` (with its sidecar manifest)
    #[arg(long)]
    sample: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FeaturesCatalogArgs {
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: String,
    /// nsga2, smsemoa, moead or all
    #[arg(long, default_value = "all")]
    solver: String,
    /// Objective evaluations; defaults to the (m, d) budget table
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 1)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed_base: u64,
    #[arg(long)]
    out: PathBuf,
    /// Population size override
    #[arg(long)]
    mu: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value_t = 1)]
    mpm2_seed: u64,
}

#[derive(Args)]
struct PerfArgs {
    /// Directory of run CSVs written by `solve`
    #[arg(long)]
    runs: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    labels: PathBuf,
    /// Sample sizes the performance rows are replicated for
    #[arg(long, value_delimiter = ',', default_values_t = [100usize, 200, 500, 1000])]
    sizes: Vec<usize>,
    /// Optional rank contingency CSV
    #[arg(long)]
    ranks_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SelectCommand {
    /// Train the selector with forward-backward feature selection
    Train(SelectTrainArgs),
    /// Apply a trained model to a feature table
    Evaluate(SelectEvaluateArgs),
}

#[derive(Args)]
struct SelectTrainArgs {
    #[arg(long)]
    features: PathBuf,
    #[arg(long)]
    perf: PathBuf,
    #[arg(long)]
    split_seed: u64,
    #[arg(long, default_value_t = 5)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    cv_folds: usize,
    #[arg(long, default_value_t = 40)]
    max_features: usize,
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct SelectEvaluateArgs {
    #[arg(long)]
    features: PathBuf,
    #[arg(long)]
    perf: PathBuf,
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct StabilityArgs {
    #[arg(long)]
    features: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Model JSON whose selected features restrict the analysis
    #[arg(long)]
    subset: Option<PathBuf>,
}

#[derive(Args)]
struct CorrArgs {
    #[arg(long)]
    features: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    subset: Option<PathBuf>,
    /// Print the summary as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    features: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    subset: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (kind, code) = classify(&e);
            eprintln!("error[{kind}]: {e}");
            ExitCode::from(code)
        }
    }
}

fn classify(e: &Error) -> (&'static str, u8) {
    match e {
        Error::Io { .. } => ("io", 3),
        Error::Schema { .. } | Error::MixedObjectiveCounts(_) => ("schema", 4),
        Error::OutOfBox { .. }
        | Error::BudgetTooSmall { .. }
        | Error::NoDefaultBudget { .. }
        | Error::UnknownProblem(_)
        | Error::InvalidInput(_) => ("config", 5),
        Error::IncompleteData { .. } => ("incomplete", 6),
        Error::DegenerateReference(_)
        | Error::DegenerateLabels(_)
        | Error::DegenerateEmbedding
        | Error::UnsupportedObjectiveCount(_) => ("degenerate", 7),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Problems {
            command: ProblemsCommand::List(args),
        } => problems_list(args),
        Command::Sample(args) => sample(args),
        Command::Features { command } => match command {
            FeaturesCommand::Grid(args) => features_grid(args),
            FeaturesCommand::Compute(args) => features_compute(args),
            FeaturesCommand::Catalog(args) => io::write_json(&args.out, &catalog::build_catalog()),
        },
        Command::Solve(args) => solve(args),
        Command::Perf(args) => perf(args),
        Command::Select { command } => match command {
            SelectCommand::Train(args) => select_train(args),
            SelectCommand::Evaluate(args) => select_evaluate(args),
        },
        Command::Stability(args) => stability(args),
        Command::Corr(args) => corr(args),
        Command::Embed(args) => embed(args),
    }
}

fn parse_families(raw: &[String]) -> Result<Vec<Family>, Error> {
    if raw.is_empty() {
        return Ok(vec![Family::Zdt, Family::Dtlz, Family::Mpm2]);
    }
    raw.iter()
        .map(|name| {
            Family::parse(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown family `{name}`")))
        })
        .collect()
}

fn catalog_specs(
    families: &[Family],
    dims: &[usize],
    objectives: &[usize],
    mpm2_seed: u64,
) -> Vec<ProblemSpec<f64>> {
    let dims = if dims.is_empty() {
        vec![2, 5, 10, 20]
    } else {
        dims.to_vec()
    };
    let objectives = if objectives.is_empty() {
        vec![2, 3]
    } else {
        objectives.to_vec()
    };
    build_suite(&dims, &objectives, families, mpm2_seed)
}

/// Resolve a problem id against the full catalog (control problems included).
fn find_problem(id: &str, mpm2_seed: u64) -> Result<ProblemSpec<f64>, Error> {
    let all = [Family::Zdt, Family::Dtlz, Family::Mpm2, Family::Bisphere];
    catalog_specs(&all, &[], &[], mpm2_seed)
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownProblem(id.to_string()))
}

fn problems_list(args: ProblemsListArgs) -> Result<(), Error> {
    let families = parse_families(&args.family)?;
    let specs = catalog_specs(&families, &args.dim, &args.objectives, args.mpm2_seed);
    let entries: Vec<ProblemCatalogEntry> =
        specs.iter().map(ProblemCatalogEntry::from_spec).collect();
    if let Some(out) = &args.out {
        io::write_json(out, &entries)?;
    }
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&entries)
                .map_err(|e| Error::schema("stdout", e.to_string()))?
        );
    } else {
        println!("{:<40} {:<10} {:>3} {:>3}  box", "id", "family", "d", "m");
        for e in &entries {
            println!(
                "{:<40} {:<10} {:>3} {:>3}  [{}, {}]^d",
                e.id,
                e.family.name(),
                e.d,
                e.m,
                e.box_lower[0],
                e.box_upper[0]
            );
        }
        println!("{} instances", entries.len());
    }
    Ok(())
}

fn sample(args: SampleArgs) -> Result<(), Error> {
    let spec = find_problem(&args.problem, args.mpm2_seed)?;
    let s = draw_sample(&spec, args.size, args.seed)?;
    io::write_sample(&s, &args.out)?;
    println!("wrote {} rows to {}", s.len(), args.out.display());
    Ok(())
}

fn parse_seeds(raw: &str) -> Result<Vec<u64>, Error> {
    let bad = || Error::InvalidInput(format!("cannot parse seeds `{raw}`; use 0,1,2 or 0..19"));
    if let Some((a, b)) = raw.split_once("..") {
        let lo: u64 = a.trim().parse().map_err(|_| bad())?;
        let hi: u64 = b.trim().parse().map_err(|_| bad())?;
        if hi < lo {
            return Err(bad());
        }
        Ok((lo..=hi).collect())
    } else {
        raw.split(',')
            .map(|s| s.trim().parse().map_err(|_| bad()))
            .collect()
    }
}

fn install_pool<T: Send>(jobs: Option<usize>, task: impl FnOnce() -> T + Send) -> Result<T, Error> {
    match jobs {
        None => Ok(task()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidInput(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(task))
        }
    }
}

/// Insert `-m2` / `-m3` before the extension when a suite mixes objective
/// counts.
fn per_m_path(base: &Path, m: usize, needed: bool) -> PathBuf {
    if !needed {
        return base.to_path_buf();
    }
    let stem = base
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("features");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}-m{m}.{ext}"))
}

fn features_grid(args: FeaturesGridArgs) -> Result<(), Error> {
    let entries: Vec<ProblemCatalogEntry> = io::read_json(&args.suite)?;
    if entries.is_empty() || args.sizes.is_empty() {
        return Err(Error::InvalidInput("empty suite or sizes".into()));
    }
    let seeds = parse_seeds(&args.seeds)?;
    let specs: Vec<ProblemSpec<f64>> = entries
        .iter()
        .map(ProblemCatalogEntry::to_spec)
        .collect::<Result<_, _>>()?;
    let mut ms: Vec<usize> = specs.iter().map(|s| s.n_objectives).collect();
    ms.sort_unstable();
    ms.dedup();
    let split = ms.len() > 1;
    for &m in &ms {
        let group: Vec<ProblemSpec<f64>> = specs
            .iter()
            .filter(|s| s.n_objectives == m)
            .cloned()
            .collect();
        let path = per_m_path(&args.out, m, split);
        let existing = if path.exists() {
            Some(io::read_feature_table::<f64>(&path)?)
        } else {
            None
        };
        let table = install_pool(args.jobs, || {
            pipeline::run_grid(&group, &args.sizes, &seeds, existing.as_ref())
        })??;
        io::write_feature_table(&table, &path)?;
        println!(
            "wrote {} rows x {} features to {}",
            table.rows.len(),
            table.columns.len(),
            path.display()
        );
    }
    Ok(())
}

fn features_compute(args: FeaturesComputeArgs) -> Result<(), Error> {
    let sample = io::read_sample::<f64>(&args.sample)?;
    let fv = compute_all_features(&sample);
    let mut table = pipeline::FeatureTable::empty(fv.m);
    table.push(fv);
    io::write_feature_table(&table, &args.out)?;
    println!(
        "wrote 1 row x {} features to {}",
        table.columns.len(),
        args.out.display()
    );
    Ok(())
}

fn solver_hyper(config: &SolverConfig<f64>, mu: usize, dim: usize) -> io::RunHyperparameters {
    io::RunHyperparameters {
        mu,
        sbx_eta: config.sbx_eta,
        sbx_prob: config.sbx_prob,
        pm_eta: config.pm_eta,
        pm_prob: config.pm_prob.unwrap_or(1.0 / dim as f64),
        moead_neighbors: config.moead_neighbors,
    }
}

fn solve(args: SolveArgs) -> Result<(), Error> {
    let spec = find_problem(&args.problem, args.mpm2_seed)?;
    let solvers: Vec<SolverId> = if args.solver == "all" {
        SolverId::ALL.to_vec()
    } else {
        vec![SolverId::parse(&args.solver)
            .ok_or_else(|| Error::InvalidInput(format!("unknown solver `{}`", args.solver)))?]
    };
    let budget = match args.budget {
        Some(b) => b,
        None => default_budget(spec.n_objectives, spec.dim)?,
    };
    let config = SolverConfig {
        mu: args.mu,
        ..SolverConfig::default()
    };
    let cells: Vec<(SolverId, u64)> = solvers
        .iter()
        .flat_map(|&s| (0..args.runs as u64).map(move |i| (s, args.seed_base + i)))
        .collect();
    let runs = install_pool(args.jobs, || {
        cells
            .par_iter()
            .map(|&(solver, seed)| run_solver(solver, &spec, budget, seed, &config))
            .collect::<Result<Vec<_>, _>>()
    })??;
    for run in &runs {
        let mu = run.y.n_rows();
        let path = args.out.join(format!(
            "{}_{}_s{}.csv",
            run.solver.name(),
            run.problem_id,
            run.seed
        ));
        io::write_run(run, solver_hyper(&config, mu, spec.dim), &path)?;
    }
    println!("wrote {} runs to {}", runs.len(), args.out.display());
    Ok(())
}

fn perf(args: PerfArgs) -> Result<(), Error> {
    let dir = &args.runs;
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir.display().to_string(), e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no run CSVs in {}",
            dir.display()
        )));
    }
    let mut by_instance: std::collections::BTreeMap<(String, usize), Vec<_>> =
        std::collections::BTreeMap::new();
    for p in &paths {
        let run = io::read_run::<f64>(p)?;
        by_instance
            .entry((run.problem_id.clone(), run.dim))
            .or_default()
            .push(run);
    }
    let mut records = Vec::new();
    let mut clipped = 0usize;
    for ((problem_id, _dim), runs) in &by_instance {
        for solver in SolverId::ALL {
            if !runs.iter().any(|r| r.solver == solver) {
                return Err(Error::IncompleteData {
                    instance: problem_id.clone(),
                    solver: solver.name().to_string(),
                    seed: 0,
                });
            }
        }
        clipped += selection::build_performance(runs, &args.sizes, &mut records)?;
    }
    io::write_performance(&records, &args.out)?;
    let labels = selection::build_labels(&records);
    io::write_labels(&labels, &args.labels)?;
    if let Some(ranks_out) = &args.ranks_out {
        let rows = selection::rank_contingency(&records)?;
        io::write_rank_rows(&rows, ranks_out)?;
    }
    if clipped > 0 {
        eprintln!("warning: clipped {clipped} HVN values marginally above 1");
    }
    println!(
        "wrote {} performance rows and {} labels from {} instances",
        records.len(),
        labels.len(),
        by_instance.len()
    );
    Ok(())
}

fn load_dataset(features: &Path, perf: &Path) -> Result<(selection::Dataset<f64>, usize), Error> {
    let table = io::read_feature_table::<f64>(features)?;
    let records = io::read_performance::<f64>(perf)?;
    let labels = selection::build_labels(&records);
    Ok(assemble_dataset(&table, &labels))
}

fn select_train(args: SelectTrainArgs) -> Result<(), Error> {
    let (dataset, dropped) = load_dataset(&args.features, &args.perf)?;
    if dropped > 0 {
        eprintln!("warning: dropped {dropped} feature rows without labels");
    }
    let params = TrainParams {
        split_seed: args.split_seed,
        k: args.k,
        cv_folds: args.cv_folds,
        max_features: args.max_features,
        ..TrainParams::default()
    };
    let (model, report) = train_selector(&dataset, &params)?;
    io::write_model(&model, &args.model)?;
    io::write_json(&args.report, &report)?;
    println!(
        "trained on {} rows: f1_macro={:.4} ri={:.4} selected {} features",
        report.n_train,
        report.f1_macro,
        report.ri,
        report.selected_features.len()
    );
    Ok(())
}

fn select_evaluate(args: SelectEvaluateArgs) -> Result<(), Error> {
    let (dataset, dropped) = load_dataset(&args.features, &args.perf)?;
    if dropped > 0 {
        eprintln!("warning: dropped {dropped} feature rows without labels");
    }
    let model: SelectorModel<f64> = io::read_model(&args.model)?;
    let report = selection::evaluate_selector(&model, &dataset)?;
    io::write_json(&args.report, &report)?;
    println!(
        "evaluated {} rows: f1_macro={:.4} ri={:.4}",
        report.n_test, report.f1_macro, report.ri
    );
    Ok(())
}

fn read_subset(path: &Option<PathBuf>) -> Result<Option<Vec<String>>, Error> {
    match path {
        None => Ok(None),
        Some(p) => {
            let model: SelectorModel<f64> = io::read_model(p)?;
            Ok(Some(model.selected_features))
        }
    }
}

fn stability(args: StabilityArgs) -> Result<(), Error> {
    let table = io::read_feature_table::<f64>(&args.features)?;
    let subset = read_subset(&args.subset)?;
    let rows = analysis::stability(&table, subset.as_deref());
    let groups: std::collections::BTreeSet<_> = table
        .rows
        .iter()
        .map(|(k, _)| (k.problem_id.clone(), k.dim, k.sample_size))
        .collect();
    if rows.len() < groups.len() {
        eprintln!(
            "warning: skipped {} group(s) with fewer than 2 seeds",
            groups.len() - rows.len()
        );
    }
    io::write_stability(&rows, &args.out)?;
    let mean = if rows.is_empty() {
        0.0
    } else {
        rows.iter().map(|r| r.mean_correlation).sum::<f64>() / rows.len() as f64
    };
    println!(
        "wrote {} stability rows (grand mean {:.4}) to {}",
        rows.len(),
        mean,
        args.out.display()
    );
    Ok(())
}

fn corr(args: CorrArgs) -> Result<(), Error> {
    let table = io::read_feature_table::<f64>(&args.features)?;
    let subset = read_subset(&args.subset)?;
    let corr = analysis::feature_correlation(&table, subset.as_deref())?;
    io::write_correlation(&corr, &args.out)?;
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "mean_abs_off_diagonal": corr.mean_abs_off_diagonal,
                "n_columns": corr.columns.len(),
                "excluded_constant_columns": corr.excluded,
            })
        );
    } else {
        println!(
            "{} columns ({} constant excluded), mean |off-diagonal| = {:.4}",
            corr.columns.len(),
            corr.excluded.len(),
            corr.mean_abs_off_diagonal
        );
    }
    Ok(())
}

fn embed(args: EmbedArgs) -> Result<(), Error> {
    let table = io::read_feature_table::<f64>(&args.features)?;
    let subset = read_subset(&args.subset)?;
    let scores = analysis::embed_2d(&table, subset.as_deref())?;
    let keys: Vec<_> = table.rows.iter().map(|(k, _)| k.clone()).collect();
    io::write_embedding(&keys, &scores, &args.out)?;
    println!(
        "wrote {} embedded rows to {}",
        keys.len(),
        args.out.display()
    );
    Ok(())
}
