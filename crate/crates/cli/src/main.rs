//! Command-line pipeline: family selection -> moments -> orthogonality solve
//! -> partner/ODE suite -> zeros -> equilibrium reports -> file export.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use mopart::electro::{
    histogram_export, scalar_equilibrium_field, scalar_residual, vector_fields, vector_residual,
};
use mopart::mop::{solve_mop, solve_quasi, CompletionRule, MopRecord, MultiIndex};
use mopart::partner::compute_all;
use mopart::rat::parse_rat;
use mopart::weights::{family, FamilySpec, SemiclassicalWeight};
use mopart::zeros::{cluster_gap, find_zeros, ZeroSet};
use mopart::{Error as CoreError, ExactPoly};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mopart", version, about = "Multiple orthogonal polynomials, electrostatic partners, and equilibrium certification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an orthogonality system and write the full record
    Solve(SolveArgs),
    /// Re-check every identity stored in a record file
    Verify(VerifyArgs),
    /// Compute zero sets of record polynomials
    Zeros(ZerosArgs),
    /// Evaluate scalar/vector equilibrium residuals at computed zeros
    Equilibrium(EquilibriumArgs),
    /// Export zero histograms and CSV artifacts from a record
    Export(ExportArgs),
    /// List the weight-family catalog
    Families,
    /// Solve a range of diagonal indices
    Sweep(SweepArgs),
}

#[derive(Args, Clone, Default, Serialize, Deserialize)]
struct FamilyArgs {
    /// Catalog id (see `mopart families`)
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Left endpoint parameter of the Angelesco family
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
}

impl FamilyArgs {
    fn params(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        for (k, v) in [
            ("c", &self.c),
            ("c1", &self.c1),
            ("c2", &self.c2),
            ("alpha", &self.alpha),
            ("alpha1", &self.alpha1),
            ("alpha2", &self.alpha2),
            ("beta", &self.beta),
            ("beta1", &self.beta1),
            ("beta2", &self.beta2),
            ("gamma", &self.gamma),
            ("a", &self.a),
        ] {
            if let Some(v) = v {
                m.insert(k.to_string(), v.clone());
            }
        }
        m
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    /// Multi-index "n1,n2" for two-weight families
    #[arg(long)]
    n: Option<String>,
    /// Quasi-orthogonal: polynomial degree (single-weight families)
    #[arg(long)]
    degree: Option<usize>,
    /// Quasi-orthogonal: number of orthogonality conditions
    #[arg(long)]
    conditions: Option<usize>,
    /// Completion rule for n < N: "orthogonal", "monic:<c>", "pinned:<c,...>"
    #[arg(long, default_value = "orthogonal")]
    completion: String,
    /// Extra tail coefficients beyond the construction minimum
    #[arg(long)]
    series_guard: Option<usize>,
    /// JSON run-configuration file; explicit flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Record file written by `solve`
    #[arg(long)]
    record: PathBuf,
}

#[derive(Args)]
struct ZerosArgs {
    #[arg(long)]
    record: Option<PathBuf>,
    #[command(flatten)]
    fam: FamilyArgs,
    #[arg(long)]
    n: Option<String>,
    /// Which polynomial: P, S1, S2, R, E, F
    #[arg(long, default_value = "P")]
    which: String,
    #[arg(long, default_value_t = 256)]
    precision: u32,
    /// Report 1D clusters of the real zeros in a window "lo,hi"
    #[arg(long, allow_hyphen_values = true)]
    cluster_window: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EquilibriumArgs {
    #[arg(long)]
    record: PathBuf,
    /// Scalar model (zeros of P in the channel field)
    #[arg(long)]
    scalar: bool,
    /// Vector model (zeros of P and of S_channel, interaction -1/2)
    #[arg(long)]
    vector: bool,
    /// Weight channel, 1 or 2
    #[arg(long, default_value_t = 1)]
    channel: usize,
    /// Interaction parameter for the vector model
    #[arg(long, default_value = "-1/2", allow_hyphen_values = true)]
    interaction: String,
    #[arg(long, default_value_t = 256)]
    precision: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    record: PathBuf,
    /// Histogram of the scaled real zeros
    #[arg(long)]
    histogram: bool,
    #[arg(long, default_value = "P")]
    which: String,
    /// Scaling applied to the zeros before binning, e.g. "1/70"
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    scale: String,
    #[arg(long, default_value_t = 40)]
    bins: usize,
    #[arg(long, default_value_t = 256)]
    precision: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    #[arg(long)]
    n_from: usize,
    #[arg(long)]
    n_to: usize,
    /// Worker threads across independent indices
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// The resolved run configuration, emitted with every artifact.
#[derive(Clone, Serialize, Deserialize)]
struct RunConfig {
    family: String,
    params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conditions: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    completion: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    series_guard: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct RecordFile {
    toolkit_version: String,
    config: RunConfig,
    weights: Vec<SemiclassicalWeight>,
    record: MopRecord,
}

fn main() -> ExitCode {
    // die quietly on closed pipes instead of panicking mid-print
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    // usage errors are invalid input (exit 1); 2 is reserved for non-normal
    // indices per the exit-code contract
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// 1 = invalid input, 2 = non-normal index, 3 = identity violation,
/// 4 = precision exhausted.
fn exit_code_for(e: &anyhow::Error) -> u8 {
    if let Some(core) = e.downcast_ref::<CoreError>() {
        return match core {
            CoreError::NonNormalIndex(_) => 2,
            CoreError::TailNotVanishing { .. }
            | CoreError::InexactDivision(_)
            | CoreError::AsymmetryDetected(_)
            | CoreError::OverlapDetected(..)
            | CoreError::PoleCollision { .. } => 3,
            CoreError::PrecisionExhausted(_)
            | CoreError::PrecisionCapExceeded { .. }
            | CoreError::QuadratureNotConverged(_)
            | CoreError::AmbiguousAtPrecision(_) => 4,
            _ => 1,
        };
    }
    if e.to_string().contains("identity") {
        return 3;
    }
    1
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Zeros(args) => cmd_zeros(args),
        Command::Equilibrium(args) => cmd_equilibrium(args),
        Command::Export(args) => cmd_export(args),
        Command::Families => cmd_families(),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

fn out_dir(explicit: &Option<PathBuf>) -> PathBuf {
    explicit
        .clone()
        .or_else(|| std::env::var_os("MOPART_OUTPUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn parse_index(s: &str) -> anyhow::Result<MultiIndex> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(anyhow!("--n expects \"n1,n2\""));
    }
    Ok(MultiIndex::new(parts[0].trim().parse()?, parts[1].trim().parse()?))
}

fn series_order_for(guard: Option<usize>, total: usize, sigma: usize) -> Option<usize> {
    guard.map(|g| 2 * total + sigma + g)
}

fn build_record(config: &RunConfig) -> anyhow::Result<(MopRecord, Vec<SemiclassicalWeight>)> {
    if config.family == "nonstandard_jacobi" {
        return build_nonstandard_jacobi(config);
    }
    let spec = FamilySpec {
        id: config.family.clone(),
        params: config.params.clone(),
    };
    let weights = family(&spec)?;
    let mut record = match (&config.index, config.degree) {
        (Some([n1, n2]), _) => {
            if weights.len() != 2 {
                return Err(anyhow!("family {} has one weight; use --degree/--conditions", spec.id));
            }
            let idx = MultiIndex::new(*n1, *n2);
            let order = series_order_for(
                config.series_guard,
                idx.total(),
                weights[0].sigma.max(weights[1].sigma),
            );
            solve_mop(&weights[0], &weights[1], idx, order)?
        }
        (None, Some(degree)) => {
            if weights.len() != 1 {
                return Err(anyhow!("family {} is a pair; use --n n1,n2", spec.id));
            }
            let conditions = config.conditions.unwrap_or(degree);
            let rule = parse_completion(config.completion.as_deref().unwrap_or("orthogonal"))?;
            let order = series_order_for(config.series_guard, degree, weights[0].sigma);
            solve_quasi(&weights[0], degree, conditions, &rule, order)?
        }
        _ => return Err(anyhow!("specify either --n n1,n2 or --degree")),
    };
    let refs: Vec<&SemiclassicalWeight> = weights.iter().collect();
    compute_all(&mut record, &refs)?;
    Ok((record, weights))
}

/// The degenerate two-channel construction: with --degree the explicit
/// polynomial is used (the record carries R == 0 and an independence
/// warning); with --n the orthogonality solver runs and reports the
/// non-normal index.
fn build_nonstandard_jacobi(config: &RunConfig) -> anyhow::Result<(MopRecord, Vec<SemiclassicalWeight>)> {
    let get = |k: &str| -> anyhow::Result<mopart::Rat> {
        parse_rat(config.params.get(k).ok_or_else(|| anyhow!("nonstandard_jacobi requires --{k}"))?)
            .map_err(Into::into)
    };
    let alpha = get("alpha")?;
    let beta = get("beta")?;
    match (&config.index, config.degree) {
        (Some([n1, n2]), _) => {
            let (_, ws) = mopart::jacobi::nonstandard_jacobi_record(n1 + n2, &alpha, &beta)?;
            let rec = solve_mop(&ws[0], &ws[1], MultiIndex::new(*n1, *n2), None)?;
            Ok((rec, ws))
        }
        (None, Some(degree)) => {
            let (mut rec, ws) = mopart::jacobi::nonstandard_jacobi_record(degree, &alpha, &beta)?;
            let refs: Vec<&SemiclassicalWeight> = ws.iter().collect();
            compute_all(&mut rec, &refs)?;
            Ok((rec, ws))
        }
        _ => Err(anyhow!("specify --n n1,n2 (solver route) or --degree (explicit route)")),
    }
}

fn parse_completion(s: &str) -> anyhow::Result<CompletionRule> {
    if s == "orthogonal" {
        return Ok(CompletionRule::Orthogonal);
    }
    if let Some(c) = s.strip_prefix("monic:") {
        return Ok(CompletionRule::MonicCombination { c: parse_rat(c)? });
    }
    if let Some(cs) = s.strip_prefix("pinned:") {
        let coeffs = cs
            .split(',')
            .map(parse_rat)
            .collect::<mopart::Result<Vec<_>>>()?;
        return Ok(CompletionRule::PinnedTop { coeffs });
    }
    Err(anyhow!("unknown completion rule {s:?}"))
}

fn cmd_solve(args: SolveArgs) -> anyhow::Result<()> {
    let mut config = if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str::<RunConfig>(&text)?
    } else {
        RunConfig {
            family: String::new(),
            params: BTreeMap::new(),
            index: None,
            degree: None,
            conditions: None,
            completion: None,
            series_guard: None,
        }
    };
    if let Some(fam) = &args.fam.family {
        config.family = fam.clone();
    }
    for (k, v) in args.fam.params() {
        config.params.insert(k, v);
    }
    if let Some(n) = &args.n {
        let idx = parse_index(n)?;
        config.index = Some([idx.n1, idx.n2]);
    }
    if let Some(d) = args.degree {
        config.degree = Some(d);
        config.index = None;
    }
    if let Some(c) = args.conditions {
        config.conditions = Some(c);
    }
    if args.completion != "orthogonal" || config.completion.is_none() {
        config.completion = Some(args.completion.clone());
    }
    if args.series_guard.is_some() {
        config.series_guard = args.series_guard;
    }
    if config.family.is_empty() {
        return Err(anyhow!("--family is required (or supply --config)"));
    }

    let (record, weights) = build_record(&config)?;
    let file = RecordFile {
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        config,
        weights,
        record,
    };
    let dir = out_dir(&args.out);
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("mop_record.json");
    std::fs::write(&path, serde_json::to_string_pretty(&file)?)?;
    println!("wrote {}", path.display());
    if !file.record.warnings.is_empty() {
        for w in &file.record.warnings {
            eprintln!("warning: {w}");
        }
    }
    Ok(())
}

fn load_record(path: &Path) -> anyhow::Result<RecordFile> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<()> {
    let file = load_record(&args.record)?;
    let refs: Vec<&SemiclassicalWeight> = file.weights.iter().collect();
    let report = mopart::verify::verify_record(&file.record, &refs)?;
    for item in &report.items {
        println!("{}: {}{}", item.name, if item.pass { "pass" } else { "FAIL" },
            if item.detail.is_empty() { String::new() } else { format!(" ({})", item.detail) });
    }
    if let Some(fail) = report.first_failure() {
        return Err(anyhow!("identity violated: {}", fail.name));
    }
    println!("all identities hold");
    Ok(())
}

fn pick_poly<'a>(file: &'a RecordFile, which: &str) -> anyhow::Result<&'a ExactPoly> {
    let rec = &file.record;
    let missing = || anyhow!("record does not contain {which}");
    Ok(match which {
        "P" | "p" => &rec.poly,
        "S1" | "s1" => &rec.channels.first().ok_or_else(missing)?.partner.as_ref().ok_or_else(missing)?.s,
        "S2" | "s2" => &rec.channels.get(1).ok_or_else(missing)?.partner.as_ref().ok_or_else(missing)?.s,
        "R" | "r" => rec.r_poly.as_ref().ok_or_else(missing)?,
        "E" | "e" => rec.e_poly.as_ref().ok_or_else(missing)?,
        "F" | "f" => rec.f_poly.as_ref().ok_or_else(missing)?,
        other => return Err(anyhow!("unknown polynomial selector {other:?}")),
    })
}

fn zeroset_json(zs: &ZeroSet) -> serde_json::Value {
    serde_json::json!({
        "precision": zs.precision,
        "count": zs.len(),
        "points": zs.points.iter().zip(&zs.radii).map(|(z, r)| {
            serde_json::json!({
                "re": format!("{}", z.re.to_string_radix(10, Some(40))),
                "im": format!("{}", z.im.to_string_radix(10, Some(40))),
                "radius": format!("{}", r.to_string_radix(10, Some(8))),
            })
        }).collect::<Vec<_>>(),
        "clusters": zs.clusters,
    })
}

fn cmd_zeros(args: ZerosArgs) -> anyhow::Result<()> {
    let file = if let Some(path) = &args.record {
        load_record(path)?
    } else {
        let config = RunConfig {
            family: args.fam.family.clone().ok_or_else(|| anyhow!("--record or --family required"))?,
            params: args.fam.params(),
            index: args.n.as_deref().map(parse_index).transpose()?.map(|i| [i.n1, i.n2]),
            degree: None,
            conditions: None,
            completion: None,
            series_guard: None,
        };
        let (record, weights) = build_record(&config)?;
        RecordFile {
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            weights,
            record,
        }
    };
    let p = pick_poly(&file, &args.which)?;
    let zs = find_zeros(p, args.precision)?;
    let dir = out_dir(&args.out);
    std::fs::create_dir_all(&dir)?;
    let base = format!("zeros_{}", args.which.to_lowercase());
    std::fs::write(dir.join(format!("{base}.csv")), zs.csv())?;
    let mut doc = serde_json::json!({
        "toolkit_version": env!("CARGO_PKG_VERSION"),
        "config": serde_json::to_value(&file.config)?,
        "which": args.which,
        "zeros": zeroset_json(&zs),
    });
    if let Some(win) = &args.cluster_window {
        let parts: Vec<&str> = win.split(',').collect();
        if parts.len() != 2 {
            return Err(anyhow!("--cluster-window expects \"lo,hi\""));
        }
        let lo = parse_rat(parts[0])?;
        let hi = parse_rat(parts[1])?;
        let (clusters, max_gap) =
            cluster_gap(&zs, (&lo, &hi), mopart::zeros::DEFAULT_REL_GAP);
        doc["cluster_report"] = serde_json::json!({
            "clusters": clusters,
            "max_gap": max_gap.to_f64(),
            "window": [parts[0], parts[1]],
        });
        println!("clusters: {clusters} (max gap {:.6})", max_gap.to_f64());
    }
    std::fs::write(dir.join(format!("{base}.json")), serde_json::to_string_pretty(&doc)?)?;
    let reals = zs.real_points();
    if let Some((x, _)) = reals.last() {
        println!(
            "{} zeros ({} real; largest real = {})",
            zs.len(),
            reals.len(),
            x.to_string_radix(10, Some(20))
        );
    } else {
        println!("{} zeros (none real)", zs.len());
    }
    println!("wrote {}", dir.join(format!("{base}.csv")).display());
    Ok(())
}

fn cmd_equilibrium(args: EquilibriumArgs) -> anyhow::Result<()> {
    let file = load_record(&args.record)?;
    let rec = &file.record;
    let chan = args.channel;
    if chan == 0 || chan > rec.channels.len() {
        return Err(anyhow!("channel {chan} out of range"));
    }
    let w = &file.weights[chan - 1];
    let bundle = rec.channels[chan - 1]
        .partner
        .as_ref()
        .ok_or_else(|| anyhow!("record has no partner for channel {chan}"))?;
    let zp = find_zeros(&rec.poly, args.precision)?;
    let mut out = serde_json::json!({
        "toolkit_version": env!("CARGO_PKG_VERSION"),
        "config": serde_json::to_value(&file.config)?,
        "precision": args.precision,
    });
    let mut printed = false;
    if args.scalar || !args.vector {
        let field = scalar_equilibrium_field(w, &bundle.s);
        let rep = scalar_residual(&zp, &field)?;
        println!(
            "scalar channel {chan}: max |residual| = {:.6e} (log2 = {:.1})",
            rep.max_abs.to_f64(),
            rep.max_abs.to_f64().log2()
        );
        out["scalar"] = rep.to_json();
        printed = true;
    }
    if args.vector {
        if rec.channels.len() != 2 {
            return Err(anyhow!("vector model needs a two-weight record"));
        }
        let r = rec
            .r_poly
            .as_ref()
            .ok_or_else(|| anyhow!("record has no coupling polynomial"))?;
        let zs = find_zeros(&bundle.s, args.precision)?;
        let (phi1, phi2) = vector_fields(
            &file.weights[0],
            &file.weights[1],
            r,
            rec.r_star.as_ref(),
            chan,
        );
        let a = parse_rat(&args.interaction)?;
        let reps = vector_residual(&zp, &zs, &a, (&phi1, &phi2))?;
        for rep in &reps {
            println!(
                "vector {:?} channel {chan}: max |residual| = {:.6e} (log2 = {:.1})",
                rep.component,
                rep.max_abs.to_f64(),
                rep.max_abs.to_f64().log2()
            );
        }
        out["vector"] = serde_json::json!([reps[0].to_json(), reps[1].to_json()]);
        printed = true;
    }
    debug_assert!(printed);
    let dir = out_dir(&args.out);
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("equilibrium.json");
    std::fs::write(&path, serde_json::to_string_pretty(&out)?)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_export(args: ExportArgs) -> anyhow::Result<()> {
    let file = load_record(&args.record)?;
    if !args.histogram {
        return Err(anyhow!("nothing to export; pass --histogram"));
    }
    let p = pick_poly(&file, &args.which)?;
    let zs = find_zeros(p, args.precision)?;
    let scale = parse_rat(&args.scale)?;
    let h = histogram_export(&zs, scale.to_f64(), args.bins)?;
    let dir = out_dir(&args.out);
    std::fs::create_dir_all(&dir)?;
    let path = dir.join(format!("histogram_{}.csv", args.which.to_lowercase()));
    std::fs::write(&path, h.csv())?;
    println!(
        "histogram of {} scaled zeros: min {:.6}, max {:.6}, {} bins",
        h.count, h.min, h.max, args.bins
    );
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_families() -> anyhow::Result<()> {
    println!("family            parameters");
    println!("multiple_hermite  c1, c2            weights exp(-x^2 + c_i x) on R");
    println!("hermite           c (default 0)     single weight exp(-x^2 + c x)");
    println!("mlaguerre1        alpha1, alpha2    x^alpha_i exp(-x) on [0, inf)");
    println!("laguerre          alpha, c          single weight x^alpha exp(-c x)");
    println!("mlaguerre2        alpha, c1, c2     x^alpha exp(-c_i x) on [0, inf)");
    println!("jacobi_pineiro    alpha, beta1, beta2  x^beta_i (1-x)^alpha on [0, 1]");
    println!("jacobi            alpha, beta       (x-1)^alpha (x+1)^beta on [-1, 1]");
    println!("angelesco_jacobi  a, alpha, beta, gamma  shared weight on [a,0] and [0,1]");
    println!("appell            (none)            angelesco_jacobi(-1, 0, 0, 0)");
    println!("cubic             (none)            exp(-z^3) on two sector contours (numeric)");
    println!("nonstandard_jacobi alpha, beta      degenerate two-channel Jacobi pair (-N < alpha < -1)");
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> anyhow::Result<()> {
    let fam_id = args
        .fam
        .family
        .clone()
        .ok_or_else(|| anyhow!("--family is required"))?;
    if args.n_from == 0 || args.n_from > args.n_to {
        return Err(anyhow!("need 1 <= n_from <= n_to"));
    }
    let dir = out_dir(&args.out);
    std::fs::create_dir_all(&dir)?;
    let indices: Vec<usize> = (args.n_from..=args.n_to).collect();
    let params = args.fam.params();
    let worker = |n: &usize| -> anyhow::Result<PathBuf> {
        let config = RunConfig {
            family: fam_id.clone(),
            params: params.clone(),
            index: Some([*n, *n]),
            degree: None,
            conditions: None,
            completion: None,
            series_guard: None,
        };
        let (record, weights) = build_record(&config)?;
        let file = RecordFile {
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            weights,
            record,
        };
        let path = dir.join(format!("mop_record_{n}_{n}.json"));
        std::fs::write(&path, serde_json::to_string_pretty(&file)?)?;
        Ok(path)
    };
    let results: Vec<anyhow::Result<PathBuf>> = if args.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()?;
        pool.install(|| {
            use rayon::prelude::*;
            indices.par_iter().map(worker).collect()
        })
    } else {
        indices.iter().map(worker).collect()
    };
    for r in results {
        println!("wrote {}", r?.display());
    }
    Ok(())
}
