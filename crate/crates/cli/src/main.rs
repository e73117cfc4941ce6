//! `qgdec` — decode stabilizer-code syndromes via equivalent graphs and
//! measure logical error rates.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use qgdec::analysis::{
    collapse_fit, search_space, singleton_report, CollapseConfig, CollapsePoint,
};
use qgdec::codes::{self, DistanceBound, StabilizerCode};
use qgdec::decoder::DecodeConfig;
use qgdec::extraction::{extract, GraphExtraction};
use qgdec::sim::{run_until_failures, NoiseModel, RunConfig};
use qgdec::syndrome::parse_syndrome;
use std::io::Write;
use std::path::{Path, PathBuf};

const EXIT_USER: i32 = 2;
const EXIT_INTERNAL: i32 = 3;

const CSV_HEADER: &str = "code,N,k,d,noise,p,T,seed,M,ML,pL,stderr,wall_seconds";

#[derive(Parser)]
#[command(name = "qgdec", about = "Graph-aware bounded distance decoder", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Code registry: listing, validation, distance checks
    Codes {
        #[command(subcommand)]
        action: CodesAction,
    },
    /// Extract the equivalent graph of a code and export it
    Extract {
        #[arg(long)]
        code: String,
        /// Write the graph as JSON {nodes, edges, J}
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the graph in DOT format (right nodes boxed)
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decode a single stabilizer syndrome
    Decode {
        #[arg(long)]
        code: String,
        /// Syndrome bits, one per stabilizer, e.g. 1001
        #[arg(long)]
        syndrome: String,
        /// Target weight bound, or "auto" for t = (d-1)/2
        #[arg(long, default_value = "auto")]
        t: String,
        #[arg(long)]
        no_prune: bool,
        #[arg(long)]
        no_structured: bool,
        /// Exhaustive search (T = N)
        #[arg(long)]
        mld: bool,
    },
    /// Monte Carlo run at a single noise point
    Simulate(SimulateArgs),
    /// Monte Carlo sweep over codes and a grid of noise strengths
    Sweep(SweepArgs),
    /// Finite-size-scaling data collapse over a sweep CSV
    Collapse {
        #[arg(long)]
        csv: PathBuf,
        /// p_c window "a:b"; defaults to (median p) +/- 0.03
        #[arg(long)]
        window: Option<String>,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum CodesAction {
    /// List registry codes
    List,
    /// Validate a code file
    Validate { file: PathBuf },
    /// Run the brute-force distance oracle up to --wmax
    Distance {
        name: String,
        #[arg(long)]
        wmax: usize,
    },
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    code: String,
    /// depolarizing:p=0.1 | bitflip:p=0.05 | pxyz:0.01,0.02,0.03
    #[arg(long)]
    noise: String,
    /// Target failure count M_L
    #[arg(long, default_value_t = 100)]
    failures: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker count (default: QGDEC_THREADS or 1)
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = 10_000_000)]
    max_shots: u64,
    #[arg(long, default_value = "auto")]
    t: String,
    /// Append a CSV row here
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Rewrite the CSV from scratch with a fresh header
    #[arg(long)]
    force_header: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated code names
    #[arg(long)]
    code: String,
    /// Noise family: depolarizing | bitflip
    #[arg(long)]
    noise: String,
    /// Grid "start:end:step" of physical error rates
    #[arg(long)]
    p_grid: String,
    #[arg(long, default_value_t = 100)]
    failures: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = 10_000_000)]
    max_shots: u64,
    #[arg(long, default_value = "auto")]
    t: String,
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    force_header: bool,
}

/// User-facing failures exit 2; invariant violations exit 3.
enum CliError {
    User(anyhow::Error),
    Internal(anyhow::Error),
}

fn user<E: Into<anyhow::Error>>(e: E) -> CliError {
    CliError::User(e.into())
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(CliError::User(e)) => {
            eprintln!("error: {e:#}");
            std::process::exit(EXIT_USER);
        }
        Err(CliError::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            std::process::exit(EXIT_INTERNAL);
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Codes { action } => match action {
            CodesAction::List => cmd_codes_list(),
            CodesAction::Validate { file } => cmd_codes_validate(&file),
            CodesAction::Distance { name, wmax } => cmd_codes_distance(&name, wmax),
        },
        Command::Extract { code, json, dot } => cmd_extract(&code, json.as_deref(), dot.as_deref()),
        Command::Decode {
            code,
            syndrome,
            t,
            no_prune,
            no_structured,
            mld,
        } => cmd_decode(&code, &syndrome, &t, no_prune, no_structured, mld),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Collapse {
            csv,
            window,
            degree,
        } => cmd_collapse(&csv, window.as_deref(), degree),
    }
}

fn resolve_code(spec: &str) -> Result<StabilizerCode, CliError> {
    match codes::builtin(spec) {
        Ok(code) => Ok(code),
        Err(codes::CodeError::UnknownCode(_)) if Path::new(spec).exists() => {
            let text = std::fs::read_to_string(spec)
                .with_context(|| format!("reading {spec}"))
                .map_err(user)?;
            let name = Path::new(spec)
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("file");
            codes::load_code(&text, name).map_err(user)
        }
        Err(e) => Err(user(e)),
    }
}

fn resolve_t(t: &str, code: &StabilizerCode) -> Result<usize, CliError> {
    if t == "auto" {
        Ok(code.t())
    } else {
        t.parse::<usize>()
            .map_err(|_| user(anyhow!("--t must be a number or 'auto', got '{t}'")))
    }
}

fn resolve_workers(flag: Option<usize>) -> usize {
    flag.unwrap_or_else(|| {
        std::env::var("QGDEC_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(1)
    })
}

fn parse_noise(spec: &str) -> Result<(String, f64, NoiseModel), CliError> {
    let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let parse_p = |rest: &str| -> Result<f64, CliError> {
        let value = rest
            .strip_prefix("p=")
            .ok_or_else(|| user(anyhow!("expected '{family}:p=<value>', got '{spec}'")))?;
        value
            .parse::<f64>()
            .map_err(|_| user(anyhow!("invalid probability '{value}'")))
    };
    let (label, p, model) = match family {
        "depolarizing" => {
            let p = parse_p(rest)?;
            ("depolarizing".to_string(), p, NoiseModel::depolarizing(p))
        }
        "bitflip" => {
            let p = parse_p(rest)?;
            ("bitflip".to_string(), p, NoiseModel::bitflip(p))
        }
        "pxyz" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(user(anyhow!("expected pxyz:px,py,pz, got '{spec}'")));
            }
            let vals: Vec<f64> = parts
                .iter()
                .map(|s| s.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| user(anyhow!("invalid pxyz probabilities in '{spec}'")))?;
            let model = NoiseModel::pxyz(vals[0], vals[1], vals[2]);
            (
                format!("pxyz:{},{},{}", vals[0], vals[1], vals[2]),
                vals[0] + vals[1] + vals[2],
                model,
            )
        }
        other => return Err(user(anyhow!("unknown noise family '{other}'"))),
    };
    model.validate().map_err(user)?;
    Ok((label, p, model))
}

fn cmd_codes_list() -> Result<(), CliError> {
    println!("# qgdec codes list");
    println!(
        "{:<12} {:>4} {:>3} {:>3}  {:<7} t/N",
        "name", "N", "k", "d", "css"
    );
    for code in codes::registry_entries() {
        println!(
            "{:<12} {:>4} {:>3} {:>3}  {:<7} {:.3}",
            code.name(),
            code.n(),
            code.k(),
            code.d(),
            code.is_css(),
            qgdec::sim::t_over_n(&code)
        );
    }
    println!("# families accept any odd d >= 3: color:<d>, surface:<d>");
    Ok(())
}

fn cmd_codes_validate(file: &Path) -> Result<(), CliError> {
    println!("# qgdec codes validate file={}", file.display());
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("reading {}", file.display()))
        .map_err(user)?;
    let name = file.file_stem().and_then(|s| s.to_str()).unwrap_or("file");
    let code = codes::load_code(&text, name).map_err(user)?;
    println!(
        "ok: [[{},{},{}]] {} ({} stabilizers, css={})",
        code.n(),
        code.k(),
        code.d(),
        code.name(),
        code.stabilizers().len(),
        code.is_css()
    );
    Ok(())
}

fn cmd_codes_distance(name: &str, wmax: usize) -> Result<(), CliError> {
    println!("# qgdec codes distance name={name} wmax={wmax}");
    let code = resolve_code(name)?;
    let bound =
        codes::verify_distance(&code, wmax, codes::DISTANCE_BUDGET_DEFAULT).map_err(user)?;
    match bound {
        DistanceBound::Exact(w) => {
            println!("distance={w} (claimed d={})", code.d());
            if w != code.d() {
                eprintln!(
                    "warning: measured distance {w} differs from metadata d={}",
                    code.d()
                );
            }
        }
        DistanceBound::AtLeast(w) => println!("distance>={w} (no logical up to weight {wmax})"),
    }
    Ok(())
}

fn graph_json(ext: &GraphExtraction) -> serde_json::Value {
    let nodes: Vec<serde_json::Value> = (0..ext.n())
        .map(|q| {
            serde_json::json!({
                "id": q + 1,
                "side": if ext.is_right(q) { "right" } else { "left" },
                "phase": ext.phase_nodes().contains(&q),
            })
        })
        .collect();
    let edges: Vec<[usize; 2]> = ext.edges().iter().map(|&(a, b)| [a + 1, b + 1]).collect();
    let j: Vec<Vec<u8>> = (0..ext.n())
        .map(|r| {
            (0..ext.n())
                .map(|c| ext.j_matrix().get(r, c) as u8)
                .collect()
        })
        .collect();
    serde_json::json!({ "nodes": nodes, "edges": edges, "J": j })
}

fn graph_dot(ext: &GraphExtraction) -> String {
    let mut out = String::from("graph equivalent_graph {\n  node [shape=circle];\n");
    for q in 0..ext.n() {
        let mut attrs = Vec::new();
        if ext.is_right(q) {
            attrs.push("shape=box".to_string());
        }
        if ext.phase_nodes().contains(&q) {
            attrs.push("peripheries=2".to_string());
        }
        if attrs.is_empty() {
            out.push_str(&format!("  {};\n", q + 1));
        } else {
            out.push_str(&format!("  {} [{}];\n", q + 1, attrs.join(", ")));
        }
    }
    for (a, b) in ext.edges() {
        out.push_str(&format!("  {} -- {};\n", a + 1, b + 1));
    }
    out.push_str("}\n");
    out
}

fn cmd_extract(code_name: &str, json: Option<&Path>, dot: Option<&Path>) -> Result<(), CliError> {
    println!(
        "# qgdec extract code={code_name} json={} dot={}",
        json.map_or("-".into(), |p| p.display().to_string()),
        dot.map_or("-".into(), |p| p.display().to_string())
    );
    let code = resolve_code(code_name)?;
    let ext = extract(&code).map_err(|e| CliError::Internal(e.into()))?;
    println!(
        "nodes={} left={} right={} phase_nodes={} edges={} bipartite={}",
        ext.n(),
        ext.left_nodes().len(),
        ext.right_nodes().len(),
        ext.phase_nodes().len(),
        ext.edges().len(),
        ext.is_bipartite()
    );
    if let Some(path) = json {
        let value = graph_json(&ext);
        std::fs::write(path, serde_json::to_string_pretty(&value).unwrap())
            .with_context(|| format!("writing {}", path.display()))
            .map_err(user)?;
        println!("wrote {}", path.display());
    }
    if let Some(path) = dot {
        std::fs::write(path, graph_dot(&ext))
            .with_context(|| format!("writing {}", path.display()))
            .map_err(user)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_decode(
    code_name: &str,
    syndrome: &str,
    t: &str,
    no_prune: bool,
    no_structured: bool,
    mld: bool,
) -> Result<(), CliError> {
    let code = resolve_code(code_name)?;
    let target = resolve_t(t, &code)?;
    let mut cfg = DecodeConfig::bdd(target);
    cfg.prune = !no_prune;
    cfg.structured = !no_structured;
    cfg.exhaustive_mld = mld;
    let effective_t = if mld { code.n() } else { target.min(code.n()) };
    let ext = extract(&code).map_err(|e| CliError::Internal(e.into()))?;
    println!(
        "# qgdec decode code={} syndrome={syndrome} t={effective_t} prune={} structured={} \
         mld={mld} css_fastpath={} search_space={}",
        code.name(),
        cfg.prune,
        cfg.structured,
        code.is_css(),
        search_space(&code, &ext, effective_t, code.is_css())
    );
    let beta = parse_syndrome(syndrome, code.n() - code.k()).map_err(|e| user(anyhow!(e)))?;
    let result = qgdec::decoder::decode(&code, &ext, &beta, &cfg);
    println!("correction={}", result.correction);
    println!("weight={}", result.weight);
    println!("branch={}", result.branch);
    let weights: Vec<String> = result
        .branch_weights
        .iter()
        .map(|(b, w)| format!("{b}:{w}"))
        .collect();
    println!("branch_weights={}", weights.join(","));
    println!("explored={}", result.explored);
    println!("bounded={}", result.bounded);
    Ok(())
}

fn append_csv_row(path: &Path, force_header: bool, row: &str) -> Result<(), CliError> {
    let fresh = force_header
        || !path.exists()
        || std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut options = std::fs::OpenOptions::new();
    options.create(true).write(true);
    if force_header {
        options.truncate(true);
    } else {
        options.append(true);
    }
    let mut file = options
        .open(path)
        .with_context(|| format!("opening {}", path.display()))
        .map_err(user)?;
    if fresh {
        writeln!(file, "{CSV_HEADER}").map_err(|e| user(anyhow!(e)))?;
    }
    writeln!(file, "{row}").map_err(|e| user(anyhow!(e)))?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_one_point(
    code: &StabilizerCode,
    label: &str,
    p: f64,
    model: &NoiseModel,
    t: usize,
    failures: u64,
    seed: u64,
    workers: usize,
    max_shots: u64,
    csv: Option<&Path>,
    force_header: bool,
) -> Result<(), CliError> {
    let ext = extract(code).map_err(|e| CliError::Internal(e.into()))?;
    let mut run_cfg = RunConfig::new(seed, failures, DecodeConfig::bdd(t));
    run_cfg.workers = workers;
    run_cfg.max_shots = max_shots;
    let r = run_until_failures(code, &ext, model, &run_cfg);
    if r.capped {
        eprintln!(
            "warning: {} at p={p} hit the shot cap ({} shots, {} failures) — partial estimate",
            code.name(),
            r.shots,
            r.failures
        );
    }
    println!(
        "{} {label} p={p} T={t}: pL={:.6e} stderr={:.2e} M={} ML={} wall={:.2}s{}",
        code.name(),
        r.p_l,
        r.stderr,
        r.shots,
        r.failures,
        r.wall_seconds,
        if r.capped { " (capped)" } else { "" }
    );
    if let Some(path) = csv {
        let row = format!(
            "{},{},{},{},{label},{p},{t},{seed},{},{},{},{},{}",
            code.name(),
            code.n(),
            code.k(),
            code.d(),
            r.shots,
            r.failures,
            r.p_l,
            r.stderr,
            r.wall_seconds
        );
        append_csv_row(path, force_header, &row)?;
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let code = resolve_code(&args.code)?;
    let (label, p, model) = parse_noise(&args.noise)?;
    let t = resolve_t(&args.t, &code)?;
    let workers = resolve_workers(args.workers);
    let singleton = singleton_report(&code).ok();
    println!(
        "# qgdec simulate code={} noise={label} p={p} T={t} failures={} seed={} workers={workers} \
         max_shots={} t_over_n={:.3}{}",
        code.name(),
        args.failures,
        args.seed,
        args.max_shots,
        qgdec::sim::t_over_n(&code),
        singleton.map_or(String::new(), |s| format!(" singleton_bound={:.3}", s.bound))
    );
    run_one_point(
        &code,
        &label,
        p,
        &model,
        t,
        args.failures,
        args.seed,
        workers,
        args.max_shots,
        args.csv.as_deref(),
        args.force_header,
    )
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(user(anyhow!(
            "expected --p-grid start:end:step, got '{spec}'"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|s| s.parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| user(anyhow!("invalid number in grid '{spec}'")))?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 || end < start {
        return Err(user(anyhow!("grid must satisfy start <= end, step > 0")));
    }
    let count = ((end - start) / step).round() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    if args.noise != "depolarizing" && args.noise != "bitflip" {
        return Err(user(anyhow!(
            "sweep noise must be 'depolarizing' or 'bitflip', got '{}'",
            args.noise
        )));
    }
    let names: Vec<&str> = args.code.split(',').filter(|s| !s.is_empty()).collect();
    let grid = parse_grid(&args.p_grid)?;
    let workers = resolve_workers(args.workers);
    println!(
        "# qgdec sweep codes={} noise={} p_grid={} failures={} seed={} workers={workers} \
         max_shots={} csv={}",
        args.code,
        args.noise,
        args.p_grid,
        args.failures,
        args.seed,
        args.max_shots,
        args.csv.display()
    );
    let mut force_header = args.force_header;
    for name in names {
        let code = resolve_code(name)?;
        let t = resolve_t(&args.t, &code)?;
        for &p in &grid {
            let model = match args.noise.as_str() {
                "depolarizing" => NoiseModel::depolarizing(p),
                _ => NoiseModel::bitflip(p),
            };
            model.validate().map_err(user)?;
            run_one_point(
                &code,
                &args.noise,
                p,
                &model,
                t,
                args.failures,
                args.seed,
                workers,
                args.max_shots,
                Some(&args.csv),
                force_header,
            )?;
            force_header = false;
        }
    }
    Ok(())
}

fn read_csv_points(path: &Path) -> Result<Vec<CollapsePoint>, CliError> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(user)?;
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("code,") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 13 {
            return Err(user(anyhow!(
                "{}:{}: expected 13 CSV fields, got {}",
                path.display(),
                i + 1,
                fields.len()
            )));
        }
        let parse = |s: &str, what: &str| -> Result<f64, CliError> {
            s.parse::<f64>()
                .map_err(|_| user(anyhow!("{}:{}: invalid {what} '{s}'", path.display(), i + 1)))
        };
        let d = parse(fields[3], "d")? as usize;
        let p = parse(fields[5], "p")?;
        let p_l = parse(fields[10], "pL")?;
        let stderr = parse(fields[11], "stderr")?;
        points.push(CollapsePoint {
            p,
            d,
            p_l,
            stderr: (stderr > 0.0).then_some(stderr),
        });
    }
    Ok(points)
}

fn cmd_collapse(csv: &Path, window: Option<&str>, degree: usize) -> Result<(), CliError> {
    let points = read_csv_points(csv)?;
    if points.is_empty() {
        return Err(user(anyhow!("no data rows in {}", csv.display())));
    }
    let window = match window {
        Some(spec) => {
            let parts: Vec<&str> = spec.split(':').collect();
            if parts.len() != 2 {
                return Err(user(anyhow!("expected --window a:b, got '{spec}'")));
            }
            let a = parts[0]
                .parse::<f64>()
                .map_err(|_| user(anyhow!("invalid window bound '{}'", parts[0])))?;
            let b = parts[1]
                .parse::<f64>()
                .map_err(|_| user(anyhow!("invalid window bound '{}'", parts[1])))?;
            (a, b)
        }
        None => {
            // default: median p +/- 0.03
            let mut ps: Vec<f64> = points.iter().map(|p| p.p).collect();
            ps.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let median = ps[ps.len() / 2];
            (median - 0.03, median + 0.03)
        }
    };
    println!(
        "# qgdec collapse csv={} window={}:{} degree={degree} points={}",
        csv.display(),
        window.0,
        window.1,
        points.len()
    );
    let mut cfg = CollapseConfig::with_window(window);
    cfg.poly_degree = degree;
    let fit = collapse_fit(&points, &cfg).map_err(user)?;
    let report = serde_json::json!({
        "p_c": fit.p_c,
        "nu": fit.nu,
        "residual": fit.residual,
        "degree": fit.poly_degree,
        "window": [fit.window.0, fit.window.1],
        "points_used": fit.points_used,
        "converged": fit.converged,
        "reference": {
            "p_c_opt_color": qgdec::analysis::P_C_OPT_COLOR,
            "p_c_opt_surface": qgdec::analysis::P_C_OPT_SURFACE,
        },
    });
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}
