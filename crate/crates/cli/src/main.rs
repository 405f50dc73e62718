//! Command-line surface for the Wishart-tensor marginal engines: exact moment
//! polynomials, limit moments per asymptotic regime, Monte-Carlo estimates,
//! eigenvalue histograms, map enumeration and three-way comparisons.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain/engine error,
//! 4 comparison failure (statistical or oracle).

mod output;
mod wordspec;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use std::process::ExitCode;

use output::OutputSink;
use wishart_marginals::asymptotics::{
    self, balanced_general_count, free_cumulant_unbalanced4, limit_moment_balanced4,
    limit_moment_balanced_general, limit_moment_two_chain, limit_moment_unbalanced4,
    limit_moment_unbalanced_general, mp_atom, mp_density, mp_squared_density, mp_support,
    regime_exponent_mu, tree_count_recursive,
};
use wishart_marginals::maps::{enumerate_maps, MapRecord};
use wishart_marginals::moments::{
    exact_moment, exact_moment_p_and_q, wick_oracle_moment, DimensionProfile,
};
use wishart_marginals::montecarlo::{eigen_hist, mc_entrywise_bipartite, mc_moment, SpectrumSpec};
use wordspec::WordSpec;

const SEED_ENV: &str = "WISHART_MARGINALS_SEED";

#[derive(Parser)]
#[command(
    name = "wishart-marginals",
    version,
    about = "Mixed moments of overlapping marginals of Gaussian Wishart tensors",
    long_about = "Exact polynomial moments, large-dimension limits and Monte-Carlo estimates \
                  for (possibly permuted, overlapping) marginals of complex Gaussian tensors. \
                  Colors and word positions are 0-based; position 0 is the rightmost trace factor."
)]
struct Cli {
    /// Cap on worker threads used by the engines.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact mixed-moment polynomial in the color dimensions.
    Exact(ExactArgs),
    /// Limit moments and free cumulants per asymptotic regime.
    Limit(LimitArgs),
    /// Monte-Carlo estimate of a mixed moment.
    Mc(McArgs),
    /// Pooled eigenvalue histogram of a sampled spectrum (CSV).
    Hist(HistArgs),
    /// Marčenko-Pastur reference densities (CSV with an atom header).
    Density(DensityArgs),
    /// Enumerate one-black-vertex maps, optionally filtered by genus.
    Enumerate(EnumerateArgs),
    /// Exact vs limit vs Monte-Carlo comparison table; exits 4 on |z| > 5.
    Compare(CompareArgs),
}

#[derive(Args)]
struct ExactArgs {
    #[command(flatten)]
    word: WordSpec,

    /// Keep the dimensions as formal variables.
    #[arg(long, conflicts_with = "dims")]
    symbolic: bool,

    /// Evaluate at these per-color dimensions, e.g. `8,4,4,8`.
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<u64>>,

    /// Re-derive the polynomial with the brute-force Wick oracle and fail on
    /// any mismatch.
    #[arg(long)]
    oracle: bool,

    /// Emit the normalized moment lists of the marginal product and of the
    /// Fuss-Catalan model at this order instead of a word moment.
    #[arg(long, conflicts_with_all = ["symbolic", "dims", "oracle"])]
    pq: Option<usize>,

    /// `json` (default) or `text` (canonical polynomial string).
    #[arg(long, default_value = "json")]
    format: String,

    /// Output file (default stdout).
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct LimitArgs {
    #[command(flatten)]
    word: WordSpec,

    /// One of: balanced4, unbalanced4, balanced-general, mu,
    /// unbalanced-general.
    #[arg(long)]
    regime: Option<String>,

    /// Evaluate the limit at this ratio `c`.
    #[arg(long)]
    c: Option<f64>,

    /// Evaluate the limit at this fixed moving dimension `m`.
    #[arg(long)]
    m: Option<f64>,

    /// Per-color constants `c_i` for the balanced general regime.
    #[arg(long, value_delimiter = ',')]
    cs: Option<Vec<f64>>,

    /// Never-kept colors that are `m`-sized in the unbalanced general regime.
    #[arg(long, value_delimiter = ',')]
    declare_moving: Option<Vec<usize>>,

    /// Also report the free cumulant (unbalanced4 only).
    #[arg(long)]
    cumulant: bool,

    /// 2-chain expansion mode: numerator run lengths, e.g. `1,1`.
    #[arg(long, value_delimiter = ',', requires = "s", conflicts_with = "regime")]
    r: Option<Vec<u64>>,

    /// 2-chain expansion mode: denominator run lengths.
    #[arg(long, value_delimiter = ',')]
    s: Option<Vec<u64>>,

    /// Check the 2-chain expansion against the plane-tree recursions.
    #[arg(long)]
    trees: bool,

    /// Marčenko-Pastur moment of this order (polynomial in c).
    #[arg(long, conflicts_with_all = ["regime", "r"])]
    mp_moment: Option<usize>,

    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct McArgs {
    #[command(flatten)]
    word: WordSpec,

    #[arg(long, value_delimiter = ',')]
    dims: Vec<u64>,

    #[arg(long, default_value_t = 10_000)]
    samples: u64,

    /// Defaults to $WISHART_MARGINALS_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,

    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct HistArgs {
    /// Bipartite Wishart spectrum of parameters (N, M), rescaled by 1/N.
    #[arg(long, requires = "n", requires = "m", conflicts_with = "product")]
    bipartite: bool,

    /// Product spectrum W_AB W_AC at dimensions (N, m, m, D), rescaled by
    /// (mN)^-2.
    #[arg(long)]
    product: bool,

    #[arg(long = "N")]
    n: Option<u64>,

    #[arg(long = "M")]
    m: Option<u64>,

    /// Fourth dimension of the product spectrum (defaults to N).
    #[arg(long = "D")]
    d: Option<u64>,

    #[arg(long, default_value_t = 40)]
    bins: usize,

    #[arg(long, default_value_t = 50)]
    samples: u64,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct DensityArgs {
    /// `mp` or `mp-squared`.
    #[arg(long, default_value = "mp")]
    kind: String,

    #[arg(long, default_value_t = 1.0)]
    c: f64,

    #[arg(long, default_value_t = 200)]
    points: usize,

    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(short, long)]
    p: usize,

    /// Keep only maps of this genus.
    #[arg(long)]
    genus: Option<usize>,

    /// Emit only the count.
    #[arg(long)]
    count_only: bool,

    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    word: WordSpec,

    /// Entrywise cyclic-product check E[W_{i1 ip} ... W_{i2 i1}] = M of a
    /// bipartite Wishart matrix; needs --dims N,M and --p.
    #[arg(long)]
    entrywise: bool,

    #[arg(long, value_delimiter = ',')]
    dims: Vec<u64>,

    #[arg(long, default_value_t = 10_000)]
    samples: u64,

    #[arg(long)]
    seed: Option<u64>,

    #[arg(long)]
    output: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore the error if a pool already exists (e.g. repeated init in
        // tests); results do not depend on the thread count.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let outcome = match cli.command {
        Command::Exact(args) => cmd_exact(args),
        Command::Limit(args) => cmd_limit(args),
        Command::Mc(args) => cmd_mc(args),
        Command::Hist(args) => cmd_hist(args),
        Command::Density(args) => cmd_density(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Compare(args) => cmd_compare(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(3)
        }
    }
}

type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn seed_or_env(seed: Option<u64>) -> u64 {
    seed.or_else(|| std::env::var(SEED_ENV).ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

fn cmd_exact(args: ExactArgs) -> CmdResult {
    let mut sink = OutputSink::create(args.output.as_deref())?;

    if let Some(p) = args.pq {
        let (p_series, q_series) = exact_moment_p_and_q(p)?;
        if args.format == "text" {
            sink.line(&format!("P: {}", p_series.canonical_string()))?;
            sink.line(&format!("Q: {}", q_series.canonical_string()))?;
        } else {
            sink.json(&serde_json::json!({
                "order": p,
                "p_normalized": p_series.canonical_string(),
                "p_coeffs": p_series.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "q_normalized": q_series.canonical_string(),
                "q_coeffs": q_series.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }))?;
        }
        return Ok(ExitCode::SUCCESS);
    }

    let word = args.word.build()?;
    if !args.symbolic && args.dims.is_none() {
        return Err("pass --symbolic or --dims".into());
    }
    let poly = exact_moment(&word)?;

    let mut oracle_checked = None;
    if args.oracle {
        let oracle = wick_oracle_moment(&word)?;
        if oracle != poly {
            eprintln!("oracle mismatch: Wick loop counting disagrees with the map formula");
            return Ok(ExitCode::from(4));
        }
        oracle_checked = Some(true);
    }

    let value = match &args.dims {
        Some(dims) => {
            word.validate_dims(dims)?;
            Some(poly.evaluate(dims)?.to_string())
        }
        None => None,
    };

    if args.format == "text" {
        match &value {
            Some(v) => sink.line(v)?,
            None => sink.line(&poly.canonical_string())?,
        }
    } else {
        sink.json(&serde_json::json!({
            "word": args.word.display(),
            "variables": poly.legend().names(),
            "terms": poly.term_records(),
            "canonical": poly.canonical_string(),
            "value": value,
            "oracle_checked": oracle_checked,
        }))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_limit(args: LimitArgs) -> CmdResult {
    let mut sink = OutputSink::create(args.output.as_deref())?;

    if let Some(p) = args.mp_moment {
        let moment = asymptotics::mp_moment(p)?;
        sink.json(&serde_json::json!({
            "kind": "mp-moment",
            "order": p,
            "terms": moment.records(),
            "canonical": moment.canonical_string(),
            "value": args.c.map(|c| moment.eval(c, 1.0)),
        }))?;
        return Ok(ExitCode::SUCCESS);
    }

    if let Some(r) = &args.r {
        let s = args.s.as_ref().ok_or("--r needs --s")?;
        let chains = limit_moment_two_chain(r, s)?;
        let trees = if args.trees {
            let t = tree_count_recursive(r, s)?;
            if num_bigint_matches(&chains, &t) {
                Some(t.to_string())
            } else {
                eprintln!("tree recursion disagrees with the 2-chain expansion");
                return Ok(ExitCode::from(4));
            }
        } else {
            None
        };
        sink.json(&serde_json::json!({
            "kind": "two-chain",
            "r": r,
            "s": s,
            "value": chains.to_string(),
            "tree_count": trees,
        }))?;
        return Ok(ExitCode::SUCCESS);
    }

    let regime = args
        .regime
        .as_deref()
        .ok_or("pass --regime, --r or --mp-moment")?;
    match regime {
        "balanced4" => {
            let letters = args.word.four_partite_letters()?;
            let lim = limit_moment_balanced4(&letters)?;
            sink.json(&serde_json::json!({
                "regime": "balanced4",
                "terms": lim.records(),
                "canonical": lim.canonical_string(),
                "value": args.c.map(|c| lim.eval(c, 1.0)),
            }))?;
        }
        "unbalanced4" => {
            let letters = args.word.four_partite_letters()?;
            let lim = limit_moment_unbalanced4(&letters)?;
            let cumulant = args.cumulant.then(|| free_cumulant_unbalanced4(&letters));
            sink.json(&serde_json::json!({
                "regime": "unbalanced4",
                "terms": lim.records(),
                "canonical": lim.canonical_string(),
                "value": match (args.c, args.m) {
                    (Some(c), Some(m)) => Some(lim.eval(c, m)),
                    _ => None,
                },
                "free_cumulant": cumulant.map(|k| k.canonical_string()),
            }))?;
        }
        "balanced-general" => {
            let word = args.word.build()?;
            let count = balanced_general_count(&word)?;
            let weighted = match &args.cs {
                Some(cs) => Some(limit_moment_balanced_general(&word, cs)?),
                None => None,
            };
            sink.json(&serde_json::json!({
                "regime": "balanced-general",
                "count": count.to_string(),
                "weighted": weighted,
            }))?;
        }
        "mu" => {
            let word = args.word.build()?;
            let (mu, argmin) = regime_exponent_mu(&word)?;
            sink.json(&serde_json::json!({
                "regime": "mu",
                "mu": mu,
                "minimizers": argmin.iter().map(MapRecord::from).collect::<Vec<_>>(),
            }))?;
        }
        "unbalanced-general" => {
            let word = args.word.build()?;
            let lim = limit_moment_unbalanced_general(&word, args.declare_moving.as_deref())?;
            sink.json(&serde_json::json!({
                "regime": "unbalanced-general",
                "terms": lim.records(),
                "canonical": lim.canonical_string(),
                "value": match (args.c, args.m) {
                    (Some(c), Some(m)) => Some(lim.eval(c, m)),
                    _ => None,
                },
            }))?;
        }
        other => return Err(format!("unknown regime {other:?}").into()),
    }
    Ok(ExitCode::SUCCESS)
}

fn num_bigint_matches(a: &num_bigint::BigInt, b: &num_bigint::BigUint) -> bool {
    a == &num_bigint::BigInt::from(b.clone())
}

fn cmd_mc(args: McArgs) -> CmdResult {
    let mut sink = OutputSink::create(args.output.as_deref())?;
    let word = args.word.build()?;
    let profile = DimensionProfile::new(args.dims.clone())?;
    let seed = seed_or_env(args.seed);
    let est = mc_moment(&word, &profile, args.samples, seed)?;
    sink.json(&est)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_hist(args: HistArgs) -> CmdResult {
    let mut sink = OutputSink::create(args.output.as_deref())?;
    let seed = seed_or_env(args.seed);
    let spec = if args.product {
        SpectrumSpec::MarginalProduct {
            n: args.n.ok_or("--product needs --N")?,
            m: args.m.ok_or("--product needs --M")?,
            d: args.d.or(args.n).unwrap(),
        }
    } else if args.bipartite {
        SpectrumSpec::BipartiteWishart {
            n: args.n.unwrap(),
            m: args.m.unwrap(),
        }
    } else {
        return Err("pass --bipartite or --product".into());
    };
    let (hist, _) = eigen_hist(&spec, args.bins, args.samples, seed)?;
    sink.line("bin_left,bin_right,density")?;
    for i in 0..hist.bin_left.len() {
        sink.line(&format!(
            "{},{},{}",
            hist.bin_left[i], hist.bin_right[i], hist.density[i]
        ))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_density(args: DensityArgs) -> CmdResult {
    let mut sink = OutputSink::create(args.output.as_deref())?;
    let c = args.c;
    if c <= 0.0 || !c.is_finite() {
        return Err("c must be positive".into());
    }
    let squared = match args.kind.as_str() {
        "mp" => false,
        "mp-squared" => true,
        other => return Err(format!("unknown density kind {other:?}").into()),
    };
    let (a, b) = mp_support(c);
    let (lo, hi) = if squared { (a * a, b * b) } else { (a, b) };
    sink.line(&format!("atom,{}", mp_atom(c)))?;
    sink.line("x,density")?;
    for i in 0..=args.points {
        let x = lo + (hi - lo) * i as f64 / args.points as f64;
        let v = if squared {
            mp_squared_density(x, c)
        } else {
            mp_density(x, c)
        };
        sink.line(&format!("{x},{v}"))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(args: EnumerateArgs) -> CmdResult {
    let mut sink = OutputSink::create(args.output.as_deref())?;
    let maps = enumerate_maps(args.p, args.genus)?;
    let records: Vec<MapRecord> = maps.iter().map(MapRecord::from).collect();
    sink.json(&serde_json::json!({
        "p": args.p,
        "genus": args.genus,
        "count": records.len(),
        "maps": if args.count_only { None } else { Some(records) },
    }))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(serde::Serialize)]
struct CompareRow {
    name: String,
    exact: f64,
    limit: Option<f64>,
    mc_mean: f64,
    mc_stderr: f64,
    z: f64,
}

fn cmd_compare(args: CompareArgs) -> CmdResult {
    let mut sink = OutputSink::create(args.output.as_deref())?;
    let seed = seed_or_env(args.seed);
    let mut rows: Vec<CompareRow> = Vec::new();

    if args.entrywise {
        if args.dims.len() != 2 {
            return Err("--entrywise needs --dims N,M".into());
        }
        let (n, m) = (args.dims[0], args.dims[1]);
        let p = args.word.p_len.unwrap_or(3);
        let est = mc_entrywise_bipartite(n, m, p, args.samples, seed)?;
        let exact = m as f64;
        rows.push(CompareRow {
            name: format!("entrywise cyclic product, p={p}"),
            exact,
            limit: Some(exact),
            z: est.z_score(exact),
            mc_mean: est.mean,
            mc_stderr: est.stderr,
        });
    } else {
        let word = args.word.build()?;
        let profile = DimensionProfile::new(args.dims.clone())?;
        word.validate_dims(profile.dims())?;
        let exact = exact_moment(&word)?
            .evaluate(profile.dims())?
            .to_f64()
            .ok_or("exact value exceeds f64")?;
        let est = mc_moment(&word, &profile, args.samples, seed)?;
        let limit = limit_prediction(&word, profile.dims());
        rows.push(CompareRow {
            name: args.word.display(),
            exact,
            limit,
            z: est.z_score(exact),
            mc_mean: est.mean,
            mc_stderr: est.stderr,
        });
    }

    let mut worst: f64 = 0.0;
    sink.line("name,exact,limit,mc_mean,mc_stderr,z")?;
    for row in &rows {
        worst = worst.max(row.z);
        sink.line(&format!(
            "{},{},{},{},{},{}",
            row.name,
            row.exact,
            row.limit.map_or("-".to_string(), |l| l.to_string()),
            row.mc_mean,
            row.mc_stderr,
            row.z
        ))?;
    }
    if worst > 5.0 {
        eprintln!("comparison failed: max |z| = {worst:.2} > 5");
        return Ok(ExitCode::from(4));
    }
    Ok(ExitCode::SUCCESS)
}

/// The finite-size prediction built from the limit formulas, when the word
/// fits one of the closed-form regimes.
fn limit_prediction(word: &wishart_marginals::moments::MarginalWord, dims: &[u64]) -> Option<f64> {
    let p = word.len() as i32;
    if word.is_bipartite() {
        let (n, m) = (dims[0] as f64, dims[1] as f64);
        let moment = asymptotics::mp_moment(word.len()).ok()?;
        return Some(n.powi(p + 1) * moment.eval(m / n, 1.0));
    }
    if let Some(letters) = word.as_four_partite() {
        let (na, nbc, nd) = (dims[0] as f64, dims[1] as f64, dims[3] as f64);
        let lim = limit_moment_unbalanced4(&letters).ok()?;
        return Some((nbc * na).powi(p + 1) * lim.eval(nd / na, nbc));
    }
    None
}
