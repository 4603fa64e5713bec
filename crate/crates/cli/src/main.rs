use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qkl::canon::cache::{KlCache, Outcome};
use qkl::canon::{canonical_basis, KLTable};
use qkl::chars::{
    ch_irreducible_from_table, ch_irreducible_in_window, ch_parabolic_verma, ch_tilting, find_kostant_certificate,
    kw_character, sp_character_qn, CharacterSeries,
};
use qkl::verify::{run_suite, Suite, VerifyConfig};
use qkl::weights::{f_to_lambda, lambda_to_f, linear_extension};
use qkl::{Error, QueerWeight, SuperIndex, WeightFunction};

#[derive(Parser)]
#[command(name = "qkl", version, about = "Canonical bases, Kazhdan-Lusztig coefficients and q(n) characters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory of the on-disk KL table cache.
    #[arg(long, global = true, env = "QKL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Verma,
    Irr,
    Tilt,
    Kw,
    Sp,
}

#[derive(Subcommand)]
enum Command {
    /// Expand U_f in the standard monomial basis.
    Canon {
        /// Shape "m,n"; must agree with the label when given.
        #[arg(long)]
        shape: Option<String>,
        /// Weight function "v1,..,vm|w1,..,wn".
        #[arg(long, conflicts_with = "lambda", required_unless_present = "lambda", allow_hyphen_values = true)]
        f: Option<String>,
        /// q(n) weight "k=K;zeta;a1,..,an".
        #[arg(long)]
        lambda: Option<String>,
        /// Depth of the window of ℓ(1) coefficients.
        #[arg(long, default_value_t = 6)]
        window: u32,
    },
    /// Truncated character of a q(n)-module.
    Char {
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Kind::Irr)]
        kind: Kind,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value_t = 6)]
        window: u32,
        #[arg(long)]
        shape: Option<String>,
    },
    /// Run verification suites and report as JSON.
    Verify {
        /// One of hecke, procedure, lemma25, closed-form, inversion, shift,
        /// typical, triangle, kw, sp, translation, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value_t = 6)]
        window: u32,
        #[arg(long)]
        shape: Option<String>,
        #[arg(long, default_value_t = VerifyConfig::default().seed)]
        seed: u64,
    },
    /// Inspect or clear the KL table cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Clone, Copy)]
enum CacheAction {
    List,
    Clear,
    Stats,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Lib(Error::Parse(_)) => 2,
            Failure::Lib(Error::CacheLocked(_)) => 4,
            Failure::Lib(_) => 3,
            Failure::Verify(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) | Failure::Verify(m) => m.clone(),
        }
    }
}

type Outcome2<T> = std::result::Result<T, Failure>;

fn parse_shape(s: &str) -> Outcome2<SuperIndex> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [m, n] => match (m.parse(), n.parse()) {
            (Ok(m), Ok(n)) => Ok(SuperIndex::new(m, n)),
            _ => Err(Failure::Usage(format!("malformed shape {s:?}"))),
        },
        _ => Err(Failure::Usage(format!("shape must be \"m,n\", got {s:?}"))),
    }
}

fn check_shape(shape: Option<&str>, actual: SuperIndex) -> Outcome2<()> {
    if let Some(s) = shape {
        let want = parse_shape(s)?;
        if want != actual {
            return Err(Failure::Usage(format!("label has shape {actual} but --shape is {want}")));
        }
    }
    Ok(())
}

fn parse_f(s: &str) -> Outcome2<WeightFunction> {
    s.parse::<WeightFunction>().map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_lambda(s: &str) -> Outcome2<QueerWeight> {
    s.parse::<QueerWeight>().map_err(|e| Failure::Usage(e.to_string()))
}

fn open_cache(dir: &Option<PathBuf>) -> Outcome2<Option<KlCache>> {
    Ok(match dir {
        Some(d) => Some(KlCache::open(d)?),
        None => None,
    })
}

fn table_for(cache: &Option<KlCache>, anchor: &WeightFunction, window: u32) -> Outcome2<KLTable> {
    match cache {
        Some(c) => {
            let (t, outcome) = c.table(anchor, window)?;
            let word = match outcome {
                Outcome::Hit => "hit",
                Outcome::Miss => "miss",
                Outcome::Stale => "stale entry ignored",
            };
            eprintln!("cache {word}: {anchor} at window {window}");
            Ok(t)
        }
        None => Ok(KLTable::compute(anchor, window)?),
    }
}

fn cmd_canon(cli: &Cli, shape: Option<&str>, f: Option<&str>, lambda: Option<&str>, window: u32) -> Outcome2<String> {
    let f = match (f, lambda) {
        (Some(f), _) => parse_f(f)?,
        (None, Some(l)) => lambda_to_f(&parse_lambda(l)?),
        (None, None) => return Err(Failure::Usage("one of --f or --lambda is required".into())),
    };
    check_shape(shape, f.shape())?;
    f.require_dominant()?;
    let u = canonical_basis(&f)?;
    let mut order = linear_extension(u.labels().cloned().collect())?;
    order.reverse();
    let table = table_for(&open_cache(&cli.cache_dir)?, &f, window)?;
    let rows: Vec<(String, String)> = order.iter().map(|g| (g.to_string(), u.coeff(g).to_string())).collect();
    Ok(match cli.format {
        Format::Text => rows.iter().map(|(g, c)| format!("K_{{{g}}}\t{c}\n")).collect(),
        Format::Csv => {
            let mut s = String::from("label,u\n");
            for (g, c) in &rows {
                s.push_str(&format!("\"{g}\",{c}\n"));
            }
            s
        }
        Format::Latex => {
            let terms: Vec<String> = rows
                .iter()
                .map(|(g, c)| {
                    if c == "1" {
                        format!("K_{{{g}}}")
                    } else {
                        format!("({c})K_{{{g}}}")
                    }
                })
                .collect();
            format!("U_{{{f}}} = {}\n", terms.join(" + "))
        }
        Format::Json => {
            let dual: Vec<Value> = table
                .anchor_dual_column()
                .iter()
                .rev()
                .map(|(g, c)| json!([g.to_string(), c.to_string()]))
                .collect();
            let doc = json!({
                "f": f.to_string(),
                "shape": f.shape().to_string(),
                "lambda": f_to_lambda(&f).to_string(),
                "canonical": rows.iter().map(|(g, c)| json!([g, c])).collect::<Vec<_>>(),
                "window": window,
                "dual_at_one": dual,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    })
}

fn render_series(format: Format, ch: &CharacterSeries, extra: Option<Value>) -> String {
    match format {
        Format::Json => {
            let mut doc = ch.to_json();
            if let Some(Value::Object(m)) = extra {
                for (k, v) in m {
                    doc[k] = v;
                }
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        Format::Csv => ch.to_csv(),
        Format::Latex => {
            let prefix = extra
                .as_ref()
                .and_then(|e| e["prefactor"].as_str().map(|p| format!("% prefactor {p}\n")))
                .unwrap_or_default();
            format!("{prefix}{}\n", ch.to_latex())
        }
        Format::Text => {
            let mut s = String::new();
            if let Some(p) = extra.as_ref().and_then(|e| e["prefactor"].as_str()) {
                s.push_str(&format!("# prefactor {p}\n"));
            }
            for (e, c, h) in ch.sorted_terms() {
                let (x, y) = e.split_at(ch.k());
                let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                s.push_str(&format!("{h}\t{c}\t{}|{}\n", join(x), join(y)));
            }
            s
        }
    }
}

fn cmd_char(cli: &Cli, lambda: &str, kind: Kind, depth: u32, window: u32, shape: Option<&str>) -> Outcome2<String> {
    let lam = parse_lambda(lambda)?;
    check_shape(shape, lambda_to_f(&lam).shape())?;
    lam.require_dominant()?;
    let mut extra = None;
    let ch = match kind {
        Kind::Verma => ch_parabolic_verma(&lam, depth)?,
        Kind::Tilt => ch_tilting(&lam, depth)?,
        Kind::Sp => sp_character_qn(&lam, depth)?,
        Kind::Irr => match open_cache(&cli.cache_dir)? {
            Some(cache) => {
                if window < depth {
                    return Err(Error::WindowTooSmall { window, depth }.into());
                }
                let table = table_for(&Some(cache), &lambda_to_f(&lam), window)?;
                ch_irreducible_from_table(&table, depth)?
            }
            None => ch_irreducible_in_window(&lam, depth, window)?,
        },
        Kind::Kw => {
            let steps = lam.n() * lam.n();
            let cert = find_kostant_certificate(&lam, steps)?
                .ok_or_else(|| Error::Precondition(format!("no Kostant certificate found for {lam}")))?;
            let sharp: u64 = (1..=cert.roots.len() as u64).product();
            let clifford = 1u64 << lam.n().div_ceil(2);
            let prefactor = if clifford.is_multiple_of(sharp) {
                (clifford / sharp).to_string()
            } else {
                format!("{clifford}/{sharp}")
            };
            extra = Some(json!({"prefactor": prefactor, "certificate": cert.to_json()}));
            kw_character(&lam, &cert, depth)?
        }
    };
    Ok(render_series(cli.format, &ch, extra))
}

fn cmd_verify(suite: &str, cfg: VerifyConfig) -> Outcome2<String> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(|e| Failure::Usage(e.to_string()))?]
    };
    let reports: Vec<Value> = suites
        .iter()
        .map(|&s| {
            let r = run_suite(s, &cfg);
            eprintln!("{:12} {} ({} cases, {} failed)", s.name(), if r.pass() { "pass" } else { "FAIL" }, r.cases.len(), r.failed());
            r.to_json()
        })
        .collect();
    let pass = reports.iter().all(|r| r["pass"] == true);
    let doc = json!({
        "pass": pass,
        "config": {
            "max_rank": cfg.max_rank,
            "depth": cfg.depth,
            "window": cfg.window,
            "shape": cfg.shape.map(|s| s.to_string()),
            "seed": cfg.seed,
        },
        "suites": reports,
    });
    let out = format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"));
    if pass {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verify("verification failed".into()))
    }
}

fn cmd_cache(cli: &Cli, action: CacheAction) -> Outcome2<String> {
    let cache = open_cache(&cli.cache_dir)?
        .ok_or_else(|| Failure::Usage("no cache directory: pass --cache-dir or set QKL_CACHE_DIR".into()))?;
    let doc = match action {
        CacheAction::List => {
            let entries = cache.list()?;
            if cli.format == Format::Text {
                return Ok(entries
                    .iter()
                    .map(|e| {
                        let state = if e.is_current() { "current" } else { "stale" };
                        format!("{}\t{}\t{}\tv{} {}\t{} bytes\n", e.anchor, e.depth, e.members, e.version, state, e.bytes)
                    })
                    .collect());
            }
            Value::Array(entries.iter().map(|e| e.to_json()).collect())
        }
        CacheAction::Clear => json!({"removed": cache.clear()?}),
        CacheAction::Stats => cache.stats()?.to_json(),
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")))
}

fn run(cli: &Cli) -> Outcome2<String> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Canon { shape, f, lambda, window } => {
            cmd_canon(cli, shape.as_deref(), f.as_deref(), lambda.as_deref(), *window)
        }
        Command::Char {
            lambda,
            kind,
            depth,
            window,
            shape,
        } => cmd_char(cli, lambda, *kind, *depth, *window, shape.as_deref()),
        Command::Verify {
            suite,
            max_rank,
            depth,
            window,
            shape,
            seed,
        } => {
            let cfg = VerifyConfig {
                max_rank: *max_rank,
                depth: *depth,
                window: *window,
                shape: shape.as_deref().map(parse_shape).transpose()?,
                seed: *seed,
                ..VerifyConfig::default()
            };
            cmd_verify(suite, cfg)
        }
        Command::Cache { action } => cmd_cache(cli, *action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("qkl: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
