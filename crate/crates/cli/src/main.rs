mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use bridgekit_core::census::{
    brute_counts_with, closed_row, compare_rows, table2, verify_identities, CensusConfig, CensusRow,
};
use bridgekit_core::classify::{self, table1};
use bridgekit_core::epim::{admits_epi, epi_graph, epi_targets, target_knots, SearchBudget};
use bridgekit_core::knot::{is_torus_two_strand, knot_from_word};
use bridgekit_core::report::{self, Number};
use bridgekit_core::{Error, EvenWord, Parallelism};

use config::{Config, Format, CEILING_ENV};

#[derive(Parser, Debug)]
#[command(
    name = "bridgekit",
    version,
    about = "Two-bridge knot invariants, census and epimorphisms"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Settings file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Largest crossing number that may be enumerated.
    #[arg(long, global = true)]
    ceiling: Option<u32>,
    /// Largest number of interleavings composed per epimorphism query.
    #[arg(long, global = true)]
    search_budget: Option<u64>,
    /// Worker threads (0 = all cores, 1 = sequential).
    #[arg(long, short = 'j', global = true)]
    jobs: Option<usize>,
    /// Print rationals as 12-significant-digit decimals.
    #[arg(long, global = true)]
    decimal: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of the knot with the given even continued fraction.
    Invariants {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Knot counts and average braid index for a crossing number or range.
    Census {
        /// `c`, `a..b` or `a..=b` (both ends included).
        range: String,
        /// Compare brute force with the closed formulas and the reference
        /// table; exits 2 on any difference.
        #[arg(long)]
        verify: bool,
        /// Only the columns that identify a knot with its mirror image.
        #[arg(long)]
        up_to_mirror: bool,
        /// Evaluate the closed formulas without enumerating.
        #[arg(long)]
        formulas_only: bool,
    },
    /// Epimorphism queries.
    Epi {
        #[command(subcommand)]
        command: EpiCommand,
    },
    /// Non-minimal knots with braid index at most 4.
    Table1 {
        #[arg(long, default_value_t = 15)]
        max_c: u32,
        /// List chiral pairs separately instead of up to mirror image.
        #[arg(long)]
        with_mirrors: bool,
    },
    /// Check the binomial-sum identities behind the census formulas.
    Identities {
        #[arg(long, default_value_t = 200)]
        n_max: u32,
    },
}

#[derive(Subcommand, Debug)]
enum EpiCommand {
    /// Every epimorphism from the knot onto a smaller two-bridge knot.
    Targets {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Whether the first knot maps onto the second.
    Check {
        #[arg(allow_hyphen_values = true)]
        big: String,
        #[arg(allow_hyphen_values = true)]
        small: String,
    },
    /// Epimorphism digraph of all knots up to a crossing number.
    Graph {
        #[arg(long)]
        max_c: u32,
    },
    /// Whether the knot is minimal.
    Minimal {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

/// Failure with its exit code.
enum Failure {
    Mismatch(String),
    Input(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 2,
            Failure::Input(_) => 3,
            Failure::Resource(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Input(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::ResourceBound { .. } | Error::BudgetExceeded { .. } => Failure::Resource(msg),
            Error::NonIntegralFormula { .. } | Error::AuditFailure(_) => Failure::Mismatch(msg),
            _ => Failure::Input(msg),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    config: Config,
    number: Number,
    parallelism: Parallelism,
}

impl Ctx {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_compositions: self.config.search_budget,
            parallelism: self.parallelism,
        }
    }

    fn census(&self) -> CensusConfig {
        CensusConfig {
            ceiling: self.config.ceiling,
            parallelism: self.parallelism,
        }
    }

    fn format(&self, allowed: &[Format]) -> Result<Format, Failure> {
        let f = self.config.format;
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(Failure::Input(format!(
                "format `{f}` is not available for this command"
            )))
        }
    }
}

const TABLES: [Format; 3] = [Format::Md, Format::Csv, Format::Json];

fn parse_word(s: &str) -> Result<EvenWord, Failure> {
    s.parse::<EvenWord>()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn parse_range(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Input(format!("invalid crossing range `{s}`"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if lo < 3 || lo > hi {
        return Err(Failure::Input(format!(
            "crossing range `{s}` must satisfy 3 <= start <= end"
        )));
    }
    Ok((lo, hi))
}

fn cmd_invariants(ctx: &Ctx, word: &str) -> Outcome {
    let w = parse_word(word)?;
    let k = knot_from_word(&w)?;
    let value = w.eval();
    let torus = is_torus_two_strand(&k);
    let fields: Vec<(&str, String)> = vec![
        ("word", w.to_string()),
        ("canonical", k.canon().to_string()),
        ("mirror canonical", k.mirror_class().canon().to_string()),
        ("name", k.mirror_class().name()),
        ("value", value.to_string()),
        ("crossing", k.crossing().to_string()),
        ("braid", k.braid().to_string()),
        ("genus", k.genus().to_string()),
        ("sign changes", k.sign_changes().to_string()),
        (
            "torus",
            torus.map_or("-".to_string(), |p| format!("T({p},2)")),
        ),
    ];
    match ctx.format(&TABLES)? {
        Format::Json => {
            let v = json!({
                "word": w.to_string(),
                "canonical": k.canon().to_string(),
                "mirror_canonical": k.mirror_class().canon().to_string(),
                "name": k.mirror_class().name(),
                "value": value.to_string(),
                "crossing": k.crossing(),
                "braid": k.braid(),
                "genus": k.genus(),
                "sign_changes": k.sign_changes(),
                "torus": torus,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("json value"));
        }
        Format::Csv => {
            println!("field,value");
            for (f, v) in fields {
                println!("{f},\"{v}\"");
            }
        }
        _ => {
            println!("| field | value |\n|---|---|");
            for (f, v) in fields {
                println!("| {f} | {v} |");
            }
        }
    }
    Ok(())
}

fn cmd_census(
    ctx: &Ctx,
    range: &str,
    verify: bool,
    up_to_mirror: bool,
    formulas_only: bool,
) -> Outcome {
    let format = ctx.format(&TABLES)?;
    let (lo, hi) = parse_range(range)?;
    let census = ctx.census();
    let mut rows: Vec<CensusRow> = Vec::new();
    let mut mismatches = Vec::new();
    for c in lo..=hi {
        let row = if formulas_only {
            closed_row(c)?
        } else {
            brute_counts_with(c, &census)?
        };
        if verify {
            if !formulas_only {
                mismatches.extend(compare_rows(&row, &closed_row(c)?));
            }
            mismatches.extend(table2::diff_against_reference(&row).unwrap_or_default());
        }
        rows.push(row);
    }
    match format {
        Format::Json => println!("{}", report::census_json(&rows)),
        Format::Csv => print!("{}", report::census_csv(&rows, ctx.number, up_to_mirror)),
        _ => print!(
            "{}",
            report::census_markdown(&rows, ctx.number, up_to_mirror)
        ),
    }
    if verify {
        for m in &mismatches {
            eprintln!(
                "mismatch at c = {}: {} is {} but expected {}",
                m.c, m.field, m.left, m.right
            );
        }
        if !mismatches.is_empty() {
            return Err(Failure::Mismatch(format!(
                "{} mismatches",
                mismatches.len()
            )));
        }
        eprintln!("verified {} rows: no mismatches", rows.len());
    }
    Ok(())
}

fn print_witnesses(format: Format, ws: &[bridgekit_core::epim::EpiWitness]) {
    match format {
        Format::Json => println!("{}", report::witnesses_json(ws)),
        Format::Csv => print!("{}", report::witnesses_csv(ws)),
        _ => print!("{}", report::witnesses_markdown(ws)),
    }
}

fn onto_names(ws: &[bridgekit_core::epim::EpiWitness]) -> String {
    let mut names: Vec<String> = target_knots(ws)
        .iter()
        .map(|k| k.mirror_class().name())
        .collect();
    names.sort_by_key(|n| (n.len(), n.clone()));
    names.dedup();
    names.join(" and ")
}

fn budget_failure(format: Format, e: Error) -> Failure {
    if let Error::BudgetExceeded { partial, .. } = &e {
        eprintln!(
            "partial results ({} witnesses found before the budget ran out):",
            partial.len()
        );
        print_witnesses(format, partial);
    }
    e.into()
}

fn cmd_epi(ctx: &Ctx, command: &EpiCommand) -> Outcome {
    let budget = ctx.budget();
    match command {
        EpiCommand::Targets { word } => {
            let format = ctx.format(&TABLES)?;
            let k = knot_from_word(&parse_word(word)?)?;
            let ws = epi_targets(&k, &budget).map_err(|e| budget_failure(format, e))?;
            print_witnesses(format, &ws);
            if format == Format::Md {
                if ws.is_empty() {
                    println!("\n{k} is minimal");
                } else {
                    println!("\n{k} maps onto {}", onto_names(&ws));
                }
            }
        }
        EpiCommand::Check { big, small } => {
            let format = ctx.format(&TABLES)?;
            let k = knot_from_word(&parse_word(big)?)?;
            let kp = knot_from_word(&parse_word(small)?)?;
            let found = admits_epi(&k, &kp, &budget).map_err(|e| budget_failure(format, e))?;
            match format {
                Format::Json => {
                    let v = json!({ "big": k, "small": kp, "witness": found });
                    println!("{}", serde_json::to_string_pretty(&v).expect("json value"));
                }
                _ => match &found {
                    Some(w) => {
                        print_witnesses(format, std::slice::from_ref(w));
                        if format == Format::Md {
                            println!("\n{k} maps onto {kp}");
                        }
                    }
                    None => println!("no epimorphism from {k} onto {kp}"),
                },
            }
        }
        EpiCommand::Graph { max_c } => {
            if *max_c > ctx.config.ceiling {
                return Err(Error::ResourceBound {
                    c: *max_c,
                    ceiling: ctx.config.ceiling,
                }
                .into());
            }
            let g = epi_graph(*max_c, &budget)?;
            match ctx.config.format {
                Format::Dot => print!("{}", report::epi_graph_dot(&g)),
                Format::Json => println!("{}", report::epi_graph_json(&g)),
                Format::Csv => print!("{}", report::epi_graph_csv(&g)),
                Format::Md => print!("{}", report::epi_graph_markdown(&g)),
            }
        }
        EpiCommand::Minimal { word } => {
            let format = ctx.format(&TABLES)?;
            let k = knot_from_word(&parse_word(word)?)?;
            let ws = epi_targets(&k, &budget).map_err(|e| budget_failure(format, e))?;
            let minimal = ws.is_empty();
            match format {
                Format::Json => {
                    let v = json!({
                        "knot": k,
                        "minimal": minimal,
                        "targets": target_knots(&ws),
                    });
                    println!("{}", serde_json::to_string_pretty(&v).expect("json value"));
                }
                Format::Csv => println!(
                    "word,minimal,onto\n{},{minimal},{}",
                    k.canon(),
                    onto_names(&ws)
                ),
                _ if minimal => println!("{k} is minimal"),
                _ => println!("{k} is not minimal: it maps onto {}", onto_names(&ws)),
            }
        }
    }
    Ok(())
}

fn cmd_table1(ctx: &Ctx, max_c: u32, with_mirrors: bool) -> Outcome {
    let format = ctx.format(&TABLES)?;
    if max_c > ctx.config.ceiling {
        return Err(Error::ResourceBound {
            c: max_c,
            ceiling: ctx.config.ceiling,
        }
        .into());
    }
    let t = table1(max_c, !with_mirrors, &ctx.budget())?;
    match format {
        Format::Json => println!("{}", report::table1_json(&t)),
        Format::Csv => print!("{}", report::table1_csv(&t)),
        _ => print!("{}", report::table1_markdown(&t)),
    }
    eprintln!("{} rows", t.rows.len());
    let mut failed = false;
    for d in &t.disagreements {
        eprintln!("classifier and search disagree: {d}");
        failed = true;
    }
    if max_c == 15 && !with_mirrors {
        let diff = classify::diff_against_reference(&t);
        if diff.is_empty() {
            eprintln!("diff against reference table: empty");
        } else {
            eprintln!("diff against reference table:");
            for line in &diff {
                eprintln!("{line}");
            }
            failed = true;
        }
    }
    if failed {
        return Err(Failure::Mismatch("table does not match".into()));
    }
    Ok(())
}

fn cmd_identities(ctx: &Ctx, n_max: u32) -> Outcome {
    let format = ctx.format(&TABLES)?;
    let r = verify_identities(n_max);
    match format {
        Format::Json => println!("{}", report::identities_json(&r)),
        Format::Csv => print!("{}", report::identities_csv(&r)),
        _ => print!("{}", report::identities_markdown(&r)),
    }
    if r.all_passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch("an identity failed".into()))
    }
}

fn build_config(cli: &Cli) -> Result<Config, Failure> {
    let mut config = Config::default();
    if let Some(path) = &cli.config {
        config.apply_file(path).map_err(Failure::Input)?;
    }
    config
        .apply_env(std::env::var(CEILING_ENV).ok().as_deref())
        .map_err(Failure::Input)?;
    if let Some(c) = cli.ceiling {
        config
            .set("ceiling", &c.to_string())
            .map_err(Failure::Input)?;
    }
    if let Some(b) = cli.search_budget {
        config
            .set("search_budget", &b.to_string())
            .map_err(Failure::Input)?;
    }
    if let Some(f) = cli.format {
        config.format = f;
    }
    if let Some(j) = cli.jobs {
        config.jobs = j;
    }
    Ok(config)
}

fn dispatch(ctx: &Ctx, command: &Command) -> Outcome {
    match command {
        Command::Invariants { word } => cmd_invariants(ctx, word),
        Command::Census {
            range,
            verify,
            up_to_mirror,
            formulas_only,
        } => cmd_census(ctx, range, *verify, *up_to_mirror, *formulas_only),
        Command::Epi { command } => cmd_epi(ctx, command),
        Command::Table1 {
            max_c,
            with_mirrors,
        } => cmd_table1(ctx, *max_c, *with_mirrors),
        Command::Identities { n_max } => cmd_identities(ctx, *n_max),
    }
}

/// Runs `f` on a pool of `jobs` workers, or inline when sequential.
fn with_workers(jobs: usize, f: impl FnOnce(Parallelism) -> Outcome + Send) -> Outcome {
    #[cfg(feature = "parallel")]
    if jobs != 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Failure::Resource(format!("cannot start worker pool: {e}")))?;
        return pool.install(|| f(Parallelism::Rayon));
    }
    let _ = jobs;
    f(Parallelism::Sequential)
}

fn run(cli: Cli) -> Outcome {
    let config = build_config(&cli)?;
    let number = if cli.decimal {
        Number::Decimal(12)
    } else {
        Number::Exact
    };
    let jobs = config.jobs;
    with_workers(jobs, |parallelism| {
        let ctx = Ctx {
            config,
            number,
            parallelism,
        };
        dispatch(&ctx, &cli.command)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors share the parse-error exit code.
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
