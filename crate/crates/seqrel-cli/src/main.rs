//! Command-line front end: guess recurrence relations of a table, benchmark
//! the guessers on the generated table families, or materialize a table
//! window to the line-oriented file format.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use seqrel::guessers::{berlekamp_massey, guess_adaptive, guess_div, AdaptiveStep, DivTraceEvent};
use seqrel::linalg_oracle::{adaptive_sfglm, scalar_fglm};
use seqrel::monomials::{Monomial, MonomialOrder};
use seqrel::polynomials::Poly;
use seqrel::relation_engine::GuessError;
use seqrel::scalars::Field;
use seqrel::tables::{
    builtin_table, family_lm_set, family_table, read_table_file, write_table_file, FamilyKind,
    GroebnerBasis, Table, TableError,
};

#[derive(Parser)]
#[command(name = "seqrel", about = "Guess linear recurrence relations of multidimensional sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    /// Division-based guesser on the windows T[a], T[b]
    Div,
    /// Adaptive division-based guesser (output-sensitive queries)
    Adaptive,
    /// Univariate Berlekamp-Massey via the extended Euclidean algorithm
    Bm,
    /// Multi-Hankel linear-algebra guesser (ground truth)
    Oracle,
    /// Rank-based adaptive linear-algebra guesser
    AdaptiveOracle,
}

#[derive(Subcommand)]
enum Command {
    /// Run one guesser on a table and print the relations found
    Guess {
        /// Table: builtin:<name>, file:<path>, or family:<kind>:<n>:<d>:<seed>
        table: String,
        /// Monomial ordering, e.g. "drl(y<x)"; defaults to drl on the
        /// table's variables
        #[arg(long)]
        order: Option<String>,
        /// Window bound for div/bm/oracle, e.g. "x^3"
        #[arg(long)]
        a: Option<String>,
        /// Shift bound for div (default 1)
        #[arg(long, default_value = "1")]
        b: String,
        #[arg(long, value_enum, default_value = "div")]
        algorithm: Algorithm,
        /// Coefficient field for builtin/file tables
        #[arg(long, default_value = "rational")]
        field: String,
        /// Print one line per processed candidate
        #[arg(long)]
        trace: bool,
        /// Skip the final interreduction (raw accepted relations)
        #[arg(long)]
        raw: bool,
        /// Safety bound for the adaptive staircase
        #[arg(long, default_value_t = 4096)]
        max_staircase: usize,
    },
    /// Run the operation-counting benchmark over the table families
    Bench {
        /// Comma-separated families: rectangle,lshape,simplex
        #[arg(long, default_value = "rectangle,lshape,simplex")]
        families: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        dmin: u32,
        #[arg(long, default_value_t = 10)]
        dmax: u32,
        /// Comma-separated algorithms: div,adaptive,oracle,adaptive-oracle
        #[arg(long, default_value = "div,adaptive")]
        algorithms: String,
        /// Comma-separated seeds; SEQREL_SEED overrides the default
        #[arg(long)]
        seeds: Option<String>,
        /// CSV output path; stdout when omitted
        #[arg(long)]
        out: Option<String>,
        /// Append a detail column with both division calling conventions
        #[arg(long)]
        verbose: bool,
    },
    /// Materialize a rectangular window of a table to the file format
    GenTable {
        table: String,
        /// Window extents per dimension, e.g. "4x7"
        #[arg(long)]
        rows: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value = "rational")]
        field: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

enum AppError {
    /// Guard conditions: staircase bound, unavailable table terms
    Guard(String),
    Other(String),
}

impl From<String> for AppError {
    fn from(msg: String) -> Self {
        AppError::Other(msg)
    }
}

impl From<GuessError> for AppError {
    fn from(e: GuessError) -> Self {
        match e {
            GuessError::StaircaseLimit(_) | GuessError::Table(TableError::UnavailableTerm(_)) => {
                AppError::Guard(e.to_string())
            }
            other => AppError::Other(other.to_string()),
        }
    }
}

impl From<TableError> for AppError {
    fn from(e: TableError) -> Self {
        match e {
            TableError::UnavailableTerm(_) => AppError::Guard(e.to_string()),
            other => AppError::Other(other.to_string()),
        }
    }
}

fn load_table(spec: &str, field: Field) -> Result<Table, AppError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin_table(name, field).map_err(AppError::Other);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::Other(format!("cannot read {path}: {e}")))?;
        return Ok(read_table_file(&text)?);
    }
    if let Some(rest) = spec.strip_prefix("family:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 4 {
            return Err(AppError::Other(
                "family spec is family:<kind>:<n>:<d>:<seed>".into(),
            ));
        }
        let kind = FamilyKind::parse(parts[0])?;
        let n: usize = parts[1].parse().map_err(|_| "bad family dimension".to_string())?;
        let d: u32 = parts[2].parse().map_err(|_| "bad family degree".to_string())?;
        let seed: u64 = parts[3].parse().map_err(|_| "bad family seed".to_string())?;
        let (table, _) = family_table(kind, n, d, seed)?;
        return Ok(table);
    }
    Err(AppError::Other(format!(
        "unknown table spec `{spec}` (builtin:, file:, or family:)"
    )))
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Guess {
            table,
            order,
            a,
            b,
            algorithm,
            field,
            trace,
            raw,
            max_staircase,
        } => cmd_guess(&table, order.as_deref(), a.as_deref(), &b, algorithm, &field, trace, raw, max_staircase),
        Command::Bench { families, n, dmin, dmax, algorithms, seeds, out, verbose } => {
            cmd_bench(&families, n, dmin, dmax, &algorithms, seeds.as_deref(), out.as_deref(), verbose)
        }
        Command::GenTable { table, rows, out, field } => cmd_gen_table(&table, &rows, out.as_deref(), &field),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_guess(
    table_spec: &str,
    order: Option<&str>,
    a: Option<&str>,
    b: &str,
    algorithm: Algorithm,
    field: &str,
    trace: bool,
    raw: bool,
    max_staircase: usize,
) -> Result<(), AppError> {
    let field = Field::parse(field)?;
    let table = load_table(table_spec, field)?;
    let n = table.dimension();
    let ord = match order {
        Some(s) => {
            let ord = MonomialOrder::parse(s)?;
            if ord.nvars() != n {
                return Err(AppError::Other(format!(
                    "ordering has {} variables but the table has {n}",
                    ord.nvars()
                )));
            }
            ord
        }
        None => MonomialOrder::drl(n),
    };
    let parse_bound = |txt: &str| -> Result<Monomial, AppError> {
        Monomial::parse(txt, &ord).map_err(AppError::Other)
    };

    match algorithm {
        Algorithm::Bm => {
            if n != 1 {
                return Err(AppError::Other("bm needs a 1-dimensional table".into()));
            }
            let a = a.ok_or_else(|| AppError::Other("bm needs --a x^D".into()))?;
            let bound = parse_bound(a)?;
            let run = berlekamp_massey(&table, bound.exp(0))?;
            println!("{}", run.relation.display(&ord));
            println!(
                "staircase={} gb=1 muls={} queries={}",
                run.relation.lm().map(|m| m.total_degree()).unwrap_or(0),
                run.muls,
                run.queries
            );
        }
        Algorithm::Div => {
            let a = a.ok_or_else(|| AppError::Other("div needs --a <monomial>".into()))?;
            let a = parse_bound(a)?;
            let b = parse_bound(b)?;
            let run = guess_div(&table, &ord, &a, &b, !raw)?;
            if trace {
                print_div_trace(&run.trace, &ord);
            }
            for w in &run.warnings {
                eprintln!("warning: {w}");
            }
            print_gb_summary(&run.gb, run.staircase.len(), run.muls, run.queries, &ord);
        }
        Algorithm::Adaptive => {
            let run = guess_adaptive(&table, &ord, max_staircase)?;
            if trace {
                print_adaptive_trace(&run.trace, &ord);
            }
            print_gb_summary(&run.gb, run.staircase.len(), run.muls, run.queries, &ord);
        }
        Algorithm::Oracle => {
            let a = a.ok_or_else(|| AppError::Other("oracle needs --a <monomial>".into()))?;
            let a = parse_bound(a)?;
            let run = scalar_fglm(&table, &ord, &a)?;
            print_gb_summary(&run.gb, run.staircase.len(), run.muls, run.queries, &ord);
        }
        Algorithm::AdaptiveOracle => {
            let run = adaptive_sfglm(&table, &ord, max_staircase)?;
            print_gb_summary(&run.gb, run.staircase.len(), run.muls, run.queries, &ord);
        }
    }
    Ok(())
}

fn print_gb_summary(gb: &GroebnerBasis, staircase: usize, muls: u64, queries: u64, ord: &MonomialOrder) {
    for rel in gb.relations() {
        println!("{}", rel.display(ord));
    }
    println!(
        "staircase={staircase} gb={} muls={muls} queries={queries}",
        gb.relations().len()
    );
}

fn print_div_trace(trace: &[DivTraceEvent], ord: &MonomialOrder) {
    for ev in trace {
        match ev {
            DivTraceEvent::PairCreated { tag, f, c } => {
                println!("# pair {}: C = {} | F = {}", tag.display(ord), c.display(ord), f.display(ord));
            }
            DivTraceEvent::Tested { tag, lm_f, lm_masked, shift, valid } => {
                let fmt = |m: &Option<Monomial>| {
                    m.as_ref().map(|m| format!("{}", m.display(ord))).unwrap_or_else(|| "0".into())
                };
                println!(
                    "# test {}: lm(F)={} lm(F~)={} shift={} -> {}",
                    tag.display(ord),
                    fmt(lm_f),
                    fmt(lm_masked),
                    shift.as_ref().map(|m| format!("{}", m.display(ord))).unwrap_or_else(|| "-".into()),
                    if *valid { "valid" } else { "fails" }
                );
            }
        }
    }
}

fn print_adaptive_trace(trace: &[AdaptiveStep], ord: &MonomialOrder) {
    for step in trace {
        println!(
            "# {} {}: C = {} | lt(F~) = {} | bound {}",
            if step.accepted { "accept" } else { "fail  " },
            step.tag.display(ord),
            step.c.display(ord),
            step.masked_lt
                .as_ref()
                .map(|(m, c)| format!("{}*{}", c, m.display(ord)))
                .unwrap_or_else(|| "0".into()),
            step.threshold.display(ord),
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    families: &str,
    n: usize,
    dmin: u32,
    dmax: u32,
    algorithms: &str,
    seeds: Option<&str>,
    out: Option<&str>,
    verbose: bool,
) -> Result<(), AppError> {
    let families: Vec<FamilyKind> = families
        .split(',')
        .map(|s| FamilyKind::parse(s.trim()))
        .collect::<Result<_, _>>()?;
    let algorithms: Vec<Algorithm> = algorithms
        .split(',')
        .map(|s| match s.trim() {
            "div" => Ok(Algorithm::Div),
            "adaptive" => Ok(Algorithm::Adaptive),
            "oracle" => Ok(Algorithm::Oracle),
            "adaptive-oracle" => Ok(Algorithm::AdaptiveOracle),
            other => Err(format!("unknown bench algorithm `{other}`")),
        })
        .collect::<Result<_, String>>()?;
    let seeds: Vec<u64> = match seeds {
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| format!("bad seed `{s}`")))
            .collect::<Result<_, String>>()?,
        None => {
            let default = std::env::var("SEQREL_SEED")
                .ok()
                .and_then(|v| v.parse().ok())
                .unwrap_or(42);
            vec![default]
        }
    };

    let mut csv = String::new();
    csv.push_str("family,n,d,algorithm,staircase,gb,muls,queries,ms,seed");
    if verbose {
        csv.push_str(",detail");
    }
    csv.push('\n');

    let ord = MonomialOrder::drl(n);
    for &family in &families {
        for d in dmin..=dmax {
            let bound = window_bound(family, n, d, &ord);
            for &algorithm in &algorithms {
                for &seed in &seeds {
                    let row = bench_cell(family, n, d, seed, algorithm, &bound, &ord, verbose)?;
                    csv.push_str(&row);
                    csv.push('\n');
                }
            }
        }
    }
    match out {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| AppError::Other(format!("cannot write {path}: {e}")))?,
        None => print!("{csv}"),
    }
    Ok(())
}

/// The window bound `a = max(S + lm(G))` of a family shape.
fn window_bound(family: FamilyKind, n: usize, d: u32, ord: &MonomialOrder) -> Monomial {
    let lms = family_lm_set(family, n, d);
    let gens: Vec<Poly> = lms
        .iter()
        .map(|m| Poly::term(m.clone(), Field::Fp(seqrel::scalars::DEFAULT_PRIME).one()))
        .collect();
    let gb = GroebnerBasis::new(gens, ord.clone());
    let stair = gb.staircase().expect("family shapes are zero-dimensional");
    let mut best = lms[0].clone();
    for m in lms.iter().chain(stair.monomials()) {
        if ord.cmp(m, &best) == std::cmp::Ordering::Greater {
            best = m.clone();
        }
    }
    best
}

#[allow(clippy::too_many_arguments)]
fn bench_cell(
    family: FamilyKind,
    n: usize,
    d: u32,
    seed: u64,
    algorithm: Algorithm,
    bound: &Monomial,
    ord: &MonomialOrder,
    verbose: bool,
) -> Result<String, AppError> {
    let name = match algorithm {
        Algorithm::Div => "div",
        Algorithm::Adaptive => "adaptive",
        Algorithm::Oracle => "oracle",
        Algorithm::AdaptiveOracle => "adaptive-oracle",
        Algorithm::Bm => unreachable!("bench has no univariate families"),
    };
    let start = Instant::now();
    let one = Monomial::one(n);
    let (stair, gb_len, muls, queries, detail) = match algorithm {
        Algorithm::Div => {
            // both calling conventions, reporting the cheaper run
            let (t1, _) = family_table(family, n, d, seed)?;
            let wide = bound.mul(bound);
            let run_wide = guess_div(&t1, ord, &wide, &one, true)?;
            let (t2, _) = family_table(family, n, d, seed)?;
            let run_square = guess_div(&t2, ord, bound, bound, true)?;
            let detail = format!(
                "a2b1={};aa={}",
                run_wide.muls, run_square.muls
            );
            let run = if run_square.muls < run_wide.muls { run_square } else { run_wide };
            (run.staircase.len(), run.gb.relations().len(), run.muls, run.queries, detail)
        }
        Algorithm::Adaptive => {
            let (t, _) = family_table(family, n, d, seed)?;
            let run = guess_adaptive(&t, ord, 1 << 20)?;
            (run.staircase.len(), run.gb.relations().len(), run.muls, run.queries, String::new())
        }
        Algorithm::Oracle => {
            let (t, _) = family_table(family, n, d, seed)?;
            let run = scalar_fglm(&t, ord, bound)?;
            (run.staircase.len(), run.gb.relations().len(), run.muls, run.queries, String::new())
        }
        Algorithm::AdaptiveOracle => {
            let (t, _) = family_table(family, n, d, seed)?;
            let run = adaptive_sfglm(&t, ord, 1 << 20)?;
            (run.staircase.len(), run.gb.relations().len(), run.muls, run.queries, String::new())
        }
        Algorithm::Bm => unreachable!(),
    };
    let ms = start.elapsed().as_millis();
    let mut row = String::new();
    write!(row, "{family},{n},{d},{name},{stair},{gb_len},{muls},{queries},{ms},{seed}").unwrap();
    if verbose {
        write!(row, ",{detail}").unwrap();
    }
    Ok(row)
}

fn cmd_gen_table(spec: &str, rows: &str, out: Option<&str>, field: &str) -> Result<(), AppError> {
    let field = Field::parse(field)?;
    let table = load_table(spec, field)?;
    let window: Vec<u32> = rows
        .split('x')
        .map(|s| s.trim().parse().map_err(|_| format!("bad window `{rows}`")))
        .collect::<Result<_, String>>()?;
    if window.len() != table.dimension() {
        return Err(AppError::Other(format!(
            "window has {} dimensions but the table has {}",
            window.len(),
            table.dimension()
        )));
    }
    let text = write_table_file(&table, &window)?;
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| AppError::Other(format!("cannot write {path}: {e}")))?,
        None => print!("{text}"),
    }
    Ok(())
}
