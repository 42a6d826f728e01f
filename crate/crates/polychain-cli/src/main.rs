use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use polychain::{
    chi_closed, chi_direct, enumerate_chains, extremal_search, find_root, f_val, g_val,
    verify_table1, Alpha, AlphaSample, ChainRecord, ChainRecordJson, EnumerationRequest,
    ExtremalReport, PolyominoChain, RootTarget, SearchOptions, Table1Summary, TurnSequence,
};

/// Polyomino chain toolkit: index evaluation, enumeration, and extremal
/// verification.
#[derive(Parser)]
#[command(name = "polychain", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate chi_alpha for one chain given by its turn string.
    Eval(EvalArgs),
    /// Stream every chain with n squares.
    Enumerate(EnumerateArgs),
    /// Find the chains with extremal chi_alpha among all chains with n squares.
    Extremal(ExtremalArgs),
    /// Verify the predicted extremal families over a range of n and alphas.
    Table(TableArgs),
    /// Print the regime boundary roots x0 and x1.
    Roots,
}

#[derive(Args)]
struct EvalArgs {
    /// Number of squares.
    #[arg(long)]
    n: usize,
    /// Turn string over S/L/R; empty for n <= 2.
    #[arg(long, default_value = "")]
    turns: String,
    /// Exponent: a decimal, or the tokens x0 / x1.
    #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
    alpha: f64,
    /// Also evaluate the segment closed form.
    #[arg(long)]
    closed_form: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Keep only chains without an edge joining two degree-3 vertices on an
    /// internal length-3 segment.
    #[arg(long)]
    omega_only: bool,
    /// Emit every realizable turn sequence instead of one per symmetry class.
    #[arg(long)]
    no_dedupe: bool,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
}

#[derive(Args)]
struct ExtremalArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
    alpha: f64,
    /// Search all valid chains, not just the omega collection (no predicted
    /// families apply then).
    #[arg(long)]
    all_chains: bool,
    /// Emit the full report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 9)]
    n_max: usize,
    /// Comma-separated alphas (decimals or x0/x1). Defaults to two samples
    /// per open regime plus both boundaries.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha_list: Vec<String>,
    /// Emit the full summary as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    match s {
        "x0" => Ok(polychain::x0()),
        "x1" => Ok(polychain::x1()),
        _ => s.parse::<f64>().map_err(|e| format!("bad alpha {s:?}: {e}")),
    }
}

/// Formats with 12 significant digits, plain decimal notation.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => run_eval(&args),
        Command::Enumerate(args) => run_enumerate(&args),
        Command::Extremal(args) => run_extremal(&args),
        Command::Table(args) => run_table(&args),
        Command::Roots => run_roots(),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            if is_broken_pipe(err.as_ref()) {
                return ExitCode::SUCCESS;
            }
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn is_broken_pipe(err: &(dyn std::error::Error + 'static)) -> bool {
    if let Some(io_err) = err.downcast_ref::<io::Error>() {
        return io_err.kind() == io::ErrorKind::BrokenPipe;
    }
    if let Some(json_err) = err.downcast_ref::<serde_json::Error>() {
        return json_err.io_error_kind() == Some(io::ErrorKind::BrokenPipe);
    }
    if let Some(csv_err) = err.downcast_ref::<csv::Error>() {
        if let csv::ErrorKind::Io(io_err) = csv_err.kind() {
            return io_err.kind() == io::ErrorKind::BrokenPipe;
        }
    }
    false
}

type CliResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn run_eval(args: &EvalArgs) -> CliResult {
    let alpha = Alpha::new(args.alpha)?;
    let turns = TurnSequence::parse(args.n, &args.turns)?;
    let chain = PolyominoChain::from_turns(&turns)?;
    let lv = chain.length_vector();
    let in_omega = chain.is_in_omega();
    let direct = chi_direct(&chain, alpha);

    let mut out = io::stdout().lock();
    writeln!(out, "n             = {}", args.n)?;
    writeln!(out, "turns         = {}", turns.turn_string())?;
    writeln!(out, "length vector = {lv}")?;
    writeln!(out, "in omega      = {in_omega}")?;
    writeln!(out, "alpha         = {}", sig12(args.alpha))?;
    writeln!(out, "chi (direct)  = {}", sig12(direct))?;
    if args.closed_form {
        if args.n < 3 {
            writeln!(out, "chi (closed)  = n/a (needs n >= 3)")?;
        } else {
            let closed = chi_closed(&lv, alpha)?;
            writeln!(out, "chi (closed)  = {}", sig12(closed))?;
            if !in_omega {
                eprintln!(
                    "warning: chain is outside the omega collection; the closed form is not \
                     guaranteed to match (direct - closed = {})",
                    sig12(direct - closed)
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_enumerate(args: &EnumerateArgs) -> CliResult {
    let req = EnumerationRequest::new(args.n)
        .omega_only(args.omega_only)
        .dedupe(!args.no_dedupe);
    let records = enumerate_chains(&req)?;
    let stdout = io::stdout().lock();
    let mut out = io::BufWriter::new(stdout);
    match args.format {
        Format::Jsonl => {
            for rec in &records {
                serde_json::to_writer(&mut out, &ChainRecordJson::from(rec))?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            writer.write_record(["n", "turns", "length_vector", "in_omega", "canonical_key"])?;
            for rec in &records {
                let lv = rec
                    .length_vector
                    .lengths()
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                writer.write_record([
                    rec.n().to_string(),
                    rec.turns.turn_string(),
                    lv,
                    rec.in_omega.to_string(),
                    rec.key.to_string(),
                ])?;
            }
            writer.flush()?;
            return Ok(ExitCode::SUCCESS);
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn describe_record(rec: &ChainRecord) -> String {
    format!(
        "turns={} lv={} omega={}",
        if rec.turns.turn_string().is_empty() { "-".to_string() } else { rec.turns.turn_string() },
        rec.length_vector,
        rec.in_omega
    )
}

fn print_extremal_text(report: &ExtremalReport) -> io::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "n={} alpha={} regime: {} universe: {} chain(s){}",
        report.n,
        sig12(report.alpha),
        report.regime,
        report.universe_size,
        if report.omega_only { " (omega only)" } else { "" },
    )?;
    writeln!(out, "max chi = {}", sig12(report.max.value))?;
    for rec in &report.max.records {
        writeln!(out, "  {}", describe_record(rec))?;
    }
    writeln!(out, "min chi = {}", sig12(report.min.value))?;
    for rec in &report.min.records {
        writeln!(out, "  {}", describe_record(rec))?;
    }
    match &report.verdict {
        Some(v) => {
            writeln!(out, "predicted max: {} -> {}", v.max_family, v.max_match)?;
            writeln!(out, "predicted min: {} -> {}", v.min_family, v.min_match)?;
            writeln!(out, "verdict: {}", if v.pass { "PASS" } else { "FAIL" })?;
        }
        None => writeln!(out, "verdict: observed, unpredicted (all-chains universe)")?,
    }
    Ok(())
}

fn run_extremal(args: &ExtremalArgs) -> CliResult {
    let alpha = Alpha::new(args.alpha)?;
    let opts = SearchOptions { omega_only: !args.all_chains, ..SearchOptions::default() };
    let report = extremal_search(args.n, alpha, &opts)?;
    if args.json {
        let mut out = io::stdout().lock();
        serde_json::to_writer_pretty(&mut out, &report)?;
        out.write_all(b"\n")?;
    } else {
        print_extremal_text(&report)?;
    }
    let failed = report.verdict.is_some_and(|v| !v.pass);
    Ok(if failed { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn print_table_text(summary: &Table1Summary) -> io::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "{:<4} {:>10} {:<18} {:<34} {:<34} {:<7}",
        "n", "alpha", "regime", "max: predicted family (match)", "min: predicted family (match)", "status"
    )?;
    for cell in &summary.cells {
        let r = &cell.report;
        let v = r.verdict.expect("table cells verify against predictions");
        writeln!(
            out,
            "{:<4} {:>10} {:<18} {:<34} {:<34} {:<7}",
            r.n,
            cell.alpha_label,
            r.regime.to_string(),
            format!("{} ({})", v.max_family, v.max_match),
            format!("{} ({})", v.min_family, v.min_match),
            if v.pass { "pass" } else { "FAIL" },
        )?;
    }
    writeln!(out, "overall: {}", if summary.pass { "PASS" } else { "FAIL" })?;
    if !summary.pass {
        writeln!(out, "counterexamples:")?;
        for cell in summary.failures() {
            let r = &cell.report;
            writeln!(out, "  n={} alpha={}:", r.n, cell.alpha_label)?;
            for rec in &r.max.records {
                writeln!(out, "    max {}", describe_record(rec))?;
            }
            for rec in &r.min.records {
                writeln!(out, "    min {}", describe_record(rec))?;
            }
        }
    }
    Ok(())
}

fn run_table(args: &TableArgs) -> CliResult {
    if args.n_min < 3 || args.n_min > args.n_max {
        return Err(format!("bad n range {}..={}", args.n_min, args.n_max).into());
    }
    let samples = if args.alpha_list.is_empty() {
        polychain::default_alpha_samples()
    } else {
        args.alpha_list
            .iter()
            .map(|s| parse_alpha(s).map(|v| AlphaSample { label: s.clone(), value: v }))
            .collect::<Result<Vec<_>, _>>()?
    };
    let summary = verify_table1(args.n_min..=args.n_max, &samples, &SearchOptions::default())?;
    if args.json {
        let mut out = io::stdout().lock();
        serde_json::to_writer_pretty(&mut out, &summary)?;
        out.write_all(b"\n")?;
    } else {
        print_table_text(&summary)?;
    }
    Ok(if summary.pass { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn run_roots() -> CliResult {
    let x0 = find_root(RootTarget::F, -4.0, -2.5)?;
    let x1 = find_root(RootTarget::FPlusG, -6.0, -5.0)?;
    let mut out = io::stdout().lock();
    writeln!(out, "x0 = {x0:.12}   (root of f;     residual {:.3e})", f_val(x0))?;
    writeln!(out, "x1 = {x1:.12}   (root of f + g; residual {:.3e})", f_val(x1) + g_val(x1))?;
    Ok(ExitCode::SUCCESS)
}
