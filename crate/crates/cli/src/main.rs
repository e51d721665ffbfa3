use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stgraph_cli::{encode_graph, run, Format, Mode, RunConfig};
use stgraph_core::oracle::brute_force_classes;
use stgraph_core::{GraphType, Pruning};

/// Enumerate stable graphs of type (G, N) up to isomorphism.
#[derive(Parser)]
#[command(name = "stgraph", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Brute-force reference enumeration for small types.
    Oracle {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        marked: u32,
        #[arg(long, value_enum, default_value_t = Mode::Count)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Total genus G.
    #[arg(long)]
    genus: Option<u32>,
    /// Number of marked points N.
    #[arg(long)]
    marked: Option<u32>,
    /// Only graphs with this many vertices.
    #[arg(long)]
    vertices: Option<usize>,
    #[arg(long, value_enum, default_value_t = Mode::Count)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Keep single-job output order when running with several jobs.
    #[arg(long)]
    sorted: bool,
    /// Generate with only the trivial bounds (for checking the pruning).
    #[arg(long)]
    no_ranges: bool,
    /// Give up on a graph after this many canonical labeling leaves.
    #[arg(long, default_value_t = stgraph_core::dedup::DEFAULT_GUARD)]
    dedup_guard: u64,
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("stgraph: {message}");
    ExitCode::from(code)
}

fn open_output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn oracle(genus: u32, marked: u32, mode: Mode, format: Format) -> ExitCode {
    let ty = match GraphType::new(genus, marked) {
        Ok(ty) => ty,
        Err(e) => return fail(2, e),
    };
    let classes = match brute_force_classes(ty) {
        Ok(c) => c,
        Err(e) => return fail(2, e),
    };
    let mut out = BufWriter::new(io::stdout().lock());
    let result = match mode {
        Mode::Count => writeln!(out, "{}", classes.count()),
        Mode::Stats => (|| {
            writeln!(out, "G,N,K,distinct")?;
            for k in 1..=ty.max_vertices() {
                writeln!(out, "{genus},{marked},{k},{}", classes.count_with(k))?;
            }
            Ok(())
        })(),
        Mode::List => classes.iter().enumerate().try_for_each(|(i, m)| {
            if format == Format::Text && i > 0 {
                writeln!(out)?;
            }
            writeln!(out, "{}", encode_graph(m, format))
        }),
    };
    match result.and_then(|_| out.flush()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(1, e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(Command::Oracle {
        genus,
        marked,
        mode,
        format,
    }) = cli.command
    {
        return oracle(genus, marked, mode, format);
    }
    let args = cli.run;
    let (Some(genus), Some(marked)) = (args.genus, args.marked) else {
        return fail(2, "--genus and --marked are required");
    };
    let ty = match GraphType::new(genus, marked) {
        Ok(ty) => ty,
        Err(e) => return fail(2, e),
    };
    let mut config = RunConfig::new(ty);
    config.vertices = args.vertices;
    config.mode = args.mode;
    config.format = args.format;
    config.jobs = args.jobs as usize;
    config.sorted = args.sorted;
    config.dedup_guard = args.dedup_guard;
    if args.no_ranges {
        config.pruning = Pruning::Trivial;
    }
    let mut out = match open_output(args.output.as_ref()) {
        Ok(out) => out,
        Err(e) => return fail(1, e),
    };
    match run(&config, &mut out) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => fail(e.exit_code() as u8, e),
    }
}
