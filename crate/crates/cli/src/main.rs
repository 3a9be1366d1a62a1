use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use countable::bijection::{even_ranks, square_ranks, CountingBijection, Unranking};
use countable::counting_order::{
    chain_search, delete_min_from_bijection, order_from_bijection, ChainSearch, DeleteMin, LexPairs,
};
use countable::diagonal::{
    diagonal_flip, diagonal_shift, machine_x, DeciderLibrary, FunctionTable,
};
use countable::enumerator::{
    decide_by_increasing, from_bijection, nth_printed, Dovetail, EnumerationStream, Pull,
};
use countable::machine::{decode_validate, encode, parse_machine, MachineEncoding, TuringMachine};
use countable::{unrank, Alphabet, CanonicalString, Rank};

/// Default step budget when neither `--budget` nor the environment sets one.
const DEFAULT_BUDGET: &str = "1000000";
const BUDGET_ENV: &str = "WORKBENCH_DEFAULT_BUDGET";

/// Canonical order, Turing machines, enumerators, counting orders and
/// diagonalization on the command line.
#[derive(Parser)]
#[command(name = "countable", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the rank of a string in canonical order.
    Rank {
        string: String,
        /// Symbols of the alphabet, smallest first.
        #[arg(long, default_value = "ab")]
        alphabet: String,
    },
    /// Print the string of a given rank (the empty string is an empty line).
    Unrank {
        number: String,
        #[arg(long, default_value = "ab")]
        alphabet: String,
    },
    /// Run a machine file on one input.
    RunTm {
        machine: PathBuf,
        input: String,
        /// Step budget.
        #[arg(long, env = BUDGET_ENV, default_value = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Print the binary encoding of a machine file.
    Encode { machine: PathBuf },
    /// Decode a bit string and print the machine, or fail if it is not a
    /// valid encoding.
    Decode { bits: String },
    /// Print the strings a machine accepts, by dovetailing its runs.
    Dovetail {
        machine: PathBuf,
        /// Stop after this many strings.
        #[arg(long, default_value_t = 10)]
        max_prints: u64,
        /// Stop after this many dovetail rounds (default: no limit).
        #[arg(long)]
        max_rounds: Option<u64>,
    },
    /// Print the n-th string (0-based) of a machine's dovetail, or of a
    /// bijection with `--bijection`.
    Nth {
        /// `[MACHINE] N`
        #[arg(num_args = 1..=2, required = true, value_name = "ARGS")]
        args: Vec<String>,
        /// Use a built-in bijection instead of a machine file.
        #[arg(long, value_enum)]
        bijection: Option<BijectionKind>,
        /// Round limit for the machine's dovetail.
        #[arg(long, default_value_t = 100_000)]
        max_rounds: u64,
        #[arg(long, default_value = "ab")]
        alphabet: String,
    },
    /// Print the position of a string in a machine's dovetail, or `not_seen`.
    IndexOf {
        machine: PathBuf,
        string: String,
        /// Number of printed strings to watch.
        #[arg(long, env = BUDGET_ENV, default_value = DEFAULT_BUDGET)]
        budget: u64,
        /// Round limit for the dovetail.
        #[arg(long, default_value_t = 100_000)]
        max_rounds: u64,
    },
    /// Decide membership from a stream that prints in increasing order.
    ///
    /// STREAM is `unrank`, `even-ranks`, `squares` or `list:w1,w2,...`.
    DecideIncreasing {
        stream: String,
        string: String,
        #[arg(long, default_value = "ab")]
        alphabet: String,
    },
    /// Call deleteMin repeatedly on a set ordered by a bijection.
    Deletemin {
        #[arg(long, value_enum, default_value_t = BijectionKind::Unrank)]
        bijection: BijectionKind,
        /// Number of calls.
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, default_value = "ab")]
        alphabet: String,
    },
    /// Search for a long descending chain between two elements.
    ///
    /// Prints `found LEN` or `budget_exceeded LEN`, then the chain.
    ChainSearch {
        #[arg(long, value_enum, default_value_t = OrderKind::LexNn)]
        order: OrderKind,
        /// Upper end: `x,y` for lex-nn, a string for unrank.
        #[arg(long, default_value = "1,0")]
        from: String,
        /// Lower end.
        #[arg(long, default_value = "0,0")]
        to: String,
        /// Chain length budget.
        #[arg(long, default_value_t = 1000)]
        budget: u64,
        #[arg(long, default_value = "ab")]
        alphabet: String,
    },
    /// Diagonalize over the machines in a directory (sorted by file name).
    Diagonalize {
        #[arg(long)]
        library: PathBuf,
        #[arg(long, value_enum, default_value_t = DiagonalKind::Flip)]
        mode: DiagonalKind,
        /// With machine-x, evaluate this one input instead of every w_k.
        #[arg(long)]
        input: Option<String>,
        /// Step budget per run.
        #[arg(long, env = BUDGET_ENV, default_value = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BijectionKind {
    /// n ↦ the string of rank n
    Unrank,
    /// n ↦ the string of rank 2n
    EvenRanks,
    /// n ↦ the string of rank n²
    Squares,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderKind {
    /// Lexicographic order on pairs of naturals.
    LexNn,
    /// Canonical order on strings.
    Unrank,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagonalKind {
    Flip,
    Shift,
    MachineX,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            // clap's own report spans several lines; keep only the first
            let text = e.render().to_string();
            eprintln!("{}", text.lines().next().unwrap_or("error: bad arguments"));
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}

fn alphabet(symbols: &str) -> Result<Alphabet> {
    Alphabet::from_chars(symbols).with_context(|| format!("alphabet {symbols:?}"))
}

fn load_machine(path: &Path) -> Result<TuringMachine> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_machine(&text).with_context(|| format!("{}", path.display()))
}

fn bijection(
    kind: BijectionKind,
    a: Alphabet,
) -> Box<dyn CountingBijection<Item = CanonicalString>> {
    match kind {
        BijectionKind::Unrank => Box::new(Unranking::new(a)),
        BijectionKind::EvenRanks => Box::new(even_ranks(a)),
        BijectionKind::Squares => Box::new(square_ranks(a)),
    }
}

fn line(out: &mut impl Write, text: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "{text}")?;
    out.flush()?;
    Ok(())
}

fn run(command: Command, out: &mut impl Write) -> Result<()> {
    match command {
        Command::Rank {
            string,
            alphabet: a,
        } => {
            let s = alphabet(&a)?.parse(&string)?;
            line(out, s.rank())
        }
        Command::Unrank {
            number,
            alphabet: a,
        } => {
            let n: BigUint = number
                .parse()
                .map_err(|_| anyhow!("not a natural number: {number:?}"))?;
            line(out, unrank(&Rank(n), &alphabet(&a)?))
        }
        Command::RunTm {
            machine,
            input,
            budget,
        } => {
            let m = load_machine(&machine)?;
            let w = m.input_alphabet().parse(&input)?;
            let r = m.run(&w, budget)?;
            line(out, format_args!("{} steps={}", r.outcome, r.steps))
        }
        Command::Encode { machine } => line(out, encode(&load_machine(&machine)?)),
        Command::Decode { bits } => {
            let m = decode_validate(&MachineEncoding::new(bits)).context("invalid encoding")?;
            write!(out, "{}", m.to_text())?;
            out.flush()?;
            Ok(())
        }
        Command::Dovetail {
            machine,
            max_prints,
            max_rounds,
        } => {
            let mut d = Dovetail::new(load_machine(&machine)?);
            if let Some(r) = max_rounds {
                d = d.with_max_rounds(r);
            }
            let mut s = d.stream();
            for _ in 0..max_prints {
                match s.pull() {
                    Pull::Printed(w) => line(out, w)?,
                    Pull::Exhausted | Pull::Stalled => break,
                }
            }
            Ok(())
        }
        Command::Nth {
            args,
            bijection: kind,
            max_rounds,
            alphabet: a,
        } => {
            let (stream, n) = match (kind, args.as_slice()) {
                (Some(kind), [n]) => (from_bijection(bijection(kind, alphabet(&a)?)), n),
                (None, [file, n]) => {
                    let m = load_machine(Path::new(file))?;
                    (Dovetail::new(m).with_max_rounds(max_rounds).stream(), n)
                }
                (Some(_), _) => bail!("with --bijection give only the index"),
                (None, _) => {
                    bail!("expected a machine file and an index, or --bijection and an index")
                }
            };
            let n: u64 = n.parse().map_err(|_| anyhow!("not an index: {n:?}"))?;
            line(out, nth_printed(&stream, n)?)
        }
        Command::IndexOf {
            machine,
            string,
            budget,
            max_rounds,
        } => {
            let m = load_machine(&machine)?;
            let w = m.input_alphabet().parse(&string)?;
            let stream = Dovetail::new(m).with_max_rounds(max_rounds).stream();
            match countable::enumerator::print_index(&stream, &w, budget) {
                Some(i) => line(out, i),
                None => line(out, "not_seen"),
            }
        }
        Command::DecideIncreasing {
            stream,
            string,
            alphabet: a,
        } => {
            let a = alphabet(&a)?;
            let w = a.parse(&string)?;
            let stream = stream_spec(&stream, &a)?;
            line(out, decide_by_increasing(&stream, &w)?)
        }
        Command::Deletemin {
            bijection: kind,
            count,
            alphabet: a,
        } => {
            let mut source = delete_min_from_bijection(bijection(kind, alphabet(&a)?));
            for _ in 0..count {
                match source.delete_min() {
                    Some(x) => line(out, x)?,
                    None => break,
                }
            }
            Ok(())
        }
        Command::ChainSearch {
            order,
            from,
            to,
            budget,
            alphabet: a,
        } => match order {
            OrderKind::LexNn => {
                let r = chain_search(&LexPairs, &pair(&from)?, &pair(&to)?, budget)?;
                print_chain(out, &r, |(x, y)| format!("{x},{y}"))
            }
            OrderKind::Unrank => {
                let a = alphabet(&a)?;
                let order = order_from_bijection(Unranking::new(a.clone()), 0);
                let r = chain_search(&order, &a.parse(&from)?, &a.parse(&to)?, budget)?;
                print_chain(out, &r, |s| s.to_string())
            }
        },
        Command::Diagonalize {
            library,
            mode,
            input,
            budget,
        } => diagonalize(out, &library, mode, input.as_deref(), budget),
    }
}

fn stream_spec(spec: &str, a: &Alphabet) -> Result<EnumerationStream> {
    if let Some(list) = spec.strip_prefix("list:") {
        let items = if list.is_empty() {
            Vec::new()
        } else {
            list.split(',')
                .map(|w| a.parse(w))
                .collect::<Result<_, _>>()?
        };
        return Ok(EnumerationStream::from_list(items));
    }
    let kind = BijectionKind::from_str(spec, false).map_err(|_| {
        anyhow!("unknown stream {spec:?}; expected unrank, even-ranks, squares or list:w1,w2,...")
    })?;
    Ok(from_bijection(bijection(kind, a.clone())))
}

fn pair(text: &str) -> Result<(u64, u64)> {
    let parse = || -> Option<(u64, u64)> {
        let (x, y) = text.split_once(',')?;
        Some((x.trim().parse().ok()?, y.trim().parse().ok()?))
    };
    parse().ok_or_else(|| anyhow!("expected a pair x,y of naturals, got {text:?}"))
}

fn print_chain<T>(
    out: &mut impl Write,
    r: &ChainSearch<T>,
    show: impl Fn(&T) -> String,
) -> Result<()> {
    let status = if r.exceeded() {
        "budget_exceeded"
    } else {
        "found"
    };
    line(out, format_args!("{status} {}", r.chain().len()))?;
    for x in r.chain() {
        line(out, show(x))?;
    }
    Ok(())
}

fn diagonalize(
    out: &mut impl Write,
    dir: &Path,
    mode: DiagonalKind,
    input: Option<&str>,
    budget: u64,
) -> Result<()> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.extension().is_some_and(|x| x == "tm"));
    files.sort();
    if files.is_empty() {
        bail!("no .tm files in {}", dir.display());
    }

    let mut machines = Vec::with_capacity(files.len());
    for f in &files {
        let name = f
            .file_stem()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        machines.push((name, load_machine(f)?));
    }
    let a = machines[0].1.input_alphabet().clone();
    let lib = DeciderLibrary::new(a, machines, budget)
        .with_context(|| format!("library {}", dir.display()))?;

    match mode {
        DiagonalKind::Flip | DiagonalKind::Shift => {
            if input.is_some() {
                bail!("--input only applies to --mode machine-x");
            }
            let table = FunctionTable::from_deciders(&lib, budget);
            let diagonal = match mode {
                DiagonalKind::Flip => diagonal_flip(&table),
                _ => diagonal_shift(&table),
            };
            line(out, "k f_k(k) g(k)")?;
            for row in diagonal.rows()? {
                line(
                    out,
                    format_args!("{} {} {}", row.index, row.diagonal, row.value),
                )?;
            }
        }
        DiagonalKind::MachineX => {
            let inputs: Vec<CanonicalString> = match input {
                Some(w) => vec![lib.alphabet().parse(w)?],
                None => (0..lib.len() as u64)
                    .map(|k| lib.diagonal_input(k))
                    .collect(),
            };
            line(out, "k w M_k(w) X(w)")?;
            for w in inputs {
                let x = machine_x(&lib, &w, budget)?;
                let shown = if w.is_empty() {
                    "ε".to_string()
                } else {
                    w.to_string()
                };
                line(
                    out,
                    format_args!("{} {} {} {}", x.index, shown, x.decider_bit, x.value),
                )?;
            }
        }
    }
    Ok(())
}
