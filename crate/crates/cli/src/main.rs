//! `regeq`: decide, minimize, generate and benchmark regular languages.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use regeq::alphabet::Alphabet;
use regeq::automata::{
    align_dfas, align_nfas, determinize, parse_machine, write_dfa, write_nfa, Dfa, Machine, Nfa,
};
use regeq::bench::{parse_config, run_bench, write_csv};
use regeq::equivalence::{am, equiv_uf, hk, hke, hki, hkn, EquivalenceReport};
use regeq::gen::{
    gen_icdfa, gen_nfa, gen_regex, worst_case_family, FamilyMember, FamilyVariant, GenParams,
};
use regeq::minimize::{brzozowski_minimize, hopcroft_minimize};
use regeq::regex::{brzozowski_automaton, parse, partial_derivative_nfa, Regex};

#[derive(Parser)]
#[command(name = "regeq", version, about = "Equivalence of regular languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two inputs denote the same language.
    ///
    /// Each input is an automaton file, a file holding one expression, or an
    /// inline expression. Exit status: 0 equivalent, 1 not, 2 error.
    Equiv(EquivArgs),
    /// Minimize an automaton (or expression) and print the minimal DFA.
    Minimize(MinimizeArgs),
    /// Generate random or structured instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run a benchmark grid and write CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alg {
    Hk,
    Hki,
    Hkn,
    Hke,
    Am,
    Equivuf,
    Auto,
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long, value_enum, default_value_t = Alg::Auto)]
    alg: Alg,
    /// Alphabet for expressions, e.g. `ab`; defaults to the symbols used.
    #[arg(long)]
    alphabet: Option<String>,
    /// Allow comparing an expression with an automaton by building an
    /// automaton for the expression.
    #[arg(long)]
    convert: bool,
    left: String,
    right: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Hopcroft,
    Brzozowski,
}

#[derive(Args)]
struct MinimizeArgs {
    /// Automaton file, expression file or inline expression.
    input: String,
    #[arg(long, value_enum, default_value_t = Method::Hopcroft)]
    method: Method,
    #[arg(long)]
    alphabet: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    /// Partial-derivative NFA.
    Pd,
    /// DFA of derivatives.
    Brzozowski,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Regex,
    Nfa,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random initially-connected complete DFA.
    Dfa {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        final_probability: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Random NFA with exactly round(d·k·n²) transitions.
    Nfa {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        d: f64,
        #[arg(long, default_value_t = 0.5)]
        final_probability: f64,
        #[arg(long, default_value_t = 1)]
        initials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Uniformly random expression with `size` nodes.
    Regex {
        #[arg(long, default_value_t = 10)]
        size: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Member `l` of the worst-case family.
    Family {
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = Variant::Regex)]
        variant: Variant,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Automaton of an expression.
    FromRegex {
        regex: String,
        #[arg(long, value_enum, default_value_t = Construction::Pd)]
        construction: Construction,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    /// CSV destination; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also print per-pair medians to stderr.
    #[arg(long)]
    verbose: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Equiv(args) => equiv(&args).map(|r| {
            println!("{r}");
            if r.equivalent {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }),
        Command::Minimize(args) => minimize(&args).map(|_| ExitCode::SUCCESS),
        Command::Gen(g) => gen(g).map(|_| ExitCode::SUCCESS),
        Command::Bench(args) => bench(&args).map(|_| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}

// ---- inputs -------------------------------------------------------------------

enum Input {
    Machine(Machine),
    Regex(String),
}

/// An existing file is read; its contents are an automaton when they start
/// with a `dfa`/`nfa` header and an expression otherwise. Anything else
/// without path characters is an inline expression.
fn load(arg: &str) -> Result<Input> {
    let path = Path::new(arg);
    if !path.is_file() {
        // the expression grammar has no path characters
        if arg.contains(['.', '/', '\\']) {
            bail!("no such file: {arg}");
        }
        return Ok(Input::Regex(arg.to_string()));
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
    let head = text.trim_start();
    if head.starts_with("dfa") || head.starts_with("nfa") {
        let m = parse_machine(&text).with_context(|| format!("parsing {arg}"))?;
        Ok(Input::Machine(m))
    } else {
        Ok(Input::Regex(text.trim().to_string()))
    }
}

fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    parse(text, alphabet).with_context(|| format!("parsing expression {text:?}"))
}

/// The alphabet for expressions: the explicit one, or the symbols in order
/// of first use (machine alphabets first), or `a` if nothing names a symbol.
fn pick_alphabet(explicit: Option<&str>, inputs: &[&Input]) -> Result<Alphabet> {
    if let Some(a) = explicit {
        return Alphabet::parse(a).context("invalid --alphabet");
    }
    let mut syms: Vec<char> = Vec::new();
    for input in inputs {
        let more = match input {
            Input::Machine(m) => m.alphabet().symbols().to_vec(),
            Input::Regex(t) => parse_regex(t, &Alphabet::first(26))?.symbols(),
        };
        for c in more {
            if !syms.contains(&c) {
                syms.push(c);
            }
        }
    }
    if syms.is_empty() {
        syms.push('a');
    }
    Ok(Alphabet::new(syms)?)
}

enum Form {
    Dfa,
    Nfa,
    Regex,
}

fn to_dfa(input: &Input, alphabet: &Alphabet) -> Result<Dfa> {
    Ok(match input {
        Input::Machine(Machine::Dfa(d)) => d.clone(),
        Input::Machine(Machine::Nfa(n)) => determinize(n),
        Input::Regex(t) => brzozowski_automaton(&parse_regex(t, alphabet)?, alphabet),
    })
}

fn to_nfa(input: &Input, alphabet: &Alphabet) -> Result<Nfa> {
    Ok(match input {
        Input::Machine(m) => m.to_nfa(),
        Input::Regex(t) => partial_derivative_nfa(&parse_regex(t, alphabet)?, alphabet),
    })
}

fn equiv(args: &EquivArgs) -> Result<EquivalenceReport> {
    let a = load(&args.left)?;
    let b = load(&args.right)?;
    let regexes = [&a, &b]
        .iter()
        .filter(|i| matches!(i, Input::Regex(_)))
        .count();
    if regexes == 1 && !args.convert {
        bail!("cannot compare an expression with an automaton without --convert");
    }
    let alg = match args.alg {
        Alg::Auto => match (&a, &b) {
            (Input::Regex(_), Input::Regex(_)) => Alg::Equivuf,
            (Input::Machine(Machine::Dfa(_)), Input::Machine(Machine::Dfa(_))) => Alg::Hki,
            _ => Alg::Hke,
        },
        alg => alg,
    };
    let form = match alg {
        Alg::Hk | Alg::Hki | Alg::Hkn => Form::Dfa,
        Alg::Hke => Form::Nfa,
        Alg::Am | Alg::Equivuf | Alg::Auto => Form::Regex,
    };
    let sigma = pick_alphabet(args.alphabet.as_deref(), &[&a, &b])?;
    Ok(match form {
        Form::Dfa => {
            let (x, y) = align_dfas(&to_dfa(&a, &sigma)?, &to_dfa(&b, &sigma)?);
            match alg {
                Alg::Hk => hk(&x, &y),
                Alg::Hki => hki(&x, &y),
                _ => hkn(&x, &y).report,
            }
        }
        Form::Nfa => {
            let (x, y) = align_nfas(&to_nfa(&a, &sigma)?, &to_nfa(&b, &sigma)?);
            hke(&x, &y)
        }
        Form::Regex => {
            let (Input::Regex(s), Input::Regex(t)) = (&a, &b) else {
                bail!("this algorithm needs two expressions");
            };
            let (r, q) = (parse_regex(s, &sigma)?, parse_regex(t, &sigma)?);
            if alg == Alg::Am {
                am(&r, &q, &sigma)?
            } else {
                equiv_uf(&r, &q, &sigma)?
            }
        }
    })
}

// ---- output -------------------------------------------------------------------

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn minimize(args: &MinimizeArgs) -> Result<()> {
    let input = load(&args.input)?;
    let sigma = pick_alphabet(args.alphabet.as_deref(), &[&input])?;
    let m = match args.method {
        Method::Hopcroft => hopcroft_minimize(&to_dfa(&input, &sigma)?),
        Method::Brzozowski => brzozowski_minimize(&to_nfa(&input, &sigma)?),
    };
    emit(args.output.as_deref(), &write_dfa(&m))
}

fn gen(cmd: GenCommand) -> Result<()> {
    let params = |c: &Common| GenParams {
        k: c.k,
        seed: c.seed,
        ..GenParams::default()
    };
    match cmd {
        GenCommand::Dfa {
            n,
            final_probability,
            common,
        } => {
            let p = GenParams {
                n,
                final_probability,
                ..params(&common)
            };
            emit(common.output.as_deref(), &write_dfa(&gen_icdfa(&p)?))
        }
        GenCommand::Nfa {
            n,
            d,
            final_probability,
            initials,
            common,
        } => {
            let p = GenParams {
                n,
                d,
                final_probability,
                initials,
                ..params(&common)
            };
            emit(common.output.as_deref(), &write_nfa(&gen_nfa(&p)?))
        }
        GenCommand::Regex { size, common } => {
            let p = GenParams {
                size,
                ..params(&common)
            };
            emit(common.output.as_deref(), &format!("{}\n", gen_regex(&p)?))
        }
        GenCommand::Family { l, variant, output } => {
            let v = match variant {
                Variant::Regex => FamilyVariant::Regex,
                Variant::Nfa => FamilyVariant::Nfa,
            };
            let text = match worst_case_family(l, v)? {
                FamilyMember::Regex(r) => format!("{r}\n"),
                FamilyMember::Nfa(n) => write_nfa(&n),
            };
            emit(output.as_deref(), &text)
        }
        GenCommand::FromRegex {
            regex,
            construction,
            alphabet,
            output,
        } => {
            let input = load(&regex)?;
            if matches!(input, Input::Machine(_)) {
                bail!("{regex} holds an automaton, not an expression");
            }
            let sigma = pick_alphabet(alphabet.as_deref(), &[&input])?;
            let text = match construction {
                Construction::Pd => write_nfa(&to_nfa(&input, &sigma)?),
                Construction::Brzozowski => write_dfa(&to_dfa(&input, &sigma)?),
            };
            emit(output.as_deref(), &text)
        }
    }
}

fn bench(args: &BenchArgs) -> Result<()> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let cfg = parse_config(&text)?;
    let rows = run_bench(&cfg)?;
    if args.verbose {
        for r in &rows {
            let median = r
                .median_eff_s
                .map_or("-".to_string(), |s| format!("{s:.6}"));
            eprintln!("{} median_eff_s={median}", r.csv_line());
        }
    }
    match &args.output {
        Some(p) => {
            let f = fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
            write_csv(&rows, io::BufWriter::new(f))?;
        }
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}
