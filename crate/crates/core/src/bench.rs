//! Benchmark harness.
//!
//! A config names the algorithms, the input kind and a parameter grid. For
//! every grid cell each algorithm runs on the same seeded pairs and yields
//! one CSV row. Effective time covers only the decision itself; total time
//! adds instance generation, a print/parse round trip of both inputs and any
//! input conversion.
//!
//! Config syntax, one `key = value` per line, `#` starts a comment, lists
//! are comma separated:
//!
//! ```text
//! input = dfa                 # dfa | nfa | regex
//! algorithms = hop, hk, hki
//! n = 5, 50
//! k = 2
//! pairs = 1000
//! timeout_seconds = 60
//! seed = 1
//! ```
//!
//! Other keys: `d` (NFA density list), `size` (r.e. size list),
//! `final_probability`, `initials`.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{mpsc, Arc};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::automata::{determinize, parse_machine, write_dfa, write_nfa, Dfa, Machine, Nfa};
use crate::equivalence::{am, equiv_uf, hk, hke, hki, hkn, EquivalenceReport};
use crate::gen::{derive_seed, gen_icdfa, gen_nfa, gen_regex, GenError, GenParams};
use crate::minimize::{brzozowski_minimize, hopcroft_minimize, isomorphic_unchecked};
use crate::regex::{parse, partial_derivative_nfa, Regex};

pub const CSV_HEADER: &str = "alg,n,k,d,size,pairs,eff_s,total_s,mean_iters,timeouts";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("algorithm {alg} does not take {input} input")]
    NotApplicable { alg: Algorithm, input: InputKind },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Hk,
    Hki,
    Hkn,
    Hke,
    Am,
    EquivUf,
    Hop,
    Brz,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::Hk,
        Algorithm::Hki,
        Algorithm::Hkn,
        Algorithm::Hke,
        Algorithm::Am,
        Algorithm::EquivUf,
        Algorithm::Hop,
        Algorithm::Brz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Hk => "hk",
            Algorithm::Hki => "hki",
            Algorithm::Hkn => "hkn",
            Algorithm::Hke => "hke",
            Algorithm::Am => "am",
            Algorithm::EquivUf => "equivuf",
            Algorithm::Hop => "hop",
            Algorithm::Brz => "brz",
        }
    }

    /// Whether rows for this algorithm carry an iteration count.
    pub fn counts_iterations(self) -> bool {
        !matches!(self, Algorithm::Hop | Algorithm::Brz)
    }

    pub fn accepts(self, input: InputKind) -> bool {
        use Algorithm::*;
        match input {
            InputKind::Dfa => matches!(self, Hk | Hki | Hkn | Hke | Hop | Brz),
            InputKind::Nfa => matches!(self, Hke | Hop | Brz),
            InputKind::Regex => matches!(self, Hke | Am | EquivUf | Hop | Brz),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| BenchError::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Dfa,
    Nfa,
    Regex,
}

impl fmt::Display for InputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InputKind::Dfa => "dfa",
            InputKind::Nfa => "nfa",
            InputKind::Regex => "regex",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub input: InputKind,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub d: Vec<f64>,
    pub size: Vec<usize>,
    pub pairs: usize,
    pub timeout: Duration,
    pub seed: u64,
    pub final_probability: f64,
    pub initials: usize,
}

impl BenchConfig {
    pub fn new(input: InputKind, algorithms: Vec<Algorithm>) -> Self {
        BenchConfig {
            algorithms,
            input,
            n: vec![5],
            k: vec![2],
            d: vec![0.1],
            size: vec![10],
            pairs: 100,
            timeout: Duration::from_secs(60),
            seed: 0,
            final_probability: 0.5,
            initials: 1,
        }
    }

    /// Grid cells in row order: `n`, then `k`, then `d` or `size`.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        let ns: Vec<Option<usize>> = match self.input {
            InputKind::Regex => vec![None],
            _ => self.n.iter().copied().map(Some).collect(),
        };
        let ds: Vec<Option<f64>> = match self.input {
            InputKind::Nfa => self.d.iter().copied().map(Some).collect(),
            _ => vec![None],
        };
        let sizes: Vec<Option<usize>> = match self.input {
            InputKind::Regex => self.size.iter().copied().map(Some).collect(),
            _ => vec![None],
        };
        for &n in &ns {
            for &k in &self.k {
                for &d in &ds {
                    for &size in &sizes {
                        out.push(Cell { n, k, d, size });
                    }
                }
            }
        }
        out
    }
}

fn list<T: FromStr>(value: &str, line: usize) -> Result<Vec<T>, BenchError> {
    value
        .split(',')
        .map(|v| {
            v.trim().parse().map_err(|_| BenchError::Config {
                line,
                message: format!("cannot read `{}`", v.trim()),
            })
        })
        .collect()
}

fn single<T: FromStr>(value: &str, line: usize) -> Result<T, BenchError> {
    value.parse().map_err(|_| BenchError::Config {
        line,
        message: format!("cannot read `{value}`"),
    })
}

/// Reads a config; `input` and `algorithms` are required.
pub fn parse_config(text: &str) -> Result<BenchConfig, BenchError> {
    let mut input = None;
    let mut algorithms = None;
    let mut cfg = BenchConfig::new(InputKind::Dfa, Vec::new());
    let mut alg_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(BenchError::Config {
                line,
                message: "expected `key = value`".into(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        match key {
            "input" => {
                input = Some(match value {
                    "dfa" => InputKind::Dfa,
                    "nfa" => InputKind::Nfa,
                    "regex" => InputKind::Regex,
                    _ => {
                        return Err(BenchError::Config {
                            line,
                            message: format!("unknown input kind `{value}`"),
                        })
                    }
                })
            }
            "algorithms" => {
                alg_line = line;
                algorithms = Some(
                    value
                        .split(',')
                        .map(|a| a.trim().parse())
                        .collect::<Result<Vec<Algorithm>, _>>()?,
                );
            }
            "n" => cfg.n = list(value, line)?,
            "k" => {
                cfg.k = list(value, line)?;
                if let Some(k) = cfg.k.iter().find(|k| !(1..=26).contains(*k)) {
                    return Err(BenchError::Config {
                        line,
                        message: format!("k = {k} is outside 1..=26"),
                    });
                }
            }
            "d" => cfg.d = list(value, line)?,
            "size" => cfg.size = list(value, line)?,
            "pairs" => cfg.pairs = single(value, line)?,
            "timeout_seconds" => {
                let s: f64 = single(value, line)?;
                if !(s > 0.0 && s.is_finite()) {
                    return Err(BenchError::Config {
                        line,
                        message: "timeout must be positive".into(),
                    });
                }
                cfg.timeout = Duration::from_secs_f64(s);
            }
            "seed" => cfg.seed = single(value, line)?,
            "final_probability" => cfg.final_probability = single(value, line)?,
            "initials" => cfg.initials = single(value, line)?,
            _ => {
                return Err(BenchError::Config {
                    line,
                    message: format!("unknown key `{key}`"),
                })
            }
        }
    }
    let missing = |what: &str| BenchError::Config {
        line: 0,
        message: format!("missing `{what}`"),
    };
    cfg.input = input.ok_or_else(|| missing("input"))?;
    cfg.algorithms = algorithms.ok_or_else(|| missing("algorithms"))?;
    if cfg.algorithms.is_empty() || cfg.pairs == 0 {
        return Err(BenchError::Config {
            line: alg_line,
            message: "need at least one algorithm and one pair".into(),
        });
    }
    if let Some(&alg) = cfg.algorithms.iter().find(|a| !a.accepts(cfg.input)) {
        return Err(BenchError::NotApplicable {
            alg,
            input: cfg.input,
        });
    }
    Ok(cfg)
}

/// One grid point; fields that do not apply to the input kind are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub n: Option<usize>,
    pub k: usize,
    pub d: Option<f64>,
    pub size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub alg: Algorithm,
    pub cell: Cell,
    pub pairs: usize,
    /// `None` when the run timed out.
    pub eff_s: Option<f64>,
    pub total_s: Option<f64>,
    /// Median effective seconds per pair.
    pub median_eff_s: Option<f64>,
    /// `None` for minimizers and timed-out runs.
    pub mean_iters: Option<f64>,
    /// Pairs found equivalent.
    pub equivalent: Option<usize>,
    pub timed_out: bool,
}

fn opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl BenchRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.alg,
            opt(self.cell.n),
            self.cell.k,
            opt(self.cell.d),
            opt(self.cell.size),
            self.pairs,
            opt(self.eff_s.map(|s| format!("{s:.6}"))),
            opt(self.total_s.map(|s| format!("{s:.6}"))),
            opt(self.mean_iters.map(|s| format!("{s:.3}"))),
            u8::from(self.timed_out),
        )
    }
}

pub fn write_csv<W: Write>(rows: &[BenchRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.csv_line())?;
    }
    Ok(())
}

enum Pair {
    Dfas(Dfa, Dfa),
    Nfas(Nfa, Nfa),
    Regexes(Regex, Regex, Alphabet),
}

fn params(cfg: &BenchConfig, cell: &Cell, seed: u64) -> GenParams {
    GenParams {
        n: cell.n.unwrap_or(1),
        k: cell.k,
        d: cell.d.unwrap_or(1.0),
        size: cell.size.unwrap_or(1),
        seed,
        final_probability: cfg.final_probability,
        initials: cfg.initials,
    }
}

fn round_trip(m: Machine) -> Machine {
    let text = match &m {
        Machine::Dfa(d) => write_dfa(d),
        Machine::Nfa(n) => write_nfa(n),
    };
    parse_machine(&text).expect("printed machines parse")
}

// Generates pair `i` of the cell and brings it into the form `alg` expects.
fn prepare(cfg: &BenchConfig, cell: &Cell, alg: Algorithm, i: u64) -> Result<Pair, GenError> {
    let p1 = params(cfg, cell, derive_seed(cfg.seed, 2 * i));
    let p2 = params(cfg, cell, derive_seed(cfg.seed, 2 * i + 1));
    Ok(match cfg.input {
        InputKind::Dfa => {
            let dfa = |p| -> Result<Dfa, GenError> {
                match round_trip(Machine::Dfa(gen_icdfa(p)?)) {
                    Machine::Dfa(d) => Ok(d),
                    Machine::Nfa(_) => unreachable!("dfa text parses as dfa"),
                }
            };
            let (a, b) = (dfa(&p1)?, dfa(&p2)?);
            match alg {
                Algorithm::Hke | Algorithm::Brz => Pair::Nfas(a.to_nfa(), b.to_nfa()),
                _ => Pair::Dfas(a, b),
            }
        }
        InputKind::Nfa => {
            let nfa =
                |p| -> Result<Nfa, GenError> { Ok(round_trip(Machine::Nfa(gen_nfa(p)?)).to_nfa()) };
            Pair::Nfas(nfa(&p1)?, nfa(&p2)?)
        }
        InputKind::Regex => {
            let sigma = Alphabet::first(cell.k);
            let re = |p| -> Result<Regex, GenError> {
                let r = gen_regex(p)?;
                Ok(parse(&r.to_string(), &sigma).expect("printed expressions parse"))
            };
            Pair::Regexes(re(&p1)?, re(&p2)?, sigma.clone())
        }
    })
}

fn minimized(alg: Algorithm, n: &Nfa) -> Dfa {
    match alg {
        Algorithm::Brz => brzozowski_minimize(n),
        _ => hopcroft_minimize(&determinize(n)),
    }
}

// Returns the verdict and, for iterative checkers, the iteration count.
fn decide(alg: Algorithm, pair: &Pair) -> (bool, Option<usize>) {
    let from = |r: EquivalenceReport| (r.equivalent, Some(r.iterations));
    match (alg, pair) {
        (Algorithm::Hk, Pair::Dfas(a, b)) => from(hk(a, b)),
        (Algorithm::Hki, Pair::Dfas(a, b)) => from(hki(a, b)),
        (Algorithm::Hkn, Pair::Dfas(a, b)) => from(hkn(a, b).report),
        (Algorithm::Hop, Pair::Dfas(a, b)) => (
            isomorphic_unchecked(&hopcroft_minimize(a), &hopcroft_minimize(b)),
            None,
        ),
        (Algorithm::Hke, Pair::Nfas(a, b)) => from(hke(a, b)),
        (Algorithm::Hop | Algorithm::Brz, Pair::Nfas(a, b)) => (
            isomorphic_unchecked(&minimized(alg, a), &minimized(alg, b)),
            None,
        ),
        (Algorithm::Am, Pair::Regexes(a, b, s)) => from(am(a, b, s).expect("generated over s")),
        (Algorithm::EquivUf, Pair::Regexes(a, b, s)) => {
            from(equiv_uf(a, b, s).expect("generated over s"))
        }
        (_, Pair::Regexes(a, b, s)) => {
            let (na, nb) = (partial_derivative_nfa(a, s), partial_derivative_nfa(b, s));
            decide(alg, &Pair::Nfas(na, nb))
        }
        _ => unreachable!("applicability is checked when the config is read"),
    }
}

#[derive(Debug, Default)]
struct Totals {
    eff: Vec<f64>,
    total: f64,
    iters: usize,
    equivalent: usize,
}

fn run_cell(
    cfg: &BenchConfig,
    cell: &Cell,
    alg: Algorithm,
    cancel: &AtomicBool,
) -> Result<Option<Totals>, GenError> {
    // warmup on the first pair, discarded
    let warm = prepare(cfg, cell, alg, 0)?;
    decide(alg, &warm);

    let mut t = Totals::default();
    for i in 0..cfg.pairs as u64 {
        if cancel.load(Ordering::Relaxed) {
            return Ok(None);
        }
        let start = Instant::now();
        let pair = prepare(cfg, cell, alg, i)?;
        let ready = Instant::now();
        let (eq, iters) = decide(alg, &pair);
        let done = Instant::now();
        t.eff.push((done - ready).as_secs_f64());
        t.total += (done - start).as_secs_f64();
        t.iters += iters.unwrap_or(0);
        t.equivalent += usize::from(eq);
    }
    Ok(Some(t))
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

/// Runs every (cell, algorithm) combination in order.
///
/// Each combination runs on a worker thread under the configured time
/// budget. A run that overshoots is reported as timed out; its worker is
/// told to stop at the next pair boundary and is not waited for.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::new();
    for cell in cfg.cells() {
        for &alg in &cfg.algorithms {
            if !alg.accepts(cfg.input) {
                return Err(BenchError::NotApplicable {
                    alg,
                    input: cfg.input,
                });
            }
            let (tx, rx) = mpsc::channel();
            let cancel = Arc::new(AtomicBool::new(false));
            let worker_cancel = Arc::clone(&cancel);
            let worker_cfg = cfg.clone();
            thread::spawn(move || {
                let _ = tx.send(run_cell(&worker_cfg, &cell, alg, &worker_cancel));
            });
            let outcome = match rx.recv_timeout(cfg.timeout) {
                Ok(r) => r?,
                Err(_) => {
                    cancel.store(true, Ordering::Relaxed);
                    None
                }
            };
            rows.push(match outcome {
                Some(mut t) => {
                    let pairs = t.eff.len();
                    BenchRow {
                        alg,
                        cell,
                        pairs,
                        eff_s: Some(t.eff.iter().sum()),
                        total_s: Some(t.total),
                        median_eff_s: Some(median(&mut t.eff)),
                        mean_iters: alg
                            .counts_iterations()
                            .then(|| t.iters as f64 / pairs as f64),
                        equivalent: Some(t.equivalent),
                        timed_out: false,
                    }
                }
                None => BenchRow {
                    alg,
                    cell,
                    pairs: cfg.pairs,
                    eff_s: None,
                    total_s: None,
                    median_eff_s: None,
                    mean_iters: None,
                    equivalent: None,
                    timed_out: true,
                },
            });
        }
    }
    Ok(rows)
}
