//! Benchmark grid over random texts.
//!
//! CSV columns: `n,k,op,count,avg_lce_calls,p50_time_ns,p99_time_ns`, one row
//! per (n, k, op). For a fixed seed every column except the two timing
//! columns is reproducible.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use dynsa::{DynamicSuffixArray, Symbol, DEFAULT_SEED};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::failure::Failure;

pub const CSV_HEADER: &str = "n,k,op,count,avg_lce_calls,p50_time_ns,p99_time_ns";

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Text lengths, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1024")]
    n: Vec<usize>,
    /// Trade-off parameters, comma separated; defaults to ceil(sqrt(n)).
    #[arg(long, value_delimiter = ',')]
    k: Vec<usize>,
    /// Queries per configuration, split evenly between SA and ISA.
    #[arg(long, default_value_t = 1000)]
    queries: usize,
    /// Substitutions per configuration, interleaved with the queries.
    #[arg(long, default_value_t = 100)]
    updates: usize,
    /// Alphabet size; text symbols are the bytes 0..alphabet.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..=255))]
    alphabet: u16,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output file; standard output if absent.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Sub,
    Sa,
    Isa,
}

impl Op {
    const ALL: [Op; 3] = [Op::Sub, Op::Sa, Op::Isa];

    fn name(self) -> &'static str {
        match self {
            Op::Sub => "SUB",
            Op::Sa => "SA",
            Op::Isa => "ISA",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n: usize,
    pub k: usize,
    pub op: &'static str,
    pub count: usize,
    pub avg_lce_calls: f64,
    pub p50_time_ns: u64,
    pub p99_time_ns: u64,
}

impl Row {
    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{:.3},{},{}",
            self.n, self.k, self.op, self.count, self.avg_lce_calls, self.p50_time_ns, self.p99_time_ns
        )
    }
}

fn percentile(sorted: &[u64], q: f64) -> u64 {
    if sorted.is_empty() {
        return 0;
    }
    let idx = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[idx - 1]
}

/// One configuration: the text and the operation sequence depend only on
/// `(seed, n)`, so different `k` see identical workloads.
fn measure(n: usize, k: usize, args: &BenchArgs) -> Result<Vec<Row>, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ (n as u64).rotate_left(32));
    let sigma = args.alphabet as u8;
    let text: Vec<u8> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
    let mut ops: Vec<Op> = (0..args.queries)
        .map(|q| if q % 2 == 0 { Op::Sa } else { Op::Isa })
        .chain(std::iter::repeat_n(Op::Sub, args.updates))
        .collect();
    ops.shuffle(&mut rng);
    let mut index = DynamicSuffixArray::with_seed(&text, k, args.seed).map_err(|e| Failure::from_index("bench", e))?;

    let mut calls = [0u64; 3];
    let mut times: [Vec<u64>; 3] = Default::default();
    for op in ops {
        let arg = rng.gen_range(1..=n);
        let sym = Symbol::byte(rng.gen_range(0..sigma));
        let before = index.counters().lce_calls;
        let start = Instant::now();
        let res = match op {
            Op::Sub => index.substitute(arg, sym).map(|_| ()),
            Op::Sa => index.suffix_array(arg).map(|_| ()),
            Op::Isa => index.inverse_suffix_array(arg).map(|_| ()),
        };
        let elapsed = start.elapsed().as_nanos() as u64;
        res.map_err(|e| Failure::from_index(format!("bench n={n} k={k} {} {arg}", op.name()), e))?;
        let slot = op as usize;
        calls[slot] += index.counters().lce_calls - before;
        times[slot].push(elapsed);
    }

    Ok(Op::ALL
        .iter()
        .map(|&op| {
            let slot = op as usize;
            let t = &mut times[slot];
            t.sort_unstable();
            let count = t.len();
            Row {
                n,
                k,
                op: op.name(),
                count,
                avg_lce_calls: if count == 0 { 0.0 } else { calls[slot] as f64 / count as f64 },
                p50_time_ns: percentile(t, 0.50),
                p99_time_ns: percentile(t, 0.99),
            }
        })
        .collect())
}

pub fn grid(args: &BenchArgs) -> Result<Vec<Row>, Failure> {
    let mut rows = Vec::new();
    for &n in &args.n {
        if n == 0 {
            return Err(Failure::Usage("--n values must be at least 1".into()));
        }
        let ks = if args.k.is_empty() {
            vec![crate::default_k(n)]
        } else {
            args.k.clone()
        };
        for k in ks {
            if k == 0 || k > n {
                return Err(Failure::Usage(format!("--k {k} outside [1, {n}]")));
            }
            rows.extend(measure(n, k, args)?);
        }
    }
    Ok(rows)
}

pub fn run(args: &BenchArgs) -> Result<(), Failure> {
    let rows = grid(args)?;
    let mut out: Box<dyn Write> = match &args.csv {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    writeln!(out, "{CSV_HEADER}")?;
    for row in &rows {
        writeln!(out, "{}", row.csv())?;
    }
    out.flush()?;
    Ok(())
}
