//! Operation scripts: one command per line, `#` starts a comment.
//!
//! ```text
//! SUB <pos> <char>      SA <r>        ISA <i>       BWT <r>
//! LCPARR <r>            STLOC <i> <j> STCHILD <lo> <hi> <char|$>
//! STPARENT <lo> <hi>
//! ```
//!
//! `<char>` is a single byte or a `\xHH` escape; `$` is the sentinel in
//! `STCHILD` and the literal byte in `SUB`.

use std::io::{BufWriter, Write};
use std::path::Path;

use dynsa::{DynamicSuffixArray, SaRange, Symbol};

use crate::failure::Failure;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Sub(usize, u8),
    Sa(usize),
    Isa(usize),
    Bwt(usize),
    LcpArr(usize),
    StLoc(usize, usize),
    StChild(SaRange, Symbol),
    StParent(SaRange),
}

fn parse_num(tok: &str) -> Result<usize, String> {
    tok.parse().map_err(|_| format!("expected a non-negative integer, got {tok:?}"))
}

fn parse_byte(tok: &str) -> Result<u8, String> {
    match tok.as_bytes() {
        [b] => Ok(*b),
        [b'\\', b'x', hex @ ..] if hex.len() == 2 => {
            u8::from_str_radix(&tok[2..], 16).map_err(|_| format!("bad escape {tok:?}"))
        }
        _ => Err(format!("expected a single byte or \\xHH, got {tok:?}")),
    }
}

/// Parses one line; `Ok(None)` for blank lines and comments.
pub fn parse_line(line: &str) -> Result<Option<Command>, String> {
    let line = line.split('#').next().unwrap_or("");
    let toks: Vec<&str> = line.split_whitespace().collect();
    let Some((&op, args)) = toks.split_first() else {
        return Ok(None);
    };
    let arity = |want: usize| -> Result<(), String> {
        if args.len() == want {
            Ok(())
        } else {
            Err(format!("{op} takes {want} argument(s), got {}", args.len()))
        }
    };
    let cmd = match op {
        "SUB" => {
            arity(2)?;
            Command::Sub(parse_num(args[0])?, parse_byte(args[1])?)
        }
        "SA" | "ISA" | "BWT" | "LCPARR" => {
            arity(1)?;
            let x = parse_num(args[0])?;
            match op {
                "SA" => Command::Sa(x),
                "ISA" => Command::Isa(x),
                "BWT" => Command::Bwt(x),
                _ => Command::LcpArr(x),
            }
        }
        "STLOC" => {
            arity(2)?;
            Command::StLoc(parse_num(args[0])?, parse_num(args[1])?)
        }
        "STCHILD" => {
            arity(3)?;
            let range = SaRange::new(parse_num(args[0])?, parse_num(args[1])?);
            let sym = if args[2] == "$" {
                Symbol::SENTINEL
            } else {
                Symbol::byte(parse_byte(args[2])?)
            };
            Command::StChild(range, sym)
        }
        "STPARENT" => {
            arity(2)?;
            Command::StParent(SaRange::new(parse_num(args[0])?, parse_num(args[1])?))
        }
        _ => return Err(format!("unknown command {op:?}")),
    };
    Ok(Some(cmd))
}

/// Executes one command; queries return their output line.
pub fn execute(index: &mut DynamicSuffixArray, cmd: &Command) -> dynsa::Result<Option<String>> {
    let out = match *cmd {
        Command::Sub(pos, b) => {
            index.substitute(pos, Symbol::byte(b))?;
            return Ok(None);
        }
        Command::Sa(r) => format!("SA {r} -> {}", index.suffix_array(r)?),
        Command::Isa(i) => format!("ISA {i} -> {}", index.inverse_suffix_array(i)?),
        Command::Bwt(r) => format!("BWT {r} -> {}", index.bwt_at(r)?),
        Command::LcpArr(r) => format!("LCPARR {r} -> {}", index.lcp_array_at(r)?),
        Command::StLoc(i, j) => format!("STLOC {i} {j} -> {}", index.st_locate(i, j)?),
        Command::StChild(range, sym) => match index.st_child(range, sym)? {
            Some(child) => format!("STCHILD {range} {sym} -> {child}"),
            None => format!("STCHILD {range} {sym} -> NONE"),
        },
        Command::StParent(range) => format!("STPARENT {range} -> {}", index.st_parent(range)?),
    };
    Ok(Some(out))
}

pub fn run(text: &[u8], k: usize, seed: u64, script: &Path) -> Result<(), Failure> {
    let raw = crate::read(script)?;
    let source = String::from_utf8_lossy(&raw);
    let mut commands = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        match parse_line(line) {
            Ok(Some(cmd)) => commands.push((idx + 1, cmd)),
            Ok(None) => {}
            Err(e) => return Err(Failure::Data(format!("{}:{}: {e}", script.display(), idx + 1))),
        }
    }
    let mut index = DynamicSuffixArray::with_seed(text, k, seed).map_err(|e| Failure::from_index("text", e))?;
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for (line, cmd) in &commands {
        match execute(&mut index, cmd) {
            Ok(Some(s)) => writeln!(out, "{s}")?,
            Ok(None) => {}
            Err(e) => {
                out.flush()?;
                return Err(Failure::from_index(format!("{}:{line}", script.display()), e));
            }
        }
    }
    out.flush()?;
    Ok(())
}
