//! Parsing of state and field description strings.
//!
//! States: `cat-x:N`, `cat-z:N`, `haar:seed=S:n=N`, `excited[:n=N]`,
//! `ground[:n=N]`, or `file:PATH` with one amplitude per line (`re im`,
//! whitespace or comma separated; `#` starts a comment).
//!
//! Fields: `coherent:alpha=A`, `squeezed:alpha=A:r=R`, each optionally with
//! `:n_max=M`.

use num_complex::Complex64 as C64;
use std::fmt;
use std::path::Path;

use crate::quantum::{
    cat_state, default_n_max, haar_random_state, squeezed_coherent_state, AtomState, CatKind,
    FieldState,
};

/// A description string that could not be parsed; `position` is the
/// 1-based character column of the offending token.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cannot parse `{}` at column {}: {}",
            self.input, self.position, self.message
        )
    }
}

impl std::error::Error for SpecError {}

/// Parsed state description, resolved lazily so that the atom count can be
/// checked against the rest of the configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Cat { kind: CatKind, n_atoms: usize },
    Haar { seed: u64, n_atoms: usize },
    Excited { n_atoms: Option<usize> },
    Ground { n_atoms: Option<usize> },
    File(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldSpec {
    pub alpha: f64,
    pub r: f64,
    pub n_max: Option<usize>,
}

impl FieldSpec {
    pub fn build(&self) -> crate::Result<FieldState> {
        squeezed_coherent_state(
            self.alpha,
            self.r,
            self.n_max.unwrap_or_else(|| default_n_max(self.alpha, self.r)),
        )
    }
}

/// `head:key=value:key=value` split into tokens with their 1-based columns.
fn tokens(input: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 1;
    for part in input.split(':') {
        out.push((col, part));
        col += part.chars().count() + 1;
    }
    out
}

fn err(input: &str, position: usize, message: impl Into<String>) -> SpecError {
    SpecError {
        input: input.to_string(),
        position,
        message: message.into(),
    }
}

fn key_value<'a>(input: &str, col: usize, token: &'a str) -> Result<(&'a str, &'a str), SpecError> {
    token
        .split_once('=')
        .ok_or_else(|| err(input, col, format!("expected key=value, found `{token}`")))
}

fn number<T: std::str::FromStr>(input: &str, col: usize, value: &str, what: &str) -> Result<T, SpecError> {
    value
        .parse()
        .map_err(|_| err(input, col, format!("`{value}` is not a valid {what}")))
}

fn atom_count(input: &str, col: usize, value: &str) -> Result<usize, SpecError> {
    number(input, col, value, "atom count")
}

pub fn parse_state(input: &str) -> Result<StateSpec, SpecError> {
    if let Some(path) = input.strip_prefix("file:") {
        if path.is_empty() {
            return Err(err(input, 6, "missing file path"));
        }
        return Ok(StateSpec::File(path.to_string()));
    }
    let toks = tokens(input);
    let (_, head) = toks[0];
    match head {
        "cat-x" | "cat-z" => {
            let kind = if head == "cat-x" { CatKind::X } else { CatKind::Z };
            match toks.get(1) {
                Some(&(col, n)) if toks.len() == 2 => Ok(StateSpec::Cat {
                    kind,
                    n_atoms: atom_count(input, col, n.strip_prefix("n=").unwrap_or(n))?,
                }),
                Some(&(col, _)) if toks.len() > 2 => Err(err(input, toks[2].0.max(col), "unexpected extra field")),
                _ => Err(err(input, head.len() + 1, "expected `:N` with the number of atoms")),
            }
        }
        "haar" => {
            let mut seed = None;
            let mut n = None;
            for &(col, tok) in &toks[1..] {
                match key_value(input, col, tok)? {
                    ("seed", v) => seed = Some(number(input, col, v, "seed")?),
                    ("n", v) => n = Some(atom_count(input, col, v)?),
                    (k, _) => return Err(err(input, col, format!("unknown key `{k}`"))),
                }
            }
            let end = input.chars().count() + 1;
            Ok(StateSpec::Haar {
                seed: seed.ok_or_else(|| err(input, end, "missing `seed=`"))?,
                n_atoms: n.ok_or_else(|| err(input, end, "missing `n=`"))?,
            })
        }
        "excited" | "ground" => {
            let mut n = None;
            for &(col, tok) in &toks[1..] {
                match key_value(input, col, tok)? {
                    ("n", v) => n = Some(atom_count(input, col, v)?),
                    (k, _) => return Err(err(input, col, format!("unknown key `{k}`"))),
                }
            }
            Ok(if head == "excited" {
                StateSpec::Excited { n_atoms: n }
            } else {
                StateSpec::Ground { n_atoms: n }
            })
        }
        _ => Err(err(
            input,
            1,
            format!("unknown state `{head}` (expected cat-x, cat-z, haar, excited, ground or file:)"),
        )),
    }
}

/// Resolves a state spec; `default_atoms` applies to `excited`/`ground`
/// without `n=`.
pub fn build_state(spec: &StateSpec, default_atoms: usize) -> Result<AtomState, String> {
    let r = match spec {
        StateSpec::Cat { kind, n_atoms } => cat_state(*kind, *n_atoms),
        StateSpec::Haar { seed, n_atoms } => haar_random_state(*n_atoms, *seed),
        StateSpec::Excited { n_atoms } => AtomState::excited(n_atoms.unwrap_or(default_atoms)),
        StateSpec::Ground { n_atoms } => AtomState::ground(n_atoms.unwrap_or(default_atoms)),
        StateSpec::File(path) => return read_amplitude_file(Path::new(path)),
    };
    r.map_err(|e| e.to_string())
}

/// Reads `re im` pairs, one per line, and normalizes them.
pub fn read_amplitude_file(path: &Path) -> Result<AtomState, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut amps = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| format!("{}:{}: `{s}` is not a number", path.display(), i + 1))
        };
        let (re, im) = match parts.as_slice() {
            [re] => (parse(re)?, 0.0),
            [re, im] => (parse(re)?, parse(im)?),
            _ => return Err(format!("{}:{}: expected `re im`", path.display(), i + 1)),
        };
        amps.push(C64::new(re, im));
    }
    let n = amps.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(format!(
            "{}: amplitude count {n} is not 2^N with N >= 1",
            path.display()
        ));
    }
    AtomState::normalized(amps, n.trailing_zeros() as usize).map_err(|e| e.to_string())
}

pub fn parse_field(input: &str) -> Result<FieldSpec, SpecError> {
    let toks = tokens(input);
    let (_, head) = toks[0];
    let squeezed = match head {
        "coherent" => false,
        "squeezed" => true,
        _ => return Err(err(input, 1, format!("unknown field `{head}` (expected coherent or squeezed)"))),
    };
    let mut alpha = None;
    let mut r = None;
    let mut n_max = None;
    for &(col, tok) in &toks[1..] {
        match key_value(input, col, tok)? {
            ("alpha", v) => alpha = Some(number(input, col, v, "alpha")?),
            ("r", v) if squeezed => r = Some(number(input, col, v, "squeezing parameter")?),
            ("n_max", v) => n_max = Some(number(input, col, v, "n_max")?),
            (k, _) => return Err(err(input, col, format!("unknown key `{k}` for {head} field"))),
        }
    }
    let end = input.chars().count() + 1;
    Ok(FieldSpec {
        alpha: alpha.ok_or_else(|| err(input, end, "missing `alpha=`"))?,
        r: if squeezed {
            r.ok_or_else(|| err(input, end, "missing `r=`"))?
        } else {
            0.0
        },
        n_max,
    })
}
