//! Line-oriented machine files.
//!
//! ```text
//! # accepts strings of even length
//! states: even odd acc rej
//! input_alphabet: a b
//! tape_alphabet: a b _
//! blank: _
//! start: even
//! accept: acc
//! reject: rej
//! delta: even a -> odd a R
//! ```
//!
//! `#` starts a comment. Tokens are separated by whitespace or commas, and
//! symbols are single characters.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Direction, MachineError, TuringMachine};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is not tied to a line (e.g. a missing key).
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Default)]
struct Fields {
    states: Option<(usize, Vec<String>)>,
    input: Option<(usize, String)>,
    tape: Option<(usize, String)>,
    blank: Option<(usize, char)>,
    start: Option<(usize, String)>,
    accept: Option<(usize, String)>,
    reject: Option<(usize, String)>,
    delta: Vec<(usize, String, char, String, char, Direction)>,
}

fn tokens(s: &str) -> Vec<&str> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect()
}

fn symbol(tok: &str, line: usize) -> Result<char, ParseError> {
    let mut chars = tok.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(ParseError::new(
            line,
            format!("symbol {tok:?} must be a single character"),
        )),
    }
}

fn symbols(toks: &[&str], line: usize) -> Result<String, ParseError> {
    toks.iter().map(|t| symbol(t, line)).collect()
}

fn single<'a>(toks: &[&'a str], key: &str, line: usize) -> Result<&'a str, ParseError> {
    match toks {
        [one] => Ok(one),
        _ => Err(ParseError::new(
            line,
            format!("`{key}` takes exactly one value, found {}", toks.len()),
        )),
    }
}

fn set_once<T>(
    slot: &mut Option<(usize, T)>,
    value: T,
    key: &str,
    line: usize,
) -> Result<(), ParseError> {
    if let Some((first, _)) = slot {
        return Err(ParseError::new(
            line,
            format!("`{key}` already given on line {first}"),
        ));
    }
    *slot = Some((line, value));
    Ok(())
}

/// Parses a machine file. Errors carry the offending line number.
pub fn parse_machine(source: &str) -> Result<TuringMachine, ParseError> {
    let mut f = Fields::default();
    for (i, raw) in source.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content.split_once(':').ok_or_else(|| {
            ParseError::new(line, format!("expected `key: value`, got {content:?}"))
        })?;
        let key = key.trim();
        let rest = rest.replace("->", " -> ");
        let toks = tokens(&rest);
        match key {
            "states" => {
                if toks.is_empty() {
                    return Err(ParseError::new(line, "`states` needs at least one name"));
                }
                let names = toks.iter().map(|s| s.to_string()).collect();
                set_once(&mut f.states, names, key, line)?;
            }
            "input_alphabet" => set_once(&mut f.input, symbols(&toks, line)?, key, line)?,
            "tape_alphabet" => set_once(&mut f.tape, symbols(&toks, line)?, key, line)?,
            "blank" => {
                let c = symbol(single(&toks, key, line)?, line)?;
                set_once(&mut f.blank, c, key, line)?;
            }
            "start" => set_once(
                &mut f.start,
                single(&toks, key, line)?.to_owned(),
                key,
                line,
            )?,
            "accept" => set_once(
                &mut f.accept,
                single(&toks, key, line)?.to_owned(),
                key,
                line,
            )?,
            "reject" => set_once(
                &mut f.reject,
                single(&toks, key, line)?.to_owned(),
                key,
                line,
            )?,
            "delta" => match toks.as_slice() {
                [q, a, "->", p, b, d] => {
                    let dir = match *d {
                        "L" => Direction::Left,
                        "R" => Direction::Right,
                        other => {
                            return Err(ParseError::new(
                                line,
                                format!("direction must be L or R, got {other:?}"),
                            ))
                        }
                    };
                    f.delta.push((
                        line,
                        q.to_string(),
                        symbol(a, line)?,
                        p.to_string(),
                        symbol(b, line)?,
                        dir,
                    ));
                }
                _ => return Err(ParseError::new(line, "expected `delta: q a -> q' b L|R`")),
            },
            other => return Err(ParseError::new(line, format!("unknown key `{other}`"))),
        }
    }
    build(f)
}

fn build(f: Fields) -> Result<TuringMachine, ParseError> {
    fn required<T>(slot: Option<(usize, T)>, key: &str) -> Result<(usize, T), ParseError> {
        slot.ok_or_else(|| ParseError::new(0, format!("missing `{key}`")))
    }
    let (states_line, states) = required(f.states, "states")?;
    let (input_line, input) = required(f.input, "input_alphabet")?;
    let (_, tape) = required(f.tape, "tape_alphabet")?;
    let (blank_line, blank) = required(f.blank, "blank")?;
    let (start_line, start) = required(f.start, "start")?;
    let (accept_line, accept) = required(f.accept, "accept")?;
    let (reject_line, reject) = required(f.reject, "reject")?;

    // Every declared symbol must be on the tape; the builder would add them
    // silently otherwise.
    for c in input.chars().chain(std::iter::once(blank)) {
        if !tape.contains(c) {
            return Err(ParseError::new(
                if c == blank { blank_line } else { input_line },
                format!("symbol {c:?} is missing from tape_alphabet"),
            ));
        }
    }
    for (line, q, a, p, b, _) in &f.delta {
        for s in [q, p] {
            if !states.contains(s) {
                return Err(ParseError::new(*line, format!("unknown state {s:?}")));
            }
        }
        for c in [a, b] {
            if !tape.contains(*c) {
                return Err(ParseError::new(
                    *line,
                    format!("symbol {c:?} is not in tape_alphabet"),
                ));
            }
        }
    }

    let mut builder = TuringMachine::builder()
        .states(&states)
        .input_alphabet(&input)
        .tape_alphabet(&tape)
        .blank(blank)
        .start(&start)
        .accept(&accept)
        .reject(&reject);
    for (_, q, a, p, b, d) in &f.delta {
        builder = builder.transition(q, *a, p, *b, *d);
    }
    builder.build().map_err(|e| {
        let line = match &e {
            MachineError::UnknownState(s) if *s == start => start_line,
            MachineError::UnknownState(s) if *s == accept => accept_line,
            MachineError::UnknownState(s) if *s == reject => reject_line,
            MachineError::AcceptIsReject => reject_line,
            MachineError::BlankInInput(_) => blank_line,
            MachineError::Alphabet(_) => input_line,
            MachineError::DuplicateState(_) | MachineError::TooFewStates => states_line,
            MachineError::TransitionFromHalting(s) => {
                f.delta.iter().find(|d| d.1 == *s).map_or(0, |d| d.0)
            }
            MachineError::DuplicateTransition { state, symbol } => f
                .delta
                .iter()
                .filter(|d| d.1 == *state && d.2 == *symbol)
                .nth(1)
                .map_or(0, |d| d.0),
            _ => 0,
        };
        ParseError::new(line, e.to_string())
    })
}

pub(super) fn render(m: &TuringMachine) -> String {
    let sym = |s: u32| m.tape_alphabet().symbol(s).expect("validated symbol");
    let join = |cs: &[char]| {
        cs.iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", m.state_names().join(" "));
    let _ = writeln!(
        out,
        "input_alphabet: {}",
        join(m.input_alphabet().symbols())
    );
    let _ = writeln!(out, "tape_alphabet: {}", join(m.tape_alphabet().symbols()));
    let _ = writeln!(out, "blank: {}", m.blank());
    let _ = writeln!(out, "start: {}", m.state_name(m.start()));
    let _ = writeln!(out, "accept: {}", m.state_name(m.accept()));
    let _ = writeln!(out, "reject: {}", m.state_name(m.reject()));
    for ((q, a), t) in m.transitions() {
        let _ = writeln!(
            out,
            "delta: {} {} -> {} {} {}",
            m.state_name(q),
            sym(a),
            m.state_name(t.next),
            sym(t.write),
            t.direction.letter()
        );
    }
    out
}
