//! Deterministic single-tape Turing machines with step budgets.
//!
//! Conventions:
//!
//! * The tape is infinite to the right only. A left move on cell 0 leaves the
//!   head on cell 0.
//! * A missing transition moves the machine to its reject state (one step).
//! * Tape symbol 0 is always the blank, followed by the input symbols in
//!   input-alphabet order, followed by any extra work symbols. Builders
//!   normalize the declared tape alphabet into that layout, which is what lets
//!   the binary encoding omit symbol names.
//!
//! Non-termination cannot be observed, so every run takes a step budget and
//! reports [`Outcome::OutOfBudget`] when it is spent.

mod encoding;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::canonical::{Alphabet, AlphabetError, CanonicalString};

pub use encoding::{decode_validate, encode, InvalidEncoding, MachineEncoding};
pub use text::{parse_machine, ParseError};

pub type StateId = usize;
pub type SymbolId = u32;

/// Symbol used for the blank when a machine is rebuilt from its encoding.
pub const DEFAULT_BLANK: char = '_';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("machine needs at least two states (accept and reject)")]
    TooFewStates,
    #[error("state {0:?} is declared more than once")]
    DuplicateState(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("state index {0} out of range")]
    StateOutOfRange(StateId),
    #[error("symbol {0:?} is not in the tape alphabet")]
    UnknownTapeSymbol(char),
    #[error("symbol index {0} out of range")]
    SymbolOutOfRange(SymbolId),
    #[error("blank symbol {0:?} must not be an input symbol")]
    BlankInInput(char),
    #[error("input symbol {0:?} is missing from the tape alphabet")]
    InputNotOnTape(char),
    #[error("accept and reject must be different states")]
    AcceptIsReject,
    #[error("state {0:?} halts and cannot have outgoing transitions")]
    TransitionFromHalting(String),
    #[error("more than one transition for state {state:?} on symbol {symbol:?}")]
    DuplicateTransition { state: String, symbol: char },
    #[error("input symbol {symbol:?} is not in the machine's input alphabet {alphabet}")]
    InputSymbol { symbol: char, alphabet: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn letter(self) -> char {
        match self {
            Direction::Left => 'L',
            Direction::Right => 'R',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: StateId,
    pub write: SymbolId,
    pub direction: Direction,
}

/// A validated machine. Immutable once built.
#[derive(Clone, Debug)]
pub struct TuringMachine {
    states: Vec<String>,
    input_alphabet: Alphabet,
    tape_alphabet: Alphabet,
    start: StateId,
    accept: StateId,
    reject: StateId,
    transitions: BTreeMap<(StateId, SymbolId), Transition>,
}

impl TuringMachine {
    pub fn builder() -> MachineBuilder {
        MachineBuilder::default()
    }

    /// Assembles a machine from index-level parts, naming states `q0, q1, ...`
    /// and generating symbol names. Tape symbol 0 becomes the blank and every
    /// other tape symbol becomes an input symbol.
    pub fn from_parts(
        num_states: usize,
        num_symbols: usize,
        start: StateId,
        accept: StateId,
        reject: StateId,
        transitions: BTreeMap<(StateId, SymbolId), Transition>,
    ) -> Result<Self, MachineError> {
        if num_symbols < 2 {
            return Err(MachineError::Alphabet(AlphabetError::Empty));
        }
        let states = (0..num_states).map(|i| format!("q{i}")).collect();
        let names: Vec<char> = (1..num_symbols).map(generated_symbol).collect();
        let input_alphabet = Alphabet::new(names.iter().copied())?;
        let tape_alphabet = Alphabet::new(std::iter::once(DEFAULT_BLANK).chain(names))?;
        let m = TuringMachine {
            states,
            input_alphabet,
            tape_alphabet,
            start,
            accept,
            reject,
            transitions,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), MachineError> {
        let n = self.states.len();
        if n < 2 {
            return Err(MachineError::TooFewStates);
        }
        for q in [self.start, self.accept, self.reject] {
            if q >= n {
                return Err(MachineError::StateOutOfRange(q));
            }
        }
        if self.accept == self.reject {
            return Err(MachineError::AcceptIsReject);
        }
        let blank = self.blank();
        for (i, &c) in self.input_alphabet.symbols().iter().enumerate() {
            if c == blank {
                return Err(MachineError::BlankInInput(c));
            }
            if self.tape_alphabet.symbol(i as SymbolId + 1) != Some(c) {
                return Err(MachineError::InputNotOnTape(c));
            }
        }
        let gamma = self.tape_alphabet.len() as SymbolId;
        for (&(q, a), t) in &self.transitions {
            if q >= n {
                return Err(MachineError::StateOutOfRange(q));
            }
            if t.next >= n {
                return Err(MachineError::StateOutOfRange(t.next));
            }
            if a >= gamma {
                return Err(MachineError::SymbolOutOfRange(a));
            }
            if t.write >= gamma {
                return Err(MachineError::SymbolOutOfRange(t.write));
            }
            if self.is_halting(q) {
                return Err(MachineError::TransitionFromHalting(self.states[q].clone()));
            }
        }
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input_alphabet
    }

    /// Tape alphabet with the blank at position 0.
    pub fn tape_alphabet(&self) -> &Alphabet {
        &self.tape_alphabet
    }

    pub fn blank(&self) -> char {
        self.tape_alphabet.symbols()[0]
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn accept(&self) -> StateId {
        self.accept
    }

    pub fn reject(&self) -> StateId {
        self.reject
    }

    pub fn is_halting(&self, q: StateId) -> bool {
        q == self.accept || q == self.reject
    }

    pub fn transition(&self, q: StateId, a: SymbolId) -> Option<&Transition> {
        self.transitions.get(&(q, a))
    }

    /// Transitions in lexicographic `(state, symbol)` order.
    pub fn transitions(&self) -> impl Iterator<Item = ((StateId, SymbolId), Transition)> + '_ {
        self.transitions.iter().map(|(&k, &t)| (k, t))
    }

    /// Equality of everything the binary encoding records: state count, tape
    /// alphabet size, start/accept/reject and the transition table. Names of
    /// states and symbols are ignored.
    pub fn structurally_eq(&self, other: &TuringMachine) -> bool {
        self.states.len() == other.states.len()
            && self.tape_alphabet.len() == other.tape_alphabet.len()
            && self.start == other.start
            && self.accept == other.accept
            && self.reject == other.reject
            && self.transitions == other.transitions
    }

    /// Renders the machine in the textual machine-file format.
    pub fn to_text(&self) -> String {
        text::render(self)
    }

    /// Initial configuration for `input`: input written from cell 0, head on
    /// cell 0, start state, zero steps.
    pub fn start_configuration(
        &self,
        input: &CanonicalString,
    ) -> Result<Configuration, MachineError> {
        let tape = if input.alphabet() == &self.input_alphabet {
            input.digits().iter().map(|&d| d + 1).collect()
        } else {
            input
                .symbols()
                .map(|c| {
                    self.input_alphabet
                        .symbol_index(c)
                        .map(|i| i + 1)
                        .map_err(|_| MachineError::InputSymbol {
                            symbol: c,
                            alphabet: self.input_alphabet.to_string(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Ok(Configuration {
            state: self.start,
            tape,
            head: 0,
            steps: 0,
        })
    }

    /// Applies one transition. A configuration already in a halting state is
    /// left untouched.
    pub fn step(&self, config: &mut Configuration) -> Step {
        if let Some(v) = self.verdict_of(config.state) {
            return Step::Halted(v);
        }
        let scanned = config.symbol_at(config.head);
        config.steps += 1;
        match self.transitions.get(&(config.state, scanned)) {
            None => {
                config.state = self.reject;
                Step::Halted(Verdict::Rejected)
            }
            Some(t) => {
                config.write(t.write);
                config.head = match t.direction {
                    Direction::Left => config.head.saturating_sub(1),
                    Direction::Right => config.head + 1,
                };
                config.state = t.next;
                match self.verdict_of(t.next) {
                    Some(v) => Step::Halted(v),
                    None => Step::Moved,
                }
            }
        }
    }

    /// Steps `config` until it halts or has taken `budget` steps in total.
    pub fn resume(&self, config: &mut Configuration, budget: u64) -> Outcome {
        loop {
            if let Some(v) = self.verdict_of(config.state) {
                return v.into();
            }
            if config.steps >= budget {
                return Outcome::OutOfBudget;
            }
            self.step(config);
        }
    }

    /// Runs the machine on `input` for at most `budget` steps.
    pub fn run(&self, input: &CanonicalString, budget: u64) -> Result<RunOutcome, MachineError> {
        let mut config = self.start_configuration(input)?;
        let outcome = self.resume(&mut config, budget);
        Ok(RunOutcome {
            outcome,
            steps: config.steps,
        })
    }

    fn verdict_of(&self, q: StateId) -> Option<Verdict> {
        if q == self.accept {
            Some(Verdict::Accepted)
        } else if q == self.reject {
            Some(Verdict::Rejected)
        } else {
            None
        }
    }
}

fn generated_symbol(i: usize) -> char {
    const NAMED: &str = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    let i = i - 1;
    NAMED
        .chars()
        .nth(i)
        .unwrap_or_else(|| char::from_u32(0x100 + i as u32).expect("symbol index in range"))
}

/// Collects named states, symbols and transitions, then validates them into a
/// [`TuringMachine`].
#[derive(Debug, Clone, Default)]
pub struct MachineBuilder {
    states: Vec<String>,
    input: Vec<char>,
    tape: Vec<char>,
    blank: Option<char>,
    start: Option<String>,
    accept: Option<String>,
    reject: Option<String>,
    transitions: Vec<(String, char, String, char, Direction)>,
}

impl MachineBuilder {
    pub fn states<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        self.states = names.iter().map(|s| s.as_ref().to_owned()).collect();
        self
    }

    pub fn input_alphabet(mut self, symbols: &str) -> Self {
        self.input = symbols.chars().collect();
        self
    }

    /// Declared tape symbols. Input symbols and the blank are added if absent.
    pub fn tape_alphabet(mut self, symbols: &str) -> Self {
        self.tape = symbols.chars().collect();
        self
    }

    pub fn blank(mut self, blank: char) -> Self {
        self.blank = Some(blank);
        self
    }

    pub fn start(mut self, q: &str) -> Self {
        self.start = Some(q.to_owned());
        self
    }

    pub fn accept(mut self, q: &str) -> Self {
        self.accept = Some(q.to_owned());
        self
    }

    pub fn reject(mut self, q: &str) -> Self {
        self.reject = Some(q.to_owned());
        self
    }

    pub fn transition(
        mut self,
        q: &str,
        read: char,
        next: &str,
        write: char,
        d: Direction,
    ) -> Self {
        self.transitions
            .push((q.to_owned(), read, next.to_owned(), write, d));
        self
    }

    pub fn build(self) -> Result<TuringMachine, MachineError> {
        let blank = self.blank.unwrap_or(DEFAULT_BLANK);
        let input_alphabet = Alphabet::new(self.input.iter().copied())?;
        if input_alphabet.contains(blank) {
            return Err(MachineError::BlankInInput(blank));
        }
        let mut tape = vec![blank];
        tape.extend(input_alphabet.symbols());
        for &c in &self.tape {
            if !tape.contains(&c) {
                tape.push(c);
            }
        }
        let tape_alphabet = Alphabet::new(tape)?;

        let mut seen = std::collections::HashSet::new();
        for s in &self.states {
            if !seen.insert(s.as_str()) {
                return Err(MachineError::DuplicateState(s.clone()));
            }
        }
        let state = |name: &str| {
            self.states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| MachineError::UnknownState(name.to_owned()))
        };
        let symbol = |c: char| {
            tape_alphabet
                .symbol_index(c)
                .map_err(|_| MachineError::UnknownTapeSymbol(c))
        };
        let named = |q: &Option<String>, role: &str| {
            q.as_deref()
                .ok_or_else(|| MachineError::UnknownState(format!("<{role} state not set>")))
                .and_then(&state)
        };
        let start = named(&self.start, "start")?;
        let accept = named(&self.accept, "accept")?;
        let reject = named(&self.reject, "reject")?;

        let mut transitions = BTreeMap::new();
        for (q, a, p, b, d) in &self.transitions {
            let key = (state(q)?, symbol(*a)?);
            let t = Transition {
                next: state(p)?,
                write: symbol(*b)?,
                direction: *d,
            };
            if transitions.insert(key, t).is_some() {
                return Err(MachineError::DuplicateTransition {
                    state: q.clone(),
                    symbol: *a,
                });
            }
        }

        let m = TuringMachine {
            states: self.states,
            input_alphabet,
            tape_alphabet,
            start,
            accept,
            reject,
            transitions,
        };
        m.validate()?;
        Ok(m)
    }
}

/// Instantaneous description of a run.
///
/// Cells at or beyond `tape.len()` hold the blank; writing a blank there does
/// not grow the vector, so a machine sweeping right over blanks stays small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub state: StateId,
    tape: Vec<SymbolId>,
    pub head: usize,
    pub steps: u64,
}

impl Configuration {
    /// A configuration with the given tape contents (symbol indices).
    pub fn new(state: StateId, tape: Vec<SymbolId>, head: usize) -> Self {
        Configuration {
            state,
            tape,
            head,
            steps: 0,
        }
    }

    pub fn symbol_at(&self, cell: usize) -> SymbolId {
        self.tape.get(cell).copied().unwrap_or(0)
    }

    fn write(&mut self, symbol: SymbolId) {
        let cell = self.head;
        if cell < self.tape.len() {
            self.tape[cell] = symbol;
        } else if symbol != 0 {
            self.tape.resize(cell, 0);
            self.tape.push(symbol);
        }
    }

    /// Tape contents up to the last non-blank cell.
    pub fn tape(&self) -> &[SymbolId] {
        let end = self.tape.iter().rposition(|&s| s != 0).map_or(0, |i| i + 1);
        &self.tape[..end]
    }

    /// Tape contents rendered with the machine's symbols.
    pub fn tape_string(&self, m: &TuringMachine) -> String {
        self.tape()
            .iter()
            .map(|&s| m.tape_alphabet().symbol(s).unwrap_or('?'))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accepted,
    Rejected,
}

impl Verdict {
    /// 1 for accept, 0 for reject.
    pub fn bit(self) -> u8 {
        match self {
            Verdict::Accepted => 1,
            Verdict::Rejected => 0,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Outcome::from(*self).fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Moved,
    Halted(Verdict),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Accepted,
    Rejected,
    OutOfBudget,
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Accepted => Outcome::Accepted,
            Verdict::Rejected => Outcome::Rejected,
        }
    }
}

impl Outcome {
    pub fn verdict(self) -> Option<Verdict> {
        match self {
            Outcome::Accepted => Some(Verdict::Accepted),
            Outcome::Rejected => Some(Verdict::Rejected),
            Outcome::OutOfBudget => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Accepted => "accepted",
            Outcome::Rejected => "rejected",
            Outcome::OutOfBudget => "out_of_budget",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RunOutcome {
    pub outcome: Outcome,
    pub steps: u64,
}
