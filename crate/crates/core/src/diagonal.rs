//! Diagonal constructions over finite tables.
//!
//! Given functions `f_0, f_1, ..., f_{n-1}`, the flipped diagonal
//! `g(k) = 1 - f_k(k)` (for decision functions) and the shifted diagonal
//! `g(k) = f_k(k) + 1` (for any integer functions) differ from every `f_k`
//! at `k`. The machine version, [`machine_x`], routes input `w` to the
//! decider whose index is `rank(w)` and negates its answer, so it disagrees
//! with decider `k` on the string of rank `k`.
//!
//! Over an infinite enumeration these are the classic unenumerability
//! arguments. Here tables and libraries are finite, so what can be checked is
//! exactly the pointwise disagreement on the diagonal; the unenumerability
//! conclusion itself is not something a program can verify.
//!
//! Coverage: decision-function tables and tables of characteristic functions
//! of languages both use [`diagonal_flip`]; tables of integer functions use
//! [`diagonal_shift`]; machine libraries use [`machine_x`].

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::canonical::{unrank_u64, Alphabet, CanonicalString};
use crate::machine::{MachineError, Outcome, TuringMachine};

/// Inputs up to this length are swept when a decider library is built.
pub const SWEEP_MAX_LEN: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("index {index} is outside a table of {size} functions")]
    IndexOutOfTable { index: u64, size: usize },
    #[error("f_{index}({index}) = {value} is not a decision value")]
    NonBoolean { index: u64, value: u64 },
    #[error("f_{index}({index}) did not return within its budget")]
    NonTotal { index: u64 },
    #[error("rank {rank} of the input is outside a library of {size} deciders")]
    RankOutOfLibrary { rank: String, size: usize },
    #[error("decider {index} ({name}) did not halt on {input:?} within {budget} steps")]
    NotADecider {
        index: usize,
        name: String,
        input: String,
        budget: u64,
    },
    #[error("decider {index} ({name}) has input alphabet {found}, library uses {expected}")]
    AlphabetMismatch {
        index: usize,
        name: String,
        found: String,
        expected: String,
    },
    #[error(transparent)]
    Machine(#[from] MachineError),
}

type Eval = dyn Fn(u64) -> Option<u64> + Send + Sync;

#[derive(Clone)]
struct Entry {
    name: String,
    eval: Arc<Eval>,
}

/// A finite list `f_0, ..., f_{n-1}` of functions ℕ → ℕ.
#[derive(Clone, Default)]
pub struct FunctionTable {
    entries: Vec<Entry>,
}

impl FunctionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a total function.
    pub fn push(
        &mut self,
        name: impl Into<String>,
        f: impl Fn(u64) -> u64 + Send + Sync + 'static,
    ) -> &mut Self {
        self.push_partial(name, move |n| Some(f(n)))
    }

    /// Appends a function that may fail to return (`None`) within its
    /// evaluation budget.
    pub fn push_partial(
        &mut self,
        name: impl Into<String>,
        f: impl Fn(u64) -> Option<u64> + Send + Sync + 'static,
    ) -> &mut Self {
        self.entries.push(Entry {
            name: name.into(),
            eval: Arc::new(f),
        });
        self
    }

    /// The decision table of a decider library: `f_k(n)` is 1 iff decider
    /// `k` accepts the string of rank `n`. Runs are limited to `budget` steps.
    pub fn from_deciders(library: &DeciderLibrary, budget: u64) -> Self {
        let mut table = FunctionTable::new();
        for (name, m) in library.machines.iter() {
            let m = m.clone();
            let alphabet = library.alphabet.clone();
            table.push_partial(name.clone(), move |n| {
                let w = unrank_u64(n, &alphabet);
                m.run(&w, budget)
                    .ok()?
                    .outcome
                    .verdict()
                    .map(|v| u64::from(v.bit()))
            });
        }
        table
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn name(&self, k: usize) -> Option<&str> {
        self.entries.get(k).map(|e| e.name.as_str())
    }

    /// `f_k(n)`.
    pub fn eval(&self, k: u64, n: u64) -> Result<u64, DiagonalError> {
        let entry = self
            .entries
            .get(k as usize)
            .ok_or(DiagonalError::IndexOutOfTable {
                index: k,
                size: self.len(),
            })?;
        (entry.eval)(n).ok_or(DiagonalError::NonTotal { index: k })
    }
}

impl fmt::Debug for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.iter().map(|e| &e.name))
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagonalMode {
    /// `g(k) = 1 - f_k(k)`
    Flip,
    /// `g(k) = f_k(k) + 1`
    Shift,
}

/// A diagonal function over a borrowed table.
#[derive(Debug, Clone, Copy)]
pub struct Diagonal<'a> {
    table: &'a FunctionTable,
    mode: DiagonalMode,
}

/// One row of a diagonal table: `(k, f_k(k), g(k))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagonalRow {
    pub index: u64,
    pub diagonal: u64,
    pub value: u64,
}

pub fn diagonal_flip(table: &FunctionTable) -> Diagonal<'_> {
    Diagonal {
        table,
        mode: DiagonalMode::Flip,
    }
}

pub fn diagonal_shift(table: &FunctionTable) -> Diagonal<'_> {
    Diagonal {
        table,
        mode: DiagonalMode::Shift,
    }
}

impl Diagonal<'_> {
    /// `g(k)`; only defined for `k` below the table size.
    pub fn eval(&self, k: u64) -> Result<u64, DiagonalError> {
        Ok(self.row(k)?.value)
    }

    pub fn row(&self, k: u64) -> Result<DiagonalRow, DiagonalError> {
        let d = self.table.eval(k, k)?;
        let value = match self.mode {
            DiagonalMode::Flip => match d {
                0 => 1,
                1 => 0,
                value => return Err(DiagonalError::NonBoolean { index: k, value }),
            },
            DiagonalMode::Shift => d + 1,
        };
        Ok(DiagonalRow {
            index: k,
            diagonal: d,
            value,
        })
    }

    /// Every row of the table, in order.
    pub fn rows(&self) -> Result<Vec<DiagonalRow>, DiagonalError> {
        (0..self.table.len() as u64).map(|k| self.row(k)).collect()
    }
}

/// An ordered list of deciders over a common input alphabet.
///
/// Construction runs every machine on every input of length up to
/// [`SWEEP_MAX_LEN`] and refuses machines that do not halt within the sweep
/// budget.
#[derive(Clone, Debug)]
pub struct DeciderLibrary {
    alphabet: Alphabet,
    machines: Vec<(String, TuringMachine)>,
}

impl DeciderLibrary {
    pub fn new(
        alphabet: Alphabet,
        machines: Vec<(String, TuringMachine)>,
        sweep_budget: u64,
    ) -> Result<Self, DiagonalError> {
        for (index, (name, m)) in machines.iter().enumerate() {
            if m.input_alphabet() != &alphabet {
                return Err(DiagonalError::AlphabetMismatch {
                    index,
                    name: name.clone(),
                    found: m.input_alphabet().to_string(),
                    expected: alphabet.to_string(),
                });
            }
            for w in alphabet.strings_up_to(SWEEP_MAX_LEN) {
                if m.run(&w, sweep_budget)?.outcome == Outcome::OutOfBudget {
                    return Err(DiagonalError::NotADecider {
                        index,
                        name: name.clone(),
                        input: w.to_string(),
                        budget: sweep_budget,
                    });
                }
            }
        }
        Ok(DeciderLibrary { alphabet, machines })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.machines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.machines.is_empty()
    }

    pub fn machines(&self) -> &[(String, TuringMachine)] {
        &self.machines
    }

    /// The input routed to decider `k`: the string of rank `k`.
    pub fn diagonal_input(&self, k: u64) -> CanonicalString {
        unrank_u64(k, &self.alphabet)
    }
}

/// One evaluation of [`machine_x`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XEvaluation {
    /// Which decider ran (the rank of the input).
    pub index: usize,
    /// That decider's answer on the input.
    pub decider_bit: u8,
    /// `1 - decider_bit`.
    pub value: u8,
}

/// On input `w`: compute `i = rank(w)`, run decider `i` on `w` and return the
/// opposite answer.
///
/// A decider that does not halt within `budget` is a breach of the library
/// contract and is reported as [`DiagonalError::NotADecider`].
pub fn machine_x(
    library: &DeciderLibrary,
    w: &CanonicalString,
    budget: u64,
) -> Result<XEvaluation, DiagonalError> {
    let rank = w.rank();
    let index = rank
        .to_u64()
        .map(|r| r as usize)
        .filter(|&r| r < library.len())
        .ok_or_else(|| DiagonalError::RankOutOfLibrary {
            rank: rank.to_string(),
            size: library.len(),
        })?;
    let (name, m) = &library.machines[index];
    let run = m.run(w, budget)?;
    let verdict = run
        .outcome
        .verdict()
        .ok_or_else(|| DiagonalError::NotADecider {
            index,
            name: name.clone(),
            input: w.to_string(),
            budget,
        })?;
    Ok(XEvaluation {
        index,
        decider_bit: verdict.bit(),
        value: 1 - verdict.bit(),
    })
}
