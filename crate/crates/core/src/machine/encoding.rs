//! Binary encoding `⟨M⟩` of a machine and the validator that decides whether a
//! bit string encodes a well-formed machine.
//!
//! Numbers are written in unary as runs of `0`, fields are separated by a
//! single `1` and groups by `11`:
//!
//! ```text
//! header      0^|Q| 1 0^|Γ| 1 0^(start+1) 1 0^(accept+1) 1 0^(reject+1) 1 1
//! transition  0^(q+1) 1 0^(a+1) 1 0^(q'+1) 1 0^(b+1) 1 0^d       d: 1 = L, 2 = R
//! ```
//!
//! Transitions follow the header in lexicographic `(q, a)` order, joined by
//! `11`. Every run has at least one zero, so `111` never occurs and splitting
//! on `11` recovers the groups.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{Direction, MachineError, StateId, SymbolId, Transition, TuringMachine};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MachineEncoding(String);

impl MachineEncoding {
    /// Wraps any text; nothing is checked until [`decode_validate`].
    pub fn new(bits: impl Into<String>) -> Self {
        MachineEncoding(bits.into())
    }

    pub fn bits(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for MachineEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Why a bit string is not in the language of machine encodings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidEncoding {
    #[error("empty encoding")]
    Empty,
    #[error("character {found:?} at position {position} is not a bit")]
    NotABit { position: usize, found: char },
    #[error("header must have 5 fields followed by `11`")]
    Header,
    #[error("transition {index} must have 5 fields")]
    TransitionShape { index: usize },
    #[error("transition {index} has direction code {code}, expected 1 (L) or 2 (R)")]
    DirectionCode { index: usize, code: usize },
    #[error("transition {index} is not in strictly increasing (state, symbol) order")]
    Order { index: usize },
    #[error(transparent)]
    Machine(#[from] MachineError),
}

fn unary(out: &mut String, n: usize) {
    out.extend(std::iter::repeat_n('0', n));
}

/// Canonical encoding of `m`.
pub fn encode(m: &TuringMachine) -> MachineEncoding {
    let mut out = String::new();
    let header = [
        m.num_states(),
        m.tape_alphabet().len(),
        m.start() + 1,
        m.accept() + 1,
        m.reject() + 1,
    ];
    for n in header {
        unary(&mut out, n);
        out.push('1');
    }
    out.push('1');
    for (i, ((q, a), t)) in m.transitions().enumerate() {
        if i > 0 {
            out.push_str("11");
        }
        let d = match t.direction {
            Direction::Left => 1,
            Direction::Right => 2,
        };
        for (j, n) in [q + 1, a as usize + 1, t.next + 1, t.write as usize + 1, d]
            .into_iter()
            .enumerate()
        {
            if j > 0 {
                out.push('1');
            }
            unary(&mut out, n);
        }
    }
    MachineEncoding(out)
}

/// Lengths of the zero runs in `group`, which must be runs separated by single
/// `1`s with no empty run.
fn runs(group: &str) -> Option<Vec<usize>> {
    group
        .split('1')
        .map(|r| if r.is_empty() { None } else { Some(r.len()) })
        .collect()
}

/// Decodes `e`, returning the machine iff `e` is the encoding of a well-formed
/// machine. Accepted strings are exactly the images of [`encode`], so
/// `encode(decode_validate(e)?) == e`.
pub fn decode_validate(e: &MachineEncoding) -> Result<TuringMachine, InvalidEncoding> {
    let bits = e.bits();
    if bits.is_empty() {
        return Err(InvalidEncoding::Empty);
    }
    if let Some((position, found)) = bits
        .chars()
        .enumerate()
        .find(|&(_, c)| c != '0' && c != '1')
    {
        return Err(InvalidEncoding::NotABit { position, found });
    }

    let mut groups = bits.split("11");
    let header = groups
        .next()
        .and_then(runs)
        .filter(|h| h.len() == 5)
        .ok_or(InvalidEncoding::Header)?;
    let rest: Vec<&str> = groups.collect();
    // A machine without transitions ends with the header's trailing `11`.
    let bodies: &[&str] = match rest.as_slice() {
        [] => return Err(InvalidEncoding::Header),
        [""] => &[],
        all => all,
    };

    let mut transitions = BTreeMap::new();
    let mut last: Option<(StateId, SymbolId)> = None;
    for (index, body) in bodies.iter().enumerate() {
        let f = runs(body)
            .filter(|f| f.len() == 5)
            .ok_or(InvalidEncoding::TransitionShape { index })?;
        let direction = match f[4] {
            1 => Direction::Left,
            2 => Direction::Right,
            code => return Err(InvalidEncoding::DirectionCode { index, code }),
        };
        let key = (f[0] - 1, (f[1] - 1) as SymbolId);
        if last.is_some_and(|prev| prev >= key) {
            return Err(InvalidEncoding::Order { index });
        }
        last = Some(key);
        transitions.insert(
            key,
            Transition {
                next: f[2] - 1,
                write: (f[3] - 1) as SymbolId,
                direction,
            },
        );
    }

    Ok(TuringMachine::from_parts(
        header[0],
        header[1],
        header[2] - 1,
        header[3] - 1,
        header[4] - 1,
        transitions,
    )?)
}
