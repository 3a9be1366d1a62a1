//! Enumerators: machines that print strings, modelled as lazy streams.
//!
//! An [`EnumerationStream`] is a cursor over a shareable source. The
//! conversions between recognizers, enumerators and counting bijections all
//! start from a fresh cursor, so they never disturb the caller's position.
//!
//! * [`recognizer_to_enumerator`] dovetails a recognizer over Σ*: in round
//!   `i` the first `i` strings in canonical order are run with budget `i`.
//!   Every accepted string is printed once, in canonical order within its
//!   round. Inputs the machine loops on never block later ones.
//! * [`enumerator_to_recognizer`] watches a stream for a string.
//! * [`nth_printed`] and [`print_index`] are the two directions of the
//!   bijection defined by print order: the `n`-th print, and the print count
//!   at which a string appears.
//! * [`from_bijection`] prints `f(0), f(1), ...`.
//! * [`decide_by_increasing`] decides membership from a stream whose prints
//!   increase in canonical order, and [`is_increasing_prefix`] checks a
//!   finite prefix for that property.
//!
//! Anything that may not terminate takes a budget and reports
//! [`Pull::Stalled`] or [`Recognition::NotSeen`] rather than hanging.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::bijection::{BijectionError, CountingBijection};
use crate::canonical::{AlphabetError, CanonicalString};
use crate::machine::{Configuration, Outcome, TuringMachine, Verdict};

/// One request for the next print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pull {
    Printed(CanonicalString),
    /// The source is finite and has printed everything.
    Exhausted,
    /// The source gave up (e.g. a round limit) without ruling out more prints.
    Stalled,
}

/// A producer of prints. Cursors are single-owner and advanced in order.
pub trait Cursor: Send {
    fn pull(&mut self) -> Pull;
}

/// Something that can start any number of independent cursors.
pub trait StreamSource: Send + Sync {
    fn cursor(&self) -> Box<dyn Cursor>;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("stream exhausted after {printed} prints")]
    Exhausted { printed: u64 },
    #[error("stream stalled after {printed} prints")]
    Stalled { printed: u64 },
    #[error("stream is not increasing: {next:?} printed after {previous:?}")]
    NotIncreasing {
        previous: CanonicalString,
        next: CanonicalString,
    },
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
}

/// A positioned cursor over a stream source.
pub struct EnumerationStream {
    source: Arc<dyn StreamSource>,
    cursor: Box<dyn Cursor>,
    printed: u64,
    end: Option<Pull>,
}

impl EnumerationStream {
    pub fn new(source: Arc<dyn StreamSource>) -> Self {
        let cursor = source.cursor();
        EnumerationStream {
            source,
            cursor,
            printed: 0,
            end: None,
        }
    }

    /// A new cursor over the same source, positioned at the start.
    pub fn fresh(&self) -> EnumerationStream {
        EnumerationStream::new(Arc::clone(&self.source))
    }

    /// The next print. After `Exhausted` or `Stalled` the same value repeats.
    pub fn pull(&mut self) -> Pull {
        if let Some(end) = &self.end {
            return end.clone();
        }
        let p = self.cursor.pull();
        match &p {
            Pull::Printed(_) => self.printed += 1,
            end => self.end = Some(end.clone()),
        }
        p
    }

    /// Number of strings printed through this cursor so far.
    pub fn printed(&self) -> u64 {
        self.printed
    }

    /// Stream of a finite list, printed in the given order.
    pub fn from_list(items: Vec<CanonicalString>) -> Self {
        Self::new(Arc::new(ListSource(items.into())))
    }

    /// Stream produced by a restartable iterator factory.
    pub fn from_fn<F, I>(make: F) -> Self
    where
        F: Fn() -> I + Send + Sync + 'static,
        I: Iterator<Item = CanonicalString> + Send + 'static,
    {
        Self::new(Arc::new(FnSource(move || {
            Box::new(make()) as Box<dyn Iterator<Item = CanonicalString> + Send>
        })))
    }
}

impl Iterator for EnumerationStream {
    type Item = CanonicalString;

    fn next(&mut self) -> Option<CanonicalString> {
        match self.pull() {
            Pull::Printed(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Debug for EnumerationStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumerationStream")
            .field("printed", &self.printed)
            .field("end", &self.end)
            .finish_non_exhaustive()
    }
}

struct ListSource(Arc<[CanonicalString]>);

struct ListCursor {
    items: Arc<[CanonicalString]>,
    next: usize,
}

impl StreamSource for ListSource {
    fn cursor(&self) -> Box<dyn Cursor> {
        Box::new(ListCursor {
            items: Arc::clone(&self.0),
            next: 0,
        })
    }
}

impl Cursor for ListCursor {
    fn pull(&mut self) -> Pull {
        match self.items.get(self.next) {
            Some(s) => {
                self.next += 1;
                Pull::Printed(s.clone())
            }
            None => Pull::Exhausted,
        }
    }
}

type BoxedIter = Box<dyn Iterator<Item = CanonicalString> + Send>;

struct FnSource<F>(F);

struct IterCursor(BoxedIter);

impl<F> StreamSource for FnSource<F>
where
    F: Fn() -> BoxedIter + Send + Sync,
{
    fn cursor(&self) -> Box<dyn Cursor> {
        Box::new(IterCursor((self.0)()))
    }
}

impl Cursor for IterCursor {
    fn pull(&mut self) -> Pull {
        self.0.next().map_or(Pull::Exhausted, Pull::Printed)
    }
}

/// Dovetailing source over a recognizer.
#[derive(Clone)]
pub struct Dovetail {
    machine: Arc<TuringMachine>,
    max_rounds: Option<u64>,
}

impl Dovetail {
    pub fn new(machine: TuringMachine) -> Self {
        Dovetail {
            machine: Arc::new(machine),
            max_rounds: None,
        }
    }

    /// Stop (with [`Pull::Stalled`]) once `rounds` rounds have run.
    pub fn with_max_rounds(mut self, rounds: u64) -> Self {
        self.max_rounds = Some(rounds);
        self
    }

    pub fn stream(self) -> EnumerationStream {
        EnumerationStream::new(Arc::new(self))
    }
}

impl StreamSource for Dovetail {
    fn cursor(&self) -> Box<dyn Cursor> {
        Box::new(DovetailCursor {
            machine: Arc::clone(&self.machine),
            max_rounds: self.max_rounds,
            round: 0,
            next_input: self.machine.input_alphabet().empty_string(),
            pending: Vec::new(),
            ready: VecDeque::new(),
        })
    }
}

/// Round `i` admits the `i`-th string and gives every unfinished run a total
/// budget of `i` steps. A run is kept suspended between rounds instead of
/// being replayed from scratch; since runs are deterministic the prints are
/// the same as rerunning every string with budget `i` each round. Strings
/// whose run halted leave the pool, so nothing is printed twice.
struct DovetailCursor {
    machine: Arc<TuringMachine>,
    max_rounds: Option<u64>,
    round: u64,
    next_input: CanonicalString,
    pending: Vec<(CanonicalString, Configuration)>,
    ready: VecDeque<CanonicalString>,
}

impl DovetailCursor {
    fn run_round(&mut self) {
        self.round += 1;
        let budget = self.round;
        let succ = self.next_input.successor();
        let w = std::mem::replace(&mut self.next_input, succ);
        let start = self
            .machine
            .start_configuration(&w)
            .expect("dovetail inputs come from the machine's own alphabet");
        self.pending.push((w, start));

        let machine = &self.machine;
        let ready = &mut self.ready;
        self.pending
            .retain_mut(|(w, config)| match machine.resume(config, budget) {
                Outcome::Accepted => {
                    ready.push_back(w.clone());
                    false
                }
                Outcome::Rejected => false,
                Outcome::OutOfBudget => true,
            });
    }
}

impl Cursor for DovetailCursor {
    fn pull(&mut self) -> Pull {
        loop {
            if let Some(w) = self.ready.pop_front() {
                return Pull::Printed(w);
            }
            if self.max_rounds.is_some_and(|max| self.round >= max) {
                return Pull::Stalled;
            }
            self.run_round();
        }
    }
}

/// Duplicate-free enumerator of `L(machine)` by dovetailing.
///
/// The stream never ends on its own; for a finite language, pulling past the
/// last member does not return. Use [`Dovetail::with_max_rounds`] to bound it.
pub fn recognizer_to_enumerator(machine: &TuringMachine) -> EnumerationStream {
    Dovetail::new(machine.clone()).stream()
}

/// Result of watching a stream for a string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recognition {
    /// Printed as the `index`-th string (0-based).
    Accepted { index: u64 },
    /// Not printed within the budget. `definitive` is set when the stream
    /// ended, so the string is certainly not in the enumerated set.
    NotSeen { definitive: bool },
}

/// Recognizes `E(M)` from the stream: accept once `w` is printed.
pub fn enumerator_to_recognizer(
    stream: &EnumerationStream,
    w: &CanonicalString,
    print_budget: u64,
) -> Recognition {
    let mut s = stream.fresh();
    for index in 0..print_budget {
        match s.pull() {
            Pull::Printed(x) if &x == w => return Recognition::Accepted { index },
            Pull::Printed(_) => {}
            Pull::Exhausted => return Recognition::NotSeen { definitive: true },
            Pull::Stalled => break,
        }
    }
    Recognition::NotSeen { definitive: false }
}

/// The `n`-th printed string (0-based): count prints until the count is `n`.
pub fn nth_printed(stream: &EnumerationStream, n: u64) -> Result<CanonicalString, StreamError> {
    let mut s = stream.fresh();
    let mut count = 0;
    loop {
        match s.pull() {
            Pull::Printed(x) => {
                if count == n {
                    return Ok(x);
                }
                count += 1;
            }
            Pull::Exhausted => return Err(StreamError::Exhausted { printed: count }),
            Pull::Stalled => return Err(StreamError::Stalled { printed: count }),
        }
    }
}

/// The print count at which `w` appears, scanning at most `print_budget`
/// prints. `None` if it did not appear.
pub fn print_index(
    stream: &EnumerationStream,
    w: &CanonicalString,
    print_budget: u64,
) -> Option<u64> {
    match enumerator_to_recognizer(stream, w, print_budget) {
        Recognition::Accepted { index } => Some(index),
        Recognition::NotSeen { .. } => None,
    }
}

struct BijectionSource<B>(Arc<B>);

struct BijectionCursor<B> {
    f: Arc<B>,
    next: u64,
}

impl<B> StreamSource for BijectionSource<B>
where
    B: CountingBijection<Item = CanonicalString> + 'static,
{
    fn cursor(&self) -> Box<dyn Cursor> {
        Box::new(BijectionCursor {
            f: Arc::clone(&self.0),
            next: 0,
        })
    }
}

impl<B> Cursor for BijectionCursor<B>
where
    B: CountingBijection<Item = CanonicalString>,
{
    fn pull(&mut self) -> Pull {
        if self.f.size().is_some_and(|n| self.next >= n) {
            return Pull::Exhausted;
        }
        match self.f.forward(self.next) {
            Ok(s) => {
                self.next += 1;
                Pull::Printed(s)
            }
            Err(BijectionError::OutOfRange { .. } | BijectionError::Exhausted { .. }) => {
                Pull::Exhausted
            }
            Err(BijectionError::Stalled { .. }) => Pull::Stalled,
        }
    }
}

/// Enumerator printing `f(0), f(1), f(2), ...` in that order.
pub fn from_bijection<B>(f: B) -> EnumerationStream
where
    B: CountingBijection<Item = CanonicalString> + 'static,
{
    EnumerationStream::new(Arc::new(BijectionSource(Arc::new(f))))
}

/// The counting bijection defined by a stream's print order:
/// `forward(n)` is the `n`-th print and `inverse(w)` the print count of `w`.
///
/// Prints are remembered, so each is produced once no matter how often it is
/// asked for.
pub struct StreamBijection {
    state: Mutex<Memo>,
}

struct Memo {
    stream: EnumerationStream,
    prints: Vec<CanonicalString>,
    index: HashMap<CanonicalString, u64>,
}

impl Memo {
    /// Pulls until `len` prints are known or the stream ends.
    fn extend_to(&mut self, len: u64) -> Result<(), BijectionError> {
        while (self.prints.len() as u64) < len {
            match self.stream.pull() {
                Pull::Printed(s) => {
                    let i = self.prints.len() as u64;
                    self.index.entry(s.clone()).or_insert(i);
                    self.prints.push(s);
                }
                Pull::Exhausted => {
                    return Err(BijectionError::Exhausted {
                        produced: self.prints.len() as u64,
                    })
                }
                Pull::Stalled => {
                    return Err(BijectionError::Stalled {
                        produced: self.prints.len() as u64,
                    })
                }
            }
        }
        Ok(())
    }
}

/// Turns a stream into its print-order bijection.
pub fn bijection_from_stream(stream: &EnumerationStream) -> StreamBijection {
    StreamBijection {
        state: Mutex::new(Memo {
            stream: stream.fresh(),
            prints: Vec::new(),
            index: HashMap::new(),
        }),
    }
}

impl CountingBijection for StreamBijection {
    type Item = CanonicalString;

    fn forward(&self, index: u64) -> Result<CanonicalString, BijectionError> {
        let mut memo = self.state.lock().expect("memo lock");
        memo.extend_to(index + 1)?;
        Ok(memo.prints[index as usize].clone())
    }

    fn inverse(&self, x: &CanonicalString, budget: u64) -> Option<u64> {
        let mut memo = self.state.lock().expect("memo lock");
        loop {
            if let Some(&i) = memo.index.get(x) {
                return (i < budget).then_some(i);
            }
            let have = memo.prints.len() as u64;
            if have >= budget || memo.extend_to(have + 1).is_err() {
                return None;
            }
        }
    }
}

/// Decides `w` from a stream that prints in strictly increasing canonical
/// order: stop at the first print that is not smaller than `w`.
///
/// Each print is checked against its predecessor, including one print past
/// the deciding one; a decrease is a contract violation and is reported as
/// [`StreamError::NotIncreasing`].
pub fn decide_by_increasing(
    stream: &EnumerationStream,
    w: &CanonicalString,
) -> Result<Verdict, StreamError> {
    let mut s = stream.fresh();
    let mut previous: Option<CanonicalString> = None;
    loop {
        let y = match s.pull() {
            Pull::Printed(y) => y,
            Pull::Exhausted => return Ok(Verdict::Rejected),
            Pull::Stalled => {
                return Err(StreamError::Stalled {
                    printed: s.printed(),
                })
            }
        };
        if let Some(prev) = &previous {
            if prev.compare(&y)? != Ordering::Less {
                return Err(StreamError::NotIncreasing {
                    previous: prev.clone(),
                    next: y,
                });
            }
        }
        let verdict = match y.compare(w)? {
            Ordering::Less => {
                previous = Some(y);
                continue;
            }
            Ordering::Equal => Verdict::Accepted,
            Ordering::Greater => Verdict::Rejected,
        };
        // one print of lookahead, so a decrease right at the decision point
        // is still caught
        if let Pull::Printed(z) = s.pull() {
            if y.compare(&z)? != Ordering::Less {
                return Err(StreamError::NotIncreasing {
                    previous: y,
                    next: z,
                });
            }
        }
        return Ok(verdict);
    }
}

/// Whether the first `n` prints (or all of them, if fewer) strictly increase
/// in canonical order.
pub fn is_increasing_prefix(stream: &EnumerationStream, n: u64) -> bool {
    first_decrease(stream, n).is_none()
}

/// The first adjacent pair `(earlier, later)` among the first `n` prints with
/// `later` not above `earlier`.
pub fn first_decrease(
    stream: &EnumerationStream,
    n: u64,
) -> Option<(CanonicalString, CanonicalString)> {
    let mut s = stream.fresh();
    let mut previous: Option<CanonicalString> = None;
    for _ in 0..n {
        let Pull::Printed(y) = s.pull() else {
            return None;
        };
        if let Some(prev) = previous {
            if prev.compare(&y) != Ok(Ordering::Less) {
                return Some((prev, y));
            }
        }
        previous = Some(y);
    }
    None
}
