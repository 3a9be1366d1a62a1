//! Ranking and unranking of finite strings in canonical order.
//!
//! Over an alphabet `a_0 < a_1 < ... < a_{k-1}` the canonical order lists
//! shorter strings first and breaks ties by the base-`k` value of the string,
//! reading `a_i` as the digit `i`. The position of a string in that list is
//! its *rank*:
//!
//! ```text
//! rank(s) = (k^|s| - 1) / (k - 1) + value(s)
//! ```
//!
//! where the first term counts the strings strictly shorter than `s`. For a
//! one-symbol alphabet that term degenerates to `|s|`, so `rank(a^i) = i`.
//!
//! Ranks are arbitrary precision; a string of a few hundred symbols already
//! has a rank far outside `u64`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet must contain at least one symbol")]
    Empty,
    #[error("symbol {0:?} appears more than once in the alphabet")]
    Duplicate(char),
    #[error("symbol {symbol:?} is not in alphabet {alphabet}")]
    UnknownSymbol { symbol: char, alphabet: String },
    #[error("strings over different alphabets ({left} vs {right}) cannot be compared")]
    Mismatch { left: String, right: String },
}

/// An ordered, non-empty set of distinct symbols.
///
/// Cloning is cheap; the symbol table is shared.
#[derive(Clone)]
pub struct Alphabet {
    inner: Arc<AlphabetInner>,
}

struct AlphabetInner {
    symbols: Vec<char>,
    index: HashMap<char, u32>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self, AlphabetError> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(AlphabetError::Empty);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if index.insert(c, i as u32).is_some() {
                return Err(AlphabetError::Duplicate(c));
            }
        }
        Ok(Alphabet {
            inner: Arc::new(AlphabetInner { symbols, index }),
        })
    }

    /// Builds an alphabet from the characters of `symbols`, in order.
    pub fn from_chars(symbols: &str) -> Result<Self, AlphabetError> {
        Self::new(symbols.chars())
    }

    /// Number of symbols, `k`.
    pub fn len(&self) -> usize {
        self.inner.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.inner.symbols
    }

    pub fn symbol(&self, digit: u32) -> Option<char> {
        self.inner.symbols.get(digit as usize).copied()
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.inner.index.contains_key(&symbol)
    }

    /// The 0-based position of `symbol`.
    pub fn symbol_index(&self, symbol: char) -> Result<u32, AlphabetError> {
        self.inner
            .index
            .get(&symbol)
            .copied()
            .ok_or_else(|| AlphabetError::UnknownSymbol {
                symbol,
                alphabet: self.to_string(),
            })
    }

    /// Parses `text` character by character into a string over this alphabet.
    pub fn parse(&self, text: &str) -> Result<CanonicalString, AlphabetError> {
        let digits = text
            .chars()
            .map(|c| self.symbol_index(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CanonicalString {
            alphabet: self.clone(),
            digits,
        })
    }

    pub fn empty_string(&self) -> CanonicalString {
        CanonicalString {
            alphabet: self.clone(),
            digits: Vec::new(),
        }
    }

    /// Strings built from raw digit positions. Panics if a digit is out of range.
    pub fn from_digits(&self, digits: Vec<u32>) -> CanonicalString {
        assert!(
            digits.iter().all(|&d| (d as usize) < self.len()),
            "digit out of range for alphabet {self}"
        );
        CanonicalString {
            alphabet: self.clone(),
            digits,
        }
    }

    /// Every string over the alphabet, in canonical order. Never ends.
    pub fn strings(&self) -> CanonicalStrings {
        CanonicalStrings {
            next: self.empty_string(),
        }
    }

    /// All strings of length at most `max_len`, in canonical order.
    pub fn strings_up_to(&self, max_len: usize) -> impl Iterator<Item = CanonicalString> {
        self.strings().take_while(move |s| s.len() <= max_len)
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.symbols == other.inner.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.symbols().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

/// A finite string over an [`Alphabet`], stored as symbol positions.
#[derive(Clone)]
pub struct CanonicalString {
    alphabet: Alphabet,
    digits: Vec<u32>,
}

impl CanonicalString {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Symbol positions, most significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = char> + '_ {
        self.digits
            .iter()
            .map(|&d| self.alphabet.inner.symbols[d as usize])
    }

    /// Base-`k` value of the string, `v(ε) = 0`, `v(xa) = v(x)·k + index(a)`.
    pub fn value(&self) -> Rank {
        let k = BigUint::from(self.alphabet.len());
        let mut v = BigUint::zero();
        for &d in &self.digits {
            v = v * &k + BigUint::from(d);
        }
        Rank(v)
    }

    /// Position of this string in canonical order.
    pub fn rank(&self) -> Rank {
        let k = self.alphabet.len();
        if k == 1 {
            return Rank(BigUint::from(self.len()));
        }
        let kb = BigUint::from(k);
        let shorter = (kb.pow(self.len() as u32) - 1u32) / (kb - 1u32);
        Rank(shorter + self.value().0)
    }

    /// Canonical comparison: length first, then digit by digit.
    pub fn compare(&self, other: &CanonicalString) -> Result<Ordering, AlphabetError> {
        if self.alphabet != other.alphabet {
            return Err(AlphabetError::Mismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(self.canonical_cmp(other))
    }

    fn canonical_cmp(&self, other: &CanonicalString) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.digits.cmp(&other.digits))
    }

    /// The string whose rank is one more than this one's.
    pub fn successor(&self) -> CanonicalString {
        let top = self.alphabet.len() as u32 - 1;
        let mut digits = self.digits.clone();
        for d in digits.iter_mut().rev() {
            if *d < top {
                *d += 1;
                return CanonicalString {
                    alphabet: self.alphabet.clone(),
                    digits,
                };
            }
            *d = 0;
        }
        // every position carried: first string of the next length
        digits.push(0);
        CanonicalString {
            alphabet: self.alphabet.clone(),
            digits,
        }
    }
}

impl PartialEq for CanonicalString {
    fn eq(&self, other: &Self) -> bool {
        self.digits == other.digits && self.alphabet == other.alphabet
    }
}

impl Eq for CanonicalString {}

impl Hash for CanonicalString {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.digits.hash(state);
    }
}

/// Canonical order. Strings over different alphabets are ordered by their
/// alphabets' symbol lists first so that the order stays total.
impl Ord for CanonicalString {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.alphabet != other.alphabet {
            return self.alphabet.symbols().cmp(other.alphabet.symbols());
        }
        self.canonical_cmp(other)
    }
}

impl PartialOrd for CanonicalString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.symbols() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{:?}", self.to_string())
        }
    }
}

/// A natural number of unbounded size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rank(pub BigUint);

impl Rank {
    pub fn zero() -> Self {
        Rank(BigUint::zero())
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_even(&self) -> bool {
        !self.0.bit(0)
    }
}

impl From<u64> for Rank {
    fn from(n: u64) -> Self {
        Rank(BigUint::from(n))
    }
}

impl From<BigUint> for Rank {
    fn from(n: BigUint) -> Self {
        Rank(n)
    }
}

impl std::str::FromStr for Rank {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(Rank)
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The string at position `rank` in canonical order.
///
/// The length is found by accumulating the number of strings of each length
/// until the next block would pass `rank`; no logarithms are involved.
///
/// # Panics
///
/// Over a one-symbol alphabet the result has `rank` symbols, so `rank` must
/// fit in `usize`.
pub fn unrank(rank: &Rank, alphabet: &Alphabet) -> CanonicalString {
    let k = alphabet.len();
    if k == 1 {
        let n = rank
            .0
            .to_usize()
            .expect("unary string length exceeds addressable memory");
        return alphabet.from_digits(vec![0; n]);
    }

    let kb = BigUint::from(k);
    let mut shorter = BigUint::zero();
    let mut block = BigUint::one();
    let mut len = 0usize;
    while &shorter + &block <= rank.0 {
        shorter += &block;
        block *= &kb;
        len += 1;
    }
    let value = &rank.0 - shorter;
    alphabet.from_digits(base_k_digits(value, k, len))
}

/// `value` as exactly `len` base-`k` digits, most significant first.
fn base_k_digits(value: BigUint, k: usize, len: usize) -> Vec<u32> {
    let mut digits = vec![0u32; len];
    if value.is_zero() {
        return digits;
    }
    let raw: Vec<u32> = if k <= 256 {
        value
            .to_radix_le(k as u32)
            .into_iter()
            .map(u32::from)
            .collect()
    } else {
        let kb = BigUint::from(k);
        let mut v = value;
        let mut out = Vec::new();
        while !v.is_zero() {
            out.push((&v % &kb).to_u32().unwrap());
            v /= &kb;
        }
        out
    };
    debug_assert!(raw.len() <= len);
    for (slot, d) in digits.iter_mut().rev().zip(raw) {
        *slot = d;
    }
    digits
}

/// Convenience for small ranks.
pub fn unrank_u64(rank: u64, alphabet: &Alphabet) -> CanonicalString {
    unrank(&Rank::from(rank), alphabet)
}

/// Lazy walk over Σ* in canonical order, built on [`CanonicalString::successor`].
#[derive(Clone, Debug)]
pub struct CanonicalStrings {
    next: CanonicalString,
}

impl Iterator for CanonicalStrings {
    type Item = CanonicalString;

    fn next(&mut self) -> Option<CanonicalString> {
        let succ = self.next.successor();
        Some(std::mem::replace(&mut self.next, succ))
    }
}
