//! Counting bijections `f: ℕ → S`.
//!
//! Indices are `u64`: a bijection is only ever evaluated on a prefix that a
//! program can actually walk. The inverse may have to search, so it takes a
//! budget and answers `None` when the element was not found within it.

use std::sync::Arc;

use thiserror::Error;

use crate::canonical::{unrank_u64, Alphabet, CanonicalString};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("index {index} is outside a set of size {size}")]
    OutOfRange { index: u64, size: u64 },
    #[error("source ran out after {produced} elements")]
    Exhausted { produced: u64 },
    #[error("source stalled after {produced} elements without producing another")]
    Stalled { produced: u64 },
}

pub trait CountingBijection: Send + Sync {
    type Item;

    fn forward(&self, index: u64) -> Result<Self::Item, BijectionError>;

    /// The index of `x`, searching no further than `budget` indices.
    ///
    /// The default walks `forward(0..budget)`.
    fn inverse(&self, x: &Self::Item, budget: u64) -> Option<u64>
    where
        Self::Item: PartialEq,
    {
        (0..budget)
            .map_while(|i| self.forward(i).ok().map(|y| (i, y)))
            .find(|(_, y)| y == x)
            .map(|(i, _)| i)
    }

    /// `Some(n)` for a finite set of `n` elements.
    fn size(&self) -> Option<u64> {
        None
    }
}

impl<B: CountingBijection + ?Sized> CountingBijection for Arc<B> {
    type Item = B::Item;

    fn forward(&self, index: u64) -> Result<Self::Item, BijectionError> {
        (**self).forward(index)
    }

    fn inverse(&self, x: &Self::Item, budget: u64) -> Option<u64>
    where
        Self::Item: PartialEq,
    {
        (**self).inverse(x, budget)
    }

    fn size(&self) -> Option<u64> {
        (**self).size()
    }
}

impl<B: CountingBijection + ?Sized> CountingBijection for Box<B> {
    type Item = B::Item;

    fn forward(&self, index: u64) -> Result<Self::Item, BijectionError> {
        (**self).forward(index)
    }

    fn inverse(&self, x: &Self::Item, budget: u64) -> Option<u64>
    where
        Self::Item: PartialEq,
    {
        (**self).inverse(x, budget)
    }

    fn size(&self) -> Option<u64> {
        (**self).size()
    }
}

/// Canonical order itself: `n ↦ unrank(n)`, inverse `rank`.
#[derive(Clone, Debug)]
pub struct Unranking {
    alphabet: Alphabet,
}

impl Unranking {
    pub fn new(alphabet: Alphabet) -> Self {
        Unranking { alphabet }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
}

impl CountingBijection for Unranking {
    type Item = CanonicalString;

    fn forward(&self, index: u64) -> Result<CanonicalString, BijectionError> {
        Ok(unrank_u64(index, &self.alphabet))
    }

    /// Exact and budget-free for strings over the same alphabet.
    fn inverse(&self, x: &CanonicalString, _budget: u64) -> Option<u64> {
        if x.alphabet() != &self.alphabet {
            return None;
        }
        x.rank().to_u64()
    }
}

type Forward<T> = dyn Fn(u64) -> Option<T> + Send + Sync;
type Inverse<T> = dyn Fn(&T) -> Option<u64> + Send + Sync;

/// A bijection given by closures. Without an explicit inverse the default
/// search is used.
#[derive(Clone)]
pub struct FnBijection<T> {
    forward: Arc<Forward<T>>,
    inverse: Option<Arc<Inverse<T>>>,
    size: Option<u64>,
}

impl<T> FnBijection<T> {
    pub fn new(forward: impl Fn(u64) -> T + Send + Sync + 'static) -> Self {
        FnBijection {
            forward: Arc::new(move |n| Some(forward(n))),
            inverse: None,
            size: None,
        }
    }

    pub fn with_inverse(
        mut self,
        inverse: impl Fn(&T) -> Option<u64> + Send + Sync + 'static,
    ) -> Self {
        self.inverse = Some(Arc::new(inverse));
        self
    }

    /// Restricts the domain to `0..size`.
    pub fn with_size(mut self, size: u64) -> Self {
        self.size = Some(size);
        self
    }
}

impl<T: PartialEq> CountingBijection for FnBijection<T> {
    type Item = T;

    fn forward(&self, index: u64) -> Result<T, BijectionError> {
        if let Some(size) = self.size {
            if index >= size {
                return Err(BijectionError::OutOfRange { index, size });
            }
        }
        (self.forward)(index).ok_or(BijectionError::Exhausted { produced: index })
    }

    fn inverse(&self, x: &T, budget: u64) -> Option<u64> {
        match &self.inverse {
            Some(g) => g(x).filter(|&i| self.size.is_none_or(|s| i < s)),
            None => {
                let limit = self.size.map_or(budget, |s| s.min(budget));
                (0..limit).find(|&i| self.forward(i).is_ok_and(|y| &y == x))
            }
        }
    }

    fn size(&self) -> Option<u64> {
        self.size
    }
}

/// A finite set listed in order.
#[derive(Clone, Debug)]
pub struct ListBijection<T> {
    items: Arc<[T]>,
}

impl<T> ListBijection<T> {
    pub fn new(items: Vec<T>) -> Self {
        ListBijection {
            items: items.into(),
        }
    }
}

impl<T: Clone + PartialEq + Send + Sync> CountingBijection for ListBijection<T> {
    type Item = T;

    fn forward(&self, index: u64) -> Result<T, BijectionError> {
        self.items
            .get(index as usize)
            .cloned()
            .ok_or(BijectionError::OutOfRange {
                index,
                size: self.items.len() as u64,
            })
    }

    fn inverse(&self, x: &T, budget: u64) -> Option<u64> {
        self.items
            .iter()
            .take(budget as usize)
            .position(|y| y == x)
            .map(|i| i as u64)
    }

    fn size(&self) -> Option<u64> {
        Some(self.items.len() as u64)
    }
}

/// `n ↦ unrank(2n)`: the strings of even rank, in rank order.
pub fn even_ranks(alphabet: Alphabet) -> FnBijection<CanonicalString> {
    let a = alphabet.clone();
    FnBijection::new(move |n| unrank_u64(2 * n, &alphabet)).with_inverse(move |s| {
        if s.alphabet() != &a {
            return None;
        }
        let r = s.rank().to_u64()?;
        (r % 2 == 0).then_some(r / 2)
    })
}

/// `n ↦ unrank(n²)`.
pub fn square_ranks(alphabet: Alphabet) -> FnBijection<CanonicalString> {
    let a = alphabet.clone();
    FnBijection::new(move |n| unrank_u64(n * n, &alphabet)).with_inverse(move |s| {
        if s.alphabet() != &a {
            return None;
        }
        let r = s.rank().to_u64()?;
        let root = r.isqrt();
        (root * root == r).then_some(root)
    })
}
