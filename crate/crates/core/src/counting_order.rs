//! Counting orders and the `deleteMin` view of enumerability.
//!
//! A counting order is a well order in which only finitely many elements lie
//! between any two (it is *gap-finite*). Any counting bijection `f` induces
//! one, `a ⪰ b` iff `f⁻¹(a) ≥ f⁻¹(b)` ([`order_from_bijection`]). A set with
//! a counting order supports `deleteMin`, and repeatedly calling `deleteMin`
//! recovers a counting bijection ([`delete_min_from_bijection`] and
//! [`bijection_from_delete_min`] are the two directions).
//!
//! Gap-finiteness cannot be decided by running code. [`chain_search`] is a
//! bounded falsifier: it builds a strictly descending chain between two
//! elements and reports [`ChainSearch::BudgetExceeded`] once the chain is
//! longer than the budget. A long chain is evidence against gap-finiteness at
//! that scale; a short one proves nothing about larger scales.
//!
//! The lexicographic order on ℕ×ℕ ([`LexPairs`]) is the standard well order
//! that is not gap-finite: below `(1, 0)` and above `(0, 0)` sit all of
//! `(0, 1), (0, 2), ...`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Mutex;

use thiserror::Error;

use crate::bijection::{BijectionError, CountingBijection};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("element {0} is not in the carrier (or not found within the search budget)")]
    NotInCarrier(String),
    #[error("{0} and {1} are incomparable")]
    Incomparable(String, String),
    #[error("chain endpoints are reversed: {0} is below {1}")]
    Reversed(String, String),
}

/// A partial order `⪰` over some carrier type.
///
/// `compare(a, b)` is `Greater` when `a ⪰ b` and `a ≠ b`, and `None` for
/// incomparable elements.
pub trait ComparableOrder: Send + Sync {
    type Item: Clone + fmt::Debug;

    fn compare(&self, a: &Self::Item, b: &Self::Item) -> Result<Option<Ordering>, OrderError>;

    /// Whether every pair is meant to be comparable.
    fn is_total(&self) -> bool {
        true
    }

    /// Candidate elements strictly between `upper` and `lower`, used by
    /// [`chain_search`]. `scale` bounds how far a sampler may reach into an
    /// infinite gap. The default samples nothing.
    fn sample_between(
        &self,
        _upper: &Self::Item,
        _lower: &Self::Item,
        _scale: u64,
    ) -> Vec<Self::Item> {
        Vec::new()
    }
}

fn show<T: fmt::Debug>(x: &T) -> String {
    format!("{x:?}")
}

/// The counting order induced by a bijection: compare inverse indices.
pub struct BijectionOrder<B> {
    f: B,
    inverse_budget: u64,
}

/// Order `a ⪰ b` iff `f⁻¹(a) ≥ f⁻¹(b)`. Inverses that search are limited to
/// `inverse_budget` indices.
pub fn order_from_bijection<B: CountingBijection>(f: B, inverse_budget: u64) -> BijectionOrder<B> {
    BijectionOrder { f, inverse_budget }
}

impl<B> BijectionOrder<B>
where
    B: CountingBijection,
    B::Item: PartialEq + fmt::Debug,
{
    pub fn index_of(&self, x: &B::Item) -> Result<u64, OrderError> {
        self.f
            .inverse(x, self.inverse_budget)
            .ok_or_else(|| OrderError::NotInCarrier(show(x)))
    }

    pub fn bijection(&self) -> &B {
        &self.f
    }
}

impl<B> ComparableOrder for BijectionOrder<B>
where
    B: CountingBijection,
    B::Item: Clone + PartialEq + fmt::Debug,
{
    type Item = B::Item;

    fn compare(&self, a: &B::Item, b: &B::Item) -> Result<Option<Ordering>, OrderError> {
        Ok(Some(self.index_of(a)?.cmp(&self.index_of(b)?)))
    }

    /// The immediate predecessor of `upper`.
    fn sample_between(&self, upper: &B::Item, _lower: &B::Item, _scale: u64) -> Vec<B::Item> {
        match self.index_of(upper) {
            Ok(i) if i > 0 => self.f.forward(i - 1).into_iter().collect(),
            _ => Vec::new(),
        }
    }
}

/// Lexicographic order on ℕ×ℕ: first coordinate, then second.
#[derive(Debug, Clone, Copy, Default)]
pub struct LexPairs;

impl ComparableOrder for LexPairs {
    type Item = (u64, u64);

    fn compare(&self, a: &(u64, u64), b: &(u64, u64)) -> Result<Option<Ordering>, OrderError> {
        Ok(Some(a.cmp(b)))
    }

    /// `(x, y-1)` when `y > 0`, and `(x-1, scale)` standing in for the
    /// infinitely many pairs with first coordinate `x-1`.
    fn sample_between(
        &self,
        upper: &(u64, u64),
        _lower: &(u64, u64),
        scale: u64,
    ) -> Vec<(u64, u64)> {
        let (x, y) = *upper;
        let mut out = Vec::with_capacity(2);
        if y > 0 {
            out.push((x, y - 1));
        }
        if x > 0 {
            out.push((x - 1, scale));
        }
        out
    }
}

/// ℕ listed with every even number before any odd number. A well order, but
/// infinitely many evens lie between `2` and `1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct EvensFirst;

impl ComparableOrder for EvensFirst {
    type Item = u64;

    fn compare(&self, a: &u64, b: &u64) -> Result<Option<Ordering>, OrderError> {
        Ok(Some((a % 2, a).cmp(&(b % 2, b))))
    }

    fn sample_between(&self, upper: &u64, _lower: &u64, scale: u64) -> Vec<u64> {
        match *upper {
            1 => vec![2 * scale],
            n if n >= 2 => vec![n - 2],
            _ => Vec::new(),
        }
    }
}

/// Subset order on finite subsets of `{0, ..., 63}` as bit masks:
/// `X ⪰ Y` iff `Y ⊆ X`. Neither total nor (on all of ℘(ℕ)) gap-finite.
#[derive(Debug, Clone, Copy, Default)]
pub struct SubsetOrder;

impl ComparableOrder for SubsetOrder {
    type Item = u64;

    fn compare(&self, a: &u64, b: &u64) -> Result<Option<Ordering>, OrderError> {
        Ok(if a == b {
            Some(Ordering::Equal)
        } else if a & b == *b {
            Some(Ordering::Greater)
        } else if a & b == *a {
            Some(Ordering::Less)
        } else {
            None
        })
    }

    fn is_total(&self) -> bool {
        false
    }

    /// `upper` with one element outside `lower` removed, largest element first.
    fn sample_between(&self, upper: &u64, lower: &u64, _scale: u64) -> Vec<u64> {
        let extra = upper & !lower;
        (0..64)
            .rev()
            .filter(|i| extra & (1 << i) != 0)
            .map(|i| upper & !(1 << i))
            .collect()
    }
}

/// Outcome of a bounded chain search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainSearch<T> {
    /// The sampler ran out; the chain is the longest one found.
    Found(Vec<T>),
    /// The chain (still from `a` down to `b`) is longer than the budget.
    BudgetExceeded(Vec<T>),
}

impl<T> ChainSearch<T> {
    pub fn chain(&self) -> &[T] {
        match self {
            ChainSearch::Found(c) | ChainSearch::BudgetExceeded(c) => c,
        }
    }

    pub fn exceeded(&self) -> bool {
        matches!(self, ChainSearch::BudgetExceeded(_))
    }
}

/// Greedily builds a strictly descending chain `a ≻ c₁ ≻ c₂ ≻ ... ≻ b`,
/// each step taking the largest sampled element strictly between the current
/// element and `b`. Extension stops once the chain has more than `budget`
/// elements, and the result is `BudgetExceeded` iff the final chain (with
/// `b`) is longer than `budget`.
pub fn chain_search<O: ComparableOrder>(
    order: &O,
    a: &O::Item,
    b: &O::Item,
    budget: u64,
) -> Result<ChainSearch<O::Item>, OrderError> {
    match order.compare(a, b)? {
        None => return Err(OrderError::Incomparable(show(a), show(b))),
        Some(Ordering::Less) => return Err(OrderError::Reversed(show(a), show(b))),
        Some(Ordering::Equal) => {
            let chain = vec![a.clone()];
            return Ok(if budget < 1 {
                ChainSearch::BudgetExceeded(chain)
            } else {
                ChainSearch::Found(chain)
            });
        }
        Some(Ordering::Greater) => {}
    }

    let mut chain = vec![a.clone()];
    while (chain.len() as u64) <= budget {
        let current = chain.last().expect("chain starts non-empty");
        let mut best: Option<O::Item> = None;
        for c in order.sample_between(current, b, budget) {
            let below_current = order.compare(current, &c)? == Some(Ordering::Greater);
            let above_b = order.compare(&c, b)? == Some(Ordering::Greater);
            if !(below_current && above_b) {
                continue;
            }
            let better = match &best {
                None => true,
                Some(x) => order.compare(&c, x)? == Some(Ordering::Greater),
            };
            if better {
                best = Some(c);
            }
        }
        match best {
            Some(c) => chain.push(c),
            None => break,
        }
    }
    chain.push(b.clone());

    Ok(if chain.len() as u64 > budget {
        ChainSearch::BudgetExceeded(chain)
    } else {
        ChainSearch::Found(chain)
    })
}

/// The least element of a non-empty finite subset, if it exists and is
/// unique. `None` for an empty slice or when no single element is below
/// all others (possible only for partial orders).
pub fn minimum<O: ComparableOrder>(
    order: &O,
    items: &[O::Item],
) -> Result<Option<O::Item>, OrderError> {
    'candidates: for x in items {
        for y in items {
            match order.compare(x, y)? {
                Some(Ordering::Less | Ordering::Equal) => {}
                _ => continue 'candidates,
            }
        }
        return Ok(Some(x.clone()));
    }
    Ok(None)
}

/// Checks reflexivity, antisymmetry and transitivity on one triple; returns
/// the name of the first violated axiom.
pub fn poset_violation<O: ComparableOrder>(
    order: &O,
    a: &O::Item,
    b: &O::Item,
    c: &O::Item,
) -> Result<Option<&'static str>, OrderError> {
    let ge = |x: &O::Item, y: &O::Item| -> Result<bool, OrderError> {
        Ok(matches!(
            order.compare(x, y)?,
            Some(Ordering::Greater | Ordering::Equal)
        ))
    };
    for x in [a, b, c] {
        if order.compare(x, x)? != Some(Ordering::Equal) {
            return Ok(Some("reflexivity"));
        }
    }
    for (x, y) in [(a, b), (b, c), (a, c)] {
        let fwd = order.compare(x, y)?;
        let back = order.compare(y, x)?;
        if fwd.map(Ordering::reverse) != back {
            return Ok(Some("antisymmetry"));
        }
    }
    for (x, y, z) in [
        (a, b, c),
        (a, c, b),
        (b, a, c),
        (b, c, a),
        (c, a, b),
        (c, b, a),
    ] {
        if ge(x, y)? && ge(y, z)? && !ge(x, z)? {
            return Ok(Some("transitivity"));
        }
    }
    if order.is_total() && order.compare(a, b)?.is_none() {
        return Ok(Some("totality"));
    }
    Ok(None)
}

/// A set from which only the minimal element can be removed.
pub trait DeleteMin: Send {
    type Item;

    /// Removes and returns the minimal element; `None` once the set is empty.
    fn delete_min(&mut self) -> Option<Self::Item>;

    fn call_count(&self) -> u64;
}

/// `deleteMin` driven by a counting bijection: the `(c+1)`-th call returns
/// `f(c)`.
pub struct CountingDeleteMin<B> {
    f: B,
    calls: u64,
}

pub fn delete_min_from_bijection<B: CountingBijection>(f: B) -> CountingDeleteMin<B> {
    CountingDeleteMin { f, calls: 0 }
}

impl<B: CountingBijection> DeleteMin for CountingDeleteMin<B> {
    type Item = B::Item;

    fn delete_min(&mut self) -> Option<B::Item> {
        let x = self.f.forward(self.calls).ok()?;
        self.calls += 1;
        Some(x)
    }

    fn call_count(&self) -> u64 {
        self.calls
    }
}

/// A finite set under a total order, emptied from the bottom.
pub struct SortedDeleteMin<T> {
    descending: Vec<T>,
    calls: u64,
}

impl<T: Clone + fmt::Debug + Send> SortedDeleteMin<T> {
    /// Sorts `items` with `order`; fails if two items are incomparable.
    pub fn new<O: ComparableOrder<Item = T>>(order: &O, items: Vec<T>) -> Result<Self, OrderError> {
        let mut failure = None;
        let mut items = items;
        items.sort_by(|x, y| match order.compare(y, x) {
            Ok(Some(o)) => o,
            Ok(None) => {
                failure.get_or_insert(OrderError::Incomparable(show(x), show(y)));
                Ordering::Equal
            }
            Err(e) => {
                failure.get_or_insert(e);
                Ordering::Equal
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(SortedDeleteMin {
                descending: items,
                calls: 0,
            }),
        }
    }
}

impl<T: Send> DeleteMin for SortedDeleteMin<T> {
    type Item = T;

    fn delete_min(&mut self) -> Option<T> {
        let x = self.descending.pop()?;
        self.calls += 1;
        Some(x)
    }

    fn call_count(&self) -> u64 {
        self.calls
    }
}

/// Counting bijection read off a `deleteMin` source: `forward(i)` is the
/// element returned by the `(i+1)`-th call. Returns are remembered so that
/// `forward` is a function.
pub struct ReplayBijection<S: DeleteMin> {
    state: Mutex<(S, Vec<S::Item>)>,
}

pub fn bijection_from_delete_min<S: DeleteMin>(source: S) -> ReplayBijection<S> {
    ReplayBijection {
        state: Mutex::new((source, Vec::new())),
    }
}

impl<S> CountingBijection for ReplayBijection<S>
where
    S: DeleteMin,
    S::Item: Clone + PartialEq + Send,
{
    type Item = S::Item;

    fn forward(&self, index: u64) -> Result<S::Item, BijectionError> {
        let mut guard = self.state.lock().expect("replay lock");
        let (source, seen) = &mut *guard;
        while seen.len() as u64 <= index {
            match source.delete_min() {
                Some(x) => seen.push(x),
                None => {
                    return Err(BijectionError::Exhausted {
                        produced: seen.len() as u64,
                    })
                }
            }
        }
        Ok(seen[index as usize].clone())
    }

    fn inverse(&self, x: &S::Item, budget: u64) -> Option<u64> {
        let mut guard = self.state.lock().expect("replay lock");
        let (source, seen) = &mut *guard;
        if let Some(i) = seen.iter().take(budget as usize).position(|y| y == x) {
            return Some(i as u64);
        }
        while (seen.len() as u64) < budget {
            let y = source.delete_min()?;
            let hit = &y == x;
            seen.push(y);
            if hit {
                return Some(seen.len() as u64 - 1);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{square_ranks, FnBijection, Unranking};
    use crate::canonical::{unrank_u64, Alphabet};

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn bijection_order_compares_ranks() {
        let order = order_from_bijection(Unranking::new(ab()), 0);
        let w = |t: &str| ab().parse(t).unwrap();
        assert_eq!(
            order.compare(&w("ba"), &w("ab")),
            Ok(Some(Ordering::Greater))
        );
        assert_eq!(
            order.compare(&w("bab"), &w("bab")),
            Ok(Some(Ordering::Equal))
        );
    }

    #[test]
    fn bijection_order_outside_the_carrier() {
        let a = ab();
        let even = FnBijection::new(move |n| unrank_u64(2 * n, &a));
        let order = order_from_bijection(even, 1_000);
        let w = |t: &str| ab().parse(t).unwrap();
        assert_eq!(order.compare(&w("b"), &w("ab")), Ok(Some(Ordering::Less)));
        assert!(matches!(
            order.compare(&w("a"), &w("b")),
            Err(OrderError::NotInCarrier(_))
        ));
    }

    #[test]
    fn delete_min_counts_calls() {
        let mut d = delete_min_from_bijection(Unranking::new(ab()));
        let first: Vec<String> = (0..3)
            .map(|_| d.delete_min().unwrap().to_string())
            .collect();
        assert_eq!(first, ["", "a", "b"]);
        d.delete_min();
        d.delete_min();
        assert_eq!(d.call_count(), 5);

        let mut sq = delete_min_from_bijection(square_ranks(ab()));
        let ranks: Vec<u64> = (0..4)
            .map(|_| sq.delete_min().unwrap().rank().to_u64().unwrap())
            .collect();
        assert_eq!(ranks, [0, 1, 4, 9]);
    }

    #[test]
    fn replay_bijection() {
        let f = bijection_from_delete_min(delete_min_from_bijection(Unranking::new(ab())));
        assert_eq!(f.forward(0).unwrap().to_string(), "");
        assert_eq!(f.forward(5).unwrap().to_string(), "ba");
        assert_eq!(f.inverse(&ab().parse("bb").unwrap(), 100), Some(6));
        assert_eq!(f.inverse(&ab().parse("bbbbbbbb").unwrap(), 100), None);

        let three = SortedDeleteMin::new(&LexPairs, vec![(2, 0), (0, 5), (1, 1)]).unwrap();
        let g = bijection_from_delete_min(three);
        assert_eq!(g.forward(0), Ok((0, 5)));
        assert_eq!(g.forward(2), Ok((2, 0)));
        assert_eq!(g.forward(3), Err(BijectionError::Exhausted { produced: 3 }));
    }

    #[test]
    fn sorted_source_needs_a_total_order() {
        assert!(matches!(
            SortedDeleteMin::new(&SubsetOrder, vec![0b01, 0b10]),
            Err(OrderError::Incomparable(..))
        ));
    }

    #[test]
    fn lex_chain_exceeds_any_budget() {
        let r = chain_search(&LexPairs, &(1, 0), &(0, 0), 100).unwrap();
        assert!(r.exceeded());
        let c = r.chain();
        assert_eq!(c.len(), 102);
        assert_eq!(c[0], (1, 0));
        assert_eq!(c[1], (0, 100));
        assert_eq!(c[101], (0, 0));
    }

    #[test]
    fn bijection_chain_is_the_gap() {
        let order = order_from_bijection(Unranking::new(ab()), 0);
        let w = |t: &str| ab().parse(t).unwrap();
        let r = chain_search(&order, &w("bb"), &w(""), 10_000).unwrap();
        let ranks: Vec<u64> = r
            .chain()
            .iter()
            .map(|s| s.rank().to_u64().unwrap())
            .collect();
        assert_eq!(r, ChainSearch::Found(r.chain().to_vec()));
        assert_eq!(ranks, [6, 5, 4, 3, 2, 1, 0]);

        let r = chain_search(&order, &w("ab"), &w("ab"), 10).unwrap();
        assert_eq!(r, ChainSearch::Found(vec![w("ab")]));
    }

    #[test]
    fn chain_endpoint_errors() {
        assert!(matches!(
            chain_search(&SubsetOrder, &0b01, &0b10, 5),
            Err(OrderError::Incomparable(..))
        ));
        assert!(matches!(
            chain_search(&LexPairs, &(0, 0), &(1, 0), 5),
            Err(OrderError::Reversed(..))
        ));
    }

    #[test]
    fn evens_first_is_not_gap_finite() {
        let r = chain_search(&EvensFirst, &1, &2, 50).unwrap();
        assert!(r.exceeded());
        assert_eq!(r.chain().first(), Some(&1));
        assert_eq!(r.chain().last(), Some(&2));
    }

    #[test]
    fn subset_order_is_partial() {
        assert_eq!(SubsetOrder.compare(&0b01, &0b10), Ok(None));
        assert_eq!(poset_violation(&SubsetOrder, &0b01, &0b10, &0b11), Ok(None));
        let r = chain_search(&SubsetOrder, &0b1111, &0b0001, 100).unwrap();
        assert_eq!(r.chain(), [0b1111, 0b0111, 0b0011, 0b0001]);
        assert_eq!(minimum(&SubsetOrder, &[0b01, 0b10]), Ok(None));
        assert_eq!(minimum(&SubsetOrder, &[0b11, 0b01]), Ok(Some(0b01)));
    }
}
