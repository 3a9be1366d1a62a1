//! The bundled sample machines, all over the input alphabet `{a, b}`.
//!
//! The machine files live in the repository's `samples/` directory and are
//! compiled in here. Every machine except [`loop_on_odd`] halts on all inputs.

use crate::machine::{parse_machine, TuringMachine};

macro_rules! sample {
    ($(#[$doc:meta])* $name:ident, $path:literal) => {
        $(#[$doc])*
        pub fn $name() -> TuringMachine {
            parse_machine(include_str!(concat!("../../../samples/", $path)))
                .expect(concat!("bundled sample ", $path, " parses"))
        }
    };
}

sample!(
    /// Starts in its accept state; accepts every input in 0 steps.
    accept_all, "accept_all.tm");
sample!(
    /// Starts in its reject state.
    reject_all, "reject_all.tm");
sample!(
    /// Strings of even length, `|w| + 1` steps.
    even_length, "even_length.tm");
sample!(
    /// Accepts even-length strings and never halts on odd-length ones.
    loop_on_odd, "nondeciders/loop_on_odd.tm");
sample!(
    /// Exactly `{a, ab, bba}`.
    member_of_finite_set, "member_of_finite_set.tm");
sample!(
    /// Palindromes, in time quadratic in the input length.
    slow_palindrome, "slow_palindrome.tm");
sample!(starts_with_a, "starts_with_a.tm");
sample!(contains_bb, "contains_bb.tm");
sample!(
    /// `a^n b^n`, quadratic time.
    anbn, "anbn.tm");
sample!(odd_bs, "odd_bs.tm");
sample!(ends_with_a, "ends_with_a.tm");
sample!(a_star, "a_star.tm");
sample!(
    /// Accepts everything, but spends `2|w| + 2` steps when `w` starts with
    /// `a` and one step otherwise.
    detour_on_a, "detour_on_a.tm");

/// Every bundled machine, named by its file stem.
pub fn corpus() -> Vec<(&'static str, TuringMachine)> {
    let mut all = deciders();
    all.insert(3, ("loop_on_odd", loop_on_odd()));
    all
}

/// The bundled machines that halt on every input.
pub fn deciders() -> Vec<(&'static str, TuringMachine)> {
    vec![
        ("accept_all", accept_all()),
        ("reject_all", reject_all()),
        ("even_length", even_length()),
        ("member_of_finite_set", member_of_finite_set()),
        ("slow_palindrome", slow_palindrome()),
        ("starts_with_a", starts_with_a()),
        ("contains_bb", contains_bb()),
        ("anbn", anbn()),
        ("odd_bs", odd_bs()),
        ("ends_with_a", ends_with_a()),
        ("a_star", a_star()),
        ("detour_on_a", detour_on_a()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::Alphabet;
    use crate::machine::Outcome;

    fn accepts(m: &TuringMachine, w: &str) -> bool {
        let ab = Alphabet::from_chars("ab").unwrap();
        let r = m.run(&ab.parse(w).unwrap(), 10_000).unwrap();
        assert_ne!(r.outcome, Outcome::OutOfBudget, "{w:?}");
        r.outcome == Outcome::Accepted
    }

    fn is_palindrome(w: &str) -> bool {
        w.chars().eq(w.chars().rev())
    }

    #[test]
    fn deciders_match_their_languages() {
        let ab = Alphabet::from_chars("ab").unwrap();
        type Pred = fn(&str) -> bool;
        let expected: Vec<(&str, Pred)> = vec![
            ("accept_all", |_| true),
            ("reject_all", |_| false),
            ("even_length", |w| w.len() % 2 == 0),
            ("member_of_finite_set", |w| ["a", "ab", "bba"].contains(&w)),
            ("slow_palindrome", is_palindrome),
            ("starts_with_a", |w| w.starts_with('a')),
            ("contains_bb", |w| w.contains("bb")),
            ("anbn", |w| {
                let n = w.len() / 2;
                w.len() % 2 == 0
                    && w[..n].chars().all(|c| c == 'a')
                    && w[n..].chars().all(|c| c == 'b')
            }),
            ("odd_bs", |w| w.matches('b').count() % 2 == 1),
            ("ends_with_a", |w| w.ends_with('a')),
            ("a_star", |w| !w.contains('b')),
            ("detour_on_a", |_| true),
        ];
        let machines = deciders();
        assert_eq!(machines.len(), expected.len());
        for ((name, m), (ename, pred)) in machines.iter().zip(&expected) {
            assert_eq!(name, ename);
            for w in ab.strings_up_to(8) {
                let w = w.to_string();
                assert_eq!(accepts(m, &w), pred(&w), "{name} on {w:?}");
            }
        }
    }

    #[test]
    fn loop_on_odd_loops_exactly_on_odd_lengths() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let m = loop_on_odd();
        for w in ab.strings_up_to(6) {
            let r = m.run(&w, 5_000).unwrap();
            let expected = if w.len() % 2 == 0 {
                Outcome::Accepted
            } else {
                Outcome::OutOfBudget
            };
            assert_eq!(r.outcome, expected, "{w:?}");
        }
    }

    #[test]
    fn slow_palindrome_is_quadratic() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let m = slow_palindrome();
        let steps = |n: usize| {
            m.run(&ab.parse(&"a".repeat(n)).unwrap(), u64::MAX)
                .unwrap()
                .steps
        };
        // doubling the length roughly quadruples the time
        let ratio = steps(64) as f64 / steps(32) as f64;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }
}
