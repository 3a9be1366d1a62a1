#![allow(dead_code)]

use std::collections::BTreeMap;

use countable::machine::{Direction, Transition};
use countable::TuringMachine;
use rand::Rng;

/// A random well-formed machine with at most `max_states` states and at most
/// `max_symbols` tape symbols.
pub fn random_machine(rng: &mut impl Rng, max_states: usize, max_symbols: usize) -> TuringMachine {
    let n = rng.gen_range(2..=max_states);
    let k = rng.gen_range(2..=max_symbols);
    let start = rng.gen_range(0..n);
    let accept = rng.gen_range(0..n);
    let reject = loop {
        let r = rng.gen_range(0..n);
        if r != accept {
            break r;
        }
    };
    let mut delta = BTreeMap::new();
    for q in (0..n).filter(|&q| q != accept && q != reject) {
        for a in 0..k as u32 {
            if rng.gen_bool(0.7) {
                let direction = if rng.gen_bool(0.5) {
                    Direction::Left
                } else {
                    Direction::Right
                };
                delta.insert(
                    (q, a),
                    Transition {
                        next: rng.gen_range(0..n),
                        write: rng.gen_range(0..k as u32),
                        direction,
                    },
                );
            }
        }
    }
    TuringMachine::from_parts(n, k, start, accept, reject, delta)
        .expect("generator only builds valid machines")
}

/// Independent check of the machine invariants: the first one broken, if any.
pub fn broken_invariant(m: &TuringMachine) -> Option<String> {
    let n = m.num_states();
    let gamma = m.tape_alphabet().len() as u32;
    if n < 2 {
        return Some("fewer than two states".into());
    }
    if [m.start(), m.accept(), m.reject()].iter().any(|&q| q >= n) {
        return Some("distinguished state out of range".into());
    }
    if m.accept() == m.reject() {
        return Some("accept equals reject".into());
    }
    if gamma < 2 || m.tape_alphabet().symbols()[0] != m.blank() {
        return Some("tape alphabet lacks a leading blank".into());
    }
    if m.input_alphabet().contains(m.blank()) {
        return Some("blank in input alphabet".into());
    }
    for ((q, a), t) in m.transitions() {
        if q >= n || t.next >= n || a >= gamma || t.write >= gamma {
            return Some(format!("transition ({q},{a}) out of range"));
        }
        if q == m.accept() || q == m.reject() {
            return Some(format!("transition out of halting state {q}"));
        }
    }
    None
}
