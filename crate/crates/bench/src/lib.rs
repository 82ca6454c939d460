//! Shared fixtures for the criterion benchmarks.

use detlab_core::automaton::Automaton;
use detlab_core::gen::{gen_dense, gen_moore, gen_one_letter_irreducible};

pub fn moore(n: usize) -> Automaton {
    gen_moore(n).expect("valid parameters")
}

pub fn one_letter(n: usize) -> Automaton {
    gen_one_letter_irreducible(n, 7).expect("valid parameters")
}

pub fn dense(n: usize) -> Automaton {
    gen_dense(n, 2, 2, 7, false).expect("valid parameters")
}
