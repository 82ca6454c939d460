//! Deliberately naive reference implementations.
//!
//! Everything here is written independently of the production code paths it
//! checks — plain scans over the transition list, recursive path
//! enumeration, exhaustive vector iteration — and is used by the test suite
//! as ground truth. Keep it dumb; speed does not matter at desk scale.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::automaton::{Automaton, StateId, SymbolId, Transition, WeightedAutomaton};
use crate::matrix::BoolMatrix;
use crate::semifield::Semifield;

/// Naive reachable-subset powerset construction, breadth first over
/// `BTreeSet` subsets with direct transition-list scans. Shares no code with
/// the production determinizer; the empty subset is kept as an explicit dead
/// state under the same convention.
pub fn oracle_powerset(a: &Automaton) -> Automaton {
    assert!(!a.has_epsilon(), "oracle requires an ε-free automaton");
    let start: BTreeSet<StateId> = a.initial().iter().copied().collect();
    let mut ids: HashMap<BTreeSet<StateId>, usize> = HashMap::new();
    let mut subsets: Vec<BTreeSet<StateId>> = vec![start.clone()];
    ids.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut transitions = Vec::new();

    while let Some(src) = queue.pop_front() {
        for sym in 0..a.sigma() {
            let mut next = BTreeSet::new();
            for t in a.transitions() {
                if t.label == Some(sym) && subsets[src].contains(&t.src) {
                    next.insert(t.dst);
                }
            }
            let dst = *ids.entry(next.clone()).or_insert_with(|| {
                subsets.push(next);
                queue.push_back(subsets.len() - 1);
                subsets.len() - 1
            });
            transitions.push(Transition { src, label: Some(sym), dst });
        }
    }

    let finals: Vec<usize> = subsets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.iter().any(|q| a.is_final(*q)))
        .map(|(i, _)| i)
        .collect();
    Automaton::new(a.alphabet().to_vec(), subsets.len(), [0], finals, transitions)
        .expect("powerset oracle yields a valid automaton")
}

/// Brute-force membership: does any path from an initial state spell the
/// word and end in a final state? Depth-first search over `(state, position)`
/// pairs with a visited set.
pub fn path_accepts(a: &Automaton, word: &[SymbolId]) -> bool {
    assert!(!a.has_epsilon(), "path search requires an ε-free automaton");
    fn dfs(
        a: &Automaton,
        q: StateId,
        pos: usize,
        word: &[SymbolId],
        visited: &mut HashSet<(StateId, usize)>,
    ) -> bool {
        if pos == word.len() {
            return a.is_final(q);
        }
        if !visited.insert((q, pos)) {
            return false;
        }
        a.transitions()
            .iter()
            .filter(|t| t.src == q && t.label == Some(word[pos]))
            .any(|t| dfs(a, t.dst, pos + 1, word, visited))
    }
    let mut visited = HashSet::new();
    a.initial().iter().any(|&q| dfs(a, q, 0, word, &mut visited))
}

/// Total weight of a word by exhaustive path enumeration: the ⊕-sum over all
/// accepting paths of λ ⊗ transition weights ⊗ ρ. Returns the semifield zero
/// when no accepting path exists.
pub fn word_weight<K: Semifield>(w: &WeightedAutomaton<K>, word: &[SymbolId]) -> K {
    fn paths_from<K: Semifield>(w: &WeightedAutomaton<K>, q: StateId, pos: usize, word: &[SymbolId]) -> K {
        if pos == word.len() {
            return w.rho_of(q).cloned().unwrap_or_else(K::zero);
        }
        let mut acc = K::zero();
        for t in w.transitions() {
            if t.src == q && t.symbol == word[pos] {
                let below = paths_from(w, t.dst, pos + 1, word);
                acc = acc.plus(&t.weight.times(&below));
            }
        }
        acc
    }
    let mut total = K::zero();
    for (q, lambda) in w.lambda() {
        total = total.plus(&lambda.times(&paths_from(w, *q, 0, word)));
    }
    total
}

/// All words over `0..sigma` of length at most `max_len`, in shortlex order.
pub fn all_words(sigma: usize, max_len: usize) -> Vec<Vec<SymbolId>> {
    let mut words: Vec<Vec<SymbolId>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<SymbolId>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..sigma {
                let mut w2 = w.clone();
                w2.push(s);
                next.push(w2);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words
}

/// Word-by-word language comparison up to `max_len`, by brute-force path
/// search on both sides. Panics when the alphabets differ.
pub fn oracle_language_eq(x: &Automaton, y: &Automaton, max_len: usize) -> bool {
    assert_eq!(x.alphabet(), y.alphabet(), "oracle compares same-alphabet automata");
    all_words(x.sigma(), max_len)
        .iter()
        .all(|w| path_accepts(x, w) == path_accepts(y, w))
}

/// Word-by-word total-weight comparison up to `max_len` under semifield
/// equality.
pub fn oracle_weight_eq<K: Semifield>(
    x: &WeightedAutomaton<K>,
    y: &WeightedAutomaton<K>,
    max_len: usize,
) -> bool {
    assert_eq!(x.alphabet(), y.alphabet(), "oracle compares same-alphabet automata");
    all_words(x.sigma(), max_len)
        .iter()
        .all(|w| word_weight(x, w) == word_weight(y, w))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExhaustiveCheckError {
    #[error("matrix too large for exact check: n = {0} > 20")]
    MatrixTooLargeForExactCheck(usize),
}

/// Exhaustive r-indecomposability check via the vector criterion: for every
/// non-zero Boolean row vector v, `|vB| ≥ min(n, |v| + r)`. Exponential in
/// n and refused above n = 20.
pub fn indecomposable_exhaustive(b: &BoolMatrix, r: usize) -> Result<bool, ExhaustiveCheckError> {
    let n = b.dim();
    if n > 20 {
        return Err(ExhaustiveCheckError::MatrixTooLargeForExactCheck(n));
    }
    let rows: Vec<u32> = (0..n)
        .map(|i| b.ones_in_row(i).fold(0u32, |acc, j| acc | 1 << j))
        .collect();
    for v in 1u32..1 << n {
        let image = (0..n)
            .filter(|&i| v >> i & 1 == 1)
            .fold(0u32, |acc, i| acc | rows[i]);
        let needed = n.min(v.count_ones() as usize + r);
        if (image.count_ones() as usize) < needed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Brute-force index/period: collect the power orbit in a plain vector and
/// find the first repeat by linear comparison.
pub fn index_period_power_orbit(b: &BoolMatrix) -> (usize, usize) {
    let mut orbit: Vec<BoolMatrix> = vec![b.clone()];
    loop {
        let next = orbit.last().unwrap().matmul(b);
        if let Some(j) = orbit.iter().position(|m| *m == next) {
            // orbit[j] = B^{j+1}; the repeat is at exponent orbit.len()+1.
            return (j + 1, orbit.len() + 1 - (j + 1));
        }
        orbit.push(next);
    }
}

/// Canonical form of a deterministic automaton: relabel states by
/// breadth-first discovery order from the initial state, following symbols
/// in canonical order. Two deterministic automata with all states reachable
/// are isomorphic iff their canonical forms are equal.
pub fn canonical_dfa(a: &Automaton) -> Automaton {
    assert!(a.is_deterministic(), "canonical form requires a deterministic automaton");
    let n = a.n_states();
    let mut next_of: Vec<Vec<Option<StateId>>> = vec![vec![None; a.sigma()]; n];
    for t in a.transitions() {
        next_of[t.src][t.label.unwrap()] = Some(t.dst);
    }
    let mut relabel: Vec<Option<usize>> = vec![None; n];
    let start = a.initial()[0];
    relabel[start] = Some(0);
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for slot in &next_of[q] {
            if let Some(dst) = *slot {
                if relabel[dst].is_none() {
                    relabel[dst] = Some(order.len());
                    order.push(dst);
                }
            }
        }
    }
    let map = |q: StateId| relabel[q].expect("all states reachable");
    Automaton::new(
        a.alphabet().to_vec(),
        order.len(),
        [0],
        a.finals().iter().map(|&q| map(q)),
        a.transitions().iter().map(|t| Transition {
            src: map(t.src),
            label: t.label,
            dst: map(t.dst),
        }),
    )
    .expect("relabeling preserves validity")
}

/// Isomorphism of deterministic automata with all states reachable:
/// state bijection respecting transitions, the initial state, and finals.
pub fn isomorphic_dfas(x: &Automaton, y: &Automaton) -> bool {
    x.n_states() == y.n_states() && canonical_dfa(x) == canonical_dfa(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinize::{determinize, Fuel};
    use crate::gen::gen_moore;

    #[test]
    fn powerset_of_moore_3_has_8_subsets() {
        let a = gen_moore(3).unwrap();
        assert_eq!(oracle_powerset(&a).n_states(), 8);
    }

    #[test]
    fn powerset_of_deterministic_input_stays_small() {
        // A total deterministic input only ever produces singleton subsets.
        let a = gen_moore(4).unwrap();
        let det = determinize(&a, Fuel::unbounded()).det;
        assert!(det.is_deterministic());
        assert!(oracle_powerset(&det).n_states() <= det.n_states());
    }

    #[test]
    fn oracle_and_determinize_agree_on_moore() {
        for n in 2..=6 {
            let a = gen_moore(n).unwrap();
            let det = determinize(&a, Fuel::unbounded());
            let oracle = oracle_powerset(&a);
            assert!(det.terminated);
            assert_eq!(det.det.n_states(), oracle.n_states());
            assert!(isomorphic_dfas(&det.det, &oracle));
        }
    }

    #[test]
    fn language_eq_is_reflexive_and_catches_final_removal() {
        let a = gen_moore(3).unwrap();
        assert!(oracle_language_eq(&a, &a, 6));
        // Dropping the final state changes the language within short words.
        let b = Automaton::new(
            a.alphabet().to_vec(),
            a.n_states(),
            a.initial().iter().copied(),
            [],
            a.transitions().iter().copied(),
        )
        .unwrap();
        assert!(!oracle_language_eq(&a, &b, 6));
    }

    #[test]
    fn all_words_counts() {
        assert_eq!(all_words(2, 3).len(), 1 + 2 + 4 + 8);
        assert_eq!(all_words(1, 4).len(), 5);
        assert_eq!(all_words(3, 0).len(), 1);
    }

    #[test]
    fn exhaustive_check_rejects_large_matrices() {
        let b = BoolMatrix::identity(21);
        assert_eq!(
            indecomposable_exhaustive(&b, 1),
            Err(ExhaustiveCheckError::MatrixTooLargeForExactCheck(21))
        );
    }

    #[test]
    fn exhaustive_check_basic_verdicts() {
        assert_eq!(indecomposable_exhaustive(&BoolMatrix::complete(4), 3), Ok(true));
        assert_eq!(indecomposable_exhaustive(&BoolMatrix::identity(4), 1), Ok(false));
    }

    #[test]
    fn power_orbit_oracle_on_known_cases() {
        assert_eq!(index_period_power_orbit(&BoolMatrix::identity(3)), (1, 1));
        let c = BoolMatrix::from_entries(5, &(0..5).map(|i| (i, (i + 1) % 5)).collect::<Vec<_>>());
        assert_eq!(index_period_power_orbit(&c), (1, 5));
    }

    #[test]
    fn canonical_dfa_is_idempotent() {
        let a = gen_moore(4).unwrap();
        let det = determinize(&a, Fuel::unbounded()).det;
        let c1 = canonical_dfa(&det);
        let c2 = canonical_dfa(&c1);
        assert_eq!(c1, c2);
    }
}
