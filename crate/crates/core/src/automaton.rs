//! Data model for unweighted and weighted finite-state automata.
//!
//! States are dense indices `0..n`; symbols are indices into a
//! lexicographically sorted alphabet. Construction canonicalizes: the
//! alphabet is sorted (symbol ids remapped accordingly), duplicate
//! transitions collapse to a set, and transitions/initials/finals are kept
//! sorted. Multiplicity of unweighted transitions is deliberately dropped —
//! Boolean semantics make it irrelevant to every algorithm in this crate.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::matrix::BoolMatrix;
use crate::semifield::{Boolean, Semifield};

pub type StateId = usize;
pub type SymbolId = usize;

/// Transition label: `None` is ε.
pub type Label = Option<SymbolId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub src: StateId,
    pub label: Label,
    pub dst: StateId,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("state {0} out of range (automaton has {1} states)")]
    UnknownState(StateId, usize),
    #[error("symbol id {0} out of range (alphabet has {1} symbols)")]
    UnknownSymbol(SymbolId, usize),
    #[error("alphabet token {0:?} is invalid (empty, whitespace, or reserved)")]
    BadAlphabetToken(String),
    #[error("duplicate alphabet token {0:?}")]
    DuplicateAlphabetToken(String),
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("duplicate weighted transition (src {src}, symbol {symbol}, dst {dst})")]
    DuplicateWeightedTransition { src: StateId, symbol: SymbolId, dst: StateId },
    #[error("duplicate {0} weight for state {1}")]
    DuplicateWeight(&'static str, StateId),
    #[error("zero weight on {0} (zero means the transition is absent)")]
    ZeroWeight(String),
    #[error("epsilon transitions are not allowed in weighted automata")]
    WeightedEpsilon,
}

fn validate_alphabet(mut alphabet: Vec<String>) -> Result<(Vec<String>, Vec<SymbolId>), AutomatonError> {
    for tok in &alphabet {
        if tok.is_empty() || tok.chars().any(char::is_whitespace) || tok == "EPS" {
            return Err(AutomatonError::BadAlphabetToken(tok.clone()));
        }
    }
    // Sort lexicographically and produce the old-id -> new-id remapping.
    let mut order: Vec<usize> = (0..alphabet.len()).collect();
    order.sort_by(|&a, &b| alphabet[a].cmp(&alphabet[b]));
    let mut remap = vec![0; alphabet.len()];
    for (new_id, &old_id) in order.iter().enumerate() {
        remap[old_id] = new_id;
    }
    let mut sorted = vec![String::new(); alphabet.len()];
    for (old_id, tok) in alphabet.drain(..).enumerate() {
        sorted[remap[old_id]] = tok;
    }
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(AutomatonError::DuplicateAlphabetToken(pair[0].clone()));
        }
    }
    Ok((sorted, remap))
}

/// Unweighted finite-state automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Vec<String>,
    n: usize,
    initial: Vec<StateId>,
    finals: Vec<StateId>,
    transitions: Vec<Transition>,
}

impl Automaton {
    pub fn new(
        alphabet: Vec<String>,
        n: usize,
        initial: impl IntoIterator<Item = StateId>,
        finals: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self, AutomatonError> {
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        let sigma = alphabet.len();
        let (alphabet, remap) = validate_alphabet(alphabet)?;

        let mut check_state = |q: StateId| {
            if q < n {
                Ok(q)
            } else {
                Err(AutomatonError::UnknownState(q, n))
            }
        };
        let mut initial: Vec<StateId> = initial
            .into_iter()
            .map(&mut check_state)
            .collect::<Result<_, _>>()?;
        let mut finals: Vec<StateId> = finals
            .into_iter()
            .map(&mut check_state)
            .collect::<Result<_, _>>()?;
        initial.sort_unstable();
        initial.dedup();
        finals.sort_unstable();
        finals.dedup();

        let mut trans: Vec<Transition> = Vec::new();
        for t in transitions {
            if t.src >= n {
                return Err(AutomatonError::UnknownState(t.src, n));
            }
            if t.dst >= n {
                return Err(AutomatonError::UnknownState(t.dst, n));
            }
            let label = match t.label {
                None => None,
                Some(s) if s < sigma => Some(remap[s]),
                Some(s) => return Err(AutomatonError::UnknownSymbol(s, sigma)),
            };
            trans.push(Transition { label, ..t });
        }
        trans.sort_unstable();
        trans.dedup();

        Ok(Automaton {
            alphabet,
            n,
            initial,
            finals,
            transitions: trans,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn n_states(&self) -> usize {
        self.n
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn finals(&self) -> &[StateId] {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.binary_search(&q).is_ok()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn symbol_index(&self, token: &str) -> Option<SymbolId> {
        self.alphabet.binary_search_by(|t| t.as_str().cmp(token)).ok()
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions.iter().any(|t| t.label.is_none())
    }

    /// ε-free, with a single initial state and at most one transition per
    /// `(state, symbol)` pair.
    pub fn is_deterministic(&self) -> bool {
        if self.initial.len() != 1 || self.has_epsilon() {
            return false;
        }
        let mut seen = BTreeSet::new();
        for t in &self.transitions {
            if !seen.insert((t.src, t.label)) {
                return false;
            }
        }
        true
    }

    /// ε-removal: transitions are pulled back through the forward ε-closure
    /// of their source, the initial set is replaced by its ε-closure, and a
    /// state becomes final iff its ε-closure intersects the final set.
    pub fn remove_epsilon(&self) -> Automaton {
        if !self.has_epsilon() {
            return self.clone();
        }
        let mut eps_adj: Vec<Vec<StateId>> = vec![Vec::new(); self.n];
        for t in &self.transitions {
            if t.label.is_none() {
                eps_adj[t.src].push(t.dst);
            }
        }
        let closure: Vec<Vec<StateId>> = (0..self.n)
            .map(|q| {
                let mut seen = vec![false; self.n];
                let mut stack = vec![q];
                seen[q] = true;
                while let Some(p) = stack.pop() {
                    for &r in &eps_adj[p] {
                        if !seen[r] {
                            seen[r] = true;
                            stack.push(r);
                        }
                    }
                }
                (0..self.n).filter(|&r| seen[r]).collect()
            })
            .collect();

        let mut transitions = Vec::new();
        for (q, reachable) in closure.iter().enumerate() {
            for &p in reachable {
                for t in &self.transitions {
                    if t.src == p && t.label.is_some() {
                        transitions.push(Transition {
                            src: q,
                            label: t.label,
                            dst: t.dst,
                        });
                    }
                }
            }
        }
        let initial: Vec<StateId> = self
            .initial
            .iter()
            .flat_map(|&q| closure[q].iter().copied())
            .collect();
        let finals: Vec<StateId> = (0..self.n)
            .filter(|&q| closure[q].iter().any(|&r| self.is_final(r)))
            .collect();
        Automaton::new(self.alphabet.clone(), self.n, initial, finals, transitions)
            .expect("ε-removal preserves validity")
    }

    /// One n×n Boolean matrix per alphabet symbol; entry `(i, j)` is set iff
    /// `(q_i, a, q_j)` is a transition. Panics on ε transitions.
    pub fn transition_matrices(&self) -> Vec<BoolMatrix> {
        assert!(!self.has_epsilon(), "transition matrices require an ε-free automaton");
        let mut mats = vec![BoolMatrix::zeros(self.n); self.sigma()];
        for t in &self.transitions {
            let a = t.label.expect("ε-free");
            mats[a].set(t.src, t.dst, true);
        }
        mats
    }
}

/// One weighted transition; the stored weight is never the semifield zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTransition<K> {
    pub src: StateId,
    pub symbol: SymbolId,
    pub weight: K,
    pub dst: StateId,
}

/// Weighted finite-state automaton over a commutative semifield `K`, with
/// initial (λ) and final (ρ) weight functions. At most one transition per
/// `(src, symbol, dst)` triple; ε labels are excluded structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedAutomaton<K: Semifield> {
    alphabet: Vec<String>,
    n: usize,
    lambda: Vec<(StateId, K)>,
    rho: Vec<(StateId, K)>,
    transitions: Vec<WeightedTransition<K>>,
}

impl<K: Semifield> WeightedAutomaton<K> {
    pub fn new(
        alphabet: Vec<String>,
        n: usize,
        lambda: impl IntoIterator<Item = (StateId, K)>,
        rho: impl IntoIterator<Item = (StateId, K)>,
        transitions: impl IntoIterator<Item = WeightedTransition<K>>,
    ) -> Result<Self, AutomatonError> {
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        let sigma = alphabet.len();
        let (alphabet, remap) = validate_alphabet(alphabet)?;

        let weight_fn = |entries: Vec<(StateId, K)>, what: &'static str| {
            let mut out: Vec<(StateId, K)> = Vec::new();
            for (q, w) in entries {
                if q >= n {
                    return Err(AutomatonError::UnknownState(q, n));
                }
                if w.is_zero() {
                    return Err(AutomatonError::ZeroWeight(format!("{what} weight of state {q}")));
                }
                if out.iter().any(|(p, _)| *p == q) {
                    return Err(AutomatonError::DuplicateWeight(what, q));
                }
                out.push((q, w));
            }
            out.sort_by_key(|(q, _)| *q);
            Ok(out)
        };
        let lambda = weight_fn(lambda.into_iter().collect(), "initial")?;
        let rho = weight_fn(rho.into_iter().collect(), "final")?;

        let mut trans: Vec<WeightedTransition<K>> = Vec::new();
        for t in transitions {
            if t.src >= n {
                return Err(AutomatonError::UnknownState(t.src, n));
            }
            if t.dst >= n {
                return Err(AutomatonError::UnknownState(t.dst, n));
            }
            if t.symbol >= sigma {
                return Err(AutomatonError::UnknownSymbol(t.symbol, sigma));
            }
            if t.weight.is_zero() {
                return Err(AutomatonError::ZeroWeight(format!(
                    "transition ({}, {}, {})",
                    t.src, t.symbol, t.dst
                )));
            }
            trans.push(WeightedTransition {
                symbol: remap[t.symbol],
                ..t
            });
        }
        trans.sort_by_key(|t| (t.src, t.symbol, t.dst));
        for pair in trans.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if (a.src, a.symbol, a.dst) == (b.src, b.symbol, b.dst) {
                return Err(AutomatonError::DuplicateWeightedTransition {
                    src: a.src,
                    symbol: a.symbol,
                    dst: a.dst,
                });
            }
        }

        Ok(WeightedAutomaton {
            alphabet,
            n,
            lambda,
            rho,
            transitions: trans,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn n_states(&self) -> usize {
        self.n
    }

    /// Initial weight function λ as sorted `(state, weight)` pairs.
    pub fn lambda(&self) -> &[(StateId, K)] {
        &self.lambda
    }

    /// Final weight function ρ as sorted `(state, weight)` pairs.
    pub fn rho(&self) -> &[(StateId, K)] {
        &self.rho
    }

    pub fn rho_of(&self, q: StateId) -> Option<&K> {
        self.rho
            .binary_search_by_key(&q, |(p, _)| *p)
            .ok()
            .map(|i| &self.rho[i].1)
    }

    pub fn transitions(&self) -> &[WeightedTransition<K>] {
        &self.transitions
    }

    pub fn symbol_index(&self, token: &str) -> Option<SymbolId> {
        self.alphabet.binary_search_by(|t| t.as_str().cmp(token)).ok()
    }

    pub fn is_deterministic(&self) -> bool {
        if self.lambda.len() != 1 {
            return false;
        }
        let mut seen = BTreeSet::new();
        self.transitions.iter().all(|t| seen.insert((t.src, t.symbol)))
    }

    /// The unweighted skeleton: same states and transitions, weights dropped.
    pub fn skeleton(&self) -> Automaton {
        Automaton::new(
            self.alphabet.clone(),
            self.n,
            self.lambda.iter().map(|(q, _)| *q),
            self.rho.iter().map(|(q, _)| *q),
            self.transitions.iter().map(|t| Transition {
                src: t.src,
                label: Some(t.symbol),
                dst: t.dst,
            }),
        )
        .expect("skeleton of a valid weighted automaton is valid")
    }

    /// Per-symbol weighted transition matrices in `K^{Q×Q}`.
    pub fn transition_matrices(&self) -> Vec<crate::monoid::WeightedMatrix<K>> {
        let mut mats =
            vec![crate::monoid::WeightedMatrix::zeros(self.n); self.sigma()];
        for t in &self.transitions {
            mats[t.symbol].set(t.src, t.dst, t.weight.clone());
        }
        mats
    }
}

impl WeightedAutomaton<Boolean> {
    /// Lift an ε-free unweighted automaton into the Boolean semifield: every
    /// transition, initial, and final weight becomes 1.
    pub fn from_unweighted(a: &Automaton) -> Self {
        assert!(!a.has_epsilon(), "lifting requires an ε-free automaton");
        WeightedAutomaton::new(
            a.alphabet().to_vec(),
            a.n_states(),
            a.initial().iter().map(|&q| (q, Boolean(true))),
            a.finals().iter().map(|&q| (q, Boolean(true))),
            a.transitions().iter().map(|t| WeightedTransition {
                src: t.src,
                symbol: t.label.expect("ε-free"),
                weight: Boolean(true),
                dst: t.dst,
            }),
        )
        .expect("lift of a valid automaton is valid")
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fsa(n={}, sigma={}, |I|={}, |F|={}, |δ|={})",
            self.n,
            self.sigma(),
            self.initial.len(),
            self.finals.len(),
            self.transitions.len()
        )
    }
}
