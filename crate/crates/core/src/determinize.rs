//! On-the-fly determinization.
//!
//! The unweighted construction explores the reachable subsets of the state
//! set from the initial subset, depth-first over a stack exactly as in the
//! classical on-the-fly formulation: pop a power state, compute its successor
//! per symbol (in canonical alphabet order), and push successors not seen
//! before. The empty subset is retained as an explicit dead state, which
//! makes the output total.
//!
//! The weighted construction tracks residual weights per state inside each
//! power state. Each emitted arc carries the ⊕-sum of all outgoing
//! contributions, and the successor's residuals are normalized by the
//! ⊗-inverse of that arc weight. Successor vectors that are entirely zero
//! produce no arc, so weighted outputs stay partial — mirroring the two
//! pseudocode conventions. Termination of the weighted loop is not
//! guaranteed, hence the fuel.

use std::collections::{BTreeMap, HashMap};

use crate::automaton::{Automaton, StateId, Transition, WeightedAutomaton, WeightedTransition};
use crate::matrix::bits;
use crate::semifield::Semifield;

/// Exploration budget: the maximum number of power states that may be
/// created, or unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fuel {
    max_power_states: Option<usize>,
}

impl Fuel {
    pub fn unbounded() -> Self {
        Fuel { max_power_states: None }
    }

    pub fn limited(max_power_states: usize) -> Self {
        assert!(max_power_states >= 1, "fuel must allow at least one power state");
        Fuel { max_power_states: Some(max_power_states) }
    }

    /// Default for unweighted runs: `10 · 2^min(n, 20)`, effectively
    /// unbounded at desk scale since the construction creates at most `2^n`
    /// power states.
    pub fn default_unweighted(n_states: usize) -> Self {
        Fuel::limited(10 * (1usize << n_states.min(20)))
    }

    /// Default for weighted runs, which may diverge: 10000 power states.
    pub fn default_weighted() -> Self {
        Fuel::limited(10_000)
    }

    pub fn max_power_states(&self) -> Option<usize> {
        self.max_power_states
    }

    fn allows(&self, created: usize) -> bool {
        self.max_power_states.is_none_or(|m| created < m)
    }
}

/// A power state of the unweighted construction: a canonical (sorted,
/// duplicate-free) subset of input states.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerState(Vec<StateId>);

impl PowerState {
    pub fn new(mut states: Vec<StateId>) -> Self {
        states.sort_unstable();
        states.dedup();
        PowerState(states)
    }

    pub fn states(&self) -> &[StateId] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn from_bits(v: &[u64], n: usize) -> Self {
        let mut states = Vec::with_capacity(bits::count(v));
        states.extend(bits::iter(v, n));
        PowerState(states)
    }
}

/// A power state of the weighted construction: the canonical sparse residual
/// vector in `K^Q`. No zero entries are stored; two residual states are equal
/// iff their supports and all residual weights agree under semifield
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidualState<K>(Vec<(StateId, K)>);

impl<K: Semifield> ResidualState<K> {
    pub fn new(entries: Vec<(StateId, K)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0), "entries must be sorted");
        debug_assert!(entries.iter().all(|(_, w)| !w.is_zero()), "no zero residuals");
        ResidualState(entries)
    }

    pub fn entries(&self) -> &[(StateId, K)] {
        &self.0
    }
}

/// Outcome of a determinization run.
///
/// `state_map[i]` is the power state represented by output state `i`; when
/// `terminated` is true it covers exactly the reachable power states. `steps`
/// counts while-loop iterations (distinct power states popped), and
/// `transitions_considered` counts input transitions examined across all
/// pops.
#[derive(Debug, Clone)]
pub struct DetResult<A, P> {
    pub det: A,
    pub state_map: Vec<P>,
    pub steps: usize,
    pub transitions_considered: usize,
    pub terminated: bool,
}

/// Subset construction, exploring only reachable power states (Rabin–Scott
/// on the fly). Requires an ε-free input; run
/// [`Automaton::remove_epsilon`] first.
///
/// The unweighted construction always terminates within `2^|Q|` power
/// states, so `terminated = false` occurs only under caller-set budgets.
pub fn determinize(a: &Automaton, fuel: Fuel) -> DetResult<Automaton, PowerState> {
    assert!(!a.has_epsilon(), "determinize requires an ε-free automaton");
    let n = a.n_states();
    let sigma = a.sigma();

    // Per-symbol successor bitsets and out-degrees per state.
    let mut succ = vec![vec![bits::empty(n); n]; sigma];
    let mut degree = vec![vec![0usize; n]; sigma];
    for t in a.transitions() {
        let sym = t.label.expect("ε-free");
        bits::set(&mut succ[sym][t.src], t.dst);
        degree[sym][t.src] += 1;
    }

    let mut initial = bits::empty(n);
    for &q in a.initial() {
        bits::set(&mut initial, q);
    }

    let mut index: HashMap<Vec<u64>, StateId> = HashMap::new();
    let mut subsets: Vec<Vec<u64>> = Vec::new();
    let mut stack: Vec<StateId> = Vec::new();
    index.insert(initial.clone(), 0);
    subsets.push(initial);
    stack.push(0);

    let mut det_transitions: Vec<Transition> = Vec::new();
    let mut steps = 0;
    let mut transitions_considered = 0;
    let mut terminated = true;

    'outer: while let Some(src) = stack.pop() {
        steps += 1;
        for sym in 0..sigma {
            let current = subsets[src].clone();
            let mut next = bits::empty(n);
            for q in bits::iter(&current, n) {
                transitions_considered += degree[sym][q];
                for (w, &s) in next.iter_mut().zip(&succ[sym][q]) {
                    *w |= s;
                }
            }
            let dst = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if !fuel.allows(subsets.len()) {
                        terminated = false;
                        break 'outer;
                    }
                    let id = subsets.len();
                    index.insert(next.clone(), id);
                    subsets.push(next);
                    stack.push(id);
                    id
                }
            };
            det_transitions.push(Transition { src, label: Some(sym), dst });
        }
    }

    let mut finals = bits::empty(n);
    for &q in a.finals() {
        bits::set(&mut finals, q);
    }
    let det_finals: Vec<StateId> = subsets
        .iter()
        .enumerate()
        .filter(|(_, s)| bits::intersects(s, &finals))
        .map(|(i, _)| i)
        .collect();

    let det = Automaton::new(
        a.alphabet().to_vec(),
        subsets.len(),
        [0],
        det_finals,
        det_transitions,
    )
    .expect("subset construction yields a valid automaton");

    DetResult {
        det,
        state_map: subsets.iter().map(|s| PowerState::from_bits(s, n)).collect(),
        steps,
        transitions_considered,
        terminated,
    }
}

/// Weighted on-the-fly determinization over a zero-sum-free, ⊗-commutative
/// semifield. Requires an ε-free input.
///
/// On termination the output assigns every word the same total weight as the
/// input (⊕ over accepting paths of ⊗-products including λ and ρ). The
/// initial power state is λ(I) with initial weight one. Divergence is
/// possible; an exhausted fuel is reported as `terminated = false`.
pub fn determinize_weighted<K: Semifield>(
    w: &WeightedAutomaton<K>,
    fuel: Fuel,
) -> DetResult<WeightedAutomaton<K>, ResidualState<K>> {
    assert!(K::ZERO_SUM_FREE, "weighted determinization requires a zero-sum-free semifield");
    let sigma = w.sigma();

    // adj[sym][src] = (dst, weight) pairs.
    let mut adj: Vec<Vec<Vec<(StateId, K)>>> = vec![vec![Vec::new(); w.n_states()]; sigma];
    let mut degree = vec![vec![0usize; w.n_states()]; sigma];
    for t in w.transitions() {
        adj[t.symbol][t.src].push((t.dst, t.weight.clone()));
        degree[t.symbol][t.src] += 1;
    }

    let initial = ResidualState::new(w.lambda().to_vec());
    let mut index: HashMap<ResidualState<K>, StateId> = HashMap::new();
    let mut residuals: Vec<ResidualState<K>> = vec![initial.clone()];
    index.insert(initial, 0);
    let mut stack: Vec<StateId> = vec![0];

    let mut det_transitions: Vec<WeightedTransition<K>> = Vec::new();
    let mut steps = 0;
    let mut transitions_considered = 0;
    let mut terminated = true;

    'outer: while let Some(src) = stack.pop() {
        steps += 1;
        for sym in 0..sigma {
            // W_a(q') = ⊕ over q in the power state of w(q,a,q') ⊗ r(q).
            let mut weights: BTreeMap<StateId, K> = BTreeMap::new();
            for (q, r) in residuals[src].entries().to_vec() {
                transitions_considered += degree[sym][q];
                for (dst, wt) in &adj[sym][q] {
                    let contrib = wt.times(&r);
                    weights
                        .entry(*dst)
                        .and_modify(|acc| *acc = acc.plus(&contrib))
                        .or_insert(contrib);
                }
            }
            if weights.is_empty() {
                // All-zero successor vector: the arc is omitted.
                continue;
            }
            let arc_weight = weights
                .values()
                .skip(1)
                .fold(weights.values().next().unwrap().clone(), |acc, x| acc.plus(x));
            // Zero-sum-freeness with a non-empty successor set guarantees an
            // invertible normalizer.
            assert!(!arc_weight.is_zero(), "zero-sum-free semifield produced a zero normalizer");
            let inv = arc_weight.times_inv();
            let next = ResidualState::new(
                weights
                    .into_iter()
                    .map(|(q, wq)| (q, wq.times(&inv)))
                    .collect(),
            );
            let dst = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if !fuel.allows(residuals.len()) {
                        terminated = false;
                        break 'outer;
                    }
                    let id = residuals.len();
                    index.insert(next.clone(), id);
                    residuals.push(next);
                    stack.push(id);
                    id
                }
            };
            det_transitions.push(WeightedTransition {
                src,
                symbol: sym,
                weight: arc_weight,
                dst,
            });
        }
    }

    // ρ_det(Q) = ⊕ over final q of r_Q(q) ⊗ ρ(q).
    let mut det_rho: Vec<(StateId, K)> = Vec::new();
    for (i, rs) in residuals.iter().enumerate() {
        let mut acc: Option<K> = None;
        for (q, r) in rs.entries() {
            if let Some(rho_q) = w.rho_of(*q) {
                let term = r.times(rho_q);
                acc = Some(match acc {
                    Some(prev) => prev.plus(&term),
                    None => term,
                });
            }
        }
        if let Some(weight) = acc {
            det_rho.push((i, weight));
        }
    }

    let det = WeightedAutomaton::new(
        w.alphabet().to_vec(),
        residuals.len(),
        [(0, K::one())],
        det_rho,
        det_transitions,
    )
    .expect("weighted subset construction yields a valid automaton");

    DetResult {
        det,
        state_map: residuals,
        steps,
        transitions_considered,
        terminated,
    }
}
