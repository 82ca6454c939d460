//! Reproducible automaton family generators.
//!
//! Every generator is a pure function of its parameters and seed; identical
//! inputs yield byte-identical serializations (the PRNG recurrence is pinned
//! in [`crate::rng`]). Post-conditions are *not* trusted by the test suite:
//! each family's defining property is re-verified by the corresponding
//! analysis operation.

use thiserror::Error;

use crate::analysis::indecomposable;
use crate::automaton::{Automaton, Transition, WeightedAutomaton, WeightedTransition};
use crate::matrix::BoolMatrix;
use crate::rng::Xorshift64Star;
use crate::semifield::{Semifield, Tropical};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("family {family} needs n ≥ {min}, got {n}")]
    TooFewStates { family: &'static str, n: usize, min: usize },
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("could not certify {r}-indecomposability after {tries} tries at density {density}")]
    GenerationFailed { r: usize, tries: usize, density: usize },
}

/// Family selector with the family-specific parameters; the seed fully
/// determines the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    Moore { n: usize },
    OneLetterIrreducible { n: usize, seed: u64 },
    Commutative { n: usize, sigma: usize, seed: u64 },
    Indecomposable { n: usize, sigma: usize, r: usize, seed: u64, max_tries: usize },
    Dense { n: usize, sigma: usize, d: u64, seed: u64, correlated: bool },
    FiniteTw { n: usize, k: usize, seed: u64 },
}

pub fn generate(spec: &GenSpec) -> Result<Automaton, GenError> {
    match *spec {
        GenSpec::Moore { n } => gen_moore(n),
        GenSpec::OneLetterIrreducible { n, seed } => gen_one_letter_irreducible(n, seed),
        GenSpec::Commutative { n, sigma, seed } => gen_commutative(n, sigma, seed),
        GenSpec::Indecomposable { n, sigma, r, seed, max_tries } => {
            gen_indecomposable(n, sigma, r, seed, max_tries)
        }
        GenSpec::Dense { n, sigma, d, seed, correlated } => gen_dense(n, sigma, d, seed, correlated),
        GenSpec::FiniteTw { n, k, seed } => gen_finite_tw(n, k, seed),
    }
}

/// `sigma` distinct symbol tokens: single letters while they last, `s<i>`
/// afterwards. Construction re-sorts, so the order here does not matter.
pub fn default_alphabet(sigma: usize) -> Vec<String> {
    (0..sigma)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("s{i}")
            }
        })
        .collect()
}

fn random_nonempty_subset(rng: &mut Xorshift64Star, n: usize) -> Vec<usize> {
    let mut subset: Vec<usize> = (0..n).filter(|_| rng.chance(1, 2)).collect();
    if subset.is_empty() {
        subset.push(rng.below(n as u64) as usize);
    }
    subset
}

/// The classic 2^n blow-up witness over `{a, b}`: a b-loop on the first
/// state, an a/b chain through the middle, and a-back-edges from the last
/// state to the first two. Initial state q1 (index 0), final qn (index n−1).
pub fn gen_moore(n: usize) -> Result<Automaton, GenError> {
    if n < 2 {
        return Err(GenError::TooFewStates { family: "moore", n, min: 2 });
    }
    let (a, b) = (0, 1);
    let mut transitions = vec![
        Transition { src: 0, label: Some(b), dst: 0 },
        Transition { src: 0, label: Some(a), dst: 1 },
        // Back edges from q_n to q_1 and q_2. For n = 2 the chain is empty
        // and q_2 coincides with q_n.
        Transition { src: n - 1, label: Some(a), dst: 0 },
        Transition { src: n - 1, label: Some(a), dst: 1 },
    ];
    for i in 1..n - 1 {
        transitions.push(Transition { src: i, label: Some(a), dst: i + 1 });
        transitions.push(Transition { src: i, label: Some(b), dst: i + 1 });
    }
    Ok(Automaton::new(default_alphabet(2), n, [0], [n - 1], transitions).expect("valid by construction"))
}

/// Plant a random Hamiltonian cycle (guaranteeing irreducibility), then add
/// `n` random extra edges.
fn random_irreducible_matrix(rng: &mut Xorshift64Star, n: usize) -> BoolMatrix {
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut m = BoolMatrix::zeros(n);
    for i in 0..n {
        m.set(order[i], order[(i + 1) % n], true);
    }
    for cell in rng.sample_indices(n * n, n) {
        m.set(cell / n, cell % n, true);
    }
    m
}

fn automaton_from_matrices(mats: &[BoolMatrix], initial: Vec<usize>, finals: Vec<usize>) -> Automaton {
    let n = mats[0].dim();
    let mut transitions = Vec::new();
    for (sym, m) in mats.iter().enumerate() {
        for i in 0..n {
            for j in m.ones_in_row(i) {
                transitions.push(Transition { src: i, label: Some(sym), dst: j });
            }
        }
    }
    Automaton::new(default_alphabet(mats.len()), n, initial, finals, transitions)
        .expect("valid by construction")
}

/// One-letter automaton whose transition matrix is irreducible by
/// construction, with random non-empty initial and final sets.
pub fn gen_one_letter_irreducible(n: usize, seed: u64) -> Result<Automaton, GenError> {
    if n < 2 {
        return Err(GenError::TooFewStates { family: "one_letter_irreducible", n, min: 2 });
    }
    let mut rng = Xorshift64Star::new(seed);
    let m = random_irreducible_matrix(&mut rng, n);
    let initial = random_nonempty_subset(&mut rng, n);
    let finals = random_nonempty_subset(&mut rng, n);
    Ok(automaton_from_matrices(&[m], initial, finals))
}

/// Commuting generators: the first transition matrix is a random irreducible
/// matrix A, each further one a random positive power of A. Powers of A
/// commute but need not stay irreducible; the analysis report records
/// per-symbol irreducibility, and the commutative bound is only asserted
/// when it holds.
pub fn gen_commutative(n: usize, sigma: usize, seed: u64) -> Result<Automaton, GenError> {
    if n < 2 {
        return Err(GenError::TooFewStates { family: "commutative", n, min: 2 });
    }
    if sigma < 2 {
        return Err(GenError::BadParameter(format!("commutative needs sigma ≥ 2, got {sigma}")));
    }
    let mut rng = Xorshift64Star::new(seed);
    let base = random_irreducible_matrix(&mut rng, n);
    let mut mats = vec![base.clone()];
    for _ in 1..sigma {
        let exponent = 1 + rng.below((n * n) as u64) as usize;
        mats.push(base.pow(exponent));
    }
    let initial = random_nonempty_subset(&mut rng, n);
    let finals = random_nonempty_subset(&mut rng, n);
    Ok(automaton_from_matrices(&mats, initial, finals))
}

/// Nonzero-count target for the indecomposable family: roughly
/// `(1 + ε + r)·n·log₂ n` cells with ε = 0.1, capped at n².
fn indecomposable_density(n: usize, r: usize) -> usize {
    let log2n = usize::BITS - n.leading_zeros(); // ⌈log₂(n+1)⌉, ≥ 1
    (((11 + 10 * r) * n * log2n as usize) / 10).min(n * n)
}

/// Every transition matrix is certified r-indecomposable: an all-ones
/// diagonal plus random cells at the density above, resampled until the
/// max-flow decision certifies it or `max_tries` is exhausted.
pub fn gen_indecomposable(
    n: usize,
    sigma: usize,
    r: usize,
    seed: u64,
    max_tries: usize,
) -> Result<Automaton, GenError> {
    if n < 2 {
        return Err(GenError::TooFewStates { family: "indecomposable", n, min: 2 });
    }
    if r < 1 || r > n - 1 {
        return Err(GenError::BadParameter(format!("need 1 ≤ r ≤ n−1, got r={r} for n={n}")));
    }
    let mut rng = Xorshift64Star::new(seed);
    let density = indecomposable_density(n, r);
    let off_diagonal = density.saturating_sub(n).min(n * n - n);

    let mut mats = Vec::with_capacity(sigma);
    for _ in 0..sigma {
        let mut certified = None;
        for _ in 0..max_tries {
            let mut m = BoolMatrix::identity(n);
            // Sample off-diagonal cells from the n²−n non-diagonal slots.
            let mut placed = 0;
            for cell in rng.sample_indices(n * n, n * n) {
                if placed == off_diagonal {
                    break;
                }
                let (i, j) = (cell / n, cell % n);
                if i != j {
                    m.set(i, j, true);
                    placed += 1;
                }
            }
            if indecomposable(&m, r) {
                certified = Some(m);
                break;
            }
        }
        match certified {
            Some(m) => mats.push(m),
            None => return Err(GenError::GenerationFailed { r, tries: max_tries, density }),
        }
    }
    let initial = random_nonempty_subset(&mut rng, n);
    let finals = random_nonempty_subset(&mut rng, n);
    Ok(automaton_from_matrices(&mats, initial, finals))
}

/// Each transition matrix is drawn uniformly from the matrices with exactly
/// ⌊n²/d⌋ nonzero cells (partial Fisher-Yates over the n² cells). With
/// `correlated` set, one support pattern is drawn and shared by all symbols.
pub fn gen_dense(
    n: usize,
    sigma: usize,
    d: u64,
    seed: u64,
    correlated: bool,
) -> Result<Automaton, GenError> {
    if n < 2 {
        return Err(GenError::TooFewStates { family: "dense", n, min: 2 });
    }
    if d < 1 {
        return Err(GenError::BadParameter("d must be ≥ 1".into()));
    }
    let nnz = n * n / d as usize;
    if nnz < n {
        return Err(GenError::BadParameter(format!(
            "n²/d = {nnz} nonzeros is below one edge per row on average (n = {n})"
        )));
    }
    let mut rng = Xorshift64Star::new(seed);
    let sample_matrix = |rng: &mut Xorshift64Star| {
        let mut m = BoolMatrix::zeros(n);
        for cell in rng.sample_indices(n * n, nnz) {
            m.set(cell / n, cell % n, true);
        }
        m
    };
    let mats: Vec<BoolMatrix> = if correlated {
        let shared = sample_matrix(&mut rng);
        vec![shared; sigma]
    } else {
        (0..sigma).map(|_| sample_matrix(&mut rng)).collect()
    };
    let initial = random_nonempty_subset(&mut rng, n);
    let finals = random_nonempty_subset(&mut rng, n);
    Ok(automaton_from_matrices(&mats, initial, finals))
}

/// Finite-tree-width family over `{a, b}`: states `1..n` form a
/// deterministic cycle on both symbols; state 0 is initial and branches on
/// `a` into `k` distinct cycle entry points (the k−1 extra edges are the
/// only non-deterministic transitions, and state 0 lies outside every
/// cycle). The tree width is exactly `k`.
pub fn gen_finite_tw(n: usize, k: usize, seed: u64) -> Result<Automaton, GenError> {
    if n < 2 {
        return Err(GenError::TooFewStates { family: "finite_tw", n, min: 2 });
    }
    if k < 1 || k > n - 1 {
        return Err(GenError::BadParameter(format!("need 1 ≤ k ≤ n−1, got k={k} for n={n}")));
    }
    let mut rng = Xorshift64Star::new(seed);
    let (a, b) = (0, 1);
    let core = n - 1; // states 1..n
    let mut transitions = Vec::new();
    for i in 1..n {
        let next = if i + 1 < n { i + 1 } else { 1 };
        transitions.push(Transition { src: i, label: Some(a), dst: next });
        transitions.push(Transition { src: i, label: Some(b), dst: next });
    }
    for entry in rng.sample_indices(core, k) {
        transitions.push(Transition { src: 0, label: Some(a), dst: entry + 1 });
    }
    transitions.push(Transition { src: 0, label: Some(b), dst: 1 + rng.below(core as u64) as usize });
    let finals = random_nonempty_subset(&mut rng, n);
    Ok(Automaton::new(default_alphabet(2), n, [0], finals, transitions).expect("valid by construction"))
}

/// Random acyclic tropical automaton (transitions only go up in state
/// order), used as a terminating weighted corpus: acyclicity bounds path
/// lengths, so weighted determinization always stabilizes.
pub fn gen_tropical_dag(n: usize, sigma: usize, seed: u64) -> WeightedAutomaton<Tropical> {
    assert!(n >= 2 && sigma >= 1);
    let mut rng = Xorshift64Star::new(seed);
    let mut transitions = Vec::new();
    for src in 0..n - 1 {
        for sym in 0..sigma {
            for dst in src + 1..n {
                if rng.chance(1, 3) {
                    let num = rng.below(9) as i64;
                    let den = 1 + rng.below(3) as i64;
                    transitions.push(WeightedTransition {
                        src,
                        symbol: sym,
                        weight: Tropical::ratio(num, den),
                        dst,
                    });
                }
            }
        }
    }
    let lambda = vec![(0, Tropical::from_int(rng.below(4) as i64))];
    let mut rho: Vec<(usize, Tropical)> = Vec::new();
    for q in n / 2..n {
        if rng.chance(1, 2) {
            rho.push((q, Tropical::from_int(rng.below(4) as i64)));
        }
    }
    if rho.is_empty() {
        rho.push((n - 1, Tropical::one()));
    }
    WeightedAutomaton::new(default_alphabet(sigma), n, lambda, rho, transitions)
        .expect("valid by construction")
}

/// The classic non-determinizable tropical pattern: two parallel b-cycles
/// whose weights differ by 1, so normalized residual vectors drift apart
/// forever and never repeat. Weighted on-the-fly diverges on it, and its
/// weighted transition monoid is infinite.
pub fn divergent_tropical() -> WeightedAutomaton<Tropical> {
    let (a, b, c) = (0, 1, 2);
    WeightedAutomaton::new(
        default_alphabet(3),
        4,
        [(0, Tropical::one())],
        [(3, Tropical::one())],
        [
            WeightedTransition { src: 0, symbol: a, weight: Tropical::from_int(1), dst: 1 },
            WeightedTransition { src: 0, symbol: a, weight: Tropical::from_int(2), dst: 2 },
            WeightedTransition { src: 1, symbol: b, weight: Tropical::from_int(3), dst: 1 },
            WeightedTransition { src: 2, symbol: b, weight: Tropical::from_int(4), dst: 2 },
            WeightedTransition { src: 1, symbol: c, weight: Tropical::from_int(0), dst: 3 },
            WeightedTransition { src: 2, symbol: c, weight: Tropical::from_int(0), dst: 3 },
        ],
    )
    .expect("valid by construction")
}
