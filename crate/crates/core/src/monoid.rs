//! Transition-monoid enumeration, the word-to-matrix morphism, and the
//! accepting-subset membership test.
//!
//! The transition monoid of an automaton is the set of Boolean matrices
//! generated by its per-symbol transition matrices under Boolean matrix
//! multiplication, together with the identity. Closures are enumerated
//! breadth-first from the identity, so the recorded generator word for each
//! element is its shortlex-minimal witness.

use std::collections::HashMap;
use std::hash::Hash;

use crate::automaton::{Automaton, SymbolId};
use crate::matrix::{bits, BoolMatrix};
use crate::semifield::Semifield;

/// Boolean matrix product; see [`BoolMatrix::matmul`].
pub fn bool_matmul(x: &BoolMatrix, y: &BoolMatrix) -> BoolMatrix {
    x.matmul(y)
}

/// Result of a (possibly fuel-capped) monoid closure enumeration.
///
/// `elements[0]` is always the identity, with the empty generator word;
/// elements appear in shortlex discovery order. When `complete` is false the
/// enumeration was cut off by fuel and `elements` is a proper subset of the
/// monoid (or the monoid is infinite, in the weighted case).
#[derive(Debug, Clone)]
pub struct Closure<M> {
    pub elements: Vec<M>,
    pub generator_words: Vec<Vec<SymbolId>>,
    pub complete: bool,
}

impl<M: Eq + Hash> Closure<M> {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &M) -> bool {
        self.elements.iter().any(|e| e == m)
    }
}

/// Boolean transition-monoid closure.
pub type MonoidClosure = Closure<BoolMatrix>;

/// Weighted transition-monoid closure over a semifield `K`.
pub type WeightedMonoidClosure<K> = Closure<WeightedMatrix<K>>;

fn close<M, F>(identity: M, gens: &[M], mul: F, fuel: usize) -> Closure<M>
where
    M: Clone + Eq + Hash,
    F: Fn(&M, &M) -> M,
{
    assert!(fuel >= 1, "fuel must allow at least the identity");
    let mut index: HashMap<M, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    let mut words: Vec<Vec<SymbolId>> = vec![Vec::new()];
    index.insert(identity, 0);

    // FIFO over element indices; generators in symbol order give shortlex
    // discovery words.
    let mut head = 0;
    while head < elements.len() {
        for (sym, g) in gens.iter().enumerate() {
            let product = mul(&elements[head], g);
            if index.contains_key(&product) {
                continue;
            }
            if elements.len() >= fuel {
                return Closure {
                    elements,
                    generator_words: words,
                    complete: false,
                };
            }
            let mut word = words[head].clone();
            word.push(sym);
            index.insert(product.clone(), elements.len());
            elements.push(product);
            words.push(word);
        }
        head += 1;
    }
    Closure {
        elements,
        generator_words: words,
        complete: true,
    }
}

/// Default element budget for Boolean closures: `2^min(n², 24)` candidates.
/// Full closure is always feasible for n ≤ 8; larger automata need an
/// explicit fuel and may come back incomplete.
pub fn default_bool_closure_fuel(n: usize) -> usize {
    1usize << (n * n).min(24)
}

/// Breadth-first closure of a Boolean matrix set under right-multiplication
/// by the generators. The identity is always included, whether or not some
/// generator word produces it.
pub fn monoid_closure(gens: &[BoolMatrix], fuel: usize) -> MonoidClosure {
    assert!(!gens.is_empty(), "closure needs at least one generator");
    let n = gens[0].dim();
    assert!(gens.iter().all(|g| g.dim() == n), "generator dimensions differ");
    close(BoolMatrix::identity(n), gens, BoolMatrix::matmul, fuel)
}

/// Closure under `K`-matrix multiplication. An incomplete result signals a
/// (possibly) infinite weighted monoid, which is exactly the situation in
/// which weighted on-the-fly determinization may diverge.
pub fn weighted_monoid_closure<K: Semifield>(
    gens: &[WeightedMatrix<K>],
    fuel: usize,
) -> WeightedMonoidClosure<K> {
    assert!(!gens.is_empty(), "closure needs at least one generator");
    let n = gens[0].dim();
    assert!(gens.iter().all(|g| g.dim() == n), "generator dimensions differ");
    close(WeightedMatrix::identity(n), gens, WeightedMatrix::matmul, fuel)
}

/// μ(word): the product of transition matrices in word order; μ(ε) is the
/// identity. Panics when a symbol id is out of range.
pub fn morphism(a: &Automaton, word: &[SymbolId]) -> BoolMatrix {
    let mats = a.transition_matrices();
    let mut acc = BoolMatrix::identity(a.n_states());
    for &sym in word {
        assert!(sym < a.sigma(), "symbol {sym} not in alphabet");
        acc = acc.matmul(&mats[sym]);
    }
    acc
}

/// Membership via the accepting subset of the transition monoid:
/// true iff `Iᵀ · μ(word) · F ≠ 0`.
pub fn accepts_via_monoid(a: &Automaton, word: &[SymbolId]) -> bool {
    let m = morphism(a, word);
    let mut i_vec = bits::empty(a.n_states());
    for &q in a.initial() {
        bits::set(&mut i_vec, q);
    }
    let mut f_vec = bits::empty(a.n_states());
    for &q in a.finals() {
        bits::set(&mut f_vec, q);
    }
    bits::intersects(&m.image(&i_vec), &f_vec)
}

/// Dense square matrix over a semifield, row-major. Zero entries represent
/// absent transitions. Equality and hashing use the exact entry sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedMatrix<K> {
    n: usize,
    entries: Vec<K>,
}

impl<K: Semifield> WeightedMatrix<K> {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1);
        WeightedMatrix {
            n,
            entries: vec![K::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: K) {
        self.entries[i * self.n + j] = value;
    }

    /// `(xy)_{ij} = ⊕_k x_{ik} ⊗ y_{kj}`.
    pub fn matmul(&self, rhs: &WeightedMatrix<K>) -> WeightedMatrix<K> {
        assert_eq!(self.n, rhs.n, "dimension mismatch: {} vs {}", self.n, rhs.n);
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let y = rhs.get(k, j);
                    if y.is_zero() {
                        continue;
                    }
                    let acc = out.get(i, j).plus(&x.times(y));
                    out.set(i, j, acc);
                }
            }
        }
        out
    }
}
