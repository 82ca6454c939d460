//! On-the-fly determinization of finite-state automata — unweighted and
//! weighted over commutative semifields — together with the algebraic
//! analyses (transition monoids, index/period, irreducibility,
//! r-indecomposability, commutativity, tree width) that predict and verify
//! state-complexity bounds for the construction.
//!
//! Module map:
//!
//! - [`automaton`]: the data model (FSA / WFSA), ε-removal, transition
//!   matrices.
//! - [`semifield`]: the semifield abstraction with Boolean and tropical
//!   (exact rational) instances.
//! - [`format`]: the line-oriented text format, parser and canonical
//!   serializer.
//! - [`determinize`]: the on-the-fly subset construction and its weighted
//!   counterpart, instrumented and fuel-guarded.
//! - [`monoid`]: Boolean and weighted transition-monoid closures, the word
//!   morphism, and monoid-side membership.
//! - [`analysis`]: structural detectors and the state-complexity bound
//!   predictor/verifier.
//! - [`gen`]: reproducible automaton family generators.
//! - [`oracle`]: deliberately naive reference implementations used to
//!   cross-check everything else.

pub mod analysis;
pub mod automaton;
pub mod determinize;
pub mod format;
pub mod gen;
pub mod graph;
pub mod matrix;
pub mod monoid;
pub mod oracle;
pub mod rng;
pub mod semifield;

pub use analysis::{
    index_period, indecomposable, is_commutative, is_irreducible, largest_indecomposable_r,
    predict_bounds, tree_width_analysis, verify_bounds, AnalysisReport, BoundRule, IndexPeriod,
    TreeWidth,
};
pub use automaton::{
    Automaton, AutomatonError, StateId, SymbolId, Transition, WeightedAutomaton,
    WeightedTransition,
};
pub use determinize::{
    determinize, determinize_weighted, DetResult, Fuel, PowerState, ResidualState,
};
pub use format::{parse_automaton, serialize_automaton, Fsa, ParseError};
pub use matrix::BoolMatrix;
pub use monoid::{
    accepts_via_monoid, bool_matmul, default_bool_closure_fuel, monoid_closure, morphism,
    weighted_monoid_closure, MonoidClosure, WeightedMatrix, WeightedMonoidClosure,
};
pub use semifield::{Boolean, Semifield, Tropical};
