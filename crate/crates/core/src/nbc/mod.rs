//! NBC monomials, l.s.o.p. construction and basis checks.

pub mod check;
pub mod decomposition;
pub mod monomials;
pub mod search;
pub mod theta;

pub use check::{nbc_check, CheckOptions, ComponentReport, NbcReport};
pub use decomposition::{decomposition_check, has_cocircuit_pair, DecompositionReport};
pub use monomials::{dj_and_mc, order_ideals, CircuitMonomial, CircuitMonomialRow, DjMc};
pub use search::{matroid_hash, search_orderings, Policy, SearchOptions, SearchReport, SearchState, Shard, Tallies, Witness};
pub use theta::{lsop, Signing, ThetaForm, ThetaSystem, REPRESENTATION_SWEEP_CAP};
