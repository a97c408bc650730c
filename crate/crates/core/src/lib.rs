//! Exact tools for single-logical-qubit stabilizer codes and their transversal
//! diagonal gates.
//!
//! A transversal gate `⊗ P(π p_i / 2^(k−1))` on a code in standard form acts
//! logically iff the X-generator matrix `A_X` is k-orthogonal (every product of
//! at most k rows has even weight) and the phases satisfy a family of
//! congruences modulo powers of two. The crate certifies k-orthogonality,
//! solves the congruences exactly, builds the sub-dual Hamming family, computes
//! CSS distances and runs the exhaustive minimality search.
//!
//! All phase arithmetic is integer arithmetic modulo `2^k`.

pub mod codes;
pub mod congruence;
pub mod constructions;
pub mod distance;
pub mod error;
pub mod gates;
pub mod gf2;
pub mod io;
pub mod orthogonality;
pub mod pauli;
pub mod search;

pub use codes::{
    degeneracy_classes, nondegenerate_reduction, to_standard_form, DegeneracyPartition,
    NondegenerateReduction, StabilizerCode, StandardFormCode,
};
pub use constructions::{hamming_parity_check, minimal_korth_matrix, subdual_css, subdual_parts};
pub use distance::{css_distances, DistanceReport, TypedDistance};
pub use error::{Error, Result};
pub use gates::{
    controlled_phase_action, find_transversal_phases, logical_phase_action,
    phase_quantization_exponent, verify_korth_necessity, DyadicPhaseVector, GateDescriptor,
    LogicalPhase, PhaseAction,
};
pub use gf2::{BitMat, BitVec};
pub use orthogonality::{is_k_orthogonal, isolate_column, max_orthogonality, OrthogonalityReport};
pub use pauli::{PauliOp, Phase};
pub use search::{minimality_search, Prune, SearchReport, SearchSpace};
