//! Magical and double-magical orderings and the dense bi-clique extractor.

pub mod claim;
pub mod extract;
pub mod orders;
pub mod threshold;
pub mod witness;

pub use claim::{verify_forcing_claim, ClaimReport};
pub use extract::{extract_biclique_dense, ExtractOutcome, ExtractStatus};
pub use orders::{
    is_forcing, is_ihole, is_magical, order_type, OrderType, Sign, TripleOrderedGraph,
};
pub use threshold::{threshold_pipeline, ThresholdCase, ThresholdOutcome};
pub use witness::{double_magical_witness, DoubleMagicalWitness};
