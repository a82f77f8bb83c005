//! Exhaustive and stochastic searches.

mod anneal;
mod claims;
mod enumerate;
mod verify;

pub use anneal::{anneal_search, AnnealOptions, AnnealStart};
pub use claims::{check_lemma_claims, Claim, ClaimEntry, ClaimReport, Witness, CLAIMS_LIMIT};
pub use enumerate::{enumerate_connected, enumerate_labeled, fold_connected, EnumOptions, LABELED_LIMIT, SOFT_LIMIT};
pub use verify::{
    alternate_bound_value, bound_value, verify_bound, verify_graphs, SearchMode, SearchReport, Source, VerifyOptions, CERT_CAP,
    DEFAULT_CEILING,
};
