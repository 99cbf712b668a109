//! GKP binning with analog weights followed by minimum-weight perfect
//! matching of the check defects.

pub mod blossom;
pub mod gkp;
pub mod mwpm;
pub mod paths;

pub use gkp::{analog_weight, gkp_decode, p_flip, GkpOutcome, SQRT_PI};
pub use mwpm::{
    correction_from_matching, defect_pair_weights, min_weight_perfect_matching, mwpm,
    MatchingProblem,
};
