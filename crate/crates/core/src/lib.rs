//! Exact-arithmetic toolkit for knot concordance computations: symbolic
//! fundamental-group assembly, class-bounded nilpotent word-problem engines,
//! Fox calculus and Alexander modules, group-equation solving, and certified
//! Levine-Tristram signature functions and integrals.

pub mod alexander;
pub mod budget;
pub mod error;
pub mod groupops;
pub mod hermitian;
pub mod intmat;
pub mod laurent;
pub mod ledger;
pub mod localization;
pub mod omega;
pub mod nilpotent;
pub mod presentation;
pub mod realenc;
pub mod seifert;
pub mod sigfn;
pub mod sturm;
pub mod series;
pub mod triviality;
pub mod word;

pub use budget::{Budget, CancelToken, VerifyConfig};
pub use error::CkError;
pub use series::{gamma_membership, ptfa_check, rational_series_membership, Membership, PtfaCertificate, PtfaLevel, SeriesMembership};
pub use presentation::{
    parse_grp_file, parse_presentation, parse_word_in, EpiOverG, GroupPresentation, MarkRole,
    MorphismOverG,
};
pub use triviality::{Claim, TrivialityChecker};
pub use word::{free_reduce, Word};
