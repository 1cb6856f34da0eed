//! Exact word-problem engine: class-bounded nilpotent quotients with
//! collection-based normal forms.

pub mod hall;
pub mod magnus;
pub mod pcgroup;
pub mod quotient;
pub mod subgroup;

pub use hall::{witt_rank, HallBasis};
pub use pcgroup::{PcGroup, PcWord};
pub use quotient::{NilpotentQuotient, SectionInvariants, MAX_CLASS};
pub use subgroup::Subgroup;
