//! Generating, independence and virtually-independence graphs of finite
//! groups, minimal generating sets, a truncated model of countable product
//! groups, and a symbolic prosoluble construction whose virtually generating
//! graph has a prescribed number of components.

pub mod caps;
pub mod construction;
pub mod dsu;
pub mod graphs;
pub mod group;
pub mod mingen;
pub mod seqprod;
pub mod verify;

pub use caps::Caps;
pub use graphs::{GraphKind, GraphReport};
pub use group::{build_group, ElementId, FiniteGroup, GroupError, GroupSpec, SubgroupMask};
