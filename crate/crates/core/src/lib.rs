//! Exact counting of `h`-element subset sums over finite abelian groups, with
//! independent cross-checks, quantitative uniformity bounds and a constant-weight
//! code view of the resulting set families.

pub mod bignat;
pub mod bounds;
pub mod code;
pub mod counting;
pub mod group;
pub mod harness;
pub mod limits;

pub use bignat::BigNat;
pub use counting::CountTable;
pub use group::{Element, GroupSpec};
pub use limits::Limits;
