//! Finite loop theory toolkit: Cayley tables, loop identities, the SRAR and
//! RA2 pointwise criteria, loop rings over GF(2), catalogs and exhaustive
//! sweeps over all small loops.

pub mod catalog;
pub mod conditions;
pub mod enumerate;
pub mod fixtures;
pub mod identities;
pub mod report;
pub mod ring;
pub mod survey;
pub mod sweep;
pub mod table;
pub mod witness;

pub use table::{validate_table, LoopError, LoopTable, Nucleus};
pub use witness::{CheckId, Witness};
