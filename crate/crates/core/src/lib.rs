//! Milnor's mu-bar invariants of links and string links.

pub mod braid;
pub mod corpus;
pub mod error;
pub mod invariants;
pub mod link;
pub mod longitude;
pub mod moves;
pub mod obstruction;
pub mod operators;
pub mod par;
pub mod pd;
pub mod series;
pub mod word;

pub use braid::BraidWord;
pub use error::{Error, Result};
pub use invariants::{FirstNonvanishing, MuTable};
pub use link::{LinkRepr, StringLink};
pub use longitude::PeripheralData;
pub use obstruction::ObstructionReport;
pub use par::Mode;
pub use pd::{Crossing, PdCode};
pub use series::{coefficient, lcs_residue_degree, magnus_expand, Monomial, TruncatedSeries};
pub use word::{Letter, Word};
