pub mod field;
pub mod fpoly;
pub mod laurent;

pub use field::{Field, Fp, Rat};
pub use fpoly::{FPoly, FRow, LaurentSpan};
pub use laurent::Laurent;
