//! Exact spectra of power functions x^d over F_{p^{2m}}, with closed-form
//! predictions for Niho exponents d ≡ 1 mod p^m - 1 and brute-force checks
//! of each of them.
//!
//! Everything is exhaustive enumeration over dense log/antilog tables, so
//! the practical range is fields of up to a few thousand elements for the
//! cubic-cost operations.

pub mod boomerang;
pub mod codes;
pub mod cyclotomic;
pub mod diff;
pub mod error;
pub mod exec;
pub mod field;
pub mod niho;
pub mod verify;
pub mod walsh;

pub use cyclotomic::CyclotomicInteger;
pub use error::{Error, Result};
pub use exec::{Exec, Options, DEFAULT_BUDGET};
pub use field::{build_field, build_field_with_cap, Elem, Field, FieldDescription};
pub use niho::{make_niho, predict, NihoExponent};
