//! Degree-3 rational functions over finite fields, classified up to
//! `ψ ∘ f ∘ φ` with `ψ, φ ∈ PGL(2, q)`.

pub mod error;
pub mod field;
pub mod poly;
pub mod projline;
pub mod ratfun;
pub mod ramify;
pub mod invariants;
pub mod classify;
pub mod oracle;
pub mod paper_tables;
pub mod cli;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem};
pub use poly::Poly;
pub use projline::{Moebius, ProjPoint};
pub use ratfun::{CoarseClass, Pencil, RatFun};
pub use ramify::{RamPoint, RamType};
pub use invariants::{FstParams, QuadPair, Subclass};
pub use classify::{ClassLabel, Counts};
