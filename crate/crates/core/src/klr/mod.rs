//! Generator actions of the KLR presentation on cell modules, cellular
//! vectors, Gram forms, diamonds and the Jones–Wenzl projector.

mod element;
mod extension;
mod identities;
mod module;
mod ops;
mod relations;
mod specht;
mod tl;

pub use element::*;
pub use extension::*;
pub use identities::*;
pub use module::*;
pub use ops::{axpy, unit, QVec, SparseOp};
pub use relations::{check_y_jump, validate};
pub use specht::{build_specht, build_specht_with, SpechtModule};
pub use tl::*;
