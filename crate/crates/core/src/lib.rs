//! Exact arithmetic for adjoint Chevalley groups over small commutative rings.
//!
//! Elements are matrices in the adjoint representation over the ring. All
//! computations are exact; nothing here touches floating point.
#![no_std]

extern crate alloc;

pub mod chevalley;
pub mod decomposition;
pub mod error;
pub mod extraction;
pub mod generic;
pub mod matrix;
pub mod normal;
pub mod poly;
pub mod ring;
pub mod roots;
pub mod word;

pub use chevalley::{Chevalley, Generator, GroupElement, GroupWord, Letter, StructureTable};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use ring::{CommRing, Integers, RingDescriptor, Zmod};
pub use roots::{CartanType, RootSystem, WeylElement};
pub use decomposition::{GaussFactorization, Grading, Orientation};
pub use word::{Certificate, Witness};
pub use extraction::{ExtractionResult, Parabolic, ParabolicSign};
