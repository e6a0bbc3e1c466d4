//! Exact-arithmetic toolkit for bounding common projective torsion points of
//! pairs of elliptic curves: reduction types at primes, length-2 Witt
//! vectors, a Frobenius-liftability test mod p^2, and certified explicit
//! bounds with machine-checkable hypothesis verification.

// indexed loops are the clearer idiom in the dense linear-algebra and
// coefficient-vector code throughout this crate
#![allow(clippy::needless_range_loop)]

pub mod bound;
pub mod error;
pub mod factor;
pub mod fq;
pub mod froblift;
pub mod linalg;
pub mod poly;
pub mod projection;
pub mod ring;
pub mod torsion_search;
pub mod weierstrass;
pub mod witt2;
pub mod zpoly;

pub use error::{Error, Result};
