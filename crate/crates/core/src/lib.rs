//! Distance enumerators for number-theoretic codes.
//!
//! Three independent routes compute the distance enumerator of a code:
//!
//! * [`oracle`]: brute force over all ordered codeword pairs, for any
//!   simultaneous-congruence (SC) code and any supported distance;
//! * [`spectral`]: the root-of-unity character-sum identity, which turns a
//!   closed form for the whole space into the enumerator of the code
//!   (shipped for the binary Hamming case, i.e. BLC codes);
//! * [`vtfast`]: the polynomial-time pipeline for Varshamov-Tenengolts
//!   codes built from the `B_{m,j,k}` polynomial table.

pub mod cli;
pub mod codes;
pub mod distances;
pub mod error;
pub mod exec;
pub mod oracle;
pub mod polynomial;
pub mod spectral;
pub mod vtfast;

pub use error::{Error, Result};
pub use exec::Execution;
