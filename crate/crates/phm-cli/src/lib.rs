//! Standard-library companion to `phm-core`: the bit-exact text stream
//! format for {0,1} matrices. The `phm` binary in this package exposes the
//! generator, verifier, and transformations over that format.

pub mod io;
