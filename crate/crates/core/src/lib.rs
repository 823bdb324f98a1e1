//! Multi-twisted Goppa (MTG) codes over finite-field towers.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf`]: tower-field arithmetic in a flattened digit basis;
//! - [`poly`]: dense polynomials, the traced extended Euclidean algorithm and
//!   factorization;
//! - [`linalg`]: matrices, row reduction, null spaces and subfield expansion;
//! - [`codes`]: MTG parity checks and codes, distance criteria, brute force;
//! - [`decoder`]: syndrome decoding of single-twist codes up to `t/2` errors;
//! - [`pkc`]: Niederreiter encryption built on the decoder;
//! - [`attack`]: key-recovery experiments against MTG-based keys;
//! - [`qc`]: quasi-cyclic MTG codes in odd characteristic.

pub mod gf;
pub mod poly;
pub mod linalg;
pub mod codes;
pub mod decoder;
pub mod pkc;
pub mod attack;
pub mod qc;
