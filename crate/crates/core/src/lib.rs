//! Exact combinatorics on Cayley graphs of finitely generated groups:
//! self-avoiding-walk enumeration, connective-constant bounds, spectral
//! estimates for simple random walk, group/graph height functions, and
//! the word-problem machinery needed to build exact finite balls.
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std`
//! feature adds multi-threaded walk enumeration and wall-clock timing.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cayley;
pub mod grigorchuk;
pub mod heightfn;
pub mod obstruct;
pub mod oracle;
pub mod saw;
pub mod spectral;
pub mod words;
