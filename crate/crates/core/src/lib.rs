//! Bounded-depth FO/MSO logic on graphs, Ehrenfeucht games, subset-pair
//! types and Monte Carlo spectra of `G(n, n^-alpha)`.
//!
//! The crate is `no_std` with `alloc`; IO, threads and formats live in the
//! `rgl` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod eval;
pub mod game;
pub mod graph;
pub mod logic;
pub mod rng;
pub mod spectrum;
pub mod strategy;
pub mod types;
