#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod basis;
pub mod braid;
pub mod counterexample;
pub mod error;
pub mod group;
pub mod lattice;
pub mod matrix;
pub mod ring;
pub mod tower;
