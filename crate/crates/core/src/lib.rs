//! Triangles and girth of disk graphs and transmission graphs.
//!
//! Every site carries a radius. The *disk graph* joins two sites when their
//! disks intersect, the *transmission graph* has an arc `s -> t` when `t`
//! lies in the disk of `s`. This crate finds (shortest) triangles and the
//! (weighted) girth of disk graphs and (shortest) directed triangles of
//! transmission graphs in near-linear time, together with the brute-force
//! oracles used to check them.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, instance
//! generation and the command-line driver live in the `geogirth` crate.

#![no_std]
#![deny(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod chan;
pub mod disk_triangle;
pub mod exact;
pub mod geom;
pub mod girth;
pub mod graph;
pub mod grid;
pub mod range;
pub mod stats;
pub mod status;
pub mod sweep;
pub mod tx;

pub use geom::{Site, SiteSet, SiteSetError, ToleranceConfig};
pub use graph::{Cycle, DirectedGraph, Triangle, UndirectedGraph};
