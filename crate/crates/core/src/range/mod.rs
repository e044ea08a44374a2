//! Batched range searching over canonical radius intervals.
//!
//! (R1) reports, for every site, the sites of at least half its radius in
//! its disk, or a square crowded with large sites. (R2) answers query
//! triples `(s, r1, r2)` asking for a site `u != s` with `r_u` in
//! `[r1, r2)` whose disk contains `s`.

pub mod hull;
pub mod r1;
pub mod r2;
pub mod tree;
pub mod zorder;

pub use r1::{solve_r1, CrowdedSquare, R1Outcome, ALPHA};
pub use r2::{solve_r2, QueryTriple};
pub use tree::RadiusTree;
pub use zorder::{z_compare, GridCell};
