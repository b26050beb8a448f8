//! Laurent expansions of cluster variables of surface cluster algebras via
//! snake graphs, with a seed-mutation oracle to cross-check them.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod expand;
pub mod matchings;
pub mod mutation;
pub mod poly;
pub mod snake;
pub mod surface;
