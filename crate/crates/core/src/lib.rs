//! Nut graphs with prescribed automorphism groups.

pub mod aut;
pub mod codec;
pub mod constructions;
pub mod enumeration;
pub mod exec;
pub mod gadgets;
pub mod graph;
pub mod kernel;
pub mod perm;
