pub mod arrangement;
pub mod circuit;
pub mod cli;
pub mod corpus;
pub mod edge_set;
pub mod error;
pub mod gain;
pub mod graph;
pub mod instance;
pub mod matroid;
pub mod group;
pub mod linalg;
pub mod signed;
pub mod verify;

#[cfg(test)]
mod testutil;
