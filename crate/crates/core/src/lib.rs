//! Merge sequences on finite graphs: validation and width computation,
//! resolved-set minimisation, exact merge-width search at small scale, and
//! certificate extractors (biclique/anti-biclique pairs, colourings bounded by
//! the clique number, neighbourhood-complexity witnesses, and hideout-based
//! flip-width lower bounds).

pub mod bitset;
pub mod cli;
pub mod coloring;
pub mod extraction;
pub mod flips;
pub mod gf2;
pub mod graph;
pub mod mergeseq;
pub mod ratio;
pub mod rng;
pub mod solver;

pub use bitset::BitSet;
pub use graph::{generate, parse_graph, Family, Graph};
pub use mergeseq::{parse_mseq, MergeSequence, Partition};
