//! Taxonomy-based semantic similarity of annotated resources.
//!
//! Resources carry annotation vectors over a taxonomy of concepts. Concepts
//! are weighted (from a corpus or from the taxonomy alone), weights become
//! information content, concept pairs are scored with `consim`, and whole
//! vectors with `semsim` over a best one-to-one pairing. Baseline measures and
//! a Monte-Carlo cohesion test for groups of resources are included.

pub mod assignment;
pub mod baselines;
pub mod cohesion;
pub mod corpus;
pub mod error;
pub mod fixtures;
pub mod measure;
pub mod semsim;
pub mod stats;
pub mod taxonomy;
pub mod weighting;

pub use corpus::{AnnotationVector, Corpus, Resource};
pub use error::{Error, ErrorKind, Result};
pub use measure::{similarity_matrix, Measure, Scorer, SimilarityMatrix};
pub use semsim::{consim, semsim, NormFactor};
pub use taxonomy::{treeify_dag, Concept, DagScheme, Taxonomy};
pub use weighting::{weigh, WeightedTaxonomy, WeightingMethod};
