pub mod acceptance;
pub mod census;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod fastpath;
pub mod functional;
pub mod graph;
pub mod mapping;
pub mod matching;
pub mod patterns;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{CanonicalForm, Graph, NamedGraphSpec, SmallGraph};
pub use mapping::{Distance, EdgeMapping, Mode, QMapping};
pub use patterns::{PatternCopy, PatternFamily};
pub use solver::{AvoidanceVerdict, Budget, SolveOptions};
