//! Cheeger constants and lowest nonzero Laplacian eigenvalues for discrete
//! graphs and metric (quantum) graphs, plus checkers for the spectral
//! isoperimetric inequalities relating them.
//!
//! Modules:
//! - [`graph`]: graph data model, validation, connectivity, total length
//! - [`connectivity`]: edge connectivity by exhaustive search and max-flow
//! - [`smoothing`]: degree-2 suppression and essential edge count
//! - [`linalg`]: dense symmetric and generalized eigenvalue kernels
//! - [`discrete`]: Laplacian matrix, Fiedler value, exact discrete Cheeger
//!   constant, Fiedler and Dodziuk/Alon-Milman bound checks
//! - [`cut`]: exact metric Cheeger constant by cut-configuration
//!   enumeration, with an independent grid oracle
//! - [`fem`]: finite-element lambda1 on metric graphs, closed-form family
//!   oracles, Nicaise-type bound checks
//! - [`families`], [`ensemble`]: named generators and seeded random graphs
//! - [`io`], [`report`]: file formats, witnesses, bound reports

pub mod connectivity;
pub mod cut;
pub mod discrete;
pub mod ensemble;
pub mod error;
pub mod families;
pub mod fem;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod report;
pub mod smoothing;

pub use error::{Error, Result};
pub use graph::{DiscreteGraph, MetricGraph};
pub use report::{BoundReport, Tristate};
