//! (1,1,2,2)-packing colorings of subcubic graphs.
//!
//! Every connected subcubic graph that is not cubic has a partition of its
//! vertices into two independent sets and two sets of pairwise distance at
//! least 3. [`colorer::color_graph`] builds such a partition by local search,
//! [`verify::verify`] checks any coloring, and [`exact::decide`] settles small
//! instances (cubic ones included) by exhaustive search.

pub mod colorer;
pub mod exact;
pub mod graph;
pub mod io;
pub mod verify;
pub mod weights;

pub use colorer::{color_graph, ColorError, ColorOptions, ColorRun};
pub use exact::{chi_rho, decide, ChiRho, DecisionOutcome, DecisionStatus};
pub use graph::{Graph, GraphError, Vertex, VertexSet};
pub use verify::{verify, PackingColoring, PackingSequence, VerificationReport};
pub use weights::{compute_weights, Potential, WeightMap};
