//! Random (multi)graph models, degree sequences and the configuration model.

mod configuration;
mod degree;
mod edit;
pub mod families;
mod generate;
pub mod io;
mod multigraph;

pub use configuration::{couple_configurations, gen_configuration, Coupling};
pub use degree::{is_good_sequence, DegreeSequence};
pub use edit::edit_distance;
pub use generate::{gen_gnm, gen_gnp, gen_multigraph, gen_multigraph_binomial};
pub use multigraph::{MultiGraph, SimpleGraph, Vertex};
