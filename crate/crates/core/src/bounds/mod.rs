//! Lower bounds on witness sizes, closed-form tables and the extremal and
//! homogeneous families they are compared against.

mod families;
mod homogeneous;
mod lemma;
mod random;

pub use families::{build_half_graph, build_star_pattern_graph, cycle_bounds, degree_bounds, CycleBounds, DegreeReport};
pub use homogeneous::{homogeneous_catalog, is_subgraph_of_homogeneous, materialize, HomogeneousEmbedding, HomogeneousFamily};
pub use lemma::{certificate_for, lower_bound_hrus, lower_bound_hrus_capped, BoundCertificate, BoundMode, DEFAULT_EXACT_CAP};
pub use random::{random_experiment, random_graph, EdgeProbability, ExperimentReport, SampleResult};
