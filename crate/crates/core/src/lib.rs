//! Foldable regular triangulations of lattice point configurations, the
//! Wronski systems they support, and a homotopy continuation solver for
//! counting their real solutions.

pub mod construction;
pub mod error;
pub mod exact;
pub mod foldable;
pub mod homotopy;
pub mod io;
pub mod lattice;
pub mod poly;
pub mod subdivision;

pub use construction::{
    kushnirenko_bound, newton_polytope, wronski_center_ideal, wronski_polynomial, wronski_system,
    CoefficientChoice,
};
pub use error::{Error, Result};
pub use foldable::{
    dual_graph, facet_bipartition, signature, vertex_coloring, FacetBipartition, OddCycle,
    VertexColoring,
};
pub use homotopy::{
    check_s_interval, mixed_volume, real_solutions, solve, solve_with, Execution, SIntervalCheck,
    Solution, SolveResult, TrackerSettings,
};
pub use lattice::{hull_volume, simplex_lattice_points, Lifting, PointConfiguration};
pub use poly::{variable_names, ExactPolynomial, Monomial, PolynomialSystem};
pub use subdivision::{
    as_simplicial_complex, normalized_volume, regular_subdivision, AffineWitness, Cell,
    SimplicialComplex, Subdivision,
};
