//! Geometry of jet schemes: singular loci, fibers of `π_m`, heuristic
//! component splitting, arc kernels, and finite-level thin/fat tests.

mod arcs;
mod components;
mod fiber;
mod irreducible;
mod singular;

pub use arcs::{
    arc_kernel, cylinder_escape, extend_jet, forced_vanishing, is_thin_at_level, ArcKernel, ArcPolynomial,
    EscapeWitness, ExtendedJet, ForcedReport, ParamStatus,
};
pub use components::{split_components, Candidate, ComponentReport};
pub use fiber::{fiber_ideal, fiber_locus, higher_table};
pub use irreducible::{certify_irreducible, coefficients_in, polynomial_sqrt};
pub use singular::{determinant, jacobian, singular_locus};
