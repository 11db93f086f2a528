//! Exact matrix realization of sl(4,ℝ), its involutions, the fixed-point
//! subalgebras and the θ-stable parabolic defined by `i·Q₂`.

pub mod linalg;
mod mat4;
mod scalar;
mod structure;
mod subspace;

pub use mat4::Matrix4;
pub use scalar::GaussianScalar;
pub use structure::{
    anti_fixed_subspace, cartan_coordinates, conjugator, fixed_subalgebra, gl4_identity, j_block,
    pseudo_dual_report, q1, q2, root_data, sl4, sl4_basis, split_cartan_element, standard_form,
    structure_report, theta_stable_parabolic, top_exterior_weight, torus_generators,
    torus_weights, Involution, InvolutionId, Parabolic, PseudoDualReport, RootDatum,
    StructureReport,
};
pub use subspace::{real_inertia, Field, SubspaceBasis};
