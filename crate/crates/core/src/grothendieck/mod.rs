//! Double stable Grothendieck polynomials: divided differences, pipe
//! dreams, the residue form `g_I`, straightening and basis expansions.

pub mod divided;
pub mod expansion;
pub mod gres;
pub mod perm;
pub mod pipedream;
pub mod stable;

pub use divided::{all_permutations, groth_recursive, isobaric_divided_difference};
pub use expansion::{expand_in_g_basis, multiply_g, straighten, straighten_expansion, GExpansion};
pub use gres::{g_residue, g_residue_cached, jacobi_trudi, schur_residue, symmetrization_formula};
pub use perm::{grassmannian_perm, IntegerSequence, Partition, Permutation};
pub use stable::truncated_stable;
