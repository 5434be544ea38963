//! The modified-diagonal cocycle on automorphisms, the commutator map m and
//! its cokernels A(G) and A_W(G), and reduction of cocycle values into them.

mod cocycle;
mod identities;
mod modules;

pub use cocycle::{
    act_on_cocycle, cocycle_residual, degree2_action, md_cocycle, skew_check, CocycleValue, Degree2Basis,
    SkewReport, SkewViolation,
};
pub use identities::{verify_m1_equals_m2, verify_magnus_identity};
pub use modules::{
    commutator_map, johnson_reduce, module_a, module_a_w, submodule_w, JohnsonPresentation, JohnsonValue,
    SubmoduleW, Target,
};
