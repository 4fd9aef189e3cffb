//! Discrete memoryless channels: joint laws, auxiliary distributions and
//! lattice searches for the rate-equivocation region.

pub mod aux;
pub mod bounds;
pub mod channel;
pub mod frontier;
pub mod joint;
pub mod lattice;

pub use aux::{joint_law, AuxCards, AuxDistribution, InnerAuxDistribution, OuterAuxDistribution};
pub use bounds::{inner_bound_point, outer_bound_point, wthi_objective, RateEquivocationPoint};
pub use channel::DiscreteMemorylessChannel;
pub use frontier::{
    enumerate_frontier, wthi_lower_bound, wyner_reduction_check, BoundKind, Frontier, WthiOptimum, WynerCheck,
};
pub use joint::{conditional_mi, JointTable, Var};
pub use lattice::{simplex_count, simplex_points, LatticeSpec};
