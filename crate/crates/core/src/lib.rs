//! Exact-arithmetic verification of the secondary staircase complexes on the
//! isotropic Grassmannian `IGr(2, 2n)`.

pub mod cli;
pub mod complexes;
pub mod exactlinalg;
pub mod fiber;
pub mod report;
pub mod weights;
