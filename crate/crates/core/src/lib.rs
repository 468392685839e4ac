//! Viro-patchworked polynomials with many Hessian ovals, and exact checks
//! for every step of their construction.

pub mod lp;
pub mod newton;
pub mod patchwork;
pub mod ratpoly;
pub mod topology;
