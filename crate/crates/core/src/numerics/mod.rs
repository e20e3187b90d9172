//! Small numerical building blocks: bracketing roots, derivative-free
//! optimizers and adaptive Gauss-Kronrod quadrature.

pub mod optimize;
pub mod quadrature;
pub mod roots;
