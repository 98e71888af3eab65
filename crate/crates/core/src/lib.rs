//! Confined harmonic oscillator, particle in a spherical box and free
//! oscillator eigenstates, with Fisher information in position and momentum
//! space.

pub mod cli;
pub mod config;
pub mod eigensolve;
pub mod error;
pub mod model;
pub mod momentum;
pub mod observables;
pub mod oracle;
pub mod pipeline;
pub mod reproduce;
pub mod specfun;
pub mod svg;
pub mod sweep;
pub mod table;
pub mod wavefun;

pub use error::{Error, Result};
