//! Exact apolarity calculus for homogeneous forms.
//!
//! The crate implements, in exact rational arithmetic:
//!
//! - sparse homogeneous forms with variance tracking ([`forms`]),
//! - fraction-free rational linear algebra ([`exactla`]),
//! - the polar pairing, catalecticant operators, and conjugacy values
//!   ([`apolarity`]),
//! - dual quartics and power-sum certificates ([`duality`]),
//! - Sylvester decomposition of binary forms and a residual-checked
//!   numeric search ([`decompose`]),
//! - expected Waring ranks and Terracini secant dimensions ([`secants`]),
//! - divisor-class arithmetic on the plane blown up at s points
//!   ([`lattice`]).
//!
//! All library values are immutable and all operations are pure, so
//! concurrent use needs no synchronization.

pub mod apolarity;
pub mod decompose;
pub mod duality;
pub mod exactla;
pub mod forms;
pub mod lattice;
pub mod scalar;
pub mod secants;

pub use forms::{parse_form, Form, LinearForm, Monomial, Variance};
pub use scalar::Scalar;
