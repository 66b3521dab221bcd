//! Ternary Grassmann algebras: exact sparse arithmetic, weighted Hilbert
//! scales, Berezin integration and spectral covariance kernels.

pub mod berezin;
pub mod coeff;
pub mod cyclotomic;
pub mod element;
pub mod error;
pub mod exec;
pub mod format;
pub mod hilbert;
pub mod index;
pub mod kernels;
pub mod laws;
pub mod quadrature;

pub use coeff::{Coefficient, Complex64, Exact};
pub use cyclotomic::Cyclotomic;
pub use element::{projector_element, ternary_form, Element, ExactElement, FloatElement};
pub use error::{Error, Result};
pub use exec::ExecutionMode;
pub use format::{from_json, parse_element, to_json, TextCoefficient};
pub use index::{sigma, MultiIndex};
pub use laws::{run_suite, LawOutcome, PhaseRule};
