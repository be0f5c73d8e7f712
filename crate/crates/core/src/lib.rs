//! Exact computations for the quantum orthosymplectic superalgebras of type
//! b, c and d: root data, PBW root vectors of the radical subalgebra, quantum
//! shuffles, and the crystals of the radical and of parabolic Verma modules.

pub mod qscalar;
pub mod superroot;
pub mod qshuffle;
pub mod pbwalg;
pub mod hooktab;
pub mod radcrystal;
pub mod pvcrystal;

pub use qscalar::{q_int, q_int_fact, q_odd_int, q_odd_int_fact, Scalar, ScalarError, Valuation};
