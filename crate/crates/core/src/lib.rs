//! Exact enumerative machinery for branched covers of the sphere and the
//! graph, tree and intersection-number computations that feed into it.

pub mod algebra;
pub mod bracket;
pub mod dendrology;
pub mod error;
pub mod graph;
pub mod guard;
pub mod hurwitz;
pub mod linalg;
pub mod rational;
pub mod series;

pub use algebra::{AElement, AsymptoticTerm, ClosedForm};
pub use error::{Error, Result};
pub use rational::Rational;
pub use series::{BiSeries, Coefficient, Generator, PowerSeries};
