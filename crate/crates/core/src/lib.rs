//! Multi-level amplitude damping channels: construction, degradability and
//! capacities.

pub mod capacity;
pub mod channel;
pub mod degradability;
pub mod error;
pub mod figures;
pub mod linalg;
pub mod simplex;
pub mod superop;
pub mod sweep;

pub use capacity::{CapacityEstimate, Method, Quantity, Status};
pub use channel::{KrausSet, RateMatrix, RateVector3};
pub use degradability::{classify, ClassificationResult, TriVerdict, Verdict};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, Spectrum};
pub use simplex::SimplexPoint;
pub use superop::{ChoiMatrix, SuperoperatorMatrix};
