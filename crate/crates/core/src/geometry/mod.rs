//! Cayley balls, δ estimation and the explicit search bounds.

mod ball;
pub mod bounds;
mod delta;

pub use ball::{build_ball, BallGraph};
pub use bounds::{bound_lemstab, bound_v1, bound_v2, bound_v3, conj_bound, Bound, BoundBundle, BoundRecorder, V2Bound};
pub use delta::estimate_delta_lower_bound;
