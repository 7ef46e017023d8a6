//! Quadrilateral constructions: triad circles, generations, the isoptic
//! point `W`, the Simson point `S`, pedal and isogonal constructions, and
//! reconstructions.

pub mod generation;
pub mod isoptic;
pub mod pedal;
pub mod quadrilateral;
pub mod report;
pub mod residuals;

pub use generation::*;
pub use isoptic::*;
pub use pedal::*;
pub use quadrilateral::*;
pub use report::{analyze, AnalysisReport};
