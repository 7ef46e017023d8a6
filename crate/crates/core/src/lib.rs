//! Quadrilateral geometry around the perpendicular-bisector construction.
//!
//! A quadrilateral `ABCD` has four triad circles (circumcircles of three
//! consecutive vertices). Their centers form the next generation. This crate
//! computes the generations, the similarity ratio between them, the isoptic
//! point `W` and Simson point `S` by several independent routes, pedal and
//! isogonal constructions, and a seeded harness that checks the geometric
//! identities numerically.
//!
//! Geometry is generic over [`Real`] (`f32` or `f64`); the verification
//! harness is `f64` only.

pub mod error;
pub mod kernel;
pub mod quad;
pub mod scalar;
pub mod verify;

pub use error::{GeomError, Result};
pub use kernel::{DirectedAngle, GenCircle, MaybePoint, Point, SpiralSimilarity, Triangle};
pub use quad::{AngleDecomposition, Convexity, Direction, Quadrilateral, ShapeClass, TriadSystem};
pub use scalar::Real;

pub type Point64 = Point<f64>;
pub type Point32 = Point<f32>;
pub type MaybePoint64 = MaybePoint<f64>;
pub type MaybePoint32 = MaybePoint<f32>;
pub type GenCircle64 = GenCircle<f64>;
pub type GenCircle32 = GenCircle<f32>;
pub type Triangle64 = Triangle<f64>;
pub type Triangle32 = Triangle<f32>;
pub type Spiral64 = SpiralSimilarity<f64>;
pub type Spiral32 = SpiralSimilarity<f32>;
pub type Quadrilateral64 = Quadrilateral<f64>;
pub type Quadrilateral32 = Quadrilateral<f32>;
pub type TriadSystem64 = TriadSystem<f64>;
pub type TriadSystem32 = TriadSystem<f32>;
