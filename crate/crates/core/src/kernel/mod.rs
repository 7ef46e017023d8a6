//! Planar primitives: points, directed angles, generalized circles,
//! inversion, spiral similarities and triangle conjugations.

pub mod circle;
pub mod point;
pub mod spiral;
pub mod triangle;

pub use circle::*;
pub use point::*;
pub use spiral::*;
pub use triangle::*;
