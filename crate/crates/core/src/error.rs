use thiserror::Error;

/// Failures raised by constructions. Degeneracies that have a natural
/// geometric answer (a point at infinity) are reported through
/// [`MaybePoint`](crate::MaybePoint) instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("points are collinear within tolerance")]
    CollinearInput,
    #[error("points coincide within tolerance")]
    CoincidentPoints,
    #[error("curves are identical within tolerance")]
    IdenticalCurves,
    #[error("ratio must be positive, got {0}")]
    NonpositiveRatio(f64),
    #[error("circles are concentric")]
    ConcentricCircles,
    #[error("map is a pure translation")]
    IsTranslation,
    #[error("ray has zero length")]
    DegenerateRay,
    #[error("expected a line, got a circle")]
    NotALine,
    #[error("expected a circle, got a line")]
    NotACircle,
    #[error("invalid generalized circle: {0}")]
    InvalidCircle(&'static str),
    #[error("invalid quadrilateral: {0}")]
    InvalidQuadrilateral(String),
    #[error("triad triangle {0} is collinear")]
    CollinearTriad(usize),
    #[error("quadrilateral is cyclic; next generation degenerates to ({x}, {y})")]
    CyclicDegeneration { x: f64, y: f64 },
    #[error("an isogonal conjugate lies at infinity; no previous generation exists")]
    OrthocentricDegeneration,
    #[error("an interior angle is too close to 0 or pi")]
    IllConditionedAngles,
    #[error("iteration does not converge (|r| = {0})")]
    NonConvergent(f64),
    #[error("isogonal conjugate is undefined")]
    DegenerateConjugate,
    #[error("consecutive lines are parallel")]
    ParallelConsecutiveLines,
    #[error("point lies at infinity")]
    PointAtInfinity,
    #[error("point is undefined")]
    UndefinedPoint,
    #[error("construction is underdetermined")]
    Underdetermined,
    #[error("circles do not intersect")]
    NoIntersection,
    #[error("pedal feet are not collinear")]
    NonCollinearFeet,
    #[error("degenerate circle in construction")]
    DegenerateCircle,
    #[error("invalid case specification: {0}")]
    InvalidSpec(String),
    #[error("rejection sampling exhausted after {0} attempts")]
    RejectionExhausted(usize),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
