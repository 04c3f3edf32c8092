use thiserror::Error;

/// Errors raised while reading or validating a triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpineError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("empty document")]
    Empty,
    #[error("gluing of tetrahedron {tet} face {face} is not involutive")]
    NonInvolutive { tet: usize, face: usize },
    #[error("gluing of tetrahedron {tet} face {face} preserves orientation")]
    Orientation { tet: usize, face: usize },
    #[error("edge orientations disagree across tetrahedron {tet} face {face}")]
    EdgeMismatch { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face} is cyclically oriented")]
    Branching { tet: usize, face: usize },
    #[error("triangulation is not connected")]
    Disconnected,
}

/// Errors raised while building the attached cell complex.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("tetrahedron {tet} face {face} is unglued")]
    Unglued { tet: usize, face: usize },
    #[error("expected exactly one spherical boundary component, found {0}")]
    SphereCount(usize),
    #[error("inconsistent deck offsets while identifying cells")]
    OffsetClash,
    #[error("boundary pattern labelling is inconsistent: {0}")]
    Pattern(String),
}

/// Errors raised by Euler chain constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("boundary bookkeeping failed on {0} cells")]
    Bookkeeping(usize),
    #[error("chain kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: &'static str, found: &'static str },
    #[error("white region is not a single annulus")]
    NotAnnulus,
    #[error("white region contains a tetrahedron centre")]
    WhiteCentre,
    #[error("cell {0} is not covered by the chain")]
    Uncovered(usize),
    #[error("cell {0} is the target of two legs")]
    DuplicateTarget(usize),
}

/// Errors raised by the torsion engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsionError {
    #[error("representation error: {0}")]
    Representation(String),
    #[error("complex is not acyclic for this representation")]
    NotAcyclic,
    #[error("no nonsingular minor found")]
    MinorSelection,
}

/// Errors raised while reading diagrams or digging tunnels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("non-standard result: {0}")]
    NonStandard(String),
    #[error("invalid curl site {0}")]
    Site(usize),
}

/// Crate-level error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Spine(#[from] SpineError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error(transparent)]
    Knot(#[from] KnotError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
