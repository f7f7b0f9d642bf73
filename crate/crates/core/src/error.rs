use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("non-positive exponent {0} in arc term")]
    NonPositiveExponent(Rational),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("unsupported dimension {0}: only germs in R^4 are modeled")]
    UnsupportedDimension(usize),

    #[error("exponent constraint violated: {0}")]
    ExponentConstraint(String),

    #[error("sample parameter t={0} outside (0, 1]")]
    SampleOutOfRange(f64),

    #[error("edge label {label} appears {count} times (expected 2)")]
    LabelCount { label: u32, count: usize },

    #[error("inconsistent strand orientation at edge {0}")]
    Orientation(u32),

    #[error("diagram is not planar: V - E + F = {euler} over {pieces} connected pieces")]
    NonPlanar { euler: i64, pieces: usize },

    #[error("generator s{index} out of range for {strands} strands")]
    BraidGenerator { index: usize, strands: usize },

    #[error("invalid component index {0}")]
    Component(usize),

    #[error("unknown edge {0}")]
    Edge(u32),

    #[error("invalid face index {0}")]
    Face(usize),

    #[error("reidemeister pattern not found: {0}")]
    PatternNotFound(String),

    #[error("crossing limit exceeded: {crossings} > {limit}")]
    CrossingLimit { crossings: usize, limit: usize },

    #[error("polylines intersect (distance {0:e})")]
    PolylinesIntersect(f64),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("edges {0} and {1} do not share a face")]
    NotCofacial(u32, u32),

    #[error("strands {0} and {1} are parallel along the shared face")]
    ParallelStrands(u32, u32),

    #[error("unknown bridge site {0:?}")]
    Site(String),

    #[error("twist count must be non-zero")]
    ZeroTwist,

    #[error("expected a single-component knot, found {0} components")]
    NotAKnot(usize),

    #[error("pinch pair has tangency order {0} <= 1")]
    PinchOrder(Rational),

    #[error("unknown corpus entry {0:?}")]
    UnknownCorpus(String),

    #[error("germ {0:?} carries no bridge sites")]
    NoBridges(String),

    #[error("breaking exponent p={p} must exceed every bridge q (max q = {max_q})")]
    BreakExponent { p: Rational, max_q: Rational },

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
