use crate::rational::Q;
use thiserror::Error;

/// Crate-wide error type. Every operation that can refuse its input
/// reports the first violated precondition, with a witness point where
/// one exists.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("space endpoints must satisfy a < b")]
    EmptySpace,
    #[error("puncture {0} lies outside the open interval (a, b)")]
    PunctureOutOfRange(Q),
    #[error("point {0} lies outside the domain interval")]
    OutsideDomain(Q),
    #[error("point {0} is a puncture and carries no value")]
    PunctureExcluded(Q),
    #[error("functions are defined on different domains")]
    DomainMismatch,
    #[error("breakpoints must be strictly increasing and span [a, b]")]
    BadBreakpoints,
    #[error("a function needs at least one affine piece")]
    EmptyPieces,
    #[error("puncture {0} must appear among the breakpoints")]
    PunctureNotBreakpoint(Q),
    #[error("breakpoint {0} must carry a value exactly when it is not a puncture")]
    ValueArity(Q),
    #[error("expected a {expected} function, found {found}")]
    WrongClass { expected: &'static str, found: String },
    #[error("order violated at x = {x}: {lo} > {hi}")]
    OrderViolated { x: Q, lo: Q, hi: Q },
    #[error("strict order violated at x = {0}")]
    StrictOrderViolated(Q),
    #[error("function is not quasicontinuous (witnesses: {0:?})")]
    NotQuasicontinuous(Vec<Q>),
    #[error("lower profile is not lower semicontinuous at {0}")]
    LowerNotLsc(Q),
    #[error("upper profile is not upper semicontinuous at {0}")]
    UpperNotUsc(Q),
    #[error("map is not singleton on a cofinite set")]
    NotSingletonCofinite,
    #[error("map is not minimal")]
    NotMinimal,
    #[error("map is not contained in the region; witness x = {0}")]
    NotContained(Q),
    #[error("map does not meet the region")]
    NoIntersection,
    #[error("the two maps are equal")]
    MapsEqual,
    #[error("operation requires a compact domain (no punctures)")]
    PuncturedDomain,
    #[error("box is empty or meets the domain in no point")]
    EmptyBox,
    #[error("interval is empty")]
    EmptyInterval,
    #[error("sum of opposite infinities is undefined")]
    IndeterminateArithmetic,
    #[error("game kind does not admit this operation")]
    WrongGameKind,
    #[error("it is not this player's turn")]
    OutOfTurn,
    #[error("round {round}: move is not inside the previous response")]
    MoveNotInside { round: usize },
    #[error("round {round}: this game kind requires a witness map")]
    MissingWitness { round: usize },
    #[error("round {round}: witness map is not a member of the played neighborhood")]
    WitnessNotMember { round: usize },
    #[error("round {round}: upper-topology games admit no lower constraints")]
    LowerInUpperGame { round: usize },
    #[error("round {round}: response tube is not nested in the played neighborhood")]
    TubeNotNested { round: usize },
    #[error("game has no completed round")]
    NoRounds,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown example name: {0}")]
    UnknownExample(String),
    #[error("internal invariant failed: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
