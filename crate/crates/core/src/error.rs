use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by constructors and partial operations.
///
/// Law failures inside checkers are not errors; they are report entries
/// carrying witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("boolean algebra supports at most {max} atoms, got {got}")]
    TooManyAtoms { got: usize, max: usize },
    #[error("{names} atom names given for {atoms} atoms")]
    AtomNameCount { names: usize, atoms: usize },
    #[error("duplicate atom name `{0}`")]
    DuplicateAtom(String),
    #[error("unknown atom name `{0}`")]
    UnknownAtom(String),
    #[error("operands belong to different algebras")]
    ForeignElement,
    #[error("bitset {0:#b} is not an element of the algebra")]
    NotAnElement(u32),
    #[error("{what} is limited to {max}, got {got}")]
    SizeCap { what: &'static str, got: usize, max: usize },
    #[error("{0} is not a member of the implication algebra")]
    NotAMember(String),
    #[error("not an implication algebra: {0}")]
    NotImplicationAlgebra(String),
    #[error("delta({x}, {y}) is undefined: {y} is not below {x}")]
    DeltaUndefined { x: usize, y: usize },
    #[error("element id {0} is out of range")]
    BadElement(usize),
    #[error("malformed cubic table: {0}")]
    MalformedTable(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("collapse law violated: {0}")]
    CollapseLaw(String),
    #[error("the algebra has no g-cover")]
    NoGCover,
    #[error("not a g-cover: {0}")]
    NotGCover(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("set is not compatible: {0}")]
    Incompatible(String),
    #[error("not a special subalgebra: {0}")]
    NotSpecial(String),
    #[error("not closed: {0}")]
    NotClosed(String),
    #[error("unknown law id `{0}`")]
    UnknownLaw(String),
    #[error("format error: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
