use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("extension modulus {0:?} is reducible over F_{1}")]
    ReducibleExtensionModulus(Vec<u64>, u64),
    #[error("characteristic {0} rejected (2 and 3 are excluded)")]
    CharacteristicTwoOrThreeRejected(u64),
    #[error("field mismatch: expected {expected}, found {found}")]
    SpecMismatch { expected: String, found: String },
    #[error("cannot parse {what}: {input}")]
    Parse { what: &'static str, input: String },
    #[error("division by zero")]
    DivisionByZero,

    #[error("inadmissible rank {rank} for type {family}")]
    InadmissibleRank { family: char, rank: usize },
    #[error("{0} is not a positive root")]
    NotAPositiveRoot(String),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("roots must be neither equal nor opposite")]
    EqualOrOppositeRoots,
    #[error("factor root {0} is not positive")]
    NonPositiveRoot(String),

    #[error("torus coordinate {0} is zero")]
    ZeroTorusCoordinate(usize),
    #[error("expected {expected}, got {found}")]
    WrongType { expected: String, found: String },
    #[error("expected length {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("character value at simple root {0} is zero")]
    ZeroEntry(usize),
    #[error("scalar must be nonzero")]
    ZeroScalar,

    #[error("twisting map is not surjective (det(A - I) = 0)")]
    SingularTwist,
    #[error("characteristic {0} not allowed here")]
    BadCharacteristic(u64),
    #[error("twist block at height {0} is singular")]
    SingularBlock(usize),
    #[error("the data do not define an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("enumeration of {0} elements exceeds the limit")]
    TooLarge(u128),
    #[error("torus part and vector part are incompatible: {0}")]
    IncompatiblePair(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
