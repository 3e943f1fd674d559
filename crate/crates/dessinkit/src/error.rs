use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("the pair does not act transitively ({found} of {degree} edges reachable)")]
    NotTransitive { degree: usize, found: usize },

    #[error("group order exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("the generators do not preserve the partition")]
    NotInvariant,

    #[error("an element of the given subgroup does not commute with the generators")]
    NotCentral,

    #[error("the given elements do not form a subgroup")]
    NotSubgroup,

    #[error("the dessin is not regular")]
    NotRegular,

    #[error("genus formula produced a non-integral or negative value for order {order}, type ({l},{m},{n})")]
    NonIntegralGenus {
        order: String,
        l: String,
        m: String,
        n: String,
    },

    #[error("degree {degree} exceeds the enumeration cap of {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },

    #[error("operation not defined for the zero polynomial")]
    ZeroPolynomial,

    #[error("element is not invertible modulo the field polynomial")]
    NotInvertible,

    #[error("modulus must be monic of degree >= 1")]
    InvalidModulus,

    #[error("modulus is reducible over the rationals")]
    ReducibleModulus,

    #[error("cannot certify irreducibility for modulus of degree {0} (only degrees 1..=3 are supported)")]
    IrreducibilityUnverified(usize),

    #[error("empty set")]
    EmptySet,

    #[error(
        "consolidation step needs a polynomial of degree {denominator} (middle point {point}); \
         the composite is too large to materialize"
    )]
    BelyiDegreeTooLarge { denominator: String, point: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("parse error: {0}")]
    ExprParse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
