use thiserror::Error;

use crate::poly::IntPoly;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero polynomial passed to `{0}`")]
    ZeroPolynomial(&'static str),

    #[error("constant polynomial passed to `{0}`")]
    ConstantPolynomial(&'static str),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,

    #[error("degree cap exceeded: degree {degree} > cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("degree cap exceeded: factor recombination gave up after {subsets} subsets with {primes} primes")]
    RecombinationLimit { subsets: u64, primes: usize },

    #[error("root iteration did not converge after {iterations} iterations (degree {degree})")]
    NoConvergence { iterations: usize, degree: usize },

    #[error("cannot certify that {0} is non-cyclotomic: Mahler measure is not certifiably > 1")]
    CannotCertifyNonCyclotomic(IntPoly),

    #[error("invalid family: {which}(0) = 0")]
    FamilyZeroConstant { which: &'static str },

    #[error("invalid family: reverse(c) and d share the factor {0}")]
    FamilyCommonFactor(IntPoly),

    #[error("invalid family: c = ±d makes every f_N reciprocal")]
    FamilyReciprocal,

    #[error("coefficient too large for the pair search: weight budget {0} exceeds the supported range")]
    BudgetTooLarge(String),

    #[error("N = {n} is too small: the family needs N > {min}")]
    ExponentTooSmall { n: usize, min: usize },

    #[error("family is not robust: witness pair ({a}, {b})")]
    NotRobust { a: IntPoly, b: IntPoly },

    #[error("weak robustness violated at level {level}: exact pair ({a}, {b}) has weight {weight} <= budget - 2")]
    WeakRobustnessViolated {
        level: usize,
        a: IntPoly,
        b: IntPoly,
        weight: u64,
    },

    #[error("m0 search exceeded the level ceiling {ceiling} without stabilizing")]
    LevelCeilingExceeded { ceiling: String },

    #[error("m0 search aborted on resource limit ({reason}); certified lower bound m0 >= {lower_bound}")]
    ResourceLimit { reason: String, lower_bound: usize },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wraps an error with the pipeline stage it came from.
    pub fn at(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Strips stage wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
