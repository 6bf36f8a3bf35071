use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation is not supported over {0}")]
    UnsupportedRing(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient rank mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("invalid ring element {0:?}: {1}")]
    InvalidElement(String, String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("multiplication is not commutative on basis pair ({0}, {1})")]
    NonCommutative(usize, usize),
    #[error("unit law fails on basis element {0}")]
    BadUnit(usize),
    #[error("counit is not an algebra homomorphism at basis pair ({0}, {1})")]
    CounitNotMultiplicative(usize, usize),
    #[error("submodule is not closed under multiplication by basis element {0}")]
    NotAnIdeal(usize),
    #[error("quotient is not free: invariant factors {0:?}")]
    NotFree(Vec<BigInt>),
    #[error("unsupported ring homomorphism {0} -> {1}")]
    UnsupportedHom(String, String),

    #[error("comultiplication is not coassociative on basis element {0}")]
    NotCoassociative(usize),
    #[error("counit law fails on basis element {0}")]
    CounitLawFails(usize),
    #[error("comultiplication is not an algebra homomorphism on basis pair ({0}, {1})")]
    NotBialgebra(usize, usize),
    #[error("antipode axiom fails on basis element {0}")]
    AntipodeFails(usize),
    #[error("comultiplication is not cocommutative on basis element {0}")]
    NotCocommutative(usize),
    #[error("module of invariant measures is not a rank-1 direct summand (rank {0})")]
    RankNotOne(usize),
    #[error("map is not injective")]
    NotInjective,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("kernel of the quotient map differs from the ideal generated by the subgroup's augmentation ideal")]
    KernelMismatch,
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("map is not a Hopf algebra homomorphism: {0}")]
    NotHopfHom(String),
    #[error("input measure is not invariant")]
    InputNotInvariant,
    #[error("no lift of the measure exists")]
    LiftFailed,

    #[error("characteristic mismatch: {0}")]
    CharacteristicMismatch(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
