use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Semantic failures: every variant is a violated invariant or an
/// unmet precondition, never a parse problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime")]
    BadCharacteristic(u64),
    #[error("curve mismatch: expected `{expected}`, found `{found}`")]
    CurveMismatch { expected: String, found: String },
    #[error("order {order} at `{point}` is not tame in characteristic {characteristic}")]
    Wild {
        point: String,
        order: u64,
        characteristic: u64,
    },
    #[error("invalid order {order} at `{point}`")]
    InvalidOrder { point: String, order: u64 },
    #[error("invalid cover profile: {0}")]
    InvalidProfile(String),
    #[error("Riemann-Hurwitz inconsistency: {0}")]
    RiemannHurwitz(String),
    #[error("profile is not flagged Galois")]
    NotGalois,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid monodromy datum: {0}")]
    InvalidMonodromy(String),
    #[error("monodromy datum is disconnected")]
    Disconnected,
    #[error("enumeration cap of {0} elements exceeded")]
    CapExceeded(usize),
    #[error("operation needs a genus-0 curve, `{curve}` has genus {genus}")]
    GenusNotZero { curve: String, genus: u32 },
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("branch data are not ordered: {0}")]
    OrderViolation(String),
    #[error("no morphism of orbifold curves: {0}")]
    NotMorphism(String),
    #[error("invalid line class: {0}")]
    InvalidClass(String),
    #[error("empty bundle")]
    EmptyBundle,
    #[error("invalid cyclic cover: {0}")]
    InvalidCyclicCover(String),
}
