use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("highest weight {label} is not dominant: {reason}")]
    NotDominant { label: String, reason: &'static str },

    #[error("parameter m = {m} is below -3, outside the unitary A_q(m) family")]
    ParameterOutOfRange { m: i64 },

    #[error("oracle guard: SO(4) label with a = {a} exceeds the limit {limit}")]
    OracleGuard { a: i64, limit: i64 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("{op} does not support module {descriptor}")]
    Unsupported { op: &'static str, descriptor: String },

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("family mismatch at {key}: residual {residual} cannot absorb {needed}")]
    FamilyMismatch {
        key: String,
        residual: u64,
        needed: u64,
    },

    #[error("subspace is not stable under the compact torus")]
    NotTorusStable,

    #[error("structural verification failed: {clause}")]
    StructureVerification { clause: String },

    #[error("pseudo-dual grid mismatch at {key}: {reason}")]
    GridMismatch { key: String, reason: String },

    #[error("region bound {n} too small, need at least {min}")]
    RegionTooSmall { n: u32, min: u32 },

    #[error("restriction of {descriptor} is not admissible: key {key} has infinitely many contributors")]
    NotAdmissible { descriptor: String, key: String },
}
