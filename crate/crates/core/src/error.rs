use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
  #[error("modulus {0} is not prime")]
  NotPrime(u32),
  #[error("dimension mismatch: expected {expected}, found {found}")]
  DimensionMismatch { expected: usize, found: usize },
  #[error("parse error: {0}")]
  Parse(String),
  #[error("size guard exceeded: {0}")]
  Guard(String),
  #[error("invalid parameters: {0}")]
  InvalidParameters(String),
  #[error("objects belong to different parent structures")]
  ParentMismatch,
  #[error("group axioms violated: {0}")]
  GroupAxiom(String),
  #[error("commutator form depends on the choice of lifts")]
  LiftDependence,
  #[error("homomorphism check failed: {0}")]
  Homomorphism(String),
  #[error("map is not order-preserving: {0}")]
  NotOrderPreserving(String),
  #[error("relation is not a partial order: {0}")]
  InvalidOrder(String),
  #[error("element not in poset: {0}")]
  NotInPoset(String),
  #[error("subspace is not isotropic: {0}")]
  NotIsotropic(String),
  #[error("complex is not closed under faces: {0}")]
  FaceClosure(String),
  #[error("chain is not a cycle")]
  NotACycle,
  #[error("sphere orientation is inconsistent")]
  Orientation,
  #[error("formula check failed: {0}")]
  Formula(String),
  #[error("hypothesis not satisfied: {0}")]
  Hypothesis(String),
}
