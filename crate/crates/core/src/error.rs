use thiserror::Error;

/// Every failure the engine can report.
///
/// The three "hypothesis" variants ([`Error::NotOriginPreserving`],
/// [`Error::NotFiniteLength`], [`Error::SupportNotOrigin`]) describe inputs that
/// are well formed but fall outside the setting where the degree is defined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero scalar where a unit was required")]
    ZeroScalar,
    #[error("modulus {0} is even; odd primes only")]
    EvenModulus(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot factor {0}: its part without prime factors below 10^6 exceeds 64 bits")]
    FactorizationBound(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{}", job_message(*.line, .msg))]
    Job { line: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("system is not square: {rows} polynomials in {vars} variables")]
    NotSquareSystem { rows: usize, vars: usize },
    #[error("quotient algebra is not of finite length (no pure power of `{0}` among leading terms)")]
    NotFiniteLength(String),
    #[error("zero locus is not supported at the origin (`{0}` is not nilpotent)")]
    SupportNotOrigin(String),
    #[error("endomorphism does not preserve the origin: image of `{0}` has a nonzero constant term")]
    NotOriginPreserving(String),
    #[error("degenerate symmetric form")]
    DegenerateForm,
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("index error: {0}")]
    Index(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("n = {0} is even; the obstruction is only defined for odd n")]
    EvenN(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for the mathematical precondition failures of the degree pipeline.
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::NotOriginPreserving(_) | Error::NotFiniteLength(_) | Error::SupportNotOrigin(_)
        )
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

fn job_message(line: usize, msg: &str) -> String {
    if line == 0 {
        msg.to_string()
    } else {
        format!("line {line}: {msg}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;
