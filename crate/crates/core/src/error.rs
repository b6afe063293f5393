use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Variants split into two families that the command line maps onto
/// different exit codes: precondition failures (`Domain`, `Pole`,
/// `Coincidence`, `Window`, `LengthMismatch`, `Singular`) and numerical
/// diagnostics (`NonConvergence`, `ImaginaryResidue`, `Consistency`,
/// `AccuracyLimit`).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CrrError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("charges coincide: minimal gap {gap:e} is below {floor:e}")]
    Coincidence { gap: f64, floor: f64 },

    #[error("outside validity window: {0}")]
    Window(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("singular denominator: {0}")]
    Singular(String),

    #[error("no convergence after {iterations} iterations (best residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("imaginary residue {residue:e} exceeds bound {bound:e} in {context}")]
    ImaginaryResidue {
        context: &'static str,
        residue: f64,
        bound: f64,
    },

    #[error("methods disagree: {context} discrepancy {discrepancy:e} > {tolerance:e}")]
    Consistency {
        context: String,
        discrepancy: f64,
        tolerance: f64,
    },

    #[error("accuracy limit: {0}")]
    AccuracyLimit(String),
}

impl CrrError {
    /// True for violations of an operation's preconditions.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            CrrError::Domain(_)
                | CrrError::Pole(_)
                | CrrError::Coincidence { .. }
                | CrrError::Window(_)
                | CrrError::LengthMismatch { .. }
                | CrrError::Singular(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, CrrError>;
