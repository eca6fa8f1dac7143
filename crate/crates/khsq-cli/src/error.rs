use khsq_algebra::AlgebraError;
use khsq_classify::ClassifyError;
use khsq_cube::CubeError;
use khsq_link::LinkError;
use khsq_moduli::ModuliError;
use khsq_steenrod::SteenrodError;
use thiserror::Error;

/// A failed command, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("property failure: {0}")]
    Property(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("internal invariant violated in {module}: {message}")]
    Internal { module: &'static str, message: String },
}

impl CliError {
    /// 1 for a property failure, 2 for bad input, 3 for a violated internal
    /// invariant.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Property(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal { .. } => 3,
        }
    }

    pub fn internal(module: &'static str, e: impl std::fmt::Display) -> CliError {
        CliError::Internal { module, message: e.to_string() }
    }
}

impl From<LinkError> for CliError {
    fn from(e: LinkError) -> Self {
        CliError::Input(format!("link-io: {e}"))
    }
}

impl From<CubeError> for CliError {
    fn from(e: CubeError) -> Self {
        CliError::internal("cube", e)
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::internal("algebra", e)
    }
}

impl From<ModuliError> for CliError {
    fn from(e: ModuliError) -> Self {
        CliError::internal("moduli", e)
    }
}

impl From<SteenrodError> for CliError {
    fn from(e: SteenrodError) -> Self {
        CliError::internal("steenrod", e)
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::BadTableLine { .. } => CliError::Input(format!("classify: {e}")),
            e => CliError::internal("classify", e),
        }
    }
}
