use ihall_core::hallcore::HallError;
use ihall_core::ihallalg::IHallError;
use ihall_core::iqgverify::IqgError;
use ihall_core::quiver::QuiverError;
use ihall_core::reflectors::ReflectError;
use ihall_core::repmod::RepError;
use ihall_core::symfun::SymError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Capacity(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Capacity(m) => CliError::Capacity(m),
            RepError::Invalid(m) => CliError::Input(m),
            RepError::Consistency(m) => CliError::Internal(m),
        }
    }
}

impl From<QuiverError> for CliError {
    fn from(e: QuiverError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<IHallError> for CliError {
    fn from(e: IHallError) -> Self {
        match e {
            IHallError::Rep(r) => r.into(),
            IHallError::Arith(a) => CliError::Internal(a.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<HallError> for CliError {
    fn from(e: HallError) -> Self {
        match e {
            HallError::Rep(r) => r.into(),
            HallError::Arith(a) => CliError::Internal(a.to_string()),
            HallError::Unsupported(m) => CliError::Input(m),
        }
    }
}

impl From<IqgError> for CliError {
    fn from(e: IqgError) -> Self {
        match e {
            IqgError::Hall(h) => h.into(),
            IqgError::Arith(a) => CliError::Internal(a.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ReflectError> for CliError {
    fn from(e: ReflectError) -> Self {
        match e {
            ReflectError::Hall(h) => h.into(),
            ReflectError::Iqg(i) => i.into(),
            ReflectError::Quiver(q) => q.into(),
            ReflectError::Resolution(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SymError> for CliError {
    fn from(e: SymError) -> Self {
        match e {
            SymError::Rep(r) => r.into(),
            SymError::Hall(h) => h.into(),
            SymError::Capacity(m) => CliError::Capacity(m),
            SymError::Solve(m) => CliError::Internal(m),
            SymError::Arith(a) => CliError::Internal(a.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}
