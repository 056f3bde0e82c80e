use serde_json::json;
use span_oracle::embed::EmbedError;
use span_oracle::generate::GenError;
use span_oracle::graph::ParseError;
use span_oracle::net::NetError;
use span_oracle::oracle::{CodecError, OracleError};
use span_oracle::GraphError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Contract(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Contract(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Contract(_) => "contract",
            CliError::Internal(_) => "internal",
        }
    }

    pub fn to_json(&self) -> String {
        let payload = json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
            }
        });
        serde_json::to_string_pretty(&payload).unwrap() + "\n"
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::ReseedRequired { .. } => CliError::Contract(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(format!("graph file: {e}"))
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<NetError> for CliError {
    fn from(e: NetError) -> Self {
        match e {
            NetError::InvalidEps(_) | NetError::SubsetTooLarge(_) => CliError::Usage(e.to_string()),
            NetError::VertexOutOfRange { .. } | NetError::Parse { .. } => {
                CliError::Input(e.to_string())
            }
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Uncertified | OracleError::WeightedGraph => {
                CliError::Contract(e.to_string())
            }
            OracleError::InvalidDelta(_) | OracleError::InvalidK => CliError::Usage(e.to_string()),
            OracleError::Graph(g) => g.into(),
            OracleError::Net(n) => n.into(),
        }
    }
}

impl From<CodecError> for CliError {
    fn from(e: CodecError) -> Self {
        CliError::Input(format!("oracle file: {e}"))
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        match e {
            EmbedError::ZeroDimension => CliError::Usage(e.to_string()),
            EmbedError::Parse { .. } | EmbedError::VertexOutOfRange { .. } => {
                CliError::Input(e.to_string())
            }
            EmbedError::Uncertified
            | EmbedError::Unreachable(_)
            | EmbedError::BaseContracts(..)
            | EmbedError::DegenerateSigns(..) => CliError::Contract(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}
