use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use plumbcalc::scalar::Scalar;
use plumbcalc::{Canonical, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// Machine-readable result of one invocation. Field order is fixed by the
/// declaration order; payload maps are sorted by key.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub input_digest: String,
    pub status: &'static str,
    pub result: Value,
    pub error: Option<ErrorBody>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

/// A failure and the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable file or malformed argument.
    Input {
        kind: &'static str,
        message: String,
    },
    Library(Error),
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure::Input {
            kind: "Usage",
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input { .. } => 2,
            Failure::Library(e) if e.is_input_error() => 2,
            Failure::Library(_) => 1,
        }
    }

    pub fn body(&self) -> ErrorBody {
        match self {
            Failure::Input { kind, message } => ErrorBody {
                kind: (*kind).into(),
                message: message.clone(),
            },
            Failure::Library(e) => ErrorBody {
                kind: error_kind(e).into(),
                message: e.to_string(),
            },
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "Syntax",
        Error::DuplicateVertex { .. } => "DuplicateVertex",
        Error::LoopEdge { .. } => "LoopEdge",
        Error::UnknownVertex { .. } => "UnknownVertex",
        Error::EmptyGraph => "EmptyGraph",
        Error::Disconnected => "Disconnected",
        Error::InvalidId(_) => "InvalidId",
        Error::InvalidCenter(_) => "InvalidCenter",
        Error::InvalidOrderData(_) => "InvalidOrderData",
        Error::NotNegativeDefinite => "NotNegativeDefinite",
        Error::NotNumericallyGorenstein => "NotNumericallyGorenstein",
        Error::NotSmall => "NotSmall",
        Error::NonIntegralChern(_) => "NonIntegralChern",
        Error::InvalidRank => "InvalidRank",
        Error::InvalidArgument(_) => "InvalidArgument",
        Error::NotContractible { .. } => "NotContractible",
        Error::NotSpecialGraph => "NotSpecialGraph",
        Error::NotMinimal(_) => "NotMinimal",
        Error::BoxTooSmall(_) => "BoxTooSmall",
        Error::NoConductorInBox => "NoConductorInBox",
        Error::AmbiguousConductor => "AmbiguousConductor",
        Error::Uncertified(_) => "Uncertified",
    }
}

/// SHA-256 over the inputs, each prefixed by its length.
pub fn digest(inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

/// Successful command output: a structured payload and its text rendering.
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub warnings: Vec<String>,
}

impl Outcome {
    pub fn new(result: Value, text: impl Into<String>) -> Self {
        Outcome {
            result,
            text: text.into(),
            warnings: Vec::new(),
        }
    }

    pub fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }
}

pub fn ordered<T: Scalar>(map: &std::collections::BTreeMap<plumbcalc::VertexId, T>) -> Value {
    let m: Map<String, Value> = map
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
        .collect();
    Value::Object(m)
}

pub fn canonical_json(data: &Canonical) -> Value {
    json!({
        "q": ordered(data.orders()),
        "z": ordered(data.cycle()),
        "numerically_gorenstein": data.is_numerically_gorenstein(),
        "small": data.is_small(),
    })
}

pub fn canonical_text(data: &Canonical) -> String {
    let mut out = String::new();
    for (id, q) in data.orders() {
        out.push_str(&format!("q[{id}] = {q}    z[{id}] = {}\n", -q.clone()));
    }
    out.push_str(&format!(
        "numerically Gorenstein: {}\nsmall: {}\n",
        yes_no(data.is_numerically_gorenstein()),
        yes_no(data.is_small())
    ));
    out
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
