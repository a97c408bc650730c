//! JSON descriptors for codes and gates, and serde helpers for bit vectors.

use serde::{Deserialize, Serialize, Serializer};

use crate::codes::{StabilizerCode, StandardFormCode};
use crate::error::{Error, Result};
use crate::gates::GateDescriptor;
use crate::gf2::BitVec;
use crate::pauli::PauliOp;

/// Report schema version carried by every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

pub fn serialize_bits<S: Serializer>(v: &BitVec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn serialize_opt_bits<S: Serializer>(
    v: &Option<BitVec>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

/// `{ "n", "stabilizers", "logical_x", "logical_z" }` with Pauli strings such as `"+XZZXI"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDescriptor {
    pub n: usize,
    pub stabilizers: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logical_x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logical_z: Option<String>,
}

fn parse_pauli(field: &str, index: Option<usize>, text: &str, n: usize) -> Result<PauliOp> {
    let at = match index {
        Some(i) => format!("{field}[{i}]"),
        None => field.to_string(),
    };
    let op: PauliOp = text.parse().map_err(|e| match e {
        Error::Parse { column, message, .. } => Error::Parse {
            line: 0,
            column,
            message: format!("{at}: {message}"),
        },
        other => other,
    })?;
    if op.num_qubits() != n {
        return Err(Error::InvalidCode(format!(
            "{at} acts on {} qubits, descriptor declares n = {n}",
            op.num_qubits()
        )));
    }
    Ok(op)
}

impl CodeDescriptor {
    pub fn from_code(code: &StabilizerCode) -> Self {
        CodeDescriptor {
            n: code.n(),
            stabilizers: code.generators().iter().map(|g| g.to_string()).collect(),
            logical_x: code.logical_x().map(|l| l.to_string()),
            logical_z: code.logical_z().map(|l| l.to_string()),
        }
    }

    pub fn from_standard_form(sf: &StandardFormCode) -> Result<Self> {
        Ok(Self::from_code(&sf.to_stabilizer_code()?))
    }

    pub fn to_code(&self) -> Result<StabilizerCode> {
        let gens = self
            .stabilizers
            .iter()
            .enumerate()
            .map(|(i, s)| parse_pauli("stabilizers", Some(i), s, self.n))
            .collect::<Result<Vec<_>>>()?;
        let lx = self
            .logical_x
            .as_deref()
            .map(|s| parse_pauli("logical_x", None, s, self.n))
            .transpose()?;
        let lz = self
            .logical_z
            .as_deref()
            .map(|s| parse_pauli("logical_z", None, s, self.n))
            .transpose()?;
        StabilizerCode::new(self.n, gens, lx, lz)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }
}

/// `{ "k", "controls", "p" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateFile {
    pub k: u32,
    #[serde(default)]
    pub controls: u32,
    pub p: Vec<u64>,
}

impl GateFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_descriptor(&self) -> Result<GateDescriptor> {
        GateDescriptor::new(self.k, self.controls, self.p.clone())
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Wraps a report body with the schema version and a report kind.
#[derive(Serialize)]
pub struct Report<'a, T: Serialize> {
    pub schema: u32,
    pub report: &'a str,
    #[serde(flatten)]
    pub body: T,
}

impl<'a, T: Serialize> Report<'a, T> {
    pub fn new(report: &'a str, body: T) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            report,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are always serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIVE_QUBIT: &str = r#"{
        "n": 5,
        "stabilizers": ["+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ"],
        "logical_x": "+XXXXX",
        "logical_z": "+ZZZZZ"
    }"#;

    #[test]
    fn code_round_trip_is_bit_exact() {
        let d = CodeDescriptor::from_json(FIVE_QUBIT).unwrap();
        let code = d.to_code().unwrap();
        assert_eq!(CodeDescriptor::from_code(&code), d);
        let again = CodeDescriptor::from_json(&d.to_json()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn signs_and_y_survive() {
        let d = CodeDescriptor {
            n: 3,
            stabilizers: vec!["-YYI".into(), "+ZZI".into()],
            logical_x: Some("+IIX".into()),
            logical_z: Some("-IIZ".into()),
        };
        let code = d.to_code().unwrap();
        assert_eq!(CodeDescriptor::from_code(&code), d);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            CodeDescriptor::from_json("{\"n\": 2, \"stabilizers\": [\"+XQ\"]}")
                .unwrap()
                .to_code(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            CodeDescriptor::from_json("{\"n\": 3, \"stabilizers\": [\"+XX\"]}")
                .unwrap()
                .to_code(),
            Err(Error::InvalidCode(_))
        ));
        assert!(matches!(
            CodeDescriptor::from_json("{\"n\": 3,\n \"stab\": []}"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn gate_file() {
        let g = GateFile::from_json(r#"{"k": 3, "controls": 1, "p": [1, 3]}"#).unwrap();
        assert_eq!(g.to_descriptor().unwrap().controls(), 1);
        assert!(GateFile::from_json(r#"{"k": 3, "p": [9]}"#).unwrap().to_descriptor().is_err());
    }

    #[test]
    fn report_carries_schema() {
        #[derive(Serialize)]
        struct Body {
            holds: bool,
        }
        let json = Report::new("check-orth", Body { holds: true }).to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["holds"], true);
    }
}
